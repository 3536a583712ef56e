use proptest::prelude::*;

use catgrp::catalog::{catalog, cyclic, symmetric};
use catgrp::isomorphism::isomorphism_search;
use catgrp::spec_io::{parse_spec, serialize_spec, DeclKind, SpecDocument};
use catgrp::subgroup::{is_normal, kernel};
use catgrp::{is_homomorphism, FiniteGroup, Hom};

/// `k ↦ a·k mod n` from `Z_m` to `Z_n`; a homomorphism iff `m = 1` or `n | a·m`.
fn multiply(m: usize, n: usize, a: usize) -> Hom {
    Hom::new(&cyclic(m).unwrap(), &cyclic(n).unwrap(), (0..m).map(|k| a * k % n).collect()).unwrap()
}

/// The table of `g` with its non-identity elements renamed by `perm`.
fn relabel(g: &FiniteGroup, perm: &[usize]) -> FiniteGroup {
    let n = g.order();
    let mut rows = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            rows[perm[a]][perm[b]] = perm[g.mul(a, b)];
        }
    }
    FiniteGroup::from_table("relabelled", &rows).unwrap()
}

fn perm_fixing_zero(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|rest| std::iter::once(0).chain(rest).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclic_maps_are_homs_exactly_when_divisible(m in 1usize..10, n in 1usize..10, a in 0usize..10) {
        let f = multiply(m, n, a);
        prop_assert_eq!(is_homomorphism(&f).passed, m == 1 || (a * m) % n == 0);
    }

    #[test]
    fn composites_of_homs_are_homs(m in 1usize..9, n in 1usize..9, p in 1usize..9, a in 0usize..9, b in 0usize..9) {
        let (f, g) = (multiply(m, n, a), multiply(n, p, b));
        prop_assume!(is_homomorphism(&f).passed && is_homomorphism(&g).passed);
        let h = f.verify().unwrap().then(&g.verify().unwrap()).unwrap();
        prop_assert!(is_homomorphism(&h).passed);
        for k in 0..m {
            prop_assert_eq!(h.apply(k), b * (a * k % n) % p);
        }
    }

    #[test]
    fn kernels_are_normal(idx in 0usize..16, seed in any::<u64>()) {
        let g = &catalog()[idx];
        let normals = catgrp::subgroup::normal_subgroups(g);
        let n = &normals[(seed as usize) % normals.len()];
        let (_, pi) = catgrp::subgroup::quotient(g, n).unwrap();
        let k = kernel(&pi).unwrap();
        prop_assert_eq!(k.members(), n.members());
        prop_assert!(is_normal(&k).passed);
    }

    #[test]
    fn isomorphism_search_is_symmetric(idx in 0usize..16, perm in (1usize..=12).prop_flat_map(perm_fixing_zero)) {
        let g = catalog()[idx].clone();
        prop_assume!(perm.len() == g.order());
        let h = relabel(&g, &perm);
        let there = isomorphism_search(&g, &h);
        let back = isomorphism_search(&h, &g);
        prop_assert!(there.is_some() && back.is_some());
        for f in [there.unwrap(), back.unwrap()] {
            prop_assert!(is_homomorphism(&f).passed);
            prop_assert!(f.is_bijective());
        }
    }

}

fn name_strategy() -> impl Strategy<Value = String> {
    "[A-Za-z_][A-Za-z0-9_]{0,6}".prop_filter("keyword", |s| {
        !matches!(s.as_str(), "group" | "hom" | "action" | "xmod" | "internalcat" | "comp")
    })
}

/// Random documents: cyclic groups plus trivial homs and actions between
/// them, under random names.
fn document() -> impl Strategy<Value = SpecDocument> {
    proptest::collection::vec((name_strategy(), 1usize..6, 0usize..3), 1..6).prop_map(|items| {
        let mut doc = SpecDocument::default();
        let mut groups: Vec<(String, usize)> = Vec::new();
        for (i, (base, order, extra)) in items.into_iter().enumerate() {
            let g = format!("{base}_{i}");
            doc.push(g.clone(), DeclKind::Group { rows: cyclic(order).unwrap().rows() });
            if let Some((h, m)) = groups.last().cloned() {
                match extra {
                    1 => doc.push(format!("f{i}"), DeclKind::Hom { source: g.clone(), target: h, map: vec![0; order] }),
                    2 => doc.push(
                        format!("a{i}"),
                        DeclKind::Action { group: g.clone(), carrier: h, rows: vec![(0..m).collect(); order] },
                    ),
                    _ => {}
                }
            }
            groups.push((g, order));
        }
        doc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialize_then_parse_is_identity(doc in document()) {
        let text = serialize_spec(&doc);
        let back = parse_spec(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(serialize_spec(&back), text);
    }

    #[test]
    fn diagnostics_point_into_the_input(cut in 0usize..400, junk in "[ 0-9a-z#:()=,>-]{0,4}") {
        let base = catgrp::suite::FIXTURE_XMOD;
        let cut = cut.min(base.len());
        let text = format!("{}{junk}{}", &base[..cut], &base[cut..]);
        if let Err(diags) = parse_spec(&text) {
            let lines: Vec<&str> = text.lines().collect();
            for d in diags {
                prop_assert!(d.line >= 1 && d.line <= lines.len(), "{}", d);
                prop_assert!(d.column >= 1 && d.column <= lines[d.line - 1].chars().count() + 1, "{}", d);
            }
        }
    }
}

#[test]
fn fixtures_reparse_to_the_same_document() {
    use catgrp::suite::*;
    for text in [FIXTURE_XMOD, FIXTURE_TRIVIAL_ACTION, FIXTURE_TRIVIAL_XMOD, FIXTURE_INTERNAL] {
        let doc = parse_spec(text).unwrap();
        assert_eq!(parse_spec(&serialize_spec(&doc)).unwrap(), doc);
    }
}

#[test]
fn isomorphism_search_symmetric_over_catalog_pairs() {
    let groups = catalog();
    for g in &groups {
        for h in &groups {
            let there = isomorphism_search(g, h);
            assert_eq!(there.is_some(), isomorphism_search(h, g).is_some(), "{} vs {}", g.name(), h.name());
            // Catalog groups are pairwise non-isomorphic.
            assert_eq!(there.is_some(), g.name() == h.name(), "{} vs {}", g.name(), h.name());
        }
    }
}

#[test]
fn s3_is_not_z6() {
    assert!(isomorphism_search(&symmetric(3).unwrap(), &cyclic(6).unwrap()).is_none());
}
