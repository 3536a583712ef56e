//! The acceptance suite: nine criteria, each evaluated exhaustively (or on
//! a fixed-seed sample where the space is too large) over the catalog.

use std::fmt;

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use rayon::prelude::*;

use crate::action::{Carrier, GroupAction};
use crate::catalog::{catalog, cyclic, symmetric};
use crate::cli::{check_source, roundtrip_source, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use crate::crossed::{check_crossed_module, image_normal_check, inclusion_crossed_module, kernel_abelian_check, CrossedModule};
use crate::decompose::split_epi_decompose;
use crate::equivalence::{expected_pullback_order, roundtrip_internal, roundtrip_xmod, xmod_to_internal};
use crate::group::FiniteGroup;
use crate::group_objects::{
    check_cogroup_object, check_group_object, check_interchange, eckmann_hilton, Ambient, CogroupCandidate, FinSetMap,
    GroupObjectCandidate, Tagged,
};
use crate::hom::{is_homomorphism, Hom};
use crate::internal::{
    cat_group_structure_report, check_cat_group_structure, check_internal_category, is_internal_groupoid,
};
use crate::isomorphism::find_section;
use crate::product::direct_product;
use crate::spec_io::{parse_spec, serialize_spec};
use crate::subgroup::{normal_subgroups, quotient, Subgroup};

pub const FIXTURE_XMOD: &str = include_str!("../fixtures/a3_s3_xmod.cg");
pub const FIXTURE_TRIVIAL_ACTION: &str = include_str!("../fixtures/a3_s3_trivial_action.cg");
pub const FIXTURE_BAD_ROW: &str = include_str!("../fixtures/bad_row.cg");
pub const FIXTURE_TRIVIAL_XMOD: &str = include_str!("../fixtures/trivial_xmod.cg");
pub const FIXTURE_INTERNAL: &str = include_str!("../fixtures/a3_s3_internal.cg");

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} [{}] {}: {}", self.id, self.name, self.detail)
    }
}

/// Collects failures; the criterion passes when none were recorded.
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, failures: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }

    fn outcome(self, id: u8, name: &'static str, summary: String) -> CriterionOutcome {
        let passed = self.failures.is_empty();
        let detail = if passed {
            format!("{summary} ({} assertions)", self.checked)
        } else {
            let shown: Vec<_> = self.failures.iter().take(3).cloned().collect();
            format!("{} of {} assertions failed: {}", self.failures.len(), self.checked, shown.join("; "))
        };
        CriterionOutcome { id, name, passed, detail }
    }
}

/// Abelianness read straight off the table, independent of
/// [`FiniteGroup::is_abelian`].
fn table_commutes(g: &FiniteGroup) -> bool {
    let rows = g.rows();
    (0..rows.len()).all(|a| (0..rows.len()).all(|b| rows[a][b] == rows[b][a]))
}

/// Every crossed module the suite runs over: inclusions of all normal
/// subgroups of catalog groups, `(A, 1, trivial)` and `(A, Z2, trivial,
/// inversion)` for abelian catalog groups.
pub fn suite_crossed_modules() -> Vec<(String, CrossedModule)> {
    let mut out = Vec::new();
    let one = FiniteGroup::trivial();
    let z2 = cyclic(2).expect("Z2");
    for g in catalog() {
        for (i, n) in normal_subgroups(&g).iter().enumerate() {
            let xm = inclusion_crossed_module(n).expect("normal subgroups give inclusion crossed modules");
            out.push((format!("{}<|{} #{i}", n.order(), g.name()), xm));
        }
        if table_commutes(&g) {
            let act = GroupAction::trivial(&one, Carrier::Group(g.clone()));
            let xm = CrossedModule::trivial_boundary(act).expect("abelian source");
            out.push((format!("({}, 1)", g.name()), xm));
            let inversion = GroupAction::from_fn(&z2, Carrier::Group(g.clone()), |s, x| if s == 0 { x } else { g.inv(x) });
            let xm = CrossedModule::trivial_boundary(inversion).expect("inversion is an automorphism of an abelian group");
            out.push((format!("({}, Z2, inversion)", g.name()), xm));
        }
    }
    out
}

pub fn eckmann_hilton_criterion() -> CriterionOutcome {
    let mut t = Tally::new();
    let groups = catalog();
    let mut abelian = 0;
    for g in &groups {
        let oracle = table_commutes(g);
        abelian += usize::from(oracle);
        let cand = GroupObjectCandidate::of_group(g, Ambient::FinGrp);
        let passed = check_group_object(&cand).map(|r| r.passed).unwrap_or(false);
        t.expect(passed == oracle, || format!("{}: group object {passed}, abelian {oracle}", g.name()));
        if passed {
            match eckmann_hilton(&cand) {
                Ok(eh) => {
                    t.expect(eh.agreement.passed, || format!("{}: m differs from the native product", g.name()));
                    t.expect(eh.commutativity.passed, || format!("{}: native product not commutative", g.name()));
                }
                Err(e) => t.expect(false, || format!("{}: {e}", g.name())),
            }
        }
    }
    t.outcome(
        1,
        "eckmann_hilton",
        format!("{} catalog groups, {abelian} abelian, group objects in groups exactly the abelian ones", groups.len()),
    )
}

pub fn crossed_module_criterion() -> CriterionOutcome {
    let inclusions: Vec<(String, Subgroup)> = catalog()
        .iter()
        .flat_map(|g| normal_subgroups(g).into_iter().map(move |n| (format!("{} in {}", n.order(), g.name()), n)))
        .collect();
    let count = inclusions.len();
    let mut t = inclusions
        .par_iter()
        .map(|(label, n)| {
            let mut t = Tally::new();
            match inclusion_crossed_module(n) {
                Ok(xm) => {
                    t.expect(check_crossed_module(&xm).passed(), || format!("{label}: axioms fail"));
                    let ka = kernel_abelian_check(&xm).map(|r| r.passed).unwrap_or(false);
                    t.expect(ka, || format!("{label}: kernel not abelian"));
                    let im = image_normal_check(&xm).map(|r| r.passed).unwrap_or(false);
                    t.expect(im, || format!("{label}: image not normal"));
                }
                Err(e) => t.expect(false, || format!("{label}: {e}")),
            }
            t
        })
        .reduce(Tally::new, |mut a, b| {
            a.merge(b);
            a
        });

    // Trivial action on A3 ◁ S3: the witness must pair an odd permutation
    // with a 3-cycle.
    let s3 = symmetric(3).expect("S3");
    let a3 = Subgroup::from_members(&s3, [0, 3, 4], "A3").expect("A3");
    let act = GroupAction::trivial(&s3, Carrier::Group(a3.group().clone()));
    let witness = CrossedModule::new(a3.inclusion(), act)
        .ok()
        .map(|xm| check_crossed_module(&xm).equivariance)
        .filter(|r| !r.passed)
        .and_then(|r| r.witness);
    let class_ok = match witness.as_deref() {
        Some(&[g, c]) => s3.element_order(g) == 2 && a3.group().element_order(c) == 3,
        _ => false,
    };
    t.expect(class_ok, || format!("trivial-action witness {witness:?} is not (transposition, 3-cycle)"));
    t.outcome(
        2,
        "crossed_module_suite",
        format!("{count} inclusion crossed modules pass; trivial action fails at {witness:?}"),
    )
}

fn for_each_suite_member(f: impl Fn(&str, &CrossedModule) -> Tally + Sync) -> (usize, Tally) {
    let members = suite_crossed_modules();
    let t = members.par_iter().map(|(label, xm)| f(label, xm)).reduce(Tally::new, |mut a, b| {
        a.merge(b);
        a
    });
    (members.len(), t)
}

pub fn construction_criterion() -> CriterionOutcome {
    let (n, t) = for_each_suite_member(|label, xm| {
        let mut t = Tally::new();
        let ic = match xmod_to_internal(xm) {
            Ok(ic) => ic,
            Err(e) => {
                t.expect(false, || format!("{label}: {e}"));
                return t;
            }
        };
        let cat = check_internal_category(&ic);
        for leg in cat.legs() {
            t.expect(leg.passed, || format!("{label}: {leg}"));
        }
        let cg = check_cat_group_structure(&ic).map(|r| r.passed).unwrap_or(false);
        t.expect(cg, || format!("{label}: cat-group structure fails"));
        let gp = is_internal_groupoid(&ic).map(|g| g.report.passed).unwrap_or(false);
        t.expect(gp, || format!("{label}: not a groupoid"));
        let want = xm.source().order().pow(2) * xm.target().order();
        t.expect(ic.pairs().order() == want && expected_pullback_order(xm) == want, || {
            format!("{label}: pullback order {} != {want}", ic.pairs().order())
        });
        t
    });
    t.outcome(3, "construction_soundness", format!("{n} suite crossed modules give internal groupoids"))
}

pub fn roundtrip_criterion() -> CriterionOutcome {
    let (n, t) = for_each_suite_member(|label, xm| {
        let mut t = Tally::new();
        match roundtrip_xmod(xm) {
            Ok((iso, r)) => t.expect(r.passed && iso.verified && !iso.fallback_used, || format!("{label}: {r}")),
            Err(e) => t.expect(false, || format!("{label}: {e}")),
        }
        match xmod_to_internal(xm).and_then(|ic| roundtrip_internal(&ic)) {
            Ok((iso, r)) => t.expect(r.passed && iso.verified && !iso.fallback_used, || format!("{label}: {r}")),
            Err(e) => t.expect(false, || format!("{label}: {e}")),
        }
        t
    });
    t.outcome(4, "round_trips", format!("{n} crossed modules and {n} internal categories via canonical maps"))
}

fn expect_split(t: &mut Tally, label: &str, s: &Hom, e: &Hom) {
    match split_epi_decompose(s, e) {
        Ok(dec) => {
            let ok = dec.report.passed && is_homomorphism(&dec.phi).passed && dec.phi.is_bijective();
            t.expect(ok, || format!("{label}: {}", dec.report));
        }
        Err(err) => t.expect(false, || format!("{label}: {err}")),
    }
}

pub fn split_epi_criterion() -> CriterionOutcome {
    let mut t = Tally::new();
    let small: Vec<FiniteGroup> = catalog().into_iter().filter(|g| g.order() <= 6).collect();
    let mut projections = 0;
    for g in &small {
        for h in &small {
            let dp = direct_product(g, h);
            let label = dp.group.name().to_string();
            expect_split(&mut t, &format!("{label} -> left"), &dp.left_projection, &dp.left_injection);
            expect_split(&mut t, &format!("{label} -> right"), &dp.right_projection, &dp.right_injection);
            projections += 2;
        }
    }

    let s3 = symmetric(3).expect("S3");
    let z2 = cyclic(2).expect("Z2");
    match Hom::checked(&s3, &z2, vec![0, 1, 1, 0, 0, 1]) {
        Ok(sign) => match find_section(&sign) {
            Some(e) => expect_split(&mut t, "sign", &sign, &e),
            None => t.expect(false, || "sign on S3 has no section".into()),
        },
        Err(e) => t.expect(false, || format!("sign: {e}")),
    }

    let mut quotients = 0;
    let mut split = 0;
    for g in catalog().into_iter().filter(|g| g.order() <= 12) {
        for n in normal_subgroups(&g) {
            quotients += 1;
            let Ok((_, pi)) = quotient(&g, &n) else {
                t.expect(false, || format!("{}/{}: quotient failed", g.name(), n.order()));
                continue;
            };
            if let Some(e) = find_section(&pi) {
                split += 1;
                expect_split(&mut t, &format!("{} / {}", g.name(), n.order()), &pi, &e);
            }
        }
    }
    t.outcome(
        5,
        "split_epi_decomposition",
        format!("{projections} product projections, sign on S3, {split} of {quotients} quotients split"),
    )
}

pub fn interchange_criterion() -> CriterionOutcome {
    let mut t = Tally::new();
    for g in catalog() {
        let m = FinSetMap::of_group_table(&g);
        let oracle = table_commutes(&g);
        match check_interchange(g.order(), &m, &m) {
            Ok(r) => {
                t.expect(r.passed == oracle, || format!("{}: interchange {}, abelian {oracle}", g.name(), r.passed));
                if let Some(w) = r.witness.as_deref().filter(|_| !r.passed) {
                    // Re-evaluate (x·y)·(z·w) against (x·z)·(y·w) at the witness.
                    let ok = match *w {
                        [x, y, z, v] => g.mul(g.mul(x, y), g.mul(z, v)) != g.mul(g.mul(x, z), g.mul(y, v)),
                        _ => false,
                    };
                    t.expect(ok, || format!("{}: witness {w:?} does not reproduce", g.name()));
                }
            }
            Err(e) => t.expect(false, || format!("{}: {e}", g.name())),
        }
    }
    let s3 = symmetric(3).expect("S3");
    let m = FinSetMap::of_group_table(&s3);
    let witness = check_interchange(6, &m, &m).ok().and_then(|r| r.witness);
    t.expect(witness.as_ref().is_some_and(|w| w.len() == 4), || "S3 gave no witness quadruple".into());
    t.outcome(6, "interchange", format!("exact over the catalog; S3 witness {witness:?}"))
}

fn all_comultiplications(n: usize) -> Vec<Vec<Tagged>> {
    let values: Vec<Tagged> = (0..n).map(Tagged::left).chain((0..n).map(Tagged::right)).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w: Vec<Tagged>| {
                values.iter().map(move |&v| {
                    let mut w = w.clone();
                    w.push(v);
                    w
                })
            })
            .collect();
    }
    out
}

pub const COGROUP_SAMPLES: usize = 100;
pub const SEED: u64 = 0;

pub fn cogroup_criterion() -> CriterionOutcome {
    let mut t = Tally::new();
    let counit_fails = |cand: &CogroupCandidate| match check_cogroup_object(cand) {
        Ok(r) => !r.passed && r.detail.starts_with("counit:") && r.witness.is_some(),
        Err(_) => false,
    };
    let empty = check_cogroup_object(&CogroupCandidate::new(0, Vec::new())).map(|r| r.passed).unwrap_or(false);
    t.expect(empty, || "empty carrier is not a cogroup".into());
    let mut exhaustive = 0;
    for n in 1..=2 {
        for w in all_comultiplications(n) {
            exhaustive += 1;
            let cand = CogroupCandidate::new(n, w);
            t.expect(counit_fails(&cand), || format!("size {n}: {:?} did not fail at the counit", cand.comultiplication));
        }
    }
    let mut rng = StdRng::seed_from_u64(SEED);
    for n in 3..=4 {
        for _ in 0..COGROUP_SAMPLES {
            let w: Vec<Tagged> = (0..n)
                .map(|_| {
                    let x = rng.random_range(0..n);
                    if rng.random_range(0..2) == 0 {
                        Tagged::left(x)
                    } else {
                        Tagged::right(x)
                    }
                })
                .collect();
            let cand = CogroupCandidate::new(n, w);
            t.expect(counit_fails(&cand), || format!("size {n}: {:?} did not fail at the counit", cand.comultiplication));
        }
    }
    t.outcome(
        7,
        "cogroup_degeneracy",
        format!("empty carrier passes; {exhaustive} exhaustive and {} sampled nonempty candidates fail at the counit", 2 * COGROUP_SAMPLES),
    )
}

pub const FAULT_POSITIONS: usize = 10;

pub fn fault_injection_criterion() -> CriterionOutcome {
    let mut t = Tally::new();
    let s3 = symmetric(3).expect("S3");
    let a3 = Subgroup::from_members(&s3, [0, 3, 4], "A3").expect("A3");
    let ic = match inclusion_crossed_module(&a3).and_then(|xm| xmod_to_internal(&xm)) {
        Ok(ic) => ic,
        Err(e) => {
            t.expect(false, || format!("A3<|S3 construction: {e}"));
            return t.outcome(8, "fault_injection", String::new());
        }
    };
    let pairs = ic.pairs().order();
    let arrows = ic.arrows().order();
    let mut rng = StdRng::seed_from_u64(SEED);
    let positions = rand::seq::index::sample(&mut rng, pairs, FAULT_POSITIONS).into_vec();
    let mut legs_hit = Vec::new();
    for &p in &positions {
        let mut comp = ic.composition().to_vec();
        let original = comp[p];
        let mut value = rng.random_range(0..arrows - 1);
        if value >= original {
            value += 1;
        }
        comp[p] = value;
        let bad = ic.with_composition(comp).expect("same shape");
        let report = check_internal_category(&bad);
        let combined = report.report();
        let named = report.legs().iter().any(|l| !l.passed && l.witness.is_some() && combined.detail.starts_with(&format!("{}:", l.check)));
        t.expect(!combined.passed && named, || format!("position {p} ({original} -> {value}) undetected: {combined}"));
        // The cat-group functoriality of composition scans the same law as
        // the interchange leg.
        let mu = cat_group_structure_report(&bad);
        let mu_fails = !mu.passed && mu.detail.starts_with("mu_preserves_composition:");
        t.expect(mu_fails == !report.interchange.passed, || format!("position {p}: interchange and mu disagree"));
        if let Some(l) = report.legs().iter().find(|l| !l.passed) {
            legs_hit.push(l.check.clone());
        }
    }
    legs_hit.sort();
    legs_hit.dedup();
    t.outcome(
        8,
        "fault_injection",
        format!("{} corruptions among {pairs} composable pairs all detected; first failing legs {legs_hit:?}", positions.len()),
    )
}

fn capture(f: impl FnOnce(&mut Vec<u8>, &mut Vec<u8>) -> i32) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = f(&mut out, &mut err);
    out.extend(err);
    (code, String::from_utf8_lossy(&out).into_owned())
}

pub fn parser_cli_criterion() -> CriterionOutcome {
    let mut t = Tally::new();
    let fixtures = [
        ("a3_s3_xmod.cg", FIXTURE_XMOD, EXIT_OK),
        ("a3_s3_trivial_action.cg", FIXTURE_TRIVIAL_ACTION, EXIT_FAILED),
        ("bad_row.cg", FIXTURE_BAD_ROW, EXIT_USAGE),
        ("trivial_xmod.cg", FIXTURE_TRIVIAL_XMOD, EXIT_OK),
        ("a3_s3_internal.cg", FIXTURE_INTERNAL, EXIT_OK),
    ];
    for (name, text, want) in fixtures {
        if let Ok(doc) = parse_spec(text) {
            t.expect(serialize_spec(&doc) == text, || format!("{name} does not round-trip byte-exactly"));
        }
        let (code, output) = capture(|o, e| check_source(text, name, false, o, e));
        t.expect(code == want, || format!("{name}: exit {code}, expected {want}"));
        if want == EXIT_FAILED {
            t.expect(output.contains("FAIL equivariance") && output.contains("[witness:"), || {
                format!("{name}: no equivariance witness printed")
            });
        }
        let (a, b) = (capture(|o, e| check_source(text, name, true, o, e)), capture(|o, e| check_source(text, name, true, o, e)));
        t.expect(a == b, || format!("{name}: JSON output differs between runs"));
    }
    let (code, output) = capture(|o, e| roundtrip_source(FIXTURE_TRIVIAL_XMOD, "trivial_xmod.cg", "T", false, o, e));
    t.expect(code == EXIT_OK && output.contains("alpha: 0\n"), || format!("roundtrip on trivial xmod: exit {code}"));
    t.outcome(9, "parser_cli", "fixtures round-trip byte-exactly; exit codes 0/1/2 as expected; JSON stable".into())
}

/// Every criterion, in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    let criteria: [fn() -> CriterionOutcome; 9] = [
        eckmann_hilton_criterion,
        crossed_module_criterion,
        construction_criterion,
        roundtrip_criterion,
        split_epi_criterion,
        interchange_criterion,
        cogroup_criterion,
        fault_injection_criterion,
        parser_cli_criterion,
    ];
    criteria.into_par_iter().map(|c| c()).collect()
}
