//! Generator-based backtracking for isomorphisms and sections.

use crate::group::{Elem, FiniteGroup};
use crate::hom::Hom;
use crate::subgroup::closure;

/// A deterministic generating set: elements are taken greedily by
/// descending element order (ties by index) whenever they are not already
/// in the span of the earlier picks.
pub fn generators(g: &FiniteGroup) -> Vec<Elem> {
    let mut candidates: Vec<Elem> = g.elements().skip(1).collect();
    candidates.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut gens = Vec::new();
    let mut span = vec![0];
    for x in candidates {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = closure(g, &gens);
        }
    }
    gens
}

/// Extends `gens[i] ↦ imgs[i]` to a homomorphism on `⟨gens⟩`.
///
/// Returns `None` when the assignment is inconsistent. Entries outside
/// `⟨gens⟩` stay `None`. A consistent extension along every Cayley-graph
/// edge is a homomorphism on the generated subgroup.
pub fn extend_hom(src: &FiniteGroup, gens: &[Elem], tgt: &FiniteGroup, imgs: &[Elem]) -> Option<Vec<Option<Elem>>> {
    debug_assert_eq!(gens.len(), imgs.len());
    let mut map = vec![None; src.order()];
    map[0] = Some(0);
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        let fx = map[x].expect("visited");
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = src.mul(x, s);
            let v = tgt.mul(fx, t);
            match map[y] {
                None => {
                    map[y] = Some(v);
                    stack.push(y);
                }
                Some(w) if w != v => return None,
                Some(_) => {}
            }
        }
    }
    Some(map)
}

fn injective_on_domain(map: &[Option<Elem>], target_order: usize) -> bool {
    let mut seen = vec![false; target_order];
    map.iter().flatten().all(|&y| !std::mem::replace(&mut seen[y], true))
}

/// Searches for an isomorphism `g → h`, returning the one whose generator
/// images are lexicographically least.
pub fn isomorphism_search(g: &FiniteGroup, h: &FiniteGroup) -> Option<Hom> {
    if g.order() != h.order() || g.order_profile() != h.order_profile() {
        return None;
    }
    let gens = generators(g);
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&x| {
            let k = g.element_order(x);
            h.elements().filter(|&y| h.element_order(y) == k).collect()
        })
        .collect();
    let mut imgs = Vec::with_capacity(gens.len());
    let map = backtrack(g, h, &gens, &candidates, &mut imgs, &|m| injective_on_domain(m, h.order()))?;
    Hom::checked(g, h, map).ok().filter(Hom::is_bijective)
}

/// Searches for a homomorphic section `e` of a surjective `s` (`s∘e = id`).
pub fn find_section(s: &Hom) -> Option<Hom> {
    if !s.is_verified() || !s.is_surjective() {
        return None;
    }
    let (a, o) = (s.source(), s.target());
    let gens = generators(o);
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&x| {
            let k = o.element_order(x);
            a.elements().filter(|&y| s.apply(y) == x && a.element_order(y) == k).collect()
        })
        .collect();
    let mut imgs = Vec::with_capacity(gens.len());
    let map = backtrack(o, a, &gens, &candidates, &mut imgs, &|_| true)?;
    Hom::checked(o, a, map).ok()
}

fn backtrack(
    src: &FiniteGroup,
    tgt: &FiniteGroup,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    imgs: &mut Vec<Elem>,
    accept: &dyn Fn(&[Option<Elem>]) -> bool,
) -> Option<Vec<Elem>> {
    let depth = imgs.len();
    if depth == gens.len() {
        let map = extend_hom(src, gens, tgt, imgs)?;
        return map.into_iter().collect();
    }
    for &c in &candidates[depth] {
        imgs.push(c);
        let ok = extend_hom(src, &gens[..=depth], tgt, imgs).is_some_and(|m| accept(&m));
        if ok {
            if let Some(found) = backtrack(src, tgt, gens, candidates, imgs, accept) {
                return Some(found);
            }
        }
        imgs.pop();
    }
    None
}
