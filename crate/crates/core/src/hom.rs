use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::report::CheckReport;

/// A total map between two finite groups.
///
/// `verified` records that [`is_homomorphism`] passed for this exact map;
/// operations that need a homomorphism insist on it.
#[derive(Clone, Debug)]
pub struct Hom {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<Elem>,
    verified: bool,
}

impl Hom {
    /// Wraps a map, checking only arity and range.
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, map: Vec<Elem>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::Malformed(format!(
                "map has {} entries but the source {} has order {}",
                map.len(),
                source.name(),
                source.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.order()) {
            return Err(Error::Malformed(format!(
                "image {bad} is out of range for the target {} of order {}",
                target.name(),
                target.order()
            )));
        }
        Ok(Hom {
            source: source.clone(),
            target: target.clone(),
            map,
            verified: false,
        })
    }

    /// Wraps a map and verifies that it is a homomorphism.
    pub fn checked(source: &FiniteGroup, target: &FiniteGroup, map: Vec<Elem>) -> Result<Self> {
        Hom::new(source, target, map)?.verify()
    }

    pub fn verify(mut self) -> Result<Self> {
        if !self.verified {
            let report = is_homomorphism(&self);
            if !report.passed {
                return Err(Error::contract(&report));
            }
            self.verified = true;
        }
        Ok(self)
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Hom {
            source: g.clone(),
            target: g.clone(),
            map: g.elements().collect(),
            verified: true,
        }
    }

    /// The constant map onto the identity of `target`.
    pub fn trivial(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        Hom {
            source: source.clone(),
            target: target.clone(),
            map: vec![0; source.order()],
            verified: true,
        }
    }

    /// For callers that have just run [`is_homomorphism`] on this map.
    pub(crate) fn assume_verified(mut self) -> Self {
        debug_assert!(is_homomorphism(&self).passed);
        self.verified = true;
        self
    }

    pub(crate) fn trusted(source: &FiniteGroup, target: &FiniteGroup, map: Vec<Elem>) -> Self {
        debug_assert_eq!(map.len(), source.order());
        let h = Hom {
            source: source.clone(),
            target: target.clone(),
            map,
            verified: true,
        };
        debug_assert!(is_homomorphism(&h).passed);
        h
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, g: Elem) -> Elem {
        self.map[g]
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// `self` followed by `next`, i.e. `next ∘ self`.
    pub fn then(&self, next: &Hom) -> Result<Hom> {
        if !self.target.same_table(&next.source) {
            return Err(Error::Malformed(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source.name(),
                self.target.name(),
                next.source.name(),
                next.target.name()
            )));
        }
        Ok(Hom {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&x| next.map[x]).collect(),
            verified: self.verified && next.verified,
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Option<Hom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(Hom {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
            verified: self.verified,
        })
    }
}

/// Exhaustive homomorphism test over all `|source|²` pairs.
///
/// Witness is the first pair `[g, h]` with `f(g·h) != f(g)·f(h)`.
pub fn is_homomorphism(f: &Hom) -> CheckReport {
    const NAME: &str = "homomorphism";
    let (src, tgt) = (&f.source, &f.target);
    for g in src.elements() {
        for h in src.elements() {
            let lhs = f.map[src.mul(g, h)];
            let rhs = tgt.mul(f.map[g], f.map[h]);
            if lhs != rhs {
                return CheckReport::fail(
                    NAME,
                    vec![g, h],
                    format!("f({g}·{h}) = {lhs} but f({g})·f({h}) = {rhs}"),
                );
            }
        }
    }
    CheckReport::pass(
        NAME,
        format!("{} -> {} preserves all {} products", src.name(), tgt.name(), src.order() * src.order()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::cyclic;

    #[test]
    fn identity_and_trivial_maps_are_homs() {
        let g = cyclic(5).unwrap();
        assert!(is_homomorphism(&Hom::new(&g, &g, g.elements().collect()).unwrap()).passed);
        let h = cyclic(3).unwrap();
        assert!(is_homomorphism(&Hom::new(&g, &h, vec![0; 5]).unwrap()).passed);
    }

    #[test]
    fn shift_is_not_a_hom() {
        let z4 = cyclic(4).unwrap();
        let f = Hom::new(&z4, &z4, vec![1, 2, 3, 0]).unwrap();
        let r = is_homomorphism(&f);
        assert!(!r.passed);
        assert_eq!(r.witness, Some(vec![0, 0]));
    }

    #[test]
    fn arity_errors() {
        let z4 = cyclic(4).unwrap();
        assert!(Hom::new(&z4, &z4, vec![0, 1]).is_err());
        assert!(Hom::new(&z4, &z4, vec![0, 1, 2, 4]).is_err());
        assert!(Hom::checked(&z4, &z4, vec![1, 2, 3, 0]).is_err());
    }

    #[test]
    fn doubling_composes() {
        let z8 = cyclic(8).unwrap();
        let z4 = cyclic(4).unwrap();
        let f = Hom::checked(&z8, &z4, (0..8).map(|x| x % 4).collect()).unwrap();
        let g = Hom::checked(&z4, &z4, (0..4).map(|x| (2 * x) % 4).collect()).unwrap();
        let h = f.then(&g).unwrap();
        assert!(is_homomorphism(&h).passed);
        assert!(h.is_verified());
        assert!(g.then(&f).is_err());
    }
}
