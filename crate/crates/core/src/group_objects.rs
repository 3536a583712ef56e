//! Monoid, group and cogroup objects checked as commuting diagrams.
//!
//! Every diagram is evaluated literally: both composites are built as
//! [`FinSetMap`]s and compared pointwise. Products of finite sets use the
//! pair index `a * |right| + b`, so `(G×G)×G` and `G×(G×G)` share one flat
//! index `a*n² + b*n + c` and the associator is the identity on indices.

use crate::action::{Carrier, GroupAction};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hom::{is_homomorphism, Hom};
use crate::product::{direct_product, pair_parts};
use crate::report::CheckReport;

/// A total function `0..source_size → 0..target_size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSetMap {
    source_size: usize,
    target_size: usize,
    map: Vec<usize>,
}

impl FinSetMap {
    pub fn new(source_size: usize, target_size: usize, map: Vec<usize>) -> Result<Self> {
        if map.len() != source_size {
            return Err(Error::Malformed(format!(
                "map has {} entries, expected {source_size}",
                map.len()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target_size) {
            return Err(Error::Malformed(format!("value {bad} is out of range 0..{target_size}")));
        }
        Ok(FinSetMap {
            source_size,
            target_size,
            map,
        })
    }

    pub fn identity(n: usize) -> Self {
        FinSetMap {
            source_size: n,
            target_size: n,
            map: (0..n).collect(),
        }
    }

    /// `Δ: X → X×X`, `x ↦ (x, x)`
    pub fn diagonal(n: usize) -> Self {
        FinSetMap {
            source_size: n,
            target_size: n * n,
            map: (0..n).map(|x| x * n + x).collect(),
        }
    }

    /// The unique map to the one-point set.
    pub fn to_terminal(n: usize) -> Self {
        FinSetMap {
            source_size: n,
            target_size: 1,
            map: vec![0; n],
        }
    }

    /// The point `0 ↦ x` of an `n`-element set.
    pub fn point(n: usize, x: usize) -> Result<Self> {
        FinSetMap::new(1, n, vec![x])
    }

    /// A binary operation given as an `n×n` table.
    pub fn binary(n: usize, rows: &[Vec<usize>]) -> Result<Self> {
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed(format!("binary operation must be a {n}x{n} table")));
        }
        FinSetMap::new(n * n, n, rows.concat())
    }

    pub fn of_group_table(g: &FiniteGroup) -> Self {
        FinSetMap {
            source_size: g.order() * g.order(),
            target_size: g.order(),
            map: g.table().to_vec(),
        }
    }

    pub fn source_size(&self) -> usize {
        self.source_size
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self` then `next`.
    pub fn then(&self, next: &FinSetMap) -> FinSetMap {
        assert_eq!(self.target_size, next.source_size, "composing mismatched maps");
        FinSetMap {
            source_size: self.source_size,
            target_size: next.target_size,
            map: self.map.iter().map(|&y| next.map[y]).collect(),
        }
    }

    /// `f × g: X×Y → X′×Y′`
    pub fn product(f: &FinSetMap, g: &FinSetMap) -> FinSetMap {
        let mut map = Vec::with_capacity(f.source_size * g.source_size);
        for a in 0..f.source_size {
            for b in 0..g.source_size {
                map.push(f.map[a] * g.target_size + g.map[b]);
            }
        }
        FinSetMap {
            source_size: f.source_size * g.source_size,
            target_size: f.target_size * g.target_size,
            map,
        }
    }
}

/// First source point where two parallel composites disagree.
fn disagreement(lhs: &FinSetMap, rhs: &FinSetMap) -> Option<usize> {
    debug_assert_eq!(lhs.source_size, rhs.source_size);
    (0..lhs.source_size).find(|&x| lhs.map[x] != rhs.map[x])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    FinSet,
    FinGrp,
}

/// `⟨G, m, e, i⟩`; with `inverse == None` it is a monoid-object candidate.
#[derive(Clone, Debug)]
pub struct GroupObjectCandidate {
    pub carrier: Carrier,
    pub multiplication: FinSetMap,
    pub unit: FinSetMap,
    pub inverse: Option<FinSetMap>,
    pub ambient: Ambient,
}

impl GroupObjectCandidate {
    /// A group's own structure maps.
    pub fn of_group(g: &FiniteGroup, ambient: Ambient) -> Self {
        GroupObjectCandidate {
            carrier: Carrier::Group(g.clone()),
            multiplication: FinSetMap::of_group_table(g),
            unit: FinSetMap::point(g.order(), 0).expect("identity point"),
            inverse: Some(FinSetMap {
                source_size: g.order(),
                target_size: g.order(),
                map: g.elements().map(|x| g.inv(x)).collect(),
            }),
            ambient,
        }
    }

    fn validate(&self) -> Result<usize> {
        let n = self.carrier.size();
        let m = &self.multiplication;
        if m.source_size != n * n || m.target_size != n {
            return Err(Error::Malformed("multiplication must map carrier² to carrier".into()));
        }
        if self.unit.source_size != 1 || self.unit.target_size != n {
            return Err(Error::Malformed("unit must map the one-point set to the carrier".into()));
        }
        if let Some(i) = &self.inverse {
            if i.source_size != n || i.target_size != n {
                return Err(Error::Malformed("inverse must map carrier to carrier".into()));
            }
        }
        if self.ambient == Ambient::FinGrp && self.carrier.as_group().is_none() {
            return Err(Error::Malformed("a FinGrp candidate needs a group carrier".into()));
        }
        Ok(n)
    }
}

fn monoid_legs(cand: &GroupObjectCandidate, n: usize) -> Vec<CheckReport> {
    let m = &cand.multiplication;
    let id = FinSetMap::identity(n);
    let mut legs = Vec::new();

    let assoc_lhs = FinSetMap::product(&id, m).then(m);
    let assoc_rhs = FinSetMap::product(m, &id).then(m);
    legs.push(match disagreement(&assoc_lhs, &assoc_rhs) {
        Some(x) => {
            let (a, b, c) = (x / (n * n), (x / n) % n, x % n);
            CheckReport::fail(
                "associativity",
                vec![a, b, c],
                format!("m(a, m(b, c)) = {} but m(m(a, b), c) = {}", assoc_lhs.map[x], assoc_rhs.map[x]),
            )
        }
        None => CheckReport::pass("associativity", "associativity square commutes"),
    });

    // 1×G and G×1 are indexed like G, so the unit isomorphisms are identities.
    for (name, side) in [
        ("left_unit", FinSetMap::product(&cand.unit, &id)),
        ("right_unit", FinSetMap::product(&id, &cand.unit)),
    ] {
        let lhs = side.then(m);
        legs.push(match disagreement(&lhs, &id) {
            Some(x) => CheckReport::fail(name, vec![x], format!("unit composite sends {x} to {}", lhs.map[x])),
            None => CheckReport::pass(name, "unit triangle commutes"),
        });
    }
    legs
}

fn inverse_legs(cand: &GroupObjectCandidate, inverse: &FinSetMap, n: usize) -> Vec<CheckReport> {
    let m = &cand.multiplication;
    let id = FinSetMap::identity(n);
    let delta = FinSetMap::diagonal(n);
    let via_unit = FinSetMap::to_terminal(n).then(&cand.unit);
    [
        ("left_inverse", FinSetMap::product(inverse, &id)),
        ("right_inverse", FinSetMap::product(&id, inverse)),
    ]
    .into_iter()
    .map(|(name, pairing)| {
        let lhs = delta.then(&pairing).then(m);
        match disagreement(&lhs, &via_unit) {
            Some(g) => CheckReport::fail(
                name,
                vec![g],
                format!("inverse square gives {} at {g}, unit gives {}", lhs.map[g], via_unit.map[g]),
            ),
            None => CheckReport::pass(name, "inverse square commutes"),
        }
    })
    .collect()
}

fn structure_hom_legs(cand: &GroupObjectCandidate) -> Result<Vec<CheckReport>> {
    let g = cand.carrier.as_group().expect("validated FinGrp carrier");
    let mut legs = Vec::new();
    let gg = direct_product(g, g).group;
    let m = Hom::new(&gg, g, cand.multiplication.map.clone())?;
    let r = is_homomorphism(&m);
    legs.push(match r.witness {
        Some(w) => {
            let (x, y) = pair_parts(w[0], g.order());
            let (z, v) = pair_parts(w[1], g.order());
            CheckReport::fail("m_homomorphism", vec![x, y, z, v], format!("m((x,y)·(z,w)) != m(x,y)·m(z,w): {}", r.detail))
        }
        None => r.renamed("m_homomorphism"),
    });
    let e = Hom::new(&FiniteGroup::trivial(), g, cand.unit.map.clone())?;
    legs.push(is_homomorphism(&e).renamed("e_homomorphism"));
    if let Some(inv) = &cand.inverse {
        let i = Hom::new(g, g, inv.map.clone())?;
        legs.push(is_homomorphism(&i).renamed("i_homomorphism"));
    }
    Ok(legs)
}

/// Associativity square and both unit triangles; in `FinGrp` also that
/// `m` and `e` are homomorphisms.
pub fn check_monoid_object(cand: &GroupObjectCandidate) -> Result<CheckReport> {
    let n = cand.validate()?;
    let mut legs = monoid_legs(cand, n);
    if cand.ambient == Ambient::FinGrp {
        let mut homs = structure_hom_legs(&GroupObjectCandidate {
            inverse: None,
            ..cand.clone()
        })?;
        legs.append(&mut homs);
    }
    Ok(CheckReport::combine("monoid_object", &legs, format!("monoid object on {n} elements")))
}

/// Monoid diagrams plus both inverse squares (through `Δ`); in `FinGrp`
/// also that `m`, `e`, `i` are homomorphisms.
pub fn check_group_object(cand: &GroupObjectCandidate) -> Result<CheckReport> {
    let n = cand.validate()?;
    let inverse = cand
        .inverse
        .as_ref()
        .ok_or_else(|| Error::Malformed("a group object candidate needs an inverse map".into()))?;
    let mut legs = monoid_legs(cand, n);
    legs.extend(inverse_legs(cand, inverse, n));
    if cand.ambient == Ambient::FinGrp {
        legs.extend(structure_hom_legs(cand)?);
    }
    Ok(CheckReport::combine("group_object", &legs, format!("group object on {n} elements")))
}

/// `(x∗y)·(z∗w) = (x·z)∗(y·w)` over all quadruples; witness `[x, y, z, w]`.
pub fn check_interchange(n: usize, star: &FinSetMap, dot: &FinSetMap) -> Result<CheckReport> {
    for op in [star, dot] {
        if op.source_size != n * n || op.target_size != n {
            return Err(Error::Malformed(format!("operations must be {n}x{n} tables")));
        }
    }
    let s = |a: usize, b: usize| star.map[a * n + b];
    let d = |a: usize, b: usize| dot.map[a * n + b];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let lhs = d(s(x, y), s(z, w));
                    let rhs = s(d(x, z), d(y, w));
                    if lhs != rhs {
                        return Ok(CheckReport::fail(
                            "interchange",
                            vec![x, y, z, w],
                            format!("(x*y)·(z*w) = {lhs} but (x·z)*(y·w) = {rhs}"),
                        ));
                    }
                }
            }
        }
    }
    Ok(CheckReport::pass("interchange", format!("holds over all {} quadruples", n.pow(4))))
}

/// The two conclusions drawn from a group object in `FinGrp`.
#[derive(Clone, Debug)]
pub struct EckmannHilton {
    /// `m(x, y) = x·y` for the carrier's own product.
    pub agreement: CheckReport,
    /// The carrier's own product commutes.
    pub commutativity: CheckReport,
}

impl EckmannHilton {
    pub fn report(&self) -> CheckReport {
        CheckReport::combine(
            "eckmann_hilton",
            &[self.agreement.clone(), self.commutativity.clone()],
            "m is the native product and the group is abelian",
        )
    }
}

pub fn eckmann_hilton(cand: &GroupObjectCandidate) -> Result<EckmannHilton> {
    if cand.ambient != Ambient::FinGrp {
        return Err(Error::Contract("eckmann_hilton needs a FinGrp candidate".into()));
    }
    let pre = check_group_object(cand)?;
    if !pre.passed {
        return Err(Error::contract(&pre));
    }
    let g = cand.carrier.as_group().expect("FinGrp carrier");
    let n = g.order();
    let mut agreement = CheckReport::pass("m_is_native_product", "m(x, y) = x·y for every pair");
    'outer: for x in 0..n {
        for y in 0..n {
            if cand.multiplication.map[x * n + y] != g.mul(x, y) {
                agreement = CheckReport::fail("m_is_native_product", vec![x, y], "m differs from the native product");
                break 'outer;
            }
        }
    }
    let mut commutativity = CheckReport::pass("native_commutative", format!("{} is abelian", g.name()));
    'outer2: for x in 0..n {
        for y in 0..n {
            if g.mul(x, y) != g.mul(y, x) {
                commutativity = CheckReport::fail("native_commutative", vec![x, y], "x·y != y·x");
                break 'outer2;
            }
        }
    }
    Ok(EckmannHilton {
        agreement,
        commutativity,
    })
}

/// `¹x = x` (witness `[x]`) and `ᵍ(ʰx) = ⁽ᵍʰ⁾x` (witness `[g, h, x]`).
pub fn check_group_action(act: &GroupAction) -> CheckReport {
    const NAME: &str = "group_action";
    let g = act.group();
    let n = act.carrier().size();
    if let Some(x) = (0..n).find(|&x| act.act(0, x) != x) {
        return CheckReport::fail(NAME, vec![x], format!("identity moves {x} to {}", act.act(0, x)));
    }
    for a in g.elements() {
        for b in g.elements() {
            let ab = g.mul(a, b);
            for x in 0..n {
                let lhs = act.act(a, act.act(b, x));
                let rhs = act.act(ab, x);
                if lhs != rhs {
                    return CheckReport::fail(
                        NAME,
                        vec![a, b, x],
                        format!("acting by {b} then {a} gives {lhs}, acting by {ab} gives {rhs}"),
                    );
                }
            }
        }
    }
    CheckReport::pass(NAME, format!("{} acts on {n} points", g.name()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// An element of `C ⊔ C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tagged {
    pub side: Side,
    pub elem: usize,
}

impl Tagged {
    pub fn left(elem: usize) -> Self {
        Tagged { side: Side::Left, elem }
    }

    pub fn right(elem: usize) -> Self {
        Tagged { side: Side::Right, elem }
    }
}

/// Comultiplication `w: C → C⊔C`, counit `η: C → ∅` (only representable
/// for the empty carrier) and an optional co-inverse `C → C`.
#[derive(Clone, Debug)]
pub struct CogroupCandidate {
    pub size: usize,
    pub comultiplication: Vec<Tagged>,
    pub counit: Option<Vec<usize>>,
    pub coinverse: Option<Vec<usize>>,
}

impl CogroupCandidate {
    pub fn new(size: usize, comultiplication: Vec<Tagged>) -> Self {
        CogroupCandidate {
            size,
            comultiplication,
            counit: if size == 0 { Some(Vec::new()) } else { None },
            coinverse: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.comultiplication.len() != self.size {
            return Err(Error::Malformed(format!(
                "comultiplication has {} entries, expected {}",
                self.comultiplication.len(),
                self.size
            )));
        }
        if self.comultiplication.iter().any(|t| t.elem >= self.size) {
            return Err(Error::Malformed("comultiplication tag points outside the carrier".into()));
        }
        if let Some(i) = &self.coinverse {
            if i.len() != self.size || i.iter().any(|&x| x >= self.size) {
                return Err(Error::Malformed("co-inverse must map the carrier to itself".into()));
            }
        }
        if let Some(eta) = &self.counit {
            if !eta.is_empty() {
                return Err(Error::Malformed("the initial object is empty; η has no values".into()));
            }
        }
        Ok(())
    }
}

/// `(w⊔id)∘w = (id⊔w)∘w` with both sides flattened into `C⊔C⊔C`
/// (tags 0, 1, 2 from left to right). Witness `[x]`.
pub fn check_coassociativity(cand: &CogroupCandidate) -> Result<CheckReport> {
    cand.validate()?;
    let w = &cand.comultiplication;
    for x in 0..cand.size {
        let via_left = match w[x] {
            Tagged { side: Side::Left, elem } => match w[elem].side {
                Side::Left => (0, w[elem].elem),
                Side::Right => (1, w[elem].elem),
            },
            Tagged { side: Side::Right, elem } => (2, elem),
        };
        let via_right = match w[x] {
            Tagged { side: Side::Left, elem } => (0, elem),
            Tagged { side: Side::Right, elem } => match w[elem].side {
                Side::Left => (1, w[elem].elem),
                Side::Right => (2, w[elem].elem),
            },
        };
        if via_left != via_right {
            return Ok(CheckReport::fail(
                "coassociativity",
                vec![x],
                format!("(w+id)w sends {x} to summand {} elem {}, (id+w)w to summand {} elem {}",
                    via_left.0, via_left.1, via_right.0, via_right.1),
            ));
        }
    }
    Ok(CheckReport::pass("coassociativity", "co-associativity square commutes"))
}

/// All cogroup diagrams in finite sets, with `∅` as the initial object and
/// `∇: C⊔C → C` forgetting the tag. A map `C → ∅` exists only for `C = ∅`,
/// so every nonempty carrier fails the counit leg.
pub fn check_cogroup_object(cand: &CogroupCandidate) -> Result<CheckReport> {
    cand.validate()?;
    let mut legs = Vec::new();
    if cand.size > 0 {
        legs.push(CheckReport::fail("counit", vec![0], "no map to the initial object exists"));
    } else {
        legs.push(CheckReport::pass("counit", "empty carrier: η is the empty map"));
    }
    legs.push(check_coassociativity(cand)?);
    if cand.size > 0 {
        legs.push(CheckReport::fail("coinverse", vec![0], "co-inverse square needs η, which does not exist"));
    } else {
        legs.push(CheckReport::pass("coinverse", "empty carrier: vacuous"));
    }
    Ok(CheckReport::combine("cogroup_object", &legs, "cogroup object (empty carrier)"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, symmetric};
    use crate::product::direct_product;

    fn z4_candidate(unit: usize) -> GroupObjectCandidate {
        let z4 = cyclic(4).unwrap();
        let mut c = GroupObjectCandidate::of_group(&z4, Ambient::FinSet);
        c.unit = FinSetMap::point(4, unit).unwrap();
        c.inverse = None;
        c
    }

    #[test]
    fn one_point_monoid() {
        let c = GroupObjectCandidate {
            carrier: Carrier::Set(1),
            multiplication: FinSetMap::new(1, 1, vec![0]).unwrap(),
            unit: FinSetMap::point(1, 0).unwrap(),
            inverse: None,
            ambient: Ambient::FinSet,
        };
        assert!(check_monoid_object(&c).unwrap().passed);
    }

    #[test]
    fn z4_monoid_and_bad_unit() {
        assert!(check_monoid_object(&z4_candidate(0)).unwrap().passed);
        let r = check_monoid_object(&z4_candidate(1)).unwrap();
        assert!(!r.passed);
        assert_eq!(r.witness, Some(vec![0]));
        assert!(r.detail.starts_with("left_unit"));
    }

    #[test]
    fn groups_are_group_objects_in_set() {
        let s3 = symmetric(3).unwrap();
        assert!(check_group_object(&GroupObjectCandidate::of_group(&s3, Ambient::FinSet)).unwrap().passed);
    }

    #[test]
    fn s3_fails_in_grp_with_reproducible_witness() {
        let s3 = symmetric(3).unwrap();
        let r = check_group_object(&GroupObjectCandidate::of_group(&s3, Ambient::FinGrp)).unwrap();
        assert!(!r.passed);
        let w = r.witness.unwrap();
        let (x, y, z, v) = (w[0], w[1], w[2], w[3]);
        assert_ne!(s3.mul(s3.mul(x, z), s3.mul(y, v)), s3.mul(s3.mul(x, y), s3.mul(z, v)));
    }

    #[test]
    fn z4_in_grp_and_eckmann_hilton() {
        let z4 = cyclic(4).unwrap();
        let c = GroupObjectCandidate::of_group(&z4, Ambient::FinGrp);
        assert!(check_group_object(&c).unwrap().passed);
        let eh = eckmann_hilton(&c).unwrap();
        assert!(eh.agreement.passed && eh.commutativity.passed);
    }

    #[test]
    fn eckmann_hilton_precondition() {
        let s3 = symmetric(3).unwrap();
        assert!(eckmann_hilton(&GroupObjectCandidate::of_group(&s3, Ambient::FinGrp)).is_err());
        assert!(eckmann_hilton(&GroupObjectCandidate::of_group(&s3, Ambient::FinSet)).is_err());
        let v4 = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).group;
        assert!(eckmann_hilton(&GroupObjectCandidate::of_group(&v4, Ambient::FinGrp)).unwrap().report().passed);
    }

    #[test]
    fn missing_inverse_leg() {
        let z3 = cyclic(3).unwrap();
        let mut c = GroupObjectCandidate::of_group(&z3, Ambient::FinSet);
        c.inverse = Some(FinSetMap::identity(3));
        let r = check_group_object(&c).unwrap();
        assert!(!r.passed);
        assert!(r.detail.starts_with("left_inverse"));
        assert_eq!(r.witness, Some(vec![1]));
    }

    #[test]
    fn interchange_examples() {
        let z2 = FinSetMap::of_group_table(&cyclic(2).unwrap());
        assert!(check_interchange(2, &z2, &z2).unwrap().passed);
        let s3 = symmetric(3).unwrap();
        let t = FinSetMap::of_group_table(&s3);
        let r = check_interchange(6, &t, &t).unwrap();
        assert!(!r.passed);
        assert_eq!(r.witness.as_ref().unwrap().len(), 4);
    }

    #[test]
    fn actions() {
        let s3 = symmetric(3).unwrap();
        assert!(check_group_action(&GroupAction::left_translation(&s3)).passed);
        assert!(check_group_action(&GroupAction::conjugation(&s3)).passed);
        assert!(check_group_action(&GroupAction::trivial(&s3, Carrier::Set(4))).passed);
        let bad = GroupAction::left_translation(&s3).with_entry(1, 2, 0).unwrap();
        let r = check_group_action(&bad);
        assert!(!r.passed);
        let w = r.witness.unwrap();
        assert_ne!(bad.act(w[0], bad.act(w[1], w[2])), bad.act(s3.mul(w[0], w[1]), w[2]));
    }

    #[test]
    fn cogroups() {
        let empty = CogroupCandidate::new(0, vec![]);
        assert!(check_cogroup_object(&empty).unwrap().passed);
        let one = CogroupCandidate::new(1, vec![Tagged::left(0)]);
        assert!(check_coassociativity(&one).unwrap().passed);
        let r = check_cogroup_object(&one).unwrap();
        assert!(!r.passed);
        assert!(r.detail.contains("no map to the initial object exists"));
        let bad = CogroupCandidate::new(1, vec![Tagged::left(1)]);
        assert!(check_cogroup_object(&bad).is_err());
    }

    #[test]
    fn coassociativity_can_fail() {
        // w(0) = left(1), w(1) = right(0): left route lands in summand 1,
        // right route in summand 0.
        let c = CogroupCandidate::new(2, vec![Tagged::left(1), Tagged::right(0)]);
        let r = check_coassociativity(&c).unwrap();
        assert!(!r.passed);
        assert_eq!(r.witness, Some(vec![0]));
    }
}
