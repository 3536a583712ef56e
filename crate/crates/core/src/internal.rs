//! Internal reflexive digraphs and internal categories in finite groups.
//!
//! Composition is stored densely over the pullback of composable pairs.
//! `comp(f, g)` is "f then g", written `g∘f`; it is defined when
//! `t(f) = s(g)`.

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::hom::{is_homomorphism, Hom};
use crate::report::CheckReport;

/// `s, t: A → O` with a common splitting `e: O → A`.
#[derive(Clone, Debug)]
pub struct InternalDigraph {
    source: Hom,
    target: Hom,
    identity: Hom,
}

impl InternalDigraph {
    pub fn new(source: Hom, target: Hom, identity: Hom) -> Result<Self> {
        let (a, o) = (source.source(), source.target());
        let shapes_ok = target.source().same_table(a)
            && target.target().same_table(o)
            && identity.source().same_table(o)
            && identity.target().same_table(a);
        if !shapes_ok {
            return Err(Error::Malformed("s, t must map A to O and e must map O to A".into()));
        }
        Ok(InternalDigraph {
            source,
            target,
            identity,
        })
    }

    /// `A`
    pub fn arrows(&self) -> &FiniteGroup {
        self.source.source()
    }

    /// `O`
    pub fn objects(&self) -> &FiniteGroup {
        self.source.target()
    }

    pub fn source_map(&self) -> &Hom {
        &self.source
    }

    pub fn target_map(&self) -> &Hom {
        &self.target
    }

    pub fn identity_map(&self) -> &Hom {
        &self.identity
    }

    #[inline]
    pub fn s(&self, f: Elem) -> Elem {
        self.source.apply(f)
    }

    #[inline]
    pub fn t(&self, f: Elem) -> Elem {
        self.target.apply(f)
    }

    #[inline]
    pub fn e(&self, x: Elem) -> Elem {
        self.identity.apply(x)
    }
}

/// `s`, `t`, `e` are homomorphisms and `s∘e = id = t∘e` (witness `[x]`).
pub fn check_internal_digraph(dg: &InternalDigraph) -> CheckReport {
    let mut legs = vec![
        is_homomorphism(&dg.source).renamed("s_homomorphism"),
        is_homomorphism(&dg.target).renamed("t_homomorphism"),
        is_homomorphism(&dg.identity).renamed("e_homomorphism"),
    ];
    for (name, map) in [("s_splits", &dg.source), ("t_splits", &dg.target)] {
        let bad = dg.objects().elements().find(|&x| map.apply(dg.e(x)) != x);
        legs.push(match bad {
            Some(x) => CheckReport::fail(name, vec![x], format!("e({x}) is not a loop at {x}")),
            None => CheckReport::pass(name, "e splits the map"),
        });
    }
    CheckReport::combine(
        "internal_digraph",
        &legs,
        format!("reflexive digraph with {} arrows on {} objects", dg.arrows().order(), dg.objects().order()),
    )
}

/// The pullback `A ×_O A = {(f, g) : t(f) = s(g)}`, enumerated `f`-major.
#[derive(Clone, Debug)]
pub struct ComposablePairs {
    arrows: usize,
    pairs: Vec<(Elem, Elem)>,
    position: Vec<usize>,
}

const ABSENT: usize = usize::MAX;

impl ComposablePairs {
    pub fn order(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(Elem, Elem)] {
        &self.pairs
    }

    #[inline]
    pub fn position(&self, f: Elem, g: Elem) -> Option<usize> {
        match self.position[f * self.arrows + g] {
            ABSENT => None,
            p => Some(p),
        }
    }

    #[inline]
    pub fn get(&self, p: usize) -> (Elem, Elem) {
        self.pairs[p]
    }
}

/// Enumerates composable pairs and confirms they form a subgroup of `A×A`
/// containing every `(e(x), e(x))`.
pub fn composable_pairs(dg: &InternalDigraph) -> Result<ComposablePairs> {
    let pre = check_internal_digraph(dg);
    if !pre.passed {
        return Err(Error::contract(&pre));
    }
    enumerate_pairs(dg)
}

fn enumerate_pairs(dg: &InternalDigraph) -> Result<ComposablePairs> {
    let a = dg.arrows();
    let n = a.order();
    let mut pairs = Vec::new();
    let mut position = vec![ABSENT; n * n];
    for f in a.elements() {
        for g in a.elements() {
            if dg.t(f) == dg.s(g) {
                position[f * n + g] = pairs.len();
                pairs.push((f, g));
            }
        }
    }
    let cp = ComposablePairs {
        arrows: n,
        pairs,
        position,
    };
    if let Some(x) = dg.objects().elements().find(|&x| cp.position(dg.e(x), dg.e(x)).is_none()) {
        return Err(Error::Internal(format!("identity pair at object {x} is not composable")));
    }
    for &(f1, g1) in &cp.pairs {
        for &(f2, g2) in &cp.pairs {
            if cp.position(a.mul(f1, f2), a.mul(g1, g2)).is_none() {
                return Err(Error::Internal(format!(
                    "composable pairs not closed: ({f1},{g1})·({f2},{g2})"
                )));
            }
        }
    }
    Ok(cp)
}

/// `⟨A, O, s, t, e, comp⟩` with `comp` indexed by [`ComposablePairs`].
#[derive(Clone, Debug)]
pub struct InternalCategory {
    digraph: InternalDigraph,
    pairs: ComposablePairs,
    comp: Vec<Elem>,
}

impl InternalCategory {
    pub fn new(digraph: InternalDigraph, comp: Vec<Elem>) -> Result<Self> {
        let pairs = composable_pairs(&digraph)?;
        // composable_pairs ran the digraph check, so s, t, e are homomorphisms.
        let digraph = InternalDigraph {
            source: digraph.source.assume_verified(),
            target: digraph.target.assume_verified(),
            identity: digraph.identity.assume_verified(),
        };
        Self::with_pairs(digraph, pairs, comp)
    }

    fn with_pairs(digraph: InternalDigraph, pairs: ComposablePairs, comp: Vec<Elem>) -> Result<Self> {
        if comp.len() != pairs.order() {
            return Err(Error::Malformed(format!(
                "malformed composition: {} entries for {} composable pairs",
                comp.len(),
                pairs.order()
            )));
        }
        if let Some(&bad) = comp.iter().find(|&&x| x >= digraph.arrows().order()) {
            return Err(Error::Malformed(format!("malformed composition: arrow {bad} does not exist")));
        }
        Ok(InternalCategory { digraph, pairs, comp })
    }

    /// Same digraph, different composition table.
    pub fn with_composition(&self, comp: Vec<Elem>) -> Result<Self> {
        Self::with_pairs(self.digraph.clone(), self.pairs.clone(), comp)
    }

    pub fn digraph(&self) -> &InternalDigraph {
        &self.digraph
    }

    pub fn pairs(&self) -> &ComposablePairs {
        &self.pairs
    }

    pub fn composition(&self) -> &[Elem] {
        &self.comp
    }

    pub fn arrows(&self) -> &FiniteGroup {
        self.digraph.arrows()
    }

    pub fn objects(&self) -> &FiniteGroup {
        self.digraph.objects()
    }

    /// `g∘f`, when `t(f) = s(g)`.
    #[inline]
    pub fn compose(&self, f: Elem, g: Elem) -> Option<Elem> {
        self.pairs.position(f, g).map(|p| self.comp[p])
    }
}

/// The four legs of the internal-category axioms.
#[derive(Clone, Debug)]
pub struct InternalCategoryReport {
    /// `s(g∘f) = s(f)`, `t(g∘f) = t(g)`; witness `[f, g]`.
    pub source_target: CheckReport,
    /// `h∘(g∘f) = (h∘g)∘f`; witness `[f, g, h]`.
    pub associativity: CheckReport,
    /// `e(t f)∘f = f = f∘e(s f)`; witness `[f]`.
    pub identities: CheckReport,
    /// composition is a homomorphism on the pullback; witness `[f, g, f′, g′]`.
    pub interchange: CheckReport,
}

impl InternalCategoryReport {
    pub fn legs(&self) -> [CheckReport; 4] {
        [
            self.source_target.clone(),
            self.associativity.clone(),
            self.identities.clone(),
            self.interchange.clone(),
        ]
    }

    pub fn passed(&self) -> bool {
        self.legs().iter().all(|r| r.passed)
    }

    pub fn report(&self) -> CheckReport {
        CheckReport::combine("internal_category", &self.legs(), "all four category legs hold")
    }
}

pub fn check_internal_category(ic: &InternalCategory) -> InternalCategoryReport {
    InternalCategoryReport {
        source_target: source_target_leg(ic),
        associativity: associativity_leg(ic),
        identities: identities_leg(ic),
        interchange: interchange_scan(ic, "interchange"),
    }
}

fn source_target_leg(ic: &InternalCategory) -> CheckReport {
    let dg = &ic.digraph;
    for (p, &(f, g)) in ic.pairs.pairs.iter().enumerate() {
        let h = ic.comp[p];
        if dg.s(h) != dg.s(f) || dg.t(h) != dg.t(g) {
            return CheckReport::fail(
                "source_target",
                vec![f, g],
                format!("composite {h} runs {} -> {}, expected {} -> {}", dg.s(h), dg.t(h), dg.s(f), dg.t(g)),
            );
        }
    }
    CheckReport::pass("source_target", "composites have the right endpoints")
}

fn arrows_by_source(ic: &InternalCategory) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new(); ic.objects().order()];
    for f in ic.arrows().elements() {
        out[ic.digraph.s(f)].push(f);
    }
    out
}

fn associativity_leg(ic: &InternalCategory) -> CheckReport {
    const NAME: &str = "associativity";
    let by_source = arrows_by_source(ic);
    let mut triples = 0usize;
    for (p, &(f, g)) in ic.pairs.pairs.iter().enumerate() {
        let gf = ic.comp[p];
        for &h in &by_source[ic.digraph.t(g)] {
            triples += 1;
            let hg = ic.compose(g, h).expect("t(g) = s(h)");
            let lhs = ic.compose(gf, h);
            let rhs = ic.compose(f, hg);
            match (lhs, rhs) {
                (Some(l), Some(r)) if l == r => {}
                (Some(l), Some(r)) => {
                    return CheckReport::fail(NAME, vec![f, g, h], format!("h(gf) = {l} but (hg)f = {r}"));
                }
                _ => {
                    return CheckReport::fail(NAME, vec![f, g, h], "an intermediate composite is not composable");
                }
            }
        }
    }
    CheckReport::pass(NAME, format!("{triples} composable triples associate"))
}

fn identities_leg(ic: &InternalCategory) -> CheckReport {
    let dg = &ic.digraph;
    for f in ic.arrows().elements() {
        let after = ic.compose(f, dg.e(dg.t(f)));
        let before = ic.compose(dg.e(dg.s(f)), f);
        if after != Some(f) || before != Some(f) {
            return CheckReport::fail(
                "identities",
                vec![f],
                format!("identity composites give {after:?} and {before:?}, expected {f}"),
            );
        }
    }
    CheckReport::pass("identities", "identity arrows are two-sided units")
}

/// `comp((f,g)·(f′,g′)) = comp(f,g)·comp(f′,g′)` over all pairs of pairs.
fn interchange_scan(ic: &InternalCategory, name: &str) -> CheckReport {
    let a = ic.arrows();
    let pairs = &ic.pairs.pairs;
    for (p1, &(f1, g1)) in pairs.iter().enumerate() {
        let c1 = ic.comp[p1];
        for (p2, &(f2, g2)) in pairs.iter().enumerate() {
            let q = ic.pairs.position(a.mul(f1, f2), a.mul(g1, g2)).expect("pullback is closed");
            let lhs = ic.comp[q];
            let rhs = a.mul(c1, ic.comp[p2]);
            if lhs != rhs {
                return CheckReport::fail(
                    name,
                    vec![f1, g1, f2, g2],
                    format!("(gg')(ff') = {lhs} but (gf)(g'f') = {rhs}"),
                );
            }
        }
    }
    CheckReport::pass(name, format!("composition is a homomorphism on all {} pairs of pairs", pairs.len().pow(2)))
}

fn require_category(ic: &InternalCategory) -> Result<()> {
    let r = check_internal_category(ic).report();
    if !r.passed {
        return Err(Error::contract(&r));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct GroupoidReport {
    pub report: CheckReport,
    /// `f ↦ f†` when every arrow is invertible.
    pub inverses: Option<Vec<Elem>>,
}

/// Every arrow has a compositional inverse `f†` with `f†∘f = e(s f)` and
/// `f∘f† = e(t f)`. Witness `[f]` for an arrow without one.
pub fn is_internal_groupoid(ic: &InternalCategory) -> Result<GroupoidReport> {
    require_category(ic)?;
    let dg = &ic.digraph;
    let by_source = arrows_by_source(ic);
    let mut inverses = Vec::with_capacity(ic.arrows().order());
    for f in ic.arrows().elements() {
        let (x, y) = (dg.s(f), dg.t(f));
        let found = by_source[y].iter().copied().find(|&d| {
            dg.t(d) == x && ic.compose(f, d) == Some(dg.e(x)) && ic.compose(d, f) == Some(dg.e(y))
        });
        match found {
            Some(d) => inverses.push(d),
            None => {
                return Ok(GroupoidReport {
                    report: CheckReport::fail("groupoid", vec![f], format!("arrow {f} has no compositional inverse")),
                    inverses: None,
                })
            }
        }
    }
    Ok(GroupoidReport {
        report: CheckReport::pass("groupoid", "every arrow is invertible under composition"),
        inverses: Some(inverses),
    })
}

/// Functoriality of `μ` (pointwise product) and `ι` (pointwise inverse),
/// without requiring the category axioms first.
///
/// The `μ` composition leg scans exactly what the interchange leg of
/// [`check_internal_category`] scans, so the two agree on every input.
pub fn cat_group_structure_report(ic: &InternalCategory) -> CheckReport {
    let dg = &ic.digraph;
    let a = ic.arrows();
    let mut legs = vec![
        is_homomorphism(&dg.source).renamed("mu_preserves_sources"),
        is_homomorphism(&dg.target).renamed("mu_preserves_targets"),
        is_homomorphism(&dg.identity).renamed("mu_preserves_identities"),
        interchange_scan(ic, "mu_preserves_composition"),
    ];
    let mut iota = CheckReport::pass("iota_preserves_composition", "pointwise inverse is a functor");
    for (p, &(f, g)) in ic.pairs.pairs.iter().enumerate() {
        let want = a.inv(ic.comp[p]);
        match ic.compose(a.inv(f), a.inv(g)) {
            Some(got) if got == want => {}
            got => {
                iota = CheckReport::fail(
                    "iota_preserves_composition",
                    vec![f, g],
                    format!("composite of inverses is {got:?}, expected {want}"),
                );
                break;
            }
        }
    }
    legs.push(iota);
    let eps = if dg.e(0) == 0 {
        CheckReport::pass("epsilon", "unit object 0 with identity arrow 0")
    } else {
        CheckReport::fail("epsilon", vec![0], "e does not send the unit object to the unit arrow")
    };
    legs.push(eps);
    CheckReport::combine("cat_group_structure", &legs, "mu, iota and epsilon are functors: a group object in Cat")
}

pub fn check_cat_group_structure(ic: &InternalCategory) -> Result<CheckReport> {
    require_category(ic)?;
    Ok(cat_group_structure_report(ic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, symmetric};

    fn discrete(g: &FiniteGroup) -> InternalCategory {
        let id = Hom::identity(g);
        let dg = InternalDigraph::new(id.clone(), id.clone(), id).unwrap();
        let comp = g.elements().collect();
        InternalCategory::new(dg, comp).unwrap()
    }

    /// One object, arrows `A`, composition = group product.
    fn one_object(a: &FiniteGroup) -> InternalCategory {
        let one = FiniteGroup::trivial();
        let dg = InternalDigraph::new(Hom::trivial(a, &one), Hom::trivial(a, &one), Hom::trivial(&one, a)).unwrap();
        let pairs = composable_pairs(&dg).unwrap();
        let comp = pairs.pairs().iter().map(|&(f, g)| a.mul(g, f)).collect();
        InternalCategory::new(dg, comp).unwrap()
    }

    #[test]
    fn discrete_category() {
        let z4 = cyclic(4).unwrap();
        let ic = discrete(&z4);
        assert_eq!(ic.pairs().order(), 4);
        assert!(ic.pairs().pairs().iter().all(|&(f, g)| f == g));
        assert!(check_internal_category(&ic).passed());
        let gpd = is_internal_groupoid(&ic).unwrap();
        assert_eq!(gpd.inverses.unwrap(), vec![0, 1, 2, 3]);
        assert!(check_cat_group_structure(&ic).unwrap().passed);
    }

    #[test]
    fn trivial_objects_make_every_pair_composable() {
        let s3 = symmetric(3).unwrap();
        let one = FiniteGroup::trivial();
        let dg = InternalDigraph::new(Hom::trivial(&s3, &one), Hom::trivial(&s3, &one), Hom::trivial(&one, &s3)).unwrap();
        assert!(check_internal_digraph(&dg).passed);
        assert_eq!(composable_pairs(&dg).unwrap().order(), 36);
    }

    #[test]
    fn one_object_nonabelian_fails_interchange_only() {
        let s3 = symmetric(3).unwrap();
        let r = check_internal_category(&one_object(&s3));
        assert!(r.source_target.passed && r.associativity.passed && r.identities.passed);
        assert!(!r.interchange.passed);
        let ab = one_object(&cyclic(3).unwrap());
        assert!(check_internal_category(&ab).passed());
    }

    #[test]
    fn broken_splitting_is_witnessed() {
        let z3 = cyclic(3).unwrap();
        let id = Hom::identity(&z3);
        let dg = InternalDigraph::new(id.clone(), id, Hom::trivial(&z3, &z3)).unwrap();
        let r = check_internal_digraph(&dg);
        assert!(!r.passed);
        assert_eq!(r.witness, Some(vec![1]));
        assert!(composable_pairs(&dg).is_err());
    }

    #[test]
    fn malformed_composition() {
        let z4 = cyclic(4).unwrap();
        let ic = discrete(&z4);
        assert!(matches!(ic.with_composition(vec![0, 1, 2]), Err(Error::Malformed(_))));
        assert!(matches!(ic.with_composition(vec![0, 1, 2, 9]), Err(Error::Malformed(_))));
    }

    #[test]
    fn corrupted_identity_composite() {
        let z4 = cyclic(4).unwrap();
        let ic = discrete(&z4).with_composition(vec![0, 1, 2, 2]).unwrap();
        let r = check_internal_category(&ic);
        assert!(!r.passed());
        assert!(is_internal_groupoid(&ic).is_err());
        assert!(check_cat_group_structure(&ic).is_err());
        assert_eq!(cat_group_structure_report(&ic).passed, r.interchange.passed);
    }
}
