//! Crossed modules of finite groups.

use crate::action::{Carrier, GroupAction};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::group_objects::check_group_action;
use crate::hom::{is_homomorphism, Hom};
use crate::report::CheckReport;
use crate::subgroup::{image, is_normal, kernel, Subgroup};

/// `∂: C → G` together with a left action of `G` on `C` by automorphisms.
///
/// Construction enforces the type invariants (verified boundary, lawful
/// action, automorphic rows). The crossed-module axioms themselves are
/// checked by [`check_crossed_module`].
#[derive(Clone, Debug)]
pub struct CrossedModule {
    boundary: Hom,
    action: GroupAction,
}

/// Reports for the invariants a [`CrossedModule`] must satisfy before the
/// axioms are even meaningful.
pub fn invariant_reports(boundary: &Hom, action: &GroupAction) -> Vec<CheckReport> {
    let mut out = vec![is_homomorphism(boundary).renamed("boundary_homomorphism")];
    let shape_ok = action.group().same_table(boundary.target())
        && matches!(action.carrier(), Carrier::Group(c) if c.same_table(boundary.source()));
    if !shape_ok {
        out.push(CheckReport::fail(
            "action_shape",
            vec![],
            "action must be by the boundary's target on its source",
        ));
        return out;
    }
    out.push(check_group_action(action));
    out.push(action.check_automorphisms());
    out
}

impl CrossedModule {
    pub fn new(boundary: Hom, action: GroupAction) -> Result<Self> {
        if let Some(bad) = invariant_reports(&boundary, &action).into_iter().find(|r| !r.passed) {
            return Err(Error::contract(&bad));
        }
        let boundary = boundary.verify()?;
        Ok(CrossedModule { boundary, action })
    }

    /// `(G, G, id, conjugation)`
    pub fn identity(g: &FiniteGroup) -> Self {
        inclusion_crossed_module(&Subgroup::whole(g)).expect("G is normal in itself")
    }

    /// `(C, G, trivial, action)`; a crossed module exactly when `C` is abelian.
    pub fn trivial_boundary(action: GroupAction) -> Result<Self> {
        let c = action
            .carrier()
            .as_group()
            .ok_or_else(|| Error::Malformed("action must be on a group".into()))?
            .clone();
        CrossedModule::new(Hom::trivial(&c, action.group()), action)
    }

    /// `C`
    pub fn source(&self) -> &FiniteGroup {
        self.boundary.source()
    }

    /// `G`
    pub fn target(&self) -> &FiniteGroup {
        self.boundary.target()
    }

    pub fn boundary(&self) -> &Hom {
        &self.boundary
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }
}

/// Per-axiom outcome of [`check_crossed_module`].
#[derive(Clone, Debug)]
pub struct CrossedModuleReport {
    /// `∂(ᵍc) = g·∂c·g⁻¹`, witness `[g, c]`.
    pub equivariance: CheckReport,
    /// `^(∂c)d = c·d·c⁻¹`, witness `[c, d]`.
    pub peiffer: CheckReport,
}

impl CrossedModuleReport {
    pub fn passed(&self) -> bool {
        self.equivariance.passed && self.peiffer.passed
    }

    pub fn legs(&self) -> [CheckReport; 2] {
        [self.equivariance.clone(), self.peiffer.clone()]
    }

    pub fn report(&self) -> CheckReport {
        CheckReport::combine("crossed_module", &self.legs(), "equivariance and Peiffer identity hold")
    }
}

pub fn check_crossed_module(xm: &CrossedModule) -> CrossedModuleReport {
    let (c, g, d, act) = (xm.source(), xm.target(), &xm.boundary, &xm.action);

    let mut equivariance = CheckReport::pass(
        "equivariance",
        format!("all {} pairs (g, c) satisfy d(g.c) = g d(c) g^-1", g.order() * c.order()),
    );
    'eq: for gi in g.elements() {
        for ci in c.elements() {
            let lhs = d.apply(act.act(gi, ci));
            let rhs = g.conjugate(gi, d.apply(ci));
            if lhs != rhs {
                equivariance = CheckReport::fail(
                    "equivariance",
                    vec![gi, ci],
                    format!("d(g.c) = {lhs} but g d(c) g^-1 = {rhs}"),
                );
                break 'eq;
            }
        }
    }

    let mut peiffer = CheckReport::pass(
        "peiffer",
        format!("all {} pairs (c, d) satisfy d(c).d = c d c^-1", c.order() * c.order()),
    );
    'pf: for ci in c.elements() {
        let dc = d.apply(ci);
        for di in c.elements() {
            let lhs = act.act(dc, di);
            let rhs = c.conjugate(ci, di);
            if lhs != rhs {
                peiffer = CheckReport::fail(
                    "peiffer",
                    vec![ci, di],
                    format!("d(c).d = {lhs} but c d c^-1 = {rhs}"),
                );
                break 'pf;
            }
        }
    }
    CrossedModuleReport { equivariance, peiffer }
}

/// `(N, G, inclusion, conjugation)` for a normal subgroup `N` of `G`.
///
/// Equivariance of an inclusion forces the conjugation action; the
/// trivial action only works when `N` is central.
pub fn inclusion_crossed_module(n: &Subgroup) -> Result<CrossedModule> {
    let report = is_normal(n);
    if !report.passed {
        return Err(Error::NotNormal {
            witness: report.witness.unwrap_or_default(),
        });
    }
    let action = GroupAction::conjugation_on(n)?;
    CrossedModule::new(n.inclusion(), action)
}

fn require_valid(xm: &CrossedModule) -> Result<()> {
    let r = check_crossed_module(xm).report();
    if !r.passed {
        return Err(Error::contract(&r));
    }
    Ok(())
}

/// `Ker ∂` is abelian. Witness `[c, d]` in source indices.
pub fn kernel_abelian_check(xm: &CrossedModule) -> Result<CheckReport> {
    require_valid(xm)?;
    let k = kernel(&xm.boundary)?;
    let c = xm.source();
    for &a in k.members() {
        for &b in k.members() {
            if c.mul(a, b) != c.mul(b, a) {
                return Ok(CheckReport::fail(
                    "kernel_abelian",
                    vec![a, b],
                    "internal inconsistency: axioms passed but Ker d is not abelian",
                ));
            }
        }
    }
    Ok(CheckReport::pass("kernel_abelian", format!("Ker d has order {} and is abelian", k.order())))
}

/// `Im ∂` is normal in `G`. Witness `[g, x]` as for [`is_normal`].
pub fn image_normal_check(xm: &CrossedModule) -> Result<CheckReport> {
    require_valid(xm)?;
    let im = image(&xm.boundary)?;
    let r = is_normal(&im);
    Ok(if r.passed {
        CheckReport::pass("image_normal", format!("Im d has order {} and is normal", im.order()))
    } else {
        CheckReport {
            check: "image_normal".into(),
            detail: format!("internal inconsistency: axioms passed but {}", r.detail),
            ..r
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, symmetric};

    fn a3_in_s3() -> Subgroup {
        Subgroup::from_members(&symmetric(3).unwrap(), [0, 3, 4], "A3").unwrap()
    }

    #[test]
    fn identity_crossed_module() {
        let xm = CrossedModule::identity(&symmetric(3).unwrap());
        assert!(check_crossed_module(&xm).passed());
        assert!(kernel_abelian_check(&xm).unwrap().passed);
        assert!(image_normal_check(&xm).unwrap().passed);
    }

    #[test]
    fn a3_normal_in_s3() {
        let xm = inclusion_crossed_module(&a3_in_s3()).unwrap();
        let r = check_crossed_module(&xm);
        assert!(r.passed());
        assert!(image_normal_check(&xm).unwrap().passed);
    }

    #[test]
    fn trivial_action_breaks_equivariance() {
        let n = a3_in_s3();
        let act = GroupAction::trivial(n.parent(), Carrier::Group(n.group().clone()));
        let xm = CrossedModule::new(n.inclusion(), act).unwrap();
        let r = check_crossed_module(&xm);
        assert!(!r.equivariance.passed);
        assert!(r.peiffer.passed);
        // g = (12) (index 1), c = (012) (induced index 1 in A3).
        assert_eq!(r.equivariance.witness, Some(vec![1, 1]));
        assert!(kernel_abelian_check(&xm).is_err());
    }

    #[test]
    fn transposition_is_not_normal() {
        let t = Subgroup::generated_by(&symmetric(3).unwrap(), &[1]).unwrap();
        assert!(matches!(inclusion_crossed_module(&t), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn trivial_boundary_needs_abelian_source() {
        let z2 = cyclic(2).unwrap();
        let xm = CrossedModule::trivial_boundary(GroupAction::trivial(&FiniteGroup::trivial(), Carrier::Group(z2))).unwrap();
        assert!(check_crossed_module(&xm).passed());
        assert_eq!(kernel(xm.boundary()).unwrap().order(), 2);
        assert!(kernel_abelian_check(&xm).unwrap().passed);

        let s3 = symmetric(3).unwrap();
        let xm = CrossedModule::trivial_boundary(GroupAction::trivial(&FiniteGroup::trivial(), Carrier::Group(s3))).unwrap();
        let r = check_crossed_module(&xm);
        assert!(r.equivariance.passed);
        assert!(!r.peiffer.passed);
    }

    #[test]
    fn invalid_invariants_are_errors() {
        let z3 = cyclic(3).unwrap();
        let bad = GroupAction::left_translation(&z3);
        assert!(matches!(CrossedModule::new(Hom::identity(&z3), bad), Err(Error::Contract(_))));
        let shift = Hom::new(&z3, &z3, vec![1, 2, 0]).unwrap();
        assert!(CrossedModule::new(shift, GroupAction::conjugation(&z3)).is_err());
    }
}
