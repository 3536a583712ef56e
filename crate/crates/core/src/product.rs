//! Direct and semidirect products. Both use the pair index
//! `index(a, b) = a * |right| + b` (left factor major).

use crate::action::{Carrier, GroupAction};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::group_objects::check_group_action;
use crate::hom::Hom;

#[inline]
pub fn pair_index(a: Elem, b: Elem, right_order: usize) -> Elem {
    a * right_order + b
}

#[inline]
pub fn pair_parts(i: Elem, right_order: usize) -> (Elem, Elem) {
    (i / right_order, i % right_order)
}

#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: FiniteGroup,
    pub left_projection: Hom,
    pub right_projection: Hom,
    pub left_injection: Hom,
    pub right_injection: Hom,
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> DirectProduct {
    let (m, n) = (g.order(), h.order());
    let order = m * n;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, b) = pair_parts(x, n);
        for y in 0..order {
            let (c, d) = pair_parts(y, n);
            table.push(pair_index(g.mul(a, c), h.mul(b, d), n));
        }
    }
    let group = FiniteGroup::from_flat(format!("{}x{}", g.name(), h.name()), order, table)
        .expect("direct product of groups is a group");
    DirectProduct {
        left_projection: Hom::trusted(&group, g, (0..order).map(|x| x / n).collect()),
        right_projection: Hom::trusted(&group, h, (0..order).map(|x| x % n).collect()),
        left_injection: Hom::trusted(g, &group, g.elements().map(|a| pair_index(a, 0, n)).collect()),
        right_injection: Hom::trusted(h, &group, h.elements().collect()),
        group,
    }
}

#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: FiniteGroup,
    /// `c ↦ (c, 1)`
    pub normal_injection: Hom,
    /// `g ↦ (1, g)`
    pub acting_injection: Hom,
    /// `(c, g) ↦ g`
    pub projection: Hom,
}

/// `C ⋊ G` with `(c, g)·(c′, g′) = (c·ᵍc′, g·g′)`.
pub fn semidirect_product(c: &FiniteGroup, g: &FiniteGroup, act: &GroupAction) -> Result<SemidirectProduct> {
    if !act.group().same_table(g) {
        return Err(Error::Contract(format!("action is not by {}", g.name())));
    }
    match act.carrier() {
        Carrier::Group(carrier) if carrier.same_table(c) => {}
        _ => return Err(Error::Contract(format!("action does not act on {}", c.name()))),
    }
    for report in [check_group_action(act), act.check_automorphisms()] {
        if !report.passed {
            return Err(Error::contract(&report));
        }
    }
    let (m, n) = (c.order(), g.order());
    let order = m * n;
    crate::group::check_cap(order)?;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (c1, g1) = pair_parts(x, n);
        for y in 0..order {
            let (c2, g2) = pair_parts(y, n);
            table.push(pair_index(c.mul(c1, act.act(g1, c2)), g.mul(g1, g2), n));
        }
    }
    let group = FiniteGroup::from_flat(format!("{}:{}", c.name(), g.name()), order, table)?;
    Ok(SemidirectProduct {
        normal_injection: Hom::trusted(c, &group, c.elements().map(|k| pair_index(k, 0, n)).collect()),
        acting_injection: Hom::trusted(g, &group, g.elements().collect()),
        projection: Hom::trusted(&group, g, (0..order).map(|x| x % n).collect()),
        group,
    })
}
