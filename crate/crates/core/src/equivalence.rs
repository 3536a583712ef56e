//! Crossed module ⇄ internal category, and round-trip isomorphisms.
//!
//! Arrows of the constructed category are pairs `(c, g) ∈ C ⋊ G`, indexed
//! `c * |G| + g`. The arrow `(c, g)` runs from `g` to `∂c·g`.

use crate::crossed::{check_crossed_module, CrossedModule};
use crate::decompose::split_epi_decompose;
use crate::error::{Error, Result};
use crate::hom::{is_homomorphism, Hom};
use crate::internal::{check_internal_category, composable_pairs, InternalCategory, InternalDigraph};
use crate::isomorphism::isomorphism_search;
use crate::product::{pair_index, pair_parts, semidirect_product};
use crate::report::CheckReport;
use crate::subgroup::kernel;
use crate::action::{Carrier, GroupAction};

fn require_xmod(xm: &CrossedModule) -> Result<()> {
    let r = check_crossed_module(xm).report();
    if !r.passed {
        return Err(Error::contract(&r));
    }
    Ok(())
}

fn require_category(ic: &InternalCategory) -> Result<()> {
    let r = check_internal_category(ic).report();
    if !r.passed {
        return Err(Error::contract(&r));
    }
    Ok(())
}

/// Arrows `C ⋊ G`, objects `G`, `s(c,g) = g`, `t(c,g) = ∂c·g`,
/// `e(g) = (1, g)`, and `(c′, ∂c·g)∘(c, g) = (c′c, g)`.
pub fn xmod_to_internal(xm: &CrossedModule) -> Result<InternalCategory> {
    require_xmod(xm)?;
    let (c, g, d) = (xm.source(), xm.target(), xm.boundary());
    let sd = semidirect_product(c, g, xm.action())?;
    let a = &sd.group;
    let n = g.order();
    let target_map = a
        .elements()
        .map(|x| {
            let (ci, gi) = pair_parts(x, n);
            g.mul(d.apply(ci), gi)
        })
        .collect();
    let t = Hom::checked(a, g, target_map)?;
    let dg = InternalDigraph::new(sd.projection.clone(), t, sd.acting_injection.clone())?;
    let pairs = composable_pairs(&dg)?;
    let comp = pairs
        .pairs()
        .iter()
        .map(|&(f, h)| {
            let (c1, g1) = pair_parts(f, n);
            let (c2, _) = pair_parts(h, n);
            pair_index(c.mul(c2, c1), g1, n)
        })
        .collect();
    InternalCategory::new(dg, comp)
}

/// `C = Ker s`, `G = O`, `∂ = t|Ker s`, `ˣk = e(x)·k·e(x)⁻¹`.
pub fn internal_to_xmod(ic: &InternalCategory) -> Result<CrossedModule> {
    require_category(ic)?;
    let dg = ic.digraph();
    let (a, o) = (ic.arrows(), ic.objects());
    let ker = kernel(dg.source_map())?;
    let boundary = Hom::checked(
        ker.group(),
        o,
        (0..ker.order()).map(|k| dg.t(ker.to_parent(k))).collect(),
    )?;
    let mut rows = Vec::with_capacity(o.order());
    for x in o.elements() {
        let ex = dg.e(x);
        let row = (0..ker.order())
            .map(|k| {
                ker.from_parent(a.conjugate(ex, ker.to_parent(k)))
                    .ok_or_else(|| Error::Internal("Ker s is not normal".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let action = GroupAction::new(o, Carrier::Group(ker.group().clone()), &rows)?;
    let xm = CrossedModule::new(boundary, action).map_err(|e| Error::Internal(e.to_string()))?;
    let r = check_crossed_module(&xm).report();
    if !r.passed {
        return Err(Error::Internal(format!("derived crossed module fails: {}", r.detail)));
    }
    Ok(xm)
}

/// `t((c,g)·(d,h)) = ∂c·g·∂d·h` for every pair of arrows.
pub fn check_target_product_identity(xm: &CrossedModule, ic: &InternalCategory) -> CheckReport {
    const NAME: &str = "target_product_identity";
    let (g, d) = (xm.target(), xm.boundary());
    let a = ic.arrows();
    let n = g.order();
    for x in a.elements() {
        let (c1, g1) = pair_parts(x, n);
        for y in a.elements() {
            let (c2, g2) = pair_parts(y, n);
            let lhs = ic.digraph().t(a.mul(x, y));
            let rhs = g.mul(g.mul(d.apply(c1), g1), g.mul(d.apply(c2), g2));
            if lhs != rhs {
                return CheckReport::fail(NAME, vec![x, y], format!("t(xy) = {lhs} but d(c)g d(d)h = {rhs}"));
            }
        }
    }
    CheckReport::pass(NAME, format!("t is multiplicative over all {} arrow pairs", a.order().pow(2)))
}

/// `(α: C → C′, β: G → G′)` between crossed modules.
#[derive(Clone, Debug)]
pub struct XmodIso {
    pub alpha: Hom,
    pub beta: Hom,
    pub verified: bool,
    /// The canonical candidate failed and generic search was tried.
    pub fallback_used: bool,
}

fn bijective_hom_leg(name: &str, f: &Hom) -> CheckReport {
    let r = is_homomorphism(f);
    if !r.passed {
        return r.renamed(name);
    }
    if !f.is_bijective() {
        return CheckReport::fail(name, vec![], "homomorphism is not bijective");
    }
    CheckReport::pass(name, "bijective homomorphism")
}

/// `β∘∂ = ∂′∘α` (witness `[c]`) and `α(ᵍc) = ^(βg)(αc)` (witness `[g, c]`).
pub fn verify_xmod_iso(from: &CrossedModule, to: &CrossedModule, alpha: &Hom, beta: &Hom) -> CheckReport {
    let mut legs = vec![bijective_hom_leg("alpha_iso", alpha), bijective_hom_leg("beta_iso", beta)];
    if legs.iter().all(|r| r.passed) {
        let square = from
            .source()
            .elements()
            .find(|&c| beta.apply(from.boundary().apply(c)) != to.boundary().apply(alpha.apply(c)));
        legs.push(match square {
            Some(c) => CheckReport::fail("boundary_square", vec![c], "beta(d c) != d'(alpha c)"),
            None => CheckReport::pass("boundary_square", "beta d = d' alpha"),
        });
        let mut compat = CheckReport::pass("action_compatible", "alpha(g.c) = beta(g).alpha(c)");
        'outer: for g in from.target().elements() {
            for c in from.source().elements() {
                if alpha.apply(from.action().act(g, c)) != to.action().act(beta.apply(g), alpha.apply(c)) {
                    compat = CheckReport::fail("action_compatible", vec![g, c], "alpha(g.c) != beta(g).alpha(c)");
                    break 'outer;
                }
            }
        }
        legs.push(compat);
    }
    CheckReport::combine("xmod_iso", &legs, "crossed-module isomorphism verified")
}

/// `xm ≅ internal_to_xmod(xmod_to_internal(xm))` via `α(c) = (c, 1)`, `β = id`.
pub fn roundtrip_xmod(xm: &CrossedModule) -> Result<(XmodIso, CheckReport)> {
    require_xmod(xm)?;
    let ic = xmod_to_internal(xm)?;
    let back = internal_to_xmod(&ic)?;
    let ker = kernel(ic.digraph().source_map())?;
    let n = xm.target().order();
    let alpha_map = xm
        .source()
        .elements()
        .map(|c| {
            ker.from_parent(pair_index(c, 0, n))
                .ok_or_else(|| Error::Internal(format!("(c, 1) for c = {c} is not in Ker s")))
        })
        .collect::<Result<Vec<_>>>()?;
    let alpha = Hom::new(xm.source(), back.source(), alpha_map)?;
    let beta = Hom::new(xm.target(), back.target(), xm.target().elements().collect())?;
    let report = verify_xmod_iso(xm, &back, &alpha, &beta).renamed("roundtrip_xmod");
    if report.passed {
        let iso = XmodIso { alpha, beta, verified: true, fallback_used: false };
        return Ok((iso, report));
    }
    // Fallback: generic search on both components.
    let found = isomorphism_search(xm.source(), back.source()).zip(isomorphism_search(xm.target(), back.target()));
    let (alpha, beta, fallback) = match found {
        Some((a, b)) => {
            let r = verify_xmod_iso(xm, &back, &a, &b);
            (a, b, r)
        }
        None => (alpha, beta, report.clone()),
    };
    let report = CheckReport {
        check: "roundtrip_xmod".into(),
        passed: false,
        witness: report.witness.clone().or(Some(vec![])),
        detail: format!(
            "canonical isomorphism failed ({}); fallback search {}",
            report.detail,
            if fallback.passed { "found an isomorphism" } else { "failed too" }
        ),
    };
    Ok((XmodIso { alpha, beta, verified: fallback.passed, fallback_used: true }, report))
}

/// `(α: A → A′, β: O → O′)` between internal categories.
#[derive(Clone, Debug)]
pub struct InternalCatIso {
    pub arrow_iso: Hom,
    pub object_iso: Hom,
    pub verified: bool,
    pub fallback_used: bool,
}

/// Bijective homomorphisms commuting with `s`, `t`, `e` and preserving
/// composition (witness `[f, g]`).
pub fn verify_internal_iso(from: &InternalCategory, to: &InternalCategory, arrows: &Hom, objects: &Hom) -> CheckReport {
    let mut legs = vec![bijective_hom_leg("arrow_iso", arrows), bijective_hom_leg("object_iso", objects)];
    if legs.iter().all(|r| r.passed) {
        let (d1, d2) = (from.digraph(), to.digraph());
        let s_bad = from.arrows().elements().find(|&f| d2.s(arrows.apply(f)) != objects.apply(d1.s(f)));
        legs.push(match s_bad {
            Some(f) => CheckReport::fail("commutes_with_s", vec![f], "s' alpha != beta s"),
            None => CheckReport::pass("commutes_with_s", "s' alpha = beta s"),
        });
        let t_bad = from.arrows().elements().find(|&f| d2.t(arrows.apply(f)) != objects.apply(d1.t(f)));
        legs.push(match t_bad {
            Some(f) => CheckReport::fail("commutes_with_t", vec![f], "t' alpha != beta t"),
            None => CheckReport::pass("commutes_with_t", "t' alpha = beta t"),
        });
        let e_bad = from.objects().elements().find(|&x| arrows.apply(d1.e(x)) != d2.e(objects.apply(x)));
        legs.push(match e_bad {
            Some(x) => CheckReport::fail("commutes_with_e", vec![x], "alpha e != e' beta"),
            None => CheckReport::pass("commutes_with_e", "alpha e = e' beta"),
        });
        let comp_bad = from.pairs().pairs().iter().enumerate().find(|&(p, &(f, g))| {
            to.compose(arrows.apply(f), arrows.apply(g)) != Some(arrows.apply(from.composition()[p]))
        });
        legs.push(match comp_bad {
            Some((_, &(f, g))) => CheckReport::fail("preserves_composition", vec![f, g], "alpha(g f) != alpha(g) alpha(f)"),
            None => CheckReport::pass(
                "preserves_composition",
                format!("all {} composable pairs preserved", from.pairs().order()),
            ),
        });
    }
    CheckReport::combine("internal_iso", &legs, "internal-category isomorphism verified")
}

/// `ic ≅ xmod_to_internal(internal_to_xmod(ic))` with the arrow map
/// `a ↦ (a·e(s a)⁻¹, s a)` and the identity on objects.
pub fn roundtrip_internal(ic: &InternalCategory) -> Result<(InternalCatIso, CheckReport)> {
    require_category(ic)?;
    let xm = internal_to_xmod(ic)?;
    let back = xmod_to_internal(&xm)?;
    let dg = ic.digraph();
    let objects = Hom::new(ic.objects(), back.objects(), ic.objects().elements().collect())?;
    let dec = split_epi_decompose(dg.source_map(), dg.identity_map())?;
    let canonical = if dec.product.group.same_table(back.arrows()) {
        Some(Hom::new(ic.arrows(), back.arrows(), dec.phi.map().to_vec())?)
    } else {
        None
    };
    if let Some(arrows) = canonical.clone() {
        let report = verify_internal_iso(ic, &back, &arrows, &objects).renamed("roundtrip_internal");
        if report.passed {
            let iso = InternalCatIso { arrow_iso: arrows, object_iso: objects, verified: true, fallback_used: false };
            return Ok((iso, report));
        }
    }
    let fallback = isomorphism_search(ic.arrows(), back.arrows());
    let (arrows, fb_report) = match fallback {
        Some(h) => {
            let r = verify_internal_iso(ic, &back, &h, &objects);
            (h, r)
        }
        None => {
            let placeholder = canonical.unwrap_or_else(|| Hom::trivial(ic.arrows(), back.arrows()));
            (placeholder, CheckReport::fail("internal_iso", vec![], "no arrow isomorphism"))
        }
    };
    let report = CheckReport::fail(
        "roundtrip_internal",
        vec![],
        format!(
            "canonical isomorphism failed; fallback search {}",
            if fb_report.passed { "found an isomorphism" } else { "failed too" }
        ),
    );
    let iso = InternalCatIso { arrow_iso: arrows, object_iso: objects, verified: fb_report.passed, fallback_used: true };
    Ok((iso, report))
}

/// Pullback order predicted for the category built from `xm`: `|C|²·|G|`.
pub fn expected_pullback_order(xm: &CrossedModule) -> usize {
    xm.source().order().pow(2) * xm.target().order()
}
