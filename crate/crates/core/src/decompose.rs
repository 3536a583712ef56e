use crate::action::{Carrier, GroupAction};
use crate::error::{Error, Result};
use crate::hom::Hom;
use crate::product::{pair_index, semidirect_product, SemidirectProduct};
use crate::report::CheckReport;
use crate::subgroup::{kernel, Subgroup};

/// Result of decomposing `A` along a split epimorphism `s: A → O`.
#[derive(Clone, Debug)]
pub struct SplitDecomposition {
    pub kernel: Subgroup,
    /// `ˣk = e(x)·k·e(x)⁻¹`, on the kernel's induced indices.
    pub action: GroupAction,
    pub product: SemidirectProduct,
    /// `a ↦ (a·e(s(a))⁻¹, s(a))`
    pub phi: Hom,
    pub report: CheckReport,
}

/// Splits `A ≅ Ker s ⋊ O` given `s: A → O` and a section `e` with `s∘e = id`.
pub fn split_epi_decompose(s: &Hom, e: &Hom) -> Result<SplitDecomposition> {
    let (a, o) = (s.source(), s.target());
    if !e.source().same_table(o) || !e.target().same_table(a) {
        return Err(Error::Malformed("section must map the target of s back to its source".into()));
    }
    for f in [s, e] {
        if !f.is_verified() {
            return Err(Error::Contract(format!(
                "{} -> {} is not a verified homomorphism",
                f.source().name(),
                f.target().name()
            )));
        }
    }
    if let Some(x) = o.elements().find(|&x| s.apply(e.apply(x)) != x) {
        return Err(Error::Precondition {
            detail: format!("s(e({x})) = {} differs from {x}", s.apply(e.apply(x))),
            witness: vec![x],
        });
    }

    let ker = kernel(s)?;
    let mut rows = Vec::with_capacity(o.order());
    for x in o.elements() {
        let ex = e.apply(x);
        let row = (0..ker.order())
            .map(|k| {
                let c = a.conjugate(ex, ker.to_parent(k));
                ker.from_parent(c).ok_or_else(|| Error::Internal(format!("conjugate {c} escaped Ker s")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let action = GroupAction::new(o, Carrier::Group(ker.group().clone()), &rows)?;
    let product = semidirect_product(ker.group(), o, &action)?;

    let map = a
        .elements()
        .map(|x| {
            let sx = s.apply(x);
            let k = a.mul(x, a.inv(e.apply(sx)));
            ker.from_parent(k)
                .map(|ki| pair_index(ki, sx, o.order()))
                .ok_or_else(|| Error::Internal(format!("{x}·e(s({x}))⁻¹ is not in Ker s")))
        })
        .collect::<Result<Vec<_>>>()?;
    let phi = Hom::new(a, &product.group, map)?;
    let hom_report = crate::hom::is_homomorphism(&phi);
    let report = if !hom_report.passed {
        hom_report.renamed("split_epi_iso")
    } else if !phi.is_bijective() {
        CheckReport::fail("split_epi_iso", vec![], "phi is a homomorphism but not a bijection")
    } else {
        CheckReport::pass(
            "split_epi_iso",
            format!(
                "{} is isomorphic to Ker s ({}) semidirect {}",
                a.name(),
                ker.order(),
                o.name()
            ),
        )
    };
    let phi = if report.passed { phi.verify()? } else { phi };
    Ok(SplitDecomposition {
        kernel: ker,
        action,
        product,
        phi,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, symmetric};
    use crate::isomorphism::isomorphism_search;
    use crate::product::direct_product;

    #[test]
    fn identity_split_has_trivial_kernel() {
        let g = symmetric(3).unwrap();
        let id = Hom::identity(&g);
        let d = split_epi_decompose(&id, &id).unwrap();
        assert!(d.report.passed);
        assert_eq!(d.kernel.order(), 1);
        assert_eq!(d.phi.map(), id.map());
    }

    #[test]
    fn projection_split_recovers_trivial_action() {
        let p = direct_product(&cyclic(3).unwrap(), &cyclic(4).unwrap());
        let d = split_epi_decompose(&p.right_projection, &p.right_injection).unwrap();
        assert!(d.report.passed);
        assert!(d.action.is_trivial());
        assert_eq!(d.kernel.order(), 3);
    }

    #[test]
    fn sign_split_gives_inversion_action() {
        let s3 = symmetric(3).unwrap();
        let z2 = cyclic(2).unwrap();
        let sign = Hom::checked(&s3, &z2, vec![0, 1, 1, 0, 0, 1]).unwrap();
        let e = Hom::checked(&z2, &s3, vec![0, 1]).unwrap();
        let d = split_epi_decompose(&sign, &e).unwrap();
        assert!(d.report.passed);
        assert_eq!(d.kernel.order(), 3);
        // Ker s = {id, (012), (021)}: the transposition swaps the 3-cycles.
        assert_eq!(d.action.rows(), vec![vec![0, 1, 2], vec![0, 2, 1]]);
        assert!(isomorphism_search(&d.product.group, &s3).is_some());
    }

    #[test]
    fn non_section_is_rejected_with_witness() {
        let s3 = symmetric(3).unwrap();
        let z2 = cyclic(2).unwrap();
        let sign = Hom::checked(&s3, &z2, vec![0, 1, 1, 0, 0, 1]).unwrap();
        let e = Hom::trivial(&z2, &s3);
        match split_epi_decompose(&sign, &e) {
            Err(Error::Precondition { witness, .. }) => assert_eq!(witness, vec![1]),
            other => panic!("expected precondition error, got {other:?}"),
        }
    }
}
