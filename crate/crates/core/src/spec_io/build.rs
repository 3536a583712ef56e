//! Turning a parsed document into checked objects.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{DeclKind, SpecDocument};
use crate::action::{Carrier, GroupAction};
use crate::crossed::{check_crossed_module, image_normal_check, kernel_abelian_check, CrossedModule};
use crate::group::{validate_group, FiniteGroup};
use crate::group_objects::check_group_action;
use crate::hom::{is_homomorphism, Hom};
use crate::internal::{
    cat_group_structure_report, check_internal_category, check_internal_digraph, is_internal_groupoid,
    InternalCategory, InternalDigraph,
};
use crate::report::CheckReport;

#[derive(Clone, Debug)]
pub enum Object {
    Group(FiniteGroup),
    Hom(Hom),
    Action(GroupAction),
    Xmod(CrossedModule),
    InternalCat(InternalCategory),
}

/// Objects built from a document, in declaration order. A declaration
/// whose laws fail (a table that is not a group, an action that is not
/// by automorphisms, ...) maps to the reason it could not be built.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    entries: Vec<(String, Result<Object, String>)>,
    index: HashMap<String, usize>,
}

macro_rules! getter {
    ($fn:ident, $variant:ident, $ty:ty, $what:literal) => {
        pub fn $fn(&self, name: &str) -> Result<&$ty, String> {
            match self.get(name) {
                Some(Ok(Object::$variant(x))) => Ok(x),
                Some(Ok(_)) => Err(format!("`{name}` is not {}", $what)),
                Some(Err(e)) => Err(format!("`{name}` is not {}: {e}", $what)),
                None => Err(format!("unknown name `{name}`")),
            }
        }
    };
}

impl Workspace {
    pub fn get(&self, name: &str) -> Option<&Result<Object, String>> {
        self.index.get(name).map(|&i| &self.entries[i].1)
    }

    getter!(group, Group, FiniteGroup, "a valid group");
    getter!(hom, Hom, Hom, "a hom between valid groups");
    getter!(action, Action, GroupAction, "a well-formed action");
    getter!(xmod, Xmod, CrossedModule, "a valid crossed-module candidate");
    getter!(internal_category, InternalCat, InternalCategory, "a valid internal-category candidate");

    fn insert(&mut self, name: &str, obj: Result<Object, String>) {
        self.index.insert(name.to_string(), self.entries.len());
        self.entries.push((name.to_string(), obj));
    }
}

/// Builds every declaration in order.
pub fn resolve(doc: &SpecDocument) -> Workspace {
    let mut ws = Workspace::default();
    for d in &doc.decls {
        let obj = build(&ws, &d.name, &d.kind);
        ws.insert(&d.name, obj);
    }
    ws
}

fn build(ws: &Workspace, name: &str, kind: &DeclKind) -> Result<Object, String> {
    let err = |e: crate::Error| e.to_string();
    Ok(match kind {
        DeclKind::Group { rows } => Object::Group(FiniteGroup::from_table(name, rows).map_err(err)?),
        DeclKind::Hom { source, target, map } => {
            Object::Hom(Hom::new(ws.group(source)?, ws.group(target)?, map.clone()).map_err(err)?)
        }
        DeclKind::Action { group, carrier, rows } => {
            let c = Carrier::Group(ws.group(carrier)?.clone());
            Object::Action(GroupAction::new(ws.group(group)?, c, rows).map_err(err)?)
        }
        DeclKind::Xmod { boundary, action, .. } => {
            Object::Xmod(CrossedModule::new(ws.hom(boundary)?.clone(), ws.action(action)?.clone()).map_err(err)?)
        }
        DeclKind::InternalCat { s, t, e, comp, .. } => {
            let dg = digraph(ws, s, t, e)?;
            Object::InternalCat(InternalCategory::new(dg, comp.clone()).map_err(err)?)
        }
    })
}

fn digraph(ws: &Workspace, s: &str, t: &str, e: &str) -> Result<InternalDigraph, String> {
    InternalDigraph::new(ws.hom(s)?.clone(), ws.hom(t)?.clone(), ws.hom(e)?.clone()).map_err(|e| e.to_string())
}

/// One line of a check run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetReport {
    pub target: String,
    #[serde(flatten)]
    pub report: CheckReport,
}

fn blocked(check: &str, why: String) -> CheckReport {
    CheckReport {
        check: check.into(),
        passed: false,
        witness: None,
        detail: format!("not checked: {why}"),
    }
}

/// Runs every applicable check on every declaration. Declarations are
/// checked in parallel; results come back in declaration order, then
/// check order.
pub fn check_document(doc: &SpecDocument) -> Vec<TargetReport> {
    let ws = resolve(doc);
    doc.decls
        .par_iter()
        .map(|d| {
            checks(&ws, &d.kind, &d.name)
                .into_iter()
                .map(|report| TargetReport { target: d.name.clone(), report })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn checks(ws: &Workspace, kind: &DeclKind, name: &str) -> Vec<CheckReport> {
    match kind {
        DeclKind::Group { rows } => {
            vec![validate_group(rows).unwrap_or_else(|e| blocked("group_axioms", e.to_string()))]
        }
        DeclKind::Hom { .. } => vec![match ws.hom(name) {
            Ok(f) => is_homomorphism(f),
            Err(e) => blocked("homomorphism", e),
        }],
        DeclKind::Action { .. } => match ws.action(name) {
            Ok(a) => vec![check_group_action(a), a.check_automorphisms()],
            Err(e) => vec![blocked("group_action", e)],
        },
        DeclKind::Xmod { .. } => match ws.xmod(name) {
            Ok(xm) => {
                let r = check_crossed_module(xm);
                let mut out = r.legs().to_vec();
                if r.passed() {
                    for c in [kernel_abelian_check(xm), image_normal_check(xm)] {
                        out.push(c.unwrap_or_else(|e| blocked("crossed_module_consequence", e.to_string())));
                    }
                }
                out
            }
            Err(e) => vec![blocked("crossed_module", e)],
        },
        DeclKind::InternalCat { s, t, e, .. } => {
            let dg = match digraph(ws, s, t, e) {
                Ok(dg) => dg,
                Err(e) => return vec![blocked("internal_digraph", e)],
            };
            let mut out = vec![check_internal_digraph(&dg)];
            if !out[0].passed {
                return out;
            }
            let ic = match ws.internal_category(name) {
                Ok(ic) => ic,
                Err(e) => {
                    out.push(blocked("internal_category", e));
                    return out;
                }
            };
            let r = check_internal_category(ic);
            out.extend(r.legs());
            if r.passed() {
                out.push(match is_internal_groupoid(ic) {
                    Ok(g) => g.report,
                    Err(e) => blocked("groupoid", e.to_string()),
                });
                out.push(cat_group_structure_report(ic));
            }
            out
        }
    }
}

fn group_kind(g: &FiniteGroup) -> DeclKind {
    DeclKind::Group { rows: g.rows() }
}

fn hom_kind(f: &Hom, source: &str, target: &str) -> DeclKind {
    DeclKind::Hom {
        source: source.into(),
        target: target.into(),
        map: f.map().to_vec(),
    }
}

/// A self-contained document for `xm`: groups `<p>_C`, `<p>_G`, boundary
/// `<p>_d`, action `<p>_act` and the crossed module `<p>_xmod`.
pub fn xmod_document(prefix: &str, xm: &CrossedModule) -> SpecDocument {
    let n = |s: &str| format!("{prefix}_{s}");
    let mut doc = SpecDocument::default();
    doc.push(n("C"), group_kind(xm.source()));
    doc.push(n("G"), group_kind(xm.target()));
    doc.push(n("d"), hom_kind(xm.boundary(), &n("C"), &n("G")));
    doc.push(
        n("act"),
        DeclKind::Action {
            group: n("G"),
            carrier: n("C"),
            rows: xm.action().rows(),
        },
    );
    doc.push(
        n("xmod"),
        DeclKind::Xmod {
            source: n("C"),
            target: n("G"),
            boundary: n("d"),
            action: n("act"),
        },
    );
    doc
}

/// A self-contained document for `ic`: groups `<p>_A`, `<p>_O`, homs
/// `<p>_s`, `<p>_t`, `<p>_e` and the category `<p>_cat`.
pub fn internal_document(prefix: &str, ic: &InternalCategory) -> SpecDocument {
    let n = |s: &str| format!("{prefix}_{s}");
    let dg = ic.digraph();
    let mut doc = SpecDocument::default();
    doc.push(n("A"), group_kind(ic.arrows()));
    doc.push(n("O"), group_kind(ic.objects()));
    doc.push(n("s"), hom_kind(dg.source_map(), &n("A"), &n("O")));
    doc.push(n("t"), hom_kind(dg.target_map(), &n("A"), &n("O")));
    doc.push(n("e"), hom_kind(dg.identity_map(), &n("O"), &n("A")));
    doc.push(
        n("cat"),
        DeclKind::InternalCat {
            arrows: n("A"),
            objects: n("O"),
            s: n("s"),
            t: n("t"),
            e: n("e"),
            comp: ic.composition().to_vec(),
        },
    );
    doc
}

#[cfg(test)]
mod tests {
    use super::super::{parse_spec, serialize_spec};
    use super::*;
    use crate::catalog::symmetric;
    use crate::crossed::inclusion_crossed_module;
    use crate::equivalence::xmod_to_internal;
    use crate::subgroup::Subgroup;

    fn a3_s3() -> CrossedModule {
        let s3 = symmetric(3).unwrap();
        inclusion_crossed_module(&Subgroup::from_members(&s3, [0, 3, 4], "A3").unwrap()).unwrap()
    }

    fn names(rs: &[TargetReport]) -> Vec<(String, String, bool)> {
        rs.iter().map(|r| (r.target.clone(), r.report.check.clone(), r.report.passed)).collect()
    }

    #[test]
    fn xmod_document_checks_clean() {
        let doc = xmod_document("X", &a3_s3());
        let text = serialize_spec(&doc);
        assert_eq!(parse_spec(&text).unwrap(), doc);
        let rs = check_document(&doc);
        assert!(rs.iter().all(|r| r.report.passed), "{rs:?}");
        let xs: Vec<_> = names(&rs).into_iter().filter(|r| r.0 == "X_xmod").map(|r| r.1).collect();
        assert_eq!(xs, ["equivariance", "peiffer", "kernel_abelian", "image_normal"]);
    }

    #[test]
    fn internal_document_checks_clean() {
        let ic = xmod_to_internal(&a3_s3()).unwrap();
        let doc = internal_document("I", &ic);
        let rs = check_document(&doc);
        assert!(rs.iter().all(|r| r.report.passed), "{rs:?}");
        let cs: Vec<_> = names(&rs).into_iter().filter(|r| r.0 == "I_cat").map(|r| r.1).collect();
        assert_eq!(
            cs,
            [
                "internal_digraph",
                "source_target",
                "associativity",
                "identities",
                "interchange",
                "groupoid",
                "cat_group_structure"
            ]
        );
    }

    #[test]
    fn bad_group_blocks_dependents() {
        let rows = "0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
        let doc = parse_spec(&format!("group L order 5\n{rows}hom f : L -> L\n0 1 2 3 4\n")).unwrap();
        let rs = check_document(&doc);
        assert_eq!(rs.len(), 2);
        assert!(!rs[0].report.passed);
        assert_eq!(rs[0].report.check, "group_axioms");
        assert!(rs[0].report.witness.is_some());
        assert_eq!(rs[1].report.check, "homomorphism");
        assert_eq!(rs[1].report.witness, None);
    }

    #[test]
    fn trivial_action_variant_fails_equivariance() {
        let xm = a3_s3();
        let mut doc = xmod_document("X", &xm);
        let trivial: Vec<Vec<usize>> = (0..6).map(|_| vec![0, 1, 2]).collect();
        if let DeclKind::Action { rows, .. } = &mut doc.decls[3].kind {
            *rows = trivial;
        }
        let rs = check_document(&doc);
        let eq = rs.iter().find(|r| r.report.check == "equivariance").unwrap();
        assert!(!eq.report.passed);
        assert_eq!(eq.report.witness, Some(vec![1, 1]));
        assert!(!rs.iter().any(|r| r.report.check == "kernel_abelian"));
    }
}
