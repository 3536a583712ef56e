use std::fmt::Write;

use itertools::Itertools;

use super::{DeclKind, SpecDocument};

/// Canonical text: single spaces, one LF after every line, no comments or
/// blank lines. Builtins are already expanded to tables by the parser.
pub fn serialize_spec(doc: &SpecDocument) -> String {
    let mut out = String::new();
    for d in &doc.decls {
        let name = &d.name;
        match &d.kind {
            DeclKind::Group { rows } => {
                let _ = writeln!(out, "group {name} order {}", rows.len());
                push_rows(&mut out, rows);
            }
            DeclKind::Hom { source, target, map } => {
                let _ = writeln!(out, "hom {name} : {source} -> {target}");
                let _ = writeln!(out, "{}", map.iter().join(" "));
            }
            DeclKind::Action { group, carrier, rows } => {
                let _ = writeln!(out, "action {name} : {group} on {carrier}");
                push_rows(&mut out, rows);
            }
            DeclKind::Xmod { source, target, boundary, action } => {
                let _ = writeln!(out, "xmod {name} = ( {source}, {target}, {boundary}, {action} )");
            }
            DeclKind::InternalCat { arrows, objects, s, t, e, comp } => {
                let _ = writeln!(out, "internalcat {name} = ( {arrows}, {objects}, s={s}, t={t}, e={e} )");
                out.push_str("comp\n");
                for x in comp {
                    let _ = writeln!(out, "{x}");
                }
            }
        }
    }
    out
}

fn push_rows(out: &mut String, rows: &[Vec<usize>]) {
    for row in rows {
        let _ = writeln!(out, "{}", row.iter().join(" "));
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_spec;
    use super::*;

    #[test]
    fn empty_document() {
        assert_eq!(serialize_spec(&SpecDocument::default()), "");
        assert_eq!(serialize_spec(&parse_spec("# only a comment\n\n").unwrap()), "");
    }

    #[test]
    fn builtin_expands() {
        let doc = parse_spec("group C3   builtin cyclic 3 # three\n").unwrap();
        assert_eq!(serialize_spec(&doc), "group C3 order 3\n0 1 2\n1 2 0\n2 0 1\n");
    }

    #[test]
    fn round_trip_is_stable() {
        let text = "group Z2 builtin cyclic 2\nhom id:Z2->Z2\n0   1\naction triv : Z2 on Z2\n0 1\n0 1\n\
                    xmod X=(Z2,Z2,id,triv)\ninternalcat D = (Z2, Z2, s=id,t=id,e=id)\ncomp\n0\n1";
        let doc = parse_spec(text).unwrap();
        let canon = serialize_spec(&doc);
        assert!(canon.contains("xmod X = ( Z2, Z2, id, triv )\n"));
        assert!(canon.contains("internalcat D = ( Z2, Z2, s=id, t=id, e=id )\ncomp\n0\n1\n"));
        let again = parse_spec(&canon).unwrap();
        assert_eq!(again, doc);
        assert_eq!(serialize_spec(&again), canon);
    }
}
