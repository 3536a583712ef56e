//! Line-oriented text format for groups, homomorphisms, actions, crossed
//! modules and internal categories.
//!
//! ```text
//! group S3 builtin symmetric 3      # builtins expand to tables on output
//! group Z2 order 2
//! 0 1
//! 1 0
//! hom sign : S3 -> Z2
//! 0 1 1 0 0 1
//! action inv : Z2 on Z3
//! 0 1 2
//! 0 2 1
//! xmod X = ( C, G, d, act )
//! internalcat I = ( A, O, s=src, t=tgt, e=unit )
//! comp
//! 3                                  # one line per composable pair
//! ```
//!
//! `#` starts a comment. Element 0 is the identity of every group.

mod build;
mod parse;
mod serialize;

use std::fmt;

use crate::group::Elem;

pub use build::{check_document, internal_document, resolve, xmod_document, Object, TargetReport, Workspace};
pub use parse::parse_spec;
pub use serialize::serialize_spec;

/// 1-based line and column (columns count characters).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl Diagnostic {
    pub(crate) fn error(at: Position, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            line: at.line,
            column: at.column,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
        };
        write!(f, "{}:{}: {sev}: {}", self.line, self.column, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Group {
        rows: Vec<Vec<Elem>>,
    },
    Hom {
        source: String,
        target: String,
        map: Vec<Elem>,
    },
    Action {
        group: String,
        carrier: String,
        rows: Vec<Vec<Elem>>,
    },
    Xmod {
        source: String,
        target: String,
        boundary: String,
        action: String,
    },
    InternalCat {
        arrows: String,
        objects: String,
        s: String,
        t: String,
        e: String,
        comp: Vec<Elem>,
    },
}

impl DeclKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            DeclKind::Group { .. } => "group",
            DeclKind::Hom { .. } => "hom",
            DeclKind::Action { .. } => "action",
            DeclKind::Xmod { .. } => "xmod",
            DeclKind::InternalCat { .. } => "internalcat",
        }
    }
}

/// A named declaration. Equality ignores the source position.
#[derive(Clone, Debug)]
pub struct Declaration {
    pub name: String,
    pub position: Position,
    pub kind: DeclKind,
}

impl PartialEq for Declaration {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.kind == other.kind
    }
}

impl Eq for Declaration {}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecDocument {
    pub decls: Vec<Declaration>,
}

impl SpecDocument {
    pub fn get(&self, name: &str) -> Option<&Declaration> {
        self.decls.iter().find(|d| d.name == name)
    }

    pub fn push(&mut self, name: impl Into<String>, kind: DeclKind) {
        self.decls.push(Declaration {
            name: name.into(),
            position: Position::default(),
            kind,
        });
    }
}

pub(crate) const KEYWORDS: [&str; 5] = ["group", "hom", "action", "xmod", "internalcat"];
