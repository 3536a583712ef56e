//! Finite-group workbench for categorical algebra.
//!
//! Groups are given by full multiplication tables with element `0` as the
//! identity. On top of that the crate checks, exhaustively:
//!
//! - monoid, group and cogroup objects as commuting diagrams
//!   ([`group_objects`]), including the interchange law and the
//!   Eckmann–Hilton conclusion for group objects in groups;
//! - semidirect products and split-epimorphism decompositions
//!   ([`product`], [`decompose`]);
//! - crossed modules ([`crossed`]) and internal categories in groups
//!   ([`internal`]);
//! - the constructions between the two, with round-trip isomorphisms
//!   ([`equivalence`]).
//!
//! [`spec_io`] holds the text format and [`cli`] the command-line driver.

pub mod action;
pub mod catalog;
pub mod cli;
pub mod crossed;
pub mod decompose;
pub mod equivalence;
pub mod error;
pub mod group;
pub mod group_objects;
pub mod hom;
pub mod internal;
pub mod isomorphism;
pub mod product;
pub mod report;
pub mod spec_io;
pub mod subgroup;
pub mod suite;

pub use action::{Carrier, GroupAction};
pub use crossed::CrossedModule;
pub use error::{Error, Result};
pub use group::{validate_group, Elem, FiniteGroup};
pub use hom::{is_homomorphism, Hom};
pub use internal::{InternalCategory, InternalDigraph};
pub use report::CheckReport;
pub use subgroup::Subgroup;
