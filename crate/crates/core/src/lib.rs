//! Combinatorics of the category of finite rooted non-planar trees, and the
//! presheaf calculus built on top of it.
//!
//! The crate is organized in layers:
//!
//! * [`tree`] — trees themselves: parsing, printing, canonical forms,
//!   isomorphisms and bounded enumeration.
//! * [`face`] — subtrees and faces (monomorphisms into a fixed tree).
//! * [`subobject`] — sieves of a representable: boundary, external boundary,
//!   inner horns, Segal cores and the vertex-count filtration.
//! * [`anodyne`] — inner-anodyne certificates: horn-expansion steps, a
//!   certificate searcher and an independent verifier.
//! * [`arrow`] — arbitrary arrows between trees as structure-preserving edge
//!   maps (faces, degeneracies, isomorphisms and their composites).
//! * [`operad`] — finite coloured symmetric operads with extensional
//!   composition tables, and labelings of trees by an operad.
//! * [`dset`] — evaluatable dendroidal sets (nerves, representables and
//!   subobjects, tabulated presheaves), maps out of sieves, and the Segal /
//!   inner-Kan / normality / simplicial-restriction checks.
//! * [`report`] — structured, machine-readable check reports.

pub mod anodyne;
pub mod arrow;
pub mod dset;
pub mod face;
pub mod operad;
pub mod report;
pub mod subobject;
pub mod tree;

mod error;

pub use error::{Error, Result};
