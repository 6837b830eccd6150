//! Exact computations on cotangent Lie algebras `D = G ⋉ G*`.
//!
//! Given a Lie algebra `G` by rational structure constants, this crate builds
//! `D`, computes `der(D)` both by brute force and from its block
//! decomposition into derivations, centroid elements, coadjoint cocycles and
//! equivariant maps of `G`, and checks the resulting grading, cohomology
//! dimension formulas and orthogonal-case isomorphisms.

pub mod catalog;
pub mod cochain;
pub mod cohomology;
pub mod cotangent;
pub mod error;
pub mod exactlin;
pub mod format;
pub mod lie;
pub mod orthogonal;
pub mod par;
pub mod report;
pub mod spaces;
pub mod structure;

pub use error::{Error, Result};
