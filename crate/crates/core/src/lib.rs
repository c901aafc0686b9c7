//! Exact enumeration of weight systems whose maximal Newton polyhedron has
//! `(1,…,1)` as an interior point, together with the lattice geometry of the
//! resulting polytopes.

pub mod classify;
mod error;
pub mod exact;
pub mod geometry;
pub mod interior;
pub mod transverse;
pub mod weights;

pub use error::{Error, Result};
pub use weights::{ClassRecord, PointSet, WeightSystem};
