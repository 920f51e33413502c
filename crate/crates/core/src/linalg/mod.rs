//! Exact sparse linear algebra over the supported fields.

pub mod complex;
pub mod lin;
pub mod matrix;

pub use complex::{induced_homology_map, BoundedComplex, ChainMap, HomologyDegree, InducedDegree};
pub use lin::{Lin, Vector};
pub use matrix::{Echelon, SparseMatrix};
