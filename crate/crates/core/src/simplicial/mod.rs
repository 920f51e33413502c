//! Finite simplicial sets, products and normalized chains.

pub mod chains;
pub mod models;
pub mod product;
pub mod set;
pub mod simplex;

pub use chains::normalized_chains;
pub use models::{circle, delta, pinched, sphere_min, wedge};
pub use product::Product;
pub use set::{Generator, Operator, RawFace, SimplicialSet};
pub use simplex::SimplexRef;
