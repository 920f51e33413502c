pub mod app;
pub mod dgalg;
pub mod dgmod;
pub mod equiv;
pub mod error;
pub mod lambda;
pub mod linalg;
pub mod scalar;
pub mod simplicial;

pub use error::{Error, Result};
pub use scalar::{Field, Scalar};
