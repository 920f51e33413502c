//! Dg coalgebras and algebras, cobar and bar constructions.

pub mod algebra;
pub mod bar;
pub mod coalgebra;
pub mod cobar;

pub use algebra::{AugmentedAlgebra, GroundField};
pub use bar::{bar_letter, rho, rho_of, Bar, BarElement, BarWord};
pub use coalgebra::{Conilpotency, DgCoalgebra, Tensor2, Tensor3};
pub use cobar::{Cobar, CobarElement, Word};
