//! Right dg modules over cobar algebras, twisted tensor products and
//! morphism complexes.

pub mod barmod;
pub mod hom;
pub mod module;
pub mod twisted;

pub use barmod::{BarModKey, BarModule};
pub use hom::{embed_strict, eval, eval_lin, HomComplex, HomSource, HomStrict, HomVariant, LinearMap, StrictMap};
pub use module::{same_algebra, validate_module, FiniteModule, FreeModule, RightModule};
pub use twisted::{colimit_complex, twisted_complex, TwistedComplex, TwistedKey, Window};

/// Maps `M ⊗ C → N` with the twisted-comodule differential.
pub type HomTau<M> = HomComplex<TwistedComplex<M>>;
/// Maps `M ⊗ BΩC → N` with the bar-comodule differential.
pub type HomInfty<M> = HomComplex<BarModule<M>>;
