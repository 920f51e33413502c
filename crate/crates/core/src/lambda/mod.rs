//! The dg category of necklaces, its comparison with the cobar construction,
//! the coproduct on necklaces and the Eilenberg–Zilber type map.

pub mod aw;
pub mod ez;
pub mod necklace;
pub mod phi;

pub use aw::NecklaceTensor;
pub use ez::EzMap;
pub use necklace::{Lambda, LambdaElement, LambdaHomComplex, Necklace};
pub use phi::CobarIso;
