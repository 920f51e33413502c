//! Benchmark inputs shared by the criterion targets.

use loctwist::app::{cobar_of, fixture_set, ModuleFixture};
use loctwist::dgalg::Cobar;
use loctwist::dgmod::FiniteModule;
use loctwist::simplicial::SimplicialSet;
use loctwist::Field;

/// A registry set with its cobar algebra over `field`.
pub fn with_cobar(name: &str, field: Field) -> (SimplicialSet, Cobar) {
    let k = fixture_set(name).expect("registry fixture");
    let om = cobar_of(&k, field).expect("one-vertex fixture");
    (k, om)
}

pub fn module(name: &str, m: ModuleFixture, field: Field) -> (SimplicialSet, FiniteModule) {
    let (k, om) = with_cobar(name, field);
    let module = m.build(&k, &om).expect("module fixture");
    (k, module)
}
