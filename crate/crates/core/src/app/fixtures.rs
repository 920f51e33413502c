use std::sync::Arc;

use crate::dgalg::Cobar;
use crate::dgmod::FiniteModule;
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::simplicial::{circle, delta, normalized_chains, pinched, sphere_min, wedge, Product, SimplicialSet};

/// Names of the built-in simplicial sets.
pub const SET_FIXTURES: &[&str] = &[
    "delta0",
    "delta1",
    "delta2",
    "delta3",
    "sphere_min1",
    "sphere_min2",
    "sphere_min3",
    "circle",
    "pinched",
    "wedge",
    "delta1xdelta1",
];

pub fn fixture_set(name: &str) -> Result<SimplicialSet> {
    let indexed = |prefix: &str, max: usize| {
        name.strip_prefix(prefix)
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n <= max)
    };
    if let Some(n) = indexed("delta", 3) {
        return delta(n);
    }
    if let Some(n) = indexed("sphere_min", 3).filter(|&n| n >= 1) {
        return sphere_min(n);
    }
    match name {
        "circle" => circle(),
        "pinched" => pinched(),
        "wedge" => wedge(&circle()?, &sphere_min(2)?),
        "delta1xdelta1" => Ok(Product::new(&delta(1)?, &delta(1)?, None)?.set().clone()),
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

/// The cobar algebra of the normalized chains of a one-vertex set.
pub fn cobar_of(k: &SimplicialSet, field: Field) -> Result<Cobar> {
    Cobar::new(Arc::new(normalized_chains(k, field)?))
}

/// Built-in finite modules over the cobar algebra of a one-vertex set.
#[derive(Clone, Debug, PartialEq)]
pub enum ModuleFixture {
    Trivial,
    /// `𝐤 ⊕ 𝐤[1]` with the unique 2-simplex acting from degree 0 to 1.
    Hopf,
    /// Rank-one local system with monodromy `u` along every 1-simplex.
    Monodromy(i64),
}

impl ModuleFixture {
    pub fn name(&self) -> String {
        match self {
            ModuleFixture::Trivial => "trivial".into(),
            ModuleFixture::Hopf => "hopf".into(),
            ModuleFixture::Monodromy(u) => format!("monodromy({u})"),
        }
    }

    pub fn build(&self, k: &SimplicialSet, cobar: &Cobar) -> Result<FiniteModule> {
        match self {
            ModuleFixture::Trivial => FiniteModule::trivial(cobar),
            ModuleFixture::Hopf => {
                let top = k.of_dim(2);
                match top.as_slice() {
                    [sigma] => FiniteModule::hopf(cobar, *sigma),
                    _ => Err(Error::ModuleViolation(format!(
                        "the Hopf module needs exactly one 2-simplex, found {}",
                        top.len()
                    ))),
                }
            }
            ModuleFixture::Monodromy(u) => {
                let f = cobar.field();
                let u: Vec<Vec<Scalar>> = vec![vec![f.int(*u)]];
                let edges: Vec<_> = k.of_dim(1).into_iter().map(|e| (e, u.clone())).collect();
                FiniteModule::monodromy(cobar, 1, &edges)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_builds() {
        for name in SET_FIXTURES {
            let k = fixture_set(name).unwrap();
            k.validate().unwrap();
        }
        assert!(matches!(fixture_set("delta4"), Err(Error::UnknownFixture(_))));
        assert_eq!(fixture_set("delta1xdelta1").unwrap().counts(), vec![4, 5, 2]);
    }

    #[test]
    fn hopf_needs_a_unique_two_simplex() {
        let k = fixture_set("circle").unwrap();
        let om = cobar_of(&k, Field::Rational).unwrap();
        assert!(ModuleFixture::Hopf.build(&k, &om).is_err());
        assert!(ModuleFixture::Monodromy(3).build(&k, &om).is_ok());
    }
}
