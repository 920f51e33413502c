use std::fmt::Debug;

use crate::dgalg::cobar::{Cobar, Word};
use crate::linalg::Lin;
use crate::scalar::Field;

/// An augmented dg algebra presented by a monomial basis of its augmentation
/// ideal. Monomials carry a weight used to cut out finite windows.
pub trait AugmentedAlgebra {
    type Mono: Ord + Clone + Debug;

    fn field(&self) -> Field;
    fn degree(&self, m: &Self::Mono) -> i64;
    fn weight(&self, m: &Self::Mono) -> usize;
    fn label(&self, m: &Self::Mono) -> String;
    /// The differential, which preserves the augmentation ideal.
    fn diff(&self, m: &Self::Mono) -> Lin<Self::Mono>;
    fn product(&self, a: &Self::Mono, b: &Self::Mono) -> Lin<Self::Mono>;
    /// Ideal monomials of the given degree and weight at most `max_weight`.
    fn ideal_basis(&self, degree: i64, max_weight: usize) -> Vec<Self::Mono>;
    /// A bound `r` with `weight(a) ≤ r·(degree(a) + 1)` for every ideal
    /// monomial, when one exists.
    fn weight_ratio(&self) -> Option<usize>;
}

/// The ground field as an augmented algebra; its augmentation ideal is zero.
#[derive(Clone, Copy, Debug)]
pub struct GroundField(pub Field);

impl AugmentedAlgebra for GroundField {
    type Mono = ();

    fn field(&self) -> Field {
        self.0
    }
    fn degree(&self, _: &()) -> i64 {
        0
    }
    fn weight(&self, _: &()) -> usize {
        0
    }
    fn label(&self, _: &()) -> String {
        "1".into()
    }
    fn diff(&self, _: &()) -> Lin<()> {
        Lin::zero()
    }
    fn product(&self, _: &(), _: &()) -> Lin<()> {
        Lin::zero()
    }
    fn ideal_basis(&self, _: i64, _: usize) -> Vec<()> {
        Vec::new()
    }
    fn weight_ratio(&self) -> Option<usize> {
        Some(1)
    }
}

impl AugmentedAlgebra for Cobar {
    type Mono = Word;

    fn field(&self) -> Field {
        Cobar::field(self)
    }
    fn degree(&self, m: &Word) -> i64 {
        Cobar::degree(self, m)
    }
    fn weight(&self, m: &Word) -> usize {
        Cobar::weight(self, m)
    }
    fn label(&self, m: &Word) -> String {
        Cobar::label(self, m)
    }
    fn diff(&self, m: &Word) -> Lin<Word> {
        Cobar::diff(self, m)
    }
    fn product(&self, a: &Word, b: &Word) -> Lin<Word> {
        Lin::single([a.as_slice(), b.as_slice()].concat(), Cobar::field(self).one())
    }
    fn ideal_basis(&self, degree: i64, max_weight: usize) -> Vec<Word> {
        self.words(degree, max_weight)
            .into_iter()
            .filter(|w| !w.is_empty() && Cobar::weight(self, w) <= max_weight)
            .collect()
    }
    fn weight_ratio(&self) -> Option<usize> {
        (!self.has_degree_zero_letters()).then_some(2)
    }
}
