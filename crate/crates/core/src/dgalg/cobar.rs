use std::sync::Arc;

use itertools::Itertools;

use crate::dgalg::coalgebra::DgCoalgebra;
use crate::error::{Error, Result};
use crate::linalg::{BoundedComplex, Lin};
use crate::scalar::Field;

/// A cobar monomial: a word of coalgebra basis indices from the coideal.
pub type Word = Vec<usize>;
pub type CobarElement = Lin<Word>;

/// The cobar construction `ΩC`, the tensor algebra on the desuspended
/// coideal. Operations act symbolically on arbitrary words; only basis
/// enumeration is truncated.
#[derive(Clone, Debug)]
pub struct Cobar {
    c: Arc<DgCoalgebra>,
    unit: usize,
    letters: Vec<usize>,
}

impl Cobar {
    pub fn new(c: Arc<DgCoalgebra>) -> Result<Self> {
        let unit = c.require_connected()?;
        let letters = c.reduced_basis();
        Ok(Cobar { c, unit, letters })
    }

    pub fn coalgebra(&self) -> &DgCoalgebra {
        &self.c
    }

    pub fn coalgebra_arc(&self) -> &Arc<DgCoalgebra> {
        &self.c
    }

    pub fn field(&self) -> Field {
        self.c.field()
    }

    /// The basis index of `ν(1)` in the coalgebra.
    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn is_letter(&self, c: usize) -> bool {
        c != self.unit && c < self.c.len()
    }

    pub fn letter_degree(&self, c: usize) -> i64 {
        self.c.degree(c) as i64 - 1
    }

    pub fn degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|&c| self.letter_degree(c)).sum()
    }

    /// Total simplicial dimension of the letters.
    pub fn weight(&self, w: &[usize]) -> usize {
        w.iter().map(|&c| self.c.degree(c)).sum()
    }

    pub fn label(&self, w: &[usize]) -> String {
        format!("[{}]", w.iter().map(|&c| self.c.label(c)).join("|"))
    }

    pub fn has_degree_zero_letters(&self) -> bool {
        self.letters.iter().any(|&c| self.c.degree(c) == 1)
    }

    pub fn one(&self) -> CobarElement {
        Lin::single(Vec::new(), self.field().one())
    }

    pub fn letter(&self, c: usize) -> CobarElement {
        Lin::single(vec![c], self.field().one())
    }

    /// `d[c] = −[dc] + Σ (−1)^{|c′|} [c′|c″]` over the reduced coproduct.
    pub fn diff_letter(&self, c: usize) -> CobarElement {
        let f = self.field();
        let mut out = Lin::zero();
        for (&e, v) in self.c.diff(c).iter() {
            if e != self.unit {
                out.add_term(vec![e], -v);
            }
        }
        for (&(a, b), v) in self.c.reduced_coproduct(c).iter() {
            out.add_term(vec![a, b], v * &f.sign(self.c.degree(a) as i64));
        }
        out
    }

    /// The differential on a word, extended as a derivation.
    pub fn diff(&self, w: &[usize]) -> CobarElement {
        let f = self.field();
        let mut out = Lin::zero();
        let mut sign_deg = 0;
        for (i, &c) in w.iter().enumerate() {
            let s = f.sign(sign_deg);
            for (mid, v) in self.diff_letter(c).iter() {
                let mut word = w[..i].to_vec();
                word.extend_from_slice(mid);
                word.extend_from_slice(&w[i + 1..]);
                out.add_term(word, v * &s);
            }
            sign_deg += self.letter_degree(c);
        }
        out
    }

    pub fn diff_of(&self, x: &CobarElement) -> CobarElement {
        x.map_linear(|w| self.diff(w))
    }

    pub fn mul(&self, x: &CobarElement, y: &CobarElement) -> CobarElement {
        let mut out = Lin::zero();
        for (a, u) in x.iter() {
            for (b, v) in y.iter() {
                out.add_term([a.as_slice(), b.as_slice()].concat(), u * v);
            }
        }
        out
    }

    /// Words of the given degree with at most `max_len` letters, ordered by
    /// length and then lexicographically.
    pub fn words(&self, degree: i64, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        for len in 0..=max_len {
            self.extend_words(&mut Vec::new(), degree, len, &mut out);
        }
        out
    }

    fn extend_words(&self, prefix: &mut Word, remaining: i64, len: usize, out: &mut Vec<Word>) {
        if prefix.len() == len {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for &c in &self.letters {
            let d = self.letter_degree(c);
            if d <= remaining {
                prefix.push(c);
                self.extend_words(prefix, remaining - d, len, out);
                prefix.pop();
            }
        }
    }

    /// The complex of words of degree `0..=max_degree + 1` and length at
    /// most `word_cap`, taken modulo longer words. The extra top degree
    /// supplies boundaries for `max_degree`; degrees whose homology may see
    /// the length cap or the top are flagged.
    pub fn complex(&self, max_degree: usize, word_cap: usize) -> Result<BoundedComplex> {
        let bases: Vec<Vec<Word>> = (0..=max_degree as i64 + 1)
            .map(|d| self.words(d, word_cap))
            .collect();
        let c = BoundedComplex::from_keyed(
            self.field(),
            0,
            &bases,
            |w| self.label(w),
            |w| self.diff(w),
            false,
        )?;
        let reliable = if self.has_degree_zero_letters() {
            -1
        } else {
            max_degree.min(word_cap.saturating_sub(1)) as i64
        };
        Ok(c.with_reliable_max(reliable).with_reliable_max(max_degree as i64))
    }

    /// Checks `d(uv) = du·v + (−1)^{|u|} u·dv` on a pair of words.
    pub fn check_derivation(&self, u: &[usize], v: &[usize]) -> Result<()> {
        let (x, y) = (Lin::single(u.to_vec(), self.field().one()), Lin::single(v.to_vec(), self.field().one()));
        let lhs = self.diff_of(&self.mul(&x, &y));
        let mut rhs = self.mul(&self.diff_of(&x), &y);
        rhs.add_scaled(&self.mul(&x, &self.diff_of(&y)), &self.field().sign(self.degree(u)));
        if lhs != rhs {
            return Err(Error::Malformed(format!(
                "derivation law fails on {} · {}",
                self.label(u),
                self.label(v)
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{circle, normalized_chains, pinched, sphere_min};

    fn cobar(k: crate::simplicial::SimplicialSet) -> Cobar {
        Cobar::new(Arc::new(normalized_chains(&k, Field::Rational).unwrap())).unwrap()
    }

    #[test]
    fn sphere_ranks() {
        let om = cobar(sphere_min(2).unwrap());
        let c = om.complex(4, 8).unwrap();
        assert!((0..=4).all(|d| c.dim(d) == 1 && c.homology_rank(d).unwrap() == 1));
        assert!(c.is_reliable(4));
    }

    #[test]
    fn circle_degree_zero_words() {
        let om = cobar(circle().unwrap());
        let labels: Vec<_> = om.words(0, 3).iter().map(|w| om.label(w)).collect();
        assert_eq!(labels, ["[]", "[sigma]", "[sigma|sigma]", "[sigma|sigma|sigma]"]);
        assert!(!om.complex(2, 3).unwrap().is_reliable(0));
    }

    #[test]
    fn pinched_letter_differential() {
        let k = pinched().unwrap();
        let om = cobar(k.clone());
        let (a, s) = (k.lookup("a").unwrap(), k.lookup("sigma").unwrap());
        let q = Field::Rational;
        let expected: CobarElement = [(vec![a], q.int(-1)), (vec![a, a], q.int(-1))].into_iter().collect();
        assert_eq!(om.diff(&[s]), expected);
        assert!(om.diff_of(&om.diff(&[s, a, s])).is_zero());
    }

    #[test]
    fn rejects_disconnected() {
        let c = normalized_chains(&crate::simplicial::delta(1).unwrap(), Field::Rational).unwrap();
        assert!(matches!(Cobar::new(Arc::new(c)), Err(Error::NotConnected(2))));
    }
}
