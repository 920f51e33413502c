use itertools::Itertools;

use crate::dgalg::algebra::AugmentedAlgebra;
use crate::dgalg::cobar::{Cobar, CobarElement, Word};
use crate::dgalg::coalgebra::DgCoalgebra;
use crate::error::{Error, Result};
use crate::linalg::{BoundedComplex, Lin};
use crate::scalar::Field;

/// A bar monomial `{a₁|…|aₙ}` of ideal monomials.
pub type BarWord<M> = Vec<M>;
pub type BarSplit<M> = Lin<(BarWord<M>, BarWord<M>)>;

/// The bar construction `BA` with deconcatenation coproduct.
#[derive(Clone, Debug)]
pub struct Bar<A> {
    a: A,
}

impl<A: AugmentedAlgebra> Bar<A> {
    pub fn new(a: A) -> Self {
        Bar { a }
    }

    pub fn algebra(&self) -> &A {
        &self.a
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn degree(&self, w: &[A::Mono]) -> i64 {
        w.iter().map(|m| self.a.degree(m) + 1).sum()
    }

    pub fn weight(&self, w: &[A::Mono]) -> usize {
        w.iter().map(|m| self.a.weight(m)).sum()
    }

    pub fn label(&self, w: &[A::Mono]) -> String {
        format!("{{{}}}", w.iter().map(|m| self.a.label(m)).join("|"))
    }

    /// `d_B = −d₁ + d₂` with Koszul signs from the shifted degrees.
    pub fn diff(&self, w: &[A::Mono]) -> Lin<BarWord<A::Mono>> {
        let f = self.field();
        let mut out = Lin::zero();
        let mut e = 0;
        for (i, m) in w.iter().enumerate() {
            let s = -f.sign(e);
            for (dm, v) in self.a.diff(m).iter() {
                let mut word = w.to_vec();
                word[i] = dm.clone();
                out.add_term(word, v * &s);
            }
            e += self.a.degree(m) + 1;
            if i + 1 < w.len() {
                let s = f.sign(e);
                for (p, v) in self.a.product(m, &w[i + 1]).iter() {
                    let mut word = w[..i].to_vec();
                    word.push(p.clone());
                    word.extend_from_slice(&w[i + 2..]);
                    out.add_term(word, v * &s);
                }
            }
        }
        out
    }

    pub fn diff_of(&self, x: &Lin<BarWord<A::Mono>>) -> Lin<BarWord<A::Mono>> {
        x.map_linear(|w| self.diff(w))
    }

    pub fn coproduct(&self, w: &[A::Mono]) -> BarSplit<A::Mono> {
        (0..=w.len())
            .map(|k| ((w[..k].to_vec(), w[k..].to_vec()), self.field().one()))
            .collect()
    }

    /// Bar words of the given degree and weight at most `max_weight`.
    pub fn words(&self, degree: i64, max_weight: usize) -> Vec<BarWord<A::Mono>> {
        let mut out = Vec::new();
        self.extend(&mut Vec::new(), degree, max_weight, &mut out);
        out
    }

    fn extend(
        &self,
        prefix: &mut BarWord<A::Mono>,
        remaining: i64,
        weight: usize,
        out: &mut Vec<BarWord<A::Mono>>,
    ) {
        if remaining == 0 {
            out.push(prefix.clone());
        }
        for d in 0..remaining {
            for m in self.a.ideal_basis(d, weight) {
                let w = self.a.weight(&m);
                prefix.push(m);
                self.extend(prefix, remaining - d - 1, weight - w, out);
                prefix.pop();
            }
        }
    }

    /// The subcomplex of bar words with degree at most `max_degree + 1` and
    /// weight at most `max_weight`; the top degree is flagged unreliable.
    pub fn complex(&self, max_degree: usize, max_weight: usize) -> Result<BoundedComplex> {
        let bases: Vec<_> = (0..=max_degree as i64 + 1)
            .map(|d| self.words(d, max_weight))
            .collect();
        let c = BoundedComplex::from_keyed(
            self.field(),
            0,
            &bases,
            |w| self.label(w),
            |w| self.diff(w),
            true,
        )?;
        let reliable = self.reliable_degree(max_weight);
        Ok(c.with_reliable_max(reliable).with_reliable_max(max_degree as i64))
    }

    /// Highest degree whose homology is unaffected by the weight window.
    pub fn reliable_degree(&self, max_weight: usize) -> i64 {
        match self.a.weight_ratio() {
            Some(0) => i64::MAX,
            Some(r) => (max_weight / r) as i64 - 1,
            None => -1,
        }
    }

    /// Checks that deconcatenation is a coderivation for `d_B` on `w`.
    pub fn check_coderivation(&self, w: &[A::Mono]) -> Result<()> {
        let f = self.field();
        let lhs = self.diff(w).map_linear(|x| self.coproduct(x));
        let mut rhs = Lin::zero();
        for ((l, r), v) in self.coproduct(w).iter() {
            for (dl, u) in self.diff(l).iter() {
                rhs.add_term((dl.clone(), r.clone()), v * u);
            }
            let s = f.sign(self.degree(l));
            for (dr, u) in self.diff(r).iter() {
                rhs.add_term((l.clone(), dr.clone()), &(v * u) * &s);
            }
        }
        if lhs != rhs {
            return Err(Error::Malformed(format!(
                "bar differential is not a coderivation on {}",
                self.label(w)
            )));
        }
        Ok(())
    }
}

pub type BarElement = Lin<BarWord<Word>>;

/// `ρ(x) = Σ_k {[x¹]|…|[x^k]}` over iterated reduced coproducts, with
/// `ρ(ν(1))` the empty word.
pub fn rho(omega: &Cobar, x: usize, max_length: usize) -> Result<BarElement> {
    let c: &DgCoalgebra = omega.coalgebra();
    let f = omega.field();
    if x == omega.unit() {
        return Ok(Lin::single(Vec::new(), f.one()));
    }
    let mut out = Lin::zero();
    let mut current: Lin<Vec<usize>> = Lin::single(vec![x], f.one());
    for _ in 0..max_length {
        out.add(&current.map_keys(|t| t.iter().map(|&c| vec![c]).collect()));
        current = current.map_linear(|t| {
            c.reduced_coproduct(t[0]).map_keys(|&(a, b)| {
                let mut v = vec![a, b];
                v.extend_from_slice(&t[1..]);
                v
            })
        });
        if current.is_zero() {
            return Ok(out);
        }
    }
    Err(Error::TruncationExceeded(max_length))
}

pub fn rho_of(omega: &Cobar, x: &Lin<usize>, max_length: usize) -> Result<BarElement> {
    let mut out = Lin::zero();
    for (&i, v) in x.iter() {
        out.add_scaled(&rho(omega, i, max_length)?, v);
    }
    Ok(out)
}

/// Embeds a cobar element as a single-entry bar word.
pub fn bar_letter(x: &CobarElement) -> BarElement {
    x.map_keys(|w| vec![w.clone()])
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::dgalg::algebra::GroundField;
    use crate::simplicial::{normalized_chains, pinched, sphere_min};

    fn omega(k: crate::simplicial::SimplicialSet) -> Cobar {
        Cobar::new(Arc::new(normalized_chains(&k, Field::Rational).unwrap())).unwrap()
    }

    #[test]
    fn bar_of_ground_field() {
        let b = Bar::new(GroundField(Field::Rational));
        let c = b.complex(3, 4).unwrap();
        assert_eq!(c.dim(0), 1);
        assert!((1..=3).all(|d| c.dim(d) == 0));
    }

    #[test]
    fn sphere_bar_ranks_and_homology() {
        let b = Bar::new(omega(sphere_min(2).unwrap()));
        let c = b.complex(4, 10).unwrap();
        let dims: Vec<_> = (0..=4).map(|d| c.dim(d)).collect();
        assert_eq!(dims, vec![1, 0, 1, 1, 2]);
        let h: Vec<_> = c.homology_ranks(0, 4).unwrap().iter().map(|h| h.rank).collect();
        assert_eq!(h, vec![1, 0, 1, 0, 0]);
        assert!(c.is_reliable(4));
        let x = vec![1usize];
        let d = b.diff(&[x.clone(), x.clone()]);
        assert_eq!(d.len(), 1);
        assert_eq!(d.first_key(), Some(&vec![vec![1, 1]]));
    }

    #[test]
    fn rho_examples() {
        let k = pinched().unwrap();
        let om = omega(k.clone());
        let (a, s) = (k.lookup("a").unwrap(), k.lookup("sigma").unwrap());
        let one = Field::Rational.one();
        let expected: BarElement = [(vec![vec![s]], one.clone()), (vec![vec![a], vec![a]], one)]
            .into_iter()
            .collect();
        assert_eq!(rho(&om, s, 4).unwrap(), expected);
        assert_eq!(rho(&om, om.unit(), 4).unwrap().first_key(), Some(&Vec::new()));
        assert!(matches!(rho(&om, s, 1), Err(Error::TruncationExceeded(1))));
    }
}
