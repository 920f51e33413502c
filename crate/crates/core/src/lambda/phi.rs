use std::sync::Arc;

use crate::dgalg::{Cobar, CobarElement, Word};
use crate::error::{Error, Result};
use crate::lambda::necklace::{Lambda, LambdaElement, Necklace};
use crate::linalg::Lin;
use crate::scalar::Field;
use crate::simplicial::{normalized_chains, SimplexRef, SimplicialSet};

/// The algebra isomorphism between the cobar construction on normalized
/// chains of a one-vertex set and the endomorphisms of its vertex in `Λ`.
#[derive(Clone, Debug)]
pub struct CobarIso {
    lambda: Lambda,
    cobar: Cobar,
    x: usize,
}

impl CobarIso {
    pub fn new(k: Arc<SimplicialSet>, field: Field) -> Result<Self> {
        let vertices = k.vertices();
        if vertices.len() != 1 {
            return Err(Error::NotOneVertex(vertices.len()));
        }
        let cobar = Cobar::new(Arc::new(normalized_chains(&k, field)?))?;
        Ok(CobarIso {
            lambda: Lambda::new(k, field),
            cobar,
            x: vertices[0],
        })
    }

    pub fn lambda(&self) -> &Lambda {
        &self.lambda
    }

    pub fn cobar(&self) -> &Cobar {
        &self.cobar
    }

    pub fn vertex(&self) -> usize {
        self.x
    }

    fn unit(&self) -> LambdaElement {
        Lin::single(self.lambda.identity(self.x), self.lambda.field().one())
    }

    /// Image of one letter: the bead itself, corrected by `c_x` for edges.
    fn phi_letter(&self, c: usize) -> LambdaElement {
        let f = self.lambda.field();
        let mut out = self.lambda.word(vec![SimplexRef::nondegenerate(c)]);
        if self.lambda.set().generator(c).dim == 1 {
            out.add_term(self.lambda.identity(self.x), -f.one());
        }
        out
    }

    pub fn phi(&self, w: &[usize]) -> LambdaElement {
        let mut out = self.unit();
        for &c in w {
            out = self.lambda.mul(&out, &self.phi_letter(c)).expect("one vertex");
        }
        out
    }

    pub fn phi_of(&self, x: &CobarElement) -> LambdaElement {
        x.map_linear(|w| self.phi(w))
    }

    pub fn inverse(&self, n: &Necklace) -> CobarElement {
        let f = self.lambda.field();
        let mut out = self.cobar.one();
        if n.is_identity() {
            return out;
        }
        for b in n.beads() {
            let mut letter = self.cobar.letter(b.base);
            if self.lambda.set().dim(b) == 1 {
                letter.add_term(Vec::new(), f.one());
            }
            out = self.cobar.mul(&out, &letter);
        }
        out
    }

    pub fn inverse_of(&self, x: &LambdaElement) -> CobarElement {
        x.map_linear(|n| self.inverse(n))
    }

    /// The word with the same beads; the empty word matches `c_x`.
    pub fn matching_necklace(&self, w: &[usize]) -> Necklace {
        if w.is_empty() {
            return self.lambda.identity(self.x);
        }
        self.lambda
            .canonical(w.iter().map(|&c| SimplexRef::nondegenerate(c)).collect())
            .expect("nondegenerate beads")
    }

    /// Checks that matching words to necklaces is a bijection of the bases in
    /// each degree up to `max_degree` (words of at most `word_cap` letters),
    /// and that `φ` is unitriangular in those bases ordered by length.
    pub fn check_basis_bijection(&self, max_degree: usize, word_cap: usize) -> Result<()> {
        for d in 0..=max_degree as i64 {
            let words = self.cobar.words(d, word_cap);
            let (necklaces, _) = self.lambda.basis(self.x, self.x, d, word_cap);
            let mut matched: Vec<Necklace> = words.iter().map(|w| self.matching_necklace(w)).collect();
            matched.sort();
            let mut sorted = necklaces.clone();
            sorted.sort();
            if matched != sorted {
                return Err(Error::Malformed(format!("word and necklace bases differ in degree {d}")));
            }
            for w in &words {
                let image = self.phi(w);
                let lead = self.matching_necklace(w);
                let len = |n: &Necklace| if n.is_identity() { 0 } else { n.len() };
                let ok = image.get(&lead).is_some_and(|c| c.is_one())
                    && image.keys().all(|n| n == &lead || len(n) < w.len());
                if !ok {
                    return Err(Error::Malformed(format!(
                        "φ is not unitriangular at {}",
                        self.cobar.label(w)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks `φ d = d_Λ φ` and `φ ψ = id` on words of degree up to
    /// `max_degree`.
    pub fn check_chain_map(&self, max_degree: usize, word_cap: usize) -> Result<()> {
        for d in 0..=max_degree as i64 {
            for w in self.cobar.words(d, word_cap) {
                let lhs = self.phi_of(&self.cobar.diff(&w));
                let rhs = self.lambda.diff_of(&self.phi(&w));
                if lhs != rhs {
                    return Err(Error::NotAChainMap {
                        degree: d,
                        witness: self.cobar.label(&w),
                    });
                }
                if self.inverse_of(&self.phi(&w)) != Lin::single(w.clone(), self.lambda.field().one()) {
                    return Err(Error::Malformed(format!("inverse fails at {}", self.cobar.label(&w))));
                }
            }
        }
        Ok(())
    }

    /// Checks `φ(uv) = φ(u)φ(v)` on a pair of words.
    pub fn check_multiplicative(&self, u: &[usize], v: &[usize]) -> Result<()> {
        let uv: Word = u.iter().chain(v).copied().collect();
        if self.phi(&uv) != self.lambda.mul(&self.phi(u), &self.phi(v))? {
            return Err(Error::Malformed(format!(
                "φ is not multiplicative on {} · {}",
                self.cobar.label(u),
                self.cobar.label(v)
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::models::{circle, pinched, sphere_min};

    fn iso(k: SimplicialSet) -> CobarIso {
        CobarIso::new(Arc::new(k), Field::Rational).unwrap()
    }

    #[test]
    fn sphere_letter_is_unchanged() {
        let c = iso(sphere_min(2).unwrap());
        let s = c.lambda().set().lookup("sigma").unwrap();
        let img = c.phi(&[s]);
        assert_eq!(img.len(), 1);
        assert_eq!(c.lambda().label(img.first_key().unwrap()), "[sigma]");
    }

    #[test]
    fn circle_square_expands() {
        let c = iso(circle().unwrap());
        let l = c.lambda();
        let s = l.set().lookup("sigma").unwrap();
        let q = Field::Rational;
        let one = c.matching_necklace(&[]);
        let expected: LambdaElement = [
            (c.matching_necklace(&[s, s]), q.one()),
            (c.matching_necklace(&[s]), q.int(-2)),
            (one, q.one()),
        ]
        .into_iter()
        .collect();
        assert_eq!(c.phi(&[s, s]), expected);
    }

    #[test]
    fn fixtures_are_isomorphic() {
        for k in [circle().unwrap(), sphere_min(2).unwrap(), pinched().unwrap()] {
            let c = iso(k);
            c.check_basis_bijection(4, 5).unwrap();
            c.check_chain_map(4, 5).unwrap();
        }
    }
}
