use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lambda::necklace::{Lambda, LambdaElement, Necklace};
use crate::linalg::Lin;
use crate::simplicial::SimplexRef;

pub type NecklaceTensor = Lin<(Necklace, Necklace)>;

impl Lambda {
    /// `(a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa'⊗bb'`.
    pub fn tensor_mul(&self, x: &NecklaceTensor, y: &NecklaceTensor) -> Result<NecklaceTensor> {
        let f = self.field();
        let mut out = Lin::zero();
        for ((a, b), s) in x.iter() {
            for ((a2, b2), t) in y.iter() {
                let sign = f.sign(self.degree(b) * self.degree(a2));
                let key = (self.compose(a, a2)?, self.compose(b, b2)?);
                out.add_term(key, &(s * t) * &sign);
            }
        }
        Ok(out)
    }

    /// `d(a⊗b) = da⊗b + (−1)^{|a|} a⊗db`.
    pub fn tensor_diff(&self, x: &NecklaceTensor) -> NecklaceTensor {
        let f = self.field();
        let mut out = Lin::zero();
        for ((a, b), s) in x.iter() {
            for (da, t) in self.diff(a).iter() {
                out.add_term((da.clone(), b.clone()), s * t);
            }
            let sign = &f.sign(self.degree(a)) * s;
            for (db, t) in self.diff(b).iter() {
                out.add_term((a.clone(), db.clone()), &sign * t);
            }
        }
        out
    }

    fn tensor_of(&self, a: &LambdaElement, b: &LambdaElement) -> NecklaceTensor {
        let mut out = Lin::zero();
        for (x, s) in a.iter() {
            for (y, t) in b.iter() {
                out.add_term((x.clone(), y.clone()), s * t);
            }
        }
        out
    }

    /// The coproduct of a single bead: a sum over vertex subsets containing
    /// both ends, splitting the bead into its consecutive faces on the left
    /// and restricting it to the subset on the right.
    fn aw_bead(&self, r: &SimplexRef) -> NecklaceTensor {
        let f = self.field();
        let k = self.set();
        let n = k.dim(r);
        let single = self.word(vec![r.clone()]);
        if n <= 1 {
            return self.tensor_of(&single, &single);
        }
        let mut out = Lin::zero();
        for inner in (1..n).powerset() {
            let a: Vec<usize> = std::iter::once(0).chain(inner).chain(std::iter::once(n)).collect();
            let pieces: Vec<SimplexRef> = a
                .iter()
                .tuple_windows()
                .map(|(&lo, &hi)| k.apply(r, &(lo..=hi).collect_vec()))
                .collect();
            let eps: i64 = a
                .iter()
                .tuple_windows()
                .enumerate()
                .map(|(i, (&lo, &hi))| i as i64 * (hi - lo) as i64 - i as i64)
                .sum();
            let left = self.word(pieces);
            let right = self.word(vec![k.apply(r, &a)]);
            out.add_scaled(&self.tensor_of(&left, &right), &f.sign(eps));
        }
        out
    }

    /// The coproduct, extended multiplicatively over the beads of a word.
    pub fn aw(&self, m: &Necklace) -> NecklaceTensor {
        if m.is_identity() {
            return Lin::single((m.clone(), m.clone()), self.field().one());
        }
        let mut out: Option<NecklaceTensor> = None;
        for b in m.beads() {
            let t = self.aw_bead(b);
            out = Some(match out {
                None => t,
                Some(acc) => self.tensor_mul(&acc, &t).expect("consecutive beads compose"),
            });
        }
        out.unwrap()
    }

    pub fn aw_of(&self, x: &LambdaElement) -> NecklaceTensor {
        x.map_linear(|m| self.aw(m))
    }

    /// Checks `AW d = d AW` on a basis word.
    pub fn check_aw_chain_map(&self, m: &Necklace) -> Result<()> {
        if self.aw_of(&self.diff(m)) != self.tensor_diff(&self.aw(m)) {
            return Err(Error::NotAChainMap {
                degree: self.degree(m),
                witness: self.label(m),
            });
        }
        Ok(())
    }

    /// Checks `AW(ab) = AW(a)AW(b)`.
    pub fn check_aw_multiplicative(&self, a: &Necklace, b: &Necklace) -> Result<()> {
        let ab = self.compose(a, b)?;
        if self.aw(&ab) != self.tensor_mul(&self.aw(a), &self.aw(b))? {
            return Err(Error::Malformed(format!(
                "coproduct is not multiplicative on {} · {}",
                self.label(a),
                self.label(b)
            )));
        }
        Ok(())
    }

    /// Checks `(AW⊗id)AW = (id⊗AW)AW` on a basis word.
    pub fn check_aw_coassociative(&self, m: &Necklace) -> Result<()> {
        let t = self.aw(m);
        let mut left: Lin<(Necklace, Necklace, Necklace)> = Lin::zero();
        let mut right: Lin<(Necklace, Necklace, Necklace)> = Lin::zero();
        for ((a, b), s) in t.iter() {
            for ((a1, a2), u) in self.aw(a).iter() {
                left.add_term((a1.clone(), a2.clone(), b.clone()), s * u);
            }
            for ((b1, b2), u) in self.aw(b).iter() {
                right.add_term((a.clone(), b1.clone(), b2.clone()), s * u);
            }
        }
        if left != right {
            return Err(Error::Malformed(format!("coproduct is not coassociative on {}", self.label(m))));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::scalar::Field;
    use crate::simplicial::models::{circle, delta, pinched, sphere_min};
    use crate::simplicial::SimplicialSet;

    fn lam(k: SimplicialSet) -> Lambda {
        Lambda::new(Arc::new(k), Field::Rational)
    }

    fn neck(l: &Lambda, ids: &[&str]) -> Necklace {
        l.canonical(ids.iter().map(|id| SimplexRef::nondegenerate(l.set().lookup(id).unwrap())).collect())
            .unwrap()
    }

    #[test]
    fn top_of_delta_two() {
        let l = lam(delta(2).unwrap());
        let q = Field::Rational;
        let expected: NecklaceTensor = [
            ((neck(&l, &["012"]), neck(&l, &["02"])), q.one()),
            ((neck(&l, &["01", "12"]), neck(&l, &["012"])), q.one()),
        ]
        .into_iter()
        .collect();
        assert_eq!(l.aw(&neck(&l, &["012"])), expected);
    }

    #[test]
    fn edges_are_group_like() {
        let l = lam(delta(2).unwrap());
        let ab = neck(&l, &["01", "12"]);
        assert_eq!(l.aw(&ab), Lin::single((ab.clone(), ab), Field::Rational.one()));
    }

    #[test]
    fn laws_on_fixtures() {
        for k in [delta(3).unwrap(), circle().unwrap(), sphere_min(2).unwrap(), pinched().unwrap()] {
            let l = lam(k);
            for x in l.set().vertices() {
                for y in l.set().vertices() {
                    let h = l.hom(x, y, 3, 4).unwrap();
                    for m in h.bases.iter().take(4).flatten() {
                        l.check_aw_chain_map(m).unwrap();
                        l.check_aw_coassociative(m).unwrap();
                    }
                }
            }
        }
    }
}
