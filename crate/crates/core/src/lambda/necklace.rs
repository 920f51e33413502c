use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{BoundedComplex, Lin};
use crate::scalar::Field;
use crate::simplicial::{SimplexRef, SimplicialSet};

/// A word of simplices `[σ₁|…|σ_k]` with `max σᵢ = min σᵢ₊₁`, stored in
/// canonical form: every bead is nondegenerate of dimension at least one,
/// except the identity `c_x`, which is the single degenerate edge at `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Necklace {
    beads: Vec<SimplexRef>,
}

impl Necklace {
    pub fn beads(&self) -> &[SimplexRef] {
        &self.beads
    }

    pub fn len(&self) -> usize {
        self.beads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beads.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.beads.len() == 1 && self.beads[0].is_degenerate()
    }
}

pub type LambdaElement = Lin<Necklace>;

/// The dg category of necklace words on a simplicial set.
#[derive(Clone, Debug)]
pub struct Lambda {
    set: Arc<SimplicialSet>,
    field: Field,
    /// Nondegenerate simplices of positive dimension, grouped by first vertex.
    outgoing: Vec<Vec<usize>>,
}

impl Lambda {
    pub fn new(set: Arc<SimplicialSet>, field: Field) -> Self {
        let mut outgoing = vec![Vec::new(); set.len()];
        for g in 0..set.len() {
            if set.generator(g).dim > 0 {
                outgoing[set.first_vertex(&SimplexRef::nondegenerate(g))].push(g);
            }
        }
        Lambda {
            set,
            field,
            outgoing,
        }
    }

    pub fn set(&self) -> &SimplicialSet {
        &self.set
    }

    pub fn set_arc(&self) -> &Arc<SimplicialSet> {
        &self.set
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        match self.set.lookup(id) {
            Ok(v) if self.set.generator(v).dim == 0 => Ok(v),
            _ => Err(Error::UnknownVertex(id.to_string())),
        }
    }

    pub fn identity(&self, x: usize) -> Necklace {
        Necklace {
            beads: vec![SimplexRef {
                base: x,
                degen: vec![0],
            }],
        }
    }

    /// Canonical form of a raw word; `None` when the word is zero.
    pub fn canonical(&self, beads: Vec<SimplexRef>) -> Option<Necklace> {
        let start = self.set.first_vertex(beads.first().expect("nonempty word"));
        let mut kept = Vec::with_capacity(beads.len());
        for b in beads {
            if !b.is_degenerate() {
                kept.push(b);
            } else if self.set.dim(&b) >= 2 {
                return None;
            }
        }
        if kept.is_empty() {
            return Some(self.identity(start));
        }
        Some(Necklace { beads: kept })
    }

    pub fn word(&self, beads: Vec<SimplexRef>) -> LambdaElement {
        match self.canonical(beads) {
            Some(n) => Lin::single(n, self.field.one()),
            None => Lin::zero(),
        }
    }

    pub fn source(&self, n: &Necklace) -> usize {
        self.set.first_vertex(&n.beads[0])
    }

    pub fn target(&self, n: &Necklace) -> usize {
        self.set.last_vertex(n.beads.last().unwrap())
    }

    pub fn degree(&self, n: &Necklace) -> i64 {
        if n.is_identity() {
            return 0;
        }
        n.beads.iter().map(|b| self.set.dim(b) as i64 - 1).sum()
    }

    pub fn label(&self, n: &Necklace) -> String {
        if n.is_identity() {
            return format!("c_{}", self.set.id(self.source(n)));
        }
        format!("[{}]", n.beads.iter().map(|b| self.set.display(b)).join("|"))
    }

    /// `b ∘ a`: the word of `a` followed by the word of `b`.
    pub fn compose(&self, a: &Necklace, b: &Necklace) -> Result<Necklace> {
        if self.target(a) != self.source(b) {
            return Err(Error::EndpointMismatch(format!(
                "{} ends at {} but {} starts at {}",
                self.label(a),
                self.set.id(self.target(a)),
                self.label(b),
                self.set.id(self.source(b))
            )));
        }
        let beads = a.beads.iter().chain(&b.beads).cloned().collect();
        Ok(self.canonical(beads).expect("canonical words compose to a nonzero word"))
    }

    /// Bilinear concatenation; pairs with mismatched endpoints are an error.
    pub fn mul(&self, x: &LambdaElement, y: &LambdaElement) -> Result<LambdaElement> {
        let mut out = Lin::zero();
        for (a, s) in x.iter() {
            for (b, t) in y.iter() {
                out.add_term(self.compose(a, b)?, s * t);
            }
        }
        Ok(out)
    }

    /// `d_Λ` on a single nondegenerate bead, as raw words.
    fn diff_bead(&self, r: &SimplexRef) -> Vec<(Vec<SimplexRef>, i64)> {
        let n = self.set.dim(r);
        let mut out = Vec::new();
        if r.is_degenerate() || n < 2 {
            return out;
        }
        for i in 1..n {
            out.push((vec![self.set.apply(r, &coface_list(n, i))], i as i64 + 1));
        }
        for p in 1..n {
            out.push((vec![self.set.front(r, p), self.set.back(r, n - p)], p as i64));
        }
        out
    }

    pub fn diff(&self, n: &Necklace) -> LambdaElement {
        let mut out = Lin::zero();
        let mut prefix = 0i64;
        for (i, b) in n.beads.iter().enumerate() {
            for (replacement, e) in self.diff_bead(b) {
                let beads = n.beads[..i]
                    .iter()
                    .cloned()
                    .chain(replacement)
                    .chain(n.beads[i + 1..].iter().cloned())
                    .collect();
                if let Some(w) = self.canonical(beads) {
                    out.add_term(w, self.field.sign(prefix + e));
                }
            }
            prefix += self.set.dim(b) as i64 - 1;
        }
        out
    }

    pub fn diff_of(&self, x: &LambdaElement) -> LambdaElement {
        x.map_linear(|n| self.diff(n))
    }

    /// Canonical words from `x` to `y` of the given degree with at most
    /// `max_len` beads, and whether longer words were cut off.
    pub fn basis(&self, x: usize, y: usize, degree: i64, max_len: usize) -> (Vec<Necklace>, bool) {
        let mut out = Vec::new();
        if degree < 0 {
            return (out, false);
        }
        if x == y && degree == 0 {
            out.push(self.identity(x));
        }
        let mut cut = false;
        let mut path = Vec::new();
        self.extend(x, y, degree, max_len, &mut path, &mut out, &mut cut);
        (out, cut)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        at: usize,
        y: usize,
        remaining: i64,
        max_len: usize,
        path: &mut Vec<SimplexRef>,
        out: &mut Vec<Necklace>,
        cut: &mut bool,
    ) {
        if at == y && remaining == 0 && !path.is_empty() {
            out.push(Necklace {
                beads: path.clone(),
            });
        }
        for &g in &self.outgoing[at] {
            let d = self.set.generator(g).dim as i64 - 1;
            if d > remaining {
                continue;
            }
            if path.len() == max_len {
                *cut = true;
                return;
            }
            let r = SimplexRef::nondegenerate(g);
            let next = self.set.last_vertex(&r);
            path.push(r);
            self.extend(next, y, remaining - d, max_len, path, out, cut);
            path.pop();
        }
    }

    /// The morphism complex `Λ(x, y)` in degrees `0..=max_degree + 1` with
    /// words of at most `word_cap` beads, modulo longer words.
    pub fn hom(&self, x: usize, y: usize, max_degree: usize, word_cap: usize) -> Result<LambdaHomComplex> {
        for v in [x, y] {
            if v >= self.set.len() || self.set.generator(v).dim != 0 {
                return Err(Error::UnknownVertex(v.to_string()));
            }
        }
        let mut bases = Vec::new();
        let mut reliable = max_degree as i64;
        for d in 0..=max_degree as i64 + 1 {
            let (b, cut) = self.basis(x, y, d, word_cap);
            if cut {
                reliable = reliable.min(d - 2);
            }
            bases.push(b);
        }
        let complex = BoundedComplex::from_keyed(
            self.field,
            0,
            &bases,
            |n| self.label(n),
            |n| self.diff(n),
            false,
        )?
        .with_reliable_max(reliable.max(-1));
        Ok(LambdaHomComplex {
            source: x,
            target: y,
            bases,
            complex,
        })
    }
}

/// The coface `[n-1] → [n]` skipping `i`, as a vertex list.
fn coface_list(n: usize, i: usize) -> Vec<usize> {
    (0..=n).filter(|&v| v != i).collect()
}

/// A morphism complex of `Λ(K)` together with its basis words.
#[derive(Clone, Debug)]
pub struct LambdaHomComplex {
    pub source: usize,
    pub target: usize,
    pub bases: Vec<Vec<Necklace>>,
    pub complex: BoundedComplex,
}

impl LambdaHomComplex {
    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::models::{circle, delta, sphere_min};

    fn lam(k: SimplicialSet) -> Lambda {
        Lambda::new(Arc::new(k), Field::Rational)
    }

    fn bead(l: &Lambda, id: &str) -> SimplexRef {
        SimplexRef::nondegenerate(l.set().lookup(id).unwrap())
    }

    #[test]
    fn delta_two_complex() {
        let l = lam(delta(2).unwrap());
        let h = l.hom(l.vertex("0").unwrap(), l.vertex("2").unwrap(), 2, 8).unwrap();
        assert_eq!(h.ranks(), vec![2, 1, 0, 0]);
        let hom = h.complex.homology_ranks(0, 2).unwrap();
        assert_eq!(hom.iter().map(|h| h.rank).collect_vec(), vec![1, 0, 0]);
    }

    #[test]
    fn delta_two_differential() {
        let l = lam(delta(2).unwrap());
        let top = l.canonical(vec![bead(&l, "012")]).unwrap();
        let d = l.diff(&top);
        let q = Field::Rational;
        let expected: LambdaElement = [
            (l.canonical(vec![bead(&l, "02")]).unwrap(), q.one()),
            (l.canonical(vec![bead(&l, "01"), bead(&l, "12")]).unwrap(), q.int(-1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, expected);
    }

    #[test]
    fn identity_is_a_unit() {
        let l = lam(delta(2).unwrap());
        let a = l.canonical(vec![bead(&l, "01")]).unwrap();
        let b = l.canonical(vec![bead(&l, "12")]).unwrap();
        let ab = l.compose(&a, &b).unwrap();
        assert_eq!(l.label(&ab), "[01|12]");
        let c0 = l.identity(l.vertex("0").unwrap());
        let c2 = l.identity(l.vertex("2").unwrap());
        assert_eq!(l.compose(&c0, &ab).unwrap(), ab);
        assert_eq!(l.compose(&ab, &c2).unwrap(), ab);
        assert_eq!(l.compose(&c0, &c0).unwrap(), c0);
        assert!(matches!(l.compose(&b, &a), Err(Error::EndpointMismatch(_))));
    }

    #[test]
    fn sphere_words_are_cycles() {
        let l = lam(sphere_min(2).unwrap());
        let v = l.vertex("v").unwrap();
        let h = l.hom(v, v, 3, 8).unwrap();
        assert_eq!(h.ranks(), vec![1, 1, 1, 1, 1]);
        for b in h.bases.iter().flatten() {
            assert!(l.diff(b).is_zero());
        }
    }

    #[test]
    fn circle_degree_zero_is_cut() {
        let l = lam(circle().unwrap());
        let v = l.vertex("v").unwrap();
        let h = l.hom(v, v, 2, 4).unwrap();
        assert_eq!(h.complex.reliable_max(), Some(-1));
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn cube_rank_law() {
        for n in 1..=4usize {
            let l = lam(delta(n).unwrap());
            let (x, y) = (l.vertex("0").unwrap(), *l.set().vertices().last().unwrap());
            let h = l.hom(x, y, n, n + 1).unwrap();
            for d in 0..=n {
                let expected = if d < n { binomial(n - 1, d) << (n - 1 - d) } else { 0 };
                assert_eq!(h.ranks()[d], expected, "n={n} d={d}");
            }
            let hom = h.complex.homology_ranks(0, n as i64).unwrap();
            let ranks = hom.iter().map(|h| h.rank).collect_vec();
            assert_eq!(ranks[0], 1);
            assert!(ranks[1..].iter().all(|&r| r == 0));
        }
    }

    #[test]
    fn differential_squares_to_zero() {
        for k in [delta(3).unwrap(), circle().unwrap(), sphere_min(3).unwrap()] {
            let l = lam(k);
            for x in l.set().vertices() {
                for y in l.set().vertices() {
                    for b in l.hom(x, y, 3, 4).unwrap().bases.iter().flatten() {
                        assert!(l.diff_of(&l.diff(b)).is_zero(), "{}", l.label(b));
                    }
                }
            }
        }
    }
}

