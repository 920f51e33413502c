use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lambda::necklace::{Lambda, LambdaElement, Necklace};
use crate::linalg::Lin;
use crate::simplicial::{Product, SimplexRef, SimplicialSet};

/// Necklaces in `S` paired with simplices of `L`, landing in `Λ(S × L)`.
#[derive(Clone, Debug)]
pub struct EzMap {
    source: Lambda,
    right: SimplicialSet,
    product: Product,
    target: Lambda,
}

/// Lattice paths with `n` steps of one kind and `m` of the other, as step
/// sequences (`false` for the first kind).
fn lattice_paths(n: usize, m: usize) -> Vec<Vec<bool>> {
    (0..n + m)
        .combinations(m)
        .map(|ls| (0..n + m).map(|i| ls.contains(&i)).collect())
        .collect()
}

/// Compositions of `total` into `parts` nonnegative summands.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

impl EzMap {
    /// `max_dim` caps the materialized product; it must cover
    /// `max bead dimension + dim σ` for the pairs evaluated.
    pub fn new(source: Lambda, right: SimplicialSet, max_dim: usize) -> Result<Self> {
        let product = Product::new(source.set(), &right, Some(max_dim))?;
        let target = Lambda::new(Arc::new(product.set().clone()), source.field());
        Ok(EzMap {
            source,
            right,
            product,
            target,
        })
    }

    pub fn source(&self) -> &Lambda {
        &self.source
    }

    pub fn target(&self) -> &Lambda {
        &self.target
    }

    pub fn product(&self) -> &Product {
        &self.product
    }

    pub fn right(&self) -> &SimplicialSet {
        &self.right
    }

    /// The bead `{i} × σ`.
    pub fn vertical_bead(&self, i: usize, sigma: &SimplexRef) -> Result<SimplexRef> {
        let l = self.right.dim(sigma);
        let point = self.source.set().apply(&SimplexRef::nondegenerate(i), &vec![0; l + 1]);
        self.product.pair_ref(&point, sigma)
    }

    /// The signed sum of top-dimensional necklaces of `T × Δ^l` from the
    /// first to the last vertex, pushed forward along `t × σ`. A degenerate
    /// `σ` gives zero.
    pub fn ez(&self, t: &Necklace, sigma: &SimplexRef) -> Result<LambdaElement> {
        let f = self.source.field();
        let mut out = Lin::zero();
        if sigma.is_degenerate() {
            return Ok(out);
        }
        let s = self.source.set();
        let l = self.right.dim(sigma);
        let beads = t.beads();
        let dims: Vec<usize> = beads.iter().map(|b| s.dim(b)).collect();
        let normalization = l as i64 * (self.source.degree(t) + 1);
        for parts in compositions(l, beads.len()) {
            let offsets: Vec<usize> = std::iter::once(0)
                .chain(parts.iter().scan(0, |acc, &m| {
                    *acc += m;
                    Some(*acc)
                }))
                .collect();
            // Koszul sign from moving each later bead past earlier vertical steps.
            // Koszul sign from moving vertical steps past earlier beads.
            let koszul: i64 = (0..beads.len())
                .tuple_combinations()
                .map(|(i, j)| (dims[i] as i64 - 1) * parts[j] as i64)
                .sum();
            let per_bead: Vec<Vec<(SimplexRef, i64)>> = (0..beads.len())
                .map(|i| self.bead_terms(&beads[i], dims[i], sigma, offsets[i], parts[i]))
                .collect::<Result<_>>()?;
            for choice in per_bead.iter().multi_cartesian_product() {
                let sign: i64 = normalization + koszul + choice.iter().map(|(_, e)| e).sum::<i64>();
                let word: Vec<SimplexRef> = choice.iter().map(|(r, _)| r.clone()).collect();
                if let Some(n) = self.target.canonical(word) {
                    out.add_term(n, f.sign(sign));
                }
            }
        }
        Ok(out)
    }

    /// Top simplices of `Δ^n × Δ^m` for one bead, with the vertical factor
    /// restricted to `σ` on `[offset, offset + m]`, and their shuffle signs.
    fn bead_terms(
        &self,
        bead: &SimplexRef,
        n: usize,
        sigma: &SimplexRef,
        offset: usize,
        m: usize,
    ) -> Result<Vec<(SimplexRef, i64)>> {
        let mut out = Vec::new();
        for path in lattice_paths(n, m) {
            let (mut a, mut b) = (0usize, offset);
            let mut horizontal = vec![a];
            let mut vertical = vec![b];
            let mut crossings = 0i64;
            let mut seen_horizontal = 0i64;
            for &up in &path {
                if up {
                    b += 1;
                    crossings += seen_horizontal;
                } else {
                    a += 1;
                    seen_horizontal += 1;
                }
                horizontal.push(a);
                vertical.push(b);
            }
            let left = self.source.set().apply(bead, &horizontal);
            let right = self.right.apply(sigma, &vertical);
            out.push((self.product.pair_ref(&left, &right)?, crossings));
        }
        Ok(out)
    }

    pub fn ez_of(&self, t: &LambdaElement, sigma: &SimplexRef) -> Result<LambdaElement> {
        let mut out = Lin::zero();
        for (n, c) in t.iter() {
            out.add_scaled(&self.ez(n, sigma)?, c);
        }
        Ok(out)
    }

    /// Both sides of the Maurer–Cartan type identity
    ///
    /// `d EZ(t⊗σ) = EZ(dt⊗σ) + (−1)^{|t|} EZ(t⊗∂′σ)
    ///   + Σ (−1)^{|t||σ′|} [(i,σ′)|EZ(t⊗σ″)] − Σ (−1)^{|t|+|σ′|} [EZ(t⊗σ′)|(j,σ″)]`,
    ///
    /// with `∂′σ = Σ_{0<k<l} (−1)^k d_k σ`, the first sum over `σ′` and the
    /// second over `σ″` of positive dimension.
    pub fn mc_sides(&self, t: &Necklace, sigma: &SimplexRef) -> Result<(LambdaElement, LambdaElement)> {
        let f = self.source.field();
        let lam = &self.target;
        let ez = self.ez(t, sigma)?;
        let lhs = lam.diff_of(&ez);
        let l = self.right.dim(sigma);
        let deg_t = self.source.degree(t);
        let (i, j) = (self.source.source(t), self.source.target(t));

        let mut rhs = self.ez_of(&self.source.diff(t), sigma)?;
        for k in 1..l {
            let face = self.right.apply(sigma, &(0..=l).filter(|&v| v != k).collect_vec());
            rhs.add_scaled(&self.ez(t, &face)?, &f.sign(deg_t + k as i64));
        }
        for p in 1..=l {
            let (front, back) = (self.right.front(sigma, p), self.right.back(sigma, l - p));
            if front.is_degenerate() || back.is_degenerate() {
                continue;
            }
            let head = lam.word(vec![self.vertical_bead(i, &front)?]);
            rhs.add_scaled(&lam.mul(&head, &self.ez(t, &back)?)?, &f.sign(deg_t * p as i64));
        }
        for p in 0..l {
            let (front, back) = (self.right.front(sigma, p), self.right.back(sigma, l - p));
            if front.is_degenerate() || back.is_degenerate() {
                continue;
            }
            let tail = lam.word(vec![self.vertical_bead(j, &back)?]);
            rhs.add_scaled(&lam.mul(&self.ez(t, &front)?, &tail)?, &f.sign(deg_t + p as i64 + 1));
        }
        Ok((lhs, rhs))
    }

    pub fn check_mc(&self, t: &Necklace, sigma: &SimplexRef) -> Result<()> {
        let (lhs, rhs) = self.mc_sides(t, sigma)?;
        if lhs != rhs {
            return Err(Error::Malformed(format!(
                "Maurer–Cartan identity fails for {} ⊗ {}",
                self.source.label(t),
                self.right.display(sigma)
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use crate::simplicial::models::{circle, delta, pinched, sphere_min};

    fn setup(n: usize, l: usize) -> EzMap {
        let s = Lambda::new(Arc::new(delta(n).unwrap()), Field::Rational);
        EzMap::new(s, delta(l).unwrap(), n + l).unwrap()
    }

    #[test]
    fn edge_times_vertex() {
        let ez = setup(1, 1);
        let t = ez.source().canonical(vec![SimplexRef::nondegenerate(ez.source().set().lookup("01").unwrap())]).unwrap();
        let v = SimplexRef::nondegenerate(ez.right().lookup("0").unwrap());
        let out = ez.ez(&t, &v).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(ez.target().label(out.first_key().unwrap()), "[(01,s00)]");
    }

    #[test]
    fn edge_times_edge() {
        let ez = setup(1, 1);
        let t = ez.source().canonical(vec![SimplexRef::nondegenerate(ez.source().set().lookup("01").unwrap())]).unwrap();
        let e = SimplexRef::nondegenerate(ez.right().lookup("01").unwrap());
        let out = ez.ez(&t, &e).unwrap();
        let labels: Vec<(String, i64)> = out
            .iter()
            .map(|(n, c)| (ez.target().label(n), c.to_i64().unwrap()))
            .sorted()
            .collect();
        assert_eq!(labels.len(), 2);
        assert!(labels.iter().all(|(_, c)| c.abs() == 1));
        ez.check_mc(&t, &e).unwrap();
    }

    #[test]
    fn edge_times_edge_signs() {
        let ez = setup(1, 1);
        let t = ez.source().canonical(vec![SimplexRef::nondegenerate(ez.source().set().lookup("01").unwrap())]).unwrap();
        let e = SimplexRef::nondegenerate(ez.right().lookup("01").unwrap());
        let out = ez.ez(&t, &e).unwrap();
        let coeff = |id: &str| {
            let n = ez.target().canonical(vec![SimplexRef::nondegenerate(ez.product().set().lookup(id).unwrap())]).unwrap();
            out.get(&n).and_then(|c| c.to_i64()).unwrap()
        };
        assert_eq!(coeff("(s101,s001)"), 1);
        assert_eq!(coeff("(s001,s101)"), -1);
    }

    fn check_all(ez: &EzMap, max_t: i64) {
        let s = ez.source().clone();
        for x in s.set().vertices() {
            for y in s.set().vertices() {
                for d in 0..=max_t {
                    for t in s.basis(x, y, d, 4).0 {
                        for g in 0..ez.right().len() {
                            if ez.right().generator(g).dim <= 2 {
                                ez.check_mc(&t, &SimplexRef::nondegenerate(g)).unwrap();
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn maurer_cartan_on_small_simplices() {
        for (n, l) in [(1, 2), (2, 1), (2, 2), (3, 2)] {
            check_all(&setup(n, l), 2);
        }
    }

    #[test]
    fn maurer_cartan_against_loops() {
        let f5 = Field::prime(5).unwrap();
        for field in [Field::Rational, f5] {
            for right in [sphere_min(2).unwrap(), circle().unwrap(), pinched().unwrap()] {
                let s = Lambda::new(Arc::new(delta(2).unwrap()), field);
                check_all(&EzMap::new(s, right, 4).unwrap(), 2);
            }
        }
    }
}
