use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::lin::{Lin, Vector};
use crate::linalg::matrix::{Echelon, SparseMatrix};
use crate::scalar::Field;

/// A chain complex stored on a contiguous range of degrees.
///
/// `differentials[d - lo]` maps degree `d` to degree `d - 1`; at the bottom
/// degree it has zero rows. Degrees above `reliable_max` come from a
/// truncated construction and their homology is reported as unreliable.
#[derive(Clone, Debug)]
pub struct BoundedComplex {
    field: Field,
    lo: i64,
    labels: Vec<Vec<String>>,
    differentials: Vec<SparseMatrix>,
    reliable_max: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyDegree {
    pub degree: i64,
    pub rank: usize,
    pub reliable: bool,
}

impl BoundedComplex {
    pub fn new(
        field: Field,
        lo: i64,
        labels: Vec<Vec<String>>,
        differentials: Vec<SparseMatrix>,
    ) -> Result<Self> {
        if labels.len() != differentials.len() {
            return Err(Error::Dimension(format!(
                "{} bases but {} differentials",
                labels.len(),
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            let below = if i == 0 { 0 } else { labels[i - 1].len() };
            if d.cols() != labels[i].len() || d.rows() != below {
                return Err(Error::Dimension(format!(
                    "differential in degree {} is {}x{}, expected {}x{}",
                    lo + i as i64,
                    d.rows(),
                    d.cols(),
                    below,
                    labels[i].len()
                )));
            }
        }
        for i in 1..differentials.len() {
            if !differentials[i - 1].mul(&differentials[i])?.is_zero() {
                return Err(Error::NotAComplex {
                    degree: lo + i as i64,
                });
            }
        }
        Ok(BoundedComplex {
            field,
            lo,
            labels,
            differentials,
            reliable_max: None,
        })
    }

    /// Builds a complex from ordered per-degree bases of keys and a
    /// differential on keys. Terms of `diff` that fall outside the bases are
    /// an error when `closed` is set and are discarded otherwise, which is
    /// the quotient by a subcomplex spanned by the missing keys.
    pub fn from_keyed<K: Ord + Clone>(
        field: Field,
        lo: i64,
        bases: &[Vec<K>],
        mut label: impl FnMut(&K) -> String,
        mut diff: impl FnMut(&K) -> Lin<K>,
        closed: bool,
    ) -> Result<Self> {
        let positions: Vec<BTreeMap<&K, usize>> = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, k)| (k, i)).collect())
            .collect();
        let mut diffs = Vec::with_capacity(bases.len());
        for (n, basis) in bases.iter().enumerate() {
            let rows = if n == 0 { 0 } else { bases[n - 1].len() };
            let mut m = SparseMatrix::zeros(field, rows, basis.len());
            for (c, k) in basis.iter().enumerate() {
                for (t, v) in diff(k).iter() {
                    match (n > 0).then(|| positions[n - 1].get(t)).flatten() {
                        Some(&r) => m.add(r, c, v.clone()),
                        None if closed => {
                            return Err(Error::Window(format!(
                                "differential of {} leaves the stored basis",
                                label(k)
                            )))
                        }
                        None => {}
                    }
                }
            }
            diffs.push(m);
        }
        let labels = bases.iter().map(|b| b.iter().map(&mut label).collect()).collect();
        BoundedComplex::new(field, lo, labels, diffs)
    }

    /// Marks every degree above `degree` as unreliable.
    pub fn with_reliable_max(mut self, degree: i64) -> Self {
        self.reliable_max = Some(self.reliable_max.map_or(degree, |r| r.min(degree)));
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.labels.len() as i64 - 1
    }

    pub fn reliable_max(&self) -> Option<i64> {
        self.reliable_max
    }

    pub fn is_reliable(&self, degree: i64) -> bool {
        self.reliable_max.is_none_or(|r| degree <= r)
    }

    fn index(&self, degree: i64) -> Result<usize> {
        if degree < self.lo || degree > self.hi() {
            return Err(Error::DegreeOutOfRange {
                degree,
                lo: self.lo,
                hi: self.hi(),
            });
        }
        Ok((degree - self.lo) as usize)
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.index(degree).map_or(0, |i| self.labels[i].len())
    }

    pub fn labels(&self, degree: i64) -> &[String] {
        match self.index(degree) {
            Ok(i) => &self.labels[i],
            Err(_) => &[],
        }
    }

    /// The differential out of `degree`, or a zero map outside the stored range.
    pub fn differential(&self, degree: i64) -> SparseMatrix {
        match self.index(degree) {
            Ok(i) => self.differentials[i].clone(),
            Err(_) => SparseMatrix::zeros(self.field, self.dim(degree - 1), self.dim(degree)),
        }
    }

    pub fn homology_rank(&self, degree: i64) -> Result<usize> {
        let i = self.index(degree)?;
        let z = self.labels[i].len() - self.differentials[i].rank();
        let b = if degree < self.hi() {
            self.differentials[i + 1].rank()
        } else {
            0
        };
        Ok(z - b)
    }

    pub fn homology_ranks(&self, lo: i64, hi: i64) -> Result<Vec<HomologyDegree>> {
        (lo..=hi)
            .map(|d| {
                Ok(HomologyDegree {
                    degree: d,
                    rank: self.homology_rank(d)?,
                    reliable: self.is_reliable(d),
                })
            })
            .collect()
    }

    /// Cycle representatives of a homology basis in `degree`, chosen by
    /// column-echelon reduction against the boundaries in basis order.
    pub fn homology_basis(&self, degree: i64) -> Result<Vec<Vector>> {
        Ok(self.homology_reducer(degree)?.1)
    }

    fn homology_reducer(&self, degree: i64) -> Result<(Echelon, Vec<Vector>)> {
        let i = self.index(degree)?;
        let mut e = Echelon::new();
        if degree < self.hi() {
            for c in self.differentials[i + 1].columns() {
                e.insert_tagged(c.clone(), Vector::zero());
            }
        }
        let mut reps = Vec::new();
        for z in self.differentials[i].kernel() {
            let tag = Vector::single(reps.len(), self.field.one());
            if e.insert_tagged(z.clone(), tag).is_none() {
                reps.push(z);
            }
        }
        Ok((e, reps))
    }
}

/// A degree-preserving map between two complexes, one matrix per degree.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub lo: i64,
    pub maps: Vec<SparseMatrix>,
}

impl ChainMap {
    pub fn map(&self, degree: i64) -> Option<&SparseMatrix> {
        if degree < self.lo {
            return None;
        }
        self.maps.get((degree - self.lo) as usize)
    }

    /// Checks `f∘d = d∘f` for every degree where both sides are stored.
    pub fn verify(&self, source: &BoundedComplex, target: &BoundedComplex) -> Result<()> {
        let hi = self.lo + self.maps.len() as i64 - 1;
        for d in self.lo..=hi {
            let f = self.map(d).unwrap();
            if f.cols() != source.dim(d) || f.rows() != target.dim(d) {
                return Err(Error::Dimension(format!("chain map shape in degree {d}")));
            }
            let Some(g) = self.map(d - 1) else { continue };
            let lhs = target.differential(d).mul(f)?;
            let rhs = g.mul(&source.differential(d))?;
            let diff = lhs.sub(&rhs)?;
            let bad = diff.entries().next().map(|(_, c, _)| c);
            if let Some(c) = bad {
                return Err(Error::NotAChainMap {
                    degree: d,
                    witness: source.labels(d)[c].clone(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct InducedDegree {
    pub degree: i64,
    /// Rows index the target homology basis, columns the source basis.
    pub matrix: SparseMatrix,
    pub is_isomorphism: bool,
    pub reliable: bool,
}

/// Matrices of the map induced on homology over `lo..=hi`.
pub fn induced_homology_map(
    f: &ChainMap,
    source: &BoundedComplex,
    target: &BoundedComplex,
    lo: i64,
    hi: i64,
) -> Result<Vec<InducedDegree>> {
    f.verify(source, target)?;
    let mut out = Vec::new();
    for d in lo..=hi {
        let fd = f.map(d).ok_or(Error::DegreeOutOfRange {
            degree: d,
            lo: f.lo,
            hi: f.lo + f.maps.len() as i64 - 1,
        })?;
        let src = source.homology_basis(d)?;
        let (red, tgt) = target.homology_reducer(d)?;
        let mut m = SparseMatrix::zeros(source.field(), tgt.len(), src.len());
        for (j, z) in src.iter().enumerate() {
            let (res, coords) = red.reduce(fd.apply(z));
            debug_assert!(res.is_zero(), "image of a cycle must be a cycle");
            for (&i, v) in coords.iter() {
                m.add(i, j, v.clone());
            }
        }
        let is_isomorphism = src.len() == tgt.len() && m.rank() == src.len();
        out.push(InducedDegree {
            degree: d,
            matrix: m,
            is_isomorphism,
            reliable: source.is_reliable(d) && target.is_reliable(d),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize, p: &str) -> Vec<String> {
        (0..n).map(|i| format!("{p}{i}")).collect()
    }

    #[test]
    fn zero_differential_sizes() {
        let q = Field::Rational;
        let c = BoundedComplex::new(
            q,
            0,
            vec![labels(2, "a"), labels(3, "b")],
            vec![SparseMatrix::zeros(q, 0, 2), SparseMatrix::zeros(q, 2, 3)],
        )
        .unwrap();
        let r: Vec<_> = c.homology_ranks(0, 1).unwrap().iter().map(|h| h.rank).collect();
        assert_eq!(r, vec![2, 3]);
    }

    #[test]
    fn identity_differential_is_acyclic() {
        let q = Field::Rational;
        let c = BoundedComplex::new(
            q,
            0,
            vec![labels(1, "a"), labels(1, "b")],
            vec![SparseMatrix::zeros(q, 0, 1), SparseMatrix::identity(q, 1)],
        )
        .unwrap();
        let r: Vec<_> = c.homology_ranks(0, 1).unwrap().iter().map(|h| h.rank).collect();
        assert_eq!(r, vec![0, 0]);
        assert!(matches!(
            c.homology_ranks(0, 2),
            Err(Error::DegreeOutOfRange { degree: 2, .. })
        ));
    }

    #[test]
    fn rejects_non_complex() {
        let q = Field::Rational;
        let e = BoundedComplex::new(
            q,
            0,
            vec![labels(1, "a"), labels(1, "b"), labels(1, "c")],
            vec![
                SparseMatrix::zeros(q, 0, 1),
                SparseMatrix::identity(q, 1),
                SparseMatrix::identity(q, 1),
            ],
        );
        assert!(matches!(e, Err(Error::NotAComplex { degree: 2 })));
    }

    #[test]
    fn identity_induces_identity() {
        let q = Field::Rational;
        let c = BoundedComplex::new(
            q,
            0,
            vec![labels(2, "a"), labels(1, "b")],
            vec![SparseMatrix::zeros(q, 0, 2), SparseMatrix::zeros(q, 2, 1)],
        )
        .unwrap();
        let id = ChainMap {
            lo: 0,
            maps: vec![SparseMatrix::identity(q, 2), SparseMatrix::identity(q, 1)],
        };
        let h = induced_homology_map(&id, &c, &c, 0, 1).unwrap();
        assert!(h.iter().all(|d| d.is_isomorphism));
        assert_eq!(h[0].matrix, SparseMatrix::identity(q, 2));
    }

    #[test]
    fn non_chain_map_reports_witness() {
        let q = Field::Rational;
        let src = BoundedComplex::new(
            q,
            0,
            vec![labels(1, "a"), labels(1, "b")],
            vec![SparseMatrix::zeros(q, 0, 1), SparseMatrix::identity(q, 1)],
        )
        .unwrap();
        let tgt = BoundedComplex::new(
            q,
            0,
            vec![labels(1, "x"), labels(1, "y")],
            vec![SparseMatrix::zeros(q, 0, 1), SparseMatrix::zeros(q, 1, 1)],
        )
        .unwrap();
        let f = ChainMap {
            lo: 0,
            maps: vec![SparseMatrix::identity(q, 1), SparseMatrix::identity(q, 1)],
        };
        match induced_homology_map(&f, &src, &tgt, 0, 1) {
            Err(Error::NotAChainMap { degree: 1, witness }) => assert_eq!(witness, "b0"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
