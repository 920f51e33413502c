use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::lin::Vector;
use crate::scalar::{Field, Scalar};

/// Sparse matrix stored column by column.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    field: Field,
    rows: usize,
    columns: Vec<Vector>,
}

impl SparseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            field,
            rows,
            columns: vec![Vector::zero(); cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.add(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triples; duplicate positions are rejected.
    pub fn from_entries(
        field: Field,
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut m = Self::zeros(field, rows, cols);
        let mut seen = std::collections::BTreeSet::new();
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::Dimension(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            if !seen.insert((r, c)) {
                return Err(Error::Dimension(format!("duplicate entry at ({r}, {c})")));
            }
            m.add(r, c, v);
        }
        Ok(m)
    }

    pub fn from_columns(field: Field, rows: usize, columns: Vec<Vector>) -> Self {
        debug_assert!(columns.iter().all(|c| c.keys().all(|&r| r < rows)));
        SparseMatrix {
            field,
            rows,
            columns,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn add(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.columns.len());
        self.columns[c].add_term(r, v);
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.columns[c].get(&r).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn column(&self, c: usize) -> &Vector {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(&r, v)| (r, c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zeros(self.field, self.cols(), self.rows);
        for (r, c, v) in self.entries() {
            t.add(c, r, v.clone());
        }
        t
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (&c, x) in v.iter() {
            out.add_scaled(&self.columns[c], x);
        }
        out
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols() != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols(),
                rhs.rows,
                rhs.cols()
            )));
        }
        let columns = rhs.columns.iter().map(|c| self.apply(c)).collect();
        Ok(SparseMatrix::from_columns(self.field, self.rows, columns))
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.rows != rhs.rows || self.cols() != rhs.cols() {
            return Err(Error::Dimension("shape mismatch in subtraction".into()));
        }
        let columns = self
            .columns
            .iter()
            .zip(&rhs.columns)
            .map(|(a, b)| a.minus(b))
            .collect();
        Ok(SparseMatrix::from_columns(self.field, self.rows, columns))
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        for c in &self.columns {
            e.insert(c.clone());
        }
        e.rank()
    }

    /// Basis of the null space, in column-echelon order.
    pub fn kernel(&self) -> Vec<Vector> {
        let mut e = Echelon::new();
        let mut kernel = Vec::new();
        for (j, c) in self.columns.iter().enumerate() {
            let tag = Vector::single(j, self.field.one());
            if let Some(k) = e.insert_tagged(c.clone(), tag) {
                kernel.push(k);
            }
        }
        kernel
    }
}

/// Incrementally built reduced basis. Each pivot vector has coefficient one
/// at its smallest index and carries a tag recording how it was obtained.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, (Vector, Vector)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the pivots; returns the residual and the tag
    /// combination that was subtracted (`v = residual + Σ tag-weighted pivots`).
    pub fn reduce(&self, mut v: Vector) -> (Vector, Vector) {
        let mut used = Vector::zero();
        let mut cursor = 0usize;
        loop {
            let next = v.range_from(&cursor).find(|(k, _)| self.pivots.contains_key(k));
            let Some((&k, c)) = next else { break };
            let c = c.clone();
            let (p, tag) = &self.pivots[&k];
            v.add_scaled(p, &-&c);
            used.add_scaled(tag, &c);
            cursor = k + 1;
        }
        (v, used)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v.clone()).0.is_zero()
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        self.insert_tagged(v, Vector::zero()).is_none()
    }

    /// Inserts `v` with `tag`. If `v` is dependent, returns the tag
    /// combination that vanishes (`tag - Σ used tags`), i.e. a relation.
    pub fn insert_tagged(&mut self, v: Vector, tag: Vector) -> Option<Vector> {
        let (res, used) = self.reduce(v);
        let rel = tag.minus(&used);
        if res.is_zero() {
            return Some(rel);
        }
        let (&k, lead) = res.iter().next().unwrap();
        let inv = lead.inv().expect("nonzero pivot");
        self.pivots.insert(k, (res.scaled(&inv), rel.scaled(&inv)));
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(f: Field, rows: &[&[i64]]) -> SparseMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = SparseMatrix::zeros(f, r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.add(i, j, f.int(v));
            }
        }
        m
    }

    #[test]
    fn rank_examples() {
        let q = Field::Rational;
        assert_eq!(SparseMatrix::identity(q, 3).rank(), 3);
        assert_eq!(SparseMatrix::zeros(q, 3, 4).rank(), 0);
        assert_eq!(mat(q, &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn rank_depends_on_field() {
        let m = mat(Field::Rational, &[&[2, 1], &[1, 3]]);
        assert_eq!(m.rank(), 2);
        let f5 = Field::prime(5).unwrap();
        assert_eq!(mat(f5, &[&[2, 1], &[1, 3]]).rank(), 1);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let q = Field::Rational;
        let m = mat(q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let k = m.kernel();
        assert_eq!(k.len(), 3 - m.rank());
        for v in &k {
            assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn duplicate_entries_rejected() {
        let q = Field::Rational;
        let e = SparseMatrix::from_entries(q, 2, 2, vec![(0, 0, q.one()), (0, 0, q.one())]);
        assert!(e.is_err());
    }
}
