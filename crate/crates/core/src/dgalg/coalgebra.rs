use crate::error::{Error, Result};
use crate::linalg::{BoundedComplex, Lin, SparseMatrix, Vector};
use crate::scalar::Field;

pub type Tensor2 = Lin<(usize, usize)>;
pub type Tensor3 = Lin<(usize, usize, usize)>;

/// A non-negatively graded dg coalgebra with a finite basis, given by
/// structure constants.
#[derive(Clone, Debug)]
pub struct DgCoalgebra {
    field: Field,
    labels: Vec<String>,
    degrees: Vec<usize>,
    diff: Vec<Vector>,
    coproduct: Vec<Tensor2>,
    counit: Vector,
    coaugmentation: Option<usize>,
}

/// Outcome of the conilpotency check for one basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conilpotency {
    /// Least `n` with `(Δ′)ⁿ x = 0`.
    Order(usize),
    Undetermined,
}

impl DgCoalgebra {
    pub fn new(
        field: Field,
        labels: Vec<String>,
        degrees: Vec<usize>,
        diff: Vec<Vector>,
        coproduct: Vec<Tensor2>,
        counit: Vector,
        coaugmentation: Option<usize>,
    ) -> Result<Self> {
        let n = labels.len();
        if degrees.len() != n || diff.len() != n || coproduct.len() != n {
            return Err(Error::Dimension("coalgebra tables of unequal length".into()));
        }
        for (i, d) in diff.iter().enumerate() {
            if d.keys().any(|&j| j >= n || degrees[j] + 1 != degrees[i]) {
                return Err(Error::Dimension(format!("differential of {} is not of degree -1", labels[i])));
            }
        }
        for (i, t) in coproduct.iter().enumerate() {
            if t.keys().any(|&(a, b)| a >= n || b >= n || degrees[a] + degrees[b] != degrees[i]) {
                return Err(Error::Dimension(format!("coproduct of {} is not of degree 0", labels[i])));
            }
        }
        Ok(DgCoalgebra {
            field,
            labels,
            degrees,
            diff,
            coproduct,
            counit,
            coaugmentation,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn by_degree(&self, n: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degrees[i] == n).collect()
    }

    pub fn diff(&self, i: usize) -> &Vector {
        &self.diff[i]
    }

    pub fn coproduct(&self, i: usize) -> &Tensor2 {
        &self.coproduct[i]
    }

    pub fn counit(&self) -> &Vector {
        &self.counit
    }

    pub fn coaugmentation(&self) -> Option<usize> {
        self.coaugmentation
    }

    /// Basis of the coaugmentation coideal: everything except `ν(1)`.
    pub fn reduced_basis(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| Some(i) != self.coaugmentation).collect()
    }

    /// Fails unless degree 0 is spanned by the coaugmentation.
    pub fn require_connected(&self) -> Result<usize> {
        let zero = self.by_degree(0);
        match (self.coaugmentation, zero.as_slice()) {
            (Some(v), [w]) if v == *w => Ok(v),
            _ => Err(Error::NotConnected(zero.len())),
        }
    }

    /// `Δ′x = Δx − ν(1)⊗x − x⊗ν(1)` for `x` in the coideal, given as the
    /// terms of `Δx` with neither factor equal to `ν(1)`.
    pub fn reduced_coproduct(&self, i: usize) -> Tensor2 {
        let mut t = self.coproduct[i].clone();
        if let Some(v) = self.coaugmentation {
            t.retain(|&(a, b)| a != v && b != v);
        }
        t
    }

    pub fn diff_of(&self, x: &Vector) -> Vector {
        x.map_linear(|&i| self.diff[i].clone())
    }

    pub fn coproduct_of(&self, x: &Vector) -> Tensor2 {
        x.map_linear(|&i| self.coproduct[i].clone())
    }

    /// The chain complex underlying the coalgebra in degrees `0..=max`.
    pub fn complex(&self, max: usize) -> Result<BoundedComplex> {
        let bases: Vec<Vec<usize>> = (0..=max).map(|n| self.by_degree(n)).collect();
        let mut position = vec![0; self.len()];
        for b in &bases {
            for (p, &i) in b.iter().enumerate() {
                position[i] = p;
            }
        }
        let mut diffs = Vec::new();
        for n in 0..=max {
            let rows = if n == 0 { 0 } else { bases[n - 1].len() };
            let mut m = SparseMatrix::zeros(self.field, rows, bases[n].len());
            for (c, &i) in bases[n].iter().enumerate() {
                for (&j, v) in self.diff[i].iter() {
                    m.add(position[j], c, v.clone());
                }
            }
            diffs.push(m);
        }
        let labels = bases
            .iter()
            .map(|b| b.iter().map(|&i| self.labels[i].clone()).collect())
            .collect();
        BoundedComplex::new(self.field, 0, labels, diffs)
    }

    pub fn check_d_squared(&self) -> Result<()> {
        for i in 0..self.len() {
            if !self.diff_of(&self.diff[i]).is_zero() {
                return Err(Error::NotAComplex {
                    degree: self.degrees[i] as i64,
                });
            }
        }
        Ok(())
    }

    pub fn check_coassociative(&self) -> Result<()> {
        for i in 0..self.len() {
            let mut left = Tensor3::zero();
            let mut right = Tensor3::zero();
            for (&(a, b), c) in self.coproduct[i].iter() {
                for (&(a1, a2), c1) in self.coproduct[a].iter() {
                    left.add_term((a1, a2, b), c * c1);
                }
                for (&(b1, b2), c2) in self.coproduct[b].iter() {
                    right.add_term((a, b1, b2), c * c2);
                }
            }
            if left != right {
                return Err(Error::Malformed(format!("coassociativity fails on {}", self.labels[i])));
            }
        }
        Ok(())
    }

    pub fn check_counit(&self) -> Result<()> {
        for i in 0..self.len() {
            let mut left = Vector::zero();
            let mut right = Vector::zero();
            for (&(a, b), c) in self.coproduct[i].iter() {
                if let Some(e) = self.counit.get(&a) {
                    left.add_term(b, c * e);
                }
                if let Some(e) = self.counit.get(&b) {
                    right.add_term(a, c * e);
                }
            }
            let id = Vector::single(i, self.field.one());
            if left != id || right != id {
                return Err(Error::Malformed(format!("counit law fails on {}", self.labels[i])));
            }
        }
        Ok(())
    }

    /// `Δ∘d = (d⊗1 + 1⊗d)∘Δ` with the Koszul sign on the second factor.
    pub fn check_coderivation(&self) -> Result<()> {
        for i in 0..self.len() {
            let lhs = self.coproduct_of(&self.diff[i]);
            let mut rhs = Tensor2::zero();
            for (&(a, b), c) in self.coproduct[i].iter() {
                for (&da, x) in self.diff[a].iter() {
                    rhs.add_term((da, b), c * x);
                }
                let s = self.field.sign(self.degrees[a] as i64);
                for (&db, x) in self.diff[b].iter() {
                    rhs.add_term((a, db), &(c * x) * &s);
                }
            }
            if lhs != rhs {
                return Err(Error::Malformed(format!(
                    "coproduct does not commute with the differential on {}",
                    self.labels[i]
                )));
            }
        }
        Ok(())
    }

    /// For each basis element of the coideal, the least `n` with
    /// `(Δ′)ⁿ x = 0`, searched up to `bound`.
    pub fn check_conilpotent(&self, bound: usize) -> Vec<(usize, Conilpotency)> {
        self.reduced_basis()
            .into_iter()
            .map(|i| {
                let mut current: Lin<Vec<usize>> = Lin::single(vec![i], self.field.one());
                for n in 1..=bound {
                    current = current.map_linear(|w| {
                        self.reduced_coproduct(w[0]).map_keys(|&(a, b)| {
                            let mut v = vec![a, b];
                            v.extend_from_slice(&w[1..]);
                            v
                        })
                    });
                    if current.is_zero() {
                        return (i, Conilpotency::Order(n));
                    }
                }
                (i, Conilpotency::Undetermined)
            })
            .collect()
    }
}
