use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::simplicial::simplex::{coface, factor_monotone, SimplexRef};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: String,
    pub dim: usize,
}

/// A finite simplicial set given by its nondegenerate simplices and face
/// tables. Generators are kept sorted by `(dim, id)`.
#[derive(Clone, Debug)]
pub struct SimplicialSet {
    generators: Vec<Generator>,
    faces: Vec<Vec<SimplexRef>>,
    index: HashMap<String, usize>,
}

/// A face entry before ids are resolved to generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawFace {
    pub base: String,
    pub degen: Vec<usize>,
}

impl RawFace {
    pub fn new(base: &str, degen: &[usize]) -> Self {
        RawFace {
            base: base.to_string(),
            degen: degen.to_vec(),
        }
    }
}

impl SimplicialSet {
    /// Assembles and validates a simplicial set. `faces` lists, for every
    /// generator of positive dimension, its faces `d_0 … d_n`.
    pub fn new(generators: Vec<Generator>, faces: HashMap<String, Vec<RawFace>>) -> Result<Self> {
        let k = Self::assemble(generators, faces)?;
        k.validate()?;
        Ok(k)
    }

    /// Like [`SimplicialSet::new`] but skips the simplicial-identity check.
    pub fn assemble(
        mut generators: Vec<Generator>,
        mut faces: HashMap<String, Vec<RawFace>>,
    ) -> Result<Self> {
        generators.sort_by(|a, b| (a.dim, &a.id).cmp(&(b.dim, &b.id)));
        let mut index = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if index.insert(g.id.clone(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate generator {:?}", g.id)));
            }
        }
        let mut table = Vec::with_capacity(generators.len());
        for g in &generators {
            let raw = faces.remove(&g.id).unwrap_or_default();
            let expected = if g.dim == 0 { 0 } else { g.dim + 1 };
            if raw.len() != expected {
                return Err(Error::Malformed(format!(
                    "{:?} has {} faces, expected {expected}",
                    g.id,
                    raw.len()
                )));
            }
            let mut row = Vec::with_capacity(raw.len());
            for f in raw {
                let base = *index
                    .get(&f.base)
                    .ok_or_else(|| Error::UnknownSimplex(f.base.clone()))?;
                if !f.degen.windows(2).all(|w| w[0] > w[1]) {
                    return Err(Error::Malformed(format!(
                        "degeneracy word {:?} of a face of {:?} is not strictly decreasing",
                        f.degen, g.id
                    )));
                }
                let r = SimplexRef {
                    base,
                    degen: f.degen,
                };
                let dim = generators[base].dim + r.degen.len();
                if dim + 1 != g.dim || r.degen.iter().any(|&j| j >= dim) {
                    return Err(Error::Malformed(format!(
                        "face of {:?} has dimension {dim} or an out-of-range degeneracy",
                        g.id
                    )));
                }
                row.push(r);
            }
            table.push(row);
        }
        if let Some(extra) = faces.keys().next() {
            return Err(Error::UnknownSimplex(extra.clone()));
        }
        Ok(SimplicialSet {
            generators,
            faces: table,
            index,
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    pub fn id(&self, i: usize) -> &str {
        &self.generators[i].id
    }

    pub fn lookup(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownSimplex(id.to_string()))
    }

    pub fn gen_faces(&self, i: usize) -> &[SimplexRef] {
        &self.faces[i]
    }

    pub fn max_dim(&self) -> usize {
        self.generators.iter().map(|g| g.dim).max().unwrap_or(0)
    }

    /// Generator indices of dimension `n`, in basis order.
    pub fn of_dim(&self, n: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.generators[i].dim == n).collect()
    }

    /// Counts of nondegenerate simplices in dimensions `0..=max_dim`.
    pub fn counts(&self) -> Vec<usize> {
        (0..=self.max_dim()).map(|n| self.of_dim(n).len()).collect()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.of_dim(0)
    }

    pub fn dim(&self, r: &SimplexRef) -> usize {
        self.generators[r.base].dim + r.degen.len()
    }

    /// Restricts a simplex along a monotone map `theta: [k] → [dim r]`.
    pub fn apply(&self, r: &SimplexRef, theta: &[usize]) -> SimplexRef {
        let m = self.generators[r.base].dim;
        let eta = r.surjection(m);
        let psi: Vec<usize> = theta.iter().map(|&t| eta[t]).collect();
        self.restrict_base(r.base, &psi)
    }

    fn restrict_base(&self, base: usize, psi: &[usize]) -> SimplexRef {
        let m = self.generators[base].dim;
        let (image, _) = factor_monotone(psi);
        if image.len() == m + 1 {
            return SimplexRef::from_surjection(base, psi);
        }
        let p = (0..=m).find(|v| !image.contains(v)).unwrap();
        let face = &self.faces[base][p];
        let shifted: Vec<usize> = psi.iter().map(|&v| if v > p { v - 1 } else { v }).collect();
        self.apply(face, &shifted)
    }

    pub fn face(&self, r: &SimplexRef, i: usize) -> Result<SimplexRef> {
        let n = self.dim(r);
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, dim: n });
        }
        Ok(self.apply(r, &coface(n, i)))
    }

    pub fn degeneracy(&self, r: &SimplexRef, j: usize) -> Result<SimplexRef> {
        let n = self.dim(r);
        if j > n {
            return Err(Error::IndexOutOfRange { index: j, dim: n });
        }
        let eta = r.surjection(self.generators[r.base].dim);
        let lifted: Vec<usize> = (0..=n + 1).map(|k| eta[if k <= j { k } else { k - 1 }]).collect();
        Ok(SimplexRef::from_surjection(r.base, &lifted))
    }

    /// The front face on vertices `0..=p`.
    pub fn front(&self, r: &SimplexRef, p: usize) -> SimplexRef {
        self.apply(r, &(0..=p).collect_vec())
    }

    /// The back face on the last `q + 1` vertices.
    pub fn back(&self, r: &SimplexRef, q: usize) -> SimplexRef {
        let n = self.dim(r);
        self.apply(r, &(n - q..=n).collect_vec())
    }

    pub fn vertex(&self, r: &SimplexRef, i: usize) -> usize {
        self.apply(r, &[i]).base
    }

    pub fn first_vertex(&self, r: &SimplexRef) -> usize {
        self.vertex(r, 0)
    }

    pub fn last_vertex(&self, r: &SimplexRef) -> usize {
        self.vertex(r, self.dim(r))
    }

    /// Applies a word of face and degeneracy operators to a generator; the
    /// rightmost operator acts first.
    pub fn normalize(&self, base: usize, word: &[Operator]) -> Result<SimplexRef> {
        let mut r = SimplexRef::nondegenerate(base);
        for op in word.iter().rev() {
            r = match *op {
                Operator::Face(i) => self.face(&r, i)?,
                Operator::Degeneracy(j) => self.degeneracy(&r, j)?,
            };
        }
        Ok(r)
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for all `i < j` on every generator.
    pub fn validate(&self) -> Result<()> {
        for (x, g) in self.generators.iter().enumerate() {
            if g.dim < 2 {
                continue;
            }
            let r = SimplexRef::nondegenerate(x);
            for j in 1..=g.dim {
                for i in 0..j {
                    let lhs = self.face(&self.face(&r, j)?, i)?;
                    let rhs = self.face(&self.face(&r, i)?, j - 1)?;
                    if lhs != rhs {
                        return Err(Error::SimplicialIdentity {
                            i,
                            j,
                            simplex: g.id.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Human-readable name of a simplex, e.g. `s1s0v`.
    pub fn display(&self, r: &SimplexRef) -> String {
        let mut s = String::new();
        for j in &r.degen {
            s.push_str(&format!("s{j}"));
        }
        s.push_str(&self.generators[r.base].id);
        s
    }

    /// All simplices of dimension `n`, degenerate ones included, in a fixed
    /// order.
    pub fn simplices(&self, n: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for (x, g) in self.generators.iter().enumerate() {
            if g.dim > n {
                continue;
            }
            for mut degen in (0..n).combinations(n - g.dim) {
                degen.reverse();
                out.push(SimplexRef { base: x, degen });
            }
        }
        out
    }

    /// Faces of every generator as raw id references, in generator order.
    pub fn raw_faces(&self) -> Vec<(String, Vec<RawFace>)> {
        self.generators
            .iter()
            .zip(&self.faces)
            .filter(|(g, _)| g.dim > 0)
            .map(|(g, fs)| {
                let raw = fs
                    .iter()
                    .map(|f| RawFace {
                        base: self.generators[f.base].id.clone(),
                        degen: f.degen.clone(),
                    })
                    .collect();
                (g.id.clone(), raw)
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    Face(usize),
    Degeneracy(usize),
}
