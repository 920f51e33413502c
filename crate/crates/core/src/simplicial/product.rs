use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::simplicial::set::{Generator, RawFace, SimplicialSet};
use crate::simplicial::simplex::{surjection_from_degen, SimplexRef};

pub const DEFAULT_MAX_DIM: usize = 6;

/// The product `K × L`, materialized up to a dimension cap. Each generator is
/// a pair of simplices of equal dimension with no common degeneracy.
#[derive(Clone, Debug)]
pub struct Product {
    left: SimplicialSet,
    right: SimplicialSet,
    set: SimplicialSet,
    pairs: Vec<(SimplexRef, SimplexRef)>,
    lookup: HashMap<(SimplexRef, SimplexRef), usize>,
}

/// Splits off the degeneracies shared by both components, returning the
/// reduced pair and the common degeneracy word.
fn split_common(
    left: &SimplicialSet,
    right: &SimplicialSet,
    a: &SimplexRef,
    b: &SimplexRef,
) -> (SimplexRef, SimplexRef, Vec<usize>) {
    let common: Vec<usize> = a.degen.iter().copied().filter(|j| b.degen.contains(j)).collect();
    if common.is_empty() {
        return (a.clone(), b.clone(), common);
    }
    let n = left.dim(a);
    let joint = surjection_from_degen(&common, n - common.len());
    let reduce = |k: &SimplicialSet, r: &SimplexRef| {
        let eta = r.surjection(k.generator(r.base).dim);
        let mut reduced = vec![0; n - common.len() + 1];
        for (k, &j) in joint.iter().enumerate() {
            reduced[j] = eta[k];
        }
        SimplexRef::from_surjection(r.base, &reduced)
    };
    (reduce(left, a), reduce(right, b), common)
}

impl Product {
    pub fn new(left: &SimplicialSet, right: &SimplicialSet, max_dim: Option<usize>) -> Result<Self> {
        let cap = max_dim.unwrap_or_else(|| (left.max_dim() + right.max_dim()).min(DEFAULT_MAX_DIM));
        let mut pairs = Vec::new();
        for n in 0..=cap {
            for a in left.simplices(n) {
                for b in right.simplices(n) {
                    if a.degen.iter().all(|j| !b.degen.contains(j)) {
                        pairs.push((a.clone(), b));
                    }
                }
            }
        }
        let name = |a: &SimplexRef, b: &SimplexRef| {
            format!("({},{})", left.display(a), right.display(b))
        };
        let mut generators = Vec::new();
        let mut faces = HashMap::new();
        for (a, b) in &pairs {
            let n = left.dim(a);
            let id = name(a, b);
            generators.push(Generator { id: id.clone(), dim: n });
            if n == 0 {
                continue;
            }
            let mut fs = Vec::new();
            for i in 0..=n {
                let (fa, fb, common) = split_common(left, right, &left.face(a, i)?, &right.face(b, i)?);
                fs.push(RawFace::new(&name(&fa, &fb), &common));
            }
            faces.insert(id, fs);
        }
        let set = SimplicialSet::new(generators, faces)?;
        let mut sorted = vec![None; pairs.len()];
        for (a, b) in pairs {
            let i = set.lookup(&name(&a, &b))?;
            sorted[i] = Some((a, b));
        }
        let pairs: Vec<_> = sorted.into_iter().map(Option::unwrap).collect();
        let lookup = pairs.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(Product {
            left: left.clone(),
            right: right.clone(),
            set,
            pairs,
            lookup,
        })
    }

    pub fn set(&self) -> &SimplicialSet {
        &self.set
    }

    pub fn left(&self) -> &SimplicialSet {
        &self.left
    }

    pub fn right(&self) -> &SimplicialSet {
        &self.right
    }

    pub fn components(&self, generator: usize) -> &(SimplexRef, SimplexRef) {
        &self.pairs[generator]
    }

    /// The simplex of the product with the given components.
    pub fn pair_ref(&self, a: &SimplexRef, b: &SimplexRef) -> Result<SimplexRef> {
        let (n, m) = (self.left.dim(a), self.right.dim(b));
        if n != m {
            return Err(Error::Dimension(format!("pair of dimensions {n} and {m}")));
        }
        let (ra, rb, degen) = split_common(&self.left, &self.right, a, b);
        let base = *self.lookup.get(&(ra, rb)).ok_or_else(|| {
            Error::Window(format!("product simplex of dimension {n} beyond the materialized cap"))
        })?;
        Ok(SimplexRef { base, degen })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::models::{circle, delta, sphere_min};

    #[test]
    fn square_counts() {
        let d1 = delta(1).unwrap();
        let p = Product::new(&d1, &d1, None).unwrap();
        assert_eq!(p.set().counts(), vec![4, 5, 2]);
    }

    #[test]
    fn product_with_point() {
        let pt = delta(0).unwrap();
        for k in [circle().unwrap(), sphere_min(2).unwrap(), delta(2).unwrap()] {
            let p = Product::new(&k, &pt, None).unwrap();
            assert_eq!(p.set().counts(), k.counts());
        }
        assert_eq!(Product::new(&circle().unwrap(), &pt, None).unwrap().set().len(), 2);
    }

    #[test]
    fn pair_ref_of_degenerate_pair() {
        let d1 = delta(1).unwrap();
        let p = Product::new(&d1, &d1, None).unwrap();
        let v = SimplexRef {
            base: d1.lookup("0").unwrap(),
            degen: vec![0],
        };
        let r = p.pair_ref(&v, &v).unwrap();
        assert_eq!(r.degen, vec![0]);
        assert_eq!(p.set().id(r.base), "(0,0)");
    }
}
