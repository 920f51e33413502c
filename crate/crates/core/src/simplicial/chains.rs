use crate::dgalg::{DgCoalgebra, Tensor2};
use crate::error::Result;
use crate::linalg::Vector;
use crate::scalar::Field;
use crate::simplicial::set::SimplicialSet;
use crate::simplicial::simplex::SimplexRef;

/// Normalized chains with the Alexander–Whitney coproduct. The basis is the
/// list of generators in order; degenerate faces and tensor factors vanish.
pub fn normalized_chains(k: &SimplicialSet, field: Field) -> Result<DgCoalgebra> {
    let n = k.len();
    let mut diff = Vec::with_capacity(n);
    let mut coproduct = Vec::with_capacity(n);
    for x in 0..n {
        let dim = k.generator(x).dim;
        let r = SimplexRef::nondegenerate(x);
        let mut d = Vector::zero();
        if dim > 0 {
            for i in 0..=dim {
                let f = k.face(&r, i)?;
                if !f.is_degenerate() {
                    d.add_term(f.base, field.sign(i as i64));
                }
            }
        }
        diff.push(d);
        let mut t = Tensor2::zero();
        for p in 0..=dim {
            let a = k.front(&r, p);
            let b = k.back(&r, dim - p);
            if !a.is_degenerate() && !b.is_degenerate() {
                t.add_term((a.base, b.base), field.one());
            }
        }
        coproduct.push(t);
    }
    let vertices = k.vertices();
    let counit = vertices.iter().map(|&v| (v, field.one())).collect();
    let coaugmentation = (vertices.len() == 1).then(|| vertices[0]);
    DgCoalgebra::new(
        field,
        k.generators().iter().map(|g| g.id.clone()).collect(),
        k.generators().iter().map(|g| g.dim).collect(),
        diff,
        coproduct,
        counit,
        coaugmentation,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::models::{circle, delta, sphere_min};

    #[test]
    fn sphere_chains() {
        let c = normalized_chains(&sphere_min(2).unwrap(), Field::Rational).unwrap();
        let h: Vec<_> = c.complex(2).unwrap().homology_ranks(0, 2).unwrap().iter().map(|d| d.rank).collect();
        assert_eq!(h, vec![1, 0, 1]);
        let (v, s) = (0, 1);
        let expected: Tensor2 = [((v, s), Field::Rational.one()), ((s, v), Field::Rational.one())]
            .into_iter()
            .collect();
        assert_eq!(c.coproduct(s), &expected);
    }

    #[test]
    fn triangle_coproduct() {
        let k = delta(2).unwrap();
        let c = normalized_chains(&k, Field::Rational).unwrap();
        let id = |s: &str| k.lookup(s).unwrap();
        let one = Field::Rational.one();
        let expected: Tensor2 = [
            ((id("0"), id("012")), one.clone()),
            ((id("01"), id("12")), one.clone()),
            ((id("012"), id("2")), one),
        ]
        .into_iter()
        .collect();
        assert_eq!(c.coproduct(id("012")), &expected);
        assert!(c.coaugmentation().is_none());
    }

    #[test]
    fn circle_boundary_vanishes() {
        let c = normalized_chains(&circle().unwrap(), Field::Rational).unwrap();
        assert!(c.diff(1).is_zero());
        assert_eq!(c.complex(1).unwrap().dim(1), 1);
    }
}
