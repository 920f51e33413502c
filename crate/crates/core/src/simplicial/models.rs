use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::simplicial::set::{Generator, RawFace, SimplicialSet};

fn gen(id: &str, dim: usize) -> Generator {
    Generator {
        id: id.to_string(),
        dim,
    }
}

fn subset_id(s: &[usize]) -> String {
    s.iter().map(|v| v.to_string()).join("")
}

/// The standard simplex `Δⁿ`; generators are named by their vertex lists,
/// e.g. `012`.
pub fn delta(n: usize) -> Result<SimplicialSet> {
    if n > 9 {
        return Err(Error::UnknownFixture(format!("delta{n}")));
    }
    let mut generators = Vec::new();
    let mut faces = HashMap::new();
    for size in 1..=n + 1 {
        for s in (0..=n).combinations(size) {
            let id = subset_id(&s);
            generators.push(gen(&id, size - 1));
            if size > 1 {
                let fs = (0..size)
                    .map(|i| {
                        let mut t = s.clone();
                        t.remove(i);
                        RawFace::new(&subset_id(&t), &[])
                    })
                    .collect();
                faces.insert(id, fs);
            }
        }
    }
    SimplicialSet::new(generators, faces)
}

fn collapsed(base: &str, dim: usize) -> RawFace {
    RawFace::new(base, &(0..dim).rev().collect_vec())
}

/// `Δⁿ/∂Δⁿ` with generators `v` and `sigma`.
pub fn sphere_min(n: usize) -> Result<SimplicialSet> {
    if n == 0 {
        return Err(Error::UnknownFixture("sphere_min0".into()));
    }
    let generators = vec![gen("v", 0), gen("sigma", n)];
    let faces = HashMap::from([("sigma".to_string(), vec![collapsed("v", n - 1); n + 1])]);
    SimplicialSet::new(generators, faces)
}

pub fn circle() -> Result<SimplicialSet> {
    sphere_min(1)
}

/// One vertex `v`, one edge `a` and a 2-simplex `sigma` with all faces `a`.
pub fn pinched() -> Result<SimplicialSet> {
    let generators = vec![gen("v", 0), gen("a", 1), gen("sigma", 2)];
    let faces = HashMap::from([
        ("a".to_string(), vec![RawFace::new("v", &[]); 2]),
        ("sigma".to_string(), vec![RawFace::new("a", &[]); 3]),
    ]);
    SimplicialSet::new(generators, faces)
}

/// Wedge of two one-vertex simplicial sets at their vertices. Positive
/// dimensional generators are prefixed with `l.` and `r.`.
pub fn wedge(left: &SimplicialSet, right: &SimplicialSet) -> Result<SimplicialSet> {
    let mut generators = vec![gen("v", 0)];
    let mut faces = HashMap::new();
    for (k, prefix) in [(left, "l."), (right, "r.")] {
        let verts = k.vertices();
        if verts.len() != 1 {
            return Err(Error::NotOneVertex(verts.len()));
        }
        let rename = |id: &str| {
            if k.lookup(id).ok() == Some(verts[0]) {
                "v".to_string()
            } else {
                format!("{prefix}{id}")
            }
        };
        for g in k.generators().iter().filter(|g| g.dim > 0) {
            generators.push(gen(&rename(&g.id), g.dim));
        }
        for (id, fs) in k.raw_faces() {
            let fs = fs
                .into_iter()
                .map(|f| RawFace {
                    base: rename(&f.base),
                    degen: f.degen,
                })
                .collect();
            faces.insert(rename(&id), fs);
        }
    }
    SimplicialSet::new(generators, faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::set::Operator::{Degeneracy as S, Face as D};
    use crate::simplicial::simplex::SimplexRef;

    #[test]
    fn generator_counts() {
        assert_eq!(delta(2).unwrap().counts(), vec![3, 3, 1]);
        assert_eq!(sphere_min(2).unwrap().len(), 2);
        let w = wedge(&circle().unwrap(), &circle().unwrap()).unwrap();
        assert_eq!(w.counts(), vec![1, 2]);
    }

    #[test]
    fn normalize_examples() {
        let k = delta(2).unwrap();
        let v = k.lookup("0").unwrap();
        let top = k.lookup("012").unwrap();
        assert_eq!(k.normalize(v, &[D(0), S(0)]).unwrap(), SimplexRef::nondegenerate(v));
        assert_eq!(
            k.normalize(v, &[D(1), S(0), S(0)]).unwrap(),
            SimplexRef { base: v, degen: vec![0] }
        );
        assert_eq!(k.normalize(top, &[D(2), S(1)]).unwrap(), SimplexRef::nondegenerate(top));
        assert!(matches!(
            k.normalize(v, &[D(3)]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn swapped_face_violates_identities() {
        let generators = ["0", "1", "2", "01", "02", "12"]
            .iter()
            .map(|id| gen(id, id.len() - 1))
            .chain([gen("012", 2)])
            .collect();
        let mut faces = HashMap::new();
        for e in ["01", "02", "12"] {
            faces.insert(
                e.to_string(),
                vec![RawFace::new(&e[1..], &[]), RawFace::new(&e[..1], &[])],
            );
        }
        faces.insert(
            "012".to_string(),
            vec![
                RawFace::new("02", &[]),
                RawFace::new("12", &[]),
                RawFace::new("01", &[]),
            ],
        );
        assert!(matches!(
            SimplicialSet::new(generators, faces),
            Err(Error::SimplicialIdentity { .. })
        ));
    }

    #[test]
    fn front_and_back_faces() {
        let k = delta(3).unwrap();
        let top = SimplexRef::nondegenerate(k.lookup("0123").unwrap());
        assert_eq!(k.display(&k.front(&top, 2)), "012");
        assert_eq!(k.display(&k.back(&top, 1)), "23");
        let s = sphere_min(2).unwrap();
        let sigma = SimplexRef::nondegenerate(s.lookup("sigma").unwrap());
        assert_eq!(s.display(&s.front(&sigma, 1)), "s0v");
    }
}
