use crate::dgalg::DgCoalgebra;
use crate::dgmod::module::RightModule;
use crate::error::{Error, Result};
use crate::linalg::{BoundedComplex, HomologyDegree, Lin};
use crate::simplicial::SimplicialSet;

pub type TwistedKey<K> = (K, usize);

/// Degree and weight bounds for enumerating bases of infinite complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub max_degree: i64,
    pub max_weight: usize,
}

/// The twisted tensor product `(M ⊗ C, ∂⊗τ)`.
#[derive(Clone, Debug)]
pub struct TwistedComplex<M> {
    module: M,
    window: Window,
}

impl<M: RightModule> TwistedComplex<M> {
    pub fn new(module: M, window: Window) -> Self {
        TwistedComplex { module, window }
    }

    pub fn module(&self) -> &M {
        &self.module
    }

    pub fn window(&self) -> Window {
        self.window
    }

    fn coalgebra(&self) -> &DgCoalgebra {
        self.module.cobar().coalgebra()
    }

    pub fn degree(&self, k: &TwistedKey<M::Key>) -> i64 {
        self.module.degree(&k.0) + self.coalgebra().degree(k.1) as i64
    }

    pub fn label(&self, k: &TwistedKey<M::Key>) -> String {
        format!("{}⊗{}", self.module.label(&k.0), self.coalgebra().label(k.1))
    }

    /// `∂⊗τ(m⊗c) = dm⊗c + (−1)^{|m|} m⊗dc + Σ (−1)^{|m|} (m·[c′])⊗c″`,
    /// the last sum over coproduct terms with `c′` in the coideal.
    pub fn diff(&self, k: &TwistedKey<M::Key>) -> Lin<TwistedKey<M::Key>> {
        let (m, c) = k;
        let f = self.module.field();
        let coalgebra = self.coalgebra();
        let unit = self.module.cobar().unit();
        let s = f.sign(self.module.degree(m));
        let mut out = Lin::zero();
        for (dm, v) in self.module.diff(m).iter() {
            out.add_term((dm.clone(), *c), v.clone());
        }
        for (&dc, v) in coalgebra.diff(*c).iter() {
            out.add_term((m.clone(), dc), v * &s);
        }
        for (&(a, b), v) in coalgebra.coproduct(*c).iter() {
            if a == unit {
                continue;
            }
            for (ma, u) in self.module.act_letter(m, a).iter() {
                out.add_term((ma.clone(), b), &(v * u) * &s);
            }
        }
        out
    }

    pub fn diff_of(&self, x: &Lin<TwistedKey<M::Key>>) -> Lin<TwistedKey<M::Key>> {
        x.map_linear(|k| self.diff(k))
    }

    fn weight_capped(&self) -> bool {
        self.module.weight_ratio() != Some(0)
    }

    pub fn basis(&self, degree: i64) -> Vec<TwistedKey<M::Key>> {
        let c = self.coalgebra();
        let mut out = Vec::new();
        for i in 0..c.len() {
            let dim = c.degree(i);
            let weight = if self.weight_capped() {
                match self.window.max_weight.checked_sub(dim) {
                    Some(w) => w,
                    None => continue,
                }
            } else {
                usize::MAX
            };
            for m in self.module.basis(degree - dim as i64, weight) {
                out.push((m, i));
            }
        }
        out
    }

    /// Highest degree whose homology is unaffected by the window.
    pub fn reliable_degree(&self) -> i64 {
        let top = self.window.max_degree;
        match self.module.weight_ratio() {
            Some(0) => top,
            Some(r) => top.min((self.window.max_weight / r.max(1)) as i64 - 1),
            None => -1,
        }
    }

    /// The complex on degrees `min..=max_degree + 1`, closed under `∂⊗τ`.
    pub fn complex(&self) -> Result<BoundedComplex> {
        let lo = self.module.min_degree();
        let bases: Vec<_> = (lo..=self.window.max_degree + 1).map(|d| self.basis(d)).collect();
        let c = BoundedComplex::from_keyed(
            self.module.field(),
            lo,
            &bases,
            |k| self.label(k),
            |k| self.diff(k),
            true,
        )?;
        Ok(c.with_reliable_max(self.reliable_degree()))
    }

    /// Checks that `id⊗Δ` is a chain map into `(M⊗C, ∂⊗τ) ⊗ C` on `k`.
    pub fn check_coaction(&self, k: &TwistedKey<M::Key>) -> Result<()> {
        let f = self.module.field();
        let c = self.coalgebra();
        let coact = |x: &Lin<TwistedKey<M::Key>>| {
            let mut out: Lin<(M::Key, usize, usize)> = Lin::zero();
            for ((m, i), v) in x.iter() {
                for (&(a, b), u) in c.coproduct(*i).iter() {
                    out.add_term((m.clone(), a, b), v * u);
                }
            }
            out
        };
        let single = Lin::single(k.clone(), f.one());
        let lhs = coact(&self.diff_of(&single));
        let mut rhs = Lin::zero();
        for ((m, a, b), v) in coact(&single).iter() {
            let x = (m.clone(), *a);
            for ((dm, da), u) in self.diff(&x).iter() {
                rhs.add_term((dm.clone(), *da, *b), v * u);
            }
            let s = f.sign(self.degree(&x));
            for (&db, u) in c.diff(*b).iter() {
                rhs.add_term((m.clone(), *a, db), &(v * u) * &s);
            }
        }
        if lhs != rhs {
            return Err(Error::Malformed(format!("coaction is not a chain map on {}", self.label(k))));
        }
        Ok(())
    }
}

/// The twisted tensor product of `m` with its coalgebra `c`, which must be
/// the coalgebra the module's cobar algebra is built on.
pub fn twisted_complex<M: RightModule + Clone>(
    m: &M,
    c: &DgCoalgebra,
    window: Window,
) -> Result<TwistedComplex<M>> {
    let own = m.cobar().coalgebra();
    if own.labels() != c.labels() || (0..c.len()).any(|i| own.coproduct(i) != c.coproduct(i)) {
        return Err(Error::Mismatch("module is not over the cobar algebra of this coalgebra".into()));
    }
    Ok(TwistedComplex::new(m.clone(), window))
}

/// The colimit model of the local system `m` over the one-vertex `k`,
/// with homology through `window.max_degree`.
pub fn colimit_complex<M: RightModule + Clone>(
    k: &SimplicialSet,
    m: &M,
    window: Window,
) -> Result<(BoundedComplex, Vec<HomologyDegree>)> {
    let vertices = k.vertices().len();
    if vertices != 1 {
        return Err(Error::NotOneVertex(vertices));
    }
    let c = m.cobar().coalgebra();
    let ids: Vec<&str> = k.generators().iter().map(|g| g.id.as_str()).collect();
    if c.labels().iter().map(String::as_str).ne(ids.iter().copied()) {
        return Err(Error::Mismatch("module is not over the chains of this simplicial set".into()));
    }
    let t = TwistedComplex::new(m.clone(), window);
    let complex = t.complex()?;
    let lo = complex.lo();
    let homology = complex.homology_ranks(lo, window.max_degree)?;
    Ok((complex, homology))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::dgalg::Cobar;
    use crate::dgmod::module::{FiniteModule, FreeModule};
    use crate::scalar::Field;
    use crate::simplicial::{circle, normalized_chains, sphere_min};

    const W: Window = Window {
        max_degree: 4,
        max_weight: 10,
    };

    fn ranks(h: &[HomologyDegree]) -> Vec<usize> {
        h.iter().map(|d| d.rank).collect()
    }

    #[test]
    fn sphere_modules() {
        let k = sphere_min(2).unwrap();
        let om = Cobar::new(Arc::new(normalized_chains(&k, Field::Rational).unwrap())).unwrap();
        let triv = FiniteModule::trivial(&om).unwrap();
        let (_, h) = colimit_complex(&k, &triv, W).unwrap();
        assert_eq!(ranks(&h)[..3], [1, 0, 1]);
        let hopf = FiniteModule::hopf(&om, 1).unwrap();
        let (_, h) = colimit_complex(&k, &hopf, W).unwrap();
        assert_eq!(ranks(&h)[..4], [1, 0, 0, 1]);
        let free = FreeModule::new(&om);
        let (c, h) = colimit_complex(&k, &free, W).unwrap();
        assert_eq!(ranks(&h), [1, 0, 0, 0, 0]);
        assert!(c.is_reliable(4));
    }

    #[test]
    fn circle_monodromy() {
        let k = circle().unwrap();
        let q = Field::Rational;
        let om = Cobar::new(Arc::new(normalized_chains(&k, q).unwrap())).unwrap();
        for (u, expected) in [(1, [1, 1]), (2, [0, 0])] {
            let m = FiniteModule::monodromy(&om, 1, &[(1, vec![vec![q.int(u)]])]).unwrap();
            let (_, h) = colimit_complex(&k, &m, W).unwrap();
            assert_eq!(ranks(&h)[..2], expected);
        }
    }
}
