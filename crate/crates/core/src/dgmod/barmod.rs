use crate::dgalg::{Bar, BarWord, Cobar, Word};
use crate::dgmod::module::RightModule;
use crate::dgmod::twisted::Window;
use crate::error::Result;
use crate::linalg::{BoundedComplex, Lin};

pub type BarModKey<K> = (K, BarWord<Word>);

/// The complex `(M ⊗ BΩC, b_M)` restricted to a degree and weight window,
/// which is a subcomplex because `b_M` never raises either.
#[derive(Clone, Debug)]
pub struct BarModule<M> {
    module: M,
    bar: Bar<Cobar>,
    window: Window,
}

impl<M: RightModule> BarModule<M> {
    pub fn new(module: M, window: Window) -> Self {
        let bar = Bar::new(module.cobar().clone());
        BarModule { module, bar, window }
    }

    pub fn module(&self) -> &M {
        &self.module
    }

    pub fn bar(&self) -> &Bar<Cobar> {
        &self.bar
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn degree(&self, k: &BarModKey<M::Key>) -> i64 {
        self.module.degree(&k.0) + self.bar.degree(&k.1)
    }

    pub fn weight(&self, k: &BarModKey<M::Key>) -> usize {
        self.module.weight(&k.0) + self.bar.weight(&k.1)
    }

    pub fn label(&self, k: &BarModKey<M::Key>) -> String {
        format!("{}⊗{}", self.module.label(&k.0), self.bar.label(&k.1))
    }

    /// `b_M(m⊗w) = dm⊗w + (−1)^{|m|} m⊗d_B w + (−1)^{|m|} (m·a₁)⊗{a₂|…|aₙ}`.
    pub fn diff(&self, k: &BarModKey<M::Key>) -> Lin<BarModKey<M::Key>> {
        let (m, w) = k;
        let f = self.module.field();
        let s = f.sign(self.module.degree(m));
        let mut out = Lin::zero();
        for (dm, v) in self.module.diff(m).iter() {
            out.add_term((dm.clone(), w.clone()), v.clone());
        }
        for (dw, v) in self.bar.diff(w).iter() {
            out.add_term((m.clone(), dw.clone()), v * &s);
        }
        if let Some((a1, rest)) = w.split_first() {
            for (ma, v) in self.module.act_word(m, a1).iter() {
                out.add_term((ma.clone(), rest.to_vec()), v * &s);
            }
        }
        out
    }

    pub fn diff_of(&self, x: &Lin<BarModKey<M::Key>>) -> Lin<BarModKey<M::Key>> {
        x.map_linear(|k| self.diff(k))
    }

    pub fn basis(&self, degree: i64) -> Vec<BarModKey<M::Key>> {
        let mut out = Vec::new();
        let lo = self.module.min_degree();
        for e in 0..=degree - lo {
            for w in self.bar.words(e, self.window.max_weight) {
                let left = self.window.max_weight - self.bar.weight(&w);
                for m in self.module.basis(degree - e, left) {
                    out.push((m, w.clone()));
                }
            }
        }
        out
    }

    /// Highest degree whose homology is unaffected by the window.
    pub fn reliable_degree(&self) -> i64 {
        let top = self.window.max_degree;
        if self.module.cobar().has_degree_zero_letters() {
            return -1;
        }
        let r = self.module.weight_ratio().map_or(2, |r| r.max(2));
        top.min((self.window.max_weight / r) as i64 - 1 + self.module.min_degree().max(0))
    }

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
}
