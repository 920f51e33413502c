use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use rand::Rng;

use crate::dgalg::Cobar;
use crate::dgmod::barmod::{BarModKey, BarModule};
use crate::dgmod::module::{same_algebra, FiniteModule, RightModule};
use crate::dgmod::twisted::{TwistedComplex, TwistedKey};
use crate::error::{Error, Result};
use crate::linalg::{BoundedComplex, Echelon, Lin, Vector};
use crate::scalar::Field;

/// A linear map into a finite module, as a combination of elementary maps
/// `x ↦ n`.
pub type LinearMap<K> = Lin<(K, usize)>;

/// The value of `g` on the basis element `x`.
pub fn eval<K: Ord + Clone>(g: &LinearMap<K>, x: &K) -> Vector {
    g.range_from(&(x.clone(), 0))
        .take_while(|((k, _), _)| k == x)
        .map(|((_, n), v)| (*n, v.clone()))
        .collect()
}

pub fn eval_lin<K: Ord + Clone>(g: &LinearMap<K>, x: &Lin<K>) -> Vector {
    let mut out = Vector::zero();
    for (k, v) in x.iter() {
        out.add_scaled(&eval(g, k), v);
    }
    out
}

fn place<K: Ord + Clone>(out: &mut LinearMap<K>, x: &K, value: &Vector) {
    for (&n, v) in value.iter() {
        out.add_term((x.clone(), n), v.clone());
    }
}

/// Which morphism complex a source complex gives rise to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomVariant {
    Strict,
    Infty,
    Tau,
}

/// A windowed source complex for maps into a finite module, together with
/// the variant-specific differential evaluated at one source element.
pub trait HomSource {
    type Key: Ord + Clone + Debug;

    const VARIANT: HomVariant;

    fn cobar(&self) -> &Cobar;
    fn source_degree(&self, x: &Self::Key) -> i64;
    fn source_label(&self, x: &Self::Key) -> String;
    fn source_basis(&self, degree: i64) -> Vec<Self::Key>;
    fn source_range(&self) -> (i64, i64);
    /// `δ̂(g)(x)` for `g` homogeneous of degree `p`.
    fn delta_at(&self, n: &FiniteModule, g: &LinearMap<Self::Key>, p: i64, x: &Self::Key) -> Vector;
    /// Source elements at which `delta_at` evaluates `g` for `x`.
    fn reads(&self, x: &Self::Key) -> Vec<Self::Key>;
}

impl<M: RightModule> HomSource for TwistedComplex<M> {
    type Key = TwistedKey<M::Key>;

    const VARIANT: HomVariant = HomVariant::Tau;

    fn cobar(&self) -> &Cobar {
        self.module().cobar()
    }
    fn source_degree(&self, x: &Self::Key) -> i64 {
        self.degree(x)
    }
    fn source_label(&self, x: &Self::Key) -> String {
        self.label(x)
    }
    fn source_basis(&self, degree: i64) -> Vec<Self::Key> {
        self.basis(degree)
    }
    fn source_range(&self) -> (i64, i64) {
        (self.module().min_degree(), self.window().max_degree)
    }

    /// `δ̂g = d_N∘g − (−1)^{|g|} g∘∂⊗τ + Σ (−1)^{|g|+|m|+|σ′|} g(m⊗σ′)·[σ″]`,
    /// the last sum over coproduct terms of `σ` with `σ″` in the coideal.
    fn delta_at(&self, n: &FiniteModule, g: &LinearMap<Self::Key>, p: i64, x: &Self::Key) -> Vector {
        let f = n.field();
        let (m, sigma) = x;
        let mut out = n.diff_of(&eval(g, x));
        out.add_scaled(&eval_lin(g, &self.diff(x)), &-f.sign(p));
        let c = self.cobar().coalgebra();
        let unit = self.cobar().unit();
        let dm = self.module().degree(m);
        for (&(a, b), v) in c.coproduct(*sigma).iter() {
            if b == unit {
                continue;
            }
            let value = eval(g, &(m.clone(), a));
            let acted = n.act(&value, &self.cobar().letter(b));
            out.add_scaled(&acted, &(v * &f.sign(p + dm + c.degree(a) as i64)));
        }
        out
    }

    fn reads(&self, x: &Self::Key) -> Vec<Self::Key> {
        let unit = self.cobar().unit();
        let mut out = vec![x.clone()];
        out.extend(self.diff(x).keys().cloned());
        for &(a, b) in self.cobar().coalgebra().coproduct(x.1).keys() {
            if b != unit {
                out.push((x.0.clone(), a));
            }
        }
        out
    }
}

impl<M: RightModule> HomSource for BarModule<M> {
    type Key = BarModKey<M::Key>;

    const VARIANT: HomVariant = HomVariant::Infty;

    fn cobar(&self) -> &Cobar {
        self.module().cobar()
    }
    fn source_degree(&self, x: &Self::Key) -> i64 {
        self.degree(x)
    }
    fn source_label(&self, x: &Self::Key) -> String {
        self.label(x)
    }
    fn source_basis(&self, degree: i64) -> Vec<Self::Key> {
        self.basis(degree)
    }
    fn source_range(&self) -> (i64, i64) {
        (self.module().min_degree(), self.window().max_degree)
    }

    /// `δ̂f = d_N∘f − (−1)^{|f|} f∘b_M + (−1)^{|f|+|m|+e} f(m⊗{a₁|…|aₙ₋₁})·aₙ`
    /// with `e` the bar degree of `{a₁|…|aₙ₋₁}`.
    fn delta_at(&self, n: &FiniteModule, g: &LinearMap<Self::Key>, p: i64, x: &Self::Key) -> Vector {
        let f = n.field();
        let (m, w) = x;
        let mut out = n.diff_of(&eval(g, x));
        out.add_scaled(&eval_lin(g, &self.diff(x)), &-f.sign(p));
        if let Some((last, init)) = w.split_last() {
            let e = self.bar().degree(init);
            let value = eval(g, &(m.clone(), init.to_vec()));
            let acted = n.act(&value, &Lin::single(last.clone(), f.one()));
            out.add_scaled(&acted, &f.sign(p + self.module().degree(m) + e));
        }
        out
    }

    fn reads(&self, x: &Self::Key) -> Vec<Self::Key> {
        let mut out = vec![x.clone()];
        out.extend(self.diff(x).keys().cloned());
        if let Some((_, init)) = x.1.split_last() {
            out.push((x.0.clone(), init.to_vec()));
        }
        out
    }
}

/// Maps from a windowed source into a finite module with the differential
/// `δ̂`; the window is closed under everything `δ̂` evaluates, so the
/// restriction is an exact quotient complex.
#[derive(Clone, Debug)]
pub struct HomComplex<S: HomSource> {
    source: S,
    target: FiniteModule,
    bases: BTreeMap<i64, Vec<S::Key>>,
    /// For each window element `y`, the elements whose `δ̂` value reads `y`.
    readers: BTreeMap<S::Key, Vec<S::Key>>,
}

impl<S: HomSource> HomComplex<S> {
    pub fn new(source: S, target: FiniteModule) -> Result<Self> {
        same_algebra(source.cobar(), target.cobar())?;
        let (lo, hi) = source.source_range();
        let bases: BTreeMap<i64, Vec<S::Key>> = (lo..=hi).map(|d| (d, source.source_basis(d))).collect();
        let mut readers: BTreeMap<S::Key, Vec<S::Key>> = BTreeMap::new();
        for x in bases.values().flatten() {
            for y in source.reads(x) {
                readers.entry(y).or_default().push(x.clone());
            }
        }
        Ok(HomComplex {
            source,
            target,
            bases,
            readers,
        })
    }

    pub fn variant(&self) -> HomVariant {
        S::VARIANT
    }

    pub fn source(&self) -> &S {
        &self.source
    }

    pub fn target(&self) -> &FiniteModule {
        &self.target
    }

    pub fn field(&self) -> Field {
        self.target.field()
    }

    /// Hom degrees with a nonzero basis in the window.
    pub fn degree_range(&self) -> (i64, i64) {
        let (lo, hi) = self.source.source_range();
        let ndeg = self.target.degrees();
        let nmin = ndeg.iter().copied().min().unwrap_or(0);
        let nmax = ndeg.iter().copied().max().unwrap_or(0);
        (nmin - hi, nmax - lo)
    }

    pub fn source_basis(&self, degree: i64) -> &[S::Key] {
        self.bases.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn basis(&self, p: i64) -> Vec<(S::Key, usize)> {
        let mut out = Vec::new();
        for (&d, xs) in &self.bases {
            let ns = self.target.basis(d + p, 0);
            for x in xs {
                for &n in &ns {
                    out.push((x.clone(), n));
                }
            }
        }
        out
    }

    pub fn label(&self, k: &(S::Key, usize)) -> String {
        format!("{}↦{}", self.source.source_label(&k.0), self.target.label(&k.1))
    }

    /// `δ̂g` on every source element of the window.
    pub fn delta(&self, g: &LinearMap<S::Key>, p: i64) -> LinearMap<S::Key> {
        let mut out = Lin::zero();
        let touched: BTreeSet<&S::Key> = g
            .keys()
            .filter_map(|(y, _)| self.readers.get(y))
            .flatten()
            .collect();
        for x in touched {
            let d = self.source.source_degree(x);
            if self.target.basis(d + p - 1, 0).is_empty() {
                continue;
            }
            place(&mut out, x, &self.source.delta_at(&self.target, g, p, x));
        }
        out
    }

    /// The whole window as a complex; construction checks `δ̂² = 0`.
    pub fn complex(&self) -> Result<BoundedComplex> {
        let (lo, hi) = self.degree_range();
        let bases: Vec<_> = (lo..=hi).map(|p| self.basis(p)).collect();
        let degree_of = |k: &(S::Key, usize)| self.target.degree(&k.1) - self.source.source_degree(&k.0);
        BoundedComplex::from_keyed(
            self.field(),
            lo,
            &bases,
            |k| self.label(k),
            |k| self.delta(&Lin::single(k.clone(), self.field().one()), degree_of(k)),
            true,
        )
    }

    /// A random homogeneous map of degree `p` with small integer
    /// coefficients.
    pub fn random_map(&self, rng: &mut impl Rng, p: i64) -> LinearMap<S::Key> {
        let f = self.field();
        self.basis(p)
            .into_iter()
            .map(|k| (k, f.int(rng.gen_range(-2..=2))))
            .collect()
    }
}

/// The ambient space of degree-`p` linear maps `M → N` between finite
/// modules, indexed by `(m, n)`.
fn linear_maps(m: &FiniteModule, n: &FiniteModule, p: i64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..m.len() {
        for j in n.basis(m.degree(&i) + p, 0) {
            out.push((i, j));
        }
    }
    out
}

/// Strict module maps `M → N` with `δf = d_N∘f − (−1)^{|f|} f∘d_M`.
#[derive(Clone, Debug)]
pub struct HomStrict {
    source: FiniteModule,
    target: FiniteModule,
}

pub type StrictMap = Lin<(usize, usize)>;

impl HomStrict {
    pub fn new(source: FiniteModule, target: FiniteModule) -> Result<Self> {
        same_algebra(source.cobar(), target.cobar())?;
        Ok(HomStrict { source, target })
    }

    pub fn source(&self) -> &FiniteModule {
        &self.source
    }

    pub fn target(&self) -> &FiniteModule {
        &self.target
    }

    pub fn degree_range(&self) -> (i64, i64) {
        let (s, t) = (self.source.degrees(), self.target.degrees());
        let lo = t.iter().min().unwrap_or(&0) - s.iter().max().unwrap_or(&0);
        let hi = t.iter().max().unwrap_or(&0) - s.iter().min().unwrap_or(&0);
        (lo, hi)
    }

    pub fn apply(&self, f: &StrictMap, x: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (&(i, j), v) in f.iter() {
            if let Some(u) = x.get(&i) {
                out.add_term(j, v * u);
            }
        }
        out
    }

    /// The failure of `f(m·[c]) = f(m)·[c]`, over all basis elements and
    /// letters.
    fn defect(&self, f: &StrictMap) -> Lin<(usize, usize, usize)> {
        let mut out = Lin::zero();
        let one = self.source.field().one();
        for &c in self.source.cobar().letters() {
            for i in 0..self.source.len() {
                let lhs = self.apply(f, &self.source.act_letter(&i, c));
                let rhs = self.target.act(&self.apply(f, &Vector::single(i, one.clone())), &self.source.cobar().letter(c));
                for (&j, v) in lhs.minus(&rhs).iter() {
                    out.add_term((c, i, j), v.clone());
                }
            }
        }
        out
    }

    pub fn is_module_map(&self, f: &StrictMap) -> bool {
        self.defect(f).is_zero()
    }

    /// A basis of the degree-`p` module maps.
    pub fn basis(&self, p: i64) -> Vec<StrictMap> {
        let ambient = linear_maps(&self.source, &self.target, p);
        let one = self.source.field().one();
        let mut rows: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
        let mut columns = Vec::new();
        for &(i, j) in &ambient {
            let d = self.defect(&Lin::single((i, j), one.clone()));
            let mut col = Vector::zero();
            for (k, v) in d.iter() {
                let next = rows.len();
                let r = *rows.entry(*k).or_insert(next);
                col.add_term(r, v.clone());
            }
            columns.push(col);
        }
        let matrix = crate::linalg::SparseMatrix::from_columns(self.source.field(), rows.len(), columns);
        matrix
            .kernel()
            .into_iter()
            .map(|z| z.map_keys(|&c| ambient[c]))
            .collect()
    }

    pub fn delta(&self, f: &StrictMap, p: i64) -> StrictMap {
        let field = self.source.field();
        let mut out = Lin::zero();
        for i in 0..self.source.len() {
            let e = Vector::single(i, field.one());
            let mut v = self.target.diff_of(&self.apply(f, &e));
            v.add_scaled(&self.apply(f, &self.source.diff(&i)), &-field.sign(p));
            for (&j, c) in v.iter() {
                out.add_term((i, j), c.clone());
            }
        }
        out
    }

    /// The complex of module maps; construction checks `δ² = 0`.
    pub fn complex(&self) -> Result<BoundedComplex> {
        let field = self.source.field();
        let (lo, hi) = self.degree_range();
        let bases: Vec<Vec<StrictMap>> = (lo..=hi).map(|p| self.basis(p)).collect();
        let index: Vec<BTreeMap<(usize, usize), usize>> = (lo..=hi)
            .map(|p| {
                linear_maps(&self.source, &self.target, p)
                    .into_iter()
                    .enumerate()
                    .map(|(i, k)| (k, i))
                    .collect()
            })
            .collect();
        let coords = |p: usize, f: &StrictMap| -> Vector { f.map_keys(|k| index[p][k]) };
        let mut diffs = Vec::new();
        let mut labels = Vec::new();
        for (p, basis) in bases.iter().enumerate() {
            labels.push((0..basis.len()).map(|i| format!("f{}_{i}", lo + p as i64)).collect());
            if p == 0 {
                diffs.push(crate::linalg::SparseMatrix::zeros(field, 0, basis.len()));
                continue;
            }
            let mut echelon = Echelon::new();
            for (t, b) in bases[p - 1].iter().enumerate() {
                echelon.insert_tagged(coords(p - 1, b), Vector::single(t, field.one()));
            }
            let mut m = crate::linalg::SparseMatrix::zeros(field, bases[p - 1].len(), basis.len());
            for (c, b) in basis.iter().enumerate() {
                let d = self.delta(b, lo + p as i64);
                let (residual, tags) = echelon.reduce(coords(p - 1, &d));
                if !residual.is_zero() {
                    return Err(Error::NotStrict("δ of a module map left the module maps".into()));
                }
                for (&r, v) in tags.iter() {
                    m.add(r, c, v.clone());
                }
            }
            diffs.push(m);
        }
        BoundedComplex::new(field, lo, labels, diffs)
    }
}

/// `ι(f)(m⊗{}) = f(m)`, zero on positive bar lengths.
pub fn embed_strict(hom: &HomStrict, f: &StrictMap) -> Result<LinearMap<BarModKey<usize>>> {
    if !hom.is_module_map(f) {
        return Err(Error::NotStrict("map does not commute with the action".into()));
    }
    Ok(f.map_keys(|&(i, j)| ((i, Vec::new()), j)))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::dgmod::module::FreeModule;
    use crate::dgmod::twisted::Window;
    use crate::simplicial::{normalized_chains, sphere_min};

    const W: Window = Window {
        max_degree: 4,
        max_weight: 10,
    };

    fn sphere() -> Cobar {
        Cobar::new(Arc::new(normalized_chains(&sphere_min(2).unwrap(), Field::Rational).unwrap())).unwrap()
    }

    #[test]
    fn tau_hom_of_trivial_module() {
        let om = sphere();
        let k = FiniteModule::trivial(&om).unwrap();
        let h = HomComplex::new(TwistedComplex::new(k.clone(), W), k).unwrap();
        let c = h.complex().unwrap();
        let (lo, hi) = h.degree_range();
        let dims: Vec<_> = (lo..=hi).filter(|&p| c.dim(p) > 0).map(|p| (p, c.dim(p))).collect();
        assert_eq!(dims, vec![(-2, 1), (0, 1)]);
        assert!((lo..=hi).all(|p| c.differential(p).is_zero()));
    }

    #[test]
    fn hopf_complexes_square_to_zero() {
        let om = sphere();
        let hopf = FiniteModule::hopf(&om, 1).unwrap();
        HomComplex::new(TwistedComplex::new(hopf.clone(), W), hopf.clone())
            .unwrap()
            .complex()
            .unwrap();
        HomComplex::new(BarModule::new(hopf.clone(), W), hopf.clone())
            .unwrap()
            .complex()
            .unwrap();
        HomStrict::new(hopf.clone(), hopf).unwrap().complex().unwrap();
    }

    #[test]
    fn bar_module_on_free_module() {
        let om = sphere();
        let b = BarModule::new(FreeModule::new(&om), W);
        let d = b.diff(&(Vec::new(), vec![vec![1]]));
        let expected: Lin<_> = [((vec![1], Vec::new()), Field::Rational.one())].into_iter().collect();
        assert_eq!(d, expected);
        b.complex().unwrap();
    }

    #[test]
    fn embedding_commutes_with_differentials() {
        let om = sphere();
        let hopf = FiniteModule::hopf(&om, 1).unwrap();
        let strict = HomStrict::new(hopf.clone(), hopf.clone()).unwrap();
        let infty = HomComplex::new(BarModule::new(hopf.clone(), W), hopf).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (lo, hi) = strict.degree_range();
        for p in lo..=hi {
            for f in strict.basis(p) {
                let lhs = infty.delta(&embed_strict(&strict, &f).unwrap(), p);
                let rhs = embed_strict(&strict, &strict.delta(&f, p)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let id: StrictMap = [((0, 0), Field::Rational.one()), ((1, 1), Field::Rational.one())]
            .into_iter()
            .collect();
        assert!(infty.delta(&embed_strict(&strict, &id).unwrap(), 0).is_zero());
        let g = infty.random_map(&mut rng, 1);
        assert!(infty.delta(&infty.delta(&g, 1), 0).is_zero());
    }
}
