use std::collections::BTreeMap;

use itertools::Itertools;
use rand::Rng;

use crate::dgalg::rho;
use crate::dgmod::{BarModKey, BarModule, RightModule, TwistedComplex, TwistedKey, Window};
use crate::error::{Error, Result};
use crate::linalg::{induced_homology_map, BoundedComplex, ChainMap, InducedDegree, Lin, SparseMatrix};
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComparisonKind {
    PhiM,
    Section,
}

/// A comparison map materialized as one matrix per degree of a window.
#[derive(Clone, Debug)]
pub struct ComparisonMap {
    pub kind: ComparisonKind,
    pub source: BoundedComplex,
    pub target: BoundedComplex,
    pub map: ChainMap,
}

impl ComparisonMap {
    pub fn verify(&self) -> Result<()> {
        self.map.verify(&self.source, &self.target)
    }

    /// Induced maps on homology over the reliable degrees of both sides.
    pub fn induced(&self) -> Result<Vec<InducedDegree>> {
        let lo = self.source.lo().max(self.target.lo());
        let hi = self
            .source
            .reliable_max()
            .unwrap_or(self.source.hi())
            .min(self.target.reliable_max().unwrap_or(self.target.hi()));
        induced_homology_map(&self.map, &self.source, &self.target, lo, hi)
    }
}

/// Builds the matrix of `f` between two ordered key bases.
pub fn keyed_matrix<A: Ord + Clone, B: Ord + Clone>(
    field: Field,
    source: &[A],
    target: &[B],
    mut f: impl FnMut(&A) -> Result<Lin<B>>,
) -> Result<SparseMatrix> {
    let index: BTreeMap<&B, usize> = target.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = SparseMatrix::zeros(field, target.len(), source.len());
    for (c, k) in source.iter().enumerate() {
        for (t, v) in f(k)?.iter() {
            let r = index
                .get(t)
                .ok_or_else(|| Error::Window("image leaves the target window".into()))?;
            m.add(*r, c, v.clone());
        }
    }
    Ok(m)
}

/// `φ_M: M⊗BΩC → M⊗C`: `m⊗{} ↦ m⊗ν(1)`,
/// `m⊗{[c₁|…|c_k]} ↦ (−1)^{|w|} (m·w)⊗c_k` with `w = [c₁|…|c_{k−1}]`,
/// and zero on longer bar words.
pub fn phi<M: RightModule>(b: &BarModule<M>, k: &BarModKey<M::Key>) -> Lin<TwistedKey<M::Key>> {
    let (m, w) = k;
    let module = b.module();
    let cobar = module.cobar();
    let f = module.field();
    match w.as_slice() {
        [] => Lin::single((m.clone(), cobar.unit()), f.one()),
        [a] => {
            let (last, init) = a.split_last().expect("bar entries are nonempty");
            module
                .act_word(m, init)
                .map_keys(|mw| (mw.clone(), *last))
                .scaled(&f.sign(cobar.degree(init)))
        }
        _ => Lin::zero(),
    }
}

pub fn phi_of<M: RightModule>(b: &BarModule<M>, x: &Lin<BarModKey<M::Key>>) -> Lin<TwistedKey<M::Key>> {
    x.map_linear(|k| phi(b, k))
}

/// The section `id⊗ρ_C: M⊗C → M⊗BΩC`.
pub fn section<M: RightModule>(t: &TwistedComplex<M>, k: &TwistedKey<M::Key>, max_length: usize) -> Result<Lin<BarModKey<M::Key>>> {
    let r = rho(t.module().cobar(), k.1, max_length)?;
    Ok(r.map_keys(|w| (k.0.clone(), w.clone())))
}

/// The contraction `h(m⊗{[c₁|rest]|a₂|…}) = (−1)^{|m|+|c₁|} m⊗{[c₁]|[rest]|a₂|…}`,
/// zero when the leading entry is a single letter or the word is empty.
pub fn contraction<M: RightModule>(b: &BarModule<M>, k: &BarModKey<M::Key>) -> Lin<BarModKey<M::Key>> {
    let (m, w) = k;
    let module = b.module();
    let Some(first) = w.first() else {
        return Lin::zero();
    };
    if first.len() < 2 {
        return Lin::zero();
    }
    let c1 = first[0];
    let mut split = vec![vec![c1], first[1..].to_vec()];
    split.extend_from_slice(&w[1..]);
    let e = module.degree(m) + module.cobar().coalgebra().degree(c1) as i64;
    Lin::single((m.clone(), split), module.field().sign(e))
}

pub fn contraction_of<M: RightModule>(b: &BarModule<M>, x: &Lin<BarModKey<M::Key>>) -> Lin<BarModKey<M::Key>> {
    x.map_linear(|k| contraction(b, k))
}

/// `h` restricted to the kernel of `φ_M`.
pub fn contraction_h<M: RightModule>(b: &BarModule<M>, x: &Lin<BarModKey<M::Key>>) -> Result<Lin<BarModKey<M::Key>>> {
    if !phi_of(b, x).is_zero() {
        return Err(Error::NotInKernel);
    }
    Ok(contraction_of(b, x))
}

/// `b_M h + h b_M − id` applied to `x`.
pub fn homotopy_defect<M: RightModule>(b: &BarModule<M>, x: &Lin<BarModKey<M::Key>>) -> Lin<BarModKey<M::Key>> {
    let mut out = b.diff_of(&contraction_of(b, x));
    out.add(&contraction_of(b, &b.diff_of(x)));
    out.minus(x)
}

/// Least `n ≤ bound` with `(b_M h + h b_M − id)ⁿ x = 0`, if any.
pub fn nilpotency_order<M: RightModule>(b: &BarModule<M>, x: &Lin<BarModKey<M::Key>>, bound: usize) -> Option<usize> {
    let mut y = x.clone();
    for n in 0..=bound {
        if y.is_zero() {
            return Some(n);
        }
        y = homotopy_defect(b, &y);
    }
    None
}

/// Longest bar word occurring in `x`.
pub fn bar_length<K: Ord + Clone>(x: &Lin<(K, Vec<Vec<usize>>)>) -> usize {
    x.keys().map(|(_, w)| w.len()).max().unwrap_or(0)
}

/// Word length of `x`: the most cobar letters carried by the bar part of
/// any of its terms.
pub fn letter_count<K: Ord + Clone>(x: &Lin<(K, Vec<Vec<usize>>)>) -> usize {
    x.keys().map(|(_, w)| w.iter().map(Vec::len).sum()).max().unwrap_or(0)
}

/// A random element of `ker φ_M` in the given degree: a random combination
/// `x` of window basis elements, corrected to `x − (id⊗ρ)(φ_M x)`.
pub fn sample_kernel<M: RightModule + Clone>(b: &BarModule<M>, rng: &mut impl Rng, degree: i64, max_length: usize) -> Result<Lin<BarModKey<M::Key>>> {
    let f = b.module().field();
    let basis = b.basis(degree);
    let x: Lin<_> = basis
        .into_iter()
        .map(|k| (k, f.int(rng.gen_range(-3..=3))))
        .collect();
    let t = TwistedComplex::new(b.module().clone(), b.window());
    let mut back = Lin::zero();
    for (k, v) in phi_of(b, &x).iter() {
        back.add_scaled(&section(&t, k, max_length)?, v);
    }
    Ok(x.minus(&back))
}

/// Matrices of `φ_M` and of the section over a common window.
pub fn comparison_maps<M: RightModule + Clone>(module: &M, window: Window, max_length: usize) -> Result<(ComparisonMap, ComparisonMap)> {
    let b = BarModule::new(module.clone(), window);
    let t = TwistedComplex::new(module.clone(), window);
    let f = module.field();
    let lo = module.min_degree();
    let degrees = (lo..=window.max_degree + 1).collect_vec();
    let bar_bases: Vec<_> = degrees.iter().map(|&d| b.basis(d)).collect();
    let tw_bases: Vec<_> = degrees.iter().map(|&d| t.basis(d)).collect();
    let mut phis = Vec::new();
    let mut sections = Vec::new();
    for (bb, tb) in bar_bases.iter().zip(&tw_bases) {
        phis.push(keyed_matrix(f, bb, tb, |k| Ok(phi(&b, k)))?);
        sections.push(keyed_matrix(f, tb, bb, |k| section(&t, k, max_length))?);
    }
    let (bc, tc) = (b.complex()?, t.complex()?);
    Ok((
        ComparisonMap {
            kind: ComparisonKind::PhiM,
            source: bc.clone(),
            target: tc.clone(),
            map: ChainMap { lo, maps: phis },
        },
        ComparisonMap {
            kind: ComparisonKind::Section,
            source: tc,
            target: bc,
            map: ChainMap { lo, maps: sections },
        },
    ))
}
