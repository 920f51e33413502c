use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Arc;

use crate::dgalg::{Cobar, CobarElement, Word};
use crate::error::{Error, Result};
use crate::linalg::{Lin, Vector};
use crate::scalar::{Field, Scalar};

/// A right dg module over a cobar algebra, presented by a basis of keys,
/// a differential and the action of single letters.
pub trait RightModule {
    type Key: Ord + Clone + Debug;

    fn cobar(&self) -> &Cobar;
    fn degree(&self, k: &Self::Key) -> i64;
    /// Total simplicial dimension carried by the key; zero for finite modules.
    fn weight(&self, k: &Self::Key) -> usize;
    fn label(&self, k: &Self::Key) -> String;
    fn diff(&self, k: &Self::Key) -> Lin<Self::Key>;
    fn act_letter(&self, k: &Self::Key, letter: usize) -> Lin<Self::Key>;
    /// Basis keys of the given degree and weight at most `max_weight`.
    fn basis(&self, degree: i64, max_weight: usize) -> Vec<Self::Key>;
    fn min_degree(&self) -> i64;
    /// `Some(r)` when `weight(k) ≤ r·degree(k)` for every key, so a weight
    /// window of size `r·d` holds every key of degree `d`.
    fn weight_ratio(&self) -> Option<usize>;

    fn field(&self) -> Field {
        self.cobar().field()
    }

    fn act_word(&self, k: &Self::Key, w: &[usize]) -> Lin<Self::Key> {
        let mut x = Lin::single(k.clone(), self.field().one());
        for &c in w {
            x = x.map_linear(|k| self.act_letter(k, c));
        }
        x
    }

    fn act(&self, x: &Lin<Self::Key>, a: &CobarElement) -> Lin<Self::Key> {
        let mut out = Lin::zero();
        for (k, u) in x.iter() {
            for (w, v) in a.iter() {
                out.add_scaled(&self.act_word(k, w), &(u * v));
            }
        }
        out
    }

    fn diff_of(&self, x: &Lin<Self::Key>) -> Lin<Self::Key> {
        x.map_linear(|k| self.diff(k))
    }
}

/// Two modules are over the same algebra when they share the coalgebra.
pub fn same_algebra(a: &Cobar, b: &Cobar) -> Result<()> {
    if Arc::ptr_eq(a.coalgebra_arc(), b.coalgebra_arc()) {
        Ok(())
    } else {
        Err(Error::Mismatch("modules are over different cobar algebras".into()))
    }
}

/// A module with a finite basis; letters act by the stored operators.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    cobar: Cobar,
    ids: Vec<String>,
    degrees: Vec<i64>,
    diff: Vec<Vector>,
    action: BTreeMap<usize, Vec<Vector>>,
}

impl FiniteModule {
    /// `action` maps a letter to the images of the basis elements; letters
    /// not listed act by zero. The result is validated.
    pub fn new(
        cobar: Cobar,
        ids: Vec<String>,
        degrees: Vec<i64>,
        diff: Vec<Vector>,
        action: BTreeMap<usize, Vec<Vector>>,
    ) -> Result<Self> {
        let n = ids.len();
        if degrees.len() != n || diff.len() != n {
            return Err(Error::Dimension("module tables of unequal length".into()));
        }
        for (&c, images) in &action {
            if !cobar.is_letter(c) {
                return Err(Error::ModuleViolation(format!("action given for a non-letter basis element {c}")));
            }
            if images.len() != n {
                return Err(Error::Dimension(format!(
                    "action of {} has {} columns",
                    cobar.coalgebra().label(c),
                    images.len()
                )));
            }
        }
        let m = FiniteModule {
            cobar,
            ids,
            degrees,
            diff,
            action,
        };
        validate_module(&m)?;
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn differential(&self) -> &[Vector] {
        &self.diff
    }

    pub fn action(&self) -> &BTreeMap<usize, Vec<Vector>> {
        &self.action
    }

    pub fn max_degree(&self) -> i64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// The trivial module `𝐤` in degree 0; letters act through the
    /// augmentation, hence by zero.
    pub fn trivial(cobar: &Cobar) -> Result<Self> {
        FiniteModule::new(
            cobar.clone(),
            vec!["1".into()],
            vec![0],
            vec![Vector::zero()],
            BTreeMap::new(),
        )
    }

    /// Basis `e0` (degree 0), `e1` (degree 1) with `e0·[σ] = e1` for the
    /// given degree-2 letter `σ`.
    pub fn hopf(cobar: &Cobar, sigma: usize) -> Result<Self> {
        let f = cobar.field();
        let images = vec![Vector::single(1, f.one()), Vector::zero()];
        FiniteModule::new(
            cobar.clone(),
            vec!["e0".into(), "e1".into()],
            vec![0, 1],
            vec![Vector::zero(), Vector::zero()],
            BTreeMap::from([(sigma, images)]),
        )
    }

    /// A local system concentrated in degree 0 with monodromy `u_e` along
    /// each listed 1-simplex `e`; the letter `[e]` acts by `u_e − id`.
    /// Matrices are given as rows: `m·[e] = m·(u_e − id)` for row vectors.
    pub fn monodromy(cobar: &Cobar, rank: usize, monodromy: &[(usize, Vec<Vec<Scalar>>)]) -> Result<Self> {
        let f = cobar.field();
        let mut action = BTreeMap::new();
        for (e, u) in monodromy {
            if cobar.coalgebra().degree(*e) != 1 {
                return Err(Error::ModuleViolation(format!(
                    "monodromy given on {}, which is not a 1-simplex",
                    cobar.coalgebra().label(*e)
                )));
            }
            if u.len() != rank || u.iter().any(|r| r.len() != rank) {
                return Err(Error::Dimension(format!("monodromy matrix is not {rank}x{rank}")));
            }
            let images = (0..rank)
                .map(|i| {
                    (0..rank)
                        .map(|j| {
                            let id = if i == j { f.one() } else { f.zero() };
                            (j, &u[i][j] - &id)
                        })
                        .collect()
                })
                .collect();
            action.insert(*e, images);
        }
        FiniteModule::new(
            cobar.clone(),
            (0..rank).map(|i| format!("m{i}")).collect(),
            vec![0; rank],
            vec![Vector::zero(); rank],
            action,
        )
    }
}

impl RightModule for FiniteModule {
    type Key = usize;

    fn cobar(&self) -> &Cobar {
        &self.cobar
    }
    fn degree(&self, k: &usize) -> i64 {
        self.degrees[*k]
    }
    fn weight(&self, _: &usize) -> usize {
        0
    }
    fn label(&self, k: &usize) -> String {
        self.ids[*k].clone()
    }
    fn diff(&self, k: &usize) -> Vector {
        self.diff[*k].clone()
    }
    fn act_letter(&self, k: &usize, letter: usize) -> Vector {
        self.action.get(&letter).map_or_else(Vector::zero, |images| images[*k].clone())
    }
    fn basis(&self, degree: i64, _: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degrees[i] == degree).collect()
    }
    fn min_degree(&self) -> i64 {
        self.degrees.iter().copied().min().unwrap_or(0)
    }
    fn weight_ratio(&self) -> Option<usize> {
        Some(0)
    }
}

/// `ΩC` as a right module over itself.
#[derive(Clone, Debug)]
pub struct FreeModule {
    cobar: Cobar,
}

impl FreeModule {
    pub fn new(cobar: &Cobar) -> Self {
        FreeModule { cobar: cobar.clone() }
    }
}

impl RightModule for FreeModule {
    type Key = Word;

    fn cobar(&self) -> &Cobar {
        &self.cobar
    }
    fn degree(&self, k: &Word) -> i64 {
        self.cobar.degree(k)
    }
    fn weight(&self, k: &Word) -> usize {
        self.cobar.weight(k)
    }
    fn label(&self, k: &Word) -> String {
        self.cobar.label(k)
    }
    fn diff(&self, k: &Word) -> Lin<Word> {
        self.cobar.diff(k)
    }
    fn act_letter(&self, k: &Word, letter: usize) -> Lin<Word> {
        let mut w = k.clone();
        w.push(letter);
        Lin::single(w, self.field().one())
    }
    fn basis(&self, degree: i64, max_weight: usize) -> Vec<Word> {
        self.cobar
            .words(degree, max_weight)
            .into_iter()
            .filter(|w| self.cobar.weight(w) <= max_weight)
            .collect()
    }
    fn min_degree(&self) -> i64 {
        0
    }
    fn weight_ratio(&self) -> Option<usize> {
        (!self.cobar.has_degree_zero_letters()).then_some(2)
    }
}

/// Checks degrees, `d² = 0` and the Leibniz rule
/// `d(m·[c]) = dm·[c] + (−1)^{|m|} m·d[c]` on every basis element and letter.
pub fn validate_module(m: &FiniteModule) -> Result<()> {
    let cobar = m.cobar();
    let f = m.field();
    for k in 0..m.len() {
        let name = m.label(&k);
        if m.diff(&k).keys().any(|&j| j >= m.len() || m.degree(&j) != m.degree(&k) - 1) {
            return Err(Error::ModuleViolation(format!("differential of {name} has the wrong degree")));
        }
        if !m.diff_of(&m.diff(&k)).is_zero() {
            return Err(Error::ModuleViolation(format!("d² ≠ 0 on {name}")));
        }
        for &c in cobar.letters() {
            let letter = cobar.coalgebra().label(c);
            let image = m.act_letter(&k, c);
            let target = m.degree(&k) + cobar.letter_degree(c);
            if image.keys().any(|&j| j >= m.len() || m.degree(&j) != target) {
                return Err(Error::ModuleViolation(format!(
                    "{name}·[{letter}] does not have degree {target}"
                )));
            }
            let lhs = m.diff_of(&image);
            let mut rhs = m.act(&m.diff(&k), &cobar.letter(c));
            rhs.add_scaled(
                &m.act(&Lin::single(k, f.one()), &cobar.diff_letter(c)),
                &f.sign(m.degree(&k)),
            );
            if lhs != rhs {
                return Err(Error::ModuleViolation(format!(
                    "Leibniz rule fails on ({name}, [{letter}])"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{circle, normalized_chains, pinched, sphere_min};

    fn cobar(k: &crate::simplicial::SimplicialSet) -> Cobar {
        Cobar::new(Arc::new(normalized_chains(k, Field::Rational).unwrap())).unwrap()
    }

    #[test]
    fn standard_modules_validate() {
        let s2 = sphere_min(2).unwrap();
        let om = cobar(&s2);
        FiniteModule::trivial(&om).unwrap();
        FiniteModule::hopf(&om, s2.lookup("sigma").unwrap()).unwrap();
    }

    #[test]
    fn degree_violating_action_rejected() {
        let s2 = sphere_min(2).unwrap();
        let om = cobar(&s2);
        let q = Field::Rational;
        let images = vec![Vector::zero(), Vector::single(0, q.one())];
        let r = FiniteModule::new(
            om,
            vec!["e0".into(), "e1".into()],
            vec![0, 1],
            vec![Vector::zero(), Vector::zero()],
            BTreeMap::from([(1, images)]),
        );
        assert!(matches!(r, Err(Error::ModuleViolation(_))));
    }

    #[test]
    fn monodromy_must_respect_two_simplices() {
        let q = Field::Rational;
        let c = circle().unwrap();
        FiniteModule::monodromy(&cobar(&c), 1, &[(1, vec![vec![q.int(2)]])]).unwrap();
        let p = pinched().unwrap();
        let a = p.lookup("a").unwrap();
        let om = cobar(&p);
        assert!(FiniteModule::monodromy(&om, 1, &[(a, vec![vec![q.int(2)]])]).is_err());
        FiniteModule::monodromy(&om, 1, &[(a, vec![vec![q.int(1)]])]).unwrap();
    }

    #[test]
    fn free_module_acts_by_concatenation() {
        let om = cobar(&sphere_min(2).unwrap());
        let m = FreeModule::new(&om);
        assert_eq!(m.act_word(&vec![1], &[1, 1]).first_key(), Some(&vec![1, 1, 1]));
        assert_eq!(m.basis(3, 6).len(), 1);
    }
}
