use std::fmt;

use serde::{Deserialize, Serialize};

/// A simplex written as a strictly decreasing degeneracy word applied to a
/// nondegenerate generator, `s_{j1} s_{j2} … base` with `j1 > j2 > …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexRef {
    pub base: usize,
    pub degen: Vec<usize>,
}

impl SimplexRef {
    pub fn nondegenerate(base: usize) -> Self {
        SimplexRef {
            base,
            degen: Vec::new(),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degen.is_empty()
    }

    /// Builds the canonical form of `base ∘ eta` for a monotone surjection
    /// `eta: [n] → [m]` given by its values.
    pub fn from_surjection(base: usize, eta: &[usize]) -> Self {
        let mut degen: Vec<usize> = (0..eta.len().saturating_sub(1))
            .filter(|&j| eta[j] == eta[j + 1])
            .collect();
        degen.reverse();
        SimplexRef { base, degen }
    }

    /// The monotone surjection `[base_dim + degen.len()] → [base_dim]`.
    pub fn surjection(&self, base_dim: usize) -> Vec<usize> {
        surjection_from_degen(&self.degen, base_dim)
    }
}

pub(crate) fn surjection_from_degen(degen: &[usize], base_dim: usize) -> Vec<usize> {
    let n = base_dim + degen.len();
    let mut eta = Vec::with_capacity(n + 1);
    eta.push(0);
    for k in 0..n {
        let step = if degen.contains(&k) { 0 } else { 1 };
        eta.push(eta[k] + step);
    }
    eta
}

/// Factors a monotone map `[k] → [m]` as `inclusion ∘ surjection`, returning
/// the sorted image and the surjection onto it.
pub(crate) fn factor_monotone(psi: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut image: Vec<usize> = Vec::new();
    let mut surj = Vec::with_capacity(psi.len());
    for &v in psi {
        if image.last() != Some(&v) {
            image.push(v);
        }
        surj.push(image.len() - 1);
    }
    (image, surj)
}

/// The coface `δ^i: [n-1] → [n]` skipping `i`.
pub(crate) fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|k| if k < i { k } else { k + 1 }).collect()
}

impl fmt::Display for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in &self.degen {
            write!(f, "s{j}")?;
        }
        write!(f, "#{}", self.base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_round_trip() {
        let r = SimplexRef {
            base: 0,
            degen: vec![3, 1],
        };
        let eta = r.surjection(2);
        assert_eq!(eta, vec![0, 1, 1, 2, 2]);
        assert_eq!(SimplexRef::from_surjection(0, &eta), r);
    }

    #[test]
    fn factoring() {
        let (image, surj) = factor_monotone(&[0, 2, 2, 3]);
        assert_eq!(image, vec![0, 2, 3]);
        assert_eq!(surj, vec![0, 1, 1, 2]);
    }
}
