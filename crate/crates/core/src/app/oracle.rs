use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::scalar::{Field, Scalar};

/// Homology of `ℤ` with coefficients in `𝐤^k` on which the generator acts by
/// `u`, from the resolution `0 → 𝐤[t^{±1}] → 𝐤[t^{±1}] → 𝐤 → 0` with map
/// `t − 1`: `H₀ = coker(u − id)`, `H₁ = ker(u − id)`.
pub fn group_homology_oracle_z(field: Field, u: &[Vec<Scalar>]) -> Result<[usize; 2]> {
    let k = u.len();
    if u.iter().any(|row| row.len() != k) {
        return Err(Error::Dimension(format!("monodromy matrix is not {k}x{k}")));
    }
    let entries = |shift: bool| {
        (0..k).flat_map(move |i| {
            (0..k).map(move |j| {
                let id = if shift && i == j { field.one() } else { field.zero() };
                (i, j, &u[i][j] - &id)
            })
        })
    };
    let unit = SparseMatrix::from_entries(field, k, k, entries(false))?;
    if unit.rank() != k {
        return Err(Error::Singular);
    }
    let r = SparseMatrix::from_entries(field, k, k, entries(true))?.rank();
    Ok([k - r, k - r])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(f: Field, u: i64) -> Vec<Vec<Scalar>> {
        vec![vec![f.int(u)]]
    }

    #[test]
    fn circle_examples() {
        let q = Field::Rational;
        assert_eq!(group_homology_oracle_z(q, &scalar(q, 1)).unwrap(), [1, 1]);
        assert_eq!(group_homology_oracle_z(q, &scalar(q, 2)).unwrap(), [0, 0]);
        let f3 = Field::prime(3).unwrap();
        assert_eq!(group_homology_oracle_z(f3, &scalar(f3, 2)).unwrap(), [0, 0]);
        let f5 = Field::prime(5).unwrap();
        assert_eq!(group_homology_oracle_z(f5, &scalar(f5, 6)).unwrap(), [1, 1]);
        assert_eq!(group_homology_oracle_z(q, &scalar(q, 0)), Err(Error::Singular));
    }

    #[test]
    fn block_matrix() {
        let q = Field::Rational;
        let u = vec![vec![q.one(), q.one()], vec![q.zero(), q.one()]];
        assert_eq!(group_homology_oracle_z(q, &u).unwrap(), [1, 1]);
    }
}
