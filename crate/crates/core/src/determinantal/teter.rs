use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{binomial, det_integer};

/// `det[binom(2n - m - j, n - i)]_{1 <= i, j <= r}`, the Teter number of
/// `K[X]/I_{r+1}(X)` for a generic `m x n` matrix with `m < n`.
pub fn teter_formula(m: usize, n: usize, r: usize) -> Result<BigInt> {
    if m >= n {
        return Err(Error::Hypothesis(format!(
            "Teter formula needs m < n, got m = {m}, n = {n}"
        )));
    }
    if r < 1 || r + 1 > m {
        return Err(Error::Hypothesis(format!(
            "Teter formula needs 1 < r + 1 <= m, got r = {r}, m = {m}"
        )));
    }
    let (m, n) = (m as i64, n as i64);
    let matrix: Vec<Vec<BigInt>> = (1..=r as i64)
        .map(|i| (1..=r as i64).map(|j| binomial(2 * n - m - j, n - i)).collect())
        .collect();
    Ok(det_integer(&matrix))
}

/// Whether the square of the canonical module of the generic ring is
/// Cohen–Macaulay, i.e. `n <= 2m - r`; under this condition the canonical
/// trace specializes.
pub fn specializes_condition(m: usize, n: usize, r: usize) -> bool {
    n as i64 <= 2 * m as i64 - r as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(teter_formula(2, 3, 1).unwrap(), BigInt::from(3));
        assert_eq!(teter_formula(2, 4, 1).unwrap(), BigInt::from(10));
        assert_eq!(teter_formula(3, 4, 2).unwrap(), BigInt::from(6));
        // 15 * 10 - 5 * 20
        assert_eq!(teter_formula(3, 5, 2).unwrap(), BigInt::from(50));
    }

    #[test]
    fn hypotheses() {
        assert!(teter_formula(3, 3, 2).is_err());
        assert!(teter_formula(4, 3, 2).is_err());
        assert!(teter_formula(2, 3, 0).is_err());
        assert!(teter_formula(2, 3, 2).is_err());
    }

    #[test]
    fn specialization_condition() {
        assert!(specializes_condition(3, 4, 2));
        assert!(!specializes_condition(2, 4, 1));
        assert!(specializes_condition(3, 3, 2));
    }
}
