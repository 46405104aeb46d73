use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Exact determinant by Bareiss fraction-free elimination.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    Ok(bareiss(m.clone()))
}

fn bareiss(mut a: IntMatrix) -> BigInt {
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// True iff `|det P| = 1`.
pub fn is_unimodular(p: &IntMatrix) -> Result<bool> {
    Ok(det(p)?.abs().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(det(&IntMatrix::identity(3)).unwrap(), BigInt::from(1));
        assert_eq!(det(&IntMatrix::diag(&[2, -2, -4])).unwrap(), BigInt::from(16));
        assert_eq!(det(&IntMatrix::from_rows(&[[0, 1], [0, 0]])).unwrap(), BigInt::from(0));
        assert!(matches!(det(&IntMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn needs_pivoting() {
        // zero in the leading position forces a row swap
        let m = IntMatrix::from_rows(&[[0, 2, 1], [3, 0, 0], [1, 1, 1]]);
        // 0*(0-0) - 2*(3-0) + 1*(3-0) = -3
        assert_eq!(det(&m).unwrap(), BigInt::from(-3));
        assert_eq!(det(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn unimodular_examples() {
        assert!(is_unimodular(&IntMatrix::identity(4)).unwrap());
        assert!(!is_unimodular(&IntMatrix::diag(&[2, 1])).unwrap());
        assert!(is_unimodular(&IntMatrix::from_rows(&[[1, 5], [0, -1]])).unwrap());
        assert!(is_unimodular(&IntMatrix::zeros(1, 2)).is_err());
    }
}
