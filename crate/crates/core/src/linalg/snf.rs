use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;
use crate::error::{Error, Result};

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal, nonnegative, `d₁ | d₂ | …`.
///
/// The inverses of `U` and `V` are tracked alongside so that callers can pull
/// solutions back without a second factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    #[serde(skip)]
    u_inv: Option<IntMatrix>,
    #[serde(skip)]
    v_inv: Option<IntMatrix>,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }

    pub fn u_inverse(&self) -> IntMatrix {
        self.u_inv.clone().unwrap_or_else(|| inverse_via_snf(&self.u))
    }

    pub fn v_inverse(&self) -> IntMatrix {
        self.v_inv.clone().unwrap_or_else(|| inverse_via_snf(&self.v))
    }
}

fn inverse_via_snf(p: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(p);
    // p unimodular => D = I, so p^{-1} = V·U
    &s.v * &s.u
}

struct Calc {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Calc {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    // row[dst] += k row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    // col[dst] += k col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn min_abs_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = &self.d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let a = x.abs();
                if best.as_ref().is_none_or(|(_, b)| a < *b) {
                    best = Some(((i, j), a));
                }
            }
        }
        best.map(|(p, _)| p)
    }

    fn run(&mut self) {
        let n = self.d.rows().min(self.d.cols());
        for t in 0..n {
            loop {
                let Some((pi, pj)) = self.min_abs_nonzero(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let pivot = self.d[(t, t)].clone();

                let mut clean = true;
                for i in t + 1..self.d.rows() {
                    let q = &self.d[(i, t)] / &pivot;
                    self.add_row(i, t, &-q);
                    clean &= self.d[(i, t)].is_zero();
                }
                for j in t + 1..self.d.cols() {
                    let q = &self.d[(t, j)] / &pivot;
                    self.add_col(j, t, &-q);
                    clean &= self.d[(t, j)].is_zero();
                }
                if !clean {
                    continue;
                }

                // divisibility: fold an offending row into row t and retry
                let offending = (t + 1..self.d.rows()).find(|&i| {
                    (t + 1..self.d.cols()).any(|j| !self.d[(i, j)].is_multiple_of(&pivot))
                });
                match offending {
                    Some(i) => self.add_row(t, i, &BigInt::from(1)),
                    None => break,
                }
            }
            if self.d[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (r, c) = m.shape();
    let mut calc = Calc {
        d: m.clone(),
        u: IntMatrix::identity(r),
        u_inv: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
        v_inv: IntMatrix::identity(c),
    };
    calc.run();
    SmithDecomposition { u: calc.u, d: calc.d, v: calc.v, u_inv: Some(calc.u_inv), v_inv: Some(calc.v_inv) }
}

/// Some `x` with `M·x = t` over ℤ, or `None` if `t` is outside the integer image of `M`.
pub fn z_image_membership(m: &IntMatrix, t: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if t.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "target of length {} for a matrix with {} rows",
            t.len(),
            m.rows()
        )));
    }
    let snf = smith_normal_form(m);
    Ok(solve_with(&snf, m, t))
}

/// Solve against an existing decomposition of `m`.
pub fn solve_with(snf: &SmithDecomposition, m: &IntMatrix, t: &[BigInt]) -> Option<Vec<BigInt>> {
    // D·(V⁻¹x) = U·t
    let c = snf.u.mul_vec(t).ok()?;
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, ci) in c.iter().enumerate() {
        match diag.get(i) {
            Some(di) if !di.is_zero() => {
                let (q, r) = ci.div_rem(di);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
            _ => {
                if !ci.is_zero() {
                    return None;
                }
            }
        }
    }
    let x = snf.v.mul_vec(&y).ok()?;
    debug_assert_eq!(m.mul_vec(&x).ok()?, t);
    Some(x)
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(p: &IntMatrix) -> Result<IntMatrix> {
    let d = super::det(p)?;
    if !d.abs().is_one() {
        return Err(Error::NotUnimodular(d));
    }
    Ok(inverse_via_snf(p))
}
