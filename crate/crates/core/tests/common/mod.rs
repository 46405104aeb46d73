#![allow(dead_code)]

//! Independent reference computations and random instance generators.
//!
//! Nothing here calls into the library's linear algebra: determinants use the
//! Leibniz formula, wedges are expanded multilinearly, spans are enumerated.

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use solvcert_core::linalg::IntMatrix;
use solvcert_core::seifert::BlockSeifert;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_rows(rng: &mut StdRng, rows: usize, cols: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
}

pub fn to_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    if rows.is_empty() {
        return IntMatrix::zeros(0, 0);
    }
    IntMatrix::from_rows(rows)
}

pub fn to_i64(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| i64::try_from(&m[(i, j)]).unwrap()).collect()).collect()
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // inserting the largest element at `pos` creates n - 1 - pos inversions
            let sign = if (n - 1 - pos).is_multiple_of(2) { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

pub fn leibniz_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    permutations(n)
        .into_iter()
        .map(|(p, s)| p.iter().enumerate().fold(BigInt::from(s), |acc, (i, &j)| acc * m[i][j]))
        .sum()
}

/// Polynomials over ℤ as coefficient vectors, low degree first.
pub type Poly = Vec<BigInt>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::from(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &Poly, b: &Poly, sign: i64) -> Poly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default() * sign)
        .collect()
}

/// Laplace expansion along the first row.
pub fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return vec![BigInt::from(1)];
    }
    let mut acc: Poly = Vec::new();
    for j in 0..n {
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = poly_mul(&m[0][j], &poly_det(&minor));
        acc = poly_add(&acc, &term, if j % 2 == 0 { 1 } else { -1 });
    }
    acc
}

/// `det(M − tMᵀ)` by cofactor expansion.
pub fn alexander_oracle(m: &[Vec<i64>]) -> Poly {
    let n = m.len();
    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| vec![BigInt::from(m[i][j]), BigInt::from(-m[j][i])]).collect())
        .collect();
    let mut d = poly_det(&entries);
    d.resize(n + 1, BigInt::from(0));
    d
}

fn increasing(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Coordinates of `Ae_{c₁} ∧ … ∧ Ae_{cₖ}` by expanding each factor in the standard
/// basis and sorting every wedge monomial, tracking the sign of the sort.
pub fn wedge_expansion(a: &[Vec<i64>], cols: &[usize]) -> Vec<BigInt> {
    let n = a.len();
    let k = cols.len();
    let index = increasing(n, k);
    let mut out = vec![BigInt::from(0); index.len()];
    let mut rows = vec![0usize; k];
    loop {
        let coeff: BigInt = rows.iter().zip(cols).map(|(&r, &c)| BigInt::from(a[r][c])).product();
        if coeff != BigInt::from(0) {
            let mut sorted = rows.clone();
            let mut sign = 1i64;
            for i in 0..k {
                for j in 0..k - 1 - i {
                    if sorted[j] > sorted[j + 1] {
                        sorted.swap(j, j + 1);
                        sign = -sign;
                    }
                }
            }
            if sorted.windows(2).all(|w| w[0] < w[1]) {
                let pos = index.iter().position(|s| *s == sorted).unwrap();
                out[pos] += coeff * sign;
            }
        }
        let mut i = 0;
        while i < k {
            rows[i] += 1;
            if rows[i] < n {
                break;
            }
            rows[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    out
}

/// The matrix of `Λᵏ a` with columns given by [`wedge_expansion`].
pub fn compound_oracle(a: &[Vec<i64>], k: usize) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let index = increasing(n, k);
    let columns: Vec<Vec<BigInt>> = index.iter().map(|c| wedge_expansion(a, c)).collect();
    (0..index.len()).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect()
}

/// Some `x` in `[−bound, bound]ⁿ` with `m·x = t`.
pub fn brute_image(m: &[Vec<i64>], cols: usize, t: &[i64], bound: i64) -> Option<Vec<i64>> {
    let mut x = vec![-bound; cols];
    loop {
        if m.iter().zip(t).all(|(row, &ti)| row.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>() == ti) {
            return Some(x);
        }
        let mut i = 0;
        while i < cols {
            x[i] += 1;
            if x[i] <= bound {
                break;
            }
            x[i] = -bound;
            i += 1;
        }
        if i == cols {
            return None;
        }
    }
}

/// Columns of a 0/1 matrix packed into integers.
pub fn f2_columns(m: &[Vec<u8>]) -> Vec<u64> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().enumerate().fold(0u64, |acc, (i, r)| acc | ((r[j] as u64 & 1) << i))).collect()
}

/// Every vector in the span of the given columns.
pub fn f2_span(cols: &[u64]) -> std::collections::BTreeSet<u64> {
    let mut span = std::collections::BTreeSet::from([0u64]);
    for &c in cols {
        let extra: Vec<u64> = span.iter().map(|v| v ^ c).collect();
        span.extend(extra);
    }
    span
}

pub fn f2_rank_brute(m: &[Vec<u8>]) -> usize {
    f2_span(&f2_columns(m)).len().trailing_zeros() as usize
}

/// Product of random elementary operations; determinant ±1 by construction.
pub fn random_unimodular(rng: &mut StdRng, n: usize, steps: usize) -> Vec<Vec<i64>> {
    let mut p: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    if n == 0 {
        return p;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let k = rng.gen_range(-2..=2);
                for r in p.iter_mut() {
                    r[i] += k * r[j];
                }
            }
            1 if i != j => {
                for r in p.iter_mut() {
                    r.swap(i, j);
                }
            }
            _ => {
                for r in p.iter_mut() {
                    r[i] = -r[i];
                }
            }
        }
    }
    p
}

/// Random block Seifert matrix: `A` random, `Bᵀ = A − U` for a random unimodular `U`.
pub fn random_block(rng: &mut StdRng, g: usize, bound: i64) -> BlockSeifert {
    let a = random_rows(rng, g, g, bound);
    let u = random_unimodular(rng, g, 3 * g);
    let b: Vec<Vec<i64>> = (0..g).map(|i| (0..g).map(|j| a[j][i] - u[j][i]).collect()).collect();
    let c = random_rows(rng, g, g, bound);
    BlockSeifert::new(to_matrix(&a), to_matrix(&b), to_matrix(&c)).expect("A − Bᵀ is unimodular")
}

/// Profile with zero linking, random Arf bits and small random S.L. and T.L. values.
pub fn random_profile(rng: &mut StdRng, g: usize) -> solvcert_core::milnor::MilnorProfile {
    let mut p = solvcert_core::milnor::MilnorProfile::zero(g);
    for i in 1..=g {
        p.set_arf(i, rng.gen_range(0..2)).unwrap();
        for j in i + 1..=g {
            p.set_sl(i, j, rng.gen_range(-4i64..=4)).unwrap();
            for k in j + 1..=g {
                p.set_tl(i, j, k, rng.gen_range(-6i64..=6)).unwrap();
            }
        }
    }
    p
}
