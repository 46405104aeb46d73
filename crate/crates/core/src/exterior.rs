//! Wedge-power coordinates and compound (minor) matrices of grades 2 and 3.
//!
//! Basis elements `e_I = e_{i1} ∧ … ∧ e_{ik}` are indexed by strictly increasing
//! 1-based index sets, enumerated in lexicographic order. Every operator and
//! vector in the crate uses this one ordering.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int_serde;
use crate::linalg::{det, F2Matrix, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Grade {
    Two,
    Three,
}

impl Grade {
    pub fn k(self) -> usize {
        match self {
            Grade::Two => 2,
            Grade::Three => 3,
        }
    }

    pub fn from_k(k: usize) -> Result<Self> {
        match k {
            2 => Ok(Grade::Two),
            3 => Ok(Grade::Three),
            _ => Err(Error::BadIndex(format!("grade {k} unsupported, expected 2 or 3"))),
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.k())
    }
}

/// `e_i ∧ e_j`, `i < j`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WedgeIndex2(pub usize, pub usize);

/// `e_i ∧ e_j ∧ e_k`, `i < j < k`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WedgeIndex3(pub usize, pub usize, pub usize);

impl WedgeIndex2 {
    pub fn new(i: usize, j: usize, g: usize) -> Result<Self> {
        if i >= 1 && i < j && j <= g {
            Ok(WedgeIndex2(i, j))
        } else {
            Err(Error::BadIndex(format!("pair ({i},{j}) is not strictly increasing within 1..={g}")))
        }
    }

    pub fn all(g: usize) -> Vec<Self> {
        basis(g, 2).into_iter().map(|v| WedgeIndex2(v[0], v[1])).collect()
    }

    pub fn position(self, g: usize) -> usize {
        position(&[self.0, self.1], g)
    }
}

impl WedgeIndex3 {
    pub fn new(i: usize, j: usize, k: usize, g: usize) -> Result<Self> {
        if i >= 1 && i < j && j < k && k <= g {
            Ok(WedgeIndex3(i, j, k))
        } else {
            Err(Error::BadIndex(format!("triple ({i},{j},{k}) is not strictly increasing within 1..={g}")))
        }
    }

    pub fn all(g: usize) -> Vec<Self> {
        basis(g, 3).into_iter().map(|v| WedgeIndex3(v[0], v[1], v[2])).collect()
    }

    pub fn position(self, g: usize) -> usize {
        position(&[self.0, self.1, self.2], g)
    }
}

impl fmt::Display for WedgeIndex2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.0, self.1)
    }
}

impl fmt::Display for WedgeIndex3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.0, self.1, self.2)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Strictly increasing 1-based index sets of size `k` drawn from `1..=g`, lexicographic.
pub fn basis(g: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, g: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=g {
            cur.push(i);
            go(i + 1, g, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(binomial(g, k));
    go(1, g, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Lexicographic rank of a strictly increasing 1-based index set.
fn position(idx: &[usize], g: usize) -> usize {
    let k = idx.len();
    let mut pos = 0;
    let mut prev = 0;
    for (t, &i) in idx.iter().enumerate() {
        // count sets that agree so far but pick a smaller value at slot t
        for smaller in prev + 1..i {
            pos += binomial(g - smaller, k - t - 1);
        }
        prev = i;
    }
    pos
}

/// Coefficients in the lexicographic wedge basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeVector {
    pub grade: Grade,
    pub g: usize,
    #[serde(with = "int_serde::vec")]
    pub coeffs: Vec<BigInt>,
}

impl WedgeVector {
    pub fn zero(grade: Grade, g: usize) -> Self {
        WedgeVector { grade, g, coeffs: vec![BigInt::zero(); binomial(g, grade.k())] }
    }

    pub fn new(grade: Grade, g: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        let n = binomial(g, grade.k());
        if coeffs.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a grade-{grade} vector over rank {g} (expected {n})",
                coeffs.len()
            )));
        }
        Ok(WedgeVector { grade, g, coeffs })
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Coefficient of `e_I` for a strictly increasing 1-based `I`.
    pub fn get(&self, idx: &[usize]) -> Result<&BigInt> {
        self.check_index(idx)?;
        Ok(&self.coeffs[position(idx, self.g)])
    }

    pub fn set(&mut self, idx: &[usize], value: BigInt) -> Result<()> {
        self.check_index(idx)?;
        let p = position(idx, self.g);
        self.coeffs[p] = value;
        Ok(())
    }

    fn check_index(&self, idx: &[usize]) -> Result<()> {
        let ok = idx.len() == self.grade.k()
            && idx.first().is_some_and(|&i| i >= 1)
            && idx.last().is_some_and(|&i| i <= self.g)
            && idx.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(())
        } else {
            Err(Error::BadIndex(format!("{idx:?} for grade {} over rank {}", self.grade, self.g)))
        }
    }

    pub fn mod2(&self) -> Vec<bool> {
        self.coeffs.iter().map(|c| c.is_odd()).collect()
    }

    pub fn from_bits(grade: Grade, g: usize, bits: &[bool]) -> Result<Self> {
        Self::new(grade, g, bits.iter().map(|&b| BigInt::from(b as u8)).collect())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        if self.grade != rhs.grade || self.g != rhs.g {
            return Err(Error::DimensionMismatch("wedge vectors of different shape".into()));
        }
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Ok(WedgeVector { grade: self.grade, g: self.g, coeffs })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        WedgeVector { grade: self.grade, g: self.g, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Basis vector `e_I`.
    pub fn basis_vector(grade: Grade, g: usize, idx: &[usize]) -> Result<Self> {
        let mut v = Self::zero(grade, g);
        v.set(idx, BigInt::from(1))?;
        Ok(v)
    }
}

/// The induced map `Λ^k A` in the lexicographic wedge basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompoundOperator {
    pub grade: Grade,
    pub g: usize,
    pub matrix: IntMatrix,
}

impl CompoundOperator {
    pub fn apply(&self, v: &WedgeVector) -> Result<WedgeVector> {
        if v.grade != self.grade || v.g != self.g {
            return Err(Error::DimensionMismatch("operator and vector shapes differ".into()));
        }
        WedgeVector::new(self.grade, self.g, self.matrix.mul_vec(&v.coeffs)?)
    }

    pub fn mod2(&self) -> F2Matrix {
        F2Matrix::from_int(&self.matrix)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        if self.grade != rhs.grade || self.g != rhs.g {
            return Err(Error::DimensionMismatch("compound operators of different shape".into()));
        }
        Ok(CompoundOperator { grade: self.grade, g: self.g, matrix: self.matrix.try_sub(&rhs.matrix)? })
    }
}

/// Matrix of `k×k` minors: entry `(I, J)` is `det A[I, J]`.
pub fn compound(a: &IntMatrix, grade: Grade) -> Result<CompoundOperator> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let g = a.rows();
    let sets: Vec<Vec<usize>> = basis(g, grade.k())
        .into_iter()
        .map(|s| s.into_iter().map(|i| i - 1).collect())
        .collect();
    let n = sets.len();
    let mut m = IntMatrix::zeros(n, n);
    for (r, rows) in sets.iter().enumerate() {
        for (c, cols) in sets.iter().enumerate() {
            m[(r, c)] = det(&a.select(rows, cols))?;
        }
    }
    Ok(CompoundOperator { grade, g, matrix: m })
}

/// `Λ²A`: `(A∧A)(x∧y) = Ax ∧ Ay`.
pub fn wedge_square(a: &IntMatrix) -> Result<CompoundOperator> {
    compound(a, Grade::Two)
}

/// `Λ³A`: `(A∧A∧A)(x∧y∧z) = Ax ∧ Ay ∧ Az`.
pub fn wedge_cube(a: &IntMatrix) -> Result<CompoundOperator> {
    compound(a, Grade::Three)
}

pub fn difference_integer(a: &IntMatrix, b: &IntMatrix, grade: Grade) -> Result<CompoundOperator> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch(format!("A is {:?} but B is {:?}", a.shape(), b.shape())));
    }
    compound(a, grade)?.try_sub(&compound(&b.transpose(), grade)?)
}

pub fn difference_mod2(a: &IntMatrix, b: &IntMatrix, grade: Grade) -> Result<F2Matrix> {
    Ok(difference_integer(a, b, grade)?.mod2())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DifferenceOperator {
    Integer(CompoundOperator),
    Mod2(F2Matrix),
}

/// `Λ^k A − Λ^k Bᵀ`, optionally reduced mod 2.
pub fn difference_operator(a: &IntMatrix, b: &IntMatrix, grade: Grade, mod2: bool) -> Result<DifferenceOperator> {
    let op = difference_integer(a, b, grade)?;
    Ok(if mod2 { DifferenceOperator::Mod2(op.mod2()) } else { DifferenceOperator::Integer(op) })
}

/// `C e_{p1} ∧ … ∧ C e_{pk}` for 1-based column picks; the coefficient at `I` is the
/// minor of `C` on rows `I` and the picked columns.
pub fn column_wedge(c: &IntMatrix, picks: &[usize]) -> Result<WedgeVector> {
    let grade = Grade::from_k(picks.len())?;
    if let Some(&bad) = picks.iter().find(|&&p| p == 0 || p > c.cols()) {
        return Err(Error::BadIndex(format!("column {bad} out of range 1..={}", c.cols())));
    }
    let g = c.rows();
    let cols: Vec<usize> = picks.iter().map(|p| p - 1).collect();
    let coeffs = basis(g, grade.k())
        .into_iter()
        .map(|set| {
            let rows: Vec<usize> = set.into_iter().map(|i| i - 1).collect();
            det(&c.select(&rows, &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    WedgeVector::new(grade, g, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn lexicographic_positions() {
        let b = basis(4, 2);
        assert_eq!(b, vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
        for (p, s) in basis(5, 3).iter().enumerate() {
            assert_eq!(position(s, 5), p);
        }
        assert_eq!(binomial(2, 3), 0);
        assert!(basis(2, 3).is_empty());
    }

    #[test]
    fn index_validation() {
        assert!(WedgeIndex2::new(2, 1, 3).is_err());
        assert!(WedgeIndex3::new(1, 2, 4, 3).is_err());
        assert_eq!(WedgeIndex3::new(1, 2, 3, 3).unwrap().position(3), 0);
    }

    #[test]
    fn wedge_square_examples() {
        assert_eq!(wedge_square(&IntMatrix::identity(4)).unwrap().matrix, IntMatrix::identity(6));
        assert_eq!(wedge_square(&IntMatrix::diag(&[2, 3, 5])).unwrap().matrix, IntMatrix::diag(&[6, 10, 15]));
        assert_eq!(wedge_square(&IntMatrix::diag(&[2, -2, -4])).unwrap().matrix, IntMatrix::diag(&[-4, -8, 8]));
        assert!(wedge_square(&IntMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn wedge_square_of_cyclic_permutation() {
        // e1 -> e3, e2 -> e1, e3 -> e2
        let a = IntMatrix::from_rows(&[[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
        let op = wedge_square(&a).unwrap();
        let image = |idx: &[usize]| op.apply(&WedgeVector::basis_vector(Grade::Two, 3, idx).unwrap()).unwrap().coeffs;
        // e1∧e2 -> e3∧e1 = -e1∧e3
        assert_eq!(image(&[1, 2]), ints(&[0, -1, 0]));
        // e1∧e3 -> e3∧e2 = -e2∧e3
        assert_eq!(image(&[1, 3]), ints(&[0, 0, -1]));
        // e2∧e3 -> e1∧e2
        assert_eq!(image(&[2, 3]), ints(&[1, 0, 0]));
    }

    #[test]
    fn wedge_cube_examples() {
        let a = IntMatrix::from_rows(&[[1, 2, 0], [3, -1, 4], [0, 5, 2]]);
        assert_eq!(wedge_cube(&a).unwrap().matrix, IntMatrix::from_rows(&[[det(&a).unwrap()]]));
        assert_eq!(wedge_cube(&IntMatrix::identity(5)).unwrap().matrix, IntMatrix::identity(10));
        assert_eq!(wedge_cube(&IntMatrix::diag(&[2, -2, -4])).unwrap().matrix, IntMatrix::from_rows(&[[16]]));
    }

    #[test]
    fn difference_examples() {
        // A = diag(x,y,z), B = A - I with x,y,z of a common parity
        for (x, y, z) in [(2, -2, -4), (3, 5, -1), (0, 0, 2)] {
            let a = IntMatrix::diag(&[x, y, z]);
            let b = IntMatrix::diag(&[x - 1, y - 1, z - 1]);
            assert_eq!(difference_mod2(&a, &b, Grade::Two).unwrap(), F2Matrix::identity(3));
        }
        let i = IntMatrix::identity(3);
        assert!(difference_integer(&i, &i, Grade::Two).unwrap().matrix.is_zero());
        let a = IntMatrix::from_rows(&[[1, 2, 0], [3, -1, 4], [0, 5, 2]]);
        let b = IntMatrix::from_rows(&[[2, 0, 1], [1, 1, 0], [0, 3, 1]]);
        let d3 = difference_integer(&a, &b, Grade::Three).unwrap().matrix;
        assert_eq!(d3, IntMatrix::from_rows(&[[det(&a).unwrap() - det(&b).unwrap()]]));
        assert!(difference_integer(&a, &IntMatrix::identity(2), Grade::Two).is_err());
        assert!(matches!(difference_operator(&a, &b, Grade::Two, true).unwrap(), DifferenceOperator::Mod2(_)));
    }

    #[test]
    fn column_wedge_examples() {
        let i = IntMatrix::identity(3);
        assert_eq!(column_wedge(&i, &[1, 2]).unwrap().coeffs, ints(&[1, 0, 0]));
        let c = IntMatrix::from_rows(&[[1, 2], [3, 4]]);
        assert_eq!(column_wedge(&c, &[1, 2]).unwrap().coeffs, ints(&[-2]));
        let c = IntMatrix::from_rows(&[[1, 2, 1], [3, 4, 3], [5, 0, 5]]);
        assert!(column_wedge(&c, &[1, 3]).unwrap().is_zero());
        assert!(column_wedge(&c, &[1, 4]).is_err());
        assert!(column_wedge(&c, &[1]).is_err());
    }
}
