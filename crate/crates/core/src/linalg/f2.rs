use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::IntMatrix;
use crate::error::{Error, Result};

const WORD: usize = 64;

/// Matrix over GF(2), one bit-packed row of `u64` words per matrix row.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawF2", into = "RawF2")]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawF2 {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<u8>>,
}

impl TryFrom<RawF2> for F2Matrix {
    type Error = Error;

    fn try_from(raw: RawF2) -> Result<Self> {
        if raw.entries.len() != raw.rows || raw.entries.iter().any(|r| r.len() != raw.cols) {
            return Err(Error::DimensionMismatch("F2 entries do not match declared shape".into()));
        }
        let mut m = F2Matrix::zeros(raw.rows, raw.cols);
        for (i, row) in raw.entries.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if b > 1 {
                    return Err(Error::Invalid(format!("F2 entry {b} is not a bit")));
                }
                m.set(i, j, b == 1);
            }
        }
        Ok(m)
    }
}

impl From<F2Matrix> for RawF2 {
    fn from(m: F2Matrix) -> Self {
        let entries = (0..m.rows).map(|i| (0..m.cols).map(|j| m.get(i, j) as u8).collect()).collect();
        RawF2 { rows: m.rows, cols: m.cols, entries }
    }
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(WORD);
        F2Matrix { rows, cols, stride, words: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.as_ref().len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.as_ref().len(), c, "ragged rows");
            for (j, &b) in row.as_ref().iter().enumerate() {
                m.set(i, j, b & 1 == 1);
            }
        }
        m
    }

    /// Entrywise reduction mod 2.
    pub fn from_int(m: &IntMatrix) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, m[(i, j)].is_odd());
            }
        }
        out
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.words[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        let w = &mut self.words[i * self.stride + j / WORD];
        let mask = 1u64 << (j % WORD);
        if bit {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    fn xor_row_into(&mut self, dst: usize, src: usize) {
        for k in 0..self.stride {
            let s = self.words[src * self.stride + k];
            self.words[dst * self.stride + k] ^= s;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for k in 0..self.stride {
                self.words.swap(a * self.stride + k, b * self.stride + k);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[bool]) -> Result<Vec<bool>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let packed = pack(x);
        Ok((0..self.rows)
            .map(|i| {
                self.row_words(i).iter().zip(&packed).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
            })
            .collect())
    }

    /// Row-echelon form in place; returns the pivot columns.
    fn eliminate(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row_into(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().len()
    }

    /// Onto iff the rank equals the number of rows.
    pub fn is_onto(&self) -> bool {
        self.rank() == self.rows
    }

    /// Some `x` with `M·x = t` over GF(2); free variables are set to zero.
    pub fn solve(&self, t: &[bool]) -> Result<Option<Vec<bool>>> {
        if t.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "target of length {} for a matrix with {} rows",
                t.len(),
                self.rows
            )));
        }
        // augmented [M | t]
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for (i, &ti) in t.iter().enumerate() {
            for j in 0..self.cols {
                if self.get(i, j) {
                    aug.set(i, j, true);
                }
            }
            aug.set(i, self.cols, ti);
        }
        let pivots = aug.eliminate();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![false; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        debug_assert_eq!(self.mul_vec(&x).unwrap(), t);
        Ok(Some(x))
    }
}

fn pack(bits: &[bool]) -> Vec<u64> {
    let mut words = vec![0u64; bits.len().div_ceil(WORD)];
    for (j, &b) in bits.iter().enumerate() {
        if b {
            words[j / WORD] |= 1 << (j % WORD);
        }
    }
    words
}

pub fn f2_is_onto(m: &F2Matrix) -> bool {
    m.is_onto()
}

pub fn f2_solve(m: &F2Matrix, t: &[bool]) -> Result<Option<Vec<bool>>> {
    m.solve(t)
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Matrix{}", self)
    }
}

impl fmt::Display for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j) as u8)?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
