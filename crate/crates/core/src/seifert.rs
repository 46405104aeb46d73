//! Seifert matrices, their block form relative to a derivative, and the classical
//! invariants read off them.

use std::fmt;

use log::debug;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int_serde;
use crate::linalg::{det, is_unimodular, smith_normal_form, IntMatrix};

/// `M[i][j] = lk(Lᵢ, Lⱼ⁺)` on a genus-`g` surface; `det(M − Mᵀ) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IntMatrix", into = "IntMatrix")]
pub struct SeifertMatrix {
    genus: usize,
    matrix: IntMatrix,
}

impl SeifertMatrix {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        if !matrix.rows().is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!(
                "a Seifert matrix has even size, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let form = &matrix - &matrix.transpose();
        let d = det(&form)?;
        if !d.is_one() {
            return Err(Error::InvalidSeifert(d));
        }
        Ok(SeifertMatrix { genus: matrix.rows() / 2, matrix })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Pairing `vᵀ·M·w`.
    pub fn pairing(&self, v: &[BigInt], w: &[BigInt]) -> BigInt {
        let mw = self.matrix.mul_vec(w).expect("vector length matches genus");
        v.iter().zip(&mw).map(|(a, b)| a * b).sum()
    }

    /// `PᵀMP`.
    pub fn congruent(&self, p: &IntMatrix) -> Result<Self> {
        if !is_unimodular(p)? {
            return Err(Error::NotUnimodular(det(p)?));
        }
        Self::new(&(&p.transpose() * &self.matrix) * p)
    }

    /// Is the top-left `g×g` block zero, i.e. do the first `g` basis curves form a derivative?
    pub fn is_block_form(&self) -> bool {
        self.matrix.block(0, 0, self.genus, self.genus).is_zero()
    }
}

impl TryFrom<IntMatrix> for SeifertMatrix {
    type Error = Error;
    fn try_from(m: IntMatrix) -> Result<Self> {
        Self::new(m)
    }
}

impl From<SeifertMatrix> for IntMatrix {
    fn from(s: SeifertMatrix) -> Self {
        s.matrix
    }
}

/// Seifert matrix `[[0, A], [B, C]]` with the derivative spanning the first `g` basis elements.
///
/// Column `j` of `A` records `lk(Lᵢ, αⱼ⁺)`; column `j` of `Bᵀ` records `lk(Lᵢ, αⱼ⁻)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawBlock", into = "RawBlock")]
pub struct BlockSeifert {
    genus: usize,
    a: IntMatrix,
    b: IntMatrix,
    c: IntMatrix,
}

#[derive(Serialize, Deserialize)]
struct RawBlock {
    a: IntMatrix,
    b: IntMatrix,
    c: IntMatrix,
}

impl TryFrom<RawBlock> for BlockSeifert {
    type Error = Error;
    fn try_from(r: RawBlock) -> Result<Self> {
        BlockSeifert::new(r.a, r.b, r.c)
    }
}

impl From<BlockSeifert> for RawBlock {
    fn from(b: BlockSeifert) -> Self {
        RawBlock { a: b.a, b: b.b, c: b.c }
    }
}

impl BlockSeifert {
    pub fn new(a: IntMatrix, b: IntMatrix, c: IntMatrix) -> Result<Self> {
        let g = a.rows();
        for (name, m) in [("A", &a), ("B", &b), ("C", &c)] {
            if m.shape() != (g, g) {
                return Err(Error::DimensionMismatch(format!(
                    "block {name} is {}x{}, expected {g}x{g}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let bk = BlockSeifert { genus: g, a, b, c };
        bk.assemble()?;
        Ok(bk)
    }

    /// Reads the blocks off a Seifert matrix whose top-left block vanishes.
    pub fn from_seifert(m: &SeifertMatrix) -> Result<Self> {
        let g = m.genus();
        if !m.is_block_form() {
            return Err(Error::InvalidMetabolizer(
                "top-left block is nonzero; the first g basis curves are not a derivative".into(),
            ));
        }
        let mm = m.matrix();
        Ok(BlockSeifert { genus: g, a: mm.block(0, g, g, g), b: mm.block(g, 0, g, g), c: mm.block(g, g, g, g) })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    pub fn c(&self) -> &IntMatrix {
        &self.c
    }

    pub fn assemble(&self) -> Result<SeifertMatrix> {
        let z = IntMatrix::zeros(self.genus, self.genus);
        SeifertMatrix::new(IntMatrix::from_blocks(&z, &self.a, &self.b, &self.c)?)
    }

    pub fn det_a(&self) -> BigInt {
        det(&self.a).expect("square block")
    }

    pub fn det_b(&self) -> BigInt {
        det(&self.b).expect("square block")
    }

    /// `det A − det B`.
    pub fn det_difference(&self) -> BigInt {
        self.det_a() - self.det_b()
    }
}

/// Coefficients `a₀ … a_{2g}` of `det(M − t·Mᵀ)`, low degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderPoly {
    #[serde(with = "int_serde::vec")]
    coeffs: Vec<BigInt>,
}

/// `Δ` up to the unit `sign · t^shift`: `raw(t) = sign · t^shift · coeffs(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedAlexander {
    #[serde(with = "int_serde::vec")]
    pub coeffs: Vec<BigInt>,
    pub shift: usize,
    pub sign: i8,
}

impl NormalizedAlexander {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

impl AlexanderPoly {
    pub fn from_coefficients(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::Invalid("the Alexander polynomial of a knot is nonzero".into()));
        }
        Ok(AlexanderPoly { coeffs })
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The raw top coefficient `a_{2g}`.
    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonempty")
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Strip powers of `t` and fix the sign so that `Δ(1) > 0`.
    pub fn normalized(&self) -> NormalizedAlexander {
        let lo = self.coeffs.iter().position(|c| !c.is_zero()).expect("nonzero");
        let hi = self.coeffs.iter().rposition(|c| !c.is_zero()).expect("nonzero");
        let mut coeffs: Vec<BigInt> = self.coeffs[lo..=hi].to_vec();
        let at_one: BigInt = coeffs.iter().sum();
        let negate = if at_one.is_zero() { coeffs.last().unwrap().is_negative() } else { at_one.is_negative() };
        if negate {
            coeffs.iter_mut().for_each(|c| *c = -std::mem::take(c));
        }
        NormalizedAlexander { coeffs, shift: lo, sign: if negate { -1 } else { 1 } }
    }
}

impl fmt::Display for AlexanderPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "t")?
                    } else {
                        write!(f, "t^{k}")?
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `det(M − t·Mᵀ)`, recovered exactly by interpolating at `t = 0, 1, …, 2g`.
pub fn alexander(m: &SeifertMatrix) -> AlexanderPoly {
    let n = 2 * m.genus();
    let mt = m.matrix().transpose();
    let values: Vec<BigInt> = (0..=n)
        .map(|t| {
            let t = BigInt::from(t);
            det(&(m.matrix() - &mt.scale(&t))).expect("square")
        })
        .collect();
    AlexanderPoly { coeffs: interpolate_at_naturals(&values) }
}

/// Monomial coefficients of the unique polynomial of degree ≤ n with `p(i) = values[i]`.
fn interpolate_at_naturals(values: &[BigInt]) -> Vec<BigInt> {
    let n = values.len();
    // Newton forward differences: p(t) = Σ c_k · t(t-1)…(t-k+1), with c_k = Δ^k p(0) / k!
    let mut diffs = values.to_vec();
    let mut newton = Vec::with_capacity(n);
    let mut fact = BigInt::one();
    for k in 0..n {
        if k > 0 {
            fact *= k;
        }
        let (q, r) = diffs[0].div_rem(&fact);
        debug_assert!(r.is_zero(), "integer polynomial has integral Newton coefficients");
        newton.push(q);
        for i in 0..diffs.len() - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
        diffs.pop();
    }
    let mut coeffs = vec![BigInt::zero(); n];
    // falling factorial basis, expanded incrementally
    let mut basis_poly = vec![BigInt::one()];
    for (k, ck) in newton.iter().enumerate() {
        for (i, b) in basis_poly.iter().enumerate() {
            coeffs[i] += ck * b;
        }
        // multiply by (t - k)
        let mut next = vec![BigInt::zero(); basis_poly.len() + 1];
        for (i, b) in basis_poly.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= b * k;
        }
        basis_poly = next;
    }
    coeffs
}

/// Arf invariant from `Δ(−1)`: 0 iff `Δ(−1) ≡ ±1 (mod 8)`.
pub fn arf_from_determinant(delta_at_minus_one: &BigInt) -> u8 {
    let r = delta_at_minus_one.abs().mod_floor(&BigInt::from(8)).to_u8().unwrap();
    match r {
        1 | 7 => 0,
        _ => 1,
    }
}

pub fn arf(m: &SeifertMatrix) -> u8 {
    // Δ(−1) = det(M + Mᵀ)
    let sym = m.matrix() + &m.matrix().transpose();
    arf_from_determinant(&det(&sym).expect("square"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MetabolizerSearch {
    /// Entries of candidate vectors range over `[−bound, bound]`.
    pub bound: u32,
    /// Cap on search-tree nodes (and on enumerated candidates).
    pub node_cap: u64,
}

impl Default for MetabolizerSearch {
    fn default() -> Self {
        MetabolizerSearch { bound: 3, node_cap: 2_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetabolizerOutcome {
    Found(Vec<Vec<BigInt>>),
    /// Every candidate within the bound was tried. Not a proof of non-sliceness.
    Exhausted,
    /// The node cap was hit before the search completed.
    Inconclusive,
}

impl MetabolizerOutcome {
    pub fn found(&self) -> Option<&[Vec<BigInt>]> {
        match self {
            MetabolizerOutcome::Found(v) => Some(v),
            _ => None,
        }
    }
}

/// Bounded search for `g` primitive vectors spanning an isotropic direct summand.
///
/// Candidates are tried by increasing ℓ¹ norm, then by support, so a matrix already
/// in block form returns `e₁ … e_g`.
pub fn find_metabolizer(m: &SeifertMatrix, search: MetabolizerSearch) -> MetabolizerOutcome {
    let g = m.genus();
    if g == 0 {
        return MetabolizerOutcome::Found(Vec::new());
    }
    let n = 2 * g;
    let bound = search.bound.max(1) as i64;
    let total = (2 * bound as u64 + 1).checked_pow(n as u32);
    if total.is_none_or(|t| t > search.node_cap.saturating_mul(8)) {
        debug!("candidate box too large for node cap");
        return MetabolizerOutcome::Inconclusive;
    }

    let mut candidates: Vec<Vec<i64>> = Vec::new();
    let mut v = vec![-bound; n];
    loop {
        if is_canonical_primitive(&v) {
            let big: Vec<BigInt> = v.iter().map(|&x| x.into()).collect();
            if m.pairing(&big, &big).is_zero() {
                candidates.push(v.clone());
            }
        }
        // odometer
        let mut k = n;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            if v[k] < bound {
                v[k] += 1;
                break;
            }
            v[k] = -bound;
        }
        if v.iter().all(|&x| x == -bound) {
            break;
        }
    }
    candidates.sort_by_key(|v| candidate_key(v));
    debug!("{} isotropic primitive candidates within bound {bound}", candidates.len());

    let cands: Vec<Vec<BigInt>> = candidates.iter().map(|v| v.iter().map(|&x| x.into()).collect()).collect();
    let mut state = Dfs { m, cands: &cands, g, nodes: 0, cap: search.node_cap, chosen: Vec::new() };
    match state.run(0) {
        Some(true) => MetabolizerOutcome::Found(state.chosen.iter().map(|&i| cands[i].clone()).collect()),
        Some(false) => MetabolizerOutcome::Exhausted,
        None => MetabolizerOutcome::Inconclusive,
    }
}

fn is_canonical_primitive(v: &[i64]) -> bool {
    match v.iter().find(|&&x| x != 0) {
        Some(&first) if first > 0 => v.iter().fold(0i64, |acc, &x| acc.gcd(&x)) == 1,
        _ => false,
    }
}

fn candidate_key(v: &[i64]) -> (i64, Vec<usize>, Vec<i64>) {
    let l1 = v.iter().map(|x| x.abs()).sum();
    let support = v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i).collect();
    let vals = v.iter().filter(|&&x| x != 0).map(|&x| if x > 0 { 2 * x - 1 } else { -2 * x }).collect();
    (l1, support, vals)
}

struct Dfs<'a> {
    m: &'a SeifertMatrix,
    cands: &'a [Vec<BigInt>],
    g: usize,
    nodes: u64,
    cap: u64,
    chosen: Vec<usize>,
}

impl Dfs<'_> {
    /// Some(true) found, Some(false) exhausted, None capped.
    fn run(&mut self, start: usize) -> Option<bool> {
        if self.chosen.len() == self.g {
            return Some(true);
        }
        for i in start..self.cands.len() {
            self.nodes += 1;
            if self.nodes > self.cap {
                return None;
            }
            let v = &self.cands[i];
            let compatible = self.chosen.iter().all(|&j| {
                let w = &self.cands[j];
                self.m.pairing(v, w).is_zero() && self.m.pairing(w, v).is_zero()
            });
            if !compatible {
                continue;
            }
            self.chosen.push(i);
            let vecs: Vec<Vec<BigInt>> = self.chosen.iter().map(|&j| self.cands[j].clone()).collect();
            if is_direct_summand(&vecs) && self.run(i + 1)? {
                return Some(true);
            }
            self.chosen.pop();
        }
        Some(false)
    }
}

/// Do the vectors form a basis of a direct summand (all invariant factors 1, full rank)?
pub fn is_direct_summand(vectors: &[Vec<BigInt>]) -> bool {
    let Some(first) = vectors.first() else {
        return true;
    };
    let Ok(m) = IntMatrix::from_columns(first.len(), vectors) else {
        return false;
    };
    let snf = smith_normal_form(&m);
    snf.rank() == vectors.len() && snf.invariant_factors().iter().all(One::is_one)
}

/// Checks that `basis` spans a half-rank isotropic direct summand of the Seifert form.
pub fn check_metabolizer(m: &SeifertMatrix, basis: &[Vec<BigInt>]) -> Result<()> {
    let g = m.genus();
    if basis.len() != g {
        return Err(Error::InvalidMetabolizer(format!("{} vectors given, genus is {g}", basis.len())));
    }
    if let Some(v) = basis.iter().find(|v| v.len() != 2 * g) {
        return Err(Error::InvalidMetabolizer(format!("vector of length {}, expected {}", v.len(), 2 * g)));
    }
    for (i, v) in basis.iter().enumerate() {
        for (j, w) in basis.iter().enumerate() {
            if !m.pairing(v, w).is_zero() {
                return Err(Error::InvalidMetabolizer(format!(
                    "not isotropic: v{}ᵀ·M·v{} = {}",
                    i + 1,
                    j + 1,
                    m.pairing(v, w)
                )));
            }
        }
    }
    if !is_direct_summand(basis) {
        return Err(Error::InvalidMetabolizer("span is not a direct summand".into()));
    }
    Ok(())
}

/// Completes a direct-summand basis (as columns) to a unimodular matrix.
fn complete_to_unimodular(vectors: &[Vec<BigInt>], n: usize) -> Result<IntMatrix> {
    let mut cols = vectors.to_vec();
    // standard basis vectors first; keeps permutation-like changes of basis simple
    for i in 0..n {
        if cols.len() == n {
            break;
        }
        let mut e = vec![BigInt::zero(); n];
        e[i] = BigInt::one();
        cols.push(e);
        if !is_direct_summand(&cols) {
            cols.pop();
        }
    }
    if cols.len() < n {
        // V = U⁻¹·[I;0]·W⁻¹, so the trailing columns of U⁻¹ complete V
        let v = IntMatrix::from_columns(n, vectors)?;
        let snf = smith_normal_form(&v);
        let u_inv = snf.u_inverse();
        cols = vectors.to_vec();
        for j in vectors.len()..n {
            cols.push(u_inv.column(j));
        }
    }
    let p = IntMatrix::from_columns(n, &cols)?;
    debug_assert!(is_unimodular(&p).unwrap_or(false));
    Ok(p)
}

/// Change of basis `P` putting the metabolizer first, and the resulting block form `PᵀMP`.
pub fn to_block(m: &SeifertMatrix, metabolizer: &[Vec<BigInt>]) -> Result<(BlockSeifert, IntMatrix)> {
    check_metabolizer(m, metabolizer)?;
    let p = complete_to_unimodular(metabolizer, 2 * m.genus())?;
    let conj = m.congruent(&p)?;
    Ok((BlockSeifert::from_seifert(&conj)?, p))
}

/// Re-expresses the block form in the basis `{L, α·P}`: `(A·P, Pᵀ·B, Pᵀ·C·P)`.
pub fn basis_change(bk: &BlockSeifert, p: &IntMatrix) -> Result<BlockSeifert> {
    let g = bk.genus();
    if p.shape() != (g, g) {
        return Err(Error::DimensionMismatch(format!("P is {}x{}, expected {g}x{g}", p.rows(), p.cols())));
    }
    if !is_unimodular(p)? {
        return Err(Error::NotUnimodular(det(p)?));
    }
    let pt = p.transpose();
    BlockSeifert::new(bk.a() * p, &pt * bk.b(), &(&pt * bk.c()) * p)
}

/// For a genus-1 block `[[0, a], [b, c]]`, switches to the other derivative.
///
/// The result has `A' − B' = −(A − B)`, so the roles of `x` and `x − 1` in
/// `[[0, x], [x − 1, z]]` are exchanged. Returns the new block and the change of basis.
pub fn flip_genus1(bk: &BlockSeifert) -> Result<(BlockSeifert, IntMatrix)> {
    if bk.genus() != 1 {
        return Err(Error::GenusMismatch { expected: 1, found: bk.genus() });
    }
    let a = &bk.a()[(0, 0)];
    let b = &bk.b()[(0, 0)];
    let c = &bk.c()[(0, 0)];
    // (p, q)ᵀ M (p, q) = q·(p(a+b) + q·c); a + b is odd, so q ≠ 0 gives a second isotropic line
    let s: BigInt = a + b;
    let gcd = s.gcd(c);
    let q = &s / &gcd;
    let p = -(c / &gcd);
    let m = bk.assemble()?;
    let (mut flipped, mut basis) = to_block(&m, &[vec![p, q]])?;
    let sum = |bk: &BlockSeifert| &bk.a()[(0, 0)] - &bk.b()[(0, 0)];
    if sum(&flipped) != -sum(bk) {
        basis.negate_col(0);
        flipped = BlockSeifert::from_seifert(&m.congruent(&basis)?)?;
    }
    Ok((flipped, basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sm(rows: &[[i64; 2]]) -> SeifertMatrix {
        SeifertMatrix::new(IntMatrix::from_rows(rows)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn validation() {
        assert!(matches!(
            SeifertMatrix::new(IntMatrix::from_rows(&[[1, 0], [0, 1]])),
            Err(Error::InvalidSeifert(_))
        ));
        assert!(SeifertMatrix::new(IntMatrix::zeros(3, 3)).is_err());
        assert!(SeifertMatrix::new(IntMatrix::zeros(2, 4)).is_err());
        // orientation-reversed form has det(M - Mᵀ) = 1 as well in genus 1
        assert!(SeifertMatrix::new(IntMatrix::from_rows(&[[0, 0], [1, 0]])).is_ok());
    }

    #[test]
    fn alexander_examples() {
        let unknot = sm(&[[0, 1], [0, 0]]);
        let d = alexander(&unknot);
        assert_eq!(d.coefficients(), ints(&[0, 1, 0]).as_slice());
        assert_eq!(d.normalized().coeffs, ints(&[1]));
        assert_eq!(d.normalized().shift, 1);

        let trefoil = sm(&[[-1, 1], [0, -1]]);
        let d = alexander(&trefoil);
        assert_eq!(d.coefficients(), ints(&[1, -1, 1]).as_slice());
        assert_eq!(d.leading(), &det(trefoil.matrix()).unwrap());
        assert_eq!(d.eval(&BigInt::one()), BigInt::one());
    }

    #[test]
    fn arf_examples() {
        assert_eq!(arf(&sm(&[[0, 1], [0, 0]])), 0);
        assert_eq!(arf(&sm(&[[-1, 1], [0, -1]])), 1);
        assert_eq!(arf(&sm(&[[1, 1], [0, -1]])), 1);
        assert_eq!(arf_from_determinant(&BigInt::from(-5)), 1);
        assert_eq!(arf_from_determinant(&BigInt::from(9)), 0);
        assert_eq!(arf_from_determinant(&BigInt::from(-7)), 0);
    }

    #[test]
    fn metabolizer_examples() {
        let genus1 = sm(&[[0, 3], [2, 5]]);
        let found = find_metabolizer(&genus1, MetabolizerSearch::default());
        assert_eq!(found, MetabolizerOutcome::Found(vec![ints(&[1, 0])]));

        let trefoil = sm(&[[-1, 1], [0, -1]]);
        let out = find_metabolizer(&trefoil, MetabolizerSearch { bound: 5, node_cap: 1_000_000 });
        assert_eq!(out, MetabolizerOutcome::Exhausted);

        let tiny_cap = find_metabolizer(&genus1, MetabolizerSearch { bound: 3, node_cap: 0 });
        assert_eq!(tiny_cap, MetabolizerOutcome::Inconclusive);
    }

    #[test]
    fn to_block_swaps_basis() {
        // [[z, x], [x-1, 0]] with x = 4, z = 7 and metabolizer e₂
        let m = sm(&[[7, 4], [3, 0]]);
        let (bk, p) = to_block(&m, &[ints(&[0, 1])]).unwrap();
        assert_eq!(p, IntMatrix::from_rows(&[[0, 1], [1, 0]]));
        assert_eq!(bk.a(), &IntMatrix::from_rows(&[[3]]));
        assert_eq!(bk.b(), &IntMatrix::from_rows(&[[4]]));
        assert_eq!(bk.c(), &IntMatrix::from_rows(&[[7]]));
        assert!(to_block(&m, &[ints(&[1, 0])]).is_err());
        assert!(to_block(&m, &[ints(&[0, 2])]).is_err());
    }

    #[test]
    fn to_block_needs_snf_completion() {
        // (2, 3) is isotropic for [[0, 2], [1, -2]], but neither e₁ nor e₂ completes it
        let m = sm(&[[0, 2], [1, -2]]);
        let v = ints(&[2, 3]);
        let (out, p) = to_block(&m, std::slice::from_ref(&v)).unwrap();
        assert!(is_unimodular(&p).unwrap());
        assert_eq!(p.column(0), v);
        assert_eq!(out.assemble().unwrap(), m.congruent(&p).unwrap());
    }

    #[test]
    fn basis_change_identity_and_errors() {
        let bk = BlockSeifert::new(
            IntMatrix::diag(&[2, 3]),
            IntMatrix::diag(&[1, 2]),
            IntMatrix::from_rows(&[[1, 4], [0, -2]]),
        )
        .unwrap();
        assert_eq!(basis_change(&bk, &IntMatrix::identity(2)).unwrap(), bk);
        assert!(matches!(basis_change(&bk, &IntMatrix::diag(&[2, 1])), Err(Error::NotUnimodular(_))));
        assert!(basis_change(&bk, &IntMatrix::identity(3)).is_err());
    }

    #[test]
    fn genus1_flip_exchanges_roles() {
        for (x, z) in [(2, 1), (0, 5), (1, 0), (-3, 4), (4, 0), (7, -6)] {
            let bk = BlockSeifert::new(
                IntMatrix::from_rows(&[[x]]),
                IntMatrix::from_rows(&[[x - 1]]),
                IntMatrix::from_rows(&[[z]]),
            )
            .unwrap();
            let (f, p) = flip_genus1(&bk).unwrap();
            assert!(is_unimodular(&p).unwrap());
            assert_eq!(f.assemble().unwrap(), bk.assemble().unwrap().congruent(&p).unwrap());
            let (a, b) = (&f.a()[(0, 0)], &f.b()[(0, 0)]);
            assert_eq!(a - b, BigInt::from(-1), "x={x} z={z}");
            assert_eq!(a.is_odd(), (x - 1) % 2 != 0, "x={x} z={z}");
        }
    }

    #[test]
    fn display_poly() {
        let d = AlexanderPoly::from_coefficients(ints(&[6, -20, 29, -20, 6])).unwrap();
        assert_eq!(d.to_string(), "6t^4 - 20t^3 + 29t^2 - 20t + 6");
        assert!(AlexanderPoly::from_coefficients(ints(&[0, 0])).is_err());
    }
}
