//! Milnor-invariant profiles of a derivative link and the 0-solvability test.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exterior::{basis, binomial, Grade, WedgeIndex2, WedgeIndex3, WedgeVector};
use crate::int_serde::{self, Int};

/// An invariant value that may not be known. Serialized as an integer or `null`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Known(BigInt),
    Unknown,
}

impl Entry {
    pub fn known(&self) -> Option<&BigInt> {
        match self {
            Entry::Known(v) => Some(v),
            Entry::Unknown => None,
        }
    }

    pub fn is_known(&self) -> bool {
        matches!(self, Entry::Known(_))
    }
}

impl From<i64> for Entry {
    fn from(v: i64) -> Self {
        Entry::Known(v.into())
    }
}

impl From<BigInt> for Entry {
    fn from(v: BigInt) -> Self {
        Entry::Known(v)
    }
}

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.known().cloned().map(Int).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match Option::<Int>::deserialize(d)? {
            Some(Int(v)) => Entry::Known(v),
            None => Entry::Unknown,
        })
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Known(v) => write!(f, "{v}"),
            Entry::Unknown => write!(f, "?"),
        }
    }
}

/// Invariants of a `g`-component derivative link: pairwise linking, component Arf
/// invariants, Sato-Levine invariants `μ̄₁₁₂₂` and triple linking numbers `μ̄₁₂₃`.
///
/// Pair and triple tables are stored in lexicographic wedge order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawProfile", into = "RawProfile")]
pub struct MilnorProfile {
    g: usize,
    lk: Vec<BigInt>,
    arf: Vec<u8>,
    sl: Vec<Entry>,
    tl: Vec<Entry>,
}

#[derive(Serialize, Deserialize)]
struct RawProfile {
    g: usize,
    #[serde(with = "int_serde::vec")]
    lk: Vec<BigInt>,
    arf: Vec<u8>,
    sl: Vec<Entry>,
    tl: Vec<Entry>,
}

impl TryFrom<RawProfile> for MilnorProfile {
    type Error = Error;
    fn try_from(r: RawProfile) -> Result<Self> {
        MilnorProfile::from_tables(r.g, r.lk, r.arf, r.sl, r.tl)
    }
}

impl From<MilnorProfile> for RawProfile {
    fn from(p: MilnorProfile) -> Self {
        RawProfile { g: p.g, lk: p.lk, arf: p.arf, sl: p.sl, tl: p.tl }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroSolvability {
    Solvable,
    NotSolvable,
    /// No known entry obstructs, but some entry is unknown.
    Undetermined,
}

impl MilnorProfile {
    /// The profile of a `g`-component link with every invariant zero.
    pub fn zero(g: usize) -> Self {
        MilnorProfile {
            g,
            lk: vec![BigInt::zero(); binomial(g, 2)],
            arf: vec![0; g],
            sl: vec![Entry::from(0); binomial(g, 2)],
            tl: vec![Entry::from(0); binomial(g, 3)],
        }
    }

    pub fn from_tables(g: usize, lk: Vec<BigInt>, arf: Vec<u8>, sl: Vec<Entry>, tl: Vec<Entry>) -> Result<Self> {
        let (np, nt) = (binomial(g, 2), binomial(g, 3));
        if lk.len() != np || sl.len() != np || arf.len() != g || tl.len() != nt {
            return Err(Error::DimensionMismatch(format!(
                "profile for {g} components needs {np} pairs, {nt} triples and {g} Arf values"
            )));
        }
        if let Some(bad) = arf.iter().find(|&&a| a > 1) {
            return Err(Error::Invalid(format!("Arf invariant must be 0 or 1, got {bad}")));
        }
        Ok(MilnorProfile { g, lk, arf, sl, tl })
    }

    pub fn components(&self) -> usize {
        self.g
    }

    fn pair_pos(&self, i: usize, j: usize) -> Result<usize> {
        Ok(WedgeIndex2::new(i, j, self.g)?.position(self.g))
    }

    fn triple_pos(&self, i: usize, j: usize, k: usize) -> Result<usize> {
        Ok(WedgeIndex3::new(i, j, k, self.g)?.position(self.g))
    }

    pub fn lk(&self, i: usize, j: usize) -> Result<&BigInt> {
        Ok(&self.lk[self.pair_pos(i, j)?])
    }

    pub fn set_lk(&mut self, i: usize, j: usize, v: impl Into<BigInt>) -> Result<()> {
        let p = self.pair_pos(i, j)?;
        self.lk[p] = v.into();
        Ok(())
    }

    pub fn arf(&self) -> &[u8] {
        &self.arf
    }

    pub fn set_arf(&mut self, i: usize, v: u8) -> Result<()> {
        if i == 0 || i > self.g || v > 1 {
            return Err(Error::BadIndex(format!("Arf entry {i} = {v}")));
        }
        self.arf[i - 1] = v;
        Ok(())
    }

    pub fn sl(&self, i: usize, j: usize) -> Result<&Entry> {
        Ok(&self.sl[self.pair_pos(i, j)?])
    }

    pub fn set_sl(&mut self, i: usize, j: usize, v: impl Into<Entry>) -> Result<()> {
        let p = self.pair_pos(i, j)?;
        self.sl[p] = v.into();
        Ok(())
    }

    pub fn tl(&self, i: usize, j: usize, k: usize) -> Result<&Entry> {
        Ok(&self.tl[self.triple_pos(i, j, k)?])
    }

    pub fn set_tl(&mut self, i: usize, j: usize, k: usize, v: impl Into<Entry>) -> Result<()> {
        let p = self.triple_pos(i, j, k)?;
        self.tl[p] = v.into();
        Ok(())
    }

    pub fn lk_table(&self) -> &[BigInt] {
        &self.lk
    }

    pub fn sl_table(&self) -> &[Entry] {
        &self.sl
    }

    pub fn tl_table(&self) -> &[Entry] {
        &self.tl
    }

    pub fn sl_known(&self) -> bool {
        self.sl.iter().all(Entry::is_known)
    }

    pub fn tl_known(&self) -> bool {
        self.tl.iter().all(Entry::is_known)
    }

    pub fn is_fully_known(&self) -> bool {
        self.sl_known() && self.tl_known()
    }

    /// Marks every Sato-Levine entry unknown.
    pub fn forget_sato_levine(&mut self) {
        self.sl.iter_mut().for_each(|e| *e = Entry::Unknown);
    }

    /// Zero pairwise linking, zero Arf invariants, even Sato-Levine invariants and
    /// vanishing triple linking together characterize 0-solvable links.
    pub fn is_zero_solvable(&self) -> ZeroSolvability {
        let obstructed = self.lk.iter().any(|v| !v.is_zero())
            || self.arf.iter().any(|&a| a != 0)
            || self.sl.iter().any(|e| e.known().is_some_and(|v| v.is_odd()))
            || self.tl.iter().any(|e| e.known().is_some_and(|v| !v.is_zero()));
        if obstructed {
            ZeroSolvability::NotSolvable
        } else if self.is_fully_known() {
            ZeroSolvability::Solvable
        } else {
            ZeroSolvability::Undetermined
        }
    }

    /// `S.L.(L) = Σ μ̄₁₁₂₂(Lᵢ, Lⱼ) eᵢ∧eⱼ`, coefficients reduced to `{0, 1}`.
    pub fn assemble_sl(&self) -> Result<WedgeVector> {
        let coeffs = self
            .sl
            .iter()
            .zip(basis(self.g, 2))
            .map(|(e, idx)| match e {
                Entry::Known(v) => Ok(BigInt::from(v.is_odd() as u8)),
                Entry::Unknown => Err(Error::UnknownEntry(format!("sato_levine {},{}", idx[0], idx[1]))),
            })
            .collect::<Result<Vec<_>>>()?;
        WedgeVector::new(Grade::Two, self.g, coeffs)
    }

    /// `T.L.(L) = Σ μ̄₁₂₃(Lᵢ, Lⱼ, Lₖ) eᵢ∧eⱼ∧eₖ`.
    pub fn assemble_tl(&self) -> Result<WedgeVector> {
        let coeffs = self
            .tl
            .iter()
            .zip(basis(self.g, 3))
            .map(|(e, idx)| match e {
                Entry::Known(v) => Ok(v.clone()),
                Entry::Unknown => Err(Error::UnknownEntry(format!("triple {},{},{}", idx[0], idx[1], idx[2]))),
            })
            .collect::<Result<Vec<_>>>()?;
        WedgeVector::new(Grade::Three, self.g, coeffs)
    }

    pub fn sl_bits(&self) -> Result<Vec<bool>> {
        Ok(self.assemble_sl()?.mod2())
    }

    /// Replaces the Sato-Levine table with the given grade-2 vector.
    pub fn with_sl(&self, v: &WedgeVector) -> Result<Self> {
        self.check_vector(v, Grade::Two)?;
        let mut out = self.clone();
        out.sl = v.coeffs.iter().cloned().map(Entry::Known).collect();
        Ok(out)
    }

    pub fn with_tl(&self, v: &WedgeVector) -> Result<Self> {
        self.check_vector(v, Grade::Three)?;
        let mut out = self.clone();
        out.tl = v.coeffs.iter().cloned().map(Entry::Known).collect();
        Ok(out)
    }

    fn check_vector(&self, v: &WedgeVector, grade: Grade) -> Result<()> {
        if v.grade != grade || v.g != self.g {
            return Err(Error::DimensionMismatch(format!(
                "grade-{} vector over rank {} for a {}-component profile",
                v.grade, v.g, self.g
            )));
        }
        Ok(())
    }

    pub(crate) fn arf_mut(&mut self) -> &mut [u8] {
        &mut self.arf
    }

    pub(crate) fn sl_mut(&mut self) -> &mut [Entry] {
        &mut self.sl
    }

    pub(crate) fn tl_mut(&mut self) -> &mut [Entry] {
        &mut self.tl
    }
}
