//! JSON knot descriptions.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use solvcert_core::gate::GateInput;
use solvcert_core::int_serde::Int;
use solvcert_core::linalg::{det, IntMatrix};
use solvcert_core::milnor::{Entry, MilnorProfile};
use solvcert_core::seifert::{find_metabolizer, to_block, AlexanderPoly, BlockSeifert, MetabolizerOutcome, MetabolizerSearch, SeifertMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotSpec {
    pub name: String,
    pub genus: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seifert: Option<Vec<Vec<Int>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander: Option<Vec<Int>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub algebraically_slice: bool,
}

/// Milnor invariants of the derivative, keyed by 1-based `"i,j"` and `"i,j,k"`.
/// Missing linking numbers are 0; missing or null S.L. and T.L. entries are unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSpec {
    pub arf: Vec<u8>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lk: BTreeMap<String, Int>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sato_levine: BTreeMap<String, Option<Int>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub triple: BTreeMap<String, Option<Int>>,
}

/// Block form found by searching for a metabolizer, with `Pᵀ M P` equal to the block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedBlock {
    pub block: BlockSeifert,
    pub basis: IntMatrix,
}

pub fn parse_key(key: &str, arity: usize, g: usize) -> Result<Vec<usize>> {
    let parts: Vec<&str> = key.split(',').map(str::trim).collect();
    let idx: Vec<usize> = parts.iter().map(|p| p.parse::<usize>()).collect::<Result<_, _>>().map_err(|_| {
        anyhow!("bad key {key:?}: expected {arity} comma-separated positive integers")
    })?;
    if idx.len() != arity {
        bail!("bad key {key:?}: expected {arity} indices, found {}", idx.len());
    }
    if idx[0] == 0 || idx.windows(2).any(|w| w[0] >= w[1]) || idx[arity - 1] > g {
        bail!("bad key {key:?}: indices must be strictly increasing in 1..={g}");
    }
    Ok(idx)
}

impl ProfileSpec {
    pub fn to_profile(&self, g: usize) -> Result<MilnorProfile> {
        if self.arf.len() != g {
            bail!("profile.arf: expected {g} entries, found {}", self.arf.len());
        }
        let mut p = MilnorProfile::zero(g);
        for (i, &a) in self.arf.iter().enumerate() {
            if a > 1 {
                bail!("profile.arf[{i}] = {a}: Arf invariants are 0 or 1");
            }
            p.set_arf(i + 1, a)?;
        }
        for (key, v) in &self.lk {
            let ij = parse_key(key, 2, g).context("profile.lk")?;
            p.set_lk(ij[0], ij[1], v.0.clone())?;
        }
        p.forget_sato_levine();
        for (key, v) in &self.sato_levine {
            let ij = parse_key(key, 2, g).context("profile.sato_levine")?;
            p.set_sl(ij[0], ij[1], entry(v))?;
        }
        for i in 1..=g {
            for j in i + 1..=g {
                for k in j + 1..=g {
                    p.set_tl(i, j, k, Entry::Unknown)?;
                }
            }
        }
        for (key, v) in &self.triple {
            let ijk = parse_key(key, 3, g).context("profile.triple")?;
            p.set_tl(ijk[0], ijk[1], ijk[2], entry(v))?;
        }
        Ok(p)
    }
}

fn entry(v: &Option<Int>) -> Entry {
    match v {
        Some(x) => Entry::Known(x.0.clone()),
        None => Entry::Unknown,
    }
}

/// A validated spec and what the gates need from it.
#[derive(Clone, Debug)]
pub struct LoadedKnot {
    pub spec: KnotSpec,
    pub input: GateInput,
    pub derived: Option<DerivedBlock>,
    pub notes: Vec<String>,
}

pub fn read_spec(path: &Path) -> Result<KnotSpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_spec(&text).with_context(|| format!("{}", path.display()))
}

pub fn parse_spec(text: &str) -> Result<KnotSpec> {
    if text.trim().is_empty() {
        bail!("empty knot description");
    }
    Ok(serde_json::from_str(text)?)
}

fn matrix(rows: &[Vec<Int>], g: usize) -> Result<IntMatrix> {
    let n = 2 * g;
    if rows.len() != n {
        bail!("seifert: expected a {n}x{n} matrix for genus {g}, found {} rows", rows.len());
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        bail!("seifert: row {} has {} entries, expected {n}", i + 1, r.len());
    }
    let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect();
    Ok(IntMatrix::from_rows(&big))
}

fn seifert(m: IntMatrix) -> Result<SeifertMatrix> {
    let skew = m.try_sub(&m.transpose())?;
    let d = det(&skew)?;
    if d != BigInt::from(1) {
        bail!("seifert: det(M − Mᵀ) = {d}, must be 1");
    }
    Ok(SeifertMatrix::new(m)?)
}

/// Validates a spec. `derived`, when given, replaces the metabolizer search for
/// a matrix not in block form and is checked against the matrix.
pub fn load(spec: &KnotSpec, derived: Option<&DerivedBlock>, search: MetabolizerSearch) -> Result<LoadedKnot> {
    let g = spec.genus;
    if g == 0 {
        bail!("genus must be positive");
    }
    let mut notes = Vec::new();
    let profile = spec.profile.as_ref().map(|p| p.to_profile(g)).transpose()?;
    match (&spec.seifert, &spec.alexander) {
        (Some(_), Some(_)) => bail!("give either seifert or alexander, not both"),
        (None, None) => bail!("a knot needs a seifert matrix or an alexander polynomial"),
        (None, Some(coeffs)) => {
            if profile.is_some() {
                bail!("a profile describes a derivative and needs a seifert matrix");
            }
            let delta = AlexanderPoly::from_coefficients(coeffs.iter().map(|c| c.0.clone()).collect())
                .context("alexander")?;
            if !delta.eval(&BigInt::from(1)).abs().eq(&BigInt::from(1)) {
                bail!("alexander: Δ(1) = {}, must be ±1", delta.eval(&BigInt::from(1)));
            }
            if delta.normalized().degree() > 2 * g {
                bail!("alexander: degree {} exceeds 2g = {}", delta.normalized().degree(), 2 * g);
            }
            let input = GateInput::from_alexander(delta, g, spec.algebraically_slice);
            Ok(LoadedKnot { spec: spec.clone(), input, derived: None, notes })
        }
        (Some(rows), None) => {
            let m = seifert(matrix(rows, g)?)?;
            if m.is_block_form() {
                let block = BlockSeifert::from_seifert(&m)?;
                return Ok(LoadedKnot { spec: spec.clone(), input: GateInput::from_block(block, profile), derived: None, notes });
            }
            if profile.is_some() {
                bail!("profile: the first {g} basis curves must span a derivative (top-left {g}x{g} block zero)");
            }
            let derived = match derived {
                Some(d) => {
                    let moved = m.congruent(&d.basis).context("derived basis")?;
                    if moved.matrix() != d.block.assemble()?.matrix() {
                        bail!("derived block does not match the seifert matrix");
                    }
                    Some(d.clone())
                }
                None => match find_metabolizer(&m, search) {
                    MetabolizerOutcome::Found(basis) => {
                        let (block, p) = to_block(&m, &basis)?;
                        notes.push(format!("matrix moved to block form by a metabolizer search (bound {})", search.bound));
                        Some(DerivedBlock { block, basis: p })
                    }
                    MetabolizerOutcome::Exhausted => {
                        notes.push(format!("no metabolizer with entries in [−{0}, {0}]", search.bound));
                        None
                    }
                    MetabolizerOutcome::Inconclusive => {
                        notes.push("metabolizer search hit its node cap".into());
                        None
                    }
                },
            };
            let input = match &derived {
                Some(d) => GateInput::from_block(d.block.clone(), None),
                None => GateInput {
                    genus: g,
                    block: None,
                    profile: None,
                    alexander: Some(solvcert_core::seifert::alexander(&m)),
                    algebraically_slice: spec.algebraically_slice,
                },
            };
            Ok(LoadedKnot { spec: spec.clone(), input, derived, notes })
        }
    }
}

/// Hex SHA-256 of the canonical JSON form of a spec.
pub fn spec_hash(spec: &KnotSpec) -> String {
    let bytes = serde_json::to_vec(spec).expect("specs serialize");
    format!("{:x}", Sha256::digest(bytes))
}
