//! How satellite and string-link infections act on derivative profiles, and a
//! planner that chains paired `(J, −J)` infections along `α⁺`, `α⁻` until the
//! derivative becomes 0-solvable.
//!
//! Infecting string links are represented only by the invariants the update
//! rules consume. They are taken to have unknotted components and zero pairwise
//! linking, so an infection never changes `lk` or the component Arf invariants
//! except through the satellite move.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::exterior::{basis, column_wedge, difference_integer, Grade, WedgeIndex2, WedgeIndex3, WedgeVector};
use crate::int_serde;
use crate::linalg::{det, z_image_membership, F2Matrix, IntMatrix};
use crate::milnor::{Entry, MilnorProfile, ZeroSolvability};
use crate::seifert::BlockSeifert;

/// Satellite infection by a knot `J` along a curve `η` on the surface, applied as the
/// annulus pair `η⁺`, `η⁻`. `v[i]` is the parity of the intersection `Lᵢ·η`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatelliteMove {
    pub v: Vec<bool>,
    pub arf_j: u8,
}

/// Paired infection by a 2-component string link `J` along `αᵢ⁺ ∨ αⱼ⁺` and by `−J`
/// along `αᵢ⁻ ∨ αⱼ⁻`; `s = μ̄₁₁₂₂(Ĵ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairedMove2 {
    pub pair: WedgeIndex2,
    #[serde(with = "int_serde")]
    pub s: BigInt,
}

/// Paired infection by a 3-component string link `X` and `−X`; `m = μ̄₁₂₃(X̂)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairedMove3 {
    pub triple: WedgeIndex3,
    #[serde(with = "int_serde")]
    pub m: BigInt,
}

/// `Arf(P_η(J)) = Arf(P) + lk(P, η)·Arf(J)` on every component.
pub fn apply_satellite(p: &MilnorProfile, mv: &SatelliteMove) -> Result<MilnorProfile> {
    if mv.v.len() != p.components() || mv.arf_j > 1 {
        return Err(Error::DimensionMismatch(format!(
            "satellite move over {} components (Arf(J) = {}) applied to a {}-component profile",
            mv.v.len(),
            mv.arf_j,
            p.components()
        )));
    }
    let mut out = p.clone();
    for (a, &hit) in out.arf_mut().iter_mut().zip(&mv.v) {
        *a = (*a + hit as u8 * mv.arf_j) % 2;
    }
    Ok(out)
}

/// `μ̄₁₁₂₂(L_α(J)) = μ̄₁₁₂₂(L) + det(C)²·μ̄₁₁₂₂(Ĵ)` with `C = (lk(Lᵢ, αⱼ))`.
pub fn sl_update_single(mu: &BigInt, c: &IntMatrix, mu_j: &BigInt) -> Result<BigInt> {
    if c.shape() != (2, 2) {
        return Err(Error::DimensionMismatch(format!("linking matrix must be 2x2, got {:?}", c.shape())));
    }
    let d = det(c)?;
    Ok(mu + &d * &d * mu_j)
}

/// Parity form of [`sl_update_single`]: `μ + det(C)·μ̄(Ĵ) mod 2`.
pub fn sl_update_mod2(mu: bool, det_c: &BigInt, mu_j: &BigInt) -> bool {
    mu ^ (det_c * mu_j).is_odd()
}

/// `μ̄₁₂₃(L_α(J)) = μ̄₁₂₃(L) + det(C)·μ̄₁₂₃(Ĵ)`.
pub fn tl_update_single(mu: &BigInt, det_c: &BigInt, mu_j: &BigInt) -> BigInt {
    mu + det_c * mu_j
}

fn check_blocks(p: &MilnorProfile, a: &IntMatrix, b: &IntMatrix) -> Result<()> {
    let g = p.components();
    if a.shape() != (g, g) || b.shape() != (g, g) {
        return Err(Error::DimensionMismatch(format!(
            "blocks {:?}, {:?} for a {g}-component profile",
            a.shape(),
            b.shape()
        )));
    }
    Ok(())
}

/// Paired 2-strand move. Each 2-component sublink `(Lₖ, Lₗ)` picks up
/// `(dₐ² − d_b²)·s`, where `dₐ`, `d_b` are the `(k,l)` coordinates of
/// `Aeᵢ∧Aeⱼ` and `Bᵀeᵢ∧Bᵀeⱼ`; mod 2 this is `S.L. + s·(A∧A − Bᵀ∧Bᵀ)(eᵢ∧eⱼ)`.
/// Unknown entries stay unknown; triple linking, Arf and `lk` are untouched.
pub fn apply_paired2(p: &MilnorProfile, a: &IntMatrix, b: &IntMatrix, mv: &PairedMove2) -> Result<MilnorProfile> {
    check_blocks(p, a, b)?;
    let g = p.components();
    let WedgeIndex2(i, j) = WedgeIndex2::new(mv.pair.0, mv.pair.1, g)?;
    let plus = column_wedge(a, &[i, j])?;
    let minus = column_wedge(&b.transpose(), &[i, j])?;
    let mut out = p.clone();
    for ((e, dp), dm) in out.sl_mut().iter_mut().zip(&plus.coeffs).zip(&minus.coeffs) {
        if let Entry::Known(v) = e {
            *v += (dp * dp - dm * dm) * &mv.s;
        }
    }
    Ok(out)
}

/// Paired 3-strand move: `T.L. ← T.L. + m·(Aeᵢ∧Aeⱼ∧Aeₖ − Bᵀeᵢ∧Bᵀeⱼ∧Bᵀeₖ)` over ℤ.
/// Sato-Levine invariants are no longer controlled and become unknown.
pub fn apply_paired3(p: &MilnorProfile, a: &IntMatrix, b: &IntMatrix, mv: &PairedMove3) -> Result<MilnorProfile> {
    check_blocks(p, a, b)?;
    let g = p.components();
    let WedgeIndex3(i, j, k) = WedgeIndex3::new(mv.triple.0, mv.triple.1, mv.triple.2, g)?;
    let plus = column_wedge(a, &[i, j, k])?;
    let minus = column_wedge(&b.transpose(), &[i, j, k])?;
    let mut out = p.clone();
    for ((e, dp), dm) in out.tl_mut().iter_mut().zip(&plus.coeffs).zip(&minus.coeffs) {
        if let Entry::Known(v) = e {
            *v += (dp - dm) * &mv.m;
        }
    }
    out.forget_sato_levine();
    Ok(out)
}

/// Turns a measured S.L. vector into the 2-strand moves that cancel it, by solving
/// `(A∧A − Bᵀ∧Bᵀ)·y = S.L.` over GF(2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlResolver {
    pub g: usize,
    pub operator: F2Matrix,
}

impl SlResolver {
    pub fn resolve(&self, measured: &[bool]) -> Result<Vec<PairedMove2>> {
        let y = self
            .operator
            .solve(measured)?
            .ok_or_else(|| Error::Invalid("S.L. vector is outside the image of the mod-2 operator".into()))?;
        Ok(WedgeIndex2::all(self.g)
            .into_iter()
            .zip(y)
            .filter(|(_, bit)| *bit)
            .map(|(pair, _)| PairedMove2 { pair, s: BigInt::one() })
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum SatoLevineStage {
    NotNeeded,
    Resolved(Vec<PairedMove2>),
    /// S.L. is unknown once a 3-strand move has been made; resolved against the
    /// measured vector.
    Deferred(SlResolver),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StageStatus {
    Empty,
    Emitted,
    Deferred,
}

/// Triple-linking moves, then Sato-Levine moves, then the Arf satellite move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovePlan {
    pub g: usize,
    /// Coordinates `x` with `(Λ³A − Λ³Bᵀ)·x = T.L.`; absent when there is nothing to cancel.
    #[serde(with = "int_serde::option_vec")]
    pub triple_solution: Option<Vec<BigInt>>,
    pub triple_moves: Vec<PairedMove3>,
    pub sato_levine: SatoLevineStage,
    pub arf: Option<SatelliteMove>,
}

impl MovePlan {
    pub fn empty(g: usize) -> Self {
        MovePlan { g, triple_solution: None, triple_moves: Vec::new(), sato_levine: SatoLevineStage::NotNeeded, arf: None }
    }

    pub fn is_empty(&self) -> bool {
        self.triple_moves.is_empty() && self.sato_levine == SatoLevineStage::NotNeeded && self.arf.is_none()
    }

    pub fn statuses(&self) -> [StageStatus; 3] {
        let triple = if self.triple_moves.is_empty() { StageStatus::Empty } else { StageStatus::Emitted };
        let sl = match &self.sato_levine {
            SatoLevineStage::NotNeeded => StageStatus::Empty,
            SatoLevineStage::Resolved(m) if m.is_empty() => StageStatus::Empty,
            SatoLevineStage::Resolved(_) => StageStatus::Emitted,
            SatoLevineStage::Deferred(_) => StageStatus::Deferred,
        };
        let arf = if self.arf.is_some() { StageStatus::Emitted } else { StageStatus::Empty };
        [triple, sl, arf]
    }
}

impl fmt::Display for MovePlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "stage 1 (triple linking): {} move(s)", self.triple_moves.len())?;
        for mv in &self.triple_moves {
            writeln!(f, "  paired 3-strand infection along α{}∨α{}∨α{} with μ̄123 = {}", mv.triple.0, mv.triple.1, mv.triple.2, mv.m)?;
        }
        match &self.sato_levine {
            SatoLevineStage::NotNeeded => writeln!(f, "stage 2 (Sato-Levine): nothing to do")?,
            SatoLevineStage::Resolved(moves) => {
                writeln!(f, "stage 2 (Sato-Levine): {} move(s)", moves.len())?;
                for mv in moves {
                    writeln!(f, "  paired 2-strand infection along α{}∨α{} with μ̄1122 = {}", mv.pair.0, mv.pair.1, mv.s)?;
                }
            }
            SatoLevineStage::Deferred(r) => {
                writeln!(f, "stage 2 (Sato-Levine): deferred until S.L. is measured")?;
                writeln!(f, "  solve {} · y = S.L. over GF(2); infect along αi∨αj for each y_ij = 1", r.operator)?;
            }
        }
        match &self.arf {
            None => writeln!(f, "stage 3 (Arf): nothing to do"),
            Some(mv) => {
                let hit: Vec<String> = mv.v.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| format!("L{}", i + 1)).collect();
                writeln!(f, "stage 3 (Arf): satellite by a knot with Arf 1 along η meeting {} once", hit.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum PlanFailure {
    #[error("profile has {found} components but the surface has genus {expected}")]
    GenusMismatch { expected: usize, found: usize },
    #[error("derivative has nonzero pairwise linking; the first g curves are not a derivative for this profile")]
    NonzeroLinking,
    #[error("triple linking numbers are unknown")]
    TripleLinkingUnknown,
    #[error("T.L. is not in the image of Λ³A − Λ³Bᵀ")]
    TripleNotInImage,
    #[error("Λ²A − Λ²Bᵀ is not onto mod 2")]
    SatoLevineNotOnto,
    #[error("S.L. is not in the image of Λ²A − Λ²Bᵀ mod 2")]
    SatoLevineNotInImage,
}

impl PlanFailure {
    pub fn stage(&self) -> &'static str {
        match self {
            PlanFailure::GenusMismatch { .. } | PlanFailure::NonzeroLinking => "input",
            PlanFailure::TripleLinkingUnknown | PlanFailure::TripleNotInImage => "stage 1 (triple linking)",
            PlanFailure::SatoLevineNotOnto | PlanFailure::SatoLevineNotInImage => "stage 2 (Sato-Levine)",
        }
    }
}

/// Plans infections taking the derivative of `bk` to a 0-solvable link.
pub fn plan_moves(bk: &BlockSeifert, p: &MilnorProfile) -> std::result::Result<MovePlan, PlanFailure> {
    let g = bk.genus();
    if p.components() != g {
        return Err(PlanFailure::GenusMismatch { expected: g, found: p.components() });
    }
    if p.lk_table().iter().any(|v| !v.is_zero()) {
        return Err(PlanFailure::NonzeroLinking);
    }
    if p.is_zero_solvable() == ZeroSolvability::Solvable {
        return Ok(MovePlan::empty(g));
    }

    // stage 1: T.L. = (Λ³A − Λ³Bᵀ)·x, cancelled by m = −x per triple
    let tl = p.assemble_tl().map_err(|_| PlanFailure::TripleLinkingUnknown)?;
    let (triple_solution, triple_moves) = if tl.is_zero() {
        (None, Vec::new())
    } else {
        let d3 = difference_integer(bk.a(), bk.b(), Grade::Three).expect("square blocks");
        let x = z_image_membership(&d3.matrix, &tl.coeffs)
            .expect("dimensions agree")
            .ok_or(PlanFailure::TripleNotInImage)?;
        let moves = WedgeIndex3::all(g)
            .into_iter()
            .zip(&x)
            .filter(|(_, xi)| !xi.is_zero())
            .map(|(triple, xi)| PairedMove3 { triple, m: -xi })
            .collect();
        (Some(x), moves)
    };

    // stage 2
    let d2 = difference_integer(bk.a(), bk.b(), Grade::Two).expect("square blocks").mod2();
    let sato_levine = if !triple_moves.is_empty() || !p.sl_known() {
        if !d2.is_onto() {
            return Err(PlanFailure::SatoLevineNotOnto);
        }
        SatoLevineStage::Deferred(SlResolver { g, operator: d2 })
    } else {
        let s = p.sl_bits().expect("known");
        if s.iter().all(|b| !b) {
            SatoLevineStage::NotNeeded
        } else {
            let resolver = SlResolver { g, operator: d2 };
            SatoLevineStage::Resolved(resolver.resolve(&s).map_err(|_| PlanFailure::SatoLevineNotInImage)?)
        }
    };

    // stage 3: the earlier stages leave the Arf invariants alone
    let arf = p.arf().contains(&1).then(|| SatelliteMove { v: p.arf().iter().map(|&a| a == 1).collect(), arf_j: 1 });

    Ok(MovePlan { g, triple_solution, triple_moves, sato_levine, arf })
}

/// Runs a plan against a profile. `measure` supplies the S.L. vector whenever the
/// deferred stage finds it unknown.
pub fn simulate_plan(
    plan: &MovePlan,
    bk: &BlockSeifert,
    p: &MilnorProfile,
    mut measure: impl FnMut(&MilnorProfile) -> Vec<bool>,
) -> Result<MilnorProfile> {
    let (a, b) = (bk.a(), bk.b());
    let mut cur = p.clone();
    for mv in &plan.triple_moves {
        cur = apply_paired3(&cur, a, b, mv)?;
    }
    let moves = match &plan.sato_levine {
        SatoLevineStage::NotNeeded => Vec::new(),
        SatoLevineStage::Resolved(moves) => moves.clone(),
        SatoLevineStage::Deferred(resolver) => {
            if !cur.sl_known() {
                let bits = measure(&cur);
                cur = cur.with_sl(&WedgeVector::from_bits(Grade::Two, cur.components(), &bits)?)?;
            }
            resolver.resolve(&cur.sl_bits()?)?
        }
    };
    for mv in &moves {
        cur = apply_paired2(&cur, a, b, mv)?;
    }
    if let Some(mv) = &plan.arf {
        cur = apply_satellite(&cur, mv)?;
    }
    Ok(cur)
}

/// All pairs in lexicographic order, 1-based; handy for rendering resolver inputs.
pub fn pair_labels(g: usize) -> Vec<String> {
    basis(g, 2).into_iter().map(|v| format!("{},{}", v[0], v[1])).collect()
}
