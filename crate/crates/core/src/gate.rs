//! Sufficient criteria for 1-solvability, each producing a [`Certificate`] whose
//! witnesses can be re-checked with [`verify_certificate`].
//!
//! A criterion that fails only means that criterion does not apply. Nothing here
//! ever concludes that a knot is not 1-solvable.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{binomial, difference_integer, Grade};
use crate::infection::{plan_moves, simulate_plan, MovePlan};
use crate::int_serde;
use crate::linalg::{z_image_membership, IntMatrix};
use crate::milnor::{Entry, MilnorProfile, ZeroSolvability};
use crate::seifert::{alexander, flip_genus1, AlexanderPoly, BlockSeifert};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    OneSolvable,
    NotDetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Genus1,
    Genus2SL,
    Genus2Det,
    Genus3,
    GenusG,
    AlexanderLeading,
    ConnectedSumGenus2,
}

impl Criterion {
    pub const ALL: [Criterion; 7] = [
        Criterion::Genus1,
        Criterion::Genus2SL,
        Criterion::Genus2Det,
        Criterion::Genus3,
        Criterion::GenusG,
        Criterion::AlexanderLeading,
        Criterion::ConnectedSumGenus2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Genus1 => "Genus1",
            Criterion::Genus2SL => "Genus2SL",
            Criterion::Genus2Det => "Genus2Det",
            Criterion::Genus3 => "Genus3",
            Criterion::GenusG => "GenusG",
            Criterion::AlexanderLeading => "AlexanderLeading",
            Criterion::ConnectedSumGenus2 => "ConnectedSumGenus2",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Witness {
    BlockForm {
        genus: usize,
    },
    DetDifference {
        #[serde(with = "int_serde")]
        det_a: BigInt,
        #[serde(with = "int_serde")]
        det_b: BigInt,
        #[serde(with = "int_serde")]
        difference: BigInt,
    },
    SatoLevine {
        #[serde(with = "int_serde")]
        value: BigInt,
    },
    Divisibility {
        #[serde(with = "int_serde")]
        divisor: BigInt,
        #[serde(with = "int_serde")]
        dividend: BigInt,
        #[serde(with = "int_serde")]
        quotient: BigInt,
    },
    F2Rank {
        rank: usize,
        dimension: usize,
    },
    TripleImage {
        #[serde(with = "int_serde::vec")]
        solution: Vec<BigInt>,
    },
    Plan {
        plan: MovePlan,
    },
    LeadingCoefficient {
        #[serde(with = "int_serde")]
        a4: BigInt,
        residue: u8,
    },
    ConnectedSum {
        v: BlockSeifert,
        w: BlockSeifert,
        flipped: bool,
        assembled: BlockSeifert,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionFailure {
    pub criterion: Criterion,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub criterion: Option<Criterion>,
    pub genus: usize,
    pub witnesses: Vec<Witness>,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default)]
    pub failures: Vec<CriterionFailure>,
}

impl Certificate {
    fn certified(criterion: Criterion, genus: usize, witnesses: Vec<Witness>) -> Self {
        Certificate { verdict: Verdict::OneSolvable, criterion: Some(criterion), genus, witnesses, notes: Vec::new(), failures: Vec::new() }
    }

    fn undetermined(genus: usize, witnesses: Vec<Witness>, failures: Vec<CriterionFailure>) -> Self {
        Certificate { verdict: Verdict::NotDetermined, criterion: None, genus, witnesses, notes: Vec::new(), failures }
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::OneSolvable
    }

    pub fn plan(&self) -> Option<&MovePlan> {
        self.witnesses.iter().find_map(|w| match w {
            Witness::Plan { plan } => Some(plan),
            _ => None,
        })
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

fn fail(criterion: Criterion, reason: impl Into<String>) -> CriterionFailure {
    CriterionFailure { criterion, reason: reason.into() }
}

fn expect_genus(bk: &BlockSeifert, g: usize) -> Result<()> {
    if bk.genus() != g {
        return Err(Error::GenusMismatch { expected: g, found: bk.genus() });
    }
    Ok(())
}

/// Checks that a profile describes the derivative of `bk`.
fn check_profile(bk: &BlockSeifert, p: &MilnorProfile) -> Result<()> {
    if p.components() != bk.genus() {
        return Err(Error::GenusMismatch { expected: bk.genus(), found: p.components() });
    }
    if p.lk_table().iter().any(|v| !v.is_zero()) {
        return Err(Error::Invalid("a derivative has vanishing pairwise linking numbers".into()));
    }
    Ok(())
}

fn det_witness(bk: &BlockSeifert) -> Witness {
    Witness::DetDifference { det_a: bk.det_a(), det_b: bk.det_b(), difference: bk.det_difference() }
}

fn sl_rank(bk: &BlockSeifert) -> (usize, usize) {
    let d2 = difference_integer(bk.a(), bk.b(), Grade::Two).expect("square blocks").mod2();
    (d2.rank(), d2.rows())
}

pub fn gate_genus1(bk: &BlockSeifert) -> Result<Certificate> {
    expect_genus(bk, 1)?;
    Ok(Certificate::certified(Criterion::Genus1, 1, vec![Witness::BlockForm { genus: 1 }, det_witness(bk)]))
}

/// `μ̄₁₁₂₂` even, or `det A − det B` odd. Without a profile only the second branch is available.
pub fn gate_genus2(bk: &BlockSeifert, p: Option<&MilnorProfile>) -> Result<Certificate> {
    expect_genus(bk, 2)?;
    let mut failures = Vec::new();
    match p {
        Some(p) => {
            check_profile(bk, p)?;
            match p.sl(1, 2)? {
                Entry::Known(v) if v.is_even() => {
                    return Ok(Certificate::certified(
                        Criterion::Genus2SL,
                        2,
                        vec![Witness::BlockForm { genus: 2 }, Witness::SatoLevine { value: v.clone() }],
                    ));
                }
                Entry::Known(v) => failures.push(fail(Criterion::Genus2SL, format!("μ̄1122 = {v} is odd"))),
                Entry::Unknown => failures.push(fail(Criterion::Genus2SL, "μ̄1122 unavailable")),
            }
        }
        None => failures.push(fail(Criterion::Genus2SL, "μ̄1122 unavailable: no profile given")),
    }
    let diff = bk.det_difference();
    if diff.is_odd() {
        return Ok(Certificate::certified(Criterion::Genus2Det, 2, vec![Witness::BlockForm { genus: 2 }, det_witness(bk)]));
    }
    failures.push(fail(Criterion::Genus2Det, format!("det A − det B = {diff} is even")));
    Ok(Certificate::undetermined(2, vec![det_witness(bk)], failures))
}

/// `det A − det B` divides `μ̄₁₂₃` (with `0 | 0`) and `Λ²A − Λ²Bᵀ` is onto mod 2.
pub fn gate_genus3(bk: &BlockSeifert, p: &MilnorProfile) -> Result<Certificate> {
    expect_genus(bk, 3)?;
    check_profile(bk, p)?;
    let tl = p
        .tl(1, 2, 3)?
        .known()
        .ok_or_else(|| Error::UnknownEntry("μ̄123 is required".into()))?
        .clone();
    let diff = bk.det_difference();
    let (rank, dimension) = sl_rank(bk);
    let mut witnesses = vec![det_witness(bk), Witness::F2Rank { rank, dimension }];
    let mut failures = Vec::new();
    let quotient = if diff.is_zero() {
        tl.is_zero().then(BigInt::zero)
    } else {
        let (q, r) = tl.div_rem(&diff);
        r.is_zero().then_some(q)
    };
    match &quotient {
        Some(q) => witnesses.push(Witness::Divisibility { divisor: diff.clone(), dividend: tl.clone(), quotient: q.clone() }),
        None => failures.push(fail(Criterion::Genus3, format!("det A − det B = {diff} does not divide μ̄123 = {tl}"))),
    }
    if rank != dimension {
        failures.push(fail(Criterion::Genus3, format!("Λ²A − Λ²Bᵀ has rank {rank} < {dimension} mod 2")));
    }
    if failures.is_empty() {
        Ok(Certificate::certified(Criterion::Genus3, 3, witnesses))
    } else {
        Ok(Certificate::undetermined(3, witnesses, failures))
    }
}

/// `T.L.` in the ℤ-image of `Λ³A − Λ³Bᵀ` and `Λ²A − Λ²Bᵀ` onto mod 2. The profile
/// may be omitted for `g ≤ 2`, where there are no triple linking numbers; a plan is
/// attached whenever a profile is given.
pub fn gate_general(bk: &BlockSeifert, p: Option<&MilnorProfile>) -> Result<Certificate> {
    let g = bk.genus();
    if let Some(p) = p {
        check_profile(bk, p)?;
    }
    let (rank, dimension) = sl_rank(bk);
    let mut witnesses = vec![Witness::F2Rank { rank, dimension }];
    let mut failures = Vec::new();

    if g >= 3 {
        match p.map(|p| p.assemble_tl()) {
            None => failures.push(fail(Criterion::GenusG, "triple linking numbers required for genus ≥ 3")),
            Some(Err(_)) => failures.push(fail(Criterion::GenusG, "triple linking numbers unknown")),
            Some(Ok(tl)) => {
                let d3 = difference_integer(bk.a(), bk.b(), Grade::Three)?;
                match z_image_membership(&d3.matrix, &tl.coeffs)? {
                    Some(solution) => witnesses.push(Witness::TripleImage { solution }),
                    None => failures.push(fail(Criterion::GenusG, "T.L. is not in the image of Λ³A − Λ³Bᵀ")),
                }
            }
        }
    }
    if rank != dimension {
        failures.push(fail(Criterion::GenusG, format!("Λ²A − Λ²Bᵀ has rank {rank} < {dimension} mod 2")));
    }
    if !failures.is_empty() {
        return Ok(Certificate::undetermined(g, witnesses, failures));
    }
    let mut cert = Certificate::certified(Criterion::GenusG, g, witnesses);
    match p {
        Some(p) => {
            let plan = plan_moves(bk, p).map_err(|e| Error::Invalid(format!("planner disagrees with criterion: {e}")))?;
            cert.witnesses.push(Witness::Plan { plan });
        }
        None => cert = cert.note("no profile given, so no move plan is attached"),
    }
    Ok(cert)
}

/// `|a₄| ≡ 2 mod 4` for an algebraically slice genus-2 knot, `a₄` the leading
/// coefficient of the normalized Alexander polynomial.
pub fn gate_alexander(delta: &AlexanderPoly, genus: usize, algebraically_slice: bool) -> Result<Certificate> {
    if genus != 2 {
        return Err(Error::GenusMismatch { expected: 2, found: genus });
    }
    if !algebraically_slice {
        return Err(Error::Invalid("the Alexander criterion needs an algebraic sliceness witness".into()));
    }
    let n = delta.normalized();
    if n.degree() != 4 {
        return Err(Error::Invalid(format!("normalized Alexander polynomial has degree {}, expected 4", n.degree())));
    }
    if !n.is_symmetric() || !delta.eval(&BigInt::from(1)).abs().is_one() {
        return Err(Error::Invalid(format!("{delta} is not the Alexander polynomial of a knot")));
    }
    let a4 = n.leading().clone();
    let residue = a4.abs().mod_floor(&BigInt::from(4)).try_into().expect("residue < 4");
    let witnesses = vec![Witness::LeadingCoefficient { a4: a4.clone(), residue }];
    if residue == 2 {
        Ok(Certificate::certified(Criterion::AlexanderLeading, 2, witnesses))
    } else {
        Ok(Certificate::undetermined(2, witnesses, vec![fail(Criterion::AlexanderLeading, format!("|a4| = {} is not 2 mod 4", a4.abs()))]))
    }
}

fn genus1_entries(bk: &BlockSeifert) -> Result<[BigInt; 3]> {
    expect_genus(bk, 1)?;
    Ok([bk.a()[(0, 0)].clone(), bk.b()[(0, 0)].clone(), bk.c()[(0, 0)].clone()])
}

/// Genus-2 block for `V # W`, ordering the basis as derivative curves first.
pub fn assemble_connected_sum(v: &BlockSeifert, w: &BlockSeifert) -> Result<BlockSeifert> {
    let [xa, xb, xc] = genus1_entries(v)?;
    let [ya, yb, yc] = genus1_entries(w)?;
    BlockSeifert::new(
        IntMatrix::from_rows(&[[xa, BigInt::zero()], [BigInt::zero(), ya]]),
        IntMatrix::from_rows(&[[xb, BigInt::zero()], [BigInt::zero(), yb]]),
        IntMatrix::from_rows(&[[xc, BigInt::zero()], [BigInt::zero(), yc]]),
    )
}

/// Connected sum of two genus-1 algebraically slice knots, both given in block form.
pub fn gate_connected_sum(v: &BlockSeifert, w: &BlockSeifert) -> Result<Certificate> {
    let mut assembled = assemble_connected_sum(v, w)?;
    let mut w_used = w.clone();
    let mut flipped = false;
    if assembled.det_difference().is_even() {
        w_used = flip_genus1(w)?.0;
        assembled = assemble_connected_sum(v, &w_used)?;
        flipped = true;
    }
    let inner = gate_genus2(&assembled, None)?;
    if !inner.is_certified() {
        return Ok(Certificate::undetermined(2, inner.witnesses, inner.failures));
    }
    let mut cert = Certificate::certified(
        Criterion::ConnectedSumGenus2,
        2,
        vec![Witness::ConnectedSum { v: v.clone(), w: w_used, flipped, assembled: assembled.clone() }, det_witness(&assembled)],
    );
    if flipped {
        cert = cert.note("second summand re-based on its other derivative to match parities");
    }
    Ok(cert)
}

/// Everything known about a knot.
#[derive(Clone, Debug, Default)]
pub struct GateInput {
    pub genus: usize,
    pub block: Option<BlockSeifert>,
    pub profile: Option<MilnorProfile>,
    pub alexander: Option<AlexanderPoly>,
    pub algebraically_slice: bool,
}

impl GateInput {
    pub fn from_block(block: BlockSeifert, profile: Option<MilnorProfile>) -> Self {
        GateInput { genus: block.genus(), block: Some(block), profile, alexander: None, algebraically_slice: true }
    }

    pub fn from_alexander(delta: AlexanderPoly, genus: usize, algebraically_slice: bool) -> Self {
        GateInput { genus, block: None, profile: None, alexander: Some(delta), algebraically_slice }
    }

    fn alexander_poly(&self) -> Result<Option<AlexanderPoly>> {
        match (&self.alexander, &self.block) {
            (Some(d), _) => Ok(Some(d.clone())),
            (None, Some(bk)) => Ok(Some(alexander(&bk.assemble()?))),
            (None, None) => Ok(None),
        }
    }

    fn slice_witnessed(&self) -> bool {
        self.block.is_some() || self.algebraically_slice
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CriterionChoice {
    #[default]
    Auto,
    Genus1,
    Genus2,
    Genus3,
    General,
    Alexander,
}

fn need_block(input: &GateInput) -> Result<&BlockSeifert> {
    input.block.as_ref().ok_or_else(|| Error::Invalid("this criterion needs a Seifert matrix".into()))
}

fn need_profile(input: &GateInput) -> Result<&MilnorProfile> {
    input.profile.as_ref().ok_or_else(|| Error::Invalid("this criterion needs a Milnor profile".into()))
}

fn run_one(input: &GateInput, choice: CriterionChoice) -> Result<Certificate> {
    match choice {
        CriterionChoice::Genus1 => gate_genus1(need_block(input)?),
        CriterionChoice::Genus2 => gate_genus2(need_block(input)?, input.profile.as_ref()),
        CriterionChoice::Genus3 => gate_genus3(need_block(input)?, need_profile(input)?),
        CriterionChoice::General => gate_general(need_block(input)?, input.profile.as_ref()),
        CriterionChoice::Alexander => {
            let delta = input.alexander_poly()?.ok_or_else(|| Error::Invalid("no Alexander polynomial".into()))?;
            gate_alexander(&delta, input.genus, input.slice_witnessed())
        }
        CriterionChoice::Auto => certify(input, CriterionChoice::Auto),
    }
}

fn nominal(choice: CriterionChoice, genus: usize) -> Criterion {
    match choice {
        CriterionChoice::Genus1 => Criterion::Genus1,
        CriterionChoice::Genus2 => Criterion::Genus2Det,
        CriterionChoice::Genus3 => Criterion::Genus3,
        CriterionChoice::General | CriterionChoice::Auto => {
            if genus == 3 {
                Criterion::Genus3
            } else {
                Criterion::GenusG
            }
        }
        CriterionChoice::Alexander => Criterion::AlexanderLeading,
    }
}

/// Runs one criterion, or for `Auto` every applicable criterion in priority order
/// (genus-specific, general, Alexander), reporting the first success.
pub fn certify(input: &GateInput, choice: CriterionChoice) -> Result<Certificate> {
    if choice != CriterionChoice::Auto {
        return run_one(input, choice);
    }
    if let Some(bk) = &input.block {
        if bk.genus() != input.genus {
            return Err(Error::GenusMismatch { expected: input.genus, found: bk.genus() });
        }
        if let Some(p) = &input.profile {
            check_profile(bk, p)?;
        }
    }
    let mut order = Vec::new();
    if input.block.is_some() {
        match input.genus {
            1 => order.push(CriterionChoice::Genus1),
            2 => order.push(CriterionChoice::Genus2),
            3 => order.push(CriterionChoice::Genus3),
            _ => {}
        }
        if input.genus != 1 {
            order.push(CriterionChoice::General);
        }
    }
    if input.genus == 2 {
        order.push(CriterionChoice::Alexander);
    }

    let mut failures = Vec::new();
    let mut witnesses = Vec::new();
    if input.block.is_none() {
        let specific = match input.genus {
            1 => Criterion::Genus1,
            2 => Criterion::Genus2Det,
            3 => Criterion::Genus3,
            _ => Criterion::GenusG,
        };
        failures.push(fail(specific, "no derivative known: needs a Seifert matrix with a metabolizer"));
    }
    for choice in order {
        match run_one(input, choice) {
            Ok(cert) if cert.is_certified() => {
                let mut cert = cert;
                cert.failures = failures;
                return Ok(cert);
            }
            Ok(cert) => {
                failures.extend(cert.failures);
                for w in cert.witnesses {
                    if !witnesses.contains(&w) {
                        witnesses.push(w);
                    }
                }
            }
            Err(e) => failures.push(fail(nominal(choice, input.genus), e.to_string())),
        }
    }
    Ok(Certificate::undetermined(input.genus, witnesses, failures))
}

fn witness<'a, T>(c: &'a Certificate, pick: impl Fn(&'a Witness) -> Option<T>) -> Option<T> {
    c.witnesses.iter().find_map(pick)
}

fn profile_consistent(bk: &BlockSeifert, p: Option<&MilnorProfile>) -> bool {
    p.is_none_or(|p| check_profile(bk, p).is_ok())
}

fn rank_ok(c: &Certificate, bk: &BlockSeifert) -> bool {
    let (rank, dimension) = sl_rank(bk);
    rank == dimension && witness(c, |w| matches!(w, Witness::F2Rank { rank: r, dimension: d } if *r == rank && *d == dimension).then_some(())).is_some()
}

/// Every S.L. vector to test a deferred stage against: all of them when there are at
/// most 2¹⁰, otherwise zero, all-ones and the unit vectors (the resolver is linear).
fn adversarial_vectors(n: usize) -> Vec<Vec<bool>> {
    if n <= 10 {
        (0u32..1 << n).map(|mask| (0..n).map(|i| mask >> i & 1 == 1).collect()).collect()
    } else {
        let mut out = vec![vec![false; n], vec![true; n]];
        out.extend((0..n).map(|i| (0..n).map(|j| i == j).collect()));
        out
    }
}

/// Re-simulates a plan against `p`, resolving a deferred S.L. stage against every vector
/// from `vectors`; true when every run ends 0-solvable.
pub fn plan_reaches_zero_solvable(plan: &MovePlan, bk: &BlockSeifert, p: &MilnorProfile, vectors: &[Vec<bool>]) -> bool {
    let mut runs: Vec<Option<&Vec<bool>>> = vectors.iter().map(Some).collect();
    if runs.is_empty() {
        runs.push(None);
    }
    runs.into_iter().all(|v| {
        let n = binomial(bk.genus(), 2);
        let measured = v.cloned().unwrap_or_else(|| vec![false; n]);
        simulate_plan(plan, bk, p, |_| measured.clone())
            .map(|end| end.is_zero_solvable() == ZeroSolvability::Solvable)
            .unwrap_or(false)
    })
}

/// Re-checks a certificate against the inputs it was issued for.
pub fn verify_certificate(c: &Certificate, input: &GateInput) -> bool {
    if c.genus != input.genus {
        return false;
    }
    let Some(criterion) = c.criterion else {
        return c.verdict == Verdict::NotDetermined && !c.failures.is_empty();
    };
    if c.verdict != Verdict::OneSolvable {
        return false;
    }
    let block = input.block.as_ref();
    let profile = input.profile.as_ref();
    if let Some(bk) = block {
        if bk.genus() != input.genus || !profile_consistent(bk, profile) {
            return false;
        }
    }
    match criterion {
        Criterion::Genus1 => block.is_some_and(|bk| bk.genus() == 1),
        Criterion::Genus2SL => {
            let Some((bk, p)) = block.zip(profile) else { return false };
            let Some(claimed) = witness(c, |w| match w {
                Witness::SatoLevine { value } => Some(value),
                _ => None,
            }) else {
                return false;
            };
            bk.genus() == 2 && matches!(p.sl(1, 2), Ok(Entry::Known(v)) if v == claimed && v.is_even())
        }
        Criterion::Genus2Det => block.is_some_and(|bk| bk.genus() == 2 && det_matches(c, bk) && bk.det_difference().is_odd()),
        Criterion::Genus3 => {
            let Some((bk, p)) = block.zip(profile) else { return false };
            let Ok(Entry::Known(tl)) = p.tl(1, 2, 3) else { return false };
            let diff = bk.det_difference();
            let divides = witness(c, |w| match w {
                Witness::Divisibility { divisor, dividend, quotient } => Some(divisor == &diff && dividend == tl && &(divisor * quotient) == tl),
                _ => None,
            })
            .unwrap_or(false);
            bk.genus() == 3 && det_matches(c, bk) && divides && rank_ok(c, bk)
        }
        Criterion::GenusG => {
            let Some(bk) = block else { return false };
            if !rank_ok(c, bk) {
                return false;
            }
            if bk.genus() >= 3 {
                let Some(Ok(tl)) = profile.map(|p| p.assemble_tl()) else { return false };
                let Ok(d3) = difference_integer(bk.a(), bk.b(), Grade::Three) else { return false };
                let solved = witness(c, |w| match w {
                    Witness::TripleImage { solution } => Some(d3.matrix.mul_vec(solution).ok().as_deref() == Some(&tl.coeffs[..])),
                    _ => None,
                });
                if solved != Some(true) {
                    return false;
                }
            }
            match (c.plan(), profile) {
                (Some(plan), Some(p)) => {
                    let n = binomial(bk.genus(), 2);
                    plan_reaches_zero_solvable(plan, bk, p, &adversarial_vectors(n))
                }
                (None, None) => true,
                _ => false,
            }
        }
        Criterion::AlexanderLeading => {
            if input.genus != 2 || !input.slice_witnessed() {
                return false;
            }
            let Ok(Some(delta)) = input.alexander_poly() else { return false };
            let n = delta.normalized();
            let a4 = n.leading().abs();
            n.degree() == 4
                && a4.mod_floor(&BigInt::from(4)) == BigInt::from(2)
                && witness(c, |w| match w {
                    Witness::LeadingCoefficient { a4: claimed, residue } => Some(claimed.abs() == a4 && *residue == 2),
                    _ => None,
                })
                .unwrap_or(false)
        }
        Criterion::ConnectedSumGenus2 => witness(c, |w| match w {
            Witness::ConnectedSum { v, w, flipped: _, assembled } => {
                let rebuilt = assemble_connected_sum(v, w);
                let same_form = rebuilt.as_ref().is_ok_and(|r| r == assembled);
                let matches_input = block.is_none_or(|bk| bk == assembled);
                Some(same_form && matches_input && assembled.det_difference().is_odd())
            }
            _ => None,
        })
        .unwrap_or(false),
    }
}

fn det_matches(c: &Certificate, bk: &BlockSeifert) -> bool {
    witness(c, |w| match w {
        Witness::DetDifference { det_a, det_b, difference } => {
            Some(*det_a == bk.det_a() && *det_b == bk.det_b() && *difference == bk.det_difference())
        }
        _ => None,
    })
    .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block(a: &[i64], b: &[i64], c: &[i64]) -> BlockSeifert {
        BlockSeifert::new(IntMatrix::diag(a), IntMatrix::diag(b), IntMatrix::diag(c)).unwrap()
    }

    fn genus1(x: i64, z: i64) -> BlockSeifert {
        block(&[x], &[x - 1], &[z])
    }

    #[test]
    fn genus1_always() {
        for (x, z) in [(0, 0), (3, -2), (-5, 7)] {
            let c = gate_genus1(&genus1(x, z)).unwrap();
            assert_eq!(c.criterion, Some(Criterion::Genus1));
            assert!(verify_certificate(&c, &GateInput::from_block(genus1(x, z), None)));
        }
        assert!(gate_genus1(&block(&[1, 1], &[0, 0], &[0, 0])).is_err());
    }

    #[test]
    fn genus2_branches() {
        let bk = block(&[3, 5], &[2, 4], &[0, 0]);
        let c = gate_genus2(&bk, None).unwrap();
        assert_eq!(c.criterion, Some(Criterion::Genus2Det));

        let even = block(&[2, 1], &[1, 0], &[0, 0]);
        let mut p = MilnorProfile::zero(2);
        p.set_sl(1, 2, 4).unwrap();
        let c = gate_genus2(&even, Some(&p)).unwrap();
        assert_eq!(c.criterion, Some(Criterion::Genus2SL));
        assert!(verify_certificate(&c, &GateInput::from_block(even.clone(), Some(p.clone()))));

        p.set_sl(1, 2, 1).unwrap();
        let c = gate_genus2(&even, Some(&p)).unwrap();
        assert_eq!(c.verdict, Verdict::NotDetermined);
        assert_eq!(c.failures.len(), 2);

        let c = gate_genus2(&even, None).unwrap();
        assert!(c.failures[0].reason.contains("unavailable"));
    }

    #[test]
    fn genus3_examples() {
        let pm1 = block(&[2, -2, -4], &[1, -3, -5], &[0, 0, 0]);
        let mut p = MilnorProfile::zero(3);
        p.set_tl(1, 2, 3, 17).unwrap();
        let c = gate_genus3(&pm1, &p).unwrap();
        assert_eq!(c.criterion, Some(Criterion::Genus3));
        assert!(verify_certificate(&c, &GateInput::from_block(pm1.clone(), Some(p.clone()))));

        let flat = block(&[1, 2, 2], &[0, 1, 1], &[0, 0, 0]);
        p.set_tl(1, 2, 3, 8).unwrap();
        assert!(gate_genus3(&flat, &p).unwrap().failures.iter().all(|f| !f.reason.contains("divide")));
        p.set_tl(1, 2, 3, 6).unwrap();
        assert!(!gate_genus3(&flat, &p).unwrap().is_certified());
    }

    #[test]
    fn general_attaches_plan() {
        let pm1 = block(&[2, -2, -4], &[1, -3, -5], &[0, 0, 0]);
        let mut p = MilnorProfile::zero(3);
        p.set_tl(1, 2, 3, 3).unwrap();
        p.set_arf(1, 1).unwrap();
        let c = gate_general(&pm1, Some(&p)).unwrap();
        assert!(c.is_certified());
        assert!(c.plan().is_some());
        let input = GateInput::from_block(pm1, Some(p));
        assert!(verify_certificate(&c, &input));
        let mut bad = c.clone();
        for w in &mut bad.witnesses {
            if let Witness::TripleImage { solution } = w {
                solution[0] += 1;
            }
        }
        assert!(!verify_certificate(&bad, &input));
    }

    #[test]
    fn alexander_examples() {
        let delta = AlexanderPoly::from_coefficients([6, -20, 29, -20, 6].map(BigInt::from).to_vec()).unwrap();
        let c = gate_alexander(&delta, 2, true).unwrap();
        assert_eq!(c.criterion, Some(Criterion::AlexanderLeading));
        assert!(verify_certificate(&c, &GateInput::from_alexander(delta.clone(), 2, true)));
        assert!(gate_alexander(&delta, 2, false).is_err());
        assert!(gate_alexander(&delta, 3, true).is_err());
        let four = AlexanderPoly::from_coefficients([4, -8, 9, -8, 4].map(BigInt::from).to_vec()).unwrap();
        assert!(!gate_alexander(&four, 2, true).unwrap().is_certified());
        let neg = AlexanderPoly::from_coefficients([-2, 0, 5, 0, -2].map(BigInt::from).to_vec()).unwrap();
        assert!(gate_alexander(&neg, 2, true).unwrap().is_certified());
        let short = AlexanderPoly::from_coefficients([1, -1, 1].map(BigInt::from).to_vec()).unwrap();
        assert!(gate_alexander(&short, 2, true).is_err());
    }

    #[test]
    fn connected_sum_examples() {
        for (x, y) in [(3, 0), (2, 2), (0, 1), (-4, 7)] {
            let c = gate_connected_sum(&genus1(x, 1), &genus1(y, -2)).unwrap();
            assert_eq!(c.criterion, Some(Criterion::ConnectedSumGenus2), "x={x} y={y}");
            let flipped = matches!(c.witnesses[0], Witness::ConnectedSum { flipped: true, .. });
            assert_eq!(flipped, (x + y) % 2 != 0);
            let input = GateInput { genus: 2, ..Default::default() };
            assert!(verify_certificate(&c, &input));
        }
    }

    #[test]
    fn auto_priority() {
        let pm1 = block(&[2, -2, -4], &[1, -3, -5], &[0, 0, 0]);
        let c = certify(&GateInput::from_block(pm1.clone(), Some(MilnorProfile::zero(3))), CriterionChoice::Auto).unwrap();
        assert_eq!(c.criterion, Some(Criterion::Genus3));
        let c = certify(&GateInput::from_block(pm1, None), CriterionChoice::Auto).unwrap();
        assert_eq!(c.verdict, Verdict::NotDetermined);
        assert!(verify_certificate(&c, &GateInput { genus: 3, ..Default::default() }));
    }
}
