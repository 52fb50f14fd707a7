//! From a descending ordinal sequence to a special Goodstein sequence that
//! stays above it.
//!
//! 1. [`slow_transform`] pads the sequence so that `|α_j| ≤ K·(j + 1)`.
//! 2. [`coeff_bound_transform`] rewrites a slow sequence so that
//!    `ko(β_r) ≤ r + 1`.
//! 3. [`special_witness`] starts the special sequence at `T₂(β₀)` and
//!    certifies `m_k ≥ T_{k+2}(β_k)` at every index up to a horizon.
//!
//! [`full_pipeline`] chains the three stages and re-checks every invariant
//! on what they produced.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, ToPrimitive, Zero};

use super::clock::{self, DescentClock};
use super::grz::{self, GrzLevel};
use crate::error::{Error, Result};
use crate::goodstein::{self, BaseSchedule, DominationRecord, GoodsteinTrace, Verdict};
use crate::numeral::{self, Numeral};
use crate::ordinal::{self, Ordinal};
use crate::{Limits, Natural};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefixKind {
    Raw,
    /// `|α_i| ≤ k·(i + 1)`.
    Slow { k: u64 },
    /// `ko(β_r) ≤ r + 1`.
    CoeffBounded,
}

impl PrefixKind {
    pub fn name(&self) -> &'static str {
        match self {
            PrefixKind::Raw => "raw",
            PrefixKind::Slow { .. } => "slow",
            PrefixKind::CoeffBounded => "coeff_bounded",
        }
    }
}

/// A non-empty, strictly descending finite sequence of ordinals, tagged with
/// the extra invariant it is known to satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequencePrefix {
    terms: Vec<Ordinal>,
    kind: PrefixKind,
}

impl SequencePrefix {
    pub fn raw(terms: Vec<Ordinal>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyInput);
        }
        goodstein::check_strictly_descending(&terms)?;
        Ok(SequencePrefix {
            terms,
            kind: PrefixKind::Raw,
        })
    }

    pub fn slow(terms: Vec<Ordinal>, k: u64) -> Result<Self> {
        let prefix = SequencePrefix::raw(terms)?;
        if let Some(index) = first_slowness_violation(&prefix.terms, k) {
            return Err(Error::InvariantViolation {
                index,
                message: format!(
                    "|{}| = {} exceeds {k}·{}",
                    prefix.terms[index],
                    ordinal::length(&prefix.terms[index]),
                    index + 1
                ),
            });
        }
        Ok(SequencePrefix {
            kind: PrefixKind::Slow { k },
            ..prefix
        })
    }

    pub fn coeff_bounded(terms: Vec<Ordinal>) -> Result<Self> {
        let prefix = SequencePrefix::raw(terms)?;
        if let Some(index) = first_coefficient_violation(&prefix.terms) {
            return Err(Error::InvariantViolation {
                index,
                message: format!(
                    "ko({}) = {} exceeds {}",
                    prefix.terms[index],
                    ordinal::max_coefficient(&prefix.terms[index]),
                    index + 1
                ),
            });
        }
        Ok(SequencePrefix {
            kind: PrefixKind::CoeffBounded,
            ..prefix
        })
    }

    pub fn terms(&self) -> &[Ordinal] {
        &self.terms
    }

    pub fn kind(&self) -> PrefixKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn first_slowness_violation(terms: &[Ordinal], k: u64) -> Option<usize> {
    terms
        .iter()
        .enumerate()
        .position(|(i, t)| ordinal::length(t) > Natural::from(k) * (i as u64 + 1))
}

fn first_coefficient_violation(terms: &[Ordinal]) -> Option<usize> {
    terms
        .iter()
        .enumerate()
        .position(|(r, t)| ordinal::max_coefficient(t) > Natural::from(r as u64 + 1))
}

/// Least `K ≥ 1` with `|α_j| ≤ K·(j + 1)` on the whole prefix.
pub fn least_slowness(terms: &[Ordinal]) -> u64 {
    terms
        .iter()
        .enumerate()
        .map(|(j, t)| {
            let len = ordinal::length(t).to_u64().expect("lengths fit in u64");
            len.div_ceil(j as u64 + 1)
        })
        .fold(1, u64::max)
}

/// One clocked block of the slow sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// `n`: the block sits on `ω^ω·β_n`.
    pub source: usize,
    /// Index of the block's first entry in the output.
    pub start: usize,
    /// `|β_{n+1}|` entries.
    pub len: usize,
    /// The clock is read at `max(2, n)`.
    pub clock_arg: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlowOutput {
    pub prefix: SequencePrefix,
    pub clock: DescentClock,
    /// Added to every entry of the initial segment so that it ends above the
    /// first clocked entry.
    pub offset: Ordinal,
    pub initial_len: usize,
    pub blocks: Vec<Block>,
}

impl SlowOutput {
    pub fn slowness(&self) -> u64 {
        match self.prefix.kind {
            PrefixKind::Slow { k } => k,
            _ => unreachable!("slow output is always tagged slow"),
        }
    }
}

/// `ω^ω·β`.
fn omega_omega_times(beta: &Ordinal) -> Ordinal {
    ordinal::omega_power_mul(&Ordinal::omega(), beta)
}

fn as_count(n: &Natural) -> usize {
    n.to_usize().expect("block lengths fit in usize")
}

/// Pads a descending sequence into a slow one.
///
/// The output is `ω^ω·β₀ + δ + (|β₀| + 1 − i)` for `i < |β₀|`, followed for each
/// `n` by the block `ω^ω·β_n + g(max(2, n), m)` for `m < |β_{n+1}|`, where `g`
/// is the descent clock at `level`. The clock is read at `max(2, n)` because
/// the hierarchy majorizes block lengths in the form
/// `|β_{n+1}| ≤ f_l(max(2, n))`; that bound is checked before anything is
/// built. `δ` is zero unless the first clocked entry would reach the end of the
/// initial segment.
pub fn slow_transform(raw: &SequencePrefix, level: GrzLevel, limits: &Limits) -> Result<SlowOutput> {
    let betas = raw.terms();
    let clock = clock::build_clock(level, limits.magnitude_bits)?;
    let lengths: Vec<Natural> = betas.iter().map(ordinal::length).collect();

    let mut block_lens = Vec::new();
    for n in 0..betas.len().saturating_sub(1) {
        let len = &lengths[n + 1];
        if len.is_zero() {
            break;
        }
        let arg = Natural::from(2.max(n as u64));
        // f_l(arg) ≤ len − 1 means the clock cannot count down |β_{n+1}| times.
        if let Some(bound) = grz::eval_capped(level, &arg, &(len - 1u32)) {
            return Err(Error::MajorantInsufficient {
                level: level.0,
                n,
                length: len.clone(),
                bound: bound.to_string(),
            });
        }
        block_lens.push(as_count(len));
    }

    let clock_arg = |n: usize| Natural::from(2.max(n as u64));
    let offset = match block_lens.first() {
        Some(_) => {
            let first = clock::clock_eval(&clock, &clock_arg(0), &Natural::zero());
            let (head, tail) = first.split_finite_tail();
            let lowered = if tail.is_zero() { tail } else { tail - 1u32 };
            ordinal::add(&head, &Ordinal::from_natural(lowered))
        }
        None => Ordinal::zero(),
    };

    let mut terms = Vec::new();
    let initial_len = as_count(&lengths[0]);
    let base0 = omega_omega_times(&betas[0]);
    let shifted0 = ordinal::add(&base0, &offset);
    for i in 0..initial_len {
        let tail = &lengths[0] + 1u32 - i;
        terms.push(ordinal::add(&shifted0, &Ordinal::from_natural(tail)));
    }

    let mut blocks = Vec::with_capacity(block_lens.len());
    for (n, &len) in block_lens.iter().enumerate() {
        let head = omega_omega_times(&betas[n]);
        let arg = clock_arg(n);
        blocks.push(Block {
            source: n,
            start: terms.len(),
            len,
            clock_arg: arg.to_u64().expect("small"),
        });
        for m in 0..len {
            let tick = clock::clock_eval(&clock, &arg, &Natural::from(m));
            terms.push(ordinal::add(&head, &tick));
        }
    }
    if terms.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Err(Error::NotDescending { index, first, second }) = goodstein::check_strictly_descending(&terms) {
        return Err(Error::InvariantViolation {
            index,
            message: format!("slow sequence is not descending: {first} then {second}"),
        });
    }
    let k = least_slowness(&terms);
    Ok(SlowOutput {
        prefix: SequencePrefix::slow(terms, k)?,
        clock,
        offset,
        initial_len,
        blocks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedOutput {
    pub prefix: SequencePrefix,
    /// Height of the leading tower `ω_s`.
    pub s: u64,
    /// The slowness constant of the input.
    pub k: u64,
}

/// Rewrites a slow sequence into one with `ko(β_r) ≤ r + 1`.
///
/// `β_j = ω_s + ω_{s−1} + … + ω_{s−K+1+j}` for `j < K`, then
/// `β_{K(n+1)+i} = ω·α_n + (K − i)` for `i < K`, with
/// `s = max(K + 1, tower_height(ω·α₀))`.
pub fn coeff_bound_transform(slow: &SequencePrefix) -> Result<BoundedOutput> {
    let PrefixKind::Slow { k } = slow.kind() else {
        return Err(Error::InvariantViolation {
            index: 0,
            message: format!("expected a slow prefix, got {}", slow.kind().name()),
        });
    };
    let alphas = slow.terms();
    let omega_times = |alpha: &Ordinal| ordinal::omega_power_mul(&Ordinal::one(), alpha);
    let s = (k + 1).max(ordinal::tower_height(&omega_times(&alphas[0])) as u64);
    let k_count = usize::try_from(k).expect("K fits in usize");
    let s_count = usize::try_from(s).expect("s fits in usize");

    let mut terms = Vec::with_capacity(k_count * (alphas.len() + 1));
    let towers: Vec<Ordinal> = (0..k_count)
        .map(|i| ordinal::omega_tower(s_count - i))
        .collect::<Result<_, _>>()?;
    for j in 0..k_count {
        let beta = towers[..k_count - j]
            .iter()
            .fold(Ordinal::zero(), |acc, t| ordinal::add(&acc, t));
        terms.push(beta);
    }
    for alpha in alphas {
        let head = omega_times(alpha);
        for i in 0..k {
            terms.push(ordinal::add(&head, &Ordinal::from_u64(k - i)));
        }
    }
    let prefix = SequencePrefix::coeff_bounded(terms)?;
    if let Some(j) = prefix.terms[..k_count]
        .iter()
        .position(|t| !ordinal::max_coefficient(t).is_one())
    {
        return Err(Error::InvariantViolation {
            index: j,
            message: "leading tower sums must have every coefficient equal to 1".into(),
        });
    }
    Ok(BoundedOutput { prefix, s, k })
}

/// Convenience wrapper that validates `terms` as slow with constant `k`.
pub fn coeff_bound_terms(terms: Vec<Ordinal>, k: u64) -> Result<BoundedOutput> {
    coeff_bound_transform(&SequencePrefix::slow(terms, k)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvidenceStatus {
    /// The horizon was 0: nothing was checked.
    NoEvidence,
    /// Every record up to this many indices passed.
    CertifiedUpToHorizon(usize),
    Failed { first_index: usize },
}

impl EvidenceStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            EvidenceStatus::NoEvidence => "no-evidence",
            EvidenceStatus::CertifiedUpToHorizon(_) => "certified-up-to-horizon",
            EvidenceStatus::Failed { .. } => "failed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundCertificate {
    pub records: Vec<DominationRecord>,
    pub status: EvidenceStatus,
}

impl LowerBoundCertificate {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.verdict == Verdict::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub start: Numeral,
    pub trace: GoodsteinTrace,
    pub certificate: LowerBoundCertificate,
}

/// Runs the special sequence from `T₂(β₀)` and certifies `m_k ≥ T_{k+2}(β_k)`
/// for the first `min(horizon, len)` indices.
///
/// Each verdict compares `T*_{k+2}(m_k)` with `β_k` as ordinals; since
/// `ko(β_k) < k + 2` this decides the numeric inequality without evaluating
/// either side.
pub fn special_witness(bounded: &SequencePrefix, horizon: u64, limits: &Limits) -> Result<Witness> {
    if bounded.kind() != PrefixKind::CoeffBounded {
        return Err(Error::InvariantViolation {
            index: 0,
            message: format!("expected a coefficient-bounded prefix, got {}", bounded.kind().name()),
        });
    }
    let betas = bounded.terms();
    let two = Natural::from(2u32);
    let start = numeral::from_ordinal(&betas[0], &two)?;
    let count = usize::try_from(horizon).unwrap_or(usize::MAX).min(betas.len());
    let trace = goodstein::run_from(
        start.clone(),
        &BaseSchedule::special(),
        count.saturating_sub(1) as u64,
        limits.expansion_cap,
    )?;
    if let Some(err) = &trace.truncated {
        return Err(err.clone().into());
    }
    let records: Vec<DominationRecord> = (0..count)
        .map(|k| {
            let base = Natural::from(k as u64 + 2);
            let m = match trace.numeral(k) {
                Some(m) => m.clone(),
                // The run stopped at zero; zero stays zero.
                None => Numeral::zero(base.clone()).expect("base ≥ 2"),
            };
            let image = numeral::to_ordinal(&m);
            let beta = &betas[k];
            let verdict = if ordinal::max_coefficient(beta) >= base {
                Verdict::PreconditionViolated
            } else if ordinal::compare(&image, beta) != Ordering::Less {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            DominationRecord {
                index: k,
                base,
                target: beta.clone(),
                image,
                verdict,
            }
        })
        .collect();
    let status = match records.iter().position(|r| r.verdict != Verdict::Pass) {
        Some(first_index) => EvidenceStatus::Failed { first_index },
        None if records.is_empty() => EvidenceStatus::NoEvidence,
        None => EvidenceStatus::CertifiedUpToHorizon(records.len()),
    };
    Ok(Witness {
        start,
        trace,
        certificate: LowerBoundCertificate { records, status },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Input,
    Slow,
    Bounded,
    Witness,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Input => "input",
            Stage::Slow => "slow",
            Stage::Bounded => "bounded",
            Stage::Witness => "witness",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("stage {stage}: {source}")]
pub struct PipelineError {
    pub stage: Stage,
    pub source: Error,
}

impl PipelineError {
    /// Offending index, when the underlying error names one.
    pub fn index(&self) -> Option<usize> {
        match &self.source {
            Error::NotDescending { index, .. } | Error::InvariantViolation { index, .. } => Some(*index),
            Error::MajorantInsufficient { n, .. } => Some(*n + 1),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineBundle {
    pub input: SequencePrefix,
    pub level: GrzLevel,
    pub horizon: u64,
    pub slow: SlowOutput,
    pub bounded: BoundedOutput,
    pub witness: Witness,
    pub checks: Vec<StageCheck>,
}

impl PipelineBundle {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.witness.certificate.all_pass()
    }

    pub fn no_evidence(&self) -> bool {
        self.witness.certificate.status == EvidenceStatus::NoEvidence
    }
}

fn check(name: &'static str, failure: Option<String>) -> StageCheck {
    StageCheck {
        name,
        passed: failure.is_none(),
        detail: failure.unwrap_or_else(|| "ok".into()),
    }
}

fn descent_failure(terms: &[Ordinal]) -> Option<String> {
    terms
        .windows(2)
        .position(|p| ordinal::compare(&p[0], &p[1]) != Ordering::Greater)
        .map(|i| format!("terms {i} and {} are not strictly descending", i + 1))
}

/// Re-derives every stage invariant from the produced terms.
fn stage_checks(input: &SequencePrefix, slow: &SlowOutput, bounded: &BoundedOutput, witness: &Witness) -> Vec<StageCheck> {
    let k = slow.slowness();
    let mut checks = vec![
        check("input.descending", descent_failure(input.terms())),
        check("slow.descending", descent_failure(slow.prefix.terms())),
        check(
            "slow.length_bound",
            first_slowness_violation(slow.prefix.terms(), k).map(|j| format!("|alpha_{j}| > {k}*({j}+1)")),
        ),
        check("bounded.descending", descent_failure(bounded.prefix.terms())),
        check(
            "bounded.coefficient_bound",
            first_coefficient_violation(bounded.prefix.terms()).map(|r| format!("ko(beta_{r}) > {r}+1")),
        ),
        check(
            "bounded.leading_coefficients_one",
            bounded.prefix.terms()[..bounded.k as usize]
                .iter()
                .position(|t| !ordinal::max_coefficient(t).is_one())
                .map(|j| format!("ko(beta_{j}) != 1")),
        ),
    ];
    let certificate = &witness.certificate;
    checks.push(check(
        "witness.lower_bound",
        certificate
            .records
            .iter()
            .find(|r| r.verdict != Verdict::Pass)
            .map(|r| format!("index {}: {}", r.index, r.verdict.as_str())),
    ));
    checks.push(check(
        "witness.nonzero",
        certificate
            .records
            .iter()
            .find(|r| r.image.is_zero() && !r.target.is_zero())
            .map(|r| format!("m_{} = 0 while beta_{} != 0", r.index, r.index)),
    ));
    checks
}

/// Chains the three stages, stopping at the first stage that rejects its input.
pub fn full_pipeline(
    betas: Vec<Ordinal>,
    level: GrzLevel,
    horizon: u64,
    limits: &Limits,
) -> Result<PipelineBundle, PipelineError> {
    let at = |stage| move |source| PipelineError { stage, source };
    let input = SequencePrefix::raw(betas).map_err(at(Stage::Input))?;
    let slow = slow_transform(&input, level, limits).map_err(at(Stage::Slow))?;
    let bounded = coeff_bound_transform(&slow.prefix).map_err(at(Stage::Bounded))?;
    let witness = special_witness(&bounded.prefix, horizon, limits).map_err(at(Stage::Witness))?;
    let checks = stage_checks(&input, &slow, &bounded, &witness);
    Ok(PipelineBundle {
        input,
        level,
        horizon,
        slow,
        bounded,
        witness,
        checks,
    })
}
