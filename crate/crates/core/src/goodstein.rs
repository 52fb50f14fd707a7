//! Goodstein sequences over a base schedule.
//!
//! Given a non-decreasing schedule `f` with `f(0) ≥ 2`, the sequence starts at
//! `m₀ = m` written in base `f(0)` and continues with
//! `m_{i+1} = S_{f(i)}^{f(i+1)}(m_i) ∸ 1`. The special sequence uses
//! `f(i) = i + 2`. Values are kept as [`Numeral`] trees; the [`bignum`]
//! submodule recomputes steps with plain integer arithmetic as a cross-check.

use std::cmp::Ordering;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, ResourceError, Result, ScheduleError};
use crate::numeral::{self, Numeral};
use crate::ordinal::{self, Ordinal};
use crate::Natural;

/// A base function `f: ℕ → ℕ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseSchedule {
    /// `f(i) = i + c`; `Shift(2)` gives the special sequences.
    Shift(Natural),
    /// `f(i) = b`.
    Constant(Natural),
    /// A finite table; querying past its end is an error.
    Table(Vec<Natural>),
    /// `f(i) = outer(inner(i))`.
    Composed {
        outer: Box<BaseSchedule>,
        inner: Box<BaseSchedule>,
    },
}

impl BaseSchedule {
    pub fn special() -> Self {
        BaseSchedule::Shift(Natural::from(2u32))
    }

    pub fn at(&self, index: u64) -> Result<Natural, ScheduleError> {
        match self {
            BaseSchedule::Shift(c) => Ok(c + index),
            BaseSchedule::Constant(b) => Ok(b.clone()),
            BaseSchedule::Table(values) => usize::try_from(index)
                .ok()
                .and_then(|i| values.get(i))
                .cloned()
                .ok_or(ScheduleError::Exhausted {
                    index,
                    len: values.len(),
                }),
            BaseSchedule::Composed { outer, inner } => {
                let mid = inner.at(index)?;
                let mid = mid.to_u64().ok_or(ScheduleError::Exhausted {
                    index,
                    len: usize::MAX,
                })?;
                outer.at(mid)
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            BaseSchedule::Shift(_) => "shift",
            BaseSchedule::Constant(_) => "constant",
            BaseSchedule::Table(_) => "table",
            BaseSchedule::Composed { .. } => "composed",
        }
    }
}

/// The record of a run. `steps[i]` is `m_i`, written in base `f(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodsteinTrace {
    pub schedule: BaseSchedule,
    pub steps: Vec<Numeral>,
    pub terminated: bool,
    pub termination_index: Option<u64>,
    /// Set when a resource guard stopped the run early.
    pub truncated: Option<ResourceError>,
}

impl GoodsteinTrace {
    /// `m₀`.
    pub fn start(&self) -> &Numeral {
        &self.steps[0]
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn numeral(&self, index: usize) -> Option<&Numeral> {
        self.steps.get(index)
    }

    /// Decimal values of every step that fits the budget.
    pub fn values(&self, bit_budget: u64) -> Vec<Option<Natural>> {
        self.steps.iter().map(|h| h.value_within(bit_budget)).collect()
    }
}

/// One step of the special sequence: `S_{i+2}^{i+3}(m) ∸ 1`.
pub fn special_step(m: &Numeral, index: u64, expansion_cap: u64) -> Result<Numeral> {
    let expected = Natural::from(index) + 2u32;
    if *m.base() != expected {
        return Err(Error::BaseMismatch {
            left: m.base().clone(),
            right: expected,
        });
    }
    let shifted = numeral::base_shift(m, &(expected + 1u32))?;
    Ok(numeral::decrement(&shifted, expansion_cap)?)
}

pub fn run_special(m: &Natural, max_steps: u64, expansion_cap: u64) -> Result<GoodsteinTrace> {
    run_general(m, &BaseSchedule::special(), max_steps, expansion_cap)
}

pub fn run_general(
    m: &Natural,
    schedule: &BaseSchedule,
    max_steps: u64,
    expansion_cap: u64,
) -> Result<GoodsteinTrace> {
    let base = schedule.at(0)?;
    if base < Natural::from(2u32) {
        return Err(ScheduleError::StartBelowTwo(base).into());
    }
    let start = numeral::decompose(m, &base)?;
    run_from(start, schedule, max_steps, expansion_cap)
}

/// Runs a sequence from an explicit starting numeral, whose base must be `f(0)`.
pub fn run_from(
    start: Numeral,
    schedule: &BaseSchedule,
    max_steps: u64,
    expansion_cap: u64,
) -> Result<GoodsteinTrace> {
    let first_base = schedule.at(0)?;
    if first_base < Natural::from(2u32) {
        return Err(ScheduleError::StartBelowTwo(first_base).into());
    }
    if *start.base() != first_base {
        return Err(Error::BaseMismatch {
            left: start.base().clone(),
            right: first_base,
        });
    }
    let mut trace = GoodsteinTrace {
        schedule: schedule.clone(),
        steps: vec![start],
        terminated: false,
        termination_index: None,
        truncated: None,
    };
    for i in 0..max_steps {
        let current = trace.steps.last().expect("trace is never empty");
        if current.is_zero() {
            break;
        }
        let next_base = schedule.at(i + 1)?;
        if next_base < *current.base() {
            return Err(ScheduleError::Decreasing {
                index: i + 1,
                previous: current.base().clone(),
                next: next_base,
            }
            .into());
        }
        let shifted = numeral::base_shift(current, &next_base)?;
        match numeral::decrement(&shifted, expansion_cap) {
            Ok(next) => trace.steps.push(next),
            Err(err) => {
                trace.truncated = Some(err);
                break;
            }
        }
    }
    if let Some(last) = trace.steps.last() {
        if last.is_zero() {
            trace.terminated = true;
            trace.termination_index = Some(trace.steps.len() as u64 - 1);
        }
    }
    Ok(trace)
}

/// `f_good(m)`: the least `i` with `m_i = 0` in the special sequence, if it is
/// at most `cap`.
pub fn goodstein_length(m: &Natural, cap: u64, expansion_cap: u64) -> Result<u64> {
    let trace = run_special(m, cap, expansion_cap)?;
    if let Some(err) = trace.truncated {
        return Err(err.into());
    }
    trace
        .termination_index
        .ok_or_else(|| ResourceError::StepCap { cap }.into())
}

/// Outcome of checking that ordinal images strictly fall along a trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentReport {
    pub pairs_checked: usize,
    /// First index `i` with `m_i ≠ 0` and `T*(m_i) ≤ T*(m_{i+1})`.
    pub first_failure: Option<usize>,
}

impl DescentReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// While `m_i ≠ 0`, `T*_{f(i)}(m_i) > T*_{f(i+1)}(m_{i+1})`.
pub fn check_descent(trace: &GoodsteinTrace) -> DescentReport {
    let mut pairs_checked = 0;
    for (i, pair) in trace.steps.windows(2).enumerate() {
        if pair[0].is_zero() {
            if !pair[1].is_zero() {
                return DescentReport {
                    pairs_checked,
                    first_failure: Some(i),
                };
            }
            continue;
        }
        pairs_checked += 1;
        let before = numeral::to_ordinal(&pair[0]);
        let after = numeral::to_ordinal(&pair[1]);
        if ordinal::compare(&before, &after) != Ordering::Greater {
            return DescentReport {
                pairs_checked,
                first_failure: Some(i),
            };
        }
    }
    DescentReport {
        pairs_checked,
        first_failure: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// `ko(α_i) ≥ f(i)`, so the comparison would say nothing about `T_{f(i)} α_i`.
    PreconditionViolated,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::PreconditionViolated => "precondition-violated",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationRecord {
    pub index: usize,
    pub base: Natural,
    pub target: Ordinal,
    pub image: Ordinal,
    pub verdict: Verdict,
}

/// Per-index evidence that `T_{f(i)} α_i ≤ m_i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DominationCertificate {
    pub records: Vec<DominationRecord>,
}

impl DominationCertificate {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.verdict == Verdict::Pass)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.records
            .iter()
            .find(|r| r.verdict != Verdict::Pass)
            .map(|r| r.index)
    }
}

/// Compares each `α_i` with the ordinal image of `m_i`, over the common prefix
/// of the trace and the sequence. With `ko(α_i) < f(i)` the ordinal order
/// coincides with the numeric order of `T_{f(i)} α_i` and `m_i`.
pub fn verify_domination(trace: &GoodsteinTrace, alphas: &[Ordinal]) -> DominationCertificate {
    let records = trace
        .steps
        .iter()
        .zip(alphas)
        .enumerate()
        .map(|(index, (m, alpha))| {
            let image = numeral::to_ordinal(m);
            let verdict = if ordinal::max_coefficient(alpha) >= *m.base() {
                Verdict::PreconditionViolated
            } else if ordinal::compare(&image, alpha) != Ordering::Less {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            DominationRecord {
                index,
                base: m.base().clone(),
                target: alpha.clone(),
                image,
                verdict,
            }
        })
        .collect();
    DominationCertificate { records }
}

pub(crate) fn check_strictly_descending(terms: &[Ordinal]) -> Result<()> {
    for (index, pair) in terms.windows(2).enumerate() {
        if ordinal::compare(&pair[0], &pair[1]) != Ordering::Greater {
            return Err(Error::NotDescending {
                index,
                first: pair[0].render(),
                second: pair[1].render(),
            });
        }
    }
    Ok(())
}

/// The schedule `f(i) = max{ko(α₀),…,ko(α_i)} + 1`, raised to 2 where needed.
pub fn domination_schedule(alphas: &[Ordinal]) -> Vec<Natural> {
    let two = Natural::from(2u32);
    let mut running = Natural::zero();
    alphas
        .iter()
        .map(|alpha| {
            running = running.clone().max(ordinal::max_coefficient(alpha));
            (&running + 1u32).max(two.clone())
        })
        .collect()
}

/// Builds the Goodstein sequence that dominates a strictly descending
/// sequence of ordinals, and certifies the domination at every index.
pub fn ordinals_to_goodstein(
    alphas: &[Ordinal],
    expansion_cap: u64,
) -> Result<(BaseSchedule, GoodsteinTrace, DominationCertificate)> {
    let first = alphas.first().ok_or(Error::EmptyInput)?;
    check_strictly_descending(alphas)?;
    let table = domination_schedule(alphas);
    let schedule = BaseSchedule::Table(table.clone());
    let start = numeral::from_ordinal(first, &table[0])?;
    let trace = run_from(start, &schedule, alphas.len() as u64 - 1, expansion_cap)?;
    if let Some(err) = &trace.truncated {
        return Err(err.clone().into());
    }
    let certificate = verify_domination(&trace, alphas);
    Ok((schedule, trace, certificate))
}

/// Plain integer arithmetic for the same steps, independent of the trees.
pub mod bignum {
    use num_traits::{One, Pow, ToPrimitive, Zero};

    use crate::error::ResourceError;
    use crate::numeral::digits_le;
    use crate::Natural;

    /// `S_b^c(n)` computed numerically, digit by digit, with the budget
    /// applied to every intermediate power.
    pub fn base_change(
        n: &Natural,
        from: &Natural,
        to: &Natural,
        bit_budget: u64,
    ) -> Result<Natural, ResourceError> {
        let over = ResourceError::BitBudget { budget: bit_budget };
        let mut total = Natural::zero();
        for (pos, digit) in digits_le(n, from).into_iter().enumerate() {
            if digit.is_zero() {
                continue;
            }
            let exponent = base_change(&Natural::from(pos), from, to, bit_budget)?;
            let exponent = exponent.to_u64().ok_or(over.clone())?;
            if exponent.saturating_mul(to.bits() - 1) >= bit_budget {
                return Err(over);
            }
            total += Pow::pow(to, exponent) * digit;
            if total.bits() > bit_budget {
                return Err(over);
            }
        }
        Ok(total)
    }

    /// `S_b^c(n) ∸ 1`.
    pub fn step(
        n: &Natural,
        from: &Natural,
        to: &Natural,
        bit_budget: u64,
    ) -> Result<Natural, ResourceError> {
        let shifted = base_change(n, from, to, bit_budget)?;
        Ok(if shifted.is_zero() {
            shifted
        } else {
            shifted - Natural::one()
        })
    }
}
