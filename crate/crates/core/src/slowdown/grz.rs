//! The Grzegorczyk hierarchy `f₀(n) = n + 1`, `f_{l+1}(n) = f_lⁿ(n)`.
//!
//! Iterating the successor `k` times is `x + k` and iterating doubling `k`
//! times is `x·2^k`, so levels 0 and 1 are iterated in closed form; higher
//! levels unfold the recurrence one application at a time. Every value is
//! checked against a magnitude guard in bits.

use std::fmt;

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::ResourceError;
use crate::Natural;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GrzLevel(pub u32);

impl fmt::Display for GrzLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `f_l(n)`.
pub fn grz_eval(level: GrzLevel, n: &Natural, guard_bits: u64) -> Result<Natural, ResourceError> {
    match level.0 {
        0 => bounded(n + 1u32, guard_bits),
        l => grz_iterate(GrzLevel(l - 1), n, n, guard_bits),
    }
}

/// `f_l^k(x)`.
pub fn grz_iterate(
    level: GrzLevel,
    k: &Natural,
    x: &Natural,
    guard_bits: u64,
) -> Result<Natural, ResourceError> {
    let over = ResourceError::Magnitude { bits: guard_bits };
    match level.0 {
        0 => bounded(x + k, guard_bits),
        1 => {
            if x.is_zero() {
                return Ok(Natural::zero());
            }
            let shift = k.to_u64().ok_or(over.clone())?;
            if x.bits().saturating_add(shift) > guard_bits {
                return Err(over);
            }
            Ok(x << shift)
        }
        _ => {
            // f_l(0) = 0 for l ≥ 1, so zero is a fixed point.
            if x.is_zero() {
                return Ok(Natural::zero());
            }
            let mut value = x.clone();
            let mut remaining = k.clone();
            while !remaining.is_zero() {
                value = grz_eval(level, &value, guard_bits)?;
                remaining -= 1u32;
            }
            Ok(value)
        }
    }
}

fn bounded(value: Natural, guard_bits: u64) -> Result<Natural, ResourceError> {
    if value.bits() > guard_bits {
        Err(ResourceError::Magnitude { bits: guard_bits })
    } else {
        Ok(value)
    }
}

/// `f_l^k(x)` if it is at most `cap`, else `None`.
pub(crate) fn iterate_capped(level: GrzLevel, k: &Natural, x: &Natural, cap: &Natural) -> Option<Natural> {
    // Anything past the guard is larger than the cap.
    let guard = cap.bits() + 1;
    grz_iterate(level, k, x, guard).ok().filter(|v| v <= cap)
}

pub(crate) fn eval_capped(level: GrzLevel, n: &Natural, cap: &Natural) -> Option<Natural> {
    iterate_capped(level, &Natural::one(), n, cap)
}

/// A finite table of a function `ℕʳ → ℕ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    pub arity: usize,
    pub rows: Vec<(Vec<Natural>, Natural)>,
}

impl FunctionTable {
    /// Tabulates `f` on every argument tuple in `0..=max_arg`.
    pub fn tabulate(arity: usize, max_arg: u64, f: impl Fn(&[Natural]) -> Natural) -> Self {
        let mut rows = Vec::new();
        let mut args = vec![0u64; arity];
        loop {
            let nats: Vec<Natural> = args.iter().map(|&a| Natural::from(a)).collect();
            let value = f(&nats);
            rows.push((nats, value));
            // odometer
            let mut pos = 0;
            loop {
                if pos == arity {
                    return FunctionTable { arity, rows };
                }
                if args[pos] < max_arg {
                    args[pos] += 1;
                    break;
                }
                args[pos] = 0;
                pos += 1;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorizationFailure {
    pub args: Vec<Natural>,
    pub value: Natural,
    /// `None` when the bound itself blew the magnitude guard.
    pub bound: Option<Natural>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorizationReport {
    pub level: GrzLevel,
    pub checked: usize,
    pub failures: Vec<MajorizationFailure>,
}

impl MajorizationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `h(x⃗) ≤ f_l(max(2, x⃗))` on every row of the table.
pub fn majorization_check(h: &FunctionTable, level: GrzLevel, guard_bits: u64) -> MajorizationReport {
    let two = Natural::from(2u32);
    let mut failures = Vec::new();
    for (args, value) in &h.rows {
        let arg = args.iter().fold(two.clone(), |m, a| m.max(a.clone()));
        match grz_eval(level, &arg, guard_bits) {
            Ok(bound) if *value <= bound => {}
            Ok(bound) => failures.push(MajorizationFailure {
                args: args.clone(),
                value: value.clone(),
                bound: Some(bound),
            }),
            // A bound past the guard still dominates any tabulated value that
            // fits it.
            Err(_) if value.bits() <= guard_bits => {}
            Err(_) => failures.push(MajorizationFailure {
                args: args.clone(),
                value: value.clone(),
                bound: None,
            }),
        }
    }
    MajorizationReport {
        level,
        checked: h.rows.len(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GUARD: u64 = 1 << 16;

    fn nat(n: u64) -> Natural {
        Natural::from(n)
    }

    /// Literal unfolding of the recurrence with machine integers.
    fn oracle(level: u32, n: u64) -> u64 {
        if level == 0 {
            return n + 1;
        }
        let mut v = n;
        for _ in 0..n {
            v = oracle(level - 1, v);
        }
        v
    }

    #[test]
    fn eval_examples() {
        assert_eq!(grz_eval(GrzLevel(0), &nat(7), GUARD).unwrap(), nat(8));
        assert_eq!(grz_eval(GrzLevel(1), &nat(5), GUARD).unwrap(), nat(10));
        assert_eq!(grz_eval(GrzLevel(2), &nat(3), GUARD).unwrap(), nat(24));
        assert_eq!(grz_eval(GrzLevel(3), &nat(2), GUARD).unwrap(), nat(2048));
    }

    #[test]
    fn eval_matches_literal_recurrence() {
        for level in 0..=2 {
            for n in 0..=10 {
                assert_eq!(
                    grz_eval(GrzLevel(level), &nat(n), GUARD).unwrap(),
                    nat(oracle(level, n)),
                    "f_{level}({n})"
                );
            }
        }
        for n in 0..=2 {
            assert_eq!(grz_eval(GrzLevel(3), &nat(n), GUARD).unwrap(), nat(oracle(3, n)));
        }
    }

    #[test]
    fn iterate_examples() {
        assert_eq!(grz_iterate(GrzLevel(0), &nat(3), &nat(5), GUARD).unwrap(), nat(8));
        assert_eq!(grz_iterate(GrzLevel(1), &nat(2), &nat(3), GUARD).unwrap(), nat(12));
        for l in 0..4 {
            assert_eq!(grz_iterate(GrzLevel(l), &nat(0), &nat(9), GUARD).unwrap(), nat(9));
        }
        assert_eq!(grz_iterate(GrzLevel(2), &nat(2), &nat(2), GUARD).unwrap(), nat(2048));
    }

    #[test]
    fn guard_trips() {
        assert_eq!(
            grz_eval(GrzLevel(3), &nat(3), GUARD),
            Err(ResourceError::Magnitude { bits: GUARD })
        );
        assert!(grz_eval(GrzLevel(2), &nat(100), 64).is_err());
        assert!(grz_eval(GrzLevel(2), &nat(50), 64).is_ok());
    }

    #[test]
    fn capped_evaluation() {
        assert_eq!(eval_capped(GrzLevel(2), &nat(3), &nat(24)), Some(nat(24)));
        assert_eq!(eval_capped(GrzLevel(2), &nat(3), &nat(23)), None);
        assert_eq!(eval_capped(GrzLevel(5), &nat(5), &nat(1000)), None);
    }

    #[test]
    fn majorization_examples() {
        let succ = FunctionTable::tabulate(1, 20, |x| &x[0] + 1u32);
        assert!(majorization_check(&succ, GrzLevel(0), GUARD).passed());

        let sum = FunctionTable::tabulate(2, 8, |x| &x[0] + &x[1]);
        assert_eq!(sum.rows.len(), 81);
        assert!(majorization_check(&sum, GrzLevel(2), GUARD).passed());

        let pow = FunctionTable::tabulate(1, 5, |x| Natural::one() << x[0].to_u64().unwrap());
        let report = majorization_check(&pow, GrzLevel(1), GUARD);
        assert!(!report.passed());
        let failed: Vec<_> = report.failures.iter().map(|f| f.args[0].clone()).collect();
        assert_eq!(failed, vec![nat(3), nat(4), nat(5)]);
        let last = report.failures.last().unwrap();
        assert_eq!(last.value, nat(32));
        assert_eq!(last.bound, Some(nat(10)));
    }
}
