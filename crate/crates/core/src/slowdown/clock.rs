//! Ordinal-valued descent clocks.
//!
//! A clock at level `l` is a function `g(n, m) < ω^{l+1}` that strictly
//! decreases in `m` while `m < f_l(n)`, with `|g(n, m)|` linear in `n + m`.
//!
//! Level 0 is `g(n, m) = (n + 2) ∸ m`. Level `l + 1` splits `m < f_{l+1}(n)`
//! into blocks of sizes `f_l(n), f_l²(n), …`: if
//! `m = f_l(n) + … + f_lⁱ(n) + j` with `i < n` and `j < f_l^{i+1}(n)`, then
//! `g'(n, m) = ω^{l+1}·(n − i) + g(f_lⁱ(n), j)`; past the diagonal `g'` is 0.

use num_traits::Zero;
use serde::Serialize;

use super::grz::{self, GrzLevel};
use crate::error::ResourceError;
use crate::ordinal::{self, Monomial, Ordinal};
use crate::Natural;

/// Sampled ranges never go past this many values of `m` per `n`.
const SAMPLE_DIAGONAL_CAP: u64 = 4096;
const SAMPLE_MAX_N: u64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentClock {
    pub level: GrzLevel,
    /// `g` maps into `ω^degree`.
    pub degree: u32,
    /// Least `K` with `|g(n, m)| ≤ K·(n + m + 1)` on the sampled range.
    pub slowness: u64,
    /// The sampled range is `n ≤ sample_max_n`, `m ≤ f_l(n)`.
    pub sample_max_n: u64,
}

/// Builds the clock for `level` and calibrates its slowness constant.
pub fn build_clock(level: GrzLevel, guard_bits: u64) -> Result<DescentClock, ResourceError> {
    // The diagonal at 2 is the first value that grows with the level.
    grz::grz_eval(level, &Natural::from(2u32), guard_bits)?;
    let mut clock = DescentClock {
        level,
        degree: level.0 + 1,
        slowness: 1,
        sample_max_n: 0,
    };
    let cap = Natural::from(SAMPLE_DIAGONAL_CAP);
    let mut slowness = 1u64;
    let mut max_n = 0;
    for n in 0..=SAMPLE_MAX_N {
        let Some(diagonal) = grz::eval_capped(level, &Natural::from(n), &cap) else {
            break;
        };
        max_n = n;
        let diagonal = u64::try_from(&diagonal).expect("capped");
        for m in 0..=diagonal {
            let len = ordinal::length(&clock_eval(&clock, &Natural::from(n), &Natural::from(m)));
            let len = u64::try_from(&len).expect("clock lengths are small");
            slowness = slowness.max(len.div_ceil(n + m + 1));
        }
    }
    clock.slowness = slowness;
    clock.sample_max_n = max_n;
    Ok(clock)
}

/// `g(n, m)` for the clock's level.
pub fn clock_eval(clock: &DescentClock, n: &Natural, m: &Natural) -> Ordinal {
    eval_at_level(clock.level, n, m)
}

fn eval_at_level(level: GrzLevel, n: &Natural, m: &Natural) -> Ordinal {
    if level.0 == 0 {
        let top = n + 2u32;
        return if *m >= top {
            Ordinal::zero()
        } else {
            Ordinal::from_natural(top - m)
        };
    }
    let Some((i, j, start)) = decompose_block(level, n, m) else {
        return Ordinal::zero();
    };
    let inner = eval_at_level(GrzLevel(level.0 - 1), &start, &j);
    let mut monomials = vec![Monomial::new(Ordinal::from_u64(u64::from(level.0)), n - &i)];
    monomials.extend(inner.into_monomials());
    Ordinal::from_monomials(monomials).expect("inner clock value lies below ω^level")
}

/// For a level `l ≥ 1` clock and `m < f_l(n)`, the unique `(i, j)` with
/// `m = f(n) + … + fⁱ(n) + j`, `i < n`, `j < f^{i+1}(n)`, where `f = f_{l−1}`.
pub fn clock_decompose(level: GrzLevel, n: &Natural, m: &Natural) -> Option<(Natural, Natural)> {
    decompose_block(level, n, m).map(|(i, j, _)| (i, j))
}

/// Returns `(i, j, fⁱ(n))`.
fn decompose_block(level: GrzLevel, n: &Natural, m: &Natural) -> Option<(Natural, Natural, Natural)> {
    assert!(level.0 >= 1, "level 0 has no blocks");
    let inner = GrzLevel(level.0 - 1);
    if n.is_zero() {
        return None;
    }
    // m < f_l(n) = fⁿ(n)?
    if grz::iterate_capped(inner, n, n, m).is_some() {
        return None;
    }
    let mut offset = Natural::zero();
    let mut current = n.clone();
    let mut i = Natural::zero();
    loop {
        let room = m - &offset;
        // Block i has size f^{i+1}(n) = f(current); m lies in it iff room < size.
        match grz::eval_capped(inner, &current, &room) {
            Some(block) => {
                offset += &block;
                current = block;
                i += 1u32;
                debug_assert!(i < *n, "m < fⁿ(n) bounds the block index");
            }
            None => return Some((i, room, current)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GUARD: u64 = 1 << 16;

    fn nat(n: u64) -> Natural {
        Natural::from(n)
    }

    fn ord(s: &str) -> Ordinal {
        Ordinal::parse(s).unwrap()
    }

    #[test]
    fn level_zero_formula() {
        let c = build_clock(GrzLevel(0), GUARD).unwrap();
        assert_eq!(c.degree, 1);
        assert_eq!(clock_eval(&c, &nat(3), &nat(2)), ord("3"));
        assert_eq!(clock_eval(&c, &nat(3), &nat(5)), ord("0"));
        assert_eq!(clock_eval(&c, &nat(3), &nat(9)), ord("0"));
    }

    #[test]
    fn level_one_unfolding() {
        let c = build_clock(GrzLevel(1), GUARD).unwrap();
        assert_eq!(c.degree, 2);
        assert_eq!(clock_eval(&c, &nat(2), &nat(0)), ord("w*2 + 4"));
        assert_eq!(clock_eval(&c, &nat(2), &nat(1)), ord("w*2 + 3"));
        assert_eq!(clock_eval(&c, &nat(2), &nat(2)), ord("w*2 + 2"));
        assert_eq!(clock_eval(&c, &nat(2), &nat(3)), ord("w + 5"));
        assert_eq!(clock_eval(&c, &nat(2), &nat(4)), ord("0"));
    }

    #[test]
    fn zero_argument_is_zero_above_level_zero() {
        for level in 1..=3 {
            let c = build_clock(GrzLevel(level), GUARD).unwrap();
            for m in 0..20 {
                assert!(clock_eval(&c, &nat(0), &nat(m)).is_zero());
            }
        }
    }

    /// Exhaustive scan over every candidate block index.
    fn scan_pairs(level: u32, n: u64, m: u64) -> Vec<(u64, u64)> {
        let f = |x: u64| -> u64 {
            u64::try_from(&grz::grz_eval(GrzLevel(level - 1), &nat(x), GUARD).unwrap()).unwrap()
        };
        let mut out = Vec::new();
        let mut prefix = 0u64;
        let mut iterate = n;
        for i in 0..n {
            let next = f(iterate);
            if m >= prefix && m - prefix < next {
                out.push((i, m - prefix));
            }
            prefix += next;
            iterate = next;
        }
        out
    }

    #[test]
    fn block_decomposition_is_unique() {
        for level in 1..=2u32 {
            for n in 0..=6u64 {
                let diagonal =
                    u64::try_from(&grz::grz_eval(GrzLevel(level), &nat(n), GUARD).unwrap()).unwrap();
                for m in 0..diagonal {
                    let pairs = scan_pairs(level, n, m);
                    assert_eq!(pairs.len(), 1, "level {level} n {n} m {m}");
                    let (i, j) = clock_decompose(GrzLevel(level), &nat(n), &nat(m)).unwrap();
                    assert_eq!((i, j), (nat(pairs[0].0), nat(pairs[0].1)));
                }
                assert!(clock_decompose(GrzLevel(level), &nat(n), &nat(diagonal)).is_none());
            }
        }
    }

    #[test]
    fn descent_and_slowness_on_sample() {
        for level in 0..=2u32 {
            let c = build_clock(GrzLevel(level), GUARD).unwrap();
            assert_eq!(c.sample_max_n, 8);
            for n in 0..=8u64 {
                let diagonal =
                    u64::try_from(&grz::grz_eval(GrzLevel(level), &nat(n), GUARD).unwrap()).unwrap();
                for m in 0..=diagonal {
                    let here = clock_eval(&c, &nat(n), &nat(m));
                    if m < diagonal {
                        let next = clock_eval(&c, &nat(n), &nat(m + 1));
                        assert!(here > next, "level {level} n {n} m {m}: {here} vs {next}");
                    }
                    assert!(ordinal::length(&here) <= nat(c.slowness * (n + m + 1)));
                    assert!(here < Ordinal::omega_power(Ordinal::from_u64(u64::from(c.degree))));
                }
            }
        }
    }

    #[test]
    fn higher_levels_shrink_the_sample() {
        let c = build_clock(GrzLevel(3), GUARD).unwrap();
        assert_eq!(c.sample_max_n, 2);
        assert!(matches!(
            build_clock(GrzLevel(4), GUARD),
            Err(ResourceError::Magnitude { .. })
        ));
    }
}
