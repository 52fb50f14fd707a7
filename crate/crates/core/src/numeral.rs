//! Complete base-b representations of natural numbers.
//!
//! A [`Numeral`] stores its base and a tree with the same layout as a Cantor
//! normal form: `b^e₁·d₁ + … + b^eᵣ·dᵣ` with strictly decreasing exponents,
//! each exponent again written in base `b`, and digits `1 ≤ dᵢ < b`. The tree
//! is stored as an [`Ordinal`] shape whose coefficients are the digits, so the
//! translation to and from ordinals is a relabelling of the base and ω.
//!
//! Values such as `3^(3^27)` are never materialised unless asked for with a bit
//! budget; base change and the symbolic decrement work on the tree.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{Pow, ToPrimitive, Zero};

use crate::error::{Error, ResourceError, Result};
use crate::ordinal::{self, Monomial, Ordinal};
use crate::{syntax, Natural};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Numeral {
    base: Natural,
    shape: Ordinal,
}

impl Numeral {
    pub fn zero(base: Natural) -> Result<Self> {
        check_base(&base)?;
        Ok(Numeral {
            base,
            shape: Ordinal::zero(),
        })
    }

    pub fn base(&self) -> &Natural {
        &self.base
    }

    /// The tree with digits as coefficients. Equal to [`to_ordinal`].
    pub fn shape(&self) -> &Ordinal {
        &self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.shape.is_zero()
    }

    pub fn monomial_count(&self) -> usize {
        self.shape.monomials().len()
    }

    /// Parses the `b`-grammar, e.g. `"b^(b^b) + b^(b+1)*2 + b*2 + 2"`.
    pub fn parse(base: Natural, text: &str) -> Result<Self> {
        check_base(&base)?;
        let shape = syntax::parse_term(text, b'b')?;
        let top = ordinal::max_coefficient(&shape);
        if top >= base {
            return Err(Error::DigitTooLarge { digit: top, base });
        }
        Ok(Numeral { base, shape })
    }

    pub fn render(&self) -> String {
        syntax::render_term(&self.shape, 'b')
    }

    /// Exact value, or `None` when it needs more than `bit_budget` bits.
    pub fn value_within(&self, bit_budget: u64) -> Option<Natural> {
        evaluate(self, bit_budget).ok()
    }
}

impl fmt::Display for Numeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Numeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Numeral(base {}: {})", self.base, self.render())
    }
}

fn check_base(base: &Natural) -> Result<()> {
    if *base < Natural::from(2u32) {
        return Err(Error::BaseTooSmall(base.clone()));
    }
    Ok(())
}

/// Complete base-`b` representation of `m`.
pub fn decompose(m: &Natural, base: &Natural) -> Result<Numeral> {
    check_base(base)?;
    Ok(Numeral {
        base: base.clone(),
        shape: decompose_shape(m, base),
    })
}

fn decompose_shape(m: &Natural, base: &Natural) -> Ordinal {
    if m.is_zero() {
        return Ordinal::zero();
    }
    let digits = digits_le(m, base);
    let monomials = digits
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, d)| !d.is_zero())
        .map(|(pos, d)| Monomial::new(decompose_shape(&Natural::from(pos), base), d.clone()))
        .collect();
    Ordinal::from_monomials_unchecked(monomials)
}

/// Little-endian digits of `m` in base `base`.
pub(crate) fn digits_le(m: &Natural, base: &Natural) -> Vec<Natural> {
    if let Some(small) = base.to_u32().filter(|b| *b <= 256) {
        return m.to_radix_le(small).into_iter().map(Natural::from).collect();
    }
    let mut digits = Vec::new();
    let mut rest = m.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(base);
        digits.push(r);
        rest = q;
    }
    digits
}

/// Numeric value of `h`. Fails when the value has more than `bit_budget`
/// bits; the check runs on exponent sizes before any large power is built.
pub fn evaluate(h: &Numeral, bit_budget: u64) -> Result<Natural, ResourceError> {
    let value = evaluate_shape(&h.shape, &h.base, bit_budget)
        .ok_or(ResourceError::BitBudget { budget: bit_budget })?;
    Ok(value)
}

fn evaluate_shape(shape: &Ordinal, base: &Natural, bit_budget: u64) -> Option<Natural> {
    // b^e needs more than e·⌊log₂ b⌋ bits, so an exponent can only matter if it
    // fits in about log₂(budget) bits.
    let log2_floor = base.bits() - 1;
    let exponent_budget = u64::from(u64::BITS - bit_budget.leading_zeros()) + 1;
    let mut total = Natural::zero();
    for m in shape.monomials() {
        let e = evaluate_shape(m.exponent(), base, exponent_budget)?;
        let e = e.to_u64()?;
        if e.checked_mul(log2_floor)?.checked_add(1)? > bit_budget {
            return None;
        }
        total += Pow::pow(base, e) * m.coefficient();
        if total.bits() > bit_budget {
            return None;
        }
    }
    Some(total)
}

/// `S_b^c`: the same representation read in base `c ≥ b`.
pub fn base_shift(h: &Numeral, c: &Natural) -> Result<Numeral> {
    if c < &h.base {
        return Err(Error::ShiftBelowBase {
            from: h.base.clone(),
            to: c.clone(),
        });
    }
    Ok(Numeral {
        base: c.clone(),
        shape: h.shape.clone(),
    })
}

/// `T*_b`: replace the base by ω.
pub fn to_ordinal(h: &Numeral) -> Ordinal {
    h.shape.clone()
}

/// `T_b`: replace ω by `b`. Requires `ko(α) < b`.
pub fn from_ordinal(alpha: &Ordinal, base: &Natural) -> Result<Numeral> {
    check_base(base)?;
    let top = ordinal::max_coefficient(alpha);
    if top >= *base {
        return Err(Error::CoefficientTooLarge {
            max_coefficient: top,
            base: base.clone(),
        });
    }
    Ok(Numeral {
        base: base.clone(),
        shape: alpha.clone(),
    })
}

/// Order of the values, decided on the trees alone.
pub fn compare_numerals(h1: &Numeral, h2: &Numeral) -> Result<Ordering> {
    if h1.base != h2.base {
        return Err(Error::BaseMismatch {
            left: h1.base.clone(),
            right: h2.base.clone(),
        });
    }
    Ok(ordinal::compare(&h1.shape, &h2.shape))
}

/// `value(h) ∸ 1`, computed on the tree.
///
/// The least monomial `b^e·k` becomes `b^e·(k−1) + Σ_{i<e} b^i·(b−1)`; the
/// expansion has `e` monomials, so `e` must not exceed `expansion_cap`.
pub fn decrement(h: &Numeral, expansion_cap: u64) -> Result<Numeral, ResourceError> {
    let mut monomials = h.shape.clone().into_monomials();
    let Some(last) = monomials.pop() else {
        return Ok(h.clone());
    };
    let lowered = last.coefficient() - 1u32;
    if last.exponent().is_zero() {
        if !lowered.is_zero() {
            monomials.push(Monomial::new(Ordinal::zero(), lowered));
        }
    } else {
        let cap_bits = u64::from(u64::BITS - expansion_cap.leading_zeros()) + 1;
        let too_big = || ResourceError::ExpansionCap {
            exponent: syntax::render_term(last.exponent(), 'b'),
            cap: expansion_cap,
        };
        let width = evaluate_shape(last.exponent(), &h.base, cap_bits)
            .and_then(|e| e.to_u64())
            .filter(|e| *e <= expansion_cap)
            .ok_or_else(too_big)?;
        let top_digit = &h.base - 1u32;
        if !lowered.is_zero() {
            monomials.push(Monomial::new(last.exponent().clone(), lowered));
        }
        monomials.reserve(width as usize);
        for pos in (0..width).rev() {
            monomials.push(Monomial::new(
                decompose_shape(&BigUint::from(pos), &h.base),
                top_digit.clone(),
            ));
        }
    }
    Ok(Numeral {
        base: h.base.clone(),
        shape: Ordinal::from_monomials_unchecked(monomials),
    })
}

pub fn is_zero(h: &Numeral) -> bool {
    h.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(n: u64) -> Natural {
        Natural::from(n)
    }

    fn ord(s: &str) -> Ordinal {
        Ordinal::parse(s).unwrap()
    }

    fn num(base: u64, s: &str) -> Numeral {
        Numeral::parse(nat(base), s).unwrap()
    }

    #[test]
    fn decompose_worked_examples() {
        let h = decompose(&nat(7_625_597_485_157), &nat(3)).unwrap();
        assert_eq!(h.render(), "b^(b^b) + b^(b+1)*2 + b*2 + 2");
        assert!(decompose(&nat(0), &nat(5)).unwrap().is_zero());
        assert_eq!(decompose(&nat(34), &nat(3)).unwrap().render(), "b^b + b*2 + 1");
        assert!(matches!(decompose(&nat(3), &nat(1)), Err(Error::BaseTooSmall(_))));
    }

    #[test]
    fn evaluate_examples() {
        let h = decompose(&nat(265), &nat(4)).unwrap();
        assert_eq!(evaluate(&h, 1_000_000).unwrap(), nat(265));
        let h = num(3, "b^(b^b) + b^(b+1)*2 + b*2 + 2");
        assert_eq!(evaluate(&h, 1_000_000).unwrap(), nat(7_625_597_485_157));
        let huge = num(3, "b^(b^(b^b))");
        assert_eq!(
            evaluate(&huge, 1_000_000),
            Err(ResourceError::BitBudget { budget: 1_000_000 })
        );
    }

    #[test]
    fn evaluate_budget_is_exact_bit_length() {
        // 2^10 has 11 bits.
        let h = num(2, "b^(b^(b+1)+b)");
        assert_eq!(evaluate(&h, 11).unwrap(), nat(1024));
        assert!(evaluate(&h, 10).is_err());
    }

    #[test]
    fn base_shift_examples() {
        let h = decompose(&nat(34), &nat(3)).unwrap();
        let shifted = base_shift(&h, &nat(4)).unwrap();
        assert_eq!(evaluate(&shifted, 64).unwrap(), nat(265));
        assert_eq!(base_shift(&h, &nat(3)).unwrap(), h);
        let zero = decompose(&nat(0), &nat(2)).unwrap();
        assert!(base_shift(&zero, &nat(7)).unwrap().is_zero());
        assert!(matches!(base_shift(&h, &nat(2)), Err(Error::ShiftBelowBase { .. })));
    }

    #[test]
    fn to_ordinal_examples() {
        let t = to_ordinal(&decompose(&nat(106), &nat(3)).unwrap());
        assert_eq!(t, ord("w^(w+1) + w^2*2 + w*2 + 1"));
        let t34 = to_ordinal(&decompose(&nat(34), &nat(3)).unwrap());
        let t265 = to_ordinal(&decompose(&nat(265), &nat(4)).unwrap());
        assert_eq!(t34, ord("w^w + w*2 + 1"));
        assert_eq!(t34, t265);
        assert!(to_ordinal(&decompose(&nat(0), &nat(3)).unwrap()).is_zero());
    }

    #[test]
    fn from_ordinal_examples() {
        let h = from_ordinal(&ord("w^(w+1) + w^2*2 + w*2 + 1"), &nat(3)).unwrap();
        assert_eq!(evaluate(&h, 64).unwrap(), nat(106));
        assert!(from_ordinal(&Ordinal::zero(), &nat(2)).unwrap().is_zero());
        assert!(matches!(
            from_ordinal(&ord("w*2"), &nat(2)),
            Err(Error::CoefficientTooLarge { .. })
        ));
    }

    #[test]
    fn compare_numeral_examples() {
        let a = decompose(&nat(34), &nat(3)).unwrap();
        let b = decompose(&nat(106), &nat(3)).unwrap();
        assert_eq!(compare_numerals(&a, &a).unwrap(), Ordering::Equal);
        assert_eq!(compare_numerals(&a, &b).unwrap(), Ordering::Less);
        assert_eq!(
            compare_numerals(&num(3, "b^(b^b)"), &num(3, "b^(b^b) + 1")).unwrap(),
            Ordering::Less
        );
        let c = decompose(&nat(34), &nat(4)).unwrap();
        assert!(matches!(compare_numerals(&a, &c), Err(Error::BaseMismatch { .. })));
    }

    #[test]
    fn decrement_examples() {
        let h = decrement(&decompose(&nat(4), &nat(3)).unwrap(), 1 << 20).unwrap();
        assert_eq!(h.render(), "b");
        // 3^27 + 27 - 1 = 3^27 + 26 and 26 = 2·9 + 2·3 + 2.
        let h = decrement(&num(3, "b^(b^b) + b^b"), 1 << 20).unwrap();
        assert_eq!(h.render(), "b^(b^b) + b^2*2 + b*2 + 2");
        assert_eq!(
            evaluate(&h, 128).unwrap(),
            nat(3u64.pow(27) + 26)
        );
        assert!(matches!(
            decrement(&num(2, "b^(b^b)"), 3),
            Err(ResourceError::ExpansionCap { cap: 3, .. })
        ));
        let zero = decompose(&nat(0), &nat(7)).unwrap();
        assert!(decrement(&zero, 1).unwrap().is_zero());
    }

    #[test]
    fn is_zero_examples() {
        assert!(decompose(&nat(0), &nat(2)).unwrap().is_zero());
        assert!(!decompose(&nat(1), &nat(2)).unwrap().is_zero());
        let mut h = decompose(&nat(4), &nat(5)).unwrap();
        for _ in 0..4 {
            assert!(!h.is_zero());
            h = decrement(&h, 16).unwrap();
        }
        assert!(is_zero(&h));
    }

    #[test]
    fn parse_rejects_digit_at_base() {
        assert!(matches!(
            Numeral::parse(nat(3), "b*3"),
            Err(Error::DigitTooLarge { .. })
        ));
        assert!(matches!(Numeral::parse(nat(1), "1"), Err(Error::BaseTooSmall(_))));
    }

    #[test]
    fn decompose_agrees_with_evaluate_on_small_range() {
        for base in 2..=7u64 {
            for m in 0..2000u64 {
                let h = decompose(&nat(m), &nat(base)).unwrap();
                assert_eq!(evaluate(&h, 64).unwrap(), nat(m));
                assert!(ordinal::max_coefficient(h.shape()) < nat(base));
            }
        }
    }
}
