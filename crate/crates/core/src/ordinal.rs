//! Ordinals below ε₀ in complete Cantor normal form.
//!
//! An [`Ordinal`] is a list of monomials `ω^e·k` with strictly decreasing
//! exponents and coefficients `k ≥ 1`; each exponent is itself an
//! [`Ordinal`]. The empty list is `0`. Because the form is unique, structural
//! equality is ordinal equality, and [`compare`] works on the structure alone.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, ResourceError, Result};
use crate::{syntax, Natural, DEFAULT_NODE_CAP};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    monomials: Vec<Monomial>,
}

/// One summand `ω^exponent · coefficient`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exponent: Ordinal,
    coefficient: Natural,
}

impl Monomial {
    pub fn new(exponent: Ordinal, coefficient: Natural) -> Self {
        Monomial {
            exponent,
            coefficient,
        }
    }

    pub fn exponent(&self) -> &Ordinal {
        &self.exponent
    }

    pub fn coefficient(&self) -> &Natural {
        &self.coefficient
    }
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal::default()
    }

    pub fn one() -> Self {
        Ordinal::from_natural(Natural::one())
    }

    pub fn omega() -> Self {
        Ordinal::omega_power(Ordinal::one())
    }

    /// The finite ordinal `n`.
    pub fn from_natural(n: Natural) -> Self {
        if n.is_zero() {
            Ordinal::zero()
        } else {
            Ordinal {
                monomials: vec![Monomial::new(Ordinal::zero(), n)],
            }
        }
    }

    pub fn from_u64(n: u64) -> Self {
        Ordinal::from_natural(Natural::from(n))
    }

    /// `ω^exponent`.
    pub fn omega_power(exponent: Ordinal) -> Self {
        Ordinal::monomial(exponent, Natural::one())
    }

    /// `ω^exponent · coefficient`; zero when the coefficient is zero.
    pub fn monomial(exponent: Ordinal, coefficient: Natural) -> Self {
        if coefficient.is_zero() {
            return Ordinal::zero();
        }
        Ordinal {
            monomials: vec![Monomial::new(exponent, coefficient)],
        }
    }

    /// Builds a term from monomials, rejecting zero coefficients and exponents
    /// that are not strictly decreasing.
    pub fn from_monomials(monomials: Vec<Monomial>) -> Result<Self> {
        for (idx, m) in monomials.iter().enumerate() {
            if m.coefficient.is_zero() {
                return Err(Error::NonCanonical(format!("monomial {idx} has coefficient 0")));
            }
        }
        for (idx, pair) in monomials.windows(2).enumerate() {
            if compare(&pair[0].exponent, &pair[1].exponent) != Ordering::Greater {
                return Err(Error::NonCanonical(format!(
                    "exponent {} of monomial {} is not above exponent {} of monomial {}",
                    pair[0].exponent,
                    idx,
                    pair[1].exponent,
                    idx + 1
                )));
            }
        }
        Ok(Ordinal { monomials })
    }

    /// Caller guarantees canonical order.
    pub(crate) fn from_monomials_unchecked(monomials: Vec<Monomial>) -> Self {
        debug_assert!(monomials.iter().all(|m| !m.coefficient.is_zero()));
        debug_assert!(monomials
            .windows(2)
            .all(|p| compare(&p[0].exponent, &p[1].exponent) == Ordering::Greater));
        Ordinal { monomials }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub(crate) fn into_monomials(self) -> Vec<Monomial> {
        self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.monomials.iter().all(|m| m.exponent.is_zero())
    }

    /// The value of a finite ordinal, `None` for infinite ones.
    pub fn as_natural(&self) -> Option<Natural> {
        match self.monomials.as_slice() {
            [] => Some(Natural::zero()),
            [m] if m.exponent.is_zero() => Some(m.coefficient.clone()),
            _ => None,
        }
    }

    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.monomials.first().map(|m| &m.exponent)
    }

    /// Number of monomial nodes in the whole tree.
    pub fn node_count(&self) -> usize {
        self.monomials
            .iter()
            .map(|m| 1 + m.exponent.node_count())
            .sum()
    }

    /// Nesting depth: `0` for zero, `1` for nonzero finite ordinals, `2` for ω.
    pub fn depth(&self) -> usize {
        self.monomials
            .iter()
            .map(|m| 1 + m.exponent.depth())
            .max()
            .unwrap_or(0)
    }

    /// Splits `λ + c` into its part without finite tail and the finite tail `c`.
    pub fn split_finite_tail(&self) -> (Ordinal, Natural) {
        match self.monomials.last() {
            Some(last) if last.exponent.is_zero() => {
                let head = self.monomials[..self.monomials.len() - 1].to_vec();
                (Ordinal { monomials: head }, last.coefficient.clone())
            }
            _ => (self.clone(), Natural::zero()),
        }
    }

    pub fn render(&self) -> String {
        syntax::render_term(self, 'w')
    }

    pub fn parse(text: &str) -> Result<Self> {
        syntax::parse_term(text, b'w')
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl FromStr for Ordinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ordinal::parse(s)
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

pub fn parse_ordinal(text: &str) -> Result<Ordinal> {
    Ordinal::parse(text)
}

pub fn render_ordinal(alpha: &Ordinal) -> String {
    alpha.render()
}

/// Lexicographic comparison of the `(exponent, coefficient)` lists; a proper
/// prefix is smaller.
pub fn compare(alpha: &Ordinal, beta: &Ordinal) -> Ordering {
    for (a, b) in alpha.monomials.iter().zip(&beta.monomials) {
        let ord = compare(&a.exponent, &b.exponent).then_with(|| a.coefficient.cmp(&b.coefficient));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    alpha.monomials.len().cmp(&beta.monomials.len())
}

/// Ordinal sum `α + β`.
pub fn add(alpha: &Ordinal, beta: &Ordinal) -> Ordinal {
    let Some(head) = beta.monomials.first() else {
        return alpha.clone();
    };
    if alpha.is_zero() {
        return beta.clone();
    }
    let mut out: Vec<Monomial> = alpha
        .monomials
        .iter()
        .take_while(|m| compare(&m.exponent, &head.exponent) != Ordering::Less)
        .cloned()
        .collect();
    let mut rest = beta.monomials.iter();
    if let Some(last) = out.last_mut() {
        if last.exponent == head.exponent {
            last.coefficient += &head.coefficient;
            rest.next();
        }
    }
    out.extend(rest.cloned());
    Ordinal::from_monomials_unchecked(out)
}

/// `ω^α · β`, with `ω^α · 0 = 0`.
pub fn omega_power_mul(alpha: &Ordinal, beta: &Ordinal) -> Ordinal {
    let monomials = beta
        .monomials
        .iter()
        .map(|m| Monomial::new(add(alpha, &m.exponent), m.coefficient.clone()))
        .collect();
    Ordinal::from_monomials_unchecked(monomials)
}

/// `|α| = max{|α₁|,…,|αₙ|, k₁,…,kₙ} + 1`, with `|0| = 0`.
pub fn length(alpha: &Ordinal) -> Natural {
    alpha
        .monomials
        .iter()
        .map(|m| length(&m.exponent).max(m.coefficient.clone()))
        .max()
        .map_or_else(Natural::zero, |max| max + 1u32)
}

/// Largest coefficient anywhere in the tree; `ko(0) = 0`.
pub fn max_coefficient(alpha: &Ordinal) -> Natural {
    alpha
        .monomials
        .iter()
        .map(|m| max_coefficient(&m.exponent).max(m.coefficient.clone()))
        .max()
        .unwrap_or_else(Natural::zero)
}

/// `ω₀ = 1`, `ω_{n+1} = ω^{ω_n}`.
pub fn omega_tower(n: usize) -> Result<Ordinal, ResourceError> {
    omega_tower_capped(n, DEFAULT_NODE_CAP)
}

pub fn omega_tower_capped(n: usize, node_cap: usize) -> Result<Ordinal, ResourceError> {
    if n + 1 > node_cap {
        return Err(ResourceError::NodeCap { cap: node_cap });
    }
    let mut tower = Ordinal::one();
    for _ in 0..n {
        tower = Ordinal::omega_power(tower);
    }
    Ok(tower)
}

/// Least `t` with `α < ω_t`.
pub fn tower_height(alpha: &Ordinal) -> usize {
    // α < ω_{t+1} = ω^{ω_t} exactly when the leading exponent is below ω_t.
    match alpha.leading_exponent() {
        None => 0,
        Some(exponent) => tower_height(exponent) + 1,
    }
}
