//! Seeded generators for random canonical ordinals and descending prefixes.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ordinal::{Monomial, Ordinal};
use crate::Natural;

/// Shape bounds for [`random_ordinal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrdinalShape {
    /// Largest [`Ordinal::depth`]: 0 gives zero, 1 gives naturals.
    pub depth: usize,
    /// Coefficients are drawn from `1..=max_coefficient`.
    pub max_coefficient: u64,
    /// Monomials per sum are drawn from `0..=width`.
    pub width: usize,
}

impl Default for OrdinalShape {
    fn default() -> Self {
        OrdinalShape {
            depth: 4,
            max_coefficient: 20,
            width: 3,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A canonical ordinal within `shape`. Zero is possible.
pub fn random_ordinal<R: Rng + ?Sized>(rng: &mut R, shape: OrdinalShape) -> Ordinal {
    let coefficient = |rng: &mut R| Natural::from(rng.gen_range(1..=shape.max_coefficient.max(1)));
    if shape.depth == 0 {
        return Ordinal::zero();
    }
    if shape.depth == 1 {
        return match rng.gen_range(0..=shape.width) {
            0 => Ordinal::zero(),
            _ => Ordinal::from_natural(coefficient(rng)),
        };
    }
    let inner = OrdinalShape {
        depth: rng.gen_range(0..shape.depth),
        ..shape
    };
    let count = rng.gen_range(0..=shape.width);
    let mut exponents: Vec<Ordinal> = (0..count).map(|_| random_ordinal(rng, inner)).collect();
    exponents.sort_unstable_by(|a, b| b.cmp(a));
    exponents.dedup();
    let monomials = exponents
        .into_iter()
        .map(|e| Monomial::new(e, coefficient(rng)))
        .collect();
    Ordinal::from_monomials(monomials).expect("sorted distinct exponents")
}

/// A nonzero canonical ordinal within `shape`.
pub fn random_nonzero_ordinal<R: Rng + ?Sized>(rng: &mut R, shape: OrdinalShape) -> Ordinal {
    loop {
        let alpha = random_ordinal(rng, shape);
        if !alpha.is_zero() {
            return alpha;
        }
    }
}

/// A strictly descending sequence of between 1 and `max_len` ordinals:
/// random samples, sorted and deduplicated.
pub fn random_descending<R: Rng + ?Sized>(rng: &mut R, max_len: usize, shape: OrdinalShape) -> Vec<Ordinal> {
    let target = rng.gen_range(1..=max_len.max(1));
    let mut terms: Vec<Ordinal> = (0..target * 2).map(|_| random_ordinal(rng, shape)).collect();
    terms.sort_unstable_by(|a, b| b.cmp(a));
    terms.dedup();
    terms.truncate(target);
    terms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal;

    #[test]
    fn generated_terms_are_canonical_and_bounded() {
        let mut r = rng(7);
        let shape = OrdinalShape {
            depth: 3,
            max_coefficient: 5,
            width: 3,
        };
        for _ in 0..500 {
            let alpha = random_ordinal(&mut r, shape);
            assert!(alpha.depth() <= 3);
            assert!(ordinal::max_coefficient(&alpha) <= Natural::from(5u32));
            assert_eq!(Ordinal::parse(&alpha.render()).unwrap(), alpha);
        }
    }

    #[test]
    fn descending_prefixes_descend() {
        let mut r = rng(11);
        for _ in 0..100 {
            let terms = random_descending(&mut r, 15, OrdinalShape::default());
            assert!(!terms.is_empty() && terms.len() <= 15);
            assert!(terms.windows(2).all(|p| p[0] > p[1]));
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_ordinal(&mut rng(3), OrdinalShape::default());
        let b = random_ordinal(&mut rng(3), OrdinalShape::default());
        assert_eq!(a, b);
    }
}
