//! Seeded random evaluation points for probabilistic identity testing.

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ring::{Rational, RingMode};

/// Numerators and denominators of sampled coordinates lie in this range.
pub const COORD_RANGE: (i64, i64) = (2, 1_000_000);

/// Redraws allowed before giving up on finding a pole-free point.
pub const MAX_RETRIES: usize = 32;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws pairwise distinct coordinates `a/b ≠ 1`. In cyclic mode the last
/// coordinate is fixed to `1/(q_1⋯q_{n-1})` so the point satisfies the relation.
pub fn random_point<R: Rng>(mode: RingMode, rng: &mut R) -> Vec<Rational> {
    let n = mode.n();
    let free_count = if mode.is_cyclic() { n.saturating_sub(1) } else { n };
    let mut coords: Vec<Rational> = Vec::with_capacity(n);
    while coords.len() < free_count {
        let a = rng.gen_range(COORD_RANGE.0..=COORD_RANGE.1);
        let b = rng.gen_range(COORD_RANGE.0..=COORD_RANGE.1);
        let c = Rational::new(BigInt::from(a), BigInt::from(b));
        if c.is_one() || coords.contains(&c) {
            continue;
        }
        coords.push(c);
    }
    if mode.is_cyclic() {
        let product: Rational = coords.iter().product();
        coords.push(product.recip());
    }
    coords
}

/// Draws points until `eval` succeeds without hitting a pole.
pub fn evaluate_at_random_point<R: Rng, T>(
    mode: RingMode,
    rng: &mut R,
    mut eval: impl FnMut(&[Rational]) -> Result<T>,
) -> Result<(Vec<Rational>, T)> {
    for _ in 0..MAX_RETRIES {
        let point = random_point(mode, rng);
        match eval(&point) {
            Ok(v) => return Ok((point, v)),
            Err(Error::Pole(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegeneratePoint(MAX_RETRIES))
}

pub fn format_point(point: &[Rational]) -> String {
    let coords: Vec<String> = point.iter().map(crate::ring::format_rational).collect();
    format!("({})", coords.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_points_satisfy_the_relation() {
        let mut rng = rng_from_seed(11);
        for n in 1..=6 {
            let p = random_point(RingMode::cyclic(n), &mut rng);
            assert_eq!(p.len(), n);
            assert!(p.iter().product::<Rational>().is_one());
        }
    }

    #[test]
    fn points_are_reproducible() {
        let a = random_point(RingMode::free(4), &mut rng_from_seed(5));
        let b = random_point(RingMode::free(4), &mut rng_from_seed(5));
        assert_eq!(a, b);
    }

    #[test]
    fn persistent_poles_exhaust_the_budget() {
        let r: Result<(Vec<Rational>, ())> =
            evaluate_at_random_point(RingMode::free(1), &mut rng_from_seed(0), |_| Err(Error::Pole("x".into())));
        assert_eq!(r.unwrap_err(), Error::DegeneratePoint(MAX_RETRIES));
    }
}
