use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{LinComb, Rational};

/// A random linear combination of at most `max_terms` distinct pool elements with
/// nonzero coefficients in `[-bound, bound]` and denominators 1, 2 or 3.
pub fn sample_element_with<K: Ord + Clone, R: Rng + ?Sized>(
    rng: &mut R,
    pool: &[K],
    max_terms: usize,
    bound: i64,
) -> LinComb<K> {
    assert!(!pool.is_empty(), "sample pool must be nonempty");
    if max_terms == 0 {
        return LinComb::zero();
    }
    let n = rng.random_range(1..=max_terms).min(pool.len());
    let mut out = LinComb::zero();
    for i in rand::seq::index::sample(rng, pool.len(), n) {
        let key = pool[i].clone();
        let mut c = Rational::random_small(rng, bound);
        while c.is_zero() {
            c = Rational::random_small(rng, bound);
        }
        out.add_term(key, c);
    }
    out
}

/// [`sample_element_with`] driven by a fresh generator seeded with `seed`.
pub fn sample_element<K: Ord + Clone>(pool: &[K], seed: u64, max_terms: usize, bound: i64) -> LinComb<K> {
    sample_element_with(&mut ChaCha8Rng::seed_from_u64(seed), pool, max_terms, bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_terms_give_zero() {
        assert!(sample_element(&[1u8, 2], 5, 0, 3).is_zero());
    }

    #[test]
    fn same_seed_same_element() {
        let pool = [1u8, 2, 3, 4];
        assert!(sample_element(&pool, 42, 3, 5) == sample_element(&pool, 42, 3, 5));
    }

    #[test]
    fn supports_and_bounds() {
        let pool = [1u8, 2, 3, 4];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let bound = Rational::from(2);
        for _ in 0..1000 {
            let x = sample_element_with(&mut rng, &pool, 3, 2);
            assert!(x.len() <= 3);
            for (k, c) in x.iter() {
                assert!(pool.contains(k));
                assert!(c <= &bound && c >= &-bound.clone());
                assert!(matches!(c.denom().to_string().as_str(), "1" | "2" | "3"));
            }
        }
    }
}
