use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{value_seed, Natural};

/// Below this bound the strong-probable-prime test with [`SMALL_BASES`] is a
/// proof of primality.
pub const DETERMINISTIC_LIMIT: u128 = 1 << 64;

/// Rounds used above [`DETERMINISTIC_LIMIT`]; a composite survives with
/// probability at most `4^-40`.
pub const PROBABLE_PRIME_ROUNDS: u32 = 40;

// Correct for every n < 3.3e24, which covers all of u64.
const SMALL_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

const PRIME_SALT: u64 = 0x7072_696d_6521;

pub fn is_probable_prime(n: &Natural) -> bool {
    match n.to_u64() {
        Some(small) => is_prime_u64(small),
        None => is_probable_prime_big(n, PROBABLE_PRIME_ROUNDS),
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &SMALL_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn is_probable_prime_big(n: &BigUint, rounds: u32) -> bool {
    if !n.bit(0) {
        return false;
    }
    for &p in &SMALL_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let range = n - 3u32;
    let mut rng = ChaCha8Rng::seed_from_u64(value_seed(n, PRIME_SALT));

    'rounds: for _ in 0..rounds {
        // base uniform-ish in [2, n - 2]
        let base = random_below(&mut rng, &range) + 2u32;
        let mut x = base.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_1 {
                continue 'rounds;
            }
        }
        return false;
    }
    true
}

/// Value in `[0, bound)` built from 64-bit draws; `bound` must be nonzero.
pub(crate) fn random_below(rng: &mut ChaCha8Rng, bound: &BigUint) -> BigUint {
    let limbs = bound.to_u64_digits().len() + 1;
    let digits: Vec<u64> = (0..limbs).map(|_| rng.next_u64()).collect();
    let mut bytes = Vec::with_capacity(limbs * 8);
    for d in digits {
        bytes.extend_from_slice(&d.to_le_bytes());
    }
    BigUint::from_bytes_le(&bytes) % bound
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn examples() {
        assert!(is_probable_prime(&Natural::from(89u32)));
        assert!(!is_probable_prime(&Natural::from(1u32)));
        assert!(!is_probable_prime(&Natural::from(0u32)));
        assert!(!is_probable_prime(&Natural::from(2047u32)));
    }

    #[test]
    fn agrees_with_trial_division_below_20000() {
        for n in 0..20_000u64 {
            assert_eq!(
                is_probable_prime(&Natural::from(n)),
                trial_division(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn strong_pseudoprimes_rejected() {
        // strong pseudoprimes to several small bases
        for n in [
            2047u64,
            1_373_653,
            25_326_001,
            3_215_031_751,
            3_825_123_056_546_413_051,
        ] {
            assert!(!is_probable_prime(&Natural::from(n)), "n = {n}");
        }
    }

    #[test]
    fn large_values() {
        let m127 = (Natural::one() << 127u32) - 1u32;
        assert!(is_probable_prime(&m127));
        let m67 = (Natural::one() << 67u32) - 1u32;
        assert!(!is_probable_prime(&m67));
        let semiprime =
            Natural::from(18_446_744_073_709_551_557u64) * 18_446_744_073_709_551_533u64;
        assert!(!is_probable_prime(&semiprime));
        assert!(!is_probable_prime(&(Natural::one() << 100u32)));
    }
}
