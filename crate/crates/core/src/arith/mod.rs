//! Exact arbitrary-precision integer arithmetic.
//!
//! Everything here is a pure function of its inputs. Randomness (Miller-Rabin
//! bases above the deterministic threshold, Pollard-Brent polynomial
//! constants) is drawn from generators seeded by the input value, so identical
//! inputs always take identical paths.

mod factor;
mod functions;
mod prime;

pub use factor::{
    factorize, FactorSource, Factorization, PrimePower, Uncached, DEFAULT_RHO_BUDGET,
    TRIAL_DIVISION_BOUND,
};
pub use functions::{divisors, euler_phi, largest_prime_factor, mobius, multiplicative_order_is};
pub use prime::{is_probable_prime, DETERMINISTIC_LIMIT, PROBABLE_PRIME_ROUNDS};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision non-negative integer.
pub type Natural = BigUint;

pub fn gcd(a: &Natural, b: &Natural) -> Natural {
    // num's gcd already maps (0, 0) to 0 and (a, 0) to a.
    a.gcd(b)
}

pub fn mod_pow(base: &Natural, exp: &Natural, modulus: &Natural) -> Result<Natural> {
    if modulus.is_zero() {
        return Err(Error::ZeroModulus);
    }
    if modulus.is_one() {
        return Ok(Natural::zero());
    }
    Ok(base.modpow(exp, modulus))
}

/// Inverse of `a` modulo `m` (`m >= 2`), as the unique residue `u < m`.
pub fn mod_inverse(a: &Natural, m: &Natural) -> Result<Natural> {
    if *m < Natural::from(2u8) {
        return Err(Error::OutOfRange("modulus must be at least 2"));
    }
    (a % m).modinv(m).ok_or(Error::NotInvertible)
}

/// 64-bit FNV-1a over the little-endian bytes of `n`; seeds the
/// value-derived generators.
pub(crate) fn value_seed(n: &Natural, salt: u64) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325 ^ salt;
    for byte in n.to_bytes_le() {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&nat(12), &nat(18)), nat(6));
        assert_eq!(gcd(&nat(7), &nat(0)), nat(7));
        assert_eq!(gcd(&nat(2047), &nat(23)), nat(23));
        assert_eq!(gcd(&nat(0), &nat(0)), nat(0));
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow(&nat(2), &nat(10), &nat(1000)).unwrap(), nat(24));
        assert_eq!(mod_pow(&nat(5), &nat(0), &nat(7)).unwrap(), nat(1));
        assert_eq!(mod_pow(&nat(2), &nat(6), &nat(9)).unwrap(), nat(1));
        assert_eq!(mod_pow(&nat(5), &nat(0), &nat(1)).unwrap(), nat(0));
        assert_eq!(mod_pow(&nat(2), &nat(3), &nat(0)), Err(Error::ZeroModulus));
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(&nat(2), &nat(9)).unwrap(), nat(5));
        assert_eq!(mod_inverse(&nat(1), &nat(7)).unwrap(), nat(1));
        assert_eq!(mod_inverse(&nat(3), &nat(9)), Err(Error::NotInvertible));
        assert_eq!(mod_inverse(&nat(12), &nat(5)).unwrap(), nat(3));
    }

    #[test]
    fn seed_depends_on_value_and_salt() {
        assert_eq!(value_seed(&nat(2047), 0), value_seed(&nat(2047), 0));
        assert_ne!(value_seed(&nat(2047), 0), value_seed(&nat(2049), 0));
        assert_ne!(value_seed(&nat(2047), 0), value_seed(&nat(2047), 1));
    }
}
