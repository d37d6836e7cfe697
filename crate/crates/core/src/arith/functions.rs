use num_integer::Integer;
use num_traits::{One, Zero};

use super::{factorize, gcd, Factorization, Natural, DEFAULT_RHO_BUDGET};
use crate::error::{Error, Result};

fn complete_factorization(n: &Natural) -> Result<Factorization> {
    let f = factorize(n, DEFAULT_RHO_BUDGET)?;
    if f.is_complete() {
        Ok(f)
    } else {
        Err(Error::IncompleteFactorization)
    }
}

/// Euler's totient from a complete factorization: the product of
/// `p^(e-1) * (p - 1)` over the prime powers.
pub fn euler_phi(f: &Factorization) -> Result<Natural> {
    if !f.is_complete() {
        return Err(Error::IncompleteFactorization);
    }
    Ok(f.factors().iter().fold(Natural::one(), |acc, pp| {
        acc * pp.prime.pow(pp.exponent - 1) * (&pp.prime - 1u32)
    }))
}

pub fn mobius(n: &Natural) -> Result<i8> {
    if n.is_zero() {
        return Err(Error::OutOfRange("mobius is defined for n >= 1"));
    }
    let f = complete_factorization(n)?;
    if f.factors().iter().any(|pp| pp.exponent > 1) {
        return Ok(0);
    }
    Ok(if f.factors().len() % 2 == 0 { 1 } else { -1 })
}

/// All divisors of `n` in increasing order.
pub fn divisors(n: &Natural) -> Result<Vec<Natural>> {
    if n.is_zero() {
        return Err(Error::OutOfRange("divisors are defined for n >= 1"));
    }
    let f = complete_factorization(n)?;
    let mut divs = vec![Natural::one()];
    for pp in f.factors() {
        let mut next = Vec::with_capacity(divs.len() * (pp.exponent as usize + 1));
        for d in &divs {
            let mut power = d.clone();
            next.push(power.clone());
            for _ in 0..pp.exponent {
                power *= &pp.prime;
                next.push(power.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

pub fn largest_prime_factor(n: &Natural) -> Result<Natural> {
    if *n < Natural::from(2u8) {
        return Err(Error::OutOfRange("largest prime factor needs n >= 2"));
    }
    let f = complete_factorization(n)?;
    Ok(f.primes()
        .last()
        .cloned()
        .expect("n >= 2 has a prime factor"))
}

/// Whether `a` has order exactly `m` modulo `modulus`: `a^m = 1` and
/// `a^(m/p) != 1` for every prime `p | m`.
pub fn multiplicative_order_is(a: &Natural, modulus: &Natural, m: &Natural) -> Result<bool> {
    if *modulus < Natural::from(2u8) {
        return Err(Error::OutOfRange("modulus must be at least 2"));
    }
    if m.is_zero() {
        return Err(Error::OutOfRange("order candidate must be at least 1"));
    }
    if !gcd(a, modulus).is_one() {
        return Err(Error::NotAUnit);
    }
    if !a.modpow(m, modulus).is_one() {
        return Ok(false);
    }
    let f = complete_factorization(m)?;
    for p in f.primes() {
        let (cofactor, _) = m.div_rem(p);
        if a.modpow(&cofactor, modulus).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}
