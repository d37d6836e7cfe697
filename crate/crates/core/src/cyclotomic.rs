//! Homogenized cyclotomic values `Φ_k(a, b)` and the four product
//! decompositions of `a^n ± b^n` and their quotients by `a ± b`.
//!
//! Values are computed from the Möbius product
//! `Φ_k(a, b) = ∏_{d | k} (a^{k/d} - b^{k/d})^{μ(d)}`: every numerator term is
//! multiplied first, then each denominator term is divided out exactly.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{divisors, mobius, Natural};
use crate::error::{Error, Result};
use crate::theorems::{target_from, CongruenceCase};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicFactor {
    pub index: u64,
    pub value: Natural,
}

/// The cyclotomic factors of a congruence target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub case: CongruenceCase,
    pub a: Natural,
    pub b: Natural,
    pub n: u64,
    pub factors: Vec<CyclotomicFactor>,
    pub product: Natural,
}

fn divisors_u64(n: u64) -> Result<Vec<u64>> {
    Ok(divisors(&Natural::from(n))?
        .iter()
        .map(|d| d.to_u64().expect("divisor of a u64 fits in u64"))
        .collect())
}

/// `Φ_k(a, b)` for `a > b >= 1`.
pub fn cyclotomic_value(k: u64, a: &Natural, b: &Natural) -> Result<Natural> {
    if k == 0 {
        return Err(Error::OutOfRange("cyclotomic index must be at least 1"));
    }
    if b.is_zero() || a <= b {
        return Err(Error::OutOfRange("cyclotomic evaluation needs a > b >= 1"));
    }
    let mut numerator = Natural::from(1u8);
    let mut denominators = Vec::new();
    for d in divisors_u64(k)? {
        let e =
            u32::try_from(k / d).map_err(|_| Error::OutOfRange("cyclotomic index too large"))?;
        let term = a.pow(e) - b.pow(e);
        match mobius(&Natural::from(d))? {
            1 => numerator *= term,
            -1 => denominators.push(term),
            _ => {}
        }
    }
    for term in denominators {
        let (q, r) = numerator.div_rem(&term);
        if !r.is_zero() {
            return Err(Error::CyclotomicIdentityViolated(format!(
                "Φ_{k}({a}, {b}): remainder {r} dividing by {term}"
            )));
        }
        numerator = q;
    }
    Ok(numerator)
}

/// Indices `k` whose `Φ_k` multiply to the target of `case` at exponent `n`.
pub fn decomposition_indices(case: CongruenceCase, n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1"));
    }
    if case == CongruenceCase::SumQuotient && n.is_multiple_of(2) {
        return Err(Error::RequiresOddN);
    }
    let twice = n.checked_mul(2).ok_or(Error::OutOfRange("n too large"))?;
    let indices = match case {
        CongruenceCase::DiffPower => divisors_u64(n)?,
        CongruenceCase::DiffQuotient => divisors_u64(n)?.into_iter().filter(|&k| k > 1).collect(),
        CongruenceCase::SumPower => divisors_u64(twice)?
            .into_iter()
            .filter(|k| !n.is_multiple_of(*k))
            .collect(),
        CongruenceCase::SumQuotient => divisors_u64(twice)?
            .into_iter()
            .filter(|&k| !n.is_multiple_of(k) && k > 2)
            .collect(),
    };
    Ok(indices)
}

/// Splits the target of `case` (with `a` the larger input) into cyclotomic
/// factors and checks the product against the closed form.
pub fn decompose(case: CongruenceCase, n: u64, a: &Natural, b: &Natural) -> Result<Decomposition> {
    let indices = decomposition_indices(case, n)?;
    let mut factors = Vec::with_capacity(indices.len());
    let mut product = Natural::from(1u8);
    for index in indices {
        let value = cyclotomic_value(index, a, b)?;
        product *= &value;
        factors.push(CyclotomicFactor { index, value });
    }
    let expected = target_from(case, b, a, n)?;
    if product != expected {
        return Err(Error::Internal(format!(
            "decomposition of {case:?} at n = {n}, ({a}, {b}) multiplies to {product}, expected {expected}"
        )));
    }
    Ok(Decomposition {
        case,
        a: a.clone(),
        b: b.clone(),
        n,
        factors,
        product,
    })
}
