use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{reduce_to_coprime, target_value, CaseParams, CongruenceCase};
use crate::arith::{
    gcd, largest_prime_factor, mod_inverse, multiplicative_order_is, FactorSource, Natural,
    Uncached,
};
use crate::cyclotomic::cyclotomic_value;
use crate::error::{Error, Result};

/// Outcome of the factoring-free witness check on `Φ_m` of the reduced
/// inputs, with `m = 2n` for the sum cases and `m = n` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExistenceResult {
    pub phi_index: u64,
    #[serde(with = "crate::decimal")]
    pub phi_value: Natural,
    /// `phi_value` with every factor of the largest prime of `phi_index`
    /// removed. Each remaining prime is `1 mod phi_index`.
    #[serde(with = "crate::decimal")]
    pub stripped: Natural,
    pub exists: bool,
    /// Set only for the known exception `Φ_6(2, 1) = 3`.
    pub exceptional: bool,
}

/// Result of [`witness_explicit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Smallest prime of the stripped cyclotomic part.
    Found(Natural),
    /// The stripped part did not factor within budget.
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCertificate {
    #[serde(with = "crate::decimal")]
    pub element: Natural,
    #[serde(with = "crate::decimal")]
    pub modulus: Natural,
    pub claimed_order: u64,
    pub holds: bool,
}

/// Certifies that the target has a prime factor `q ≡ 1 (mod n)` without
/// factoring it. Inputs are reduced to coprime form first; `n < 3` is left to
/// direct verification.
pub fn witness_existence(case: CongruenceCase, p: &CaseParams) -> Result<ExistenceResult> {
    if p.n() < 3 {
        return Err(Error::UseDirectMode);
    }
    if p.is_degenerate() {
        return Err(Error::InvalidParams("witness search needs x < y".into()));
    }
    let reduced = reduce_to_coprime(p);
    let phi_index = if case.is_sum() { 2 * p.n() } else { p.n() };
    let (a, b) = (reduced.second(), reduced.first());
    let phi_value = cyclotomic_value(phi_index, a, b)?;

    let intrinsic = largest_prime_factor(&Natural::from(phi_index))?;
    let mut stripped = phi_value.clone();
    loop {
        let (q, r) = stripped.div_rem(&intrinsic);
        if !r.is_zero() {
            break;
        }
        stripped = q;
    }
    let exists = stripped > Natural::one();
    let exceptional = phi_index == 6 && *a == Natural::from(2u8) && b.is_one();
    Ok(ExistenceResult {
        phi_index,
        phi_value,
        stripped,
        exists,
        exceptional,
    })
}

pub fn witness_explicit(case: CongruenceCase, p: &CaseParams, budget: u64) -> Result<Witness> {
    witness_explicit_with(case, p, budget, &Uncached)
}

/// Factors the stripped cyclotomic part and returns its smallest prime,
/// which divides the target and is `1 mod n`.
pub fn witness_explicit_with(
    case: CongruenceCase,
    p: &CaseParams,
    budget: u64,
    source: &dyn FactorSource,
) -> Result<Witness> {
    let existence = witness_existence(case, p)?;
    if !existence.exists {
        return Err(Error::NoWitness);
    }
    let f = source.factorize(&existence.stripped, budget)?;
    if !f.is_complete() {
        return Ok(Witness::Unresolved);
    }
    let q = f.primes().next().cloned().expect("stripped part exceeds 1");

    let n = Natural::from(p.n());
    let target = target_value(case, p)?;
    if !(&q % &n).is_one() && !n.is_one() {
        return Err(Error::Internal(format!("witness {q} is not 1 mod {n}")));
    }
    if !(&target % &q).is_zero() {
        return Err(Error::Internal(format!(
            "witness {q} does not divide {target}"
        )));
    }
    Ok(Witness::Found(q))
}

/// Checks that `y/x` has order exactly `2n` modulo `x^n + y^n`.
pub fn order_check(x: &Natural, y: &Natural, n: u64) -> Result<OrderCertificate> {
    if x.is_zero() || n == 0 || x >= y {
        return Err(Error::InvalidParams(
            "order check needs 1 <= x < y and n >= 1".into(),
        ));
    }
    if !gcd(x, y).is_one() {
        return Err(Error::ReduceFirst);
    }
    let e = u32::try_from(n).map_err(|_| Error::OutOfRange("exponent too large"))?;
    let modulus = x.pow(e) + y.pow(e);
    let element = y * mod_inverse(x, &modulus)? % &modulus;
    let claimed_order = 2 * n;
    let holds = multiplicative_order_is(&element, &modulus, &Natural::from(claimed_order))?;
    Ok(OrderCertificate {
        element,
        modulus,
        claimed_order,
        holds,
    })
}
