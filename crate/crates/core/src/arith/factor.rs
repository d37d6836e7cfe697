use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::prime::{mul_mod, random_below};
use super::{is_probable_prime, value_seed, Natural};
use crate::error::{Error, Result};

/// Primes up to this bound are stripped by trial division before rho.
pub const TRIAL_DIVISION_BOUND: u32 = 1_000_000;

/// Default Pollard-Brent iteration cap per composite.
pub const DEFAULT_RHO_BUDGET: u64 = 100_000_000;

const RHO_SALT: u64 = 0x72_686f;

/// Brent's batch size: gcds are taken once per this many steps.
const RHO_BATCH: u64 = 128;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    #[serde(with = "crate::decimal")]
    pub prime: Natural,
    pub exponent: u32,
}

/// A value with its prime-power decomposition.
///
/// When the rho budget runs out the unsplit remainder is kept in `cofactor`
/// (which need not be prime) and `complete` is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: Natural,
    factors: Vec<PrimePower>,
    complete: bool,
    cofactor: Natural,
}

impl Factorization {
    /// Builds a factorization from primes and a leftover cofactor, merging
    /// repeated primes. Does not check primality; see [`Factorization::validate`].
    pub fn from_parts<I>(primes: I, cofactor: Natural) -> Self
    where
        I: IntoIterator<Item = (Natural, u32)>,
    {
        let mut map: BTreeMap<Natural, u32> = BTreeMap::new();
        for (p, e) in primes {
            if e > 0 {
                *map.entry(p).or_insert(0) += e;
            }
        }
        let factors: Vec<PrimePower> = map
            .into_iter()
            .map(|(prime, exponent)| PrimePower { prime, exponent })
            .collect();
        let mut value = cofactor.clone();
        for pp in &factors {
            value *= pp.prime.pow(pp.exponent);
        }
        let complete = cofactor.is_one();
        Factorization {
            value,
            factors,
            complete,
            cofactor,
        }
    }

    /// Product of several factorizations; complete only if all parts are.
    pub fn product<'a, I>(parts: I) -> Self
    where
        I: IntoIterator<Item = &'a Factorization>,
    {
        let mut primes = Vec::new();
        let mut cofactor = Natural::one();
        for part in parts {
            primes.extend(part.prime_exponents());
            cofactor *= &part.cofactor;
        }
        Self::from_parts(primes, cofactor)
    }

    pub fn value(&self) -> &Natural {
        &self.value
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn cofactor(&self) -> &Natural {
        &self.cofactor
    }

    pub fn primes(&self) -> impl Iterator<Item = &Natural> {
        self.factors.iter().map(|pp| &pp.prime)
    }

    /// Checks every structural invariant, including primality of each listed
    /// prime. Used when factorizations come from untrusted storage.
    pub fn validate(&self) -> bool {
        if self.value.is_zero() || self.cofactor.is_zero() {
            return false;
        }
        if self.complete != self.cofactor.is_one() {
            return false;
        }
        let mut product = self.cofactor.clone();
        let mut previous: Option<&Natural> = None;
        for pp in &self.factors {
            if pp.exponent == 0 || previous.is_some_and(|p| p >= &pp.prime) {
                return false;
            }
            if !is_probable_prime(&pp.prime) {
                return false;
            }
            product *= pp.prime.pow(pp.exponent);
            previous = Some(&pp.prime);
        }
        product == self.value
    }

    /// Retries the unsplit cofactor with a fresh budget and merges the result.
    pub fn refine(&self, budget: u64) -> Self {
        if self.complete {
            return self.clone();
        }
        let rest = factorize(&self.cofactor, budget).expect("cofactor is nonzero");
        let known = Self::from_parts(self.prime_exponents(), Natural::one());
        Self::product([&known, &rest])
    }

    fn prime_exponents(&self) -> impl Iterator<Item = (Natural, u32)> + '_ {
        self.factors
            .iter()
            .map(|pp| (pp.prime.clone(), pp.exponent))
    }
}

/// Anything that can hand out factorizations: the plain algorithm or a cache
/// in front of it.
pub trait FactorSource: Sync {
    fn factorize(&self, n: &Natural, budget: u64) -> Result<Factorization>;
}

/// Factors every request from scratch.
#[derive(Debug, Clone, Copy, Default)]
pub struct Uncached;

impl FactorSource for Uncached {
    fn factorize(&self, n: &Natural, budget: u64) -> Result<Factorization> {
        factorize(n, budget)
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_DIVISION_BOUND as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::with_capacity(80_000);
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Factors `n`: trial division up to [`TRIAL_DIVISION_BOUND`], then
/// Pollard-Brent rho with at most `budget` iterations per composite.
pub fn factorize(n: &Natural, budget: u64) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroFactorization);
    }
    let (mut found, rest, exhausted_small) = trial_divide(n);

    let mut cofactor = Natural::one();
    if !rest.is_one() {
        let bound = u64::from(TRIAL_DIVISION_BOUND);
        let below_square = rest.to_u64().is_some_and(|r| r < bound * bound);
        if !exhausted_small || below_square {
            found.push((rest, 1));
        } else {
            let mut pending = vec![rest];
            while let Some(m) = pending.pop() {
                if is_probable_prime(&m) {
                    found.push((m, 1));
                    continue;
                }
                match split(&m, budget) {
                    Some(d) => {
                        let other = &m / &d;
                        pending.push(d);
                        pending.push(other);
                    }
                    None => cofactor *= m,
                }
            }
        }
    }
    Ok(Factorization::from_parts(found, cofactor))
}

/// Strips primes up to the trial-division bound. The flag reports whether
/// the whole prime table was used (rather than stopping at `p^2 > rest`).
fn trial_divide(n: &Natural) -> (Vec<(Natural, u32)>, Natural, bool) {
    let primes = small_primes();
    let mut found = Vec::new();
    let mut rest = n.clone();
    for (i, &p) in primes.iter().enumerate() {
        if let Some(small) = rest.to_u64() {
            return trial_divide_u64(small, &primes[i..], found);
        }
        if (&rest % p).is_zero() {
            let mut e = 0;
            while (&rest % p).is_zero() {
                rest /= p;
                e += 1;
            }
            found.push((Natural::from(p), e));
        }
    }
    (found, rest, true)
}

fn trial_divide_u64(
    mut rest: u64,
    primes: &[u32],
    mut found: Vec<(Natural, u32)>,
) -> (Vec<(Natural, u32)>, Natural, bool) {
    for &p in primes {
        let p = u64::from(p);
        if p * p > rest {
            return (found, Natural::from(rest), false);
        }
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            found.push((Natural::from(p), e));
        }
    }
    (found, Natural::from(rest), true)
}

/// Nontrivial divisor of composite `m` (no small factors), or `None` when
/// the budget runs out.
fn split(m: &Natural, budget: u64) -> Option<Natural> {
    if let Some(root) = exact_sqrt(m) {
        return Some(root);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(value_seed(m, RHO_SALT));
    match m.to_u64() {
        Some(small) => rho_u64(small, budget, &mut rng).map(Natural::from),
        None => rho_big(m, budget, &mut rng),
    }
}

fn exact_sqrt(m: &Natural) -> Option<Natural> {
    let r = m.sqrt();
    (&r * &r == *m).then_some(r)
}

fn rho_u64(n: u64, budget: u64, rng: &mut ChaCha8Rng) -> Option<u64> {
    let mut spent = 0u64;
    while spent < budget {
        let c = 1 + rng.next_u64() % (n - 1);
        let mut y = rng.next_u64() % n;
        let f = |v: u64| ((u128::from(mul_mod(v, v, n)) + u128::from(c)) % u128::from(n)) as u64;
        let mut x = y;
        let mut ys = y;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        while g == 1 && spent < budget {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            spent += r;
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let batch = RHO_BATCH.min(r - k);
                for _ in 0..batch {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                spent += batch;
                g = q.gcd(&n);
                k += batch;
            }
            r *= 2;
        }
        if g == n {
            // the batch overshot; replay it one gcd at a time
            loop {
                ys = f(ys);
                spent += 1;
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g > 1 && g < n {
            return Some(g);
        }
    }
    None
}

fn rho_big(n: &Natural, budget: u64, rng: &mut ChaCha8Rng) -> Option<Natural> {
    let one = Natural::one();
    let n_minus_1 = n - &one;
    let abs_diff = |a: &Natural, b: &Natural| if a > b { a - b } else { b - a };
    let mut spent = 0u64;
    while spent < budget {
        let c = random_below(rng, &n_minus_1) + &one;
        let mut y = random_below(rng, n);
        let f = |v: &Natural| (v * v + &c) % n;
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = one.clone();
        let mut g = one.clone();
        let mut r = 1u64;
        while g.is_one() && spent < budget {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            spent += r;
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let batch = RHO_BATCH.min(r - k);
                for _ in 0..batch {
                    y = f(&y);
                    q = q * abs_diff(&x, &y) % n;
                }
                spent += batch;
                g = q.gcd(n);
                k += batch;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                spent += 1;
                g = abs_diff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.factors()
            .iter()
            .map(|pp| (pp.prime.to_u64().unwrap(), pp.exponent))
            .collect()
    }

    #[test]
    fn examples() {
        let f = factorize(&nat(2047), DEFAULT_RHO_BUDGET).unwrap();
        assert_eq!(pairs(&f), vec![(23, 1), (89, 1)]);
        assert!(f.is_complete());

        let f = factorize(&nat(1), DEFAULT_RHO_BUDGET).unwrap();
        assert!(f.factors().is_empty());
        assert!(f.is_complete());

        let f = factorize(&nat(11111), DEFAULT_RHO_BUDGET).unwrap();
        assert_eq!(pairs(&f), vec![(41, 1), (271, 1)]);

        assert_eq!(factorize(&nat(0), 10), Err(Error::ZeroFactorization));
    }

    #[test]
    fn semiprime_above_two_to_the_63() {
        let n = 4_294_967_291u64 * 4_294_967_279;
        let f = factorize(&nat(n), DEFAULT_RHO_BUDGET).unwrap();
        assert_eq!(pairs(&f), vec![(4_294_967_279, 1), (4_294_967_291, 1)]);
    }

    #[test]
    fn rho_splits_large_semiprimes() {
        // two primes just above the trial-division bound
        let n = nat(1_000_003) * nat(1_000_033);
        let f = factorize(&n, DEFAULT_RHO_BUDGET).unwrap();
        assert_eq!(pairs(&f), vec![(1_000_003, 1), (1_000_033, 1)]);

        // above u64: M_67 = 193707721 * 761838257287
        let m67 = (Natural::one() << 67u32) - 1u32;
        let f = factorize(&m67, DEFAULT_RHO_BUDGET).unwrap();
        assert_eq!(pairs(&f), vec![(193_707_721, 1), (761_838_257_287, 1)]);
        assert!(f.validate());
    }

    #[test]
    fn prime_powers_split() {
        let p = nat(1_000_003);
        let f = factorize(&(&p * &p * &p), DEFAULT_RHO_BUDGET).unwrap();
        assert_eq!(pairs(&f), vec![(1_000_003, 3)]);
    }

    #[test]
    fn zero_budget_leaves_cofactor() {
        let n = nat(6) * nat(1_000_003) * nat(1_000_033);
        let f = factorize(&n, 0).unwrap();
        assert!(!f.is_complete());
        assert_eq!(pairs(&f), vec![(2, 1), (3, 1)]);
        assert_eq!(f.cofactor(), &(nat(1_000_003) * nat(1_000_033)));
        assert!(f.validate());

        let refined = f.refine(DEFAULT_RHO_BUDGET);
        assert!(refined.is_complete());
        assert_eq!(refined, factorize(&n, DEFAULT_RHO_BUDGET).unwrap());
    }

    #[test]
    fn deterministic_for_identical_input() {
        let n = nat(999_999_000_001) * nat(1_000_000_007);
        let a = factorize(&n, DEFAULT_RHO_BUDGET).unwrap();
        let b = factorize(&n, DEFAULT_RHO_BUDGET).unwrap();
        assert_eq!(a, b);
        assert!(a.is_complete());
    }

    #[test]
    fn validate_rejects_broken_invariants() {
        let good = factorize(&nat(2047), 100).unwrap();
        assert!(good.validate());
        let composite_prime = Factorization::from_parts([(nat(4), 1)], Natural::one());
        assert!(!composite_prime.validate());
        let mut bad_value = good.clone();
        bad_value.value = nat(2049);
        assert!(!bad_value.validate());
    }

    #[test]
    fn product_merges_repeated_primes() {
        let a = factorize(&nat(12), 100).unwrap();
        let b = factorize(&nat(18), 100).unwrap();
        let p = Factorization::product([&a, &b]);
        assert_eq!(p.value(), &nat(216));
        assert_eq!(pairs(&p), vec![(2, 3), (3, 3)]);
    }
}
