//! Independent reference implementations used as test oracles. Nothing here
//! calls into the library under test.

#![allow(dead_code)]

use num_bigint::BigUint;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// φ(m) by counting 1 <= k <= m with gcd(k, m) = 1.
pub fn brute_phi(m: u64) -> u64 {
    (1..=m).filter(|&k| gcd(k, m) == 1).count() as u64
}

pub fn is_prime_trial(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Prime factorization by plain trial division.
pub fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn phi_from_trial(n: u64) -> u64 {
    trial_factor(n)
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}

pub fn mobius_trial(n: u64) -> i64 {
    let f = trial_factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn largest_prime_trial(n: u64) -> u64 {
    trial_factor(n).last().map(|&(p, _)| p).unwrap_or(1)
}

/// Φ_n(a, b) via the recursion a^n - b^n = ∏_{d | n} Φ_d(a, b).
pub fn cyclotomic_recursive(n: u64, a: u64, b: u64) -> BigUint {
    let e = u32::try_from(n).expect("small index");
    let mut value = BigUint::from(a).pow(e) - BigUint::from(b).pow(e);
    for d in 1..n {
        if n.is_multiple_of(d) {
            value /= cyclotomic_recursive(d, a, b);
        }
    }
    value
}
