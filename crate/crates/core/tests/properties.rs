mod common;

use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

use totient_verify::arith::{
    divisors, euler_phi, factorize, gcd, is_probable_prime, largest_prime_factor, mobius,
    multiplicative_order_is, Natural, DEFAULT_RHO_BUDGET,
};
use totient_verify::cyclotomic::{cyclotomic_value, decompose};
use totient_verify::theorems::{
    family_case, order_check, reduce_to_coprime, target_value, verify, verify_direct,
    witness_existence, witness_explicit, CaseParams, CongruenceCase, Family, FamilyCase, Mode,
    Status, Witness,
};

fn nat(v: u64) -> Natural {
    Natural::from(v)
}

fn phi(n: u64) -> u64 {
    euler_phi(&factorize(&nat(n), DEFAULT_RHO_BUDGET).unwrap())
        .unwrap()
        .to_u64()
        .unwrap()
}

fn check_factorization(n: &Natural) {
    let f = factorize(n, DEFAULT_RHO_BUDGET).unwrap();
    let mut product = f.cofactor().clone();
    let mut previous = Natural::zero();
    for pp in f.factors() {
        assert!(pp.prime > previous, "primes must increase");
        assert!(is_probable_prime(&pp.prime));
        product *= pp.prime.pow(pp.exponent);
        previous = pp.prime.clone();
    }
    assert_eq!(&product, n);
    assert_eq!(f.is_complete(), f.cofactor().is_one());
}

proptest! {
    #[test]
    fn factorization_invariants_u64(n in 1u64..) {
        check_factorization(&nat(n));
    }

    #[test]
    fn factorization_invariants_products(a in 1u64..1 << 32, b in 1u64..1 << 32, c in 1u32..1_000_000) {
        check_factorization(&(nat(a) * nat(b) * c));
    }

    #[test]
    fn factorization_matches_trial_division(n in 1u64..5_000_000) {
        let f = factorize(&nat(n), DEFAULT_RHO_BUDGET).unwrap();
        let got: Vec<(u64, u32)> = f.factors().iter().map(|pp| (pp.prime.to_u64().unwrap(), pp.exponent)).collect();
        prop_assert_eq!(got, common::trial_factor(n));
    }

    #[test]
    fn totient_is_multiplicative(a in 1u64..=1000, b in 1u64..=1000) {
        prop_assume!(common::gcd(a, b) == 1);
        prop_assert_eq!(phi(a * b), phi(a) * phi(b));
    }

    #[test]
    fn divisibility_transport(m in 1u64..=1000, k in 1u64..=100) {
        let n = m * k;
        prop_assert_eq!(phi(n) % phi(m), 0);
    }

    #[test]
    fn exact_order_divides_totient(a in 1u64..10_000, modulus in 2u64..=10_000) {
        prop_assume!(common::gcd(a, modulus) == 1);
        let phi_m = common::brute_phi(modulus);
        for m in common::trial_factor(phi_m).iter().map(|&(p, _)| phi_m / p).chain([phi_m]) {
            if multiplicative_order_is(&nat(a), &nat(modulus), &nat(m)).unwrap() {
                prop_assert_eq!(phi_m % m, 0);
            }
        }
        // the true order always certifies
        let mut order = 1;
        let mut x = a % modulus;
        while x != 1 {
            x = x * a % modulus;
            order += 1;
        }
        prop_assert!(multiplicative_order_is(&nat(a), &nat(modulus), &nat(order)).unwrap());
        prop_assert_eq!(phi_m % order, 0);
    }

    #[test]
    fn reduction_divides_target(x in 1u64..60, y in 1u64..60, g in 1u64..6, n in 1u64..12) {
        prop_assume!(x < y);
        for case in CongruenceCase::ALL {
            if case == CongruenceCase::SumQuotient && n % 2 == 0 {
                continue;
            }
            let p = CaseParams::from_u64(g * x, g * y, n).unwrap();
            let r = reduce_to_coprime(&p);
            prop_assert!(r.is_coprime());
            let big = target_value(case, &p).unwrap();
            let small = target_value(case, &r).unwrap();
            prop_assert!((big % small).is_zero());
        }
    }
}

#[test]
fn gcd_agrees_with_euclid() {
    for a in 0..200u64 {
        for b in 0..200u64 {
            assert_eq!(gcd(&nat(a), &nat(b)), nat(common::gcd(a, b)));
        }
    }
}

#[test]
fn mobius_divisor_sum() {
    for n in 1..=1000u64 {
        let sum: i64 = divisors(&nat(n))
            .unwrap()
            .iter()
            .map(|d| i64::from(mobius(d).unwrap()))
            .sum();
        assert_eq!(sum, i64::from(n == 1), "n = {n}");
        assert_eq!(i64::from(mobius(&nat(n)).unwrap()), common::mobius_trial(n));
    }
}

#[test]
fn divisors_and_largest_prime_against_trial_division() {
    for n in 2..=3000u64 {
        let expected: Vec<Natural> = (1..=n).filter(|d| n % d == 0).map(nat).collect();
        assert_eq!(divisors(&nat(n)).unwrap(), expected);
        assert_eq!(
            largest_prime_factor(&nat(n)).unwrap(),
            nat(common::largest_prime_trial(n))
        );
    }
}

#[test]
fn cyclotomic_values_match_recursive_oracle() {
    for n in 1..=24u64 {
        for a in 2..=12u64 {
            for b in 1..a {
                let expected = common::cyclotomic_recursive(n, a, b);
                let got = cyclotomic_value(n, &nat(a), &nat(b)).unwrap();
                assert_eq!(got, expected, "Φ_{n}({a}, {b})");
            }
        }
    }
}

#[test]
fn cyclotomic_magnitude_bounds() {
    for n in 2..=24u64 {
        let degree = u32::try_from(common::brute_phi(n)).unwrap();
        for a in 2..=12u64 {
            for b in 1..a {
                let v = cyclotomic_value(n, &nat(a), &nat(b)).unwrap();
                assert!(
                    nat(a - b).pow(degree) <= v,
                    "lower bound at Φ_{n}({a}, {b})"
                );
                assert!(
                    v <= nat(a + b).pow(degree),
                    "upper bound at Φ_{n}({a}, {b})"
                );
            }
        }
    }
}

#[test]
fn decomposition_product_is_target_on_grid() {
    for case in CongruenceCase::ALL {
        for n in 1..=12u64 {
            if case == CongruenceCase::SumQuotient && n % 2 == 0 {
                continue;
            }
            for x in 1..=20u64 {
                for y in x + 1..=20 {
                    let p = CaseParams::from_u64(x, y, n).unwrap();
                    let d = decompose(case, n, &nat(y), &nat(x)).unwrap();
                    assert_eq!(d.product, target_value(case, &p).unwrap());
                }
            }
        }
    }
}

#[test]
fn direct_totients_match_brute_force_on_small_targets() {
    for case in CongruenceCase::ALL {
        for n in 1..=6u64 {
            if case == CongruenceCase::SumQuotient && n % 2 == 0 {
                continue;
            }
            for x in 1..=8u64 {
                for y in x + 1..=8 {
                    let p = CaseParams::from_u64(x, y, n).unwrap();
                    let r = verify_direct(case, &p, DEFAULT_RHO_BUDGET).unwrap();
                    let target = r.target.to_u64().unwrap();
                    if target > 300_000 {
                        continue;
                    }
                    assert_eq!(
                        r.phi,
                        Some(nat(common::brute_phi(target))),
                        "{case} {x} {y} {n}"
                    );
                }
            }
        }
    }
}

#[test]
fn witness_implies_direct_verification() {
    for case in CongruenceCase::ALL {
        for n in 3..=13u64 {
            if case == CongruenceCase::SumQuotient && n % 2 == 0 {
                continue;
            }
            for x in 1..=9u64 {
                for y in x + 1..=9 {
                    let p = CaseParams::from_u64(x, y, n).unwrap();
                    let Ok(Witness::Found(q)) = witness_explicit(case, &p, DEFAULT_RHO_BUDGET)
                    else {
                        continue;
                    };
                    let r = verify_direct(case, &p, DEFAULT_RHO_BUDGET).unwrap();
                    assert_eq!(r.status, Status::Verified, "{case} {x} {y} {n}");
                    assert!((&r.target % &q).is_zero());
                    assert!((&q % n).is_one());
                }
            }
        }
    }
}

#[test]
fn existence_is_sound() {
    for case in CongruenceCase::ALL {
        for n in 3..=12u64 {
            if case == CongruenceCase::SumQuotient && n % 2 == 0 {
                continue;
            }
            for x in 1..=12u64 {
                for y in x + 1..=12 {
                    let p = CaseParams::from_u64(x, y, n).unwrap();
                    let e = witness_existence(case, &p).unwrap();
                    if !e.exists {
                        continue;
                    }
                    let f = factorize(&e.stripped, DEFAULT_RHO_BUDGET).unwrap();
                    assert!(f.is_complete());
                    for q in f.primes() {
                        assert!((q % e.phi_index).is_one(), "{q} in {case} {x} {y} {n}");
                    }
                }
            }
        }
    }
}

#[test]
fn order_strengthens_congruence() {
    for n in 1..=10u64 {
        for x in 1..=10u64 {
            for y in x + 1..=10 {
                if common::gcd(x, y) != 1 {
                    continue;
                }
                let cert = order_check(&nat(x), &nat(y), n).unwrap();
                assert!(cert.holds);
                let p = CaseParams::from_u64(x, y, n).unwrap();
                let r = verify_direct(CongruenceCase::SumPower, &p, DEFAULT_RHO_BUDGET).unwrap();
                let phi = r.phi.expect("small targets factor");
                assert!((phi % (2 * n)).is_zero(), "x={x} y={y} n={n}");
            }
        }
    }
}

#[test]
fn reduction_transport() {
    for case in CongruenceCase::ALL {
        for n in 1..=9u64 {
            if !case.claims(n) {
                continue;
            }
            for x in 1..=12u64 {
                for y in x + 1..=12 {
                    let p = CaseParams::from_u64(x, y, n).unwrap();
                    if p.is_coprime() {
                        continue;
                    }
                    let reduced =
                        verify_direct(case, &reduce_to_coprime(&p), DEFAULT_RHO_BUDGET).unwrap();
                    if reduced.status == Status::Verified {
                        let original = verify_direct(case, &p, DEFAULT_RHO_BUDGET).unwrap();
                        assert_eq!(original.residue, Some(Natural::zero()));
                    }
                }
            }
        }
    }
}

#[test]
fn family_targets_match_closed_forms() {
    for n in 1..=16u64 {
        let e = n as u32;
        for b in 2..=12u64 {
            let bn = nat(b).pow(e);
            let expect = [
                (Family::CunninghamPlus, &bn + 1u32),
                (Family::CunninghamMinus, &bn - 1u32),
                (Family::Repunit, (&bn - 1u32) / (b - 1)),
            ];
            for (family, value) in expect {
                let (case, p) = family_case(&FamilyCase::new(family, b, n)).unwrap();
                assert_eq!(target_value(case, &p).unwrap(), value);
            }
        }
        let (case, p) = family_case(&FamilyCase::mersenne(n)).unwrap();
        assert_eq!(
            target_value(case, &p).unwrap(),
            (Natural::one() << e) - 1u32
        );
    }
}

#[test]
fn counterexamples_only_outside_claimed_range() {
    for case in CongruenceCase::ALL {
        for n in 1..=11u64 {
            if case == CongruenceCase::SumQuotient && n % 2 == 0 {
                continue;
            }
            for x in 1..=10u64 {
                for y in x + 1..=10 {
                    let p = CaseParams::from_u64(x, y, n).unwrap();
                    let r = verify(
                        case,
                        &p,
                        Mode::Direct,
                        DEFAULT_RHO_BUDGET,
                        &totient_verify::arith::Uncached,
                    )
                    .unwrap();
                    if r.status == Status::Counterexample {
                        assert!(!case.claims(n), "{case} {x} {y} {n}");
                    }
                }
            }
        }
    }
    // the quotient sum case really does fail at n = 3
    let p = CaseParams::from_u64(1, 2, 3).unwrap();
    assert_eq!(
        verify_direct(CongruenceCase::SumQuotient, &p, DEFAULT_RHO_BUDGET)
            .unwrap()
            .status,
        Status::Counterexample
    );
}
