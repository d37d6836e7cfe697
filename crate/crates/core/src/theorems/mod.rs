//! The four congruence cases, their parameters and target values, plus the
//! witness-prime and multiplicative-order certificates built on top of them.

mod family;
mod verify;
mod witness;

pub use family::{family_case, Family, FamilyCase};
pub use verify::{verify, verify_direct, verify_direct_with, Mode, Status, VerificationRecord};
pub use witness::{
    order_check, witness_existence, witness_explicit, witness_explicit_with, ExistenceResult,
    OrderCertificate, Witness,
};

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, Natural};
use crate::error::{Error, Result};

/// Which of the four totient congruences an instance targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CongruenceCase {
    /// `x^n + y^n`
    SumPower,
    /// `z^n - x^n`
    DiffPower,
    /// `(z^n - x^n) / (z - x)`
    DiffQuotient,
    /// `(x^n + y^n) / (x + y)`, claimed for odd `n >= 5`
    SumQuotient,
}

impl CongruenceCase {
    pub const ALL: [CongruenceCase; 4] = [
        CongruenceCase::SumPower,
        CongruenceCase::DiffPower,
        CongruenceCase::DiffQuotient,
        CongruenceCase::SumQuotient,
    ];

    /// Short label `a`..`d`.
    pub fn letter(self) -> char {
        match self {
            CongruenceCase::SumPower => 'a',
            CongruenceCase::DiffPower => 'b',
            CongruenceCase::DiffQuotient => 'c',
            CongruenceCase::SumQuotient => 'd',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Self::ALL.into_iter().find(|case| case.letter() == c)
    }

    pub fn is_sum(self) -> bool {
        matches!(self, CongruenceCase::SumPower | CongruenceCase::SumQuotient)
    }

    /// Whether the congruence is claimed for this `n` at all.
    pub fn claims(self, n: u64) -> bool {
        match self {
            CongruenceCase::SumQuotient => n % 2 == 1 && n >= 5,
            _ => n >= 1,
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            CongruenceCase::SumPower => "x^n + y^n",
            CongruenceCase::DiffPower => "z^n - x^n",
            CongruenceCase::DiffQuotient => "(z^n - x^n)/(z - x)",
            CongruenceCase::SumQuotient => "(x^n + y^n)/(x + y)",
        }
    }
}

impl fmt::Display for CongruenceCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for CongruenceCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            if let Some(case) = Self::from_letter(c) {
                return Ok(case);
            }
        }
        Self::ALL
            .into_iter()
            .find(|case| case.to_string() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown case {s:?}")))
    }
}

/// Inputs of one instance. `first` is `x`; `second` is `y` for the sum
/// cases and `z` for the difference cases.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CaseParams {
    #[serde(with = "crate::decimal")]
    first: Natural,
    #[serde(with = "crate::decimal")]
    second: Natural,
    n: u64,
}

impl CaseParams {
    pub fn new(first: Natural, second: Natural, n: u64) -> Result<Self> {
        let params = Self::degenerate(first, second, n)?;
        if params.first >= params.second {
            return Err(Error::InvalidParams(format!(
                "need first < second, got {} and {}",
                params.first, params.second
            )));
        }
        Ok(params)
    }

    /// Like [`CaseParams::new`] but also accepts `first == second`.
    pub fn degenerate(first: Natural, second: Natural, n: u64) -> Result<Self> {
        if first.is_zero() || second.is_zero() || n == 0 {
            return Err(Error::InvalidParams(
                "x, y, z and n must be positive".into(),
            ));
        }
        if first > second {
            return Err(Error::InvalidParams(format!(
                "need first <= second, got {first} and {second}"
            )));
        }
        Ok(CaseParams { first, second, n })
    }

    pub fn from_u64(first: u64, second: u64, n: u64) -> Result<Self> {
        Self::new(Natural::from(first), Natural::from(second), n)
    }

    pub fn first(&self) -> &Natural {
        &self.first
    }

    pub fn second(&self) -> &Natural {
        &self.second
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn is_degenerate(&self) -> bool {
        self.first == self.second
    }

    pub fn is_coprime(&self) -> bool {
        gcd(&self.first, &self.second).is_one()
    }
}

fn exponent(n: u64) -> Result<u32> {
    u32::try_from(n).map_err(|_| Error::OutOfRange("exponent too large"))
}

/// The number whose totient the congruence is about.
pub fn target_value(case: CongruenceCase, p: &CaseParams) -> Result<Natural> {
    if p.is_degenerate() {
        return degenerate_target(case, &p.first, p.n);
    }
    target_from(case, &p.first, &p.second, p.n)
}

/// Closed-form target for `smaller < larger`, with exact division checked.
pub(crate) fn target_from(
    case: CongruenceCase,
    smaller: &Natural,
    larger: &Natural,
    n: u64,
) -> Result<Natural> {
    let e = exponent(n)?;
    let sum = || larger.pow(e) + smaller.pow(e);
    let diff = || larger.pow(e) - smaller.pow(e);
    let exact = |numerator: Natural, divisor: Natural| {
        let (q, r) = numerator.div_rem(&divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal(format!(
                "{divisor} does not divide {numerator}"
            )))
        }
    };
    match case {
        CongruenceCase::SumPower => Ok(sum()),
        CongruenceCase::DiffPower => Ok(diff()),
        CongruenceCase::DiffQuotient => exact(diff(), larger - smaller),
        CongruenceCase::SumQuotient => {
            if n.is_multiple_of(2) {
                return Err(Error::RequiresOddN);
            }
            exact(sum(), larger + smaller)
        }
    }
}

/// Targets at `x == y`, taking the quotients as polynomials before
/// evaluating. `z^n - x^n` is zero there.
fn degenerate_target(case: CongruenceCase, x: &Natural, n: u64) -> Result<Natural> {
    let e = exponent(n)?;
    match case {
        CongruenceCase::SumPower => Ok(x.pow(e) * 2u32),
        CongruenceCase::DiffPower => Ok(Natural::zero()),
        CongruenceCase::DiffQuotient => Ok(x.pow(e - 1) * n),
        CongruenceCase::SumQuotient => {
            if n.is_multiple_of(2) {
                return Err(Error::RequiresOddN);
            }
            Ok(x.pow(e - 1))
        }
    }
}

/// Divides both inputs by their gcd. The reduced target divides the original
/// one, so any prime witness found for it carries over.
pub fn reduce_to_coprime(p: &CaseParams) -> CaseParams {
    let g = gcd(&p.first, &p.second);
    CaseParams {
        first: &p.first / &g,
        second: &p.second / &g,
        n: p.n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use CongruenceCase::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn params(x: u64, y: u64, n: u64) -> CaseParams {
        CaseParams::from_u64(x, y, n).unwrap()
    }

    #[test]
    fn target_examples() {
        assert_eq!(target_value(SumPower, &params(1, 2, 3)).unwrap(), nat(9));
        assert_eq!(
            target_value(SumQuotient, &params(1, 2, 5)).unwrap(),
            nat(11)
        );
        assert_eq!(
            target_value(DiffQuotient, &params(1, 2, 6)).unwrap(),
            nat(63)
        );
        assert_eq!(target_value(DiffPower, &params(3, 5, 2)).unwrap(), nat(16));
        assert_eq!(
            target_value(SumQuotient, &params(1, 2, 4)),
            Err(Error::RequiresOddN)
        );
    }

    #[test]
    fn params_validation() {
        assert!(CaseParams::from_u64(0, 2, 3).is_err());
        assert!(CaseParams::from_u64(2, 2, 3).is_err());
        assert!(CaseParams::from_u64(3, 2, 3).is_err());
        assert!(CaseParams::from_u64(1, 2, 0).is_err());
        assert!(CaseParams::degenerate(nat(2), nat(2), 3).is_ok());
    }

    #[test]
    fn degenerate_targets() {
        let p = CaseParams::degenerate(nat(3), nat(3), 5).unwrap();
        assert_eq!(target_value(SumPower, &p).unwrap(), nat(486));
        assert_eq!(target_value(DiffPower, &p).unwrap(), nat(0));
        assert_eq!(target_value(DiffQuotient, &p).unwrap(), nat(405));
        assert_eq!(target_value(SumQuotient, &p).unwrap(), nat(81));
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_to_coprime(&params(2, 4, 3)), params(1, 2, 3));
        assert_eq!(reduce_to_coprime(&params(3, 5, 4)), params(3, 5, 4));
        assert_eq!(reduce_to_coprime(&params(6, 10, 5)), params(3, 5, 5));
    }

    #[test]
    fn case_letters_round_trip() {
        for case in CongruenceCase::ALL {
            assert_eq!(CongruenceCase::from_letter(case.letter()), Some(case));
            assert_eq!(case.to_string().parse::<CongruenceCase>().unwrap(), case);
        }
        assert!("e".parse::<CongruenceCase>().is_err());
    }
}
