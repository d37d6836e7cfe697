use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{CaseParams, CongruenceCase};
use crate::arith::Natural;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `2^n - 1`
    Mersenne,
    /// `b^n + 1`
    CunninghamPlus,
    /// `b^n - 1`
    CunninghamMinus,
    /// `(b^n - 1) / (b - 1)`
    Repunit,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Mersenne => "mersenne",
            Family::CunninghamPlus => "cunningham+",
            Family::CunninghamMinus => "cunningham-",
            Family::Repunit => "repunit",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mersenne" => Ok(Family::Mersenne),
            "cunningham+" => Ok(Family::CunninghamPlus),
            "cunningham-" => Ok(Family::CunninghamMinus),
            "repunit" => Ok(Family::Repunit),
            other => Err(Error::InvalidParams(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyCase {
    pub family: Family,
    pub base: Natural,
    pub n: u64,
}

impl FamilyCase {
    pub fn mersenne(n: u64) -> Self {
        FamilyCase {
            family: Family::Mersenne,
            base: Natural::from(2u8),
            n,
        }
    }

    pub fn new(family: Family, base: u64, n: u64) -> Self {
        FamilyCase {
            family,
            base: Natural::from(base),
            n,
        }
    }
}

/// Maps a family member onto the congruence case it instantiates, always
/// with `x = 1`.
pub fn family_case(f: &FamilyCase) -> Result<(CongruenceCase, CaseParams)> {
    let two = Natural::from(2u8);
    match f.family {
        Family::Mersenne if f.base != two => {
            return Err(Error::InvalidParams("Mersenne numbers have base 2".into()))
        }
        _ if f.base < two => return Err(Error::InvalidParams("base must be at least 2".into())),
        _ => {}
    }
    let case = match f.family {
        Family::Mersenne | Family::CunninghamMinus => CongruenceCase::DiffPower,
        Family::CunninghamPlus => CongruenceCase::SumPower,
        Family::Repunit => CongruenceCase::DiffQuotient,
    };
    Ok((
        case,
        CaseParams::new(Natural::from(1u8), f.base.clone(), f.n)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::target_value;

    fn target(f: FamilyCase) -> Natural {
        let (case, params) = family_case(&f).unwrap();
        target_value(case, &params).unwrap()
    }

    #[test]
    fn examples() {
        let (case, params) = family_case(&FamilyCase::mersenne(11)).unwrap();
        assert_eq!(case, CongruenceCase::DiffPower);
        assert_eq!(params, CaseParams::from_u64(1, 2, 11).unwrap());
        assert_eq!(target(FamilyCase::mersenne(11)), Natural::from(2047u32));

        let f = FamilyCase::new(Family::CunninghamPlus, 2, 11);
        assert_eq!(family_case(&f).unwrap().0, CongruenceCase::SumPower);
        assert_eq!(target(f), Natural::from(2049u32));

        let f = FamilyCase::new(Family::Repunit, 10, 5);
        assert_eq!(family_case(&f).unwrap().0, CongruenceCase::DiffQuotient);
        assert_eq!(target(f), Natural::from(11111u32));
    }

    #[test]
    fn bad_bases() {
        assert!(family_case(&FamilyCase::new(Family::Repunit, 1, 5)).is_err());
        assert!(family_case(&FamilyCase::new(Family::CunninghamPlus, 0, 5)).is_err());
        assert!(family_case(&FamilyCase::new(Family::Mersenne, 3, 5)).is_err());
    }

    #[test]
    fn names_round_trip() {
        for family in [
            Family::Mersenne,
            Family::CunninghamPlus,
            Family::CunninghamMinus,
            Family::Repunit,
        ] {
            assert_eq!(family.to_string().parse::<Family>().unwrap(), family);
        }
    }
}
