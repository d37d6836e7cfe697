use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{
    target_value, witness_existence, witness_explicit_with, CaseParams, CongruenceCase, Witness,
};
use crate::arith::{euler_phi, FactorSource, Factorization, Natural, Uncached};
use crate::cyclotomic::decompose;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Factor the target and compute φ.
    Direct,
    /// Certify a witness prime without factoring.
    Existence,
    /// Factor the cyclotomic part and report the witness prime.
    Explicit,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Direct => "direct",
            Mode::Existence => "existence",
            Mode::Explicit => "explicit",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Mode::Direct),
            "existence" => Ok(Mode::Existence),
            "explicit" => Ok(Mode::Explicit),
            other => Err(Error::InvalidParams(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    Verified,
    WitnessFound,
    Counterexample,
    Unresolved,
    /// Degenerate exploration (`x == y`); never counts as a counterexample.
    ExtraScope,
    /// No cyclotomic witness exists; settled by direct verification.
    Exceptional,
}

impl Status {
    pub const ALL: [Status; 6] = [
        Status::Verified,
        Status::WitnessFound,
        Status::Counterexample,
        Status::Unresolved,
        Status::ExtraScope,
        Status::Exceptional,
    ];
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One verified instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub case: CongruenceCase,
    #[serde(flatten)]
    pub params: CaseParams,
    #[serde(with = "crate::decimal")]
    pub target: Natural,
    pub mode: Mode,
    pub status: Status,
    #[serde(with = "crate::decimal::option")]
    pub witness: Option<Natural>,
    #[serde(with = "crate::decimal::option")]
    pub phi: Option<Natural>,
    #[serde(with = "crate::decimal::option")]
    pub residue: Option<Natural>,
    /// Outside the range the congruence is claimed for: degenerate inputs,
    /// the quotient sum case below `n = 5`, or witness modes below `n = 5`.
    pub extra_scope: bool,
    pub elapsed_ms: f64,
}

impl VerificationRecord {
    /// Copy with the timing field zeroed, for equality checks.
    pub fn without_timing(&self) -> Self {
        VerificationRecord {
            elapsed_ms: 0.0,
            ..self.clone()
        }
    }

    pub fn n(&self) -> u64 {
        self.params.n()
    }
}

pub fn verify_direct(
    case: CongruenceCase,
    p: &CaseParams,
    budget: u64,
) -> Result<VerificationRecord> {
    verify_direct_with(case, p, budget, &Uncached)
}

/// Computes φ of the target exactly, factoring each cyclotomic piece on its
/// own and merging the results.
pub fn verify_direct_with(
    case: CongruenceCase,
    p: &CaseParams,
    budget: u64,
    source: &dyn FactorSource,
) -> Result<VerificationRecord> {
    let start = Instant::now();
    let target = target_value(case, p)?;
    let factorization = if p.is_degenerate() {
        if target.is_zero() {
            None
        } else {
            Some(source.factorize(&target, budget)?)
        }
    } else {
        let d = decompose(case, p.n(), p.second(), p.first())?;
        let parts = d
            .factors
            .iter()
            .map(|f| source.factorize(&f.value, budget))
            .collect::<Result<Vec<_>>>()?;
        Some(Factorization::product(&parts))
    };

    let mut record = VerificationRecord {
        case,
        params: p.clone(),
        target,
        mode: Mode::Direct,
        status: Status::Unresolved,
        witness: None,
        phi: None,
        residue: None,
        extra_scope: p.is_degenerate() || !case.claims(p.n()),
        elapsed_ms: 0.0,
    };
    if let Some(f) = factorization {
        if f.value() != &record.target {
            return Err(Error::Internal(format!(
                "factorization of {} does not multiply back",
                record.target
            )));
        }
        if f.is_complete() {
            let phi = euler_phi(&f)?;
            let residue = &phi % p.n();
            record.status = if residue.is_zero() {
                Status::Verified
            } else {
                Status::Counterexample
            };
            record.phi = Some(phi);
            record.residue = Some(residue);
        }
    }
    if p.is_degenerate() {
        record.status = Status::ExtraScope;
    }
    record.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(record)
}

/// Verifies one instance in the requested mode.
///
/// Witness modes hand `n < 3` to direct verification. When no cyclotomic
/// witness exists the direct result is used and a passing instance is marked
/// [`Status::Exceptional`].
pub fn verify(
    case: CongruenceCase,
    p: &CaseParams,
    mode: Mode,
    budget: u64,
    source: &dyn FactorSource,
) -> Result<VerificationRecord> {
    let start = Instant::now();
    let direct_as = |mode: Mode| -> Result<VerificationRecord> {
        let mut r = verify_direct_with(case, p, budget, source)?;
        r.mode = mode;
        Ok(r)
    };
    if mode == Mode::Direct || p.is_degenerate() || p.n() < 3 {
        return direct_as(mode);
    }
    let fallback = || -> Result<VerificationRecord> {
        let mut r = direct_as(mode)?;
        if r.status == Status::Verified {
            r.status = Status::Exceptional;
        }
        r.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        Ok(r)
    };

    let mut record = VerificationRecord {
        case,
        params: p.clone(),
        target: target_value(case, p)?,
        mode,
        status: Status::Verified,
        witness: None,
        phi: None,
        residue: None,
        extra_scope: p.n() < 5 || !case.claims(p.n()),
        elapsed_ms: 0.0,
    };
    match mode {
        Mode::Existence => {
            if !witness_existence(case, p)?.exists {
                return fallback();
            }
        }
        Mode::Explicit => match witness_explicit_with(case, p, budget, source) {
            Ok(Witness::Found(q)) => {
                record.status = Status::WitnessFound;
                record.witness = Some(q);
            }
            Ok(Witness::Unresolved) => record.status = Status::Unresolved,
            Err(Error::NoWitness) => return fallback(),
            Err(e) => return Err(e),
        },
        Mode::Direct => unreachable!(),
    }
    record.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(record)
}
