use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SweepConfig;
use crate::error::{Error, Result};
use crate::theorems::{Status, VerificationRecord};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusCounts {
    pub verified: usize,
    pub witness_found: usize,
    pub counterexample: usize,
    pub unresolved: usize,
    pub extra_scope: usize,
    pub exceptional: usize,
}

impl StatusCounts {
    pub fn add(&mut self, status: Status) {
        *self.slot(status) += 1;
    }

    pub fn get(&self, status: Status) -> usize {
        match status {
            Status::Verified => self.verified,
            Status::WitnessFound => self.witness_found,
            Status::Counterexample => self.counterexample,
            Status::Unresolved => self.unresolved,
            Status::ExtraScope => self.extra_scope,
            Status::Exceptional => self.exceptional,
        }
    }

    fn slot(&mut self, status: Status) -> &mut usize {
        match status {
            Status::Verified => &mut self.verified,
            Status::WitnessFound => &mut self.witness_found,
            Status::Counterexample => &mut self.counterexample,
            Status::Unresolved => &mut self.unresolved,
            Status::ExtraScope => &mut self.extra_scope,
            Status::Exceptional => &mut self.exceptional,
        }
    }

    pub fn total(&self) -> usize {
        Status::ALL.iter().map(|&s| self.get(s)).sum()
    }
}

/// Aggregate outcome of a sweep.
///
/// The JSON form carries the counts and the non-`Verified` records; the full
/// per-record listing is only emitted as CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: SweepConfig,
    pub counts: StatusCounts,
    pub non_verified: Vec<VerificationRecord>,
    pub runtime_ms: f64,
    pub cache_hits: u64,
    pub cache_misses: u64,
    #[serde(skip)]
    pub records: Vec<VerificationRecord>,
}

impl Report {
    pub fn new(config: SweepConfig, records: Vec<VerificationRecord>) -> Self {
        let mut counts = StatusCounts::default();
        for r in &records {
            counts.add(r.status);
        }
        let non_verified = records
            .iter()
            .filter(|r| r.status != Status::Verified)
            .cloned()
            .collect();
        Report {
            config,
            counts,
            non_verified,
            runtime_ms: 0.0,
            cache_hits: 0,
            cache_misses: 0,
            records,
        }
    }

    /// Records with timing stripped, for run-to-run comparison.
    pub fn outcome(&self) -> Vec<VerificationRecord> {
        self.records
            .iter()
            .map(VerificationRecord::without_timing)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::InvalidParams(format!("unknown format {other:?}"))),
        }
    }
}

pub const CSV_HEADER: [&str; 10] = [
    "case",
    "n",
    "first",
    "second",
    "target",
    "mode",
    "status",
    "witness",
    "phi_residue",
    "elapsed_ms",
];

pub fn emit_report(r: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(r).expect("reports serialize");
            out.push(b'\n');
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).expect("writing to memory");
            let opt = |v: &Option<crate::Natural>| {
                v.as_ref().map(ToString::to_string).unwrap_or_default()
            };
            for rec in &r.records {
                w.write_record([
                    rec.case.to_string(),
                    rec.n().to_string(),
                    rec.params.first().to_string(),
                    rec.params.second().to_string(),
                    rec.target.to_string(),
                    rec.mode.to_string(),
                    rec.status.to_string(),
                    opt(&rec.witness),
                    opt(&rec.residue),
                    format!("{:.3}", rec.elapsed_ms),
                ])
                .expect("writing to memory");
            }
            w.into_inner().expect("flushing to memory")
        }
    }
}
