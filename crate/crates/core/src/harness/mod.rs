//! Grid sweeps over many instances with a shared factorization cache.
//!
//! Records always come back in canonical grid order (case, n, first, second)
//! whatever the worker count, so two runs of the same configuration can be
//! diffed line by line once `elapsed_ms` is ignored.

mod cache;
mod report;

pub use cache::{CacheEntry, FactorCache};
pub use report::{emit_report, Format, Report, StatusCounts, CSV_HEADER};

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{Natural, DEFAULT_RHO_BUDGET};
use crate::error::{Error, Result};
use crate::theorems::{verify, CaseParams, CongruenceCase, Mode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub cases: Vec<CongruenceCase>,
    pub n_min: u64,
    pub n_max: u64,
    /// Upper bound for x, y and z; the lower bound is 1.
    pub value_max: u64,
    pub mode: Mode,
    pub budget: u64,
    pub parallelism: usize,
    pub cache_path: Option<PathBuf>,
    /// Also run the quotient sum case at odd n below 5, where the
    /// congruence is not claimed.
    #[serde(default)]
    pub include_extra_scope: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            cases: CongruenceCase::ALL.to_vec(),
            n_min: 1,
            n_max: 20,
            value_max: 100,
            mode: Mode::Existence,
            budget: DEFAULT_RHO_BUDGET,
            parallelism: 1,
            cache_path: None,
            include_extra_scope: false,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_min < 1 {
            return Err(Error::InvalidConfig("n_min must be at least 1".into()));
        }
        if self.n_min > self.n_max {
            return Err(Error::InvalidConfig("n_min exceeds n_max".into()));
        }
        if self.value_max < 2 {
            return Err(Error::InvalidConfig("value_max must be at least 2".into()));
        }
        if self.parallelism < 1 {
            return Err(Error::InvalidConfig(
                "parallelism must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Whether `(case, n)` belongs to the grid. Even n never works for the
    /// quotient sum case; odd n below 5 only with `include_extra_scope`.
    pub fn includes(&self, case: CongruenceCase, n: u64) -> bool {
        match case {
            CongruenceCase::SumQuotient => {
                n % 2 == 1 && (self.include_extra_scope || case.claims(n))
            }
            _ => true,
        }
    }

    fn sorted_cases(&self) -> Vec<CongruenceCase> {
        let mut cases = self.cases.clone();
        cases.sort();
        cases.dedup();
        cases
    }

    /// Number of instances, computed without enumerating them.
    pub fn grid_size(&self) -> usize {
        let v = self.value_max as usize;
        let pairs = v * (v - 1) / 2;
        let slots: usize = self
            .sorted_cases()
            .into_iter()
            .map(|case| {
                (self.n_min..=self.n_max)
                    .filter(|&n| self.includes(case, n))
                    .count()
            })
            .sum();
        slots * pairs
    }

    pub fn grid(&self) -> Vec<(CongruenceCase, CaseParams)> {
        let mut out = Vec::new();
        for case in self.sorted_cases() {
            for n in (self.n_min..=self.n_max).filter(|&n| self.includes(case, n)) {
                for first in 1..self.value_max {
                    for second in first + 1..=self.value_max {
                        let params =
                            CaseParams::new(Natural::from(first), Natural::from(second), n)
                                .expect("grid parameters are valid");
                        out.push((case, params));
                    }
                }
            }
        }
        out
    }
}

/// Runs a sweep with the cache named in the configuration (or none).
pub fn run_sweep(config: &SweepConfig) -> Result<Report> {
    config.validate()?;
    let cache = match &config.cache_path {
        Some(path) => FactorCache::open(path),
        None => FactorCache::in_memory(),
    };
    run_sweep_with(config, &cache, None)
}

/// Runs a sweep against an already opened cache. `progress` is called with
/// the number of finished instances after each one completes.
pub fn run_sweep_with(
    config: &SweepConfig,
    cache: &FactorCache,
    progress: Option<&(dyn Fn(usize) + Sync)>,
) -> Result<Report> {
    config.validate()?;
    let start = Instant::now();
    let (hits0, misses0) = (cache.hits(), cache.misses());
    let grid = config.grid();
    let done = AtomicUsize::new(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))?;

    let records = pool.install(|| {
        grid.par_iter()
            .map(|(case, params)| {
                let record = verify(*case, params, config.mode, config.budget, cache);
                let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
                if let Some(report) = progress {
                    report(finished);
                }
                record
            })
            .collect::<Result<Vec<_>>>()
    })?;
    cache.flush();

    let mut report = Report::new(config.clone(), records);
    report.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    report.cache_hits = cache.hits() - hits0;
    report.cache_misses = cache.misses() - misses0;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::Status;

    #[test]
    fn small_direct_sweep() {
        let config = SweepConfig {
            cases: vec![CongruenceCase::SumPower],
            n_min: 1,
            n_max: 3,
            value_max: 3,
            mode: Mode::Direct,
            ..SweepConfig::default()
        };
        let report = run_sweep(&config).unwrap();
        assert_eq!(report.records.len(), 9);
        assert_eq!(report.counts.verified, 9);
        assert_eq!(config.grid_size(), 9);
    }

    #[test]
    fn small_explicit_sweep() {
        let config = SweepConfig {
            cases: vec![CongruenceCase::SumQuotient],
            n_min: 5,
            n_max: 5,
            value_max: 3,
            mode: Mode::Explicit,
            ..SweepConfig::default()
        };
        let report = run_sweep(&config).unwrap();
        let witnesses: Vec<String> = report
            .records
            .iter()
            .map(|r| {
                assert_eq!(r.status, Status::WitnessFound);
                r.witness.as_ref().unwrap().to_string()
            })
            .collect();
        assert_eq!(witnesses, ["11", "61", "11"]);
    }

    #[test]
    fn empty_case_set() {
        let config = SweepConfig {
            cases: vec![],
            ..SweepConfig::default()
        };
        let report = run_sweep(&config).unwrap();
        assert!(report.records.is_empty());
        assert_eq!(report.counts, StatusCounts::default());
    }

    #[test]
    fn invalid_configs() {
        for bad in [
            SweepConfig {
                n_min: 0,
                ..SweepConfig::default()
            },
            SweepConfig {
                n_min: 5,
                n_max: 4,
                ..SweepConfig::default()
            },
            SweepConfig {
                value_max: 1,
                ..SweepConfig::default()
            },
            SweepConfig {
                parallelism: 0,
                ..SweepConfig::default()
            },
        ] {
            assert!(matches!(run_sweep(&bad), Err(Error::InvalidConfig(_))));
        }
    }

    #[test]
    fn quotient_sum_grid_filtering() {
        let mut config = SweepConfig {
            cases: vec![CongruenceCase::SumQuotient],
            n_min: 1,
            n_max: 9,
            value_max: 4,
            ..SweepConfig::default()
        };
        let ns = |c: &SweepConfig| {
            let mut v: Vec<u64> = c.grid().iter().map(|(_, p)| p.n()).collect();
            v.dedup();
            v
        };
        assert_eq!(ns(&config), [5, 7, 9]);
        assert_eq!(config.grid_size(), 18);
        config.include_extra_scope = true;
        assert_eq!(ns(&config), [1, 3, 5, 7, 9]);
        assert_eq!(config.grid_size(), 30);
    }
}
