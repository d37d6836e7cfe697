use std::ffi::{c_char, CStr};
use std::path::PathBuf;

use totient_verify::arith::{factorize, FactorSource, Factorization, Uncached};
use totient_verify::cli::ExitStatus;
use totient_verify::harness::{
    emit_report, run_sweep_with, FactorCache, Format, Report, SweepConfig,
};
use totient_verify::theorems::{
    verify, CaseParams, CongruenceCase, Mode, Status, VerificationRecord,
};

use crate::error::{guard, FfiError, TvStatus};
use crate::{into_c_string, read_natural, write_out};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TvCase {
    /// x^n + y^n
    SumPower = 0,
    /// z^n - x^n
    DiffPower = 1,
    /// (z^n - x^n)/(z - x)
    DiffQuotient = 2,
    /// (x^n + y^n)/(x + y)
    SumQuotient = 3,
}

impl From<TvCase> for CongruenceCase {
    fn from(c: TvCase) -> Self {
        match c {
            TvCase::SumPower => CongruenceCase::SumPower,
            TvCase::DiffPower => CongruenceCase::DiffPower,
            TvCase::DiffQuotient => CongruenceCase::DiffQuotient,
            TvCase::SumQuotient => CongruenceCase::SumQuotient,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TvMode {
    Direct = 0,
    Existence = 1,
    Explicit = 2,
}

impl From<TvMode> for Mode {
    fn from(m: TvMode) -> Self {
        match m {
            TvMode::Direct => Mode::Direct,
            TvMode::Existence => Mode::Existence,
            TvMode::Explicit => Mode::Explicit,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TvVerifyStatus {
    Verified = 0,
    WitnessFound = 1,
    Counterexample = 2,
    Unresolved = 3,
    ExtraScope = 4,
    Exceptional = 5,
}

impl From<Status> for TvVerifyStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Verified => TvVerifyStatus::Verified,
            Status::WitnessFound => TvVerifyStatus::WitnessFound,
            Status::Counterexample => TvVerifyStatus::Counterexample,
            Status::Unresolved => TvVerifyStatus::Unresolved,
            Status::ExtraScope => TvVerifyStatus::ExtraScope,
            Status::Exceptional => TvVerifyStatus::Exceptional,
        }
    }
}

impl From<TvVerifyStatus> for Status {
    fn from(s: TvVerifyStatus) -> Self {
        match s {
            TvVerifyStatus::Verified => Status::Verified,
            TvVerifyStatus::WitnessFound => Status::WitnessFound,
            TvVerifyStatus::Counterexample => Status::Counterexample,
            TvVerifyStatus::Unresolved => Status::Unresolved,
            TvVerifyStatus::ExtraScope => Status::ExtraScope,
            TvVerifyStatus::Exceptional => Status::Exceptional,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TvFormat {
    Json = 0,
    Csv = 1,
}

/// Sweep parameters. `case_mask` has bit `i` set for `TvCase` value `i`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct TvSweepConfig {
    pub case_mask: u32,
    pub n_min: u64,
    pub n_max: u64,
    pub value_max: u64,
    pub mode: TvMode,
    pub budget: u64,
    pub parallelism: u32,
    pub include_extra_scope: bool,
}

/// Opaque factorization handle.
pub struct TvFactorization(Factorization);

/// Opaque factorization cache, optionally file backed.
pub struct TvCache(FactorCache);

/// Opaque verification record.
pub struct TvRecord(VerificationRecord);

/// Opaque sweep report.
pub struct TvReport(Report);

unsafe fn borrow<'a, T>(ptr: *const T) -> Result<&'a T, FfiError> {
    ptr.as_ref()
        .ok_or_else(|| FfiError::new(TvStatus::NullPointer, "null handle"))
}

/// Factors the decimal number `n` with at most `budget` rho iterations per
/// composite. Budget exhaustion is not an error; check
/// `tv_factorization_is_complete`.
///
/// # Safety
/// `n` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tv_factorize(
    n: *const c_char,
    budget: u64,
    out: *mut *mut TvFactorization,
) -> TvStatus {
    guard(|| {
        let f = factorize(&read_natural(n)?, budget)?;
        write_out(out, Box::into_raw(Box::new(TvFactorization(f))))
    })
}

/// # Safety
/// `f` must be a live handle from `tv_factorize`.
#[no_mangle]
pub unsafe extern "C" fn tv_factorization_is_complete(f: *const TvFactorization) -> bool {
    f.as_ref().is_some_and(|f| f.0.is_complete())
}

/// Number of distinct primes found.
///
/// # Safety
/// `f` must be a live handle from `tv_factorize`.
#[no_mangle]
pub unsafe extern "C" fn tv_factorization_len(f: *const TvFactorization) -> usize {
    f.as_ref().map_or(0, |f| f.0.factors().len())
}

/// The `index`-th prime power, primes in increasing order.
///
/// # Safety
/// `f` must be a live handle; `prime` and `exponent` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn tv_factorization_factor(
    f: *const TvFactorization,
    index: usize,
    prime: *mut *mut c_char,
    exponent: *mut u32,
) -> TvStatus {
    guard(|| {
        let f = borrow(f)?;
        let pp =
            f.0.factors().get(index).ok_or_else(|| {
                FfiError::new(TvStatus::InvalidArgument, "factor index out of range")
            })?;
        write_out(exponent, pp.exponent)?;
        write_out(prime, into_c_string(pp.prime.to_string()))
    })
}

/// Unsplit cofactor (`"1"` when complete). Returns NULL for a NULL handle.
///
/// # Safety
/// `f` must be a live handle from `tv_factorize` or NULL.
#[no_mangle]
pub unsafe extern "C" fn tv_factorization_cofactor(f: *const TvFactorization) -> *mut c_char {
    f.as_ref().map_or(std::ptr::null_mut(), |f| {
        into_c_string(f.0.cofactor().to_string())
    })
}

/// Human-readable form, e.g. `"23 * 89"`.
///
/// # Safety
/// `f` must be a live handle from `tv_factorize` or NULL.
#[no_mangle]
pub unsafe extern "C" fn tv_factorization_to_string(f: *const TvFactorization) -> *mut c_char {
    f.as_ref().map_or(std::ptr::null_mut(), |f| {
        into_c_string(totient_verify::cli::format_factorization(&f.0))
    })
}

/// # Safety
/// `f` must come from `tv_factorize` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tv_factorization_free(f: *mut TvFactorization) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Opens a cache backed by the file at `path`, or an in-memory cache when
/// `path` is NULL. Never fails: unreadable or unwritable files degrade to
/// memory-only operation.
///
/// # Safety
/// `path` must be a valid C string or NULL.
#[no_mangle]
pub unsafe extern "C" fn tv_cache_open(path: *const c_char) -> *mut TvCache {
    let cache = if path.is_null() {
        FactorCache::in_memory()
    } else {
        match CStr::from_ptr(path).to_str() {
            Ok(p) => FactorCache::open(&PathBuf::from(p)),
            Err(_) => FactorCache::in_memory(),
        }
    };
    Box::into_raw(Box::new(TvCache(cache)))
}

/// Number of cached factorizations.
///
/// # Safety
/// `cache` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn tv_cache_len(cache: *const TvCache) -> usize {
    cache.as_ref().map_or(0, |c| c.0.len())
}

/// Writes pending entries to disk and releases the cache.
///
/// # Safety
/// `cache` must come from `tv_cache_open` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tv_cache_free(cache: *mut TvCache) {
    if !cache.is_null() {
        drop(Box::from_raw(cache));
    }
}

/// Verifies one instance. `first` is x; `second` is y for the sum cases and
/// z for the difference cases. `cache` may be NULL.
///
/// # Safety
/// String arguments must be valid C strings, `cache` a live handle or NULL,
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tv_verify(
    case: TvCase,
    first: *const c_char,
    second: *const c_char,
    n: u64,
    mode: TvMode,
    budget: u64,
    cache: *const TvCache,
    out: *mut *mut TvRecord,
) -> TvStatus {
    guard(|| {
        let params = CaseParams::new(read_natural(first)?, read_natural(second)?, n)?;
        let source: &dyn FactorSource = match cache.as_ref() {
            Some(c) => &c.0,
            None => &Uncached,
        };
        let record = verify(case.into(), &params, mode.into(), budget, source)?;
        write_out(out, Box::into_raw(Box::new(TvRecord(record))))
    })
}

/// # Safety
/// `r` must be a live record handle.
#[no_mangle]
pub unsafe extern "C" fn tv_record_status(r: *const TvRecord) -> TvVerifyStatus {
    r.as_ref()
        .map_or(TvVerifyStatus::Unresolved, |r| r.0.status.into())
}

/// Witness prime as a decimal string, or NULL when the record has none.
///
/// # Safety
/// `r` must be a live record handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn tv_record_witness(r: *const TvRecord) -> *mut c_char {
    r.as_ref()
        .and_then(|r| r.0.witness.as_ref())
        .map_or(std::ptr::null_mut(), |q| into_c_string(q.to_string()))
}

/// φ(N) as a decimal string, or NULL when it was not computed.
///
/// # Safety
/// `r` must be a live record handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn tv_record_phi(r: *const TvRecord) -> *mut c_char {
    r.as_ref()
        .and_then(|r| r.0.phi.as_ref())
        .map_or(std::ptr::null_mut(), |phi| into_c_string(phi.to_string()))
}

/// The full record as JSON.
///
/// # Safety
/// `r` must be a live record handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn tv_record_json(r: *const TvRecord) -> *mut c_char {
    r.as_ref().map_or(std::ptr::null_mut(), |r| {
        into_c_string(serde_json::to_string(&r.0).expect("records serialize"))
    })
}

/// # Safety
/// `r` must come from `tv_verify` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tv_record_free(r: *mut TvRecord) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Runs a grid sweep. `cache` may be NULL for a throwaway in-memory cache.
///
/// # Safety
/// `config` must point to a valid struct, `cache` be a live handle or NULL,
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tv_sweep(
    config: *const TvSweepConfig,
    cache: *const TvCache,
    out: *mut *mut TvReport,
) -> TvStatus {
    guard(|| {
        let c = borrow(config)?;
        let cases = CongruenceCase::ALL
            .into_iter()
            .enumerate()
            .filter(|(i, _)| c.case_mask & (1 << i) != 0)
            .map(|(_, case)| case)
            .collect();
        let config = SweepConfig {
            cases,
            n_min: c.n_min,
            n_max: c.n_max,
            value_max: c.value_max,
            mode: c.mode.into(),
            budget: c.budget,
            parallelism: c.parallelism as usize,
            cache_path: None,
            include_extra_scope: c.include_extra_scope,
        };
        let scratch;
        let cache = match cache.as_ref() {
            Some(handle) => &handle.0,
            None => {
                scratch = FactorCache::in_memory();
                &scratch
            }
        };
        let mut report = run_sweep_with(&config, cache, None)?;
        report.config.cache_path = cache.path().map(PathBuf::from);
        write_out(out, Box::into_raw(Box::new(TvReport(report))))
    })
}

/// Number of records in the report.
///
/// # Safety
/// `r` must be a live report handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn tv_report_len(r: *const TvReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.records.len())
}

/// Number of records with the given status.
///
/// # Safety
/// `r` must be a live report handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn tv_report_count(r: *const TvReport, status: TvVerifyStatus) -> usize {
    r.as_ref().map_or(0, |r| r.0.counts.get(status.into()))
}

/// Process exit code the CLI would use for this report: 0 all good,
/// 1 counterexample, 2 unresolved.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn tv_report_exit_code(r: *const TvReport) -> i32 {
    r.as_ref().map_or(ExitStatus::USAGE.0, |r| {
        ExitStatus::from_counts(&r.0.counts).0
    })
}

/// Serializes the report as JSON (summary) or CSV (one row per record).
///
/// # Safety
/// `r` must be a live report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tv_report_emit(
    r: *const TvReport,
    format: TvFormat,
    out: *mut *mut c_char,
) -> TvStatus {
    guard(|| {
        let r = borrow(r)?;
        let format = match format {
            TvFormat::Json => Format::Json,
            TvFormat::Csv => Format::Csv,
        };
        let bytes = emit_report(&r.0, format);
        let text = String::from_utf8(bytes)
            .map_err(|e| FfiError::new(TvStatus::Internal, e.to_string()))?;
        write_out(out, into_c_string(text))
    })
}

/// # Safety
/// `r` must come from `tv_sweep` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tv_report_free(r: *mut TvReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
