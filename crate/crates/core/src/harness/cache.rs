//! Persistent factorization cache.
//!
//! The file holds one JSON object per line,
//! `{"v":"2047","f":[["23",1],["89",1]],"c":true}`, and is only ever appended
//! to. On load every line is re-validated (product and primality); bad lines
//! are dropped. A later complete entry supersedes an earlier incomplete one.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use log::warn;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, FactorSource, Factorization, Natural};
use crate::decimal;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    #[serde(rename = "v")]
    pub value: String,
    #[serde(rename = "f")]
    pub factors: Vec<(String, u32)>,
    #[serde(rename = "c")]
    pub complete: bool,
}

impl CacheEntry {
    pub fn from_factorization(f: &Factorization) -> Self {
        CacheEntry {
            value: f.value().to_string(),
            factors: f
                .factors()
                .iter()
                .map(|pp| (pp.prime.to_string(), pp.exponent))
                .collect(),
            complete: f.is_complete(),
        }
    }

    /// Rebuilds and re-validates the factorization; `None` if anything is off.
    pub fn to_factorization(&self) -> Option<Factorization> {
        let value = decimal::parse(&self.value).ok()?;
        let mut primes = Vec::with_capacity(self.factors.len());
        let mut product = Natural::one();
        for (p, e) in &self.factors {
            let p = decimal::parse(p).ok()?;
            if primes.last().is_some_and(|(prev, _)| *prev >= p) {
                return None;
            }
            product *= p.pow(*e);
            primes.push((p, *e));
        }
        if product.is_zero() {
            return None;
        }
        let (cofactor, r) = value.div_rem(&product);
        if !r.is_zero() || cofactor.is_one() != self.complete {
            return None;
        }
        let f = Factorization::from_parts(primes, cofactor);
        f.validate().then_some(f)
    }
}

#[derive(Debug, Default)]
struct Store {
    entries: HashMap<Natural, Factorization>,
    /// Entries added or upgraded since the last flush.
    pending: Vec<Factorization>,
}

/// Thread-safe factorization cache, optionally backed by a file.
#[derive(Debug)]
pub struct FactorCache {
    store: Mutex<Store>,
    path: Option<PathBuf>,
    hits: AtomicU64,
    misses: AtomicU64,
    discarded: u64,
}

impl FactorCache {
    pub fn in_memory() -> Self {
        FactorCache {
            store: Mutex::new(Store::default()),
            path: None,
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
            discarded: 0,
        }
    }

    /// Loads `path` if it exists. I/O problems are logged and the cache
    /// carries on in memory only.
    pub fn open(path: &Path) -> Self {
        let mut cache = Self::in_memory();
        match File::open(path) {
            Ok(file) => cache.load(BufReader::new(file)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => warn!("cannot read cache {}: {e}", path.display()),
        }
        match OpenOptions::new().create(true).append(true).open(path) {
            Ok(_) => cache.path = Some(path.to_path_buf()),
            Err(e) => warn!(
                "cache {} is not writable, continuing without persistence: {e}",
                path.display()
            ),
        }
        cache
    }

    fn load(&mut self, reader: impl BufRead) {
        let store = self.store.get_mut().expect("cache lock poisoned");
        for line in reader.lines() {
            let Ok(line) = line else {
                self.discarded += 1;
                break;
            };
            if line.trim().is_empty() {
                continue;
            }
            let parsed = serde_json::from_str::<CacheEntry>(&line)
                .ok()
                .and_then(|entry| entry.to_factorization());
            match parsed {
                Some(f) => {
                    insert(&mut store.entries, f);
                }
                None => self.discarded += 1,
            }
        }
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.store
            .lock()
            .expect("cache lock poisoned")
            .entries
            .len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    /// Lines rejected while loading.
    pub fn discarded(&self) -> u64 {
        self.discarded
    }

    pub fn get(&self, value: &Natural) -> Option<Factorization> {
        let found = self
            .store
            .lock()
            .expect("cache lock poisoned")
            .entries
            .get(value)
            .cloned();
        let counter = if found.is_some() {
            &self.hits
        } else {
            &self.misses
        };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    /// Idempotent; an incomplete entry is replaced once a complete one for
    /// the same value arrives.
    pub fn put(&self, f: Factorization) {
        let mut store = self.store.lock().expect("cache lock poisoned");
        if insert(&mut store.entries, f.clone()) {
            store.pending.push(f);
        }
    }

    /// Appends pending entries to the backing file.
    pub fn flush(&self) {
        let Some(path) = &self.path else { return };
        let pending = std::mem::take(&mut self.store.lock().expect("cache lock poisoned").pending);
        if pending.is_empty() {
            return;
        }
        let result = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .and_then(|file| {
                let mut out = BufWriter::new(file);
                for f in &pending {
                    let line = serde_json::to_string(&CacheEntry::from_factorization(f))
                        .expect("cache entries serialize");
                    writeln!(out, "{line}")?;
                }
                out.flush()
            });
        if let Err(e) = result {
            warn!("failed to write cache {}: {e}", path.display());
        }
    }
}

/// Inserts unless an entry at least as good is present; reports whether the
/// map changed.
fn insert(entries: &mut HashMap<Natural, Factorization>, f: Factorization) -> bool {
    match entries.get(f.value()) {
        Some(old)
            if old.is_complete()
                || (!f.is_complete() && old.factors().len() >= f.factors().len()) =>
        {
            false
        }
        _ => {
            entries.insert(f.value().clone(), f);
            true
        }
    }
}

impl FactorSource for FactorCache {
    fn factorize(&self, n: &Natural, budget: u64) -> Result<Factorization> {
        match self.get(n) {
            Some(f) if f.is_complete() => Ok(f),
            Some(partial) => {
                let f = partial.refine(budget);
                self.put(f.clone());
                Ok(f)
            }
            None => {
                let f = factorize(n, budget)?;
                self.put(f.clone());
                Ok(f)
            }
        }
    }
}

impl Drop for FactorCache {
    fn drop(&mut self) {
        self.flush();
    }
}
