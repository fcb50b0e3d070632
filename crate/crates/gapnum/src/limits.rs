//! Memory caps and search budgets.
//!
//! Digraph construction and the layered DP can allocate gigabytes at the
//! larger widths, so every big allocation is preceded by an estimate that is
//! checked against a soft cap. The cap comes from `GAPNUM_MAX_MEM_MB` when
//! set, otherwise from available system memory (capped at 16 GB).

use crate::error::{Error, Result};

/// Hard ceiling used when neither the environment variable nor
/// `/proc/meminfo` yields a usable number.
const FALLBACK_CAP_MB: u64 = 8192;
const MAX_CAP_MB: u64 = 16384;

/// Resource limits for digraph construction and the solvers.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Soft memory cap in megabytes for any single large structure.
    pub mem_cap_mb: u64,
    /// Relaxation budget for the cylinder search (state expansions).
    pub relax_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            mem_cap_mb: default_mem_cap_mb(),
            relax_budget: 50_000_000_000,
        }
    }
}

impl Limits {
    /// Checks an allocation estimate against the cap.
    pub fn check_mem(&self, what: &str, bytes: u64) -> Result<()> {
        let needed_mb = bytes.div_ceil(1024 * 1024);
        if needed_mb > self.mem_cap_mb {
            return Err(Error::CapacityExceeded {
                what: what.to_string(),
                needed_mb,
                cap_mb: self.mem_cap_mb,
            });
        }
        Ok(())
    }
}

/// Resolves the soft memory cap: `GAPNUM_MAX_MEM_MB` if set, else 75% of
/// `MemAvailable`, clamped to 16 GB, with an 8 GB fallback.
pub fn default_mem_cap_mb() -> u64 {
    if let Ok(v) = std::env::var("GAPNUM_MAX_MEM_MB") {
        if let Ok(mb) = v.trim().parse::<u64>() {
            return mb.max(1);
        }
    }
    match mem_available_mb() {
        Some(avail) => (avail * 3 / 4).clamp(256, MAX_CAP_MB),
        None => FALLBACK_CAP_MB,
    }
}

fn mem_available_mb() -> Option<u64> {
    let text = std::fs::read_to_string("/proc/meminfo").ok()?;
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("MemAvailable:") {
            let kb: u64 = rest.trim().trim_end_matches("kB").trim().parse().ok()?;
            return Some(kb / 1024);
        }
    }
    None
}
