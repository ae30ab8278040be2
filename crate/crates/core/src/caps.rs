//! Resource caps.
//!
//! Defaults are fixed; the environment variable `XORSAT_CAP_MB` can only lower
//! them, by bounding the memory of the largest allocation a cap guards.

use crate::error::{Error, Result};

pub const DECODE_TABLE_ENTRIES: u128 = 10_000_000;
pub const BRUTE_FORCE_MAX_N: usize = 28;
pub const ENUMERATE_MAX_N: usize = 26;
pub const DQI_MAX_N: usize = 20;
pub const DQI_OPTIMAL_MAX_N: usize = 18;
pub const PIPELINE_MAX_QUBITS: usize = 26;
pub const STATEVECTOR_MAX_N: usize = 26;
pub const PAIR_CAP: u128 = 100_000_000;
pub const CLIQUE_NODE_BUDGET: u64 = 1_000_000;

/// Approximate bytes held per decode-table entry.
const DECODE_ENTRY_BYTES: u128 = 96;

fn env_cap_bytes() -> Option<u128> {
    let raw = std::env::var("XORSAT_CAP_MB").ok()?;
    raw.trim().parse::<u128>().ok().map(|mb| mb << 20)
}

pub fn decode_table_entries() -> u128 {
    match env_cap_bytes() {
        Some(bytes) => DECODE_TABLE_ENTRIES.min(bytes / DECODE_ENTRY_BYTES),
        None => DECODE_TABLE_ENTRIES,
    }
}

/// Fails unless a dense vector of `2^qubits` entries of `bytes_per` bytes fits
/// both the qubit cap and the memory cap.
pub fn check_dense(
    what: &'static str,
    qubits: usize,
    max_qubits: usize,
    bytes_per: u128,
) -> Result<()> {
    if qubits > max_qubits {
        return Err(Error::CapExceeded {
            what,
            requested: qubits as u128,
            cap: max_qubits as u128,
        });
    }
    if let Some(bytes) = env_cap_bytes() {
        let need = (1u128 << qubits) * bytes_per;
        if need > bytes {
            return Err(Error::CapExceeded {
                what,
                requested: need,
                cap: bytes,
            });
        }
    }
    Ok(())
}

/// Fails when `n` exceeds `cap`.
pub fn check_n(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded {
            what,
            requested: n as u128,
            cap: cap as u128,
        })
    } else {
        Ok(())
    }
}
