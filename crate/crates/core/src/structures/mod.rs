//! Concrete Garside structures: classical and dual braid groups, free abelian
//! groups. Structures are built once per descriptor and shared.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{GarsideError, Result};
use crate::structure::GarsideStructure;

mod audit;
mod classical_braid;
mod dual_braid;
mod free_abelian_group;

pub use audit::{axiom_audit, AuditReport, Violation, AUDIT_SIMPLE_BOUND};
pub use dual_braid::kreweras_complement;

pub const MAX_CLASSICAL_STRANDS: usize = 6;
pub const MAX_DUAL_STRANDS: usize = 6;
pub const MAX_FREE_ABELIAN_RANK: usize = 8;

fn cache() -> &'static Mutex<HashMap<String, Arc<GarsideStructure>>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<GarsideStructure>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(key: String, build: impl FnOnce() -> GarsideStructure) -> Arc<GarsideStructure> {
    if let Some(s) = cache().lock().unwrap().get(&key) {
        return Arc::clone(s);
    }
    let built = Arc::new(build());
    cache().lock().unwrap().entry(key).or_insert(built).clone()
}

fn check_range(family: &str, n: usize, lo: usize, hi: usize) -> Result<()> {
    if n < lo || n > hi {
        return Err(GarsideError::Unsupported(format!(
            "{family} requires {lo} <= n <= {hi}, got n={n}"
        )));
    }
    Ok(())
}

/// Classical braid group `B_n` with permutation braids as simples.
pub fn classical(n: usize) -> Result<Arc<GarsideStructure>> {
    check_range("braid:classical", n, 2, MAX_CLASSICAL_STRANDS)?;
    Ok(cached(format!("braid:classical:n={n}"), || {
        GarsideStructure::build(&classical_braid::ClassicalBraid::new(n))
    }))
}

/// Dual braid monoid structure on `B_n`; simples are non-crossing partitions.
pub fn dual(n: usize) -> Result<Arc<GarsideStructure>> {
    check_range("braid:dual", n, 2, MAX_DUAL_STRANDS)?;
    Ok(cached(format!("braid:dual:n={n}"), || {
        GarsideStructure::build(&dual_braid::DualBraid::new(n))
    }))
}

/// `ℤⁿ` with `Δ = (1,…,1)`.
pub fn free_abelian(n: usize) -> Result<Arc<GarsideStructure>> {
    check_range("zn", n, 1, MAX_FREE_ABELIAN_RANK)?;
    Ok(cached(format!("zn:n={n}"), || {
        GarsideStructure::build(&free_abelian_group::FreeAbelian::new(n))
    }))
}

/// Parses `braid:classical:n=4`, `braid:dual:n=3` or `zn:n=3`.
pub fn from_descriptor(text: &str) -> Result<Arc<GarsideStructure>> {
    let bad = || GarsideError::BadDescriptor(text.to_string());
    let parts: Vec<&str> = text.trim().split(':').collect();
    let rank = |p: &str| -> Result<usize> {
        p.strip_prefix("n=")
            .and_then(|v| v.parse::<usize>().ok())
            .ok_or_else(bad)
    };
    match parts.as_slice() {
        ["braid", "classical", n] => classical(rank(n)?),
        ["braid", "dual", n] => dual(rank(n)?),
        ["zn", n] => free_abelian(rank(n)?),
        _ => Err(bad()),
    }
}

/// Enumerates every simple exactly once: identity first, Δ last.
pub fn enumerate_simples(structure: &GarsideStructure) -> Vec<crate::structure::Simple> {
    structure.simples().collect()
}
