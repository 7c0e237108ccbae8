//! Exhaustive audit of the Garside axioms on a tabulated structure.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GarsideError, Result};
use crate::structure::{GarsideStructure, LatticeOp, Simple};

/// Structures with more simples than this are refused.
pub const AUDIT_SIMPLE_BOUND: usize = 10_000;

// Above these sizes the quadratic/cubic loops are sampled.
const EXHAUSTIVE_ORACLE_BOUND: usize = 150;
const EXHAUSTIVE_TRIPLE_BOUND: usize = 24;
const SAMPLED_PAIRS: usize = 4_000;
const SAMPLED_TRIPLES: usize = 4_000;
const WITNESSES_PER_LAW: usize = 8;

/// A violated law together with the simples exhibiting it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub structure: String,
    pub simples: usize,
    pub pairs_checked: usize,
    pub oracle_pairs_checked: usize,
    pub triples_checked: usize,
    pub triples_exhaustive: bool,
    /// Number of failing instances per law, including those without a stored witness.
    pub violation_counts: BTreeMap<String, usize>,
    pub violations: Vec<Violation>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Default)]
struct Sink {
    found: Vec<(String, Vec<Simple>)>,
}

impl Sink {
    fn fail(&mut self, law: &str, witness: &[Simple]) {
        self.found.push((law.to_string(), witness.to_vec()));
    }

    fn check(&mut self, ok: bool, law: &str, witness: &[Simple]) {
        if !ok {
            self.fail(law, witness);
        }
    }
}

const OPS: [(LatticeOp, &str); 4] = [
    (LatticeOp::MeetPrefix, "meet_prefix"),
    (LatticeOp::JoinPrefix, "join_prefix"),
    (LatticeOp::MeetSuffix, "meet_suffix"),
    (LatticeOp::JoinSuffix, "join_suffix"),
];

fn raw(st: &GarsideStructure, s: Simple, t: Simple, op: LatticeOp) -> Option<Simple> {
    let n = st.simple_count();
    let table = match op {
        LatticeOp::MeetPrefix => &st.meet_prefix,
        LatticeOp::JoinPrefix => &st.join_prefix,
        LatticeOp::MeetSuffix => &st.meet_suffix,
        LatticeOp::JoinSuffix => &st.join_suffix,
    };
    st.simple(table[s.index() * n + t.index()] as usize)
}

fn audit_singletons(st: &GarsideStructure, sink: &mut Sink) {
    let n = st.simple_count();
    let (one, delta) = (st.identity(), st.delta());
    sink.check(one != delta, "identity equals Δ", &[one]);
    sink.check(st.complement[0] as usize == n - 1, "∂(1) ≠ Δ", &[one]);
    sink.check(st.complement[n - 1] == 0, "∂(Δ) ≠ 1", &[delta]);

    let mut hit = vec![0usize; n];
    for &c in &st.complement {
        if (c as usize) < n {
            hit[c as usize] += 1;
        }
    }
    if let Some(i) = hit.iter().position(|&h| h != 1) {
        sink.fail("∂ not bijective", &[st.simple(i).unwrap()]);
    }

    let e = st.tau_order();
    for s in st.simples() {
        let c = st.simple(st.complement[s.index()] as usize);
        let tau = st.simple(st.tau[s.index()] as usize);
        match c {
            None => sink.fail("∂ leaves the simples", &[s]),
            Some(c) => {
                sink.check(st.mul(s, c) == Some(delta), "s·∂(s) ≠ Δ", &[s]);
                let cc = st.simple(st.complement[c.index()] as usize);
                sink.check(cc.is_some() && cc == tau, "∂² ≠ τ", &[s]);
                sink.check(
                    st.simple(st.complement_inv[c.index()] as usize) == Some(s),
                    "∂⁻¹∘∂ ≠ id",
                    &[s],
                );
            }
        }
        sink.check(st.is_prefix(s, delta), "simple not below Δ", &[s]);
        sink.check(st.is_prefix(one, s), "1 not below simple", &[s]);
        sink.check(st.tau_pow(s, e as i64) == s, "τ^e ≠ id", &[s]);
        sink.check(st.tau_inv(st.tau(s)) == s, "τ⁻¹∘τ ≠ id", &[s]);

        // The canonical atom word multiplies back to s.
        let mut acc = one;
        let mut ok = true;
        for a in st.atom_word(s) {
            match st.atom(a).and_then(|a| st.mul(acc, a)) {
                Some(next) => acc = next,
                None => ok = false,
            }
        }
        sink.check(ok && acc == s, "atoms do not generate", &[s]);
    }
    for a in st.atoms() {
        sink.check(st.atom_length(a) == 1, "atom of length ≠ 1", &[a]);
    }
    for k in 1..e {
        let identity_map = st.atoms().all(|a| st.tau_pow(a, k as i64) == a);
        sink.check(!identity_map, "τ^k = id for k < e", &[]);
    }
}

fn audit_row(st: &GarsideStructure, s: Simple, oracle: bool) -> Sink {
    let mut sink = Sink::default();
    for t in st.simples() {
        let w = [s, t];
        for (op, name) in OPS {
            let v = raw(st, s, t, op);
            let u = raw(st, t, s, op);
            match v {
                None => sink.fail(&format!("{name} undefined (exceeds Δ)"), &w),
                Some(v) => {
                    sink.check(u == Some(v), &format!("{name} not commutative"), &w);
                    if oracle {
                        sink.check(
                            st.exhaustive_lattice(s, t, op) == Some(v),
                            &format!("{name} disagrees with exhaustive search"),
                            &w,
                        );
                    }
                }
            }
        }
        if s == t {
            for (op, name) in OPS {
                sink.check(
                    raw(st, s, s, op) == Some(s),
                    &format!("{name} not idempotent"),
                    &w,
                );
            }
        }
        // Absorption.
        let pairs = [
            (LatticeOp::MeetPrefix, LatticeOp::JoinPrefix, "prefix"),
            (LatticeOp::MeetSuffix, LatticeOp::JoinSuffix, "suffix"),
        ];
        for (meet, join, side) in pairs {
            let j = raw(st, s, t, join);
            let m = raw(st, s, t, meet);
            let a1 = j.and_then(|j| raw(st, s, j, meet));
            let a2 = m.and_then(|m| raw(st, s, m, join));
            sink.check(
                a1 == Some(s) && a2 == Some(s),
                &format!("{side} absorption fails"),
                &w,
            );
        }

        // ∂ turns the prefix order into the reversed suffix order, ∂⁻¹ the
        // suffix order into the reversed prefix order.
        if st.is_prefix(s, t) {
            sink.check(
                st.is_suffix(st.complement(t), st.complement(s)),
                "∂ does not reverse order",
                &w,
            );
        }
        if st.is_suffix(s, t) {
            sink.check(
                st.is_prefix(st.complement_inv(t), st.complement_inv(s)),
                "∂⁻¹ does not reverse order",
                &w,
            );
        }

        // Multiplication and division tables agree.
        if let Some(p) = st.mul(s, t) {
            sink.check(
                st.left_quotient(s, p) == Some(t),
                "mul/ldiv inconsistent",
                &w,
            );
            sink.check(
                st.right_quotient(p, t) == Some(s),
                "mul/rdiv inconsistent",
                &w,
            );
        }

        // Weightedness against its atom characterisation: (s,t) is
        // left-weighted iff no atom prefix a of t has s·a simple.
        let lw = st
            .atoms()
            .all(|a| !st.is_prefix(a, t) || st.mul(s, a).is_none());
        sink.check(
            st.is_left_weighted(s, t) == lw,
            "left-weightedness inconsistent",
            &w,
        );
        let rw = st
            .atoms()
            .all(|a| !st.is_suffix(a, s) || st.mul(a, t).is_none());
        sink.check(
            st.is_right_weighted(s, t) == rw,
            "right-weightedness inconsistent",
            &w,
        );
    }
    sink
}

fn audit_triple(st: &GarsideStructure, s: Simple, t: Simple, u: Simple, sink: &mut Sink) {
    for (op, name) in OPS {
        let left = raw(st, s, t, op).and_then(|x| raw(st, x, u, op));
        let right = raw(st, t, u, op).and_then(|x| raw(st, s, x, op));
        sink.check(
            left.is_some() && left == right,
            &format!("{name} not associative"),
            &[s, t, u],
        );
    }
}

/// Checks the lattice, complement and weightedness laws on every pair of
/// simples and associativity on triples (exhaustive up to 24 simples,
/// deterministically sampled beyond).
pub fn axiom_audit(st: &GarsideStructure) -> Result<AuditReport> {
    let n = st.simple_count();
    if n > AUDIT_SIMPLE_BOUND {
        return Err(GarsideError::guard("simple count", n, AUDIT_SIMPLE_BOUND));
    }
    let mut sink = Sink::default();
    audit_singletons(st, &mut sink);

    let all: Vec<Simple> = st.simples().collect();
    let oracle_all = n <= EXHAUSTIVE_ORACLE_BOUND;
    let rows: Vec<Sink> = all
        .par_iter()
        .map(|&s| audit_row(st, s, oracle_all))
        .collect();
    for r in rows {
        sink.found.extend(r.found);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x6172_7369_6465);
    let mut oracle_pairs = if oracle_all { n * n } else { 0 };
    if !oracle_all {
        for _ in 0..SAMPLED_PAIRS {
            let (s, t) = (all[rng.gen_range(0..n)], all[rng.gen_range(0..n)]);
            for (op, name) in OPS {
                sink.check(
                    st.exhaustive_lattice(s, t, op) == raw(st, s, t, op),
                    &format!("{name} disagrees with exhaustive search"),
                    &[s, t],
                );
            }
        }
        oracle_pairs = SAMPLED_PAIRS;
    }

    let triples_exhaustive = n <= EXHAUSTIVE_TRIPLE_BOUND;
    let triples = if triples_exhaustive {
        for &s in &all {
            for &t in &all {
                for &u in &all {
                    audit_triple(st, s, t, u, &mut sink);
                }
            }
        }
        n * n * n
    } else {
        for _ in 0..SAMPLED_TRIPLES {
            let pick = |rng: &mut ChaCha8Rng| all[rng.gen_range(0..n)];
            let (s, t, u) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            audit_triple(st, s, t, u, &mut sink);
        }
        SAMPLED_TRIPLES
    };

    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut violations = Vec::new();
    for (law, w) in sink.found {
        let c = counts.entry(law.clone()).or_default();
        *c += 1;
        if *c <= WITNESSES_PER_LAW {
            violations.push(Violation {
                law,
                witness: w.iter().map(|&s| st.simple_word(s)).collect(),
            });
        }
    }

    Ok(AuditReport {
        structure: st.descriptor().to_string(),
        simples: n,
        pairs_checked: n * n,
        oracle_pairs_checked: oracle_pairs,
        triples_checked: triples,
        triples_exhaustive,
        violation_counts: counts,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{classical, dual, free_abelian};

    #[test]
    fn shipped_structures_pass() {
        for st in [
            classical(3).unwrap(),
            classical(4).unwrap(),
            dual(3).unwrap(),
            dual(4).unwrap(),
            free_abelian(3).unwrap(),
        ] {
            let report = axiom_audit(&st).unwrap();
            assert!(
                report.passed(),
                "{}: {:?}",
                st.descriptor(),
                report.violations
            );
        }
    }

    #[test]
    fn corrupted_complement_is_reported() {
        let mut st = (*classical(3).unwrap()).clone();
        st.complement[1] = st.complement[2];
        let report = axiom_audit(&st).unwrap();
        assert!(report.violations.iter().any(|v| v.law == "∂ not bijective"));
    }

    #[test]
    fn counts_are_reported() {
        let report = axiom_audit(&classical(4).unwrap()).unwrap();
        assert_eq!(report.simples, 24);
        assert_eq!(report.pairs_checked, 576);
        assert!(report.triples_exhaustive);
    }
}
