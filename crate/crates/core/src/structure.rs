//! The finite-type Garside structure contract.
//!
//! A [`GarsideStructure`] owns an intern table of its simple elements and a
//! family of precomputed lookup tables (prefix and suffix lattice operations,
//! complements, the Garside automorphism, partial products). Everything the
//! normal-form and metric code does with simples reduces to table lookups.
//!
//! Simples are identified by their index in the intern table: the identity is
//! always index `0` and Δ is always the last index.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{GarsideError, Result};

pub(crate) const NONE: u16 = u16::MAX;

/// Which concrete family a structure belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    ClassicalBraid,
    DualBraid,
    FreeAbelian,
}

/// Compact identifier of a structure; equal ids mean interchangeable simples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StructureId(u16);

impl StructureId {
    pub(crate) fn new(kind: StructureKind, rank: usize) -> Self {
        let tag = match kind {
            StructureKind::ClassicalBraid => 0u16,
            StructureKind::DualBraid => 1,
            StructureKind::FreeAbelian => 2,
        };
        StructureId(tag << 8 | rank as u16)
    }
}

/// A simple element, interned by its owning structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simple {
    owner: StructureId,
    index: u16,
}

impl Simple {
    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn owner(self) -> StructureId {
        self.owner
    }
}

/// Structure-specific encoding of a simple element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimplePayload {
    /// One-line notation of a permutation of `0..n`.
    Permutation(Vec<u8>),
    /// Blocks of a non-crossing partition of `0..n`, each sorted.
    Partition(Vec<Vec<u8>>),
    /// A 0/1 vector.
    Bits(Vec<u8>),
}

/// The four lattice operations on simples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeOp {
    /// Greatest common prefix `∧`.
    MeetPrefix,
    /// Least common right multiple `∨`.
    JoinPrefix,
    /// Greatest common suffix `∧↰`.
    MeetSuffix,
    /// Least common left multiple `∨↰`.
    JoinSuffix,
}

/// Complement-type maps on simples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplementOp {
    /// `∂(s) = s⁻¹Δ`
    Right,
    /// `∂⁻¹(s) = Δs⁻¹`
    Left,
    /// `τ(s) = Δ⁻¹sΔ`
    Tau,
    TauInverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A finite-type Garside structure with all simple-level operations tabulated.
#[derive(Clone)]
pub struct GarsideStructure {
    pub(crate) kind: StructureKind,
    pub(crate) rank: usize,
    pub(crate) id: StructureId,
    pub(crate) descriptor: String,
    pub(crate) delta_pure: bool,
    pub(crate) payloads: Vec<SimplePayload>,
    pub(crate) lengths: Vec<u32>,
    pub(crate) atoms: Vec<u16>,
    pub(crate) words: Vec<Vec<u16>>,
    pub(crate) meet_prefix: Vec<u16>,
    pub(crate) join_prefix: Vec<u16>,
    pub(crate) meet_suffix: Vec<u16>,
    pub(crate) join_suffix: Vec<u16>,
    pub(crate) mul: Vec<u16>,
    pub(crate) ldiv: Vec<u16>,
    pub(crate) rdiv: Vec<u16>,
    pub(crate) complement: Vec<u16>,
    pub(crate) complement_inv: Vec<u16>,
    pub(crate) tau: Vec<u16>,
    pub(crate) tau_inv: Vec<u16>,
    pub(crate) tau_order: u32,
}

impl fmt::Debug for GarsideStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GarsideStructure")
            .field("descriptor", &self.descriptor)
            .field("simples", &self.payloads.len())
            .field("tau_order", &self.tau_order)
            .finish()
    }
}

/// Group-theoretic data a concrete family supplies to build its tables.
///
/// Simples are the interval `[1, Δ]` of the length order in a "shadow" group
/// (permutations for braids, integer vectors for free abelian groups): `s ⪯ t`
/// iff `len(s) + len(s⁻¹t) = len(t)`. The native lattice operations are the
/// fast paths; the interval order is what the audit checks them against.
pub(crate) trait ShadowAlgebra {
    type Elem: Clone + Eq + Hash + Ord + fmt::Debug;

    fn kind(&self) -> StructureKind;
    fn rank(&self) -> usize;
    fn descriptor(&self) -> String;
    fn delta_pure(&self) -> bool;

    fn identity(&self) -> Self::Elem;
    fn delta(&self) -> Self::Elem;
    /// Atoms in generator order (`s1`, `s2`, ...).
    fn atoms(&self) -> Vec<Self::Elem>;
    /// Every simple element, in any order.
    fn simples(&self) -> Vec<Self::Elem>;

    fn compose(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
    fn length(&self, a: &Self::Elem) -> u32;

    fn native_meet_prefix(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn native_meet_suffix(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn native_join_prefix(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Self::Elem> {
        None
    }
    fn native_join_suffix(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn payload(&self, a: &Self::Elem) -> SimplePayload;
}

impl GarsideStructure {
    pub(crate) fn build<A: ShadowAlgebra>(alg: &A) -> GarsideStructure {
        let id = StructureId::new(alg.kind(), alg.rank());
        let atoms = alg.atoms();
        let delta = alg.delta();
        let identity = alg.identity();

        let is_prefix = |a: &A::Elem, b: &A::Elem| {
            let q = alg.compose(&alg.inverse(a), b);
            alg.length(a) + alg.length(&q) == alg.length(b)
        };
        // Greedy atom word: peel the first atom that is a prefix.
        let word_of = |s: &A::Elem| {
            let mut rest = s.clone();
            let mut word = Vec::new();
            while rest != identity {
                let (i, a) = atoms
                    .iter()
                    .enumerate()
                    .find(|(_, a)| is_prefix(a, &rest))
                    .expect("nontrivial simple has an atom prefix");
                word.push(i as u16);
                rest = alg.compose(&alg.inverse(a), &rest);
            }
            word
        };

        let mut keyed: Vec<(u32, Vec<u16>, A::Elem)> = alg
            .simples()
            .into_iter()
            .map(|s| (alg.length(&s), word_of(&s), s))
            .collect();
        keyed.sort();
        assert!(keyed.first().map(|k| &k.2) == Some(&identity));
        assert!(keyed.last().map(|k| &k.2) == Some(&delta));

        let n = keyed.len();
        assert!(n < NONE as usize, "too many simples for u16 indices");
        let elems: Vec<A::Elem> = keyed.iter().map(|k| k.2.clone()).collect();
        let index: HashMap<A::Elem, u16> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u16))
            .collect();
        let lengths: Vec<u32> = keyed.iter().map(|k| k.0).collect();
        let words: Vec<Vec<u16>> = keyed.iter().map(|k| k.1.clone()).collect();
        let atom_idx: Vec<u16> = atoms.iter().map(|a| index[a]).collect();
        let inverses: Vec<A::Elem> = elems.iter().map(|e| alg.inverse(e)).collect();

        let lookup = |e: &A::Elem| index.get(e).copied().unwrap_or(NONE);

        let mut mul = vec![NONE; n * n];
        let mut ldiv = vec![NONE; n * n];
        let mut rdiv = vec![NONE; n * n];
        let mut meet_prefix = vec![NONE; n * n];
        let mut meet_suffix = vec![NONE; n * n];
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (&elems[i], &elems[j]);
                let p = alg.compose(a, b);
                if lengths[i] + lengths[j] == alg.length(&p) {
                    mul[i * n + j] = lookup(&p);
                }
                let q = alg.compose(&inverses[i], b);
                if lengths[i] + alg.length(&q) == lengths[j] {
                    ldiv[i * n + j] = lookup(&q);
                }
                let r = alg.compose(a, &inverses[j]);
                if alg.length(&r) + lengths[j] == lengths[i] {
                    rdiv[i * n + j] = lookup(&r);
                }
                meet_prefix[i * n + j] = lookup(&alg.native_meet_prefix(a, b));
                meet_suffix[i * n + j] = lookup(&alg.native_meet_suffix(a, b));
            }
        }

        let top = (n - 1) as u16;
        let complement: Vec<u16> = (0..n).map(|i| ldiv[i * n + top as usize]).collect();
        let complement_inv: Vec<u16> = (0..n).map(|i| rdiv[top as usize * n + i]).collect();
        let delta_inv = alg.inverse(&delta);
        let tau: Vec<u16> = elems
            .iter()
            .map(|e| lookup(&alg.compose(&delta_inv, &alg.compose(e, &delta))))
            .collect();
        let tau_inv: Vec<u16> = elems
            .iter()
            .map(|e| lookup(&alg.compose(&delta, &alg.compose(e, &delta_inv))))
            .collect();

        let mut join_prefix = vec![NONE; n * n];
        let mut join_suffix = vec![NONE; n * n];
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (&elems[i], &elems[j]);
                join_prefix[i * n + j] = match alg.native_join_prefix(a, b) {
                    Some(e) => lookup(&e),
                    None => {
                        let (ci, cj) = (complement[i], complement[j]);
                        let m = meet_suffix[ci as usize * n + cj as usize];
                        complement_inv[m as usize]
                    }
                };
                join_suffix[i * n + j] = match alg.native_join_suffix(a, b) {
                    Some(e) => lookup(&e),
                    None => {
                        let (ci, cj) = (complement_inv[i], complement_inv[j]);
                        let m = meet_prefix[ci as usize * n + cj as usize];
                        complement[m as usize]
                    }
                };
            }
        }

        // Order of τ, computed on atoms (they generate).
        let mut tau_order = 1u32;
        loop {
            let back = atom_idx.iter().all(|&a| {
                let mut s = a;
                for _ in 0..tau_order {
                    s = tau[s as usize];
                }
                s == a
            });
            if back {
                break;
            }
            tau_order += 1;
        }

        GarsideStructure {
            kind: alg.kind(),
            rank: alg.rank(),
            id,
            descriptor: alg.descriptor(),
            delta_pure: alg.delta_pure(),
            payloads: elems.iter().map(|e| alg.payload(e)).collect(),
            lengths,
            atoms: atom_idx,
            words,
            meet_prefix,
            join_prefix,
            meet_suffix,
            join_suffix,
            mul,
            ldiv,
            rdiv,
            complement,
            complement_inv,
            tau,
            tau_inv,
            tau_order,
        }
    }

    #[inline]
    fn mk(&self, index: u16) -> Simple {
        Simple {
            owner: self.id,
            index,
        }
    }

    #[inline]
    fn opt(&self, index: u16) -> Option<Simple> {
        (index != NONE).then(|| self.mk(index))
    }

    #[inline]
    fn pair(&self, s: Simple, t: Simple) -> usize {
        s.index() * self.payloads.len() + t.index()
    }

    pub fn id(&self) -> StructureId {
        self.id
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Descriptor string such as `braid:classical:n=4`.
    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    /// Whether the centre is generated by `Δ^e`. Free abelian groups of rank
    /// at least two are not.
    pub fn is_delta_pure(&self) -> bool {
        self.delta_pure
    }

    /// The order `e` of the Garside automorphism τ.
    pub fn tau_order(&self) -> u32 {
        self.tau_order
    }

    pub fn simple_count(&self) -> usize {
        self.payloads.len()
    }

    pub fn identity(&self) -> Simple {
        self.mk(0)
    }

    pub fn delta(&self) -> Simple {
        self.mk((self.payloads.len() - 1) as u16)
    }

    pub fn simple(&self, index: usize) -> Option<Simple> {
        (index < self.payloads.len()).then(|| self.mk(index as u16))
    }

    /// All simples, identity first and Δ last, sorted by atom length and then
    /// by their greedy atom word.
    pub fn simples(&self) -> impl Iterator<Item = Simple> + '_ {
        (0..self.payloads.len()).map(move |i| self.mk(i as u16))
    }

    /// Simples other than `1` and `Δ`.
    pub fn proper_simples(&self) -> impl Iterator<Item = Simple> + '_ {
        (1..self.payloads.len() - 1).map(move |i| self.mk(i as u16))
    }

    pub fn atoms(&self) -> impl Iterator<Item = Simple> + '_ {
        self.atoms.iter().map(move |&i| self.mk(i))
    }

    /// The `i`-th atom, 1-based, as written `s<i>` in words.
    pub fn atom(&self, i: usize) -> Option<Simple> {
        i.checked_sub(1)
            .and_then(|k| self.atoms.get(k))
            .map(|&a| self.mk(a))
    }

    pub fn payload(&self, s: Simple) -> &SimplePayload {
        &self.payloads[s.index()]
    }

    /// Number of atoms in any positive word for `s`.
    pub fn atom_length(&self, s: Simple) -> u32 {
        self.lengths[s.index()]
    }

    /// 1-based atom indices of the canonical atom word of `s`.
    pub fn atom_word(&self, s: Simple) -> Vec<usize> {
        self.words[s.index()]
            .iter()
            .map(|&a| a as usize + 1)
            .collect()
    }

    pub fn is_identity(&self, s: Simple) -> bool {
        s.index == 0
    }

    pub fn is_delta(&self, s: Simple) -> bool {
        s.index() == self.payloads.len() - 1
    }

    pub fn is_proper(&self, s: Simple) -> bool {
        !self.is_identity(s) && !self.is_delta(s)
    }

    /// Rejects simples minted by a different structure.
    pub fn check(&self, s: Simple) -> Result<Simple> {
        if s.owner != self.id || s.index() >= self.payloads.len() {
            return Err(GarsideError::StructureMismatch {
                left: self.descriptor.clone(),
                right: format!("simple #{} of structure {:?}", s.index, s.owner),
            });
        }
        Ok(s)
    }

    #[inline]
    pub fn meet(&self, s: Simple, t: Simple) -> Simple {
        self.mk(self.meet_prefix[self.pair(s, t)])
    }

    #[inline]
    pub fn join(&self, s: Simple, t: Simple) -> Simple {
        self.mk(self.join_prefix[self.pair(s, t)])
    }

    #[inline]
    pub fn meet_suffix(&self, s: Simple, t: Simple) -> Simple {
        self.mk(self.meet_suffix[self.pair(s, t)])
    }

    #[inline]
    pub fn join_suffix(&self, s: Simple, t: Simple) -> Simple {
        self.mk(self.join_suffix[self.pair(s, t)])
    }

    /// Checked dispatcher over the four lattice operations.
    pub fn lattice(&self, s: Simple, t: Simple, op: LatticeOp) -> Result<Simple> {
        self.check(s)?;
        self.check(t)?;
        Ok(match op {
            LatticeOp::MeetPrefix => self.meet(s, t),
            LatticeOp::JoinPrefix => self.join(s, t),
            LatticeOp::MeetSuffix => self.meet_suffix(s, t),
            LatticeOp::JoinSuffix => self.join_suffix(s, t),
        })
    }

    /// `s ⪯ t`
    #[inline]
    pub fn is_prefix(&self, s: Simple, t: Simple) -> bool {
        self.ldiv[self.pair(s, t)] != NONE
    }

    /// `t ≽ s`, i.e. `s` is a suffix of `t`.
    #[inline]
    pub fn is_suffix(&self, s: Simple, t: Simple) -> bool {
        self.rdiv[self.pair(t, s)] != NONE
    }

    /// The product `st` when it is simple.
    #[inline]
    pub fn mul(&self, s: Simple, t: Simple) -> Option<Simple> {
        self.opt(self.mul[self.pair(s, t)])
    }

    /// `s⁻¹t` when `s ⪯ t`.
    #[inline]
    pub fn left_quotient(&self, s: Simple, t: Simple) -> Option<Simple> {
        self.opt(self.ldiv[self.pair(s, t)])
    }

    /// `st⁻¹` when `t` is a suffix of `s`.
    #[inline]
    pub fn right_quotient(&self, s: Simple, t: Simple) -> Option<Simple> {
        self.opt(self.rdiv[self.pair(s, t)])
    }

    /// `∂(s) = s⁻¹Δ`
    #[inline]
    pub fn complement(&self, s: Simple) -> Simple {
        self.mk(self.complement[s.index()])
    }

    /// `∂⁻¹(s) = Δs⁻¹`
    #[inline]
    pub fn complement_inv(&self, s: Simple) -> Simple {
        self.mk(self.complement_inv[s.index()])
    }

    #[inline]
    pub fn tau(&self, s: Simple) -> Simple {
        self.mk(self.tau[s.index()])
    }

    #[inline]
    pub fn tau_inv(&self, s: Simple) -> Simple {
        self.mk(self.tau_inv[s.index()])
    }

    /// `τᵏ(s)` for any integer `k`.
    pub fn tau_pow(&self, s: Simple, k: i64) -> Simple {
        let e = self.tau_order as i64;
        let k = k.rem_euclid(e);
        let mut out = s;
        for _ in 0..k {
            out = self.tau(out);
        }
        out
    }

    pub fn complement_op(&self, s: Simple, op: ComplementOp) -> Result<Simple> {
        self.check(s)?;
        Ok(match op {
            ComplementOp::Right => self.complement(s),
            ComplementOp::Left => self.complement_inv(s),
            ComplementOp::Tau => self.tau(s),
            ComplementOp::TauInverse => self.tau_inv(s),
        })
    }

    /// `(s, t)` is left-weighted iff `∂(s) ∧ t = 1`.
    #[inline]
    pub fn is_left_weighted(&self, s: Simple, t: Simple) -> bool {
        self.meet(self.complement(s), t).index == 0
    }

    /// `(s, t)` is right-weighted iff `∂⁻¹(t) ∧↰ s = 1`.
    #[inline]
    pub fn is_right_weighted(&self, s: Simple, t: Simple) -> bool {
        self.meet_suffix(self.complement_inv(t), s).index == 0
    }

    pub fn weightedness(&self, s: Simple, t: Simple, side: Side) -> Result<bool> {
        self.check(s)?;
        self.check(t)?;
        Ok(match side {
            Side::Left => self.is_left_weighted(s, t),
            Side::Right => self.is_right_weighted(s, t),
        })
    }

    /// Lattice operation computed by exhaustive search over all simples,
    /// using only the prefix/suffix relations. Audit use only.
    pub fn exhaustive_lattice(&self, s: Simple, t: Simple, op: LatticeOp) -> Option<Simple> {
        let below = |a: Simple, b: Simple| match op {
            LatticeOp::MeetPrefix | LatticeOp::JoinPrefix => self.is_prefix(a, b),
            LatticeOp::MeetSuffix | LatticeOp::JoinSuffix => self.is_suffix(a, b),
        };
        let candidates: Vec<Simple> = match op {
            LatticeOp::MeetPrefix | LatticeOp::MeetSuffix => self
                .simples()
                .filter(|&c| below(c, s) && below(c, t))
                .collect(),
            LatticeOp::JoinPrefix | LatticeOp::JoinSuffix => self
                .simples()
                .filter(|&c| below(s, c) && below(t, c))
                .collect(),
        };
        candidates.iter().copied().find(|&c| {
            candidates.iter().all(|&d| match op {
                LatticeOp::MeetPrefix | LatticeOp::MeetSuffix => below(d, c),
                LatticeOp::JoinPrefix | LatticeOp::JoinSuffix => below(c, d),
            })
        })
    }

    /// Space-separated atom word, `1` for the identity and `D` for Δ.
    pub fn simple_word(&self, s: Simple) -> String {
        if self.is_identity(s) {
            return "1".into();
        }
        if self.is_delta(s) {
            return "D".into();
        }
        self.atom_word(s)
            .iter()
            .map(|i| format!("s{i}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}
