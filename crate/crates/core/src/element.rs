//! Group elements in left normal form.
//!
//! `g = Δᵖ s₁⋯s_r` with every `sᵢ` proper and every pair `(sᵢ, sᵢ₊₁)`
//! left-weighted. The representation is canonical, so equality and hashing
//! are structural.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{GarsideError, Result};
use crate::structure::{GarsideStructure, Simple};

#[derive(Clone)]
pub struct GroupElement {
    structure: Arc<GarsideStructure>,
    inf: i64,
    factors: Vec<Simple>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.structure.id() == other.structure.id()
            && self.inf == other.inf
            && self.factors == other.factors
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.structure.id().hash(state);
        self.inf.hash(state);
        self.factors.hash(state);
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by structure, then `inf`, then factor count, then factor indices.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (
            self.structure.id(),
            self.inf,
            self.factors.len(),
            &self.factors,
        )
            .cmp(&(
                other.structure.id(),
                other.inf,
                other.factors.len(),
                &other.factors,
            ))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self, self.structure.descriptor())
    }
}

/// Left normal form: `D^p` followed by the factors separated by `|`.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.inf != 0 || self.factors.is_empty() {
            parts.push(match self.inf {
                0 => "1".to_string(),
                1 => "D".to_string(),
                p => format!("D^{p}"),
            });
        }
        parts.extend(self.factors.iter().map(|&s| self.structure.simple_word(s)));
        write!(f, "{}", parts.join(" | "))
    }
}

impl GroupElement {
    pub fn identity(structure: &Arc<GarsideStructure>) -> Self {
        GroupElement {
            structure: Arc::clone(structure),
            inf: 0,
            factors: Vec::new(),
        }
    }

    pub fn delta_power(structure: &Arc<GarsideStructure>, k: i64) -> Self {
        GroupElement {
            structure: Arc::clone(structure),
            inf: k,
            factors: Vec::new(),
        }
    }

    pub fn from_simple(structure: &Arc<GarsideStructure>, s: Simple) -> Self {
        let st = structure.as_ref();
        let mut g = Self::identity(structure);
        if st.is_delta(s) {
            g.inf = 1;
        } else if !st.is_identity(s) {
            g.factors.push(s);
        }
        g
    }

    /// The product of a sequence of simples.
    pub fn from_simples(structure: &Arc<GarsideStructure>, simples: &[Simple]) -> Self {
        let mut g = Self::identity(structure);
        for &s in simples {
            g.mul_simple_in_place(s);
        }
        g
    }

    /// Builds an element from claimed left-normal-form data, validating it.
    pub fn from_normal_form(
        structure: &Arc<GarsideStructure>,
        inf: i64,
        factors: Vec<Simple>,
    ) -> Result<Self> {
        let st = structure.as_ref();
        for &s in &factors {
            st.check(s)?;
            if !st.is_proper(s) {
                return Err(GarsideError::InvalidInput(format!(
                    "factor {} is not a proper simple",
                    st.simple_word(s)
                )));
            }
        }
        if let Some(w) = factors
            .windows(2)
            .find(|w| !st.is_left_weighted(w[0], w[1]))
        {
            return Err(GarsideError::InvalidInput(format!(
                "pair ({}, {}) is not left-weighted",
                st.simple_word(w[0]),
                st.simple_word(w[1])
            )));
        }
        Ok(GroupElement {
            structure: Arc::clone(structure),
            inf,
            factors,
        })
    }

    /// Product of `simple^exponent` tokens, left to right.
    pub fn normalize(structure: &Arc<GarsideStructure>, word: &[(Simple, i64)]) -> Result<Self> {
        let mut g = Self::identity(structure);
        for &(s, k) in word {
            structure.check(s)?;
            let base = Self::from_simple(structure, s);
            g = g.mul(&base.pow(k));
        }
        Ok(g)
    }

    pub fn structure(&self) -> &Arc<GarsideStructure> {
        &self.structure
    }

    pub fn inf(&self) -> i64 {
        self.inf
    }

    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    /// Canonical length `ℓ = sup − inf`.
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Simple] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.inf >= 0
    }

    pub fn is_delta_power(&self) -> bool {
        self.factors.is_empty()
    }

    /// Word length over `𝒟 ∪ 𝒟⁻¹`: `max(sup, 0) − min(inf, 0)`.
    pub fn word_length(&self) -> usize {
        (self.sup().max(0) - self.inf.min(0)) as usize
    }

    /// All simples of the normal form, `Δ` repeated `inf` times first.
    /// Only meaningful for positive elements.
    pub fn positive_simples(&self) -> Vec<Simple> {
        debug_assert!(self.inf >= 0);
        let delta = self.structure.delta();
        std::iter::repeat_n(delta, self.inf.max(0) as usize)
            .chain(self.factors.iter().copied())
            .collect()
    }

    /// The distinguished representative `gΔ^{-inf(g)}` of the coset `g⟨Δ⟩`.
    pub fn underline(&self) -> GroupElement {
        let st = self.structure.as_ref();
        GroupElement {
            structure: Arc::clone(&self.structure),
            inf: 0,
            factors: self
                .factors
                .iter()
                .map(|&s| st.tau_pow(s, -self.inf))
                .collect(),
        }
    }

    fn same_structure(&self, other: &GroupElement) -> Result<()> {
        if self.structure.id() != other.structure.id() {
            return Err(GarsideError::StructureMismatch {
                left: self.structure.descriptor().to_string(),
                right: other.structure.descriptor().to_string(),
            });
        }
        Ok(())
    }

    /// `gΔᵏ`
    pub fn mul_delta_power(&self, k: i64) -> GroupElement {
        let st = self.structure.as_ref();
        GroupElement {
            structure: Arc::clone(&self.structure),
            inf: self.inf + k,
            factors: self.factors.iter().map(|&s| st.tau_pow(s, k)).collect(),
        }
    }

    /// `Δᵏg`
    pub fn left_mul_delta_power(&self, k: i64) -> GroupElement {
        GroupElement {
            structure: Arc::clone(&self.structure),
            inf: self.inf + k,
            factors: self.factors.clone(),
        }
    }

    fn mul_simple_in_place(&mut self, s: Simple) -> Vec<Simple> {
        let st = Arc::clone(&self.structure);
        let st = st.as_ref();
        if st.is_identity(s) {
            return Vec::new();
        }
        if st.is_delta(s) {
            *self = self.mul_delta_power(1);
            return vec![st.delta(); self.factors.len()];
        }
        let r = self.factors.len();
        let mut transcript = vec![st.identity(); r];
        let mut carry = s;
        let mut out = vec![st.identity(); r + 1];
        for i in (0..r).rev() {
            let z = self.factors[i];
            let t = st.meet(st.complement(z), carry);
            transcript[i] = t;
            out[i + 1] = st.left_quotient(t, carry).expect("meet is a prefix");
            carry = st.mul(z, t).expect("t is a prefix of ∂(z)");
        }
        out[0] = carry;
        let lead = out.iter().take_while(|&&x| st.is_delta(x)).count();
        let mut tail = out.len();
        while tail > lead && st.is_identity(out[tail - 1]) {
            tail -= 1;
        }
        // Δ factors moved to the front: Δᵖ·Δᵏ·w = Δᵖ⁺ᵏ·w.
        self.inf += lead as i64;
        self.factors = out[lead..tail].to_vec();
        debug_assert!(self.factors.iter().all(|&x| st.is_proper(x)));
        transcript
    }

    /// `gs` together with the carries `t₁…t_r`: the `i`-th prefix of the new
    /// normal form equals the `i`-th prefix of the old one times `tᵢ`.
    pub fn right_mult_simple(&self, s: Simple) -> (GroupElement, Vec<Simple>) {
        let mut g = self.clone();
        let t = if self.structure.is_identity(s) {
            Vec::new()
        } else {
            g.mul_simple_in_place(s)
        };
        (g, t)
    }

    pub fn mul_simple(&self, s: Simple) -> GroupElement {
        self.right_mult_simple(s).0
    }

    /// Product; fails on mismatched structures.
    pub fn checked_mul(&self, other: &GroupElement) -> Result<GroupElement> {
        self.same_structure(other)?;
        let mut g = self.mul_delta_power(other.inf);
        for &w in &other.factors {
            g.mul_simple_in_place(w);
        }
        Ok(g)
    }

    /// Product. Panics on mismatched structures; use [`Self::checked_mul`]
    /// for untrusted input.
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        self.checked_mul(other).expect("structure mismatch")
    }

    /// Inverse by reversal with complements: `s⁻¹ = ∂(s)Δ⁻¹`, then
    /// renormalisation.
    pub fn inverse(&self) -> GroupElement {
        let st = self.structure.as_ref();
        let mut g = Self::identity(&self.structure);
        for &z in self.factors.iter().rev() {
            g.mul_simple_in_place(st.complement(z));
            g = g.mul_delta_power(-1);
        }
        g.mul_delta_power(-self.inf)
    }

    pub fn pow(&self, k: i64) -> GroupElement {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity(&self.structure);
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `a⁻¹ g a`
    pub fn conjugate_by(&self, a: &GroupElement) -> GroupElement {
        a.inverse().mul(self).mul(a)
    }

    /// `self ⪯ other` in the prefix order of the group.
    pub fn is_prefix_of(&self, other: &GroupElement) -> bool {
        self.inverse().mul(other).is_positive()
    }

    /// `self` is a suffix of `other`.
    pub fn is_suffix_of(&self, other: &GroupElement) -> bool {
        other.mul(&self.inverse()).is_positive()
    }
}

/// Reference normaliser: repeated local left-weighting of adjacent pairs
/// until nothing changes. Quadratic and independent of the incremental
/// algorithm used by [`GroupElement::mul`].
pub fn normalize_by_sweeps(
    structure: &Arc<GarsideStructure>,
    inf: i64,
    simples: &[Simple],
) -> GroupElement {
    let st = structure.as_ref();
    let mut inf = inf;
    let mut w: Vec<Simple> = simples.to_vec();
    loop {
        let mut changed = false;
        // Δ moves to the front, conjugating what it passes.
        for i in 1..w.len() {
            if st.is_delta(w[i]) && !st.is_delta(w[i - 1]) {
                w[i] = st.tau(w[i - 1]);
                w[i - 1] = st.delta();
                changed = true;
            }
        }
        for i in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[i], w[i + 1]);
            let t = st.meet(st.complement(a), b);
            if !st.is_identity(t) {
                w[i] = st.mul(a, t).unwrap();
                w[i + 1] = st.left_quotient(t, b).unwrap();
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let lead = w.iter().take_while(|&&s| st.is_delta(s)).count();
    inf += lead as i64;
    let factors: Vec<Simple> = w[lead..]
        .iter()
        .copied()
        .filter(|&s| !st.is_identity(s))
        .collect();
    GroupElement::from_normal_form(structure, inf, factors).expect("sweeps reach a normal form")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::classical;

    fn b3() -> (Arc<GarsideStructure>, Simple, Simple) {
        let st = classical(3).unwrap();
        let (s1, s2) = (st.atom(1).unwrap(), st.atom(2).unwrap());
        (st, s1, s2)
    }

    #[test]
    fn b3_examples() {
        let (st, s1, s2) = b3();
        let g = GroupElement::normalize(&st, &[(s1, 1), (s2, 1), (s1, 1), (s2, 1)]).unwrap();
        assert_eq!((g.inf(), g.factors()), (1, &[s2][..]));
        assert_eq!(g.sup(), 2);

        let g = GroupElement::normalize(&st, &[(s1, 1), (s1, 1)]).unwrap();
        assert_eq!((g.inf(), g.factors()), (0, &[s1, s1][..]));

        assert!(GroupElement::normalize(&st, &[]).unwrap().is_identity());

        let g = GroupElement::normalize(&st, &[(s1, 1), (s2, 1)])
            .unwrap()
            .pow(3);
        assert_eq!((g.inf(), g.canonical_length()), (2, 0));

        let d = GroupElement::delta_power(&st, 3);
        assert_eq!(d.inverse(), GroupElement::delta_power(&st, -3));

        let h = GroupElement::normalize(&st, &[(s1, 1), (s2, -1)]).unwrap();
        assert!(h.inverse().mul(&h).is_identity());
        assert!(h.mul(&h.inverse()).is_identity());
    }

    #[test]
    fn right_mult_simple_example() {
        let (st, s1, s2) = b3();
        let g = GroupElement::from_simples(&st, &[s1, s1]);
        let (h, t) = g.right_mult_simple(s2);
        let s1s2 = st.mul(s1, s2).unwrap();
        assert_eq!(h.factors(), &[s1, s1s2]);
        assert_eq!(t.len(), 2);
        let (same, t) = g.right_mult_simple(st.identity());
        assert_eq!((same, t.len()), (g.clone(), 0));
        let one = GroupElement::identity(&st);
        assert_eq!(one.right_mult_simple(s1).0.factors(), &[s1]);
    }

    #[test]
    fn sweeps_agree_with_incremental() {
        let (st, s1, s2) = b3();
        let word = [s1, s2, s2, s1, s1, s2, st.delta(), s1];
        let a = GroupElement::from_simples(&st, &word);
        assert_eq!(normalize_by_sweeps(&st, 0, &word), a);
    }

    #[test]
    fn mismatch_is_rejected() {
        let (st, s1, _) = b3();
        let z = crate::structures::free_abelian(3).unwrap();
        let a = GroupElement::from_simple(&st, s1);
        let b = GroupElement::from_simple(&z, z.atom(1).unwrap());
        assert!(matches!(
            a.checked_mul(&b),
            Err(GarsideError::StructureMismatch { .. })
        ));
    }

    #[test]
    fn display() {
        let (st, s1, s2) = b3();
        let g = GroupElement::normalize(&st, &[(s1, 1), (s2, 1), (s1, 1), (s2, 1)]).unwrap();
        assert_eq!(g.to_string(), "D | s2");
        assert_eq!(GroupElement::identity(&st).to_string(), "1");
    }
}
