//! Right normal forms, fraction decompositions and mixed normal forms.

use std::sync::Arc;

use serde::Serialize;

use crate::element::GroupElement;
use crate::structure::{GarsideStructure, Side, Simple};

/// `g = x_r⋯x₁Δᵖ` with every pair right-weighted. `factors` lists
/// `x_r, …, x₁` left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightNormalForm {
    pub factors: Vec<Simple>,
    pub delta_power: i64,
}

impl RightNormalForm {
    pub fn sup(&self) -> i64 {
        self.delta_power + self.factors.len() as i64
    }

    pub fn inf(&self) -> i64 {
        self.delta_power
    }

    /// `x₁`, the rightmost non-Δ factor.
    pub fn last(&self) -> Option<Simple> {
        self.factors.last().copied()
    }
}

/// Right-weights a sequence of simples by local sweeps: `Δ` drifts right,
/// identities drift left.
pub fn right_normalize_simples(st: &GarsideStructure, simples: &[Simple]) -> RightNormalForm {
    let mut w = simples.to_vec();
    loop {
        let mut changed = false;
        for i in (0..w.len().saturating_sub(1)).rev() {
            if st.is_delta(w[i]) && !st.is_delta(w[i + 1]) {
                // Δb = τ⁻¹(b)Δ
                w[i] = st.tau_inv(w[i + 1]);
                w[i + 1] = st.delta();
                changed = true;
            }
        }
        for i in (0..w.len().saturating_sub(1)).rev() {
            let (a, b) = (w[i], w[i + 1]);
            let t = st.meet_suffix(st.complement_inv(b), a);
            if !st.is_identity(t) {
                w[i] = st.right_quotient(a, t).unwrap();
                w[i + 1] = st.mul(t, b).unwrap();
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let deltas = w.iter().rev().take_while(|&&s| st.is_delta(s)).count();
    w.truncate(w.len() - deltas);
    w.retain(|&s| !st.is_identity(s));
    RightNormalForm {
        factors: w,
        delta_power: deltas as i64,
    }
}

/// Right normal form of any element. `inf` and `sup` agree with the left
/// normal form.
pub fn right_normal_form(g: &GroupElement) -> RightNormalForm {
    let st = g.structure().as_ref();
    // Δᵖz₁⋯z_r = τ⁻ᵖ(z₁)⋯τ⁻ᵖ(z_r)Δᵖ
    let positive: Vec<Simple> = g.underline().factors().to_vec();
    let mut rnf = right_normalize_simples(st, &positive);
    rnf.delta_power += g.inf();
    rnf
}

/// Rebuilds the element from a right normal form.
pub fn from_right_normal_form(
    structure: &Arc<GarsideStructure>,
    rnf: &RightNormalForm,
) -> GroupElement {
    GroupElement::from_simples(structure, &rnf.factors).mul_delta_power(rnf.delta_power)
}

/// `g = D⁻¹N` (left) or `g = ND⁻¹` (right) with `D`, `N` positive and
/// coprime on the matching side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub side: Side,
    pub denominator: GroupElement,
    pub numerator: GroupElement,
}

impl Fraction {
    pub fn reconstruct(&self) -> GroupElement {
        match self.side {
            Side::Left => self.denominator.inverse().mul(&self.numerator),
            Side::Right => self.numerator.mul(&self.denominator.inverse()),
        }
    }

    /// `D ∧ N = 1` for left fractions, `D ∧↰ N = 1` for right ones.
    pub fn is_coprime(&self) -> bool {
        let g = match self.side {
            Side::Left => prefix_gcd(&self.denominator, &self.numerator),
            Side::Right => suffix_gcd(&self.denominator, &self.numerator),
        };
        g.is_identity()
    }
}

pub fn left_fraction(g: &GroupElement) -> Fraction {
    let st = g.structure();
    let one = GroupElement::identity(st);
    let (denominator, numerator) = if g.inf() >= 0 {
        (one, g.clone())
    } else if g.sup() <= 0 {
        (g.inverse(), one)
    } else {
        // g = Δ⁻ᵐ z₁⋯z_m · z_{m+1}⋯z_r
        let m = (-g.inf()) as usize;
        let head = GroupElement::from_simples(st, &g.factors()[..m]);
        let numerator = GroupElement::from_simples(st, &g.factors()[m..]);
        (head.inverse().mul_delta_power(m as i64), numerator)
    };
    Fraction {
        side: Side::Left,
        denominator,
        numerator,
    }
}

pub fn right_fraction(g: &GroupElement) -> Fraction {
    let st = g.structure();
    let one = GroupElement::identity(st);
    let (denominator, numerator) = if g.inf() >= 0 {
        (one, g.clone())
    } else if g.sup() <= 0 {
        (g.inverse(), one)
    } else {
        // g = x_r⋯x_{m+1} · x_m⋯x₁Δ⁻ᵐ
        let rnf = right_normal_form(g);
        let m = (-rnf.delta_power) as usize;
        let cut = rnf.factors.len() - m;
        let numerator = GroupElement::from_simples(st, &rnf.factors[..cut]);
        let tail = GroupElement::from_simples(st, &rnf.factors[cut..]);
        (tail.inverse().left_mul_delta_power(m as i64), numerator)
    };
    Fraction {
        side: Side::Right,
        denominator,
        numerator,
    }
}

/// Largest simple prefix of a positive element.
fn head(a: &GroupElement) -> Simple {
    let st = a.structure();
    if a.inf() > 0 {
        st.delta()
    } else {
        a.factors()
            .first()
            .copied()
            .unwrap_or_else(|| st.identity())
    }
}

/// Largest simple suffix of a positive element.
fn tail(a: &GroupElement) -> Simple {
    let st = a.structure();
    if a.inf() > 0 {
        st.delta()
    } else {
        right_normal_form(a).last().unwrap_or_else(|| st.identity())
    }
}

fn simple_inverse(st: &Arc<GarsideStructure>, s: Simple) -> GroupElement {
    // s⁻¹ = ∂(s)Δ⁻¹
    GroupElement::from_simple(st, st.complement(s)).mul_delta_power(-1)
}

/// Greatest common prefix `a ∧ b` of two positive elements.
pub fn prefix_gcd(a: &GroupElement, b: &GroupElement) -> GroupElement {
    let st = Arc::clone(a.structure());
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = GroupElement::identity(&st);
    loop {
        let s = st.meet(head(&a), head(&b));
        if st.is_identity(s) {
            return acc;
        }
        acc = acc.mul_simple(s);
        let si = simple_inverse(&st, s);
        a = si.mul(&a);
        b = si.mul(&b);
    }
}

/// Greatest common suffix `a ∧↰ b` of two positive elements.
pub fn suffix_gcd(a: &GroupElement, b: &GroupElement) -> GroupElement {
    let st = Arc::clone(a.structure());
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = GroupElement::identity(&st);
    loop {
        let s = st.meet_suffix(tail(&a), tail(&b));
        if st.is_identity(s) {
            return acc;
        }
        acc = GroupElement::from_simple(&st, s).mul(&acc);
        let si = simple_inverse(&st, s);
        a = a.mul(&si);
        b = b.mul(&si);
    }
}

/// A simple with a sign: `s` or `s⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignedSimple {
    #[serde(skip)]
    pub simple: Simple,
    pub inverse: bool,
}

/// Left mixed normal form `D_l⁻¹ N_l` spelled as a word in `𝒟 ∪ 𝒟⁻¹`:
/// the inverted normal form of `D_l` followed by the normal form of `N_l`.
pub fn mixed_word(g: &GroupElement) -> Vec<SignedSimple> {
    let f = left_fraction(g);
    let mut out: Vec<SignedSimple> = f
        .denominator
        .positive_simples()
        .into_iter()
        .rev()
        .map(|simple| SignedSimple {
            simple,
            inverse: true,
        })
        .collect();
    out.extend(
        f.numerator
            .positive_simples()
            .into_iter()
            .map(|simple| SignedSimple {
                simple,
                inverse: false,
            }),
    );
    out
}

/// Renders a mixed word as `(s1 s2)^-1 . (s2 s1)`-style text.
pub fn format_mixed_word(st: &GarsideStructure, word: &[SignedSimple]) -> Vec<String> {
    word.iter()
        .map(|w| {
            let s = st.simple_word(w.simple);
            match (w.inverse, s.contains(' ')) {
                (false, _) => s,
                (true, false) => format!("{s}^-1"),
                (true, true) => format!("({s})^-1"),
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lengths {
    pub inf: i64,
    pub sup: i64,
    pub canonical_length: usize,
    pub word_length: usize,
}

pub fn lengths(g: &GroupElement) -> Lengths {
    Lengths {
        inf: g.inf(),
        sup: g.sup(),
        canonical_length: g.canonical_length(),
        word_length: g.word_length(),
    }
}

/// All left-weighted sequences of `len` proper simples, in lexicographic
/// order of simple indices. These are the left normal forms of the
/// elements with `inf = 0` and `sup = len`.
pub fn left_weighted_sequences(st: &GarsideStructure, len: usize) -> Vec<Vec<Simple>> {
    let proper: Vec<Simple> = st.proper_simples().collect();
    let mut layer: Vec<Vec<Simple>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for z in &layer {
            for &s in &proper {
                if z.last().is_none_or(|&t| st.is_left_weighted(t, s)) {
                    let mut y = z.clone();
                    y.push(s);
                    next.push(y);
                }
            }
        }
        layer = next;
    }
    layer
}

/// Number of elements with `inf = 0` and `sup = k`, for `k = 0..=max`.
pub fn cone_sizes(st: &GarsideStructure, max: usize) -> Vec<u64> {
    let proper: Vec<Simple> = st.proper_simples().collect();
    let mut ending: Vec<u64> = vec![1; proper.len()];
    let mut out = vec![1];
    for k in 1..=max {
        if k > 1 {
            ending = proper
                .iter()
                .map(|&s| {
                    proper
                        .iter()
                        .zip(&ending)
                        .filter(|(&t, _)| st.is_left_weighted(t, s))
                        .fold(0u64, |a, (_, &c)| a.saturating_add(c))
                })
                .collect();
        }
        out.push(ending.iter().fold(0u64, |a, &c| a.saturating_add(c)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{classical, free_abelian};

    #[test]
    fn b3_fraction_example() {
        let st = classical(3).unwrap();
        let (s1, s2) = (st.atom(1).unwrap(), st.atom(2).unwrap());
        let g = GroupElement::normalize(&st, &[(s1, 1), (s2, -1)]).unwrap();
        let f = left_fraction(&g);
        let s1s2 = st.mul(s1, s2).unwrap();
        let s2s1 = st.mul(s2, s1).unwrap();
        assert_eq!(f.denominator, GroupElement::from_simple(&st, s1s2));
        assert_eq!(f.numerator, GroupElement::from_simple(&st, s2s1));
        assert!(f.is_coprime());
        assert_eq!(f.reconstruct(), g);
        let w = mixed_word(&g);
        assert_eq!(w.len(), 2);
        assert_eq!(format_mixed_word(&st, &w), vec!["(s1 s2)^-1", "s2 s1"]);
        let r = right_fraction(&g);
        assert!(r.is_coprime());
        assert_eq!(r.reconstruct(), g);
        assert_eq!(lengths(&g).word_length, 2);
    }

    #[test]
    fn trivial_fractions() {
        let st = classical(3).unwrap();
        let s1 = st.atom(1).unwrap();
        let g = GroupElement::from_simples(&st, &[s1, s1]);
        let f = left_fraction(&g);
        assert!(f.denominator.is_identity());
        assert_eq!(f.numerator, g);
        let d = GroupElement::delta_power(&st, -1);
        let w = mixed_word(&d);
        assert_eq!(w.len(), 1);
        assert!(w[0].inverse && st.is_delta(w[0].simple));
        assert_eq!(GroupElement::delta_power(&st, -4).word_length(), 4);
        assert_eq!(GroupElement::delta_power(&st, 1).canonical_length(), 0);
    }

    #[test]
    fn right_normal_form_examples() {
        let st = classical(3).unwrap();
        let (s1, s2) = (st.atom(1).unwrap(), st.atom(2).unwrap());
        let g = GroupElement::from_simples(&st, &[s1, s1, s2]);
        let r = right_normal_form(&g);
        assert_eq!((r.inf(), r.sup()), (g.inf(), g.sup()));
        assert_eq!(from_right_normal_form(&st, &r), g);
        assert_eq!(r.factors, vec![s1, st.mul(s1, s2).unwrap()]);
        for w in r.factors.windows(2) {
            assert!(st.is_right_weighted(w[0], w[1]));
        }
        let h = GroupElement::normalize(&st, &[(s1, 1), (s2, -1), (s1, 2)]).unwrap();
        let r = right_normal_form(&h);
        assert_eq!((r.inf(), r.sup()), (h.inf(), h.sup()));
        assert_eq!(from_right_normal_form(&st, &r), h);
    }

    #[test]
    fn cone_enumeration_matches_counts() {
        for st in [
            classical(3).unwrap(),
            classical(4).unwrap(),
            free_abelian(3).unwrap(),
        ] {
            let sizes = cone_sizes(&st, 3);
            for (k, &n) in sizes.iter().enumerate() {
                let seqs = left_weighted_sequences(&st, k);
                assert_eq!(seqs.len() as u64, n);
                for f in seqs {
                    let g = GroupElement::from_simples(&st, &f);
                    assert_eq!((g.inf(), g.sup()), (0, k as i64));
                }
            }
        }
        assert_eq!(cone_sizes(&classical(3).unwrap(), 3), vec![1, 4, 8, 16]);
    }
}
