//! Right-rigidity, cyclic sliding on the right and the search for rigid
//! conjugates of powers.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::element::GroupElement;
use crate::error::{GarsideError, Result};
use crate::normal_form::{right_normal_form, RightNormalForm};
use crate::structure::{GarsideStructure, Simple};
use crate::word::format_word;

/// `𝔭↰(x) = τᵖ(x₁) ∧↰ ∂⁻¹(x_r)` for `x = x_r⋯x₁Δᵖ` in right normal form.
/// Canonical length zero gives the identity.
pub fn preferred_suffix(g: &GroupElement) -> Simple {
    preferred_suffix_of(g.structure(), &right_normal_form(g))
}

fn preferred_suffix_of(st: &GarsideStructure, rnf: &RightNormalForm) -> Simple {
    match (rnf.factors.first(), rnf.factors.last()) {
        (Some(&xr), Some(&x1)) => {
            st.meet_suffix(st.tau_pow(x1, rnf.delta_power), st.complement_inv(xr))
        }
        _ => st.identity(),
    }
}

/// Preferred simple suffix and whether it is trivial.
pub fn suffix_and_rigidity(g: &GroupElement) -> (Simple, bool) {
    let s = preferred_suffix(g);
    (s, g.structure().is_identity(s))
}

pub fn is_right_rigid(g: &GroupElement) -> bool {
    suffix_and_rigidity(g).1
}

/// One sliding step `x ↦ s x s⁻¹` with `s = 𝔭↰(x)`. Returns the result and
/// the conjugator `a = s⁻¹`, so that `a⁻¹ x a` is the result.
pub fn cyclic_sliding(g: &GroupElement) -> (GroupElement, GroupElement) {
    let st = g.structure();
    let s = GroupElement::from_simple(st, preferred_suffix(g));
    let a = s.inverse();
    (s.mul(g).mul(&a), a)
}

/// Iterates sliding from `g` until an element repeats.
#[derive(Clone, Debug)]
pub struct SlidingOrbit {
    /// Elements before the circuit, starting with `g`.
    pub preperiod: Vec<GroupElement>,
    /// The circuit in sliding order.
    pub circuit: Vec<GroupElement>,
    /// `conjugators[i]⁻¹ · g · conjugators[i]` is the `i`-th element of
    /// `preperiod ++ circuit`.
    pub conjugators: Vec<GroupElement>,
}

pub const MAX_SLIDING_STEPS: usize = 100_000;

pub fn sliding_orbit(g: &GroupElement) -> Result<SlidingOrbit> {
    let mut seen: HashMap<GroupElement, usize> = HashMap::new();
    let mut elems = Vec::new();
    let mut conj = Vec::new();
    let mut cur = g.clone();
    let mut acc = GroupElement::identity(g.structure());
    loop {
        if let Some(&start) = seen.get(&cur) {
            let circuit = elems.split_off(start);
            return Ok(SlidingOrbit {
                preperiod: elems,
                circuit,
                conjugators: conj,
            });
        }
        if elems.len() >= MAX_SLIDING_STEPS {
            return Err(GarsideError::guard(
                "sliding steps",
                elems.len(),
                MAX_SLIDING_STEPS,
            ));
        }
        seen.insert(cur.clone(), elems.len());
        elems.push(cur.clone());
        conj.push(acc.clone());
        let (next, a) = cyclic_sliding(&cur);
        acc = acc.mul(&a);
        cur = next;
    }
}

/// `a⁻¹ gᵏ a = Δ^{e·m} x` with `inf(x) = 0` and `x` right-rigid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidSearchResult {
    pub power: u32,
    pub conjugator: GroupElement,
    pub central_exponent: i64,
    pub rigid_part: GroupElement,
}

impl RigidSearchResult {
    /// Recomputes both sides of the conjugation equation.
    pub fn verify(&self, g: &GroupElement) -> bool {
        let st = g.structure();
        let e = st.tau_order() as i64;
        let lhs = g.pow(self.power as i64).conjugate_by(&self.conjugator);
        let rhs = GroupElement::delta_power(st, e * self.central_exponent).mul(&self.rigid_part);
        lhs == rhs && self.rigid_part.inf() == 0 && is_right_rigid(&self.rigid_part)
    }

    pub fn summary(&self) -> serde_json::Value {
        serde_json::json!({
            "power": self.power,
            "conjugator": format_word(&self.conjugator),
            "central_exponent": self.central_exponent,
            "rigid_part": format_word(&self.rigid_part),
            "rigid_part_length": self.rigid_part.canonical_length(),
        })
    }
}

pub const DEFAULT_MAX_POWER: u32 = 12;

fn search_power(g: &GroupElement, k: u32) -> Option<RigidSearchResult> {
    let st = g.structure();
    let e = st.tau_order() as i64;
    let orbit = sliding_orbit(&g.pow(k as i64)).ok()?;
    let offset = orbit.preperiod.len();
    let mut order: Vec<usize> = (0..orbit.circuit.len()).collect();
    order.sort_by(|&i, &j| orbit.circuit[i].cmp(&orbit.circuit[j]));
    order.into_iter().find_map(|i| {
        let c = &orbit.circuit[i];
        if c.inf().rem_euclid(e) != 0 {
            return None;
        }
        let x = c.left_mul_delta_power(-c.inf());
        is_right_rigid(&x).then(|| RigidSearchResult {
            power: k,
            conjugator: orbit.conjugators[offset + i].clone(),
            central_exponent: c.inf() / e,
            rigid_part: x,
        })
    })
}

/// Smallest `k ≤ max_power` such that the sliding circuit of `gᵏ` contains
/// an element `Δ^{e·m}x` with `x` right-rigid; ties go to the smallest such
/// circuit element. `None` is inconclusive, not a disproof.
pub fn rigid_power_search(g: &GroupElement, max_power: u32) -> Result<Option<RigidSearchResult>> {
    if max_power == 0 {
        return Err(GarsideError::InvalidInput(
            "max_power must be at least 1".into(),
        ));
    }
    let found = (1..=max_power)
        .into_par_iter()
        .find_map_first(|k| search_power(g, k));
    if let Some(r) = &found {
        debug_assert!(r.verify(g));
    }
    Ok(found)
}

pub const DEFAULT_AXIS_WINDOW: usize = 10;

/// A validated axis element: `inf(x) = 0`, right-rigid, `ℓ(x) ≥ 1`, in a
/// Δ-pure structure, with powers cached.
#[derive(Clone, Debug)]
pub struct AxisContext {
    x: GroupElement,
    ell: usize,
    window: usize,
    /// `x^k` for `k = -window..=window`, indexed by `k + window`.
    powers: Vec<GroupElement>,
}

impl AxisContext {
    pub fn new(x: &GroupElement) -> Result<Self> {
        Self::with_window(x, DEFAULT_AXIS_WINDOW)
    }

    pub fn with_window(x: &GroupElement, window: usize) -> Result<Self> {
        let st = x.structure();
        let bad = |why: &str| {
            Err(GarsideError::InvalidAxis(format!(
                "{}: {why}",
                format_word(x)
            )))
        };
        if !st.is_delta_pure() {
            return bad(&format!("structure {} is not Δ-pure", st.descriptor()));
        }
        if x.inf() != 0 {
            return bad("inf(x) must be 0");
        }
        if x.canonical_length() == 0 {
            return bad("canonical length must be positive");
        }
        if !is_right_rigid(x) {
            return bad("x is not right-rigid");
        }
        let ell = x.canonical_length();
        let rnf = right_normal_form(x);
        let inv = x.inverse();
        let mut powers = Vec::with_capacity(2 * window + 1);
        let mut neg = vec![GroupElement::identity(st)];
        for _ in 0..window {
            neg.push(neg.last().unwrap().mul(&inv));
        }
        powers.extend(neg.into_iter().skip(1).rev());
        let mut cur = GroupElement::identity(st);
        powers.push(cur.clone());
        for k in 1..=window {
            cur = cur.mul(x);
            let r = right_normal_form(&cur);
            let expect: Vec<Simple> = rnf.factors.iter().copied().cycle().take(k * ell).collect();
            if cur.inf() != 0 || cur.canonical_length() != k * ell || r.factors != expect {
                return bad(&format!("power {k} does not concatenate"));
            }
            powers.push(cur.clone());
        }
        Ok(AxisContext {
            x: x.clone(),
            ell,
            window,
            powers,
        })
    }

    pub fn x(&self) -> &GroupElement {
        &self.x
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn structure(&self) -> &Arc<GarsideStructure> {
        self.x.structure()
    }

    /// `xᵏ`, cached inside the window.
    pub fn power(&self, k: i64) -> GroupElement {
        let w = self.window as i64;
        if (-w..=w).contains(&k) {
            return self.powers[(k + w) as usize].clone();
        }
        let step = if k > 0 { w } else { -w };
        let mut out = self.powers[(step + w) as usize].clone();
        let mut rest = k - step;
        while rest.abs() > w {
            out = out.mul(&self.powers[(step + w) as usize]);
            rest -= step;
        }
        out.mul(&self.powers[(rest + w) as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{classical, free_abelian};
    use crate::word::parse_word;

    #[test]
    fn suffix_examples() {
        let b3 = classical(3).unwrap();
        let p = |t: &str| parse_word(&b3, t).unwrap();
        assert_eq!(suffix_and_rigidity(&p("s1")), (b3.identity(), true));
        let (s, rigid) = suffix_and_rigidity(&p("s1 s2"));
        assert_eq!((s, rigid), (b3.atom(2).unwrap(), false));
        assert_eq!(p("s1 s2").pow(2).inf(), 1);
        for k in [-2, 0, 3] {
            assert!(is_right_rigid(&GroupElement::delta_power(&b3, k)));
        }
    }

    #[test]
    fn sliding_fixes_rigid_and_central() {
        let b3 = classical(3).unwrap();
        let g = parse_word(&b3, "s1").unwrap();
        assert_eq!(cyclic_sliding(&g).0, g);
        let d = GroupElement::delta_power(&b3, 3);
        assert_eq!(cyclic_sliding(&d).0, d);
    }

    #[test]
    fn sliding_shortens_conjugates_of_an_atom() {
        let b3 = classical(3).unwrap();
        let g = parse_word(&b3, "s2 s1 s2^-1").unwrap();
        let mut cur = g.clone();
        let mut acc = GroupElement::identity(&b3);
        for _ in 0..10 {
            let (next, a) = cyclic_sliding(&cur);
            assert!(next.inf() >= cur.inf() && next.sup() <= cur.sup());
            acc = acc.mul(&a);
            assert_eq!(g.conjugate_by(&acc), next);
            cur = next;
        }
        assert_eq!(cur.canonical_length(), 1);
    }

    #[test]
    fn search_examples() {
        let b3 = classical(3).unwrap();
        let p = |t: &str| parse_word(&b3, t).unwrap();
        let r = rigid_power_search(&p("s1"), 12).unwrap().unwrap();
        assert_eq!((r.power, r.central_exponent), (1, 0));
        assert!(r.conjugator.is_identity());
        assert_eq!(r.rigid_part, p("s1"));

        let r = rigid_power_search(&p("D"), 12).unwrap().unwrap();
        assert_eq!((r.power, r.central_exponent), (2, 1));
        assert!(r.rigid_part.is_identity());

        let g = p("s1 s2^-1");
        let r = rigid_power_search(&g, 12).unwrap().unwrap();
        assert!(r.verify(&g));
        assert!(r.rigid_part.canonical_length() > 0);
    }

    #[test]
    fn axis_context_validation() {
        let b3 = classical(3).unwrap();
        let ctx = AxisContext::new(&parse_word(&b3, "s1").unwrap()).unwrap();
        assert_eq!(ctx.ell(), 1);
        assert_eq!(ctx.power(-13), parse_word(&b3, "s1^-13").unwrap());
        assert_eq!(ctx.power(25), parse_word(&b3, "s1^25").unwrap());
        assert!(AxisContext::new(&parse_word(&b3, "s1 s2").unwrap()).is_err());
        assert!(AxisContext::new(&parse_word(&b3, "D s1").unwrap()).is_err());
        let z3 = free_abelian(3).unwrap();
        assert!(matches!(
            AxisContext::new(&parse_word(&z3, "s1").unwrap()),
            Err(GarsideError::InvalidAxis(_))
        ));
    }
}
