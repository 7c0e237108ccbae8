//! The quotient graph `𝒳 = Γ/⟨Δ⟩`, the Cayley graphs `Γ` and
//! `Γ̄ = Γ/⟨Δᵉ⟩`, preferred paths and breadth-first balls.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::element::GroupElement;
use crate::error::{GarsideError, Result};
use crate::report::ScanReport;
use crate::sample::{self, random_element, random_proper_simple};
use crate::structure::GarsideStructure;
use crate::word::format_word;

/// A coset `g⟨Δ⟩`, stored as its representative with `inf = 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexX {
    rep: GroupElement,
}

impl VertexX {
    pub fn new(g: &GroupElement) -> Self {
        VertexX { rep: g.underline() }
    }

    /// The base vertex `∗ = ⟨Δ⟩`.
    pub fn base(structure: &Arc<GarsideStructure>) -> Self {
        VertexX {
            rep: GroupElement::identity(structure),
        }
    }

    pub fn rep(&self) -> &GroupElement {
        &self.rep
    }

    pub fn structure(&self) -> &Arc<GarsideStructure> {
        self.rep.structure()
    }

    /// `k·v`
    pub fn translate(&self, k: &GroupElement) -> VertexX {
        VertexX::new(&k.mul(&self.rep))
    }

    /// Neighbours `underline(v̲s)` over proper simples `s`. The second
    /// adjacency direction `v̲s⁻¹ = v̲∂(s)Δ⁻¹` yields the same cosets.
    pub fn neighbours(&self) -> Vec<VertexX> {
        let st = self.structure();
        st.proper_simples()
            .map(|s| VertexX::new(&self.rep.mul_simple(s)))
            .collect()
    }

    pub fn word(&self) -> String {
        format_word(&self.rep)
    }
}

impl fmt::Debug for VertexX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", self.rep)
    }
}

impl fmt::Display for VertexX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rep.is_identity() {
            write!(f, "*")
        } else {
            write!(f, "{}", self.rep)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Metric {
    /// Word metric of `Γ` over `𝒟 ∪ 𝒟⁻¹`.
    Gamma,
    /// Word metric of `Γ̄ = Γ/⟨Δᵉ⟩`.
    GammaBar,
    /// Graph metric of `𝒳`.
    X,
}

impl std::str::FromStr for Metric {
    type Err = GarsideError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma" | "Γ" => Ok(Metric::Gamma),
            "gammabar" | "gamma-bar" | "Γ̄" => Ok(Metric::GammaBar),
            "x" | "X" | "𝒳" => Ok(Metric::X),
            _ => Err(GarsideError::InvalidInput(format!("unknown metric `{s}`"))),
        }
    }
}

/// `d_𝒳(u, v) = ℓ(u̲⁻¹ v)`.
pub fn dist_x(u: &VertexX, v: &VertexX) -> usize {
    u.rep.inverse().mul(&v.rep).canonical_length()
}

/// `min_t |aΔ^{et}|` for the piecewise-linear word length
/// `max(S + et, 0) − min(I + et, 0)`.
pub fn gamma_bar_length(a: &GroupElement) -> usize {
    let e = a.structure().tau_order() as i64;
    let (i, s) = (a.inf(), a.sup());
    let f = |t: i64| (s + e * t).max(0) - (i + e * t).min(0);
    // The minimum over ℝ is attained on [−S/e, −I/e]; check the integers
    // around both ends.
    let mut best = i64::MAX;
    for x in [-s, -i] {
        let lo = x.div_euclid(e);
        for t in [lo - 1, lo, lo + 1, lo + 2] {
            best = best.min(f(t));
        }
    }
    best as usize
}

pub fn dist(g: &GroupElement, h: &GroupElement, metric: Metric) -> Result<usize> {
    let a = g.inverse().checked_mul(h)?;
    Ok(match metric {
        Metric::Gamma => a.word_length(),
        Metric::GammaBar => gamma_bar_length(&a),
        Metric::X => dist_x(&VertexX::new(g), &VertexX::new(h)),
    })
}

/// Representative of `g⟨Δᵉ⟩` with `0 ≤ inf < e`.
pub fn gamma_bar_rep(g: &GroupElement) -> GroupElement {
    let e = g.structure().tau_order() as i64;
    g.left_mul_delta_power(-e * g.inf().div_euclid(e))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferredPath {
    pub from: VertexX,
    pub to: VertexX,
    pub vertices: Vec<VertexX>,
}

impl PreferredPath {
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }
}

/// `A(g, h)`: the vertices `g̲z₁⋯zᵢ⟨Δ⟩` where `z₁⋯z_r` is the left normal
/// form of `underline(g̲⁻¹h)`.
pub fn preferred_path(g: &GroupElement, h: &GroupElement) -> Result<PreferredPath> {
    let from = VertexX::new(g);
    let diff = from.rep.inverse().checked_mul(h)?.underline();
    let mut vertices = vec![from.clone()];
    let mut cur = from.rep.clone();
    for &z in diff.factors() {
        cur = cur.mul_simple(z);
        vertices.push(VertexX::new(&cur));
    }
    Ok(PreferredPath {
        from,
        to: VertexX::new(h),
        vertices,
    })
}

/// Ball radius bounds. Defaults depend on the number of simples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Guards {
    pub ball_radius: usize,
}

static BALL_GUARD_OVERRIDE: AtomicUsize = AtomicUsize::new(0);

/// Replaces the default ball radius bound process-wide; `None` restores it.
pub fn set_ball_guard_override(bound: Option<usize>) {
    BALL_GUARD_OVERRIDE.store(bound.unwrap_or(0), Ordering::Relaxed);
}

impl Guards {
    pub fn for_structure(st: &GarsideStructure) -> Self {
        let forced = BALL_GUARD_OVERRIDE.load(Ordering::Relaxed);
        if forced > 0 {
            return Guards {
                ball_radius: forced,
            };
        }
        let ball_radius = match st.simple_count() {
            0..=8 => 6,
            9..=24 => 4,
            _ => 3,
        };
        Guards { ball_radius }
    }

    pub fn check_radius(&self, radius: usize) -> Result<()> {
        if radius > self.ball_radius {
            return Err(GarsideError::guard("ball radius", radius, self.ball_radius));
        }
        Ok(())
    }
}

fn bfs<V, F>(center: V, radius: usize, neighbours: F) -> Vec<(V, usize)>
where
    V: Clone + Eq + std::hash::Hash + Ord + Send + Sync,
    F: Fn(&V) -> Vec<V> + Sync,
{
    let mut seen: HashMap<V, usize> = HashMap::new();
    seen.insert(center.clone(), 0);
    let mut out = vec![(center.clone(), 0)];
    let mut frontier = vec![center];
    for d in 1..=radius {
        let expanded: Vec<Vec<V>> = frontier.par_iter().map(&neighbours).collect();
        let mut next = Vec::new();
        for v in expanded.into_iter().flatten() {
            if !seen.contains_key(&v) {
                seen.insert(v.clone(), d);
                next.push(v);
            }
        }
        next.sort();
        out.extend(next.iter().map(|v| (v.clone(), d)));
        frontier = next;
    }
    out
}

/// The ball of `𝒳` around `center`, ordered by distance then vertex.
pub fn ball_x(center: &VertexX, radius: usize, guards: &Guards) -> Result<Vec<(VertexX, usize)>> {
    guards.check_radius(radius)?;
    Ok(bfs(center.clone(), radius, |v| v.neighbours()))
}

/// Generators `𝒟^{±1} \ {1}` of `Γ`, as elements.
pub fn gamma_generators(st: &Arc<GarsideStructure>) -> Vec<GroupElement> {
    let mut gens = Vec::new();
    for s in st.simples().skip(1) {
        let g = GroupElement::from_simple(st, s);
        gens.push(g.inverse());
        gens.push(g);
    }
    gens
}

/// The ball of `Γ` (or `Γ̄` when `quotient`) around `center`.
pub fn ball_gamma(
    center: &GroupElement,
    radius: usize,
    quotient: bool,
    guards: &Guards,
) -> Result<Vec<(GroupElement, usize)>> {
    guards.check_radius(radius)?;
    let gens = gamma_generators(center.structure());
    let reduce = |g: GroupElement| if quotient { gamma_bar_rep(&g) } else { g };
    Ok(bfs(reduce(center.clone()), radius, |v| {
        gens.iter().map(|s| reduce(v.mul(s))).collect()
    }))
}

/// Hausdorff distance in `𝒳` between two finite vertex sets.
pub fn hausdorff_x(a: &[VertexX], b: &[VertexX]) -> usize {
    let one_way = |a: &[VertexX], b: &[VertexX]| {
        a.iter()
            .map(|u| b.iter().map(|v| dist_x(u, v)).min().unwrap_or(0))
            .max()
            .unwrap_or(0)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Sample bounds for randomized checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SampleSpec {
    pub samples: usize,
    pub max_len: usize,
    pub seed: u64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            samples: 1000,
            max_len: 6,
            seed: 1,
        }
    }
}

fn words(xs: &[&GroupElement]) -> Vec<String> {
    xs.iter().map(|g| format_word(g)).collect()
}

/// Checks ball convexity, the fellow traveller property and the `(2,0)`
/// quasi-geodesic inequalities for ordered concatenations on seeded samples.
pub fn path_property_checks(st: &Arc<GarsideStructure>, spec: &SampleSpec) -> ScanReport {
    let mut report = ScanReport::new("path-properties", st.descriptor());
    report.window.insert("samples".into(), spec.samples as i64);
    report.window.insert("max_len".into(), spec.max_len as i64);
    report.window.insert("seed".into(), spec.seed as i64);
    let mut rng = sample::rng(spec.seed);
    let star = VertexX::base(st);

    let mut max_hausdorff = 0;
    for _ in 0..spec.samples {
        let g = random_element(st, &mut rng, spec.max_len);
        let h = random_element(st, &mut rng, spec.max_len);

        // (a) convexity
        let path = preferred_path(&g, &h).unwrap();
        let bound = dist_x(&star, &path.from).max(dist_x(&star, &path.to));
        report.count("convexity", 1);
        if let Some(k) = path.vertices.iter().find(|k| dist_x(&star, k) > bound) {
            report.violation("convexity", words(&[&g, &h, k.rep()]));
        }

        // (b) fellow traveller against a neighbour h' of h
        let s = random_proper_simple(st, &mut rng);
        let h2 = VertexX::new(&h).rep().mul_simple(s);
        let other = preferred_path(&g, &h2).unwrap();
        let hd = hausdorff_x(&path.vertices, &other.vertices);
        max_hausdorff = max_hausdorff.max(hd);
        report.count("fellow_traveller", 1);
        if hd > 1 {
            report.violation("fellow traveller", words(&[&g, &h, &h2]));
        }

        // (c) ordered concatenation g̲ ⪯ h̲ ⪯ k̲; redraw the positive
        // extensions until both prefix relations survive distinguishing.
        let gv = VertexX::new(&g);
        let mut chain = None;
        for _ in 0..64 {
            let (la, lb) = (
                rng_len(&mut rng, spec.max_len),
                rng_len(&mut rng, spec.max_len),
            );
            let a = sample::random_positive(st, &mut rng, la);
            let b = sample::random_positive(st, &mut rng, lb);
            let hv = VertexX::new(&gv.rep().mul(&a));
            let kv = VertexX::new(&hv.rep().mul(&b));
            if gv.rep().is_prefix_of(hv.rep()) && hv.rep().is_prefix_of(kv.rep()) {
                chain = Some((hv, kv));
                break;
            }
            report.count("concatenation_redrawn", 1);
        }
        let Some((hv, kv)) = chain else {
            report.count("concatenation_skipped", 1);
            continue;
        };
        report.count("concatenation", 1);
        let first = preferred_path(gv.rep(), hv.rep()).unwrap();
        let second = preferred_path(hv.rep(), kv.rep()).unwrap();
        let mut alpha = first.vertices.clone();
        alpha.extend(second.vertices.iter().skip(1).cloned());
        'pairs: for i in 0..alpha.len() {
            for j in i + 1..alpha.len() {
                let d = dist_x(&alpha[i], &alpha[j]);
                let span = j - i;
                if 2 * d < span || d > 2 * span {
                    report.violation(
                        "(2,0)-quasi-geodesic",
                        words(&[gv.rep(), hv.rep(), kv.rep()]),
                    );
                    break 'pairs;
                }
            }
        }
    }
    report
        .constants
        .insert("max_hausdorff".into(), max_hausdorff as i64);
    report
}

fn rng_len(rng: &mut sample::SampleRng, max: usize) -> usize {
    use rand::Rng;
    rng.gen_range(0..=max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{classical, free_abelian};
    use crate::word::parse_word;

    #[test]
    fn distinguished_representatives() {
        let b3 = classical(3).unwrap();
        assert_eq!(
            VertexX::new(&parse_word(&b3, "D^3").unwrap()),
            VertexX::base(&b3)
        );
        let v = VertexX::new(&parse_word(&b3, "s1 s2^-1").unwrap());
        assert_eq!(v.rep(), &parse_word(&b3, "s1 s1 s2").unwrap());
        assert_eq!(v.rep().factors().len(), 2);
        let g = parse_word(&b3, "s1 s1 s2").unwrap();
        assert_eq!(VertexX::new(&g).rep(), &g);
    }

    #[test]
    fn distances() {
        let b3 = classical(3).unwrap();
        let one = GroupElement::identity(&b3);
        let p = |t: &str| parse_word(&b3, t).unwrap();
        assert_eq!(dist(&one, &p("s1^3"), Metric::X).unwrap(), 3);
        assert_eq!(
            dist(&p("s1 s2^-1"), &p("s1 s2^-1 D^5"), Metric::X).unwrap(),
            0
        );
        assert_eq!(dist(&one, &p("s1 s2 s1 s2"), Metric::X).unwrap(), 1);
        assert_eq!(dist(&one, &p("s1 s2^-1"), Metric::Gamma).unwrap(), 2);
        assert_eq!(dist(&one, &p("D^2"), Metric::GammaBar).unwrap(), 0);
        assert_eq!(dist(&one, &p("D^3"), Metric::GammaBar).unwrap(), 1);
        assert_eq!(dist(&one, &p("D^-5"), Metric::Gamma).unwrap(), 5);
    }

    #[test]
    fn preferred_path_example() {
        let b3 = classical(3).unwrap();
        let p = |t: &str| parse_word(&b3, t).unwrap();
        let path = preferred_path(&GroupElement::identity(&b3), &p("s1 s1 s2")).unwrap();
        let expect: Vec<VertexX> = ["", "s1", "s1 s1 s2"]
            .iter()
            .map(|t| VertexX::new(&p(t)))
            .collect();
        assert_eq!(path.vertices, expect);
        let g = p("s2 s1^-1");
        assert_eq!(preferred_path(&g, &g).unwrap().vertices.len(), 1);
    }

    #[test]
    fn small_balls() {
        let b3 = classical(3).unwrap();
        let g = Guards::for_structure(&b3);
        assert_eq!(ball_x(&VertexX::base(&b3), 1, &g).unwrap().len(), 5);
        assert_eq!(ball_x(&VertexX::base(&b3), 0, &g).unwrap().len(), 1);
        let z3 = free_abelian(3).unwrap();
        let gz = Guards::for_structure(&z3);
        assert_eq!(ball_x(&VertexX::base(&z3), 1, &gz).unwrap().len(), 7);
        assert!(ball_x(&VertexX::base(&b3), 7, &g).unwrap_err().is_guard());
        let b4 = classical(4).unwrap();
        assert_eq!(Guards::for_structure(&b4).ball_radius, 4);
    }

    #[test]
    fn fellow_traveller_example() {
        let b3 = classical(3).unwrap();
        let p = |t: &str| parse_word(&b3, t).unwrap();
        let one = GroupElement::identity(&b3);
        let a = preferred_path(&one, &p("s1 s1")).unwrap();
        let b = preferred_path(&one, &p("s1 s1 s2")).unwrap();
        assert_eq!(hausdorff_x(&a.vertices, &b.vertices), 1);
        assert_eq!(hausdorff_x(&a.vertices, &a.vertices), 0);
    }
}
