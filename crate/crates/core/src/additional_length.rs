//! Absorbable elements, the additional length graph `C_AL` on finite
//! windows, the diameter certificate for `ℤ³`, and the absorbable-edge and
//! WPD scans along an axis.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex_x::{ball_gamma, ball_x, dist_x, Guards, SampleSpec, VertexX};
use crate::element::GroupElement;
use crate::error::{GarsideError, Result};
use crate::normal_form::{cone_sizes, left_weighted_sequences};
use crate::projection::lambda_pi;
use crate::report::{MaxTracker, ScanReport};
use crate::rigidity::AxisContext;
use crate::sample::{self, random_element};
use crate::structure::{GarsideStructure, StructureKind};
use crate::word::{format_word, parse_word};

/// Candidate budget for one absorber search.
pub const ABSORBER_CANDIDATE_BUDGET: u64 = 100_000;

/// Largest canonical length whose absorber search space (elements with
/// `inf = 0`, `sup = ℓ`) fits the candidate budget, and at least 4.
pub fn absorb_guard(st: &GarsideStructure) -> usize {
    let sizes = cone_sizes(st, 16);
    let fit = sizes
        .iter()
        .rposition(|&n| n <= ABSORBER_CANDIDATE_BUDGET)
        .unwrap_or(0);
    fit.max(4)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsorbabilityCertificate {
    pub element: String,
    pub absorbable: bool,
    /// The element actually searched: `element`, or its inverse when
    /// `sup(element) = 0`.
    pub tested: String,
    pub tested_inverse: bool,
    /// Absorber `g` of `tested`, with `inf(g) = 0` and `sup(g) = ℓ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub absorber: Option<String>,
    /// `[inf(g), sup(g), inf(g·tested), sup(g·tested)]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inf_sup: Option<[i64; 4]>,
    pub candidates: u64,
    pub reason: String,
}

impl AbsorbabilityCertificate {
    /// Re-verifies a positive certificate by multiplication. Negative
    /// certificates are re-verified by repeating the search.
    pub fn verify(&self, st: &Arc<GarsideStructure>) -> bool {
        let (Ok(h), Ok(t)) = (parse_word(st, &self.element), parse_word(st, &self.tested)) else {
            return false;
        };
        let expect = if self.tested_inverse {
            h.inverse()
        } else {
            h.clone()
        };
        if expect != t {
            return false;
        }
        if !self.absorbable {
            return absorbability(&h).is_ok_and(|c| !c.absorbable);
        }
        let Some(g) = self.absorber.as_ref().and_then(|w| parse_word(st, w).ok()) else {
            return false;
        };
        let gt = g.mul(&t);
        let quad = [g.inf(), g.sup(), gt.inf(), gt.sup()];
        (h.inf() == 0 || h.sup() == 0)
            && t.inf() == 0
            && quad[0] == quad[2]
            && quad[1] == quad[3]
            && quad[0] == 0
            && quad[1] == t.canonical_length() as i64
            && self.inf_sup == Some(quad)
    }
}

/// First absorber of `t` (with `inf(t) = 0`) in left-normal-form order among
/// elements with `inf = 0` and `sup = ℓ(t)`, and the number of candidates
/// tried.
fn search_absorber(t: &GroupElement) -> (Option<GroupElement>, u64) {
    let st = t.structure();
    let r = t.canonical_length();
    let mut tried = 0;
    for f in left_weighted_sequences(st, r) {
        tried += 1;
        let g = GroupElement::from_normal_form(st, 0, f).expect("left-weighted");
        let gt = g.mul(t);
        if gt.inf() == 0 && gt.sup() == r as i64 {
            return (Some(g), tried);
        }
    }
    (None, tried)
}

/// Exact absorbability verdict with certificate. Absorbers are searched
/// among `g` with `inf(g) = 0`, `sup(g) = ℓ(h)`, which is exhaustive.
pub fn absorbability(h: &GroupElement) -> Result<AbsorbabilityCertificate> {
    absorbability_with_guard(h, absorb_guard(h.structure()))
}

pub fn absorbability_with_guard(
    h: &GroupElement,
    guard: usize,
) -> Result<AbsorbabilityCertificate> {
    let mut cert = AbsorbabilityCertificate {
        element: format_word(h),
        absorbable: false,
        tested: format_word(h),
        tested_inverse: false,
        absorber: None,
        inf_sup: None,
        candidates: 0,
        reason: String::new(),
    };
    if h.inf() != 0 && h.sup() != 0 {
        cert.reason = "neither inf nor sup is 0".into();
        return Ok(cert);
    }
    let t = if h.inf() == 0 {
        h.clone()
    } else {
        cert.tested_inverse = true;
        h.inverse()
    };
    cert.tested = format_word(&t);
    if t.canonical_length() > guard {
        return Err(GarsideError::guard(
            "canonical length for absorber search",
            t.canonical_length(),
            guard,
        ));
    }
    let (g, tried) = search_absorber(&t);
    cert.candidates = tried;
    match g {
        Some(g) => {
            let gt = g.mul(&t);
            cert.absorbable = true;
            cert.inf_sup = Some([g.inf(), g.sup(), gt.inf(), gt.sup()]);
            cert.absorber = Some(format_word(&g));
            cert.reason = "absorber found".into();
        }
        None => cert.reason = "no absorber with inf 0 and sup equal to the length".into(),
    }
    Ok(cert)
}

/// Absorbable elements `a` with `inf(a) = 0` and `1 ≤ ℓ(a) ≤ max_len`, with
/// their absorbers, in left-normal-form order.
pub fn absorbable_elements(
    st: &Arc<GarsideStructure>,
    max_len: usize,
) -> Result<Vec<(GroupElement, GroupElement)>> {
    let guard = absorb_guard(st);
    if max_len > guard {
        return Err(GarsideError::guard(
            "absorbable jump length",
            max_len,
            guard,
        ));
    }
    let candidates: Vec<GroupElement> = (1..=max_len)
        .flat_map(|k| left_weighted_sequences(st, k))
        .map(|f| GroupElement::from_normal_form(st, 0, f).expect("left-weighted"))
        .collect();
    Ok(candidates
        .into_par_iter()
        .filter_map(|a| search_absorber(&a).0.map(|g| (a, g)))
        .collect())
}

/// Closure check: every factorisation `h = h₁h₂h₃` into elements with
/// `inf = 0` of an absorbable `h` has absorbable factors.
pub fn closure_check(st: &Arc<GarsideStructure>, max_len: usize) -> Result<ScanReport> {
    let mut report = ScanReport::new("absorbable-closure", st.descriptor());
    report.window.insert("max_len".into(), max_len as i64);
    let cone: Vec<GroupElement> = (0..=max_len)
        .flat_map(|k| left_weighted_sequences(st, k))
        .map(|f| GroupElement::from_normal_form(st, 0, f).unwrap())
        .collect();
    let absorbable: HashSet<GroupElement> = cone
        .par_iter()
        .filter(|a| search_absorber(a).0.is_some())
        .cloned()
        .collect();
    let mut checked = 0u64;
    for h in cone.iter().filter(|h| absorbable.contains(*h)) {
        let prefixes: Vec<&GroupElement> = cone.iter().filter(|p| p.is_prefix_of(h)).collect();
        for h1 in &prefixes {
            let rest = h1.inverse().mul(h);
            for h2 in cone.iter().filter(|p| p.is_prefix_of(&rest)) {
                let h3 = h2.inverse().mul(&rest);
                if h3.inf() != 0 {
                    continue;
                }
                checked += 1;
                for f in [*h1, h2, &h3] {
                    if !absorbable.contains(f) {
                        report.violation(
                            "factor of absorbable element not absorbable",
                            vec![format_word(h), format_word(f)],
                        );
                    }
                }
            }
        }
    }
    report.count("absorbable", absorbable.len() as u64);
    report.count("factorisations", checked);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalEdge {
    /// `"x"` for an edge of `𝒳`, `"absorbable"` for an added edge.
    pub kind: String,
    /// `s` with `u̲·s ∈ v⟨Δ⟩`.
    pub jump: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<AbsorbabilityCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalPath {
    pub upper_bound: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<CalEdge>,
}

/// BFS record: distance, predecessor and the edge used (absorbable jump index and sign; `None` for an `𝒳` edge).
type Reached = (usize, Option<(VertexX, Option<(usize, bool)>)>);

/// The subgraph of `C_AL` induced on the `𝒳`-ball of `radius` around
/// `centre`. Absorbable edges are those whose jump has canonical length at
/// most `max_jump`.
pub struct CalWindow {
    centre: VertexX,
    radius: usize,
    vertices: HashSet<VertexX>,
    max_jump: usize,
    /// Absorbable `a` with `inf(a) = 0`, and their absorbers.
    jumps: Vec<(GroupElement, GroupElement)>,
}

impl CalWindow {
    pub fn new(centre: &VertexX, radius: usize) -> Result<Self> {
        let st = centre.structure();
        let guards = Guards::for_structure(st);
        let max_jump = (2 * radius).min(absorb_guard(st));
        let vertices = ball_x(centre, radius, &guards)?
            .into_iter()
            .map(|(v, _)| v)
            .collect();
        Ok(CalWindow {
            centre: centre.clone(),
            radius,
            vertices,
            max_jump,
            jumps: absorbable_elements(st, max_jump)?,
        })
    }

    pub fn centre(&self) -> &VertexX {
        &self.centre
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn max_jump(&self) -> usize {
        self.max_jump
    }

    pub fn contains(&self, v: &VertexX) -> bool {
        self.vertices.contains(v)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Neighbours inside the window, each with the index of the absorbable
    /// jump used (`None` for an `𝒳`-edge). A jump `a` reaches `u̲a` and, for
    /// the inverse orientation, `u̲a⁻¹`.
    fn neighbours(&self, u: &VertexX) -> Vec<(VertexX, Option<(usize, bool)>)> {
        let mut out: Vec<(VertexX, Option<(usize, bool)>)> =
            u.neighbours().into_iter().map(|v| (v, None)).collect();
        for (i, (a, _)) in self.jumps.iter().enumerate() {
            out.push((VertexX::new(&u.rep().mul(a)), Some((i, false))));
            out.push((VertexX::new(&u.rep().mul(&a.inverse())), Some((i, true))));
        }
        out.retain(|(v, _)| self.contains(v));
        out
    }

    /// Breadth-first distances from `source` up to `depth`, with parents.
    fn bfs(&self, source: &VertexX, depth: usize) -> HashMap<VertexX, Reached> {
        let mut seen = HashMap::new();
        seen.insert(source.clone(), (0, None));
        let mut queue = VecDeque::from([source.clone()]);
        while let Some(u) = queue.pop_front() {
            let d = seen[&u].0;
            if d == depth {
                continue;
            }
            let mut next = self.neighbours(&u);
            next.sort();
            for (v, how) in next {
                if !seen.contains_key(&v) {
                    seen.insert(v.clone(), (d + 1, Some((u.clone(), how))));
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Vertices within window distance `depth` of `source`.
    pub fn within(&self, source: &VertexX, depth: usize) -> HashMap<VertexX, usize> {
        self.bfs(source, depth)
            .into_iter()
            .map(|(v, (d, _))| (v, d))
            .collect()
    }

    /// Window distance from `a` to `b` with a certified path, an upper
    /// bound for `d_AL`.
    pub fn dist_upper(&self, a: &VertexX, b: &VertexX) -> Result<Option<CalPath>> {
        for v in [a, b] {
            if !self.contains(v) {
                return Err(GarsideError::InvalidInput(format!(
                    "vertex {} is outside the window",
                    v.word()
                )));
            }
        }
        let tree = self.bfs(a, usize::MAX);
        if !tree.contains_key(b) {
            return Ok(None);
        }
        let mut vertices = vec![b.clone()];
        let mut edges = Vec::new();
        let mut cur = b.clone();
        while let Some((prev, how)) = tree[&cur].1.clone() {
            let jump = prev.rep().inverse().mul(cur.rep());
            edges.push(match how {
                None => CalEdge {
                    kind: "x".into(),
                    jump: format_word(&jump),
                    certificate: None,
                },
                Some(_) => CalEdge {
                    kind: "absorbable".into(),
                    jump: format_word(&jump),
                    certificate: Some(edge_certificate(&jump)?),
                },
            });
            vertices.push(prev.clone());
            cur = prev;
        }
        vertices.reverse();
        edges.reverse();
        Ok(Some(CalPath {
            upper_bound: edges.len(),
            vertices: vertices.iter().map(|v| v.word()).collect(),
            edges,
        }))
    }
}

/// Certificate for an added edge `u̲·s ∈ v⟨Δ⟩`: `s` itself up to a power of
/// `Δ` on the right, normalised to `inf = 0` or `sup = 0`.
fn edge_certificate(jump: &GroupElement) -> Result<AbsorbabilityCertificate> {
    let a = jump.underline();
    let c = absorbability(&a)?;
    if c.absorbable {
        return Ok(c);
    }
    absorbability(&a.mul_delta_power(-(a.canonical_length() as i64)))
}

/// Exact test for a `C_AL` edge between `u` and `v`, restricted to jumps of
/// length at most the absorber guard.
pub fn is_cal_edge(u: &VertexX, v: &VertexX) -> Result<bool> {
    if dist_x(u, v) <= 1 {
        return Ok(u != v);
    }
    let jump = u.rep().inverse().mul(v.rep());
    Ok(edge_certificate(&jump)?.absorbable)
}

/// Upper bound for `d_AL(g, h)` from the window of `radius` around `g`.
pub fn cal_dist_upper(
    g: &GroupElement,
    h: &GroupElement,
    radius: usize,
) -> Result<Option<CalPath>> {
    let window = CalWindow::new(&VertexX::new(g), radius)?;
    window.dist_upper(&VertexX::new(g), &VertexX::new(h))
}

fn z3_vector_word(v: [i64; 3]) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            if c == 1 {
                format!("s{}", i + 1)
            } else {
                format!("s{}^{c}", i + 1)
            }
        })
        .collect();
    parts.join(" ")
}

/// Diameter evidence for `C_AL(ℤ³)` over the box `[−R, R]³`:
/// - the coordinate decomposition `v = (a,0,0)+(0,b,0)+(0,0,c)` gives a path
///   of at most 3 certified absorbable jumps from `∗` to every box vertex;
/// - shifting by `Δ` so that the smallest coordinate is 0 leaves at most
///   two non-zero coordinates, hence at most 2 jumps;
/// - single-edge adjacency to `∗` is decided exactly, which gives the exact
///   distance of every box vertex.
pub fn z3_diameter_certificate(radius: usize) -> Result<ScanReport> {
    let st = crate::structures::free_abelian(3)?;
    let r = radius as i64;
    let mut report = ScanReport::new("z3-diameter", st.descriptor());
    report.window.insert("radius".into(), r);
    let star = VertexX::base(&st);

    let mut axis_cert: BTreeMap<(usize, i64), bool> = BTreeMap::new();
    for i in 0..3 {
        for k in -r..=r {
            if k != 0 {
                let mut v = [0; 3];
                v[i] = k;
                let g = parse_word(&st, &z3_vector_word(v))?;
                let c = absorbability(&g)?;
                axis_cert.insert((i, k), c.absorbable && c.verify(&st));
            }
        }
    }
    let boxed: Vec<[i64; 3]> = (-r..=r)
        .flat_map(|a| (-r..=r).flat_map(move |b| (-r..=r).map(move |c| [a, b, c])))
        .collect();

    let rows: Vec<Result<(bool, usize, usize, usize)>> = boxed
        .par_iter()
        .map(|&v| {
            let target = parse_word(&st, &z3_vector_word(v))?;
            // Coordinate decomposition.
            let mut cur = GroupElement::identity(&st);
            let mut ok = true;
            let mut jumps = 0;
            for (i, &c) in v.iter().enumerate() {
                if c != 0 {
                    let mut e = [0; 3];
                    e[i] = c;
                    ok &= axis_cert[&(i, c)];
                    cur = cur.mul(&parse_word(&st, &z3_vector_word(e))?);
                    jumps += 1;
                }
            }
            ok &= cur == target;
            // Δ-reduced decomposition.
            let m = *v.iter().min().unwrap();
            let reduced = [v[0] - m, v[1] - m, v[2] - m];
            let reduced_jumps = reduced.iter().filter(|&&c| c != 0).count();
            let shifted = parse_word(&st, &z3_vector_word(reduced))?;
            ok &= VertexX::new(&shifted) == VertexX::new(&target);
            // Exact distance from ∗.
            let tv = VertexX::new(&target);
            let exact = if tv == star {
                0
            } else if is_cal_edge(&star, &tv)? {
                1
            } else {
                reduced_jumps.min(2)
            };
            Ok((ok, jumps, reduced_jumps, exact))
        })
        .collect();

    let mut certified = 0u64;
    let mut upper = 0;
    let mut reduced_upper = 0;
    let mut ecc = MaxTracker::default();
    let mut histogram = vec![0i64; 3];
    for (row, v) in rows.into_iter().zip(&boxed) {
        let (ok, jumps, reduced_jumps, exact) = row?;
        if ok {
            certified += 1;
        } else {
            report.violation("decomposition not certified", vec![z3_vector_word(*v)]);
        }
        upper = upper.max(jumps);
        reduced_upper = reduced_upper.max(reduced_jumps);
        histogram[exact] += 1;
        ecc.offer(exact as i64, || vec![z3_vector_word(*v)]);
    }
    report.count("vertices", boxed.len() as u64);
    report.count("certified", certified);
    report.constants.insert("upper_bound".into(), upper as i64);
    report
        .constants
        .insert("certified".into(), certified as i64);
    report
        .constants
        .insert("delta_reduced_upper_bound".into(), reduced_upper as i64);
    if let Some((v, els)) = ecc.best {
        report.constant("exact_eccentricity", v, els);
    }
    report.series.insert("distance_histogram".into(), histogram);
    report.notes.push(
        "upper_bound uses the coordinate decomposition; vertices are cosets of <D>, so the \
         D-reduced decomposition already needs at most 2 jumps"
            .into(),
    );
    report.notes.push(
        "exact_eccentricity is exact for the box: adjacency to * is decided by exhaustive \
         absorber search and every other vertex has a certified 2-path"
            .into(),
    );
    Ok(report)
}

fn refuse_non_pure(ctx: &AxisContext) -> Result<()> {
    let st = ctx.structure();
    if st.kind() == StructureKind::FreeAbelian || !st.is_delta_pure() {
        return Err(GarsideError::InvalidAxis(format!(
            "{} is not Δ-pure",
            st.descriptor()
        )));
    }
    Ok(())
}

/// `F̂ = max d_𝒳(π(h₁), π(h₂))` over sampled absorbable edges
/// `h₂⟨Δ⟩ = h̲₁ s⟨Δ⟩`, with `s` or `s⁻¹` absorbable of length at most
/// `jump_len`.
pub fn absorbable_projection_scan(
    ctx: &AxisContext,
    spec: &SampleSpec,
    jump_len: usize,
) -> Result<ScanReport> {
    refuse_non_pure(ctx)?;
    let st = ctx.structure();
    let jumps = absorbable_elements(st, jump_len)?;
    let mut report = ScanReport::new("absorbable-projection", st.descriptor());
    report.axis = Some(format_word(ctx.x()));
    report.window.insert("samples".into(), spec.samples as i64);
    report.window.insert("max_len".into(), spec.max_len as i64);
    report.window.insert("seed".into(), spec.seed as i64);
    report.window.insert("jump_len".into(), jump_len as i64);
    if jumps.is_empty() {
        report.notes.push("no absorbable jumps in range".into());
        return Ok(report);
    }
    let mut rng = sample::rng(spec.seed);
    let edges: Vec<(GroupElement, GroupElement)> = (0..spec.samples)
        .map(|_| {
            let h1 = random_element(st, &mut rng, spec.max_len);
            let (a, _) = &jumps[rng.gen_range(0..jumps.len())];
            let s = if rng.gen_bool(0.5) {
                a.clone()
            } else {
                a.inverse()
            };
            let h2 = h1.underline().mul(&s);
            (h1, h2)
        })
        .collect();
    let trackers: Vec<MaxTracker> = edges
        .par_iter()
        .map(|(h1, h2)| {
            let d = dist_x(&lambda_pi(ctx, h1).vertex, &lambda_pi(ctx, h2).vertex);
            let mut t = MaxTracker::default();
            t.offer(d as i64, || vec![format_word(h1), format_word(h2)]);
            t
        })
        .collect();
    let mut best = MaxTracker::default();
    for t in trackers {
        best.merge(t);
    }
    report.count("edges", edges.len() as u64);
    report.count("absorbable_jumps", jumps.len() as u64);
    if let Some((v, els)) = best.best {
        report.constant("F_hat", v, els);
    }
    report
        .notes
        .push("F_hat is a sample maximum over jumps of bounded length".into());
    Ok(report)
}

/// Windowed WPD set sizes: for each `n`, the number of `h` in the `Γ̄`-ball
/// of radius `h_radius` with window distances `d_AL(∗, h∗) ≤ κ` and
/// `d_AL(xⁿ∗, hxⁿ∗) = d_AL(∗, x⁻ⁿhxⁿ∗) ≤ κ`, both measured in the `C_AL`
/// window of radius `cal_radius` around `∗`.
pub fn wpd_scan(
    ctx: &AxisContext,
    kappa: usize,
    n_max: usize,
    h_radius: usize,
    cal_radius: usize,
) -> Result<ScanReport> {
    refuse_non_pure(ctx)?;
    let st = ctx.structure();
    let guards = Guards::for_structure(st);
    let window = CalWindow::new(&VertexX::base(st), cal_radius)?;
    let near = window.within(window.centre(), kappa);
    let hs = ball_gamma(&GroupElement::identity(st), h_radius, true, &guards)?;

    let mut report = ScanReport::new("wpd", st.descriptor());
    report.axis = Some(format_word(ctx.x()));
    report.window.insert("kappa".into(), kappa as i64);
    report.window.insert("n_max".into(), n_max as i64);
    report.window.insert("h_radius".into(), h_radius as i64);
    report.window.insert("cal_radius".into(), cal_radius as i64);
    report
        .window
        .insert("max_jump".into(), window.max_jump() as i64);
    report.count("h_window", hs.len() as u64);
    report.count("cal_window", window.len() as u64);

    let sizes: Vec<i64> = (1..=n_max as i64)
        .into_par_iter()
        .map(|n| {
            let xn = ctx.power(n);
            let xinv = ctx.power(-n);
            hs.iter()
                .filter(|(h, _)| {
                    near.contains_key(&VertexX::new(h))
                        && near.contains_key(&VertexX::new(&xinv.mul(h).mul(&xn)))
                })
                .count() as i64
        })
        .collect();
    let plateau = sizes.len() >= 2 && sizes[sizes.len() - 1] == sizes[sizes.len() - 2];
    report.constants.insert("plateau".into(), plateau as i64);
    if let Some(&last) = sizes.last() {
        report.constants.insert("set_size".into(), last);
    }
    report.series.insert("set_size".into(), sizes);
    report.notes.push(
        "distances are measured in a finite C_AL window and h ranges over a finite ball; \
         sizes are windowed, not the WPD sets themselves"
            .into(),
    );
    if !plateau {
        report.notes.push("no plateau within window".into());
    }
    Ok(report)
}
