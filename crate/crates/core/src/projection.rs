//! The projection `π` of `𝒳` onto the axis of a right-rigid element, and
//! empirical scans for its Lipschitz, closest-point and contraction
//! behaviour.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex_x::{ball_x, dist_x, preferred_path, Guards, SampleSpec, VertexX};
use crate::element::GroupElement;
use crate::error::{GarsideError, Result};
use crate::normal_form::left_weighted_sequences;
use crate::report::{MaxTracker, ScanReport};
use crate::rigidity::AxisContext;
use crate::sample::{self, random_element, random_proper_simple};
use crate::structure::Simple;
use crate::word::{format_word, parse_word};

/// `λ(h)` and `π(h) = x^λ⟨Δ⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionResult {
    pub lambda: i64,
    #[serde(serialize_with = "ser_vertex")]
    pub vertex: VertexX,
    /// `(lo, hi)` with `x ⋠ underline(x^lo h)` and `x ⪯ underline(x^hi h)`
    /// found by the exponential phase.
    pub bracket: (i64, i64),
}

fn ser_vertex<S: serde::Serializer>(v: &VertexX, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.word())
}

/// `x ⪯ underline(xᵐ h)`; monotone in `m`.
pub fn prefix_predicate(ctx: &AxisContext, h: &GroupElement, m: i64) -> bool {
    ctx.x().is_prefix_of(&ctx.power(m).mul(h).underline())
}

const MAX_BRACKET: i64 = 1 << 40;

/// `λ(h) = −max{k : x ⋠ underline(xᵏh)}`, by exponential bracketing from 0
/// and binary search.
pub fn lambda_pi(ctx: &AxisContext, h: &GroupElement) -> ProjectionResult {
    let p = |m: i64| prefix_predicate(ctx, h, m);
    let (mut lo, mut hi) = if p(0) {
        let mut step = 1;
        while p(-step) {
            step *= 2;
            assert!(step < MAX_BRACKET, "projection bracket diverged");
        }
        (-step, if step == 1 { 0 } else { -step / 2 })
    } else {
        let mut step = 1;
        while !p(step) {
            step *= 2;
            assert!(step < MAX_BRACKET, "projection bracket diverged");
        }
        (if step == 1 { 0 } else { step / 2 }, step)
    };
    let bracket = (lo, hi);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if p(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let lambda = -lo;
    ProjectionResult {
        lambda,
        vertex: VertexX::new(&ctx.power(lambda)),
        bracket,
    }
}

/// Both characterising predicates of `λ(h)`.
pub fn check_projection(ctx: &AxisContext, h: &GroupElement, r: &ProjectionResult) -> bool {
    !prefix_predicate(ctx, h, -r.lambda) && prefix_predicate(ctx, h, -r.lambda + 1)
}

/// `d_𝒳(xᵃ, xᵇ) = |a − b|·ℓ` for rigid `x` with `inf(x) = 0`.
fn axis_gap(ctx: &AxisContext, a: i64, b: i64) -> usize {
    (a - b).unsigned_abs() as usize * ctx.ell()
}

/// Exact distance from `h⟨Δ⟩` to the axis and every `k` attaining it.
/// With `ρ = d_𝒳(h, π(h))`, any `k` with `d_𝒳(h, xᵏ) ≤ ρ` has
/// `|k − λ|·ℓ ≤ 2ρ`, so the search window is finite.
pub fn closest_axis_points(ctx: &AxisContext, h: &GroupElement) -> (usize, Vec<i64>) {
    let v = VertexX::new(h);
    let lambda = lambda_pi(ctx, h).lambda;
    let rho = dist_x(&v, &VertexX::new(&ctx.power(lambda)));
    let reach = (2 * rho / ctx.ell()) as i64;
    let mut best = rho;
    let mut ks = Vec::new();
    for k in lambda - reach..=lambda + reach {
        let d = dist_x(&v, &VertexX::new(&ctx.power(k)));
        if d < best {
            best = d;
            ks.clear();
        }
        if d == best {
            ks.push(k);
        }
    }
    (best, ks)
}

/// `k` with `h = xᵏ`, if `h` lies on the axis.
pub fn axis_index(ctx: &AxisContext, h: &GroupElement) -> Option<i64> {
    let k = lambda_pi(ctx, h).lambda;
    (ctx.power(k) == *h).then_some(k)
}

pub fn axis_distance(ctx: &AxisContext, h: &GroupElement) -> usize {
    closest_axis_points(ctx, h).0
}

/// `min_{v ∈ A(xⁱ, h)} d_𝒳(v, π(h))` and the closest path vertex.
pub fn geodesic_proximity(ctx: &AxisContext, h: &GroupElement, i: i64) -> (usize, VertexX) {
    let target = lambda_pi(ctx, h).vertex;
    let path = preferred_path(&ctx.power(i), h).expect("same structure");
    path.vertices
        .into_iter()
        .map(|v| (dist_x(&v, &target), v))
        .min()
        .expect("paths are nonempty")
}

/// The largest `i ≥ 0` with `xⁱ ⪯ h̲`.
pub fn axis_prefix_power(ctx: &AxisContext, h: &GroupElement) -> i64 {
    let u = h.underline();
    let mut i = 0;
    while ctx.power(i + 1).is_prefix_of(&u) {
        i += 1;
    }
    i
}

fn w(g: &GroupElement) -> String {
    format_word(g)
}

/// Exact Lipschitz laws on random 𝒳-edges, plus the empirical constants
/// `D̂` (preferred paths from axis points pass near `π(h)`), the
/// closest-point gap (checked against `2·D̂`) and `M̂` (excursion of initial
/// preferred-path segments along an axis prefix).
pub fn projection_diagnostics(ctx: &AxisContext, spec: &SampleSpec) -> ScanReport {
    let st = ctx.structure();
    let mut report = ScanReport::new("projection-diagnostics", st.descriptor());
    report.axis = Some(w(ctx.x()));
    report.window.insert("samples".into(), spec.samples as i64);
    report.window.insert("max_len".into(), spec.max_len as i64);
    report.window.insert("seed".into(), spec.seed as i64);
    report
        .window
        .insert("axis_window".into(), ctx.window() as i64);
    report.notes.push(
        "D_hat, M_hat and closest_point_gap are sample maxima, not the theoretical constants"
            .into(),
    );

    let mut rng = sample::rng(spec.seed);
    let win = ctx.window() as i64;
    let inputs: Vec<(GroupElement, Simple, i64, GroupElement)> = (0..spec.samples)
        .map(|_| {
            use rand::Rng;
            let g = random_element(st, &mut rng, spec.max_len);
            let s = random_proper_simple(st, &mut rng);
            let i = rng.gen_range(-win..=win);
            let k = rng.gen_range(1..=3);
            let r = random_element(st, &mut rng, spec.max_len);
            (g, s, i, ctx.power(k).mul(&r))
        })
        .collect();

    struct Row {
        violations: Vec<(String, Vec<String>)>,
        d_hat: MaxTracker,
        gap: MaxTracker,
        m_hat: MaxTracker,
        endpoint: MaxTracker,
        matthieu: u64,
    }
    let rows: Vec<Row> = inputs
        .par_iter()
        .map(|(g, s, i, hm)| {
            let mut row = Row {
                violations: Vec::new(),
                d_hat: MaxTracker::default(),
                gap: MaxTracker::default(),
                m_hat: MaxTracker::default(),
                endpoint: MaxTracker::default(),
                matthieu: 0,
            };
            let h = VertexX::new(g).rep().mul_simple(*s);
            let (pg, ph) = (lambda_pi(ctx, g), lambda_pi(ctx, &h));
            for (e, r) in [(g, &pg), (&h, &ph)] {
                if !check_projection(ctx, e, r) {
                    row.violations
                        .push(("projection predicates".into(), vec![w(e)]));
                }
            }
            if (pg.lambda - ph.lambda).abs() > 1 {
                row.violations
                    .push(("lambda jump > 1".into(), vec![w(g), w(&h)]));
            }
            if dist_x(&pg.vertex, &ph.vertex) > ctx.ell() {
                row.violations
                    .push(("projection jump > ell".into(), vec![w(g), w(&h)]));
            }

            let (d, v) = geodesic_proximity(ctx, g, *i);
            row.d_hat
                .offer(d as i64, || vec![w(g), w(&ctx.power(*i)), v.word()]);

            let (_, ks) = closest_axis_points(ctx, g);
            for k in ks {
                let gap = axis_gap(ctx, pg.lambda, k);
                row.gap.offer(gap as i64, || vec![w(g), w(&ctx.power(k))]);
            }

            let ip = axis_prefix_power(ctx, hm);
            if ip >= 1 {
                row.matthieu += 1;
                let path = preferred_path(&GroupElement::identity(st), hm).unwrap();
                let span = ip as usize * ctx.ell();
                for v in path.vertices.iter().take(span + 1) {
                    let d = axis_distance(ctx, v.rep());
                    row.m_hat.offer(d as i64, || vec![w(hm), v.word()]);
                }
                let end = &path.vertices[span.min(path.len())];
                let d = dist_x(end, &VertexX::new(&ctx.power(ip)));
                row.endpoint
                    .offer(d as i64, || vec![w(hm), w(&ctx.power(ip))]);
            }
            row
        })
        .collect();

    let mut d_hat = MaxTracker::default();
    let mut gap = MaxTracker::default();
    let mut m_hat = MaxTracker::default();
    let mut endpoint = MaxTracker::default();
    for row in rows {
        for (law, els) in row.violations {
            report.violation(&law, els);
        }
        d_hat.merge(row.d_hat);
        gap.merge(row.gap);
        m_hat.merge(row.m_hat);
        endpoint.merge(row.endpoint);
        report.count("matthieu_probe", row.matthieu);
    }
    report.count("lipschitz_edges", spec.samples as u64);
    report.count("proximity", spec.samples as u64);
    report.count("closest_point", spec.samples as u64);
    for (name, t) in [
        ("D_hat", d_hat),
        ("closest_point_gap", gap),
        ("M_hat", m_hat),
        ("matthieu_endpoint", endpoint),
    ] {
        if let Some((v, els)) = t.best {
            report.constant(name, v, els);
        }
    }
    let (g, d) = (
        report
            .constants
            .get("closest_point_gap")
            .copied()
            .unwrap_or(0),
        report.constants.get("D_hat").copied().unwrap_or(0),
    );
    if g > 2 * d {
        let els = report
            .witness("closest_point_gap")
            .unwrap()
            .elements
            .clone();
        report.violation("closest_point_gap > 2 D_hat", els);
    }
    report
}

/// Scans balls `B(v, r)` disjoint from the axis (`d_𝒳(v, axis) > r`) for
/// centres `v` within `R + 2` of `x⁰,…,x^{W−1}` and radii `r ≤ R`, and
/// records `Ĉ(r)`, the largest diameter of `π(B(v, r'))` over `r' ≤ r`.
pub fn contraction_scan(ctx: &AxisContext, radius: usize, window: usize) -> Result<ScanReport> {
    let st = ctx.structure();
    let guards = Guards::for_structure(st);
    guards.check_radius(radius + 2)?;
    if radius == 0 || window == 0 {
        return Err(GarsideError::InvalidInput(
            "radius and window must be positive".into(),
        ));
    }
    let mut report = ScanReport::new("contraction", st.descriptor());
    report.axis = Some(w(ctx.x()));
    report.window.insert("radius".into(), radius as i64);
    report.window.insert("axis_window".into(), window as i64);

    let mut centres: Vec<VertexX> = Vec::new();
    for k in 0..window as i64 {
        let c = VertexX::new(&ctx.power(k));
        centres.extend(ball_x(&c, radius + 2, &guards)?.into_iter().map(|(v, _)| v));
    }
    centres.sort();
    centres.dedup();

    let lambda_of = |v: &VertexX| lambda_pi(ctx, v.rep()).lambda;
    // Per centre: the tracker for each radius.
    let per_centre: Vec<(Vec<MaxTracker>, bool)> = centres
        .par_iter()
        .map(|c| {
            let mut trackers = vec![MaxTracker::default(); radius + 1];
            let dist_axis = axis_distance(ctx, c.rep());
            if dist_axis <= 1 {
                return (trackers, false);
            }
            let top = radius.min(dist_axis - 1);
            let ball = ball_x(c, top, &guards).expect("radius within guard");
            let mut lambdas: HashMap<&VertexX, i64> = HashMap::new();
            for (v, _) in &ball {
                lambdas.insert(v, lambda_of(v));
            }
            for (r, tracker) in trackers.iter_mut().enumerate().take(top + 1).skip(1) {
                let inside = ball.iter().filter(|(_, d)| *d <= r).map(|(v, _)| v);
                let lo = inside
                    .clone()
                    .min_by_key(|v| (lambdas[v], (*v).clone()))
                    .unwrap();
                let hi = inside
                    .max_by_key(|v| (lambdas[v], std::cmp::Reverse((*v).clone())))
                    .unwrap();
                let diam = axis_gap(ctx, lambdas[lo], lambdas[hi]);
                tracker.offer(diam as i64, || {
                    vec![c.word(), lo.word(), hi.word(), r.to_string()]
                });
            }
            (trackers, true)
        })
        .collect();

    let mut by_radius = vec![MaxTracker::default(); radius + 1];
    let mut used = 0;
    for (trackers, ok) in per_centre {
        used += ok as u64;
        for (acc, t) in by_radius.iter_mut().zip(trackers) {
            acc.merge(t);
        }
    }
    report.count("centres", centres.len() as u64);
    report.count("centres_off_axis", used);

    let mut running = MaxTracker::default();
    let mut series = Vec::new();
    for (r, t) in by_radius.into_iter().enumerate().skip(1) {
        running.merge(t);
        let v = running.value().unwrap_or(0);
        series.push(v);
        if let Some((v, els)) = running.best.clone() {
            report.constant(&format!("C_hat({r})"), v, els);
        }
    }
    if let Some((v, els)) = running.best.clone() {
        report.constant("C_hat", v, els);
    }
    let plateau = series.len() >= 2 && series[series.len() - 1] == series[series.len() - 2];
    report.constants.insert("plateau".into(), plateau as i64);
    if !plateau {
        report.notes.push("no plateau within window".into());
    }
    report.series.insert("C_hat".into(), series);

    // Clause (i): π is the identity on axis vertices.
    for k in -(window as i64)..=window as i64 {
        report.count("axis_identity", 1);
        if lambda_pi(ctx, &ctx.power(k)).lambda != k {
            report.violation("projection not identity on axis", vec![w(&ctx.power(k))]);
        }
    }
    report.notes.push(
        "C_hat is the largest projected ball diameter in the scanned window, not a proven constant"
            .into(),
    );
    Ok(report)
}

/// Largest `d` such that some geodesic from `a` to `b` stays at distance
/// `≥ d` from `p`, over geodesics whose vertices lie in `interval`.
/// Widest-path recursion over the geodesic layers.
fn worst_geodesic(interval: &[(VertexX, usize)], b: &VertexX, p: &VertexX) -> usize {
    let mut layers: Vec<Vec<&VertexX>> = Vec::new();
    for (v, d) in interval {
        if layers.len() <= *d {
            layers.resize(d + 1, Vec::new());
        }
        layers[*d].push(v);
    }
    let mut best: HashMap<&VertexX, usize> = HashMap::new();
    for v in &layers[0] {
        best.insert(v, dist_x(v, p));
    }
    for l in 1..layers.len() {
        for v in &layers[l] {
            let from = layers[l - 1]
                .iter()
                .filter(|u| dist_x(u, v) == 1)
                .map(|u| best[u])
                .max()
                .expect("geodesic layers are connected");
            best.insert(v, from.min(dist_x(v, p)));
        }
    }
    best[b]
}

/// `min(gap, worst + 1)` for one pair: the smallest candidate constant the
/// pair is consistent with, and whether all geodesics were examined.
fn constriction_need(
    ctx: &AxisContext,
    guards: &Guards,
    a: &GroupElement,
    b: &GroupElement,
) -> (usize, bool) {
    let (va, vb) = (VertexX::new(a), VertexX::new(b));
    let (pa, pb) = (lambda_pi(ctx, a), lambda_pi(ctx, b));
    let gap = dist_x(&pa.vertex, &pb.vertex);
    let d = dist_x(&va, &vb);
    let exhaustive = d <= guards.ball_radius;
    let worst = if exhaustive {
        let interval: Vec<(VertexX, usize)> = ball_x(&va, d, guards)
            .unwrap()
            .into_iter()
            .filter(|(v, dv)| dv + dist_x(v, &vb) == d)
            .collect();
        worst_geodesic(&interval, &vb, &pa.vertex).max(worst_geodesic(&interval, &vb, &pb.vertex))
    } else {
        let mut worst = 0;
        for path in [preferred_path(a, b).unwrap(), preferred_path(b, a).unwrap()] {
            for p in [&pa.vertex, &pb.vertex] {
                let m = path.vertices.iter().map(|v| dist_x(v, p)).min().unwrap();
                worst = worst.max(m);
            }
        }
        worst
    };
    (gap.min(worst + 1), exhaustive)
}

/// Smallest `Ĉ` such that every sampled pair `(a, b)` with projection gap
/// `> Ĉ` has every tested geodesic passing within `< Ĉ` of both `π(a)` and
/// `π(b)`. Geodesics are all of them when `d_𝒳(a, b)` fits the ball guard,
/// otherwise the two preferred paths.
pub fn constriction_check(ctx: &AxisContext, spec: &SampleSpec) -> ScanReport {
    let st = ctx.structure();
    let guards = Guards::for_structure(st);
    let mut report = ScanReport::new("constriction", st.descriptor());
    report.axis = Some(w(ctx.x()));
    report.window.insert("samples".into(), spec.samples as i64);
    report.window.insert("max_len".into(), spec.max_len as i64);
    report.window.insert("seed".into(), spec.seed as i64);
    report
        .window
        .insert("exhaustive_distance".into(), guards.ball_radius as i64);
    let mut rng = sample::rng(spec.seed);
    let pairs: Vec<(GroupElement, GroupElement)> = (0..spec.samples)
        .map(|_| {
            (
                random_element(st, &mut rng, spec.max_len),
                random_element(st, &mut rng, spec.max_len),
            )
        })
        .collect();

    let guards = &guards;
    let rows: Vec<(MaxTracker, bool)> = pairs
        .par_iter()
        .map(|(a, b)| {
            let (need, exhaustive) = constriction_need(ctx, guards, a, b);
            let mut t = MaxTracker::default();
            t.offer(need as i64, || vec![w(a), w(b)]);
            (t, exhaustive)
        })
        .collect();

    let mut best = MaxTracker::default();
    for (t, exhaustive) in rows {
        best.merge(t);
        report.count(
            if exhaustive {
                "exhaustive_pairs"
            } else {
                "preferred_only_pairs"
            },
            1,
        );
    }
    if let Some((v, els)) = best.best {
        report.constant("C_constriction", v, els);
    }
    report
        .notes
        .push("geodesics are exhaustive only for pairs within the ball guard".into());
    report
}

/// For every `z` with `inf(z) = 0`, `sup(z) ≤ max_sup` and `x ⋠ z`, and every
/// simple `s`: `x² ⋠ zs`.
pub fn inner_lipschitz_law(ctx: &AxisContext, max_sup: usize) -> ScanReport {
    let st = ctx.structure();
    let mut report = ScanReport::new("inner-lipschitz-law", st.descriptor());
    report.axis = Some(w(ctx.x()));
    report.window.insert("max_sup".into(), max_sup as i64);
    let cone: Vec<Vec<Simple>> = (0..=max_sup)
        .flat_map(|k| left_weighted_sequences(st, k))
        .collect();
    let x2 = ctx.power(2);
    let simples: Vec<Simple> = st.simples().collect();
    let bad: Vec<Vec<String>> = cone
        .par_iter()
        .flat_map_iter(|factors| {
            let z = GroupElement::from_normal_form(st, 0, factors.clone()).unwrap();
            let skip = ctx.x().is_prefix_of(&z);
            let x2 = &x2;
            simples.iter().filter_map(move |&s| {
                let zs = z.mul_simple(s);
                (!skip && x2.is_prefix_of(&zs)).then(|| vec![w(&z), st.simple_word(s)])
            })
        })
        .collect();
    report.count("cone", cone.len() as u64);
    report.count("pairs", (cone.len() * simples.len()) as u64);
    for els in bad {
        report.violation("x^2 prefixes zs", els);
    }
    report
}

/// Recomputes every projection-type constant from its stored witness.
/// Returns the names of constants whose witness does not reproduce them.
pub fn recheck_witnesses(ctx: &AxisContext, report: &ScanReport) -> Vec<String> {
    let st = ctx.structure();
    let guards = Guards::for_structure(st);
    let parse = |t: &str| parse_word(st, t).ok();
    let mut failed = Vec::new();
    for wit in &report.witnesses {
        let els: Option<Vec<GroupElement>> = wit
            .elements
            .iter()
            .filter(|t| t.parse::<usize>().is_err())
            .map(|t| parse(t))
            .collect();
        let Some(els) = els else {
            failed.push(wit.constant.clone());
            continue;
        };
        let lam = |g: &GroupElement| lambda_pi(ctx, g).lambda;
        let value = wit.value as usize;
        let ok = match (wit.constant.as_str(), els.as_slice()) {
            (c, [centre, u, v]) if c.starts_with("C_hat") => {
                let (vc, vu, vv) = (VertexX::new(centre), VertexX::new(u), VertexX::new(v));
                let off = axis_distance(ctx, centre);
                dist_x(&vc, &vu) < off
                    && dist_x(&vc, &vv) < off
                    && axis_gap(ctx, lam(u), lam(v)) == value
            }
            ("D_hat", [h, xi, _]) => {
                let i = axis_index(ctx, xi);
                i.is_some_and(|i| geodesic_proximity(ctx, h, i).0 == value)
            }
            ("closest_point_gap", [h, xk]) => {
                let k = axis_index(ctx, xk);
                k.is_some_and(|k| {
                    closest_axis_points(ctx, h).1.contains(&k) && axis_gap(ctx, lam(h), k) == value
                })
            }
            ("M_hat", [h, v]) => {
                let on_path = preferred_path(&GroupElement::identity(st), h)
                    .unwrap()
                    .vertices
                    .contains(&VertexX::new(v));
                on_path && axis_distance(ctx, v) == value
            }
            ("matthieu_endpoint", [h, xi]) => {
                let i = axis_prefix_power(ctx, h) as usize * ctx.ell();
                let path = preferred_path(&GroupElement::identity(st), h).unwrap();
                dist_x(&path.vertices[i.min(path.len())], &VertexX::new(xi)) == value
            }
            ("F_hat", [a, b]) => {
                dist_x(&lambda_pi(ctx, a).vertex, &lambda_pi(ctx, b).vertex) == value
            }
            ("C_constriction", [a, b]) => constriction_need(ctx, &guards, a, b).0 == value,
            _ => true,
        };
        if !ok || report.constants.get(&wit.constant) != Some(&wit.value) {
            failed.push(wit.constant.clone());
        }
    }
    failed
}
