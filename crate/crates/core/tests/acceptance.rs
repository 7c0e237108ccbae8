//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use garside::additional_length::{
    absorbability, absorbable_projection_scan, wpd_scan, z3_diameter_certificate,
};
use garside::complex_x::{
    ball_gamma, ball_x, dist_x, gamma_bar_rep, path_property_checks, Guards, SampleSpec, VertexX,
};
use garside::element::GroupElement;
use garside::normal_form::mixed_word;
use garside::projection::{
    contraction_scan, inner_lipschitz_law, lambda_pi, projection_diagnostics, recheck_witnesses,
};
use garside::rigidity::{rigid_power_search, AxisContext};
use garside::sample;
use garside::structures::{axiom_audit, classical, free_abelian, from_descriptor};
use garside::word::parse_word;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: garside::error::GarsideError) -> String {
    e.to_string()
}

fn axis_b3() -> Result<AxisContext, String> {
    let b3 = classical(3).map_err(err)?;
    AxisContext::new(&parse_word(&b3, "s1").map_err(err)?).map_err(err)
}

fn audits() -> Check {
    let mut total = 0;
    for d in [
        "braid:classical:n=3",
        "braid:classical:n=4",
        "braid:dual:n=3",
        "braid:dual:n=4",
        "zn:n=3",
    ] {
        let st = from_descriptor(d).map_err(err)?;
        let r = axiom_audit(&st).map_err(err)?;
        ensure(r.passed(), format!("{d}: {:?}", r.violation_counts))?;
        ensure(
            r.oracle_pairs_checked == r.simples * r.simples,
            format!("{d}: lattice oracle not exhaustive"),
        )?;
        total += r.pairs_checked;
    }
    Ok(format!("5 structures, {total} pairs, 0 violations"))
}

fn geodesic_formula() -> Check {
    let b3 = classical(3).map_err(err)?;
    let one = GroupElement::identity(&b3);
    let ball = ball_gamma(&one, 3, false, &Guards::for_structure(&b3)).map_err(err)?;
    for (g, d) in &ball {
        ensure(
            mixed_word(g).len() == *d && g.word_length() == *d,
            format!("{g}: BFS {d}, formula {}", mixed_word(g).len()),
        )?;
    }
    Ok(format!("{} elements", ball.len()))
}

fn x_metric() -> Check {
    let b3 = classical(3).map_err(err)?;
    let guards = Guards::for_structure(&b3);
    let star = VertexX::base(&b3);
    let ball = ball_x(&star, 3, &guards).map_err(err)?;
    let mut pairs = 0;
    for (u, _) in &ball {
        let around: HashMap<VertexX, usize> =
            ball_x(u, 6, &guards).map_err(err)?.into_iter().collect();
        for (v, _) in &ball {
            let bfs = around.get(v).copied();
            ensure(bfs == Some(dist_x(u, v)), format!("{u} {v}: BFS {bfs:?}"))?;
            pairs += 1;
        }
    }
    let one = GroupElement::identity(&b3);
    let gbar: HashMap<GroupElement, usize> = ball_gamma(&one, 6, true, &guards)
        .map_err(err)?
        .into_iter()
        .collect();
    for (u, _) in &ball {
        for (v, _) in &ball {
            let key = gamma_bar_rep(&u.rep().inverse().mul(v.rep()));
            let d = gbar.get(&key).copied();
            ensure(
                d == Some(dist_x(u, v)),
                format!("iota not isometric at {u} {v}"),
            )?;
        }
    }
    let density = (b3.tau_order() / 2) as usize;
    let mut dense = 0;
    for (g, d) in gbar.iter().filter(|(_, &d)| d <= 3) {
        let image = VertexX::new(g);
        let gap = gbar
            .get(&gamma_bar_rep(&g.inverse().mul(image.rep())))
            .copied();
        ensure(
            gap.is_some_and(|x| x <= density),
            format!("{g} (at {d}) is {gap:?} from the image"),
        )?;
        dense += 1;
    }
    Ok(format!(
        "{pairs} vertex pairs, {dense} elements within {density} of the image"
    ))
}

fn path_properties() -> Check {
    let b4 = classical(4).map_err(err)?;
    let spec = SampleSpec {
        samples: 1000,
        max_len: 6,
        seed: 1,
    };
    let r = path_property_checks(&b4, &spec);
    ensure(r.passed(), format!("{:?}", r.violations.first()))?;
    for law in ["convexity", "fellow_traveller", "concatenation"] {
        let n = r.counts.get(law).copied().unwrap_or(0);
        ensure(n >= 1000, format!("only {n} {law} instances"))?;
    }
    Ok(format!(
        "{} instances per law, max Hausdorff {}",
        r.counts["concatenation"], r.constants["max_hausdorff"]
    ))
}

fn projection_laws() -> Check {
    let ctx = axis_b3()?;
    let st = ctx.structure().clone();
    for k in -10..=10 {
        let l = lambda_pi(&ctx, &ctx.x().pow(k)).lambda;
        ensure(l == k, format!("lambda(x^{k}) = {l}"))?;
    }
    let mut rng = sample::rng(3);
    for _ in 0..1000 {
        let h = sample::random_element(&st, &mut rng, 6);
        let l = lambda_pi(&ctx, &h).lambda;
        for d in [-3, -1, 1, 2, 5] {
            ensure(
                lambda_pi(&ctx, &h.mul_delta_power(d)).lambda == l,
                format!("Delta changes lambda of {h}"),
            )?;
        }
    }
    let spec = SampleSpec {
        samples: 1000,
        max_len: 6,
        seed: 1,
    };
    let diag = projection_diagnostics(&ctx, &spec);
    ensure(diag.passed(), format!("{:?}", diag.violations.first()))?;
    let edges = diag.counts["lipschitz_edges"];
    ensure(edges >= 1000, format!("{edges} edges"))?;
    let inner = inner_lipschitz_law(&ctx, 3);
    ensure(inner.passed(), format!("{:?}", inner.violations.first()))?;
    Ok(format!(
        "{edges} edges, inner law on {} cone elements",
        inner.counts["cone"]
    ))
}

fn contraction() -> Check {
    let ctx = axis_b3()?;
    let r = contraction_scan(&ctx, 3, 8).map_err(err)?;
    ensure(r.passed(), format!("{:?}", r.violations.first()))?;
    let c2 = r.constants.get("C_hat(2)").copied();
    let c3 = r.constants.get("C_hat(3)").copied();
    ensure(
        c2.is_some() && c2 == c3,
        format!("C_hat(2) {c2:?}, C_hat(3) {c3:?}"),
    )?;
    ensure(r.constants["plateau"] == 1, "no plateau")?;
    ensure(r.witness("C_hat").is_some(), "no stored witness")?;
    let bad = recheck_witnesses(&ctx, &r);
    ensure(bad.is_empty(), format!("witness recheck: {bad:?}"))?;
    let spec = SampleSpec {
        samples: 1000,
        max_len: 6,
        seed: 2,
    };
    let diag = projection_diagnostics(&ctx, &spec);
    let gap = diag.constants["closest_point_gap"];
    let d_hat = diag.constants["D_hat"];
    ensure(
        gap <= 2 * d_hat && diag.passed(),
        format!("gap {gap} > 2 * {d_hat}"),
    )?;
    Ok(format!(
        "C_hat = {} on {} centres, gap {gap} <= 2 * D_hat {d_hat}",
        r.constants["C_hat"], r.counts["centres"]
    ))
}

fn rigidity() -> Check {
    let b3 = classical(3).map_err(err)?;
    let mut out = Vec::new();
    for (w, expect) in [("s1", Some(1)), ("D", Some(2)), ("s1 s2^-1", None)] {
        let g = parse_word(&b3, w).map_err(err)?;
        let r = rigid_power_search(&g, 12)
            .map_err(err)?
            .ok_or(format!("{w}: no rigid power up to 12"))?;
        ensure(r.verify(&g), format!("{w}: conjugation does not verify"))?;
        if let Some(k) = expect {
            ensure(r.power == k, format!("{w}: power {}", r.power))?;
        }
        if w == "D" {
            ensure(r.rigid_part.is_identity(), "D^2 rigid part is not trivial")?;
        }
        out.push(format!("{w}: k={}", r.power));
    }
    Ok(out.join(", "))
}

fn cal_certificates() -> Check {
    let b3 = classical(3).map_err(err)?;
    let s1 = absorbability(&parse_word(&b3, "s1").map_err(err)?).map_err(err)?;
    ensure(
        s1.absorbable && s1.absorber.is_some() && s1.verify(&b3),
        "s1 certificate",
    )?;
    let d = absorbability(&parse_word(&b3, "D").map_err(err)?).map_err(err)?;
    ensure(!d.absorbable && d.verify(&b3), "D certificate")?;
    let z3 = free_abelian(3).map_err(err)?;
    for k in 1..=5 {
        let g = parse_word(&z3, &format!("s1^{k}")).map_err(err)?;
        let c = absorbability(&g).map_err(err)?;
        ensure(
            c.absorbable && c.verify(&z3),
            format!("({k},0,0) certificate"),
        )?;
    }
    let r = z3_diameter_certificate(6).map_err(err)?;
    let ub = r.constants["upper_bound"];
    let certified = r.counts["certified"];
    let vertices = r.counts["vertices"];
    ensure(ub == 3, format!("upper bound {ub}"))?;
    ensure(
        certified == vertices && vertices == 13 * 13 * 13,
        "incomplete certificates",
    )?;
    Ok(format!(
        "upper bound {ub}, {certified}/{vertices} certified, exact eccentricity {}",
        r.constants["exact_eccentricity"]
    ))
}

fn absorbable_scans() -> Check {
    let ctx = axis_b3()?;
    let mut values = Vec::new();
    for seed in [1, 2] {
        let spec = SampleSpec {
            samples: 500,
            max_len: 6,
            seed,
        };
        let r = absorbable_projection_scan(&ctx, &spec, 4).map_err(err)?;
        let edges = r.counts.get("edges").copied().unwrap_or(0);
        ensure(edges >= 100, format!("seed {seed}: {edges} edges"))?;
        let f = r.constants.get("F_hat").copied().ok_or("no F_hat")?;
        values.push(f);
    }
    ensure(
        values[0] == values[1],
        format!("F_hat unstable: {values:?}"),
    )?;
    let wpd = wpd_scan(&ctx, 1, 6, 2, 4).map_err(err)?;
    ensure(wpd.constants["plateau"] == 1, "no WPD plateau")?;
    ensure(!wpd.notes.is_empty(), "no caveat")?;
    println!("    caveat: {}", wpd.notes[0]);
    Ok(format!(
        "F_hat {} on both seeds, WPD sizes {:?}",
        values[0], wpd.series["set_size"]
    ))
}

fn determinism() -> Check {
    let b3 = "braid:classical:n=3";
    let runs: [&[&str]; 7] = [
        &[
            "scan-contraction",
            b3,
            "s1",
            "--radius",
            "3",
            "--window",
            "8",
        ],
        &["scan-constriction", b3, "s1", "--seed", "7"],
        &["diagnostics", b3, "s1", "--seed", "7"],
        &["diagnostics", "braid:classical:n=4", "--seed", "7"],
        &["absorbable", b3, "--scan-axis", "s1", "--seed", "7"],
        &["z3-diam"],
        &["wpd", b3, "s1"],
    ];
    for args in runs {
        let argv = || std::iter::once("garside").chain(args.iter().copied());
        let a = garside::cli::run(argv());
        let b = garside::cli::run(argv());
        ensure(a.code == 0, format!("{args:?} exited {}", a.code))?;
        ensure(
            a.stdout == b.stdout,
            format!("{args:?} differs between runs"),
        )?;
    }
    Ok(format!("{} scan commands byte-identical", runs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("axiom audits", Duration::from_secs(60), audits),
        (
            "geodesic formula",
            Duration::from_secs(60),
            geodesic_formula,
        ),
        ("X metric", Duration::from_secs(60), x_metric),
        ("path properties", Duration::from_secs(300), path_properties),
        ("projection laws", Duration::from_secs(300), projection_laws),
        ("strong contraction", Duration::from_secs(600), contraction),
        ("rigidity pipeline", Duration::from_secs(60), rigidity),
        (
            "CAL certificates",
            Duration::from_secs(120),
            cal_certificates,
        ),
        (
            "absorbable scans",
            Duration::from_secs(600),
            absorbable_scans,
        ),
        ("determinism", Duration::from_secs(600), determinism),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let result = result.and_then(|m| {
            if took <= limit {
                Ok(m)
            } else {
                Err(format!("{m}; took {took:.1?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(m) => println!("criterion {:>2} {name}: PASS ({took:.2?}) {m}", i + 1),
            Err(m) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({took:.2?}) {m}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
