//! Command-line front end. Every command prints one JSON document (or a
//! flat table with `--table`) and maps its outcome to an exit status:
//! 0 success, 1 error, 2 guard refusal, 3 law violation.

use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::additional_length::{
    absorbability, absorbable_projection_scan, cal_dist_upper, wpd_scan, z3_diameter_certificate,
};
use crate::complex_x::{
    ball_gamma, ball_x, dist, path_property_checks, preferred_path, set_ball_guard_override,
    Guards, Metric, SampleSpec, VertexX,
};
use crate::error::{GarsideError, Result};
use crate::normal_form::{
    format_mixed_word, left_fraction, lengths, mixed_word, right_fraction, right_normal_form,
    Fraction,
};
use crate::projection::{
    check_projection, closest_axis_points, constriction_check, contraction_scan,
    inner_lipschitz_law, lambda_pi, projection_diagnostics,
};
use crate::report::ScanReport;
use crate::rigidity::{
    rigid_power_search, sliding_orbit, suffix_and_rigidity, AxisContext, DEFAULT_AXIS_WINDOW,
    DEFAULT_MAX_POWER,
};
use crate::structure::GarsideStructure;
use crate::structures::{axiom_audit, from_descriptor};
use crate::word::{factor_words, format_word, parse_word};

#[derive(Parser, Debug)]
#[command(
    name = "garside",
    version,
    about = "Garside group normal forms and axis experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Print a flat key/value table instead of JSON.
    #[arg(long, global = true)]
    pub table: bool,
    #[arg(long, global = true)]
    pub radius: Option<usize>,
    #[arg(long, global = true)]
    pub window: Option<usize>,
    #[arg(long, global = true)]
    pub max_power: Option<u32>,
    #[arg(long, global = true)]
    pub kappa: Option<usize>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Longest random element, in simples.
    #[arg(long, global = true)]
    pub max_len: Option<usize>,
    /// Replace the ball radius bound. Needs `--i-know`.
    #[arg(long, global = true)]
    pub guard_override: Option<usize>,
    #[arg(long, global = true)]
    pub i_know: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exhaustive check of the lattice and complement axioms.
    Audit { structure: String },
    /// Normal forms, fractions and lengths of an element.
    Nf { structure: String, word: String },
    /// Distance in Γ, Γ̄ or 𝒳 (all three without `--metric`).
    Dist {
        structure: String,
        g: String,
        h: String,
        #[arg(long)]
        metric: Option<String>,
    },
    /// Preferred path between two vertices of 𝒳.
    Path {
        structure: String,
        g: String,
        h: String,
    },
    /// Breadth-first ball in 𝒳, Γ or Γ̄.
    Ball {
        structure: String,
        #[arg(default_value = "")]
        center: String,
        #[arg(long, default_value = "x")]
        graph: String,
    },
    /// Preferred suffix, sliding circuit and rigid power search.
    Rigid { structure: String, word: String },
    /// Projection of an element to the axis of a rigid element.
    Project {
        structure: String,
        axis: String,
        word: String,
    },
    /// Projected diameters of balls disjoint from the axis.
    ScanContraction { structure: String, axis: String },
    /// Smallest constriction constant consistent with sampled pairs.
    ScanConstriction { structure: String, axis: String },
    /// Projection laws and constants with an axis; path properties without.
    Diagnostics {
        structure: String,
        axis: Option<String>,
    },
    /// Absorbability certificate, or the absorbable-edge scan with `--scan-axis`.
    Absorbable {
        structure: String,
        word: Option<String>,
        #[arg(long)]
        scan_axis: Option<String>,
        /// Longest absorbable jump in the scan.
        #[arg(long, default_value_t = 4)]
        jump_len: usize,
    },
    /// Upper bound for the additional length distance, with a certified path.
    CalDist {
        structure: String,
        g: String,
        h: String,
    },
    /// Diameter certificate for the additional length graph of ℤ³.
    Z3Diam,
    /// Windowed WPD set sizes along the axis.
    Wpd {
        structure: String,
        axis: String,
        #[arg(long, default_value_t = 2)]
        h_radius: usize,
    },
}

/// What a command produced.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Done {
    value: Value,
    violation: bool,
}

fn ok(value: Value) -> Result<Done> {
    Ok(Done {
        value,
        violation: false,
    })
}

fn scan(report: ScanReport) -> Result<Done> {
    let violation = !report.passed();
    Ok(Done {
        value: to_value(&report),
        violation,
    })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn structure(text: &str) -> Result<Arc<GarsideStructure>> {
    from_descriptor(text)
}

fn axis(st: &Arc<GarsideStructure>, word: &str, window: Option<usize>) -> Result<AxisContext> {
    AxisContext::with_window(
        &parse_word(st, word)?,
        window.unwrap_or(DEFAULT_AXIS_WINDOW),
    )
}

fn fraction(f: &Fraction) -> Value {
    json!({
        "denominator": format_word(&f.denominator),
        "numerator": format_word(&f.numerator),
    })
}

fn spec(cli: &Cli, samples: usize) -> SampleSpec {
    SampleSpec {
        samples: cli.samples.unwrap_or(samples),
        max_len: cli.max_len.unwrap_or(6),
        seed: cli.seed.unwrap_or(1),
    }
}

fn execute(cli: &Cli) -> Result<Done> {
    match &cli.command {
        Command::Audit { structure: s } => {
            let st = structure(s)?;
            let report = axiom_audit(&st)?;
            Ok(Done {
                violation: !report.passed(),
                value: to_value(&report),
            })
        }
        Command::Nf { structure: s, word } => {
            let st = structure(s)?;
            let g = parse_word(&st, word)?;
            let l = lengths(&g);
            let rnf = right_normal_form(&g);
            ok(json!({
                "structure": st.descriptor(),
                "word": word,
                "normal_form": format_word(&g),
                "inf": l.inf,
                "sup": l.sup,
                "canonical_length": l.canonical_length,
                "word_length": l.word_length,
                "factors": factor_words(&g),
                "right_normal_form": {
                    "delta_power": rnf.delta_power,
                    "factors": rnf.factors.iter().map(|&x| st.simple_word(x)).collect::<Vec<_>>(),
                },
                "left_fraction": fraction(&left_fraction(&g)),
                "right_fraction": fraction(&right_fraction(&g)),
                "mixed_word": format_mixed_word(&st, &mixed_word(&g)),
            }))
        }
        Command::Dist {
            structure: s,
            g,
            h,
            metric,
        } => {
            let st = structure(s)?;
            let (g, h) = (parse_word(&st, g)?, parse_word(&st, h)?);
            let mut out = Map::new();
            out.insert("structure".into(), json!(st.descriptor()));
            let metrics = match metric {
                Some(m) => vec![(m.clone(), m.parse::<Metric>()?)],
                None => vec![
                    ("gamma".to_string(), Metric::Gamma),
                    ("gammabar".to_string(), Metric::GammaBar),
                    ("x".to_string(), Metric::X),
                ],
            };
            for (name, m) in metrics {
                out.insert(name, json!(dist(&g, &h, m)?));
            }
            ok(Value::Object(out))
        }
        Command::Path { structure: s, g, h } => {
            let st = structure(s)?;
            let path = preferred_path(&parse_word(&st, g)?, &parse_word(&st, h)?)?;
            ok(json!({
                "structure": st.descriptor(),
                "length": path.len(),
                "vertices": path.vertices.iter().map(VertexX::word).collect::<Vec<_>>(),
            }))
        }
        Command::Ball {
            structure: s,
            center,
            graph,
        } => {
            let st = structure(s)?;
            let c = parse_word(&st, center)?;
            let radius = cli.radius.unwrap_or(2);
            let guards = Guards::for_structure(&st);
            let pairs: Vec<(String, usize)> = match graph.parse::<Metric>()? {
                Metric::X => ball_x(&VertexX::new(&c), radius, &guards)?
                    .into_iter()
                    .map(|(v, d)| (v.word(), d))
                    .collect(),
                m => ball_gamma(&c, radius, m == Metric::GammaBar, &guards)?
                    .into_iter()
                    .map(|(v, d)| (format_word(&v), d))
                    .collect(),
            };
            let mut sphere = vec![0usize; radius + 1];
            for (_, d) in &pairs {
                sphere[*d] += 1;
            }
            ok(json!({
                "structure": st.descriptor(),
                "graph": graph,
                "radius": radius,
                "size": pairs.len(),
                "sphere_sizes": sphere,
                "vertices": pairs.iter().map(|(w, d)| json!({"word": w, "distance": d})).collect::<Vec<_>>(),
            }))
        }
        Command::Rigid { structure: s, word } => {
            let st = structure(s)?;
            let g = parse_word(&st, word)?;
            let (suffix, rigid) = suffix_and_rigidity(&g);
            let orbit = sliding_orbit(&g)?;
            let max_power = cli.max_power.unwrap_or(DEFAULT_MAX_POWER);
            let found = rigid_power_search(&g, max_power)?;
            ok(json!({
                "structure": st.descriptor(),
                "element": format_word(&g),
                "preferred_suffix": st.simple_word(suffix),
                "right_rigid": rigid,
                "sliding": {
                    "preperiod": orbit.preperiod.len(),
                    "circuit": orbit.circuit.iter().map(format_word).collect::<Vec<_>>(),
                },
                "max_power": max_power,
                "search": found.as_ref().map(|r| r.summary()),
                "verified": found.as_ref().map(|r| r.verify(&g)),
                "note": if found.is_none() { "not found within max_power; not a disproof" } else { "" },
            }))
        }
        Command::Project {
            structure: s,
            axis: a,
            word,
        } => {
            let st = structure(s)?;
            let ctx = axis(&st, a, cli.window)?;
            let h = parse_word(&st, word)?;
            let r = lambda_pi(&ctx, &h);
            let (d, ks) = closest_axis_points(&ctx, &h);
            Ok(Done {
                violation: !check_projection(&ctx, &h, &r),
                value: json!({
                    "structure": st.descriptor(),
                    "axis": format_word(ctx.x()),
                    "element": format_word(&h),
                    "lambda": r.lambda,
                    "vertex": r.vertex.word(),
                    "bracket": [r.bracket.0, r.bracket.1],
                    "axis_distance": d,
                    "closest_powers": ks,
                }),
            })
        }
        Command::ScanContraction {
            structure: s,
            axis: a,
        } => {
            let st = structure(s)?;
            let ctx = axis(&st, a, None)?;
            scan(contraction_scan(
                &ctx,
                cli.radius.unwrap_or(3),
                cli.window.unwrap_or(8),
            )?)
        }
        Command::ScanConstriction {
            structure: s,
            axis: a,
        } => {
            let st = structure(s)?;
            let ctx = axis(&st, a, cli.window)?;
            scan(constriction_check(&ctx, &spec(cli, 100)))
        }
        Command::Diagnostics {
            structure: s,
            axis: a,
        } => {
            let st = structure(s)?;
            match a {
                None => scan(path_property_checks(&st, &spec(cli, 1000))),
                Some(a) => {
                    let ctx = axis(&st, a, cli.window)?;
                    let mut report = projection_diagnostics(&ctx, &spec(cli, 1000));
                    let inner = inner_lipschitz_law(&ctx, 3);
                    for (k, v) in inner.counts {
                        report.count(&format!("inner_law_{k}"), v);
                    }
                    report.violations.extend(inner.violations);
                    scan(report)
                }
            }
        }
        Command::Absorbable {
            structure: s,
            word,
            scan_axis,
            jump_len,
        } => {
            let st = structure(s)?;
            match (word, scan_axis) {
                (_, Some(a)) => {
                    let ctx = axis(&st, a, cli.window)?;
                    scan(absorbable_projection_scan(
                        &ctx,
                        &spec(cli, 500),
                        *jump_len,
                    )?)
                }
                (Some(w), None) => {
                    let cert = absorbability(&parse_word(&st, w)?)?;
                    Ok(Done {
                        violation: !cert.verify(&st),
                        value: to_value(&cert),
                    })
                }
                (None, None) => Err(GarsideError::InvalidInput(
                    "give an element word or --scan-axis".into(),
                )),
            }
        }
        Command::CalDist { structure: s, g, h } => {
            let st = structure(s)?;
            let radius = cli.radius.unwrap_or(3);
            let path = cal_dist_upper(&parse_word(&st, g)?, &parse_word(&st, h)?, radius)?;
            ok(json!({
                "structure": st.descriptor(),
                "radius": radius,
                "upper_bound": path.as_ref().map(|p| p.upper_bound),
                "path": path,
                "note": "upper bound from a finite window, not an exact distance",
            }))
        }
        Command::Z3Diam => scan(z3_diameter_certificate(cli.radius.unwrap_or(6))?),
        Command::Wpd {
            structure: s,
            axis: a,
            h_radius,
        } => {
            let st = structure(s)?;
            let ctx = axis(&st, a, None)?;
            scan(wpd_scan(
                &ctx,
                cli.kappa.unwrap_or(1),
                cli.window.unwrap_or(6),
                *h_radius,
                cli.radius.unwrap_or(4),
            )?)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Audit { .. } => "audit",
        Command::Nf { .. } => "nf",
        Command::Dist { .. } => "dist",
        Command::Path { .. } => "path",
        Command::Ball { .. } => "ball",
        Command::Rigid { .. } => "rigid",
        Command::Project { .. } => "project",
        Command::ScanContraction { .. } => "scan-contraction",
        Command::ScanConstriction { .. } => "scan-constriction",
        Command::Diagnostics { .. } => "diagnostics",
        Command::Absorbable { .. } => "absorbable",
        Command::CalDist { .. } => "cal-dist",
        Command::Z3Diam => "z3-diam",
        Command::Wpd { .. } => "wpd",
    }
}

/// Flattens a JSON document into `path  value` lines.
pub fn render_table(value: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&p, x, out);
                }
            }
            Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let items: Vec<String> = a.iter().map(scalar).collect();
                out.push((prefix.to_string(), items.join(", ")));
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            _ => out.push((prefix.to_string(), scalar(v))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) if s.is_empty() => "1".into(),
            Value::String(s) => s.clone(),
            _ => v.to_string(),
        }
    }
    let mut rows = Vec::new();
    walk("", value, &mut rows);
    let width = rows
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn error_outcome(e: &GarsideError, command: &str) -> Outcome {
    let code = if e.is_guard() { 2 } else { 1 };
    let doc = json!({"command": command, "error": e.to_string(), "guard_refusal": e.is_guard()});
    Outcome {
        code,
        stdout: format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()),
        stderr: format!("error: {e}\n"),
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return Outcome {
                code,
                stdout: if code == 0 {
                    text.clone()
                } else {
                    String::new()
                },
                stderr: if code == 0 { String::new() } else { text },
            };
        }
    };
    let name = command_name(&cli.command);
    if let Some(bound) = cli.guard_override {
        if !cli.i_know {
            let e =
                GarsideError::InvalidInput("--guard-override is refused without --i-know".into());
            let mut out = error_outcome(&e, name);
            out.code = 2;
            return out;
        }
        set_ball_guard_override(Some(bound));
    }
    let result = execute(&cli);
    set_ball_guard_override(None);
    match result {
        Err(e) => error_outcome(&e, name),
        Ok(done) => {
            let mut value = done.value;
            if let Value::Object(m) = &mut value {
                m.insert("command".into(), json!(name));
            }
            let stdout = if cli.table {
                render_table(&value)
            } else {
                format!("{}\n", serde_json::to_string_pretty(&value).unwrap())
            };
            Outcome {
                code: if done.violation { 3 } else { 0 },
                stdout,
                stderr: String::new(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn json_of(args: &[&str]) -> (i32, Value) {
        let mut full = vec!["garside"];
        full.extend_from_slice(args);
        let out = run(full);
        (
            out.code,
            serde_json::from_str(&out.stdout).unwrap_or(Value::Null),
        )
    }

    #[test]
    fn nf_example() {
        let (code, v) = json_of(&["nf", "braid:classical:n=3", "s1 s2 s1 s2"]);
        assert_eq!(code, 0);
        assert_eq!((v["inf"].as_i64(), v["sup"].as_i64()), (Some(1), Some(2)));
        assert_eq!(v["factors"], json!(["s2"]));
    }

    #[test]
    fn exit_codes() {
        let (code, v) = json_of(&["nf", "braid:classical:n=3", "s9"]);
        assert_eq!(code, 1);
        assert!(v["error"].as_str().unwrap().contains("unknown atom s9"));
        assert_eq!(
            json_of(&["ball", "braid:classical:n=3", "--radius", "9"]).0,
            2
        );
        assert_eq!(
            json_of(&[
                "ball",
                "braid:classical:n=3",
                "--radius",
                "7",
                "--guard-override",
                "7"
            ])
            .0,
            2
        );
        assert_eq!(json_of(&["project", "zn:n=3", "s1", "s2"]).0, 1);
    }

    #[test]
    fn table_output() {
        let out = run(["garside", "nf", "braid:classical:n=3", "s1 s2", "--table"]);
        assert_eq!(out.code, 0);
        assert!(out
            .stdout
            .lines()
            .any(|l| l.starts_with("factors") && l.ends_with("s1 s2")));
    }
}
