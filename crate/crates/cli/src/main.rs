//! `goodline` — exact computations for cubic threefolds over small finite
//! fields: smoothness, Hermitian detection, line enumeration and
//! classification, discriminant quintics, double-cover point counts, L- and
//! Prym polynomials, the conic-bundle point-count identity, Cartier-Manin
//! data, and quadric generator parity.
//!
//! Every run emits a report with a deterministic `results` object: rerunning
//! the same command reproduces it byte for byte (timing excluded), and
//! `--threads` never changes anything but wall time.
//!
//! Exit codes: 0 success, 2 usage, 3 input-data error, 4 resource budget
//! exceeded, 5 internal invariant breach.

use clap::{Args, Parser, Subcommand};
use goodline_core::budget::Budget;
use goodline_core::cartier::PlaneQuintic;
use goodline_core::cover::count_curve_and_cover;
use goodline_core::cubic::{
    classify_line, enumerate_lines, good_line_frame, CubicThreefold, GoodLineFrame, LineInP4,
    LineClassification,
};
use goodline_core::field::{Field, FieldElement};
use goodline_core::poly::Form;
use goodline_core::quadrics::{enumerate_generators, verify_generator_parity, QuadraticSpace};
use goodline_core::zeta::{l_polynomial_from_counts, p_rank_from_l, prym_l_polynomial, verify_ij_identity};
use goodline_core::Error as CoreError;
use serde_json::{json, Map, Value};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "goodline", version, about = "Cubic threefolds, conic bundles and Prym data over small finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    text: bool,

    /// JSON output (the default; kept for symmetry).
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (0 = all cores). Affects wall time only, never results.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Override the enumeration budget caps with a single value.
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Args, Clone)]
struct CubicArgs {
    /// Field literal, e.g. "GF(2)", "GF(2^3)", "GF(2^2; mod=1,1,1)".
    #[arg(long)]
    field: String,
    /// The cubic as a form in x0..x4, e.g. "x0^3+x1^3+x2^3+x3^3+x4^3".
    #[arg(long)]
    cubic: String,
}

#[derive(Args, Clone)]
struct LineArg {
    /// A line as two spanning points: "a0,a1,a2,a3,a4;b0,b1,b2,b3,b4".
    #[arg(long)]
    line: String,
}

#[derive(Subcommand)]
enum Command {
    /// Is the cubic smooth? (Jacobian criterion over the closure.)
    Smooth(CubicArgs),
    /// Is the cubic Hermitian (characteristic 2: no squarefree monomial)?
    Hermitian(CubicArgs),
    /// Enumerate all rational lines on the cubic.
    Lines(CubicArgs),
    /// Classify a line: Good, InF0, or NotGood with a reason.
    ClassifyLine {
        #[command(flatten)]
        cubic: CubicArgs,
        #[command(flatten)]
        line: LineArg,
    },
    /// The degree-5 discriminant of the conic bundle attached to (X, l).
    Discriminant {
        #[command(flatten)]
        cubic: CubicArgs,
        #[command(flatten)]
        line: LineArg,
    },
    /// Count points of the discriminant curve and its double cover over
    /// GF(q^m) for m = 1..m-max.
    CoverCount {
        #[command(flatten)]
        cubic: CubicArgs,
        #[command(flatten)]
        line: LineArg,
        #[arg(long, default_value_t = 6)]
        m_max: u32,
    },
    /// L-polynomial of the discriminant curve from counts to m-max (>= 6).
    Zeta {
        #[command(flatten)]
        cubic: CubicArgs,
        #[command(flatten)]
        line: LineArg,
        #[arg(long, default_value_t = 6)]
        m_max: u32,
    },
    /// L-polynomials of curve, cover and Prym factor, plus the point-count
    /// identity table.
    Prym {
        #[command(flatten)]
        cubic: CubicArgs,
        #[command(flatten)]
        line: LineArg,
        /// counts go to m-max (>= 11 for the cover's genus), identity to
        /// min(m-max, 4)
        #[arg(long, default_value_t = 11)]
        m_max: u32,
    },
    /// Check #X(GF(q^m)) = q^3m + q^2m + q^m + 1 + q^m (Ntilde - N).
    VerifyIdentity {
        #[command(flatten)]
        cubic: CubicArgs,
        #[command(flatten)]
        line: LineArg,
        #[arg(long, default_value_t = 4)]
        m_max: u32,
    },
    /// Cartier-Manin matrix, p-rank and a-number of a smooth plane quintic
    /// (given directly or derived from a cubic with a line).
    Cartier {
        /// Field literal.
        #[arg(long)]
        field: String,
        /// The quintic as a form in y0,y1,y2 (alternative to --cubic/--line).
        #[arg(long)]
        quintic: Option<String>,
        #[arg(long, requires = "line")]
        cubic: Option<String>,
        #[arg(long, requires = "cubic")]
        line: Option<String>,
    },
    /// Enumerate the generators of a smooth quadric and verify the
    /// two-family parity law.
    QuadricParity {
        /// Field literal.
        #[arg(long)]
        field: String,
        /// Upper-triangular coefficients, row-major:
        /// "c00,c01,...,c0(d-1),c11,...,c(d-1)(d-1)".
        #[arg(long, conflicts_with = "hyperbolic")]
        quadric: Option<String>,
        /// Use the standard split form x0*x1 + ... in dimension 2n.
        #[arg(long)]
        hyperbolic: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // global pool; results never depend on the thread count
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    let as_text = cli.text && !cli.json;
    let started = Instant::now();
    match run(&cli) {
        Ok((name, field, inputs, results)) => {
            let report = json!({
                "command": name,
                "field": field,
                "inputs": inputs,
                "results": results,
                "timing_ms": started.elapsed().as_millis() as u64,
                "version": env!("CARGO_PKG_VERSION"),
            });
            if as_text {
                println!("{}", render_text(&report));
            } else {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = if e.is_resource() {
                4u8
            } else if e.is_internal() {
                5
            } else {
                3
            };
            if as_text {
                eprintln!("error[{}]: {}", e.code(), e);
            } else {
                let obj = json!({"error": {"code": e.code(), "message": e.to_string()}});
                eprintln!("{}", serde_json::to_string(&obj).expect("error serializes"));
            }
            ExitCode::from(code)
        }
    }
}

type RunOutput = (&'static str, String, Value, Value);

fn run(cli: &Cli) -> Result<RunOutput, CoreError> {
    let mut budget = Budget::default();
    if let Some(b) = cli.budget {
        budget = budget.with_enumeration_cap(b);
    }
    match &cli.command {
        Command::Smooth(args) => {
            let (field, x) = parse_cubic(args)?;
            let smooth = x.is_smooth(&budget)?;
            Ok(("smooth", field.to_string(), cubic_inputs(args), json!({ "smooth": smooth })))
        }
        Command::Hermitian(args) => {
            let (field, x) = parse_cubic(args)?;
            let hermitian = x.is_hermitian();
            let mut results = Map::new();
            results.insert("hermitian".into(), Value::Bool(hermitian));
            if field.characteristic() != 2 {
                results.insert(
                    "note".into(),
                    Value::String("Hermitian cubics are a characteristic-2 notion; false by convention".into()),
                );
            }
            Ok(("hermitian", field.to_string(), cubic_inputs(args), Value::Object(results)))
        }
        Command::Lines(args) => {
            let (field, x) = parse_cubic(args)?;
            let lines = enumerate_lines(&x, &field, &budget)?;
            let rendered: Vec<Value> = lines.iter().map(|l| line_to_json(&field, l)).collect();
            Ok((
                "lines",
                field.to_string(),
                cubic_inputs(args),
                json!({ "count": lines.len(), "lines": rendered }),
            ))
        }
        Command::ClassifyLine { cubic, line } => {
            let (field, x) = parse_cubic(cubic)?;
            let l = parse_line(&field, &line.line)?;
            let cls = classify_line(&x, &l, &budget)?;
            let mut results = Map::new();
            let class = match cls {
                LineClassification::Good => "Good",
                LineClassification::InF0 => "InF0",
                LineClassification::NotGood(_) => "NotGood",
            };
            results.insert("class".into(), Value::String(class.into()));
            if let LineClassification::NotGood(reason) = cls {
                results.insert("reason".into(), Value::String(format!("{reason:?}")));
            }
            Ok(("classify-line", field.to_string(), line_inputs(cubic, line), Value::Object(results)))
        }
        Command::Discriminant { cubic, line } => {
            let (field, x) = parse_cubic(cubic)?;
            let l = parse_line(&field, &line.line)?;
            let frame = good_line_frame(&x, &l)?;
            let h = frame.discriminant();
            let smooth = goodline_core::poly::projective_is_empty(
                &goodline_core::poly::Ideal::jacobian(&h),
                &budget,
            )?;
            Ok((
                "discriminant",
                field.to_string(),
                line_inputs(cubic, line),
                json!({
                    "H": h.format_with(&["y0", "y1", "y2"]),
                    "degree": h.degree().unwrap_or(0),
                    "smooth": smooth,
                }),
            ))
        }
        Command::CoverCount { cubic, line, m_max } => {
            let (field, x) = parse_cubic(cubic)?;
            let frame = frame_for(&field, &x, &line.line)?;
            let table = count_curve_and_cover(&frame, *m_max, &budget)?;
            Ok((
                "cover-count",
                field.to_string(),
                line_inputs(cubic, line),
                serde_json::to_value(&table).expect("table serializes"),
            ))
        }
        Command::Zeta { cubic, line, m_max } => {
            let (field, x) = parse_cubic(cubic)?;
            let frame = frame_for(&field, &x, &line.line)?;
            let table = count_curve_and_cover(&frame, (*m_max).max(6), &budget)?;
            let counts: Vec<u64> = table.counts.iter().map(|r| r.n).collect();
            let l_c = l_polynomial_from_counts(table.q, 6, &counts)?;
            Ok((
                "zeta",
                field.to_string(),
                line_inputs(cubic, line),
                json!({ "q": table.q, "g": 6, "L_C": l_c.coeffs, "counts": counts }),
            ))
        }
        Command::Prym { cubic, line, m_max } => {
            let (field, x) = parse_cubic(cubic)?;
            let frame = frame_for(&field, &x, &line.line)?;
            let m_counts = (*m_max).max(11);
            let table = count_curve_and_cover(&frame, m_counts, &budget)?;
            let n: Vec<u64> = table.counts.iter().map(|r| r.n).collect();
            let nt: Vec<u64> = table.counts.iter().map(|r| r.n_tilde).collect();
            let l_c = l_polynomial_from_counts(table.q, 6, &n)?;
            let l_cover = l_polynomial_from_counts(table.q, 11, &nt)?;
            let l_prym = prym_l_polynomial(&l_c, &l_cover)?;
            let ident = verify_ij_identity(&x, &frame, (*m_max).min(4), &budget)?;
            Ok((
                "prym",
                field.to_string(),
                line_inputs(cubic, line),
                json!({
                    "q": table.q,
                    "L_C": l_c.coeffs,
                    "L_Ctilde": l_cover.coeffs,
                    "L_Prym": l_prym.coeffs,
                    "p_rank": p_rank_from_l(&l_c, field.characteristic()),
                    "identity": identity_rows(&ident),
                }),
            ))
        }
        Command::VerifyIdentity { cubic, line, m_max } => {
            let (field, x) = parse_cubic(cubic)?;
            let frame = frame_for(&field, &x, &line.line)?;
            let report = verify_ij_identity(&x, &frame, *m_max, &budget)?;
            Ok((
                "verify-identity",
                field.to_string(),
                line_inputs(cubic, line),
                json!({ "q": report.q, "identity": identity_rows(&report), "all_pass": report.all_pass() }),
            ))
        }
        Command::Cartier { field, quintic, cubic, line } => {
            let f = Field::parse(field)?;
            let (h, inputs) = match (quintic, cubic, line) {
                (Some(q), None, None) => {
                    let form = Form::parse(q, &f, &["y0", "y1", "y2"])?;
                    (form, json!({ "quintic": q }))
                }
                (None, Some(c), Some(l)) => {
                    let x = CubicThreefold::parse(c, &f)?;
                    let frame = frame_for(&f, &x, l)?;
                    (frame.discriminant(), json!({ "cubic": c, "line": l }))
                }
                _ => {
                    return Err(CoreError::Parse {
                        pos: 0,
                        msg: "pass either --quintic or both --cubic and --line".into(),
                    })
                }
            };
            let quintic = PlaneQuintic::new(h, &budget)?;
            let matrix = quintic.cartier_matrix()?;
            let (p_rank, a_number) = matrix.ranks();
            Ok((
                "cartier",
                f.to_string(),
                inputs,
                json!({
                    "chart": { "x": quintic.chart().x, "y": quintic.chart().y, "at_one": quintic.chart().at_one },
                    "matrix": matrix.rows_display(),
                    "p_rank": p_rank,
                    "a_number": a_number,
                }),
            ))
        }
        Command::QuadricParity { field, quadric, hyperbolic } => {
            let f = Field::parse(field)?;
            let (space, inputs) = match (quadric, hyperbolic) {
                (Some(q), None) => {
                    let entries: Vec<FieldElement> = q
                        .split(',')
                        .map(|s| f.parse_element(s.trim()))
                        .collect::<Result<_, _>>()?;
                    // d(d+1)/2 entries determine d
                    let d = (0..=16usize)
                        .find(|d| d * (d + 1) / 2 == entries.len())
                        .ok_or(CoreError::DimensionMismatch { expected: 0, got: entries.len() })?;
                    (QuadraticSpace::from_upper_triangular(f, d, &entries)?, json!({ "quadric": q }))
                }
                (None, Some(n)) => (QuadraticSpace::hyperbolic(f, *n), json!({ "hyperbolic_n": n })),
                _ => {
                    return Err(CoreError::Parse {
                        pos: 0,
                        msg: "pass exactly one of --quadric or --hyperbolic".into(),
                    })
                }
            };
            let gens = enumerate_generators(&space)?;
            let report = verify_generator_parity(&gens);
            Ok((
                "quadric-parity",
                f.to_string(),
                inputs,
                serde_json::to_value(&report).expect("report serializes"),
            ))
        }
    }
}

fn parse_cubic(args: &CubicArgs) -> Result<(Field, CubicThreefold), CoreError> {
    let field = Field::parse(&args.field)?;
    let x = CubicThreefold::parse(&args.cubic, &field)?;
    Ok((field, x))
}

fn parse_line(field: &Field, text: &str) -> Result<LineInP4, CoreError> {
    let halves: Vec<&str> = text.split(';').collect();
    if halves.len() != 2 {
        return Err(CoreError::Parse { pos: 0, msg: "expected two points separated by `;`".into() });
    }
    let mut points = Vec::with_capacity(2);
    for half in halves {
        let coords: Vec<FieldElement> = half
            .split(',')
            .map(|s| field.parse_element(s.trim()))
            .collect::<Result<_, _>>()?;
        if coords.len() != 5 {
            return Err(CoreError::DimensionMismatch { expected: 5, got: coords.len() });
        }
        points.push(coords);
    }
    LineInP4::from_points(*field, &points[0], &points[1])
}

fn frame_for(field: &Field, x: &CubicThreefold, line_text: &str) -> Result<GoodLineFrame, CoreError> {
    let l = parse_line(field, line_text)?;
    good_line_frame(x, &l)
}

fn cubic_inputs(args: &CubicArgs) -> Value {
    json!({ "cubic": args.cubic })
}

fn line_inputs(cubic: &CubicArgs, line: &LineArg) -> Value {
    json!({ "cubic": cubic.cubic, "line": line.line })
}

fn line_to_json(field: &Field, l: &LineInP4) -> Value {
    let row = |i: usize| -> Vec<String> {
        l.matrix().row(i).iter().map(|e| field.format_element(*e)).collect()
    };
    json!([row(0), row(1)])
}

fn identity_rows(report: &goodline_core::zeta::IdentityReport) -> Value {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "m": r.m,
                "lhs": r.lhs,
                "rhs": r.rhs,
                "N": r.n,
                "Ntilde": r.n_tilde,
                "pass": r.pass,
            })
        })
        .collect();
    Value::Array(rows)
}

fn render_text(report: &Value) -> String {
    let mut out = String::new();
    let cmd = report["command"].as_str().unwrap_or("?");
    let field = report["field"].as_str().unwrap_or("?");
    out.push_str(&format!("{cmd} over {field}\n"));
    render_value(&report["results"], 0, &mut out);
    out.push_str(&format!("({} ms)", report["timing_ms"]));
    out
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_value(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {val}\n")),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {item}\n")),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{v}\n")),
    }
}
