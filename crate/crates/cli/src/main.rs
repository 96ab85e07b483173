//! `phflag`: run the verification suites, the classification oracles, the
//! nilmanifold simulator and the rate estimator from the command line.
//!
//! Exit codes: `0` success, `1` a check failed, `2` invalid configuration.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use phflag_core::dynamics::{
    hyperbolicity_report, iterate, tangent_rates, tangent_rates_fd, Direction, DynamicsInput, NilMap, FD_EPSILON,
};
use phflag_core::oracle::{
    self, degeneration_limit, invariant_transverse_line_search, isotropy_eigenvalue_table, stabilizer_table,
    DegenerationCase, IsotropyCase,
};
use phflag_core::scalar::{self, Scalar};
use phflag_core::suite::{self, CaseReport, SuiteConfig};

#[derive(Parser, Debug)]
#[command(name = "phflag", version, about = "Flag-space geometry and nilmanifold dynamics checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification suites and report every check.
    Verify(VerifyArgs),
    /// Evaluate one classification oracle case.
    Oracle(OracleArgs),
    /// Iterate a nilmanifold automorphism and export the orbit as CSV.
    Simulate(SimulateArgs),
    /// Estimate the stable, center and unstable rates of a nilmanifold automorphism.
    Lyapunov(LyapunovArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Args, Debug)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value = "human", env = "PHFLAG_FORMAT")]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, env = "PHFLAG_OUT")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite to run: all, lie_core, flag_space, curvature, models, classification_oracle, dynamics.
    #[arg(long, default_value = "all", env = "PHFLAG_SUITE")]
    suite: String,
    /// Seed of all random sampling.
    #[arg(long, default_value_t = 0, env = "PHFLAG_SEED")]
    seed: u64,
    /// Samples per sampled check.
    #[arg(long, default_value_t = 100, env = "PHFLAG_SAMPLES")]
    samples: usize,
    /// Tolerance of float checks.
    #[arg(long, default_value_t = 1e-9, env = "PHFLAG_TOL")]
    tol: f64,
    /// JSON object mapping case ids to expected rendered values.
    #[arg(long, env = "PHFLAG_FIXTURES")]
    fixtures: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// Case id, e.g. degeneration-t1, isotropy-a, invariant-line-h1, stabilizers-a, subalgebras, tresse.
    case: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct MapArgs {
    /// Linear part `a,b,c,d` of determinant one.
    #[arg(long, allow_hyphen_values = true)]
    matrix: String,
    /// Translation `x,y,z` in exponential coordinates (rationals; 2x, 2y integers).
    #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
    translation: String,
    /// Number of iterations.
    #[arg(short = 'n', long = "iterations", default_value_t = 200)]
    iterations: usize,
    /// Starting point `x,y,z`.
    #[arg(long, default_value = "0.1,0.2,0.3", allow_hyphen_values = true)]
    start: String,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    map: MapArgs,
    /// Write the trajectory to this file instead of standard output.
    #[arg(long, env = "PHFLAG_OUT")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LyapunovArgs {
    #[command(flatten)]
    map: MapArgs,
    /// Tolerance of the certification margins.
    #[arg(long, default_value_t = 1e-6, env = "PHFLAG_TOL")]
    tol: f64,
    #[command(flatten)]
    output: Output,
}

/// A configuration error (exit code 2) or a failed run (exit code 1).
#[derive(Debug)]
enum Failure {
    Config(String),
    Checks(Vec<String>),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Config(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Config(format!("{}: {e}", path.display()))),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct JsonCase<'a> {
    id: &'a str,
    anchor: &'a str,
    pass: bool,
    residual: Option<f64>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    suite: &'a str,
    cases: Vec<JsonCase<'a>>,
}

fn render_cases(suite: &str, cases: &[CaseReport], format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Json => {
            let report = JsonReport {
                suite,
                cases: cases
                    .iter()
                    .map(|c| JsonCase {
                        id: &c.id,
                        anchor: &c.anchor,
                        pass: c.pass,
                        residual: c.residual,
                    })
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&report)?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "anchor", "pass", "residual"])?;
            for c in cases {
                let r = c.residual.map(|r| format!("{r:e}")).unwrap_or_default();
                w.write_record([c.id.as_str(), c.anchor.as_str(), if c.pass { "true" } else { "false" }, &r])?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Config(e.to_string()))?)?
        }
        Format::Human => {
            let mut s = String::new();
            for c in cases {
                let r = c.residual.map(|r| format!(" [residual {r:.3e}]")).unwrap_or_default();
                s.push_str(&format!(
                    "{} {:<55} {}{} -- {}\n",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.id,
                    c.computed,
                    r,
                    c.anchor
                ));
            }
            let failed = cases.iter().filter(|c| !c.pass).count();
            s.push_str(&format!("{} checks, {} failed\n", cases.len(), failed));
            s
        }
    })
}

fn cmd_verify(a: &VerifyArgs) -> CliResult {
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(Failure::Config("--tol must be positive".into()));
    }
    if a.samples == 0 {
        return Err(Failure::Config("--samples must be positive".into()));
    }
    let fixtures: BTreeMap<String, String> = match &a.fixtures {
        Some(p) => serde_json::from_str(&fs::read_to_string(p).map_err(|e| Failure::Config(format!("{}: {e}", p.display())))?)?,
        None => BTreeMap::new(),
    };
    let config = SuiteConfig {
        seed: a.seed,
        samples: a.samples,
        tol: a.tol,
    };
    let cases = suite::run(&a.suite, &config, &fixtures)?;
    emit(&a.output.out, &render_cases(&a.suite, &cases, a.output.format)?)?;
    let failed: Vec<String> = cases.iter().filter(|c| !c.pass).map(|c| c.id.clone()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Checks(failed))
    }
}

#[derive(Serialize)]
struct OracleOutput {
    case: String,
    pass: bool,
    lines: Vec<(String, String)>,
}

fn oracle_case(id: &str) -> Result<OracleOutput, Failure> {
    let (kind, arg) = id.rsplit_once('-').unwrap_or((id, ""));
    let mut lines = Vec::new();
    let mut pass = true;
    match kind {
        "degeneration" => {
            let case = DegenerationCase::parse(arg)?;
            let t = scalar::frac(1, 10);
            let sample = degeneration_limit(case, &t)?;
            let m = &sample.matrix;
            let rows: Vec<String> = (0..3)
                .map(|i| format!("[{}, {}, {}]", m.at(i, 0), m.at(i, 1), m.at(i, 2)))
                .collect();
            pass = sample.matrix == case.expected().eval(&t);
            lines.push(("t".into(), t.to_string()));
            lines.push(("matrix".into(), format!("[{}]", rows.join(", "))));
            lines.push(("symbolic".into(), case.expected().to_string()));
            lines.push(("sine_sq".into(), sample.sine_sq.to_string()));
            lines.push(("limit".into(), case.limit().tag().to_string()));
        }
        "isotropy" => {
            let case = IsotropyCase::parse(arg)?;
            let table = isotropy_eigenvalue_table(case)?;
            pass = table == oracle::expected_isotropy_table(case);
            lines.push(("table".into(), table.to_string()));
        }
        "invariant-line" => {
            let case = IsotropyCase::parse(arg)?;
            lines.push(("lines".into(), invariant_transverse_line_search(case)?.to_string()));
        }
        "stabilizers" if arg == "a" => {
            let table = stabilizer_table(&scalar::int(1), &scalar::int(2))?;
            for (k, v) in oracle::describe_stabilizers(&table) {
                lines.push((k.to_string(), v));
            }
        }
        _ if id == "subalgebras" || id == "tresse" => {
            let reports = if id == "subalgebras" {
                oracle::verify_subalgebra_table()
            } else {
                oracle::tresse_bracket_suite()
            };
            for r in reports {
                pass &= r.pass;
                lines.push((r.id, r.computed));
            }
        }
        _ => return Err(Failure::Config(format!("unknown case `{id}`"))),
    }
    Ok(OracleOutput {
        case: id.to_string(),
        pass,
        lines,
    })
}

fn cmd_oracle(a: &OracleArgs) -> CliResult {
    let out = oracle_case(&a.case)?;
    let text = match a.output.format {
        Format::Json => serde_json::to_string_pretty(&out)? + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"])?;
            for (k, v) in &out.lines {
                w.write_record([k, v])?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Config(e.to_string()))?)?
        }
        Format::Human => {
            let mut s = format!("{}\n", out.case);
            for (k, v) in &out.lines {
                s.push_str(&format!("  {k}: {v}\n"));
            }
            s
        }
    };
    emit(&a.output.out, &text)?;
    if out.pass {
        Ok(())
    } else {
        Err(Failure::Checks(vec![out.case]))
    }
}

fn parse_rationals(s: &str) -> Result<[Scalar; 3], Failure> {
    let v: Vec<Scalar> = s
        .split(',')
        .map(|t| t.trim().parse::<Scalar>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Config(format!("`{s}`: {e}")))?;
    v.try_into().map_err(|_| Failure::Config(format!("`{s}`: expected three values")))
}

fn parse_point(s: &str) -> Result<[f64; 3], Failure> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Config(format!("`{s}`: {e}")))?;
    match v.as_slice() {
        [x, y, z] if v.iter().all(|c| c.is_finite()) => Ok([*x, *y, *z]),
        _ => Err(Failure::Config(format!("`{s}`: expected three finite values"))),
    }
}

fn build_map(a: &MapArgs) -> Result<(NilMap, [f64; 3]), Failure> {
    let m = NilMap::parse_matrix(&a.matrix)?;
    let map = NilMap::new(m, parse_rationals(&a.translation)?)?;
    Ok((map, parse_point(&a.start)?))
}

fn cmd_simulate(a: &SimulateArgs) -> CliResult {
    let (map, start) = build_map(&a.map)?;
    let orbit = iterate(&map, &start, a.map.iterations);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["step", "x", "y", "z"])?;
    for (k, p) in orbit.iter().enumerate() {
        w.write_record([k.to_string(), format!("{:.16e}", p[0]), format!("{:.16e}", p[1]), format!("{:.16e}", p[2])])?;
    }
    let text = String::from_utf8(w.into_inner().map_err(|e| Failure::Config(e.to_string()))?)?;
    emit(&a.out, &text)
}

#[derive(Serialize)]
struct RateReport {
    matrix: [[i64; 2]; 2],
    iterations: usize,
    measured: BTreeMap<&'static str, f64>,
    exact: BTreeMap<&'static str, f64>,
    certified_n: Option<usize>,
    partially_hyperbolic: bool,
    weakly_contracted: bool,
}

fn cmd_lyapunov(a: &LyapunovArgs) -> CliResult {
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(Failure::Config("--tol must be positive".into()));
    }
    if a.map.iterations == 0 {
        return Err(Failure::Config("-n must be positive".into()));
    }
    let (map, start) = build_map(&a.map)?;
    let dirs = [("stable", Direction::S), ("center", Direction::C), ("unstable", Direction::U)];
    let mut measured = BTreeMap::new();
    let mut exact = BTreeMap::new();
    for (name, d) in dirs {
        measured.insert(name, tangent_rates_fd(&map, d, &start, a.map.iterations, FD_EPSILON)?);
        exact.insert(name, tangent_rates(&map, d)?);
    }
    let report = hyperbolicity_report(
        &DynamicsInput::Nil {
            map: Box::new(map.clone()),
            iterations: a.map.iterations,
            start,
        },
        10,
        a.tol,
    )?;
    let out = RateReport {
        matrix: *map.matrix(),
        iterations: a.map.iterations,
        measured,
        exact,
        certified_n: report.certified_n,
        partially_hyperbolic: report.partially_hyperbolic,
        weakly_contracted: report.weakly_contracted,
    };
    let text = match a.output.format {
        Format::Json => serde_json::to_string_pretty(&out)? + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["direction", "measured", "exact"])?;
            for (name, _) in dirs {
                w.write_record([name.to_string(), format!("{:.16e}", out.measured[name]), format!("{:.16e}", out.exact[name])])?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Config(e.to_string()))?)?
        }
        Format::Human => {
            let mut s = String::new();
            for (name, _) in dirs {
                s.push_str(&format!("{name:<9} {:.10} (exact {:.10})\n", out.measured[name], out.exact[name]));
            }
            s.push_str(&format!(
                "partially hyperbolic: {} (N = {})\n",
                out.partially_hyperbolic,
                out.certified_n.map(|n| n.to_string()).unwrap_or_else(|| "none".into())
            ));
            s
        }
    };
    emit(&a.output.out, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Lyapunov(a) => cmd_lyapunov(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks(ids)) => {
            for id in ids {
                eprintln!("failed: {id}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
