//! Command line front end: parse a problem spec, run the construction and
//! verification pipelines, and emit JSON or text reports.
//!
//! Exit codes: 0 = all checks pass, 1 = a mathematical check failed,
//! 2 = usage or spec error (malformed JSON, alpha < m, non-square M).

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lagsob_core::awr::weighted_rank;
use lagsob_core::error::Error;
use lagsob_core::io::{matrix_to_strings, poly_to_strings, AwrDoc, ConstructDoc, OperatorDoc, SpecDoc};
use lagsob_core::operator::{assemble_dqs_with, verify_all, OperatorBundle};
use lagsob_core::poly::Poly;
use lagsob_core::rational::format_rational;
use lagsob_core::reference::{reference_data, reference_spec};
use lagsob_core::report::{CheckResult, Report};
use lagsob_core::sobolev::{build_r, casorati, construct_with, SobolevSpec};

#[derive(Parser)]
#[command(
    name = "lagsob",
    version,
    about = "Exact discrete Laguerre-Sobolev orthogonal polynomials, Casorati determinants, and their differential operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Problem spec as JSON ({"alpha", "m", "M", "S"?, "N"?}); stdin when omitted
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Highest polynomial index n (overrides "N" from the input; default 10)
    #[arg(long, global = true)]
    upto: Option<u64>,

    /// Worker threads for the parallel pipelines
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Build R_1..R_m, the Casorati determinant, and q_0..q_N
    Construct,
    /// Assemble P_S, the M_h, and the differential operator D
    Operator,
    /// Compute the alpha-weighted rank of the mass matrix
    Awr,
    /// Run every check: orthogonality, degree, order, eigenfunctions
    Verify,
    /// Rerun the built-in reference instance and diff it against its
    /// embedded known-good outputs
    ReproduceExample,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

const DEFAULT_UPTO: u64 = 10;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if !lagsob_core::par::configure_threads(k) {
            eprintln!("note: --threads {k} not applied (pool already running or sequential build)");
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Ok(exit code) for completed runs; Err(message) for usage/spec errors.
fn run(cli: &Cli) -> Result<u8, String> {
    match cli.command {
        Command::Construct => cmd_construct(cli),
        Command::Operator => cmd_operator(cli),
        Command::Awr => cmd_awr(cli),
        Command::Verify => cmd_verify(cli),
        Command::ReproduceExample => cmd_reproduce(cli),
    }
}

struct LoadedSpec {
    spec: SobolevSpec,
    s: Poly,
    upto: u64,
}

fn load_spec(cli: &Cli) -> Result<LoadedSpec, String> {
    let raw = match &cli.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("cannot read stdin: {e}"))?;
            buf
        }
    };
    let doc: SpecDoc = serde_json::from_str(&raw).map_err(|e| format!("malformed JSON: {e}"))?;
    let spec = doc.to_spec().map_err(|e| e.to_string())?;
    let s = doc.s_poly().map_err(|e| e.to_string())?;
    let upto = cli.upto.or(doc.n).unwrap_or(DEFAULT_UPTO);
    Ok(LoadedSpec { spec, s, upto })
}

fn emit(cli: &Cli, body: String) -> Result<(), String> {
    match &cli.output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| e.to_string())
}

/// Errors that mean "the instance fails a mathematical precondition" map to
/// exit 1 with a diagnostic; everything else is a usage error.
fn math_failure(e: &Error) -> bool {
    matches!(e, Error::OmegaVanishes { .. } | Error::SingularSystem { .. })
}

fn cmd_construct(cli: &Cli) -> Result<u8, String> {
    let loaded = load_spec(cli)?;
    let spec = &loaded.spec;
    let r = build_r(spec);
    let cas = casorati(&r).map_err(|e| e.to_string())?;
    if !cas.root_free {
        eprintln!(
            "error: Casorati determinant vanishes at n = {}; no orthogonal family exists",
            cas.witness.unwrap_or(0)
        );
        return Ok(1);
    }
    let result = match construct_with(spec, &r, &cas, loaded.upto) {
        Ok(result) => result,
        Err(e) if math_failure(&e) => {
            eprintln!("error: {e}");
            return Ok(1);
        }
        Err(e) => return Err(e.to_string()),
    };
    let doc = ConstructDoc {
        alpha: spec.alpha(),
        m: spec.m(),
        r: r.polys().iter().map(poly_to_strings).collect(),
        omega: poly_to_strings(&cas.omega),
        root_free: cas.root_free,
        witness: cas.witness,
        q: result.qpolys.iter().map(poly_to_strings).collect(),
        betas: result
            .betas
            .iter()
            .map(|row| row.iter().map(format_rational).collect())
            .collect(),
    };
    let body = match cli.format {
        Format::Json => to_json(&doc)?,
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("alpha = {}, m = {}\n", spec.alpha(), spec.m()));
            for (i, p) in r.polys().iter().enumerate() {
                out.push_str(&format!("R_{}(x) = {p}\n", i + 1));
            }
            out.push_str(&format!("Omega(x) = {}\n", cas.omega));
            out.push_str(&format!("root-free on n >= 0: {}\n", cas.root_free));
            for (n, q) in result.qpolys.iter().enumerate() {
                out.push_str(&format!("q_{n}(x) = {q}\n"));
            }
            out
        }
    };
    emit(cli, body)?;
    Ok(0)
}

fn operator_doc(bundle: &OperatorBundle, upto: u64) -> OperatorDoc {
    OperatorDoc {
        s: poly_to_strings(&bundle.s),
        ps: poly_to_strings(&bundle.ps),
        mh: bundle.mh.iter().map(poly_to_strings).collect(),
        d: bundle.op.coeffs().iter().map(poly_to_strings).collect(),
        order: bundle.op.order().unwrap_or(0),
        eigenvalues: (0..=upto)
            .map(|n| format_rational(&bundle.eigenvalue(n)))
            .collect(),
    }
}

fn cmd_operator(cli: &Cli) -> Result<u8, String> {
    let loaded = load_spec(cli)?;
    let spec = &loaded.spec;
    let r = build_r(spec);
    let cas = casorati(&r).map_err(|e| e.to_string())?;
    let bundle = match assemble_dqs_with(spec, &r, &cas, &loaded.s) {
        Ok(bundle) => bundle,
        Err(e) if math_failure(&e) => {
            eprintln!("error: {e}");
            return Ok(1);
        }
        Err(e) => return Err(e.to_string()),
    };
    let doc = operator_doc(&bundle, loaded.upto);
    let body = match cli.format {
        Format::Json => to_json(&doc)?,
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("S(x) = {}\n", bundle.s));
            out.push_str(&format!("P_S(x) = {}\n", bundle.ps));
            for (i, p) in bundle.mh.iter().enumerate() {
                out.push_str(&format!("M_{}(x) = {p}\n", i + 1));
            }
            out.push_str(&format!("order(D) = {}\n", doc.order));
            for (j, f) in bundle.op.coeffs().iter().enumerate() {
                if !f.is_zero() {
                    out.push_str(&format!("D coefficient of d^{j}/dx^{j}: {f}\n"));
                }
            }
            out.push_str("eigenvalues P_S(n):\n");
            for (n, v) in doc.eigenvalues.iter().enumerate() {
                out.push_str(&format!("  lambda_{n} = {v}\n"));
            }
            out
        }
    };
    emit(cli, body)?;
    Ok(0)
}

fn cmd_awr(cli: &Cli) -> Result<u8, String> {
    let loaded = load_spec(cli)?;
    let spec = &loaded.spec;
    let wr = weighted_rank(spec.mass(), spec.alpha()).map_err(|e| e.to_string())?;
    let doc = AwrDoc {
        nj: wr.nj.clone(),
        mj: wr.mj.clone(),
        awr: wr.value,
    };
    let body = match cli.format {
        Format::Json => to_json(&doc)?,
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("n_j = {:?}\n", wr.nj));
            out.push_str(&format!("m_j = {:?}\n", wr.mj));
            out.push_str(&format!(
                "reduced matrix ({} columns kept): {:?}\n",
                wr.mtilde.cols(),
                matrix_to_strings(&wr.mtilde)
            ));
            out.push_str(&format!("awr(M) = {}\n", wr.value));
            out
        }
    };
    emit(cli, body)?;
    Ok(0)
}

fn report_body(cli: &Cli, report: &Report) -> Result<String, String> {
    Ok(match cli.format {
        Format::Json => to_json(report)?,
        Format::Text => {
            let mut out = String::new();
            for c in &report.checks {
                if c.passed {
                    out.push_str(&format!("PASS {}\n", c.name));
                } else {
                    out.push_str(&format!(
                        "FAIL {} (expected {}, got {}, residual {})\n",
                        c.name, c.expected, c.actual, c.residual
                    ));
                }
            }
            for t in &report.timings {
                out.push_str(&format!("time {}: {} ms\n", t.phase, t.millis));
            }
            out.push_str(&format!(
                "status: {}\n",
                if report.passed() { "pass" } else { "fail" }
            ));
            out
        }
    })
}

fn cmd_verify(cli: &Cli) -> Result<u8, String> {
    let loaded = load_spec(cli)?;
    let report = match verify_all(&loaded.spec, &loaded.s, loaded.upto) {
        Ok(report) => report,
        Err(e) if math_failure(&e) => {
            eprintln!("error: {e}");
            return Ok(1);
        }
        Err(e) => return Err(e.to_string()),
    };
    emit(cli, report_body(cli, &report)?)?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn poly_diff_check(name: &str, expected: &Poly, actual: &Poly) -> CheckResult {
    let residual = actual - expected;
    CheckResult::residual_check(
        name,
        expected.to_string(),
        actual.to_string(),
        residual.to_string(),
        residual.is_zero(),
    )
}

fn cmd_reproduce(cli: &Cli) -> Result<u8, String> {
    let spec = reference_spec();
    let data = reference_data();
    let r = build_r(&spec);
    let cas = casorati(&r).map_err(|e| e.to_string())?;
    let bundle = assemble_dqs_with(&spec, &r, &cas, &Poly::one()).map_err(|e| e.to_string())?;
    let wr = weighted_rank(spec.mass(), spec.alpha()).map_err(|e| e.to_string())?;

    let mut checks = Vec::new();
    for (i, expected) in data.r.iter().enumerate() {
        checks.push(poly_diff_check(&format!("R_{}", i + 1), expected, r.poly(i + 1)));
    }
    checks.push(poly_diff_check("Omega", &data.omega, &cas.omega));
    checks.push(poly_diff_check("P_S", &data.ps, &bundle.ps));
    for (i, expected) in data.mh.iter().enumerate() {
        checks.push(poly_diff_check(&format!("M_{}", i + 1), expected, &bundle.mh[i]));
    }
    checks.push(CheckResult::boolean_check(
        "order",
        data.order.to_string(),
        bundle.op.order().map(|o| o.to_string()).unwrap_or_default(),
        bundle.op.order() == Some(data.order),
    ));
    checks.push(CheckResult::boolean_check(
        "awr",
        data.awr.to_string(),
        wr.value.to_string(),
        wr.value == data.awr,
    ));
    checks.push(CheckResult::boolean_check(
        "nj",
        format!("{:?}", data.nj),
        format!("{:?}", wr.nj),
        wr.nj == data.nj,
    ));
    checks.push(CheckResult::boolean_check(
        "mj",
        format!("{:?}", data.mj),
        format!("{:?}", wr.mj),
        wr.mj == data.mj,
    ));
    let report = Report::from_checks(checks);
    emit(cli, report_body(cli, &report)?)?;
    Ok(if report.passed() { 0 } else { 1 })
}
