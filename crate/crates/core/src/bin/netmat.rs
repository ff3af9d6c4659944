//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage, validation or failed check, 2 singular
//! interior block in `kron`, 3 file I/O.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use netmat::builders::{build_all, TopologyMatrices, MATRIX_NAMES};
use netmat::checks::run_suite_on;
use netmat::electrical::{ResistiveNetwork, VoltageProfile};
use netmat::graph::{NetworkSystem, NodeLabel, Tier};
use netmat::io::{
    emit_matrix, parse_inline_voltages, parse_voltage_csv, read_document, GraphDocument, IoError, MatrixFormat,
};
use netmat::kron::{kron_reduce_system, KronError};
use netmat::scalar::{Backend, Rational, Scalar, DEFAULT_EPS};

const BACKEND_ENV: &str = "NETMAT_BACKEND";

#[derive(Parser)]
#[command(
    name = "netmat",
    version,
    about = "Topology matrices, identity checks, Kron reduction and power analysis for weighted digraphs"
)]
struct Cli {
    /// Scalar backend; defaults to $NETMAT_BACKEND, then to the command's own default
    #[arg(long, global = true)]
    backend: Option<Backend>,

    /// Absolute tolerance for float comparisons
    #[arg(long, global = true, default_value_t = DEFAULT_EPS)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print topology matrices (default backend: rational)
    Matrices(MatricesArgs),
    /// Run the identity checks (default backend: rational)
    Check(CheckArgs),
    /// Kron-reduce the Laplacian onto the leading boundary nodes (default backend: float)
    Kron(KronArgs),
    /// Currents and power dissipation for a voltage profile (default backend: float)
    Power(PowerArgs),
    /// Check a system against a validation tier
    Validate(ValidateArgs),
}

#[derive(Args)]
struct MatricesArgs {
    graph: PathBuf,
    /// A, Dout, Din, L, K, Iout, Iin, W or all
    #[arg(long, default_value = "all")]
    which: String,
    #[arg(long, default_value = "json")]
    format: MatrixFormat,
}

#[derive(Args)]
struct CheckArgs {
    graph: PathBuf,
    /// Also list the checks that do not apply and why
    #[arg(long)]
    suite: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct KronArgs {
    graph: PathBuf,
    /// Number of leading nodes kept; defaults to the document's partition
    #[arg(long)]
    boundary: Option<usize>,
    /// Comma-separated labels moved to the front of the node order first
    #[arg(long, value_delimiter = ',')]
    reorder: Vec<String>,
    #[arg(long, default_value = "json")]
    format: MatrixFormat,
}

#[derive(Args)]
struct PowerArgs {
    graph: PathBuf,
    /// A one-column CSV file, or inline comma-separated values such as 3,1;
    /// defaults to the document's voltages
    #[arg(long, allow_hyphen_values = true)]
    voltages: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ValidateArgs {
    graph: PathBuf,
    #[arg(long)]
    tier: Tier,
}

/// A command's result: text for stdout and stderr plus the exit code.
struct Outcome {
    stdout: String,
    stderr: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn fail(code: u8, message: impl std::fmt::Display) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code,
        }
    }
}

fn io_failure(e: IoError) -> Outcome {
    let code = if e.is_file_error() { 3 } else { 1 };
    Outcome::fail(code, e)
}

fn load(path: &Path) -> Result<(GraphDocument, NetworkSystem), Outcome> {
    let doc = read_document(path).map_err(io_failure)?;
    let sys = doc.to_system().map_err(io_failure)?;
    Ok((doc, sys))
}

fn backend_or(flag: Option<Backend>, fallback: Backend) -> Result<Backend, Outcome> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BACKEND_ENV) {
        Ok(v) if !v.trim().is_empty() => v.parse().map_err(|e| Outcome::fail(1, format!("{BACKEND_ENV}: {e}"))),
        _ => Ok(fallback),
    }
}

macro_rules! dispatch {
    ($backend:expr, $f:ident ( $($arg:expr),* )) => {
        match $backend {
            Backend::Rational => $f::<Rational>($($arg),*),
            Backend::Float => $f::<f64>($($arg),*),
        }
    };
}

fn run(cli: Cli) -> Result<Outcome, Outcome> {
    let eps = cli.tolerance;
    match cli.command {
        Command::Matrices(args) => {
            let backend = backend_or(cli.backend, Backend::Rational)?;
            let (_, sys) = load(&args.graph)?;
            dispatch!(backend, matrices(&sys, &args))
        }
        Command::Check(args) => {
            let backend = backend_or(cli.backend, Backend::Rational)?;
            let (_, sys) = load(&args.graph)?;
            dispatch!(backend, check(&sys, &args, eps))
        }
        Command::Kron(args) => {
            let backend = backend_or(cli.backend, Backend::Float)?;
            let (doc, sys) = load(&args.graph)?;
            dispatch!(backend, kron(&doc, &sys, &args, eps))
        }
        Command::Power(args) => {
            let backend = backend_or(cli.backend, Backend::Float)?;
            let (doc, sys) = load(&args.graph)?;
            dispatch!(backend, power(&doc, &sys, &args, eps))
        }
        Command::Validate(args) => {
            let (_, sys) = load(&args.graph)?;
            Ok(validate(&sys, args.tier))
        }
    }
}

const LOSSY_WARNING: &str =
    "warning: some exact values have no finite decimal form and were rounded; use --format json for exact output\n";

fn matrices<S: Scalar>(sys: &NetworkSystem, args: &MatricesArgs) -> Result<Outcome, Outcome> {
    let t: TopologyMatrices<S> = build_all(sys).map_err(|e| Outcome::fail(1, e))?;
    let mut out = Outcome::ok(String::new());
    let mut lossy = false;
    if args.which.eq_ignore_ascii_case("all") {
        for name in MATRIX_NAMES {
            match t.by_name(name) {
                Some(m) => {
                    let e = emit_matrix(m, args.format);
                    lossy |= e.lossy;
                    let _ = writeln!(out.stdout, "# {name} ({}x{})", m.rows(), m.cols());
                    out.stdout.push_str(&e.text);
                }
                None => {
                    let _ = writeln!(out.stdout, "# {name}: absent (system has self-loops)");
                }
            }
        }
    } else {
        let canonical = MATRIX_NAMES
            .iter()
            .find(|n| n.eq_ignore_ascii_case(&args.which))
            .ok_or_else(|| {
                Outcome::fail(
                    1,
                    format!(
                        "unknown matrix `{}` (expected one of {} or all)",
                        args.which,
                        MATRIX_NAMES.join(", ")
                    ),
                )
            })?;
        let m = t
            .by_name(canonical)
            .ok_or_else(|| Outcome::fail(1, format!("{canonical} is not defined for systems with self-loops")))?;
        let e = emit_matrix(m, args.format);
        lossy = e.lossy;
        out.stdout = e.text;
    }
    if lossy {
        out.stderr.push_str(LOSSY_WARNING);
    }
    Ok(out)
}

fn check<S: Scalar>(sys: &NetworkSystem, args: &CheckArgs, eps: f64) -> Result<Outcome, Outcome> {
    let t: TopologyMatrices<S> = build_all(sys).map_err(|e| Outcome::fail(1, e))?;
    let suite = run_suite_on(&t, sys, eps);
    let mut out = Outcome::ok(String::new());
    if args.json {
        let mut doc = serde_json::json!({
            "reports": suite.reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        });
        if args.suite {
            doc["skipped"] = serde_json::to_value(&suite.skipped).expect("serializable");
        }
        out.stdout = serde_json::to_string_pretty(&doc).expect("serializable");
        out.stdout.push('\n');
    } else {
        for r in &suite.reports {
            let _ = writeln!(out.stdout, "{r}");
        }
        if args.suite {
            for s in &suite.skipped {
                let _ = writeln!(out.stdout, "SKIP {}: {}", s.name, s.reason);
            }
        }
    }
    if !suite.all_passed() {
        out.code = 1;
    }
    Ok(out)
}

fn labels_line(labels: &[NodeLabel]) -> String {
    labels.iter().map(NodeLabel::as_str).collect::<Vec<_>>().join(",")
}

fn kron<S: Scalar>(doc: &GraphDocument, sys: &NetworkSystem, args: &KronArgs, eps: f64) -> Result<Outcome, Outcome> {
    let order: Vec<NodeLabel> = args.reorder.iter().map(|s| NodeLabel::new(s.trim())).collect();
    let (sys, perm) = sys.reordered(&order).map_err(|e| Outcome::fail(1, e))?;
    let boundary = args
        .boundary
        .or(doc.boundary_size)
        .ok_or_else(|| Outcome::fail(1, "no --boundary given and the document has no partition"))?;
    let part = sys.make_partition(boundary).map_err(|e| Outcome::fail(1, e))?;
    let res = match kron_reduce_system::<S>(&sys, &part, eps) {
        Ok(r) => r,
        Err(e @ KronError::SingularInterior { .. }) => return Err(Outcome::fail(2, e)),
        Err(e) => return Err(Outcome::fail(1, e)),
    };
    let emitted = emit_matrix(&res.reduced, args.format);
    let mut out = Outcome::ok(String::new());
    if args.format == MatrixFormat::Json {
        let doc = serde_json::json!({
            "node_order": sys.nodes().iter().map(NodeLabel::as_str).collect::<Vec<_>>(),
            "permutation": perm,
            "boundary": part.boundary().iter().map(NodeLabel::as_str).collect::<Vec<_>>(),
            "interior": part.interior().iter().map(NodeLabel::as_str).collect::<Vec<_>>(),
            "reduced": res.reduced.to_rows().iter().map(|r| r.iter().map(Scalar::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "closure": res.closure.to_json(),
            "nonneg_inverse": res.nonneg_inverse,
        });
        out.stdout = serde_json::to_string_pretty(&doc).expect("serializable");
        out.stdout.push('\n');
    } else {
        out.stdout.push_str(&emitted.text);
        out.stdout.push('\n');
        let _ = writeln!(out.stdout, "node order: {}", labels_line(sys.nodes()));
        let perm_text: Vec<String> = perm.iter().map(ToString::to_string).collect();
        let _ = writeln!(out.stdout, "permutation: {}", perm_text.join(","));
        let _ = writeln!(out.stdout, "boundary: {}", labels_line(part.boundary()));
        let _ = writeln!(out.stdout, "interior: {}", labels_line(part.interior()));
        let _ = writeln!(out.stdout, "{}", res.closure);
        if emitted.lossy {
            out.stderr.push_str(LOSSY_WARNING);
        }
    }
    if !res.closure.passed() {
        out.code = 1;
    }
    Ok(out)
}

fn power<S: Scalar>(doc: &GraphDocument, sys: &NetworkSystem, args: &PowerArgs, eps: f64) -> Result<Outcome, Outcome> {
    let values = match &args.voltages {
        Some(arg) => {
            let path = Path::new(arg);
            if path.is_file() {
                let text = std::fs::read_to_string(path).map_err(|source| {
                    io_failure(IoError::File {
                        path: arg.clone(),
                        source,
                    })
                })?;
                parse_voltage_csv(&text)
            } else {
                parse_inline_voltages(arg)
            }
            .map_err(io_failure)?
        }
        None => doc
            .voltages
            .clone()
            .ok_or_else(|| Outcome::fail(1, "no --voltages given and the document has no voltages"))?,
    };
    let net = ResistiveNetwork::<S>::new(sys).map_err(|e| Outcome::fail(1, e))?;
    let v = VoltageProfile::new(values.iter().map(S::from_rational).collect());
    let report = net.total_power(&v).map_err(|e| Outcome::fail(1, e))?;
    let mut out = Outcome::ok(if args.json {
        let mut text = serde_json::to_string_pretty(&report.to_json(sys.nodes())).expect("serializable");
        text.push('\n');
        text
    } else {
        report.to_table(sys.nodes())
    });
    if !report.consistent(eps) {
        out.code = 1;
        out.stderr.push_str("error: total power and v^T L v disagree\n");
    }
    Ok(out)
}

fn validate(sys: &NetworkSystem, tier: Tier) -> Outcome {
    match sys.validate(tier) {
        Ok(()) => Outcome::ok(format!("ok: system satisfies tier {tier}\n")),
        Err(violations) => {
            let mut out = Outcome::ok(format!("system does not satisfy tier {tier}:\n"));
            for v in violations {
                let _ = writeln!(out.stdout, "  {v}");
            }
            out.code = 1;
            out
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = run(cli).unwrap_or_else(|e| e);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code)
}
