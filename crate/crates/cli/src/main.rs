mod graphspec;
mod output;

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use flowcat_core::closedform::{thm1_volume, thm2_volume, thm3_volume};
use flowcat_core::ctengine::{catalan_polytope_ct, constant_term_with, morris_ct, tesler_ct_with, CTIntegrand};
use flowcat_core::faces::{enumerate_tableaux_with, f_vector, tableau_to_forest, FaceLimits};
use flowcat_core::lidskii::{ehrhart_polynomial_with, lidskii_points_with, lidskii_volume_with};
use flowcat_core::verify::{run_suite, Suite, SweepConfig};
use flowcat_core::{kostant, Error, Exec, NetflowVector};

use graphspec::{parse_graph, parse_list, recognize, Family};
use output::{Format, Report};

const MAX_CELLS_VAR: &str = "FLOWCAT_MAX_CELLS";
const DEFAULT_MAX_CELLS: usize = 2_000_000;

#[derive(Parser)]
#[command(name = "flowcat", version, about = "Exact volumes, lattice points and faces of flow polytopes")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized volume of F_G(a), by one or more methods.
    Volume {
        #[command(flatten)]
        target: Target,
        #[arg(long = "method", value_enum, default_values_t = [Method::Lidskii])]
        methods: Vec<Method>,
    },
    /// Number of integer points of F_G(a).
    Points {
        #[command(flatten)]
        target: Target,
        #[arg(long = "method", value_enum, default_values_t = [PointMethod::Lidskii, PointMethod::Kostant])]
        methods: Vec<PointMethod>,
    },
    /// Vertices of F_{K_{n+1}}(a, -sum a) via dimension-0 Tesler tableaux.
    Vertices {
        #[command(flatten)]
        faces: FaceArgs,
        #[arg(long, conflicts_with = "enumerate")]
        count_only: bool,
        /// List every vertex as a tableau and its decreasing forest.
        #[arg(long)]
        enumerate: bool,
    },
    /// Number of faces of each dimension of F_{K_{n+1}}(a, -sum a).
    Fvector {
        #[command(flatten)]
        faces: FaceArgs,
    },
    /// Iterated constant term of an integrand given as JSON.
    Ct {
        /// Integrand JSON.
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        integrand: Option<String>,
        /// File containing integrand JSON.
        #[arg(long)]
        file: Option<String>,
    },
    /// Run a cross-checking sweep.
    Verify {
        /// One of thm1, thm2, thm3, morris, lemma-gen, lemma-expand, faces,
        /// lidskii-vs-ehrhart, or `all`.
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
    },
}

#[derive(Args)]
struct Target {
    /// complete:<v> | morris:<v>,<a>,<b>,<m> | tesler:<v>,<a>,<b> | file:<path>
    #[arg(long)]
    graph: String,
    /// Comma-separated netflow, one entry per vertex, summing to zero.
    #[arg(long, allow_hyphen_values = true)]
    netflow: String,
}

#[derive(Args)]
struct FaceArgs {
    /// Nonnegative prefix a_1,...,a_n; a trailing balancing entry is dropped.
    #[arg(long, allow_hyphen_values = true)]
    netflow: String,
    #[arg(long, default_value_t = FaceLimits::default().max_n)]
    max_n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Lidskii,
    Ehrhart,
    Ct,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PointMethod {
    Lidskii,
    Kostant,
}

enum Failure {
    Input(String),
    /// Message plus whatever was computed before the mismatch showed up.
    Verification(String, Option<Report>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let format = cli.format;
    let result = max_cells().and_then(|cells| run(cli.command, exec, cells));
    match result {
        Ok(report) => {
            if report.print(format).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg, report)) => {
            if let Some(r) = report {
                let _ = r.print(format);
            }
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}

fn max_cells() -> std::result::Result<usize, Failure> {
    match std::env::var(MAX_CELLS_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("{MAX_CELLS_VAR} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_CELLS),
    }
}

fn run(command: Command, exec: Exec, cells: usize) -> Outcome {
    match command {
        Command::Volume { target, methods } => volume(&target, &methods, exec),
        Command::Points { target, methods } => points(&target, &methods, exec),
        Command::Vertices { faces, enumerate, .. } => vertices(&faces, enumerate, exec, cells),
        Command::Fvector { faces } => fvector(&faces, cells),
        Command::Ct { integrand, file } => ct(integrand, file, exec),
        Command::Verify { suite, max_n } => verify(&suite, max_n, exec, cells),
    }
}

fn netflow_list(s: &str) -> std::result::Result<Vec<i64>, Failure> {
    parse_list(s).map_err(|_| Failure::Input(format!("netflow `{s}` is not a comma-separated integer list")))
}

fn record(headline: String, fields: Vec<(&str, Value)>) -> Report {
    let fields: BTreeMap<String, Value> = fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    Report::Record { headline, fields }
}

fn method_name<T: ValueEnum>(m: &T) -> String {
    m.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn agreement(values: &BTreeMap<String, String>) -> bool {
    let mut it = values.values();
    let first = it.next();
    it.all(|v| Some(v) == first)
}

fn volume(target: &Target, methods: &[Method], exec: Exec) -> Outcome {
    let parsed = parse_graph(&target.graph)?;
    let a = NetflowVector::new(netflow_list(&target.netflow)?)?;
    a.check_for(&parsed.graph)?;
    let family = recognize(&parsed.kind, &a);
    let no_formula = |m: Method| {
        Failure::Input(format!(
            "method `{}` has no formula for {} with this netflow",
            method_name(&m),
            target.graph
        ))
    };
    let mut values = BTreeMap::new();
    let mut headline = None;
    for &m in methods {
        let v = match (m, family) {
            (Method::Lidskii, _) => lidskii_volume_with(&parsed.graph, &a, exec)?.to_string(),
            (Method::Ehrhart, _) => ehrhart_polynomial_with(&parsed.graph, &a, exec)?
                .normalized_volume()
                .to_string(),
            (Method::Ct, Some(Family::TwoSource { n })) => catalan_polytope_ct(n)?.to_string(),
            (Method::Ct, Some(Family::Morris { n, a, b, m })) => morris_ct(n - 1, a - 1, b, m)?.to_string(),
            (Method::Ct, Some(Family::Tesler { n, a, b })) => tesler_ct_with(n, a, b, exec)?.to_string(),
            (Method::Closed, Some(Family::TwoSource { n })) => thm1_volume(n as u64)?.to_string(),
            (Method::Closed, Some(Family::Morris { n, a, b, m })) => thm2_volume(n as u64, a, b, m)?.to_string(),
            (Method::Closed, Some(Family::Tesler { n, a, b })) => thm3_volume(n as u64, a, b)?.to_string(),
            (m, None) => return Err(no_formula(m)),
        };
        headline.get_or_insert_with(|| v.clone());
        values.insert(method_name(&m), v);
    }
    let agree = agreement(&values);
    let headline = headline.unwrap_or_default();
    let report = record(
        headline.clone(),
        vec![
            ("volume", Value::String(headline)),
            ("agreement", Value::Bool(agree)),
            ("methods", json!(values)),
            ("graph", Value::String(target.graph.clone())),
            ("netflow", json!(a.entries())),
        ],
    );
    if !agree {
        return Err(Failure::Verification(format!("methods disagree: {values:?}"), Some(report)));
    }
    Ok(report)
}

fn points(target: &Target, methods: &[PointMethod], exec: Exec) -> Outcome {
    let parsed = parse_graph(&target.graph)?;
    let a = NetflowVector::new(netflow_list(&target.netflow)?)?;
    a.check_for(&parsed.graph)?;
    let mut values = BTreeMap::new();
    for m in methods {
        let v = match m {
            PointMethod::Lidskii => lidskii_points_with(&parsed.graph, &a, exec)?,
            PointMethod::Kostant => kostant(&parsed.graph, a.entries())?,
        };
        values.insert(method_name(m), v.to_string());
    }
    let agree = agreement(&values);
    let headline = values.values().next().cloned().unwrap_or_default();
    let report = record(
        headline.clone(),
        vec![
            ("points", Value::String(headline)),
            ("agreement", Value::Bool(agree)),
            ("methods", json!(values)),
        ],
    );
    if !agree {
        return Err(Failure::Verification(format!("methods disagree: {values:?}"), Some(report)));
    }
    Ok(report)
}

/// The prefix `a`, dropping a final entry that balances it.
fn face_prefix(s: &str) -> std::result::Result<Vec<i64>, Failure> {
    let mut v = netflow_list(s)?;
    if v.len() >= 2 && v.iter().sum::<i64>() == 0 && v.last().is_some_and(|&x| x < 0) {
        v.pop();
    }
    if let Some(x) = v.iter().find(|&&x| x < 0) {
        return Err(Failure::Input(format!("face netflow entries must be nonnegative, found {x}")));
    }
    Ok(v)
}

fn vertices(args: &FaceArgs, enumerate: bool, exec: Exec, cells: usize) -> Outcome {
    let a = face_prefix(&args.netflow)?;
    let limits = FaceLimits { max_n: args.max_n, max_items: cells };
    if !enumerate {
        let count = f_vector(&a, limits)?[0].to_string();
        return Ok(record(count.clone(), vec![("count", Value::String(count))]));
    }
    let tableaux = enumerate_tableaux_with(&a, limits, Some(0), exec)?;
    let mut list = Vec::with_capacity(tableaux.len());
    for (t, _) in &tableaux {
        let forest = tableau_to_forest(t, &a)?;
        list.push(json!({ "tableau": t, "forest": forest }));
    }
    let count = tableaux.len().to_string();
    Ok(record(
        count.clone(),
        vec![("count", Value::String(count)), ("vertices", Value::Array(list))],
    ))
}

fn fvector(args: &FaceArgs, cells: usize) -> Outcome {
    let a = face_prefix(&args.netflow)?;
    let limits = FaceLimits { max_n: args.max_n, max_items: cells };
    let f: Vec<String> = f_vector(&a, limits)?.iter().map(|c| c.to_string()).collect();
    Ok(record(f.join(" "), vec![("f_vector", json!(f))]))
}

fn ct(inline: Option<String>, file: Option<String>, exec: Exec) -> Outcome {
    let text = match (inline, file) {
        (Some(s), _) => s,
        (None, Some(path)) => {
            fs::read_to_string(&path).map_err(|e| Failure::Input(format!("cannot read `{path}`: {e}")))?
        }
        (None, None) => return Err(Failure::Input("give --integrand or --file".into())),
    };
    let f: CTIntegrand = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("bad integrand: {e}")))?;
    let v = constant_term_with(&f, exec)?.to_string();
    Ok(record(v.clone(), vec![("constant_term", Value::String(v))]))
}

fn verify(suite: &str, max_n: Option<usize>, exec: Exec, cells: usize) -> Outcome {
    let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
    let cfg = SweepConfig {
        max_n,
        exec,
        limits: FaceLimits { max_items: cells, ..FaceLimits::default() },
        max_matrices: cells,
    };
    let mut checks = Vec::new();
    for s in suites {
        checks.extend(run_suite(s, &cfg)?);
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| {
            let values: Vec<String> = c.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
            vec![
                if c.pass { "PASS" } else { "FAIL" }.to_string(),
                c.suite.to_string(),
                c.case.clone(),
                values.join(";"),
            ]
        })
        .collect();
    let json = json!({
        "checks": checks,
        "failed": failed,
        "passed": checks.len() - failed,
    });
    let report = Report::Table {
        columns: ["status", "suite", "case", "values"].map(String::from).to_vec(),
        rows,
        json,
    };
    if failed > 0 {
        let msg = format!("{failed} of {} checks failed", checks.len());
        return Err(Failure::Verification(msg, Some(report)));
    }
    Ok(report)
}
