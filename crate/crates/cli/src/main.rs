//! Command-line surface: graph input (generator names or JSON files),
//! route selection, JSON/CSV reports on stdout, diagnostics on stderr.
//!
//! Exit codes: 0 success, 1 failed verification check, 2 usage or
//! validation error, 3 enumeration budget exceeded.

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::process::ExitCode;
use zetawalk::cycles::{self, CycleError};
use zetawalk::graph::{Graph, GraphError};
use zetawalk::lattice::{self, LatticeError, QuadratureSpec};
use zetawalk::verify::{run_suite, Suite};
use zetawalk::walk::{self, WalkError, WalkState};
use zetawalk::zeta::{self, ZetaError};

#[derive(Parser)]
#[command(
    name = "zetawalk",
    version,
    about = "Ihara zeta functions, Grover walks, and the cycle-graph lattice limit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ZetaRouteArg {
    /// Reciprocal zeta polynomial from the vertex determinant
    Poly,
    /// Truncated exponential series over reduced-cycle counts
    Series,
    /// Spectral-measure evaluation (vertex-transitive regular graphs)
    Cjk,
    /// Rooted cycle series at a fixed base vertex
    Rooted,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    /// Characteristic-polynomial and spectral-mapping checks
    KonnoSato,
    /// Series/determinant/root/spectral-measure route agreement
    Routes,
    /// Quadrature limit, closed form and convergence tables
    Theorem4,
}

#[derive(Subcommand)]
enum Command {
    /// Ihara zeta function of a graph by a chosen route
    Zeta {
        /// Generator name (cycle:N, complete:N, path:N, petersen) or JSON file path
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum)]
        route: ZetaRouteArg,
        /// Truncation order for the series routes
        #[arg(long, default_value_t = 10)]
        order: usize,
        /// Evaluation point
        #[arg(long)]
        at: Option<f64>,
        /// Base vertex for the rooted route
        #[arg(long, default_value_t = 0)]
        root: usize,
        /// DFS step budget for cycle enumeration
        #[arg(long, default_value_t = cycles::DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Grover walk: spectrum, characteristic polynomial, or evolution
    #[command(group(
        ArgGroup::new("action")
            .required(true)
            .args(["spectrum", "charpoly", "evolve"])
    ))]
    Grover {
        /// Generator name or JSON file path
        #[arg(long)]
        graph: String,
        /// Report mapped and direct Grover spectra
        #[arg(long)]
        spectrum: bool,
        /// Report the exact characteristic polynomial
        #[arg(long)]
        charpoly: bool,
        /// Evolve an initial state for T steps
        #[arg(long, value_name = "T")]
        evolve: Option<usize>,
        /// Initial state: uniform, arc:IDX, or vertex:V
        #[arg(long, default_value = "uniform")]
        init: String,
    },
    /// Lattice limit of the cycle-graph zeta
    Limit {
        /// Evaluation point
        #[arg(long)]
        at: f64,
        /// Midpoint-rule node count
        #[arg(long, default_value_t = 1024)]
        nodes: usize,
        /// Cycle orders for a convergence table (comma separated)
        #[arg(long, value_delimiter = ',')]
        table: Option<Vec<usize>>,
        /// Table output format
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Run a cross-check suite; exit 1 if any check fails
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
    },
}

enum CliError {
    Usage(String),
    Budget(String),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Budget(_) => ExitCode::from(3),
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Budget(m) => m,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CycleError> for CliError {
    fn from(e: CycleError) -> Self {
        match e {
            CycleError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ZetaError> for CliError {
    fn from(e: ZetaError) -> Self {
        match e {
            ZetaError::Cycles(inner) => inner.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<WalkError> for CliError {
    fn from(e: WalkError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.exit_code()
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Zeta {
            graph,
            route,
            order,
            at,
            root,
            budget,
        } => {
            let g = load_graph(&graph)?;
            let report = match route {
                ZetaRouteArg::Poly => zeta_poly_report(&graph, &g, at),
                ZetaRouteArg::Series => zeta_series_report(&graph, &g, order, budget)?,
                ZetaRouteArg::Rooted => zeta_rooted_report(&graph, &g, root, order, budget)?,
                ZetaRouteArg::Cjk => {
                    let u = at.ok_or_else(|| {
                        CliError::Usage("--route cjk requires --at U".into())
                    })?;
                    let eval = zeta::cjk_evaluate(&g, u)?;
                    json!({
                        "command": "zeta",
                        "graph": graph,
                        "evaluation": eval,
                        "tolerance": "pairs with route poly's n-th root at 1e-10",
                    })
                }
            };
            emit(report);
            Ok(ExitCode::SUCCESS)
        }
        Command::Grover {
            graph,
            spectrum,
            charpoly,
            evolve,
            init,
        } => {
            let g = load_graph(&graph)?;
            let report = if spectrum {
                let spec = walk::grover_spectrum(&g)?;
                json!({
                    "command": "grover",
                    "graph": graph,
                    "spectrum": spec,
                    "tolerance": "mapped vs direct multisets at 1e-8",
                })
            } else if charpoly {
                let p = walk::grover_char_poly(&g);
                json!({
                    "command": "grover",
                    "graph": graph,
                    "route": "grover_det",
                    "degree": p.degree(),
                    "coefficients": p.coeff_strings(),
                })
            } else {
                let steps = evolve.expect("clap group guarantees one action");
                let psi0 = parse_init(&g, &init)?;
                let u = walk::grover_matrix(&g);
                let psi = walk::evolve(&u, &psi0, steps)?;
                let amplitudes: Vec<[f64; 2]> =
                    psi.amplitudes().iter().map(|z| [z.re, z.im]).collect();
                json!({
                    "command": "grover",
                    "graph": graph,
                    "init": init,
                    "t": psi.time(),
                    "norm": psi.norm(),
                    "amplitudes": amplitudes,
                })
            };
            emit(report);
            Ok(ExitCode::SUCCESS)
        }
        Command::Limit {
            at,
            nodes,
            table,
            format,
        } => {
            let spec = QuadratureSpec::midpoint(nodes)?;
            if let Some(orders) = table {
                let t = lattice::theorem4_table(at, &orders)?;
                match format {
                    FormatArg::Csv => print!("{}", t.to_csv()),
                    FormatArg::Json => emit(serde_json::to_value(&t).expect("serializable")),
                }
            } else {
                let report = json!({
                    "command": "limit",
                    "u": at,
                    "nodes": nodes,
                    "quadrature": lattice::limit_reciprocal_quadrature(at, &spec),
                    "laplacian_form": lattice::laplacian_form_reciprocal(at, &spec),
                    "closed_form": lattice::limit_reciprocal_closed_form(at),
                });
                emit(report);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite } => {
            let suite = match suite {
                SuiteArg::KonnoSato => Suite::KonnoSato,
                SuiteArg::Routes => Suite::Routes,
                SuiteArg::Theorem4 => Suite::Theorem4,
            };
            let report = run_suite(suite);
            let passed = report.passed;
            emit(serde_json::to_value(&report).expect("serializable"));
            if passed {
                Ok(ExitCode::SUCCESS)
            } else {
                for failure in report.failures() {
                    eprintln!("FAIL {}: {}", failure.name, failure.detail);
                }
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn zeta_poly_report(source: &str, g: &Graph, at: Option<f64>) -> Value {
    let p = zeta::ihara_reciprocal_polynomial(g);
    let mut report = json!({
        "command": "zeta",
        "graph": source,
        "route": "ihara_bass",
        "degree": p.degree(),
        "coefficients": p.coeff_strings(),
    });
    if let Some(u) = at {
        let eval = zeta::ZetaEvaluation::real(u, p.eval_f64(u), zeta::Route::IharaBass);
        report["evaluation"] = serde_json::to_value(eval).expect("serializable");
    }
    report
}

fn zeta_series_report(
    source: &str,
    g: &Graph,
    order: usize,
    budget: u64,
) -> Result<Value, CliError> {
    let counts = cycles::count_reduced_cycles_with_budget(g, order, budget)?;
    let series = zeta::series_from_counts(&counts, order);
    Ok(json!({
        "command": "zeta",
        "graph": source,
        "route": "series",
        "order": order,
        "cycle_counts": counts,
        "coefficients": series.coeff_strings(),
    }))
}

fn zeta_rooted_report(
    source: &str,
    g: &Graph,
    root: usize,
    order: usize,
    budget: u64,
) -> Result<Value, CliError> {
    let counts = cycles::count_rooted_reduced_cycles_with_budget(g, root, order, budget)?;
    let series = zeta::series_from_counts(&counts, order);
    Ok(json!({
        "command": "zeta",
        "graph": source,
        "route": "series",
        "root": root,
        "order": order,
        "cycle_counts": counts,
        "coefficients": series.coeff_strings(),
    }))
}

fn load_graph(source: &str) -> Result<Graph, CliError> {
    let looks_generated = source == "petersen"
        || ["cycle:", "complete:", "path:"]
            .iter()
            .any(|p| source.starts_with(p));
    if looks_generated {
        return Ok(Graph::from_name(source)?);
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| CliError::Usage(format!("cannot read graph file {source:?}: {e}")))?;
    Ok(Graph::from_json(&text)?)
}

fn parse_init(g: &Graph, init: &str) -> Result<WalkState, CliError> {
    if init == "uniform" {
        return Ok(WalkState::uniform(g));
    }
    if let Some(idx) = init.strip_prefix("arc:") {
        let arc: usize = idx
            .parse()
            .map_err(|_| CliError::Usage(format!("bad arc index in --init {init:?}")))?;
        return Ok(WalkState::single_arc(g, arc)?);
    }
    if let Some(idx) = init.strip_prefix("vertex:") {
        let v: usize = idx
            .parse()
            .map_err(|_| CliError::Usage(format!("bad vertex in --init {init:?}")))?;
        return Ok(WalkState::uniform_incoming(g, v)?);
    }
    Err(CliError::Usage(format!(
        "unknown --init {init:?} (expected uniform, arc:IDX or vertex:V)"
    )))
}

/// Prints a report with every float rounded to 15 significant digits.
fn emit(mut report: Value) {
    round_floats(&mut report);
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
}

fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if n.is_f64() {
                let x = n.as_f64().expect("checked f64");
                if let Some(rounded) = serde_json::Number::from_f64(zetawalk::round_sig15(x)) {
                    *n = rounded;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}
