//! Command line surface over the toolkit: loads a category from a file or
//! the built-in corpus, runs one computation, and reports exactly.  Every
//! scalar is printed in its exact form; human mode adds a floating
//! approximation, `--json` emits the self-describing encodings instead.
//!
//! Exit codes are a stable contract: 0 success, 1 domain or validation
//! failure, 2 usage or parse error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tckit::bordism::circle::{circle_invariant, NormalSide};
use tckit::bordism::rewrite::DEFAULT_REWRITE_BUDGET;
use tckit::bordism::words::{check_goal, describe_value, eval, GoalOutcome, Statement, WordError};
use tckit::bordism::{point_signature, PointSignature};
use tckit::examples::{builtin, BUILTIN_NAMES};
use tckit::io::{
    category_to_string, field_from_arg, field_to_json, load_category, load_polygon,
    load_word_file, scalar_to_json, IoError,
};
use tckit::{
    double_dual_gauge, frobenius_axioms_check, frobenius_data, global_dimension,
    pivotal_structures, quadruple_dual_check, separability_check, spherical_check, squared_norm,
    window_element, DualityChoices, FSymbolTable, PivotalStructure, Scalar,
};

#[derive(Parser)]
#[command(name = "tckit", version, about = "Exact computations on fusion category data")]
struct Cli {
    /// Emit machine-readable JSON instead of the human report
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a category and run the full validation stack
    Validate(TableArgs),
    /// Global dimension: the sum of the squared norms
    Gdim(TableArgs),
    /// Squared norm of every label
    Norms(TableArgs),
    /// Enumerate the pivotal structures
    Pivotal(TableArgs),
    /// Sphericality verdict for every pivotal structure
    Spherical(TableArgs),
    /// Trivialize the quadruple dual and report the witness
    Quaddual(TableArgs),
    /// The window element of the standard Frobenius data
    Window(TableArgs),
    /// Separability: is the global dimension nonzero in this field?
    Separable(TableArgs),
    /// Verify the Frobenius pairing axioms for the standard data
    FrobeniusCheck(TableArgs),
    /// Turning invariant of an immersed polygon loop
    CircleInvariant {
        /// Polygon file: one `x y` rational pair per line
        polygon: PathBuf,
        /// Which normal framing to read the count against
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Bordism word engine
    Bordism {
        #[command(subcommand)]
        command: BordismCommand,
    },
    /// The built-in category corpus
    Builtin {
        #[command(subcommand)]
        command: BuiltinCommand,
    },
}

#[derive(Subcommand)]
enum BordismCommand {
    /// Evaluate a word file: report cells and prove the stated goals
    Check {
        /// Word file: one expression or `lhs => rhs` goal per line
        word_file: PathBuf,
        /// Print every rewrite step of each proof
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Subcommand)]
enum BuiltinCommand {
    /// List the available built-in categories
    List,
    /// Print a built-in category in the file format
    Export {
        name: String,
        /// Coefficient field override: rational, cyclotomic:N, prime:P
        #[arg(long)]
        field: Option<String>,
    },
}

#[derive(Args)]
struct TableArgs {
    /// Category file to load
    file: Option<PathBuf>,
    /// Use a built-in table instead of a file
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
    /// Coefficient field override: rational, cyclotomic:N, prime:P
    #[arg(long, requires = "builtin")]
    field: Option<String>,
    /// Skip the pentagon check when loading a file
    #[arg(long)]
    skip_pentagon: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

enum CliError {
    /// Malformed input or arguments: exit 2.
    Usage(String),
    /// The computation itself rejected the data: exit 1.
    Domain(String),
}

impl CliError {
    fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        if e.is_parse() {
            CliError::Usage(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

impl TableArgs {
    fn load(&self) -> Result<(String, FSymbolTable), CliError> {
        if let Some(name) = &self.builtin {
            let field = self.field.as_deref().map(field_from_arg).transpose()?;
            let table = builtin(name, field).map_err(|e| match e {
                tckit::examples::ExampleError::UnknownBuiltin(_) => CliError::Usage(e.to_string()),
                _ => CliError::Domain(e.to_string()),
            })?;
            Ok((name.clone(), table))
        } else if let Some(path) = &self.file {
            Ok(load_category(path, self.skip_pentagon)?)
        } else {
            Err(CliError::Usage("give a category file or --builtin NAME".into()))
        }
    }
}

/// Exact value plus a floating approximation where the field embeds in
/// the complex numbers.
fn human_scalar(s: &Scalar) -> String {
    match s.approx() {
        Some((re, im)) if im.abs() > 1e-9 => format!("{s} (approx {re:.6}{im:+.6}i)"),
        Some((re, _)) => format!("{s} (approx {re:.6})"),
        None => s.to_string(),
    }
}

fn rewrite_budget() -> Result<usize, CliError> {
    match std::env::var("TCKIT_REWRITE_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("TCKIT_REWRITE_BUDGET must be an integer, got {v:?}"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_REWRITE_BUDGET),
        Err(e) => Err(CliError::Usage(format!("TCKIT_REWRITE_BUDGET: {e}"))),
    }
}

fn print_json(v: &Value) {
    println!("{v}");
}

fn transport(
    table: &FSymbolTable,
) -> Result<(DualityChoices, tckit::structures::DoubleDualGauge), CliError> {
    let choices = DualityChoices::standard(table).map_err(CliError::domain)?;
    let gauge = double_dual_gauge(table, &choices).map_err(CliError::domain)?;
    Ok((choices, gauge))
}

fn pivotal_line(table: &FSymbolTable, p: &PivotalStructure) -> String {
    let ring = table.ring();
    (0..ring.rank())
        .map(|i| format!("{}: {}", ring.name(i), p.coefficient(i)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn pivotal_json(p: &PivotalStructure) -> Value {
    Value::Array(p.coefficients().iter().map(scalar_to_json).collect())
}

fn cmd_validate(args: &TableArgs, as_json: bool) -> Result<(), CliError> {
    let (name, table) = args.load()?;
    let ring = table.ring();
    let pentagon = args.builtin.is_some() || !args.skip_pentagon;
    if as_json {
        print_json(&json!({
            "name": name,
            "field": field_to_json(table.field()),
            "rank": ring.rank(),
            "labels": ring.names(),
            "admissible_triples": ring.admissible_triples().len(),
            "pentagon_checked": pentagon,
            "valid": true,
        }));
    } else {
        let suffix = if pentagon { "pentagon verified" } else { "pentagon skipped" };
        println!(
            "ok: {name} over {}, rank {}, {} admissible triples, {suffix}",
            table.field(),
            ring.rank(),
            ring.admissible_triples().len()
        );
    }
    Ok(())
}

fn cmd_gdim(args: &TableArgs, as_json: bool) -> Result<(), CliError> {
    let (name, table) = args.load()?;
    let dim = global_dimension(&table).map_err(CliError::domain)?;
    if as_json {
        print_json(&json!({ "name": name, "global_dimension": scalar_to_json(&dim) }));
    } else {
        println!("{}", human_scalar(&dim));
    }
    Ok(())
}

fn cmd_norms(args: &TableArgs, as_json: bool) -> Result<(), CliError> {
    let (name, table) = args.load()?;
    let ring = table.ring();
    let norms: Vec<Scalar> = (0..ring.rank())
        .map(|x| squared_norm(&table, x).map_err(CliError::domain))
        .collect::<Result<_, _>>()?;
    if as_json {
        let list: Vec<Value> = norms
            .iter()
            .enumerate()
            .map(|(x, n)| json!({ "label": ring.name(x), "squared_norm": scalar_to_json(n) }))
            .collect();
        print_json(&json!({ "name": name, "norms": list }));
    } else {
        for (x, n) in norms.iter().enumerate() {
            println!("{}: {}", ring.name(x), human_scalar(n));
        }
    }
    Ok(())
}

fn cmd_pivotal(args: &TableArgs, as_json: bool) -> Result<(), CliError> {
    let (name, table) = args.load()?;
    let (_, gauge) = transport(&table)?;
    let found = pivotal_structures(&table, &gauge);
    if as_json {
        let list: Vec<Value> = found.iter().map(pivotal_json).collect();
        print_json(&json!({
            "name": name,
            "labels": table.ring().names(),
            "count": found.len(),
            "pivotals": list,
        }));
    } else {
        println!("{} pivotal structure{}", found.len(), if found.len() == 1 { "" } else { "s" });
        for (k, p) in found.iter().enumerate() {
            println!("#{}: {}", k + 1, pivotal_line(&table, p));
        }
    }
    Ok(())
}

fn cmd_spherical(args: &TableArgs, as_json: bool) -> Result<(), CliError> {
    let (name, table) = args.load()?;
    let ring = table.ring();
    let (choices, gauge) = transport(&table)?;
    let found = pivotal_structures(&table, &gauge);
    let mut rows = Vec::new();
    for p in &found {
        let report = spherical_check(&table, &choices, p);
        rows.push((p, report));
    }
    if as_json {
        let list: Vec<Value> = rows
            .iter()
            .map(|(p, r)| {
                json!({
                    "pivotal": pivotal_json(p),
                    "spherical": r.spherical,
                    "dims": r.dims.iter().map(scalar_to_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        print_json(&json!({
            "name": name,
            "labels": ring.names(),
            "count": rows.len(),
            "reports": list,
        }));
    } else {
        println!("{} pivotal structure{}", rows.len(), if rows.len() == 1 { "" } else { "s" });
        for (k, (p, r)) in rows.iter().enumerate() {
            let verdict = if r.spherical { "spherical" } else { "not spherical" };
            println!("#{}: {} [{}]", k + 1, verdict, pivotal_line(&table, p));
            let dims = (0..ring.rank())
                .map(|i| format!("{}: {}", ring.name(i), human_scalar(&r.dims[i])))
                .collect::<Vec<_>>()
                .join(", ");
            println!("    dims {dims}");
        }
    }
    Ok(())
}

fn cmd_quaddual(args: &TableArgs, as_json: bool) -> Result<(), CliError> {
    let (name, table) = args.load()?;
    let ring = table.ring();
    let (_, gauge) = transport(&table)?;
    let report = quadruple_dual_check(&table, &gauge);
    if as_json {
        print_json(&json!({
            "name": name,
            "solvable": report.solvable,
            "distinguished": report.distinguished.map(|i| ring.name(i).to_string()),
            "labels": ring.names(),
            "witness": report
                .witness
                .as_ref()
                .map(|w| w.iter().map(scalar_to_json).collect::<Vec<_>>()),
        }));
    } else {
        println!("solvable: {}", report.solvable);
        if let Some(d) = report.distinguished {
            println!("distinguished label: {}", ring.name(d));
        }
        if let Some(w) = &report.witness {
            for (i, q) in w.iter().enumerate() {
                println!("{}: {}", ring.name(i), human_scalar(q));
            }
        }
    }
    Ok(())
}

fn cmd_window(args: &TableArgs, as_json: bool) -> Result<(), CliError> {
    let (name, table) = args.load()?;
    let w = window_element(&table).map_err(CliError::domain)?;
    if as_json {
        print_json(&json!({ "name": name, "window_element": scalar_to_json(&w) }));
    } else {
        println!("{}", human_scalar(&w));
    }
    Ok(())
}

fn cmd_separable(args: &TableArgs, as_json: bool) -> Result<(), CliError> {
    let (name, table) = args.load()?;
    let report = separability_check(&table).map_err(CliError::domain)?;
    if as_json {
        print_json(&json!({
            "name": name,
            "separable": report.separable,
            "global_dimension": scalar_to_json(&report.dimension),
        }));
    } else {
        println!("{}", report.separable);
        println!("global dimension: {}", human_scalar(&report.dimension));
    }
    Ok(())
}

fn cmd_frobenius_check(args: &TableArgs, as_json: bool) -> Result<(), CliError> {
    let (name, table) = args.load()?;
    let data = frobenius_data(&table).map_err(CliError::domain)?;
    frobenius_axioms_check(&table, &data).map_err(CliError::domain)?;
    let w = window_element(&table).map_err(CliError::domain)?;
    if as_json {
        print_json(&json!({
            "name": name,
            "axioms": "ok",
            "window_element": scalar_to_json(&w),
        }));
    } else {
        println!("ok: pairing and snake axioms hold");
        println!("window element: {}", human_scalar(&w));
    }
    Ok(())
}

fn cmd_circle(polygon: &Path, side: SideArg, as_json: bool) -> Result<(), CliError> {
    let points = load_polygon(polygon)?;
    let normal = match side {
        SideArg::Left => NormalSide::Left,
        SideArg::Right => NormalSide::Right,
    };
    let t = circle_invariant(&points, normal).map_err(CliError::domain)?;
    if as_json {
        let side_name = match side {
            SideArg::Left => "left",
            SideArg::Right => "right",
        };
        print_json(&json!({ "invariant": t, "side": side_name, "vertices": points.len() }));
    } else {
        println!("{t}");
    }
    Ok(())
}

fn goal_row(
    ps: &PointSignature,
    line: usize,
    outcome: Result<GoalOutcome, WordError>,
    trace_wanted: bool,
    as_json: bool,
) -> (Value, bool) {
    match outcome {
        Ok(GoalOutcome::ObjectsEqual(eq)) | Ok(GoalOutcome::OneCellsEqual(eq)) => {
            if !as_json {
                println!("line {line}: {}", if eq { "equal" } else { "NOT equal" });
            }
            (json!({ "line": line, "kind": "goal", "equal": eq }), eq)
        }
        Ok(GoalOutcome::Rewritten(trace)) => {
            if !as_json {
                println!("line {line}: proved in {} rewrite step{}", trace.len(),
                    if trace.len() == 1 { "" } else { "s" });
                if trace_wanted {
                    for (k, step) in trace.iter().enumerate() {
                        println!("    {:>4}  {}", k + 1, ps.sig.describe_step(step));
                    }
                }
            }
            let steps: Vec<String> = if trace_wanted {
                trace.iter().map(|s| ps.sig.describe_step(s)).collect()
            } else {
                Vec::new()
            };
            (
                json!({ "line": line, "kind": "goal", "proved": true, "steps": trace.len(),
                        "trace": steps }),
                true,
            )
        }
        Err(e) => {
            if !as_json {
                println!("line {line}: FAILED: {e}");
            }
            (json!({ "line": line, "kind": "goal", "error": e.to_string() }), false)
        }
    }
}

fn cmd_bordism_check(word_file: &Path, trace_wanted: bool, as_json: bool) -> Result<(), CliError> {
    let statements = load_word_file(word_file)?;
    let budget = rewrite_budget()?;
    let ps = point_signature();
    let mut rows = Vec::new();
    let mut failures = 0usize;
    for (line, statement) in &statements {
        match statement {
            Statement::Check(expr) => match eval(&ps, expr) {
                Ok(value) => {
                    if !as_json {
                        println!("line {line}: {}", describe_value(&ps, &value));
                    }
                    rows.push(json!({
                        "line": line, "kind": "check",
                        "value": describe_value(&ps, &value),
                    }));
                }
                Err(e) => {
                    failures += 1;
                    if !as_json {
                        println!("line {line}: FAILED: {e}");
                    }
                    rows.push(json!({ "line": line, "kind": "check", "error": e.to_string() }));
                }
            },
            Statement::Goal(lhs, rhs) => {
                let outcome = check_goal(&ps, lhs, rhs, budget);
                let (row, ok) = goal_row(&ps, *line, outcome, trace_wanted, as_json);
                if !ok {
                    failures += 1;
                }
                rows.push(row);
            }
        }
    }
    if as_json {
        print_json(&json!({
            "statements": rows,
            "budget": budget,
            "ok": failures == 0,
        }));
    }
    if failures > 0 {
        return Err(CliError::Domain(format!(
            "{failures} of {} statement{} failed",
            statements.len(),
            if statements.len() == 1 { "" } else { "s" }
        )));
    }
    Ok(())
}

fn cmd_builtin(command: &BuiltinCommand, as_json: bool) -> Result<(), CliError> {
    match command {
        BuiltinCommand::List => {
            if as_json {
                print_json(&json!({ "builtins": BUILTIN_NAMES }));
            } else {
                for name in BUILTIN_NAMES {
                    println!("{name}");
                }
            }
            Ok(())
        }
        BuiltinCommand::Export { name, field } => {
            let spec = field.as_deref().map(field_from_arg).transpose()?;
            let table = builtin(name, spec).map_err(|e| match e {
                tckit::examples::ExampleError::UnknownBuiltin(_) => CliError::Usage(e.to_string()),
                _ => CliError::Domain(e.to_string()),
            })?;
            println!("{}", category_to_string(name, &table));
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let as_json = cli.json;
    match &cli.command {
        Command::Validate(args) => cmd_validate(args, as_json),
        Command::Gdim(args) => cmd_gdim(args, as_json),
        Command::Norms(args) => cmd_norms(args, as_json),
        Command::Pivotal(args) => cmd_pivotal(args, as_json),
        Command::Spherical(args) => cmd_spherical(args, as_json),
        Command::Quaddual(args) => cmd_quaddual(args, as_json),
        Command::Window(args) => cmd_window(args, as_json),
        Command::Separable(args) => cmd_separable(args, as_json),
        Command::FrobeniusCheck(args) => cmd_frobenius_check(args, as_json),
        Command::CircleInvariant { polygon, side } => cmd_circle(polygon, *side, as_json),
        Command::Bordism { command: BordismCommand::Check { word_file, trace } } => {
            cmd_bordism_check(word_file, *trace, as_json)
        }
        Command::Builtin { command } => cmd_builtin(command, as_json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
