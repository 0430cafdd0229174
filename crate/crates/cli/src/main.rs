use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use trace_codes::analysis::{analyze, AnalysisReport};
use trace_codes::bounds::{bounds_report, BoundEntry};
use trace_codes::poly::{IrreducibleCensus, Poly};
use trace_codes::repro::{example_3_6, Ordering as ReproOrdering};
use trace_codes::sweep::{run_sweep, SweepConfig};
use trace_codes::text::parse_elem;
use trace_codes::tracecode::{qc_family, shift_by_rows};
use trace_codes::{CodeSpec, Divisor, Error, Field, Place, TraceCode};

#[derive(Parser, Debug)]
#[command(name = "trace-codes", version, about = "Build and analyze trace codes over F_q(x)")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Threads used for codeword enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Trace codes from an explicit (D, G).
    Code {
        #[command(subcommand)]
        action: CodeAction,
    },
    /// Quasi-cyclic families on the translation grid.
    Qc {
        #[command(subcommand)]
        action: QcAction,
    },
    /// Enumerate monic irreducibles and check them against the counting formulas.
    Irreducibles {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: String,
        /// Keep only polynomials whose x^(d-1) coefficient equals this element.
        #[arg(long)]
        trace: Option<String>,
    },
    /// Bound verdicts for one code or a random sweep.
    Bounds {
        #[command(subcommand)]
        action: BoundsAction,
    },
    /// Reproduce a worked example end to end.
    Repro {
        #[command(subcommand)]
        example: ReproExample,
    },
}

#[derive(Subcommand, Debug)]
enum CodeAction {
    Build(CodeInput),
}

#[derive(Subcommand, Debug)]
enum QcAction {
    Build {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: i64,
    },
}

#[derive(Subcommand, Debug)]
enum BoundsAction {
    Report {
        #[command(flatten)]
        input: CodeInput,
        /// Evaluate this many seeded random instances instead of one code.
        #[arg(long)]
        random: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum ReproExample {
    #[command(name = "example-3-6")]
    Example36 {
        #[arg(long, value_enum, default_value_t = OrderingArg::Both)]
        ordering: OrderingArg,
        /// Same as `--format json`.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OrderingArg {
    Paper,
    Theta,
    Both,
}

#[derive(Args, Debug, Default)]
struct CodeInput {
    /// JSON code spec `{"q": .., "G": .., "D": [..]}`.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Field order or field spec such as `25` or `5^2;modulus=t^2+2`.
    #[arg(long)]
    q: Option<String>,
    /// Divisor such as `2*Pinf - 1*[x+1]`.
    #[arg(long = "G")]
    g: Option<String>,
    /// File with one place per line (`[x^2+2]` or `x^2+2`).
    #[arg(long = "D-file")]
    d_file: Option<PathBuf>,
    /// Accept places whose degree is divisible by the characteristic.
    #[arg(long)]
    allow_non_coprime: bool,
}

#[derive(Debug)]
enum CliError {
    /// Invalid input or violated construction precondition.
    Input(String),
    /// Internal failure or a failed self-check.
    Failure(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::SupportOverlap(_)
            | Error::DuplicatePlace(_)
            | Error::InfinitePlaceInD(_)
            | Error::EmptyD
            | Error::NotCoprime { .. }
            | Error::GridNotCoprime { .. }
            | Error::Parse(_)
            | Error::NotPrime(_)
            | Error::NotPrimePower(_)
            | Error::NotMonic
            | Error::NotIrreducible(_)
            | Error::DegreeTooSmall
            | Error::FieldTooLarge(_)
            | Error::InvalidModulus(_)
            | Error::InvalidArgument(_) => CliError::Input(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> CliResult<String> {
    let workers = cli.workers.max(1);
    match &cli.command {
        Command::Code {
            action: CodeAction::Build(input),
        } => {
            let spec = load_spec(input)?;
            let (doc, table) = code_report(spec, workers)?;
            Ok(render(cli.format, &doc, table))
        }
        Command::Qc {
            action: QcAction::Build { p, d, r },
        } => qc_build(cli.format, *p, *d, *r, workers),
        Command::Irreducibles { d, q, trace } => irreducibles(cli.format, *d, q, trace.as_deref()),
        Command::Bounds {
            action: BoundsAction::Report { input, random },
        } => match random {
            Some(count) => {
                let mut cfg = SweepConfig::new(cli.seed, *count);
                cfg.workers = workers;
                let report = run_sweep(&cfg)?;
                let doc = serde_json::to_value(&report).map_err(|e| CliError::Failure(e.to_string()))?;
                let mut t = String::new();
                let _ = writeln!(t, "seed: {}  instances: {}", report.seed, report.cases.len());
                for (name, tally) in &report.summary {
                    let _ = writeln!(
                        t,
                        "{name:<28} holds {:>4}  vacuous {:>4}  violated {:>4}  inconclusive {:>4}",
                        tally.holds, tally.vacuous, tally.violated, tally.inconclusive
                    );
                }
                Ok(render(cli.format, &doc, t))
            }
            None => {
                let spec = load_spec(input)?;
                let (doc, table) = code_report(spec, workers)?;
                let doc = json!({
                    "schema_version": 1,
                    "spec": doc["spec"],
                    "bounds": doc["bounds"],
                });
                Ok(render(cli.format, &doc, table))
            }
        },
        Command::Repro {
            example: ReproExample::Example36 { ordering, json },
        } => {
            let orderings: &[ReproOrdering] = match ordering {
                OrderingArg::Paper => &[ReproOrdering::Printed],
                OrderingArg::Theta => &[ReproOrdering::Theta],
                OrderingArg::Both => &[ReproOrdering::Printed, ReproOrdering::Theta],
            };
            let report = example_3_6(orderings, workers)?;
            let doc = serde_json::to_value(&report).map_err(|e| CliError::Failure(e.to_string()))?;
            let format = if *json { Format::Json } else { cli.format };
            let mut t = String::new();
            for o in &report.orderings {
                let _ = writeln!(
                    t,
                    "ordering {:<6} n={} k={} d={} defect={} qc_indices={:?}",
                    o.ordering.name(),
                    o.n,
                    o.k,
                    opt(o.d),
                    opt(o.singleton_defect),
                    o.qc_indices
                );
            }
            let _ = writeln!(
                t,
                "threshold {:.6} (enclosure [{:.12}, {:.12}]), B_2 = {}",
                report.threshold.value, report.threshold.low, report.threshold.high, report.threshold.place_count
            );
            let _ = writeln!(t, "note: {}", report.threshold.note);
            let _ = writeln!(t, "exact dimension check: {}", report.exact_dimension.verdict);
            for c in &report.checks {
                let _ = writeln!(
                    t,
                    "{} {:<36} expected {:<12} got {}",
                    if c.pass { "ok  " } else { "FAIL" },
                    c.name,
                    c.expected,
                    c.actual
                );
            }
            let out = render(format, &doc, t);
            if report.passed {
                Ok(out)
            } else {
                print!("{out}");
                Err(CliError::Failure("reproduction checks failed".into()))
            }
        }
    }
}

fn render(format: Format, doc: &Value, table: String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("serializable");
            s.push('\n');
            s
        }
        Format::Table => table,
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_spec(input: &CodeInput) -> CliResult<CodeSpec> {
    if let Some(path) = &input.spec {
        if input.q.is_some() || input.g.is_some() || input.d_file.is_some() {
            return Err(CliError::Input("--spec cannot be combined with --q/--G/--D-file".into()));
        }
        let spec = CodeSpec::from_json(&read(path)?)?;
        return Ok(spec);
    }
    let (Some(q), Some(g), Some(d_file)) = (&input.q, &input.g, &input.d_file) else {
        return Err(CliError::Input("either --spec or all of --q, --G and --D-file are required".into()));
    };
    let field = Field::parse(q)?;
    let g = Divisor::parse(&field, g)?;
    let places = parse_places(&field, &read(d_file)?)?;
    let spec = if input.allow_non_coprime {
        CodeSpec::new_non_coprime(&field, places, g)?
    } else {
        CodeSpec::new(&field, places, g)?
    };
    Ok(spec)
}

/// One place per line; blank lines and `#` comments are skipped.
fn parse_places(field: &Field, text: &str) -> CliResult<Vec<Place>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            let l = if l.starts_with('[') || l == "Pinf" {
                l.to_string()
            } else {
                format!("[{l}]")
            };
            Place::parse(field, &l).map_err(CliError::from)
        })
        .collect()
}

fn analysis_or_partial(code: &TraceCode, workers: usize) -> CliResult<(AnalysisReport, Option<String>)> {
    match analyze(code.code(), workers) {
        Ok(a) => Ok((a, None)),
        Err(Error::EnumerationTooLarge(n)) => Ok((
            AnalysisReport {
                n: code.n(),
                k: code.k(),
                d: None,
                weight_distribution: BTreeMap::new(),
                qc_indices: code.code().quasicyclic_indices(),
                singleton_defect: None,
            },
            Some(format!("{n} codewords exceed the enumeration limit; distance not computed")),
        )),
        Err(e) => Err(e.into()),
    }
}

fn code_report(spec: CodeSpec, workers: usize) -> CliResult<(Value, String)> {
    let spec_json = spec.to_json_value();
    let code = TraceCode::build(spec)?;
    let (a, note) = analysis_or_partial(&code, workers)?;
    let bounds = bounds_report(&code, a.d)?;
    let mut doc = json!({
        "schema_version": 1,
        "spec": spec_json,
        "n": a.n,
        "k": a.k,
        "l": code.l(),
        "d": a.d,
        "weight_distribution": a.weight_distribution,
        "qc_indices": a.qc_indices,
        "singleton_defect": a.singleton_defect,
        "generator": code.code().generator(),
        "bounds": bounds,
    });
    if let Some(n) = &note {
        doc["note"] = json!(n);
    }
    let mut t = String::new();
    let _ = writeln!(t, "q: {}  G: {}", spec_json.q, spec_json.g);
    let _ = writeln!(t, "D: {}", spec_json.d.join(" "));
    let _ = writeln!(
        t,
        "n={} k={} l={} d={} singleton_defect={}",
        a.n,
        a.k,
        code.l(),
        opt(a.d),
        opt(a.singleton_defect)
    );
    let _ = writeln!(t, "qc_indices: {:?}", a.qc_indices);
    if !a.weight_distribution.is_empty() {
        let wd: Vec<String> = a.weight_distribution.iter().map(|(w, c)| format!("{w}:{c}")).collect();
        let _ = writeln!(t, "weights: {}", wd.join(" "));
    }
    if let Some(n) = note {
        let _ = writeln!(t, "note: {n}");
    }
    bounds_table(&mut t, &bounds);
    Ok((doc, t))
}

fn bounds_table(t: &mut String, bounds: &[BoundEntry]) {
    for b in bounds {
        let _ = writeln!(
            t,
            "{:<28} value {:>12.6}  exact {:>5}  {}",
            b.name,
            b.value,
            opt(b.exact),
            b.verdict
        );
    }
}

fn qc_build(format: Format, p: u64, d: usize, r: i64, workers: usize) -> CliResult<String> {
    let (grid, code) = qc_family(p, d, r)?;
    let (a, note) = analysis_or_partial(&code, workers)?;
    let shifted_ok = code
        .code()
        .generator()
        .iter()
        .map(|row| shift_by_rows(row, grid.m).map(|s| code.code().contains(&s)))
        .collect::<trace_codes::Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    let verified = shifted_ok && a.qc_indices.contains(&grid.m);
    let rows: Vec<Vec<String>> = grid
        .rows
        .iter()
        .map(|row| row.iter().map(|p| p.to_string()).collect())
        .collect();
    let bounds = bounds_report(&code, a.d)?;
    let mut doc = json!({
        "schema_version": 1,
        "p": p,
        "d": d,
        "r": r,
        "alpha": grid.alpha,
        "m": grid.m,
        "grid": rows,
        "n": a.n,
        "k": a.k,
        "l": code.l(),
        "min_distance": a.d,
        "weight_distribution": a.weight_distribution,
        "qc_indices": a.qc_indices,
        "qc_verified": verified,
        "singleton_defect": a.singleton_defect,
        "bounds": bounds,
    });
    if let Some(n) = &note {
        doc["note"] = json!(n);
    }
    let mut t = String::new();
    let _ = writeln!(t, "p={p} d={d} r={r} alpha={} m={}", grid.alpha, grid.m);
    for (i, row) in rows.iter().enumerate() {
        let _ = writeln!(t, "row {i}: {}", row.join(" "));
    }
    let _ = writeln!(
        t,
        "n={} k={} l={} d={} singleton_defect={}",
        a.n,
        a.k,
        code.l(),
        opt(a.d),
        opt(a.singleton_defect)
    );
    let _ = writeln!(t, "qc_indices: {:?}", a.qc_indices);
    let _ = writeln!(t, "shift by m = {} verified: {verified}", grid.m);
    if let Some(n) = note {
        let _ = writeln!(t, "note: {n}");
    }
    bounds_table(&mut t, &bounds);
    if !verified {
        print!("{}", render(format, &doc, t));
        return Err(CliError::Failure(format!("code is not closed under a shift by m = {}", grid.m)));
    }
    Ok(render(format, &doc, t))
}

fn irreducibles(format: Format, d: usize, q: &str, trace: Option<&str>) -> CliResult<String> {
    if d == 0 {
        return Err(CliError::Input("--d must be at least 1".into()));
    }
    let field = Field::parse(q)?;
    let gamma = trace.map(|s| parse_elem(&field, s)).transpose()?;
    let polys: Vec<Poly> = Poly::irreducibles(&field, d)
        .into_iter()
        .filter(|f| gamma.as_ref().is_none_or(|g| f.coeff_code(d - 1) == g.code()))
        .collect();
    let enumerated = IrreducibleCensus::enumerate(&field, d);
    let formulas = IrreducibleCensus::from_formulas(&field, d)?;
    if enumerated != formulas {
        return Err(CliError::Failure(format!(
            "enumeration disagrees with the counting formulas: {enumerated:?} vs {formulas:?}"
        )));
    }
    let expected = match &gamma {
        Some(g) => formulas.by_trace[&g.code()],
        None => formulas.total,
    };
    if polys.len() as i128 != expected {
        return Err(CliError::Failure(format!(
            "listed {} polynomials but the formula gives {expected}",
            polys.len()
        )));
    }
    let listed: Vec<String> = polys.iter().map(|f| f.to_string()).collect();
    let zero = formulas.by_trace[&0];
    let nonzero = formulas.by_trace.get(&1).copied().unwrap_or(0);
    let doc = json!({
        "schema_version": 1,
        "d": d,
        "q": field.order(),
        "trace": gamma.as_ref().map(|g| field.format_code(g.code())),
        "polynomials": listed,
        "count": polys.len(),
        "formula_count": expected,
        "total": formulas.total,
        "trace_zero_count": zero,
        "trace_nonzero_count": nonzero,
    });
    let mut t = String::new();
    for f in &listed {
        let _ = writeln!(t, "{f}");
    }
    let _ = writeln!(
        t,
        "count {} (formula {expected}); total {}, per zero trace {zero}, per nonzero trace {nonzero}",
        polys.len(),
        formulas.total
    );
    Ok(render(format, &doc, t))
}
