//! Command-line driver.
//!
//! Exit codes: 0 success, 1 a requested check failed, 2 usage error, 3 input
//! error (unreadable file, bad graph6 record, size guard, bad parameter).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cycle;
use crate::graph::{Graph, GraphFamily};
use crate::graph6;
use crate::oracle::{self, OracleOptions, DEFAULT_GUARD};
use crate::verify::{self, LemmaId, MinPart, SuiteConfig, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "dompoly", version, about = "Domination polynomials and cycle-uniqueness checks")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest graph order the brute-force oracle accepts.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD)]
    guard_override: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Builtin family, e.g. cycle:7, path:6, complete:5, wheel:6, join:2,5.
    #[arg(long)]
    family: Option<GraphFamily>,
    /// graph6 file, one record per line.
    file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Domination polynomial by brute force.
    Poly {
        #[command(flatten)]
        input: GraphInput,
    },
    /// D(C_n, x) from the recurrence, with its values at -1 and -3.
    Cycle { n: u64 },
    /// Evaluate D(G, x) (or a derivative) at an integer.
    Eval {
        #[arg(allow_negative_numbers = true)]
        at: BigInt,
        /// Derivative order.
        #[arg(long, default_value_t = 0)]
        derivative: usize,
        #[command(flatten)]
        input: GraphInput,
    },
    /// Domination number.
    Gamma {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Run one check, or `all`.
    Verify {
        /// Check id such as L3-cycle or T5-partitions.
        id: String,
        /// Upper bound of the checked range; each check has its own default.
        #[arg(long)]
        max_n: Option<u64>,
        /// Smallest cycle length in partitions: 3 (cycles) or 1 (allow C_1, C_2).
        #[arg(long, default_value_t = 3, value_parser = parse_min_part)]
        min_part: u64,
        /// Directory holding graphs<n>.g6 corpora.
        #[arg(long)]
        corpus_dir: Option<PathBuf>,
        /// Seed for the random graph pairs.
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Compare D(C_n) with every union of cycles of total order n.
    SearchPartitions {
        n: u64,
        #[arg(long, default_value_t = 3, value_parser = parse_min_part)]
        min_part: u64,
    },
    /// Group a graph6 corpus by domination polynomial.
    Classify { file: PathBuf },
    /// Check the two-member class of P_n against a corpus of order n.
    PathClass { n: usize, file: PathBuf },
    /// Check that W_n is alone in its class within a corpus of order n.
    Wheel { n: usize, file: PathBuf },
}

fn parse_min_part(s: &str) -> Result<u64, String> {
    match s {
        "1" => Ok(1),
        "3" => Ok(3),
        _ => Err("must be 1 or 3".into()),
    }
}

enum Failure {
    Usage(String),
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Outcome {
    value: Value,
    table: String,
    code: i32,
}

impl Outcome {
    fn ok(value: Value, table: String) -> Self {
        Outcome {
            value,
            table,
            code: EXIT_OK,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };

    let opts = OracleOptions::with_guard(cli.guard_override);
    let mut diagnostics = Vec::new();
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, &opts, &mut diagnostics)),
            Err(e) => Err(Failure::Input(e.to_string())),
        },
        None => dispatch(&cli.command, &opts, &mut diagnostics),
    };
    let _ = err.write_all(&diagnostics);

    match result {
        Ok(outcome) => {
            let written = match cli.format {
                Format::Json => serde_json::to_string_pretty(&outcome.value)
                    .map(|s| writeln!(out, "{s}").is_ok())
                    .unwrap_or(false),
                Format::Table => write!(out, "{}", outcome.table).is_ok(),
            };
            if !written {
                let _ = writeln!(err, "error: could not write output");
                return EXIT_INPUT;
            }
            outcome.code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nFor more information, try '--help'.");
            EXIT_USAGE
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn dispatch(cmd: &Command, opts: &OracleOptions, err: &mut Vec<u8>) -> Result<Outcome, Failure> {
    match cmd {
        Command::Poly { input } => per_graph(input, |g| {
            let p = oracle::domination_polynomial_with(g, opts)?;
            Ok((json!({ "coefficients": p }), p.to_string()))
        }),
        Command::Cycle { n } => cycle_command(*n),
        Command::Eval { at, derivative, input } => per_graph(input, |g| {
            let p = oracle::domination_polynomial_with(g, opts)?;
            let v = p.nth_derivative(*derivative).eval(at);
            Ok((
                json!({ "at": at.to_string(), "derivative": derivative, "value": v.to_string() }),
                v.to_string(),
            ))
        }),
        Command::Gamma { input } => per_graph(input, |g| {
            let gamma = oracle::domination_number_with(g, opts)?.value();
            Ok((
                json!({ "gamma": gamma }),
                gamma.map_or_else(|| "undominatable".to_string(), |v| v.to_string()),
            ))
        }),
        Command::Verify {
            id,
            max_n,
            min_part,
            corpus_dir,
            seed,
        } => {
            let cfg = SuiteConfig {
                max_n: *max_n,
                min_part: MinPart::try_from(*min_part)?,
                oracle: *opts,
                corpus_dir: corpus_dir.clone(),
                seed: *seed,
            };
            if id.eq_ignore_ascii_case("all") {
                verify_all(&cfg, err)
            } else {
                let id: LemmaId = id.parse().map_err(Failure::Usage)?;
                let report = verify::run_check(id, &cfg)?;
                Ok(report_outcome(&report))
            }
        }
        Command::SearchPartitions { n, min_part } => search_partitions(*n, MinPart::try_from(*min_part)?),
        Command::Classify { file } => classify(file, opts, err),
        Command::PathClass { n, file } => {
            let records = load(file)?;
            Ok(report_outcome(&verify::verify_path_class(*n, &records, opts)))
        }
        Command::Wheel { n, file } => {
            let records = load(file)?;
            Ok(report_outcome(&verify::verify_wheel_uniqueness(*n, &records, opts)))
        }
    }
}

fn load(path: &Path) -> Result<Vec<graph6::Record>, Failure> {
    verify::load_corpus(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Runs `f` on the family graph, or on every record of the file.
fn per_graph<F>(input: &GraphInput, f: F) -> Result<Outcome, Failure>
where
    F: Fn(&Graph) -> Result<(Value, String), Failure>,
{
    if let Some(family) = &input.family {
        let g = family.build()?;
        let (mut value, text) = f(&g)?;
        value["graph"] = json!(family.to_string());
        return Ok(Outcome::ok(value, format!("{family}\t{text}\n")));
    }
    let path = input.file.as_deref().expect("clap enforces one input");
    let records = load(path)?;
    let mut values = Vec::new();
    let mut table = String::new();
    for r in &records {
        let g = r
            .graph
            .as_ref()
            .map_err(|e| Failure::Input(format!("{}:{}: {e}", path.display(), r.line)))?;
        let (mut value, text) = f(g)?;
        value["graph"] = json!(r.text);
        table.push_str(&format!("{}\t{text}\n", r.text));
        values.push(value);
    }
    Ok(Outcome::ok(Value::Array(values), table))
}

fn big(v: BigInt) -> String {
    v.to_string()
}

fn cycle_command(n: u64) -> Result<Outcome, Failure> {
    let p = cycle::cycle_polynomial(n)?;
    let value = json!({
        "n": n,
        "coefficients": p,
        "alpha": big(cycle::alpha(n)),
        "beta": big(cycle::beta(n)),
        "theta": big(cycle::theta(n)),
        "a": big(cycle::a_seq(n)),
        "b": big(cycle::b_seq(n)),
        "ord3": cycle::ord3_classification(n),
    });
    let table = format!(
        "D(C{n}, x) = {p}\nalpha = {}\nbeta = {}\ntheta = {}\n",
        cycle::alpha(n),
        cycle::beta(n),
        cycle::theta(n)
    );
    Ok(Outcome::ok(value, table))
}

#[derive(Serialize)]
struct PartitionRow {
    parts: Vec<u64>,
    matches: bool,
}

fn search_partitions(n: u64, min_part: MinPart) -> Result<Outcome, Failure> {
    let target = cycle::cycle_polynomial(n)?;
    let rows: Vec<PartitionRow> = verify::enumerate_partitions(n, min_part)
        .map(|p| PartitionRow {
            matches: verify::partition_polynomial(&p) == target,
            parts: p.parts().to_vec(),
        })
        .collect();
    let matches = rows.iter().filter(|r| r.matches).count();
    let only_trivial = rows.iter().all(|r| !r.matches || r.parts.len() == 1);
    let mut table = format!("target D(C{n}) = {target}\n");
    for r in &rows {
        let parts: Vec<String> = r.parts.iter().map(u64::to_string).collect();
        table.push_str(&format!(
            "{{{}}}\t{}\n",
            parts.join(","),
            if r.matches { "match" } else { "differs" }
        ));
    }
    let value = json!({
        "n": n,
        "min_part": min_part.value(),
        "target": target,
        "partitions": rows,
        "matches": matches,
    });
    Ok(Outcome {
        value,
        table,
        code: if only_trivial { EXIT_OK } else { EXIT_FAIL },
    })
}

fn classify(file: &Path, opts: &OracleOptions, err: &mut Vec<u8>) -> Result<Outcome, Failure> {
    let records = load(file)?;
    let cls = verify::classify_corpus(&records, opts);
    for e in &cls.errors {
        let _ = writeln!(err, "{}:{}: {}", file.display(), e.line, e.message);
    }
    let mut table = String::new();
    for c in &cls.classes {
        table.push_str(&format!(
            "{}\t{}\t{}\n",
            c.class_size,
            c.key_polynomial,
            c.members.join(" ")
        ));
    }
    let code = if cls.errors.is_empty() { EXIT_OK } else { EXIT_INPUT };
    Ok(Outcome {
        value: serde_json::to_value(&cls)?,
        table,
        code,
    })
}

fn report_table(r: &VerificationReport) -> String {
    let mut s = format!(
        "{}\t{}\t[{}, {}]\t{} ms\n",
        r.lemma_id,
        if r.passed() { "pass" } else { "FAIL" },
        r.range.from,
        r.range.to,
        r.timing_ms
    );
    for n in &r.notes {
        s.push_str(&format!("  note: {n}\n"));
    }
    for c in &r.counterexamples {
        s.push_str(&format!("  counterexample: {}: {}\n", c.subject, c.message));
    }
    s
}

fn report_outcome(r: &VerificationReport) -> Outcome {
    Outcome {
        value: serde_json::to_value(r).expect("reports serialize"),
        table: report_table(r),
        code: if r.passed() { EXIT_OK } else { EXIT_FAIL },
    }
}

fn verify_all(cfg: &SuiteConfig, err: &mut Vec<u8>) -> Result<Outcome, Failure> {
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for id in LemmaId::ALL {
        if id.needs_corpus() && cfg.corpus_dir.is_none() {
            skipped.push(id);
            continue;
        }
        let per_id = SuiteConfig {
            max_n: None,
            ..cfg.clone()
        };
        let _ = writeln!(err, "running {id}");
        reports.push(verify::run_check(id, &per_id)?);
    }
    let all_pass = reports.iter().all(VerificationReport::passed);
    let traceability: Vec<Value> = LemmaId::ALL
        .iter()
        .map(|id| {
            let status = reports
                .iter()
                .find(|r| r.lemma_id == *id)
                .map_or("skipped", |r| if r.passed() { "pass" } else { "fail" });
            json!({ "lemma_id": id, "statement": id.statement(), "status": status })
        })
        .collect();
    let mut table = format!("{:<14} {:<8} {:<12} {}\n", "check", "status", "range", "statement");
    for id in LemmaId::ALL {
        let (status, range) = match reports.iter().find(|r| r.lemma_id == id) {
            Some(r) => (
                if r.passed() { "pass" } else { "FAIL" },
                format!("{}..{}", r.range.from, r.range.to),
            ),
            None => ("skipped", "-".to_string()),
        };
        table.push_str(&format!("{:<14} {:<8} {:<12} {}\n", id.as_str(), status, range, id.statement()));
    }
    let value = json!({
        "status": if all_pass { "pass" } else { "fail" },
        "reports": reports,
        "skipped": skipped,
        "traceability": traceability,
    });
    Ok(Outcome {
        value,
        table,
        code: if all_pass { EXIT_OK } else { EXIT_FAIL },
    })
}

