//! Command-line front end.
//!
//! [`run`] parses arguments, executes one command and returns the exit status
//! together with what should go to standard output and standard error, so
//! the binary is a thin wrapper and the whole surface is testable in-process.
//!
//! Exit statuses: 0 success, 1 precondition or usage error, 2 resource cap or
//! timeout, 3 I/O or parse error. Error lines on standard error have the form
//! `error[<kind>]: <reason>`.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{chain_blowup_embeddable, classify12, degenerate_necessary, formula_1k};
use crate::construct::{
    build_closed_path_extremal, build_example1, build_example2, build_suspension_tower,
    build_turan_singletons, ConstructionReport,
};
use crate::embed::{count_copies, count_ordered_copies, find_embedding};
use crate::error::{Error, Result};
use crate::extremal::{
    pi_n_branch_bound, pi_n_exhaustive, pi_sequence, ForbiddenFamily, SearchConfig, SearchOutcome,
    DEFAULT_BRANCH_CAP,
};
use crate::format::{parse_hypergraph, parse_hypergraph_file};
use crate::hypergraph::Hypergraph;
use crate::rational::Rational;
use crate::transforms::{blowup, blowup_uniform, square2, subdivide2, suspend};
use crate::verify::{
    verify_relation_suite, verify_square_lemma_exhaustive, verify_supersaturation, LemmaReport,
    SupersatConfig,
};

#[derive(Parser, Debug)]
#[command(
    name = "turanlab",
    version,
    about = "Exact Turán computations on non-uniform hypergraphs"
)]
pub struct Cli {
    /// Output format; `sequence` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Worker threads for parallel searches.
    #[arg(long, global = true, env = "TURANLAB_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Args, Debug, Clone)]
pub struct SolverArgs {
    /// Candidate-edge cap for branch-and-bound.
    #[arg(long, default_value_t = DEFAULT_BRANCH_CAP)]
    pub cap: usize,
    /// Time budget in milliseconds; an expired search is not certified.
    #[arg(long)]
    pub timeout_ms: Option<u64>,
    #[arg(long)]
    pub no_symmetry: bool,
    #[arg(long)]
    pub no_averaging: bool,
}

impl SolverArgs {
    fn config(&self, threads: Option<usize>) -> SearchConfig {
        SearchConfig {
            cap: self.cap,
            timeout: self.timeout_ms.map(Duration::from_millis),
            symmetry: !self.no_symmetry,
            averaging: !self.no_averaging,
            threads,
            ..SearchConfig::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolverMethod {
    BranchBound,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    Example1,
    Example2,
    Tower,
    Closedpath,
    Turan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Square,
    Supersat,
    Relations,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TransformOp {
    Blowup,
    Suspend,
    Subdivide2,
    Square2,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact π_n for a forbidden family.
    PiN {
        /// Forbidden hypergraph: a file path or inline JSON. Repeat for a family.
        #[arg(long, required = true)]
        forbid: Vec<String>,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SolverMethod::BranchBound)]
        method: SolverMethod,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// π_n over a range of n.
    Sequence {
        #[arg(long, required = true)]
        forbid: Vec<String>,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Turán density of a {1,2}-graph, the {1,k} formula, or degeneracy conditions.
    Classify {
        #[arg(long)]
        graph: Option<String>,
        /// Report the k-partite and chain blow-up conditions instead.
        #[arg(long, requires = "graph")]
        degeneracy: bool,
        /// Evaluate the {1,k} formula for this k.
        #[arg(long, conflicts_with = "graph", requires = "pi_hk")]
        formula_k: Option<usize>,
        /// Density of the k-level, as p/q.
        #[arg(long)]
        pi_hk: Option<String>,
    },
    /// Build a lower-bound construction.
    Construct {
        #[arg(long, value_enum)]
        kind: ConstructKind,
        #[arg(long)]
        n: usize,
        /// Singleton part size for example1 (default n/2).
        #[arg(long)]
        a: Option<usize>,
        /// Suspension depth for tower, or number of parts for turan.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Find an embedding of a pattern into a host.
    Embed {
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
        /// Also count ordered and unlabeled copies.
        #[arg(long)]
        count: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest n for the square and relation suites.
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        /// Pattern for supersat, or corpus members for relations.
        #[arg(long)]
        graph: Vec<String>,
        /// Excess over the density proxy, as p/q.
        #[arg(long, default_value = "1/4")]
        a: String,
        /// Host order for supersat.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Apply a transformation and print the resulting hypergraph.
    Transform {
        #[arg(long, value_enum)]
        op: TransformOp,
        #[arg(long)]
        graph: String,
        /// Uniform blow-up factor or number of suspension vertices.
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Per-vertex blow-up sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
    },
}

/// What a finished invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Reads a hypergraph argument: inline JSON when it starts with `{`, else a path.
pub fn load_graph(arg: &str) -> Result<Hypergraph> {
    if arg.trim_start().starts_with('{') {
        parse_hypergraph(arg)
    } else {
        let path = std::path::Path::new(arg);
        if !path.exists() {
            return Err(Error::Io(std::io::Error::new(
                std::io::ErrorKind::NotFound,
                format!("{arg}: no such file"),
            )));
        }
        parse_hypergraph_file(path)
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.parse()
        .map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
}

struct Rendered {
    json: Value,
    csv: Option<String>,
    table: Option<String>,
    /// Non-zero status for output that is still printed (uncertified values).
    code: i32,
    notes: Vec<String>,
}

impl Rendered {
    fn new(value: impl Serialize) -> Self {
        Rendered {
            json: serde_json::to_value(value).expect("plain data serializes"),
            csv: None,
            table: None,
            code: 0,
            notes: Vec::new(),
        }
    }
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: format!(
                        "error[usage]: {}\n",
                        text.lines()
                            .next()
                            .unwrap_or("")
                            .trim_start_matches("error: ")
                    ),
                },
            };
        }
    };
    dispatch(&cli)
}

/// Executes a parsed invocation.
pub fn dispatch(cli: &Cli) -> Outcome {
    let started = Instant::now();
    let default_format = match cli.command {
        Command::Sequence { .. } => OutputFormat::Csv,
        _ => OutputFormat::Json,
    };
    let format = cli.format.unwrap_or(default_format);
    match execute(cli) {
        Ok(r) => {
            let stdout = match format {
                OutputFormat::Json => {
                    let mut s = serde_json::to_string(&r.json).expect("value serializes");
                    s.push('\n');
                    s
                }
                OutputFormat::Csv => r.csv.clone().unwrap_or_else(|| generic_csv(&r.json)),
                OutputFormat::Table => r.table.clone().unwrap_or_else(|| generic_table(&r.json)),
            };
            let mut stderr = String::new();
            for note in &r.notes {
                let _ = writeln!(stderr, "{note}");
            }
            let _ = writeln!(stderr, "elapsed_ms={}", started.elapsed().as_millis());
            Outcome {
                code: r.code,
                stdout,
                stderr,
            }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: {
                let text = e.to_string();
                let reason = text
                    .strip_prefix(&format!("{}: ", e.kind()))
                    .unwrap_or(&text);
                format!("error[{}]: {}\n", e.kind(), one_line(reason))
            },
        },
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn family_of(args: &[String]) -> Result<ForbiddenFamily> {
    let members = args
        .iter()
        .map(|a| load_graph(a))
        .collect::<Result<Vec<_>>>()?;
    ForbiddenFamily::new(members)
}

fn execute(cli: &Cli) -> Result<Rendered> {
    match &cli.command {
        Command::PiN {
            forbid,
            n,
            method,
            solver,
        } => {
            let family = family_of(forbid)?;
            let out: SearchOutcome = match method {
                SolverMethod::Oracle => pi_n_exhaustive(*n, &family)?,
                SolverMethod::BranchBound => {
                    pi_n_branch_bound(*n, &family, &solver.config(cli.threads))?
                }
            };
            let mut r = Rendered::new(&out);
            r.notes
                .push(format!("nodes={} certified={}", out.nodes, out.certified));
            if !out.certified {
                r.code = 2;
                r.notes.push(format!(
                    "warning: search stopped by the time budget; pi_n = {} is a lower bound, not certified",
                    out.value
                ));
            }
            Ok(r)
        }
        Command::Sequence {
            forbid,
            n_min,
            n_max,
            solver,
        } => {
            let family = family_of(forbid)?;
            let seq = pi_sequence(&family, *n_min, *n_max, &solver.config(cli.threads))?;
            let rows: Vec<Value> = seq
                .iter()
                .map(|(n, v)| json!({"n": n, "pi_n": v}))
                .collect();
            let mut csv = String::from("n,pi_n\n");
            let mut table = String::from(" n | pi_n\n---+------\n");
            for (n, v) in &seq {
                let _ = writeln!(csv, "{n},{v}");
                let _ = writeln!(table, "{n:>2} | {v}");
            }
            let mut r = Rendered::new(Value::Array(rows));
            r.csv = Some(csv);
            r.table = Some(table);
            Ok(r)
        }
        Command::Classify {
            graph,
            degeneracy,
            formula_k,
            pi_hk,
        } => {
            if let Some(k) = formula_k {
                let p = parse_rational(pi_hk.as_deref().expect("required by clap"))?;
                let v = formula_1k(*k, &p)?;
                return Ok(Rendered::new(json!({
                    "k": k,
                    "pi_hk": p,
                    "value": v.to_string(),
                    "approx": v.to_f64(),
                })));
            }
            let g = load_graph(graph.as_deref().ok_or_else(|| {
                Error::domain("classify needs --graph, or --formula-k with --pi-hk")
            })?)?;
            if *degeneracy {
                return Ok(Rendered::new(json!({
                    "k_partite_levels": degenerate_necessary(&g)?,
                    "chain_blowup_coloring": chain_blowup_embeddable(&g)?,
                })));
            }
            Ok(Rendered::new(classify12(&g)?))
        }
        Command::Construct { kind, n, a, k } => {
            let report: ConstructionReport = match kind {
                ConstructKind::Example1 => build_example1(*n, a.unwrap_or(n / 2))?,
                ConstructKind::Example2 => build_example2(*n)?,
                ConstructKind::Tower => build_suspension_tower(*n, k.unwrap_or(1))?,
                ConstructKind::Closedpath => build_closed_path_extremal(*n)?,
                ConstructKind::Turan => build_turan_singletons(*n, k.unwrap_or(2), None)?,
            };
            Ok(Rendered::new(report))
        }
        Command::Embed {
            host,
            pattern,
            count,
        } => {
            let g = load_graph(host)?;
            let h = load_graph(pattern)?;
            let emb = find_embedding(&g, &h);
            let mut out = json!({"found": emb.is_some(), "embedding": emb});
            if *count {
                out["ordered_copies"] = json!(count_ordered_copies(&g, &h));
                out["copies"] = json!(count_copies(&g, &h)?);
            }
            Ok(Rendered::new(out))
        }
        Command::Verify {
            suite,
            n_max,
            graph,
            a,
            n,
            seed,
            solver,
        } => {
            let cfg = solver.config(cli.threads);
            match suite {
                Suite::Square => lemma_output(verify_square_lemma_exhaustive(*n_max)?),
                Suite::Relations => {
                    let corpus = graph
                        .iter()
                        .map(|g| load_graph(g))
                        .collect::<Result<Vec<_>>>()?;
                    if corpus.is_empty() {
                        return Err(Error::domain(
                            "the relation suite needs at least one --graph",
                        ));
                    }
                    lemma_output(verify_relation_suite(&corpus, *n_max, &cfg)?)
                }
                Suite::Supersat => {
                    let [pattern] = graph.as_slice() else {
                        return Err(Error::domain("supersat needs exactly one --graph"));
                    };
                    let h = load_graph(pattern)?;
                    let n = n.ok_or_else(|| Error::domain("supersat needs --n"))?;
                    let sc = SupersatConfig {
                        seed: *seed,
                        search: cfg,
                        ..SupersatConfig::default()
                    };
                    let rep = verify_supersaturation(&h, &parse_rational(a)?, n, &sc)?;
                    let mut r = Rendered::new(&rep);
                    if !rep.violations.is_empty() {
                        r.code = 1;
                    }
                    Ok(r)
                }
            }
        }
        Command::Transform {
            op,
            graph,
            t,
            sizes,
        } => {
            let g = load_graph(graph)?;
            let out = match op {
                TransformOp::Blowup => match sizes {
                    Some(s) => blowup(&g, s)?,
                    None => blowup_uniform(&g, *t)?,
                },
                TransformOp::Suspend => suspend(&g, *t)?,
                TransformOp::Subdivide2 => subdivide2(&g)?,
                TransformOp::Square2 => square2(&g)?,
            };
            Ok(Rendered::new(out))
        }
    }
}

fn lemma_output(report: LemmaReport) -> Result<Rendered> {
    let mut table = String::new();
    let _ = writeln!(table, "lemma        {}", report.lemma);
    let _ = writeln!(table, "checked      {}", report.universe_size);
    let _ = writeln!(table, "violations   {}", report.violations.len());
    let _ = writeln!(table, "witnesses    {}", report.extremal_witnesses.len());
    let _ = writeln!(table, "findings     {}", report.findings.len());
    let _ = writeln!(table, "skipped      {}", report.skipped.len());
    let _ = writeln!(
        table,
        "result       {}",
        if report.passed() { "PASS" } else { "FAIL" }
    );
    for v in &report.violations {
        let _ = writeln!(table, "  violation: {}: {}", v.item, v.detail);
    }
    for f in &report.findings {
        let _ = writeln!(table, "  finding: {f}");
    }
    let code = if report.passed() { 0 } else { 1 };
    let mut r = Rendered::new(&report);
    r.table = Some(table);
    r.code = code;
    Ok(r)
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One header row and one value row for an object; nested values as JSON.
fn generic_csv(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let keys: Vec<String> = map.keys().map(|k| csv_field(k)).collect();
            let vals: Vec<String> = map.values().map(|x| csv_field(&scalar_text(x))).collect();
            format!("{}\n{}\n", keys.join(","), vals.join(","))
        }
        other => format!("{}\n", csv_field(&scalar_text(other))),
    }
}

fn generic_table(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
            map.iter()
                .map(|(k, x)| format!("{k:<width$}  {}\n", scalar_text(x)))
                .collect()
        }
        other => format!("{}\n", scalar_text(other)),
    }
}
