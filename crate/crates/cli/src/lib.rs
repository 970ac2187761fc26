//! The `invdec` command line.
//!
//! Everything goes through [`run_with`], which returns the exit code and both
//! output streams instead of touching the process, so tests can drive it
//! directly. Output is JSON unless `--pretty` is given.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use invdec_core::{
    all_blocks, binomial_imbalance, count_decompositions, edge_classes_closure,
    edge_classes_structural, enumerate_decompositions, inversion_graph, is_decomposable,
    is_multiplicative, is_neighbor_of_identity, merge_parts, multiplicative_witness, product_order,
    strong_blocks, substitution_tree, sweep_verify, validate_partition, Check, EdgeClassPartition,
    Interval, InvDecomposition, Permutation, ProductOrder, SubstitutionTree, SweepOptions,
    SweepReport,
};
use serde::Serialize;

/// Exit code for a successful run.
pub const EXIT_OK: u8 = 0;
/// Exit code for bad arguments or malformed input.
pub const EXIT_INPUT: u8 = 1;
/// Exit code for a `verify` sweep that found failures.
pub const EXIT_VERIFY: u8 = 2;

/// Largest sweep size accepted when `INVDEC_MAX_N` is unset.
pub const DEFAULT_MAX_N: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Upper limit on `verify --n`.
    pub max_n: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_n: DEFAULT_MAX_N,
        }
    }
}

impl Config {
    /// Reads `INVDEC_MAX_N`, falling back to the default when it is unset or
    /// not a number.
    pub fn from_env() -> Self {
        let max_n = std::env::var("INVDEC_MAX_N")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_N);
        Config { max_n }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(message: impl std::fmt::Display) -> Self {
        Output {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "invdec",
    version,
    about = "Inversion-set decompositions of permutations"
)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Substitution decomposition tree.
    Tree { pi: String },
    /// All blocks (common intervals) and the strong ones.
    Blocks { pi: String },
    /// Edge classes of the inversion graph.
    EdgeClasses {
        pi: String,
        #[arg(long, value_enum, default_value_t = Method::Structural)]
        method: Method,
    },
    /// Number of inv-decompositions.
    Count { pi: String },
    /// List inv-decompositions in canonical order.
    Enum {
        pi: String,
        /// Print at most this many decompositions.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Decomposability summary.
    Check { pi: String },
    /// A multiplicative decomposition, if any.
    Mult { pi: String },
    /// Merge two parts of a partition of an inversion set.
    Merge {
        pi: String,
        /// The parts, whose inversion sets must partition that of PI.
        #[arg(required = true, num_args = 2..)]
        parts: Vec<String>,
        /// Zero-based index of the first part to merge.
        #[arg(long)]
        i: usize,
        /// Zero-based index of the second part to merge.
        #[arg(long)]
        j: usize,
    },
    /// Compare the inversion multisets of two products.
    Binomial {
        #[arg(long, required = true, num_args = 1..)]
        lhs: Vec<String>,
        #[arg(long, required = true, num_args = 1..)]
        rhs: Vec<String>,
    },
    /// Exhaustively check properties over all permutations of size N.
    Verify {
        #[arg(long)]
        n: usize,
        /// `all` or a comma-separated list of check names.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Report every failing permutation instead of the first few.
        #[arg(long)]
        full_witnesses: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Structural,
    Closure,
}

/// Runs with the configuration taken from the environment.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &Config::from_env())
}

/// Parses `argv` (including the program name) and executes one command.
pub fn run_with<I, T>(argv: I, config: &Config) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output::ok(text)
            };
        }
    };
    match execute(cli.command, cli.pretty, config) {
        Ok(out) => out,
        Err(message) => Output::input_error(message),
    }
}

fn parse_perm(text: &str) -> Result<Permutation, String> {
    text.parse()
        .map_err(|e| format!("invalid permutation {text:?}: {e}"))
}

fn parse_perms(texts: &[String]) -> Result<Vec<Permutation>, String> {
    texts.iter().map(|t| parse_perm(t)).collect()
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("output types serialize");
    s.push('\n');
    s
}

fn words(p: &Permutation) -> String {
    p.to_string()
}

fn execute(command: Command, pretty: bool, config: &Config) -> Result<Output, String> {
    let stdout = match command {
        Command::Tree { pi } => {
            let tree = substitution_tree(&parse_perm(&pi)?);
            if pretty {
                let mut s = String::new();
                render_tree(&tree, 0, &mut s);
                s
            } else {
                json(&tree)
            }
        }
        Command::Blocks { pi } => {
            let p = parse_perm(&pi)?;
            let out = BlocksOut {
                pi: &p,
                blocks: all_blocks(&p),
                strong: strong_blocks(&p),
            };
            if pretty {
                let list = |v: &[Interval]| {
                    v.iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                format!(
                    "blocks: {}\nstrong: {}\n",
                    list(&out.blocks),
                    list(&out.strong)
                )
            } else {
                json(&out)
            }
        }
        Command::EdgeClasses { pi, method } => {
            let p = parse_perm(&pi)?;
            let partition = match method {
                Method::Structural => edge_classes_structural(&p),
                Method::Closure => edge_classes_closure(&inversion_graph(&p)),
            };
            if pretty {
                let mut s = String::new();
                for (k, class) in partition.classes.iter().enumerate() {
                    let edges: Vec<String> =
                        class.edges.iter().map(|(i, j)| format!("{i}{j}")).collect();
                    let _ = writeln!(s, "class {}: {}", k + 1, edges.join(" "));
                }
                s
            } else {
                json(&ClassesOut {
                    pi: &p,
                    method,
                    partition: &partition,
                })
            }
        }
        Command::Count { pi } => {
            let p = parse_perm(&pi)?;
            let count = count_decompositions(&p).map_err(|e| e.to_string())?;
            if pretty {
                format!("{count}\n")
            } else {
                json(&CountOut { pi: &p, count })
            }
        }
        Command::Enum { pi, limit } => {
            let p = parse_perm(&pi)?;
            let count = count_decompositions(&p).map_err(|e| e.to_string())?;
            let decompositions: Vec<EnumEntry> = enumerate_decompositions(&p)
                .take(limit.unwrap_or(usize::MAX))
                .map(|d| EnumEntry {
                    multiplicative: is_multiplicative(&p, &d).unwrap_or(false),
                    d,
                })
                .collect();
            if pretty {
                let mut s = format!("{count} decompositions\n");
                for e in &decompositions {
                    let tag = if e.multiplicative {
                        "  multiplicative"
                    } else {
                        ""
                    };
                    let _ = writeln!(s, "{} | {}{tag}", words(&e.d.tau1), words(&e.d.tau2));
                }
                s
            } else {
                json(&EnumOut {
                    pi: &p,
                    count,
                    decompositions,
                })
            }
        }
        Command::Check { pi } => {
            let p = parse_perm(&pi)?;
            let out = CheckOut {
                decomposable: is_decomposable(&p),
                edge_classes: edge_classes_structural(&p).len(),
                neighbor_of_identity: is_neighbor_of_identity(&p).ok(),
            };
            if pretty {
                let neighbor = out
                    .neighbor_of_identity
                    .map_or("n/a".to_string(), |b| b.to_string());
                format!(
                    "decomposable: {}\nedge classes: {}\nneighbor of identity: {neighbor}\n",
                    out.decomposable, out.edge_classes
                )
            } else {
                json(&out)
            }
        }
        Command::Mult { pi } => {
            let p = parse_perm(&pi)?;
            let witness = multiplicative_witness(&p);
            let order = witness.as_ref().and_then(|d| product_order(&p, d));
            if pretty {
                match (&witness, order) {
                    (Some(d), Some(ProductOrder::Tau1Tau2)) => {
                        format!(
                            "{} = ({}) o ({})\n",
                            words(&p),
                            words(&d.tau1),
                            words(&d.tau2)
                        )
                    }
                    (Some(d), _) => format!(
                        "{} = ({}) o ({})\n",
                        words(&p),
                        words(&d.tau2),
                        words(&d.tau1)
                    ),
                    (None, _) => "none\n".to_string(),
                }
            } else {
                json(&MultOut {
                    pi: &p,
                    witness: witness.as_ref(),
                    order,
                })
            }
        }
        Command::Merge { pi, parts, i, j } => {
            let p = parse_perm(&pi)?;
            let parts = parse_perms(&parts)?;
            if !validate_partition(&p, &parts).map_err(|e| e.to_string())? {
                return Err("the parts do not partition the inversion set".into());
            }
            let merged = merge_parts(&p, &parts, i, j).map_err(|e| e.to_string())?;
            if pretty {
                format!("{}\n", words(&merged))
            } else {
                json(&MergeOut {
                    pi: &p,
                    i,
                    j,
                    merged: &merged,
                })
            }
        }
        Command::Binomial { lhs, rhs } => {
            let lhs = parse_perms(&lhs)?;
            let rhs = parse_perms(&rhs)?;
            let imbalance: Vec<Imbalance> = binomial_imbalance(&lhs, &rhs)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|(pair, lhs, rhs)| Imbalance { pair, lhs, rhs })
                .collect();
            if pretty {
                let mut s = format!("holds: {}\n", imbalance.is_empty());
                for e in &imbalance {
                    let _ = writeln!(s, "{}{}: {} vs {}", e.pair.0, e.pair.1, e.lhs, e.rhs);
                }
                s
            } else {
                json(&BinomialOut {
                    holds: imbalance.is_empty(),
                    imbalance,
                })
            }
        }
        Command::Verify {
            n,
            checks,
            jobs,
            full_witnesses,
        } => {
            if n > config.max_n {
                return Err(format!(
                    "n = {n} exceeds the sweep limit {} (INVDEC_MAX_N)",
                    config.max_n
                ));
            }
            let selection = Check::parse_selection(&checks, n).map_err(|e| e.to_string())?;
            let options = SweepOptions {
                jobs: jobs.max(1),
                witness_cap: if full_witnesses {
                    None
                } else {
                    SweepOptions::default().witness_cap
                },
            };
            let report = sweep_verify(n, &selection, options).map_err(|e| e.to_string())?;
            let text = if pretty {
                render_report(&report)
            } else {
                json(&report)
            };
            let code = if report.is_success() {
                EXIT_OK
            } else {
                EXIT_VERIFY
            };
            return Ok(Output {
                code,
                stdout: text,
                stderr: String::new(),
            });
        }
    };
    Ok(Output::ok(stdout))
}

fn render_tree(tree: &SubstitutionTree, depth: usize, out: &mut String) {
    let indent = "  ".repeat(depth);
    if tree.is_leaf() {
        let _ = writeln!(out, "{indent}{}", tree.interval.lo);
        return;
    }
    let _ = writeln!(
        out,
        "{indent}{} {} [{}]",
        tree.kind, tree.interval, tree.skeleton
    );
    for child in &tree.children {
        render_tree(child, depth + 1, out);
    }
}

fn render_report(report: &SweepReport) -> String {
    let mut s = format!(
        "n = {}, {} permutations\n",
        report.n, report.permutations_checked
    );
    for (name, o) in &report.checks {
        let status = if o.failures == 0 { "ok" } else { "FAILED" };
        let _ = write!(
            s,
            "{name}: {status} ({} passed, {} failed)",
            o.passes, o.failures
        );
        if !o.witnesses.is_empty() {
            let w: Vec<String> = o
                .witnesses
                .iter()
                .map(|p| p.word().iter().map(|x| x.to_string()).collect())
                .collect();
            let _ = write!(s, " e.g. {}", w.join(", "));
        }
        s.push('\n');
    }
    s
}

#[derive(Serialize)]
struct BlocksOut<'a> {
    pi: &'a Permutation,
    blocks: Vec<Interval>,
    strong: Vec<Interval>,
}

#[derive(Serialize)]
struct ClassesOut<'a> {
    pi: &'a Permutation,
    method: Method,
    #[serde(flatten)]
    partition: &'a EdgeClassPartition,
}

#[derive(Serialize)]
struct CountOut<'a> {
    pi: &'a Permutation,
    count: u128,
}

#[derive(Serialize)]
struct EnumEntry {
    #[serde(flatten)]
    d: InvDecomposition,
    multiplicative: bool,
}

#[derive(Serialize)]
struct EnumOut<'a> {
    pi: &'a Permutation,
    count: u128,
    decompositions: Vec<EnumEntry>,
}

#[derive(Serialize)]
struct CheckOut {
    decomposable: bool,
    edge_classes: usize,
    /// Undefined for the identity, which has no edges.
    neighbor_of_identity: Option<bool>,
}

#[derive(Serialize)]
struct MultOut<'a> {
    pi: &'a Permutation,
    witness: Option<&'a InvDecomposition>,
    order: Option<ProductOrder>,
}

#[derive(Serialize)]
struct MergeOut<'a> {
    pi: &'a Permutation,
    i: usize,
    j: usize,
    merged: &'a Permutation,
}

#[derive(Serialize)]
struct Imbalance {
    pair: (usize, usize),
    lhs: usize,
    rhs: usize,
}

#[derive(Serialize)]
struct BinomialOut {
    holds: bool,
    imbalance: Vec<Imbalance>,
}
