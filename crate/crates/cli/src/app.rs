//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};

use paracons_core::error::{Error, Result};
use paracons_core::search::{enumerate_structures, minimal_example, SearchMode, StructurePredicate};

use crate::analysis::{self, FragmentConfig, FORMULA_LIMIT_VAR};
use crate::report::RunReport;
use crate::reproduce::{reproduce, ReproduceOptions, DEFAULT_SEED};
use crate::structure::{builtin, builtin_names, parse_structure, Structure};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "paracons", version, about = "Explosion principles and negation-free paraconsistency on finite structures")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Variables of the formula fragment used for matrix logics.
    #[arg(long, global = true, default_value_t = 2)]
    pub fragment_vars: usize,
    /// Depth bound of the formula fragment.
    #[arg(long, global = true, default_value_t = 2)]
    pub fragment_depth: usize,
    /// Refuse fragments with more formulas than this.
    #[arg(long, global = true, env = FORMULA_LIMIT_VAR, default_value_t = paracons_core::formulas::DEFAULT_FORMULA_LIMIT)]
    pub formula_limit: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Random,
    /// Smallest carrier size (up to --size) with a witness.
    Minimal,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every applicable classifier on a structure.
    Analyze {
        /// Structure file, or the name of a built-in structure.
        structure: String,
    },
    /// Print the consequences of a premise set.
    Closure {
        structure: String,
        /// Premises: element names, or formulas for matrix logics.
        gamma: Vec<String>,
    },
    /// Quasi-negation sets and their properties.
    Qn {
        structure: String,
        /// Subjects (default: every element, or the fragment variables).
        subjects: Vec<String>,
        /// Restrict the universe that QN sets range over.
        #[arg(long, num_args = 1..)]
        universe: Option<Vec<String>>,
    },
    /// Enumerate explicit consequence tables matching a predicate.
    Search {
        #[arg(long)]
        size: usize,
        /// Comma-separated atoms, each optionally prefixed with `not_`.
        #[arg(long, default_value = "")]
        pred: String,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// Probability of each element in a random consequence set.
        #[arg(long, default_value_t = 0.5)]
        bias: f64,
        /// Number of lowest-index witnesses to report.
        #[arg(long, default_value_t = 5)]
        witnesses: usize,
    },
    /// Re-check the built-in examples and theorem suites.
    ReproducePaper {
        /// Comma-separated groups to run.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// List the built-in structures.
    List,
}

fn load(arg: &str) -> Result<(Structure, String, Vec<u8>)> {
    let path = Path::new(arg);
    if path.is_file() {
        let bytes = std::fs::read(path).map_err(|e| Error::InvalidStructure(format!("{arg}: {e}")))?;
        let text = String::from_utf8(bytes.clone()).map_err(|e| Error::InvalidStructure(format!("{arg}: {e}")))?;
        let s = parse_structure(&text).map_err(|e| match e {
            Error::InvalidStructure(m) => Error::InvalidStructure(format!("{arg}: {m}")),
            other => other,
        })?;
        return Ok((s, arg.to_string(), bytes));
    }
    match builtin(arg)? {
        Some(s) => Ok((s, format!("built-in {arg}"), format!("builtin:{arg}").into_bytes())),
        None => Err(Error::InvalidStructure(format!(
            "`{arg}` is neither a file nor a built-in structure"
        ))),
    }
}

fn emit_report(out: &mut dyn Write, report: &RunReport, json: bool) -> std::io::Result<i32> {
    if json {
        out.write_all(report.to_json().as_bytes())?;
    } else {
        out.write_all(report.render_text().as_bytes())?;
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("outputs serialize") + "\n"
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<std::io::Result<i32>> {
    let g = &cli.global;
    let cfg = FragmentConfig {
        vars: g.fragment_vars,
        depth: g.fragment_depth,
        limit: g.formula_limit,
    };
    let json = g.json;
    Ok(match cli.command {
        Command::Analyze { structure } => {
            let (s, input, bytes) = load(&structure)?;
            let items = analysis::analyze(&s, cfg)?;
            let mut report = RunReport::new("analyze", input, &bytes, items);
            if matches!(s, Structure::Matrix(_)) {
                report.fragment = Some(cfg.info());
            }
            emit_report(out, &report, json)
        }
        Command::Closure { structure, gamma } => {
            let (s, _, _) = load(&structure)?;
            let c = analysis::closure(&s, &gamma, cfg)?;
            let text = if json { to_json(&c) } else { c.render_text() };
            out.write_all(text.as_bytes()).map(|_| EXIT_OK)
        }
        Command::Qn {
            structure,
            subjects,
            universe,
        } => {
            let (s, _, _) = load(&structure)?;
            let q = analysis::qn(&s, &subjects, universe.as_deref(), cfg)?;
            let text = if json { to_json(&q) } else { q.render_text() };
            let code = if q.passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
            out.write_all(text.as_bytes()).map(|_| code)
        }
        Command::Search {
            size,
            pred,
            mode,
            seed,
            samples,
            bias,
            witnesses,
        } => {
            let pred: StructurePredicate = pred.parse()?;
            let text = match mode {
                Mode::Minimal => {
                    let r = minimal_example(&pred, size)?;
                    if json {
                        to_json(&r)
                    } else {
                        render_minimal(&r)
                    }
                }
                Mode::Exhaustive | Mode::Random => {
                    let m = if mode == Mode::Exhaustive {
                        SearchMode::Exhaustive
                    } else {
                        SearchMode::Random { seed, samples, bias }
                    };
                    let r = enumerate_structures(size, &pred, m, witnesses)?;
                    if json {
                        to_json(&r)
                    } else {
                        render_search(&r)
                    }
                }
            };
            out.write_all(text.as_bytes()).map(|_| EXIT_OK)
        }
        Command::ReproducePaper { only, seed } => {
            let report = reproduce(&ReproduceOptions {
                only,
                fragment: cfg,
                seed,
            })?;
            emit_report(out, &report, json)
        }
        Command::List => {
            let names: Vec<&str> = builtin_names().collect();
            let text = if json { to_json(&names) } else { names.join("\n") + "\n" };
            out.write_all(text.as_bytes()).map(|_| EXIT_OK)
        }
    })
}

fn render_witness_table(w: &paracons_core::search::Witness) -> String {
    let c = &w.carrier;
    w.table
        .iter()
        .enumerate()
        .map(|(g, s)| {
            format!(
                "    C({}) = {}\n",
                c.render(paracons_core::structures::ElementSet(g as u64)),
                c.render(*s)
            )
        })
        .collect()
}

fn render_search(r: &paracons_core::search::SearchResult) -> String {
    let mut s = format!(
        "size {} predicate `{}`: {} of {} tables match (space {})\n",
        r.size, r.predicate, r.count, r.visited, r.space
    );
    if let Some(rng) = r.rng {
        s.push_str(&format!("rng: {rng}\n"));
    }
    for w in &r.witnesses {
        s.push_str(&format!("witness #{}\n{}", w.index, render_witness_table(w)));
    }
    s
}

fn render_minimal(r: &paracons_core::search::MinimalResult) -> String {
    let counts: Vec<String> = r.counts.iter().enumerate().map(|(i, c)| format!("n={}: {c}", i + 1)).collect();
    let mut s = format!("predicate `{}`, counts {}\n", r.predicate, counts.join(", "));
    match (&r.minimal_size, &r.witness) {
        (Some(n), Some(w)) => s.push_str(&format!("minimal size {n}, witness #{}\n{}", w.index, render_witness_table(w))),
        _ => s.push_str(&format!("no witness up to size {}\n", r.n_max)),
    }
    s
}

/// Runs the command line `args` and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(Ok(code)) => code,
        Ok(Err(io)) => {
            let _ = writeln!(err, "error: {io}");
            EXIT_INPUT_ERROR
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}
