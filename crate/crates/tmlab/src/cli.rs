//! Command-line front end. [`run`] takes the argument list and output
//! streams and returns the process exit code.
//!
//! Exit codes: 0 success or a passing check, 1 a failing check, 2 usage
//! errors, 3 unreadable or malformed files, 10/20 SAT/UNSAT from `solve`,
//! 70 internal invariant breach.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use tmlab_core::argument::{analyze_kim_argument, is_valid_argument};
use tmlab_core::kim::{
    build_kim_machine, check_counting_claims, run_kim_machine, transition_metrics, KimError,
    KimMachine,
};
use tmlab_core::machine::{ComputationHistory, MachineError};
use tmlab_core::reduction::{encode_history, input_part, reduce, run_part, ReductionError};
use tmlab_core::sat::{solve_bruteforce, solve_dpll};
use tmlab_core::{merge_tables, Machine};

use crate::format::dimacs::{from_dimacs, render_model, to_dimacs};
use crate::format::history::{parse_history, render_history};
use crate::format::machine::{parse_machine, parse_table, render_table};
use crate::format::prop::parse_schema;
use crate::format::{parse_input, render_input};
use crate::report::{
    kim_analysis_json, kim_analysis_text, kim_report_json, kim_report_text, library_json, to_json,
    validity_json,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FILE: i32 = 3;
pub const EXIT_SAT: i32 = 10;
pub const EXIT_UNSAT: i32 = 20;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug, Parser)]
#[command(
    name = "tmlab",
    version,
    about = "Turing machine to SAT reduction workbench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Machine description file.
    #[arg(short = 'm', long = "machine")]
    machine: PathBuf,
    /// Input string; one symbol per character unless space separated.
    #[arg(short = 'i', long = "input", allow_hyphen_values = true)]
    input: String,
    /// Step bound T.
    #[arg(short = 'T', long = "bound")]
    bound: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PartArg {
    All,
    Input,
    Run,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduce a bounded acceptance question to labeled DIMACS.
    Reduce {
        #[command(flatten)]
        run: RunArgs,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "all")]
        part: PartArg,
    },
    /// Solve a DIMACS file. Exits 10 when satisfiable, 20 otherwise.
    Solve {
        file: PathBuf,
        /// Enumerate all assignments instead of running DPLL.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Compare the simulator with the solver on one case.
    Verify {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Computation history tools.
    #[command(subcommand)]
    History(HistoryCommand),
    /// Merge two transition tables behind a fresh selector state.
    Merge {
        #[arg(short = 'a')]
        a: PathBuf,
        #[arg(short = 'b')]
        b: PathBuf,
    },
    /// Build and run the parity-counting machine over a run-part library.
    #[command(subcommand)]
    Kim(KimCommand),
    /// Check an argument schema; without --schema, analyze the built-in one.
    Argue {
        #[arg(long)]
        schema: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run the fixture property suite.
    CorpusTest,
}

#[derive(Debug, Subcommand)]
enum HistoryCommand {
    /// Print a shortest accepting history, or exit 1 if none exists.
    Witness {
        #[command(flatten)]
        run: RunArgs,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Encode a history as DIMACS together with its induced assignment.
    Encode {
        /// Machine file; defaults to the history's `machine:` entry.
        #[arg(short = 'm', long = "machine")]
        machine: Option<PathBuf>,
        #[arg(long)]
        history: PathBuf,
        #[arg(short = 'T', long = "bound")]
        bound: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Write the induced assignment here in solver output form.
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Print the particular table a history uses.
    Extract {
        #[arg(short = 'm', long = "machine")]
        machine: Option<PathBuf>,
        #[arg(long)]
        history: PathBuf,
    },
}

#[derive(Debug, Args)]
struct LibraryArgs {
    /// Directory of `.hist` files, read in file name order.
    #[arg(long)]
    library: PathBuf,
    /// Machine whose input part is prepended to every entry.
    #[arg(long)]
    base: PathBuf,
    #[arg(short = 'T', long = "bound")]
    bound: usize,
}

#[derive(Debug, Subcommand)]
enum KimCommand {
    /// Summarize the run-part library.
    Build {
        #[command(flatten)]
        lib: LibraryArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run on one input and report every instance.
    Run {
        #[command(flatten)]
        lib: LibraryArgs,
        #[arg(short = 'i', long = "input", allow_hyphen_values = true)]
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Report i, j, k at one satisfiable instance. Exits 0 when i > j > k.
    Metrics {
        #[command(flatten)]
        lib: LibraryArgs,
        #[arg(short = 'i', long = "input", allow_hyphen_values = true)]
        input: String,
        /// Instance index; defaults to the first satisfiable one.
        #[arg(long)]
        chosen: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    File(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::File(_) => EXIT_FILE,
            Failure::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::File(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::File(e.to_string())
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure::Internal(e.to_string())
}

fn reduction_failure(e: ReductionError) -> Failure {
    match e {
        ReductionError::ZeroBound
        | ReductionError::Machine(_)
        | ReductionError::InputTooLong { .. }
        | ReductionError::NotAccepting
        | ReductionError::BoundExceeded { .. } => usage(e),
        _ => internal(e),
    }
}

fn kim_failure(e: KimError) -> Failure {
    match e {
        KimError::Entry { .. } => Failure::File(e.to_string()),
        KimError::ZeroBound
        | KimError::Input(_)
        | KimError::OutOfRange(_)
        | KimError::NoHistory(_) => usage(e),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::File(format!("{}: {e}", path.display())))
}

fn load_machine(path: &Path) -> Result<Machine, Failure> {
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "machine".to_string());
    parse_machine(&read(path)?, &name)
        .map_err(|e| Failure::File(format!("{}: {e}", path.display())))
}

/// Loads a history file and its machine, taken from `machine` or else from
/// the file's `machine:` entry relative to its directory.
fn load_history(
    path: &Path,
    machine: Option<&Path>,
) -> Result<(Machine, ComputationHistory), Failure> {
    let file = parse_history(&read(path)?)
        .map_err(|e| Failure::File(format!("{}: {e}", path.display())))?;
    let machine_path = match (machine, &file.machine) {
        (Some(m), _) => m.to_path_buf(),
        (None, Some(rel)) => path.parent().unwrap_or(Path::new(".")).join(rel),
        (None, None) => {
            return Err(usage(format!(
                "{}: no `machine:` entry; pass --machine",
                path.display()
            )))
        }
    };
    Ok((load_machine(&machine_path)?, file.history))
}

fn emit(out: &mut dyn Write, output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::File(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn load_kim(lib: &LibraryArgs) -> Result<KimMachine, Failure> {
    let base = load_machine(&lib.base)?;
    let mut paths: Vec<PathBuf> = fs::read_dir(&lib.library)
        .map_err(|e| Failure::File(format!("{}: {e}", lib.library.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "hist"))
        .collect();
    paths.sort();
    let mut machines: BTreeMap<PathBuf, Machine> = BTreeMap::new();
    let mut histories = Vec::with_capacity(paths.len());
    for path in &paths {
        let file = parse_history(&read(path)?)
            .map_err(|e| Failure::File(format!("{}: {e}", path.display())))?;
        let rel = file.machine.ok_or_else(|| {
            Failure::File(format!(
                "{}: library entries need a `machine:` entry",
                path.display()
            ))
        })?;
        let machine_path = lib.library.join(rel);
        let machine = match machines.get(&machine_path) {
            Some(m) => m.clone(),
            None => {
                let m = load_machine(&machine_path)?;
                machines.insert(machine_path, m.clone());
                m
            }
        };
        histories.push((machine, file.history));
    }
    build_kim_machine(histories, lib.bound, base).map_err(kim_failure)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Reduce { run, output, part } => {
            let m = load_machine(&run.machine)?;
            let f = reduce(&m, &parse_input(&run.input), run.bound).map_err(reduction_failure)?;
            let f = match part {
                PartArg::All => f,
                PartArg::Input => input_part(&f),
                PartArg::Run => run_part(&f),
            };
            emit(out, output.as_deref(), &to_dimacs(&f))?;
            Ok(EXIT_OK)
        }
        Command::Solve { file, bruteforce } => {
            let doc = from_dimacs(&read(&file)?)
                .map_err(|e| Failure::File(format!("{}: {e}", file.display())))?;
            let result = if bruteforce {
                solve_bruteforce(&doc.formula).map_err(usage)?
            } else {
                solve_dpll(&doc.formula)
            };
            out.write_all(render_model(result.model()).as_bytes())?;
            Ok(if result.is_sat() {
                EXIT_SAT
            } else {
                EXIT_UNSAT
            })
        }
        Command::Verify { run } => {
            let m = load_machine(&run.machine)?;
            let y = parse_input(&run.input);
            let witness = m.accepts_within(&y, run.bound).map_err(usage)?;
            let f = reduce(&m, &y, run.bound).map_err(reduction_failure)?;
            let sat = solve_dpll(&f.to_cnf()).is_sat();
            let agree = sat == witness.is_some();
            writeln!(
                out,
                "oracle={}, sat={}, {}",
                if witness.is_some() {
                    "accept"
                } else {
                    "reject"
                },
                if sat { "SAT" } else { "UNSAT" },
                if agree { "agree" } else { "disagree" }
            )?;
            Ok(if agree { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::History(cmd) => history(cmd, out),
        Command::Merge { a, b } => {
            let ta = parse_table(&read(&a)?)
                .map_err(|e| Failure::File(format!("{}: {e}", a.display())))?;
            let tb = parse_table(&read(&b)?)
                .map_err(|e| Failure::File(format!("{}: {e}", b.display())))?;
            let merged = merge_tables(&ta, &tb);
            out.write_all(render_table(&merged).as_bytes())?;
            writeln!(
                out,
                "# states: {}, entries: {}, deterministic: {}",
                merged.states().len(),
                merged.entry_count(),
                merged.is_deterministic()
            )?;
            Ok(EXIT_OK)
        }
        Command::Kim(cmd) => kim(cmd, out),
        Command::Argue { schema, json } => match schema {
            None => {
                let report = kim_analysis_json(&analyze_kim_argument());
                let text = if json {
                    to_json(&report)
                } else {
                    kim_analysis_text(&report)
                };
                out.write_all(text.as_bytes())?;
                Ok(EXIT_OK)
            }
            Some(path) => {
                let arg = parse_schema(&read(&path)?)
                    .map_err(|e| Failure::File(format!("{}: {e}", path.display())))?;
                let v = is_valid_argument(&arg).map_err(usage)?;
                let report = validity_json(&arg, &v);
                if json {
                    out.write_all(to_json(&report).as_bytes())?;
                } else {
                    writeln!(out, "valid={} vacuous={}", report.valid, report.vacuous)?;
                    if let Some(c) = &report.counterexample {
                        let parts: Vec<String> =
                            c.iter().map(|(k, v)| format!("{k}={v}")).collect();
                        writeln!(out, "counterexample: {}", parts.join(" "))?;
                    }
                }
                Ok(if v.valid { EXIT_OK } else { EXIT_CHECK_FAILED })
            }
        },
        Command::CorpusTest => {
            let (text, passed) = crate::corpus::run_suite();
            out.write_all(text.as_bytes())?;
            Ok(if passed { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}

fn history(cmd: HistoryCommand, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        HistoryCommand::Witness { run, output } => {
            let m = load_machine(&run.machine)?;
            let y = parse_input(&run.input);
            match m.accepts_within(&y, run.bound).map_err(usage)? {
                Some(h) => {
                    let machine = run.machine.to_string_lossy();
                    emit(out, output.as_deref(), &render_history(&h, Some(&machine)))?;
                    Ok(EXIT_OK)
                }
                None => {
                    writeln!(
                        out,
                        "no accepting history of {} on \"{}\" within {} steps",
                        m.name(),
                        render_input(&y),
                        run.bound
                    )?;
                    Ok(EXIT_CHECK_FAILED)
                }
            }
        }
        HistoryCommand::Encode {
            machine,
            history,
            bound,
            output,
            model,
        } => {
            let (m, h) = load_history(&history, machine.as_deref())?;
            let enc = encode_history(&m, &h, bound).map_err(reduction_failure)?;
            if !enc.formula.is_satisfied_by(&enc.assignment) {
                return Err(internal("induced assignment violates the encoding"));
            }
            emit(out, output.as_deref(), &to_dimacs(&enc.formula))?;
            if let Some(p) = model {
                fs::write(&p, render_model(Some(&enc.assignment)))
                    .map_err(|e| Failure::File(format!("{}: {e}", p.display())))?;
            }
            Ok(EXIT_OK)
        }
        HistoryCommand::Extract { machine, history } => {
            let (m, h) = load_history(&history, machine.as_deref())?;
            let table = m
                .extract_particular_table(&h)
                .map_err(|e: MachineError| usage(e))?;
            if !table.generates(&h) {
                return Err(internal("extracted table does not generate its history"));
            }
            out.write_all(render_table(&table).as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

fn kim(cmd: KimCommand, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        KimCommand::Build { lib, json } => {
            let km = load_kim(&lib)?;
            let summary = library_json(&km);
            if json {
                out.write_all(to_json(&summary).as_bytes())?;
            } else {
                writeln!(
                    out,
                    "library of {} entries, base {}, bound {}",
                    summary.entries.len(),
                    summary.base,
                    summary.bound
                )?;
                for e in &summary.entries {
                    writeln!(
                        out,
                        "  c^r_{}: {} on \"{}\", {} transitions, {} clauses",
                        e.index, e.machine, e.input, e.history_len, e.clauses
                    )?;
                }
                for (a, b) in &summary.incompatible_pairs {
                    writeln!(out, "  entries {a} and {b} have incompatible grids")?;
                }
            }
            Ok(EXIT_OK)
        }
        KimCommand::Run { lib, input, json } => {
            let km = load_kim(&lib)?;
            let report = run_kim_machine(&km, &parse_input(&input)).map_err(kim_failure)?;
            let rendered = kim_report_json(&report, None).map_err(internal)?;
            let text = if json {
                to_json(&rendered)
            } else {
                kim_report_text(&rendered)
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
        KimCommand::Metrics {
            lib,
            input,
            chosen,
            json,
        } => {
            let km = load_kim(&lib)?;
            let report = run_kim_machine(&km, &parse_input(&input)).map_err(kim_failure)?;
            let idx = chosen
                .or_else(|| report.first_satisfiable())
                .ok_or_else(|| usage("no satisfiable instance to measure"))?;
            let m = transition_metrics(&report, idx).map_err(kim_failure)?;
            let claims = check_counting_claims(m);
            let rendered = kim_report_json(&report, Some(idx)).map_err(internal)?;
            if json {
                out.write_all(to_json(&rendered).as_bytes())?;
            } else {
                writeln!(out, "instance {idx}: i={} j={} k={}", m.i, m.j, m.k)?;
                writeln!(
                    out,
                    "i>j={} j>k={} i=k={} chain={} chain excludes i=k: {}",
                    claims.i_gt_j,
                    claims.j_gt_k,
                    claims.i_eq_k,
                    claims.chain,
                    claims.chain_excludes_equality
                )?;
            }
            Ok(if claims.chain {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
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
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match catch_unwind(AssertUnwindSafe(|| dispatch(cli, out))) {
        Ok(Ok(code)) => code,
        Ok(Err(f)) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_default();
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str) -> String {
        format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("tmlab").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn reduce_input_part_has_four_unit_clauses() {
        let m = fixture("m_accept1.tm");
        let (code, out, _) = call(&["reduce", "-m", &m, "-i", "1", "-T", "1", "--part", "input"]);
        assert_eq!(code, 0);
        let doc = from_dimacs(&out).unwrap();
        assert_eq!(doc.formula.clauses().len(), 4);
        assert!(doc.formula.clauses().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn verify_reports_agreement() {
        let m = fixture("m_accept1.tm");
        let (code, out, _) = call(&["verify", "-m", &m, "-i", "0", "-T", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "oracle=reject, sat=UNSAT, agree\n");
    }

    #[test]
    fn argue_defaults_to_the_built_in_analysis() {
        let (code, out, _) = call(&["argue", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["valid"], true);
        assert_eq!(v["vacuous"], true);
        assert_eq!(v["premise_set_satisfiable"], false);
    }

    #[test]
    fn usage_and_file_errors() {
        assert_eq!(call(&["reduce", "-m", "x.tm"]).0, EXIT_USAGE);
        assert_eq!(call(&["nonsense"]).0, EXIT_USAGE);
        assert_eq!(
            call(&["reduce", "-m", "/nonexistent.tm", "-i", "1", "-T", "1"]).0,
            EXIT_FILE
        );
        let m = fixture("m_accept1.tm");
        let (code, _, err) = call(&["reduce", "-m", &m, "-i", "2", "-T", "1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.starts_with("error:"));
        assert_eq!(
            call(&["reduce", "-m", &m, "-i", "1", "-T", "0"]).0,
            EXIT_USAGE
        );
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }
}
