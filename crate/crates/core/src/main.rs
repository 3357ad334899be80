use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use weylkit::expr::parse_module_expression;
use weylkit::filtration::good_pr_filtration_decompose;
use weylkit::verify::{self, CheckStatus, CHECK_IDS};
use weylkit::weyl::decompose_weyl_basis;
use weylkit::{DataSource, Dataset, Error, FormalCharacter};

const EXIT_FAIL: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "weylkit", version, about = "Exact G2 character arithmetic and counterexample verifier")]
struct Cli {
    /// Dataset JSON to use instead of the built-in G2, p = 2 data.
    #[arg(long, global = true, value_name = "FILE")]
    data: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one check, or the whole battery.
    Verify {
        /// Check id; omit (or pass --all) to run every check.
        #[arg(conflicts_with = "all")]
        check_id: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Print the character of a module expression.
    Char {
        expr: String,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, value_enum)]
        decompose: Option<Basis>,
    },
    /// Print the dimension of a module expression.
    Dim { expr: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Weyl,
    Pr,
}

/// A failure carrying its exit code.
struct Exit(u8, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. } | Error::UnknownAtom { .. } => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        Exit(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, msg)) => {
            eprintln!("weylkit: {msg}");
            ExitCode::from(code)
        }
    }
}

fn load(data: Option<PathBuf>) -> Result<Dataset, Exit> {
    let source = data.map_or(DataSource::BuiltIn, DataSource::File);
    Dataset::load(&source).map_err(|e| Exit(EXIT_DATA, format!("cannot load data: {e}")))
}

fn run(cli: Cli) -> Result<u8, Exit> {
    match cli.command {
        Command::Verify {
            check_id,
            all: _,
            format,
            out,
        } => {
            let ids: Vec<&str> = match &check_id {
                Some(id) if CHECK_IDS.contains(&id.as_str()) => vec![id.as_str()],
                Some(id) => {
                    return Err(Exit(
                        EXIT_USAGE,
                        format!("unknown check `{id}`; known checks: {}", CHECK_IDS.join(", ")),
                    ))
                }
                None => CHECK_IDS.to_vec(),
            };
            let ds = load(cli.data)?;
            let reports = verify::run_checks(&ids, &ds)?;
            let body = match format {
                Format::Text => verify::render_text(&reports),
                Format::Json => verify::render_json(&reports),
            };
            match out {
                Some(path) => {
                    std::fs::write(&path, &body)
                        .map_err(|e| Exit(EXIT_DATA, format!("cannot write {}: {e}", path.display())))?;
                    let passed = reports.iter().filter(|r| r.passed()).count();
                    println!("{passed}/{} checks passed; report written to {}", reports.len(), path.display());
                }
                None => print!("{body}"),
            }
            Ok(if reports.iter().any(|r| r.status == CheckStatus::Fail) {
                EXIT_FAIL
            } else if reports.iter().any(|r| r.status == CheckStatus::DataMissing) {
                EXIT_DATA
            } else {
                0
            })
        }
        Command::Char { expr, p, decompose } => {
            let e = parse_module_expression(&expr)?;
            let ds = load(cli.data)?;
            if p != ds.p() {
                return Err(Exit(EXIT_DATA, format!("the dataset is for p = {}, not p = {p}", ds.p())));
            }
            let c = weylkit::eval::evaluate_expression(&e, &ds)?;
            println!("dim {}", c.dimension());
            match decompose {
                None => print_dominant(&c),
                Some(Basis::Weyl) => {
                    let d = decompose_weyl_basis(ds.root_system(), &c)?;
                    for (lam, m) in &d.terms {
                        println!("chi{lam} {m}");
                    }
                    if !d.residual.is_empty() {
                        return Err(Exit(EXIT_DATA, "character is not in the span of Weyl characters".into()));
                    }
                }
                Some(Basis::Pr) => {
                    let v = good_pr_filtration_decompose(&c, ds.p(), 1, ds.table())?;
                    println!("{}", v.status());
                    println!("{}", serde_json::to_string_pretty(&v.to_json()).expect("verdict serializes"));
                }
            }
            Ok(0)
        }
        Command::Dim { expr } => {
            let e = parse_module_expression(&expr)?;
            let ds = load(cli.data)?;
            let d = weylkit::eval::Evaluator::new(&ds).dimension(&e)?;
            println!("{d}");
            Ok(0)
        }
    }
}

/// Dominant weights with multiplicities, reverse lexicographic.
fn print_dominant(c: &FormalCharacter) {
    let mut rows: Vec<_> = c.terms().filter(|(w, _)| w.is_dominant()).collect();
    rows.sort_by(|a, b| b.0.cmp(a.0));
    for (w, m) in rows {
        println!("{w} {m}");
    }
}
