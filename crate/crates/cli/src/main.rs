use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mldual::likelihood::{Arithmetic, Formulation};
use mldual::zoo;
use mldual::Budget;
use mldual_cli::commands::{
    bench, critical_points_cmd, dualize, load_model, ml_degree_cmd, BenchArgs, CliError, CliResult, CriticalPointsArgs,
    MlDegreeArgs,
};
use mldual_cli::model_file::ModelFile;

/// ML degrees and critical points of algebraic statistical models through
/// their dual varieties.
///
/// Budgets come from MLDUAL_TIME_LIMIT (seconds), MLDUAL_MAX_BASIS and
/// MLDUAL_MAX_COEFF_BITS. The hyperplane added to a primal model is
/// ps - (p0 + ... + pn), so that ps equals the sum of the coordinates.
#[derive(Parser)]
#[command(name = "mldual", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Standard,
    Conormal,
    Dual,
    Lagrange,
}

impl From<Method> for Formulation {
    fn from(m: Method) -> Self {
        match m {
            Method::Standard => Formulation::Standard,
            Method::Conormal => Formulation::Conormal,
            Method::Dual => Formulation::Dual,
            Method::Lagrange => Formulation::Lagrange,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ArithmeticArg {
    Modular,
    Rational,
}

impl From<ArithmeticArg> for Arithmetic {
    fn from(a: ArithmeticArg) -> Self {
        match a {
            ArithmeticArg::Modular => Arithmetic::Modular,
            ArithmeticArg::Rational => Arithmetic::Rational,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Computes the dual variety of a primal model and writes its model file.
    Dualize {
        model: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// ML degree from two seeded random data draws.
    MlDegree {
        model: String,
        /// Defaults to dual for dual models and conormal for primal ones.
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Saturate exactly instead of localizing at a random combination.
        #[arg(long)]
        exact_saturation: bool,
        #[arg(long, value_enum, default_value = "modular")]
        arithmetic: ArithmeticArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solves the likelihood equations for given data.
    CriticalPoints {
        model: String,
        /// Comma-separated nonzero rationals such as `2/40,13/40,5/40,20/40`.
        #[arg(long)]
        data: Option<String>,
        /// Defaults to dual for dual models and standard for primal ones.
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        exact_saturation: bool,
        /// Also report the exact eliminant of every coordinate.
        #[arg(long)]
        exact_eliminants: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dual-method ML degrees of the table ideals.
    Bench {
        #[arg(long)]
        suite: String,
        /// Per-model wall-clock budget in seconds.
        #[arg(long, default_value_t = 300.0)]
        budget: f64,
        /// Adds I3, I6 and I7.
        #[arg(long)]
        include_stretch: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        exact_saturation: bool,
        #[arg(long, value_enum, default_value = "modular")]
        arithmetic: ArithmeticArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Built-in models.
    Zoo {
        #[command(subcommand)]
        action: ZooAction,
    },
}

#[derive(Subcommand)]
enum ZooAction {
    /// One line per model.
    List,
    /// Prints a model file.
    Show { name: String },
    /// Writes every model file into a directory.
    Export { dir: PathBuf },
}

fn emit(text: &str, output: Option<&PathBuf>) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            if !text.ends_with('\n') {
                let _ = out.write_all(b"\n");
            }
            Ok(())
        }
    }
}

fn run(cmd: Command) -> CliResult<()> {
    let budget = Budget::from_env();
    match cmd {
        Command::Dualize { model, output } => {
            let mf = load_model(&model)?;
            let dual = dualize(&mf, &budget)?;
            let degrees: Vec<String> = dual
                .model()?
                .generators()
                .iter()
                .map(|g| g.total_degree().unwrap_or(0).to_string())
                .collect();
            eprintln!("{} generators of degrees {}", degrees.len(), degrees.join(","));
            emit(&dual.to_text(), output.as_ref())
        }
        Command::MlDegree { model, method, seed, exact_saturation, arithmetic, output } => {
            let mf = load_model(&model)?;
            let args = MlDegreeArgs { method: method.map(Into::into), seed, exact_saturation, arithmetic: arithmetic.into() };
            let r = ml_degree_cmd(&mf, &args, &budget)?;
            eprintln!("ML degree of {} ({}): {}", r.model, r.formulation, r.ml_degree);
            emit(&r.to_json(), output.as_ref())
        }
        Command::CriticalPoints { model, data, method, seed, exact_saturation, exact_eliminants, output } => {
            let mf = load_model(&model)?;
            let args = CriticalPointsArgs { data, method: method.map(Into::into), seed, exact_saturation, exact_eliminants };
            let r = critical_points_cmd(&mf, &args, &budget)?;
            eprintln!("{} critical points of {} ({})", r.ml_degree, r.model, r.formulation);
            emit(&r.to_json(), output.as_ref())
        }
        Command::Bench { suite, budget, include_stretch, seed, exact_saturation, arithmetic, output } => {
            let args = BenchArgs { suite, budget_s: budget, include_stretch, seed, exact_saturation, arithmetic: arithmetic.into() };
            let r = bench(&args)?;
            eprintln!("{:<6} {:>8} {:>8} {:>10}  status", "model", "expected", "degree", "time (s)");
            for row in &r.rows {
                let show = |d: Option<usize>| d.map_or("-".to_string(), |d| d.to_string());
                eprintln!(
                    "{:<6} {:>8} {:>8} {:>10.3}  {}",
                    row.model,
                    show(row.expected),
                    show(row.ml_degree),
                    row.time_s,
                    row.status
                );
            }
            emit(&serde_json::to_string_pretty(&r).expect("reports serialize"), output.as_ref())
        }
        Command::Zoo { action } => match action {
            ZooAction::List => {
                let mut text = String::new();
                for e in zoo::entries() {
                    let deg = e.ml_degree.map_or("-".to_string(), |d| d.to_string());
                    text.push_str(&format!("{:<13} {:<7} {:>3}  {}\n", e.name, e.role.name(), deg, e.description));
                }
                emit(&text, None)?;
                eprintln!("table ideals keep the published numbering, which has no I9");
                Ok(())
            }
            ZooAction::Show { name } => {
                let key = name.strip_prefix("zoo/").unwrap_or(&name);
                let e = zoo::get(key).ok_or_else(|| CliError::Usage(format!("no zoo entry `{name}`")))?;
                emit(&ModelFile::from_zoo(&e).to_text(), None)
            }
            ZooAction::Export { dir } => {
                std::fs::create_dir_all(&dir)
                    .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dir.display())))?;
                for e in zoo::entries() {
                    let path = dir.join(format!("{}.toml", e.name));
                    emit(&ModelFile::from_zoo(&e).to_text(), Some(&path))?;
                }
                Ok(())
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
