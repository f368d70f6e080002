//! Command implementations. Each returns its report; printing and exit
//! codes are left to the binary.

use std::path::Path;
use std::time::{Duration, Instant};

use mldual::likelihood::{build_system, ml_degree, Arithmetic, DataVector, Formulation, Options, Saturation};
use mldual::solver::critical_points;
use mldual::variety::dual_variety;
use mldual::zoo::{self, Role};
use mldual::{Budget, Error, Field, ResourceKind, SaturationMode};

use crate::model_file::ModelFile;
use crate::report::{BenchReport, BenchRow, Header, Resources, RunReport};
use crate::FORMAT_VERSION;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    /// 1 usage, 2 bad data, 3 resource limit, 4 genericity failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(e) => match e {
                Error::ResourceLimit { .. } => 3,
                Error::GenericityFailure(_)
                | Error::NonGenericData(_)
                | Error::NotZeroDimensional
                | Error::NonSeparating(_)
                | Error::MultipleRoot(_)
                | Error::CountMismatch(_) => 4,
                _ => 2,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Resolves a model argument: a file path (with or without `.toml`), or a
/// zoo name, optionally written as `zoo/NAME`.
pub fn load_model(arg: &str) -> CliResult<ModelFile> {
    for candidate in [arg.to_string(), format!("{arg}.toml")] {
        let p = Path::new(&candidate);
        if p.is_file() {
            return Ok(ModelFile::read(p)?);
        }
    }
    let name = arg.strip_prefix("zoo/").unwrap_or(arg);
    match zoo::get(name) {
        Some(e) => Ok(ModelFile::from_zoo(&e)),
        None => Err(CliError::Usage(format!("`{arg}` is neither a model file nor a zoo entry"))),
    }
}

pub fn default_formulation(role: Role) -> Formulation {
    match role {
        Role::Primal => Formulation::Conormal,
        Role::Dual => Formulation::Dual,
    }
}

fn check_method(role: Role, f: Formulation) -> CliResult<()> {
    let want = if f.takes_dual() { Role::Dual } else { Role::Primal };
    if want != role {
        return Err(CliError::Usage(format!("method {f} needs a {want} model, got a {role} one")));
    }
    Ok(())
}

fn time_limit_s() -> Option<f64> {
    std::env::var("MLDUAL_TIME_LIMIT").ok().and_then(|v| v.trim().parse().ok())
}

/// Dual variety of a primal model, with exact saturation.
pub fn dualize(mf: &ModelFile, budget: &Budget) -> CliResult<ModelFile> {
    if mf.role()? != Role::Primal {
        return Err(CliError::Usage(format!("`{}` is already a dual model", mf.name)));
    }
    let x = mf.model()?;
    let xs = dual_variety(&x, SaturationMode::Exact, budget)?;
    let description = format!("dual variety of {}", mf.name);
    Ok(ModelFile::from_model(&format!("{}-dual", mf.name), Role::Dual, &description, &xs))
}

pub struct MlDegreeArgs {
    pub method: Option<Formulation>,
    pub seed: u64,
    pub exact_saturation: bool,
    pub arithmetic: Arithmetic,
}

fn arithmetic_name(a: Arithmetic) -> &'static str {
    match a {
        Arithmetic::Rational => "rational",
        Arithmetic::Modular => "modular",
    }
}

fn saturation_name(exact: bool) -> &'static str {
    if exact {
        "exact"
    } else {
        "generic"
    }
}

pub fn ml_degree_cmd(mf: &ModelFile, args: &MlDegreeArgs, budget: &Budget) -> CliResult<RunReport> {
    let role = mf.role()?;
    let f = args.method.unwrap_or_else(|| default_formulation(role));
    check_method(role, f)?;
    let model = mf.model()?;
    let t = Instant::now();
    let r = ml_degree(&model, f, args.seed, args.exact_saturation, args.arithmetic, budget)?;
    let header = Header {
        command: "ml-degree",
        model: &mf.name,
        role: role.name(),
        seed: args.seed,
        saturation: saturation_name(args.exact_saturation),
        arithmetic: arithmetic_name(args.arithmetic),
        wall_time_s: t.elapsed().as_secs_f64(),
        resources: Resources::new(budget, time_limit_s()),
    };
    Ok(RunReport::ml_degree(header, &r))
}

pub struct CriticalPointsArgs {
    pub data: Option<String>,
    pub method: Option<Formulation>,
    pub seed: u64,
    pub exact_saturation: bool,
    pub exact_eliminants: bool,
}

pub fn critical_points_cmd(mf: &ModelFile, args: &CriticalPointsArgs, budget: &Budget) -> CliResult<RunReport> {
    let role = mf.role()?;
    let f = args.method.unwrap_or(match role {
        Role::Primal => Formulation::Standard,
        Role::Dual => Formulation::Dual,
    });
    check_method(role, f)?;
    let text = match (&args.data, &mf.data) {
        (Some(d), _) => d.clone(),
        (None, Some(d)) => d.join(","),
        (None, None) => return Err(CliError::Usage(format!("`{}` ships no data; pass --data", mf.name))),
    };
    let u = DataVector::parse(&text)?;
    let model = mf.model()?;
    let t = Instant::now();
    let saturation = if args.exact_saturation { Saturation::Exact } else { Saturation::Generic(args.seed) };
    let sys = build_system(&model, f, &u, Options { saturation, field: Field::Rational }, budget)?;
    let cps = critical_points(&sys, args.seed, args.exact_eliminants, budget)?;
    let header = Header {
        command: "critical-points",
        model: &mf.name,
        role: role.name(),
        seed: args.seed,
        saturation: saturation_name(args.exact_saturation),
        arithmetic: "rational",
        wall_time_s: t.elapsed().as_secs_f64(),
        resources: Resources::new(budget, time_limit_s()),
    };
    Ok(RunReport::critical_points(header, &cps, sys.warnings.clone()))
}

pub struct BenchArgs {
    pub suite: String,
    pub budget_s: f64,
    pub include_stretch: bool,
    pub seed: u64,
    pub exact_saturation: bool,
    pub arithmetic: Arithmetic,
}

/// Dual-method ML degrees of the table ideals, one worker per model. A
/// failing model is recorded in its row and the run continues.
pub fn bench(args: &BenchArgs) -> CliResult<BenchReport> {
    if args.suite != "table31" {
        return Err(CliError::Usage(format!("unknown suite `{}`; the only suite is table31", args.suite)));
    }
    if !(args.budget_s > 0.0) {
        return Err(CliError::Usage("--budget must be positive".into()));
    }
    let mut names: Vec<&str> = zoo::TABLE_DEFAULT.to_vec();
    if args.include_stretch {
        names.extend(zoo::TABLE_STRETCH);
    }
    let caps = Budget::from_env();
    let rows = std::thread::scope(|scope| {
        let handles: Vec<_> = names
            .iter()
            .map(|&name| {
                scope.spawn(move || {
                    let e = zoo::get(name).expect("table entries exist");
                    let budget = caps.with_deadline(Duration::from_secs_f64(args.budget_s));
                    let t = Instant::now();
                    let r = e
                        .model()
                        .and_then(|m| ml_degree(&m, Formulation::Dual, args.seed, args.exact_saturation, args.arithmetic, &budget));
                    let time_s = t.elapsed().as_secs_f64();
                    let (ml, status, detail) = match r {
                        Ok(r) if Some(r.degree) == e.ml_degree => (Some(r.degree), "ok", None),
                        Ok(r) => (Some(r.degree), "mismatch", None),
                        Err(Error::ResourceLimit { kind: ResourceKind::WallClock, detail }) => (None, "timeout", Some(detail)),
                        Err(err @ Error::ResourceLimit { .. }) => (None, "resource-limit", Some(err.to_string())),
                        Err(err) => (None, "error", Some(err.to_string())),
                    };
                    BenchRow { model: name.into(), expected: e.ml_degree, ml_degree: ml, time_s, status: status.into(), detail }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("bench worker panicked")).collect()
    });
    Ok(BenchReport {
        format_version: FORMAT_VERSION,
        suite: args.suite.clone(),
        formulation: Formulation::Dual.name().into(),
        seed: args.seed,
        arithmetic: arithmetic_name(args.arithmetic).into(),
        budget_s: args.budget_s,
        rows,
    })
}
