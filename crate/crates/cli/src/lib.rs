//! Batch command-line surface for the exact engines and the spectral oracle.

mod commands;
mod config;
pub mod output;
pub mod parse;
mod verify;

use std::ffi::OsString;
use std::fmt::Display;
use std::path::PathBuf;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde_json::json;

pub use output::Format;
pub use verify::{verify_suite, CheckResult};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, values or config; exit code 2.
    Usage(String),
    /// A failure inside an engine; exit code 1.
    Engine { kind: String, message: String },
    /// `verify` found failing checks; exit code 1.
    Verify(Vec<String>),
}

impl CliError {
    pub fn engine(kind: &str, e: impl Display) -> Self {
        CliError::Engine {
            kind: kind.into(),
            message: e.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (kind, message) = match self {
            CliError::Usage(m) => ("Usage".to_string(), m.clone()),
            CliError::Engine { kind, message } => (kind.clone(), message.clone()),
            CliError::Verify(f) => ("VerifyFailed".to_string(), f.join("; ")),
        };
        json!({ "error": { "kind": kind, "message": message } })
    }
}

/// Variant name of an error enum, read from its `Debug` form.
fn variant_name(e: &impl std::fmt::Debug) -> String {
    let d = format!("{e:?}");
    d.split(|c: char| !c.is_alphanumeric() && c != '_')
        .next()
        .unwrap_or("Error")
        .to_string()
}

impl From<heatcoef::Error> for CliError {
    fn from(e: heatcoef::Error) -> Self {
        CliError::Engine {
            kind: variant_name(&e),
            message: e.to_string(),
        }
    }
}

impl From<heatcoef_oracle::OracleError> for CliError {
    fn from(e: heatcoef_oracle::OracleError) -> Self {
        match e {
            heatcoef_oracle::OracleError::Core(inner) => inner.into(),
            e => CliError::Engine {
                kind: variant_name(&e),
                message: e.to_string(),
            },
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "heatcoef", version, about = "Heat trace and heat content coefficients")]
pub struct Cli {
    /// Flat `key = value` file; keys are long flag names of the chosen command.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Heat trace coefficients a_n on the circle or as local jets.
    TraceCoeffs(TraceArgs),
    /// Boundary heat content coefficients, or the Xi table.
    ContentCoeffs(ContentArgs),
    /// Spectral oracle: heat sums and small-t coefficient fits.
    OracleFit(FitArgs),
    /// Perturb phi1 so that beta_{2j} hits prescribed targets.
    MatchTargets(MatchArgs),
    /// Intertwined Robin/Dirichlet pair built from b.
    Intertwine(IntertwineArgs),
    /// Warped-product reduction check.
    ProductTrick(ProductArgs),
    /// Greedy sign construction for the heat trace.
    GrowTrace(GrowTraceArgs),
    /// Greedy sign construction for the heat content.
    GrowContent(GrowContentArgs),
    /// Periodic trigonometric integral identity.
    CheckTrig(TrigArgs),
    /// Profile builders.
    Profiles(ProfileArgs),
    /// Quick invariant suite; exits nonzero on any failure.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TraceDomain {
    Circle,
    Local,
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    #[arg(long, value_enum, default_value_t = TraceDomain::Circle)]
    pub domain: TraceDomain,
    /// Largest n.
    #[arg(long, default_value_t = 8)]
    pub max: usize,
    /// Circle: base frequency w; the period is 2 pi / w.
    #[arg(long, default_value = "1")]
    pub omega: String,
    /// Circle: constant term of the potential B.
    #[arg(long, default_value = "0")]
    pub constant: String,
    /// Circle: `k:amp` adds amp cos(k w x) to B.
    #[arg(long)]
    pub cos: Vec<String>,
    /// Circle: `k:amp` adds amp sin(k w x) to B.
    #[arg(long)]
    pub sin: Vec<String>,
    /// Circle: constant g^{11}, a rational square.
    #[arg(long, default_value = "1")]
    pub g11: String,
    /// Local: Taylor coefficients of g^{11} at 0.
    #[arg(long, default_value = "1")]
    pub g: String,
    /// Local: Taylor coefficients of A.
    #[arg(long, default_value = "0")]
    pub a: String,
    /// Local: Taylor coefficients of B.
    #[arg(long, default_value = "0")]
    pub b: String,
    /// Jet order; at least 2 max + 4.
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ContentBc {
    Dirichlet,
    Robin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ContentMethod {
    /// Base values for l = 0, 2 and the reduction above.
    Auto,
    /// Flat method of images (E = 0, S = 0).
    Images,
    Reduction,
    /// Leading part only.
    Leading,
}

#[derive(Args, Debug)]
pub struct ContentArgs {
    /// Print the Xi table instead.
    #[arg(long)]
    pub xi: bool,
    /// Largest index (Xi table default 12).
    #[arg(long)]
    pub max: Option<usize>,
    /// Indices l; default 0,2.
    #[arg(long)]
    pub ells: Option<String>,
    #[arg(long, default_value = "1")]
    pub phi1: String,
    #[arg(long, default_value = "1")]
    pub phi2: String,
    /// Taylor coefficients of E in the inward normal coordinate.
    #[arg(long, default_value = "0")]
    pub e: String,
    /// Robin parameter.
    #[arg(long, default_value = "0")]
    pub s: String,
    /// Jet of rho_mm along the normal.
    #[arg(long, default_value = "0")]
    pub rho: String,
    /// Normal component of the connection one-form.
    #[arg(long)]
    pub connection: Option<String>,
    #[arg(long, default_value = "1")]
    pub boundary_volume: String,
    #[arg(long, value_enum, default_value_t = ContentBc::Dirichlet)]
    pub bc: ContentBc,
    #[arg(long, value_enum, default_value_t = ContentMethod::Auto)]
    pub method: ContentMethod,
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FitDomain {
    Interval,
    Circle,
}

#[derive(Args, Debug)]
pub struct FitArgs {
    #[arg(long, value_enum, default_value_t = FitDomain::Interval)]
    pub domain: FitDomain,
    /// Interval length.
    #[arg(long, default_value = "1")]
    pub length: String,
    /// Polynomial initial temperature on the interval.
    #[arg(long, default_value = "1")]
    pub phi1: String,
    /// Polynomial specific heat on the interval.
    #[arg(long, default_value = "1")]
    pub phi2: String,
    /// Polynomial E in D = -(d^2 + E) on the interval.
    #[arg(long, default_value = "0")]
    pub e: String,
    /// `dirichlet`, `neumann` or `robin`; Robin uses --s0/--s1.
    #[arg(long, default_value = "dirichlet")]
    pub bc: String,
    #[arg(long, default_value = "0")]
    pub s0: String,
    #[arg(long, default_value = "0")]
    pub s1: String,
    /// Circle: base frequency w, length 2 pi / w.
    #[arg(long, default_value = "1")]
    pub omega: String,
    /// Circle: constant part of E.
    #[arg(long, default_value = "0")]
    pub constant: String,
    /// Circle: `k:amp` adds amp cos(k w x) to E.
    #[arg(long)]
    pub cos: Vec<String>,
    /// Circle: `k:amp` adds amp sin(k w x) to E.
    #[arg(long)]
    pub sin: Vec<String>,
    /// Number of eigenpairs.
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    /// Interval grid size.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Circle: Fourier modes (default count / 2).
    #[arg(long)]
    pub modes: Option<usize>,
    #[arg(long)]
    pub t_min: Option<String>,
    #[arg(long)]
    pub t_max: Option<String>,
    #[arg(long, default_value_t = 40)]
    pub points: usize,
    #[arg(long, default_value = "10000000000")]
    pub max_condition: String,
    /// Interval: fitted boundary indices l.
    #[arg(long, default_value = "0,1,2,3")]
    pub ells: String,
    /// Circle: fitted trace indices n.
    #[arg(long, default_value = "0,2,4,6,8")]
    pub ns: String,
    /// Interval: exact interior terms int D^n phi1 phi2 subtracted, n < this.
    #[arg(long, default_value_t = 8)]
    pub interior_terms: usize,
}

#[derive(Args, Debug)]
pub struct MatchArgs {
    /// `j=C_j,...` over a contiguous range starting at 3 or above.
    #[arg(long, default_value = "3=1,4=2,5=3")]
    pub targets: String,
    #[arg(long, default_value = "0")]
    pub phi1: String,
    #[arg(long, default_value = "1")]
    pub phi2: String,
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Args, Debug)]
pub struct IntertwineArgs {
    /// Polynomial b on [0, 1].
    #[arg(long, default_value = "0,1,-1")]
    pub b: String,
    #[arg(long, default_value = "1")]
    pub phi1: String,
    #[arg(long, default_value = "1")]
    pub phi2: String,
    #[arg(long, default_value = "0.01")]
    pub t_min: String,
    #[arg(long, default_value = "0.2")]
    pub t_max: String,
    #[arg(long, default_value_t = 12)]
    pub points: usize,
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    /// Order of the exact endpoint jets.
    #[arg(long, default_value_t = 6)]
    pub order: usize,
}

#[derive(Args, Debug)]
pub struct ProductArgs {
    /// alpha(r) = amplitude sin^2(frequency pi r).
    #[arg(long, default_value = "1/4")]
    pub amplitude: String,
    #[arg(long, default_value = "1")]
    pub frequency: String,
    #[arg(long, default_value_t = 3)]
    pub k_max: usize,
    #[arg(long, default_value = "0.01")]
    pub t_min: String,
    #[arg(long, default_value = "0.2")]
    pub t_max: String,
    #[arg(long, default_value_t = 10)]
    pub points: usize,
}

#[derive(Args, Debug)]
pub struct GrowTraceArgs {
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 8)]
    pub nbar_max: usize,
    /// Taylor coefficients of f with f(0) = 0 and f'(0) != 0.
    #[arg(long, default_value = "0,1")]
    pub f: String,
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Args, Debug)]
pub struct GrowContentArgs {
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 8)]
    pub lbar_max: usize,
}

#[derive(Args, Debug)]
pub struct TrigArgs {
    /// `a:b,...`
    #[arg(long, default_value = "1:1,2:8,3:27")]
    pub pairs: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProfileKind {
    SinePower,
    Plateau,
    Bump,
}

#[derive(Args, Debug)]
pub struct ProfileArgs {
    #[arg(long, value_enum, default_value_t = ProfileKind::SinePower)]
    pub kind: ProfileKind,
    /// Sine-power signs.
    #[arg(long, default_value = "+")]
    pub eps: String,
    /// Sine-power jet order.
    #[arg(long, default_value_t = 8)]
    pub order: usize,
    /// Plateau or bump derivative order.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Plateau derivatives `l=gamma_l,...`.
    #[arg(long, default_value = "3=1")]
    pub gamma: String,
    #[arg(long, default_value = "1")]
    pub eps_norm: String,
    /// Bump: required k-th derivative energy.
    #[arg(long, default_value = "10")]
    pub c: String,
    /// Bump: bound on lower derivatives.
    #[arg(long, default_value = "1/10")]
    pub epsilon: String,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Skip the spectral oracle checks.
    #[arg(long)]
    pub exact_only: bool,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command line (including the program name) without touching the process streams.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match parse_with_config(argv) {
        Ok(c) => c,
        Err(Parsed::Clap(e)) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
        Err(Parsed::Cli(e)) => return failure(e),
    };
    match commands::dispatch(&cli).and_then(|(r, fail)| Ok((r.render(cli.format)?, fail))) {
        Ok((stdout, None)) => Outcome { code: 0, stdout, stderr: String::new() },
        Ok((stdout, Some(e))) => {
            let mut o = failure(e);
            o.stdout = stdout;
            o
        }
        Err(e) => failure(e),
    }
}

fn failure(e: CliError) -> Outcome {
    Outcome {
        code: e.exit_code(),
        stdout: String::new(),
        stderr: format!("{}\n", e.to_json()),
    }
}

enum Parsed {
    Clap(clap::Error),
    Cli(CliError),
}

fn parse_with_config(argv: Vec<OsString>) -> Result<Cli, Parsed> {
    let matches = Cli::command().try_get_matches_from(&argv).map_err(Parsed::Clap)?;
    let Some(path) = matches.get_one::<PathBuf>("config").cloned() else {
        return Cli::from_arg_matches(&matches).map_err(Parsed::Clap);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Parsed::Cli(CliError::Usage(format!("cannot read config {}: {e}", path.display()))))?;
    let entries = config::parse(&text).map_err(Parsed::Cli)?;
    let extra = config::injected_flags(&Cli::command(), &matches, &entries).map_err(Parsed::Cli)?;
    let mut full = argv;
    full.extend(extra.into_iter().map(OsString::from));
    let matches = Cli::command().try_get_matches_from(&full).map_err(Parsed::Clap)?;
    Cli::from_arg_matches(&matches).map_err(Parsed::Clap)
}
