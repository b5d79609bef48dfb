//! `obstate` — batch computation and plot-data emission for the library.
//!
//! Output is deterministic: identical invocations produce byte-identical
//! bytes. Exit codes: 0 success, 1 domain errors, 2 usage errors.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use obstate::coeffs::{beta_0_1, beta_2_1, beta_4_2, BetaTable, PhysParams};
use obstate::delta::{trace_regularized, KernelPair, QuadratureConfig};
use obstate::kinematics::{mandelstam, FourVector};
use obstate::laurent::LaurentSeries;
use obstate::resummation::{coupling, dressed_propagator, vacuum_exponentiate, SeriesTruncation};
use obstate::rg::{
    coupling_closed_form, flow_integrate, flow_integrate_log, mass_closed_form, Method, RGConfig,
};
use obstate::state::{factor_from_gammas, GammaVector, GaugeChoice, InternalState, LoopFactor};

#[derive(Debug)]
enum CliError {
    /// Bad flags or inputs that never reached the library.
    Usage(String),
    /// Library-level error; the variant name passes through verbatim.
    Domain(String),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Domain(msg) => write!(f, "error: {msg}"),
            CliError::Io(err) => write!(f, "io error: {err}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err)
    }
}

fn domain<E: fmt::Debug>(err: E) -> CliError {
    CliError::Domain(format!("{err:?}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "obstate",
    version,
    about = "Laurent-series renormalization toolkit"
)]
struct Cli {
    /// Flat `key = value` defaults file; explicit flags win.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output format (default: json, except `trace` which prints text).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a beta-coefficient table for the supported (n, p) orders.
    Coeffs(CoeffsArgs),
    /// Trace of an internal state as a Laurent series.
    Trace(StateArgs),
    /// Apply the diagonal-deleting projector to an internal state.
    Project(StateArgs),
    /// Rebuild loop factors from trace coefficients.
    Factor(FactorArgs),
    /// Integrate the one-loop flow and emit the trajectory.
    Rgflow(RgflowArgs),
    /// Resummation identities: partial sum vs closed form.
    #[command(subcommand)]
    Resum(ResumCommand),
    /// Regularized-trace quadrature against its closed form.
    DeltaDemo(DeltaArgs),
}

#[derive(Args, Debug)]
struct CoeffsArgs {
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    m0sq: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    u: Option<f64>,
    /// Momenta "E,px,py,pz"; all four give (s, t, u) via Mandelstam.
    #[arg(long, value_name = "QUAD", allow_hyphen_values = true)]
    p1: Option<String>,
    #[arg(long, value_name = "QUAD", allow_hyphen_values = true)]
    p2: Option<String>,
    #[arg(long, value_name = "QUAD", allow_hyphen_values = true)]
    p3: Option<String>,
    #[arg(long, value_name = "QUAD", allow_hyphen_values = true)]
    p4: Option<String>,
}

#[derive(Args, Debug)]
struct StateArgs {
    /// Loop factors "rho_D,rho_ND;..." (the token `pi` is accepted).
    #[arg(long, allow_hyphen_values = true)]
    factors: Option<String>,
    /// External points (default 0).
    #[arg(long)]
    n: Option<u32>,
    /// Perturbation order (default: matches the factor count at n = 0).
    #[arg(long)]
    p: Option<u32>,
}

#[derive(Args, Debug)]
struct FactorArgs {
    /// Trace coefficients "gamma_0,gamma_1,...,gamma_L".
    #[arg(long, allow_hyphen_values = true)]
    gammas: Option<String>,
    #[arg(long, value_parser = ["unit-nd"])]
    gauge: Option<String>,
}

#[derive(Args, Debug)]
struct RgflowArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda_s: Option<f64>,
    #[arg(long)]
    mu_s: Option<f64>,
    #[arg(long)]
    m_s_sq: Option<f64>,
    #[arg(long)]
    mu_end: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, value_parser = ["rk4", "euler"])]
    method: Option<String>,
    /// Space the steps uniformly in ln(mu) instead of mu.
    #[arg(long)]
    log_steps: bool,
}

#[derive(Subcommand, Debug)]
enum ResumCommand {
    /// Geometric (Dyson) sum of self-energy insertions.
    Propagator(PropagatorArgs),
    /// Cluster sum of disconnected vacuum diagrams.
    Vacuum(VacuumArgs),
    /// Running coupling from the four-point finite coefficients.
    Coupling(CouplingArgs),
}

#[derive(Args, Debug)]
struct PropagatorArgs {
    #[arg(long, allow_hyphen_values = true)]
    p_sq: Option<f64>,
    #[arg(long)]
    m0sq: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    m_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    m_im: Option<f64>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args, Debug)]
struct VacuumArgs {
    #[arg(long, allow_hyphen_values = true)]
    r1_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    r1_im: Option<f64>,
    /// Spacetime volume factor 2TV.
    #[arg(long)]
    tv2: Option<f64>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args, Debug)]
struct CouplingArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda0: Option<f64>,
    /// Finite coefficients "beta0_42,beta0_43,..." starting at order 2.
    #[arg(long, allow_hyphen_values = true)]
    betas: Option<String>,
}

#[derive(Args, Debug)]
struct DeltaArgs {
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, value_parser = ["gaussian"])]
    kernel: Option<String>,
    #[arg(long)]
    half_width: Option<f64>,
    #[arg(long)]
    rel_tol: Option<f64>,
}

/// Flat `key = value` file; `#` starts a comment. Dashes and underscores
/// in keys are interchangeable.
struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    fn load(path: Option<&PathBuf>) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        if let Some(path) = path {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::Usage(format!("cannot read config {}: {e}", path.display()))
            })?;
            for (line_no, raw) in text.lines().enumerate() {
                let line = raw.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    return Err(CliError::Usage(format!(
                        "config line {} is not `key = value`: {raw:?}",
                        line_no + 1
                    )));
                };
                values.insert(key.trim().replace('-', "_"), value.trim().to_string());
            }
        }
        Ok(Self { values })
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.values.get(&key.replace('-', "_")) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
                CliError::Usage(format!("config value for `{key}` does not parse: {raw:?}"))
            }),
        }
    }
}

/// Flag value, then config value, then the required-flag error.
fn require<T: std::str::FromStr>(
    flag: Option<T>,
    cfg: &ConfigFile,
    key: &str,
) -> Result<T, CliError> {
    if let Some(v) = flag {
        return Ok(v);
    }
    cfg.get::<T>(key)?
        .ok_or_else(|| CliError::Usage(format!("missing required flag --{key}")))
}

fn optional<T: std::str::FromStr>(
    flag: Option<T>,
    cfg: &ConfigFile,
    key: &str,
) -> Result<Option<T>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    cfg.get::<T>(key)
}

fn parse_real(token: &str) -> Result<f64, CliError> {
    let token = token.trim();
    match token {
        "pi" => Ok(std::f64::consts::PI),
        "-pi" => Ok(-std::f64::consts::PI),
        _ => token
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("cannot parse number {token:?}"))),
    }
}

fn parse_factors(spec: &str) -> Result<Vec<LoopFactor>, CliError> {
    spec.split(';')
        .filter(|chunk| !chunk.trim().is_empty())
        .map(|chunk| {
            let parts: Vec<&str> = chunk.split(',').collect();
            if parts.len() != 2 {
                return Err(CliError::Usage(format!(
                    "factor {chunk:?} must be `rho_D,rho_ND`"
                )));
            }
            Ok(LoopFactor::from_re(
                parse_real(parts[0])?,
                parse_real(parts[1])?,
            ))
        })
        .collect()
}

fn parse_reals(spec: &str) -> Result<Vec<f64>, CliError> {
    spec.split(',').map(parse_real).collect()
}

fn parse_momentum(spec: &str) -> Result<FourVector, CliError> {
    let parts = parse_reals(spec)?;
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "momentum {spec:?} must be `E,px,py,pz`"
        )));
    }
    Ok(FourVector::new(parts[0], parts[1], parts[2], parts[3]))
}

fn build_state(args: &StateArgs, cfg: &ConfigFile) -> Result<InternalState, CliError> {
    let spec: String = require(args.factors.clone(), cfg, "factors")?;
    let factors = parse_factors(&spec)?;
    if factors.is_empty() {
        return Err(CliError::Usage(
            "at least one loop factor is required".into(),
        ));
    }
    let n = optional(args.n, cfg, "n")?.unwrap_or(0);
    let default_p = (factors.len() as i64 - 1 + (n as i64) / 2) as u32;
    let p = optional(args.p, cfg, "p")?.unwrap_or(default_p);
    InternalState::new(n, p, factors).map_err(domain)
}

fn complex_json(c: Complex64) -> serde_json::Value {
    serde_json::json!([c.re, c.im])
}

fn write_output(out: Option<&PathBuf>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, bytes)?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(bytes)?;
        }
    }
    Ok(())
}

fn series_csv(series: &LaurentSeries) -> Result<Vec<u8>, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["exponent", "re", "im"])
        .map_err(|e| CliError::Usage(e.to_string()))?;
    for k in series.min_order()..=series.max_order() {
        let c = series.coeff(k);
        writer
            .write_record(&[k.to_string(), c.re.to_string(), c.im.to_string()])
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    writer
        .into_inner()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn beta_csv(table: &BetaTable) -> Result<Vec<u8>, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["k", "re", "im"])
        .map_err(|e| CliError::Usage(e.to_string()))?;
    for (k, c) in table.entries() {
        writer
            .write_record(&[k.to_string(), c.re.to_string(), c.im.to_string()])
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    writer
        .into_inner()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run_coeffs(args: &CoeffsArgs, cfg: &ConfigFile, format: Format) -> Result<Vec<u8>, CliError> {
    let n: u32 = require(args.n, cfg, "n")?;
    let p: u32 = require(args.p, cfg, "p")?;
    let m0sq: f64 = require(args.m0sq, cfg, "m0sq")?;
    let mu: f64 = require(args.mu, cfg, "mu")?;
    let params = PhysParams::new(m0sq, mu, 0.0).map_err(domain)?;

    let table = match (n, p) {
        (0, 1) => beta_0_1(&params),
        (2, 1) => {
            let mut betas = BTreeMap::new();
            betas.insert(0, beta_2_1(&params));
            BetaTable::new(2, 1, betas).map_err(domain)?
        }
        (4, 2) => {
            // Mandelstam invariants, either direct or from four momenta.
            let momenta = [&args.p1, &args.p2, &args.p3, &args.p4];
            let (s, t, u) = if momenta.iter().all(|m| m.is_some()) {
                let vs: Vec<FourVector> = momenta
                    .iter()
                    .map(|m| parse_momentum(m.as_ref().unwrap()))
                    .collect::<Result<_, _>>()?;
                let set = mandelstam(&vs[0], &vs[1], &vs[2], &vs[3]);
                (set.s, set.t, set.u)
            } else {
                (
                    require(args.s, cfg, "s")?,
                    require(args.t, cfg, "t")?,
                    require(args.u, cfg, "u")?,
                )
            };
            beta_4_2(&params, s, t, u).map_err(domain)?
        }
        _ => {
            return Err(CliError::Usage(format!(
                "no closed-form table for (n, p) = ({n}, {p}); supported: (0,1), (2,1), (4,2)"
            )))
        }
    };

    match format {
        Format::Json => {
            let mut bytes = serde_json::to_vec(&table).expect("serializable");
            bytes.push(b'\n');
            Ok(bytes)
        }
        Format::Csv => beta_csv(&table),
        Format::Text => Err(CliError::Usage("coeffs prints json or csv".into())),
    }
}

fn run_trace(
    args: &StateArgs,
    cfg: &ConfigFile,
    format: Option<Format>,
) -> Result<Vec<u8>, CliError> {
    let state = build_state(args, cfg)?;
    let series = state.trace_internal();
    match format.unwrap_or(Format::Text) {
        Format::Text => Ok(format!("{series}\n").into_bytes()),
        Format::Json => {
            let mut bytes = serde_json::to_vec(&series).expect("serializable");
            bytes.push(b'\n');
            Ok(bytes)
        }
        Format::Csv => series_csv(&series),
    }
}

fn run_project(args: &StateArgs, cfg: &ConfigFile, format: Format) -> Result<Vec<u8>, CliError> {
    let state = build_state(args, cfg)?.project();
    match format {
        Format::Json => {
            let mut bytes = serde_json::to_vec(&state).expect("serializable");
            bytes.push(b'\n');
            Ok(bytes)
        }
        _ => Err(CliError::Usage("project prints json".into())),
    }
}

fn run_factor(args: &FactorArgs, cfg: &ConfigFile, format: Format) -> Result<Vec<u8>, CliError> {
    let spec: String = require(args.gammas.clone(), cfg, "gammas")?;
    let gammas: Vec<Complex64> = parse_reals(&spec)?
        .into_iter()
        .map(|x| Complex64::new(x, 0.0))
        .collect();
    let gauge = optional(args.gauge.clone(), cfg, "gauge")?.unwrap_or_else(|| "unit-nd".into());
    let GaugeChoice::UnitNd = match gauge.as_str() {
        "unit-nd" => GaugeChoice::UnitNd,
        other => return Err(CliError::Usage(format!("unknown gauge {other:?}"))),
    };
    let gamma = GammaVector::new(gammas).map_err(domain)?;
    let state = factor_from_gammas(&gamma, GaugeChoice::UnitNd).map_err(domain)?;
    match format {
        Format::Json => {
            let mut bytes = serde_json::to_vec(&state).expect("serializable");
            bytes.push(b'\n');
            Ok(bytes)
        }
        _ => Err(CliError::Usage("factor prints json".into())),
    }
}

fn run_rgflow(args: &RgflowArgs, cfg: &ConfigFile, format: Format) -> Result<Vec<u8>, CliError> {
    let lambda_s: f64 = require(args.lambda_s, cfg, "lambda-s")?;
    let mu_s: f64 = require(args.mu_s, cfg, "mu-s")?;
    let m_s_sq: f64 = require(args.m_s_sq, cfg, "m-s-sq")?;
    let mu_end: f64 = require(args.mu_end, cfg, "mu-end")?;
    let steps: usize = require(args.steps, cfg, "steps")?;
    let method = match optional(args.method.clone(), cfg, "method")?.as_deref() {
        None | Some("rk4") => Method::Rk4,
        Some("euler") => Method::Euler,
        Some(other) => return Err(CliError::Usage(format!("unknown method {other:?}"))),
    };
    let log_steps = args.log_steps || cfg.get::<bool>("log-steps")?.unwrap_or(false);

    let config = RGConfig::new(mu_s, m_s_sq, lambda_s, steps, method).map_err(domain)?;
    let trajectory = if log_steps {
        flow_integrate_log(&config, mu_end).map_err(domain)?
    } else {
        flow_integrate(&config, mu_end).map_err(domain)?
    };

    match format {
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer
                .write_record(["mu", "m0_sq", "lambda0", "lambda_closed", "m0_sq_closed"])
                .map_err(|e| CliError::Usage(e.to_string()))?;
            for point in &trajectory {
                let lambda_closed = coupling_closed_form(&config, point.mu).map_err(domain)?;
                let m_closed = mass_closed_form(&config, point.mu);
                writer
                    .write_record(&[
                        point.mu.to_string(),
                        point.m0_sq.to_string(),
                        point.lambda0.to_string(),
                        lambda_closed.to_string(),
                        m_closed.to_string(),
                    ])
                    .map_err(|e| CliError::Usage(e.to_string()))?;
            }
            writer
                .into_inner()
                .map_err(|e| CliError::Usage(e.to_string()))
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = trajectory
                .iter()
                .map(|point| {
                    let lambda_closed = coupling_closed_form(&config, point.mu).map_err(domain)?;
                    Ok(serde_json::json!({
                        "mu": point.mu,
                        "m0_sq": point.m0_sq,
                        "lambda0": point.lambda0,
                        "lambda_closed": lambda_closed,
                        "m0_sq_closed": mass_closed_form(&config, point.mu),
                    }))
                })
                .collect::<Result<_, CliError>>()?;
            let mut bytes = serde_json::to_vec(&rows).expect("serializable");
            bytes.push(b'\n');
            Ok(bytes)
        }
        Format::Text => Err(CliError::Usage("rgflow prints csv or json".into())),
    }
}

fn run_resum(cmd: &ResumCommand, cfg: &ConfigFile, format: Format) -> Result<Vec<u8>, CliError> {
    if format != Format::Json {
        return Err(CliError::Usage("resum prints json".into()));
    }
    let value = match cmd {
        ResumCommand::Propagator(args) => {
            let p_sq: f64 = require(args.p_sq, cfg, "p-sq")?;
            let m0sq: f64 = require(args.m0sq, cfg, "m0sq")?;
            let m_re: f64 = require(args.m_re, cfg, "m-re")?;
            let m_im: f64 = optional(args.m_im, cfg, "m-im")?.unwrap_or(0.0);
            let k: usize = require(args.k, cfg, "k")?;
            let out =
                dressed_propagator(p_sq, m0sq, Complex64::new(m_re, m_im), k).map_err(domain)?;
            serde_json::json!({
                "partial": complex_json(out.partial),
                "closed": complex_json(out.closed),
                "abs_error": out.abs_error(),
                "divergent": out.divergent,
            })
        }
        ResumCommand::Vacuum(args) => {
            let r1_re: f64 = require(args.r1_re, cfg, "r1-re")?;
            let r1_im: f64 = optional(args.r1_im, cfg, "r1-im")?.unwrap_or(0.0);
            let tv2: f64 = require(args.tv2, cfg, "tv2")?;
            let k: usize = require(args.k, cfg, "k")?;
            let out = vacuum_exponentiate(Complex64::new(r1_re, r1_im), tv2, k);
            serde_json::json!({
                "partial": complex_json(out.partial),
                "closed": complex_json(out.closed),
                "abs_error": out.abs_error(),
            })
        }
        ResumCommand::Coupling(args) => {
            let lambda0: f64 = require(args.lambda0, cfg, "lambda0")?;
            let spec: String = require(args.betas.clone(), cfg, "betas")?;
            let betas: Vec<Complex64> = parse_reals(&spec)?
                .into_iter()
                .map(|x| Complex64::new(x, 0.0))
                .collect();
            let series = SeriesTruncation::new(betas).map_err(domain)?;
            let lambda = coupling(lambda0, &series);
            serde_json::json!({
                "partial": complex_json(lambda),
                "closed": null,
                "abs_error": null,
            })
        }
    };
    let mut bytes = serde_json::to_vec(&value).expect("serializable");
    bytes.push(b'\n');
    Ok(bytes)
}

fn run_delta(args: &DeltaArgs, cfg: &ConfigFile, format: Format) -> Result<Vec<u8>, CliError> {
    if format != Format::Json {
        return Err(CliError::Usage("delta-demo prints json".into()));
    }
    let eps: f64 = require(args.eps, cfg, "eps")?;
    if eps <= 0.0 {
        return Err(CliError::Usage("--eps must be positive".into()));
    }
    let kernel = optional(args.kernel.clone(), cfg, "kernel")?.unwrap_or_else(|| "gaussian".into());
    let kernels = match kernel.as_str() {
        "gaussian" => KernelPair::gaussian(),
        other => return Err(CliError::Usage(format!("unknown kernel {other:?}"))),
    };
    let mut quad = QuadratureConfig::default();
    if let Some(w) = optional(args.half_width, cfg, "half-width")? {
        quad.half_width = w;
    }
    if let Some(tol) = optional(args.rel_tol, cfg, "rel-tol")? {
        quad.rel_tol = tol;
    }
    let quadrature = trace_regularized(&kernels, eps, &quad).map_err(domain)?;
    // For Gaussian kernels both integrated normalizations are sqrt(pi).
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let closed = sqrt_pi / (std::f64::consts::PI * eps) + sqrt_pi;
    let value = serde_json::json!({
        "closed": closed,
        "quadrature": quadrature,
        "rel_err": ((quadrature - closed) / closed).abs(),
    });
    let mut bytes = serde_json::to_vec(&value).expect("serializable");
    bytes.push(b'\n');
    Ok(bytes)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = ConfigFile::load(cli.config.as_ref())?;
    let format = cli.format.unwrap_or(Format::Json);
    let bytes = match &cli.command {
        Command::Coeffs(args) => run_coeffs(args, &cfg, format)?,
        Command::Trace(args) => run_trace(args, &cfg, cli.format)?,
        Command::Project(args) => run_project(args, &cfg, format)?,
        Command::Factor(args) => run_factor(args, &cfg, format)?,
        Command::Rgflow(args) => {
            let fmt = cli.format.unwrap_or(Format::Csv);
            run_rgflow(args, &cfg, fmt)?
        }
        Command::Resum(cmd) => run_resum(cmd, &cfg, format)?,
        Command::DeltaDemo(args) => run_delta(args, &cfg, format)?,
    };
    write_output(cli.out.as_ref(), &bytes)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err @ CliError::Usage(_)) => {
            eprintln!("{err}");
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(1)
        }
    }
}
