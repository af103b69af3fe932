//! The `decolab` command line.
//!
//! Scenario files are flat JSON objects. Output is CSV with a `#`-prefixed JSON
//! metadata line (or one JSON document with `--format json`) for `evolve` and
//! `compare`, and plain text reports for the rest. Exit codes: 0 success,
//! 2 configuration or usage error, 3 domain error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::asymptotics::{born_rates, stationary_approx, stationary_exact};
use crate::error::Error;
use crate::linalg::{to_dense4, C64};
use crate::propagators::{Evolved, Evolver, Model, PropagatorMethod};
use crate::sampling::{random_amplitudes, random_energies, random_rates, DrawRanges};
use crate::spectral::{min_gap, w_eigenvalues, w_spectrum, CubicCase, DEGENERACY_GAP, ROOT_RESIDUAL_TOL};
use crate::types::{make_amplitudes, DensityMatrix2, EnergyPair, LindbladRates, ScenarioConfig};
use crate::zassenhaus::{default_t0, order_check, SLOPE_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// Default diagnostic tolerance; `DECOLAB_TOL` overrides it.
pub const DEFAULT_REPORT_TOL: f64 = 1e-9;
const BORN_TOL: f64 = 1e-12;
const ZASSENHAUS_HALVINGS: u32 = 6;

#[derive(Debug, Parser)]
#[command(name = "decolab", version, about = "Decoherence of a driven two-level system")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evolve the initial state and emit the trajectory.
    Evolve {
        config: PathBuf,
        #[arg(long, value_parser = ["approx_product", "exact_oracle", "exact_spectral"])]
        method: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the split product against the exact flow on the same grid.
    Compare { config: PathBuf },
    /// Report the characteristic cubic, its roots and the eigenvalues of W.
    Spectrum { config: PathBuf },
    /// Check the Born-rule endpoint of the split product.
    BornCheck {
        config: PathBuf,
        #[arg(long)]
        scale: Option<f64>,
    },
    /// Measure the error order of a truncated Zassenhaus product.
    ZassenhausCheck {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=3))]
        order: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }

    fn domain(err: Error) -> Self {
        Self {
            code: EXIT_DOMAIN,
            message: err.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    alpha: [f64; 2],
    beta: [f64; 2],
    e0: f64,
    e1: f64,
    mu: Option<f64>,
    nu: Option<f64>,
    born_scale: Option<f64>,
    t_measure: f64,
    t_decoherence: Option<f64>,
    t_max: f64,
    steps: u64,
    initial: RawInitial,
    method: Option<String>,
    #[serde(default)]
    normalize: bool,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawInitial {
    Named(String),
    Entries([f64; 4]),
}

/// How the dissipator rates were specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateSource {
    Explicit,
    Born { scale: f64 },
}

/// A parsed and validated scenario file.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub method: Option<PropagatorMethod>,
    pub rate_source: RateSource,
}

impl Scenario {
    pub fn model(&self) -> Model {
        Model::new(self.config.amps, self.config.energies, self.config.rates)
    }
}

/// `1 + line index` of the first occurrence of `"key"`, for diagnostics.
fn line_of_key(text: &str, key: &str) -> Option<usize> {
    let needle = format!("\"{key}\"");
    text.lines().position(|l| l.contains(&needle)).map(|i| i + 1)
}

fn at_key(text: &str, key: &str, msg: impl std::fmt::Display) -> CliError {
    match line_of_key(text, key) {
        Some(line) => CliError::config(format!("line {line}: {key}: {msg}")),
        None => CliError::config(format!("{key}: {msg}")),
    }
}

/// Parses and validates a scenario. Errors carry exit code 2, except for
/// amplitudes that cannot be turned into Born rates (exit 3).
pub fn parse_scenario(text: &str) -> CliResult<Scenario> {
    let raw: RawConfig = serde_json::from_str(text)
        .map_err(|e| CliError::config(format!("line {}, column {}: {e}", e.line(), e.column())))?;

    let amps = make_amplitudes(
        C64::new(raw.alpha[0], raw.alpha[1]),
        C64::new(raw.beta[0], raw.beta[1]),
        raw.normalize,
    )
    .map_err(|e| at_key(text, "alpha", e))?;
    let energies = EnergyPair::new(raw.e0, raw.e1).map_err(|e| at_key(text, "e1", e))?;

    let (rates, rate_source) = match (raw.mu, raw.nu, raw.born_scale) {
        (Some(mu), Some(nu), None) => (
            LindbladRates::new(mu, nu).map_err(|e| at_key(text, "mu", e))?,
            RateSource::Explicit,
        ),
        (None, None, Some(scale)) => {
            if !(scale.is_finite() && scale > 0.0) {
                return Err(at_key(text, "born_scale", "must be positive"));
            }
            let rates = born_rates(&amps, scale).map_err(|e| match e {
                Error::DegenerateAmplitude { .. } => CliError::domain(e),
                other => at_key(text, "born_scale", other),
            })?;
            (rates, RateSource::Born { scale })
        }
        (_, _, Some(_)) => {
            return Err(at_key(
                text,
                "born_scale",
                "mu/nu and born_scale are mutually exclusive",
            ))
        }
        _ => return Err(CliError::config("rates: give both mu and nu, or born_scale")),
    };

    let initial_state = match &raw.initial {
        RawInitial::Named(name) => match name.as_str() {
            "ket0" => DensityMatrix2::ket0(),
            "ket1" => DensityMatrix2::ket1(),
            "plus" => DensityMatrix2::plus(),
            other => return Err(at_key(text, "initial", format!("unknown state {other:?}"))),
        },
        RawInitial::Entries([a, b_re, b_im, d]) => {
            DensityMatrix2::new(*a, C64::new(*b_re, *b_im), *d).map_err(|e| at_key(text, "initial", e))?
        }
    };

    let method = raw
        .method
        .as_deref()
        .map(str::parse::<PropagatorMethod>)
        .transpose()
        .map_err(|e| at_key(text, "method", e))?;

    let steps = usize::try_from(raw.steps).map_err(|_| at_key(text, "steps", "too large"))?;
    let config = ScenarioConfig {
        amps,
        energies,
        rates,
        t_measure: raw.t_measure,
        t_decoherence: raw.t_decoherence,
        t_max: raw.t_max,
        steps,
        initial_state,
    };
    config.validate().map_err(|e| {
        let key = match &e {
            Error::InvalidArgument(m) if m.starts_with("t_measure") => "t_measure",
            Error::InvalidArgument(m) if m.starts_with("t_max") => "t_max",
            Error::InvalidArgument(m) if m.starts_with("steps") => "steps",
            Error::InvalidArgument(m) if m.starts_with("t_decoherence") => "t_decoherence",
            _ => "initial",
        };
        at_key(text, key, e)
    })?;

    Ok(Scenario {
        config,
        method,
        rate_source,
    })
}

fn load_scenario(path: &Path) -> CliResult<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
    parse_scenario(&text).map_err(|mut e| {
        e.message = format!("{}: {}", path.display(), e.message);
        e
    })
}

fn report_tol() -> CliResult<f64> {
    match std::env::var("DECOLAB_TOL") {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
            _ => Err(CliError::config(format!(
                "DECOLAB_TOL: expected a positive number, got {s:?}"
            ))),
        },
        Err(_) => Ok(DEFAULT_REPORT_TOL),
    }
}

fn num(x: f64) -> String {
    format!("{x:.12e}")
}

fn cnum(z: C64) -> String {
    format!("{:.12e}{:+.12e}i", z.re, z.im)
}

fn state_json(rho: &DensityMatrix2) -> Value {
    json!({ "a": rho.a(), "b_re": rho.b().re, "b_im": rho.b().im, "d": rho.d() })
}

fn parameters_json(s: &Scenario) -> Value {
    let c = &s.config;
    let rate_source = match s.rate_source {
        RateSource::Explicit => json!("explicit"),
        RateSource::Born { scale } => json!({ "born_scale": scale }),
    };
    json!({
        "alpha": [c.amps.alpha().re, c.amps.alpha().im],
        "beta": [c.amps.beta().re, c.amps.beta().im],
        "e0": c.energies.e0(),
        "e1": c.energies.e1(),
        "mu": c.rates.mu(),
        "nu": c.rates.nu(),
        "rate_source": rate_source,
        "t_measure": c.t_measure,
        "t_decoherence": c.t_decoherence,
        "t_max": c.t_max,
        "steps": c.steps,
        "initial": state_json(&c.initial_state),
    })
}

/// One output row of `evolve`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRow {
    pub t: f64,
    pub a: f64,
    pub b_re: f64,
    pub b_im: f64,
    pub d: f64,
    pub trace_err: f64,
    pub min_eig: f64,
    pub coherence: f64,
}

impl From<&Evolved> for TrajectoryRow {
    fn from(e: &Evolved) -> Self {
        Self {
            t: e.t,
            a: e.rho.a(),
            b_re: e.rho.b().re,
            b_im: e.rho.b().im,
            d: e.rho.d(),
            trace_err: e.rho.trace_error(),
            min_eig: e.min_eigenvalue,
            coherence: e.rho.coherence(),
        }
    }
}

impl TrajectoryRow {
    pub const HEADER: &'static str = "t,a,b_re,b_im,d,trace_err,min_eig,coherence";

    fn csv(&self) -> String {
        [
            self.t,
            self.a,
            self.b_re,
            self.b_im,
            self.d,
            self.trace_err,
            self.min_eig,
            self.coherence,
        ]
        .map(num)
        .join(",")
    }

    fn json(&self) -> Value {
        json!({
            "t": self.t, "a": self.a, "b_re": self.b_re, "b_im": self.b_im, "d": self.d,
            "trace_err": self.trace_err, "min_eig": self.min_eig, "coherence": self.coherence,
        })
    }
}

fn domain(e: Error) -> CliError {
    CliError::domain(e)
}

fn cmd_evolve(scenario: &Scenario, method: PropagatorMethod, format: Format, tol: f64) -> CliResult<String> {
    let evolver = Evolver::new(&scenario.model(), method).map_err(domain)?;
    let grid = scenario.config.time_grid();
    let states = evolver
        .trajectory(&scenario.config.initial_state, &grid)
        .map_err(domain)?;
    let rows: Vec<TrajectoryRow> = states.iter().map(TrajectoryRow::from).collect();

    let warnings: Vec<f64> = rows.iter().filter(|r| r.min_eig < -tol).map(|r| r.t).collect();
    let metadata = json!({
        "command": "evolve",
        "method": method.name(),
        "parameters": parameters_json(scenario),
        "report_tol": tol,
        "rows": rows.len(),
        "positivity_warnings": warnings.len(),
        "first_positivity_warning_t": warnings.first(),
    });

    Ok(match format {
        Format::Csv => {
            let mut out = format!("# {metadata}\n{}\n", TrajectoryRow::HEADER);
            for r in &rows {
                out.push_str(&r.csv());
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let doc = json!({ "metadata": metadata, "rows": rows.iter().map(TrajectoryRow::json).collect::<Vec<_>>() });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
    })
}

fn cmd_compare(scenario: &Scenario, tol: f64) -> CliResult<String> {
    let model = scenario.model();
    let rho0 = scenario.config.initial_state;
    let approx = Evolver::new(&model, PropagatorMethod::ApproxProduct).map_err(domain)?;
    let exact = Evolver::new(&model, PropagatorMethod::ExactOracle).map_err(domain)?;
    let grid = scenario.config.time_grid();
    let a_states = approx.trajectory(&rho0, &grid).map_err(domain)?;
    let e_states = exact.trajectory(&rho0, &grid).map_err(domain)?;
    let deviations: Vec<f64> = a_states
        .iter()
        .zip(&e_states)
        .map(|(a, e)| a.rho.distance_inf(&e.rho))
        .collect();

    let t_measure = scenario.config.t_measure;
    let max_before = grid
        .iter()
        .zip(&deviations)
        .filter(|(t, _)| **t <= t_measure)
        .map(|(_, d)| *d)
        .fold(0.0, f64::max);
    let at_measure = approx
        .evolve(&rho0, t_measure)
        .and_then(|a| Ok(a.rho.distance_inf(&exact.evolve(&rho0, t_measure)?.rho)))
        .map_err(domain)?;
    let at_max = *deviations.last().expect("grid is non-empty");

    let approx_limit = stationary_approx(&model.rates, &rho0);
    let (exact_limit, asymptote_gap, exact_note) = match stationary_exact(&model, &rho0) {
        Ok(rep) => {
            let gap = approx_limit.distance_inf(&rep.rho_limit);
            (Some(rep.rho_limit), Some(gap), None)
        }
        Err(e @ Error::DegenerateSpectrum { .. }) => (None, None, Some(e.to_string())),
        Err(e) => return Err(domain(e)),
    };
    let positivity_warnings = a_states.iter().filter(|s| s.min_eigenvalue < -tol).count();

    let metadata = json!({
        "command": "compare",
        "parameters": parameters_json(scenario),
        "report_tol": tol,
        "approx_limit": state_json(&approx_limit),
        "exact_limit": exact_limit.as_ref().map(state_json),
        "exact_limit_note": exact_note,
        "asymptote_gap": asymptote_gap,
        "max_deviation_before_t_measure": max_before,
        "deviation_at_t_measure": at_measure,
        "deviation_at_t_max": at_max,
        "approx_positivity_warnings": positivity_warnings,
    });

    let mut out =
        format!("# {metadata}\nt,deviation,a_approx,d_approx,coherence_approx,a_exact,d_exact,coherence_exact\n");
    for ((t, dev), (a, e)) in grid.iter().zip(&deviations).zip(a_states.iter().zip(&e_states)) {
        let fields = [
            *t,
            *dev,
            a.rho.a(),
            a.rho.d(),
            a.rho.coherence(),
            e.rho.a(),
            e.rho.d(),
            e.rho.coherence(),
        ];
        out.push_str(&fields.map(num).join(","));
        out.push('\n');
    }
    Ok(out)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_spectrum(scenario: &Scenario) -> CliResult<String> {
    let c = &scenario.config;
    let (coeffs, roots, lambdas) = w_eigenvalues(&c.amps, &c.energies, &c.rates).map_err(domain)?;
    let mut out = String::new();
    let _ = writeln!(out, "decolab spectrum");
    match roots.case {
        CubicCase::Balanced => {
            let _ = writeln!(out, "case: A (|alpha| = |beta|) DEGENERATE");
        }
        CubicCase::Unbalanced => {
            let _ = writeln!(out, "case: B (|alpha| != |beta|)");
        }
    }
    let _ = writeln!(out, "cubic: f(L) = L^3 + a2 L^2 + a1 L + a0");
    let _ = writeln!(out, "  a2 = {}", num(coeffs.a2));
    let _ = writeln!(out, "  a1 = {}", num(coeffs.a1));
    let _ = writeln!(out, "  a0 = {}", num(coeffs.a0));
    let residuals = roots.residuals(&coeffs);
    let names = ["L0", "L+", "L-"];
    let _ = writeln!(out, "roots:");
    for ((name, root), res) in names.iter().zip(roots.all()).zip(residuals) {
        let _ = writeln!(out, "  {name} = {}  |f| = {}", cnum(root), num(res));
    }
    let _ = writeln!(out, "eigenvalues of W:");
    for (i, l) in lambdas.iter().enumerate() {
        let _ = writeln!(out, "  lambda{} = {}", i + 1, cnum(*l));
    }
    let gap = min_gap(&lambdas);
    let _ = writeln!(out, "min eigenvalue gap = {}", num(gap));

    let stable = lambdas[1..].iter().all(|l| l.re < 0.0);
    let residual_ok = residuals.iter().all(|r| *r <= ROOT_RESIDUAL_TOL * coeffs.scale());
    let _ = writeln!(out, "sign condition Re lambda2..4 < 0: {}", verdict(stable));
    let _ = writeln!(
        out,
        "root residuals <= {:e} * scale: {}",
        ROOT_RESIDUAL_TOL,
        verdict(residual_ok)
    );
    match w_spectrum(&c.amps, &c.energies, &c.rates) {
        Ok(spec) => {
            let _ = writeln!(
                out,
                "eigenvector residual max |W v - lambda v| = {}",
                num(spec.right_residual())
            );
        }
        Err(Error::DegenerateSpectrum { gap }) => {
            let _ = writeln!(
                out,
                "eigenvectors: refused, gap {} below {:e}; use exact_oracle",
                num(gap),
                DEGENERACY_GAP
            );
        }
        Err(e) => return Err(domain(e)),
    }
    Ok(out)
}

fn cmd_born_check(scenario: &Scenario, scale: Option<f64>) -> CliResult<String> {
    let scale = scale
        .or(match scenario.rate_source {
            RateSource::Born { scale } => Some(scale),
            RateSource::Explicit => None,
        })
        .unwrap_or(1.0);
    if !(scale.is_finite() && scale > 0.0) {
        return Err(CliError::config(format!("--scale must be positive (got {scale})")));
    }
    let amps = scenario.config.amps;
    let rates = born_rates(&amps, scale).map_err(domain)?;
    let rho = stationary_approx(&rates, &DensityMatrix2::ket0());
    let (p0, p1) = (rho.a(), rho.d());
    let deviation = (p0 - amps.p0()).abs().max((p1 - amps.p1()).abs());

    let mut out = String::new();
    let _ = writeln!(out, "decolab born-check");
    let _ = writeln!(out, "scale = {}", num(scale));
    let _ = writeln!(out, "mu = {}", num(rates.mu()));
    let _ = writeln!(out, "nu = {}", num(rates.nu()));
    let _ = writeln!(out, "p0 = {}  |alpha|^2 = {}", num(p0), num(amps.p0()));
    let _ = writeln!(out, "p1 = {}  |beta|^2 = {}", num(p1), num(amps.p1()));
    let _ = writeln!(out, "max deviation = {}", num(deviation));
    let ok = deviation <= BORN_TOL;
    let _ = writeln!(out, "verdict: {} (tolerance {:e})", verdict(ok), BORN_TOL);
    if ok {
        Ok(out)
    } else {
        Err(CliError {
            code: EXIT_DOMAIN,
            message: out,
        })
    }
}

/// The `(Ĥ, D̂)` pair drawn for a given seed.
pub fn seeded_generators(seed: u64) -> Model {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ranges = DrawRanges::default();
    let amps = random_amplitudes(&mut rng, 0.05);
    let energies = random_energies(&mut rng, &ranges);
    let rates = random_rates(&mut rng, &ranges);
    Model::new(amps, energies, rates)
}

fn cmd_zassenhaus_check(order: u32, seed: u64) -> CliResult<String> {
    let model = seeded_generators(seed);
    let h = to_dense4(&model.h_hat().0);
    let d = to_dense4(&model.d_hat().0);
    let t0 = default_t0(&h, &d);
    let result = order_check(&h, &d, order, t0, ZASSENHAUS_HALVINGS).map_err(domain)?;

    let mut out = String::new();
    let _ = writeln!(out, "decolab zassenhaus-check");
    let _ = writeln!(out, "order = {order}");
    let _ = writeln!(out, "seed = {seed}");
    let a = model.amps;
    let _ = writeln!(out, "alpha = {}", cnum(a.alpha()));
    let _ = writeln!(out, "beta = {}", cnum(a.beta()));
    let _ = writeln!(
        out,
        "e0 = {}  e1 = {}",
        num(model.energies.e0()),
        num(model.energies.e1())
    );
    let _ = writeln!(out, "mu = {}  nu = {}", num(model.rates.mu()), num(model.rates.nu()));
    let _ = writeln!(out, "t,error");
    for (t, e) in result.t_values.iter().zip(&result.errors) {
        let _ = writeln!(out, "{},{}", num(*t), num(*e));
    }
    let _ = writeln!(out, "slope = {:.6}", result.fitted_slope);
    let _ = writeln!(
        out,
        "expected = {} +/- {}: {}",
        result.expected_slope(),
        SLOPE_TOL,
        verdict(result.passes())
    );
    Ok(out)
}

fn write_output(out: &mut dyn Write, path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::config(format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::config(format!("stdout: {e}"))),
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    let tol = report_tol()?;
    match cli.command {
        Command::Evolve {
            config,
            method,
            format,
            out: path,
        } => {
            let scenario = load_scenario(&config)?;
            let method = match method {
                Some(m) => m.parse().map_err(|e: Error| CliError::config(e.to_string()))?,
                None => scenario.method.unwrap_or(PropagatorMethod::ExactOracle),
            };
            let text = cmd_evolve(&scenario, method, format, tol)?;
            write_output(out, path.as_deref(), &text)
        }
        Command::Compare { config } => {
            let text = cmd_compare(&load_scenario(&config)?, tol)?;
            write_output(out, None, &text)
        }
        Command::Spectrum { config } => {
            let text = cmd_spectrum(&load_scenario(&config)?)?;
            write_output(out, None, &text)
        }
        Command::BornCheck { config, scale } => {
            let text = cmd_born_check(&load_scenario(&config)?, scale)?;
            write_output(out, None, &text)
        }
        Command::ZassenhausCheck { order, seed } => {
            let text = cmd_zassenhaus_check(order, seed)?;
            write_output(out, None, &text)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_CONFIG
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "decolab: {}", e.message.trim_end());
            e.code
        }
    }
}
