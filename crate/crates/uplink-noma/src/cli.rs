//! Command-line front end: presets, config files, and curve emission.
//!
//! The `noma` binary wraps the library with five subcommands (`bound`,
//! `simulate`, `compare`, `presets`, `dump-config`). Scenarios come either
//! from a built-in preset or from a plain-text `key = value` config file;
//! curves are written as CSV (one row per grid point and user) or JSON with
//! the same fields. Everything is assembled in memory first so a failing run
//! never leaves a partial output file.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bound::bound_sweep;
use crate::channel::{db_to_linear, Scenario, UserSpec};
use crate::constellation::ModulationKind;
use crate::montecarlo::{
    run_ber_with_progress, BerCurve, CurvePoint, Detector, SimPlan, Source, StopRule,
};
use crate::{Error, Result};

/// Names accepted by `--preset`.
pub const PRESET_NAMES: [&str; 3] = ["scenario-1", "scenario-2", "scenario-3"];

/// Built-in scenarios: L = 4, equal unit transmit powers, unit bit energy,
/// per-user gains stepping down 3 dB.
pub fn load_preset(name: &str) -> Result<Scenario> {
    let (orders, gains_db): (Vec<usize>, Vec<f64>) = match name {
        "scenario-1" => (vec![256, 16], vec![0.0, -3.0]),
        "scenario-2" => (vec![16, 16, 16], vec![0.0, -3.0, -6.0]),
        "scenario-3" => (vec![256, 64, 16, 4], vec![0.0, -3.0, -6.0, -9.0]),
        other => {
            return Err(Error::usage(format!(
                "unknown preset '{other}'; valid presets: {}",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    Ok(Scenario {
        users: orders
            .into_iter()
            .zip(gains_db)
            .map(|(mod_order, g)| UserSpec {
                mod_order,
                power: 1.0,
                channel_var: db_to_linear(g),
            })
            .collect(),
        antennas: 4,
        bit_energy: 1.0,
        noise_psd: 1.0,
    })
}

/// Inclusive dB grid `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    pub const DEFAULT: GridSpec = GridSpec {
        start: 0.0,
        stop: 40.0,
        step: 4.0,
    };

    pub fn parse(text: &str) -> Result<GridSpec> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::usage(format!(
                "grid '{text}' must have the form start:stop:step (dB)"
            )));
        }
        let mut nums = [0.0f64; 3];
        for (slot, part) in nums.iter_mut().zip(&parts) {
            *slot = part.trim().parse().map_err(|_| {
                Error::usage(format!("grid '{text}': '{part}' is not a number"))
            })?;
        }
        let spec = GridSpec {
            start: nums[0],
            stop: nums[1],
            step: nums[2],
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.step <= 0.0 {
            return Err(Error::usage(format!("grid step {} must be positive", self.step)));
        }
        if self.stop < self.start {
            return Err(Error::usage(format!(
                "grid stop {} is below start {}",
                self.stop, self.start
            )));
        }
        Ok(())
    }

    /// Concrete grid values, inclusive of `stop` up to rounding.
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|k| self.start + k as f64 * self.step).collect()
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

/// Output encoding of a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    fn parse_name(name: &str) -> Result<OutputFormat> {
        match name {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::config(format!(
                "format '{other}' invalid: must be csv or json"
            ))),
        }
    }
}

/// Run settings carried by a config file; every field optional, command-line
/// flags win over these.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileSettings {
    pub ebn0: Option<GridSpec>,
    pub seed: Option<u64>,
    pub detector: Option<Detector>,
    pub min_errors: Option<u64>,
    pub max_symbols: Option<u64>,
    pub block_len: Option<usize>,
    pub format: Option<OutputFormat>,
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(|item| {
            item.trim()
                .parse()
                .map_err(|_| Error::config(format!("{key}: '{}' is not a valid entry", item.trim())))
        })
        .collect()
}

fn parse_scalar<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::config(format!("{key}: '{value}' is not a valid value")))
}

/// Parses the plain-text scenario format written by `dump-config`.
///
/// Recognized keys: `antennas`, `bit_energy`, `mod_orders`, `powers`,
/// `gains_db`, plus the optional run settings `ebn0`, `seed`, `detector`,
/// `min_errors`, `max_symbols`, `block_len`, `format`. Lists are
/// comma-separated; `#` starts a comment. Users are sorted by decreasing
/// `P * sigma^2` (a warning is printed when this reorders the file).
pub fn parse_config(path: &Path) -> Result<(Scenario, FileSettings)> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config '{}': {e}", path.display())))?;
    parse_config_text(&text)
}

/// [`parse_config`] on in-memory text.
pub fn parse_config_text(text: &str) -> Result<(Scenario, FileSettings)> {
    let mut antennas: Option<usize> = None;
    let mut bit_energy: Option<f64> = None;
    let mut mod_orders: Option<Vec<usize>> = None;
    let mut powers: Option<Vec<f64>> = None;
    let mut gains_db: Option<Vec<f64>> = None;
    let mut settings = FileSettings::default();

    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::config(format!(
                "line {}: expected 'key = value', got '{line}'",
                line_no + 1
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "antennas" => antennas = Some(parse_scalar(key, value)?),
            "bit_energy" => bit_energy = Some(parse_scalar(key, value)?),
            "mod_orders" => mod_orders = Some(parse_list(key, value)?),
            "powers" => powers = Some(parse_list(key, value)?),
            "gains_db" => gains_db = Some(parse_list(key, value)?),
            "ebn0" => settings.ebn0 = Some(GridSpec::parse(value)?),
            "seed" => settings.seed = Some(parse_scalar(key, value)?),
            "detector" => {
                settings.detector = Some(match value {
                    "jmld" => Detector::Jmld,
                    "sicd" => Detector::Sicd,
                    other => {
                        return Err(Error::config(format!(
                            "detector '{other}' invalid: must be jmld or sicd"
                        )))
                    }
                })
            }
            "min_errors" => settings.min_errors = Some(parse_scalar(key, value)?),
            "max_symbols" => settings.max_symbols = Some(parse_scalar(key, value)?),
            "block_len" => settings.block_len = Some(parse_scalar(key, value)?),
            "format" => settings.format = Some(OutputFormat::parse_name(value)?),
            other => {
                return Err(Error::config(format!(
                    "line {}: unknown key '{other}'",
                    line_no + 1
                )))
            }
        }
    }

    let mod_orders =
        mod_orders.ok_or_else(|| Error::config("mod_orders: required key is missing"))?;
    let n = mod_orders.len();
    if n == 0 {
        return Err(Error::config("mod_orders: at least one user is required"));
    }
    let antennas = antennas.ok_or_else(|| Error::config("antennas: required key is missing"))?;
    let bit_energy = bit_energy.unwrap_or(1.0);
    let powers = powers.unwrap_or_else(|| vec![1.0; n]);
    let gains_db = gains_db.unwrap_or_else(|| vec![0.0; n]);
    if powers.len() != n {
        return Err(Error::config(format!(
            "powers: {} entries for {n} users in mod_orders",
            powers.len()
        )));
    }
    if gains_db.len() != n {
        return Err(Error::config(format!(
            "gains_db: {} entries for {n} users in mod_orders",
            gains_db.len()
        )));
    }

    let mut users: Vec<UserSpec> = mod_orders
        .into_iter()
        .zip(powers)
        .zip(gains_db)
        .map(|((mod_order, power), g)| UserSpec {
            mod_order,
            power,
            channel_var: db_to_linear(g),
        })
        .collect();
    let sorted = {
        let mut s = users.clone();
        s.sort_by(|a, b| b.strength().partial_cmp(&a.strength()).unwrap());
        s
    };
    if sorted
        .iter()
        .zip(&users)
        .any(|(a, b)| a.strength() != b.strength())
    {
        eprintln!("warning: users reordered by decreasing power * channel gain");
    }
    users = sorted;

    let scenario = Scenario {
        users,
        antennas,
        bit_energy,
        noise_psd: bit_energy,
    };
    scenario.validate(ModulationKind::Qam)?;
    Ok((scenario, settings))
}

/// Renders a scenario (plus default run settings) in the config format.
pub fn dump_config_text(scenario: &Scenario) -> String {
    let join = |f: &dyn Fn(&UserSpec) -> String| -> String {
        scenario.users.iter().map(f).collect::<Vec<_>>().join(", ")
    };
    let mut out = String::new();
    out.push_str("# uplink NOMA scenario (one entry per user, strongest first)\n");
    let _ = writeln!(out, "antennas = {}", scenario.antennas);
    let _ = writeln!(out, "bit_energy = {}", scenario.bit_energy);
    let _ = writeln!(out, "mod_orders = {}", join(&|u| u.mod_order.to_string()));
    let _ = writeln!(out, "powers = {}", join(&|u| u.power.to_string()));
    let _ = writeln!(
        out,
        "gains_db = {}",
        join(&|u| format!("{}", (1e9 * 10.0 * u.channel_var.log10()).round() / 1e9))
    );
    out.push_str("\n# run settings (optional; command-line flags win)\n");
    let _ = writeln!(out, "ebn0 = {}", GridSpec::DEFAULT);
    out.push_str("seed = 1\ndetector = jmld\nmin_errors = 400\nmax_symbols = 2000000\nblock_len = 1\nformat = csv\n");
    out
}

/// CSV schema, in emission order.
const CSV_HEADER: &str = "ebn0_db,user,ber,ci_lo,ci_hi,bit_errors,bits_sent,source";

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

/// Renders a curve as CSV text (trailing newline included).
pub fn curve_to_csv(curve: &BerCurve) -> String {
    let mut out = String::with_capacity(64 * (curve.points.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for p in &curve.points {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            p.ebn0_db,
            p.user,
            p.ber,
            opt(&p.ci_lo),
            opt(&p.ci_hi),
            opt(&p.bit_errors),
            opt(&p.bits_sent),
            p.source
        );
    }
    out
}

/// Renders a curve as JSON text mirroring the CSV schema.
pub fn curve_to_json(curve: &BerCurve) -> String {
    let mut text = serde_json::to_string_pretty(&curve.points).expect("curve serializes");
    text.push('\n');
    text
}

/// Parses a curve back from JSON text.
pub fn curve_from_json(text: &str) -> Result<BerCurve> {
    let points: Vec<CurvePoint> = serde_json::from_str(text)
        .map_err(|e| Error::config(format!("invalid curve JSON: {e}")))?;
    Ok(BerCurve { points })
}

/// Writes a curve to `path` (or stdout when `None`) in the chosen format.
pub fn emit_curve(curve: &BerCurve, format: OutputFormat, path: Option<&Path>) -> Result<()> {
    let text = match format {
        OutputFormat::Csv => curve_to_csv(curve),
        OutputFormat::Json => curve_to_json(curve),
    };
    match path {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

#[derive(Debug, Parser)]
#[command(
    name = "noma",
    about = "Multi-user uplink NOMA: joint maximum-likelihood detection, BER bounds, and link simulation",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the analytical BER upper bound over an Eb/N0 grid.
    Bound(RunArgs),
    /// Monte Carlo BER simulation with the chosen detector.
    Simulate(RunArgs),
    /// Bound and simulation on the same grid, in one file.
    Compare(RunArgs),
    /// List the built-in scenario presets.
    Presets,
    /// Write a scenario as an editable config file.
    DumpConfig {
        /// Preset to dump.
        #[arg(long, default_value = "scenario-2")]
        preset: String,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Built-in scenario name (scenario-1, scenario-2, scenario-3).
    #[arg(long, conflicts_with = "config")]
    preset: Option<String>,
    /// Scenario config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Detector for simulation.
    #[arg(long, value_enum)]
    detector: Option<DetectorArg>,
    /// Eb/N0 grid as start:stop:step in dB.
    #[arg(long)]
    ebn0: Option<String>,
    /// RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Stop a grid point after this many bit errors per user.
    #[arg(long)]
    min_errors: Option<u64>,
    /// Hard cap on symbols per grid point.
    #[arg(long)]
    max_symbols: Option<u64>,
    /// Symbols per fading block.
    #[arg(long)]
    block_len: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DetectorArg {
    Jmld,
    Sicd,
}

/// What a run subcommand does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Bound,
    Simulate,
    Compare,
}

/// Fully resolved run configuration (flags over file settings over defaults).
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub mode: Mode,
    pub detector: Detector,
    pub grid: GridSpec,
    pub seed: u64,
    pub stop: StopRule,
    pub block_len: usize,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

/// Tuple spaces at least this large trigger the reduced simulation cap.
const LARGE_SEARCH_SPACE: u128 = 1 << 20;
const REDUCED_MAX_SYMBOLS: u64 = 100_000;

fn resolve(args: &RunArgs, mode: Mode) -> Result<RunConfig> {
    let (scenario, file) = match (&args.preset, &args.config) {
        (Some(name), None) => (load_preset(name)?, FileSettings::default()),
        (None, Some(path)) => parse_config(path)?,
        (None, None) => {
            return Err(Error::usage(
                "exactly one scenario source is required: pass --preset or --config",
            ))
        }
        (Some(_), Some(_)) => unreachable!("clap enforces the conflict"),
    };
    let grid = match &args.ebn0 {
        Some(text) => GridSpec::parse(text)?,
        None => file.ebn0.unwrap_or(GridSpec::DEFAULT),
    };
    let detector = match args.detector {
        Some(DetectorArg::Jmld) => Detector::Jmld,
        Some(DetectorArg::Sicd) => Detector::Sicd,
        None => file.detector.unwrap_or(Detector::Jmld),
    };
    let search_space: u128 = scenario
        .users
        .iter()
        .map(|u| u.mod_order as u128)
        .product();
    let default_stop = StopRule::default();
    let mut max_symbols = args
        .max_symbols
        .or(file.max_symbols)
        .unwrap_or(default_stop.max_symbols);
    if mode != Mode::Bound
        && detector == Detector::Jmld
        && search_space >= LARGE_SEARCH_SPACE
        && args.max_symbols.is_none()
        && file.max_symbols.is_none()
    {
        eprintln!(
            "warning: the joint detector evaluates {search_space} hypotheses per symbol here; \
             capping the simulation at {REDUCED_MAX_SYMBOLS} symbols per point \
             (override with --max-symbols)"
        );
        max_symbols = REDUCED_MAX_SYMBOLS;
    }
    Ok(RunConfig {
        scenario,
        mode,
        detector,
        grid,
        seed: args.seed.or(file.seed).unwrap_or(1),
        stop: StopRule {
            min_bit_errors: args
                .min_errors
                .or(file.min_errors)
                .unwrap_or(default_stop.min_bit_errors),
            max_symbols,
        },
        block_len: args.block_len.or(file.block_len).unwrap_or(1),
        format: args.format.or(file.format).unwrap_or(OutputFormat::Csv),
        out: args.out.clone(),
    })
}

fn bound_curve(config: &RunConfig) -> Result<BerCurve> {
    let grid = config.grid.values();
    let sweep = bound_sweep(&config.scenario, ModulationKind::Qam, &grid)?;
    for (n, (&terms, &raw)) in sweep
        .term_counts
        .iter()
        .zip(&sweep.raw_term_counts)
        .enumerate()
    {
        eprintln!("bound: user {} spectrum has {terms} terms after merging ({raw} raw)", n + 1);
    }
    let mut curve = BerCurve::default();
    let mut flagged = false;
    for (db, row) in grid.iter().zip(&sweep.values) {
        for (n, &value) in row.iter().enumerate() {
            if value > 1.0 && !flagged {
                eprintln!(
                    "note: union bound exceeds 1 at {db} dB (reported unclamped; \
                     it is an upper bound, not a probability estimate)"
                );
                flagged = true;
            }
            curve.points.push(CurvePoint {
                ebn0_db: *db,
                user: n + 1,
                ber: value,
                ci_lo: None,
                ci_hi: None,
                bit_errors: None,
                bits_sent: None,
                source: Source::AnalyticalBound,
            });
        }
    }
    Ok(curve)
}

fn simulated_curve(config: &RunConfig) -> Result<BerCurve> {
    let mut plan = SimPlan::new(
        config.scenario.clone(),
        config.detector,
        config.grid.values(),
        config.seed,
    );
    plan.stop = config.stop;
    plan.block_len = config.block_len;
    run_ber_with_progress(&plan, |summary| {
        eprintln!(
            "simulate[{}]: {} dB done, {} symbols, bit errors {:?}",
            config.detector, summary.ebn0_db, summary.symbols, summary.bit_errors
        );
    })
}

/// Interleaves bound and simulated rows point by point.
fn merge_compare(bound: &BerCurve, simulated: &BerCurve, users: usize) -> BerCurve {
    let mut merged = BerCurve::default();
    let per_point = users;
    let points = bound.points.len() / per_point;
    for p in 0..points {
        for u in 0..per_point {
            let i = p * per_point + u;
            merged.points.push(bound.points[i].clone());
            merged.points.push(simulated.points[i].clone());
        }
    }
    merged
}

fn execute_run(args: &RunArgs, mode: Mode) -> Result<()> {
    let config = resolve(args, mode)?;
    let curve = match mode {
        Mode::Bound => bound_curve(&config)?,
        Mode::Simulate => simulated_curve(&config)?,
        Mode::Compare => {
            let bound = bound_curve(&config)?;
            let simulated = simulated_curve(&config)?;
            merge_compare(&bound, &simulated, config.scenario.num_users())
        }
    };
    emit_curve(&curve, config.format, config.out.as_deref())
}

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "NOMA_WORKERS";

fn configure_workers() {
    if let Ok(value) = std::env::var(WORKERS_ENV) {
        match value.parse::<usize>() {
            Ok(n) if n >= 1 => {
                // ignore the error if a pool already exists
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => eprintln!("warning: ignoring {WORKERS_ENV}='{value}' (want a positive integer)"),
        }
    }
}

/// Entry point of the `noma` binary.
pub fn cli_main() -> std::process::ExitCode {
    configure_workers();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Bound(args) => execute_run(args, Mode::Bound),
        Command::Simulate(args) => execute_run(args, Mode::Simulate),
        Command::Compare(args) => execute_run(args, Mode::Compare),
        Command::Presets => {
            for name in PRESET_NAMES {
                let s = load_preset(name).expect("presets are valid");
                let orders: Vec<String> =
                    s.users.iter().map(|u| u.mod_order.to_string()).collect();
                let gains: Vec<String> = s
                    .users
                    .iter()
                    .map(|u| format!("{:.0}", 10.0 * u.channel_var.log10()))
                    .collect();
                println!(
                    "{name}: {} users, orders [{}], gains [{}] dB, L = {}",
                    s.num_users(),
                    orders.join(", "),
                    gains.join(", "),
                    s.antennas
                );
            }
            Ok(())
        }
        Command::DumpConfig { preset, out } => load_preset(preset).and_then(|scenario| {
            let text = dump_config_text(&scenario);
            match out {
                Some(path) => fs::write(path, text).map_err(Error::from),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }),
    };
    match result {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::ExitCode::FAILURE
        }
    }
}
