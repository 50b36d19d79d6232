//! Command-line front end. Exit codes: 0 success, 2 invalid input or
//! configuration, 3 refusal of an exhaustive routine over its budget.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::classical::{product_expansion_kappa, LinearCode};
use crate::complex::CayleySide;
use crate::config::ExperimentConfig;
use crate::decoder::{default_iterations, DecoderKind, TannerDecoder};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::noise::{
    regression_slope, run_multiround, sample_errors, score_decoders, sweep, trial_rng, TrialRecord, RNG_NAME,
};
use crate::tanner::{CheckSide, QuantumTannerCode, TheoryParams};

#[derive(Debug, Parser)]
#[command(name = "qtanner", version, about = "Quantum Tanner codes and their single-shot decoders")]
pub struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an instance and print its parameters.
    Build(ConfigArg),
    /// Build an instance and print parameters, decoder constants and a distance upper bound.
    Inspect(InspectArgs),
    /// Brute-force product-expansion constant of the local dual tensor codes.
    Expansion(ExpansionArgs),
    /// Decode one error and print the trial record as JSON.
    DecodeOne(DecodeOneArgs),
    /// Monte-Carlo sweep over the configured noise grid, written as CSV.
    Sweep(SweepArgs),
    /// Multi-round memory experiment, written as CSV.
    Multiround(MultiroundArgs),
}

#[derive(Debug, Args)]
pub struct ConfigArg {
    #[arg(long)]
    pub config: PathBuf,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
    /// Parallel iterations for `α_k` (default ⌈log₂ n⌉).
    #[arg(long)]
    pub iterations: Option<u32>,
    /// Random restarts of the low-weight logical search.
    #[arg(long, default_value_t = 20)]
    pub logical_attempts: usize,
}

#[derive(Debug, Args)]
pub struct ExpansionArgs {
    #[arg(long, conflicts_with_all = ["code_a", "code_b"])]
    pub config: Option<PathBuf>,
    /// Generator rows of `C_A`, comma separated (e.g. `1111` or `1100,0011`).
    #[arg(long, requires = "code_b")]
    pub code_a: Option<String>,
    #[arg(long, requires = "code_a")]
    pub code_b: Option<String>,
}

#[derive(Debug, Args)]
pub struct DecodeOneArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    /// Explicit error as a 0/1 string of length n.
    #[arg(long, conflicts_with = "weight")]
    pub error: Option<String>,
    /// Sample an error of this exact weight.
    #[arg(long)]
    pub weight: Option<usize>,
    /// Syndrome bits to flip, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub syndrome_flips: Vec<usize>,
    /// Index into the configured decoder list (all decoders when absent).
    #[arg(long)]
    pub decoder: Option<usize>,
    /// Print the decomposition step log as JSON lines after each record.
    #[arg(long)]
    pub steps: bool,
}

#[derive(Debug, Args)]
pub struct RunOverrides {
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Fill the `ms` column with decode wall times (makes output non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    #[command(flatten)]
    pub overrides: RunOverrides,
    /// One aggregated row per grid point and decoder instead of one per trial.
    #[arg(long)]
    pub per_point: bool,
}

#[derive(Debug, Args)]
pub struct MultiroundArgs {
    #[command(flatten)]
    pub config: ConfigArg,
    #[command(flatten)]
    pub overrides: RunOverrides,
    #[arg(long)]
    pub rounds: Option<usize>,
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn main_with<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    pool.install(|| match cli.command {
        Command::Build(a) => cmd_build(&ExperimentConfig::load(&a.config)?, out),
        Command::Inspect(a) => cmd_inspect(&a, out),
        Command::Expansion(a) => cmd_expansion(&a, out),
        Command::DecodeOne(a) => cmd_decode_one(&a, out),
        Command::Sweep(a) => cmd_sweep(&a, out, err),
        Command::Multiround(a) => cmd_multiround(&a, out, err),
    })
}

fn write_summary(config: &ExperimentConfig, code: &QuantumTannerCode, out: &mut (dyn Write + Send)) -> Result<()> {
    let complex = code.complex();
    let (ca, cb) = code.source_codes();
    let dims = code.code_dimension();
    writeln!(out, "instance: {}", config.name)?;
    writeln!(out, "group order: {}", complex.group().order())?;
    writeln!(out, "A: {:?}", complex.set_a().elements())?;
    writeln!(out, "B: {:?}", complex.set_b().elements())?;
    writeln!(out, "local codes: C_A [{}, {}], C_B [{}, {}]", ca.len(), ca.dim(), cb.len(), cb.dim())?;
    writeln!(out, "qubits n: {}", dims.n)?;
    writeln!(out, "X checks: {} (rank {})", code.hx().num_rows(), dims.rank_hx)?;
    writeln!(out, "Z checks: {} (rank {})", code.hz().num_rows(), dims.rank_hz)?;
    writeln!(out, "logical qubits k: {}", dims.k)?;
    let holds = if dims.k as f64 >= dims.k_lower_bound { "holds" } else { "violated" };
    writeln!(out, "bound (1-2rho)^2 n: {:.3} ({holds})", dims.k_lower_bound)?;
    for (side, name) in [(CheckSide::X, "X"), (CheckSide::Z, "Z")] {
        let hist: Vec<String> = code
            .check_weight_histogram(side)
            .iter()
            .map(|(w, c)| format!("{w}x{c}"))
            .collect();
        writeln!(out, "{name} check weights: {}", hist.join(" "))?;
    }
    for (side, name) in [(CayleySide::Left, "left"), (CayleySide::Right, "right")] {
        match complex.second_eigenvalue(side) {
            Ok(s) => writeln!(
                out,
                "lambda2 {name}: {} (ramanujan bound {:.6}, ramanujan {})",
                s.lambda2.map_or("none".to_string(), |l| format!("{l:.6}")),
                s.ramanujan_bound,
                s.is_ramanujan
            )?,
            Err(Error::Budget(m)) => writeln!(out, "lambda2 {name}: skipped ({m})")?,
            Err(e) => return Err(e),
        }
    }
    for (label, a, b) in [("C_A + C_B", ca.clone(), cb.clone()), ("C_A^perp + C_B^perp", ca.dual(), cb.dual())] {
        match product_expansion_kappa(&a, &b) {
            Ok(Some(k)) => writeln!(out, "kappa {label}: {k}")?,
            Ok(None) => writeln!(out, "kappa {label}: undefined (no nonzero codeword)")?,
            Err(Error::Budget(m)) => writeln!(out, "kappa {label}: skipped ({m})")?,
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn cmd_build(config: &ExperimentConfig, out: &mut (dyn Write + Send)) -> Result<()> {
    let code = config.instance.build()?;
    write_summary(config, &code, out)
}

fn cmd_inspect(args: &InspectArgs, out: &mut (dyn Write + Send)) -> Result<()> {
    let config = ExperimentConfig::load(&args.config.config)?;
    let code = config.instance.build()?;
    write_summary(&config, &code, out)?;
    let iterations = args.iterations.unwrap_or_else(|| default_iterations(code.n()));
    let kappa = code.kappa().ok().flatten();
    match code.theory_report(TheoryParams {
        epsilon: args.epsilon,
        delta: args.delta,
        iterations,
        kappa,
    }) {
        Ok(report) => {
            writeln!(out, "decoder constants:")?;
            let value = serde_json::to_value(report)?;
            if let serde_json::Value::Object(map) = value {
                for (k, v) in map.iter().filter(|(k, _)| *k != "inputs") {
                    writeln!(out, "  {k}: {v}")?;
                }
            }
            writeln!(out, "  d_r: {}", report.inputs.d_r)?;
        }
        Err(e) => writeln!(out, "decoder constants: unavailable ({e})")?,
    }
    let mut rng = trial_rng(config.seed, u64::MAX);
    for (label, c) in [("X", code.clone()), ("Z", code.z_side()?)] {
        match c.find_low_weight_logical(args.logical_attempts, &mut rng) {
            Some(v) => writeln!(out, "distance upper bound ({label} errors): {}", v.weight())?,
            None => writeln!(out, "distance upper bound ({label} errors): none found")?,
        }
    }
    Ok(())
}

fn parse_code(rows: &str) -> Result<LinearCode> {
    let rows: Vec<&str> = rows.split(',').map(str::trim).filter(|r| !r.is_empty()).collect();
    if rows.is_empty() {
        return Err(Error::Parse("a code needs at least one generator row".into()));
    }
    Ok(LinearCode::from_generator(&BitMatrix::from_strings(&rows)?))
}

fn cmd_expansion(args: &ExpansionArgs, out: &mut (dyn Write + Send)) -> Result<()> {
    let (ca, cb) = match (&args.config, &args.code_a, &args.code_b) {
        (Some(path), _, _) => ExperimentConfig::load(path)?.instance.local_codes()?,
        (None, Some(a), Some(b)) => (parse_code(a)?, parse_code(b)?),
        _ => return Err(Error::Config("pass --config or both --code-a and --code-b".into())),
    };
    for (label, a, b) in [("C_A + C_B", ca.clone(), cb.clone()), ("C_A^perp + C_B^perp", ca.dual(), cb.dual())] {
        match product_expansion_kappa(&a, &b)? {
            Some(k) => writeln!(out, "kappa {label}: {k} ({:.6})", *k.numer() as f64 / *k.denom() as f64)?,
            None => writeln!(out, "kappa {label}: undefined (no nonzero codeword)")?,
        }
    }
    Ok(())
}

fn cmd_decode_one(args: &DecodeOneArgs, out: &mut (dyn Write + Send)) -> Result<()> {
    let config = ExperimentConfig::load(&args.config.config)?;
    let code = config.instance.build_for_decoding()?;
    let decoder = TannerDecoder::new(code.clone())?;
    let kinds: Vec<DecoderKind> = match args.decoder {
        Some(i) => vec![*config
            .decoders
            .get(i)
            .ok_or_else(|| Error::Config(format!("decoder index {i} out of range")))?],
        None => config.decoders.clone(),
    };
    let mut rng = trial_rng(config.seed, 0);
    let (mut e, mut d) = sample_errors(&code, &config.noise, &mut rng)?;
    if let Some(bits) = &args.error {
        e = bits.parse::<BitVector>()?;
        if e.len() != code.n() {
            return Err(Error::DimensionMismatch {
                expected: code.n(),
                found: e.len(),
            });
        }
    } else if let Some(w) = args.weight {
        e = sample_errors(&code, &crate::noise::NoiseModel::data_weight(w), &mut rng)?.0;
    }
    let m = code.hz().num_rows();
    for &i in &args.syndrome_flips {
        if i >= m {
            return Err(Error::InvalidParameter(format!("syndrome bit {i} out of range (H_Z has {m} rows)")));
        }
        d.flip(i);
    }
    for (record, &kind) in score_decoders(&decoder, &e, &d, &kinds, 0, config.timing)?.iter().zip(&kinds) {
        writeln!(out, "{}", serde_json::to_string(record)?)?;
        if args.steps {
            let mut s = code.syndrome(CheckSide::Z, &e)?;
            s.xor_assign(&d);
            let state = decoder.decode_traced(&s, kind)?;
            if !state.log.is_empty() {
                writeln!(out, "{}", state.log_json_lines())?;
            }
        }
    }
    Ok(())
}

fn apply_overrides(config: &mut ExperimentConfig, o: &RunOverrides) {
    if let Some(p) = &o.output {
        config.output = Some(p.clone());
    }
    if let Some(s) = o.seed {
        config.seed = s;
    }
    if let Some(t) = o.trials {
        config.trials = t;
    }
    config.timing |= o.timing;
}

fn open_output<'a>(config: &ExperimentConfig, out: &'a mut (dyn Write + Send)) -> Result<Box<dyn Write + 'a>> {
    Ok(match &config.output {
        Some(path) => Box::new(std::io::BufWriter::new(std::fs::File::create(path)?)),
        None => Box::new(out),
    })
}

fn side_label(config: &ExperimentConfig) -> &'static str {
    match config.instance.side {
        crate::config::DecodingSide::X => "x",
        crate::config::DecodingSide::Z => "z",
    }
}

#[derive(Serialize)]
struct TrialRow<'a> {
    instance: &'a str,
    side: &'a str,
    decoder: &'a str,
    param: String,
    p: Option<f64>,
    q: Option<f64>,
    point: usize,
    e_weight: usize,
    d_weight: usize,
    d_vertex: usize,
    correction_weight: usize,
    residual: usize,
    reduced_proxy: usize,
    class: &'a str,
    seed: u64,
    stream: u64,
    ms: Option<f64>,
    config_hash: &'a str,
    rng: &'a str,
}

#[derive(Serialize)]
struct PointRow<'a> {
    instance: &'a str,
    side: &'a str,
    decoder: &'a str,
    param: String,
    p: Option<f64>,
    q: Option<f64>,
    point: usize,
    trials: usize,
    failures: usize,
    failure_rate: f64,
    wilson_low: f64,
    wilson_high: f64,
    mean_residual: f64,
    mean_ms: Option<f64>,
    seed: u64,
    config_hash: &'a str,
    rng: &'a str,
}

fn cmd_sweep(args: &SweepArgs, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<()> {
    let mut config = ExperimentConfig::load(&args.config.config)?;
    apply_overrides(&mut config, &args.overrides);
    let code = config.instance.build_for_decoding()?;
    let decoder = TannerDecoder::new(code)?;
    let points = config.points();
    let result = sweep(&decoder, &points, &config.decoders, config.trials, config.seed, config.timing)?;
    let hash = config.hash();
    let side = side_label(&config);
    let mut w = csv::Writer::from_writer(open_output(&config, out)?);
    if args.per_point {
        for s in &result.summaries {
            w.serialize(PointRow {
                instance: &config.name,
                side,
                decoder: s.decoder.name(),
                param: s.decoder.param(),
                p: s.model.p(),
                q: s.model.q(),
                point: s.point,
                trials: s.trials,
                failures: s.failures,
                failure_rate: s.failure_rate,
                wilson_low: s.wilson_low,
                wilson_high: s.wilson_high,
                mean_residual: s.mean_residual,
                mean_ms: s.mean_micros.map(|m| m / 1000.0),
                seed: config.seed,
                config_hash: &hash,
                rng: RNG_NAME,
            })?;
        }
    } else {
        for (point, r) in &result.records {
            w.serialize(trial_row(&config, side, &hash, *point, &points[*point], r))?;
        }
    }
    w.flush()?;
    for s in &result.summaries {
        writeln!(
            err,
            "point {} {}({}): {}/{} failures, rate {:.4} [{:.4}, {:.4}], mean residual {:.3}",
            s.point,
            s.decoder.name(),
            s.decoder.param(),
            s.failures,
            s.trials,
            s.failure_rate,
            s.wilson_low,
            s.wilson_high,
            s.mean_residual
        )?;
    }
    Ok(())
}

fn trial_row<'a>(
    config: &'a ExperimentConfig,
    side: &'a str,
    hash: &'a str,
    point: usize,
    model: &crate::noise::NoiseModel,
    r: &TrialRecord,
) -> TrialRow<'a> {
    TrialRow {
        instance: &config.name,
        side,
        decoder: r.decoder.name(),
        param: r.decoder.param(),
        p: model.p(),
        q: model.q(),
        point,
        e_weight: r.e_weight,
        d_weight: r.d_weight,
        d_vertex: r.d_vertex,
        correction_weight: r.correction_weight,
        residual: r.residual_weight,
        reduced_proxy: r.reduced_proxy,
        class: r.class.as_str(),
        seed: config.seed,
        stream: r.stream,
        ms: r.micros.map(|m| m as f64 / 1000.0),
        config_hash: hash,
        rng: RNG_NAME,
    }
}

#[derive(Serialize)]
struct RoundRow<'a> {
    instance: &'a str,
    side: &'a str,
    decoder: &'a str,
    param: String,
    p: Option<f64>,
    q: Option<f64>,
    trial: usize,
    /// Round number, or `readout` for the final noiseless decode.
    round: String,
    e_weight: Option<usize>,
    d_weight: Option<usize>,
    d_vertex: Option<usize>,
    residual: usize,
    reduced_proxy: Option<usize>,
    class: Option<&'a str>,
    seed: u64,
    stream: u64,
    config_hash: &'a str,
    rng: &'a str,
}

fn cmd_multiround(args: &MultiroundArgs, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<()> {
    let mut config = ExperimentConfig::load(&args.config.config)?;
    apply_overrides(&mut config, &args.overrides);
    if let Some(r) = args.rounds {
        config.rounds = r;
    }
    if config.rounds == 0 {
        return Err(Error::Config("rounds must be at least 1".into()));
    }
    let code = config.instance.build_for_decoding()?;
    let decoder = TannerDecoder::new(code)?;
    let hash = config.hash();
    let side = side_label(&config);
    let model = config.noise;
    let mut w = csv::Writer::from_writer(open_output(&config, out)?);
    for (di, &kind) in config.decoders.iter().enumerate() {
        let traces = (0..config.trials)
            .into_par_iter()
            .map(|t| {
                let stream = crate::noise::stream_id(di, t);
                let mut rng = trial_rng(config.seed, stream);
                run_multiround(&decoder, &model, kind, config.rounds, stream, &mut rng)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut points = Vec::new();
        let mut corrected = 0;
        for (t, trace) in traces.iter().enumerate() {
            let rec = &trace.record;
            let row = |round: String| RoundRow {
                instance: &config.name,
                side,
                decoder: kind.name(),
                param: kind.param(),
                p: model.p(),
                q: model.q(),
                trial: t,
                round,
                e_weight: None,
                d_weight: None,
                d_vertex: None,
                residual: 0,
                reduced_proxy: None,
                class: None,
                seed: config.seed,
                stream: rec.stream,
                config_hash: &hash,
                rng: RNG_NAME,
            };
            for r in &rec.rounds {
                points.push((r.round as f64, r.residual_weight as f64));
                w.serialize(RoundRow {
                    e_weight: Some(r.e_weight),
                    d_weight: Some(r.d_weight),
                    d_vertex: Some(r.d_vertex),
                    residual: r.residual_weight,
                    reduced_proxy: Some(r.reduced_proxy),
                    ..row(r.round.to_string())
                })?;
            }
            w.serialize(RoundRow {
                residual: rec.final_residual_weight,
                class: Some(rec.final_class.as_str()),
                ..row("readout".into())
            })?;
            if !rec.final_class.is_failure() {
                corrected += 1;
            }
        }
        writeln!(
            err,
            "{}({}): readout corrected in {corrected}/{} trials",
            kind.name(),
            kind.param(),
            config.trials
        )?;
        match regression_slope(&points) {
            Ok(s) => writeln!(
                err,
                "residual trend slope {:.6} per round, 95% CI [{:.6}, {:.6}]",
                s.slope, s.ci_low, s.ci_high
            )?,
            Err(e) => writeln!(err, "residual trend: {e}")?,
        }
    }
    w.flush()?;
    Ok(())
}
