//! Noise models, single-shot trials, multi-round memory experiments and
//! Monte-Carlo sweeps.
//!
//! Every trial owns a ChaCha8 stream derived from `(master seed, stream id)`, so
//! results do not depend on how trials are spread over worker threads.

use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decoder::{DecoderKind, TannerDecoder};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::tanner::{CheckSide, FailureClass, QuantumTannerCode, ReducedWeightMode};

/// Name of the generator recorded next to every seed.
pub const RNG_NAME: &str = "ChaCha8";

/// Generator for stream `stream` of `master_seed`.
pub fn trial_rng(master_seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DataNoise {
    None,
    /// Uniformly random support of exactly `w` qubits.
    AdversarialWeight { w: usize },
    Bernoulli { p: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SyndromeNoise {
    None,
    AdversarialWeight { s: usize },
    Bernoulli { q: f64 },
    /// `t` distinct `V₁` vertices, each with a uniformly random nonzero local pattern.
    VertexBounded { t: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub data: DataNoise,
    pub syndrome: SyndromeNoise,
    /// Multi-round only: probability that each bit of the previous round's data
    /// error recurs in the next round.
    #[serde(default)]
    pub persistence: f64,
}

impl NoiseModel {
    pub const NOISELESS: Self = Self {
        data: DataNoise::None,
        syndrome: SyndromeNoise::None,
        persistence: 0.0,
    };

    pub fn bernoulli(p: f64, q: f64) -> Self {
        Self {
            data: DataNoise::Bernoulli { p },
            syndrome: SyndromeNoise::Bernoulli { q },
            persistence: 0.0,
        }
    }

    pub fn data_weight(w: usize) -> Self {
        Self {
            data: DataNoise::AdversarialWeight { w },
            ..Self::NOISELESS
        }
    }

    /// `p` column of the CSV (empty unless Bernoulli).
    pub fn p(&self) -> Option<f64> {
        match self.data {
            DataNoise::Bernoulli { p } => Some(p),
            _ => None,
        }
    }

    pub fn q(&self) -> Option<f64> {
        match self.syndrome {
            SyndromeNoise::Bernoulli { q } => Some(q),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let prob = |name: &str, x: f64| {
            if (0.0..=1.0).contains(&x) {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} = {x} is not a probability")))
            }
        };
        if let DataNoise::Bernoulli { p } = self.data {
            prob("p", p)?;
        }
        if let SyndromeNoise::Bernoulli { q } = self.syndrome {
            prob("q", q)?;
        }
        prob("persistence", self.persistence)
    }
}

fn bernoulli_vector<R: Rng + ?Sized>(len: usize, p: f64, rng: &mut R) -> BitVector {
    let mut v = BitVector::zeros(len);
    if p > 0.0 {
        for i in 0..len {
            if rng.gen_bool(p) {
                v.set(i, true);
            }
        }
    }
    v
}

fn exact_weight<R: Rng + ?Sized>(len: usize, w: usize, what: &str, rng: &mut R) -> Result<BitVector> {
    if w > len {
        return Err(Error::InvalidParameter(format!("{what} weight {w} exceeds length {len}")));
    }
    Ok(BitVector::from_indices(len, sample(rng, len, w)))
}

pub fn sample_data_error<R: Rng + ?Sized>(code: &QuantumTannerCode, noise: DataNoise, rng: &mut R) -> Result<BitVector> {
    let n = code.n();
    match noise {
        DataNoise::None => Ok(BitVector::zeros(n)),
        DataNoise::AdversarialWeight { w } => exact_weight(n, w, "data error", rng),
        DataNoise::Bernoulli { p } => Ok(bernoulli_vector(n, p, rng)),
    }
}

pub fn sample_syndrome_error<R: Rng + ?Sized>(
    code: &QuantumTannerCode,
    noise: SyndromeNoise,
    rng: &mut R,
) -> Result<BitVector> {
    let m = code.hz().num_rows();
    match noise {
        SyndromeNoise::None => Ok(BitVector::zeros(m)),
        SyndromeNoise::AdversarialWeight { s } => exact_weight(m, s, "syndrome error", rng),
        SyndromeNoise::Bernoulli { q } => Ok(bernoulli_vector(m, q, rng)),
        SyndromeNoise::VertexBounded { t } => {
            let blocks = 2 * code.group_order();
            let r = code.z_checks_per_vertex();
            if t > blocks {
                return Err(Error::InvalidParameter(format!(
                    "vertex-bounded noise on {t} vertices, only {blocks} carry checks"
                )));
            }
            if r == 0 {
                return Ok(BitVector::zeros(m));
            }
            let mut d = BitVector::zeros(m);
            for block in sample(rng, blocks, t) {
                let pattern: u64 = rng.gen_range(1..1u64 << r);
                for i in 0..r {
                    if pattern >> i & 1 == 1 {
                        d.set(block * r + i, true);
                    }
                }
            }
            Ok(d)
        }
    }
}

/// Samples `(e, D)`: a data error on the qubits and an error on the `Z`-syndrome.
pub fn sample_errors<R: Rng + ?Sized>(
    code: &QuantumTannerCode,
    model: &NoiseModel,
    rng: &mut R,
) -> Result<(BitVector, BitVector)> {
    let e = sample_data_error(code, model.data, rng)?;
    let d = sample_syndrome_error(code, model.syndrome, rng)?;
    Ok((e, d))
}

/// `|D|_V`: number of `V₁` vertices whose check block of `D` is nonzero.
pub fn vertex_support_size(code: &QuantumTannerCode, d: &BitVector) -> Result<usize> {
    let m = code.hz().num_rows();
    if d.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: d.len(),
        });
    }
    let r = code.z_checks_per_vertex();
    if r == 0 {
        return Ok(0);
    }
    let mut blocks: Vec<usize> = d.iter_ones().map(|i| i / r).collect();
    blocks.dedup();
    Ok(blocks.len())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub stream: u64,
    pub decoder: DecoderKind,
    pub e_weight: usize,
    pub d_weight: usize,
    pub d_vertex: usize,
    pub correction_weight: usize,
    pub residual_weight: usize,
    /// Greedy upper bound on the reduced residual weight.
    pub reduced_proxy: usize,
    pub class: FailureClass,
    /// Wall time of the decode call; recorded only when timing is enabled.
    pub micros: Option<u64>,
}

/// Decodes one `(e, D)` with every decoder in `kinds` and scores the results.
pub fn score_decoders(
    decoder: &TannerDecoder,
    e: &BitVector,
    d: &BitVector,
    kinds: &[DecoderKind],
    stream: u64,
    timing: bool,
) -> Result<Vec<TrialRecord>> {
    let code = decoder.code();
    let mut syndrome = code.syndrome(CheckSide::Z, e)?;
    syndrome.xor_assign(d);
    let d_vertex = vertex_support_size(code, d)?;
    kinds
        .iter()
        .map(|&kind| {
            let start = timing.then(Instant::now);
            let f = decoder.decode(&syndrome, kind)?;
            let micros = start.map(|s| s.elapsed().as_micros() as u64);
            let residual = e.xor(&f);
            Ok(TrialRecord {
                stream,
                decoder: kind,
                e_weight: e.weight(),
                d_weight: d.weight(),
                d_vertex,
                correction_weight: f.weight(),
                residual_weight: residual.weight(),
                reduced_proxy: code.reduced_weight(&residual, ReducedWeightMode::Greedy)?,
                class: code.classify_residual(&residual)?,
                micros,
            })
        })
        .collect()
}

/// One single-shot trial: sample `(e, D)`, decode `H_Z e + D`, classify `e + f̂`.
pub fn run_single_shot_trial<R: Rng + ?Sized>(
    decoder: &TannerDecoder,
    model: &NoiseModel,
    kind: DecoderKind,
    rng: &mut R,
) -> Result<TrialRecord> {
    let (e, d) = sample_errors(decoder.code(), model, rng)?;
    Ok(score_decoders(decoder, &e, &d, &[kind], 0, false)?.remove(0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoundRecord {
    pub round: usize,
    pub e_weight: usize,
    pub d_weight: usize,
    pub d_vertex: usize,
    /// `|e_i'|` after this round's correction.
    pub residual_weight: usize,
    pub reduced_proxy: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiRoundRecord {
    pub stream: u64,
    pub rounds: Vec<RoundRecord>,
    /// Outcome of the final noiseless sequential decode of `e_M'`.
    pub final_class: FailureClass,
    pub final_residual_weight: usize,
}

/// Per-round vectors kept for checking the telescoping identity.
#[derive(Clone, Debug)]
pub struct MultiRoundTrace {
    pub record: MultiRoundRecord,
    pub errors: Vec<BitVector>,
    pub corrections: Vec<BitVector>,
    pub residual: BitVector,
}

/// `M` rounds of noisy single-shot correction. Round `i` decodes
/// `H_Z(e'_{i−1} + e_i) + D_i` and sets `e'_i = e'_{i−1} + e_i + f̂_i`. The final
/// readout decodes the noiseless syndrome of `e'_M` with the sequential decoder.
pub fn run_multiround<R: Rng + ?Sized>(
    decoder: &TannerDecoder,
    model: &NoiseModel,
    kind: DecoderKind,
    rounds: usize,
    stream: u64,
    rng: &mut R,
) -> Result<MultiRoundTrace> {
    if rounds == 0 {
        return Err(Error::InvalidParameter("multi-round runs need at least one round".into()));
    }
    model.validate()?;
    let code = decoder.code();
    let n = code.n();
    let mut residual = BitVector::zeros(n);
    let mut previous = BitVector::zeros(n);
    let mut errors = Vec::with_capacity(rounds);
    let mut corrections = Vec::with_capacity(rounds);
    let mut records = Vec::with_capacity(rounds);
    for round in 1..=rounds {
        let (mut e, d) = sample_errors(code, model, rng)?;
        if model.persistence > 0.0 {
            for q in previous.iter_ones() {
                if rng.gen_bool(model.persistence) {
                    e.flip(q);
                }
            }
        }
        residual.xor_assign(&e);
        let mut syndrome = code.syndrome(CheckSide::Z, &residual)?;
        syndrome.xor_assign(&d);
        let f = decoder.decode(&syndrome, kind)?;
        residual.xor_assign(&f);
        records.push(RoundRecord {
            round,
            e_weight: e.weight(),
            d_weight: d.weight(),
            d_vertex: vertex_support_size(code, &d)?,
            residual_weight: residual.weight(),
            reduced_proxy: code.reduced_weight(&residual, ReducedWeightMode::Greedy)?,
        });
        previous = e.clone();
        errors.push(e);
        corrections.push(f);
    }
    let readout = decoder.decode(
        &code.syndrome(CheckSide::Z, &residual)?,
        DecoderKind::Sequential {
            epsilon: DecoderKind::DEFAULT_EPSILON,
        },
    )?;
    let final_residual = residual.xor(&readout);
    Ok(MultiRoundTrace {
        record: MultiRoundRecord {
            stream,
            rounds: records,
            final_class: code.classify_residual(&final_residual)?,
            final_residual_weight: final_residual.weight(),
        },
        errors,
        corrections,
        residual,
    })
}

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(successes: usize, trials: usize) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    const Z: f64 = 1.959_963_984_540_054;
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + Z * Z / n;
    let centre = (p + Z * Z / (2.0 * n)) / denom;
    let half = Z * (p * (1.0 - p) / n + Z * Z / (4.0 * n * n)).sqrt() / denom;
    // The exact endpoints at 0 and n would otherwise pick up rounding residue.
    let low = if successes == 0 { 0.0 } else { (centre - half).max(0.0) };
    let high = if successes == trials { 1.0 } else { (centre + half).min(1.0) };
    (low, high)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointSummary {
    pub point: usize,
    pub model: NoiseModel,
    pub decoder: DecoderKind,
    pub trials: usize,
    pub failures: usize,
    pub failure_rate: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    pub mean_residual: f64,
    pub mean_micros: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    /// `(point index, record)` in point, trial, decoder order.
    pub records: Vec<(usize, TrialRecord)>,
    pub summaries: Vec<PointSummary>,
}

/// Stream id of trial `trial` at grid point `point`.
pub fn stream_id(point: usize, trial: usize) -> u64 {
    ((point as u64) << 32) | trial as u64
}

/// Runs `trials` trials per grid point. Each trial samples one `(e, D)` and
/// scores every decoder on it, so decoder columns are paired by stream id.
pub fn sweep(
    decoder: &TannerDecoder,
    points: &[NoiseModel],
    kinds: &[DecoderKind],
    trials: usize,
    master_seed: u64,
    timing: bool,
) -> Result<SweepResult> {
    for m in points {
        m.validate()?;
    }
    let code = decoder.code();
    let mut records = Vec::new();
    let mut summaries = Vec::new();
    for (pi, model) in points.iter().enumerate() {
        let per_trial: Vec<Vec<TrialRecord>> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let stream = stream_id(pi, t);
                let mut rng = trial_rng(master_seed, stream);
                let (e, d) = sample_errors(code, model, &mut rng)?;
                score_decoders(decoder, &e, &d, kinds, stream, timing)
            })
            .collect::<Result<_>>()?;
        for (ki, &kind) in kinds.iter().enumerate() {
            let rows: Vec<&TrialRecord> = per_trial.iter().map(|r| &r[ki]).collect();
            let failures = rows.iter().filter(|r| r.class.is_failure()).count();
            let (lo, hi) = wilson_interval(failures, trials);
            let mean = |f: &dyn Fn(&TrialRecord) -> f64| rows.iter().map(|r| f(r)).sum::<f64>() / trials.max(1) as f64;
            summaries.push(PointSummary {
                point: pi,
                model: *model,
                decoder: kind,
                trials,
                failures,
                failure_rate: failures as f64 / trials.max(1) as f64,
                wilson_low: lo,
                wilson_high: hi,
                mean_residual: mean(&|r| r.residual_weight as f64),
                mean_micros: timing.then(|| mean(&|r| r.micros.unwrap_or(0) as f64)),
            });
        }
        records.extend(per_trial.into_iter().flatten().map(|r| (pi, r)));
    }
    Ok(SweepResult { records, summaries })
}

/// Failure frequency and its Wilson interval at one noise point.
pub fn failure_rate(
    decoder: &TannerDecoder,
    model: &NoiseModel,
    kind: DecoderKind,
    trials: usize,
    master_seed: u64,
) -> Result<(f64, (f64, f64))> {
    let s = sweep(decoder, std::slice::from_ref(model), &[kind], trials, master_seed, false)?;
    let p = &s.summaries[0];
    Ok((p.failure_rate, (p.wilson_low, p.wilson_high)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SyndromeRate {
    /// `q = p`.
    EqualToP,
    Fixed { q: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThresholdEstimate {
    /// Midpoint of the final bracket.
    pub p: f64,
    pub low: f64,
    pub high: f64,
    /// Bisection steps whose Wilson interval excluded one half.
    pub separated_steps: usize,
}

/// Bisection on `p` for the point where the single-shot failure frequency
/// crosses one half. `high` must already fail at least half the time.
pub fn estimate_threshold(
    decoder: &TannerDecoder,
    kind: DecoderKind,
    rate: SyndromeRate,
    high: f64,
    steps: usize,
    trials: usize,
    master_seed: u64,
) -> Result<ThresholdEstimate> {
    let model = |p: f64| {
        let q = match rate {
            SyndromeRate::EqualToP => p,
            SyndromeRate::Fixed { q } => q,
        };
        NoiseModel::bernoulli(p, q)
    };
    let (top, _) = failure_rate(decoder, &model(high), kind, trials, master_seed)?;
    if top < 0.5 {
        return Err(Error::InvalidParameter(format!(
            "failure rate {top:.3} at p = {high} is below one half; raise the upper bracket"
        )));
    }
    let (mut lo, mut hi) = (0.0, high);
    let mut separated = 0;
    for step in 0..steps {
        let mid = 0.5 * (lo + hi);
        let (rate, (wl, wh)) = failure_rate(decoder, &model(mid), kind, trials, master_seed ^ (step as u64 + 1))?;
        if wl > 0.5 || wh < 0.5 {
            separated += 1;
        }
        if rate >= 0.5 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ThresholdEstimate {
        p: 0.5 * (lo + hi),
        low: lo,
        high: hi,
        separated_steps: separated,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlopeEstimate {
    pub slope: f64,
    pub intercept: f64,
    pub std_error: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub points: usize,
}

impl SlopeEstimate {
    pub fn ci_contains_zero(&self) -> bool {
        self.ci_low <= 0.0 && 0.0 <= self.ci_high
    }
}

/// Two-sided 95% Student-t quantiles for 1..=30 degrees of freedom.
const T_975: [f64; 30] = [
    12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228, 2.201, 2.179, 2.160, 2.145, 2.131, 2.120,
    2.110, 2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042,
];

fn t_quantile(df: usize) -> f64 {
    match df {
        0 => f64::INFINITY,
        1..=30 => T_975[df - 1],
        // normal approximation with the first Cornish-Fisher correction
        _ => {
            let z = 1.959_963_984_540_054;
            z + (z * z * z + z) / (4.0 * df as f64)
        }
    }
}

/// Least-squares slope of `y` on `x` with a 95% confidence interval.
pub fn regression_slope(points: &[(f64, f64)]) -> Result<SlopeEstimate> {
    let n = points.len();
    if n < 3 {
        return Err(Error::InvalidParameter("slope estimate needs at least three points".into()));
    }
    let nf = n as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParameter("slope estimate needs at least two distinct x values".into()));
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = points.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let std_error = (sse / (nf - 2.0) / sxx).sqrt();
    let t = t_quantile(n - 2);
    Ok(SlopeEstimate {
        slope,
        intercept,
        std_error,
        ci_low: slope - t * std_error,
        ci_high: slope + t * std_error,
        points: n,
    })
}
