//! Repeated noisy rounds followed by a noiseless readout, with a regression on
//! the per-round residual weight.
//!
//! ```bash
//! cargo run --release --example multiround
//! ```

use std::sync::Arc;

use qtanner::decoder::{DecoderKind, TannerDecoder};
use qtanner::noise::{regression_slope, run_multiround, trial_rng, NoiseModel};

fn main() -> qtanner::Result<()> {
    let decoder = TannerDecoder::new(Arc::new(qtanner::instances::wide()?))?;
    let model = NoiseModel::bernoulli(0.002, 0.002);
    let kind = DecoderKind::Parallel { iterations: 4 };
    let (trials, rounds) = (40, 50);
    let mut points = Vec::new();
    let mut corrected = 0;
    for t in 0..trials {
        let mut rng = trial_rng(77, t);
        let trace = run_multiround(&decoder, &model, kind, rounds, t, &mut rng)?;
        points.extend(
            trace.record.rounds.iter().map(|r| (r.round as f64, r.residual_weight as f64)),
        );
        corrected += usize::from(!trace.record.final_class.is_failure());
    }
    println!("readout corrected in {corrected}/{trials} trials");
    let s = regression_slope(&points)?;
    println!(
        "residual slope {:.5} per round, 95% CI [{:.5}, {:.5}], CI contains zero: {}",
        s.slope,
        s.ci_low,
        s.ci_high,
        s.ci_contains_zero()
    );
    Ok(())
}
