//! Single-shot decoding under Bernoulli data and syndrome noise, comparing the
//! sequential and parallel decoders on the same samples.
//!
//! ```bash
//! cargo run --release --example single_shot
//! ```

use std::sync::Arc;

use qtanner::decoder::{DecoderKind, TannerDecoder};
use qtanner::noise::{sweep, NoiseModel};

fn main() -> qtanner::Result<()> {
    let decoder = TannerDecoder::new(Arc::new(qtanner::instances::wide()?))?;
    let kinds = [DecoderKind::Sequential { epsilon: 0.5 }, DecoderKind::Parallel { iterations: 9 }];
    let points: Vec<_> = [0.002, 0.01, 0.02]
        .iter()
        .flat_map(|&p| [NoiseModel::bernoulli(p, 0.0), NoiseModel::bernoulli(p, p)])
        .collect();
    let result = sweep(&decoder, &points, &kinds, 200, 2024, false)?;
    for s in &result.summaries {
        println!(
            "p = {:<5} q = {:<5} {:>10}: failure {:.3} [{:.3}, {:.3}], mean residual {:.2}",
            s.model.p().unwrap(),
            s.model.q().unwrap(),
            s.decoder.name(),
            s.failure_rate,
            s.wilson_low,
            s.wilson_high,
            s.mean_residual
        );
    }
    Ok(())
}
