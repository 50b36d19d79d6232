//! Decode one noisy syndrome and print every decomposition step.
//!
//! ```bash
//! cargo run --release --example decode_trace
//! ```

use std::sync::Arc;

use qtanner::decoder::{DecoderKind, TannerDecoder};
use qtanner::noise::{sample_errors, trial_rng, NoiseModel};
use qtanner::tanner::CheckSide;

fn main() -> qtanner::Result<()> {
    let code = Arc::new(qtanner::instances::wide()?);
    let decoder = TannerDecoder::new(code.clone())?;
    let mut rng = trial_rng(5, 0);
    let (e, _) = sample_errors(&code, &NoiseModel::data_weight(4), &mut rng)?;
    let syndrome = code.syndrome(CheckSide::Z, &e)?;
    println!("error support {:?}", e.iter_ones().collect::<Vec<_>>());

    for kind in [DecoderKind::Sequential { epsilon: 0.5 }, DecoderKind::Parallel { iterations: 4 }] {
        let state = decoder.decode_traced(&syndrome, kind)?;
        println!("{}({}): |zhat| starts at {}", kind.name(), kind.param(), state.initial.weight());
        println!("{}", state.log_json_lines());
        let residual = e.xor(&state.correction());
        println!("residual class: {:?}\n", code.classify_residual(&residual)?);
    }
    Ok(())
}
