//! Decoding Z-type errors by swapping the roles of the two check families.
//!
//! ```bash
//! cargo run --release --example z_side
//! ```

use std::sync::Arc;

use qtanner::decoder::{DecoderKind, TannerDecoder};
use qtanner::noise::{sample_errors, trial_rng, NoiseModel};
use qtanner::tanner::CheckSide;

fn main() -> qtanner::Result<()> {
    let code = qtanner::instances::reference()?;
    let swapped = Arc::new(code.z_side()?);
    assert_eq!(swapped.hz(), code.hx());
    assert_eq!(swapped.hx(), code.hz());
    println!("swapped orientation: {:?}", swapped.orientation());

    let decoder = TannerDecoder::new(swapped.clone())?;
    let kind = DecoderKind::Sequential { epsilon: 0.5 };
    let mut fixed = 0;
    for t in 0..200 {
        let mut rng = trial_rng(3, t);
        let (e, _) = sample_errors(&swapped, &NoiseModel::data_weight(1), &mut rng)?;
        let f = decoder.decode(&swapped.syndrome(CheckSide::Z, &e)?, kind)?;
        fixed += usize::from(!swapped.classify_residual(&e.xor(&f))?.is_failure());
    }
    println!("weight-1 Z errors corrected: {fixed}/200");
    Ok(())
}
