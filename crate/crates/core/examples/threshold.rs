//! Bisection for the single-shot threshold, the rate at which half the trials fail.
//!
//! ```bash
//! cargo run --release --example threshold
//! ```

use std::sync::Arc;

use qtanner::decoder::{DecoderKind, TannerDecoder};
use qtanner::noise::{estimate_threshold, SyndromeRate};

fn main() -> qtanner::Result<()> {
    let decoder = TannerDecoder::new(Arc::new(qtanner::instances::reference()?))?;
    for rate in [SyndromeRate::Fixed { q: 0.0 }, SyndromeRate::EqualToP] {
        let t = estimate_threshold(&decoder, DecoderKind::Parallel { iterations: 8 }, rate, 0.05, 8, 300, 9)?;
        println!(
            "{rate:?}: threshold ~ {:.5} (bracket [{:.5}, {:.5}], {} steps separated from 1/2)",
            t.p, t.low, t.high, t.separated_steps
        );
    }
    Ok(())
}
