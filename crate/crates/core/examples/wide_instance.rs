//! An instance whose local dual tensor code has distance 3, where every
//! low-weight error is decoded and both decoders agree.
//!
//! ```bash
//! cargo run --release --example wide_instance
//! ```

use std::sync::Arc;

use qtanner::decoder::{DecoderKind, TannerDecoder};
use qtanner::noise::{sweep, NoiseModel};

fn main() -> qtanner::Result<()> {
    let code = Arc::new(qtanner::instances::wide()?);
    let dims = code.code_dimension();
    println!("n = {}, k = {}", dims.n, dims.k);
    let decoder = TannerDecoder::new(code)?;
    println!("local cache: {} codewords", decoder.cache().words().len());
    let kinds = [DecoderKind::Sequential { epsilon: 0.5 }, DecoderKind::Parallel { iterations: 9 }];
    let points: Vec<_> = (1..=6).map(NoiseModel::data_weight).collect();
    let result = sweep(&decoder, &points, &kinds, 200, 1, false)?;
    for s in &result.summaries {
        println!(
            "|e| = {} {:>10}: {}/{} failures",
            s.point + 1,
            s.decoder.name(),
            s.failures,
            s.trials
        );
    }
    Ok(())
}
