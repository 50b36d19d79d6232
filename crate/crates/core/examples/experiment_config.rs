//! Load a JSON experiment config, run its sweep and print CSV-ready summaries.
//!
//! ```bash
//! cargo run --release --example experiment_config -- configs/wide.json
//! ```

use qtanner::config::ExperimentConfig;
use qtanner::decoder::TannerDecoder;
use qtanner::noise::sweep;

fn main() -> qtanner::Result<()> {
    let config = match std::env::args().nth(1) {
        Some(path) => ExperimentConfig::load(path.as_ref())?,
        None => {
            let mut c = ExperimentConfig::from_json(include_str!("../../../configs/reference.json"))?;
            c.trials = 50;
            c
        }
    };
    println!("{} (config hash {})", config.name, config.hash());
    let decoder = TannerDecoder::new(config.instance.build_for_decoding()?)?;
    let result = sweep(&decoder, &config.points(), &config.decoders, config.trials, config.seed, false)?;
    println!("point,decoder,failures,trials,rate");
    for s in &result.summaries {
        println!("{},{},{},{},{:.4}", s.point, s.decoder.name(), s.failures, s.trials, s.failure_rate);
    }
    Ok(())
}
