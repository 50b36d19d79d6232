//! Build a quantum Tanner code and report its parameters and decoder constants.
//!
//! ```bash
//! cargo run --release --example build_code
//! ```

use qtanner::decoder::default_iterations;
use qtanner::noise::trial_rng;
use qtanner::tanner::{CheckSide, TheoryParams};

fn main() -> qtanner::Result<()> {
    let code = qtanner::instances::reference()?;
    let dims = code.code_dimension();
    println!(
        "n = {}, rank H_X = {}, rank H_Z = {}, k = {} (bound {})",
        dims.n, dims.rank_hx, dims.rank_hz, dims.k, dims.k_lower_bound
    );
    assert!(code.hx().mul_transpose(code.hz())?.is_zero(), "CSS condition");
    println!("X check weights {:?}", code.check_weight_histogram(CheckSide::X));

    let mut rng = trial_rng(11, 0);
    if let Some(l) = code.find_low_weight_logical(50, &mut rng) {
        println!("found a logical of weight {} (distance upper bound)", l.weight());
    }

    let report = code.theory_report(TheoryParams {
        epsilon: 0.5,
        delta: 0.05,
        iterations: default_iterations(code.n()),
        kappa: None,
    })?;
    println!("kappa = {}, d_r = {}", report.inputs.kappa, report.inputs.d_r);
    println!("sequential residual factor {:.2}", report.sequential_residual_factor);
    println!("parallel contraction alpha_k = {:.4}", report.alpha_k);
    Ok(())
}
