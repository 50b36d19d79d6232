//! Local codes, their dual tensor code `C_A ⊞ C_B`, the minimum column/row
//! decomposition and the product-expansion constant κ.
//!
//! ```bash
//! cargo run --release --example local_codes
//! ```

use qtanner::classical::{dual_tensor_code, product_expansion_kappa, LinearCode};
use qtanner::instances::code_5_2_3;

fn main() -> qtanner::Result<()> {
    let pairs = [
        ("rep4 / par4", LinearCode::repetition(4), LinearCode::parity(4)),
        ("rep3 / par3", LinearCode::repetition(3), LinearCode::parity(3)),
        ("[5,2,3] / [5,2,3]", code_5_2_3(), code_5_2_3()),
    ];
    for (label, a, b) in pairs {
        let sum = dual_tensor_code(&a, &b);
        let words = sum.nonzero_codewords()?;
        let d = words.iter().map(|w| w.count_ones()).min().unwrap_or(0);
        println!("{label}: dim C_A+C_B = {} of {}, distance {d}", sum.dim(), sum.len());
        let kappa = product_expansion_kappa(&a, &b)?.expect("nonzero codewords exist");
        println!("  kappa = {kappa}");

        // Split the heaviest codeword into columns of C_A and rows of C_B.
        let x = *words.iter().max_by_key(|w| w.count_ones()).unwrap();
        let dec = sum.min_cr_decomposition(x)?;
        assert_eq!(dec.c ^ dec.r, x);
        println!(
            "  |x| = {} splits into {} columns + {} rows",
            x.count_ones(),
            dec.columns,
            dec.rows
        );

        let table = sum.coset_leader_table()?;
        let worst = (0..1u64 << table.checks())
            .filter_map(|s| table.leader(s))
            .map(|l| l.count_ones())
            .max()
            .unwrap_or(0);
        println!("  {} syndromes, heaviest coset leader weight {worst}", table.len());
    }
    Ok(())
}
