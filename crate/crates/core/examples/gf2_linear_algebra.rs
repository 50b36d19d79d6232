//! Bit-packed GF(2) linear algebra: rank, kernel, solving and echelon reduction.
//!
//! ```bash
//! cargo run --example gf2_linear_algebra
//! ```

use qtanner::gf2::{BitMatrix, BitVector};

fn main() -> qtanner::Result<()> {
    // Parity-check matrix of the [7, 4, 3] Hamming code.
    let h = BitMatrix::from_strings(&["1010101", "0110011", "0001111"])?;
    println!("H =\n{}", h.to_ascii());
    println!("rank {}", h.rank());

    let kernel = h.kernel_basis();
    println!("kernel basis ({} rows):\n{}", kernel.num_rows(), kernel.to_ascii());
    for row in kernel.rows() {
        assert!(h.mul_vec(row)?.is_zero());
    }

    // Syndrome of a single flip on bit 5 spells 5 + 1 = 6 in binary.
    let e = BitVector::from_indices(7, [5]);
    let s = h.mul_vec(&e)?;
    println!("syndrome of e = {e}: {s}");
    let x = h.solve_any(&s)?.expect("consistent system");
    assert_eq!(h.mul_vec(&x)?, s);
    println!("one preimage: {x}");

    let ech = h.echelon();
    println!("pivots {:?}; e reduced modulo row space: {}", ech.pivots(), ech.reduce(&e)?);
    Ok(())
}
