//! Named instances used by the examples, the CLI presets and the tests.

use std::sync::Arc;

use crate::classical::LinearCode;
use crate::complex::{FiniteGroup, GeneratingSet, LeftRightCayleyComplex};
use crate::error::Result;
use crate::gf2::BitMatrix;
use crate::tanner::QuantumTannerCode;

pub const REFERENCE_A: [usize; 4] = [1, 12, 5, 8];
pub const REFERENCE_B: [usize; 4] = [2, 11, 3, 10];

pub fn complex(group: FiniteGroup, a: &[usize], b: &[usize]) -> Result<Arc<LeftRightCayleyComplex>> {
    let sa = GeneratingSet::validate(&group, a)?;
    let sb = GeneratingSet::validate(&group, b)?;
    Ok(Arc::new(LeftRightCayleyComplex::new(group, sa, sb)))
}

/// `Z₅`, `Δ = 2`, `C_A = rep₂`, `C_B = F₂²`.
pub fn tiny() -> Result<QuantumTannerCode> {
    let c = complex(FiniteGroup::cyclic(5)?, &[1, 4], &[1, 4])?;
    QuantumTannerCode::new(c, LinearCode::repetition(2), LinearCode::full(2))
}

/// `Z₁₃`, `Δ = 4`, `C_A = rep₄`, `C_B = par₄` (`ρ = 1/4`), `n = 208`.
pub fn reference() -> Result<QuantumTannerCode> {
    let c = complex(FiniteGroup::cyclic(13)?, &REFERENCE_A, &REFERENCE_B)?;
    QuantumTannerCode::new(c, LinearCode::repetition(4), LinearCode::parity(4))
}

/// `D₆`, `Δ = 4`, with the same local codes as [`reference`].
pub fn dihedral() -> Result<QuantumTannerCode> {
    let c = complex(FiniteGroup::dihedral(6)?, &[1, 5, 6, 7], &[6, 8, 1, 5])?;
    QuantumTannerCode::new(c, LinearCode::repetition(4), LinearCode::parity(4))
}

/// The `[5, 2, 3]` code spanned by `11100` and `00111`.
pub fn code_5_2_3() -> LinearCode {
    let g = BitMatrix::from_strings(&["11100", "00111"]).expect("valid rows");
    LinearCode::from_generator(&g)
}

/// `Z₁₂`, `Δ = 5`, `C_A = C_B = [5, 2, 3]`, `n = 300`. Its local dual tensor code
/// has distance 3, so single-face errors are decoded locally.
pub fn wide() -> Result<QuantumTannerCode> {
    let set = [6, 1, 11, 3, 9];
    let c = complex(FiniteGroup::cyclic(12)?, &set, &set)?;
    QuantumTannerCode::new(c, code_5_2_3(), code_5_2_3())
}
