//! Quantum Tanner codes: qubits on the faces of a left-right Cayley complex,
//! `X`-checks from `C_A ⊗ C_B` on `V₀ = V₀₀ ∪ V₁₁` and `Z`-checks from
//! `C_A^⊥ ⊗ C_B^⊥` on `V₁ = V₀₁ ∪ V₁₀`.
//!
//! The decoders only ever correct errors flagged by `H_Z`. Errors of the other
//! type are handled by [`QuantumTannerCode::z_side`], which rebuilds the code with
//! the two vertex halves exchanged and the local codes replaced by their duals.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::classical::{dual_tensor_code, product_expansion_kappa, DualTensorCode, LinearCode};
use crate::complex::{LeftRightCayleyComplex, Vertex, VertexClass};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, Echelon};

/// Largest `rank(H_X)` for which [`QuantumTannerCode::reduced_weight`] enumerates the stabilizer group.
pub const EXACT_REDUCED_WEIGHT_MAX_RANK: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orientation {
    /// Decode errors seen by the `C_A^⊥ ⊗ C_B^⊥` checks on `V₀₁ ∪ V₁₀`.
    Standard,
    /// Roles of `V₀` and `V₁` exchanged, local codes dualized.
    Swapped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckSide {
    /// Rows of `H_X`.
    X,
    /// Rows of `H_Z`.
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReducedWeightMode {
    Exact,
    /// Upper bound from greedily adding single stabilizer generators.
    Greedy,
}

/// Outcome of a correction attempt, judged on the residual `e + f̂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureClass {
    /// Residual is a stabilizer.
    Corrected,
    /// Residual has a nonzero syndrome.
    Detected,
    /// Residual has zero syndrome but is not a stabilizer.
    Logical,
}

impl FailureClass {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Corrected => "corrected",
            Self::Detected => "detected",
            Self::Logical => "logical",
        }
    }

    pub fn is_failure(self) -> bool {
        self != Self::Corrected
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionReport {
    pub n: usize,
    pub rank_hx: usize,
    pub rank_hz: usize,
    pub k: usize,
    /// `ρ = dim C_A / |A|`.
    pub rho: f64,
    /// `(1 − 2ρ)² n`.
    pub k_lower_bound: f64,
}

#[derive(Clone, Debug)]
pub struct QuantumTannerCode {
    complex: Arc<LeftRightCayleyComplex>,
    /// The pair the code was built from, before any dualization for orientation.
    source_a: LinearCode,
    source_b: LinearCode,
    /// Local pair whose dual tensor code is the kernel of the decoding checks.
    local_a: LinearCode,
    local_b: LinearCode,
    orientation: Orientation,
    hx: BitMatrix,
    hz: BitMatrix,
    x_local: BitMatrix,
    z_local: BitMatrix,
    decoding_code: DualTensorCode,
    hx_echelon: Echelon,
}

impl QuantumTannerCode {
    /// Standard orientation with local codes `C_A`, `C_B` of lengths `|A|`, `|B|`.
    pub fn new(complex: Arc<LeftRightCayleyComplex>, code_a: LinearCode, code_b: LinearCode) -> Result<Self> {
        Self::build(complex, code_a, code_b, Orientation::Standard)
    }

    pub fn build(
        complex: Arc<LeftRightCayleyComplex>,
        code_a: LinearCode,
        code_b: LinearCode,
        orientation: Orientation,
    ) -> Result<Self> {
        if code_a.len() != complex.set_a().len() || code_b.len() != complex.set_b().len() {
            return Err(Error::InvalidParameter(format!(
                "local code lengths ({}, {}) do not match generating set sizes ({}, {})",
                code_a.len(),
                code_b.len(),
                complex.set_a().len(),
                complex.set_b().len()
            )));
        }
        let (local_a, local_b) = match orientation {
            Orientation::Standard => (code_a.clone(), code_b.clone()),
            Orientation::Swapped => (code_a.dual(), code_b.dual()),
        };
        let x_local = local_a.generator().kronecker(local_b.generator());
        let z_local = local_a.parity_check().kronecker(local_b.parity_check());
        let n = complex.num_faces();

        let mut code = Self {
            complex,
            source_a: code_a,
            source_b: code_b,
            decoding_code: dual_tensor_code(&local_a, &local_b),
            local_a,
            local_b,
            orientation,
            hx: BitMatrix::empty(n),
            hz: BitMatrix::empty(n),
            x_local,
            z_local,
            hx_echelon: Echelon::new(&BitMatrix::empty(n)),
        };
        code.hx = code.embed(&code.x_local, &[VertexClass::V00, VertexClass::V11]);
        code.hz = code.embed(&code.z_local, &[VertexClass::V01, VertexClass::V10]);
        let product = code.hx.mul_transpose(&code.hz)?;
        if !product.is_zero() {
            let violations = product.rows().iter().map(BitVector::weight).sum();
            return Err(Error::Commutation { violations });
        }
        code.hx_echelon = code.hx.echelon();
        Ok(code)
    }

    /// The same code with the roles of the two check types exchanged, so the
    /// decoders built for `H_Z` correct errors flagged by the original `H_X`.
    pub fn z_side(&self) -> Result<Self> {
        let orientation = match self.orientation {
            Orientation::Standard => Orientation::Swapped,
            Orientation::Swapped => Orientation::Standard,
        };
        Self::build(self.complex.clone(), self.source_a.clone(), self.source_b.clone(), orientation)
    }

    fn embed(&self, local: &BitMatrix, classes: &[VertexClass]) -> BitMatrix {
        let n = self.complex.num_faces();
        let mut rows = Vec::with_capacity(classes.len() * self.group_order() * local.num_rows());
        for &class in classes {
            for g in 0..self.group_order() {
                let view = self.view(Vertex { g, class });
                for word in local.rows() {
                    rows.push(BitVector::from_indices(n, word.iter_ones().map(|p| view[p])));
                }
            }
        }
        BitMatrix::from_rows(n, rows).expect("embedded rows have length n")
    }

    /// Physical vertex class playing the role of `class` in this orientation.
    pub fn physical_class(&self, class: VertexClass) -> VertexClass {
        match self.orientation {
            Orientation::Standard => class,
            Orientation::Swapped => class.flip_j(),
        }
    }

    /// Local view of a vertex given in this code's (possibly relabeled) classes.
    pub fn view(&self, v: Vertex) -> &[usize] {
        let phys = Vertex {
            g: v.g,
            class: self.physical_class(v.class),
        };
        self.complex.local_view_by_index(self.complex.vertex_index(phys))
    }

    pub fn complex(&self) -> &LeftRightCayleyComplex {
        &self.complex
    }

    pub fn complex_arc(&self) -> Arc<LeftRightCayleyComplex> {
        self.complex.clone()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn group_order(&self) -> usize {
        self.complex.group().order()
    }

    /// Number of qubits, `|Q| = |G|·|A|·|B|`.
    pub fn n(&self) -> usize {
        self.complex.num_faces()
    }

    pub fn local_a(&self) -> &LinearCode {
        &self.local_a
    }

    pub fn local_b(&self) -> &LinearCode {
        &self.local_b
    }

    pub fn source_codes(&self) -> (&LinearCode, &LinearCode) {
        (&self.source_a, &self.source_b)
    }

    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }

    /// Local `Z`-check matrix `H_A ⊗ H_B` seen at every `V₁` vertex.
    pub fn z_local_checks(&self) -> &BitMatrix {
        &self.z_local
    }

    /// `C_A ⊞ C_B`, the kernel of the local `Z`-checks.
    pub fn decoding_code(&self) -> &DualTensorCode {
        &self.decoding_code
    }

    /// `Z`-checks per `V₁` vertex.
    pub fn z_checks_per_vertex(&self) -> usize {
        self.z_local.num_rows()
    }

    pub fn x_checks_per_vertex(&self) -> usize {
        self.x_local.num_rows()
    }

    /// `V₀₁` vertices then `V₁₀` vertices, in the order their check blocks appear in `H_Z`.
    pub fn z_check_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        [VertexClass::V01, VertexClass::V10]
            .into_iter()
            .flat_map(move |class| (0..self.group_order()).map(move |g| Vertex { g, class }))
    }

    /// Position of a `V₁` vertex's check block in `H_Z`.
    pub fn z_block(&self, v: Vertex) -> usize {
        let half = match v.class {
            VertexClass::V01 => 0,
            VertexClass::V10 => 1,
            other => panic!("{other} vertices carry no Z-checks"),
        };
        half * self.group_order() + v.g
    }

    /// Checks of block `block` extracted from a `Z`-syndrome as a mask.
    pub fn local_syndrome(&self, syndrome: &BitVector, block: usize) -> u64 {
        let r = self.z_checks_per_vertex();
        (0..r).filter(|&i| syndrome.get(block * r + i)).fold(0u64, |acc, i| acc | 1 << i)
    }

    /// Restriction of a qubit vector to a local view, as a mask in `A × B` order.
    pub fn gather(&self, v: Vertex, e: &BitVector) -> u64 {
        self.view(v)
            .iter()
            .enumerate()
            .filter(|(_, &q)| e.get(q))
            .fold(0u64, |acc, (p, _)| acc | 1 << p)
    }

    /// Lifts a local mask onto the qubits of `v`'s view.
    pub fn scatter(&self, v: Vertex, local: u64, out: &mut BitVector) {
        let view = self.view(v);
        let mut m = local;
        while m != 0 {
            let p = m.trailing_zeros() as usize;
            m &= m - 1;
            out.flip(view[p]);
        }
    }

    pub fn code_dimension(&self) -> DimensionReport {
        let n = self.n();
        let rank_hx = self.hx_echelon.rank();
        let rank_hz = self.hz.rank();
        let rho = self.source_a.dim() as f64 / self.source_a.len() as f64;
        DimensionReport {
            n,
            rank_hx,
            rank_hz,
            k: n - rank_hx - rank_hz,
            rho,
            k_lower_bound: (1.0 - 2.0 * rho).powi(2) * n as f64,
        }
    }

    pub fn syndrome(&self, side: CheckSide, e: &BitVector) -> Result<BitVector> {
        match side {
            CheckSide::X => self.hx.mul_vec(e),
            CheckSide::Z => self.hz.mul_vec(e),
        }
    }

    /// `|e|_R = min over stabilizers s of |e + s|`, exactly or as a greedy upper bound.
    pub fn reduced_weight(&self, e: &BitVector, mode: ReducedWeightMode) -> Result<usize> {
        if e.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: e.len(),
            });
        }
        match mode {
            ReducedWeightMode::Exact => {
                let basis = self.hx_echelon.basis();
                if basis.num_rows() > EXACT_REDUCED_WEIGHT_MAX_RANK {
                    return Err(Error::Budget(format!(
                        "exact reduced weight over a stabilizer group of rank {} (limit {EXACT_REDUCED_WEIGHT_MAX_RANK})",
                        basis.num_rows()
                    )));
                }
                let mut cur = e.clone();
                let mut best = cur.weight();
                for step in 1u64..(1u64 << basis.num_rows()) {
                    cur.xor_assign(basis.row(step.trailing_zeros() as usize));
                    best = best.min(cur.weight());
                }
                Ok(best)
            }
            ReducedWeightMode::Greedy => Ok(self.greedy_reduce(e).weight()),
        }
    }

    fn greedy_reduce(&self, e: &BitVector) -> BitVector {
        let mut cur = e.clone();
        loop {
            let w = cur.weight();
            let best = self
                .hx
                .rows()
                .iter()
                .map(|row| cur.xor(row).weight())
                .enumerate()
                .filter(|&(_, nw)| nw < w)
                .min_by_key(|&(i, nw)| (nw, i));
            match best {
                Some((i, _)) => cur.xor_assign(self.hx.row(i)),
                None => return cur,
            }
        }
    }

    pub fn classify_residual(&self, residual: &BitVector) -> Result<FailureClass> {
        if self.hx_echelon.contains(residual)? {
            Ok(FailureClass::Corrected)
        } else if !self.hz.mul_vec(residual)?.is_zero() {
            Ok(FailureClass::Detected)
        } else {
            Ok(FailureClass::Logical)
        }
    }

    /// Randomized search for a low-weight undetectable non-stabilizer vector
    /// (an element of `ker H_Z` outside the row space of `H_X`). Its weight is an
    /// upper bound on the distance for this error type.
    pub fn find_low_weight_logical<R: Rng + ?Sized>(&self, attempts: usize, rng: &mut R) -> Option<BitVector> {
        let n = self.n();
        let mut best: Option<BitVector> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        for _ in 0..attempts {
            perm.shuffle(rng);
            // columns of H_Z permuted, so the kernel basis favors different supports
            let permuted = BitMatrix::from_rows(
                n,
                self.hz
                    .rows()
                    .iter()
                    .map(|row| BitVector::from_indices(n, (0..n).filter(|&j| row.get(perm[j]))))
                    .collect(),
            )
            .expect("rows have length n");
            for kv in permuted.kernel_basis().rows() {
                let v = BitVector::from_indices(n, kv.iter_ones().map(|j| perm[j]));
                if self.hx_echelon.contains(&v).unwrap_or(true) {
                    continue;
                }
                if best.as_ref().is_none_or(|b| v.weight() < b.weight()) {
                    best = Some(v);
                }
            }
        }
        best
    }

    /// Check-weight histogram `(weight, count)` over the rows of `H_X` or `H_Z`.
    pub fn check_weight_histogram(&self, side: CheckSide) -> Vec<(usize, usize)> {
        let m = match side {
            CheckSide::X => &self.hx,
            CheckSide::Z => &self.hz,
        };
        let mut hist = std::collections::BTreeMap::new();
        for row in m.rows() {
            *hist.entry(row.weight()).or_insert(0) += 1;
        }
        hist.into_iter().collect()
    }

    /// Smallest relative distance among `C_A`, `C_B`, `C_A^⊥`, `C_B^⊥`. Zero and full
    /// codes (infinite or undefined distance) are skipped.
    pub fn achieved_relative_distance(&self) -> Result<Option<f64>> {
        let codes = [
            self.source_a.clone(),
            self.source_b.clone(),
            self.source_a.dual(),
            self.source_b.dual(),
        ];
        let mut best: Option<f64> = None;
        for c in codes {
            if let Some(d) = c.min_distance_bruteforce()? {
                let rel = d as f64 / c.len() as f64;
                best = Some(best.map_or(rel, |b: f64| b.min(rel)));
            }
        }
        Ok(best)
    }

    /// Product-expansion constant of the instance: the smaller of the two brute-force
    /// `κ` values for `C_A ⊞ C_B` and `C_A^⊥ ⊞ C_B^⊥`.
    pub fn kappa(&self) -> Result<Option<f64>> {
        let k1 = product_expansion_kappa(&self.source_a, &self.source_b)?;
        let k2 = product_expansion_kappa(&self.source_a.dual(), &self.source_b.dual())?;
        let as_f64 = |r: num_rational::Ratio<u64>| *r.numer() as f64 / *r.denom() as f64;
        Ok(match (k1.map(as_f64), k2.map(as_f64)) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        })
    }

    /// Evaluates the decoder constants for this instance. `kappa` overrides the
    /// brute-force value when supplied.
    pub fn theory_report(&self, params: TheoryParams) -> Result<TheoryReport> {
        let kappa = match params.kappa {
            Some(k) => k,
            None => self.kappa()?.ok_or_else(|| {
                Error::InvalidParameter("κ undefined: a dual tensor code has no nonzero codeword".into())
            })?,
        };
        let d_r = self.achieved_relative_distance()?.unwrap_or(0.0);
        TheoryReport::evaluate(TheoryInputs {
            n: self.n(),
            delta_local: self.complex.set_a().len(),
            rho: self.source_a.dim() as f64 / self.source_a.len() as f64,
            d_r,
            kappa,
            epsilon: params.epsilon,
            delta: params.delta,
            iterations: params.iterations,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TheoryParams {
    pub epsilon: f64,
    pub delta: f64,
    pub iterations: u32,
    pub kappa: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TheoryInputs {
    pub n: usize,
    /// `Δ`.
    pub delta_local: usize,
    pub rho: f64,
    pub d_r: f64,
    pub kappa: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub iterations: u32,
}

/// Constants of the single-shot analysis evaluated on concrete parameters. At
/// small `Δ` they are far from tight; they are reported, not enforced.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TheoryReport {
    pub inputs: TheoryInputs,
    /// `A_ε = 24 / (κΔ(1−ε))`.
    pub a_eps: f64,
    /// `B_ε = 3Δ / (κ(1−ε))`.
    pub b_eps: f64,
    /// `C_δ = d_r² δ³ κ / (2¹² Δ²)`.
    pub c_delta: f64,
    /// `C_δ n`, the right-hand side of the admissible noise condition.
    pub c_delta_n: f64,
    /// `c₁ = (ε − 2δ) / (ε(1 − δ))`.
    pub c1: f64,
    /// `c₂ = 2/ε`.
    pub c2: f64,
    /// Sequential residual factor `1 + 2c₂/(κc₁)` multiplying `Δ²|D|_V`.
    pub sequential_residual_factor: f64,
    /// `(1 − 2ρ)² n`.
    pub k_lower_bound: f64,
    /// `d_r² κ² n / (256 Δ)`.
    pub distance_lower_bound: f64,
    /// `γ = (1 − 18δ)/16`.
    pub gamma: f64,
    /// `α_k = 24/(5κ) (1 − γ)^k`.
    pub alpha_k: f64,
    /// `β = 6Δ²/(κδ)`.
    pub beta: f64,
    /// `ζ = 2(1 − δ)/(ε' − 2δ)` with `ε' = 3δ`.
    pub zeta: f64,
}

impl TheoryReport {
    pub fn evaluate(inp: TheoryInputs) -> Result<Self> {
        let TheoryInputs {
            n,
            delta_local,
            rho,
            d_r,
            kappa,
            epsilon,
            delta,
            iterations,
        } = inp;
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!("ε = {epsilon} must lie in (0, 1)")));
        }
        if !(delta > 0.0 && delta < 1.0 / 18.0) {
            return Err(Error::InvalidParameter(format!("δ = {delta} must lie in (0, 1/18)")));
        }
        if kappa.is_nan() || kappa <= 0.0 {
            return Err(Error::InvalidParameter(format!("κ = {kappa} must be positive")));
        }
        if delta_local == 0 {
            return Err(Error::InvalidParameter("Δ must be positive".into()));
        }
        let dl = delta_local as f64;
        let nf = n as f64;
        let c1 = (epsilon - 2.0 * delta) / (epsilon * (1.0 - delta));
        let c2 = 2.0 / epsilon;
        let c_delta = d_r * d_r * delta.powi(3) * kappa / (4096.0 * dl * dl);
        let gamma = (1.0 - 18.0 * delta) / 16.0;
        let eps_prime = 3.0 * delta;
        Ok(Self {
            inputs: inp,
            a_eps: 24.0 / (kappa * dl * (1.0 - epsilon)),
            b_eps: 3.0 * dl / (kappa * (1.0 - epsilon)),
            c_delta,
            c_delta_n: c_delta * nf,
            c1,
            c2,
            sequential_residual_factor: 1.0 + 2.0 * c2 / (kappa * c1),
            k_lower_bound: (1.0 - 2.0 * rho).powi(2) * nf,
            distance_lower_bound: d_r * d_r * kappa * kappa * nf / (256.0 * dl),
            gamma,
            alpha_k: 24.0 / (5.0 * kappa) * (1.0 - gamma).powi(iterations as i32),
            beta: 6.0 * dl * dl / (kappa * delta),
            zeta: 2.0 * (1.0 - delta) / (eps_prime - 2.0 * delta),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn tiny() -> QuantumTannerCode {
        crate::instances::tiny().unwrap()
    }

    fn reference() -> QuantumTannerCode {
        crate::instances::reference().unwrap()
    }

    #[test]
    fn tiny_instance_is_css() {
        let code = tiny();
        assert!(code.hx().mul_transpose(code.hz()).unwrap().is_zero());
        assert_eq!(code.n(), 20);
        // dim C_A ⊗ C_B = 2, dim C_A^⊥ ⊗ C_B^⊥ = 0
        assert_eq!(code.hx().num_rows(), 2 * 5 * 2);
        assert_eq!(code.hz().num_rows(), 0);
    }

    #[test]
    fn reference_counts_and_ldpc() {
        let code = reference();
        assert_eq!(code.n(), 208);
        assert_eq!(code.hx().num_rows(), 2 * 13 * 3);
        assert_eq!(code.hz().num_rows(), 2 * 13 * 3);
        for row in code.hx().rows().iter().chain(code.hz().rows()) {
            assert!(row.weight() <= 16);
        }
        let dims = code.code_dimension();
        assert!(dims.k as f64 >= dims.k_lower_bound);
        assert_eq!(dims.k_lower_bound, 52.0);
    }

    #[test]
    fn embedded_rows_match_generating_codewords() {
        let code = reference();
        let words = code.x_local.rows().to_vec();
        for (i, row) in code.hx().rows().iter().enumerate() {
            assert_eq!(row.weight(), words[i % words.len()].weight());
        }
    }

    #[test]
    fn syndromes() {
        let code = reference();
        let zero = BitVector::zeros(code.n());
        assert!(code.syndrome(CheckSide::Z, &zero).unwrap().is_zero());
        let stab = code.hx().row(5).clone();
        assert!(code.syndrome(CheckSide::Z, &stab).unwrap().is_zero());
        // a single face lights up checks of its V01 and V10 vertices only
        let q = 17;
        let e = BitVector::from_indices(code.n(), [q]);
        let s = code.syndrome(CheckSide::Z, &e).unwrap();
        let verts = code.complex().face_vertices(code.complex().face(q));
        let allowed: Vec<usize> = [verts[1], verts[2]].iter().map(|&v| code.z_block(v)).collect();
        let r = code.z_checks_per_vertex();
        assert!(!s.is_zero());
        for i in s.iter_ones() {
            assert!(allowed.contains(&(i / r)));
        }
        assert!(code.syndrome(CheckSide::X, &BitVector::zeros(3)).is_err());
    }

    #[test]
    fn reduced_weight_modes() {
        let code = tiny();
        let n = code.n();
        let zero = BitVector::zeros(n);
        assert_eq!(code.reduced_weight(&zero, ReducedWeightMode::Exact).unwrap(), 0);
        let stab = code.hx().row(3).clone();
        assert_eq!(code.reduced_weight(&stab, ReducedWeightMode::Exact).unwrap(), 0);
        assert_eq!(code.reduced_weight(&stab, ReducedWeightMode::Greedy).unwrap(), 0);

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let basis = code.hx().echelon().basis();
        for _ in 0..30 {
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(&mut rng);
            let e = BitVector::from_indices(n, idx[..3].iter().copied());
            // rowspace enumeration oracle
            let rows = basis.num_rows();
            let oracle = (0u64..1 << rows)
                .map(|m| {
                    let mut v = e.clone();
                    for i in 0..rows {
                        if m >> i & 1 == 1 {
                            v.xor_assign(basis.row(i));
                        }
                    }
                    v.weight()
                })
                .min()
                .unwrap();
            let exact = code.reduced_weight(&e, ReducedWeightMode::Exact).unwrap();
            let greedy = code.reduced_weight(&e, ReducedWeightMode::Greedy).unwrap();
            assert_eq!(exact, oracle);
            assert!(greedy >= exact && greedy <= e.weight());
        }
        assert!(matches!(
            reference().reduced_weight(&BitVector::zeros(208), ReducedWeightMode::Exact),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn classification() {
        let code = reference();
        let n = code.n();
        assert_eq!(code.classify_residual(&BitVector::zeros(n)).unwrap(), FailureClass::Corrected);
        assert_eq!(
            code.classify_residual(code.hx().row(0)).unwrap(),
            FailureClass::Corrected
        );
        assert_eq!(
            code.classify_residual(&BitVector::from_indices(n, [0])).unwrap(),
            FailureClass::Detected
        );
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let logical = code.find_low_weight_logical(5, &mut rng).expect("k > 0 so logicals exist");
        assert_eq!(code.classify_residual(&logical).unwrap(), FailureClass::Logical);
    }

    #[test]
    fn z_side_swaps_check_matrices() {
        let code = reference();
        let z = code.z_side().unwrap();
        assert_eq!(z.hx(), code.hz());
        assert_eq!(z.hz(), code.hx());
        assert_eq!(z.code_dimension().k, code.code_dimension().k);
        let back = z.z_side().unwrap();
        assert_eq!(back.hx(), code.hx());
    }

    #[test]
    fn local_syndrome_matches_local_check_product() {
        let code = reference();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        let n = code.n();
        let e = BitVector::from_bools(&(0..n).map(|_| rng.gen_bool(0.1)).collect::<Vec<_>>());
        let s = code.syndrome(CheckSide::Z, &e).unwrap();
        for v in code.z_check_vertices() {
            let local = code.gather(v, &e);
            assert_eq!(
                code.local_syndrome(&s, code.z_block(v)),
                code.decoding_code().syndrome_of(local)
            );
        }
    }

    #[test]
    fn theory_constants() {
        let base = TheoryInputs {
            n: 208,
            delta_local: 4,
            rho: 0.25,
            d_r: 0.5,
            kappa: 1.0,
            epsilon: 0.5,
            delta: 0.05,
            iterations: 3,
        };
        let r = TheoryReport::evaluate(base).unwrap();
        assert_eq!(r.a_eps, 12.0);
        assert_eq!(r.b_eps, 24.0);
        assert_eq!(r.k_lower_bound, 52.0);
        let near = TheoryReport::evaluate(TheoryInputs { delta: 1.0 / 18.0 - 1e-12, ..base }).unwrap();
        assert!(near.gamma.abs() < 1e-10);
        assert!(TheoryReport::evaluate(TheoryInputs { delta: 0.06, ..base }).is_err());
        assert!(TheoryReport::evaluate(TheoryInputs { epsilon: 1.0, ..base }).is_err());

        // independent evaluation of the remaining constants
        let (k, d, e, dl, dr) = (1.0f64, 0.05f64, 0.5f64, 4.0f64, 0.5f64);
        let c1 = (e - 2.0 * d) / (e * (1.0 - d));
        assert!((r.c1 - c1).abs() < 1e-12);
        assert!((r.c2 - 4.0).abs() < 1e-12);
        assert!((r.sequential_residual_factor - (1.0 + 2.0 * 4.0 / c1)).abs() < 1e-12);
        assert!((r.c_delta - dr * dr * d * d * d * k / (4096.0 * dl * dl)).abs() < 1e-18);
        assert!((r.gamma - 0.1 / 16.0).abs() < 1e-12);
        assert!((r.alpha_k - 4.8 * (1.0 - 0.1 / 16.0f64).powi(3)).abs() < 1e-12);
        assert!((r.beta - 6.0 * 16.0 / 0.05).abs() < 1e-9);
        assert!((r.zeta - 2.0 * 0.95 / 0.05).abs() < 1e-9);
        assert!((r.distance_lower_bound - 0.25 * 208.0 / 1024.0).abs() < 1e-12);
    }
}
