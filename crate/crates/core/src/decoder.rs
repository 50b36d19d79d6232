//! Single-shot decoding from a noisy `Z`-syndrome.
//!
//! Every `V₁` vertex first picks a minimum-weight local explanation of its
//! syndrome. The disagreement between neighboring explanations (the mismatch
//! `Ẑ`) is then peeled off by local codewords of `C_A ⊞ C_B`, either
//! sequentially or in four class-parallel sweeps. The final correction combines
//! the `V₀₁` explanations with the column parts found at `V₀₁`/`V₁₁` and the row
//! parts found at `V₀₀`/`V₀₁`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::{lex_key, CosetLeaderTable, DualTensorCode};
use crate::complex::{Vertex, VertexClass};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::tanner::QuantumTannerCode;

/// A nonzero codeword of `C_A ⊞ C_B` with its minimal column/row split.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CachedCodeword {
    pub mask: u64,
    pub weight: u32,
    /// Part in `C_A ⊗ F₂^B`.
    pub c: u64,
    /// Part in `F₂^A ⊗ C_B`.
    pub r: u64,
}

/// All nonzero local codewords ordered by weight (heaviest first, ties by
/// lexicographic order), plus the coset-leader table of the local checks.
#[derive(Clone, Debug)]
pub struct LocalCodewordCache {
    code: DualTensorCode,
    words: Vec<CachedCodeword>,
    /// `first_of_weight[w]` is the first index whose weight is at most `w`.
    first_of_weight: Vec<usize>,
    leaders: CosetLeaderTable,
}

/// Largest `dim(C_A ⊞ C_B)` whose codewords are enumerated into the cache.
pub const CACHE_MAX_DIM: usize = 16;

impl LocalCodewordCache {
    pub fn new(code: DualTensorCode) -> Result<Self> {
        if code.dim() > CACHE_MAX_DIM {
            return Err(Error::Budget(format!(
                "local codeword cache over a code of dimension {} (limit {CACHE_MAX_DIM})",
                code.dim()
            )));
        }
        let mut words = code
            .nonzero_codewords()?
            .into_iter()
            .map(|mask| {
                let d = code.min_cr_decomposition(mask)?;
                Ok(CachedCodeword {
                    mask,
                    weight: mask.count_ones(),
                    c: d.c,
                    r: d.r,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        words.sort_by_key(|w| (std::cmp::Reverse(w.weight), lex_key(w.mask)));
        let len = code.len();
        let first_of_weight = (0..=len)
            .map(|w| words.partition_point(|x| x.weight as usize > w))
            .collect();
        let leaders = code.coset_leader_table()?;
        Ok(Self {
            code,
            words,
            first_of_weight,
            leaders,
        })
    }

    pub fn code(&self) -> &DualTensorCode {
        &self.code
    }

    pub fn words(&self) -> &[CachedCodeword] {
        &self.words
    }

    pub fn leaders(&self) -> &CosetLeaderTable {
        &self.leaders
    }

    /// Codeword `x` with `|z| − |z + x| ≥ required(|x|)`, chosen by `selection`.
    /// Ties fall to the heavier word, then to the lexicographically first.
    pub fn find(&self, z: u64, threshold: Threshold, selection: Selection) -> Option<&CachedCodeword> {
        let p = z.count_ones() as usize;
        if p == 0 {
            return None;
        }
        // |z| − |z + x| = 2|x ∩ z| − |x| ≤ 2p − |x|, so heavier words cannot qualify
        let start = self.first_of_weight[(2 * p).min(self.first_of_weight.len() - 1)];
        let drop = |x: &CachedCodeword| 2 * (x.mask & z).count_ones() as i64 - x.weight as i64;
        let mut qualifying = self.words[start..]
            .iter()
            .filter(|x| drop(x) >= threshold.required(x.weight) as i64);
        match selection {
            Selection::MaxWeight => qualifying.next(),
            Selection::MaxReduction => {
                let mut best: Option<(&CachedCodeword, i64)> = None;
                for x in qualifying {
                    // a word of weight w drops |z| by at most w, and lighter words lose ties
                    if best.is_some_and(|(_, bd)| x.weight as i64 <= bd) {
                        break;
                    }
                    let d = drop(x);
                    if best.is_none_or(|(_, bd)| d > bd) {
                        best = Some((x, d));
                    }
                }
                best.map(|(x, _)| x)
            }
        }
    }
}

/// Which qualifying codeword a vertex applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    /// Heaviest qualifying word; the parallel rule.
    MaxWeight,
    /// Largest drop in `|Ẑ|`; the sequential rule.
    MaxReduction,
}

/// Acceptance rule `|Ẑ| − |Ẑ + x| ≥ max(1, ⌈θ|x|⌉)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Threshold {
    theta: f64,
}

impl Threshold {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta <= 1.0) {
            return Err(Error::InvalidParameter(format!("threshold θ = {theta} must lie in (0, 1]")));
        }
        Ok(Self { theta })
    }

    /// `θ = 1 − ε` for the sequential decomposition.
    pub fn sequential(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!("ε = {epsilon} must lie in (0, 1)")));
        }
        Self::new(1.0 - epsilon)
    }

    pub fn parallel() -> Self {
        Self { theta: 0.5 }
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    pub fn required(self, weight: u32) -> u32 {
        // the small slack keeps θ = 1/2, 3/4, ... from rounding up through float error
        let raw = (self.theta * weight as f64 - 1e-9).ceil();
        (raw.max(1.0)) as u32
    }
}

/// One accepted peeling step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    /// Parallel sweep number; absent for the sequential decomposition.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<u32>,
    pub vertex: usize,
    pub class: String,
    pub codeword_weight: u32,
    pub zhat_before: usize,
    pub zhat_after: usize,
}

#[derive(Clone, Debug)]
pub struct MismatchState {
    pub zhat: BitVector,
    pub initial: BitVector,
    /// `Ĉ₀`, `Ĉ₁`: column parts found at `V_i0` and `V_i1`.
    pub acc_c: [BitVector; 2],
    /// `R̂₀`, `R̂₁`: row parts found at `V_0j` and `V_1j`.
    pub acc_r: [BitVector; 2],
    /// `Σ_{v ∈ V₀₁} ε̃_v`.
    pub v01_corrections: BitVector,
    pub log: Vec<StepRecord>,
}

impl MismatchState {
    fn new(n: usize) -> Self {
        let z = BitVector::zeros(n);
        Self {
            zhat: z.clone(),
            initial: z.clone(),
            acc_c: [z.clone(), z.clone()],
            acc_r: [z.clone(), z.clone()],
            v01_corrections: z,
            log: Vec::new(),
        }
    }

    /// `f̂ = Σ_{V₀₁} ε̃_v + Ĉ₁ + R̂₀`.
    pub fn correction(&self) -> BitVector {
        let mut f = self.v01_corrections.clone();
        f.xor_assign(&self.acc_c[1]);
        f.xor_assign(&self.acc_r[0]);
        f
    }

    /// Sum of all four accumulators.
    pub fn accumulated(&self) -> BitVector {
        let mut s = self.acc_c[0].xor(&self.acc_c[1]);
        s.xor_assign(&self.acc_r[0]);
        s.xor_assign(&self.acc_r[1]);
        s
    }

    /// Step log as JSON lines.
    pub fn log_json_lines(&self) -> String {
        self.log
            .iter()
            .map(|s| serde_json::to_string(s).expect("step records serialize"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecoderKind {
    Sequential { epsilon: f64 },
    Parallel { iterations: u32 },
}

impl DecoderKind {
    pub const DEFAULT_EPSILON: f64 = 0.5;

    pub fn name(&self) -> &'static str {
        match self {
            Self::Sequential { .. } => "sequential",
            Self::Parallel { .. } => "parallel",
        }
    }

    /// `ε` for the sequential decoder, `k` for the parallel one.
    pub fn param(&self) -> String {
        match self {
            Self::Sequential { epsilon } => epsilon.to_string(),
            Self::Parallel { iterations } => iterations.to_string(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Sequential { epsilon } => Threshold::sequential(epsilon).map(|_| ()),
            Self::Parallel { iterations: 0 } => Err(Error::InvalidParameter(
                "parallel decoding needs at least one iteration".into(),
            )),
            Self::Parallel { .. } => Ok(()),
        }
    }
}

/// Decoder for errors flagged by `H_Z` of one code orientation.
#[derive(Clone, Debug)]
pub struct TannerDecoder {
    code: Arc<QuantumTannerCode>,
    cache: Arc<LocalCodewordCache>,
    /// Logical vertex indices of the four vertices of each face.
    face_vertices: Vec<[usize; 4]>,
}

impl TannerDecoder {
    pub fn new(code: Arc<QuantumTannerCode>) -> Result<Self> {
        let cache = Arc::new(LocalCodewordCache::new(code.decoding_code().clone())?);
        let complex = code.complex();
        let order = code.group_order();
        let face_vertices = (0..code.n())
            .map(|q| {
                complex.face_vertices(complex.face(q)).map(|v| {
                    let class = code.physical_class(v.class); // the relabeling is an involution
                    class.index() * order + v.g
                })
            })
            .collect();
        Ok(Self {
            code,
            cache,
            face_vertices,
        })
    }

    pub fn code(&self) -> &QuantumTannerCode {
        &self.code
    }

    pub fn cache(&self) -> &LocalCodewordCache {
        &self.cache
    }

    fn vertex_of(&self, index: usize) -> Vertex {
        let order = self.code.group_order();
        Vertex {
            g: index % order,
            class: VertexClass::ALL[index / order],
        }
    }

    fn vertex_index(&self, v: Vertex) -> usize {
        v.class.index() * self.code.group_order() + v.g
    }

    /// Minimum-weight local explanation of a `V₁` vertex's syndrome, lifted to `Q`.
    pub fn local_min_correction(&self, v: Vertex, local_syndrome: u64) -> BitVector {
        let mut out = BitVector::zeros(self.code.n());
        self.code.scatter(v, self.local_min_mask(local_syndrome), &mut out);
        out
    }

    fn local_min_mask(&self, local_syndrome: u64) -> u64 {
        self.cache.leaders.leader(local_syndrome).unwrap_or(0)
    }

    pub fn initial_mismatch(&self, syndrome: &BitVector) -> Result<MismatchState> {
        let expected = self.code.hz().num_rows();
        if syndrome.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: syndrome.len(),
            });
        }
        let mut state = MismatchState::new(self.code.n());
        for v in self.code.z_check_vertices() {
            let local = self.code.local_syndrome(syndrome, self.code.z_block(v));
            let mask = self.local_min_mask(local);
            self.code.scatter(v, mask, &mut state.zhat);
            if v.class == VertexClass::V01 {
                self.code.scatter(v, mask, &mut state.v01_corrections);
            }
        }
        state.initial = state.zhat.clone();
        Ok(state)
    }

    pub fn find_reducing_codeword(
        &self,
        zhat: &BitVector,
        v: Vertex,
        threshold: Threshold,
        selection: Selection,
    ) -> Option<CachedCodeword> {
        self.cache.find(self.code.gather(v, zhat), threshold, selection).copied()
    }

    fn apply(&self, state: &mut MismatchState, v: Vertex, x: &CachedCodeword, sweep: Option<u32>) {
        let before = state.zhat.weight();
        self.code.scatter(v, x.mask, &mut state.zhat);
        let (i, j) = v.class.bits();
        self.code.scatter(v, x.c, &mut state.acc_c[j as usize]);
        self.code.scatter(v, x.r, &mut state.acc_r[i as usize]);
        let step = state.log.len();
        state.log.push(StepRecord {
            step,
            sweep,
            vertex: self.vertex_index(v),
            class: v.class.to_string(),
            codeword_weight: x.weight,
            zhat_before: before,
            zhat_after: state.zhat.weight(),
        });
    }

    /// Peels codewords with `|Ẑ| − |Ẑ + x| ≥ ⌈(1 − ε)|x|⌉` until none remains.
    /// Each step applies the qualifying pair `(v, x)` with the largest drop, ties
    /// going to the heavier word and then to the lower vertex index. Per-vertex
    /// candidates are cached and recomputed only when a face of the view flips.
    pub fn sequential_decomposition(&self, state: &mut MismatchState, epsilon: f64) -> Result<()> {
        let threshold = Threshold::sequential(epsilon)?;
        let total = 4 * self.code.group_order();
        let mut best: Vec<Option<(i64, CachedCodeword)>> = vec![None; total];
        let mut dirty = vec![true; total];
        while !state.zhat.is_zero() {
            for idx in 0..total {
                if !std::mem::take(&mut dirty[idx]) {
                    continue;
                }
                let v = self.vertex_of(idx);
                let z = self.code.gather(v, &state.zhat);
                best[idx] = self
                    .cache
                    .find(z, threshold, Selection::MaxReduction)
                    .map(|x| (2 * (x.mask & z).count_ones() as i64 - x.weight as i64, *x));
            }
            let chosen = best
                .iter()
                .enumerate()
                .filter_map(|(idx, b)| b.map(|(d, x)| (idx, d, x)))
                .max_by_key(|&(idx, d, x)| (d, x.weight, std::cmp::Reverse(idx)));
            let Some((idx, _, x)) = chosen else { break };
            let v = self.vertex_of(idx);
            self.apply(state, v, &x, None);
            let view = self.code.view(v);
            let mut m = x.mask;
            while m != 0 {
                let p = m.trailing_zeros() as usize;
                m &= m - 1;
                for &u in &self.face_vertices[view[p]] {
                    dirty[u] = true;
                }
            }
        }
        Ok(())
    }

    /// `k` sweeps over the classes `00, 01, 10, 11`. Same-class views are
    /// disjoint, so every vertex of a class searches the state at class entry and
    /// the updates are applied afterwards in vertex order.
    pub fn parallel_decomposition(&self, state: &mut MismatchState, iterations: u32) -> Result<()> {
        if iterations == 0 {
            return Err(Error::InvalidParameter("parallel decoding needs at least one iteration".into()));
        }
        let threshold = Threshold::parallel();
        let order = self.code.group_order();
        for sweep in 0..iterations {
            for class in VertexClass::ALL {
                if state.zhat.is_zero() {
                    return Ok(());
                }
                let zhat = &state.zhat;
                let found: Vec<Option<CachedCodeword>> = (0..order)
                    .into_par_iter()
                    .map(|g| self.find_reducing_codeword(zhat, Vertex { g, class }, threshold, Selection::MaxWeight))
                    .collect();
                for (g, x) in found.into_iter().enumerate() {
                    if let Some(x) = x {
                        self.apply(state, Vertex { g, class }, &x, Some(sweep));
                    }
                }
            }
        }
        Ok(())
    }

    /// Runs the chosen decoder and returns the full final state.
    pub fn decode_traced(&self, syndrome: &BitVector, kind: DecoderKind) -> Result<MismatchState> {
        let mut state = self.initial_mismatch(syndrome)?;
        match kind {
            DecoderKind::Sequential { epsilon } => self.sequential_decomposition(&mut state, epsilon)?,
            DecoderKind::Parallel { iterations } => self.parallel_decomposition(&mut state, iterations)?,
        }
        Ok(state)
    }

    pub fn decode(&self, syndrome: &BitVector, kind: DecoderKind) -> Result<BitVector> {
        Ok(self.decode_traced(syndrome, kind)?.correction())
    }

    pub fn sequential_decode(&self, syndrome: &BitVector, epsilon: f64) -> Result<BitVector> {
        self.decode(syndrome, DecoderKind::Sequential { epsilon })
    }

    pub fn parallel_decode(&self, syndrome: &BitVector, iterations: u32) -> Result<BitVector> {
        self.decode(syndrome, DecoderKind::Parallel { iterations })
    }
}

/// `⌈log₂ n⌉`, the default sweep count.
pub fn default_iterations(n: usize) -> u32 {
    usize::BITS - n.saturating_sub(1).leading_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tanner::CheckSide;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn reference_decoder() -> TannerDecoder {
        TannerDecoder::new(Arc::new(crate::instances::reference().unwrap())).unwrap()
    }

    fn random_error(n: usize, w: usize, rng: &mut ChaCha8Rng) -> BitVector {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        BitVector::from_indices(n, idx[..w].iter().copied())
    }

    #[test]
    fn cache_is_sorted_and_consistent() {
        let dec = reference_decoder();
        let cache = dec.cache();
        assert_eq!(cache.words().len(), 8191);
        for pair in cache.words().windows(2) {
            let key = |w: &CachedCodeword| (std::cmp::Reverse(w.weight), lex_key(w.mask));
            assert!(key(&pair[0]) < key(&pair[1]));
        }
        for w in cache.words().iter().step_by(97) {
            assert_eq!(cache.code().syndrome_of(w.mask), 0);
            let d = cache.code().min_cr_decomposition(w.mask).unwrap();
            assert_eq!((w.c, w.r), (d.c, d.r));
            assert_eq!(w.c ^ w.r, w.mask);
        }
    }

    #[test]
    fn threshold_rounding() {
        let half = Threshold::parallel();
        assert_eq!(half.required(4), 2);
        assert_eq!(half.required(5), 3);
        assert_eq!(half.required(1), 1);
        let loose = Threshold::sequential(0.99).unwrap();
        assert_eq!(loose.required(3), 1);
        assert!(Threshold::sequential(1.0).is_err());
        assert!(Threshold::new(0.0).is_err());
    }

    #[test]
    fn find_matches_exhaustive_scan() {
        let dec = reference_decoder();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for theta in [0.5, 0.75, 1.0] {
            let t = Threshold::new(theta).unwrap();
            for _ in 0..200 {
                let z: u64 = rand::Rng::gen::<u64>(&mut rng) & 0xffff & rand::Rng::gen::<u64>(&mut rng);
                let qualifying: Vec<(CachedCodeword, i64)> = dec
                    .cache()
                    .words()
                    .iter()
                    .map(|x| (*x, z.count_ones() as i64 - (z ^ x.mask).count_ones() as i64))
                    .filter(|(x, d)| *d >= t.required(x.weight) as i64)
                    .collect();
                let heaviest = qualifying
                    .iter()
                    .max_by_key(|(x, _)| (x.weight, std::cmp::Reverse(lex_key(x.mask))))
                    .map(|(x, _)| *x);
                let best_drop = qualifying
                    .iter()
                    .max_by_key(|(x, d)| (*d, x.weight, std::cmp::Reverse(lex_key(x.mask))))
                    .map(|(x, _)| *x);
                assert_eq!(dec.cache().find(z, t, Selection::MaxWeight).copied(), heaviest);
                assert_eq!(dec.cache().find(z, t, Selection::MaxReduction).copied(), best_drop);
            }
        }
        assert!(dec.cache().find(0, Threshold::parallel(), Selection::MaxWeight).is_none());
    }

    #[test]
    fn zero_syndrome_gives_zero_correction() {
        let dec = reference_decoder();
        let s = BitVector::zeros(dec.code().hz().num_rows());
        assert!(dec.sequential_decode(&s, 0.5).unwrap().is_zero());
        for k in 1..4 {
            assert!(dec.parallel_decode(&s, k).unwrap().is_zero());
        }
    }

    #[test]
    fn single_faces_are_corrected_when_local_distance_is_three() {
        let dec = TannerDecoder::new(Arc::new(crate::instances::wide().unwrap())).unwrap();
        let code = dec.code();
        for q in 0..code.n() {
            let e = BitVector::from_indices(code.n(), [q]);
            let s = code.syndrome(CheckSide::Z, &e).unwrap();
            assert!(dec.initial_mismatch(&s).unwrap().zhat.is_zero(), "face {q}");
            for kind in [DecoderKind::Sequential { epsilon: 0.5 }, DecoderKind::Parallel { iterations: 1 }] {
                assert_eq!(dec.decode(&s, kind).unwrap(), e);
            }
        }
    }

    #[test]
    fn single_local_codeword_is_peeled_in_one_step() {
        let dec = reference_decoder();
        let code = dec.code();
        let v = Vertex { g: 3, class: VertexClass::V10 };
        let x = dec.cache().words()[100];
        let mut state = MismatchState::new(code.n());
        code.scatter(v, x.mask, &mut state.zhat);
        state.initial = state.zhat.clone();
        dec.sequential_decomposition(&mut state, 0.5).unwrap();
        assert!(state.zhat.is_zero());
        assert_eq!(state.log.len(), 1);
        assert_eq!(state.accumulated(), state.initial);

        // the parallel rule prefers heavier overlapping words, so use a heaviest one
        let top = dec.cache().words()[0];
        let mut state = MismatchState::new(code.n());
        code.scatter(v, top.mask, &mut state.zhat);
        dec.parallel_decomposition(&mut state, 1).unwrap();
        assert!(state.zhat.is_zero());
    }

    #[test]
    fn decompositions_conserve_and_decrease() {
        let dec = reference_decoder();
        let code = dec.code();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let e = random_error(code.n(), 6, &mut rng);
            let s = code.syndrome(CheckSide::Z, &e).unwrap();
            for kind in [DecoderKind::Sequential { epsilon: 0.5 }, DecoderKind::Parallel { iterations: 8 }] {
                let state = dec.decode_traced(&s, kind).unwrap();
                assert!(state.initial.weight() <= 4 * e.weight());
                assert_eq!(state.zhat, state.initial.xor(&state.accumulated()));
                for r in &state.log {
                    assert!(r.zhat_after < r.zhat_before);
                    assert!(r.zhat_before - r.zhat_after >= (r.codeword_weight as usize).div_ceil(2));
                }
            }
        }
    }

    #[test]
    fn step_log_serializes() {
        let dec = reference_decoder();
        let code = dec.code();
        let e = BitVector::from_indices(code.n(), [0, 50, 100]);
        let s = code.syndrome(CheckSide::Z, &e).unwrap();
        let state = dec.decode_traced(&s, DecoderKind::Sequential { epsilon: 0.5 }).unwrap();
        for line in state.log_json_lines().lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert!(v.get("zhat_before").is_some());
        }
    }

    #[test]
    fn iteration_default() {
        assert_eq!(default_iterations(208), 8);
        assert_eq!(default_iterations(256), 8);
        assert_eq!(default_iterations(257), 9);
        assert_eq!(default_iterations(1), 0);
    }
}
