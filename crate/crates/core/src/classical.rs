//! Classical binary linear codes and the local-code machinery the quantum
//! Tanner construction is built from: duals, tensor and dual tensor codes,
//! exhaustive distance and product-expansion oracles, coset leaders and
//! minimal column/row decompositions.
//!
//! Local words of a dual tensor code on `A × B` are stored as `u64` masks with
//! entry `(a, b)` at bit `a * |B| + b` (the same outer/inner order as
//! [`BitMatrix::kronecker`]). Columns are indexed by `b` and hold words of
//! `C_A`; rows are indexed by `a` and hold words of `C_B`.

use num_rational::Ratio;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Largest code dimension [`LinearCode::codewords`] will enumerate.
pub const ENUMERATION_MAX_DIM: usize = 22;
/// Largest dual tensor code dimension the product-expansion oracle accepts.
pub const KAPPA_MAX_DIM: usize = 16;
/// Largest number of candidate assignments a minimal decomposition search may visit.
pub const DECOMPOSITION_BUDGET: u64 = 1 << 20;
/// Largest number of check rows for which a coset-leader table is built.
pub const COSET_TABLE_MAX_CHECKS: usize = 16;

/// Key realizing lexicographic order on bit index for local masks:
/// comparing keys compares the bitstrings `b0 b1 b2 …` with `0 < 1`.
#[inline]
pub fn lex_key(mask: u64) -> u64 {
    mask.reverse_bits()
}

/// A binary linear code with paired generator and parity-check bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    n: usize,
    gen: BitMatrix,
    pchk: BitMatrix,
}

impl LinearCode {
    /// The code `ker H`. Dependent rows of `H` are dropped.
    pub fn from_parity_check(h: &BitMatrix) -> Self {
        let pchk = h.echelon().basis();
        let gen = h.kernel_basis();
        Self {
            n: h.num_cols(),
            gen,
            pchk,
        }
    }

    /// The row space of `G`. Dependent rows of `G` are dropped.
    pub fn from_generator(g: &BitMatrix) -> Self {
        let gen = g.echelon().basis();
        let pchk = g.kernel_basis();
        Self {
            n: g.num_cols(),
            gen,
            pchk,
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_generator(&BitMatrix::empty(n))
    }

    pub fn full(n: usize) -> Self {
        Self::from_generator(&BitMatrix::identity(n))
    }

    pub fn repetition(n: usize) -> Self {
        Self::from_generator(&BitMatrix::from_rows(n, vec![BitVector::from_indices(n, 0..n)]).unwrap())
    }

    /// Even-weight code of length `n`.
    pub fn parity(n: usize) -> Self {
        Self::repetition(n).dual()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.gen.num_rows()
    }

    pub fn rate(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.dim() as f64 / self.n as f64
        }
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.gen
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.pchk
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        Ok(self.pchk.mul_vec(v)?.is_zero())
    }

    /// `C^⊥`: the generator and parity-check bases trade places.
    pub fn dual(&self) -> Self {
        Self {
            n: self.n,
            gen: self.pchk.clone(),
            pchk: self.gen.clone(),
        }
    }

    /// Whether `self` and `other` are the same subspace.
    pub fn same_subspace(&self, other: &LinearCode) -> bool {
        self.n == other.n
            && self.dim() == other.dim()
            && other
                .gen
                .rows()
                .iter()
                .all(|r| self.contains(r).unwrap_or(false))
    }

    /// All codewords, zero first, in Gray-code order over the generator basis.
    pub fn codewords(&self) -> Result<Vec<BitVector>> {
        if self.dim() > ENUMERATION_MAX_DIM {
            return Err(Error::Budget(format!(
                "enumerating a code of dimension {} (limit {ENUMERATION_MAX_DIM})",
                self.dim()
            )));
        }
        let mut out = Vec::with_capacity(1 << self.dim());
        let mut cur = BitVector::zeros(self.n);
        out.push(cur.clone());
        for step in 1u64..(1u64 << self.dim()) {
            cur.xor_assign(self.gen.row(step.trailing_zeros() as usize));
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// Codewords as masks; requires `n ≤ 64`.
    pub fn codeword_masks(&self) -> Result<Vec<u64>> {
        if self.n > 64 {
            return Err(Error::Budget(format!("mask codewords need n ≤ 64, got {}", self.n)));
        }
        Ok(self.codewords()?.iter().map(BitVector::to_mask).collect())
    }

    /// Exact minimum distance by enumeration; `None` stands for the zero code's
    /// infinite distance.
    pub fn min_distance_bruteforce(&self) -> Result<Option<usize>> {
        Ok(self
            .codewords()?
            .iter()
            .map(BitVector::weight)
            .filter(|&w| w > 0)
            .min())
    }

    /// Uniformly random `k`-dimensional subspace of `F_2^n`, by rejection
    /// sampling `k × n` matrices until one has full rank.
    pub fn sample_random<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidParameter(format!(
                "random code dimension {k} exceeds length {n}"
            )));
        }
        loop {
            let rows = (0..k)
                .map(|_| BitVector::from_bools(&(0..n).map(|_| rng.gen::<bool>()).collect::<Vec<_>>()))
                .collect();
            let g = BitMatrix::from_rows(n, rows)?;
            if g.rank() == k {
                return Ok(Self::from_generator(&g));
            }
        }
    }

    pub fn descriptor(&self) -> CodeDescriptor {
        CodeDescriptor {
            n: self.n,
            generator: self.gen.rows().iter().map(ToString::to_string).collect(),
        }
    }
}

/// JSON form of a code: block length and generator rows as bitstrings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub n: usize,
    pub generator: Vec<String>,
}

impl CodeDescriptor {
    pub fn to_code(&self) -> Result<LinearCode> {
        let rows = self
            .generator
            .iter()
            .map(|s| s.parse::<BitVector>())
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearCode::from_generator(&BitMatrix::from_rows(self.n, rows)?))
    }
}

/// `C_A ⊗ C_B`: arrays whose columns lie in `C_A` and rows in `C_B`.
pub fn tensor_code(a: &LinearCode, b: &LinearCode) -> LinearCode {
    LinearCode::from_generator(&a.generator().kronecker(b.generator()))
}

/// `C_A ⊞ C_B = (C_A^⊥ ⊗ C_B^⊥)^⊥`, with parity-check matrix `H_A ⊗ H_B`.
#[derive(Clone, Debug)]
pub struct DualTensorCode {
    code_a: LinearCode,
    code_b: LinearCode,
    pchk: BitMatrix,
    dim: usize,
}

/// A split `x = c + r` with every column of `c` in `C_A` and every row of `r` in `C_B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub c: u64,
    pub r: u64,
    /// `‖c‖`: number of nonzero columns of `c`.
    pub columns: usize,
    /// `‖r‖`: number of nonzero rows of `r`.
    pub rows: usize,
}

impl Decomposition {
    pub fn cost(&self) -> usize {
        self.columns + self.rows
    }
}

pub fn dual_tensor_code(a: &LinearCode, b: &LinearCode) -> DualTensorCode {
    let pchk = a.parity_check().kronecker(b.parity_check());
    let dim = a.len() * b.len() - a.dual().dim() * b.dual().dim();
    DualTensorCode {
        code_a: a.clone(),
        code_b: b.clone(),
        pchk,
        dim,
    }
}

impl DualTensorCode {
    pub fn code_a(&self) -> &LinearCode {
        &self.code_a
    }

    pub fn code_b(&self) -> &LinearCode {
        &self.code_b
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.pchk
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `|A| · |B|`.
    pub fn len(&self) -> usize {
        self.code_a.len() * self.code_b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_linear_code(&self) -> LinearCode {
        LinearCode::from_parity_check(&self.pchk)
    }

    fn check_mask_budget(&self) -> Result<()> {
        if self.len() > 64 {
            return Err(Error::Budget(format!(
                "local words need |A|·|B| ≤ 64, got {}",
                self.len()
            )));
        }
        Ok(())
    }

    /// Syndrome of each unit vector, bit `i` set when check row `i` sees it.
    fn column_syndromes(&self) -> Vec<u64> {
        let t = self.pchk.transpose();
        t.rows().iter().map(BitVector::to_mask).collect()
    }

    /// `H_A ⊗ H_B` applied to a local mask, as a bit mask over check rows.
    pub fn syndrome_of(&self, x: u64) -> u64 {
        self.pchk
            .rows()
            .iter()
            .enumerate()
            .filter(|(_, row)| (row.to_mask() & x).count_ones() % 2 == 1)
            .fold(0u64, |acc, (i, _)| acc | (1 << i))
    }

    pub fn contains_mask(&self, x: u64) -> bool {
        self.pchk
            .rows()
            .iter()
            .all(|row| (row.to_mask() & x).count_ones().is_multiple_of(2))
    }

    /// Every nonzero codeword as a mask, in Gray-code order over a kernel basis.
    pub fn nonzero_codewords(&self) -> Result<Vec<u64>> {
        self.check_mask_budget()?;
        let mut all = self.as_linear_code().codeword_masks()?;
        all.remove(0);
        Ok(all)
    }

    /// A minimum `‖c‖ + ‖r‖` split of `x`; ties go to the lexicographically smallest `c`.
    ///
    /// Enumerates whichever side has fewer assignments: every `c` with columns in
    /// `C_A`, or every `r` with rows in `C_B`.
    pub fn min_cr_decomposition(&self, x: u64) -> Result<Decomposition> {
        self.check_mask_budget()?;
        if !self.contains_mask(x) {
            return Err(Error::NotACodeword);
        }
        self.best_decomposition(x, |d| d.cost())
    }

    /// Exhaustive search for the split minimizing `objective`, ties by lexicographic `c`.
    fn best_decomposition(&self, x: u64, objective: impl Fn(&Decomposition) -> usize) -> Result<Decomposition> {
        let na = self.code_a.len();
        let nb = self.code_b.len();
        let words_a = self.code_a.codeword_masks()?;
        let words_b = self.code_b.codeword_masks()?;
        let by_columns = (words_a.len() as u64).checked_pow(nb as u32);
        let by_rows = (words_b.len() as u64).checked_pow(na as u32);
        let cheapest = by_columns.into_iter().chain(by_rows).min().unwrap_or(u64::MAX);
        if cheapest > DECOMPOSITION_BUDGET {
            return Err(Error::Budget(format!(
                "minimal decomposition would visit {cheapest} assignments (limit {DECOMPOSITION_BUDGET})"
            )));
        }
        let layout = Layout { na, nb };
        let enumerate_columns = by_columns == Some(cheapest);

        let mut best: Option<(usize, u64, Decomposition)> = None;
        let mut consider = |c: u64| -> Option<()> {
            let r = x ^ c;
            if !layout.rows_in(r, &words_b) {
                return None;
            }
            let d = Decomposition {
                c,
                r,
                columns: layout.nonzero_columns(c),
                rows: layout.nonzero_rows(r),
            };
            let key = (objective(&d), lex_key(c));
            if best.as_ref().is_none_or(|(o, k, _)| key < (*o, *k)) {
                best = Some((key.0, key.1, d));
            }
            Some(())
        };

        if enumerate_columns {
            let placed: Vec<Vec<u64>> = (0..nb)
                .map(|b| words_a.iter().map(|&w| layout.place_column(w, b)).collect())
                .collect();
            odometer(nb, words_a.len(), |choice| {
                let c = choice.iter().enumerate().fold(0, |acc, (b, &i)| acc ^ placed[b][i]);
                consider(c);
            });
        } else {
            let placed: Vec<Vec<u64>> = (0..na)
                .map(|a| words_b.iter().map(|&w| w << (a * nb)).collect())
                .collect();
            let in_a: Vec<bool> = membership_table(na, &words_a);
            odometer(na, words_b.len(), |choice| {
                let r = choice.iter().enumerate().fold(0, |acc, (a, &i)| acc ^ placed[a][i]);
                let c = x ^ r;
                if layout.columns_in(c, &in_a) {
                    consider(c);
                }
            });
        }
        best.map(|(_, _, d)| d).ok_or(Error::NotACodeword)
    }

    /// Minimum-weight representative of every reachable syndrome, indexed by the
    /// syndrome mask. Built by scanning vectors in nondecreasing weight and
    /// lexicographic order within a weight.
    pub fn coset_leader_table(&self) -> Result<CosetLeaderTable> {
        self.check_mask_budget()?;
        let checks = self.pchk.num_rows();
        if checks > COSET_TABLE_MAX_CHECKS {
            return Err(Error::Budget(format!(
                "coset-leader table over {checks} checks (limit {COSET_TABLE_MAX_CHECKS})"
            )));
        }
        let len = self.len();
        let col_syn = self.column_syndromes();
        let reachable = 1usize << self.pchk.rank();
        let mut leaders: Vec<Option<u64>> = vec![None; 1 << checks];
        let mut assigned = 0usize;
        'weights: for w in 0..=len {
            for y in masks_of_weight_lex(len, w) {
                let s = bits(y).fold(0u64, |acc, i| acc ^ col_syn[i]) as usize;
                if leaders[s].is_none() {
                    leaders[s] = Some(y);
                    assigned += 1;
                    if assigned == reachable {
                        break 'weights;
                    }
                }
            }
        }
        Ok(CosetLeaderTable { checks, leaders })
    }
}

/// Lookup from a local syndrome mask to a minimum-weight local error.
#[derive(Clone, Debug)]
pub struct CosetLeaderTable {
    checks: usize,
    leaders: Vec<Option<u64>>,
}

impl CosetLeaderTable {
    pub fn checks(&self) -> usize {
        self.checks
    }

    pub fn leader(&self, syndrome: u64) -> Option<u64> {
        self.leaders.get(syndrome as usize).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.leaders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaders.is_empty()
    }
}

/// Largest `κ` such that every nonzero `x ∈ C_A ⊞ C_B` has a split `x = c + r`
/// with `κ (‖c‖/|A| + ‖r‖/|B|) ≤ |x| / (|A||B|)`.
///
/// Returns `None` when `C_A ⊞ C_B` has no nonzero codeword.
pub fn product_expansion_kappa(a: &LinearCode, b: &LinearCode) -> Result<Option<Ratio<u64>>> {
    let dt = dual_tensor_code(a, b);
    if dt.dim() > KAPPA_MAX_DIM {
        return Err(Error::Budget(format!(
            "product expansion over a dual tensor code of dimension {} (limit {KAPPA_MAX_DIM})",
            dt.dim()
        )));
    }
    let (na, nb) = (a.len() as u64, b.len() as u64);
    let mut best: Option<Ratio<u64>> = None;
    for x in dt.nonzero_codewords()? {
        // κ(‖c‖/|A| + ‖r‖/|B|) ≤ |x|/(|A||B|)  ⇔  κ (|B|‖c‖ + |A|‖r‖) ≤ |x|
        let d = dt.best_decomposition(x, |d| (nb as usize) * d.columns + (na as usize) * d.rows)?;
        let denom = nb * d.columns as u64 + na * d.rows as u64;
        let k = Ratio::new(x.count_ones() as u64, denom);
        if best.is_none_or(|b| k < b) {
            best = Some(k);
        }
    }
    Ok(best)
}

#[derive(Clone, Copy)]
struct Layout {
    na: usize,
    nb: usize,
}

impl Layout {
    fn place_column(&self, word: u64, b: usize) -> u64 {
        bits(word).fold(0, |acc, a| acc | 1 << (a * self.nb + b))
    }

    fn column(&self, m: u64, b: usize) -> u64 {
        (0..self.na).fold(0, |acc, a| acc | ((m >> (a * self.nb + b)) & 1) << a)
    }

    fn row(&self, m: u64, a: usize) -> u64 {
        (m >> (a * self.nb)) & low_mask(self.nb)
    }

    fn nonzero_columns(&self, m: u64) -> usize {
        (0..self.nb).filter(|&b| self.column(m, b) != 0).count()
    }

    fn nonzero_rows(&self, m: u64) -> usize {
        (0..self.na).filter(|&a| self.row(m, a) != 0).count()
    }

    fn rows_in(&self, m: u64, words_b: &[u64]) -> bool {
        (0..self.na).all(|a| words_b.contains(&self.row(m, a)))
    }

    fn columns_in(&self, m: u64, in_a: &[bool]) -> bool {
        (0..self.nb).all(|b| in_a[self.column(m, b) as usize])
    }
}

fn membership_table(n: usize, words: &[u64]) -> Vec<bool> {
    let mut t = vec![false; 1 << n];
    for &w in words {
        t[w as usize] = true;
    }
    t
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Indices of set bits, ascending.
pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let t = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(t)
        }
    })
}

/// Weight-`w` masks over `len` bits in lexicographic order on bit index.
pub(crate) fn masks_of_weight_lex(len: usize, w: usize) -> impl Iterator<Item = u64> {
    // Gosper's hack walks integers of weight w upward; reading them with the bit
    // order reversed yields lexicographic order of the bitstrings.
    let limit: u128 = 1u128 << len;
    let mut cur: Option<u128> = if w > len {
        None
    } else {
        Some((1u128 << w) - 1)
    };
    std::iter::from_fn(move || {
        let m = cur?;
        if m >= limit {
            cur = None;
            return None;
        }
        cur = if m == 0 {
            None
        } else {
            let c = m & m.wrapping_neg();
            let r = m + c;
            Some((((r ^ m) >> 2) / c) | r)
        };
        let reversed = (0..len).filter(|&i| (m >> (len - 1 - i)) & 1 == 1).fold(0u64, |acc, i| acc | 1 << i);
        Some(reversed)
    })
}

/// Visits every tuple in `radix^places`, last place fastest.
fn odometer(places: usize, radix: usize, mut visit: impl FnMut(&[usize])) {
    let mut choice = vec![0usize; places];
    loop {
        visit(&choice);
        let mut i = places;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < radix {
                break;
            }
            choice[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rep(n: usize) -> LinearCode {
        LinearCode::repetition(n)
    }

    fn par(n: usize) -> LinearCode {
        LinearCode::parity(n)
    }

    #[test]
    fn constructors() {
        let p = LinearCode::from_parity_check(&BitMatrix::from_strings(&["111"]).unwrap());
        assert_eq!(p.dim(), 2);
        let r = LinearCode::from_generator(&BitMatrix::from_strings(&["111"]).unwrap());
        assert_eq!(r.dim(), 1);
        assert!(r.generator().mul_transpose(r.parity_check()).unwrap().is_zero());
    }

    #[test]
    fn from_parity_check_matches_kernel_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let rows = (0..2)
                .map(|_| BitVector::from_bools(&(0..4).map(|_| rng.gen()).collect::<Vec<_>>()))
                .collect();
            let h = BitMatrix::from_rows(4, rows).unwrap();
            let kernel = (0..16u64)
                .filter(|&m| h.mul_vec(&BitVector::from_mask(4, m)).unwrap().is_zero())
                .count();
            let c = LinearCode::from_parity_check(&h);
            assert_eq!(1 << c.dim(), kernel);
            assert_eq!(c.dim(), 4 - h.rank());
        }
    }

    #[test]
    fn duality() {
        assert!(rep(3).dual().same_subspace(&par(3)));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c = LinearCode::sample_random(6, 3, &mut rng).unwrap();
        assert!(c.dual().dual().same_subspace(&c));
        let d = c.dual();
        for x in c.codewords().unwrap() {
            for y in d.codewords().unwrap() {
                assert!(!x.dot(&y));
            }
        }
        assert_eq!(c.dim() + d.dim(), 6);
    }

    #[test]
    fn tensor_codes() {
        let t = tensor_code(&rep(2), &rep(2));
        let words: Vec<String> = t.codewords().unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(words, vec!["0000", "1111"]);

        let t = tensor_code(&rep(3), &par(3));
        assert_eq!(t.dim(), 2);
        let words = t.codewords().unwrap();
        assert_eq!(words.len(), 4);
        for w in &words {
            for b in 0..3 {
                let col: Vec<bool> = (0..3).map(|a| w.get(a * 3 + b)).collect();
                assert!(col.iter().all(|&x| x) || col.iter().all(|&x| !x));
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let a = LinearCode::sample_random(4, 2, &mut rng).unwrap();
            let b = LinearCode::sample_random(3, 2, &mut rng).unwrap();
            assert_eq!(tensor_code(&a, &b).dim(), 4);
        }
    }

    #[test]
    fn dual_tensor_dimension_and_equivalence() {
        let dt = dual_tensor_code(&rep(3), &par(3));
        assert_eq!(dt.dim(), 7);
        assert_eq!(dt.as_linear_code().dim(), 7);
        let via_tensor = tensor_code(&rep(3).dual(), &par(3).dual()).dual();
        assert!(via_tensor.same_subspace(&dt.as_linear_code()));

        let full = dual_tensor_code(&rep(3), &LinearCode::full(2));
        assert_eq!(full.dim(), 6);
    }

    #[test]
    fn dual_tensor_contains_column_plus_row_sums() {
        let a = rep(3);
        let b = par(3);
        let dt = dual_tensor_code(&a, &b);
        let layout = Layout { na: 3, nb: 3 };
        let wa = a.codeword_masks().unwrap();
        let wb = b.codeword_masks().unwrap();
        for &ca in &wa {
            for &rb in &wb {
                for pos in 0..3 {
                    let x = layout.place_column(ca, pos) ^ (rb << (3 * ((pos + 1) % 3)));
                    assert!(dt.contains_mask(x));
                }
            }
        }
    }

    #[test]
    fn distances() {
        assert_eq!(rep(5).min_distance_bruteforce().unwrap(), Some(5));
        assert_eq!(par(4).min_distance_bruteforce().unwrap(), Some(2));
        assert_eq!(LinearCode::zero(4).min_distance_bruteforce().unwrap(), None);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = LinearCode::sample_random(8, 3, &mut rng).unwrap();
        let g = c.generator();
        let by_hand = (1u32..8)
            .map(|s| {
                let mut v = BitVector::zeros(8);
                for i in 0..3 {
                    if s >> i & 1 == 1 {
                        v.xor_assign(g.row(i));
                    }
                }
                v.weight()
            })
            .min();
        assert_eq!(c.min_distance_bruteforce().unwrap(), by_hand);
    }

    #[test]
    fn distance_refuses_large_dimension() {
        assert!(matches!(
            LinearCode::full(30).min_distance_bruteforce(),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn random_code_edges_and_determinism() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(LinearCode::sample_random(4, 0, &mut rng).unwrap().dim(), 0);
        assert!(LinearCode::sample_random(4, 4, &mut rng).unwrap().same_subspace(&LinearCode::full(4)));
        let a = LinearCode::sample_random(7, 3, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        let b = LinearCode::sample_random(7, 3, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        assert_eq!(a, b);
        assert!(LinearCode::sample_random(3, 4, &mut rng).is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        let c = LinearCode::sample_random(6, 2, &mut ChaCha8Rng::seed_from_u64(8)).unwrap();
        let json = serde_json::to_string(&c.descriptor()).unwrap();
        let back: CodeDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_code().unwrap(), c);
    }

    #[test]
    fn min_cr_trivial_cases() {
        let dt = dual_tensor_code(&rep(3), &par(3));
        let d = dt.min_cr_decomposition(0).unwrap();
        assert_eq!((d.c, d.r, d.cost()), (0, 0, 0));
        // one row holding 110 ∈ par_3
        let x = 0b011 << 3;
        let d = dt.min_cr_decomposition(x).unwrap();
        assert_eq!((d.c, d.r, d.cost()), (0, x, 1));
        assert!(matches!(dt.min_cr_decomposition(1), Err(Error::NotACodeword)));
    }

    #[test]
    fn min_cr_prefers_lexicographically_smallest_c() {
        // rep_2 ⊞ rep_2 is the even-weight 2×2 arrays
        let dt = dual_tensor_code(&rep(2), &rep(2));
        let x = 0b1111;
        let d = dt.min_cr_decomposition(x).unwrap();
        // both c = x (2 columns) and r = x (2 rows) cost 2; lexicographic prefers c = 0
        assert_eq!(d.c, 0);
        assert_eq!(d.cost(), 2);
    }

    #[test]
    fn coset_table_basics() {
        let dt = dual_tensor_code(&rep(3), &par(3));
        let t = dt.coset_leader_table().unwrap();
        assert_eq!(t.leader(0), Some(0));
        assert_eq!(t.checks(), 2);
        for s in 0..4u64 {
            let y = t.leader(s).unwrap();
            assert_eq!(dt.syndrome_of(y), s);
        }
    }

    #[test]
    fn coset_table_weight_one_leaders_for_distance_three() {
        // Hamming [7,4,3] ⊞ zero(1) is the Hamming code itself
        let a = LinearCode::from_generator(
            &BitMatrix::from_strings(&["1101000", "0110100", "0011010", "0001101"]).unwrap(),
        );
        assert_eq!(a.min_distance_bruteforce().unwrap(), Some(3));
        let b = LinearCode::zero(1);
        let dt = dual_tensor_code(&a, &b);
        let t = dt.coset_leader_table().unwrap();
        for i in 0..7 {
            let s = dt.syndrome_of(1 << i);
            assert_eq!(t.leader(s).map(u64::count_ones), Some(1));
        }
    }

    #[test]
    fn weight_lex_order() {
        let v: Vec<u64> = masks_of_weight_lex(3, 2).collect();
        // bitstrings 011, 101, 110
        assert_eq!(v, vec![0b110, 0b101, 0b011]);
        assert_eq!(masks_of_weight_lex(4, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(masks_of_weight_lex(4, 4).collect::<Vec<_>>(), vec![0b1111]);
        assert_eq!(masks_of_weight_lex(16, 3).count(), 560);
    }

    #[test]
    fn kappa_single_codeword_by_hand() {
        // C_A = C_B = rep_2: the ⊞ code is the even-weight 2×2 arrays. Full rows and
        // columns give |x| / (2·1) = 1; the diagonal 1001 needs one column plus one
        // row, 2 / (2 + 2) = 1/2, which is the minimum.
        let k = product_expansion_kappa(&rep(2), &rep(2)).unwrap().unwrap();
        assert_eq!(k, Ratio::new(1, 2));
    }

    #[test]
    fn kappa_full_space_side() {
        // C_A = F_2^2: every x is its own column split, κ_x = |x| / (|B| ‖x‖_cols)
        let k = product_expansion_kappa(&LinearCode::full(2), &LinearCode::zero(3))
            .unwrap()
            .unwrap();
        assert_eq!(k, Ratio::new(1, 3));
    }

    #[test]
    fn kappa_refuses_over_budget() {
        let big = LinearCode::full(5);
        assert!(matches!(product_expansion_kappa(&big, &big), Err(Error::Budget(_))));
    }
}
