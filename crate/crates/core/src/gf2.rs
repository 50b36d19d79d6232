//! Bit-packed vectors and matrices over GF(2).
//!
//! Rows are packed into `u64` words so row operations are word-parallel XORs.
//! Elimination always pivots on the leftmost nonzero column and pulls the
//! lowest-index candidate row up, so every derived basis is deterministic.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2). Bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i),
        )
    }

    /// Builds a vector from the low `len` bits of `mask` (bit `i` of the mask is entry `i`).
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD, "mask vectors hold at most 64 bits");
        let mut v = Self::zeros(len);
        if len > 0 {
            let keep = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = mask & keep;
        }
        v
    }

    /// Low 64 bits as a mask. Only meaningful for vectors of length ≤ 64.
    pub fn to_mask(&self) -> u64 {
        debug_assert!(self.len <= WORD);
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let bit = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len, "and of vectors with different lengths");
        BitVector {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Entries `[start, start + len)` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        assert!(start + len <= self.len, "slice out of range");
        let mut out = BitVector::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    /// Lexicographic comparison on bit index: the first differing position decides,
    /// and the vector holding a 0 there is smaller.
    pub fn lex_cmp(&self, other: &BitVector) -> std::cmp::Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            if a != b {
                let pos = (a ^ b).trailing_zeros();
                return if (a >> pos) & 1 == 0 {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                };
            }
        }
        self.len.cmp(&other.len)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut v = BitVector::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::Parse(format!(
                        "unexpected character {other:?} in bitstring"
                    )))
                }
            }
        }
        Ok(v)
    }
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    /// Matrix with no rows and the given column count.
    pub fn empty(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Parses rows given as `0`/`1` strings of equal length.
    pub fn from_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.as_ref().parse::<BitVector>())
            .collect::<Result<Vec<_>>>()?;
        let cols = parsed.first().map_or(0, BitVector::len);
        Self::from_rows(cols, parsed)
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(BitMatrix { cols: self.cols, rows })
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// `M · v` over GF(2).
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(BitVector::from_indices(
            self.rows.len(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, row)| row.dot(v))
                .map(|(i, _)| i),
        ))
    }

    /// `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.num_rows() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.num_rows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVector::zeros(other.cols);
                for k in row.iter_ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Ok(BitMatrix {
            cols: other.cols,
            rows,
        })
    }

    /// `self · otherᵀ`, i.e. the matrix of pairwise row inner products.
    pub fn mul_transpose(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|a| {
                BitVector::from_indices(
                    other.num_rows(),
                    other
                        .rows
                        .iter()
                        .enumerate()
                        .filter(|(_, b)| a.dot(b))
                        .map(|(j, _)| j),
                )
            })
            .collect();
        Ok(BitMatrix {
            cols: other.num_rows(),
            rows,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    /// Kronecker product. Row `(i, k)` is `i * rows(b) + k` and column `(j, l)` is
    /// `j * cols(b) + l`: the left factor is always the outer index.
    pub fn kronecker(&self, b: &BitMatrix) -> BitMatrix {
        let cols = self.cols * b.cols;
        let mut rows = Vec::with_capacity(self.num_rows() * b.num_rows());
        for ra in &self.rows {
            for rb in &b.rows {
                let mut row = BitVector::zeros(cols);
                for j in ra.iter_ones() {
                    for l in rb.iter_ones() {
                        row.set(j * b.cols + l, true);
                    }
                }
                rows.push(row);
            }
        }
        BitMatrix { cols, rows }
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::new(self)
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column in increasing column order.
    pub fn kernel_basis(&self) -> BitMatrix {
        let ech = self.echelon();
        let mut pivot_of_col = vec![None; self.cols];
        for (r, &c) in ech.pivots.iter().enumerate() {
            pivot_of_col[c] = Some(r);
        }
        let mut basis = Vec::with_capacity(self.cols - ech.rank());
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut x = BitVector::zeros(self.cols);
            x.set(free, true);
            for (r, &pc) in ech.pivots.iter().enumerate() {
                if ech.rows[r].get(free) {
                    x.set(pc, true);
                }
            }
            basis.push(x);
        }
        BitMatrix {
            cols: self.cols,
            rows: basis,
        }
    }

    /// Some `x` with `M x = b`, or `None` when the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve_any(&self, b: &BitVector) -> Result<Option<BitVector>> {
        if b.len() != self.num_rows() {
            return Err(Error::DimensionMismatch {
                expected: self.num_rows(),
                found: b.len(),
            });
        }
        let aug_rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| row.concat(&BitVector::from_indices(1, b.get(i).then_some(0))))
            .collect();
        let aug = BitMatrix {
            cols: self.cols + 1,
            rows: aug_rows,
        };
        let ech = aug.echelon();
        let mut x = BitVector::zeros(self.cols);
        for (r, &pc) in ech.pivots.iter().enumerate() {
            if pc == self.cols {
                return Ok(None);
            }
            if ech.rows[r].get(self.cols) {
                x.set(pc, true);
            }
        }
        Ok(Some(x))
    }

    pub fn rowspace_contains(&self, v: &BitVector) -> Result<bool> {
        self.echelon().contains(v)
    }

    /// Renders as an ASCII grid of `0`/`1`, one row per line.
    pub fn to_ascii(&self) -> String {
        let mut s = String::new();
        for row in &self.rows {
            s.push_str(&row.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_ascii(text: &str) -> Result<BitMatrix> {
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        Self::from_strings(&lines)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.num_rows(), self.cols)?;
        f.write_str(&self.to_ascii())
    }
}

/// Reduced row echelon form of a matrix, kept for repeated membership and
/// reduction queries against the same row space.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(m: &BitMatrix) -> Self {
        let mut rows = m.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..m.cols {
            if next == rows.len() {
                break;
            }
            let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
        }
        rows.truncate(next);
        Self {
            cols: m.cols,
            rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The nonzero rows of the reduced form, a basis of the row space.
    pub fn basis(&self) -> BitMatrix {
        BitMatrix {
            cols: self.cols,
            rows: self.rows.clone(),
        }
    }

    /// Reduces `v` modulo the row space; the result is zero iff `v` is in it.
    pub fn reduce(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = v.clone();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if out.get(pc) {
                out.xor_assign(row);
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn mat(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_strings(rows).unwrap()
    }

    // Independent rank routine: column-by-column elimination over bool arrays.
    fn naive_rank(m: &BitMatrix) -> usize {
        let mut a: Vec<Vec<bool>> = (0..m.num_rows())
            .map(|r| (0..m.num_cols()).map(|c| m.get(r, c)).collect())
            .collect();
        let mut rank = 0;
        for c in (0..m.num_cols()).rev() {
            if let Some(p) = (rank..a.len()).find(|&r| a[r][c]) {
                a.swap(rank, p);
                for r in 0..a.len() {
                    if r != rank && a[r][c] {
                        for k in 0..m.num_cols() {
                            let v = a[rank][k];
                            a[r][k] ^= v;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| {
                    BitMatrix::from_rows(c, rows.iter().map(|b| BitVector::from_bools(b)).collect())
                        .unwrap()
                },
            )
        })
    }

    #[test]
    fn mat_vec_identity_and_parity() {
        assert_eq!(BitMatrix::identity(3).mul_vec(&bv("101")).unwrap(), bv("101"));
        assert_eq!(mat(&["111"]).mul_vec(&bv("110")).unwrap(), bv("0"));
    }

    #[test]
    fn mat_vec_repetition_checks_match_inner_products() {
        let h = mat(&["110", "011"]);
        let v = bv("100");
        let direct: Vec<bool> = h.rows().iter().map(|r| {
            (0..3).filter(|&i| r.get(i) && v.get(i)).count() % 2 == 1
        }).collect();
        assert_eq!(h.mul_vec(&v).unwrap(), BitVector::from_bools(&direct));
        assert_eq!(h.mul_vec(&v).unwrap(), bv("10"));
    }

    #[test]
    fn mat_vec_rejects_wrong_length() {
        let err = BitMatrix::identity(3).mul_vec(&bv("10")).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 3, found: 2 }));
    }

    #[test]
    fn rank_basic() {
        assert_eq!(BitMatrix::identity(4).rank(), 4);
        assert_eq!(BitMatrix::zeros(3, 5).rank(), 0);
        assert_eq!(mat(&["110", "011", "101"]).rank(), 2);
    }

    #[test]
    fn rank_matches_independent_elimination_on_random_10x10() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let rows = (0..10)
                .map(|_| BitVector::from_bools(&(0..10).map(|_| rng.gen()).collect::<Vec<_>>()))
                .collect();
            let m = BitMatrix::from_rows(10, rows).unwrap();
            assert_eq!(m.rank(), naive_rank(&m));
        }
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(BitMatrix::identity(3).kernel_basis().num_rows(), 0);
        let k = mat(&["111"]).kernel_basis();
        assert_eq!(k.num_rows(), 2);
        assert!(k.rows().iter().all(|r| r.weight() % 2 == 0));
    }

    #[test]
    fn kernel_of_rep_par_kronecker_has_dimension_seven() {
        // H_rep3 ⊗ H_par3, enumerated: count vectors of F_2^9 in the kernel.
        let h = mat(&["110", "011"]).kronecker(&mat(&["111"]));
        let in_kernel = (0u64..512)
            .filter(|&m| h.mul_vec(&BitVector::from_mask(9, m)).unwrap().is_zero())
            .count();
        assert_eq!(in_kernel, 1 << 7);
        assert_eq!(h.kernel_basis().num_rows(), 7);
    }

    #[test]
    fn solve_examples() {
        let x = BitMatrix::identity(3).solve_any(&bv("011")).unwrap().unwrap();
        assert_eq!(x, bv("011"));
        assert!(BitMatrix::zeros(2, 3).solve_any(&bv("10")).unwrap().is_none());
        let m = mat(&["111"]);
        let x = m.solve_any(&bv("1")).unwrap().unwrap();
        assert_eq!(x.weight() % 2, 1);
        assert_eq!(m.mul_vec(&x).unwrap(), bv("1"));
    }

    #[test]
    fn rowspace_examples() {
        let m = mat(&["110"]);
        assert!(m.rowspace_contains(&bv("000")).unwrap());
        assert!(BitMatrix::identity(3).rowspace_contains(&bv("111")).unwrap());
        assert!(!m.rowspace_contains(&bv("011")).unwrap());
        assert!(m.rowspace_contains(&bv("11")).is_err());
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(
            BitMatrix::identity(2).kronecker(&BitMatrix::identity(2)),
            BitMatrix::identity(4)
        );
        assert_eq!(mat(&["11"]).kronecker(&mat(&["10"])), mat(&["1010"]));
        let a = mat(&["110", "011"]);
        let b = mat(&["111"]);
        let k = a.kronecker(&b);
        for i in 0..2 {
            for kk in 0..1 {
                for j in 0..3 {
                    for l in 0..3 {
                        assert_eq!(k.get(i + kk, j * 3 + l), a.get(i, j) && b.get(kk, l));
                    }
                }
            }
        }
    }

    #[test]
    fn kronecker_is_associative_on_small_factors() {
        let a = mat(&["10", "11"]);
        let b = mat(&["011"]);
        let c = mat(&["1", "1"]);
        assert_eq!(a.kronecker(&b).kronecker(&c), a.kronecker(&b.kronecker(&c)));
    }

    #[test]
    fn ascii_round_trip() {
        let m = mat(&["1010", "0111"]);
        assert_eq!(m.to_ascii(), "1010\n0111\n");
        assert_eq!(BitMatrix::from_ascii(&m.to_ascii()).unwrap(), m);
    }

    #[test]
    fn lex_cmp_uses_first_differing_index() {
        use std::cmp::Ordering;
        assert_eq!(bv("0100").lex_cmp(&bv("1000")), Ordering::Less);
        assert_eq!(bv("1100").lex_cmp(&bv("1010")), Ordering::Greater);
    }

    proptest! {
        #[test]
        fn mat_vec_is_linear(m in arb_matrix(8, 70), seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let c = m.num_cols();
            let v = BitVector::from_bools(&(0..c).map(|_| rng.gen()).collect::<Vec<_>>());
            let w = BitVector::from_bools(&(0..c).map(|_| rng.gen()).collect::<Vec<_>>());
            let lhs = m.mul_vec(&v.xor(&w)).unwrap();
            let rhs = m.mul_vec(&v).unwrap().xor(&m.mul_vec(&w).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn kernel_is_annihilated_and_complementary(m in arb_matrix(9, 12)) {
            let k = m.kernel_basis();
            for row in k.rows() {
                prop_assert!(m.mul_vec(row).unwrap().is_zero());
            }
            prop_assert_eq!(k.rank(), m.num_cols() - m.rank());
            prop_assert_eq!(m.rank(), naive_rank(&m));
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn solve_any_solutions_check_out(m in arb_matrix(8, 8), seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let b = BitVector::from_bools(&(0..m.num_rows()).map(|_| rng.gen()).collect::<Vec<_>>());
            match m.solve_any(&b).unwrap() {
                Some(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), b),
                // inconsistent: b must be outside the column space
                None => prop_assert!(!m.transpose().rowspace_contains(&b).unwrap()),
            }
        }
    }
}
