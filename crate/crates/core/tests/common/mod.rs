//! Independent brute-force oracles. Everything here works on plain `Vec<u8>`
//! bit lists and shares no code with the library's elimination or search.

#![allow(dead_code)]

use std::collections::HashMap;

use qtanner::classical::LinearCode;
use qtanner::gf2::BitMatrix;

pub fn to_bytes(m: &BitMatrix) -> Vec<Vec<u8>> {
    (0..m.num_rows())
        .map(|r| (0..m.num_cols()).map(|c| m.get(r, c) as u8).collect())
        .collect()
}

pub fn mask_bits(mask: u64, len: usize) -> Vec<u8> {
    (0..len).map(|i| ((mask >> i) & 1) as u8).collect()
}

pub fn bits_mask(bits: &[u8]) -> u64 {
    bits.iter().enumerate().fold(0, |acc, (i, &b)| acc | (u64::from(b) << i))
}

/// Textbook Gaussian elimination, written without bit packing.
pub fn naive_rank(mut rows: Vec<Vec<u8>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] == 1 {
                for k in 0..cols {
                    rows[r][k] ^= rows[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All elements of the span of `rows`, as masks, by iterating over every subset.
pub fn naive_span(rows: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = (0u64..1 << rows.len())
        .map(|s| (0..rows.len()).filter(|i| s >> i & 1 == 1).fold(0, |acc, i| acc ^ rows[i]))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn code_words(code: &LinearCode) -> Vec<u64> {
    let g = to_bytes(code.generator());
    naive_span(&g.iter().map(|r| bits_mask(r)).collect::<Vec<_>>())
}

pub fn naive_syndrome(h: &[Vec<u8>], y: u64) -> Vec<u8> {
    h.iter()
        .map(|row| row.iter().enumerate().fold(0, |acc, (i, &b)| acc ^ (b & ((y >> i) & 1) as u8)))
        .collect()
}

/// Minimum weight per syndrome over the whole space `F₂^len`.
pub fn min_weight_by_syndrome(h: &[Vec<u8>], len: usize) -> HashMap<Vec<u8>, u32> {
    let mut best: HashMap<Vec<u8>, u32> = HashMap::new();
    for y in 0u64..1 << len {
        let w = y.count_ones();
        best.entry(naive_syndrome(h, y)).and_modify(|b| *b = (*b).min(w)).or_insert(w);
    }
    best
}

/// The `⊞` code spanned directly by column words of `C_A` and row words of `C_B`
/// (entry `(a, b)` at bit `a·|B| + b`).
pub fn boxplus_words(ca: &LinearCode, cb: &LinearCode) -> Vec<u64> {
    let (na, nb) = (ca.len(), cb.len());
    let mut gens = Vec::new();
    for w in code_words(ca) {
        for b in 0..nb {
            gens.push((0..na).filter(|a| w >> a & 1 == 1).fold(0u64, |acc, a| acc | 1 << (a * nb + b)));
        }
    }
    for w in code_words(cb) {
        for a in 0..na {
            gens.push(w << (a * nb));
        }
    }
    gens.retain(|&g| g != 0);
    // Reduce to a basis before spanning to keep the subset enumeration small.
    let mut basis: Vec<u64> = Vec::new();
    for mut g in gens {
        for &b in &basis {
            let lead = 63 - b.leading_zeros();
            if g >> lead & 1 == 1 {
                g ^= b;
            }
        }
        if g != 0 {
            basis.push(g);
            basis.sort_unstable_by(|x, y| y.cmp(x));
        }
    }
    naive_span(&basis)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Split {
    pub c: u64,
    pub r: u64,
    pub columns: usize,
    pub rows: usize,
}

/// Every split `x = c + r` with columns of `c` in `C_A` and rows of `r` in `C_B`,
/// found by trying all `|C_A|^{|B|}` column assignments.
pub fn all_splits(x: u64, ca: &LinearCode, cb: &LinearCode) -> Vec<Split> {
    let (na, nb) = (ca.len(), cb.len());
    let wa = code_words(ca);
    let wb = code_words(cb);
    let mut out = Vec::new();
    let total = wa.len().pow(nb as u32);
    for idx in 0..total {
        let mut c = 0u64;
        let mut rest = idx;
        for b in 0..nb {
            let w = wa[rest % wa.len()];
            rest /= wa.len();
            for a in 0..na {
                if w >> a & 1 == 1 {
                    c |= 1 << (a * nb + b);
                }
            }
        }
        let r = x ^ c;
        let row = |a: usize| (r >> (a * nb)) & ((1 << nb) - 1);
        if (0..na).all(|a| wb.contains(&row(a))) {
            let columns = (0..nb)
                .filter(|&b| (0..na).any(|a| c >> (a * nb + b) & 1 == 1))
                .count();
            let rows = (0..na).filter(|&a| row(a) != 0).count();
            out.push(Split { c, r, columns, rows });
        }
    }
    out
}

/// Minimum `‖c‖ + ‖r‖`, ties broken by the lexicographically smallest bit list of `c`.
pub fn min_split(x: u64, ca: &LinearCode, cb: &LinearCode) -> Option<Split> {
    let len = ca.len() * cb.len();
    all_splits(x, ca, cb)
        .into_iter()
        .min_by(|s, t| (s.columns + s.rows, mask_bits(s.c, len)).cmp(&(t.columns + t.rows, mask_bits(t.c, len))))
}

/// `κ` as a reduced fraction `(num, den)`: the minimum over nonzero `x` of
/// `|x| / min(|B|‖c‖ + |A|‖r‖)`.
pub fn kappa(ca: &LinearCode, cb: &LinearCode) -> Option<(u64, u64)> {
    let (na, nb) = (ca.len() as u64, cb.len() as u64);
    let mut best: Option<(u64, u64)> = None;
    for x in boxplus_words(ca, cb).into_iter().filter(|&x| x != 0) {
        let den = all_splits(x, ca, cb)
            .iter()
            .map(|s| nb * s.columns as u64 + na * s.rows as u64)
            .min()
            .expect("every ⊞ word splits");
        let num = u64::from(x.count_ones());
        if best.is_none_or(|(bn, bd)| num * bd < bn * den) {
            best = Some((num, den));
        }
    }
    best.map(|(n, d)| {
        let g = gcd(n, d);
        (n / g, d / g)
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
