//! Dense GF(2) vectors and matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2), packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector { len, words: vec![0; words_for(len)] }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn from_support(len: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVector::zeros(len);
        for i in support {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).fold(0, |acc, (a, b)| acc ^ (a & b).count_ones()) & 1 == 1
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for BitVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Row-major dense matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { cols, rows: vec![BitVector::zeros(cols); rows] }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        BitMatrix { cols, rows }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    /// `H·x` over GF(2).
    pub fn mul_vec(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.cols);
        let mut out = BitVector::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            out.set(i, row.dot(x));
        }
        out
    }

    /// Submatrix on the given rows and columns, in the order given.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> BitMatrix {
        let picked = rows
            .iter()
            .map(|&r| BitVector::from_bools(&cols.iter().map(|&c| self.get(r, c)).collect::<Vec<_>>()))
            .collect();
        BitMatrix::from_rows(cols.len(), picked)
    }

    /// Reduced row echelon form; returns the pivot column of each nonzero row.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            let Some(found) = (next..self.rows.len()).find(|&r| self.rows[r].get(col)) else {
                continue;
            };
            self.rows.swap(next, found);
            let pivot_row = self.rows[next].clone();
            for (r, row) in self.rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
            if next == self.rows.len() {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : H·x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::zeros(self.cols);
                v.set(free, true);
                for (r, &p) in pivots.iter().enumerate() {
                    if m.rows[r].get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }
}

/// Largest subcode dimension enumerated exhaustively.
pub const FULL_ENUMERATION_MAX_DIM: usize = 24;

/// Minimum-weight nonzero vector in the span of `basis`, by Gray-code walk
/// over all `2^k - 1` nonzero combinations. Returns `None` for an empty basis.
pub fn min_weight_in_span(basis: &[BitVector]) -> Option<BitVector> {
    let first = basis.first()?;
    let k = basis.len();
    assert!(k < 63, "span dimension {k} too large to enumerate");
    let len = first.len();
    if len <= WORD {
        let rows: Vec<u64> = basis.iter().map(|b| b.words.first().copied().unwrap_or(0)).collect();
        let mut cur = 0u64;
        let mut best = u64::MAX;
        let mut best_w = u32::MAX;
        for i in 1u64..(1u64 << k) {
            cur ^= rows[i.trailing_zeros() as usize];
            let w = cur.count_ones();
            if w < best_w {
                best_w = w;
                best = cur;
                if w == 1 {
                    break;
                }
            }
        }
        let mut v = BitVector::zeros(len);
        if len > 0 {
            v.words[0] = best;
        }
        return Some(v);
    }
    let mut cur = BitVector::zeros(len);
    let mut best: Option<BitVector> = None;
    for i in 1u64..(1u64 << k) {
        cur.xor_assign(&basis[i.trailing_zeros() as usize]);
        let w = cur.weight();
        if best.as_ref().is_none_or(|b| w < b.weight()) {
            best = Some(cur.clone());
            if w == 1 {
                break;
            }
        }
    }
    best
}

/// Smallest-weight nonzero `x` with `H·x = 0` among vectors of weight at most
/// `cap`, by depth-first search over column subsets in increasing weight.
pub fn min_weight_codeword_bounded(h: &BitMatrix, cap: usize) -> Option<BitVector> {
    let n = h.col_count();
    let columns: Vec<BitVector> = (0..n)
        .map(|c| BitVector::from_bools(&(0..h.row_count()).map(|r| h.get(r, c)).collect::<Vec<_>>()))
        .collect();

    fn search(columns: &[BitVector], start: usize, remaining: usize, syndrome: &mut BitVector, chosen: &mut Vec<usize>) -> bool {
        if remaining == 0 {
            return syndrome.is_zero();
        }
        for c in start..columns.len() {
            if columns.len() - c < remaining {
                break;
            }
            syndrome.xor_assign(&columns[c]);
            chosen.push(c);
            if search(columns, c + 1, remaining - 1, syndrome, chosen) {
                return true;
            }
            chosen.pop();
            syndrome.xor_assign(&columns[c]);
        }
        false
    }

    for w in 1..=cap.min(n) {
        let mut syndrome = BitVector::zeros(h.row_count());
        let mut chosen = Vec::with_capacity(w);
        if search(&columns, 0, w, &mut syndrome, &mut chosen) {
            return Some(BitVector::from_support(n, chosen));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: &[&str]) -> BitMatrix {
        let cols = rows[0].len();
        BitMatrix::from_rows(
            cols,
            rows.iter().map(|r| BitVector::from_bools(&r.bytes().map(|b| b == b'1').collect::<Vec<_>>())).collect(),
        )
    }

    #[test]
    fn rank_of_repeated_row() {
        let h = matrix(&["11000000", "01100000", "00111100", "01100000"]);
        assert_eq!(h.rank(), 3);
    }

    #[test]
    fn kernel_vectors_are_codewords() {
        let h = matrix(&["110100", "011010", "101001"]);
        let basis = h.kernel_basis();
        assert_eq!(basis.len(), 3);
        for v in &basis {
            assert!(h.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn repetition_code_min_weight() {
        let h = matrix(&["110", "011"]);
        let best = min_weight_in_span(&h.kernel_basis()).unwrap();
        assert_eq!(best.weight(), 3);
        assert_eq!(min_weight_codeword_bounded(&h, 2), None);
        assert_eq!(min_weight_codeword_bounded(&h, 3).unwrap().weight(), 3);
    }

    #[test]
    fn wide_vectors_use_generic_path() {
        let n = 70;
        let mut a = BitVector::zeros(n);
        a.set(0, true);
        a.set(69, true);
        let mut b = BitVector::zeros(n);
        b.set(69, true);
        b.set(3, true);
        b.set(4, true);
        let best = min_weight_in_span(&[a.clone(), b]).unwrap();
        assert_eq!(best, a);
        assert_eq!(best.first_one(), Some(0));
    }
}
