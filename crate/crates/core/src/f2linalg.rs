//! Linear algebra over the two-element field.
//!
//! Vectors and matrix rows are packed into `u64` limbs so that row addition is a
//! word-wise XOR and Hamming weight is a popcount. Everything here is exact.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of generator rows [`min_distance`] will enumerate over.
pub const MAX_DISTANCE_ROWS: usize = 24;

/// Below this many rows distance enumeration stays on the calling thread.
const PARALLEL_DISTANCE_ROWS: usize = 16;

/// Fixed-length vector over the two-element field.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    limbs: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            limbs: vec![0; len.div_ceil(64)],
        }
    }

    /// Unit vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    /// Builds a vector from 0/1 entries. Any nonzero entry counts as one.
    pub fn from_bits<B: Copy + Into<u64>>(bits: &[B]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b.into() != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Vector of length `len` whose entries are the binary digits of `index`,
    /// most significant first. Inverse of [`BitVector::to_index`].
    pub fn from_index(len: usize, index: u64) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            if (index >> (len - 1 - i)) & 1 == 1 {
                v.set(i, true);
            }
        }
        v
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
    pub fn get(&self, index: usize) -> bool {
        debug_assert!(index < self.len);
        (self.limbs[index >> 6] >> (index & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        debug_assert!(index < self.len);
        let mask = 1u64 << (index & 63);
        if value {
            self.limbs[index >> 6] |= mask;
        } else {
            self.limbs[index >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        debug_assert!(index < self.len);
        self.limbs[index >> 6] ^= 1u64 << (index & 63);
    }

    pub fn swap(&mut self, a: usize, b: usize) {
        let (va, vb) = (self.get(a), self.get(b));
        self.set(a, vb);
        self.set(b, va);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        debug_assert_eq!(self.len, other.len);
        BitVector {
            len: self.len,
            limbs: self.limbs.iter().zip(&other.limbs).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn or(&self, other: &BitVector) -> BitVector {
        debug_assert_eq!(self.len, other.len);
        BitVector {
            len: self.len,
            limbs: self.limbs.iter().zip(&other.limbs).map(|(a, b)| a | b).collect(),
        }
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    /// Weight of the bitwise AND, i.e. the integer inner product.
    #[inline]
    pub fn and_weight(&self, other: &BitVector) -> usize {
        self.limbs
            .iter()
            .zip(&other.limbs)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Inner product over the two-element field.
    #[inline]
    pub fn dot(&self, other: &BitVector) -> bool {
        self.and_weight(other) % 2 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Positions of the ones, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.limbs.iter().enumerate().flat_map(|(w, &limb)| {
            let mut rest = limb;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(w * 64 + bit)
                }
            })
        })
    }

    /// Reads the vector as a binary number, first entry most significant.
    ///
    /// # Panics
    ///
    /// Panics if the vector is longer than 64 entries.
    pub fn to_index(&self) -> u64 {
        assert!(self.len <= 64, "vector of length {} has no u64 index", self.len);
        self.iter().fold(0u64, |acc, b| (acc << 1) | b as u64)
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    /// Returns the vector with entries rearranged so that `out[pos] = self[perm[pos]]`.
    pub fn permuted(&self, perm: &[usize]) -> BitVector {
        debug_assert_eq!(perm.len(), self.len);
        let mut out = BitVector::zeros(self.len);
        for (pos, &src) in perm.iter().enumerate() {
            if self.get(src) {
                out.set(pos, true);
            }
        }
        out
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for BitVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_bits().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BitVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let bits = Vec::<u8>::deserialize(deserializer)?;
        if bits.iter().any(|&b| b > 1) {
            return Err(serde::de::Error::custom("bit vector entries must be 0 or 1"));
        }
        Ok(BitVector::from_bits(&bits))
    }
}

/// Dense binary matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows that must all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Convenience constructor from nested 0/1 slices. Panics on ragged input,
    /// so it is meant for literals.
    pub fn from_bits<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let rows: Vec<BitVector> = rows.iter().map(|r| BitVector::from_bits(r.as_ref())).collect();
        Self::from_rows(cols, rows).expect("ragged matrix literal")
    }

    #[inline]
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty() || self.cols == 0
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row].get(col)
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.rows[row].set(col, value);
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> BitVector {
        BitVector::from_bools(&self.rows.iter().map(|r| r.get(j)).collect::<Vec<_>>())
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// `self · otherᵀ`, which is the matrix of pairwise row inner products.
    pub fn mul_transpose(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut out = F2Matrix::zeros(self.rows.len(), other.rows.len());
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in other.rows.iter().enumerate() {
                if a.dot(b) {
                    out.rows[i].set(j, true);
                }
            }
        }
        Ok(out)
    }

    /// Returns the matrix with columns rearranged so that column `pos` of the
    /// result is column `perm[pos]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> F2Matrix {
        F2Matrix {
            cols: self.cols,
            rows: self.rows.iter().map(|r| r.permuted(perm)).collect(),
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.rows.len() != other.rows.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                found: other.rows.len(),
            });
        }
        let cols = self.cols + other.cols;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut r = BitVector::zeros(cols);
                for j in a.ones() {
                    r.set(j, true);
                }
                for j in b.ones() {
                    r.set(self.cols + j, true);
                }
                r
            })
            .collect();
        Ok(F2Matrix { cols, rows })
    }

    /// Columns `range` of every row.
    pub fn column_slice(&self, range: std::ops::Range<usize>) -> F2Matrix {
        let cols = range.len();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = BitVector::zeros(cols);
                for (dst, src) in range.clone().enumerate() {
                    if r.get(src) {
                        out.set(dst, true);
                    }
                }
                out
            })
            .collect();
        F2Matrix { cols, rows }
    }

    pub fn to_bits(&self) -> Vec<Vec<u8>> {
        self.rows.iter().map(BitVector::to_bits).collect()
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Matrix[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Dimension of the row space.
pub fn rank(m: &F2Matrix) -> usize {
    let mut rows = m.rows.clone();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for r in rows.iter_mut().skip(rank + 1) {
            if r.get(col) {
                r.xor_assign(&pivot_row);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Parity-check matrix brought to `[Pᵀ | I]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    /// Row-reduced, column-permuted parity-check matrix; its last `n - k`
    /// columns are the identity.
    pub h_std: F2Matrix,
    /// Column `pos` of `h_std` came from column `perm[pos]` of the input.
    pub perm: Vec<usize>,
    /// The `k × (n - k)` block with `h_std = [pᵀ | I]`.
    pub p: F2Matrix,
}

impl StandardForm {
    pub fn is_identity_perm(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }
}

/// Reduces a full-row-rank parity-check matrix to standard form.
///
/// Pivots target the last `n - k` columns; a column swap is made only when a
/// target column has no usable pivot, looking first at the leading `k`
/// columns from right to left. Codes already laid out with invertible
/// trailing columns therefore keep the identity permutation.
pub fn standard_form(h: &F2Matrix) -> Result<StandardForm> {
    let s = h.row_count();
    let n = h.col_count();
    let r = rank(h);
    if r < s {
        return Err(Error::RankDeficient { rank: r, rows: s });
    }
    let k = n - s;
    let mut m = h.rows.clone();
    let mut perm: Vec<usize> = (0..n).collect();

    for i in 0..s {
        let target = k + i;
        let pivot_row = match (i..s).find(|&r| m[r].get(target)) {
            Some(r) => r,
            None => {
                let candidates = (0..k).rev().chain(target + 1..n);
                let (col, row) = candidates
                    .filter_map(|c| (i..s).find(|&r| m[r].get(c)).map(|r| (c, r)))
                    .next()
                    .ok_or(Error::RankDeficient { rank: i, rows: s })?;
                for row in m.iter_mut() {
                    row.swap(col, target);
                }
                perm.swap(col, target);
                row
            }
        };
        m.swap(i, pivot_row);
        let pivot = m[i].clone();
        for (j, row) in m.iter_mut().enumerate() {
            if j != i && row.get(target) {
                row.xor_assign(&pivot);
            }
        }
    }

    let h_std = F2Matrix { cols: n, rows: m };
    let p = h_std.column_slice(0..k).transpose();
    // A zero-row input loses its column count through the transpose.
    let p = if s == 0 { F2Matrix::zeros(k, 0) } else { p };
    Ok(StandardForm { h_std, perm, p })
}

/// Generator matrix `[I_k | P]`, expressed in the input's column labels.
///
/// Returns the generator and the column permutation under which its first
/// `k` columns are the identity.
pub fn generator_from_parity(h: &F2Matrix) -> Result<(F2Matrix, Vec<usize>)> {
    let sf = standard_form(h)?;
    let n = h.col_count();
    let k = n - h.row_count();
    let g_std = F2Matrix::identity(k).hstack(&sf.p)?;
    let mut g = F2Matrix::zeros(k, n);
    for (s, row) in g_std.rows.iter().enumerate() {
        for pos in row.ones() {
            g.rows[s].set(sf.perm[pos], true);
        }
    }
    Ok((g, sf.perm))
}

/// Minimum Hamming weight over all nonzero codewords `ε·g`.
///
/// Walks the row space in Gray-code order so each step is one row XOR.
pub fn min_distance(g: &F2Matrix) -> Result<usize> {
    let k = g.row_count();
    if k == 0 {
        return Err(Error::Invalid("generator has no rows; distance is undefined".into()));
    }
    if k > MAX_DISTANCE_ROWS {
        return Err(Error::TooLarge {
            what: "generator rows",
            value: k,
            limit: MAX_DISTANCE_ROWS,
        });
    }
    let total: u64 = 1 << k;
    if k < PARALLEL_DISTANCE_ROWS {
        return Ok(gray_walk_min(g, 1, total));
    }
    let chunk: u64 = 1 << 12;
    let best = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| gray_walk_min(g, (c * chunk).max(1), ((c + 1) * chunk).min(total)))
        .min()
        .unwrap_or(usize::MAX);
    Ok(best)
}

fn gray_walk_min(g: &F2Matrix, start: u64, end: u64) -> usize {
    let gray = |i: u64| i ^ (i >> 1);
    let mut word = BitVector::zeros(g.col_count());
    let first = gray(start);
    for s in 0..g.row_count() {
        if (first >> s) & 1 == 1 {
            word.xor_assign(&g.rows[s]);
        }
    }
    let mut best = word.weight();
    for i in start + 1..end {
        word.xor_assign(&g.rows[i.trailing_zeros() as usize]);
        best = best.min(word.weight());
    }
    best
}

/// Codeword `ε·g`: bit `i` is the XOR over `s` of `ε_s (g_s)_i`.
pub fn encode_word(g: &F2Matrix, eps: &BitVector) -> Result<BitVector> {
    if eps.len() != g.row_count() {
        return Err(Error::DimensionMismatch {
            expected: g.row_count(),
            found: eps.len(),
        });
    }
    let mut word = BitVector::zeros(g.col_count());
    for s in eps.ones() {
        word.xor_assign(&g.rows[s]);
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u8]]) -> F2Matrix {
        F2Matrix::from_bits(rows)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&m(&[&[1, 1, 0], &[0, 1, 1]])), 2);
        assert_eq!(rank(&F2Matrix::identity(3)), 3);
        assert_eq!(rank(&F2Matrix::zeros(2, 4)), 0);
        assert_eq!(rank(&m(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])), 2);
    }

    #[test]
    fn standard_form_repetition() {
        let sf = standard_form(&m(&[&[1, 1, 0], &[0, 1, 1]])).unwrap();
        assert_eq!(sf.h_std, m(&[&[1, 1, 0], &[1, 0, 1]]));
        assert!(sf.is_identity_perm());
        assert_eq!(sf.p, m(&[&[1, 1]]));
    }

    #[test]
    fn standard_form_fixed_point() {
        let h = m(&[&[1, 0, 1, 0], &[1, 1, 0, 1]]);
        let sf = standard_form(&h).unwrap();
        assert_eq!(sf.h_std, h);
        assert!(sf.is_identity_perm());

        let sf = standard_form(&m(&[&[1, 1]])).unwrap();
        assert_eq!(sf.h_std, m(&[&[1, 1]]));
        assert_eq!(sf.p, m(&[&[1]]));
    }

    #[test]
    fn standard_form_needs_column_swap() {
        // Trailing column is zero, so a leading column must move in.
        let h = m(&[&[1, 1, 0]]);
        let sf = standard_form(&h).unwrap();
        assert!(!sf.is_identity_perm());
        assert!(sf.h_std.get(0, 2));
        let (g, _) = generator_from_parity(&h).unwrap();
        assert!(g.mul_transpose(&h).unwrap().rows().iter().all(BitVector::is_zero));
    }

    #[test]
    fn standard_form_rejects_dependent_rows() {
        let err = standard_form(&m(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])).unwrap_err();
        assert!(matches!(err, Error::RankDeficient { rank: 2, rows: 3 }));
    }

    #[test]
    fn generator_examples() {
        let (g, perm) = generator_from_parity(&m(&[&[1, 1, 0], &[0, 1, 1]])).unwrap();
        assert_eq!(g, m(&[&[1, 1, 1]]));
        assert_eq!(perm, vec![0, 1, 2]);

        let (g, _) = generator_from_parity(&m(&[&[0, 1]])).unwrap();
        assert_eq!(g, m(&[&[1, 0]]));

        let chain = m(&[
            &[1, 1, 0, 0, 0],
            &[0, 1, 1, 0, 0],
            &[0, 0, 1, 1, 0],
            &[0, 0, 0, 1, 1],
        ]);
        let (g, _) = generator_from_parity(&chain).unwrap();
        assert_eq!(g, m(&[&[1, 1, 1, 1, 1]]));
    }

    #[test]
    fn generator_of_empty_parity_is_identity() {
        let (g, perm) = generator_from_parity(&F2Matrix::zeros(0, 2)).unwrap();
        assert_eq!(g, F2Matrix::identity(2));
        assert_eq!(perm, vec![0, 1]);
    }

    #[test]
    fn distance_examples() {
        assert_eq!(min_distance(&m(&[&[1, 1, 1]])).unwrap(), 3);
        assert_eq!(min_distance(&m(&[&[1, 1, 1, 1, 1]])).unwrap(), 5);
        assert_eq!(min_distance(&m(&[&[1, 0, 1, 1], &[0, 1, 1, 0]])).unwrap(), 2);
    }

    #[test]
    fn distance_guard() {
        let g = F2Matrix::identity(MAX_DISTANCE_ROWS + 1);
        assert!(matches!(min_distance(&g), Err(Error::TooLarge { .. })));
        assert!(min_distance(&F2Matrix::zeros(0, 3)).is_err());
    }

    #[test]
    fn distance_parallel_path() {
        // [I_16 | 1]: every nonzero codeword of odd message weight picks up the
        // parity bit, so the minimum is 2.
        let k = PARALLEL_DISTANCE_ROWS;
        let mut rows = Vec::new();
        for i in 0..k {
            let mut r = BitVector::unit(k + 1, i);
            r.set(k, true);
            rows.push(r);
        }
        let g = F2Matrix::from_rows(k + 1, rows).unwrap();
        assert_eq!(min_distance(&g).unwrap(), 2);
    }

    #[test]
    fn encode_examples() {
        let g = m(&[&[1, 1, 1]]);
        assert_eq!(encode_word(&g, &BitVector::from_bits(&[1u8])).unwrap().to_bits(), vec![1, 1, 1]);
        let g = m(&[&[1, 0, 1, 1], &[0, 1, 1, 0]]);
        assert!(encode_word(&g, &BitVector::zeros(2)).unwrap().is_zero());
        assert_eq!(
            encode_word(&g, &BitVector::from_bits(&[1u8, 1])).unwrap().to_bits(),
            vec![1, 1, 0, 1]
        );
        assert!(matches!(
            encode_word(&g, &BitVector::zeros(3)),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn bitvector_index_round_trip() {
        let v = BitVector::from_bits(&[1u8, 1, 0, 1]);
        assert_eq!(v.to_index(), 0b1101);
        assert_eq!(BitVector::from_index(4, 0b1101), v);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 1, 3]);
    }

    #[test]
    fn bitvector_multi_limb() {
        let mut v = BitVector::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.weight(), 3);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        let w = BitVector::unit(130, 64);
        assert_eq!(v.and_weight(&w), 1);
        assert_eq!(v.xor(&w).weight(), 2);
    }
}
