//! Bit-packed linear algebra over GF(2).
//!
//! Both [`BitVector`] and [`BitMatrix`] store bits little-endian inside 64-bit words:
//! bit `j` of a row lives in word `j / 64` at position `j % 64`. Bits past the logical
//! length of a row are always zero, so word-level equality and popcounts are exact.

use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

fn check_index(index: usize, bound: usize) -> Result<()> {
    if index < bound {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index, bound })
    }
}

/// A fixed-length vector over GF(2).
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

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters; position 0 is the leftmost character.
    pub fn parse(text: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(text.len());
        for (i, ch) in text.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unexpected character {other:?} at position {i} in bit string"
                    )))
                }
            }
        }
        Ok(Self::from_bools(bits))
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(len);
        }
        Self { len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn or(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len, "length mismatch in or");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        BitVector { len: self.len, words }
    }

    /// Standard inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        dot_words(&self.words, &other.words)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
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

    pub fn slice(&self, range: Range<usize>) -> BitVector {
        assert!(range.end <= self.len && range.start <= range.end);
        let mut out = BitVector::zeros(range.len());
        for (o, i) in range.enumerate() {
            if self.get(i) {
                out.set(o, true);
            }
        }
        out
    }

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
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

#[inline]
fn dot_words(a: &[u64], b: &[u64]) -> bool {
    let mut acc = 0u64;
    for (x, y) in a.iter().zip(b) {
        acc ^= x & y;
    }
    acc.count_ones() & 1 == 1
}

/// Symplectic product `u Λ vᵀ` of two `(x|z)` vectors of length `2n`.
pub fn symplectic_product(u: &BitVector, v: &BitVector) -> Result<bool> {
    if u.len() != v.len() || u.len() % 2 != 0 {
        return Err(Error::DimensionMismatch(format!(
            "symplectic product needs equal even lengths, got {} and {}",
            u.len(),
            v.len()
        )));
    }
    let n = u.len() / 2;
    let mut acc = false;
    for i in 0..n {
        acc ^= (u.get(i) & v.get(n + i)) ^ (u.get(n + i) & v.get(i));
    }
    Ok(acc)
}

/// Dense GF(2) matrix with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[BitVector], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    /// Builds a matrix from `0`/`1` strings, one per row.
    pub fn parse_rows(rows: &[&str]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let vecs = rows
            .iter()
            .map(|r| BitVector::parse(r))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&vecs, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let mask = 1u64 << (c % WORD);
        let w = &mut self.data[r * self.stride + c / WORD];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    #[inline]
    pub(crate) fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn col(&self, c: usize) -> BitVector {
        BitVector::from_bools((0..self.rows).map(|r| self.get(r, c)))
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row_words(r).iter().all(|&w| w == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn set_row(&mut self, r: usize, v: &BitVector) {
        assert_eq!(v.len(), self.cols);
        self.row_words_mut(r).copy_from_slice(v.words());
    }

    #[inline]
    pub(crate) fn xor_row_unchecked(&mut self, src: usize, dst: usize) {
        let s = self.stride;
        if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            for (d, x) in hi[..s].iter_mut().zip(&lo[src * s..src * s + s]) {
                *d ^= x;
            }
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            for (d, x) in lo[dst * s..dst * s + s].iter_mut().zip(&hi[..s]) {
                *d ^= x;
            }
        }
    }

    /// Row `dst` becomes row `dst` XOR row `src`.
    pub fn add_row(&mut self, src: usize, dst: usize) -> Result<()> {
        check_index(src, self.rows)?;
        check_index(dst, self.rows)?;
        if src == dst {
            return Err(Error::InvalidArgument("add_row needs distinct rows".into()));
        }
        self.xor_row_unchecked(src, dst);
        Ok(())
    }

    pub fn xor_into_row(&mut self, dst: usize, v: &BitVector) {
        assert_eq!(v.len(), self.cols);
        for (d, x) in self.row_words_mut(dst).iter_mut().zip(v.words()) {
            *d ^= x;
        }
    }

    #[inline]
    pub(crate) fn add_col_unchecked(&mut self, src: usize, dst: usize) {
        let (sw, sb) = (src / WORD, src % WORD);
        let (dw, db) = (dst / WORD, dst % WORD);
        for r in 0..self.rows {
            let base = r * self.stride;
            let bit = (self.data[base + sw] >> sb) & 1;
            self.data[base + dw] ^= bit << db;
        }
    }

    /// Column `dst` becomes column `dst` XOR column `src`.
    pub fn add_col(&mut self, src: usize, dst: usize) -> Result<()> {
        check_index(src, self.cols)?;
        check_index(dst, self.cols)?;
        if src == dst {
            return Err(Error::InvalidArgument("add_col needs distinct columns".into()));
        }
        self.add_col_unchecked(src, dst);
        Ok(())
    }

    pub(crate) fn swap_cols_unchecked(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            let (x, y) = (self.get(r, a), self.get(r, b));
            if x != y {
                self.flip(r, a);
                self.flip(r, b);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) -> Result<()> {
        check_index(a, self.cols)?;
        check_index(b, self.cols)?;
        self.swap_cols_unchecked(a, b);
        Ok(())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) -> Result<()> {
        check_index(a, self.rows)?;
        check_index(b, self.rows)?;
        if a != b {
            for w in 0..self.stride {
                self.data.swap(a * self.stride + w, b * self.stride + w);
            }
        }
        Ok(())
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// `self · otherᵀ`, computed with word-level row dot products.
    pub fn mul_transpose(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot form A·Bᵀ with A {}x{} and B {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = BitMatrix::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            let a = self.row_words(i);
            for j in 0..other.rows {
                if dot_words(a, other.row_words(j)) {
                    out.set(i, j, true);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        // Row-combination form: row i of the product is the XOR of rows of `other`
        // selected by row i of `self`.
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let sel: Vec<usize> = self.row(i).iter_ones().collect();
            let dst = i * out.stride;
            for k in sel {
                for w in 0..other.stride {
                    out.data[dst + w] ^= other.data[k * other.stride + w];
                }
            }
        }
        Ok(out)
    }

    /// `M · x` for a column vector `x`.
    pub fn mul_vec(&self, x: &BitVector) -> Result<BitVector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok(BitVector::from_bools(
            (0..self.rows).map(|r| dot_words(self.row_words(r), x.words())),
        ))
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum of different shapes".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        Ok(out)
    }

    /// Reduced row echelon form with first-nonzero pivoting; returns the pivot columns.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(0..self.cols);
        (m, pivots)
    }

    /// Gauss-Jordan elimination restricted to pivot candidates in `cols`.
    /// Pivot rows are moved to the top in order.
    pub(crate) fn rref_in_place(&mut self, cols: Range<usize>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            if p != next {
                let _ = self.swap_rows(p, next);
            }
            for r in 0..self.rows {
                if r != next && self.get(r, c) {
                    self.xor_row_unchecked(next, r);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            if p != rank {
                let _ = m.swap_rows(p, rank);
            }
            for r in rank + 1..m.rows {
                if m.get(r, c) {
                    m.xor_row_unchecked(rank, r);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn invert(&self) -> Result<BitMatrix> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument(format!(
                "cannot invert a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = self.hstack(&BitMatrix::identity(n))?;
        let pivots = aug.rref_in_place(0..n);
        if pivots.len() < n {
            return Err(Error::Singular);
        }
        Ok(aug.submatrix(0..n, n..2 * n))
    }

    /// Returns some `x` with `M·x = y`, or `None` when the system is inconsistent.
    pub fn solve(&self, y: &BitVector) -> Result<Option<BitVector>> {
        if y.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                y.len(),
                self.rows
            )));
        }
        let mut aug = BitMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                aug.set(r, c, true);
            }
            aug.set(r, self.cols, y.get(r));
        }
        let pivots = aug.rref_in_place(0..self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = BitVector::zeros(self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            if aug.get(r, self.cols) {
                x.set(c, true);
            }
        }
        Ok(Some(x))
    }

    /// Basis of the right null space `{x : M·x = 0}`.
    pub fn kernel(&self) -> Vec<BitVector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = BitVector::zeros(self.cols);
                x.set(f, true);
                for (row, &p) in pivots.iter().enumerate() {
                    if r.get(row, f) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> Result<bool> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument(format!(
                "symmetry check on a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok((0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i))))
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> BitMatrix {
        assert!(rows.end <= self.rows && cols.end <= self.cols);
        let mut out = BitMatrix::zeros(rows.len(), cols.len());
        for (ro, r) in rows.enumerate() {
            for (co, c) in cols.clone().enumerate() {
                if self.get(r, c) {
                    out.set(ro, co, true);
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack of different row counts".into()));
        }
        let mut out = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                out.set(r, c, true);
            }
            for c in other.row(r).iter_ones() {
                out.set(r, self.cols + c, true);
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack of different column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(BitMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        })
    }

    pub fn select_rows(&self, rows: Range<usize>) -> BitMatrix {
        assert!(rows.end <= self.rows);
        BitMatrix {
            rows: rows.len(),
            cols: self.cols,
            stride: self.stride,
            data: self.data[rows.start * self.stride..rows.end * self.stride].to_vec(),
        }
    }

    /// Exchanges the two halves of a `(x|z)` matrix column-wise: `M·Λ`.
    pub fn swap_halves(&self) -> Result<BitMatrix> {
        if self.cols % 2 != 0 {
            return Err(Error::DimensionMismatch(format!(
                "odd column count {} has no X|Z split",
                self.cols
            )));
        }
        let n = self.cols / 2;
        let mut out = BitMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                out.set(r, if c < n { c + n } else { c - n }, true);
            }
        }
        Ok(out)
    }

    /// The Gram matrix `M Λ Mᵀ` of symplectic products between rows.
    pub fn symplectic_gram(&self) -> Result<BitMatrix> {
        self.mul_transpose(&self.swap_halves()?)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, rng.gen());
            }
        }
        m
    }

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::parse_rows(rows).unwrap()
    }

    #[test]
    fn add_row_examples() {
        let mut a = m(&["10", "11"]);
        a.add_row(0, 1).unwrap();
        assert_eq!(a, m(&["10", "01"]));

        let mut b = m(&["11", "00"]);
        b.add_row(1, 0).unwrap();
        assert_eq!(b, m(&["11", "00"]));

        assert!(matches!(a.add_row(0, 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(a.add_row(1, 1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn add_col_examples() {
        let mut i3 = BitMatrix::identity(3);
        i3.add_col(1, 0).unwrap();
        assert_eq!(i3.col(0), BitVector::parse("110").unwrap());

        let mut r = m(&["10"]);
        r.add_col(0, 1).unwrap();
        assert_eq!(r, m(&["11"]));
        assert!(r.add_col(2, 0).is_err());
    }

    #[test]
    fn row_and_column_additions_are_involutions() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = random_matrix(&mut rng, 8, 70);
            let (s, d) = (rng.gen_range(0..8), rng.gen_range(0..8));
            if s != d {
                let mut b = a.clone();
                b.add_row(s, d).unwrap();
                b.add_row(s, d).unwrap();
                assert_eq!(a, b);
            }
            let (s, d) = (rng.gen_range(0..70), rng.gen_range(0..70));
            if s != d {
                let mut b = a.clone();
                b.add_col(s, d).unwrap();
                b.add_col(s, d).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(4).rank(), 4);
        assert_eq!(BitMatrix::zeros(3, 5).rank(), 0);
        assert_eq!(m(&["110", "011", "101"]).rank(), 2);
        assert_eq!(BitMatrix::zeros(0, 4).rank(), 0);
        assert_eq!(BitMatrix::zeros(4, 0).rank(), 0);
    }

    #[test]
    fn rank_matches_transpose_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let r = rng.gen_range(0..=64);
            let c = rng.gen_range(0..=64);
            let a = random_matrix(&mut rng, r, c);
            assert_eq!(a.rank(), a.transpose().rank());
        }
    }

    #[test]
    fn invert_examples() {
        assert_eq!(BitMatrix::identity(5).invert().unwrap(), BitMatrix::identity(5));
        let u = m(&["11", "01"]);
        assert_eq!(u.invert().unwrap(), u);
        assert_eq!(m(&["11", "11"]).invert(), Err(Error::Singular));
        assert!(m(&["110"]).invert().is_err());
        assert_eq!(BitMatrix::zeros(0, 0).invert().unwrap(), BitMatrix::zeros(0, 0));

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut found = 0;
        while found < 20 {
            let a = random_matrix(&mut rng, 6, 6);
            if a.rank() == 6 {
                let inv = a.invert().unwrap();
                assert_eq!(a.mul(&inv).unwrap(), BitMatrix::identity(6));
                assert_eq!(inv.mul(&a).unwrap(), BitMatrix::identity(6));
                found += 1;
            } else {
                assert_eq!(a.invert(), Err(Error::Singular));
            }
        }
    }

    #[test]
    fn mul_examples() {
        let a = m(&["101", "011"]);
        assert_eq!(a.mul(&BitMatrix::identity(3)).unwrap(), a);
        assert_eq!(m(&["11"]).mul(&m(&["1", "1"])).unwrap(), m(&["0"]));
        assert!(a.mul(&a).is_err());

        // Oracle: naive triple loop.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let x = random_matrix(&mut rng, 4, 3);
            let y = random_matrix(&mut rng, 3, 5);
            let p = x.mul(&y).unwrap();
            for i in 0..4 {
                for j in 0..5 {
                    let mut acc = false;
                    for k in 0..3 {
                        acc ^= x.get(i, k) & y.get(k, j);
                    }
                    assert_eq!(p.get(i, j), acc);
                }
            }
            assert_eq!(x.mul_transpose(&y.transpose()).unwrap(), p);
        }
    }

    #[test]
    fn solve_examples() {
        let y = BitVector::parse("1011").unwrap();
        assert_eq!(BitMatrix::identity(4).solve(&y).unwrap(), Some(y.clone()));
        let z = BitVector::zeros(3);
        assert_eq!(BitMatrix::zeros(3, 2).solve(&z).unwrap(), Some(BitVector::zeros(2)));
        assert_eq!(BitMatrix::zeros(3, 2).solve(&BitVector::parse("010").unwrap()).unwrap(), None);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut done = 0;
        while done < 20 {
            let a = random_matrix(&mut rng, 5, 10);
            if a.rank() < 5 {
                continue;
            }
            let y = BitVector::from_bools((0..5).map(|_| rng.gen()));
            let x = a.solve(&y).unwrap().expect("full row rank is always solvable");
            assert_eq!(a.mul_vec(&x).unwrap(), y);
            done += 1;
        }
    }

    #[test]
    fn solve_reports_inconsistency_iff_augmented_rank_grows() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let a = random_matrix(&mut rng, 6, 4);
            let y = BitVector::from_bools((0..6).map(|_| rng.gen()));
            let mut ycol = BitMatrix::zeros(6, 1);
            for r in 0..6 {
                ycol.set(r, 0, y.get(r));
            }
            let consistent = a.hstack(&ycol).unwrap().rank() == a.rank();
            match a.solve(&y).unwrap() {
                Some(x) => {
                    assert!(consistent);
                    assert_eq!(a.mul_vec(&x).unwrap(), y);
                }
                None => assert!(!consistent),
            }
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, 5, 12);
            let ker = a.kernel();
            assert_eq!(ker.len(), 12 - a.rank());
            for v in &ker {
                assert!(a.mul_vec(v).unwrap().is_zero());
            }
            assert_eq!(BitMatrix::from_rows(&ker, 12).unwrap().rank(), ker.len());
        }
    }

    #[test]
    fn symplectic_product_examples() {
        let x = BitVector::parse("10").unwrap();
        let z = BitVector::parse("01").unwrap();
        assert!(symplectic_product(&x, &z).unwrap());
        assert!(!symplectic_product(&x, &x).unwrap());
        let u = BitVector::parse("1001").unwrap();
        let v = BitVector::parse("0110").unwrap();
        assert!(!symplectic_product(&u, &v).unwrap());
        assert!(symplectic_product(&u, &BitVector::zeros(3)).is_err());
        assert!(symplectic_product(&BitVector::zeros(3), &BitVector::zeros(3)).is_err());
    }

    #[test]
    fn is_symmetric_examples() {
        assert!(BitMatrix::identity(3).is_symmetric().unwrap());
        assert!(!m(&["01", "00"]).is_symmetric().unwrap());
        assert!(m(&["011"]).is_symmetric().is_err());
    }

    #[test]
    fn gram_matches_pairwise_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = random_matrix(&mut rng, 7, 20);
        let g = a.symplectic_gram().unwrap();
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(g.get(i, j), symplectic_product(&a.row(i), &a.row(j)).unwrap());
            }
        }
    }

    #[test]
    fn tail_bits_stay_clear() {
        let v = BitVector::from_words(3, vec![u64::MAX]);
        assert_eq!(v.weight(), 3);
        let mut a = BitMatrix::zeros(2, 65);
        a.set(0, 64, true);
        a.add_col(64, 0).unwrap();
        assert_eq!(a.row(0).weight(), 2);
        assert_eq!(a.transpose().transpose(), a);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn bitvec(len: usize) -> impl Strategy<Value = BitVector> {
            proptest::collection::vec(any::<bool>(), len).prop_map(BitVector::from_bools)
        }

        proptest! {
            #[test]
            fn symplectic_form_is_alternating_and_bilinear(
                (u, v, w) in (1usize..40).prop_flat_map(|n| (bitvec(2 * n), bitvec(2 * n), bitvec(2 * n)))
            ) {
                prop_assert!(!symplectic_product(&u, &u).unwrap());
                let lhs = symplectic_product(&u.xor(&w), &v).unwrap();
                let rhs = symplectic_product(&u, &v).unwrap() ^ symplectic_product(&w, &v).unwrap();
                prop_assert_eq!(lhs, rhs);
                prop_assert_eq!(symplectic_product(&u, &v).unwrap(), symplectic_product(&v, &u).unwrap());
            }
        }
    }
}
