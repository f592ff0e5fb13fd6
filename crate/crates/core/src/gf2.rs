//! Dense linear algebra over GF(2) and circulant expansion of model matrices.
//!
//! Rows are bit-packed into `u64` words, least significant bit first. Bits past
//! the logical column count are kept at zero so word-level XOR, AND and popcount
//! can be used without masking on every operation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Build from a slice of 0/1 values.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    /// Vector with ones exactly at `support`.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = BitVector::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        let mut v = BitVector { len, words };
        v.clear_tail();
        v
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
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
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the bitwise AND, i.e. the GF(2) dot product.
    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        debug_assert_eq!(self.len, other.len);
        BitVector {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    /// Concatenate `self` followed by `other`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut v = BitVector::zeros(self.len + other.len);
        for i in self.ones() {
            v.set(i, true);
        }
        for i in other.ones() {
            v.set(self.len + i, true);
        }
        v
    }

    /// Copy of bits `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        assert!(start + len <= self.len);
        let mut v = BitVector::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, ")")
    }
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BinaryMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BinaryMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// The all-ones matrix `J`.
    pub fn all_ones(rows: usize, cols: usize) -> Self {
        BinaryMatrix::from_fn(rows, cols, |_, _| true)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BinaryMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Build from rows of 0/1 values; every row must have the same length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = BinaryMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (c, &b) in row.iter().enumerate() {
                if b > 1 {
                    return Err(invalid(format!("entry {b} at ({r},{c}) is not a bit")));
                }
                if b == 1 {
                    m.set(r, c, true);
                }
            }
        }
        Ok(m)
    }

    pub fn from_row_vectors(cols: usize, rows: &[BitVector]) -> Result<Self> {
        let mut m = BinaryMatrix::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            if v.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: v.len(),
                });
            }
            m.row_words_mut(r).copy_from_slice(v.words());
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
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
        self.data[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    #[inline]
    pub(crate) fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn column(&self, c: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    /// Column indices of the ones in row `r`.
    pub fn row_support(&self, r: usize) -> Vec<usize> {
        self.row(r).ones().collect()
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn column_weight(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    fn xor_row_from(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        let s = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = BinaryMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Entrywise sum (XOR).
    pub fn add(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op: "add",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        Ok(out)
    }

    /// Matrix product over GF(2).
    pub fn matmul(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = BinaryMatrix::zeros(self.rows, other.cols);
        let s = out.stride;
        for r in 0..self.rows {
            let dst = &mut out.data[r * s..(r + 1) * s];
            for k in self.row(r).ones() {
                for (d, x) in dst.iter_mut().zip(other.row_words(k)) {
                    *d ^= x;
                }
            }
        }
        Ok(out)
    }

    /// `self · otherᵀ`, computed row-against-row without materialising the transpose.
    pub fn mul_transpose(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "mul_transpose",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = BinaryMatrix::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            let a = self.row_words(i);
            for j in 0..other.rows {
                let parity = a
                    .iter()
                    .zip(other.row_words(j))
                    .fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones());
                if parity & 1 == 1 {
                    out.set(i, j, true);
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self
                .row_words(r)
                .iter()
                .zip(v.words())
                .fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones());
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = BinaryMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                out.set(r, c, true);
            }
            for c in other.row(r).ones() {
                out.set(r, self.cols + c, true);
            }
        }
        Ok(out)
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "vstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(BinaryMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        })
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_range(&self, start: usize, end: usize) -> BinaryMatrix {
        assert!(start <= end && end <= self.rows);
        BinaryMatrix {
            rows: end - start,
            cols: self.cols,
            stride: self.stride,
            data: self.data[start * self.stride..end * self.stride].to_vec(),
        }
    }

    /// Columns `start..end` as a new matrix.
    pub fn col_range(&self, start: usize, end: usize) -> BinaryMatrix {
        assert!(start <= end && end <= self.cols);
        BinaryMatrix::from_fn(self.rows, end - start, |r, c| self.get(r, start + c))
    }

    /// Submatrix of `p × p` block `(bi, bj)`.
    pub fn block(&self, bi: usize, bj: usize, p: usize) -> BinaryMatrix {
        BinaryMatrix::from_fn(p, p, |r, c| self.get(bi * p + r, bj * p + c))
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == m.rows {
                break;
            }
            let Some(pivot) = (rank..m.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            for r in rank + 1..m.rows {
                if m.get(r, c) {
                    m.xor_row_from(r, rank);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the right null space `{v : self · v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<BitVector> {
        let space = RowSpace::new(self);
        let pivots = space.pivots();
        let mut is_pivot = vec![false; self.cols];
        for &p in pivots {
            is_pivot[p] = true;
        }
        let basis = space.basis();
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::zeros(self.cols);
                v.set(free, true);
                for (i, &p) in pivots.iter().enumerate() {
                    if basis.get(i, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Rows as text, one line per row, characters '0' and '1'.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            for c in 0..self.cols {
                s.push(if self.get(r, c) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<BinaryMatrix> {
        let rows: Vec<Vec<u8>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.chars()
                    .map(|ch| match ch {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        other => Err(invalid(format!("unexpected character {other:?}"))),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<_>>()?;
        BinaryMatrix::from_rows(&rows)
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.to_text())
    }
}

/// Reduced row-echelon form of a row space, kept for repeated membership tests.
///
/// When built with [`RowSpace::with_combinations`], every basis row also records
/// which original rows it is the sum of, so a member vector can be expressed in
/// terms of the original generators.
#[derive(Clone, Debug)]
pub struct RowSpace {
    basis: BinaryMatrix,
    pivots: Vec<usize>,
    combos: Option<Vec<BitVector>>,
}

impl RowSpace {
    pub fn new(m: &BinaryMatrix) -> Self {
        Self::build(m, false)
    }

    pub fn with_combinations(m: &BinaryMatrix) -> Self {
        Self::build(m, true)
    }

    fn build(m: &BinaryMatrix, track: bool) -> Self {
        let mut work = m.clone();
        let mut combos: Option<Vec<BitVector>> = track.then(|| {
            (0..m.rows)
                .map(|r| BitVector::from_support(m.rows, &[r]))
                .collect()
        });
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == work.rows {
                break;
            }
            let Some(p) = (rank..work.rows).find(|&r| work.get(r, c)) else {
                continue;
            };
            work.swap_rows(rank, p);
            if let Some(cs) = combos.as_mut() {
                cs.swap(rank, p);
            }
            for r in 0..work.rows {
                if r != rank && work.get(r, c) {
                    work.xor_row_from(r, rank);
                    if let Some(cs) = combos.as_mut() {
                        let src = cs[rank].clone();
                        cs[r].xor_assign(&src);
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        let basis = work.row_range(0, rank);
        if let Some(cs) = combos.as_mut() {
            cs.truncate(rank);
        }
        RowSpace {
            basis,
            pivots,
            combos,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The reduced basis rows.
    pub fn basis(&self) -> &BinaryMatrix {
        &self.basis
    }

    pub fn cols(&self) -> usize {
        self.basis.cols()
    }

    /// Reduce `v` in place against the basis; returns true iff it reduced to zero.
    pub fn reduce(&self, v: &mut BitVector) -> bool {
        for (i, &p) in self.pivots.iter().enumerate() {
            if v.get(p) {
                for (a, b) in v.words.iter_mut().zip(self.basis.row_words(i)) {
                    *a ^= b;
                }
            }
        }
        v.is_zero()
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        if v.len() != self.cols() {
            return Err(Error::LengthMismatch {
                expected: self.cols(),
                found: v.len(),
            });
        }
        let mut w = v.clone();
        Ok(self.reduce(&mut w))
    }

    /// Express `v` as a sum of the ORIGINAL rows. `None` if `v` is not in the span
    /// or the space was built without combination tracking.
    pub fn combination(&self, v: &BitVector) -> Option<BitVector> {
        let combos = self.combos.as_ref()?;
        if v.len() != self.cols() {
            return None;
        }
        let mut w = v.clone();
        let mut out = BitVector::zeros(combos.first().map_or(0, BitVector::len));
        if combos.is_empty() {
            return w.is_zero().then_some(out);
        }
        for (i, &p) in self.pivots.iter().enumerate() {
            if w.get(p) {
                for (a, b) in w.words.iter_mut().zip(self.basis.row_words(i)) {
                    *a ^= b;
                }
                out.xor_assign(&combos[i]);
            }
        }
        w.is_zero().then_some(out)
    }
}

/// GF(2) rank.
pub fn gfrank(a: &BinaryMatrix) -> usize {
    a.rank()
}

/// Matrix product over GF(2).
pub fn matmul(a: &BinaryMatrix, b: &BinaryMatrix) -> Result<BinaryMatrix> {
    a.matmul(b)
}

/// True iff `v` lies in the GF(2) row space of `basis`.
pub fn rowspace_member(basis: &BinaryMatrix, v: &BitVector) -> Result<bool> {
    if v.len() != basis.cols() {
        return Err(Error::LengthMismatch {
            expected: basis.cols(),
            found: v.len(),
        });
    }
    RowSpace::new(basis).contains(v)
}

/// Exponent grid of a quasi-cyclic parity-check matrix over `Z_order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelMatrix {
    order: u64,
    exponents: Vec<Vec<u64>>,
}

impl ModelMatrix {
    pub fn new(order: u64, exponents: Vec<Vec<u64>>) -> Result<Self> {
        if order == 0 {
            return Err(invalid("circulant order must be positive"));
        }
        let width = exponents.first().map_or(0, Vec::len);
        for (i, row) in exponents.iter().enumerate() {
            if row.len() != width {
                return Err(invalid(format!(
                    "model row {i} has {} entries, expected {width}",
                    row.len()
                )));
            }
            if let Some(&e) = row.iter().find(|&&e| e >= order) {
                return Err(invalid(format!("exponent {e} not in Z_{order}")));
            }
        }
        Ok(ModelMatrix { order, exponents })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn block_rows(&self) -> usize {
        self.exponents.len()
    }

    pub fn block_cols(&self) -> usize {
        self.exponents.first().map_or(0, Vec::len)
    }

    #[inline]
    pub fn exponent(&self, i: usize, j: usize) -> u64 {
        self.exponents[i][j]
    }

    pub fn exponents(&self) -> &[Vec<u64>] {
        &self.exponents
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.exponents[i]
    }

    /// Model built from the selected block rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<ModelMatrix> {
        let picked = rows
            .iter()
            .map(|&r| {
                self.exponents
                    .get(r)
                    .cloned()
                    .ok_or_else(|| invalid(format!("block row {r} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        ModelMatrix::new(self.order, picked)
    }

    /// Replace every exponent by its right-circulant permutation block.
    pub fn expand(&self) -> BinaryMatrix {
        expand(self)
    }
}

/// Expand a model matrix: exponent `e` at block `(i, j)` becomes `P^e`, where
/// `P^e(u, v) = 1` iff `v ≡ u + e (mod order)`.
pub fn expand(m: &ModelMatrix) -> BinaryMatrix {
    let n = usize::try_from(m.order).expect("circulant order fits in usize");
    let mut h = BinaryMatrix::zeros(m.block_rows() * n, m.block_cols() * n);
    for (i, row) in m.exponents.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            let e = e as usize;
            for u in 0..n {
                h.set(i * n + u, j * n + (u + e) % n, true);
            }
        }
    }
    h
}

/// The `n × n` right-circulant permutation matrix raised to `power`.
pub fn circulant(n: usize, power: u64) -> BinaryMatrix {
    let shift = (power % n as u64) as usize;
    BinaryMatrix::from_fn(n, n, |u, v| v == (u + shift) % n)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Span enumeration: rank is log2 of the number of distinct combinations.
    fn brute_rank(m: &BinaryMatrix) -> usize {
        let rows: Vec<BitVector> = (0..m.rows()).map(|r| m.row(r)).collect();
        let mut span = std::collections::HashSet::new();
        for mask in 0u32..(1 << rows.len()) {
            let mut v = BitVector::zeros(m.cols());
            for (i, row) in rows.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    v.xor_assign(row);
                }
            }
            span.insert(v);
        }
        span.len().trailing_zeros() as usize
    }

    #[test]
    fn expand_order_one_is_scalar_one() {
        let m = ModelMatrix::new(1, vec![vec![0]]).unwrap();
        assert_eq!(m.expand(), BinaryMatrix::identity(1));
    }

    #[test]
    fn expand_row_of_three_circulants() {
        let m = ModelMatrix::new(3, vec![vec![0, 1, 2]]).unwrap();
        let h = m.expand();
        let expected = BinaryMatrix::from_rows(&[
            [1, 0, 0, 0, 1, 0, 0, 0, 1],
            [0, 1, 0, 0, 0, 1, 1, 0, 0],
            [0, 0, 1, 1, 0, 0, 0, 1, 0],
        ])
        .unwrap();
        assert_eq!(h, expected);
    }

    #[test]
    fn blocks_are_permutations() {
        let m = ModelMatrix::new(7, vec![vec![0, 3, 6], vec![2, 5, 1]]).unwrap();
        let h = m.expand();
        for r in 0..h.rows() {
            assert_eq!(h.row_weight(r), 3);
        }
        for c in 0..h.cols() {
            assert_eq!(h.column_weight(c), 2);
        }
    }

    #[test]
    fn rejects_out_of_range_exponent() {
        assert!(ModelMatrix::new(3, vec![vec![0, 3]]).is_err());
        assert!(ModelMatrix::new(0, vec![vec![0]]).is_err());
        assert!(ModelMatrix::new(3, vec![vec![0, 1], vec![0]]).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(gfrank(&BinaryMatrix::identity(7)), 7);
        let j3_i3 = BinaryMatrix::all_ones(3, 3)
            .add(&BinaryMatrix::identity(3))
            .unwrap();
        assert_eq!(gfrank(&j3_i3), 2);
        assert_eq!(gfrank(&BinaryMatrix::all_ones(5, 5)), 1);
        assert_eq!(gfrank(&BinaryMatrix::zeros(4, 6)), 0);
    }

    #[test]
    fn product_of_circulant_rows_is_all_ones() {
        let a = ModelMatrix::new(3, vec![vec![0, 1, 2]]).unwrap().expand();
        let b = ModelMatrix::new(3, vec![vec![0, 2, 1]]).unwrap().expand();
        let prod = matmul(&a, &b.transpose()).unwrap();
        assert_eq!(prod, BinaryMatrix::all_ones(3, 3));
        assert_eq!(a.mul_transpose(&b).unwrap(), prod);
    }

    #[test]
    fn identity_is_neutral() {
        let a = BinaryMatrix::from_fn(5, 9, |r, c| (r * 7 + c * 3) % 4 == 1);
        assert_eq!(matmul(&BinaryMatrix::identity(5), &a).unwrap(), a);
    }

    #[test]
    fn matmul_dimension_mismatch() {
        let a = BinaryMatrix::zeros(2, 3);
        let b = BinaryMatrix::zeros(2, 3);
        assert!(matches!(
            matmul(&a, &b),
            Err(Error::DimensionMismatch { op: "matmul", .. })
        ));
    }

    #[test]
    fn rowspace_membership() {
        let even = BinaryMatrix::from_rows(&[[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]]).unwrap();
        assert!(rowspace_member(&even, &BitVector::zeros(4)).unwrap());
        assert!(rowspace_member(&even, &even.row(1)).unwrap());
        assert!(rowspace_member(&even, &BitVector::from_bits(&[1, 0, 0, 1])).unwrap());
        assert!(!rowspace_member(&even, &BitVector::from_bits(&[1, 0, 0, 0])).unwrap());
        assert!(rowspace_member(&even, &BitVector::zeros(3)).is_err());
    }

    #[test]
    fn combination_reconstructs_vector() {
        let m = BinaryMatrix::from_rows(&[[1, 1, 0, 1], [0, 1, 1, 0], [1, 0, 1, 1]]).unwrap();
        let space = RowSpace::with_combinations(&m);
        assert_eq!(space.rank(), 2);
        let target = m.row(0);
        let combo = space.combination(&target).unwrap();
        let mut sum = BitVector::zeros(4);
        for r in combo.ones() {
            sum.xor_assign(&m.row(r));
        }
        assert_eq!(sum, target);
        assert!(space.combination(&BitVector::from_bits(&[1, 0, 0, 0])).is_none());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = BinaryMatrix::from_fn(6, 11, |r, c| (r * 5 + c * c) % 3 == 0);
        let kernel = m.nullspace();
        assert_eq!(kernel.len(), 11 - m.rank());
        for v in &kernel {
            assert!(m.mul_vec(v).unwrap().is_zero());
        }
    }

    #[test]
    fn text_format_roundtrip() {
        let m = BinaryMatrix::from_rows(&[[1, 0, 1], [0, 1, 1]]).unwrap();
        assert_eq!(m.to_text(), "101\n011\n");
        assert_eq!(BinaryMatrix::from_text(&m.to_text()).unwrap(), m);
        assert!(BinaryMatrix::from_text("10\n2\n").is_err());
    }

    #[test]
    fn circulant_inner_products_over_integers() {
        // Integer inner products of distinct expanded rows of the i*j model.
        for p in [3u64, 5, 7] {
            let h = crate::models::special_prime_model(p).unwrap().expand();
            let pu = p as usize;
            for a in 0..h.rows() {
                for b in 0..h.rows() {
                    let ip = h.row(a).and(&h.row(b)).weight();
                    let (ka, ia) = (a / pu, a % pu);
                    let (kb, ib) = (b / pu, b % pu);
                    let expected = if ka == kb && ia == ib {
                        pu
                    } else if ka == kb {
                        0
                    } else {
                        1
                    };
                    assert_eq!(ip, expected, "p={p} rows {a},{b}");
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = BinaryMatrix> {
            (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| {
                proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
                    BinaryMatrix::from_fn(r, c, |i, j| bits[i * c + j])
                })
            })
        }

        proptest! {
            #[test]
            fn rank_matches_span_enumeration(m in matrix(12, 12)) {
                prop_assert_eq!(m.rank(), brute_rank(&m));
            }

            #[test]
            fn rank_of_transpose(m in matrix(20, 70)) {
                prop_assert_eq!(m.rank(), m.transpose().rank());
            }

            #[test]
            fn expand_is_injective(order in 1u64..9, a in proptest::collection::vec(0u64..64, 6), b in proptest::collection::vec(0u64..64, 6)) {
                let ma = ModelMatrix::new(order, vec![a[..3].iter().map(|e| e % order).collect(), a[3..].iter().map(|e| e % order).collect()]).unwrap();
                let mb = ModelMatrix::new(order, vec![b[..3].iter().map(|e| e % order).collect(), b[3..].iter().map(|e| e % order).collect()]).unwrap();
                prop_assert_eq!(ma == mb, ma.expand() == mb.expand());
            }

            #[test]
            fn mul_transpose_agrees_with_matmul(a in matrix(8, 70), seed in any::<u64>()) {
                let b = BinaryMatrix::from_fn(5, a.cols(), |r, c| (seed >> ((r * 13 + c) % 64)) & 1 == 1);
                prop_assert_eq!(a.mul_transpose(&b).unwrap(), a.matmul(&b.transpose()).unwrap());
            }
        }
    }
}
