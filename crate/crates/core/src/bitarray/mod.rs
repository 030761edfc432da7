//! Bit-packed multidimensional boolean arrays over GF(2).
//!
//! The last axis is the bit axis (the qubit axis for Pauli strings). Each row
//! along it is packed little-endian into 64-bit words: bit `q` of a row lives
//! in word `q / 64` at position `q % 64`. Bits past the last-axis extent are
//! always zero, which lets inner products run on whole words with popcount.

mod gf2;
pub mod shape;

use ndarray::{ArrayD, IxDyn};
use rand::Rng;

use crate::error::{PauliError, Result};
pub use shape::{broadcast_shapes, numel, ArrayLike};
use shape::for_each_broadcast;

pub(crate) const WORD_BITS: usize = 64;

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Mask of the valid bits in the last word of a row of `bits` bits.
pub(crate) fn tail_mask(bits: usize) -> u64 {
    match bits % WORD_BITS {
        0 => !0,
        r => (1u64 << r) - 1,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitArray {
    shape: Vec<usize>,
    words: usize,
    data: Vec<u64>,
}

impl BitArray {
    /// All-zero array. `shape` must have at least one axis (the bit axis).
    pub fn zeros(shape: &[usize]) -> Self {
        assert!(!shape.is_empty(), "bit arrays need a last (bit) axis");
        let words = words_for(*shape.last().unwrap());
        let rows = numel(&shape[..shape.len() - 1]);
        BitArray {
            shape: shape.to_vec(),
            words,
            data: vec![0; rows * words],
        }
    }

    /// Builds an array from `product(shape)` booleans in row-major order.
    pub fn from_bools(shape: &[usize], bits: &[bool]) -> Result<Self> {
        let expected = numel(shape);
        if bits.len() != expected {
            return Err(PauliError::ElementCount {
                expected,
                found: bits.len(),
            });
        }
        let mut out = Self::zeros(shape);
        let n = out.num_bits();
        if n > 0 {
            for (r, row) in bits.chunks(n).enumerate() {
                for (q, &b) in row.iter().enumerate() {
                    if b {
                        out.set(r, q, true);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn from_fn(shape: &[usize], mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut out = Self::zeros(shape);
        for r in 0..out.num_rows() {
            for q in 0..out.num_bits() {
                if f(r, q) {
                    out.set(r, q, true);
                }
            }
        }
        out
    }

    /// Uniformly random bits.
    pub fn random<R: Rng + ?Sized>(shape: &[usize], rng: &mut R) -> Self {
        let mut out = Self::zeros(shape);
        let mask = tail_mask(out.num_bits());
        let words = out.words;
        for (i, w) in out.data.iter_mut().enumerate() {
            *w = rng.random::<u64>();
            if i % words == words - 1 {
                *w &= mask;
            }
        }
        out
    }

    pub(crate) fn from_raw(shape: Vec<usize>, data: Vec<u64>) -> Self {
        let words = words_for(*shape.last().unwrap());
        debug_assert_eq!(data.len(), numel(&shape[..shape.len() - 1]) * words);
        BitArray { shape, words, data }
    }

    /// Full shape, bit axis included.
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    /// Shape without the bit axis.
    pub fn leading_shape(&self) -> &[usize] {
        &self.shape[..self.shape.len() - 1]
    }

    /// Extent of the bit axis.
    pub fn num_bits(&self) -> usize {
        *self.shape.last().unwrap()
    }

    /// Number of rows along the bit axis.
    pub fn num_rows(&self) -> usize {
        numel(self.leading_shape())
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    /// Raw packed storage, row-major with `words_per_row` words per row.
    pub fn words(&self) -> &[u64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub(crate) fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.words..(r + 1) * self.words]
    }

    pub(crate) fn data_mut(&mut self) -> &mut [u64] {
        &mut self.data
    }

    pub fn bit(&self, r: usize, q: usize) -> bool {
        (self.data[r * self.words + q / WORD_BITS] >> (q % WORD_BITS)) & 1 == 1
    }

    pub(crate) fn set(&mut self, r: usize, q: usize, value: bool) {
        let w = &mut self.data[r * self.words + q / WORD_BITS];
        let m = 1u64 << (q % WORD_BITS);
        if value {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    /// Element at a full multi-index (bit axis last).
    pub fn get(&self, index: &[usize]) -> Result<bool> {
        if index.len() != self.shape.len() {
            return Err(PauliError::Dimension(format!(
                "index of length {} for shape {:?}",
                index.len(),
                self.shape
            )));
        }
        let mut r = 0;
        for (k, (&i, &e)) in index.iter().zip(&self.shape).enumerate() {
            if i >= e {
                return Err(PauliError::IndexOutOfBounds { index: i, len: e });
            }
            if k + 1 < index.len() {
                r = r * e + i;
            }
        }
        Ok(self.bit(r, *index.last().unwrap()))
    }

    pub fn to_bools(&self) -> Vec<bool> {
        let n = self.num_bits();
        (0..self.num_rows())
            .flat_map(|r| (0..n).map(move |q| (r, q)))
            .map(|(r, q)| self.bit(r, q))
            .collect()
    }

    /// True when every padding bit is zero.
    pub fn padding_is_clean(&self) -> bool {
        if self.words == 0 {
            return true;
        }
        let mask = tail_mask(self.num_bits());
        (0..self.num_rows()).all(|r| self.row(r)[self.words - 1] & !mask == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row(r).iter().all(|&w| w == 0)
    }

    fn check_last_axis(&self, other: &BitArray) -> Result<()> {
        if self.num_bits() != other.num_bits() {
            return Err(PauliError::LastAxisMismatch(self.num_bits(), other.num_bits()));
        }
        Ok(())
    }

    /// Word-wise binary operation with broadcasting over the leading axes.
    pub(crate) fn zip_words(&self, other: &BitArray, f: impl Fn(u64, u64) -> u64) -> Result<BitArray> {
        self.check_last_axis(other)?;
        let words = self.words;
        let mut data = Vec::new();
        let lead = for_each_broadcast(self.leading_shape(), other.leading_shape(), |a, b| {
            let (ra, rb) = (self.row(a), other.row(b));
            data.extend(ra.iter().zip(rb).map(|(&x, &y)| f(x, y)));
        })?;
        debug_assert_eq!(data.len(), numel(&lead) * words);
        let mut shape = lead;
        shape.push(self.num_bits());
        Ok(BitArray::from_raw(shape, data))
    }

    /// Element-wise sum mod 2.
    pub fn xor(&self, other: &BitArray) -> Result<BitArray> {
        self.zip_words(other, |a, b| a ^ b)
    }

    /// Element-wise product mod 2.
    pub fn and(&self, other: &BitArray) -> Result<BitArray> {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn or(&self, other: &BitArray) -> Result<BitArray> {
        self.zip_words(other, |a, b| a | b)
    }

    fn reduce_rows(&self, other: &BitArray, f: impl Fn(u32) -> u8) -> Result<ArrayD<u8>> {
        self.check_last_axis(other)?;
        let mut out = Vec::new();
        let lead = for_each_broadcast(self.leading_shape(), other.leading_shape(), |a, b| {
            out.push(f(and_popcount(self.row(a), other.row(b))));
        })?;
        Ok(ArrayD::from_shape_vec(IxDyn(&lead), out).expect("shape matches"))
    }

    /// Inner product over the bit axis, mod 2. The result drops the bit axis.
    pub fn dot_mod2(&self, other: &BitArray) -> Result<ArrayD<u8>> {
        self.reduce_rows(other, |c| (c & 1) as u8)
    }

    /// `weight` times the inner product over the bit axis, mod 4.
    pub fn dot_mod4_weighted(&self, other: &BitArray, weight: u8) -> Result<ArrayD<u8>> {
        self.reduce_rows(other, |c| ((c as u64 * weight as u64) % 4) as u8)
    }

    /// Concatenates along the bit axis: bits of `low` first, then `high`.
    /// Leading shapes broadcast.
    pub fn concat_bits(high: &BitArray, low: &BitArray) -> Result<BitArray> {
        let (nl, nh) = (low.num_bits(), high.num_bits());
        let n = nl + nh;
        let words = words_for(n);
        let mut data = Vec::new();
        let lead = for_each_broadcast(high.leading_shape(), low.leading_shape(), |h, l| {
            let start = data.len();
            data.resize(start + words, 0);
            let row = &mut data[start..];
            row[..low.words].copy_from_slice(low.row(l));
            or_shifted(row, high.row(h), nl);
        })?;
        let mut shape = lead;
        shape.push(n);
        Ok(BitArray::from_raw(shape, data))
    }

    /// Stacks the rows of several arrays with equal bit extent into one
    /// 2-d array (leading axes flattened).
    pub fn concat_rows(parts: &[&BitArray], num_bits: usize) -> Result<BitArray> {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            if p.num_bits() != num_bits {
                return Err(PauliError::LastAxisMismatch(num_bits, p.num_bits()));
            }
            data.extend_from_slice(&p.data);
            rows += p.num_rows();
        }
        Ok(BitArray::from_raw(vec![rows, num_bits], data))
    }

    /// Keeps bit positions `start..start + len` of every row.
    pub fn bit_range(&self, start: usize, len: usize) -> Result<BitArray> {
        if start + len > self.num_bits() {
            return Err(PauliError::IndexOutOfBounds {
                index: start + len,
                len: self.num_bits(),
            });
        }
        let mut shape = self.shape.clone();
        *shape.last_mut().unwrap() = len;
        Ok(BitArray::from_fn(&shape, |r, q| self.bit(r, start + q)))
    }
}

/// Number of positions where both rows have a set bit.
#[inline]
pub(crate) fn and_popcount(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

/// ORs `src` into `dst` shifted up by `offset` bits; bits past `dst` are dropped.
fn or_shifted(dst: &mut [u64], src: &[u64], offset: usize) {
    let (wo, bo) = (offset / WORD_BITS, offset % WORD_BITS);
    for (i, &w) in src.iter().enumerate() {
        if w == 0 {
            continue;
        }
        if let Some(d) = dst.get_mut(i + wo) {
            *d |= w << bo;
        }
        if bo != 0 {
            if let Some(d) = dst.get_mut(i + wo + 1) {
                *d |= w >> (WORD_BITS - bo);
            }
        }
    }
}

impl ArrayLike for BitArray {
    fn array_shape(&self) -> &[usize] {
        self.leading_shape()
    }

    fn gather(&self, mut shape: Vec<usize>, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.words);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        shape.push(self.num_bits());
        BitArray::from_raw(shape, data)
    }

    fn with_shape(&self, mut shape: Vec<usize>) -> Self {
        shape.push(self.num_bits());
        BitArray::from_raw(shape, self.data.clone())
    }
}
