//! Multidimensional arrays of Pauli strings in the symplectic `(z, x)` form.
//!
//! A string with bit vectors `z` and `x` stands for `(-i)^{z·x} Z^z X^x`, so
//! `(0,0)=I`, `(1,0)=Z`, `(0,1)=X`, `(1,1)=Y` on each qubit. Labels are
//! little-endian: the rightmost character addresses qubit 0.

mod clifford;

use std::collections::HashMap;

use ndarray::{ArrayD, IxDyn};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bitarray::shape::for_each_broadcast;
use crate::bitarray::{and_popcount, numel, words_for, ArrayLike, BitArray};
use crate::error::{PauliError, Result};
pub use clifford::CliffordGate;

/// Exponents `k` of `(-i)^k`, each in `0..4`.
pub type PhaseArray = ArrayD<u8>;
/// `+1` / `-1` factors produced by Clifford conjugation.
pub type SignArray = ArrayD<i8>;

/// `(-i)^k` as a complex number.
pub fn phase_value(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliArray {
    z: BitArray,
    x: BitArray,
}

impl PauliArray {
    pub fn new(z: BitArray, x: BitArray) -> Result<Self> {
        if z.shape() != x.shape() {
            return Err(PauliError::Dimension(format!(
                "z shape {:?} differs from x shape {:?}",
                z.shape(),
                x.shape()
            )));
        }
        Ok(PauliArray { z, x })
    }

    pub fn identities(shape: &[usize], num_qubits: usize) -> Self {
        let mut full = shape.to_vec();
        full.push(num_qubits);
        PauliArray {
            z: BitArray::zeros(&full),
            x: BitArray::zeros(&full),
        }
    }

    /// Uniformly random strings, reproducible for a given seed.
    pub fn random(shape: &[usize], num_qubits: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(shape, num_qubits, &mut rng)
    }

    pub fn random_with<R: rand::Rng + ?Sized>(shape: &[usize], num_qubits: usize, rng: &mut R) -> Self {
        let mut full = shape.to_vec();
        full.push(num_qubits);
        let z = BitArray::random(&full, rng);
        let x = BitArray::random(&full, rng);
        PauliArray { z, x }
    }

    /// One-dimensional array from labels of equal length.
    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let n = labels.first().map_or(0, |l| l.as_ref().chars().count());
        Self::from_labels_with(n, labels)
    }

    /// Like [`PauliArray::from_labels`] with an explicit qubit count, so an
    /// empty list still has a width.
    pub fn from_labels_with<S: AsRef<str>>(num_qubits: usize, labels: &[S]) -> Result<Self> {
        let shape = [labels.len(), num_qubits];
        let mut z = BitArray::zeros(&shape);
        let mut x = BitArray::zeros(&shape);
        for (r, label) in labels.iter().enumerate() {
            let label = label.as_ref();
            let found = label.chars().count();
            if found != num_qubits {
                return Err(PauliError::InconsistentLabels {
                    expected: num_qubits,
                    found,
                });
            }
            for (k, c) in label.chars().enumerate() {
                let q = num_qubits - 1 - k;
                let (zb, xb) = match c {
                    'I' => (false, false),
                    'Z' => (true, false),
                    'X' => (false, true),
                    'Y' => (true, true),
                    other => return Err(PauliError::InvalidLabelChar(other)),
                };
                z.set(r, q, zb);
                x.set(r, q, xb);
            }
        }
        Ok(PauliArray { z, x })
    }

    /// Zero-dimensional array holding a single string.
    pub fn from_label(label: &str) -> Result<Self> {
        Ok(Self::from_labels(&[label])?.with_shape(vec![]))
    }

    pub fn z(&self) -> &BitArray {
        &self.z
    }

    pub fn x(&self) -> &BitArray {
        &self.x
    }

    pub fn shape(&self) -> &[usize] {
        self.z.leading_shape()
    }

    pub fn num_qubits(&self) -> usize {
        self.z.num_bits()
    }

    /// Label of the element at flat index `r`.
    pub fn label(&self, r: usize) -> String {
        let n = self.num_qubits();
        (0..n)
            .rev()
            .map(|q| match (self.z.bit(r, q), self.x.bit(r, q)) {
                (false, false) => 'I',
                (true, false) => 'Z',
                (false, true) => 'X',
                (true, true) => 'Y',
            })
            .collect()
    }

    /// Labels in row-major order.
    pub fn labels(&self) -> Vec<String> {
        (0..self.size()).map(|r| self.label(r)).collect()
    }

    pub fn to_labels(&self) -> ArrayD<String> {
        ArrayD::from_shape_vec(IxDyn(self.shape()), self.labels()).expect("shape matches")
    }

    /// Key identifying the string at flat index `r` (its packed bits).
    pub(crate) fn row_key(&self, r: usize) -> Vec<u64> {
        let mut key = self.z.row(r).to_vec();
        key.extend_from_slice(self.x.row(r));
        key
    }

    /// True where the string has only `I` and `Z` factors.
    pub fn is_diagonal(&self) -> ArrayD<bool> {
        let v = (0..self.size()).map(|r| self.x.row_is_zero(r)).collect();
        ArrayD::from_shape_vec(IxDyn(self.shape()), v).expect("shape matches")
    }

    pub fn is_identity(&self) -> ArrayD<bool> {
        let v = (0..self.size())
            .map(|r| self.x.row_is_zero(r) && self.z.row_is_zero(r))
            .collect();
        ArrayD::from_shape_vec(IxDyn(self.shape()), v).expect("shape matches")
    }

    fn check_qubits(&self, other: &PauliArray) -> Result<()> {
        if self.num_qubits() != other.num_qubits() {
            return Err(PauliError::QubitMismatch(self.num_qubits(), other.num_qubits()));
        }
        Ok(())
    }

    /// Element-wise product `P1 P2 = (-i)^f P3` with broadcasting; returns
    /// `P3` and the phase exponents `f`.
    pub fn compose(&self, other: &PauliArray) -> Result<(PauliArray, PhaseArray)> {
        self.check_qubits(other)?;
        let n = self.num_qubits();
        let (mut zd, mut xd, mut phases) = (Vec::new(), Vec::new(), Vec::new());
        let lead = for_each_broadcast(self.shape(), other.shape(), |a, b| {
            phases.push(compose_rows(
                [self.z.row(a), self.x.row(a), other.z.row(b), other.x.row(b)],
                &mut zd,
                &mut xd,
            ));
        })?;
        let phases = ArrayD::from_shape_vec(IxDyn(&lead), phases).expect("shape matches");
        let mut shape = lead;
        shape.push(n);
        let out = PauliArray {
            z: BitArray::from_raw(shape.clone(), zd),
            x: BitArray::from_raw(shape, xd),
        };
        Ok((out, phases))
    }

    /// Composes `self[ia[k]]` with `other[ib[k]]` for every `k` (flat
    /// indices); returns a 1-d array and the phase exponents.
    pub(crate) fn compose_indexed(
        &self,
        ia: &[usize],
        other: &PauliArray,
        ib: &[usize],
    ) -> Result<(PauliArray, Vec<u8>)> {
        self.check_qubits(other)?;
        debug_assert_eq!(ia.len(), ib.len());
        let n = self.num_qubits();
        let words = words_for(n);
        let (mut zd, mut xd) = (Vec::with_capacity(ia.len() * words), Vec::with_capacity(ia.len() * words));
        let phases = ia
            .iter()
            .zip(ib)
            .map(|(&a, &b)| {
                compose_rows(
                    [self.z.row(a), self.x.row(a), other.z.row(b), other.x.row(b)],
                    &mut zd,
                    &mut xd,
                )
            })
            .collect();
        let shape = vec![ia.len(), n];
        let out = PauliArray {
            z: BitArray::from_raw(shape.clone(), zd),
            x: BitArray::from_raw(shape, xd),
        };
        Ok((out, phases))
    }

    /// Concatenates flattened arrays into one 1-d array.
    pub fn concat(parts: &[&PauliArray], num_qubits: usize) -> Result<PauliArray> {
        let z: Vec<&BitArray> = parts.iter().map(|p| &p.z).collect();
        let x: Vec<&BitArray> = parts.iter().map(|p| &p.x).collect();
        Ok(PauliArray {
            z: BitArray::concat_rows(&z, num_qubits)?,
            x: BitArray::concat_rows(&x, num_qubits)?,
        })
    }

    /// Element-wise `z1·x2 + x1·z2 (mod 2)`: 1 where the strings anticommute.
    pub fn anticommutation(&self, other: &PauliArray) -> Result<ArrayD<u8>> {
        self.check_qubits(other)?;
        let mut out = Vec::new();
        let lead = for_each_broadcast(self.shape(), other.shape(), |a, b| {
            let c = and_popcount(self.z.row(a), other.x.row(b)) + and_popcount(self.x.row(a), other.z.row(b));
            out.push((c & 1) as u8);
        })?;
        Ok(ArrayD::from_shape_vec(IxDyn(&lead), out).expect("shape matches"))
    }

    pub fn commutes_with(&self, other: &PauliArray) -> Result<ArrayD<bool>> {
        Ok(self.anticommutation(other)?.mapv(|c| c == 0))
    }

    /// Element-wise commutator `[P1, P2]` as a string and a coefficient: the
    /// coefficient is 0 where they commute and `2 (-i)^f` otherwise, with
    /// `P1 P2 = (-i)^f P3`. One composition per element.
    pub fn commutator(&self, other: &PauliArray) -> Result<(PauliArray, ArrayD<Complex64>)> {
        let c = self.anticommutation(other)?;
        let (p, f) = self.compose(other)?;
        let coef = ndarray::Zip::from(&c)
            .and(&f)
            .map_collect(|&c, &f| if c == 1 { phase_value(f) * 2.0 } else { Complex64::new(0.0, 0.0) });
        Ok((p, coef.into_dyn()))
    }

    /// Tensor product; `self` occupies the higher-index qubits so labels
    /// concatenate as `label(self) + label(other)`.
    pub fn tensor(&self, other: &PauliArray) -> Result<PauliArray> {
        Ok(PauliArray {
            z: BitArray::concat_bits(&self.z, &other.z)?,
            x: BitArray::concat_bits(&self.x, &other.x)?,
        })
    }

    /// Conjugates every string by one built-in Clifford gate.
    pub fn conjugate_gate(&self, gate: CliffordGate) -> Result<(PauliArray, SignArray)> {
        gate.validate(self.num_qubits())?;
        let mut out = self.clone();
        let signs = out.conjugate_gate_in_place(gate);
        Ok((out, signs))
    }

    /// Conjugates by a sequence of gates applied in order.
    pub fn conjugate_gates(&self, gates: &[CliffordGate]) -> Result<(PauliArray, SignArray)> {
        for g in gates {
            g.validate(self.num_qubits())?;
        }
        let mut out = self.clone();
        let mut signs = SignArray::ones(IxDyn(self.shape()));
        for &g in gates {
            let s = out.conjugate_gate_in_place(g);
            signs.zip_mut_with(&s, |a, &b| *a *= b);
        }
        Ok((out, signs))
    }

    fn conjugate_gate_in_place(&mut self, gate: CliffordGate) -> SignArray {
        let words = self.z.words_per_row();
        let shape = self.shape().to_vec();
        let rows = numel(&shape);
        let zdata = self.z.data_mut();
        let xdata = self.x.data_mut();
        let signs = (0..rows)
            .map(|r| {
                let span = r * words..(r + 1) * words;
                if gate.apply_row(&mut zdata[span.clone()], &mut xdata[span]) {
                    -1
                } else {
                    1
                }
            })
            .collect();
        ArrayD::from_shape_vec(IxDyn(&shape), signs).expect("shape matches")
    }

    /// Distinct strings in first-occurrence order plus, for every input
    /// element (row-major), the index of its string in the result.
    pub fn unique(&self) -> (PauliArray, Vec<usize>) {
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut first = Vec::new();
        let inverse = (0..self.size())
            .map(|r| {
                *seen.entry(self.row_key(r)).or_insert_with(|| {
                    first.push(r);
                    first.len() - 1
                })
            })
            .collect();
        (self.gather(vec![first.len()], &first), inverse)
    }

    /// Like [`PauliArray::unique`] with the result sorted by label.
    pub fn unique_sorted(&self) -> (PauliArray, Vec<usize>) {
        let (u, inv) = self.unique();
        let labels = u.labels();
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        let mut rank = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        (u.gather(vec![order.len()], &order), inv.into_iter().map(|i| rank[i]).collect())
    }

    /// Dense `2^n x 2^n` matrix of the element at flat index `r`, with basis
    /// index `b = Σ b_q 2^q`.
    pub fn to_matrix(&self, r: usize) -> ndarray::Array2<Complex64> {
        let n = self.num_qubits();
        let dim = 1usize << n;
        let (zm, xm) = (self.mask(r, true), self.mask(r, false));
        let base = phase_value(((zm & xm).count_ones() % 4) as u8);
        let mut m = ndarray::Array2::zeros((dim, dim));
        for b in 0..dim {
            let t = b ^ xm as usize;
            let sign = if (zm & t as u64).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            m[[t, b]] = base * sign;
        }
        m
    }

    /// Bits of the element at flat index `r` as an integer mask (n ≤ 64).
    pub(crate) fn mask(&self, r: usize, z: bool) -> u64 {
        let bits = if z { &self.z } else { &self.x };
        bits.row(r).first().copied().unwrap_or(0)
    }
}

/// Pushes the product row of `[z1, x1, z2, x2]` and returns its phase exponent.
#[inline]
fn compose_rows(rows: [&[u64]; 4], zd: &mut Vec<u64>, xd: &mut Vec<u64>) -> u8 {
    let [z1, x1, z2, x2] = rows;
    let mut acc = 0u32;
    for w in 0..z1.len() {
        let (z3, x3) = (z1[w] ^ z2[w], x1[w] ^ x2[w]);
        // 2 x1·z2 + z1·x1 + z2·x2 - z3·x3, with -1 taken as 3 mod 4
        acc += 2 * (x1[w] & z2[w]).count_ones()
            + (z1[w] & x1[w]).count_ones()
            + (z2[w] & x2[w]).count_ones()
            + 3 * (z3 & x3).count_ones();
        zd.push(z3);
        xd.push(x3);
    }
    (acc % 4) as u8
}

impl ArrayLike for PauliArray {
    fn array_shape(&self) -> &[usize] {
        self.shape()
    }

    fn gather(&self, shape: Vec<usize>, rows: &[usize]) -> Self {
        PauliArray {
            z: self.z.gather(shape.clone(), rows),
            x: self.x.gather(shape, rows),
        }
    }

    fn with_shape(&self, shape: Vec<usize>) -> Self {
        PauliArray {
            z: self.z.with_shape(shape.clone()),
            x: self.x.with_shape(shape),
        }
    }
}

impl std::fmt::Display for PauliArray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "PauliArray shape={:?} num_qubits={}", self.shape(), self.num_qubits())?;
        for l in self.labels() {
            writeln!(f, "  {l}")?;
        }
        Ok(())
    }
}
