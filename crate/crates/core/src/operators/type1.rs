use ndarray::Axis;
use num_complex::Complex64;

use super::weighted::sum_groups;
use super::{Operator, OperatorArrayType2, WeightedPauliArray, DEFAULT_SIMPLIFY_THRESHOLD};
use crate::bitarray::shape::for_each_broadcast;
use crate::bitarray::{numel, ArrayLike};
use crate::error::{PauliError, Result};
use crate::paulis::{CliffordGate, PauliArray};

/// Array of operators stored as one weighted array whose last axis is the
/// summation axis. Elements with fewer terms are padded with zero-weight
/// identity strings.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorArrayType1 {
    terms: WeightedPauliArray,
}

impl OperatorArrayType1 {
    pub fn new(terms: WeightedPauliArray) -> Result<Self> {
        if terms.ndim() == 0 {
            return Err(PauliError::Dimension("type-1 arrays need a summation axis".into()));
        }
        Ok(OperatorArrayType1 { terms })
    }

    /// Packs operators (row-major over `shape`) with padding.
    pub fn from_operators(shape: &[usize], ops: &[Operator]) -> Result<Self> {
        if numel(shape) != ops.len() {
            return Err(PauliError::ElementCount {
                expected: numel(shape),
                found: ops.len(),
            });
        }
        let Some(first) = ops.first() else {
            return Err(PauliError::Dimension("no operators to pack".into()));
        };
        let n = first.num_qubits();
        if let Some(bad) = ops.iter().find(|o| o.num_qubits() != n) {
            return Err(PauliError::QubitMismatch(n, bad.num_qubits()));
        }
        let parts: Vec<&WeightedPauliArray> = ops.iter().map(|o| o.terms()).collect();
        let flat = WeightedPauliArray::concat(&parts, n)?;
        let counts: Vec<usize> = ops.iter().map(|o| o.num_terms()).collect();
        Ok(Self::from_ragged(shape, &flat, &counts))
    }

    /// Element `e` takes the next `counts[e]` terms of `flat`.
    pub(crate) fn from_ragged(shape: &[usize], flat: &WeightedPauliArray, counts: &[usize]) -> Self {
        let n = flat.num_qubits();
        let total = flat.size();
        let pad = WeightedPauliArray::from_parts(PauliArray::identities(&[1], n), vec![Complex64::new(0.0, 0.0)]);
        let all = WeightedPauliArray::concat(&[flat, &pad], n).expect("same qubit count");
        let smax = counts.iter().copied().max().unwrap_or(0);
        let mut rows = Vec::with_capacity(counts.len() * smax);
        let mut offset = 0;
        for &k in counts {
            rows.extend(offset..offset + k);
            rows.extend(std::iter::repeat_n(total, smax - k));
            offset += k;
        }
        let mut full = shape.to_vec();
        full.push(smax);
        OperatorArrayType1 {
            terms: all.gather(full, &rows),
        }
    }

    pub fn terms(&self) -> &WeightedPauliArray {
        &self.terms
    }

    /// Shape of the operator array (summation axis excluded).
    pub fn shape(&self) -> &[usize] {
        self.array_shape()
    }

    /// Extent of the summation axis.
    pub fn num_terms(&self) -> usize {
        *self.terms.shape().last().unwrap()
    }

    pub fn num_qubits(&self) -> usize {
        self.terms.num_qubits()
    }

    /// Element at flat (row-major) index `i`, padding included.
    pub fn get(&self, i: usize) -> Operator {
        let s = self.num_terms();
        let rows: Vec<usize> = (i * s..(i + 1) * s).collect();
        Operator::from_terms_unchecked(self.terms.gather(vec![s], &rows))
    }

    /// Element at a multi-index over the leading shape.
    pub fn get_index(&self, index: &[usize]) -> Result<Operator> {
        let shape = self.array_shape();
        if index.len() != shape.len() {
            return Err(PauliError::Dimension(format!("index {index:?} for shape {shape:?}")));
        }
        let mut flat = 0;
        for (&i, &e) in index.iter().zip(shape) {
            if i >= e {
                return Err(PauliError::IndexOutOfBounds { index: i, len: e });
            }
            flat = flat * e + i;
        }
        Ok(self.get(flat))
    }

    pub fn to_operators(&self) -> Vec<Operator> {
        (0..self.size()).map(|i| self.get(i)).collect()
    }

    /// Multiplies every element by a number broadcast over the leading shape.
    pub fn mul_weights(&self, c: &ndarray::ArrayD<Complex64>) -> Result<Self> {
        let c = c.clone().insert_axis(Axis(c.ndim()));
        OperatorArrayType1::new(self.terms.mul_weights(&c)?)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        OperatorArrayType1 {
            terms: self.terms.scale(c),
        }
    }

    fn check_qubits(&self, other: &Self) -> Result<()> {
        if self.num_qubits() != other.num_qubits() {
            return Err(PauliError::QubitMismatch(self.num_qubits(), other.num_qubits()));
        }
        Ok(())
    }

    /// Row indices of every term pair `(t1, t2)` for each broadcast element
    /// pair; returns the broadcast leading shape.
    fn term_pairs(&self, other: &Self) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>)> {
        let (s1, s2) = (self.num_terms(), other.num_terms());
        let (mut ia, mut ib) = (Vec::new(), Vec::new());
        let shape = for_each_broadcast(self.array_shape(), other.array_shape(), |a, b| {
            for t1 in 0..s1 {
                for t2 in 0..s2 {
                    ia.push(a * s1 + t1);
                    ib.push(b * s2 + t2);
                }
            }
        })?;
        Ok((shape, ia, ib))
    }

    /// Element-wise sum with broadcasting: term lists concatenate.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_qubits(other)?;
        let (s1, s2) = (self.num_terms(), other.num_terms());
        let offset = self.terms.size();
        let all = WeightedPauliArray::concat(&[&self.terms, &other.terms], self.num_qubits())?;
        let mut rows = Vec::new();
        let mut shape = for_each_broadcast(self.array_shape(), other.array_shape(), |a, b| {
            rows.extend(a * s1..(a + 1) * s1);
            rows.extend(offset + b * s2..offset + (b + 1) * s2);
        })?;
        shape.push(s1 + s2);
        Ok(OperatorArrayType1 {
            terms: all.gather(shape, &rows),
        })
    }

    /// Element-wise composition with broadcasting; each element holds all
    /// term products.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_qubits(other)?;
        let (mut shape, ia, ib) = self.term_pairs(other)?;
        let a = self.terms.flatten().take(&ia)?;
        let b = other.terms.flatten().take(&ib)?;
        shape.push(self.num_terms() * other.num_terms());
        Ok(OperatorArrayType1 {
            terms: a.compose(&b)?.reshape(&shape)?,
        })
    }

    /// Element-wise commutator, composing only anticommuting term pairs
    /// with nonzero weights.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_qubits(other)?;
        let (shape, ia, ib) = self.term_pairs(other)?;
        let a = self.terms.flatten().take(&ia)?;
        let b = other.terms.flatten().take(&ib)?;
        let anti = a.paulis().anticommutation(b.paulis())?;
        let zero = Complex64::new(0.0, 0.0);
        let (wa, wb) = (a.weight_slice(), b.weight_slice());
        let per = self.num_terms() * other.num_terms();
        let mut keep = Vec::new();
        let mut counts = vec![0; numel(&shape)];
        for (k, &c) in anti.iter().enumerate() {
            if c == 1 && wa[k] != zero && wb[k] != zero {
                keep.push(k);
                counts[k / per.max(1)] += 1;
            }
        }
        let prod = a.take(&keep)?.compose(&b.take(&keep)?)?.scale(Complex64::new(2.0, 0.0));
        Ok(Self::from_ragged(&shape, &prod, &counts))
    }

    pub fn adjoint(&self) -> Self {
        OperatorArrayType1 {
            terms: self.terms.adjoint(),
        }
    }

    /// Element-wise tensor product; `self` takes the higher-index qubits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let (mut shape, ia, ib) = self.term_pairs(other)?;
        let a = self.terms.flatten().take(&ia)?;
        let b = other.terms.flatten().take(&ib)?;
        shape.push(self.num_terms() * other.num_terms());
        Ok(OperatorArrayType1 {
            terms: a.tensor(&b)?.reshape(&shape)?,
        })
    }

    pub fn conjugate_gate(&self, gate: CliffordGate) -> Result<Self> {
        Ok(OperatorArrayType1 {
            terms: self.terms.conjugate_gate(gate)?,
        })
    }

    /// Simplifies every element; the summation axis shrinks to the longest
    /// simplified element.
    pub fn simplify(&self, threshold: f64) -> Self {
        let ops: Vec<Operator> = self.to_operators().iter().map(|o| o.simplify(threshold)).collect();
        let n = self.num_qubits();
        let parts: Vec<&WeightedPauliArray> = ops.iter().map(|o| o.terms()).collect();
        let flat = WeightedPauliArray::concat(&parts, n).expect("same qubit count");
        let counts: Vec<usize> = ops.iter().map(|o| o.num_terms()).collect();
        Self::from_ragged(self.array_shape(), &flat, &counts)
    }

    /// Sums over leading axes; the summed elements' terms are concatenated.
    pub fn sum_axes(&self, axes: &[usize]) -> Result<Self> {
        let s = self.num_terms();
        let (mut shape, rows, group) = sum_groups(self.array_shape(), axes)?;
        let term_rows: Vec<usize> = rows.iter().flat_map(|&m| m * s..(m + 1) * s).collect();
        shape.push(group * s);
        Ok(OperatorArrayType1 {
            terms: self.terms.gather(shape, &term_rows),
        })
    }

    /// Sums every element into one operator.
    pub fn sum_all(&self) -> Operator {
        Operator::from_terms_unchecked(self.terms.flatten())
    }

    pub fn to_type2(&self) -> OperatorArrayType2 {
        OperatorArrayType2::from_type1(self)
    }

    /// Weighted array with one string per element, available when every
    /// element simplifies to exactly one term.
    pub fn to_weighted(&self) -> Result<WeightedPauliArray> {
        let s = self.simplify(DEFAULT_SIMPLIFY_THRESHOLD);
        if s.num_terms() != 1 {
            return Err(PauliError::Dimension(format!(
                "elements simplify to up to {} terms, not exactly one",
                s.num_terms()
            )));
        }
        if s.terms.weight_slice().iter().any(|w| w.norm() == 0.0) {
            return Err(PauliError::Dimension("an element simplifies to zero".into()));
        }
        s.terms.index_axis(s.terms.ndim() - 1, 0)
    }
}

impl ArrayLike for OperatorArrayType1 {
    fn array_shape(&self) -> &[usize] {
        let shape = self.terms.shape();
        &shape[..shape.len() - 1]
    }

    fn gather(&self, shape: Vec<usize>, rows: &[usize]) -> Self {
        let s = self.num_terms();
        let term_rows: Vec<usize> = rows.iter().flat_map(|&r| r * s..(r + 1) * s).collect();
        let mut full = shape;
        full.push(s);
        OperatorArrayType1 {
            terms: self.terms.gather(full, &term_rows),
        }
    }

    fn with_shape(&self, shape: Vec<usize>) -> Self {
        let mut full = shape;
        full.push(self.num_terms());
        OperatorArrayType1 {
            terms: self.terms.with_shape(full),
        }
    }
}

impl PauliArray {
    /// `C P C†` for every string, by composition and simplification. For
    /// a Clifford `c` each element has one unit-modulus term (see
    /// [`OperatorArrayType1::to_weighted`]).
    pub fn conjugate_operator(&self, c: &Operator) -> Result<OperatorArrayType1> {
        if c.num_qubits() != self.num_qubits() {
            return Err(PauliError::QubitMismatch(self.num_qubits(), c.num_qubits()));
        }
        let p = OperatorArrayType1::new(WeightedPauliArray::from_paulis(self.new_axis(self.ndim())?))?;
        let out = c.to_array().compose(&p)?.compose(&c.adjoint().to_array())?;
        Ok(out.simplify(DEFAULT_SIMPLIFY_THRESHOLD))
    }
}
