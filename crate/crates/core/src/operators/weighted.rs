use ndarray::{ArrayD, IxDyn};
use num_complex::Complex64;

use super::{OperatorArrayType1, Operator};
use crate::bitarray::shape::{for_each_broadcast, permute_axes};
use crate::bitarray::{numel, ArrayLike};
use crate::error::{PauliError, Result};
use crate::paulis::{phase_value, CliffordGate, PauliArray};

/// Array of Pauli strings, each carrying a complex weight.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPauliArray {
    paulis: PauliArray,
    weights: ArrayD<Complex64>,
}

pub(crate) fn weights_from_vec(shape: &[usize], v: Vec<Complex64>) -> ArrayD<Complex64> {
    ArrayD::from_shape_vec(IxDyn(shape), v).expect("shape matches")
}

impl WeightedPauliArray {
    pub fn new(paulis: PauliArray, weights: ArrayD<Complex64>) -> Result<Self> {
        if paulis.shape() != weights.shape() {
            return Err(PauliError::Dimension(format!(
                "weights shape {:?} differs from strings shape {:?}",
                weights.shape(),
                paulis.shape()
            )));
        }
        let weights = weights.as_standard_layout().into_owned();
        Ok(WeightedPauliArray { paulis, weights })
    }

    pub(crate) fn from_parts(paulis: PauliArray, weights: Vec<Complex64>) -> Self {
        let weights = weights_from_vec(paulis.shape(), weights);
        WeightedPauliArray { paulis, weights }
    }

    /// Unit weights.
    pub fn from_paulis(paulis: PauliArray) -> Self {
        let weights = ArrayD::from_elem(IxDyn(paulis.shape()), Complex64::new(1.0, 0.0));
        WeightedPauliArray { paulis, weights }
    }

    pub fn paulis(&self) -> &PauliArray {
        &self.paulis
    }

    pub fn weights(&self) -> &ArrayD<Complex64> {
        &self.weights
    }

    /// Weights in row-major order.
    pub fn weight_slice(&self) -> &[Complex64] {
        self.weights.as_slice().expect("weights kept in standard layout")
    }

    pub fn shape(&self) -> &[usize] {
        self.paulis.shape()
    }

    pub fn num_qubits(&self) -> usize {
        self.paulis.num_qubits()
    }

    /// Concatenates flattened arrays into one 1-d array.
    pub fn concat(parts: &[&WeightedPauliArray], num_qubits: usize) -> Result<Self> {
        let p: Vec<&PauliArray> = parts.iter().map(|w| &w.paulis).collect();
        let paulis = PauliArray::concat(&p, num_qubits)?;
        let weights = parts.iter().flat_map(|w| w.weight_slice().iter().copied()).collect();
        Ok(WeightedPauliArray::from_parts(paulis, weights))
    }

    /// Multiplies weights by a broadcastable array of numbers.
    pub fn mul_weights(&self, c: &ArrayD<Complex64>) -> Result<Self> {
        let c = c.as_standard_layout();
        let cs = c.as_slice().expect("standard layout");
        let w = self.weight_slice();
        let (mut rows, mut out) = (Vec::new(), Vec::new());
        let shape = for_each_broadcast(self.shape(), c.shape(), |a, b| {
            rows.push(a);
            out.push(w[a] * cs[b]);
        })?;
        Ok(WeightedPauliArray::from_parts(self.paulis.gather(shape, &rows), out))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        WeightedPauliArray {
            paulis: self.paulis.clone(),
            weights: self.weights.mapv(|w| w * c),
        }
    }

    /// Element-wise composition with broadcasting; phases fold into weights.
    pub fn compose(&self, other: &WeightedPauliArray) -> Result<Self> {
        let (p, f) = self.paulis.compose(&other.paulis)?;
        let (w1, w2) = (self.weight_slice(), other.weight_slice());
        let mut out = Vec::with_capacity(p.size());
        for_each_broadcast(self.shape(), other.shape(), |a, b| out.push(w1[a] * w2[b]))?;
        for (w, &k) in out.iter_mut().zip(f.iter()) {
            *w *= phase_value(k);
        }
        Ok(WeightedPauliArray::from_parts(p, out))
    }

    pub fn adjoint(&self) -> Self {
        WeightedPauliArray {
            paulis: self.paulis.clone(),
            weights: self.weights.mapv(|w| w.conj()),
        }
    }

    /// Tensor product with broadcasting; weights multiply.
    pub fn tensor(&self, other: &WeightedPauliArray) -> Result<Self> {
        let p = self.paulis.tensor(&other.paulis)?;
        let (w1, w2) = (self.weight_slice(), other.weight_slice());
        let mut out = Vec::with_capacity(p.size());
        for_each_broadcast(self.shape(), other.shape(), |a, b| out.push(w1[a] * w2[b]))?;
        Ok(WeightedPauliArray::from_parts(p, out))
    }

    /// Clifford conjugation with the signs folded into the weights.
    pub fn conjugate_gate(&self, gate: CliffordGate) -> Result<Self> {
        let (p, s) = self.paulis.conjugate_gate(gate)?;
        let w = ndarray::Zip::from(&self.weights)
            .and(&s)
            .map_collect(|&w, &s| w * s as f64);
        Ok(WeightedPauliArray { paulis: p, weights: w })
    }

    /// Element-wise sum with another weighted array: a type-1 operator array
    /// with two terms per element.
    pub fn add(&self, other: &WeightedPauliArray) -> Result<OperatorArrayType1> {
        let a = OperatorArrayType1::new(self.new_axis(self.ndim())?)?;
        let b = OperatorArrayType1::new(other.new_axis(other.ndim())?)?;
        a.add(&b)
    }

    /// Sums over `axes`; the summed elements become the terms of a type-1
    /// operator array over the remaining axes.
    pub fn sum_axes(&self, axes: &[usize]) -> Result<OperatorArrayType1> {
        OperatorArrayType1::new(self.new_axis(self.ndim())?)?.sum_axes(axes)
    }

    /// Sums every element into one operator.
    pub fn sum_all(&self) -> Operator {
        Operator::from_terms_unchecked(self.flatten())
    }
}

impl ArrayLike for WeightedPauliArray {
    fn array_shape(&self) -> &[usize] {
        self.shape()
    }

    fn gather(&self, shape: Vec<usize>, rows: &[usize]) -> Self {
        let w = self.weight_slice();
        let weights = rows.iter().map(|&r| w[r]).collect();
        WeightedPauliArray::from_parts(self.paulis.gather(shape, rows), weights)
    }

    fn with_shape(&self, shape: Vec<usize>) -> Self {
        let weights = weights_from_vec(&shape, self.weight_slice().to_vec());
        WeightedPauliArray {
            paulis: self.paulis.with_shape(shape),
            weights,
        }
    }
}

impl PauliArray {
    /// Multiplies by a broadcastable array of numbers, giving weighted strings.
    pub fn mul_weights(&self, c: &ArrayD<Complex64>) -> Result<WeightedPauliArray> {
        WeightedPauliArray::from_paulis(self.clone()).mul_weights(c)
    }

    /// Element-wise sum of two string arrays as a type-1 operator array.
    pub fn add(&self, other: &PauliArray) -> Result<OperatorArrayType1> {
        WeightedPauliArray::from_paulis(self.clone()).add(&WeightedPauliArray::from_paulis(other.clone()))
    }
}

/// Positions along the summed axes gathered next to each kept element.
/// Returns the kept shape and, for each kept element in row-major order,
/// the flat indices of the elements that sum into it.
pub(crate) fn sum_groups(shape: &[usize], axes: &[usize]) -> Result<(Vec<usize>, Vec<usize>, usize)> {
    let ndim = shape.len();
    let mut summed = vec![false; ndim];
    for &a in axes {
        if a >= ndim {
            return Err(PauliError::AxisOutOfBounds { axis: a, ndim });
        }
        summed[a] = true;
    }
    let kept: Vec<usize> = (0..ndim).filter(|&a| !summed[a]).collect();
    let gone: Vec<usize> = (0..ndim).filter(|&a| summed[a]).collect();
    let perm: Vec<usize> = kept.iter().chain(&gone).copied().collect();
    let (_, rows) = permute_axes(shape, &perm)?;
    let new_shape: Vec<usize> = kept.iter().map(|&a| shape[a]).collect();
    let group = numel(&gone.iter().map(|&a| shape[a]).collect::<Vec<_>>());
    Ok((new_shape, rows, group))
}
