use std::collections::HashMap;

use ndarray::{ArrayD, Axis, IxDyn};
use num_complex::Complex64;

use super::{Operator, OperatorArrayType1, WeightedPauliArray};
use crate::bitarray::shape::for_each_broadcast;
use crate::bitarray::{numel, ArrayLike};
use crate::error::{PauliError, Result};
use crate::paulis::PauliArray;

/// Array of operators sharing one basis of distinct strings; the last
/// weight axis indexes the basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorArrayType2 {
    basis: PauliArray,
    weights: ArrayD<Complex64>,
}

impl OperatorArrayType2 {
    pub fn new(basis: PauliArray, weights: ArrayD<Complex64>) -> Result<Self> {
        if basis.ndim() != 1 {
            return Err(PauliError::Dimension(format!("basis must be 1-d, got {:?}", basis.shape())));
        }
        if weights.ndim() == 0 || weights.shape()[weights.ndim() - 1] != basis.size() {
            return Err(PauliError::Dimension(format!(
                "weights shape {:?} does not end with basis length {}",
                weights.shape(),
                basis.size()
            )));
        }
        if basis.unique().0.size() != basis.size() {
            return Err(PauliError::Dimension("basis strings repeat".into()));
        }
        let weights = weights.as_standard_layout().into_owned();
        Ok(OperatorArrayType2 { basis, weights })
    }

    /// Union basis of every nonzero-weight term, first occurrence order.
    pub fn from_type1(t: &OperatorArrayType1) -> Self {
        let flat = t.terms().flatten();
        let zero = Complex64::new(0.0, 0.0);
        let live: Vec<usize> = (0..flat.size()).filter(|&k| flat.weight_slice()[k] != zero).collect();
        let (basis, inverse) = flat.paulis().take(&live).expect("in range").unique();
        let b = basis.size();
        let s = t.num_terms();
        let mut shape = t.array_shape().to_vec();
        shape.push(b);
        let mut w = vec![zero; numel(&shape)];
        for (&k, &u) in live.iter().zip(&inverse) {
            w[(k / s) * b + u] += flat.weight_slice()[k];
        }
        OperatorArrayType2 {
            basis,
            weights: ArrayD::from_shape_vec(IxDyn(&shape), w).expect("shape matches"),
        }
    }

    pub fn basis(&self) -> &PauliArray {
        &self.basis
    }

    pub fn weights(&self) -> &ArrayD<Complex64> {
        &self.weights
    }

    pub fn shape(&self) -> &[usize] {
        &self.weights.shape()[..self.weights.ndim() - 1]
    }

    pub fn size(&self) -> usize {
        numel(self.shape())
    }

    pub fn num_qubits(&self) -> usize {
        self.basis.num_qubits()
    }

    fn weight_rows(&self) -> &[Complex64] {
        self.weights.as_slice().expect("standard layout")
    }

    /// Element at flat index `i` over the full basis (zero weights kept).
    pub fn get(&self, i: usize) -> Operator {
        let b = self.basis.size();
        let w = self.weight_rows()[i * b..(i + 1) * b].to_vec();
        Operator::from_parts(self.basis.clone(), w)
    }

    pub fn to_type1(&self) -> OperatorArrayType1 {
        let b = self.basis.size();
        let rows: Vec<usize> = (0..self.size()).flat_map(|_| 0..b).collect();
        let mut shape = self.shape().to_vec();
        shape.push(b);
        let paulis = self.basis.gather(shape, &rows);
        let terms = WeightedPauliArray::new(paulis, self.weights.clone()).expect("same shape");
        OperatorArrayType1::new(terms).expect("has summation axis")
    }

    /// Element-wise sum with broadcasting over a merged basis.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.num_qubits() != other.num_qubits() {
            return Err(PauliError::QubitMismatch(self.num_qubits(), other.num_qubits()));
        }
        let all = PauliArray::concat(&[&self.basis, &other.basis], self.num_qubits())?;
        let (basis, inverse) = all.unique();
        let (b1, b2, b) = (self.basis.size(), other.basis.size(), basis.size());
        let (w1, w2) = (self.weight_rows(), other.weight_rows());
        let mut out = Vec::new();
        let mut shape = for_each_broadcast(self.shape(), other.shape(), |x, y| {
            let mut row = vec![Complex64::new(0.0, 0.0); b];
            for k in 0..b1 {
                row[inverse[k]] += w1[x * b1 + k];
            }
            for k in 0..b2 {
                row[inverse[b1 + k]] += w2[y * b2 + k];
            }
            out.extend(row);
        })?;
        shape.push(b);
        Ok(OperatorArrayType2 {
            basis,
            weights: ArrayD::from_shape_vec(IxDyn(&shape), out).expect("shape matches"),
        })
    }

    /// Multiplies every element by a number broadcast over the leading shape.
    pub fn mul_weights(&self, c: &ArrayD<Complex64>) -> Result<Self> {
        let b = self.basis.size();
        let c = c.as_standard_layout();
        let cs = c.as_slice().expect("standard layout");
        let w = self.weight_rows();
        let mut out = Vec::new();
        let mut shape = for_each_broadcast(self.shape(), c.shape(), |x, y| {
            out.extend(w[x * b..(x + 1) * b].iter().map(|&v| v * cs[y]));
        })?;
        shape.push(b);
        Ok(OperatorArrayType2 {
            basis: self.basis.clone(),
            weights: ArrayD::from_shape_vec(IxDyn(&shape), out).expect("shape matches"),
        })
    }

    pub fn adjoint(&self) -> Self {
        OperatorArrayType2 {
            basis: self.basis.clone(),
            weights: self.weights.mapv(|w| w.conj()),
        }
    }

    /// Zeroes weights with `|w| <= threshold` and drops basis strings unused
    /// by every element.
    pub fn simplify(&self, threshold: f64) -> Self {
        let w = self.weights.mapv(|v| if v.norm() > threshold { v } else { Complex64::new(0.0, 0.0) });
        let last = Axis(w.ndim() - 1);
        let keep: Vec<usize> = (0..self.basis.size())
            .filter(|&k| w.index_axis(last, k).iter().any(|v| v.norm() > 0.0))
            .collect();
        OperatorArrayType2 {
            basis: self.basis.take(&keep).expect("in range"),
            weights: w.select(last, &keep).as_standard_layout().into_owned(),
        }
    }

    /// Sums over leading axes.
    pub fn sum_axes(&self, axes: &[usize]) -> Result<Self> {
        let nd = self.shape().len();
        let mut sorted = axes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut w = self.weights.clone();
        for &a in sorted.iter().rev() {
            if a >= nd {
                return Err(PauliError::AxisOutOfBounds { axis: a, ndim: nd });
            }
            w = w.sum_axis(Axis(a));
        }
        Ok(OperatorArrayType2 {
            basis: self.basis.clone(),
            weights: w.as_standard_layout().into_owned(),
        })
    }

    pub fn sum_all(&self) -> Operator {
        let all: Vec<usize> = (0..self.shape().len()).collect();
        let s = self.sum_axes(&all).expect("valid axes");
        s.get(0)
    }

    /// Position of every basis string, keyed by label.
    pub fn basis_index(&self) -> HashMap<String, usize> {
        self.basis.labels().into_iter().enumerate().map(|(i, l)| (l, i)).collect()
    }
}
