//! Expectation values and covariances, from Pauli-level estimates up to
//! operators and operator arrays.
//!
//! [`PauliEstimates`] is the interchange value: the dense statevector
//! backend here produces it, and any other estimator can too.

use std::collections::HashMap;

use ndarray::{Array2, ArrayD, IxDyn};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitarray::ArrayLike;
use crate::error::{PauliError, Result};
use crate::operators::{Operator, OperatorArrayType1, OperatorArrayType2};
use crate::paulis::{phase_value, PauliArray};

/// Default qubit cap of the dense statevector backend.
pub const DEFAULT_STATE_LIMIT: usize = 20;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Normalized amplitudes with basis index `b = Σ b_q 2^q`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub num_qubits: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateVector {
    pub fn new(num_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if num_qubits >= usize::BITS as usize || amplitudes.len() != 1usize << num_qubits {
            return Err(PauliError::InvalidState(format!(
                "{} amplitudes for {num_qubits} qubits",
                amplitudes.len()
            )));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(PauliError::InvalidState(format!("squared norm {norm}")));
        }
        Ok(StateVector { num_qubits, amplitudes })
    }

    /// Computational basis state `|b⟩`.
    pub fn basis_state(num_qubits: usize, b: usize) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if b >= dim {
            return Err(PauliError::IndexOutOfBounds { index: b, len: dim });
        }
        let mut amps = vec![ZERO; dim];
        amps[b] = ONE;
        Self::new(num_qubits, amps)
    }

    /// Random normalized state, reproducible per seed.
    pub fn random(num_qubits: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut amps: Vec<Complex64> = (0..1usize << num_qubits)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        StateVector { num_qubits, amplitudes: amps }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `⟨ψ|P|ψ⟩` for the string with bit masks `z`, `x`, using
    /// `P|b⟩ = (-i)^{z·x} (-1)^{z·(b⊕x)} |b⊕x⟩`.
    fn expectation_masks(&self, z: u64, x: u64) -> Complex64 {
        let base = phase_value(((z & x).count_ones() % 4) as u8);
        let x = x as usize;
        let mut acc = ZERO;
        for (b, &amp) in self.amplitudes.iter().enumerate() {
            let t = b ^ x;
            let term = self.amplitudes[t].conj() * amp;
            if (z & t as u64).count_ones() % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        base * acc
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: StateFile = serde_json::from_str(text).map_err(|e| PauliError::Json(e.to_string()))?;
        Self::new(file.num_qubits, file.amplitudes.iter().map(|a| Complex64::new(a[0], a[1])).collect())
    }

    pub fn to_json(&self) -> String {
        let file = StateFile {
            num_qubits: self.num_qubits,
            amplitudes: self.amplitudes.iter().map(|a| [a.re, a.im]).collect(),
        };
        serde_json::to_string_pretty(&file).expect("plain data serializes")
    }
}

fn check_state(p: &PauliArray, s: &StateVector, limit: usize) -> Result<()> {
    if p.num_qubits() != s.num_qubits() {
        return Err(PauliError::QubitMismatch(p.num_qubits(), s.num_qubits()));
    }
    if s.num_qubits() > limit || s.num_qubits() > 64 {
        return Err(PauliError::TooManyQubits {
            num_qubits: s.num_qubits(),
            limit: limit.min(64),
        });
    }
    Ok(())
}

/// `⟨ψ|P|ψ⟩` for every string; same shape as `p`.
pub fn pauli_expectations(p: &PauliArray, s: &StateVector, limit: usize) -> Result<ArrayD<Complex64>> {
    check_state(p, s, limit)?;
    let v = (0..p.size()).map(|r| s.expectation_masks(p.mask(r, true), p.mask(r, false))).collect();
    Ok(ArrayD::from_shape_vec(IxDyn(p.shape()), v).expect("shape matches"))
}

/// `⟨P_i P_j⟩ - ⟨P_i⟩⟨P_j⟩` with one composition per pair; shape is
/// `p1.shape ++ p2.shape`.
pub fn pauli_covariances(p1: &PauliArray, p2: &PauliArray, s: &StateVector, limit: usize) -> Result<ArrayD<Complex64>> {
    check_state(p1, s, limit)?;
    check_state(p2, s, limit)?;
    let mut shape1 = p1.shape().to_vec();
    shape1.extend(std::iter::repeat_n(1, p2.ndim()));
    let (prod, f) = p1.reshape(&shape1)?.compose(p2)?;
    let e1 = pauli_expectations(p1, s, limit)?;
    let e2 = pauli_expectations(p2, s, limit)?;
    let (e1, e2) = (e1.as_slice().unwrap(), e2.as_slice().unwrap());
    let n2 = p2.size();
    let v = (0..prod.size())
        .zip(f.iter())
        .map(|(r, &k)| {
            let pp = phase_value(k) * s.expectation_masks(prod.mask(r, true), prod.mask(r, false));
            pp - e1[r / n2.max(1)] * e2[r % n2.max(1)]
        })
        .collect();
    Ok(ArrayD::from_shape_vec(IxDyn(prod.shape()), v).expect("shape matches"))
}

/// Pauli-level estimates keyed by string: values shaped like the source
/// array and an optional covariance over flattened index pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliEstimates {
    paulis: PauliArray,
    values: ArrayD<Complex64>,
    covariance: Option<Array2<Complex64>>,
    index: HashMap<(Vec<u64>, Vec<u64>), usize>,
}

impl PauliEstimates {
    pub fn new(paulis: PauliArray, values: ArrayD<Complex64>, covariance: Option<Array2<Complex64>>) -> Result<Self> {
        if values.shape() != paulis.shape() {
            return Err(PauliError::Dimension(format!(
                "values shape {:?} for strings shape {:?}",
                values.shape(),
                paulis.shape()
            )));
        }
        let m = paulis.size();
        if let Some(c) = &covariance {
            if c.dim() != (m, m) {
                return Err(PauliError::Dimension(format!("covariance shape {:?} for {m} strings", c.shape())));
            }
        }
        let mut index = HashMap::new();
        for r in 0..m {
            index.entry(key(&paulis, r)).or_insert(r);
        }
        let values = values.as_standard_layout().into_owned();
        Ok(PauliEstimates {
            paulis,
            values,
            covariance,
            index,
        })
    }

    /// Dense-backend estimates of every string in `p`.
    pub fn from_state(p: &PauliArray, s: &StateVector, with_covariance: bool, limit: usize) -> Result<Self> {
        let values = pauli_expectations(p, s, limit)?;
        let covariance = if with_covariance {
            let flat = p.flatten();
            let c = pauli_covariances(&flat, &flat, s, limit)?;
            Some(c.into_dimensionality().expect("2-d"))
        } else {
            None
        };
        Self::new(p.clone(), values, covariance)
    }

    pub fn paulis(&self) -> &PauliArray {
        &self.paulis
    }

    pub fn values(&self) -> &ArrayD<Complex64> {
        &self.values
    }

    pub fn covariance(&self) -> Option<&Array2<Complex64>> {
        self.covariance.as_ref()
    }

    /// Flat index of a string, `None` when it was not estimated.
    fn find(&self, p: &PauliArray, r: usize) -> Option<usize> {
        self.index.get(&key(p, r)).copied()
    }

    /// Estimate for row `r` of `p`. Identity strings default to 1.
    fn value_of(&self, p: &PauliArray, r: usize) -> Result<Complex64> {
        match self.find(p, r) {
            Some(k) => Ok(self.values.as_slice().unwrap()[k]),
            None if p.z().row_is_zero(r) && p.x().row_is_zero(r) => Ok(ONE),
            None => Err(PauliError::MissingEstimate(p.label(r))),
        }
    }

    /// Covariance of two strings. Identity strings have zero covariance.
    fn covariance_of(&self, p1: &PauliArray, r1: usize, p2: &PauliArray, r2: usize) -> Result<Complex64> {
        let cov = self.covariance.as_ref().ok_or(PauliError::MissingCovariance)?;
        let is_id = |p: &PauliArray, r| p.z().row_is_zero(r) && p.x().row_is_zero(r);
        if is_id(p1, r1) || is_id(p2, r2) {
            return Ok(ZERO);
        }
        let a = self.find(p1, r1).ok_or_else(|| PauliError::MissingEstimate(p1.label(r1)))?;
        let b = self.find(p2, r2).ok_or_else(|| PauliError::MissingEstimate(p2.label(r2)))?;
        Ok(cov[[a, b]])
    }
}

fn key(p: &PauliArray, r: usize) -> (Vec<u64>, Vec<u64>) {
    (p.z().row(r).to_vec(), p.x().row(r).to_vec())
}

/// `E(O) = Σ_s w_s E(P_s)`; zero-weight terms need no estimate.
pub fn operator_expectation(o: &Operator, pe: &PauliEstimates) -> Result<Complex64> {
    let mut acc = ZERO;
    for (r, &w) in o.weights().iter().enumerate() {
        if w != ZERO {
            acc += w * pe.value_of(o.paulis(), r)?;
        }
    }
    Ok(acc)
}

/// Expectation of every element of a type-1 array.
pub fn operator_expectations(oa: &OperatorArrayType1, pe: &PauliEstimates) -> Result<ArrayD<Complex64>> {
    let flat = oa.terms().flatten();
    let s = oa.num_terms();
    let mut out = vec![ZERO; oa.size()];
    for (r, &w) in flat.weight_slice().iter().enumerate() {
        if w != ZERO {
            out[r / s] += w * pe.value_of(flat.paulis(), r)?;
        }
    }
    Ok(ArrayD::from_shape_vec(IxDyn(oa.shape()), out).expect("shape matches"))
}

/// Expectation of every element of a type-2 array, from basis-level estimates.
pub fn type2_expectations(oa: &OperatorArrayType2, pe: &PauliEstimates) -> Result<ArrayD<Complex64>> {
    let basis = oa.basis();
    let b = basis.size();
    let used: Vec<bool> = (0..b)
        .map(|k| oa.weights().index_axis(ndarray::Axis(oa.weights().ndim() - 1), k).iter().any(|&w| w != ZERO))
        .collect();
    let e: Vec<Complex64> = (0..b)
        .map(|k| if used[k] { pe.value_of(basis, k) } else { Ok(ZERO) })
        .collect::<Result<_>>()?;
    let w = oa.weights().as_standard_layout();
    let ws = w.as_slice().unwrap();
    let out = (0..oa.size()).map(|i| (0..b).map(|k| ws[i * b + k] * e[k]).sum()).collect();
    Ok(ArrayD::from_shape_vec(IxDyn(oa.shape()), out).expect("shape matches"))
}

/// `Covar(O_i, O_j) = Σ_st w_is w_jt Covar(P_is, P_jt)`; shape is
/// `oa1.shape ++ oa2.shape`.
pub fn operator_covariances(
    oa1: &OperatorArrayType1,
    oa2: &OperatorArrayType1,
    pe: &PauliEstimates,
) -> Result<ArrayD<Complex64>> {
    if pe.covariance.is_none() {
        return Err(PauliError::MissingCovariance);
    }
    let (f1, f2) = (oa1.terms().flatten(), oa2.terms().flatten());
    let (s1, s2) = (oa1.num_terms(), oa2.num_terms());
    let (n1, n2) = (oa1.size(), oa2.size());
    let (w1, w2) = (f1.weight_slice(), f2.weight_slice());
    let mut out = vec![ZERO; n1 * n2];
    for a in 0..n1 * s1 {
        if w1[a] == ZERO {
            continue;
        }
        for b in 0..n2 * s2 {
            if w2[b] == ZERO {
                continue;
            }
            let c = pe.covariance_of(f1.paulis(), a, f2.paulis(), b)?;
            out[(a / s1) * n2 + b / s2] += w1[a] * w2[b] * c;
        }
    }
    let mut shape = oa1.shape().to_vec();
    shape.extend_from_slice(oa2.shape());
    Ok(ArrayD::from_shape_vec(IxDyn(&shape), out).expect("shape matches"))
}

/// Covariance of two operators.
pub fn operator_covariance(o1: &Operator, o2: &Operator, pe: &PauliEstimates) -> Result<Complex64> {
    let c = operator_covariances(&o1.to_array(), &o2.to_array(), pe)?;
    Ok(c[IxDyn(&[])])
}
