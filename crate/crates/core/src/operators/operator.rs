use std::fmt;

use ndarray::Array2;
use num_complex::Complex64;

use super::{OperatorArrayType1, WeightedPauliArray};
use crate::bitarray::ArrayLike;
use crate::error::{PauliError, Result};
use crate::paulis::{phase_value, CliffordGate, PauliArray};

/// Largest qubit count accepted by [`Operator::to_dense`] by default.
pub const DEFAULT_DENSE_LIMIT: usize = 12;

/// Sum of weighted Pauli strings `Σ_s w_s P_s` (terms may repeat).
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    terms: WeightedPauliArray,
}

impl Operator {
    pub fn new(terms: WeightedPauliArray) -> Result<Self> {
        if terms.ndim() != 1 {
            return Err(PauliError::Dimension(format!(
                "operator terms must be 1-d, got shape {:?}",
                terms.shape()
            )));
        }
        Ok(Operator { terms })
    }

    /// Wraps terms already known to be 1-d.
    pub(crate) fn from_terms_unchecked(terms: WeightedPauliArray) -> Self {
        debug_assert_eq!(terms.ndim(), 1);
        Operator { terms }
    }

    pub(crate) fn from_parts(paulis: PauliArray, weights: Vec<Complex64>) -> Self {
        Operator::from_terms_unchecked(WeightedPauliArray::from_parts(paulis, weights))
    }

    /// Operator with no terms.
    pub fn zero(num_qubits: usize) -> Self {
        Operator::from_parts(PauliArray::identities(&[0], num_qubits), Vec::new())
    }

    pub fn identity(num_qubits: usize) -> Self {
        Operator::from_parts(PauliArray::identities(&[1], num_qubits), vec![Complex64::new(1.0, 0.0)])
    }

    /// Builds an operator from parallel label and weight lists.
    pub fn from_labels_weights<S: AsRef<str>>(num_qubits: usize, labels: &[S], weights: &[Complex64]) -> Result<Self> {
        if labels.len() != weights.len() {
            return Err(PauliError::ElementCount {
                expected: labels.len(),
                found: weights.len(),
            });
        }
        let paulis = PauliArray::from_labels_with(num_qubits, labels)?;
        Ok(Operator::from_parts(paulis, weights.to_vec()))
    }

    /// Label and weight lists, in term order.
    pub fn to_labels_weights(&self) -> (Vec<String>, Vec<Complex64>) {
        (self.terms.paulis().labels(), self.weights().to_vec())
    }

    /// Unit-weight sum of every string in `paulis`.
    pub fn from_paulis(paulis: &PauliArray) -> Self {
        Operator::from_terms_unchecked(WeightedPauliArray::from_paulis(paulis.flatten()))
    }

    pub fn terms(&self) -> &WeightedPauliArray {
        &self.terms
    }

    pub fn paulis(&self) -> &PauliArray {
        self.terms.paulis()
    }

    pub fn weights(&self) -> &[Complex64] {
        self.terms.weight_slice()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.size()
    }

    pub fn num_qubits(&self) -> usize {
        self.terms.num_qubits()
    }

    fn check_qubits(&self, other: &Operator) -> Result<()> {
        if self.num_qubits() != other.num_qubits() {
            return Err(PauliError::QubitMismatch(self.num_qubits(), other.num_qubits()));
        }
        Ok(())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Operator {
            terms: self.terms.scale(c),
        }
    }

    /// Concatenates the term lists.
    pub fn add(&self, other: &Operator) -> Result<Self> {
        self.check_qubits(other)?;
        let terms = WeightedPauliArray::concat(&[&self.terms, &other.terms], self.num_qubits())?;
        Ok(Operator { terms })
    }

    pub fn sub(&self, other: &Operator) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// All pairwise products of terms, `self` on the left, in row-major
    /// order over `(i, j)`.
    pub fn compose(&self, other: &Operator) -> Result<Self> {
        self.check_qubits(other)?;
        let (s1, s2) = (self.num_terms(), other.num_terms());
        let ia: Vec<usize> = (0..s1).flat_map(|i| std::iter::repeat_n(i, s2)).collect();
        let ib: Vec<usize> = (0..s1).flat_map(|_| 0..s2).collect();
        Ok(self.compose_pairs(other, &ia, &ib, Complex64::new(1.0, 0.0)))
    }

    fn compose_pairs(&self, other: &Operator, ia: &[usize], ib: &[usize], factor: Complex64) -> Self {
        let (p, f) = self
            .paulis()
            .compose_indexed(ia, other.paulis(), ib)
            .expect("qubit counts checked");
        let (w1, w2) = (self.weights(), other.weights());
        let weights = ia
            .iter()
            .zip(ib)
            .zip(&f)
            .map(|((&a, &b), &k)| factor * w1[a] * w2[b] * phase_value(k))
            .collect();
        Operator::from_parts(p, weights)
    }

    /// Index pairs `(i, j)` whose strings anticommute, row-major.
    pub fn anticommuting_pairs(&self, other: &Operator) -> Result<Vec<(usize, usize)>> {
        self.check_qubits(other)?;
        let c = self.paulis().new_axis(1)?.anticommutation(other.paulis())?;
        let s2 = other.num_terms();
        Ok(c.iter()
            .enumerate()
            .filter(|(_, &v)| v == 1)
            .map(|(k, _)| (k / s2, k % s2))
            .collect())
    }

    /// `[self, other]` composing only the anticommuting pairs. Each pair
    /// contributes `2 w1 w2 (-i)^f P1P2`; the result holds exactly one term
    /// per anticommuting pair.
    pub fn commutator(&self, other: &Operator) -> Result<Self> {
        let pairs = self.anticommuting_pairs(other)?;
        let (ia, ib): (Vec<usize>, Vec<usize>) = pairs.into_iter().unzip();
        Ok(self.compose_pairs(other, &ia, &ib, Complex64::new(2.0, 0.0)))
    }

    /// `self∘other - other∘self` through two full compositions.
    pub fn commutator_by_composition(&self, other: &Operator) -> Result<Self> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// `self∘other + other∘self`.
    pub fn anticommutator(&self, other: &Operator) -> Result<Self> {
        self.compose(other)?.add(&other.compose(self)?)
    }

    pub fn adjoint(&self) -> Self {
        Operator {
            terms: self.terms.adjoint(),
        }
    }

    /// Tensor product; `self` occupies the higher-index qubits.
    pub fn tensor(&self, other: &Operator) -> Result<Self> {
        let a = self.terms.new_axis(1)?;
        let t = a.tensor(&other.terms)?;
        Ok(Operator { terms: t.flatten() })
    }

    pub fn conjugate_gate(&self, gate: CliffordGate) -> Result<Self> {
        Ok(Operator {
            terms: self.terms.conjugate_gate(gate)?,
        })
    }

    /// Merges repeated strings (first occurrence keeps its position) and
    /// drops terms with `|w| <= threshold`.
    pub fn simplify(&self, threshold: f64) -> Self {
        let (basis, inverse) = self.paulis().unique();
        let mut sums = vec![Complex64::new(0.0, 0.0); basis.size()];
        for (&u, &w) in inverse.iter().zip(self.weights()) {
            sums[u] += w;
        }
        let keep: Vec<usize> = (0..sums.len()).filter(|&k| sums[k].norm() > threshold).collect();
        let weights = keep.iter().map(|&k| sums[k]).collect();
        Operator::from_parts(basis.gather(vec![keep.len()], &keep), weights)
    }

    /// Terms reordered by label (stable).
    pub fn sorted(&self) -> Self {
        let labels = self.paulis().labels();
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        Operator {
            terms: self.terms.take(&order).expect("indices in range"),
        }
    }

    /// True when no term survives simplification at `threshold`.
    pub fn is_zero(&self, threshold: f64) -> bool {
        self.simplify(threshold).num_terms() == 0
    }

    /// Dense matrix with basis index `b = Σ b_q 2^q`.
    pub fn to_dense(&self, limit: usize) -> Result<Array2<Complex64>> {
        let n = self.num_qubits();
        if n > limit || n >= 64 {
            return Err(PauliError::TooManyQubits { num_qubits: n, limit });
        }
        let dim = 1usize << n;
        let mut m = Array2::zeros((dim, dim));
        let p = self.paulis();
        for (r, &w) in self.weights().iter().enumerate() {
            let (zm, xm) = (p.mask(r, true), p.mask(r, false));
            let base = w * phase_value(((zm & xm).count_ones() % 4) as u8);
            for b in 0..dim {
                let t = b ^ xm as usize;
                if (zm & t as u64).count_ones() % 2 == 1 {
                    m[[t, b]] -= base;
                } else {
                    m[[t, b]] += base;
                }
            }
        }
        Ok(m)
    }

    /// The operator as a 0-d type-1 array.
    pub fn to_array(&self) -> OperatorArrayType1 {
        OperatorArrayType1::new(self.terms.clone()).expect("1-d terms")
    }
}

/// Commutator of `h` with every element of `pool`, each through the sparse
/// path. All anticommuting pairs are found with one broadcast check.
pub fn pool_commutators(h: &Operator, pool: &OperatorArrayType1) -> Result<Vec<Operator>> {
    if h.num_qubits() != pool.num_qubits() {
        return Err(PauliError::QubitMismatch(h.num_qubits(), pool.num_qubits()));
    }
    let flat = pool.terms().flatten();
    let s = pool.num_terms();
    let c = h.paulis().new_axis(1)?.anticommutation(flat.paulis())?;
    let sp = flat.size();
    let mut per = vec![Vec::new(); pool.size()];
    for (k, &v) in c.iter().enumerate() {
        if v == 1 && flat.weight_slice()[k % sp] != Complex64::new(0.0, 0.0) {
            let (i, j) = (k / sp, k % sp);
            per[j / s].push((i, j));
        }
    }
    let pool_op = Operator::from_terms_unchecked(flat);
    Ok(per
        .into_iter()
        .map(|pairs| {
            let (ia, ib): (Vec<usize>, Vec<usize>) = pairs.into_iter().unzip();
            h.compose_pairs(&pool_op, &ia, &ib, Complex64::new(2.0, 0.0))
        })
        .collect())
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator num_qubits={} num_terms={}", self.num_qubits(), self.num_terms())?;
        for (label, w) in self.paulis().labels().iter().zip(self.weights()) {
            writeln!(f, "  ({:+.6}{:+.6}i) {label}", w.re, w.im)?;
        }
        Ok(())
    }
}
