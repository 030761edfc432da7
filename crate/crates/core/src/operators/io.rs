//! Operator JSON files: `{"num_qubits": n, "terms": [{"label", "real", "imag"}]}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Operator;
use crate::error::{PauliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub label: String,
    pub real: f64,
    pub imag: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorFile {
    pub num_qubits: usize,
    pub terms: Vec<TermRecord>,
}

/// Rounds to 12 decimals and clears negative zero.
fn canonical_float(v: f64) -> f64 {
    let r = (v * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

impl OperatorFile {
    pub fn from_operator(o: &Operator) -> Self {
        let (labels, weights) = o.to_labels_weights();
        OperatorFile {
            num_qubits: o.num_qubits(),
            terms: labels
                .into_iter()
                .zip(weights)
                .map(|(label, w)| TermRecord {
                    label,
                    real: w.re,
                    imag: w.im,
                })
                .collect(),
        }
    }

    pub fn to_operator(&self) -> Result<Operator> {
        let labels: Vec<&str> = self.terms.iter().map(|t| t.label.as_str()).collect();
        let weights: Vec<Complex64> = self.terms.iter().map(|t| Complex64::new(t.real, t.imag)).collect();
        Operator::from_labels_weights(self.num_qubits, &labels, &weights)
    }
}

impl Operator {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&OperatorFile::from_operator(self)).expect("plain data serializes")
    }

    /// Terms sorted by label with weights rounded to 12 decimals, so equal
    /// operators built along different summation orders print identically.
    /// Call [`Operator::simplify`] first to merge repeated strings.
    pub fn to_canonical_json(&self) -> String {
        let mut file = OperatorFile::from_operator(&self.sorted());
        for t in &mut file.terms {
            t.real = canonical_float(t.real);
            t.imag = canonical_float(t.imag);
        }
        serde_json::to_string_pretty(&file).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: OperatorFile = serde_json::from_str(text).map_err(|e| PauliError::Json(e.to_string()))?;
        file.to_operator()
    }
}
