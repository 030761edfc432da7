//! Commuting-set partitioning and simultaneous Clifford diagonalization.

use serde::{Deserialize, Serialize};

use crate::bitarray::{and_popcount, ArrayLike, BitArray};
use crate::error::{PauliError, Result};
use crate::paulis::{CliffordGate, PauliArray, SignArray};

/// Gate-count constant of [`diagonalize`]: circuits never exceed
/// `DIAGONALIZATION_GATE_CONSTANT * n²` gates on `n` qubits.
pub const DIAGONALIZATION_GATE_CONSTANT: usize = 2;

/// `A_ij = 1` iff strings `i` and `j` commute, as an `N x N` bit matrix.
pub fn adjacency_matrix(p: &PauliArray) -> Result<BitArray> {
    if p.ndim() != 1 {
        return Err(PauliError::Dimension(format!("adjacency needs a 1-d array, got {:?}", p.shape())));
    }
    let n = p.size();
    let (z, x) = (p.z(), p.x());
    Ok(BitArray::from_fn(&[n, n], |i, j| {
        (and_popcount(z.row(i), x.row(j)) + and_popcount(x.row(i), z.row(j))) % 2 == 0
    }))
}

/// Index groups into a 1-d source array.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub groups: Vec<Vec<usize>>,
}

impl Partition {
    /// Checks that groups are disjoint, cover `0..len` and are pairwise commuting in `p`.
    pub fn validate(&self, p: &PauliArray) -> Result<()> {
        let n = p.size();
        let mut seen = vec![false; n];
        for g in &self.groups {
            for &i in g {
                if i >= n {
                    return Err(PauliError::IndexOutOfBounds { index: i, len: n });
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(PauliError::Dimension(format!("index {i} appears in two groups")));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(PauliError::Dimension(format!("index {i} is not in any group")));
        }
        let adj = adjacency_matrix(p)?;
        for g in &self.groups {
            for (a, &i) in g.iter().enumerate() {
                if let Some(&j) = g[a + 1..].iter().find(|&&j| !adj.bit(i, j)) {
                    return Err(PauliError::NotCommuting(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| PauliError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Greedy clique cover: vertices by decreasing degree (ties by index), each
/// joining the first group it is adjacent to entirely.
pub fn clique_cover(adj: &BitArray) -> Result<Partition> {
    let shape = adj.shape();
    if shape.len() != 2 || shape[0] != shape[1] {
        return Err(PauliError::MalformedAdjacency(format!("shape {shape:?} is not square")));
    }
    let n = shape[0];
    for i in 0..n {
        if !adj.bit(i, i) {
            return Err(PauliError::MalformedAdjacency(format!("diagonal entry {i} is 0")));
        }
        if let Some(j) = (i + 1..n).find(|&j| adj.bit(i, j) != adj.bit(j, i)) {
            return Err(PauliError::MalformedAdjacency(format!("entries ({i}, {j}) and ({j}, {i}) differ")));
        }
    }
    let degree: Vec<u32> = (0..n).map(|i| adj.row(i).iter().map(|w| w.count_ones()).sum()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(degree[i]));

    // each group keeps the intersection of its members' neighbourhoods
    let mut groups: Vec<(Vec<usize>, Vec<u64>)> = Vec::new();
    for v in order {
        let word = v / 64;
        let bit = 1u64 << (v % 64);
        match groups.iter_mut().find(|(_, common)| common[word] & bit != 0) {
            Some((members, common)) => {
                members.push(v);
                common.iter_mut().zip(adj.row(v)).for_each(|(c, &r)| *c &= r);
            }
            None => groups.push((vec![v], adj.row(v).to_vec())),
        }
    }
    Ok(Partition {
        groups: groups.into_iter().map(|(m, _)| m).collect(),
    })
}

/// Adjacency and greedy cover in one call.
pub fn partition(p: &PauliArray) -> Result<Partition> {
    clique_cover(&adjacency_matrix(p)?)
}

/// Ordered gate sequence on `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordCircuit {
    num_qubits: usize,
    gates: Vec<CliffordGate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateRecord {
    pub name: String,
    pub qubits: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitFile {
    pub num_qubits: usize,
    pub gates: Vec<GateRecord>,
}

impl CliffordCircuit {
    pub fn new(num_qubits: usize, gates: Vec<CliffordGate>) -> Result<Self> {
        for g in &gates {
            g.validate(num_qubits)?;
        }
        Ok(CliffordCircuit { num_qubits, gates })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[CliffordGate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Conjugates every string by the gates in order.
    pub fn apply(&self, p: &PauliArray) -> Result<(PauliArray, SignArray)> {
        if p.num_qubits() != self.num_qubits {
            return Err(PauliError::QubitMismatch(p.num_qubits(), self.num_qubits));
        }
        p.conjugate_gates(&self.gates)
    }

    pub fn to_file(&self) -> CircuitFile {
        CircuitFile {
            num_qubits: self.num_qubits,
            gates: self
                .gates
                .iter()
                .map(|g| GateRecord {
                    name: g.name().to_string(),
                    qubits: g.qubits(),
                })
                .collect(),
        }
    }

    pub fn from_file(file: &CircuitFile) -> Result<Self> {
        let gates = file
            .gates
            .iter()
            .map(|g| CliffordGate::from_parts(&g.name, &g.qubits))
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.num_qubits, gates)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CircuitFile = serde_json::from_str(text).map_err(|e| PauliError::Json(e.to_string()))?;
        Self::from_file(&file)
    }
}

/// Clifford circuit mapping every string of a commuting 1-d array to an
/// `{I, Z}`-only string, plus the conjugated strings and their signs.
///
/// Strings are visited in order. One that still has `x` bits is reduced to
/// `Z_q` on a fresh qubit `q` with CX, CZ, S and H gates. Earlier reduced
/// strings commute with it, so its `x` bits avoid claimed qubits, and
/// diagonal strings commute with the `X_q` it passes through, so the final H
/// keeps them diagonal. At most `n` strings are reduced, each with at most
/// `2n` gates.
pub fn diagonalize(p: &PauliArray) -> Result<(CliffordCircuit, PauliArray, SignArray)> {
    if p.ndim() != 1 {
        return Err(PauliError::Dimension(format!("diagonalize needs a 1-d array, got {:?}", p.shape())));
    }
    let n = p.num_qubits();
    let adj = adjacency_matrix(p)?;
    for i in 0..p.size() {
        if let Some(j) = (i + 1..p.size()).find(|&j| !adj.bit(i, j)) {
            return Err(PauliError::NotCommuting(i, j));
        }
    }

    let mut work = p.clone();
    let mut gates = Vec::new();
    let mut used = vec![false; n];
    for r in 0..p.size() {
        let Some(q) = (0..n).find(|&q| work.x().bit(r, q)) else {
            continue;
        };
        debug_assert!(!used[q]);
        let mut local = Vec::new();
        let cx: Vec<CliffordGate> = (0..n).filter(|&t| t != q && work.x().bit(r, t)).map(|t| CliffordGate::Cx(q, t)).collect();
        work = work.conjugate_gates(&cx)?.0;
        local.extend(cx);
        let cz: Vec<CliffordGate> = (0..n).filter(|&t| t != q && work.z().bit(r, t)).map(|t| CliffordGate::Cz(q, t)).collect();
        work = work.conjugate_gates(&cz)?.0;
        local.extend(cz);
        if work.z().bit(r, q) {
            local.push(CliffordGate::S(q));
            work = work.conjugate_gate(CliffordGate::S(q))?.0;
        }
        local.push(CliffordGate::H(q));
        work = work.conjugate_gate(CliffordGate::H(q))?.0;
        debug_assert!((0..n).all(|t| !work.x().bit(r, t) && work.z().bit(r, t) == (t == q)));
        used[q] = true;
        gates.extend(local);
    }
    let circuit = CliffordCircuit::new(n, gates)?;
    let (diag, signs) = circuit.apply(p)?;
    Ok((circuit, diag, signs))
}
