//! Subcommand implementations behind the `pauli` binary. Every function
//! here is pure apart from the file helpers, so tests drive them directly.

pub mod bench;

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use pauli_nd::estimation::{operator_expectation, PauliEstimates};
use pauli_nd::fermion_mapping::{
    all_excitations, excitation_pool, spin_conserving_excitations, IntegralsFile, OneBodyCoo, TwoBodyCoo,
};
use pauli_nd::grouping::{diagonalize, partition, CliffordCircuit, Partition};
use pauli_nd::operators::{pool_commutators, OperatorFile, DEFAULT_SIMPLIFY_THRESHOLD};
use pauli_nd::{FermionMapping, Operator, OperatorArrayType1, PauliArray, SignArray, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Dense-backend qubit cap when neither the flag nor `PAULI_DENSE_LIMIT` is set.
pub const DEFAULT_DENSE_LIMIT: usize = 20;

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn read_operator(path: &Path) -> Result<Operator> {
    Operator::from_json(&read(path)?).with_context(|| format!("parsing operator {}", path.display()))
}

/// Operator files in a JSON array.
pub fn read_operators(path: &Path) -> Result<Vec<Operator>> {
    let files: Vec<OperatorFile> =
        serde_json::from_str(&read(path)?).with_context(|| format!("parsing operator list {}", path.display()))?;
    files.iter().map(|f| Ok(f.to_operator()?)).collect()
}

/// Canonical JSON array: each operator sorted by label, weights rounded.
pub fn operators_to_json(ops: &[Operator]) -> Result<String> {
    let values = ops
        .iter()
        .map(|o| serde_json::from_str::<serde_json::Value>(&o.to_canonical_json()))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(serde_json::to_string_pretty(&values)?)
}

/// Maps second-quantized integrals with the named mapping, then simplifies.
pub fn map(integrals: &IntegralsFile, mapping: &str, dense: bool, threshold: f64) -> Result<Operator> {
    if threshold < 0.0 {
        bail!("threshold must be non-negative, got {threshold}");
    }
    let n = integrals.num_orbitals;
    let m = FermionMapping::by_name(mapping, n)?;
    let (h, g) = integrals.to_coo()?;
    let op = if dense {
        m.map_dense(&h.to_dense(n)?, &g.to_dense(n)?)?
    } else {
        m.map_sparse(&h, &g)?
    };
    Ok(op.simplify(threshold))
}

/// Random Hermitian integrals: every one-body entry and `2n²` two-body
/// tuples, each with its Hermitian partner.
pub fn random_integrals(n: usize, seed: u64) -> IntegralsFile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let value = |rng: &mut ChaCha8Rng| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let mut h = OneBodyCoo::default();
    for i in 0..n {
        h.push(i, i, Complex64::new(value(&mut rng).re, 0.0));
        for j in i + 1..n {
            let v = value(&mut rng);
            h.push(i, j, v);
            h.push(j, i, v.conj());
        }
    }
    let mut g = TwoBodyCoo::default();
    for _ in 0..2 * n * n {
        let idx: [usize; 4] = std::array::from_fn(|_| rng.random_range(0..n));
        let v = value(&mut rng);
        g.push(idx, v);
        g.push([idx[3], idx[2], idx[1], idx[0]], v.conj());
    }
    IntegralsFile::from_coo(n, &h, &g)
}

/// Commutators of one Hamiltonian with every pool element.
#[derive(Debug, Clone)]
pub struct CommutatorReport {
    pub operators: Vec<Operator>,
    /// Single-Pauli commutators computed, one per anticommuting pair.
    pub single_commutators: usize,
    /// Strings a two-composition `HA - AH` would materialize.
    pub composition_strings: usize,
    pub terms_after: usize,
}

pub fn commutators(h: &Operator, pool: &[Operator], threshold: f64) -> Result<CommutatorReport> {
    if pool.is_empty() {
        return Ok(CommutatorReport {
            operators: Vec::new(),
            single_commutators: 0,
            composition_strings: 0,
            terms_after: 0,
        });
    }
    if let Some(bad) = pool.iter().find(|a| a.num_qubits() != h.num_qubits()) {
        bail!("pool element on {} qubits, Hamiltonian on {}", bad.num_qubits(), h.num_qubits());
    }
    let arr = OperatorArrayType1::from_operators(&[pool.len()], pool)?;
    let raw = pool_commutators(h, &arr)?;
    let single_commutators = raw.iter().map(Operator::num_terms).sum();
    let composition_strings = pool.iter().map(|a| 2 * h.num_terms() * a.num_terms()).sum();
    let operators: Vec<Operator> = raw.iter().map(|o| o.simplify(threshold)).collect();
    let terms_after = operators.iter().map(Operator::num_terms).sum();
    Ok(CommutatorReport {
        operators,
        single_commutators,
        composition_strings,
        terms_after,
    })
}

/// Partition output: index groups plus their labels for reading by eye.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionFile {
    pub num_qubits: usize,
    pub groups: Vec<Vec<usize>>,
    pub labels: Vec<Vec<String>>,
}

/// Commuting groups of the operator's strings.
pub fn partition_operator(o: &Operator) -> Result<PartitionFile> {
    let p = o.paulis();
    let part = partition(p)?;
    let labels = part.groups.iter().map(|g| g.iter().map(|&i| p.label(i)).collect()).collect();
    Ok(PartitionFile {
        num_qubits: o.num_qubits(),
        groups: part.groups,
        labels,
    })
}

/// Reads a partition file and re-checks it against the operator it came from.
pub fn load_partition(text: &str, o: &Operator) -> Result<Partition> {
    let part = Partition::from_json(text)?;
    part.validate(o.paulis())?;
    Ok(part)
}

pub fn diagonalize_labels<S: AsRef<str>>(labels: &[S]) -> Result<(CliffordCircuit, PauliArray, SignArray)> {
    if labels.is_empty() {
        bail!("no Pauli strings given");
    }
    Ok(diagonalize(&PauliArray::from_labels(labels)?)?)
}

pub fn expect(o: &Operator, state: &StateVector, limit: usize) -> Result<Complex64> {
    let pe = PauliEstimates::from_state(o.paulis(), state, false, limit)?;
    Ok(operator_expectation(o, &pe)?)
}

/// Mapped excitation operators: every single and double on `modes` modes, or
/// the spin-conserving set when `occupied` spatial orbitals are given.
pub fn pool(mapping: &str, modes: usize, occupied: Option<usize>) -> Result<Vec<Operator>> {
    let excitations = match occupied {
        None => all_excitations(modes),
        Some(k) => {
            if modes % 2 != 0 {
                bail!("spin-conserving pools need an even number of modes, got {modes}");
            }
            spin_conserving_excitations(modes / 2, k)?
        }
    };
    if excitations.is_empty() {
        return Ok(Vec::new());
    }
    let m = FermionMapping::by_name(mapping, modes)?;
    let arr = excitation_pool(&m, &excitations)?;
    Ok(arr.to_operators().iter().map(|o| o.simplify(DEFAULT_SIMPLIFY_THRESHOLD)).collect())
}

/// Short text form of a complex number for terminal output.
pub fn format_complex(v: Complex64) -> String {
    if v.im.abs() <= 1e-12 {
        format!("{:?}", v.re)
    } else {
        format!("{:?}{:+?}i", v.re, v.im)
    }
}
