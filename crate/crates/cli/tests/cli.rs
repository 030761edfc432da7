#[path = "../../core/tests/common/oracle.rs"]
mod oracle;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use num_complex::Complex64;
use oracle::{dense_sum, max_diff, Mat};
use pauli_nd::grouping::CliffordCircuit;
use pauli_nd::Operator;
use pauli_nd_cli as cli;
use tempfile::TempDir;

fn pauli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pauli"))
        .args(args)
        .env_remove("PAULI_DENSE_LIMIT")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = pauli(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn dense(o: &Operator) -> Mat {
    let (l, w) = o.to_labels_weights();
    dense_sum(&l.into_iter().zip(w).collect::<Vec<_>>(), o.num_qubits())
}

fn op(n: usize, terms: &[(&str, f64, f64)]) -> Operator {
    let labels: Vec<&str> = terms.iter().map(|t| t.0).collect();
    let w: Vec<Complex64> = terms.iter().map(|t| Complex64::new(t.1, t.2)).collect();
    Operator::from_labels_weights(n, &labels, &w).unwrap()
}

const NUMBER: &str = r#"{"num_orbitals": 1, "one_body": [{"i": 0, "j": 0, "real": 1.0, "imag": 0.0}]}"#;

#[test]
fn map_number_operator() {
    let dir = TempDir::new().unwrap();
    let input = put(&dir, "n.json", NUMBER);
    let out = dir.path().join("o.json");
    let stdout = ok(&["map", s(&input), "--mapping", "jw", "-o", s(&out)]);
    assert!(stdout.starts_with("2 terms"));
    let o = cli::read_operator(&out).unwrap();
    assert_eq!(o, op(1, &[("I", 0.5, 0.0), ("Z", -0.5, 0.0)]));
}

#[test]
fn map_paths_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    for (n, seed) in [(3, 1), (4, 2)] {
        let input = put(&dir, "h.json", &cli::random_integrals(n, seed).to_json());
        for mapping in ["jw", "parity", "bk"] {
            let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
            ok(&["map", s(&input), "--mapping", mapping, "--sparse", "-o", s(&a)]);
            ok(&["map", s(&input), "--mapping", mapping, "--dense", "-o", s(&b)]);
            assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{mapping} n={n}");
        }
    }
}

#[test]
fn map_empty_integrals() {
    let dir = TempDir::new().unwrap();
    let input = put(&dir, "e.json", r#"{"num_orbitals": 3}"#);
    let out = dir.path().join("o.json");
    ok(&["map", s(&input), "-o", s(&out)]);
    let o = cli::read_operator(&out).unwrap();
    assert_eq!(o.num_terms(), 0);
    assert_eq!(o.num_qubits(), 3);
}

#[test]
fn commutator_examples() {
    let dir = TempDir::new().unwrap();
    let h = put(&dir, "h.json", &op(1, &[("Z", 1.0, 0.0)]).to_json());
    let pool = put(&dir, "p.json", &cli::operators_to_json(&[op(1, &[("X", 1.0, 0.0)]), op(1, &[("Z", 2.0, 0.0)])]).unwrap());
    let out = dir.path().join("c.json");
    let stdout = ok(&["commutators", s(&h), s(&pool), "-o", s(&out)]);
    assert!(stdout.contains("1 single-Pauli commutators"));
    let got = cli::read_operators(&out).unwrap();
    // ZX - XZ = 2iY
    assert_eq!(got[0], op(1, &[("Y", 0.0, 2.0)]));
    assert_eq!(got[1].num_terms(), 0);
}

#[test]
fn commutators_match_dense_for_jw_pool() {
    let dir = TempDir::new().unwrap();
    let integrals = put(&dir, "h.json", &cli::random_integrals(4, 5).to_json());
    let h_path = dir.path().join("ham.json");
    ok(&["map", s(&integrals), "-o", s(&h_path)]);
    let pool_path = dir.path().join("pool.json");
    ok(&["pool", "--modes", "4", "-o", s(&pool_path)]);
    let out = dir.path().join("c.json");
    ok(&["commutators", s(&h_path), s(&pool_path), "-o", s(&out)]);
    let h = cli::read_operator(&h_path).unwrap();
    let pool = cli::read_operators(&pool_path).unwrap();
    let got = cli::read_operators(&out).unwrap();
    assert_eq!(got.len(), pool.len());
    let hd = dense(&h);
    for (a, c) in pool.iter().zip(&got) {
        let ad = dense(a);
        let expect = hd.dot(&ad) - ad.dot(&hd);
        // file weights are rounded to 12 decimals
        assert!(max_diff(&dense(c), &expect) < 1e-10);
    }
}

#[test]
fn partition_examples() {
    let dir = TempDir::new().unwrap();
    let diag = put(&dir, "d.json", &op(2, &[("ZZ", 1.0, 0.0), ("IZ", 0.5, 0.0), ("ZI", 0.2, 0.0)]).to_json());
    let out = dir.path().join("g.json");
    assert!(ok(&["partition", s(&diag), "-o", s(&out)]).starts_with("1 groups"));
    let xz = op(1, &[("X", 1.0, 0.0), ("Z", 1.0, 0.0)]);
    let xz_path = put(&dir, "xz.json", &xz.to_json());
    ok(&["partition", s(&xz_path), "-o", s(&out)]);
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(cli::load_partition(&text, &xz).unwrap().num_groups(), 2);
    // a tampered file fails the clique re-check
    let bad = r#"{"groups": [[0, 1]]}"#;
    assert!(cli::load_partition(bad, &xz).is_err());
}

#[test]
fn diagonalize_examples() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c.json");
    ok(&["diagonalize", "ZZ", "-o", s(&out)]);
    assert!(CliffordCircuit::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap().is_empty());
    let stdout = ok(&["diagonalize", "XX", "YY", "-o", s(&out)]);
    assert!(stdout.contains("XX -> "));
    let circuit = CliffordCircuit::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(!circuit.is_empty());
    assert!(!pauli(&["diagonalize", "X", "Z", "-o", s(&out)]).status.success());
}

#[test]
fn expect_examples() {
    let dir = TempDir::new().unwrap();
    let proj = put(&dir, "p.json", &op(1, &[("I", 0.5, 0.0), ("Z", 0.5, 0.0)]).to_json());
    let zero = put(&dir, "s.json", r#"{"num_qubits": 1, "amplitudes": [[1.0, 0.0], [0.0, 0.0]]}"#);
    assert_eq!(ok(&["expect", s(&proj), s(&zero)]).trim(), "1.0");
    let a = ok(&["expect", s(&proj), "--seed", "3"]);
    assert_eq!(a, ok(&["expect", s(&proj), "--seed", "3"]));
    let limited = Command::new(env!("CARGO_BIN_EXE_pauli"))
        .args(["expect", s(&proj), s(&zero)])
        .env("PAULI_DENSE_LIMIT", "0")
        .output()
        .unwrap();
    assert!(!limited.status.success());
    assert!(String::from_utf8_lossy(&limited.stderr).contains("dense limit"));
}

#[test]
fn errors_exit_nonzero() {
    let dir = TempDir::new().unwrap();
    let junk = put(&dir, "junk.json", "{ not json");
    let out = dir.path().join("o.json");
    let r = pauli(&["map", s(&junk), "-o", s(&out)]);
    assert!(!r.status.success());
    assert!(!out.exists());
    let bad_index = put(&dir, "b.json", r#"{"num_orbitals": 1, "one_body": [{"i": 2, "j": 0, "real": 1.0, "imag": 0.0}]}"#);
    assert!(!pauli(&["map", s(&bad_index), "-o", s(&out)]).status.success());
}

#[test]
fn pool_counts() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("p.json");
    assert!(ok(&["pool", "--modes", "12", "--occupied", "2", "-o", s(&out)]).starts_with("92 operators"));
    let ops = cli::read_operators(&out).unwrap();
    assert_eq!(ops.iter().filter(|o| o.num_terms() == 2).count(), 16);
    assert_eq!(ops.iter().filter(|o| o.num_terms() == 8).count(), 76);
}

#[test]
fn bench_csv() {
    let stdout = ok(&["bench", "--sizes", "2,3", "--repeat", "1"]);
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("operation,size,mean_seconds,std_seconds"));
    assert_eq!(lines.count(), 6);
}
