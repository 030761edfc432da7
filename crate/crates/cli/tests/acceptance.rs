//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#[path = "../../core/tests/common/oracle.rs"]
mod oracle;

use std::process::{Command, ExitCode};
use std::time::Instant;

use ndarray::Array1;
use num_complex::Complex64;
use oracle::{dagger, dense_pauli, dense_sum, gate_matrix, identity, kron, max_diff, single, sparse_dot, Mat};
use pauli_nd::estimation::{operator_covariances, operator_expectations, PauliEstimates};
use pauli_nd::fermion_mapping::{all_excitations, excitation_operator, Excitation};
use pauli_nd::grouping::{adjacency_matrix, clique_cover, diagonalize, DIAGONALIZATION_GATE_CONSTANT};
use pauli_nd::paulis::phase_value;
use pauli_nd::{
    ArrayLike, BitArray, CliffordGate, FermionMapping, Ladder, Operator, OperatorArrayType1, PauliArray, StateVector,
};
use pauli_nd_cli as cli;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dense_op(o: &Operator) -> Mat {
    let (l, w) = o.to_labels_weights();
    dense_sum(&l.into_iter().zip(w).collect::<Vec<_>>(), o.num_qubits())
}

fn random_operator(rng: &mut ChaCha8Rng, n: usize, max_terms: usize) -> Operator {
    let t = rng.random_range(1..=max_terms);
    let p = PauliArray::random_with(&[t], n, rng);
    let w: Vec<Complex64> = (0..t).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    Operator::from_labels_weights(n, &p.labels(), &w).unwrap()
}

fn all_gates(n: usize) -> Vec<CliffordGate> {
    let mut g = Vec::new();
    for q in 0..n {
        g.extend([CliffordGate::H(q), CliffordGate::S(q), CliffordGate::X(q)]);
        for t in 0..n {
            if t != q {
                g.extend([CliffordGate::Cx(q, t), CliffordGate::Cz(q, t)]);
            }
        }
    }
    g
}

fn single_qubit_table() -> Outcome {
    let labels = ["I", "X", "Y", "Z"];
    for a in labels {
        for b in labels {
            let (p, f) = PauliArray::from_label(a).unwrap().compose(&PauliArray::from_label(b).unwrap()).unwrap();
            let lhs = single(a.chars().next().unwrap()).dot(&single(b.chars().next().unwrap()));
            let rhs = dense_pauli(&p.label(0)) * phase_value(f[[]]);
            check(lhs == rhs, || format!("{a}{b} gave (-i)^{} {}", f[[]], p.label(0)))?;
        }
    }
    Ok("16/16 products exact".into())
}

fn dense_faithfulness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    let mut checks = 0usize;
    let mut track = |d: f64, what: &str| -> Result<(), String> {
        worst = worst.max(d);
        checks += 1;
        check(d < 1e-12, || format!("{what} off by {d:e}"))
    };
    let gate_sets: Vec<Vec<CliffordGate>> = (0..=6).map(all_gates).collect();
    let unitaries: Vec<Vec<Mat>> = (0..=6)
        .map(|n| gate_sets[n].iter().map(|g| gate_matrix(g.name(), &g.qubits(), n)).collect())
        .collect();
    for _ in 0..500 {
        let n = rng.random_range(1..=6);
        let (a, b) = (rng.random_range(1..=4), rng.random_range(1..=5));
        let shape2: Vec<usize> = match rng.random_range(0..5) {
            0 => vec![a, b],
            1 => vec![1, b],
            2 => vec![a, 1],
            3 => vec![b],
            _ => vec![],
        };
        let p1 = PauliArray::random_with(&[a, b], n, &mut rng);
        let p2 = PauliArray::random_with(&shape2, n, &mut rng);
        let idx2 = |i: usize, j: usize| match shape2.as_slice() {
            &[s0, s1] => (if s0 == 1 { 0 } else { i }) * s1 + if s1 == 1 { 0 } else { j },
            [_] => j,
            _ => 0,
        };
        let (prod, f) = p1.compose(&p2).unwrap();
        let (comm, coef) = p1.commutator(&p2).unwrap();
        let m = rng.random_range(1..=3);
        let q = PauliArray::random_with(&[], m, &mut rng).broadcast_to(&[a, b]).unwrap();
        let tens = p1.tensor(&q).unwrap();
        for i in 0..a {
            for j in 0..b {
                let r = i * b + j;
                let (d1, d2) = (dense_pauli(&p1.label(r)), dense_pauli(&p2.label(idx2(i, j))));
                let ab = sparse_dot(&d1, &d2);
                track(max_diff(&ab, &(dense_pauli(&prod.label(r)) * phase_value(f[[i, j]]))), "compose")?;
                let expect = &ab - &sparse_dot(&d2, &d1);
                track(max_diff(&expect, &(dense_pauli(&comm.label(r)) * coef[[i, j]])), "commutator")?;
                let kr = kron(&d1, &dense_pauli(&q.label(r)));
                track(max_diff(&kr, &dense_pauli(&tens.label(r))), "tensor")?;
            }
        }
        let flat = p1.flatten();
        let dense_in: Vec<Mat> = (0..flat.size()).map(|r| dense_pauli(&flat.label(r))).collect();
        for (g, u) in gate_sets[n].iter().zip(&unitaries[n]) {
            let (out, signs) = flat.conjugate_gate(*g).unwrap();
            let ud = dagger(u);
            for (r, d) in dense_in.iter().enumerate() {
                let lhs = sparse_dot(&sparse_dot(u, d), &ud);
                track(max_diff(&lhs, &(dense_pauli(&out.label(r)) * c(signs[[r]] as f64, 0.0))), g.name())?;
            }
        }
    }
    Ok(format!("{checks} dense checks, max deviation {worst:.1e} (tol 1e-12)"))
}

fn sparse_commutators() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut fast_total, mut slow_total) = (0, 0);
    for k in 0..50 {
        let n = rng.random_range(1..=6);
        let h = random_operator(&mut rng, n, 40);
        let a = random_operator(&mut rng, n, 40);
        let fast = h.commutator(&a).unwrap();
        let pairs = h.anticommuting_pairs(&a).unwrap().len();
        check(fast.num_terms() == pairs, || format!("case {k}: {} strings for {pairs} pairs", fast.num_terms()))?;
        let slow = h.compose(&a).unwrap().sub(&a.compose(&h).unwrap()).unwrap();
        let (fs, ss) = (fast.simplify(1e-12).sorted(), slow.simplify(1e-12).sorted());
        check(fs.paulis() == ss.paulis(), || format!("case {k}: simplified supports differ"))?;
        let d = fs.weights().iter().zip(ss.weights()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        check(d < 1e-12, || format!("case {k}: weights differ by {d:e}"))?;
        check(fast.num_terms() < slow.num_terms() || slow.num_terms() == 0, || {
            format!("case {k}: {} single-composition strings vs {}", fast.num_terms(), slow.num_terms())
        })?;
        fast_total += fast.num_terms();
        slow_total += slow.num_terms();
    }
    Ok(format!("50/50 equal; {fast_total} strings vs {slow_total} through HA - AH"))
}

fn canonical_anticommutation() -> Outcome {
    let mut count = 0;
    for n in 2..=6 {
        for (name, m) in [
            ("jw", FermionMapping::jordan_wigner(n)),
            ("parity", FermionMapping::parity(n)),
            ("bk", FermionMapping::bravyi_kitaev(n)),
        ] {
            let cre = m.creation_annihilation(Ladder::Creation).to_operators();
            let ann = m.creation_annihilation(Ladder::Annihilation).to_operators();
            for i in 0..n {
                for j in 0..n {
                    let mut mixed = ann[i].anticommutator(&cre[j]).unwrap();
                    if i == j {
                        mixed = mixed.sub(&Operator::identity(n)).unwrap();
                    }
                    let same = ann[i].anticommutator(&ann[j]).unwrap();
                    check(mixed.simplify(1e-12).num_terms() == 0, || format!("{name} n={n}: {{a_{i}, a_{j}^+}}"))?;
                    check(same.simplify(1e-12).num_terms() == 0, || format!("{name} n={n}: {{a_{i}, a_{j}}}"))?;
                    count += 2;
                }
            }
        }
    }
    Ok(format!("{count} relations vanish for jw, parity, bk at n=2..6"))
}

fn mapping_paths() -> Outcome {
    let mut terms = 0;
    for k in 0..20u64 {
        let n = 2 + (k as usize % 5);
        let mapping = ["jw", "parity", "bk"][k as usize % 3];
        let f = cli::random_integrals(n, 100 + k);
        let sparse = cli::map(&f, mapping, false, 1e-12).unwrap().to_canonical_json();
        let dense = cli::map(&f, mapping, true, 1e-12).unwrap().to_canonical_json();
        check(sparse == dense, || format!("{mapping} n={n} seed {}: files differ", 100 + k))?;
        terms += Operator::from_json(&sparse).unwrap().num_terms();
    }
    Ok(format!("20/20 canonical files identical ({terms} terms total)"))
}

fn excitation_counts() -> Outcome {
    let jw = FermionMapping::jordan_wigner(6);
    let (mut singles, mut doubles) = (0, 0);
    for e in all_excitations(6) {
        let t = excitation_operator(&jw, e).unwrap().simplify(1e-12).num_terms();
        match e {
            Excitation::Single { .. } => {
                check(t == 2, || format!("{e:?}: {t} strings"))?;
                singles += 1;
            }
            Excitation::Double { .. } => {
                check(t == 8, || format!("{e:?}: {t} strings"))?;
                doubles += 1;
            }
        }
    }
    Ok(format!("{singles} singles with 2 strings, {doubles} doubles with 8 strings"))
}

/// `2n + 1` pairwise anticommuting strings: `Z..Z X`, `Z..Z Y` and `Z..Z`.
fn anticommuting_set(n: usize) -> PauliArray {
    let mut labels = Vec::new();
    for q in 0..n {
        for p in ['X', 'Y'] {
            let s: String = (0..n).rev().map(|k| if k > q { 'I' } else if k == q { p } else { 'Z' }).collect();
            labels.push(s);
        }
    }
    labels.push("Z".repeat(n));
    PauliArray::from_labels(&labels).unwrap()
}

fn partitioning() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut groups = 0;
    for k in 0..20 {
        let p = PauliArray::random_with(&[100], 8, &mut rng);
        let part = clique_cover(&adjacency_matrix(&p).unwrap()).unwrap();
        let mut seen = vec![0; 100];
        for g in &part.groups {
            for (a, &i) in g.iter().enumerate() {
                seen[i] += 1;
                for &j in &g[a + 1..] {
                    let ok = p.index_axis(0, i).unwrap().commutes_with(&p.index_axis(0, j).unwrap()).unwrap()[[]];
                    check(ok, || format!("set {k}: {i} and {j} grouped but anticommute"))?;
                }
            }
        }
        check(seen.iter().all(|&s| s == 1), || format!("set {k}: not a partition"))?;
        groups += part.num_groups();
    }
    let z = PauliArray::random_with(&[100], 8, &mut rng);
    let diag = PauliArray::new(z.z().clone(), BitArray::zeros(z.z().shape())).unwrap();
    let one = clique_cover(&adjacency_matrix(&diag).unwrap()).unwrap().num_groups();
    check(one == 1, || format!("commuting set gave {one} groups"))?;
    for n in 1..=8 {
        let anti = anticommuting_set(n);
        let k = clique_cover(&adjacency_matrix(&anti).unwrap()).unwrap().num_groups();
        check(k == anti.size(), || format!("{} anticommuting strings gave {k} groups", anti.size()))?;
    }
    Ok(format!("20 sets valid ({groups} groups); commuting -> 1; k anticommuting -> k for k=3..17"))
}

fn diagonalization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst_ratio = 0.0f64;
    for k in 0..100 {
        let n = rng.random_range(1..=6);
        let m = rng.random_range(1..=10);
        let z = PauliArray::random_with(&[m], n, &mut rng);
        let diag = PauliArray::new(z.z().clone(), BitArray::zeros(z.z().shape())).unwrap();
        let gates = all_gates(n);
        let scramble: Vec<CliffordGate> =
            (0..rng.random_range(0..4 * n * n + 1)).map(|_| gates[rng.random_range(0..gates.len())]).collect();
        let (p, _) = diag.conjugate_gates(&scramble).unwrap();
        let (circ, d, signs) = diagonalize(&p).map_err(|e| format!("set {k}: {e}"))?;
        check(d.x().is_zero(), || format!("set {k}: x bits remain"))?;
        check(circ.len() <= DIAGONALIZATION_GATE_CONSTANT * n * n, || format!("set {k}: {} gates", circ.len()))?;
        worst_ratio = worst_ratio.max(circ.len() as f64 / (n * n) as f64);
        let mut u = identity(1 << n);
        for g in circ.gates() {
            u = gate_matrix(g.name(), &g.qubits(), n).dot(&u);
        }
        let ud = dagger(&u);
        for r in 0..m {
            let lhs = u.dot(&dense_pauli(&p.label(r))).dot(&ud);
            let rhs = dense_pauli(&d.label(r)) * c(signs[[r]] as f64, 0.0);
            let e = max_diff(&lhs, &rhs);
            check(e < 1e-12, || format!("set {k} string {r}: off by {e:e}"))?;
        }
    }
    Ok(format!(
        "100/100 diagonal and dense-verified; gates <= {DIAGONALIZATION_GATE_CONSTANT} n^2 (worst {worst_ratio:.2} n^2)"
    ))
}

fn expectations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut worst = 0.0f64;
    for k in 0..100 {
        let n = rng.random_range(1..=6);
        let ops: Vec<Operator> = (0..3).map(|_| random_operator(&mut rng, n, 12)).collect();
        // the last element is Hermitian so its variance is checked too
        let herm = ops[2].add(&ops[2].adjoint()).unwrap();
        let ops = vec![ops[0].clone(), ops[1].clone(), herm];
        let arr = OperatorArrayType1::from_operators(&[3], &ops).unwrap();
        let state = StateVector::random(n, rng.random());
        let pe = PauliEstimates::from_state(arr.to_type2().basis(), &state, true, 20).unwrap();
        let e = operator_expectations(&arr, &pe).unwrap();
        let cov = operator_covariances(&arr, &arr, &pe).unwrap();
        let psi = Array1::from_vec(state.amplitudes().to_vec());
        let bra = psi.mapv(|a| a.conj());
        let dense: Vec<Mat> = ops.iter().map(dense_op).collect();
        let ev: Vec<Complex64> = dense.iter().map(|d| bra.dot(&d.dot(&psi))).collect();
        for i in 0..3 {
            let d = (e[[i]] - ev[i]).norm();
            worst = worst.max(d);
            check(d < 1e-10, || format!("case {k}: expectation {i} off by {d:e}"))?;
            for j in 0..3 {
                let want = bra.dot(&dense[i].dot(&dense[j]).dot(&psi)) - ev[i] * ev[j];
                let d = (cov[[i, j]] - want).norm();
                worst = worst.max(d);
                check(d < 1e-10, || format!("case {k}: covariance ({i}, {j}) off by {d:e}"))?;
            }
        }
        let var = cov[[2, 2]];
        check(var.im.abs() < 1e-10 && var.re > -1e-10, || format!("case {k}: variance {var}"))?;
    }
    Ok(format!("100/100 within 1e-10 (max deviation {worst:.1e}); Hermitian variances real, >= 0"))
}

fn performance() -> Outcome {
    let a = PauliArray::random(&[1000, 1], 20, 1);
    let b = PauliArray::random(&[1000], 20, 2);
    let start = Instant::now();
    let (p, _) = a.compose(&b).unwrap();
    let secs = start.elapsed().as_secs_f64();
    check(p.shape() == [1000, 1000], || format!("shape {:?}", p.shape()))?;
    check(secs < 5.0, || format!("composition took {secs:.2} s"))?;

    let out = Command::new(env!("CARGO_BIN_EXE_pauli"))
        .args(["bench", "--sizes", "4,8,12", "--repeat", "2"])
        .output()
        .map_err(|e| e.to_string())?;
    check(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    let csv = String::from_utf8(out.stdout).unwrap();
    let mut rows: Vec<(String, usize, f64)> = Vec::new();
    for line in csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        rows.push((f[0].to_string(), f[1].parse().unwrap(), f[2].parse().unwrap()));
    }
    let mut summary = Vec::new();
    for op in ["map_sparse", "map_dense", "commutators"] {
        let means: Vec<f64> = rows.iter().filter(|r| r.0 == op).map(|r| r.2).collect();
        check(means.len() == 3, || format!("{op}: {} rows", means.len()))?;
        check(means.windows(2).all(|w| w[0] <= w[1]), || format!("{op}: means {means:?} decrease"))?;
        summary.push(format!("{op} {:.1e}..{:.1e} s", means[0], means[2]));
    }
    Ok(format!("(1000,1)x(1000,) at n=20 in {secs:.3} s; bench nondecreasing: {}", summary.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, f64); 10] = [
        ("single-qubit algebra table", single_qubit_table, 1.0),
        ("dense faithfulness suite", dense_faithfulness, 60.0),
        ("sparse-commutator equivalence", sparse_commutators, f64::INFINITY),
        ("canonical anticommutation relations", canonical_anticommutation, 60.0),
        ("dense/sparse mapping path equivalence", mapping_paths, f64::INFINITY),
        ("JW excitation Pauli counts", excitation_counts, f64::INFINITY),
        ("partitioning validity", partitioning, f64::INFINITY),
        ("diagonalization", diagonalization, f64::INFINITY),
        ("expectation values", expectations, f64::INFINITY),
        ("performance smoke", performance, f64::INFINITY),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let secs = start.elapsed().as_secs_f64();
        if outcome.is_ok() && secs >= budget {
            outcome = Err(format!("took {secs:.2} s, budget {budget} s"));
        }
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{secs:.2} s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} [{secs:.2} s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
