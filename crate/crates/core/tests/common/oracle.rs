//! Dense-matrix reference implementations. Everything here works from the
//! textbook 2x2 matrices and Kronecker products only, independent of the
//! bit-level code paths under test.
#![allow(dead_code)]

use ndarray::Array2;
use num_complex::Complex64;

pub type Mat = Array2<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn single(p: char) -> Mat {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    let v = match p {
        'I' => [o, z, z, o],
        'X' => [z, o, o, z],
        'Y' => [z, -i, i, z],
        'Z' => [o, z, z, -o],
        _ => panic!("bad label char {p}"),
    };
    Array2::from_shape_vec((2, 2), v.to_vec()).unwrap()
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = Array2::zeros((ar * br, ac * bc));
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[[i * br + k, j * bc + l]] = a[[i, j]] * b[[k, l]];
                }
            }
        }
    }
    out
}

pub fn identity(dim: usize) -> Mat {
    Array2::from_shape_fn((dim, dim), |(i, j)| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) })
}

/// Leftmost label character is the most significant qubit.
pub fn dense_pauli(label: &str) -> Mat {
    label.chars().fold(identity(1), |acc, ch| kron(&acc, &single(ch)))
}

pub fn dense_sum(terms: &[(String, Complex64)], n: usize) -> Mat {
    let mut out = Array2::zeros((1 << n, 1 << n));
    for (l, w) in terms {
        out = out + dense_pauli(l).mapv(|v| v * *w);
    }
    out
}

/// Plain `a · b` that skips zero entries of `a`; fast when `a` is a Pauli
/// or Clifford-gate matrix with one or two entries per row.
pub fn sparse_dot(a: &Mat, b: &Mat) -> Mat {
    let (n, k) = a.dim();
    let mut out = Array2::zeros((n, b.ncols()));
    for i in 0..n {
        for j in 0..k {
            let v = a[[i, j]];
            if v != c(0.0, 0.0) {
                out.row_mut(i).scaled_add(v, &b.row(j));
            }
        }
    }
    out
}

pub fn dagger(m: &Mat) -> Mat {
    m.t().mapv(|v| v.conj())
}

pub fn max_diff(a: &Mat, b: &Mat) -> f64 {
    assert_eq!(a.dim(), b.dim());
    (a - b).iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Embeds a 2x2 matrix acting on qubit `q` of `n`.
fn embed(u: &Mat, q: usize, n: usize) -> Mat {
    let mut m = identity(1);
    for k in (0..n).rev() {
        m = if k == q { kron(&m, u) } else { kron(&m, &identity(2)) };
    }
    m
}

/// Unitary of a Clifford gate on `n` qubits, basis index `b = Σ b_q 2^q`.
pub fn gate_matrix(name: &str, qubits: &[usize], n: usize) -> Mat {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let dim = 1 << n;
    match name {
        "H" => embed(&Array2::from_shape_vec((2, 2), vec![c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]).unwrap(), qubits[0], n),
        "S" => embed(&Array2::from_shape_vec((2, 2), vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)]).unwrap(), qubits[0], n),
        "X" => embed(&single('X'), qubits[0], n),
        "CX" => {
            let (ctl, tgt) = (qubits[0], qubits[1]);
            let mut m = Array2::zeros((dim, dim));
            for b in 0..dim {
                let t = if (b >> ctl) & 1 == 1 { b ^ (1 << tgt) } else { b };
                m[[t, b]] = c(1.0, 0.0);
            }
            m
        }
        "CZ" => Array2::from_shape_fn((dim, dim), |(i, j)| {
            if i != j {
                c(0.0, 0.0)
            } else if (i >> qubits[0]) & 1 == 1 && (i >> qubits[1]) & 1 == 1 {
                c(-1.0, 0.0)
            } else {
                c(1.0, 0.0)
            }
        }),
        other => panic!("unknown gate {other}"),
    }
}
