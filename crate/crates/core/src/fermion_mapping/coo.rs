//! Coordinate-format integrals and their JSON file.

use ndarray::{Array2, ArrayD, IxDyn};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{PauliError, Result};

/// One-body integrals `h̃_μ` at `(I_μ, J_μ)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OneBodyCoo {
    pub values: Vec<Complex64>,
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

/// Two-body integrals `g̃_ν` at `(I_ν, J_ν, K_ν, L_ν)`; raw values, the ½
/// of the Hamiltonian is applied during mapping.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TwoBodyCoo {
    pub values: Vec<Complex64>,
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub k: Vec<usize>,
    pub l: Vec<usize>,
}

fn check_lengths(len: usize, lists: &[&[usize]]) -> Result<()> {
    match lists.iter().find(|l| l.len() != len) {
        Some(l) => Err(PauliError::ElementCount {
            expected: len,
            found: l.len(),
        }),
        None => Ok(()),
    }
}

impl OneBodyCoo {
    pub fn new(values: Vec<Complex64>, i: Vec<usize>, j: Vec<usize>) -> Result<Self> {
        check_lengths(values.len(), &[&i, &j])?;
        Ok(OneBodyCoo { values, i, j })
    }

    /// Nonzero entries in row-major order.
    pub fn from_dense(h: &Array2<Complex64>) -> Self {
        let mut out = OneBodyCoo::default();
        for ((i, j), &v) in h.indexed_iter() {
            if v != Complex64::new(0.0, 0.0) {
                out.push(i, j, v);
            }
        }
        out
    }

    /// Dense `n x n` matrix; repeated coordinates add up.
    pub fn to_dense(&self, n: usize) -> Result<Array2<Complex64>> {
        let mut h = Array2::zeros((n, n));
        for ((&i, &j), &v) in self.i.iter().zip(&self.j).zip(&self.values) {
            if i >= n || j >= n {
                return Err(PauliError::IndexOutOfBounds { index: i.max(j), len: n });
            }
            h[[i, j]] += v;
        }
        Ok(h)
    }

    pub fn push(&mut self, i: usize, j: usize, v: Complex64) {
        self.i.push(i);
        self.j.push(j);
        self.values.push(v);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl TwoBodyCoo {
    pub fn new(values: Vec<Complex64>, i: Vec<usize>, j: Vec<usize>, k: Vec<usize>, l: Vec<usize>) -> Result<Self> {
        check_lengths(values.len(), &[&i, &j, &k, &l])?;
        Ok(TwoBodyCoo { values, i, j, k, l })
    }

    pub fn from_dense(g: &ArrayD<Complex64>) -> Result<Self> {
        if g.ndim() != 4 {
            return Err(PauliError::Dimension(format!("two-body integrals of shape {:?}", g.shape())));
        }
        let mut out = TwoBodyCoo::default();
        for (idx, &v) in g.indexed_iter() {
            if v != Complex64::new(0.0, 0.0) {
                out.push([idx[0], idx[1], idx[2], idx[3]], v);
            }
        }
        Ok(out)
    }

    pub fn to_dense(&self, n: usize) -> Result<ArrayD<Complex64>> {
        let mut g = ArrayD::zeros(IxDyn(&[n, n, n, n]));
        for m in 0..self.len() {
            let idx = [self.i[m], self.j[m], self.k[m], self.l[m]];
            if let Some(&bad) = idx.iter().find(|&&x| x >= n) {
                return Err(PauliError::IndexOutOfBounds { index: bad, len: n });
            }
            g[IxDyn(&idx)] += self.values[m];
        }
        Ok(g)
    }

    pub fn push(&mut self, idx: [usize; 4], v: Complex64) {
        self.i.push(idx[0]);
        self.j.push(idx[1]);
        self.k.push(idx[2]);
        self.l.push(idx[3]);
        self.values.push(v);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OneBodyRecord {
    pub i: usize,
    pub j: usize,
    pub real: f64,
    pub imag: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoBodyRecord {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub real: f64,
    pub imag: f64,
}

/// `{"num_orbitals": n, "one_body": [...], "two_body": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralsFile {
    pub num_orbitals: usize,
    #[serde(default)]
    pub one_body: Vec<OneBodyRecord>,
    #[serde(default)]
    pub two_body: Vec<TwoBodyRecord>,
}

impl IntegralsFile {
    pub fn from_coo(n: usize, h: &OneBodyCoo, g: &TwoBodyCoo) -> Self {
        IntegralsFile {
            num_orbitals: n,
            one_body: (0..h.len())
                .map(|m| OneBodyRecord {
                    i: h.i[m],
                    j: h.j[m],
                    real: h.values[m].re,
                    imag: h.values[m].im,
                })
                .collect(),
            two_body: (0..g.len())
                .map(|m| TwoBodyRecord {
                    i: g.i[m],
                    j: g.j[m],
                    k: g.k[m],
                    l: g.l[m],
                    real: g.values[m].re,
                    imag: g.values[m].im,
                })
                .collect(),
        }
    }

    /// Coordinate lists, with every index checked against `num_orbitals`.
    pub fn to_coo(&self) -> Result<(OneBodyCoo, TwoBodyCoo)> {
        let n = self.num_orbitals;
        let check = |x: usize| {
            if x >= n {
                Err(PauliError::IndexOutOfBounds { index: x, len: n })
            } else {
                Ok(())
            }
        };
        let mut h = OneBodyCoo::default();
        for r in &self.one_body {
            check(r.i)?;
            check(r.j)?;
            h.push(r.i, r.j, Complex64::new(r.real, r.imag));
        }
        let mut g = TwoBodyCoo::default();
        for r in &self.two_body {
            for x in [r.i, r.j, r.k, r.l] {
                check(x)?;
            }
            g.push([r.i, r.j, r.k, r.l], Complex64::new(r.real, r.imag));
        }
        Ok((h, g))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| PauliError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}
