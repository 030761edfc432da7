//! Fermion-to-qubit mappings defined by an invertible GF(2) matrix `M`.
//!
//! Occupations `f` map to qubit bits `b = M f (mod 2)`. With `θ_ij = 1` iff
//! `i > j`, mode `i` is represented by
//!
//! ```text
//! a_i^± = ½ X^{u_i} Z^{p_i} (1 ± Z^{r_i})
//! ```
//!
//! where `u_i` is column `i` of `M`, `p_i` is row `i` of `θ M⁻¹` and `r_i` is
//! row `i` of `M⁻¹` (`+` creates, `-` annihilates). Because `r_i · u_j = δ_ij`
//! and `p_i · u_j = θ_ij`, products of ladder operators reorder into one
//! Pauli string times commuting diagonal factors; those are the factor
//! arrays returned by [`FermionMapping::one_body_factors`] and
//! [`FermionMapping::two_body_factors`].

mod coo;
mod pool;

use ndarray::{Array2, ArrayD, IxDyn};
use num_complex::Complex64;

use crate::bitarray::{ArrayLike, BitArray};
use crate::error::{PauliError, Result};
use crate::operators::{Operator, OperatorArrayType1, WeightedPauliArray, DEFAULT_SIMPLIFY_THRESHOLD};
use crate::paulis::{phase_value, PauliArray};
pub use coo::{IntegralsFile, OneBodyCoo, OneBodyRecord, TwoBodyCoo, TwoBodyRecord};
pub use pool::{all_excitations, excitation_operator, excitation_pool, spin_conserving_excitations, Excitation};

/// Largest mode count accepted by [`FermionMapping::map_dense`].
pub const DENSE_MAPPING_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Creation,
    Annihilation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FermionMapping {
    m: BitArray,
    minv: BitArray,
    theta: BitArray,
    /// Row `i`: X exponents of mode `i` (column `i` of `M`).
    update: BitArray,
    /// Row `i`: Z exponents of the parity string (row `i` of `θ M⁻¹`).
    parity: BitArray,
    /// Row `i`: Z exponents of the occupation projector (row `i` of `M⁻¹`).
    occupation: BitArray,
}

impl FermionMapping {
    pub fn new(m: BitArray) -> Result<Self> {
        let minv = m.gf2_inverse()?;
        let n = m.num_bits();
        let theta = BitArray::from_fn(&[n, n], |i, j| i > j);
        Ok(FermionMapping {
            update: m.transpose_matrix()?,
            parity: theta.matmul(&minv)?,
            occupation: minv.clone(),
            m,
            minv,
            theta,
        })
    }

    pub fn jordan_wigner(n: usize) -> Self {
        Self::new(BitArray::identity(n)).expect("identity is invertible")
    }

    /// `b_q = Σ_{p<=q} f_p`.
    pub fn parity(n: usize) -> Self {
        Self::new(BitArray::from_fn(&[n, n], |q, p| p <= q)).expect("unit lower triangular")
    }

    /// Fenwick-tree construction: qubit `j` stores the parity of modes
    /// `j - lowbit(j + 1) < k <= j`.
    pub fn bravyi_kitaev(n: usize) -> Self {
        let m = BitArray::from_fn(&[n, n], |j, k| {
            let low = (j + 1) & (j + 1).wrapping_neg();
            k <= j && k + low > j
        });
        Self::new(m).expect("unit lower triangular")
    }

    /// `jw`, `parity` or `bk` (long names accepted).
    pub fn by_name(name: &str, n: usize) -> Result<Self> {
        match name.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "jw" | "jordanwigner" => Ok(Self::jordan_wigner(n)),
            "parity" => Ok(Self::parity(n)),
            "bk" | "bravyikitaev" => Ok(Self::bravyi_kitaev(n)),
            _ => Err(PauliError::Json(format!("unknown mapping {name}"))),
        }
    }

    pub fn num_modes(&self) -> usize {
        self.m.num_bits()
    }

    pub fn matrix(&self) -> &BitArray {
        &self.m
    }

    pub fn inverse(&self) -> &BitArray {
        &self.minv
    }

    pub fn theta(&self) -> &BitArray {
        &self.theta
    }

    /// Qubit bits `b = M f`.
    pub fn occupation_to_bits(&self, f: &[bool]) -> Result<Vec<bool>> {
        self.m.matvec(f)
    }

    /// Occupations `f = M⁻¹ b`.
    pub fn bits_to_occupation(&self, b: &[bool]) -> Result<Vec<bool>> {
        self.minv.matvec(b)
    }

    fn check_indices(&self, idx: &[usize]) -> Result<()> {
        let n = self.num_modes();
        match idx.iter().find(|&&i| i >= n) {
            Some(&index) => Err(PauliError::IndexOutOfBounds { index, len: n }),
            None => Ok(()),
        }
    }

    /// XOR of the selected rows of `rows` for every position.
    fn xor_rows(rows: &BitArray, picks: &[&[usize]]) -> BitArray {
        let mut out = rows.take(picks[0]).expect("checked");
        for p in &picks[1..] {
            out = out.xor(&rows.take(p).expect("checked")).expect("same shape");
        }
        out
    }

    /// Strings `X^x Z^z` as one-term type-1 arrays (weights carry the
    /// composition phase times `signs`).
    fn xz_terms(x: BitArray, z: BitArray, signs: &[f64]) -> OperatorArrayType1 {
        let zero = BitArray::zeros(x.shape());
        let xs = PauliArray::new(zero.clone(), x).expect("same shape");
        let zs = PauliArray::new(z, zero).expect("same shape");
        let (p, f) = xs.compose(&zs).expect("same shape");
        let w: Vec<Complex64> = f.iter().zip(signs).map(|(&k, &s)| phase_value(k) * s).collect();
        let w = ArrayD::from_shape_vec(IxDyn(p.shape()), w).expect("shape matches");
        let terms = WeightedPauliArray::new(p, w).expect("same shape");
        OperatorArrayType1::new(terms.new_axis(1).expect("1-d")).expect("has summation axis")
    }

    /// `1 + s_μ Z^{r_μ}` for every position μ: two terms each.
    fn diagonal_factor(r: &BitArray, signs: &[f64]) -> OperatorArrayType1 {
        let (mu, n) = (r.num_rows(), r.num_bits());
        let z = BitArray::from_fn(&[mu, 2, n], |row, q| row % 2 == 1 && r.bit(row / 2, q));
        let p = PauliArray::new(z, BitArray::zeros(&[mu, 2, n])).expect("same shape");
        let w: Vec<Complex64> = signs.iter().flat_map(|&s| [Complex64::new(1.0, 0.0), Complex64::new(s, 0.0)]).collect();
        let w = ArrayD::from_shape_vec(IxDyn(&[mu, 2]), w).expect("shape matches");
        OperatorArrayType1::new(WeightedPauliArray::new(p, w).expect("same shape")).expect("has summation axis")
    }

    fn theta_bit(&self, i: usize, j: usize) -> bool {
        self.theta.bit(i, j)
    }

    /// Ladder operators `a_i^±` for every mode: shape `(n,)`, two terms each.
    pub fn creation_annihilation(&self, ladder: Ladder) -> OperatorArrayType1 {
        let n = self.num_modes();
        let s = if ladder == Ladder::Creation { 1.0 } else { -1.0 };
        let base = Self::xz_terms(self.update.clone(), self.parity.clone(), &vec![0.5; n]);
        base.compose(&Self::diagonal_factor(&self.occupation, &vec![s; n]))
            .expect("same shape")
    }

    /// `U`, `F⁺` and `F⁻` with `a_i^+ a_j^- = ¼ U F⁺ F⁻`:
    /// `U = (-1)^{θ_ij} X^{u_i+u_j} Z^{p_i+p_j}`,
    /// `F⁺ = 1 + (-1)^{δ_ij} Z^{r_i}`, `F⁻ = 1 - Z^{r_j}`.
    pub fn one_body_factors(&self, i: &[usize], j: &[usize]) -> Result<[OperatorArrayType1; 3]> {
        if i.len() != j.len() {
            return Err(PauliError::ElementCount {
                expected: i.len(),
                found: j.len(),
            });
        }
        self.check_indices(i)?;
        self.check_indices(j)?;
        let sign = |b: bool| if b { -1.0 } else { 1.0 };
        let u_sign: Vec<f64> = i.iter().zip(j).map(|(&a, &b)| sign(self.theta_bit(a, b))).collect();
        let u = Self::xz_terms(
            Self::xor_rows(&self.update, &[i, j]),
            Self::xor_rows(&self.parity, &[i, j]),
            &u_sign,
        );
        let f_plus: Vec<f64> = i.iter().zip(j).map(|(&a, &b)| sign(a == b)).collect();
        let f2 = Self::diagonal_factor(&self.occupation.take(i)?, &f_plus);
        let f1 = Self::diagonal_factor(&self.occupation.take(j)?, &vec![-1.0; j.len()]);
        Ok([u, f2, f1])
    }

    /// `U`, `F⁴⁺`, `F³⁺`, `F²⁻`, `F¹⁻` with
    /// `a_i^+ a_j^+ a_k^- a_l^- = (1/16) U F⁴⁺ F³⁺ F²⁻ F¹⁻`. The sign of each
    /// diagonal factor picks up `(-1)^δ` for every later index it equals.
    pub fn two_body_factors(
        &self,
        i: &[usize],
        j: &[usize],
        k: &[usize],
        l: &[usize],
    ) -> Result<[OperatorArrayType1; 5]> {
        let len = i.len();
        for other in [j, k, l] {
            if other.len() != len {
                return Err(PauliError::ElementCount {
                    expected: len,
                    found: other.len(),
                });
            }
        }
        for idx in [i, j, k, l] {
            self.check_indices(idx)?;
        }
        let sign = |odd: usize| if odd % 2 == 1 { -1.0 } else { 1.0 };
        let idx = [i, j, k, l];
        let u_sign: Vec<f64> = (0..len)
            .map(|m| {
                let t = [i[m], j[m], k[m], l[m]];
                let mut count = 0;
                for a in 0..4 {
                    for b in a + 1..4 {
                        count += self.theta_bit(t[a], t[b]) as usize;
                    }
                }
                sign(count)
            })
            .collect();
        let u = Self::xz_terms(
            Self::xor_rows(&self.update, &idx),
            Self::xor_rows(&self.parity, &idx),
            &u_sign,
        );
        let factor = |pos: usize, base: f64| -> Result<OperatorArrayType1> {
            let signs: Vec<f64> = (0..len)
                .map(|m| {
                    let me = idx[pos][m];
                    let hits = idx[pos + 1..].iter().filter(|later| later[m] == me).count();
                    base * sign(hits)
                })
                .collect();
            Ok(Self::diagonal_factor(&self.occupation.take(idx[pos])?, &signs))
        };
        Ok([u, factor(0, 1.0)?, factor(1, 1.0)?, factor(2, -1.0)?, factor(3, -1.0)?])
    }

    /// `Σ_ij h_ij a_i^+ a_j^- + ½ Σ_ijkl g_ijkl a_i^+ a_j^+ a_k^- a_l^-` built
    /// from every index tuple by broadcast composition, then simplified.
    pub fn map_dense(&self, h: &Array2<Complex64>, g: &ArrayD<Complex64>) -> Result<Operator> {
        let n = self.num_modes();
        if n > DENSE_MAPPING_LIMIT {
            return Err(PauliError::TooManyQubits {
                num_qubits: n,
                limit: DENSE_MAPPING_LIMIT,
            });
        }
        if h.dim() != (n, n) || g.shape() != [n, n, n, n] {
            return Err(PauliError::Dimension(format!(
                "integrals of shapes {:?} and {:?} for {n} modes",
                h.shape(),
                g.shape()
            )));
        }
        let cre = self.creation_annihilation(Ladder::Creation);
        let ann = self.creation_annihilation(Ladder::Annihilation);
        let at = |op: &OperatorArrayType1, axis: usize, ndim: usize| {
            let mut shape = vec![1; ndim];
            shape[axis] = n;
            op.reshape(&shape).expect("n elements")
        };
        let one = at(&cre, 0, 2).compose(&at(&ann, 1, 2))?;
        let one = one.mul_weights(&h.clone().into_dyn())?.sum_all();
        let two = at(&cre, 0, 4)
            .compose(&at(&cre, 1, 4))?
            .compose(&at(&ann, 2, 4))?
            .compose(&at(&ann, 3, 4))?;
        let two = two.mul_weights(&g.mapv(|v| v * 0.5))?.sum_all();
        Ok(one.add(&two)?.simplify(DEFAULT_SIMPLIFY_THRESHOLD))
    }

    /// Same Hamiltonian from coordinate lists; only listed tuples are built.
    pub fn map_sparse(&self, h: &OneBodyCoo, g: &TwoBodyCoo) -> Result<Operator> {
        let n = self.num_modes();
        let mut total = Operator::zero(n);
        if !h.is_empty() {
            let [u, f2, f1] = self.one_body_factors(&h.i, &h.j)?;
            let w: Vec<Complex64> = h.values.iter().map(|v| v * 0.25).collect();
            let prod = u.compose(&f2)?.compose(&f1)?;
            let prod = prod.mul_weights(&ArrayD::from_shape_vec(IxDyn(&[w.len()]), w).expect("1-d"))?;
            total = total.add(&prod.sum_all())?;
        }
        if !g.is_empty() {
            let [u, f4, f3, f2, f1] = self.two_body_factors(&g.i, &g.j, &g.k, &g.l)?;
            let w: Vec<Complex64> = g.values.iter().map(|v| v * (0.5 / 16.0)).collect();
            let prod = u.compose(&f4)?.compose(&f3)?.compose(&f2)?.compose(&f1)?;
            let prod = prod.mul_weights(&ArrayD::from_shape_vec(IxDyn(&[w.len()]), w).expect("1-d"))?;
            total = total.add(&prod.sum_all())?;
        }
        Ok(total.simplify(DEFAULT_SIMPLIFY_THRESHOLD))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{dense_pauli, kron, max_diff, Mat};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mappings(n: usize) -> [FermionMapping; 3] {
        [
            FermionMapping::jordan_wigner(n),
            FermionMapping::parity(n),
            FermionMapping::bravyi_kitaev(n),
        ]
    }

    fn dense(o: &Operator) -> Mat {
        o.to_dense(8).unwrap()
    }

    #[test]
    fn predefined_matrices() {
        assert_eq!(FermionMapping::jordan_wigner(3).matrix(), &BitArray::identity(3));
        let p = FermionMapping::parity(3);
        let expect = BitArray::from_bools(&[3, 3], &[true, false, false, true, true, false, true, true, true]).unwrap();
        assert_eq!(p.matrix(), &expect);
        let bk = FermionMapping::bravyi_kitaev(4);
        let rows: Vec<Vec<bool>> = (0..4).map(|r| (0..4).map(|q| bk.matrix().bit(r, q)).collect()).collect();
        assert_eq!(
            rows,
            vec![
                vec![true, false, false, false],
                vec![true, true, false, false],
                vec![false, false, true, false],
                vec![true, true, true, true],
            ]
        );
        for n in 1..=8 {
            for m in mappings(n) {
                assert_eq!(m.matrix().matmul(m.inverse()).unwrap(), BitArray::identity(n));
            }
        }
    }

    #[test]
    fn occupation_bits() {
        let jw = FermionMapping::jordan_wigner(3);
        assert_eq!(jw.occupation_to_bits(&[true, false, true]).unwrap(), vec![true, false, true]);
        let p = FermionMapping::parity(3);
        let b = p.occupation_to_bits(&[true, true, false]).unwrap();
        assert_eq!(b, vec![true, false, false]);
        assert_eq!(p.bits_to_occupation(&b).unwrap(), vec![true, true, false]);
        assert!(p.occupation_to_bits(&[true]).is_err());
    }

    #[test]
    fn jw_creation_textbook() {
        let a = FermionMapping::jordan_wigner(1).creation_annihilation(Ladder::Creation).get(0);
        let s = a.simplify(1e-12).sorted();
        assert_eq!(s.paulis().labels(), vec!["X", "Y"]);
        assert_eq!(s.weights(), &[c(0.5, 0.0), c(0.0, -0.5)]);

        // a_2^+ on three modes: sigma^- on qubit 2 after Z on qubits 1, 0
        let a2 = FermionMapping::jordan_wigner(3).creation_annihilation(Ladder::Creation).get(2);
        let lower = ndarray::array![[c(0.0, 0.0), c(0.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
        let expect = kron(&kron(&lower, &dense_pauli("Z")), &dense_pauli("Z"));
        assert!(max_diff(&dense(&a2), &expect) < 1e-12);
    }

    #[test]
    fn ladder_adjoint_relation() {
        for n in 1..=4 {
            for m in mappings(n) {
                let cre = m.creation_annihilation(Ladder::Creation);
                let ann = m.creation_annihilation(Ladder::Annihilation);
                for i in 0..n {
                    let d = dense(&cre.get(i)).t().mapv(|v| v.conj());
                    assert!(max_diff(&d, &dense(&ann.get(i))) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn one_body_factors_match_ladder_products() {
        for n in 1..=4 {
            for m in mappings(n) {
                let cre = m.creation_annihilation(Ladder::Creation);
                let ann = m.creation_annihilation(Ladder::Annihilation);
                let (i, j): (Vec<usize>, Vec<usize>) = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).unzip();
                let [u, f2, f1] = m.one_body_factors(&i, &j).unwrap();
                let prod = u.compose(&f2).unwrap().compose(&f1).unwrap().scale(c(0.25, 0.0));
                for (k, (&a, &b)) in i.iter().zip(&j).enumerate() {
                    let expect = dense(&cre.get(a)).dot(&dense(&ann.get(b)));
                    assert!(max_diff(&dense(&prod.get(k)), &expect) < 1e-12, "n={n} ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn number_operator_jw() {
        let m = FermionMapping::jordan_wigner(3);
        let [u, f2, f1] = m.one_body_factors(&[1], &[1]).unwrap();
        let o = u.compose(&f2).unwrap().compose(&f1).unwrap().scale(c(0.25, 0.0)).get(0).simplify(1e-12);
        assert_eq!(o.paulis().labels(), vec!["III", "IZI"]);
        assert_eq!(o.weights(), &[c(0.5, 0.0), c(-0.5, 0.0)]);
        let [u01, ..] = m.one_body_factors(&[0, 1], &[1, 0]).unwrap();
        let w = u01.terms().weight_slice();
        assert_eq!(w[0], -w[1]);
    }

    #[test]
    fn two_body_factors_match_ladder_products() {
        for m in mappings(3) {
            let cre = m.creation_annihilation(Ladder::Creation);
            let ann = m.creation_annihilation(Ladder::Annihilation);
            let tuples: Vec<[usize; 4]> = (0..81).map(|t| [t / 27, (t / 9) % 3, (t / 3) % 3, t % 3]).collect();
            let pick = |p: usize| tuples.iter().map(|t| t[p]).collect::<Vec<_>>();
            let [u, f4, f3, f2, f1] = m.two_body_factors(&pick(0), &pick(1), &pick(2), &pick(3)).unwrap();
            let prod = u.compose(&f4).unwrap().compose(&f3).unwrap().compose(&f2).unwrap().compose(&f1).unwrap();
            for (k, t) in tuples.iter().enumerate() {
                let expect = dense(&cre.get(t[0]))
                    .dot(&dense(&cre.get(t[1])))
                    .dot(&dense(&ann.get(t[2])))
                    .dot(&dense(&ann.get(t[3])));
                let got = dense(&prod.get(k)) * c(1.0 / 16.0, 0.0);
                assert!(max_diff(&got, &expect) < 1e-12, "{t:?}");
            }
        }
    }

    #[test]
    fn dense_number_operator_sum() {
        let n = 3;
        let m = FermionMapping::jordan_wigner(n);
        let h = Array2::from_shape_fn((n, n), |(i, j)| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let g = ArrayD::zeros(IxDyn(&[n, n, n, n]));
        let o = m.map_dense(&h, &g).unwrap().sorted();
        assert_eq!(o.paulis().labels(), vec!["III", "IIZ", "IZI", "ZII"]);
        assert_eq!(o.weights(), &[c(1.5, 0.0), c(-0.5, 0.0), c(-0.5, 0.0), c(-0.5, 0.0)]);
        let empty = m.map_dense(&Array2::zeros((n, n)), &g).unwrap();
        assert_eq!(empty.num_terms(), 0);
        assert!(m.map_dense(&Array2::zeros((2, 2)), &g).is_err());
    }

    #[test]
    fn sparse_single_entry() {
        let m = FermionMapping::jordan_wigner(2);
        let h = OneBodyCoo::new(vec![c(1.0, 0.0)], vec![0], vec![0]).unwrap();
        let o = m.map_sparse(&h, &TwoBodyCoo::default()).unwrap();
        assert_eq!(o.paulis().labels(), vec!["II", "IZ"]);
        assert_eq!(o.weights(), &[c(0.5, 0.0), c(-0.5, 0.0)]);
        assert_eq!(m.map_sparse(&OneBodyCoo::default(), &TwoBodyCoo::default()).unwrap().num_terms(), 0);
        let bad = OneBodyCoo::new(vec![c(1.0, 0.0)], vec![2], vec![0]).unwrap();
        assert!(m.map_sparse(&bad, &TwoBodyCoo::default()).is_err());
    }

    #[test]
    fn density_density_term() {
        let m = FermionMapping::jordan_wigner(4);
        let [u, f4, f3, f2, f1] = m.two_body_factors(&[0], &[1], &[1], &[0]).unwrap();
        let prod = u.compose(&f4).unwrap().compose(&f3).unwrap().compose(&f2).unwrap().compose(&f1).unwrap();
        let got = prod.get(0).scale(c(1.0 / 16.0, 0.0)).simplify(1e-12);
        // a0+ a1+ a1 a0 = n0 n1 = ¼(1 - Z0)(1 - Z1)
        let expect = Operator::from_labels_weights(
            4,
            &["IIII", "IIIZ", "IIZI", "IIZZ"],
            &[c(0.25, 0.0), c(-0.25, 0.0), c(-0.25, 0.0), c(0.25, 0.0)],
        )
        .unwrap();
        assert!(max_diff(&dense(&got), &dense(&expect)) < 1e-12);
        let [u, f4, f3, f2, f1] = m.two_body_factors(&[2], &[2], &[1], &[0]).unwrap();
        let zero = u.compose(&f4).unwrap().compose(&f3).unwrap().compose(&f2).unwrap().compose(&f1).unwrap();
        assert!(zero.get(0).is_zero(1e-12));
    }
}
