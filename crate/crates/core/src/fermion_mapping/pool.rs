//! Anti-Hermitian single and double excitation operators.

use ndarray::{arr1, ArrayD};
use num_complex::Complex64;

use super::FermionMapping;
use crate::bitarray::ArrayLike;
use crate::error::{PauliError, Result};
use crate::operators::{Operator, OperatorArrayType1, DEFAULT_SIMPLIFY_THRESHOLD};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Excitation {
    /// `a_p^+ a_q - a_q^+ a_p`.
    Single { p: usize, q: usize },
    /// `a_p^+ a_q^+ a_r a_s - a_s^+ a_r^+ a_q a_p`.
    Double { p: usize, q: usize, r: usize, s: usize },
}

impl Excitation {
    pub fn indices(&self) -> Vec<usize> {
        match *self {
            Excitation::Single { p, q } => vec![p, q],
            Excitation::Double { p, q, r, s } => vec![p, q, r, s],
        }
    }

    pub fn is_single(&self) -> bool {
        matches!(self, Excitation::Single { .. })
    }
}

/// Every single `p < q` and every double built from two disjoint pairs
/// `p < q`, `r < s` with `(r, s)` before `(p, q)`: one element per
/// unordered pair of pairs.
pub fn all_excitations(n: usize) -> Vec<Excitation> {
    let mut out = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            out.push(Excitation::Single { p, q });
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    for (x, &(p, q)) in pairs.iter().enumerate() {
        for &(r, s) in &pairs[..x] {
            if p != r && p != s && q != r && q != s {
                out.push(Excitation::Double { p, q, r, s });
            }
        }
    }
    out
}

/// Spin-conserving excitations from occupied to virtual spin orbitals.
/// Spin orbitals are ordered in two blocks, all spin-up then all spin-down;
/// the lowest `num_occupied` spatial orbitals of each block are occupied.
pub fn spin_conserving_excitations(num_spatial: usize, num_occupied: usize) -> Result<Vec<Excitation>> {
    if num_occupied > num_spatial {
        return Err(PauliError::Dimension(format!(
            "{num_occupied} occupied of {num_spatial} spatial orbitals"
        )));
    }
    let m = num_spatial;
    let spin = |o: usize| o / m;
    let occ: Vec<usize> = (0..num_occupied).chain(m..m + num_occupied).collect();
    let virt: Vec<usize> = (num_occupied..m).chain(m + num_occupied..2 * m).collect();
    let mut out = Vec::new();
    for &o in &occ {
        for &v in &virt {
            if spin(o) == spin(v) {
                out.push(Excitation::Single { p: v, q: o });
            }
        }
    }
    for (a, &o1) in occ.iter().enumerate() {
        for &o2 in &occ[a + 1..] {
            for (b, &v1) in virt.iter().enumerate() {
                for &v2 in &virt[b + 1..] {
                    let mut so = [spin(o1), spin(o2)];
                    let mut sv = [spin(v1), spin(v2)];
                    so.sort_unstable();
                    sv.sort_unstable();
                    if so == sv {
                        out.push(Excitation::Double { p: v1, q: v2, r: o2, s: o1 });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Mapped and simplified operators, shape `(len,)`, in input order.
pub fn excitation_pool(mapping: &FermionMapping, excitations: &[Excitation]) -> Result<OperatorArrayType1> {
    let n = mapping.num_modes();
    if excitations.is_empty() {
        return Err(PauliError::Dimension("empty excitation list".into()));
    }
    let (singles, doubles): (Vec<usize>, Vec<usize>) = (0..excitations.len()).partition(|&k| excitations[k].is_single());
    let mut ops = vec![Operator::zero(n); excitations.len()];

    if !singles.is_empty() {
        let (mut i, mut j) = (Vec::new(), Vec::new());
        for &k in &singles {
            let Excitation::Single { p, q } = excitations[k] else { unreachable!() };
            i.extend([p, q]);
            j.extend([q, p]);
        }
        let [u, f2, f1] = mapping.one_body_factors(&i, &j)?;
        let prod = u.compose(&f2)?.compose(&f1)?.reshape(&[singles.len(), 2])?;
        let signs: ArrayD<Complex64> = arr1(&[Complex64::new(0.25, 0.0), Complex64::new(-0.25, 0.0)]).into_dyn();
        let summed = prod.mul_weights(&signs)?.sum_axes(&[1])?;
        for (x, &k) in singles.iter().enumerate() {
            ops[k] = summed.get(x).simplify(DEFAULT_SIMPLIFY_THRESHOLD);
        }
    }

    if !doubles.is_empty() {
        let mut idx: [Vec<usize>; 4] = Default::default();
        for &k in &doubles {
            let Excitation::Double { p, q, r, s } = excitations[k] else { unreachable!() };
            for (list, pair) in idx.iter_mut().zip([[p, s], [q, r], [r, q], [s, p]]) {
                list.extend(pair);
            }
        }
        let [u, f4, f3, f2, f1] = mapping.two_body_factors(&idx[0], &idx[1], &idx[2], &idx[3])?;
        let prod = u
            .compose(&f4)?
            .compose(&f3)?
            .compose(&f2)?
            .compose(&f1)?
            .reshape(&[doubles.len(), 2])?;
        let w = 1.0 / 16.0;
        let signs: ArrayD<Complex64> = arr1(&[Complex64::new(w, 0.0), Complex64::new(-w, 0.0)]).into_dyn();
        let summed = prod.mul_weights(&signs)?.sum_axes(&[1])?;
        for (x, &k) in doubles.iter().enumerate() {
            ops[k] = summed.get(x).simplify(DEFAULT_SIMPLIFY_THRESHOLD);
        }
    }
    OperatorArrayType1::from_operators(&[excitations.len()], &ops)
}

/// One mapped, simplified excitation operator.
pub fn excitation_operator(mapping: &FermionMapping, excitation: Excitation) -> Result<Operator> {
    Ok(excitation_pool(mapping, &[excitation])?.get(0).simplify(DEFAULT_SIMPLIFY_THRESHOLD))
}
