//! Dense linear algebra over GF(2) on 2-d bit arrays (rows packed).

use super::{numel, words_for, BitArray};
use crate::error::{PauliError, Result};

impl BitArray {
    pub fn identity(n: usize) -> Self {
        BitArray::from_fn(&[n, n], |r, q| r == q)
    }

    fn check_matrix(&self) -> Result<(usize, usize)> {
        match self.shape() {
            &[r, c] => Ok((r, c)),
            s => Err(PauliError::Dimension(format!("expected a 2-d bit matrix, got shape {s:?}"))),
        }
    }

    pub fn transpose_matrix(&self) -> Result<BitArray> {
        let (r, c) = self.check_matrix()?;
        Ok(BitArray::from_fn(&[c, r], |i, j| self.bit(j, i)))
    }

    /// Matrix product mod 2.
    pub fn matmul(&self, other: &BitArray) -> Result<BitArray> {
        let (m, k) = self.check_matrix()?;
        let (k2, p) = other.check_matrix()?;
        if k != k2 {
            return Err(PauliError::Dimension(format!("cannot multiply {m}x{k} by {k2}x{p}")));
        }
        let mut out = BitArray::zeros(&[m, p]);
        for i in 0..m {
            for j in 0..k {
                if self.bit(i, j) {
                    let src = other.row(j).to_vec();
                    out.row_mut(i).iter_mut().zip(src).for_each(|(d, s)| *d ^= s);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product mod 2.
    pub fn matvec(&self, v: &[bool]) -> Result<Vec<bool>> {
        let (m, k) = self.check_matrix()?;
        if v.len() != k {
            return Err(PauliError::Dimension(format!(
                "vector of length {} for {m}x{k} matrix",
                v.len()
            )));
        }
        Ok((0..m)
            .map(|i| (0..k).filter(|&j| v[j] && self.bit(i, j)).count() % 2 == 1)
            .collect())
    }

    /// Inverse of a square matrix over GF(2) by Gauss-Jordan elimination.
    pub fn gf2_inverse(&self) -> Result<BitArray> {
        let (n, c) = self.check_matrix()?;
        if n != c {
            return Err(PauliError::NotSquare(self.shape().to_vec()));
        }
        let words = words_for(n);
        // augmented rows [A | I], each half packed separately
        let mut left: Vec<Vec<u64>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut right: Vec<Vec<u64>> = (0..n)
            .map(|r| {
                let mut row = vec![0u64; words];
                row[r / 64] |= 1 << (r % 64);
                row
            })
            .collect();
        let has = |row: &[u64], col: usize| (row[col / 64] >> (col % 64)) & 1 == 1;
        for col in 0..n {
            let pivot = (col..n).find(|&r| has(&left[r], col)).ok_or(PauliError::Singular)?;
            left.swap(col, pivot);
            right.swap(col, pivot);
            for r in 0..n {
                if r != col && has(&left[r], col) {
                    let (pl, pr) = (left[col].clone(), right[col].clone());
                    left[r].iter_mut().zip(&pl).for_each(|(d, s)| *d ^= s);
                    right[r].iter_mut().zip(&pr).for_each(|(d, s)| *d ^= s);
                }
            }
        }
        let data: Vec<u64> = right.into_iter().flatten().collect();
        debug_assert_eq!(data.len(), numel(&[n]) * words);
        Ok(BitArray::from_raw(vec![n, n], data))
    }

    /// Rank over GF(2) of the rows (leading axes flattened).
    pub fn gf2_rank(&self) -> usize {
        let n = self.num_bits();
        let mut rows: Vec<Vec<u64>> = (0..self.num_rows()).map(|r| self.row(r).to_vec()).collect();
        let mut rank = 0;
        for col in 0..n {
            let (w, b) = (col / 64, col % 64);
            let Some(p) = (rank..rows.len()).find(|&r| (rows[r][w] >> b) & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && (row[w] >> b) & 1 == 1 {
                    row.iter_mut().zip(&pivot).for_each(|(d, s)| *d ^= s);
                }
            }
            rank += 1;
        }
        rank
    }
}
