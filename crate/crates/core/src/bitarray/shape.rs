//! Shape arithmetic shared by every array-like structure.
//!
//! Broadcasting aligns extents from the trailing end. Two aligned extents are
//! compatible when they are equal or when one of them is 1; missing leading
//! extents count as 1. The combined extent is the larger of the two.

use crate::error::{PauliError, Result};

/// Number of elements in an array of the given shape.
pub fn numel(shape: &[usize]) -> usize {
    shape.iter().product()
}

/// Combined shape of two broadcast-compatible shapes.
pub fn broadcast_shapes(a: &[usize], b: &[usize]) -> Result<Vec<usize>> {
    let ndim = a.len().max(b.len());
    let mut out = vec![0; ndim];
    for k in 0..ndim {
        let ea = if k < ndim - a.len() { 1 } else { a[k - (ndim - a.len())] };
        let eb = if k < ndim - b.len() { 1 } else { b[k - (ndim - b.len())] };
        out[k] = match (ea, eb) {
            (x, y) if x == y => x,
            (1, y) => y,
            (x, 1) => x,
            _ => return Err(PauliError::Broadcast(a.to_vec(), b.to_vec())),
        };
    }
    Ok(out)
}

/// Row-major strides of `shape` expressed in the dimensions of `out`, with
/// zero stride along broadcast axes.
fn aligned_strides(shape: &[usize], out: &[usize]) -> Vec<usize> {
    let offset = out.len() - shape.len();
    let mut strides = vec![0; out.len()];
    let mut acc = 1;
    for k in (0..shape.len()).rev() {
        strides[k + offset] = if shape[k] == 1 { 0 } else { acc };
        acc *= shape[k];
    }
    strides
}

/// Visits every element of the broadcast of `a` and `b` in row-major output
/// order, calling `f(ia, ib)` with the flat indices of the source elements.
/// Returns the output shape.
pub(crate) fn for_each_broadcast(
    a: &[usize],
    b: &[usize],
    mut f: impl FnMut(usize, usize),
) -> Result<Vec<usize>> {
    let out = broadcast_shapes(a, b)?;
    let total = numel(&out);
    if total == 0 {
        return Ok(out);
    }
    if a == b {
        (0..total).for_each(|i| f(i, i));
        return Ok(out);
    }
    let sa = aligned_strides(a, &out);
    let sb = aligned_strides(b, &out);
    let ndim = out.len();
    if ndim == 0 {
        f(0, 0);
        return Ok(out);
    }
    let mut counter = vec![0usize; ndim];
    let (mut ia, mut ib) = (0usize, 0usize);
    let last = ndim - 1;
    let inner = out[last];
    let (da, db) = (sa[last], sb[last]);
    loop {
        let (mut ja, mut jb) = (ia, ib);
        for _ in 0..inner {
            f(ja, jb);
            ja += da;
            jb += db;
        }
        // advance the outer odometer
        let mut k = last;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            counter[k] += 1;
            ia += sa[k];
            ib += sb[k];
            if counter[k] < out[k] {
                break;
            }
            ia -= sa[k] * out[k];
            ib -= sb[k] * out[k];
            counter[k] = 0;
        }
    }
}

/// Flat source indices that realize broadcasting `shape` up to `target`.
pub(crate) fn broadcast_to(shape: &[usize], target: &[usize]) -> Result<Vec<usize>> {
    let combined = broadcast_shapes(shape, target)?;
    if combined != target {
        return Err(PauliError::Broadcast(shape.to_vec(), target.to_vec()));
    }
    let mut rows = Vec::with_capacity(numel(target));
    for_each_broadcast(shape, target, |i, _| rows.push(i))?;
    Ok(rows)
}

fn check_axis(shape: &[usize], axis: usize) -> Result<()> {
    if axis >= shape.len() {
        return Err(PauliError::AxisOutOfBounds {
            axis,
            ndim: shape.len(),
        });
    }
    Ok(())
}

/// Keeps the listed positions along `axis`, in the order given.
pub(crate) fn select_along(
    shape: &[usize],
    axis: usize,
    keep: &[usize],
) -> Result<(Vec<usize>, Vec<usize>)> {
    check_axis(shape, axis)?;
    let len = shape[axis];
    if let Some(&bad) = keep.iter().find(|&&i| i >= len) {
        return Err(PauliError::IndexOutOfBounds { index: bad, len });
    }
    let outer = numel(&shape[..axis]);
    let inner = numel(&shape[axis + 1..]);
    let mut rows = Vec::with_capacity(outer * keep.len() * inner);
    for o in 0..outer {
        for &s in keep {
            let base = (o * len + s) * inner;
            rows.extend(base..base + inner);
        }
    }
    let mut new_shape = shape.to_vec();
    new_shape[axis] = keep.len();
    Ok((new_shape, rows))
}

/// Flat source indices of the array obtained by permuting axes.
pub(crate) fn permute_axes(shape: &[usize], perm: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let ndim = shape.len();
    let mut seen = vec![false; ndim];
    if perm.len() != ndim {
        return Err(PauliError::Dimension(format!(
            "permutation of length {} for {} axes",
            perm.len(),
            ndim
        )));
    }
    for &p in perm {
        check_axis(shape, p)?;
        if std::mem::replace(&mut seen[p], true) {
            return Err(PauliError::Dimension(format!("axis {p} repeated in permutation")));
        }
    }
    let mut strides = vec![1usize; ndim];
    for k in (0..ndim.saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * shape[k + 1];
    }
    let new_shape: Vec<usize> = perm.iter().map(|&p| shape[p]).collect();
    let new_strides: Vec<usize> = perm.iter().map(|&p| strides[p]).collect();
    let total = numel(&new_shape);
    let mut rows = Vec::with_capacity(total);
    let mut counter = vec![0usize; ndim];
    for _ in 0..total {
        rows.push(counter.iter().zip(&new_strides).map(|(c, s)| c * s).sum());
        for k in (0..ndim).rev() {
            counter[k] += 1;
            if counter[k] < new_shape[k] {
                break;
            }
            counter[k] = 0;
        }
    }
    Ok((new_shape, rows))
}

/// Array-like structures whose leading (addressable) shape can be reshaped,
/// indexed, sliced and masked. Hidden axes (the qubit axis of bit arrays,
/// the summation axis of operator arrays) are never touched.
pub trait ArrayLike: Sized {
    /// The addressable shape.
    fn array_shape(&self) -> &[usize];

    /// New array whose elements are the listed flat elements of `self`.
    fn gather(&self, shape: Vec<usize>, rows: &[usize]) -> Self;

    /// Same data with a new shape holding the same number of elements.
    fn with_shape(&self, shape: Vec<usize>) -> Self;

    fn ndim(&self) -> usize {
        self.array_shape().len()
    }

    fn size(&self) -> usize {
        numel(self.array_shape())
    }

    fn reshape(&self, shape: &[usize]) -> Result<Self> {
        let found = self.size();
        let expected = numel(shape);
        if found != expected {
            return Err(PauliError::ElementCount { expected, found });
        }
        Ok(self.with_shape(shape.to_vec()))
    }

    fn flatten(&self) -> Self {
        self.with_shape(vec![self.size()])
    }

    /// Inserts a unit axis at `axis` (the "new axis" used to set up broadcasts).
    fn new_axis(&self, axis: usize) -> Result<Self> {
        let mut shape = self.array_shape().to_vec();
        if axis > shape.len() {
            return Err(PauliError::AxisOutOfBounds {
                axis,
                ndim: shape.len(),
            });
        }
        shape.insert(axis, 1);
        Ok(self.with_shape(shape))
    }

    /// Removes `axis` by picking position `index` along it.
    fn index_axis(&self, axis: usize, index: usize) -> Result<Self> {
        let (mut shape, rows) = select_along(self.array_shape(), axis, &[index])?;
        shape.remove(axis);
        Ok(self.gather(shape, &rows))
    }

    /// Keeps positions `start..end` (stepping by `step`) along `axis`.
    fn slice_axis(&self, axis: usize, start: usize, end: usize, step: usize) -> Result<Self> {
        check_axis(self.array_shape(), axis)?;
        let len = self.array_shape()[axis];
        let end = end.min(len);
        let keep: Vec<usize> = (start..end).step_by(step.max(1)).collect();
        let (shape, rows) = select_along(self.array_shape(), axis, &keep)?;
        Ok(self.gather(shape, &rows))
    }

    /// Boolean mask along the first axis.
    fn mask(&self, mask: &[bool]) -> Result<Self> {
        let shape = self.array_shape();
        if shape.is_empty() || shape[0] != mask.len() {
            return Err(PauliError::Dimension(format!(
                "mask of length {} for shape {:?}",
                mask.len(),
                shape
            )));
        }
        let keep: Vec<usize> = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        let (shape, rows) = select_along(shape, 0, &keep)?;
        Ok(self.gather(shape, &rows))
    }

    /// Integer-array indexing along the first axis.
    fn take(&self, indices: &[usize]) -> Result<Self> {
        let (shape, rows) = select_along(self.array_shape(), 0, indices)?;
        Ok(self.gather(shape, &rows))
    }

    fn transpose(&self, perm: &[usize]) -> Result<Self> {
        let (shape, rows) = permute_axes(self.array_shape(), perm)?;
        Ok(self.gather(shape, &rows))
    }

    fn broadcast_to(&self, target: &[usize]) -> Result<Self> {
        let rows = broadcast_to(self.array_shape(), target)?;
        Ok(self.gather(target.to_vec(), &rows))
    }
}
