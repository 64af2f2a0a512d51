//! Nonnegative integer matrices with row sums and hook sums.

use std::fmt;

use crate::combinat::Compositions;
use crate::{Error, Result};

/// Dense `rows x cols` matrix of nonnegative integers. Indices are
/// zero-based, so the "umat" diagonal reads `A[k][k] = k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixGrid {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl fmt::Debug for MatrixGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u64]> = self.entries.chunks(self.cols.max(1)).take(self.rows).collect();
        f.debug_struct("MatrixGrid").field("rows", &rows).finish()
    }
}

impl MatrixGrid {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixGrid { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Ok(MatrixGrid { rows: rows.len(), cols, entries: rows.concat() })
    }

    /// The diagonal-only member of umat: `A[k][k] = k`.
    pub fn umat_base(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for k in 0..rows.min(cols) {
            m.set(k, k, k as u64);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row_sum(&self, k: usize) -> u64 {
        (0..self.cols).map(|j| self.get(k, j)).sum()
    }

    pub fn column_sum(&self, j: usize) -> u64 {
        (0..self.rows).map(|i| self.get(i, j)).sum()
    }

    /// `sum_{i>k} A[k][i] - sum_{j<=k} A[j][k]`.
    pub fn hook_sum(&self, k: usize) -> i64 {
        let right: u64 = (k + 1..self.cols).map(|i| self.get(k, i)).sum();
        let down: u64 = (0..=k.min(self.rows - 1)).map(|j| self.get(j, k)).sum();
        right as i64 - down as i64
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j) == 0))
    }

    pub fn is_umat(&self) -> bool {
        self.is_upper_triangular() && (0..self.rows.min(self.cols)).all(|k| self.get(k, k) == k as u64)
    }

    /// First `keep` rows.
    pub fn truncate_rows(&self, keep: usize) -> Self {
        MatrixGrid {
            rows: keep,
            cols: self.cols,
            entries: self.entries[..keep * self.cols].to_vec(),
        }
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

/// All umat matrices of the given shape whose first `hooks.len()` hook sums
/// are prescribed. Every remaining row must have no cells right of the
/// diagonal, so the result is finite.
pub fn enumerate_umat(rows: usize, cols: usize, hooks: &[i64], limit: usize) -> Result<Vec<MatrixGrid>> {
    if rows > cols {
        return Err(Error::InvalidArgument(format!("umat shape {rows}x{cols} has rows without a diagonal")));
    }
    if hooks.len() > rows {
        return Err(Error::InvalidArgument("more hook sums than rows".into()));
    }
    if (hooks.len()..rows).any(|k| k + 1 < cols) {
        return Err(Error::InvalidArgument(
            "rows with free cells need a prescribed hook sum".into(),
        ));
    }
    let mut out = Vec::new();
    let mut current = MatrixGrid::umat_base(rows, cols);
    fill_row(&mut current, 0, hooks, limit, &mut out)?;
    Ok(out)
}

fn fill_row(
    m: &mut MatrixGrid,
    k: usize,
    hooks: &[i64],
    limit: usize,
    out: &mut Vec<MatrixGrid>,
) -> Result<()> {
    if k == m.rows {
        if out.len() >= limit {
            return Err(Error::BoundExceeded(format!("more than {limit} matrices")));
        }
        out.push(m.clone());
        return Ok(());
    }
    let free = m.cols - k - 1;
    let Some(&hook) = hooks.get(k) else {
        return fill_row(m, k + 1, hooks, limit, out);
    };
    // right-of-diagonal total = hook + column k down to the diagonal
    let down: u64 = (0..=k).map(|j| m.get(j, k)).sum();
    let total = hook + down as i64;
    if total < 0 || (free == 0 && total != 0) {
        return Ok(());
    }
    if free == 0 {
        return fill_row(m, k + 1, hooks, limit, out);
    }
    for split in Compositions::new(total as u64, free) {
        for (offset, &v) in split.iter().enumerate() {
            m.set(k, k + 1 + offset, v);
        }
        fill_row(m, k + 1, hooks, limit, out)?;
    }
    for j in k + 1..m.cols {
        m.set(k, j, 0);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_sums() {
        let a = MatrixGrid::from_rows(&[
            vec![4, 2, 5, 7],
            vec![0, 1, 2, 3],
            vec![0, 0, 1, 8],
            vec![0, 0, 0, 3],
        ])
        .unwrap();
        assert_eq!(a.row_sum(1), 6);
        assert_eq!(a.row_sum(2), 9);
        assert_eq!(a.hook_sum(2), 0);
        // 2 + 3 - (2 + 1)
        assert_eq!(a.hook_sum(1), 2);
        assert!(a.is_upper_triangular());
        assert!(!a.is_umat());
    }

    #[test]
    fn hook_sums_total_minus_choose2() {
        for n in 1..=4 {
            let hooks = vec![0i64; n - 1];
            for a in enumerate_umat(n, n, &hooks, 10_000).unwrap() {
                assert!(a.is_umat());
                let total: i64 = (0..n).map(|k| a.hook_sum(k)).sum();
                assert_eq!(total, -((n * (n - 1) / 2) as i64));
            }
        }
    }

    #[test]
    fn enumeration_hits_prescribed_hooks() {
        let hooks = [1, 0, 2];
        let all = enumerate_umat(3, 5, &hooks, 100_000).unwrap();
        assert!(!all.is_empty());
        for a in &all {
            assert!(a.is_umat());
            for (k, &h) in hooks.iter().enumerate() {
                assert_eq!(a.hook_sum(k), h);
            }
        }
        let unique: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(unique.len(), all.len());
    }

    #[test]
    fn enumeration_limits() {
        assert!(matches!(
            enumerate_umat(2, 6, &[5, 5], 3),
            Err(Error::BoundExceeded(_))
        ));
        assert!(enumerate_umat(3, 3, &[0], 10).is_err());
        assert!(enumerate_umat(4, 3, &[0, 0, 0], 10).is_err());
        // zero rows: the single empty matrix
        assert_eq!(enumerate_umat(0, 2, &[], 10).unwrap().len(), 1);
    }
}
