//! Term-by-term check of the matrix expansion of
//! `prod_i (1 - x_i)^{-b} prod_{i<j} (x_j - x_i)^{-m}`.
//!
//! Laurent monomials are graded by `sum_i w_i e_i` with `w_i = n - i`
//! (zero-based `i`). Every factor's expansion starts at its lowest grade and
//! only moves up, so truncating at "excess over the lowest grade <= D" keeps
//! finitely many terms on both sides.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::matrix::MatrixGrid;
use crate::{Error, Result};

type Series = BTreeMap<Vec<i64>, BigInt>;

#[derive(Debug, Clone, Serialize)]
pub struct ExpandReport {
    pub n: usize,
    pub b: u64,
    pub m: u64,
    pub max_excess: u64,
    /// Distinct monomials from multiplying the truncated series.
    pub series_terms: usize,
    /// Distinct monomials from summing over matrix tuples.
    pub matrix_terms: usize,
    pub equal: bool,
}

struct Grading {
    weights: Vec<i64>,
    base: i64,
    max_excess: i64,
}

impl Grading {
    fn new(n: usize, m: u64, max_excess: u64) -> Self {
        let weights: Vec<i64> = (0..n).map(|i| (n - i) as i64).collect();
        let base = -(m as i64) * (0..n).map(|j| j as i64 * weights[j]).sum::<i64>();
        Grading { weights, base, max_excess: max_excess as i64 }
    }

    fn excess(&self, e: &[i64]) -> i64 {
        e.iter().zip(&self.weights).map(|(x, w)| x * w).sum::<i64>() - self.base
    }
}

/// `offset` is minus the lowest grade of the factors still to come.
fn multiply(lhs: &Series, rhs: &Series, grading: &Grading, offset: i64) -> Series {
    let mut out = Series::new();
    for (ea, ca) in lhs {
        for (eb, cb) in rhs {
            let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if grading.excess(&e) + offset > grading.max_excess {
                continue;
            }
            *out.entry(e).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn series_side(n: usize, b: u64, m: u64, grading: &Grading) -> Series {
    let mut acc = Series::new();
    acc.insert(vec![0; n], BigInt::one());
    let mut pending = grading.base;
    for i in 0..n {
        let w = grading.weights[i];
        let mut geometric = Series::new();
        for r in 0..=grading.max_excess / w {
            let mut e = vec![0; n];
            e[i] = r;
            geometric.insert(e, BigInt::one());
        }
        for _ in 0..b {
            acc = multiply(&acc, &geometric, grading, pending);
        }
    }
    for j in 0..n {
        for i in 0..j {
            let mut factor = Series::new();
            for k in 0..=grading.max_excess / (j - i) as i64 {
                let mut e = vec![0; n];
                e[i] = k;
                e[j] = -k - 1;
                factor.insert(e, BigInt::one());
            }
            for _ in 0..m {
                pending += grading.weights[j];
                acc = multiply(&acc, &factor, grading, pending);
            }
        }
    }
    acc
}

/// Cell of the tuple `(B, A^(1), ..., A^(m))` with its grading weight.
enum Cell {
    B { row: usize, col: usize },
    A { copy: usize, row: usize, col: usize },
}

fn matrix_side(n: usize, b: u64, m: u64, grading: &Grading) -> Series {
    let mut cells = Vec::new();
    for row in 0..n {
        for col in 0..b as usize {
            cells.push((Cell::B { row, col }, grading.weights[row]));
        }
    }
    for copy in 0..m as usize {
        for row in 0..n {
            for col in row + 1..n {
                cells.push((Cell::A { copy, row, col }, (col - row) as i64));
            }
        }
    }
    let mut state = (
        MatrixGrid::zeros(n, b as usize),
        vec![MatrixGrid::umat_base(n, n); m as usize],
    );
    let mut out = Series::new();
    fill(&cells, 0, grading.max_excess, &mut state, &mut out);
    out
}

fn fill(
    cells: &[(Cell, i64)],
    at: usize,
    budget: i64,
    state: &mut (MatrixGrid, Vec<MatrixGrid>),
    out: &mut Series,
) {
    if at == cells.len() {
        let (b, a) = &*state;
        let e: Vec<i64> = (0..b.rows())
            .map(|k| b.row_sum(k) as i64 + a.iter().map(|x| x.hook_sum(k)).sum::<i64>())
            .collect();
        *out.entry(e).or_default() += 1;
        return;
    }
    let (cell, w) = &cells[at];
    for v in 0..=budget / w {
        match *cell {
            Cell::B { row, col } => state.0.set(row, col, v as u64),
            Cell::A { copy, row, col } => state.1[copy].set(row, col, v as u64),
        }
        fill(cells, at + 1, budget - v * w, state, out);
    }
    match *cell {
        Cell::B { row, col } => state.0.set(row, col, 0),
        Cell::A { copy, row, col } => state.1[copy].set(row, col, 0),
    }
}

pub fn verify_expand(n: usize, b: u64, m: u64, max_excess: u64) -> Result<ExpandReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let grading = Grading::new(n, m, max_excess);
    let series = series_side(n, b, m, &grading);
    let matrices = matrix_side(n, b, m, &grading);
    Ok(ExpandReport {
        n,
        b,
        m,
        max_excess,
        series_terms: series.len(),
        matrix_terms: matrices.len(),
        equal: series == matrices,
    })
}
