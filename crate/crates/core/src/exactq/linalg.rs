use num_traits::{One, Zero};

use super::{QVec, Rat};
use crate::error::{Error, Result};

/// Dense rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    cols: usize,
    rows: Vec<QVec>,
}

impl QMat {
    pub fn new(cols: usize, rows: Vec<QVec>) -> Result<Self> {
        for r in &rows {
            Error::check_dim(cols, r.len())?;
        }
        Ok(QMat { cols, rows })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        QMat { cols: n, rows }
    }

    pub fn rows(&self) -> &[QVec] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row. Zero rows are dropped.
pub fn row_reduce(rows: &mut Vec<QVec>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rat::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[QVec], cols: usize) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m, cols).len()
}

/// Basis of `{x : row·x = 0 for every row}`.
pub fn nullspace(rows: &[QVec], cols: usize) -> Vec<QVec> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m, cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// One solution of `A x = b`, if the system is consistent.
    pub particular: Option<QVec>,
    /// Basis of the solutions of `A x = 0`.
    pub nullspace: Vec<QVec>,
}

pub fn gauss_solve(a: &QMat, b: &[Rat]) -> Result<Solution> {
    Error::check_dim(a.nrows(), b.len())?;
    let n = a.ncols();
    let mut aug: Vec<QVec> = a
        .rows()
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let pivots = row_reduce(&mut aug, n + 1);
    let nullspace = nullspace(a.rows(), n);
    if pivots.last() == Some(&n) {
        return Ok(Solution {
            particular: None,
            nullspace,
        });
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Ok(Solution {
        particular: Some(x),
        nullspace,
    })
}
