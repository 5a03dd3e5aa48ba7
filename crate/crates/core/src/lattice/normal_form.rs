//! Hermite and Smith normal forms with unimodular transforms.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Int, IntMatrix, IntVec};

/// Row Hermite normal form: returns `(H, U)` with `H = U * m`, `U` unimodular,
/// `H` in row echelon form with positive pivots and entries above each pivot
/// reduced into `[0, pivot)`. Zero rows are at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        loop {
            let best = (pivot_row..rows)
                .filter(|&r| !h.get(r, col).is_zero())
                .min_by(|&a, &b| h.get(a, col).abs().cmp(&h.get(b, col).abs()));
            let Some(best) = best else { break };
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..rows {
                if h.get(r, col).is_zero() {
                    continue;
                }
                let q = -(h.get(r, col) / h.get(pivot_row, col));
                h.add_row_multiple(r, pivot_row, &q);
                u.add_row_multiple(r, pivot_row, &q);
                if !h.get(r, col).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(pivot_row, col).is_zero() {
            continue;
        }
        if h.get(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        for r in 0..pivot_row {
            let q = -h.get(r, col).div_floor(h.get(pivot_row, col));
            h.add_row_multiple(r, pivot_row, &q);
            u.add_row_multiple(r, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Smith normal form `S = U * m * V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// The diagonal entries `d_1 | d_2 | ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.s.nrows().min(self.s.ncols())).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Number of nonzero elementary divisors.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&s, t) else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            for i in t + 1..rows {
                if !s.get(i, t).is_zero() {
                    let q = -(s.get(i, t) / s.get(t, t));
                    s.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                }
            }
            for j in t + 1..cols {
                if !s.get(t, j).is_zero() {
                    let q = -(s.get(t, j) / s.get(t, t));
                    s.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                }
            }
            // Any remainder left in row/column t is smaller than the pivot.
            let rem_row = (t + 1..rows).find(|&i| !s.get(i, t).is_zero());
            let rem_col = (t + 1..cols).find(|&j| !s.get(t, j).is_zero());
            if let Some(i) = rem_row {
                s.swap_rows(t, i);
                u.swap_rows(t, i);
                continue;
            }
            if let Some(j) = rem_col {
                s.swap_cols(t, j);
                v.swap_cols(t, j);
                continue;
            }
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !s.get(i, j).mod_floor(s.get(t, t)).is_zero())
            });
            match bad {
                Some(i) => {
                    let one = Int::from(1);
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { s, u, v }
}

fn min_abs_entry(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Int)> = None;
    for i in t..s.nrows() {
        for j in t..s.ncols() {
            let a = s.get(i, j).abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Basis (in row HNF) of the saturated lattice `{x in Z^n : row . x = 0 for all rows}`.
pub fn integer_kernel(rows: &[IntVec], n: usize) -> Vec<IntVec> {
    if rows.is_empty() {
        return IntMatrix::identity(n).into_rows();
    }
    let m = IntMatrix::from_rows(rows.to_vec(), n).transpose();
    left_kernel(&m)
}

/// Basis (in row HNF) of `{c : c * m = 0}`.
pub fn left_kernel(m: &IntMatrix) -> Vec<IntVec> {
    let (h, u) = hermite_normal_form(m);
    let kernel: Vec<IntVec> = (0..h.nrows())
        .filter(|&i| super::is_zero(h.row(i)))
        .map(|i| u.row(i).clone())
        .collect();
    if kernel.is_empty() {
        return kernel;
    }
    let width = m.nrows();
    let (hk, _) = hermite_normal_form(&IntMatrix::from_rows(kernel, width));
    hk.into_rows().into_iter().filter(|r| !super::is_zero(r)).collect()
}
