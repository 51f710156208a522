//! Integer row lattices: echelon (Hermite-style) bases for membership and a
//! Smith reduction that tracks the column transform.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Echelon basis of the row span of an integer matrix.
#[derive(Debug, Clone)]
pub struct RowLattice {
    ncols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl RowLattice {
    pub fn new(rows: Vec<Vec<BigInt>>, ncols: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = rows
            .into_iter()
            .filter(|r| r.iter().any(|c| !c.is_zero()))
            .collect();
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..ncols {
            if top == rows.len() {
                break;
            }
            loop {
                let best = (top..rows.len())
                    .filter(|&i| !rows[i][col].is_zero())
                    .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
                let Some(best) = best else { break };
                rows.swap(top, best);
                let mut done = true;
                for i in top + 1..rows.len() {
                    if rows[i][col].is_zero() {
                        continue;
                    }
                    let q = rows[i][col].div_floor(&rows[top][col]);
                    let pivot_row = rows[top].clone();
                    sub_scaled(&mut rows[i], &pivot_row, &q);
                    if !rows[i][col].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if top == rows.len() || rows[top][col].is_zero() {
                continue;
            }
            if rows[top][col].is_negative() {
                for c in rows[top].iter_mut() {
                    *c = -&*c;
                }
            }
            let pivot_row = rows[top].clone();
            for row in rows.iter_mut().take(top) {
                let q = row[col].div_floor(&pivot_row[col]);
                sub_scaled(row, &pivot_row, &q);
            }
            pivots.push(col);
            top += 1;
        }
        rows.truncate(top);
        rows.retain(|r| r.iter().any(|c| !c.is_zero()));
        RowLattice {
            ncols,
            rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let (q, r) = v[pc].div_rem(&row[pc]);
            if !r.is_zero() {
                return false;
            }
            if !q.is_zero() {
                sub_scaled(&mut v, row, &q);
            }
        }
        v.iter().all(Zero::is_zero)
    }
}

fn sub_scaled(target: &mut [BigInt], row: &[BigInt], q: &BigInt) {
    for (t, r) in target.iter_mut().zip(row) {
        *t -= q * r;
    }
}

/// Result of a Smith reduction `U * M * V = diag(d_1, ..., d_rank, 0, ...)`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    /// Positive invariant factors, each dividing the next.
    pub diagonal: Vec<BigInt>,
    /// Unimodular column transform `V` (n x n, row-major).
    pub column_transform: Vec<Vec<BigInt>>,
}

/// Smith normal form of an `m x ncols` matrix given as rows.
pub fn smith_form(rows: &[Vec<BigInt>], ncols: usize) -> SmithForm {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let m = a.len();
    let mut v: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut diagonal = Vec::new();

    for t in 0..m.min(ncols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..ncols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return SmithForm {
                    diagonal,
                    column_transform: v,
                };
            };
            a.swap(t, bi);
            swap_cols(&mut a, t, bj);
            swap_cols(&mut v, t, bj);

            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let pivot_row = a[t].clone();
                sub_scaled(&mut a[i], &pivot_row, &q);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_sub_scaled(&mut a, j, t, &q);
                col_sub_scaled(&mut v, j, t, &q);
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let stray = (t + 1..m).find(|&i| {
                (t + 1..ncols).any(|j| !a[i][j].is_multiple_of(&a[t][t]))
            });
            match stray {
                Some(i) => {
                    let row = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&row) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[t][t].abs());
    }
    SmithForm {
        diagonal,
        column_transform: v,
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// `col_j -= q * col_k`
fn col_sub_scaled(a: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let delta = q * &row[k];
        row[j] -= delta;
    }
}
