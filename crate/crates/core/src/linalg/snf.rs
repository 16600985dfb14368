//! Smith normal form over the integers.
//!
//! Pivoting with Euclidean reduction on rows and columns, followed by a
//! divisibility repair step. All arithmetic is on [`BigInt`], so entry
//! growth during elimination is never truncated.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;

/// `left * input * right == diagonal`, with `left` and `right` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub left: IntegerMatrix,
    pub diagonal: IntegerMatrix,
    pub right: IntegerMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1 | d_2 | ...`, including trailing zeros.
    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n).map(|i| self.diagonal[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let mut r = Reducer::new(a, true);
    r.run();
    let (rows, cols) = (a.rows(), a.cols());
    SmithDecomposition {
        left: IntegerMatrix::from_row_vecs(rows, rows, r.left.unwrap()),
        diagonal: IntegerMatrix::from_row_vecs(rows, cols, r.a),
        right: IntegerMatrix::from_row_vecs(cols, cols, r.right.unwrap()),
    }
}

/// The non-zero diagonal entries of the Smith form, in divisibility order.
///
/// Skips the transform bookkeeping; the length of the result is the rank.
pub fn invariant_factors(a: &IntegerMatrix) -> Vec<BigInt> {
    let mut r = Reducer::new(a, false);
    let rank = r.run();
    (0..rank).map(|i| r.a[i][i].clone()).collect()
}

struct Reducer {
    a: Vec<Vec<BigInt>>,
    left: Option<Vec<Vec<BigInt>>>,
    right: Option<Vec<Vec<BigInt>>>,
    rows: usize,
    cols: usize,
}

impl Reducer {
    fn new(a: &IntegerMatrix, track: bool) -> Self {
        let identity = |n: usize| IntegerMatrix::identity(n).to_rows();
        Self {
            a: a.to_rows(),
            left: track.then(|| identity(a.rows())),
            right: track.then(|| identity(a.cols())),
            rows: a.rows(),
            cols: a.cols(),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.left {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.right {
            for row in v {
                row.swap(i, j);
            }
        }
    }

    /// row[target] -= q * row[source]
    fn row_axpy(&mut self, target: usize, source: usize, q: &BigInt) {
        fn go(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
            let (src, dst) = if source < target {
                let (lo, hi) = m.split_at_mut(target);
                (&lo[source], &mut hi[0])
            } else {
                let (lo, hi) = m.split_at_mut(source);
                (&hi[0], &mut lo[target])
            };
            for (d, s) in dst.iter_mut().zip(src) {
                if !s.is_zero() {
                    *d -= q * s;
                }
            }
        }
        go(&mut self.a, target, source, q);
        if let Some(u) = &mut self.left {
            go(u, target, source, q);
        }
    }

    /// col[target] -= q * col[source]
    fn col_axpy(&mut self, target: usize, source: usize, q: &BigInt) {
        fn go(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
            for row in m {
                if !row[source].is_zero() {
                    let delta = q * &row[source];
                    row[target] -= delta;
                }
            }
        }
        go(&mut self.a, target, source, q);
        if let Some(v) = &mut self.right {
            go(v, target, source, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.left {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    fn smallest_in_submatrix(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                    let unit = ax == BigInt::from(1);
                    best = Some(((i, j), ax));
                    if unit {
                        return best.map(|(p, _)| p);
                    }
                }
            }
        }
        best.map(|(p, _)| p)
    }

    /// Returns the rank.
    fn run(&mut self) -> usize {
        let n = self.rows.min(self.cols);
        let mut t = 0;
        while t < n {
            let Some((pi, pj)) = self.smallest_in_submatrix(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let pivot = self.a[t][t].clone();
                let mut leftover: Option<(usize, usize)> = None;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = nearest_quotient(&self.a[i][t], &pivot);
                    self.row_axpy(i, t, &q);
                    if !self.a[i][t].is_zero() {
                        leftover = pick_smaller(leftover, (i, t), &self.a);
                    }
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = nearest_quotient(&self.a[t][j], &pivot);
                    self.col_axpy(j, t, &q);
                    if !self.a[t][j].is_zero() {
                        leftover = pick_smaller(leftover, (t, j), &self.a);
                    }
                }
                if let Some((i, j)) = leftover {
                    // A remainder strictly smaller than the pivot; promote it.
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                let bad = (t + 1..self.rows).find(|&i| {
                    (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&pivot))
                });
                match bad {
                    Some(i) => {
                        // Pull the offending row in; its column-t entry is zero.
                        self.row_axpy(t, i, &BigInt::from(-1));
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }
}

fn pick_smaller(
    current: Option<(usize, usize)>,
    cand: (usize, usize),
    a: &[Vec<BigInt>],
) -> Option<(usize, usize)> {
    match current {
        Some((i, j)) if a[i][j].abs() <= a[cand.0][cand.1].abs() => Some((i, j)),
        _ => Some(cand),
    }
}

/// Quotient `q` minimising `|x - q*d|`.
fn nearest_quotient(x: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = x.div_mod_floor(d);
    // r has the sign of d, |r| < |d|
    let twice: BigInt = &r * 2;
    if twice.abs() > d.abs() {
        q + 1
    } else {
        q
    }
}
