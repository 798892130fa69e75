//! Smith normal form over the integers with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::linalg::{identity, mat_mul};

/// `left * matrix * right == diagonal`, with `left`, `right` unimodular and
/// the diagonal entries non-negative, each dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub left: Vec<Vec<BigInt>>,
    pub diagonal: Vec<Vec<BigInt>>,
    pub right: Vec<Vec<BigInt>>,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.diagonal.len().min(self.diagonal.first().map_or(0, |r| r.len()));
        (0..n).map(|i| self.diagonal[i][i].clone()).filter(|d| !d.is_zero()).collect()
    }

    /// Recomputes `left * matrix * right` and checks shape, divisibility and
    /// unimodularity of both transforms.
    pub fn verify(&self, matrix: &[Vec<BigInt>]) -> bool {
        let rows = matrix.len();
        let cols = self.right.len();
        let product = mat_mul(&mat_mul(&self.left, matrix), &self.right);
        if product != self.diagonal {
            return false;
        }
        for (i, row) in self.diagonal.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j && !x.is_zero() {
                    return false;
                }
            }
        }
        let diag: Vec<&BigInt> = (0..rows.min(cols)).map(|i| &self.diagonal[i][i]).collect();
        for w in diag.windows(2) {
            if w[0].is_negative() || (w[0].is_zero() && !w[1].is_zero()) {
                return false;
            }
            if !w[0].is_zero() && !w[1].is_multiple_of(w[0]) {
                return false;
            }
        }
        if diag.last().is_some_and(|d| d.is_negative()) {
            return false;
        }
        let unit = |m: &[Vec<BigInt>]| {
            let d = crate::linalg::bareiss_det(m.to_vec());
            d.abs() == BigInt::from(1)
        };
        unit(&self.left) && unit(&self.right)
    }
}

/// Smith normal form of a `rows x cols` integer matrix.
pub fn smith_normal_form(matrix: &[Vec<BigInt>], cols: usize) -> SmithForm {
    let rows = matrix.len();
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut left = identity(rows);
    let mut right = identity(cols);

    for t in 0..rows.min(cols) {
        // smallest non-zero entry in the trailing block becomes the pivot
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        left.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut right, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut left, i, t, &q);
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    left.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut right, j, t, &q);
                if !a[t][j].is_zero() {
                    swap_cols(&mut a, t, j);
                    swap_cols(&mut right, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the whole trailing block
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::from(-1);
                    row_axpy(&mut a, t, i, &one);
                    row_axpy(&mut left, t, i, &one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in left[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    SmithForm {
        left,
        diagonal: a,
        right,
    }
}

// row[dst] -= q * row[src]
fn row_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let src_row = m[src].clone();
    for (x, s) in m[dst].iter_mut().zip(src_row.iter()) {
        *x -= q * s;
    }
}

// col[dst] -= q * col[src]
fn col_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[dst] -= q * s;
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}
