//! Exact row reduction over the rationals.

use num_traits::{One, Zero};

use crate::poly::Q;

/// Reduces `rows` in place to reduced row echelon form, scanning columns in
/// the order given by `col_order`. Returns the pivot columns in pivot order;
/// the first `pivots.len()` rows are the nonzero rows.
pub fn rref_with_order(rows: &mut Vec<Vec<Q>>, col_order: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in col_order {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r.max(pivots.len()));
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    pivots
}

/// Reduced row echelon form with natural column order.
pub fn rref(rows: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let order: Vec<usize> = (0..ncols).collect();
    rref_with_order(rows, &order)
}

/// Rank of a dense matrix given by rows.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}
