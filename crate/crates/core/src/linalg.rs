//! Dense linear algebra over F_p.

use alloc::vec::Vec;

use crate::field::PrimeChar;

/// Row-reduces `rows` in place to reduced row echelon form and returns the
/// pivot columns. Zero rows are removed.
pub fn rref(rows: &mut Vec<Vec<u32>>, ncols: usize, ch: PrimeChar) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(r, sel);
        let inv = ch.inv(rows[r][col]).expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = ch.mul(*v, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let f = ch.neg(row[col]);
                for (a, &b) in row.iter_mut().zip(&pivot_row).skip(col) {
                    if b != 0 {
                        *a = ch.add(*a, ch.mul(f, b));
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<u32>], ncols: usize, ch: PrimeChar) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols, ch).len()
}

/// Basis of {v : M v = 0} for M given by rows of length `ncols`, in reduced
/// form: one vector per free column, with a 1 in that column.
pub fn kernel(rows: &[Vec<u32>], ncols: usize, ch: PrimeChar) -> Vec<Vec<u32>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols, ch);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = alloc::vec![0u32; ncols];
        v[free] = 1;
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = ch.neg(row[free]);
        }
        out.push(v);
    }
    out
}
