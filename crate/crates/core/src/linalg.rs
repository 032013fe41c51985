//! Dense linear algebra over any [`FieldOps`] field, on row-major matrices.

use crate::field::FieldOps;

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduced row echelon form with zero rows removed, and the pivot columns.
pub fn rref<F: FieldOps>(f: &F, mut rows: Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| !f.is_zero(&rows[k][c])) else {
            continue;
        };
        rows.swap(r, k);
        let inv = f.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = f.sub(x, &f.mul(&factor, p));
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank<F: FieldOps>(f: &F, rows: Matrix<F::Elem>) -> usize {
    rref(f, rows).1.len()
}

/// A basis of `{x : M x = 0}` for an `r x cols` matrix `M`.
pub fn kernel<F: FieldOps>(f: &F, rows: Matrix<F::Elem>, cols: usize) -> Matrix<F::Elem> {
    let (reduced, pivots) = rref(f, rows);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = f.neg(&row[fc]);
            }
            v
        })
        .collect()
}

/// `M v` for a column vector `v`.
pub fn apply<F: FieldOps>(f: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
        .collect()
}

pub fn multiply<F: FieldOps>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(f.zero(), |acc, (x, brow)| f.add(&acc, &f.mul(x, &brow[j]))))
                .collect()
        })
        .collect()
}

pub fn identity<F: FieldOps>(f: &F, n: usize) -> Matrix<F::Elem> {
    (0..n).map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect()
}

/// The inverse of a square matrix, if it is invertible.
pub fn inverse<F: FieldOps>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = m.len();
    let augmented: Matrix<F::Elem> = m
        .iter()
        .zip(identity(f, n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let (reduced, pivots) = rref(f, augmented);
    (pivots.len() == n && pivots.iter().enumerate().all(|(i, &p)| p == i))
        .then(|| reduced.into_iter().map(|row| row[n..].to_vec()).collect())
}
