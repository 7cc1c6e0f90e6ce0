//! Gaussian elimination over any [`Field`].
//!
//! Matrices are row-major `Vec<Vec<E>>`; all routines are pure.

use super::field::Field;
use super::ExactError;

/// Reduced row echelon form: the nonzero rows and their pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<E> {
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

pub fn row_reduce<F: Field>(f: &F, m: &[Vec<F::Elem>], cols: usize) -> Echelon<F::Elem> {
    let mut a: Vec<Vec<F::Elem>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !f.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, p);
        let inv = f.inv(&a[r][c]).expect("nonzero pivot");
        if !f.is_one(&a[r][c]) {
            for x in a[r].iter_mut().skip(c) {
                *x = f.mul(x, &inv);
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !f.is_zero(p) {
                    *x = f.sub(x, &f.mul(&factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon {
        rows: a,
        pivots,
        cols,
    }
}

fn width<E>(m: &[Vec<E>]) -> usize {
    m.first().map_or(0, Vec::len)
}

pub fn rank<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> usize {
    row_reduce(f, m, width(m)).pivots.len()
}

/// Basis of `{v : M v = 0}` for an `r × cols` matrix; one vector per free column.
pub fn kernel<F: Field>(f: &F, m: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let e = row_reduce(f, m, cols);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !e.pivots.contains(c)) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            v[p] = f.neg(&row[free]);
        }
        out.push(v);
    }
    out
}

/// Some `x` with `M x = b`, or `None` if the system is inconsistent.
pub fn solve<F: Field>(f: &F, m: &[Vec<F::Elem>], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let aug: Vec<Vec<F::Elem>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let e = row_reduce(f, &aug, cols + 1);
    if e.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        x[p] = row[cols].clone();
    }
    Some(x)
}

pub fn inverse<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> Result<Vec<Vec<F::Elem>>, ExactError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(ExactError::NonSquare {
            rows: n,
            cols: width(m),
        });
    }
    let aug: Vec<Vec<F::Elem>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    let e = row_reduce(f, &aug, 2 * n);
    if e.pivots.len() < n || e.pivots[n - 1] >= n {
        return Err(ExactError::Singular);
    }
    Ok(e.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// RREF basis of the span of `vectors` (each of length `dim`).
pub fn span_basis<F: Field>(f: &F, vectors: &[Vec<F::Elem>], dim: usize) -> Vec<Vec<F::Elem>> {
    row_reduce(f, vectors, dim).rows
}
