use super::{CoordsError, QuantumTorus, TorusElement};
use crate::exactnum::Field;

/// Square matrix with entries in a quantum torus.
pub type TorusMatrix<E> = Vec<Vec<TorusElement<E>>>;

pub fn mat_mul<F: Field>(
    q: &QuantumTorus,
    f: &F,
    a: &TorusMatrix<F::Elem>,
    b: &TorusMatrix<F::Elem>,
) -> Result<TorusMatrix<F::Elem>, CoordsError> {
    let n = a.len();
    let mut out = vec![vec![TorusElement::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                out[i][j] = out[i][j].add(f, &q.qt_mul(f, &a[i][k], &b[k][j])?);
            }
        }
    }
    Ok(out)
}

pub fn mat_sub<F: Field>(
    f: &F,
    a: &TorusMatrix<F::Elem>,
    b: &TorusMatrix<F::Elem>,
) -> TorusMatrix<F::Elem> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| {
            ra.iter()
                .zip(rb)
                .map(|(x, y)| x.add(f, &y.neg(f)))
                .collect()
        })
        .collect()
}

/// `(a_ij)* = (ā_{n+1−j, n+1−i})` with `ā` the reversal.
pub fn matrix_star<F: Field>(
    q: &QuantumTorus,
    f: &F,
    m: &TorusMatrix<F::Elem>,
) -> Result<TorusMatrix<F::Elem>, CoordsError> {
    let n = m.len();
    let mut out = vec![vec![TorusElement::zero(); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = q.reversal(f, &m[n - 1 - j][n - 1 - i])?;
        }
    }
    Ok(out)
}
