use super::{AutoRootError, RootAutomorphism};
use crate::ears::{Coset, RootDatum, ShiftSet};
use crate::exactnum::{int, zero_vec, RatMatrix, RatVector};

/// Roots of `sl_{ℓ+1}` over a quantum torus in `ν` variables: `ε_i − ε_j`
/// plus any lattice shift, and the whole lattice. Coordinates
/// `(ε_1, …, ε_{ℓ+1}, δ_1, …, δ_ν)`.
pub fn quantum_sl_roots(ell: usize, nu: usize) -> Result<RootDatum, AutoRootError> {
    let n = ell + 1;
    let dim = n + nu;
    let mut form = RatMatrix::zeros(dim, dim);
    for i in 0..n {
        form.set(i, i, int(1));
    }
    let basis: Vec<RatVector> = (0..nu)
        .map(|k| {
            let mut v = zero_vec(dim);
            v[n + k] = int(1);
            v
        })
        .collect();
    let mut cosets = vec![Coset {
        rep: zero_vec(dim),
        shifts: ShiftSet::all(nu),
    }];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut v = zero_vec(dim);
                v[i] = int(1);
                v[j] = int(-1);
                cosets.push(Coset {
                    rep: v,
                    shifts: ShiftSet::all(nu),
                });
            }
        }
    }
    Ok(RootDatum::new(dim, form, basis, cosets, None)?)
}

/// `ε_i ↦ −ε_{ℓ+2−i}`, `δ_k ↦ δ_k`: the root action of `x ↦ −x*`.
pub fn reversal_flip(
    d: &RootDatum,
    ell: usize,
    nu: usize,
) -> Result<RootAutomorphism, AutoRootError> {
    let n = ell + 1;
    let mut m = RatMatrix::zeros(n + nu, n + nu);
    for i in 0..n {
        m.set(n - 1 - i, i, int(-1));
    }
    for k in 0..nu {
        m.set(n + k, n + k, int(1));
    }
    RootAutomorphism::new(d, m, 2)
}
