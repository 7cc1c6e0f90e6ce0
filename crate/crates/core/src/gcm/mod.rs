//! Affine generalized Cartan matrices and their diagram automorphisms.

mod automorphism;
mod catalog;
mod roots;

pub use automorphism::{
    diagram_automorphisms, diagram_verdict, DiagramAutomorphism, DiagramVerdict,
};
pub use catalog::{affine_catalog, CatalogEntry};
pub use roots::affine_root_datum;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ears::EarsError;
use crate::exactnum::{int, ExactError, RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GcmError {
    #[error("not a generalized Cartan matrix: {0}")]
    NotGcm(String),
    #[error("not affine: {0}")]
    NotAffine(String),
    #[error("not symmetrizable: {0}")]
    NotSymmetrizable(String),
    #[error("not a diagram automorphism: {0}")]
    BadAutomorphism(String),
    #[error("root progressions unstable at bound {bound}; retry with a larger bound")]
    Unstable { bound: i64 },
    #[error("bound must be at least 2, got {0}")]
    BoundTooSmall(i64),
    #[error(transparent)]
    Ears(#[from] EarsError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Integer matrix with `a_ii = 2`, `a_ij ≤ 0` off the diagonal and
/// `a_ij = 0 ⇔ a_ji = 0`. Convention: `a_ij = 2(α_i,α_j)/(α_i,α_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct Gcm {
    a: Vec<Vec<i64>>,
}

/// Positive, relatively prime generator of `ker A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Marks(pub Vec<i64>);

impl TryFrom<Vec<Vec<i64>>> for Gcm {
    type Error = GcmError;
    fn try_from(a: Vec<Vec<i64>>) -> Result<Self, GcmError> {
        Gcm::new(a)
    }
}

impl From<Gcm> for Vec<Vec<i64>> {
    fn from(g: Gcm) -> Self {
        g.a
    }
}

impl Gcm {
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self, GcmError> {
        let n = a.len();
        if n == 0 {
            return Err(GcmError::NotGcm("empty matrix".into()));
        }
        for (i, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(GcmError::NotGcm(format!(
                    "row {i} has length {}",
                    row.len()
                )));
            }
            if row[i] != 2 {
                return Err(GcmError::NotGcm(format!("a[{i}][{i}] = {}", row[i])));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if row[j] > 0 {
                    return Err(GcmError::NotGcm(format!("a[{i}][{j}] = {} > 0", row[j])));
                }
                if (row[j] == 0) != (a[j][i] == 0) {
                    return Err(GcmError::NotGcm(format!(
                        "a[{i}][{j}] and a[{j}][{i}] disagree on zero"
                    )));
                }
            }
        }
        Ok(Gcm { a })
    }

    pub fn size(&self) -> usize {
        self.a.len()
    }

    /// `ℓ` for an `(ℓ+1) × (ℓ+1)` matrix.
    pub fn ell(&self) -> usize {
        self.a.len() - 1
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn transpose(&self) -> Gcm {
        let n = self.size();
        Gcm {
            a: (0..n)
                .map(|i| (0..n).map(|j| self.a[j][i]).collect())
                .collect(),
        }
    }

    fn as_rat(&self) -> RatMatrix {
        RatMatrix::from_i64(&self.a)
    }

    /// Marks if `ker A` is one-dimensional with a strictly positive generator.
    pub fn validate_affine(&self) -> Result<Marks, GcmError> {
        let ker = self.as_rat().kernel();
        if ker.len() != 1 {
            return Err(GcmError::NotAffine(format!(
                "kernel has dimension {}",
                ker.len()
            )));
        }
        let v = &ker[0];
        let den = v
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, r| acc.lcm(r.denom()));
        let mut ints: Vec<num_bigint::BigInt> = v
            .iter()
            .map(|r| (r * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints
            .iter()
            .fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
        for x in ints.iter_mut() {
            *x /= &g;
        }
        if ints.iter().all(|x| x.is_negative()) {
            for x in ints.iter_mut() {
                *x = -x.clone();
            }
        }
        if !ints.iter().all(|x| x.is_positive()) {
            return Err(GcmError::NotAffine(
                "kernel has no positive generator".into(),
            ));
        }
        Ok(Marks(
            ints.iter()
                .map(|x| i64::try_from(x.clone()).expect("small marks"))
                .collect(),
        ))
    }

    /// `ε` with `ε_i a_ij = ε_j a_ji`, normalized by `ε_0 = 1` on each
    /// connected component.
    pub fn symmetrizer(&self) -> Result<Vec<Rational>, GcmError> {
        let n = self.size();
        let mut eps: Vec<Option<Rational>> = vec![None; n];
        for start in 0..n {
            if eps[start].is_some() {
                continue;
            }
            eps[start] = Some(int(1));
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                let ei = eps[i].clone().unwrap();
                for j in 0..n {
                    if i == j || self.a[i][j] == 0 {
                        continue;
                    }
                    let ej = &ei * int(self.a[i][j]) / int(self.a[j][i]);
                    match &eps[j] {
                        None => {
                            eps[j] = Some(ej);
                            stack.push(j);
                        }
                        Some(e) if *e != ej => {
                            return Err(GcmError::NotSymmetrizable(format!(
                                "cycle through nodes {i}, {j}"
                            )));
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(eps.into_iter().map(Option::unwrap).collect())
    }

    /// `(α_i, α_j) = ε_i a_ij` on the root lattice.
    pub fn invariant_form(&self) -> Result<RatMatrix, GcmError> {
        let eps = self.symmetrizer()?;
        let n = self.size();
        let mut g = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, &eps[i] * int(self.a[i][j]));
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcm_invariants() {
        assert!(Gcm::new(vec![vec![2, 1], vec![-1, 2]]).is_err());
        assert!(Gcm::new(vec![vec![2, 0], vec![-1, 2]]).is_err());
        assert!(Gcm::new(vec![vec![1]]).is_err());
        assert!(Gcm::new(vec![vec![2, -1], vec![-1, 2]]).is_ok());
    }

    #[test]
    fn marks() {
        let a11 = Gcm::new(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert_eq!(a11.validate_affine().unwrap(), Marks(vec![1, 1]));
        let a2 = Gcm::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert!(matches!(a2.validate_affine(), Err(GcmError::NotAffine(_))));
        let a22 = Gcm::new(vec![vec![2, -4], vec![-1, 2]]).unwrap();
        assert_eq!(a22.validate_affine().unwrap(), Marks(vec![2, 1]));
        let hyperbolic = Gcm::new(vec![vec![2, -3], vec![-3, 2]]).unwrap();
        assert!(hyperbolic.validate_affine().is_err());
    }

    #[test]
    fn symmetrizer() {
        let a22 = Gcm::new(vec![vec![2, -4], vec![-1, 2]]).unwrap();
        let g = a22.invariant_form().unwrap();
        assert!(g.is_symmetric());
        let bad = Gcm::new(vec![vec![2, -1, -1], vec![-2, 2, -1], vec![-1, -1, 2]]).unwrap();
        assert!(matches!(
            bad.symmetrizer(),
            Err(GcmError::NotSymmetrizable(_))
        ));
    }
}
