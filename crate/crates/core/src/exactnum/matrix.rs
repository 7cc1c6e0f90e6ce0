use std::fmt;

use num_traits::{One, Signed, Zero};

use super::field::RationalField;
use super::linalg;
use super::rational::{int, rat_to_string, RatVector, Rational};
use super::ExactError;

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .data
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter().map(rat_to_string).collect::<Vec<_>>().join(", ")
                )
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl RatMatrix {
    pub fn from_rows(data: Vec<Vec<Rational>>) -> Result<Self, ExactError> {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        if let Some(bad) = data.iter().find(|r| r.len() != cols) {
            return Err(ExactError::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(RatMatrix { rows, cols, data })
    }

    /// Panics on ragged input; intended for literals.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    /// Column `i` of the result is `e_{perm[i]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (i, &p) in perm.iter().enumerate() {
            m.data[p][i] = Rational::one();
        }
        m
    }

    pub fn from_columns(cols: &[RatVector], dim: usize) -> Self {
        let mut m = Self::zeros(dim, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..dim {
                m.data[i][j] = c[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> RatVector {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn as_rows(&self) -> &[Vec<Rational>] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<RatVector, ExactError> {
        if self.cols != v.len() {
            return Err(ExactError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix, ExactError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(ExactError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix, ExactError> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> RatMatrix {
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|x| x * s).collect())
            .collect();
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn pow(&self, e: u64) -> Result<RatMatrix, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `vᵀ M w`.
    pub fn bilinear(&self, v: &[Rational], w: &[Rational]) -> Rational {
        let mw = self.mul_vec(w).expect("bilinear dimension");
        v.iter().zip(&mw).map(|(a, b)| a * b).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn kernel(&self) -> Vec<RatVector> {
        linalg::kernel(&RationalField, &self.data, self.cols)
    }

    /// Basis of `{v : M v = v}`.
    pub fn fixed_subspace(&self) -> Result<Vec<RatVector>, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.sub(&Self::identity(self.rows))?.kernel())
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&RationalField, &self.data)
    }

    pub fn inverse(&self) -> Result<RatMatrix, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let data = linalg::inverse(&RationalField, &self.data)?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn solve(&self, b: &[Rational]) -> Option<RatVector> {
        linalg::solve(&RationalField, &self.data, b)
    }

    /// For a symmetric matrix, a vector `v` with `vᵀ M v < 0` if one exists.
    ///
    /// Symmetric elimination by congruence; every pivot step is a Schur
    /// complement, so `None` certifies positive semidefiniteness.
    pub fn psd_witness(&self) -> Option<RatVector> {
        let n = self.rows;
        let mut a = self.data.clone();
        let mut t = Self::identity(n).data;
        for k in 0..n {
            if a[k][k].is_negative() {
                return Some(t[k].clone());
            }
            if a[k][k].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                    let s = -(&a[j][j] + Rational::one()) / (int(2) * &a[k][j]);
                    return Some(t[k].iter().zip(&t[j]).map(|(x, y)| &s * x + y).collect());
                }
                continue;
            }
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &a[k][k];
                for j in 0..n {
                    let d = &f * &a[k][j];
                    a[i][j] -= d;
                }
                for j in 0..n {
                    let d = &f * &a[j][k];
                    a[j][i] -= d;
                }
                let tk = t[k].clone();
                for (x, y) in t[i].iter_mut().zip(&tk) {
                    *x -= &f * y;
                }
            }
        }
        None
    }

    /// Symmetric, positive semidefinite and nonsingular.
    pub fn is_positive_definite(&self) -> bool {
        self.is_symmetric() && self.psd_witness().is_none() && self.kernel().is_empty()
    }

    /// Smallest `k ≥ 1` with `M^k = I`, searching up to `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        if !self.is_square() {
            return None;
        }
        let id = Self::identity(self.rows);
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc == id {
                return Some(k);
            }
            acc = acc.mul(self).ok()?;
        }
        None
    }
}
