//! Coordinate algebras: Laurent polynomials and quantum tori
//! `t_i t_j = q_ij t_j t_i` with `q_ij` a root of unity.

mod matrix;

pub use matrix::{mat_mul, mat_sub, matrix_star, TorusMatrix};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoordsError {
    #[error("invalid quantum torus: {0}")]
    Invalid(String),
    #[error("the field has no {order}-th root of unity; cannot evaluate q")]
    MissingRoot { order: u64 },
    #[error("reversal needs q_ij = ±1")]
    NotSigns,
    #[error("exponent vector has length {found}, torus has {expected} variables")]
    Arity { expected: usize, found: usize },
}

/// `q_ij = ζ_order^{exps[i][j]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumTorus {
    nu: usize,
    order: u64,
    exps: Vec<Vec<u64>>,
}

/// A finite sum `Σ c_p t^p` in normal order `t^p = t_1^{p_1} ⋯ t_ν^{p_ν}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusElement<E> {
    terms: BTreeMap<Vec<i64>, E>,
}

impl QuantumTorus {
    pub fn new(order: u64, exps: Vec<Vec<u64>>) -> Result<Self, CoordsError> {
        let nu = exps.len();
        if order == 0 {
            return Err(CoordsError::Invalid("order must be positive".into()));
        }
        for (i, row) in exps.iter().enumerate() {
            if row.len() != nu {
                return Err(CoordsError::Invalid(format!(
                    "row {i} has length {}",
                    row.len()
                )));
            }
            if row[i] % order != 0 {
                return Err(CoordsError::Invalid(format!("q_{i}{i} != 1")));
            }
            for j in 0..nu {
                if !(row[j] + exps[j][i]).is_multiple_of(order) {
                    return Err(CoordsError::Invalid(format!("q_{i}{j} q_{j}{i} != 1")));
                }
            }
        }
        let exps = exps
            .into_iter()
            .map(|r| r.into_iter().map(|e| e % order).collect())
            .collect();
        Ok(QuantumTorus { nu, order, exps })
    }

    /// Laurent polynomials in `ν` variables.
    pub fn commutative(nu: usize) -> Self {
        QuantumTorus {
            nu,
            order: 1,
            exps: vec![vec![0; nu]; nu],
        }
    }

    /// From a matrix of `±1`.
    pub fn signs(q: &[Vec<i64>]) -> Result<Self, CoordsError> {
        let exps = q
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| match x {
                        1 => Ok(0),
                        -1 => Ok(1),
                        _ => Err(CoordsError::Invalid(format!("entry {x} is not ±1"))),
                    })
                    .collect::<Result<Vec<u64>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        QuantumTorus::new(2, exps)
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_commutative(&self) -> bool {
        self.exps.iter().flatten().all(|&e| e == 0)
    }

    pub fn is_signs(&self) -> bool {
        self.exps.iter().flatten().all(|&e| 2 * e % self.order == 0)
    }

    /// `k` with `c(p, q) = ζ^k`, where `t^p t^q = c(p, q) t^{p+q}` and
    /// `c(p, q) = Π_{i>j} q_ij^{p_i q_j}`.
    pub fn cocycle_exponent(&self, p: &[i64], q: &[i64]) -> u64 {
        let n = self.order as i64;
        let mut k = 0i64;
        for i in 0..self.nu {
            for j in 0..i {
                k = (k + (self.exps[i][j] as i64) * (p[i] * q[j]).rem_euclid(n)).rem_euclid(n);
            }
        }
        k as u64
    }

    fn scalar<F: Field>(&self, f: &F, k: u64) -> Result<F::Elem, CoordsError> {
        if k == 0 {
            return Ok(f.one());
        }
        f.root_of_unity(self.order, k as i64)
            .ok_or(CoordsError::MissingRoot { order: self.order })
    }

    /// `t^p` lies in the center.
    pub fn is_central(&self, p: &[i64]) -> bool {
        (0..self.nu).all(|j| {
            let mut e = vec![0; self.nu];
            e[j] = 1;
            self.cocycle_exponent(p, &e) == self.cocycle_exponent(&e, p)
        })
    }

    fn check(&self, p: &[i64]) -> Result<(), CoordsError> {
        if p.len() != self.nu {
            return Err(CoordsError::Arity {
                expected: self.nu,
                found: p.len(),
            });
        }
        Ok(())
    }

    pub fn monomial<F: Field>(
        &self,
        f: &F,
        p: &[i64],
    ) -> Result<TorusElement<F::Elem>, CoordsError> {
        self.check(p)?;
        Ok(TorusElement::monomial(f, p.to_vec(), f.one()))
    }

    pub fn qt_mul<F: Field>(
        &self,
        f: &F,
        a: &TorusElement<F::Elem>,
        b: &TorusElement<F::Elem>,
    ) -> Result<TorusElement<F::Elem>, CoordsError> {
        let mut out = TorusElement::zero();
        for (p, x) in &a.terms {
            self.check(p)?;
            for (q, y) in &b.terms {
                self.check(q)?;
                let c = self.scalar(f, self.cocycle_exponent(p, q))?;
                let deg: Vec<i64> = p.iter().zip(q).map(|(s, t)| s + t).collect();
                out.add_term(f, deg, f.mul(&c, &f.mul(x, y)));
            }
        }
        Ok(out)
    }

    /// Sign `s` with `t_ν^{p_ν} ⋯ t_1^{p_1} = s t^p`.
    fn reversal_sign(&self, p: &[i64]) -> u64 {
        let mut acc = vec![0i64; self.nu];
        let mut k = 0u64;
        for i in (0..self.nu).rev() {
            let mut e = vec![0i64; self.nu];
            e[i] = p[i];
            k = (k + self.cocycle_exponent(&acc, &e)) % self.order;
            acc[i] = p[i];
        }
        k
    }

    /// The anti-automorphism of period 2 fixing every `t_i`.
    pub fn reversal<F: Field>(
        &self,
        f: &F,
        a: &TorusElement<F::Elem>,
    ) -> Result<TorusElement<F::Elem>, CoordsError> {
        if !self.is_signs() {
            return Err(CoordsError::NotSigns);
        }
        let mut out = TorusElement::zero();
        for (p, x) in &a.terms {
            self.check(p)?;
            let s = self.scalar(f, self.reversal_sign(p))?;
            out.add_term(f, p.clone(), f.mul(&s, x));
        }
        Ok(out)
    }
}

impl<E: Clone + PartialEq> TorusElement<E> {
    pub fn zero() -> Self {
        TorusElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial<F: Field<Elem = E>>(f: &F, p: Vec<i64>, c: E) -> Self {
        let mut t = TorusElement::zero();
        t.add_term(f, p, c);
        t
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, nu: usize, c: E) -> Self {
        TorusElement::monomial(f, vec![0; nu], c)
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, E> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, p: &[i64]) -> E {
        self.terms.get(p).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, f: &F, p: Vec<i64>, c: E) {
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(x) => {
                *x = f.add(x, &c);
                if f.is_zero(x) {
                    self.terms.remove(&p);
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(f, p.clone(), c.clone());
        }
        out
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        let mut out = TorusElement::zero();
        for (p, c) in &self.terms {
            out.add_term(f, p.clone(), f.mul(s, c));
        }
        out
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        self.scale(f, &f.neg(&f.one()))
    }

    /// Coefficient of `t^0`.
    pub fn epsilon<F: Field<Elem = E>>(&self, f: &F) -> E {
        self.terms
            .iter()
            .find(|(p, _)| p.iter().all(|&x| x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| f.zero())
    }

    /// Degree of a single monomial.
    pub fn degree(&self) -> Option<&[i64]> {
        match self.terms.len() {
            1 => self.terms.keys().next().map(|p| p.as_slice()),
            _ => None,
        }
    }
}
