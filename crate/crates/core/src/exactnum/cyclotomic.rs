use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::{Field, RationalField};
use super::linalg;
use super::rational::{rat_to_string, Rational};
use super::ExactError;

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // Both monic with integer coefficients, low degree first.
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

fn compute_cyclotomic(n: u64) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

/// Coefficients of Φ_n, lowest degree first. Cached.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let p = Arc::new(compute_cyclotomic(n));
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// An element of ℚ(ζ_m) in the power basis `1, ζ, …, ζ^{φ(m)-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    pub order: u64,
    pub coeffs: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycOp {
    Add,
    Sub,
    Mul,
}

impl Cyclotomic {
    pub fn zero(order: u64) -> Self {
        Cyclotomic {
            order,
            coeffs: vec![Rational::zero(); euler_phi(order) as usize],
        }
    }

    pub fn from_rational(order: u64, r: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = r;
        z
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn arith(&self, other: &Cyclotomic, op: CycOp) -> Result<Cyclotomic, ExactError> {
        if self.order != other.order {
            return Err(ExactError::IncompatibleFields {
                left: self.order,
                right: other.order,
            });
        }
        let f = CyclotomicField::new(self.order);
        Ok(match op {
            CycOp::Add => f.add(self, other),
            CycOp::Sub => f.sub(self, other),
            CycOp::Mul => f.mul(self, other),
        })
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", CyclotomicField::new(self.order).render(self))
    }
}

/// `ζ_m^k`.
pub fn zeta_power(m: u64, k: i64) -> Result<Cyclotomic, ExactError> {
    if m == 0 {
        return Err(ExactError::ZeroOrder);
    }
    let f = CyclotomicField::new(m);
    Ok(f.zeta_pow(k))
}

/// The field ℚ(ζ_m).
#[derive(Clone)]
pub struct CyclotomicField {
    order: u64,
    phi: Arc<Vec<BigInt>>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

impl CyclotomicField {
    /// Panics on `order == 0`.
    pub fn new(order: u64) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        CyclotomicField {
            order,
            phi: cyclotomic_polynomial(order),
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    fn reduce(&self, mut poly: Vec<Rational>) -> Vec<Rational> {
        let n = self.degree();
        for i in (n..poly.len()).rev() {
            let c = std::mem::replace(&mut poly[i], Rational::zero());
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                if !self.phi[j].is_zero() {
                    poly[i - n + j] -= &c * Rational::from_integer(self.phi[j].clone());
                }
            }
        }
        poly.truncate(n);
        poly.resize(n, Rational::zero());
        poly
    }

    /// ζ_m^k.
    pub fn zeta_pow(&self, k: i64) -> Cyclotomic {
        let e = k.rem_euclid(self.order as i64) as usize;
        let mut p = vec![Rational::zero(); e.max(self.degree()) + 1];
        p[e] = Rational::one();
        Cyclotomic {
            order: self.order,
            coeffs: self.reduce(p),
        }
    }

    /// ζ_m itself.
    pub fn zeta(&self) -> Cyclotomic {
        self.zeta_pow(1)
    }

    fn mul_matrix(&self, a: &Cyclotomic) -> Vec<Vec<Rational>> {
        // Column j is a·ζ^j.
        let n = self.degree();
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|j| self.mul(a, &self.zeta_pow(j as i64)).coeffs)
            .collect();
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect()
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CyclotomicField {}

impl Field for CyclotomicField {
    type Elem = Cyclotomic;

    fn zero(&self) -> Cyclotomic {
        Cyclotomic::zero(self.order)
    }
    fn one(&self) -> Cyclotomic {
        Cyclotomic::from_rational(self.order, Rational::one())
    }
    fn add(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Cyclotomic {
            order: self.order,
            coeffs,
        }
    }
    fn sub(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        Cyclotomic {
            order: self.order,
            coeffs,
        }
    }
    fn mul(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        let n = self.degree();
        if n == 1 {
            return Cyclotomic {
                order: self.order,
                coeffs: vec![&a.coeffs[0] * &b.coeffs[0]],
            };
        }
        let mut p = vec![Rational::zero(); 2 * n - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    p[i + j] += x * y;
                }
            }
        }
        Cyclotomic {
            order: self.order,
            coeffs: self.reduce(p),
        }
    }
    fn neg(&self, a: &Cyclotomic) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }
    fn inv(&self, a: &Cyclotomic) -> Option<Cyclotomic> {
        if a.is_zero() {
            return None;
        }
        if a.is_rational() {
            return Some(Cyclotomic::from_rational(self.order, a.coeffs[0].recip()));
        }
        let m = self.mul_matrix(a);
        let mut e0 = vec![Rational::zero(); self.degree()];
        e0[0] = Rational::one();
        let x = linalg::solve(&RationalField, &m, &e0)?;
        Some(Cyclotomic {
            order: self.order,
            coeffs: x,
        })
    }
    fn is_zero(&self, a: &Cyclotomic) -> bool {
        a.is_zero()
    }
    fn from_rational(&self, r: &Rational) -> Cyclotomic {
        Cyclotomic::from_rational(self.order, r.clone())
    }
    fn to_rational(&self, a: &Cyclotomic) -> Option<Rational> {
        a.is_rational().then(|| a.coeffs[0].clone())
    }
    fn root_of_unity(&self, m: u64, k: i64) -> Option<Cyclotomic> {
        if m == 0 {
            return None;
        }
        let k = k.rem_euclid(m as i64) as u64;
        let g = k.gcd(&m);
        let (d, kk) = (m / g, k / g);
        let own = self.order;
        if own.is_multiple_of(d) {
            return Some(self.zeta_pow((kk * (own / d)) as i64));
        }
        if own % 2 == 1 && (2 * own).is_multiple_of(d) {
            // ζ_{2m} = -ζ_m^{(m+1)/2} for odd m
            let z2 = self.neg(&self.zeta_pow(own.div_ceil(2) as i64));
            return Some(self.pow(&z2, kk * (2 * own / d)));
        }
        None
    }
    fn render(&self, a: &Cyclotomic) -> String {
        let mut terms = Vec::new();
        for (i, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{}", self.order, i),
            };
            let term = if mono.is_empty() {
                rat_to_string(c)
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else {
                format!("{}*{mono}", rat_to_string(c))
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = terms[0].clone();
        for t in &terms[1..] {
            if let Some(rest) = t.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(t);
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn cyc(m: u64, cs: &[i64]) -> Cyclotomic {
        Cyclotomic {
            order: m,
            coeffs: cs.iter().map(|&c| int(c)).collect(),
        }
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |n| {
            cyclotomic_polynomial(n)
                .iter()
                .map(|c| c.to_string().parse::<i64>().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        for m in 1..=30 {
            assert_eq!(cyclotomic_polynomial(m).len() as u64 - 1, euler_phi(m));
        }
    }

    #[test]
    fn products_of_zeta() {
        let z2 = zeta_power(2, 1).unwrap();
        assert_eq!(z2.arith(&z2, CycOp::Mul).unwrap(), cyc(2, &[1]));
        let z3 = zeta_power(3, 1).unwrap();
        assert_eq!(z3.arith(&z3, CycOp::Mul).unwrap(), cyc(3, &[-1, -1]));
        let z6 = zeta_power(6, 1).unwrap();
        assert_eq!(z6.arith(&z6, CycOp::Mul).unwrap(), cyc(6, &[-1, 1]));
    }

    #[test]
    fn mismatched_orders_rejected() {
        let a = zeta_power(3, 1).unwrap();
        let b = zeta_power(4, 1).unwrap();
        assert_eq!(
            a.arith(&b, CycOp::Add),
            Err(ExactError::IncompatibleFields { left: 3, right: 4 })
        );
    }

    #[test]
    fn zeta_power_examples() {
        assert_eq!(zeta_power(1, 5).unwrap(), cyc(1, &[1]));
        assert_eq!(zeta_power(4, 2).unwrap(), cyc(4, &[-1, 0]));
        assert_eq!(zeta_power(3, -1).unwrap(), cyc(3, &[-1, -1]));
        assert_eq!(zeta_power(0, 1), Err(ExactError::ZeroOrder));
    }

    #[test]
    fn order_exactness() {
        for m in 1..=12u64 {
            let f = CyclotomicField::new(m);
            for k in 1..m {
                assert!(!f.is_one(&f.zeta_pow(k as i64)), "zeta_{m}^{k} == 1");
            }
            assert!(f.is_one(&f.zeta_pow(m as i64)));
        }
    }

    #[test]
    fn inverses() {
        for m in [3u64, 5, 7, 8, 12] {
            let f = CyclotomicField::new(m);
            let a = f.add(&f.zeta(), &f.from_int(2));
            let ia = f.inv(&a).unwrap();
            assert!(f.is_one(&f.mul(&a, &ia)));
        }
    }

    #[test]
    fn foreign_roots_of_unity() {
        let f = CyclotomicField::new(3);
        let z6 = f.root_of_unity(6, 1).unwrap();
        assert_eq!(f.pow(&z6, 6), f.one());
        assert_ne!(f.pow(&z6, 3), f.one());
        assert!(f.root_of_unity(4, 1).is_none());
        let f12 = CyclotomicField::new(12);
        assert_eq!(f12.root_of_unity(4, 1).unwrap(), f12.zeta_pow(3));
    }

    #[test]
    fn render() {
        let f = CyclotomicField::new(3);
        assert_eq!(f.render(&f.zeta_pow(2)), "-1 - z3");
    }
}
