use std::fmt::Debug;
use std::hash::Hash;

use num_traits::{One, Zero};

use super::rational::{int, Rational};

/// A field whose elements are exact values.
///
/// Elements do not carry enough context to produce `0` or `1` on their own
/// (a cyclotomic zero needs to know its order), so all arithmetic goes
/// through the field object.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_rational(&self, r: &Rational) -> Self::Elem;
    /// `Some` iff the element lies in the prime field ℚ.
    fn to_rational(&self, a: &Self::Elem) -> Option<Rational>;
    /// `ζ_m^k` if the field contains it.
    fn root_of_unity(&self, m: u64, k: i64) -> Option<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&int(n))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn from_rational(&self, r: &Rational) -> Rational {
        r.clone()
    }
    fn to_rational(&self, a: &Rational) -> Option<Rational> {
        Some(a.clone())
    }
    fn root_of_unity(&self, m: u64, k: i64) -> Option<Rational> {
        if m == 0 {
            return None;
        }
        let k = k.rem_euclid(m as i64) as u64;
        if k == 0 {
            Some(Rational::one())
        } else if 2 * k == m {
            Some(-Rational::one())
        } else {
            None
        }
    }
    fn render(&self, a: &Rational) -> String {
        super::rational::rat_to_string(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn rational_roots_of_unity() {
        let q = RationalField;
        assert_eq!(q.root_of_unity(2, 1), Some(int(-1)));
        assert_eq!(q.root_of_unity(4, 2), Some(int(-1)));
        assert_eq!(q.root_of_unity(3, 3), Some(int(1)));
        assert_eq!(q.root_of_unity(3, 1), None);
    }

    #[test]
    fn pow_and_div() {
        let q = RationalField;
        assert_eq!(q.pow(&rat(2, 3), 3), rat(8, 27));
        assert_eq!(q.div(&int(1), &int(0)), None);
    }
}
