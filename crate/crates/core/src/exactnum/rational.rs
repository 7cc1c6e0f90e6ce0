use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub type RatVector = Vec<Rational>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d`; panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Compact rendering used in reports: `3`, `-1/2`.
pub fn rat_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of the denominators of `v`.
pub fn common_denominator(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn zero_vec(n: usize) -> RatVector {
    vec![Rational::zero(); n]
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vadd(a: &[Rational], b: &[Rational]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Rational], b: &[Rational]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(s: &Rational, a: &[Rational]) -> RatVector {
    a.iter().map(|x| s * x).collect()
}

pub fn vneg(a: &[Rational]) -> RatVector {
    a.iter().map(|x| -x).collect()
}

pub fn ivec(v: &[i64]) -> RatVector {
    v.iter().map(|&x| int(x)).collect()
}

pub fn vec_to_string(v: &[Rational]) -> String {
    format!(
        "({})",
        v.iter().map(rat_to_string).collect::<Vec<_>>().join(", ")
    )
}
