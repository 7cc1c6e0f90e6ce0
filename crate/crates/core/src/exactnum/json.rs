//! JSON encoding of rationals: integers stay integers, everything else is a
//! string `"p/q"`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonRational(pub Rational);

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d = BigInt::from_str(d.trim()).ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(Rational::new(BigInt::from_str(n.trim()).ok()?, d))
        }
        None => Some(Rational::from_integer(BigInt::from_str(s).ok()?)),
    }
}

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = &self.0;
        if r.denom().is_one() {
            if let Some(i) = r.numer().to_i64() {
                return s.serialize_i64(i);
            }
        }
        s.serialize_str(&super::rational::rat_to_string(r))
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonRational;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a string \"p/q\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonRational, E> {
                Ok(JsonRational(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonRational, E> {
                Ok(JsonRational(Rational::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonRational, E> {
                parse_rational(v)
                    .map(JsonRational)
                    .ok_or_else(|| E::custom(format!("bad rational {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn to_json_vec(v: &[Rational]) -> Vec<JsonRational> {
    v.iter().cloned().map(JsonRational).collect()
}

pub fn from_json_vec(v: &[JsonRational]) -> Vec<Rational> {
    v.iter().map(|x| x.0.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn roundtrip() {
        let v = vec![JsonRational(rat(1, 2)), JsonRational(rat(-3, 1))];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["1/2",-3]"#);
        let back: Vec<JsonRational> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<JsonRational>(r#""1/0""#).is_err());
    }
}
