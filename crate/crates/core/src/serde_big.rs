//! JSON encodings for big integers and rationals.
//!
//! Integers are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise; both forms are accepted on input. Rationals are
//! `[numerator, denominator]` pairs in lowest terms.

use std::fmt;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::lattice::{Int, Rational};

struct IntRef<'a>(&'a Int);

impl Serialize for IntRef<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct IntOwned(Int);

impl<'de> Deserialize<'de> for IntOwned {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = IntOwned;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<IntOwned, E> {
                Ok(IntOwned(Int::from(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<IntOwned, E> {
                Ok(IntOwned(Int::from(v)))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<IntOwned, E> {
                Int::from_str(v).map(IntOwned).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

struct RatRef<'a>(&'a Rational);

impl Serialize for RatRef<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&IntRef(self.0.numer()))?;
        seq.serialize_element(&IntRef(self.0.denom()))?;
        seq.end()
    }
}

struct RatOwned(Rational);

impl<'de> Deserialize<'de> for RatOwned {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (n, q) = <(IntOwned, IntOwned)>::deserialize(d)?;
        if q.0.is_zero() {
            return Err(de::Error::custom("zero denominator"));
        }
        Ok(RatOwned(Rational::new(n.0, q.0)))
    }
}

pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
        IntRef(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        IntOwned::deserialize(d).map(|v| v.0)
    }
}

pub mod rat {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        RatRef(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        RatOwned::deserialize(d).map(|v| v.0)
    }
}

pub mod opt_int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Int>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(q) => s.serialize_some(&IntRef(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Int>, D::Error> {
        Option::<IntOwned>::deserialize(d).map(|v| v.map(|q| q.0))
    }
}

pub mod int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&IntRef(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Vec<Int>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of integers")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Vec<Int>, A::Error> {
                let mut out = Vec::new();
                while let Some(x) = seq.next_element::<IntOwned>()? {
                    out.push(x.0);
                }
                Ok(out)
            }
        }
        d.deserialize_seq(V)
    }
}

pub mod rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&RatRef(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<RatOwned>::deserialize(d).map(|v| v.into_iter().map(|q| q.0).collect())
    }
}

#[cfg(test)]
mod tests {
    use serde::{Deserialize, Serialize};

    use crate::lattice::{int, rat, Int, Rational};

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Sample {
        #[serde(with = "super::int")]
        small: Int,
        #[serde(with = "super::int")]
        big: Int,
        #[serde(with = "super::rat")]
        q: Rational,
    }

    #[test]
    fn small_ints_are_numbers_and_big_ints_are_strings() {
        let big: Int = Int::from(u64::MAX) * 1000;
        let s = Sample {
            small: int(-7),
            big: big.clone(),
            q: rat(104, 105),
        };
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            format!("{{\"small\":-7,\"big\":\"{big}\",\"q\":[104,105]}}")
        );
        let back: Sample = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn zero_denominator_rejected() {
        let r: Result<Sample, _> = serde_json::from_str(r#"{"small":1,"big":2,"q":[1,0]}"#);
        assert!(r.is_err());
    }
}
