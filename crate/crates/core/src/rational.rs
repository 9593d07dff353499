//! Exact rational numbers and their text encoding.
//!
//! Rationals are written as `"p/q"` in lowest terms, or `"p"` when the
//! denominator is one. Parsing accepts any `p/q` with `q != 0` and
//! canonicalizes.

use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::Serializer;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Lossy conversion for plotting columns only.
pub fn approx(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn abs_diff(a: &Rational, b: &Rational) -> Rational {
    (a - b).abs()
}

/// L-infinity distance between two equal-length vectors.
pub fn linf(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .map(|(x, y)| abs_diff(x, y))
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Serde adapter: `"p/q"` strings out, strings or integers in.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        d.deserialize_any(RationalVisitor)
    }

    pub(crate) struct RationalVisitor;

    impl Visitor<'_> for RationalVisitor {
        type Value = Rational;

        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("a rational as \"p/q\" or an integer")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
            parse_rational(v).map_err(E::custom)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
            Ok(int(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
            Ok(Rational::from_integer(BigInt::from(v)))
        }
    }
}

/// Serde adapter for `Vec<Vec<Rational>>` tables.
pub mod serde_table {
    use serde::de::SeqAccess;
    use serde::ser::SerializeSeq;

    use super::*;

    struct Cell<'a>(&'a Rational);

    impl serde::Serialize for Cell<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            serde_rational::serialize(self.0, s)
        }
    }

    struct Row<'a>(&'a [Rational]);

    impl serde::Serialize for Row<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(self.0.len()))?;
            for r in self.0 {
                seq.serialize_element(&Cell(r))?;
            }
            seq.end()
        }
    }

    pub fn serialize<S: Serializer>(t: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(t.len()))?;
        for row in t {
            seq.serialize_element(&Row(row))?;
        }
        seq.end()
    }

    struct OwnedCell(Rational);

    impl<'de> serde::Deserialize<'de> for OwnedCell {
        fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
            serde_rational::deserialize(d).map(OwnedCell)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        struct TableVisitor;
        impl<'de> Visitor<'de> for TableVisitor {
            type Value = Vec<Vec<Rational>>;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a table of rationals")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let mut rows = Vec::new();
                while let Some(row) = seq.next_element::<Vec<OwnedCell>>()? {
                    rows.push(row.into_iter().map(|c| c.0).collect());
                }
                Ok(rows)
            }
        }
        d.deserialize_seq(TableVisitor)
    }
}
