//! Extended-real scalars with partial arithmetic.
//!
//! `ExtReal` adjoins `-inf` and `+inf` to the rationals. Arithmetic is
//! partial: operations return `Option<ExtReal>`, where `None` means the
//! expression is undefined. Undefined is an ordinary value for callers to
//! branch on, never a panic. Exactly these expressions are undefined:
//!
//! - `(+inf) + (-inf)` and `(-inf) + (+inf)`
//! - `0 * (+inf)`, `0 * (-inf)`, `(+inf) * 0`, `(-inf) * 0`
//! - `x / 0` for every `x`
//! - `(+inf) / (+inf)`, `(+inf) / (-inf)`, `(-inf) / (+inf)`, `(-inf) / (-inf)`
//!
//! Everything else is defined; in particular infinities multiply and divide
//! by sign (`(-inf) * (-inf) = +inf`, `x / (+-inf) = 0` for finite `x`).
//!
//! The order is total with `-inf <= x <= +inf`; the empty supremum is `-inf`
//! and the empty infimum is `+inf`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::rational::Rational;

/// Rational number or a signed infinity.
///
/// Variant order makes the derived `Ord` agree with the extended-real order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtReal {
    MinusInf,
    Finite(Rational),
    PlusInf,
}

use ExtReal::{Finite, MinusInf, PlusInf};

impl ExtReal {
    pub fn zero() -> Self {
        Finite(Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Finite(Rational::from_int(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Finite(v) => Some(v),
            _ => None,
        }
    }

    fn sign(&self) -> Ordering {
        match self {
            MinusInf => Ordering::Less,
            PlusInf => Ordering::Greater,
            Finite(v) => {
                if v.is_negative() {
                    Ordering::Less
                } else if v.is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Equal
                }
            }
        }
    }

    /// Negation is total: `-(+inf) = -inf`.
    pub fn neg(&self) -> ExtReal {
        match self {
            MinusInf => PlusInf,
            PlusInf => MinusInf,
            Finite(v) => Finite(-v),
        }
    }

    /// Partial addition; `None` exactly for opposite infinities.
    pub fn checked_add(&self, rhs: &ExtReal) -> Option<ExtReal> {
        match (self, rhs) {
            (PlusInf, MinusInf) | (MinusInf, PlusInf) => None,
            (PlusInf, _) | (_, PlusInf) => Some(PlusInf),
            (MinusInf, _) | (_, MinusInf) => Some(MinusInf),
            (Finite(a), Finite(b)) => Some(Finite(a + b)),
        }
    }

    /// Partial subtraction, defined as `a + (-b)`.
    pub fn checked_sub(&self, rhs: &ExtReal) -> Option<ExtReal> {
        self.checked_add(&rhs.neg())
    }

    /// Partial multiplication; `None` exactly for zero times an infinity.
    pub fn checked_mul(&self, rhs: &ExtReal) -> Option<ExtReal> {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Some(Finite(a * b)),
            _ => match (self.sign(), rhs.sign()) {
                (Ordering::Equal, _) | (_, Ordering::Equal) => None,
                (sa, sb) if sa == sb => Some(PlusInf),
                _ => Some(MinusInf),
            },
        }
    }

    /// Partial division; `None` for `x/0` and for infinity over infinity.
    pub fn checked_div(&self, rhs: &ExtReal) -> Option<ExtReal> {
        match (self, rhs) {
            (_, Finite(b)) if b.is_zero() => None,
            (Finite(a), Finite(b)) => Some(Finite(a / b)),
            (Finite(_), _) => Some(ExtReal::zero()),
            (_, Finite(b)) => {
                if (self.sign() == Ordering::Greater) == b.is_positive() {
                    Some(PlusInf)
                } else {
                    Some(MinusInf)
                }
            }
            _ => None,
        }
    }

    /// Supremum with the empty-set convention `sup {} = -inf`.
    pub fn sup<I: IntoIterator<Item = ExtReal>>(values: I) -> ExtReal {
        values.into_iter().fold(MinusInf, std::cmp::max)
    }

    /// Infimum with the empty-set convention `inf {} = +inf`.
    pub fn inf<I: IntoIterator<Item = ExtReal>>(values: I) -> ExtReal {
        values.into_iter().fold(PlusInf, std::cmp::min)
    }
}

impl From<Rational> for ExtReal {
    fn from(v: Rational) -> Self {
        Finite(v)
    }
}

impl From<i64> for ExtReal {
    fn from(n: i64) -> Self {
        ExtReal::from_int(n)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinusInf => f.write_str("-inf"),
            PlusInf => f.write_str("inf"),
            Finite(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for ExtReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "inf" | "+inf" => Ok(PlusInf),
            "-inf" => Ok(MinusInf),
            other => Ok(Finite(other.parse()?)),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = ExtReal;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("\"inf\", \"-inf\", a rational string, or an integer")
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<ExtReal, E> {
                v.parse().map_err(|e: Error| E::custom(e.to_string()))
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<ExtReal, E> {
                Ok(ExtReal::from_int(v))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<ExtReal, E> {
                Ok(Finite(Rational::from_big(v.into(), 1.into()).unwrap()))
            }
        }
        deserializer.deserialize_any(V)
    }
}
