//! Arbitrary-precision rationals and the helpers the rest of the crate
//! leans on: canonical `p/q` text, floor/fractional parts, and scaling a
//! rational vector to its primitive integer representative.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// Dense vector of exact rationals.
pub type RationalVector = Vec<Rational>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn half() -> Rational {
    frac(1, 2)
}

pub fn vec_of(values: &[i64]) -> RationalVector {
    values.iter().map(|&v| int(v)).collect()
}

pub fn zeros(n: usize) -> RationalVector {
    vec![Rational::zero(); n]
}

/// `p/q`, or `p` when the denominator is one.
pub fn to_string(r: &Rational) -> String {
    r.to_string()
}

pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q.is_zero() {
            return None;
        }
        Some(Rational::new(p, q))
    } else if let Some((whole, dec)) = s.split_once('.') {
        // Finite decimals such as "3.5" are accepted as exact rationals.
        if dec.is_empty() || !dec.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let negative = whole.trim_start().starts_with('-');
        let w = if whole.is_empty() || whole == "-" { BigInt::zero() } else { BigInt::from_str(whole).ok()? };
        let scale = num_traits::pow(BigInt::from(10), dec.len());
        let d = BigInt::from_str(dec).ok()?;
        let mag = w.abs() * &scale + d;
        let num = if negative { -mag } else { mag };
        Some(Rational::new(num, scale))
    } else {
        BigInt::from_str(s).ok().map(Rational::from_integer)
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Integer part `[a]` (floor).
pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// Fractional part `{a} = a - [a]`.
pub fn fract(r: &Rational) -> Rational {
    r - Rational::from_integer(floor(r))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sum(a: &[Rational]) -> Rational {
    a.iter().fold(Rational::zero(), |acc, x| acc + x)
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn scale(a: &[Rational], c: &Rational) -> RationalVector {
    a.iter().map(|x| x * c).collect()
}

pub fn neg(a: &[Rational]) -> RationalVector {
    a.iter().map(|x| -x).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> RationalVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> RationalVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Positive multiple of `v` with coprime integer entries. The zero vector is
/// returned unchanged.
pub fn primitive_integer(v: &[Rational]) -> RationalVector {
    if is_zero_vec(v) {
        return v.to_vec();
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().filter(|x| !x.is_zero()).fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// Primitive integer representative whose first nonzero entry is positive.
pub fn primitive_signed(v: &[Rational]) -> RationalVector {
    let p = primitive_integer(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => neg(&p),
        _ => p,
    }
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(to_string).collect();
    format!("({})", parts.join(", "))
}

/// Serde adapters that keep rationals as canonical strings in every
/// machine-readable channel.
pub mod serde_str {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }

    pub mod vec {
        use super::super::Rational;
        use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&super::super::to_string(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<String>::deserialize(d)?;
            raw.iter()
                .map(|s| super::super::parse(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
                .collect()
        }
    }

    pub mod opt {
        use super::super::Rational;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&super::super::to_string(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            use serde::de::Error;
            let raw = Option::<String>::deserialize(d)?;
            raw.map(|s| super::super::parse(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
                .transpose()
        }
    }

    pub mod opt_vec {
        use super::super::Rational;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.serialize_some(&v.iter().map(super::super::to_string).collect::<Vec<_>>()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
            use serde::de::Error;
            let raw = Option::<Vec<String>>::deserialize(d)?;
            raw.map(|v| {
                v.iter()
                    .map(|s| super::super::parse(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
                    .collect()
            })
            .transpose()
        }
    }

    pub mod matrix {
        use super::super::Rational;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
            use serde::ser::SerializeSeq;
            let mut seq = s.serialize_seq(Some(m.len()))?;
            for row in m {
                let row: Vec<String> = row.iter().map(super::super::to_string).collect();
                seq.serialize_element(&row)?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
            use serde::de::Error;
            let raw = Vec::<Vec<String>>::deserialize(d)?;
            raw.iter()
                .map(|row| {
                    row.iter()
                        .map(|s| super::super::parse(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
                        .collect()
                })
                .collect()
        }
    }
}
