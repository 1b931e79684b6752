//! Exact rational helpers: parsing, formatting and serde as `"p/q"` strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Accepts `"n"`, `"n/d"` and surrounding whitespace.
pub fn parse(text: &str) -> Result<Q, String> {
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad rational `{text}`"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad rational `{text}`"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{text}`"));
    }
    Ok(Q::new(n, d))
}

/// `"n"` for integers, `"n/d"` otherwise, always in lowest terms.
pub fn format(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn pow(x: &Q, n: u32) -> Q {
    let mut acc = Q::one();
    for _ in 0..n {
        acc *= x;
    }
    acc
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

pub mod serde_str {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use super::Q;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(super::int(n)),
            Raw::Text(t) => super::parse(&t).map_err(de::Error::custom),
        }
    }
}
