//! p-adic integers known to a finite absolute precision.
//!
//! An element is a little-endian digit vector: `digits[i]` is the digit of
//! `pⁱ`, and the vector length is the precision `k`, so the value is known
//! modulo `pᵏ`. Nothing is ever silently truncated past the known digits;
//! questions that would need digit `k` fail with [`PadicError::PrecisionExhausted`].

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("precision exhausted: the answer needs digits beyond the known {0}")]
    PrecisionExhausted(usize),
    #[error("mixed primes {0} and {1}")]
    PrimeMismatch(u32, u32),
    #[error("digit {digit} is not below p = {p}")]
    DigitOutOfRange { digit: u32, p: u32 },
    #[error("{0} is not prime")]
    NotPrime(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PadicInt {
    p: u32,
    digits: Vec<u32>,
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl PadicInt {
    pub fn new(p: u32, digits: Vec<u32>) -> Result<Self, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        if let Some(&digit) = digits.iter().find(|&&d| d >= p) {
            return Err(PadicError::DigitOutOfRange { digit, p });
        }
        Ok(PadicInt { p, digits })
    }

    pub fn zero(p: u32, precision: usize) -> Self {
        PadicInt { p, digits: vec![0; precision] }
    }

    /// `n mod pᵏ`, negative `n` included.
    pub fn from_integer(p: u32, n: i64, precision: usize) -> Self {
        let pp = p as i128;
        let mut v = n as i128;
        let mut digits = Vec::with_capacity(precision);
        for _ in 0..precision {
            let d = v.rem_euclid(pp);
            digits.push(d as u32);
            v = (v - d) / pp;
        }
        PadicInt { p, digits }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    /// Index of the first nonzero digit; `None` if zero at the known precision.
    pub fn valuation(&self) -> Option<usize> {
        self.digits.iter().position(|&d| d != 0)
    }

    /// Membership in `pᵐℤ_p`.
    pub fn in_ball(&self, m: usize) -> Result<bool, PadicError> {
        match self.valuation() {
            Some(v) => Ok(v >= m),
            None if m <= self.precision() => Ok(true),
            None => Err(PadicError::PrecisionExhausted(self.precision())),
        }
    }

    fn check_operand(&self, other: &Self) -> Result<usize, PadicError> {
        if self.p != other.p {
            return Err(PadicError::PrimeMismatch(self.p, other.p));
        }
        let k = self.precision().min(other.precision());
        if k == 0 {
            return Err(PadicError::PrecisionExhausted(0));
        }
        Ok(k)
    }

    /// Sum, known to the smaller of the two precisions.
    pub fn add(&self, other: &Self) -> Result<Self, PadicError> {
        let k = self.check_operand(other)?;
        let mut carry = 0u64;
        let digits = (0..k)
            .map(|i| {
                let s = self.digits[i] as u64 + other.digits[i] as u64 + carry;
                carry = s / self.p as u64;
                (s % self.p as u64) as u32
            })
            .collect();
        Ok(PadicInt { p: self.p, digits })
    }

    pub fn neg(&self) -> Result<Self, PadicError> {
        if self.precision() == 0 {
            return Err(PadicError::PrecisionExhausted(0));
        }
        let p = self.p;
        let digits = match self.valuation() {
            None => self.digits.clone(),
            Some(v) => (0..self.precision())
                .map(|i| match i.cmp(&v) {
                    std::cmp::Ordering::Less => 0,
                    std::cmp::Ordering::Equal => p - self.digits[i],
                    std::cmp::Ordering::Greater => p - 1 - self.digits[i],
                })
                .collect(),
        };
        Ok(PadicInt { p, digits })
    }

    /// Multiplication by `pⁿ`: `n` zero digits are prepended, so the known
    /// precision grows by `n` and the valuation by `n`.
    pub fn shift(&self, n: usize) -> Self {
        let mut digits = vec![0; n];
        digits.extend_from_slice(&self.digits);
        PadicInt { p: self.p, digits }
    }

    /// Parses digits written little-endian and separated by `:`, e.g. `1:0:2`.
    pub fn parse(p: u32, text: &str) -> Result<Self, String> {
        let text = text.trim();
        let digits = if text.is_empty() {
            Vec::new()
        } else {
            text.split(':')
                .map(|d| d.trim().parse::<u32>().map_err(|_| format!("bad digit `{d}`")))
                .collect::<Result<Vec<_>, _>>()?
        };
        PadicInt::new(p, digits).map_err(|e| e.to_string())
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join(":"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_round_trip_through_addition() {
        for a in -40i64..40 {
            for b in [-13i64, -1, 0, 2, 27] {
                let x = PadicInt::from_integer(3, a, 6);
                let y = PadicInt::from_integer(3, b, 6);
                assert_eq!(x.add(&y).unwrap(), PadicInt::from_integer(3, a + b, 6));
                assert_eq!(x.neg().unwrap(), PadicInt::from_integer(3, -a, 6));
            }
        }
    }

    #[test]
    fn precision_is_the_minimum() {
        let x = PadicInt::from_integer(5, 7, 4);
        let y = PadicInt::from_integer(5, 3, 2);
        assert_eq!(x.add(&y).unwrap().precision(), 2);
        let empty = PadicInt::zero(5, 0);
        assert_eq!(x.add(&empty), Err(PadicError::PrecisionExhausted(0)));
    }

    #[test]
    fn shift_adds_valuation() {
        let x = PadicInt::from_integer(3, 6, 5); // 6 = 0 + 2·3
        assert_eq!(x.valuation(), Some(1));
        assert_eq!(x.shift(3).valuation(), Some(4));
        assert_eq!(x.shift(3).precision(), 8);
    }

    #[test]
    fn ball_membership_is_honest_about_precision() {
        let z = PadicInt::zero(3, 2);
        assert_eq!(z.in_ball(2), Ok(true));
        assert_eq!(z.in_ball(3), Err(PadicError::PrecisionExhausted(2)));
        let x = PadicInt::from_integer(3, 9, 4);
        assert_eq!(x.in_ball(2), Ok(true));
        assert_eq!(x.in_ball(3), Ok(false));
    }

    #[test]
    fn rejects_bad_digits_and_composite_p() {
        assert!(PadicInt::new(3, vec![0, 3]).is_err());
        assert!(PadicInt::new(4, vec![0]).is_err());
        assert_eq!(PadicInt::parse(3, "1:0:2").unwrap().digits(), &[1, 0, 2]);
    }
}
