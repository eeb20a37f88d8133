//! Coefficient fields: prime fields 𝔽_p (p < 2^31) and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The base field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Field {
    PrimeField { p: u32 },
    Rationals,
}

impl Field {
    pub fn prime(p: u32) -> Result<Self, Error> {
        if p < 2 || p >= (1u32 << 31) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::PrimeField { p })
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::PrimeField { p } => *p,
            Field::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::PrimeField { p } => Coeff::Mod(0, *p),
            Field::Rationals => Coeff::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            Field::PrimeField { p } => {
                let r = v.rem_euclid(*p as i64) as u32;
                Coeff::Mod(r, *p)
            }
            Field::Rationals => Coeff::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// Maps an exact rational into the field; fails when the denominator
    /// vanishes modulo p.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Coeff, Error> {
        if den.is_zero() {
            return Err(Error::input("zero denominator"));
        }
        match self {
            Field::PrimeField { p } => {
                let pb = BigInt::from(*p);
                let n = ((num % &pb) + &pb) % &pb;
                let d = ((den % &pb) + &pb) % &pb;
                let n = n.to_u32().unwrap_or(0);
                let d = d.to_u32().unwrap_or(0);
                if d == 0 {
                    return Err(Error::input(format!("denominator divisible by {p}")));
                }
                let dc = Coeff::Mod(d, *p);
                Ok(&Coeff::Mod(n, *p) * &dc.inv())
            }
            Field::Rationals => Ok(Coeff::Rat(BigRational::new(num.clone(), den.clone()))),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::PrimeField { p } => write!(f, "GF({p})"),
            Field::Rationals => write!(f, "QQ"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Prime-field elements carry their modulus so that
/// arithmetic is self-contained.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Mod(u32, u32),
    Rat(BigRational),
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Mod(v, _) => *v == 0,
            Coeff::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Mod(v, _) => *v == 1,
            Coeff::Rat(r) => r.is_one(),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Coeff::Mod(_, p) => Field::PrimeField { p: *p },
            Coeff::Rat(_) => Field::Rationals,
        }
    }

    pub fn inv(&self) -> Coeff {
        match self {
            Coeff::Mod(v, p) => {
                assert!(*v != 0, "inverse of zero");
                Coeff::Mod(pow_mod(*v as u64, *p as u64 - 2, *p as u64) as u32, *p)
            }
            Coeff::Rat(r) => Coeff::Rat(r.recip()),
        }
    }

    /// Symmetric integer representative for prime fields, used for printing.
    fn signed_repr(&self) -> (bool, String) {
        match self {
            Coeff::Mod(v, p) => {
                if *v > p / 2 {
                    (true, (p - v).to_string())
                } else {
                    (false, v.to_string())
                }
            }
            Coeff::Rat(r) => {
                if r.is_negative() {
                    (true, (-r).to_string())
                } else {
                    (false, r.to_string())
                }
            }
        }
    }

    /// `(is_negative, magnitude)` as printed by the canonical polynomial printer.
    pub fn sign_and_magnitude(&self) -> (bool, String) {
        self.signed_repr()
    }

    pub fn as_u32(&self) -> Option<u32> {
        match self {
            Coeff::Mod(v, _) => Some(*v),
            Coeff::Rat(_) => None,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, mag) = self.signed_repr();
        if neg {
            write!(f, "-{mag}")
        } else {
            write!(f, "{mag}")
        }
    }
}

impl<'a> std::ops::Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, rhs: &'a Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Mod(a, p), Coeff::Mod(b, _)) => {
                let s = *a as u64 + *b as u64;
                Coeff::Mod((s % *p as u64) as u32, *p)
            }
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a + b),
            _ => panic!("mixed coefficient fields"),
        }
    }
}

impl<'a> std::ops::Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &'a Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Mod(a, p), Coeff::Mod(b, _)) => {
                let s = *a as u64 + (*p - *b) as u64;
                Coeff::Mod((s % *p as u64) as u32, *p)
            }
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a - b),
            _ => panic!("mixed coefficient fields"),
        }
    }
}

impl<'a> std::ops::Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &'a Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Mod(a, p), Coeff::Mod(b, _)) => {
                Coeff::Mod(((*a as u64 * *b as u64) % *p as u64) as u32, *p)
            }
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a * b),
            _ => panic!("mixed coefficient fields"),
        }
    }
}

impl std::ops::Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Mod(a, p) => Coeff::Mod(if *a == 0 { 0 } else { p - a }, *p),
            Coeff::Rat(a) => Coeff::Rat(-a),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(101).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a, Coeff::Mod(100, 101));
        assert!((&a * &a).is_one());
        let b = f.from_i64(7);
        assert!((&b * &b.inv()).is_one());
        assert_eq!(a.to_string(), "-1");
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(100).is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn rational_arithmetic() {
        let f = Field::Rationals;
        let c = f.from_ratio(&BigInt::from(3), &BigInt::from(4)).unwrap();
        let d = &c + &f.from_i64(1);
        assert_eq!(d.to_string(), "7/4");
        assert!((&d * &d.inv()).is_one());
    }
}
