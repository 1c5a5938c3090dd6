//! Exact coefficient fields: prime fields F_p with p < 2^16 and the rationals.
//!
//! A [`Coeff`] carries no modulus of its own; arithmetic always goes through
//! the owning [`Field`], which every polynomial ring stores once.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The base field of a polynomial ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    /// F_p, elements stored as canonical representatives in `[0, p)`.
    Prime(u32),
    /// The rational numbers, arbitrary precision.
    Rationals,
}

/// A field element. `Mod` values belong to some `Field::Prime`, `Rat` values
/// to `Field::Rationals`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Mod(u32),
    Rat(BigRational),
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Builds F_p. Composite moduli and primes ≥ 2^16 are rejected.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 16 {
            return Err(Error::PrimeTooLarge(p));
        }
        Ok(Field::Prime(p as u32))
    }

    /// Field of characteristic `c`: 0 gives the rationals, a prime gives F_p.
    pub fn with_characteristic(c: u64) -> Result<Field> {
        if c == 0 {
            Ok(Field::Rationals)
        } else {
            Field::prime(c)
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p as u64,
            Field::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Prime(_) => Coeff::Mod(0),
            Field::Rationals => Coeff::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            Field::Prime(_) => Coeff::Mod(1),
            Field::Rationals => Coeff::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            Field::Prime(p) => Coeff::Mod(v.rem_euclid(*p as i64) as u32),
            Field::Rationals => Coeff::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Coeff::Mod(r.to_u32().expect("reduced residue fits in u32"))
            }
            Field::Rationals => Coeff::Rat(BigRational::from_integer(v.clone())),
        }
    }

    /// The class of `num/den`; `None` when `den` vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Coeff> {
        let d = self.from_bigint(den);
        if self.is_zero(&d) {
            return None;
        }
        Some(self.mul(&self.from_bigint(num), &self.inv(&d)))
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Mod(v) => *v == 0,
            Coeff::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Mod(v) => *v == 1,
            Coeff::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => Coeff::Mod((x + y) % p),
            (Field::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            _ => panic!("coefficient does not belong to {self:?}"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => Coeff::Mod((x + p - y) % p),
            (Field::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x - y),
            _ => panic!("coefficient does not belong to {self:?}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Field::Prime(p), Coeff::Mod(x)) => Coeff::Mod((p - x) % p),
            (Field::Rationals, Coeff::Rat(x)) => Coeff::Rat(-x),
            _ => panic!("coefficient does not belong to {self:?}"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (Field::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            _ => panic!("coefficient does not belong to {self:?}"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        assert!(!self.is_zero(a), "inverse of zero");
        match (self, a) {
            (Field::Prime(p), Coeff::Mod(x)) => Coeff::Mod(pow_mod(*x, p - 2, *p)),
            (Field::Rationals, Coeff::Rat(x)) => Coeff::Rat(x.recip()),
            _ => panic!("coefficient does not belong to {self:?}"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &Coeff, e: u32) -> Coeff {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Every element of F_p in canonical order; `None` over the rationals.
    pub fn elements(&self) -> Option<Vec<Coeff>> {
        match self {
            Field::Prime(p) => Some((0..*p).map(Coeff::Mod).collect()),
            Field::Rationals => None,
        }
    }
}

pub(crate) fn pow_mod(base: u32, mut e: u32, p: u32) -> u32 {
    let p = p as u64;
    let mut b = base as u64 % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc as u32
}

impl Coeff {
    /// Whether the printed form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Mod(_) => false,
            Coeff::Rat(r) => r.is_negative(),
        }
    }

    pub fn as_mod(&self) -> Option<u32> {
        match self {
            Coeff::Mod(v) => Some(*v),
            Coeff::Rat(_) => None,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Mod(v) => write!(f, "{v}"),
            Coeff::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}
