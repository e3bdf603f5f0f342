//! Coefficient fields.
//!
//! Everything in the crate is generic over [`Field`]. Two implementations are
//! provided: [`PrimeField`] (GF(p) with `u32` residues) and [`Rationals`]
//! (arbitrary precision fractions in lowest terms).

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Serializable description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldSpec {
    Prime(u32),
    Rationals(bool),
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec::Prime(p)
    }

    pub fn rationals() -> Self {
        FieldSpec::Rationals(true)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Prime(p) if !is_prime(p) => Err(Error::InvalidField(format!(
                "{p} is not prime"
            ))),
            FieldSpec::Prime(p) if p > (1 << 30) => Err(Error::InvalidField(format!(
                "characteristic {p} exceeds 2^30"
            ))),
            FieldSpec::Rationals(false) => Err(Error::InvalidField(
                "\"rationals\" must be true".into(),
            )),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Rationals(_) => write!(f, "Q"),
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field with exact arithmetic. The field value is a context object; the
/// elements themselves are plain data.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
    /// Uniform for finite fields; small integers for the rationals.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `dst += c * src`, elementwise.
    fn axpy(&self, dst: &mut [Self::Elem], c: &Self::Elem, src: &[Self::Elem]) {
        for (d, s) in dst.iter_mut().zip(src) {
            if !self.is_zero(s) {
                *d = self.add(d, &self.mul(c, s));
            }
        }
    }

    /// `dst *= c`, elementwise.
    fn scale(&self, dst: &mut [Self::Elem], c: &Self::Elem) {
        for d in dst.iter_mut() {
            if !self.is_zero(d) {
                *d = self.mul(d, c);
            }
        }
    }
}

/// GF(p) with canonical residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
    /// `floor(2^64 / p)`, for Barrett reduction.
    barrett: u64,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        FieldSpec::Prime(p).validate()?;
        Ok(PrimeField {
            p,
            barrett: u64::MAX / p as u64,
        })
    }

    /// `x mod p` for `x < 2^62`.
    #[inline(always)]
    fn reduce(&self, x: u64) -> u32 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = x - q * self.p as u64;
        while r >= self.p as u64 {
            r -= self.p as u64;
        }
        r as u32
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    fn pow(&self, mut base: u32, mut exp: u32) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64;
        let mut b = base as u64 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        base = acc as u32;
        base
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 * *b as u64)
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in GF({})", self.p);
        self.pow(*a, self.p - 2)
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn parse(&self, s: &str) -> Result<u32> {
        let t = s.trim();
        let v: i64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("not an element of GF({}): {s:?}", self.p)))?;
        Ok(self.from_i64(v))
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }

    fn axpy(&self, dst: &mut [u32], c: &u32, src: &[u32]) {
        let c = *c as u64;
        if c == 0 {
            return;
        }
        if self.p == 2 {
            for (d, s) in dst.iter_mut().zip(src) {
                *d ^= *s;
            }
            return;
        }
        for (d, s) in dst.iter_mut().zip(src) {
            if *s != 0 {
                *d = self.reduce(*d as u64 + c * *s as u64);
            }
        }
    }

    fn scale(&self, dst: &mut [u32], c: &u32) {
        let c = *c as u64;
        for d in dst.iter_mut() {
            *d = self.reduce(*d as u64 * c);
        }
    }
}

/// The rational numbers, with elements kept in lowest terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::rationals()
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let t = s.trim();
        let err = || Error::Parse(format!("not a rational number: {s:?}"));
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(t.parse().map_err(|_| err())?)),
        }
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            let sign = if a.is_negative() { "-" } else { "" };
            format!("{sign}{}/{}", a.numer().abs(), a.denom())
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-3..=3))
    }
}
