//! Exact coefficient fields.
//!
//! A [`Field`] value is a small descriptor (the modulus for `GF(p)`, nothing
//! for the rationals) that knows how to do arithmetic on its elements. Every
//! matrix carries its field, so mixing elements of different fields is caught
//! at the matrix level.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::Value;

use crate::error::{Error, Result};

pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random_elem(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// Number of elements, if finite.
    fn order(&self) -> Option<u64>;

    /// Element with the given index in `0..order()`; only meaningful for finite fields.
    fn nth_elem(&self, k: u64) -> Self::Elem;

    fn spec(&self) -> FieldSpec;

    fn format_elem(&self, a: &Self::Elem) -> String;
    fn elem_to_json(&self, a: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem>;
}

/// Prime field `GF(p)`, elements stored reduced in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

pub const DEFAULT_PRIME: u64 = 101;

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 {
            return Err(Error::InvalidField(format!("modulus {p} too large (must be < 2^32)")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // a^(p-2) by square-and-multiply
        let mut base = *a;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Some(acc)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn nth_elem(&self, k: u64) -> u64 {
        k % self.p
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn elem_to_json(&self, a: &u64) -> Value {
        Value::from(*a)
    }
    fn elem_from_json(&self, v: &Value) -> Result<u64> {
        match v {
            Value::Number(num) => {
                if let Some(i) = num.as_i64() {
                    Ok(self.reduce_i64(i))
                } else if let Some(u) = num.as_u64() {
                    Ok(u % self.p)
                } else {
                    Err(Error::Parse(format!("expected an integer entry, got {num}")))
                }
            }
            Value::String(s) => {
                let i: i64 = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("expected an integer entry, got {s:?}")))?;
                Ok(self.reduce_i64(i))
            }
            other => Err(Error::Parse(format!("expected an integer entry, got {other}"))),
        }
    }
}

/// The field of rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Rationals {
    pub fn parse_elem(s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
        }
    }
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
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
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let num: i64 = rng.gen_range(-6..=6);
        let den: i64 = rng.gen_range(1..=3);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn nth_elem(&self, k: u64) -> BigRational {
        self.from_i64(k as i64)
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn elem_to_json(&self, a: &BigRational) -> Value {
        Value::String(self.format_elem(a))
    }
    fn elem_from_json(&self, v: &Value) -> Result<BigRational> {
        match v {
            Value::Number(num) => num
                .as_i64()
                .map(|i| self.from_i64(i))
                .ok_or_else(|| Error::Parse(format!("expected an integer or \"num/den\", got {num}"))),
            Value::String(s) => Rationals::parse_elem(s),
            other => Err(Error::Parse(format!("expected an integer or \"num/den\", got {other}"))),
        }
    }
}

/// Serializable choice of coefficient field: `gfp:<p>` or `rational`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "gfp:{p}"),
            FieldSpec::Rational => write!(f, "rational"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rational" || s == "q" || s == "Q" {
            return Ok(FieldSpec::Rational);
        }
        let digits = s
            .strip_prefix("gfp:")
            .or_else(|| s.strip_prefix("gf:"))
            .unwrap_or(s);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidField(format!("unrecognized field descriptor {s:?}")))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::Prime(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(100).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(101).is_ok());
    }

    #[test]
    fn field_spec_round_trip() {
        for s in ["gfp:101", "gfp:2", "rational"] {
            let spec: FieldSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("gfp:91".parse::<FieldSpec>().is_err());
        assert!("reals".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn rationals_normalize() {
        let q = Rationals;
        let a = Rationals::parse_elem("4/-6").unwrap();
        assert_eq!(q.format_elem(&a), "-2/3");
        assert_eq!(q.elem_to_json(&q.from_i64(5)), Value::String("5".into()));
        assert!(Rationals::parse_elem("1/0").is_err());
    }

    #[test]
    fn json_entries_reduce_mod_p() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.elem_from_json(&Value::from(-1)).unwrap(), 6);
        assert_eq!(f.elem_from_json(&Value::from(15)).unwrap(), 1);
        assert!(f.elem_from_json(&Value::from(1.5)).is_err());
    }

    proptest! {
        #[test]
        fn prime_field_axioms(a in 0u64..101, b in 0u64..101, c in 0u64..101) {
            let f = PrimeField::default();
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
            prop_assert_eq!(f.sub(&a, &b), f.add(&a, &f.neg(&b)));
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }

        #[test]
        fn rational_field_axioms(an in -20i64..20, ad in 1i64..9, bn in -20i64..20, bd in 1i64..9, cn in -20i64..20) {
            let q = Rationals;
            let a = BigRational::new(an.into(), ad.into());
            let b = BigRational::new(bn.into(), bd.into());
            let c = q.from_i64(cn);
            prop_assert_eq!(q.add(&q.add(&a, &b), &c), q.add(&a, &q.add(&b, &c)));
            prop_assert_eq!(q.mul(&a, &q.add(&b, &c)), q.add(&q.mul(&a, &b), &q.mul(&a, &c)));
            if !a.is_zero() {
                prop_assert!(q.is_one(&q.mul(&a, &q.inv(&a).unwrap())));
            }
            // normalized: positive denominator, reduced
            let s = q.add(&a, &b);
            prop_assert!(s.denom().is_positive());
            let g = num_integer_gcd(s.numer().clone(), s.denom().clone());
            prop_assert!(g.is_one() || s.numer().is_zero());
        }
    }

    fn num_integer_gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
        a = a.abs();
        b = b.abs();
        while !b.is_zero() {
            let r = &a % &b;
            a = b;
            b = r;
        }
        a
    }
}
