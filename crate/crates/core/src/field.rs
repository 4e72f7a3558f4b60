//! Ground fields: the rationals and prime fields.
//!
//! Public polynomials always carry [`BigRational`] coefficients. Over a prime
//! field those are integers in `0..p`; the [`FieldSpec`] methods keep them
//! there. The Gröbner engine works over the [`Coeffs`] trait so that prime
//! fields run on machine words.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest accepted prime modulus; products of two residues fit in `u64`.
pub const MAX_PRIME: u64 = (1 << 32) - 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Rationals
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "Fp={p}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    /// `QQ` or `Fp=p`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("QQ") {
            return Ok(FieldSpec::Rationals);
        }
        let p = s
            .strip_prefix("Fp=")
            .ok_or_else(|| Error::InvalidField(format!("expected `QQ` or `Fp=p`, got `{s}`")))?;
        let p = p
            .parse::<u64>()
            .map_err(|e| Error::InvalidField(format!("`{p}`: {e}")))?;
        FieldSpec::prime(p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::InvalidField(format!("modulus {p} exceeds {MAX_PRIME}")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, FieldSpec::Rationals)
    }

    /// Maps an arbitrary rational into the field's canonical representative.
    pub fn normalize(&self, c: &BigRational) -> Result<BigRational> {
        match self {
            FieldSpec::Rationals => Ok(c.clone()),
            FieldSpec::Prime(p) => {
                let p_big = BigInt::from(*p);
                let num = c.numer().mod_floor(&p_big).to_u64().unwrap();
                let den = c.denom().mod_floor(&p_big).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::InvalidField(format!(
                        "denominator {} vanishes modulo {p}",
                        c.denom()
                    )));
                }
                Ok(small(mul_mod(num, inv_mod(den, *p), *p)))
            }
        }
    }

    pub fn from_int(&self, n: i64) -> BigRational {
        self.normalize(&BigRational::from_integer(BigInt::from(n)))
            .expect("integers have unit denominators")
    }

    pub fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        match self {
            FieldSpec::Rationals => a + b,
            FieldSpec::Prime(p) => small((residue(a) + residue(b)) % p),
        }
    }

    pub fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        match self {
            FieldSpec::Rationals => a - b,
            FieldSpec::Prime(p) => small((residue(a) + p - residue(b)) % p),
        }
    }

    pub fn neg(&self, a: &BigRational) -> BigRational {
        match self {
            FieldSpec::Rationals => -a,
            FieldSpec::Prime(p) => small((p - residue(a)) % p),
        }
    }

    pub fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        match self {
            FieldSpec::Rationals => a * b,
            FieldSpec::Prime(p) => small(mul_mod(residue(a), residue(b), *p)),
        }
    }

    /// Panics on zero.
    pub fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            FieldSpec::Rationals => a.recip(),
            FieldSpec::Prime(p) => small(inv_mod(residue(a), *p)),
        }
    }

    pub fn div(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &BigRational, e: u32) -> BigRational {
        let mut acc = BigRational::one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Representative used for printing: residues above `p/2` print as negatives.
    pub fn display_value(&self, a: &BigRational) -> BigRational {
        match self {
            FieldSpec::Rationals => a.clone(),
            FieldSpec::Prime(p) => {
                let r = residue(a);
                if r > p / 2 {
                    BigRational::from_integer(BigInt::from(r) - BigInt::from(*p))
                } else {
                    a.clone()
                }
            }
        }
    }

    /// Printed form of a scalar: an integer or `p/q`.
    pub fn format(&self, a: &BigRational) -> String {
        let mut s = String::new();
        crate::poly::write_scalar(&mut s, &self.display_value(a)).unwrap();
        s
    }
}

fn small(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn residue(a: &BigRational) -> u64 {
    debug_assert!(a.is_integer() && !a.is_negative());
    a.numer().to_u64().expect("prime-field residue fits in u64")
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Coefficient arithmetic used inside the Gröbner engine.
pub(crate) trait Coeffs: Sync {
    type E: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn is_one(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn import(&self, c: &BigRational) -> Self::E;
    fn export(&self, e: &Self::E) -> BigRational;
}

pub(crate) struct Rationals;

impl Coeffs for Rationals {
    type E = BigRational;

    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn import(&self, c: &BigRational) -> BigRational {
        c.clone()
    }
    fn export(&self, e: &BigRational) -> BigRational {
        e.clone()
    }
}

pub(crate) struct Zp(pub u64);

impl Coeffs for Zp {
    type E = u64;

    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0)
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.0)
    }
    fn import(&self, c: &BigRational) -> u64 {
        residue(c)
    }
    fn export(&self, e: &u64) -> BigRational {
        small(*e)
    }
}
