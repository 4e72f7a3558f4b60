//! Sparse multivariate polynomials over ℚ or 𝔽_p.
//!
//! Terms are kept sorted by descending graded-lex order with no zero
//! coefficients, so structural equality is ideal-free polynomial equality and
//! the printed form is canonical.

mod linear;
mod order;
mod parse;

pub use linear::{linear_span_dim, LinearForm, Subspace};
pub use parse::collect_identifiers;
pub use order::{compare_monomials, TermOrder};

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// Polynomial ring `K[x_1, ..., x_n]`; declaration order is variable precedence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    field: FieldSpec,
}

impl Ring {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        field: FieldSpec,
    ) -> Result<Arc<Ring>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidArgument(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(Ring { vars, field }))
    }

    /// Ring over ℚ; panics on invalid names (for tests and fixtures).
    pub fn rationals(vars: &[&str]) -> Arc<Ring> {
        Ring::new(vars.iter().copied(), FieldSpec::Rationals).expect("valid variable list")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables over another field.
    pub fn with_field(&self, field: FieldSpec) -> Arc<Ring> {
        Arc::new(Ring {
            vars: self.vars.clone(),
            field,
        })
    }

    /// A variable name not yet used in this ring.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (0..)
            .map(|i| format!("{base}{i}"))
            .find(|n| self.index_of(n).is_none())
            .unwrap()
    }

    /// Ring with `names` prepended (they become the highest-precedence variables).
    pub fn extend_front(&self, names: &[String]) -> Result<Arc<Ring>> {
        Ring::new(
            names.iter().cloned().chain(self.vars.iter().cloned()),
            self.field.clone(),
        )
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) type Exponents = SmallVec<[u16; 14]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Exponents);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(SmallVec::from_elem(0, arity))
    }

    pub fn from_exponents(e: impl IntoIterator<Item = u16>) -> Self {
        Monomial(e.into_iter().collect())
    }

    pub fn variable(arity: usize, index: usize) -> Self {
        let mut m = Self::one(arity);
        m.0[index] = 1;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|&e| u16::try_from(e as u32 * k).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Bit `i % 64` is set when variable `i` occurs; a cheap divisibility filter.
    pub(crate) fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1 << (i % 64)))
    }
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, BigRational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

fn print_order(a: &Monomial, b: &Monomial) -> Ordering {
    TermOrder::DegLex.compare(a, b)
}

impl Polynomial {
    /// Builds a polynomial from arbitrary terms: like terms are merged, zero
    /// terms dropped and coefficients reduced into the ring's field.
    pub fn from_terms(
        ring: &Arc<Ring>,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Result<Polynomial> {
        let field = ring.field();
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            if m.arity() != ring.arity() {
                return Err(Error::ArityMismatch {
                    expected: ring.arity(),
                    found: m.arity(),
                });
            }
            let c = field.normalize(&c)?;
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Ok(Self::from_sorted_map(ring, acc))
    }

    fn from_sorted_map(ring: &Arc<Ring>, acc: BTreeMap<Monomial, BigRational>) -> Polynomial {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| print_order(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusted constructor: terms already canonical (sorted, nonzero, normalized).
    pub(crate) fn from_canonical(ring: &Arc<Ring>, terms: Vec<(Monomial, BigRational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| print_order(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms in arbitrary order but with distinct monomials and normalized nonzero coefficients.
    pub(crate) fn from_distinct_terms(ring: &Arc<Ring>, mut terms: Vec<(Monomial, BigRational)>) -> Self {
        terms.sort_by(|a, b| print_order(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, &BigRational::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: &BigRational) -> Self {
        Self::from_terms(ring, [(Monomial::one(ring.arity()), c.clone())])
            .expect("constant is well-formed")
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var_at(ring, i))
    }

    pub fn var_at(ring: &Arc<Ring>, index: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::variable(ring.arity(), index), BigRational::one())],
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn leading_term(&self, order: TermOrder) -> Option<&(Monomial, BigRational)> {
        self.terms.iter().max_by(|a, b| order.compare(&a.0, &b.0))
    }

    /// Variables actually occurring, by ring index.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.arity())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.exponents()[i] > 0))
            .collect()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let field = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &BigRational| if negate { field.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match print_order(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        field.sub(&a[i].1, &b[j].1)
                    } else {
                        field.add(&a[i].1, &b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Polynomial::from_canonical(&self.ring, out)
    }

    /// Exact product.
    pub fn multiply(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let field = self.ring.field();
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = field.mul(c1, c2);
                let m = m1.mul(m2);
                match acc.get_mut(&m) {
                    Some(v) => *v = field.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Polynomial::from_distinct_terms(&self.ring, terms))
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        let field = self.ring.field();
        let c = field.normalize(c).expect("scalar must be defined in the field");
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), field.mul(a, &c)))
            .collect();
        Polynomial::from_canonical(&self.ring, terms)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        // Monomial orders are multiplicative, so the term order survives.
        let terms = self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect();
        Polynomial::from_canonical(&self.ring, terms)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: TermOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.ring.field().inv(c)),
        }
    }

    /// Ring morphism sending the named variables to polynomials of `target`;
    /// every other variable maps to the same-named variable of `target`.
    pub fn substitute(
        &self,
        target: &Arc<Ring>,
        assignment: &[(&str, Polynomial)],
    ) -> Result<Polynomial> {
        let mut images: Vec<Option<Polynomial>> = vec![None; self.ring.arity()];
        for (name, image) in assignment {
            let i = self
                .ring
                .index_of(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            if !same_ring(image.ring(), target) {
                return Err(Error::RingMismatch);
            }
            images[i] = Some(image.clone());
        }
        let used = self.support();
        for &i in &used {
            if images[i].is_none() {
                images[i] = Some(Polynomial::var(target, &self.ring.vars[i])?);
            }
        }
        let mut powers: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers
                    .entry((i, e))
                    .or_insert_with(|| images[i].as_ref().unwrap().pow(e as u32));
                term = &term * &*p;
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Re-express in `target`, matching variables by name.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<Polynomial> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        if self.ring.field() != target.field() {
            return Err(Error::RingMismatch);
        }
        let map: Vec<Option<usize>> = self.ring.vars.iter().map(|v| target.index_of(v)).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = Monomial::one(target.arity());
            for (i, &x) in m.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| Error::UnknownVariable(self.ring.vars[i].clone()))?;
                e.0[j] = x;
            }
            terms.push((e, c.clone()));
        }
        Ok(Polynomial::from_distinct_terms(target, terms))
    }

    /// Value at a point (coordinates in ring order).
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.ring.arity() {
            return Err(Error::ArityMismatch {
                expected: self.ring.arity(),
                found: point.len(),
            });
        }
        let field = self.ring.field();
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                t = field.mul(&t, &field.pow(&field.normalize(x)?, e as u32));
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    pub fn parse(ring: &Arc<Ring>, s: &str) -> Result<Polynomial> {
        parse::parse_polynomial(ring, s)
    }
}

/// Merges like terms and drops zeros; the result is the canonical form.
pub fn canonicalize(p: &Polynomial) -> Polynomial {
    Polynomial::from_terms(p.ring(), p.terms().iter().cloned()).expect("polynomial is well-formed")
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;

            /// Panics when the operands live in different rings.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }

        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, multiply);

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        let field = self.ring.field();
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect();
        Polynomial::from_canonical(&self.ring, terms)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &Ring, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (v, &e) in ring.vars.iter().zip(m.exponents()) {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{v}")?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

pub(crate) fn write_scalar(f: &mut impl fmt::Write, c: &BigRational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let c = field.display_value(c);
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write_scalar(f, &a)?;
            } else {
                if !a.is_one() {
                    write_scalar(f, &a)?;
                    write!(f, "*")?;
                }
                write_monomial(f, &self.ring, m)?;
            }
        }
        Ok(())
    }
}
