//! Linear forms and spans of linear forms.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{same_ring, Monomial, Polynomial, Ring};
use crate::error::{Error, Result};

/// Homogeneous degree-one form `Σ a_i x_i` (no constant term).
#[derive(Clone, Debug)]
pub struct LinearForm {
    ring: Arc<Ring>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for LinearForm {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.coeffs == other.coeffs
    }
}

impl Eq for LinearForm {}

impl LinearForm {
    pub fn new(ring: &Arc<Ring>, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != ring.arity() {
            return Err(Error::ArityMismatch {
                expected: ring.arity(),
                found: coeffs.len(),
            });
        }
        let field = ring.field();
        let coeffs = coeffs
            .iter()
            .map(|c| field.normalize(c))
            .collect::<Result<_>>()?;
        Ok(LinearForm {
            ring: ring.clone(),
            coeffs,
        })
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        LinearForm {
            ring: ring.clone(),
            coeffs: vec![BigRational::zero(); ring.arity()],
        }
    }

    pub fn variable(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut f = Self::zero(ring);
        f.coeffs[i] = BigRational::one();
        Ok(f)
    }

    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        let mut f = Self::zero(p.ring());
        for (m, c) in p.terms() {
            if m.degree() != 1 {
                return Err(Error::NotLinear(p.to_string()));
            }
            let i = m.exponents().iter().position(|&e| e == 1).unwrap();
            f.coeffs[i] = c.clone();
        }
        Ok(f)
    }

    pub fn parse(ring: &Arc<Ring>, s: &str) -> Result<Self> {
        Self::from_polynomial(&Polynomial::parse(ring, s)?)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let n = self.ring.arity();
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::variable(n, i), c.clone()))
            .collect();
        Polynomial::from_distinct_terms(&self.ring, terms)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the variable when the form is exactly one ring variable.
    pub fn as_variable(&self) -> Option<usize> {
        let mut nz = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        match (nz.next(), nz.next()) {
            (Some((i, c)), None) if c.is_one() => Some(i),
            _ => None,
        }
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        let field = self.ring.field();
        LinearForm {
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &LinearForm) -> LinearForm {
        self.add(&other.scale(&self.ring.field().from_int(-1)))
    }

    pub fn scale(&self, c: &BigRational) -> LinearForm {
        let field = self.ring.field();
        let c = field.normalize(c).expect("scalar defined in field");
        LinearForm {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| field.mul(a, &c)).collect(),
        }
    }

    /// `Some(α)` with `other = α·self` when `self ≠ 0`.
    pub fn ratio_to(&self, other: &LinearForm) -> Option<BigRational> {
        let field = self.ring.field();
        let k = self.coeffs.iter().position(|c| !c.is_zero())?;
        let alpha = field.div(&other.coeffs[k], &self.coeffs[k]);
        (self.scale(&alpha) == *other).then_some(alpha)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

/// A linear subspace of the space of linear forms, held in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    ring: Arc<Ring>,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span<'a>(ring: &Arc<Ring>, forms: impl IntoIterator<Item = &'a LinearForm>) -> Subspace {
        let mut s = Subspace {
            ring: ring.clone(),
            rows: Vec::new(),
            pivots: Vec::new(),
        };
        for f in forms {
            s.insert(f);
        }
        s
    }

    /// Adds a form; returns false when it was already in the span.
    pub fn insert(&mut self, f: &LinearForm) -> bool {
        let field = self.ring.field().clone();
        let v = self.reduce_coeffs(f.coeffs());
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = field.inv(&v[p]);
        let v: Vec<BigRational> = v.iter().map(|c| field.mul(c, &inv)).collect();
        for row in &mut self.rows {
            let c = row[p].clone();
            if !c.is_zero() {
                for (r, x) in row.iter_mut().zip(&v) {
                    *r = field.sub(r, &field.mul(&c, x));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    fn reduce_coeffs(&self, v: &[BigRational]) -> Vec<BigRational> {
        let field = self.ring.field();
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if !c.is_zero() {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = field.sub(x, &field.mul(&c, r));
                }
            }
        }
        v
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, f: &LinearForm) -> bool {
        self.reduce_coeffs(f.coeffs()).iter().all(Zero::is_zero)
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|f| self.contains(f))
    }

    /// Component of `f` in the complement spanned by the non-pivot
    /// coordinates; `f - reduce(f)` lies in the span.
    pub fn reduce(&self, f: &LinearForm) -> LinearForm {
        LinearForm {
            ring: self.ring.clone(),
            coeffs: self.reduce_coeffs(f.coeffs()),
        }
    }

    /// The reduced row echelon basis.
    pub fn basis(&self) -> Vec<LinearForm> {
        self.rows
            .iter()
            .map(|r| LinearForm {
                ring: self.ring.clone(),
                coeffs: r.clone(),
            })
            .collect()
    }

    /// Coordinates not pivotal in the echelon form; they span a complement.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        (0..self.ring.arity()).filter(|i| !self.pivots.contains(i)).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for f in other.basis() {
            s.insert(&f);
        }
        s
    }

    /// True when every basis element is a single ring variable.
    pub fn is_coordinate(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.iter().filter(|c| !c.is_zero()).count() == 1)
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.rows == other.rows
    }
}

/// Rank of the coefficient matrix of `forms`.
pub fn linear_span_dim(forms: &[LinearForm]) -> usize {
    match forms.first() {
        None => 0,
        Some(f) => Subspace::span(f.ring(), forms).dim(),
    }
}
