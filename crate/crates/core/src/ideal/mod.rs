//! Ideal oracle: reduced Gröbner bases and the predicates built on them.
//!
//! Every higher-level claim in the crate is certified through an
//! [`IdealHandle`]: plain membership by normal forms, radical membership by the
//! Rabinowitsch device, intersections and saturations by elimination.

mod groebner;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use log::debug;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Coeffs, FieldSpec, Rationals, Zp};
use crate::poly::{same_ring, Monomial, Polynomial, Ring, TermOrder};
use groebner::{reduce_with, sort_poly, DPoly, Engine, Outcome};

/// Largest exponent tried when decorating a radical certificate.
pub const MAX_WITNESS_EXPONENT: u32 = 8;

fn to_engine<C: Coeffs>(c: &C, order: TermOrder, p: &Polynomial) -> DPoly<C::E> {
    let mut d: DPoly<C::E> = p.terms().iter().map(|(m, x)| (m.clone(), c.import(x))).collect();
    sort_poly(order, &mut d);
    d
}

fn from_engine<C: Coeffs>(c: &C, ring: &Arc<Ring>, p: DPoly<C::E>) -> Polynomial {
    let terms = p.into_iter().map(|(m, x)| (m, c.export(&x))).collect();
    Polynomial::from_distinct_terms(ring, terms)
}

fn basis_generic<C: Coeffs>(
    c: &C,
    ring: &Arc<Ring>,
    order: TermOrder,
    gens: &[Polynomial],
) -> Vec<Polynomial> {
    let input = gens.iter().map(|g| to_engine(c, order, g)).collect();
    match Engine::new(c, order).run(input) {
        Outcome::Unit => vec![Polynomial::one(ring)],
        Outcome::Basis(b) => b.into_iter().map(|p| from_engine(c, ring, p)).collect(),
    }
}

/// Reduced Gröbner basis of `gens` (all in `ring`) under `order`.
pub fn reduced_basis(ring: &Arc<Ring>, order: TermOrder, gens: &[Polynomial]) -> Vec<Polynomial> {
    match ring.field() {
        FieldSpec::Rationals => basis_generic(&Rationals, ring, order, gens),
        FieldSpec::Prime(p) => basis_generic(&Zp(*p), ring, order, gens),
    }
}

fn normal_form_generic<C: Coeffs>(
    c: &C,
    order: TermOrder,
    f: &Polynomial,
    basis: &[Polynomial],
) -> Polynomial {
    let basis: Vec<DPoly<C::E>> = basis.iter().map(|g| to_engine(c, order, g)).collect();
    let r = reduce_with(c, order, to_engine(c, order, f), |m| {
        basis.iter().find(|g| g[0].0.divides(m))
    });
    from_engine(c, f.ring(), r)
}

fn normal_form_by(order: TermOrder, f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    match f.ring().field() {
        FieldSpec::Rationals => normal_form_generic(&Rationals, order, f, basis),
        FieldSpec::Prime(p) => normal_form_generic(&Zp(*p), order, f, basis),
    }
}

/// Outcome of a radical-membership query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalCertificate {
    pub member: bool,
    /// Smallest `k ≤ MAX_WITNESS_EXPONENT` with `f^k ∈ I`, when one was found.
    pub witness_exponent: Option<u32>,
    /// The verdict came from `1 ∈ I + (1 - t·f)`.
    pub rabinowitsch: bool,
    /// Nonzero when computed over a prime field.
    pub characteristic: u64,
}

/// An ideal given by generators, with reduced Gröbner bases cached per order.
#[derive(Clone)]
pub struct IdealHandle {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    cache: Arc<RwLock<HashMap<TermOrder, Arc<Vec<Polynomial>>>>>,
}

impl fmt::Debug for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter().map(|g| g.to_string())).finish()
    }
}

impl fmt::Display for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl IdealHandle {
    /// Zero generators are dropped, exact duplicates collapsed.
    pub fn new(ring: &Arc<Ring>, gens: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut kept: Vec<Polynomial> = Vec::new();
        for g in gens {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if !g.is_zero() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ok(IdealHandle {
            ring: ring.clone(),
            gens: kept,
            cache: Arc::default(),
        })
    }

    pub fn parse(ring: &Arc<Ring>, gens: &[&str]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|s| Polynomial::parse(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self::new(ring, []).unwrap()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if same_ring(f.ring(), &self.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn check_ideal(&self, other: &IdealHandle) -> Result<()> {
        if same_ring(&other.ring, &self.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// The unique reduced Gröbner basis under `order` (monic, sorted by
    /// descending leading monomial). Computed once per order.
    pub fn groebner_basis(&self, order: TermOrder) -> Arc<Vec<Polynomial>> {
        if let Some(b) = self.cache.read().unwrap().get(&order) {
            return b.clone();
        }
        let basis = Arc::new(reduced_basis(&self.ring, order, &self.gens));
        self.cache
            .write()
            .unwrap()
            .entry(order)
            .or_insert(basis)
            .clone()
    }

    pub fn normal_form(&self, f: &Polynomial, order: TermOrder) -> Result<Polynomial> {
        self.check(f)?;
        Ok(normal_form_by(order, f, &self.groebner_basis(order)))
    }

    /// Exact ideal membership.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f, TermOrder::DegRevLex)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &IdealHandle) -> Result<bool> {
        self.check_ideal(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> bool {
        let b = self.groebner_basis(TermOrder::DegRevLex);
        b.len() == 1 && b[0].is_constant()
    }

    /// Ideal equality via reduced bases.
    pub fn same_ideal(&self, other: &IdealHandle) -> Result<bool> {
        self.check_ideal(other)?;
        Ok(self.groebner_basis(TermOrder::DegRevLex) == other.groebner_basis(TermOrder::DegRevLex))
    }

    /// Ring with one fresh leading variable, plus the generators embedded there.
    fn with_fresh_variable(&self) -> Result<(Arc<Ring>, Polynomial, Vec<Polynomial>)> {
        let t = self.ring.fresh_name("t");
        let ext = self.ring.extend_front(&[t.clone()])?;
        let tv = Polynomial::var(&ext, &t)?;
        let gens = self
            .gens
            .iter()
            .map(|g| g.embed(&ext))
            .collect::<Result<Vec<_>>>()?;
        Ok((ext, tv, gens))
    }

    /// `f ∈ rad(I)` by the Rabinowitsch device only.
    fn rabinowitsch(&self, f: &Polynomial) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        let (ext, t, mut gens) = self.with_fresh_variable()?;
        let one = Polynomial::one(&ext);
        gens.push(&one - &(&t * &f.embed(&ext)?));
        let basis = reduced_basis(&ext, TermOrder::DegRevLex, &gens);
        Ok(basis.len() == 1 && basis[0].is_constant())
    }

    /// `f ∈ rad(I)`: plain membership first, then Rabinowitsch.
    pub fn in_radical(&self, f: &Polynomial) -> Result<bool> {
        self.check(f)?;
        if self.contains(f)? {
            return Ok(true);
        }
        self.rabinowitsch(f)
    }

    /// Radical membership with a power witness when a small one exists.
    pub fn radical_member(&self, f: &Polynomial) -> Result<RadicalCertificate> {
        self.check(f)?;
        let member = self.rabinowitsch(f)?;
        let mut witness = None;
        if member {
            let order = TermOrder::DegRevLex;
            let basis = self.groebner_basis(order);
            let mut power = Polynomial::one(&self.ring);
            for k in 1..=MAX_WITNESS_EXPONENT {
                power = normal_form_by(order, &(&power * f), &basis);
                if power.is_zero() {
                    witness = Some(k);
                    break;
                }
            }
            debug!("radical witness search for {f}: {witness:?}");
        }
        Ok(RadicalCertificate {
            member,
            witness_exponent: witness,
            rabinowitsch: true,
            characteristic: self.ring.field().characteristic(),
        })
    }

    /// `rad(other) ⊆ rad(self)`, i.e. every generator of `other` is in `rad(self)`.
    pub fn radical_contains(&self, other: &IdealHandle) -> Result<bool> {
        self.check_ideal(other)?;
        for g in &other.gens {
            if !self.in_radical(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn radical_equal(&self, other: &IdealHandle) -> Result<bool> {
        Ok(self.radical_contains(other)? && other.radical_contains(self)?)
    }

    /// `I ∩ K[remaining variables]`, returned in the original ring.
    pub fn eliminate(&self, vars: &[&str]) -> Result<IdealHandle> {
        let mut front: Vec<String> = Vec::new();
        for v in vars {
            if self.ring.index_of(v).is_none() {
                return Err(Error::UnknownVariable(v.to_string()));
            }
            if !front.iter().any(|f| f == v) {
                front.push(v.to_string());
            }
        }
        let rest: Vec<String> = self
            .ring
            .vars()
            .iter()
            .filter(|v| !front.contains(v))
            .cloned()
            .collect();
        let permuted = Ring::new(
            front.iter().chain(rest.iter()).cloned(),
            self.ring.field().clone(),
        )?;
        let gens = self
            .gens
            .iter()
            .map(|g| g.embed(&permuted))
            .collect::<Result<Vec<_>>>()?;
        let kept = eliminate_leading(&permuted, front.len(), &gens);
        let kept = kept
            .iter()
            .map(|g| g.embed(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        IdealHandle::new(&self.ring, kept)
    }

    /// `I ∩ J` by eliminating `t` from `t·I + (1 - t)·J`.
    pub fn intersect(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_ideal(other)?;
        let (ext, t, mine) = self.with_fresh_variable()?;
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let mut gens: Vec<Polynomial> = mine.iter().map(|g| &t * g).collect();
        for g in &other.gens {
            gens.push(&one_minus_t * &g.embed(&ext)?);
        }
        let kept = eliminate_leading(&ext, 1, &gens);
        let kept = kept
            .iter()
            .map(|g| g.embed(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        IdealHandle::new(&self.ring, kept)
    }

    /// Left-to-right fold of pairwise intersections.
    pub fn intersect_all(ideals: &[IdealHandle]) -> Result<IdealHandle> {
        let (first, rest) = ideals
            .split_first()
            .ok_or_else(|| Error::InvalidArgument("intersection of no ideals".into()))?;
        rest.iter().try_fold(first.clone(), |acc, j| acc.intersect(j))
    }

    /// `I : f^∞` by eliminating `t` from `I + (1 - t·f)`.
    pub fn saturate(&self, f: &Polynomial) -> Result<IdealHandle> {
        self.check(f)?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (ext, t, mut gens) = self.with_fresh_variable()?;
        gens.push(&Polynomial::one(&ext) - &(&t * &f.embed(&ext)?));
        let kept = eliminate_leading(&ext, 1, &gens);
        let kept = kept
            .iter()
            .map(|g| g.embed(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        IdealHandle::new(&self.ring, kept)
    }
}

/// Basis elements free of the first `k` variables, expressed in the ring of
/// the remaining variables.
fn eliminate_leading(ring: &Arc<Ring>, k: usize, gens: &[Polynomial]) -> Vec<Polynomial> {
    let basis = reduced_basis(ring, TermOrder::Block(k), gens);
    let sub = Ring::new(ring.vars()[k..].iter().cloned(), ring.field().clone())
        .expect("sub-ring of a valid ring");
    basis
        .into_iter()
        .filter(|g| {
            g.terms()
                .iter()
                .all(|(m, _)| m.exponents()[..k].iter().all(|e| e.is_zero()))
        })
        .map(|g| {
            let terms = g
                .terms()
                .iter()
                .map(|(m, c)| (Monomial::from_exponents(m.exponents()[k..].iter().copied()), c.clone()))
                .collect();
            Polynomial::from_distinct_terms(&sub, terms)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str]) -> Arc<Ring> {
        Ring::rationals(vars)
    }

    fn ideal(r: &Arc<Ring>, g: &[&str]) -> IdealHandle {
        IdealHandle::parse(r, g).unwrap()
    }

    fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    fn strings(b: &[Polynomial]) -> Vec<String> {
        b.iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn linear_basis() {
        let r = ring(&["x", "y"]);
        let b = ideal(&r, &["x - y", "x + y"]).groebner_basis(TermOrder::DegRevLex);
        assert_eq!(strings(&b), ["x", "y"]);
    }

    #[test]
    fn twisted_cubic_graph_lex() {
        let r = ring(&["z", "y", "x"]);
        let b = ideal(&r, &["y - x^2", "z - x^3"]).groebner_basis(TermOrder::Lex);
        let expect = [p(&r, "z - x^3"), p(&r, "y - x^2")];
        assert_eq!(b.len(), 2);
        for e in &expect {
            assert!(b.contains(e), "{e} missing from {b:?}");
        }
    }

    #[test]
    fn monomial_ideal_already_reduced() {
        let r = ring(&["x", "y"]);
        let b = ideal(&r, &["x^2", "x*y", "y^2"]).groebner_basis(TermOrder::DegRevLex);
        assert_eq!(strings(&b), ["x^2", "x*y", "y^2"]);
    }

    #[test]
    fn empty_ideal_has_empty_basis() {
        let r = ring(&["x"]);
        assert!(IdealHandle::zero(&r).groebner_basis(TermOrder::Lex).is_empty());
    }

    #[test]
    fn normal_forms() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["x"]);
        assert!(i.normal_form(&p(&r, "x^2"), TermOrder::DegRevLex).unwrap().is_zero());
        assert_eq!(i.normal_form(&p(&r, "x^2 + y"), TermOrder::DegRevLex).unwrap(), p(&r, "y"));
        let r4 = ring(&["a", "b", "c", "d"]);
        let m = ideal(&r4, &["a*d - b*c"]);
        assert!(m.contains(&p(&r4, "a*d - b*c")).unwrap());
    }

    #[test]
    fn membership() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["x"]);
        assert!(i.contains(&p(&r, "x^2*y")).unwrap());
        assert!(!i.contains(&p(&r, "y")).unwrap());
    }

    #[test]
    fn radical_membership_examples() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["x^2"]);
        let c = i.radical_member(&p(&r, "x")).unwrap();
        assert!(c.member);
        assert_eq!(c.witness_exponent, Some(2));
        assert!(!i.radical_member(&p(&r, "y")).unwrap().member);

        let r = ring(&["x0", "x1", "x2", "g"]);
        let i = ideal(&r, &["x0*x2 - x1^2", "x0*g"]);
        let c = i.radical_member(&p(&r, "x1*g")).unwrap();
        assert!(c.member);
        assert_eq!(c.witness_exponent, Some(2));
    }

    #[test]
    fn intersections() {
        let r = ring(&["x", "y", "z"]);
        let i = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])).unwrap();
        assert!(i.same_ideal(&ideal(&r, &["x*y"])).unwrap());
        let i = ideal(&r, &["x", "y"]).intersect(&ideal(&r, &["z"])).unwrap();
        assert!(i.same_ideal(&ideal(&r, &["x*z", "y*z"])).unwrap());
    }

    #[test]
    fn eliminations() {
        let r = ring(&["t", "x", "y"]);
        let e = ideal(&r, &["t*x", "y - t*y"]).eliminate(&["t"]).unwrap();
        assert!(e.same_ideal(&ideal(&r, &["x*y"])).unwrap());

        let r = ring(&["x", "y"]);
        let e = ideal(&r, &["y - x^2"]).eliminate(&["y"]).unwrap();
        assert!(e.generators().is_empty());

        // (t*x - 1, x^2) is the unit ideal: t^2 x^2 + (1 + t x)(1 - t x) = 1
        let r = ring(&["t", "x"]);
        let i = ideal(&r, &["t*x - 1", "x^2"]);
        assert!(i.is_unit());
        let e = i.eliminate(&["t"]).unwrap();
        assert!(e.is_unit());

        assert!(matches!(i.eliminate(&["w"]), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn saturations() {
        let r = ring(&["x", "y", "z"]);
        let s = ideal(&r, &["x^2*y"]).saturate(&p(&r, "x")).unwrap();
        assert!(s.same_ideal(&ideal(&r, &["y"])).unwrap());
        let s = ideal(&r, &["x*y"]).saturate(&p(&r, "z")).unwrap();
        assert!(s.same_ideal(&ideal(&r, &["x*y"])).unwrap());
        assert!(matches!(
            ideal(&r, &["x"]).saturate(&p(&r, "0")),
            Err(Error::ZeroPolynomial)
        ));

        let r = ring(&["x1", "x2"]);
        let s = ideal(&r, &["x1^2 - x2^2"]).saturate(&p(&r, "x1*x2")).unwrap();
        assert!(s.same_ideal(&ideal(&r, &["x1^2 - x2^2"])).unwrap());
    }

    #[test]
    fn radical_equality() {
        let r = ring(&["x", "y"]);
        assert!(ideal(&r, &["x^2"]).radical_equal(&ideal(&r, &["x"])).unwrap());
        assert!(!ideal(&r, &["x"]).radical_equal(&ideal(&r, &["y"])).unwrap());
    }

    #[test]
    fn ring_mismatch() {
        let a = ring(&["x"]);
        let b = ring(&["y"]);
        let i = ideal(&a, &["x"]);
        assert!(matches!(i.contains(&p(&b, "y")), Err(Error::RingMismatch)));
        assert!(matches!(i.intersect(&ideal(&b, &["y"])), Err(Error::RingMismatch)));
    }

    #[test]
    fn prime_field_basis() {
        let r = Ring::new(["x", "y"], FieldSpec::prime(7).unwrap()).unwrap();
        let i = ideal(&r, &["2*x - y", "x + 3*y"]);
        // determinant 2*3 + 1 = 7 ≡ 0: the forms are proportional mod 7
        let b = i.groebner_basis(TermOrder::DegRevLex);
        assert_eq!(b.len(), 1);
        let c = i.radical_member(&p(&r, "x - 4*y")).unwrap();
        assert_eq!(c.characteristic, 7);
    }
}
