//! Lattice ideals `I_L = (x^{v+} - x^{v-} : v ∈ L)` and the fiber-cone shape check.

use std::sync::Arc;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ideal::IdealHandle;
use crate::linjoin::TwoLinearSpec;
use crate::poly::{Monomial, Polynomial, Ring, Subspace};

/// Bound on the coefficients of the combinations screened and checked.
pub const COMBINATION_BOUND: i64 = 2;

/// `x^{v+} - x^{v-}`.
pub fn binomial(ring: &Arc<Ring>, v: &[i64]) -> Result<Polynomial> {
    if v.len() != ring.arity() {
        return Err(Error::ArityMismatch {
            expected: ring.arity(),
            found: v.len(),
        });
    }
    if v.iter().all(|&x| x == 0) {
        return Err(Error::ZeroVector);
    }
    let exps = |sign: i64| -> Result<Monomial> {
        let e = v
            .iter()
            .map(|&x| {
                let x = if x * sign > 0 { (x * sign) as u64 } else { 0 };
                u16::try_from(x).map_err(|_| Error::InvalidArgument(format!("exponent {x} too large")))
            })
            .collect::<Result<Vec<u16>>>()?;
        Ok(Monomial::from_exponents(e))
    };
    let one = BigRational::one();
    Polynomial::from_terms(ring, vec![(exps(1)?, one.clone()), (exps(-1)?, -one)])
}

/// Integer basis of a lattice `L ⊂ ℤ^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    vectors: Vec<Vec<i64>>,
}

impl LatticeBasis {
    pub fn new(vectors: Vec<Vec<i64>>) -> Result<Self> {
        let r = vectors
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidBasis("empty lattice basis".into()))?;
        for v in &vectors {
            if v.len() != r {
                return Err(Error::InvalidBasis(format!("vector lengths differ: {} vs {r}", v.len())));
            }
            if v.iter().all(|&x| x == 0) {
                return Err(Error::InvalidBasis("zero vector in basis".into()));
            }
        }
        Ok(LatticeBasis { vectors })
    }

    /// Rows separated by `;`, entries by `,`: `"1,-2,1,0;0,1,-2,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let vectors = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<i64>()
                            .map_err(|e| Error::InvalidBasis(format!("{x:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vectors)
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    pub fn rank_space(&self) -> usize {
        self.vectors[0].len()
    }

    /// Nonzero combinations `Σ a_i v_i` with `|a_i| ≤ COMBINATION_BOUND`.
    pub fn small_combinations(&self) -> Vec<Vec<i64>> {
        let r = self.rank_space();
        let range = -COMBINATION_BOUND..=COMBINATION_BOUND;
        let mut out: Vec<Vec<i64>> = std::iter::repeat(range)
            .take(self.vectors.len())
            .multi_cartesian_product()
            .map(|coeffs| {
                let mut w = vec![0i64; r];
                for (a, v) in coeffs.iter().zip(&self.vectors) {
                    for (wi, vi) in w.iter_mut().zip(v) {
                        *wi += a * vi;
                    }
                }
                w
            })
            .filter(|w| w.iter().any(|&x| x != 0))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Heuristic screen for nonnegative lattice vectors among the basis and
    /// its small combinations; each hit is a warning, not a proof.
    pub fn nonnegative_screen(&self) -> Vec<Vec<i64>> {
        self.small_combinations()
            .into_iter()
            .filter(|w| w.iter().all(|&x| x >= 0))
            .collect()
    }
}

/// Default ring `K[x1, ..., xr]`.
pub fn default_ring(r: usize) -> Arc<Ring> {
    Ring::new((1..=r).map(|i| format!("x{i}")), Default::default()).expect("valid names")
}

/// `(f_v : v ∈ basis) : (x_1 ⋯ x_r)^∞`, checked to contain `f_w` for every
/// small combination `w`.
pub fn lattice_ideal(ring: &Arc<Ring>, basis: &LatticeBasis) -> Result<IdealHandle> {
    let gens = basis
        .vectors()
        .iter()
        .map(|v| binomial(ring, v))
        .collect::<Result<Vec<_>>>()?;
    let product = (0..ring.arity()).fold(Polynomial::one(ring), |acc, i| &acc * &Polynomial::var_at(ring, i));
    let ideal = IdealHandle::new(ring, gens)?.saturate(&product)?;
    for w in basis.small_combinations() {
        let f = binomial(ring, &w)?;
        if !ideal.contains(&f)? {
            return Err(Error::Validation(format!("lattice binomial {f} missing from the saturation")));
        }
    }
    Ok(ideal)
}

/// True iff every scroll has exactly one block with distinct variable
/// entries and every `Q_i` is spanned by ring variables.
pub fn fiber_spec_check(spec: &TwoLinearSpec) -> bool {
    for (k, c) in spec.components().iter().enumerate() {
        if let Some(s) = &c.scroll {
            if s.blocks().len() != 1 {
                return false;
            }
            let vars: Vec<Option<usize>> = s.entries().map(|e| e.as_variable()).collect();
            if vars.iter().any(Option::is_none) || !vars.iter().all_unique() {
                return false;
            }
        }
        let Ok(q) = spec.q_forms(k + 1) else { return false };
        if !Subspace::span(spec.ring(), &q).is_coordinate() {
            return false;
        }
    }
    true
}
