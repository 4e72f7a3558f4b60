//! Linearly joined specifications: components `J_i = (M_i, Q_i)` with
//! `Q_i = D_i ⊕ P_i` and `D_i = Δ_{i+1} ⊕ … ⊕ Δ_l`.
//!
//! Component indices are 1-based throughout, matching the printed reports.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::IdealHandle;
use crate::poly::{linear_span_dim, same_ring, LinearForm, Polynomial, Ring, Subspace};
use crate::scroll::{classify_modulo, Case, ScrollMatrix};

/// One component: an optional scroll (absent means `M_i = 0`), `Δ_i` and `P_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentSpec {
    pub scroll: Option<ScrollMatrix>,
    pub delta: Vec<LinearForm>,
    pub p: Vec<LinearForm>,
    /// Explicit ordered basis for the reduced `P_i` used by the synthesizer.
    pub p_tilde: Option<Vec<LinearForm>>,
}

impl ComponentSpec {
    pub fn new(scroll: Option<ScrollMatrix>, delta: Vec<LinearForm>, p: Vec<LinearForm>) -> Self {
        ComponentSpec {
            scroll,
            delta,
            p,
            p_tilde: None,
        }
    }

    /// Parses forms against `ring`; `blocks` empty means no scroll.
    pub fn parse(ring: &Arc<Ring>, blocks: &[&[&str]], delta: &[&str], p: &[&str]) -> Result<Self> {
        let scroll = if blocks.is_empty() {
            None
        } else {
            Some(ScrollMatrix::parse(ring, blocks)?)
        };
        Ok(Self::new(scroll, parse_forms(ring, delta)?, parse_forms(ring, p)?))
    }

    pub fn minors(&self) -> Vec<Polynomial> {
        self.scroll.as_ref().map(ScrollMatrix::minors).unwrap_or_default()
    }
}

pub(crate) fn parse_forms(ring: &Arc<Ring>, forms: &[&str]) -> Result<Vec<LinearForm>> {
    forms.iter().map(|s| LinearForm::parse(ring, s)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwoLinearSpec {
    ring: Arc<Ring>,
    components: Vec<ComponentSpec>,
}

impl TwoLinearSpec {
    pub fn new(ring: &Arc<Ring>, components: Vec<ComponentSpec>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidArgument("a spec needs at least one component".into()));
        }
        for c in &components {
            let scroll_ring = c.scroll.iter().map(|s| s.ring());
            let forms = c
                .delta
                .iter()
                .chain(&c.p)
                .chain(c.p_tilde.iter().flatten())
                .map(|f| f.ring());
            if scroll_ring.chain(forms).any(|r| !same_ring(r, ring)) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(TwoLinearSpec {
            ring: ring.clone(),
            components,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn components(&self) -> &[ComponentSpec] {
        &self.components
    }

    pub fn l(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, i: usize) -> Result<&ComponentSpec> {
        self.components
            .get(i.wrapping_sub(1))
            .ok_or(Error::IndexOutOfRange {
                index: i,
                len: self.components.len(),
            })
    }

    /// Spanning forms of `D_i = Δ_{i+1} ⊕ … ⊕ Δ_l`.
    pub fn d_forms(&self, i: usize) -> Vec<LinearForm> {
        self.components
            .iter()
            .skip(i)
            .flat_map(|c| c.delta.iter().cloned())
            .collect()
    }

    /// Spanning forms of `Q_i = D_i ⊕ P_i`.
    pub fn q_forms(&self, i: usize) -> Result<Vec<LinearForm>> {
        let mut q = self.d_forms(i);
        q.extend(self.component(i)?.p.iter().cloned());
        Ok(q)
    }

    /// `J_i = (M_i, Q_i)`.
    pub fn component_ideal(&self, i: usize) -> Result<IdealHandle> {
        let c = self.component(i)?;
        let mut gens = c.minors();
        gens.extend(self.q_forms(i)?.iter().map(LinearForm::to_polynomial));
        IdealHandle::new(&self.ring, gens)
    }

    pub fn component_ideals(&self) -> Result<Vec<IdealHandle>> {
        (1..=self.l()).map(|i| self.component_ideal(i)).collect()
    }

    /// `J_1 ∩ … ∩ J_l`, folded left to right.
    pub fn intersection(&self) -> Result<IdealHandle> {
        IdealHandle::intersect_all(&self.component_ideals()?)
    }

    /// All scroll minors and all products `f·g` with `f ∈ Δ_j`, `g ∈ P_j`.
    pub fn product_generators(&self) -> Vec<Polynomial> {
        let mut gens: Vec<Polynomial> = self.components.iter().flat_map(ComponentSpec::minors).collect();
        for c in self.components.iter().skip(1) {
            for f in &c.delta {
                for g in &c.p {
                    gens.push(&f.to_polynomial() * &g.to_polynomial());
                }
            }
        }
        gens
    }

    /// The product presentation of `J`; refuses specs that fail validation.
    pub fn full_ideal(&self) -> Result<IdealHandle> {
        validate(self)?.require()?;
        IdealHandle::new(&self.ring, self.product_generators())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// 1-based component indices involved.
    pub indices: Vec<usize>,
    pub witness: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionVerdict {
    pub condition: &'static str,
    pub passed: bool,
    pub violations: Vec<Violation>,
}

/// Hypotheses of the arithmetical-rank theorems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AraHypotheses {
    /// Every scroll is absent or has exactly one block.
    pub single_block: bool,
    /// For `i ≥ 2`, a row of `B_i` lies in `Δ_i`.
    pub row_in_delta: bool,
    /// For `i < j`, a row of `B_i` lies in `P_j`.
    pub row_in_p: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub conditions: Vec<ConditionVerdict>,
    pub ara_hypotheses: AraHypotheses,
}

impl ValidationReport {
    pub fn condition(&self, name: &str) -> Option<&ConditionVerdict> {
        self.conditions.iter().find(|c| c.condition == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &ConditionVerdict> {
        self.conditions.iter().filter(|c| !c.passed)
    }

    /// `Err(Validation)` naming the failed conditions.
    pub fn require(&self) -> Result<()> {
        if self.passed {
            return Ok(());
        }
        let names: Vec<String> = self
            .failed()
            .map(|c| {
                let at: Vec<String> = c
                    .violations
                    .iter()
                    .map(|v| format!("{:?}", v.indices))
                    .collect();
                format!("({}) at {}", c.condition, at.join(", "))
            })
            .collect();
        Err(Error::Validation(format!("spec fails {}", names.join("; "))))
    }
}

struct Checker {
    verdicts: Vec<ConditionVerdict>,
}

impl Checker {
    fn check(&mut self, condition: &'static str, violations: Vec<Violation>) {
        self.verdicts.push(ConditionVerdict {
            condition,
            passed: violations.is_empty(),
            violations,
        });
    }
}

fn violation(indices: Vec<usize>, witness: impl ToString, detail: impl Into<String>) -> Violation {
    Violation {
        indices,
        witness: witness.to_string(),
        detail: detail.into(),
    }
}

fn rank(forms: &[LinearForm]) -> usize {
    linear_span_dim(forms)
}

fn contained_row(scroll: &ScrollMatrix, span: &Subspace) -> Option<usize> {
    [1, 2]
        .into_iter()
        .find(|&row| scroll.row(row).into_iter().all(|f| span.contains(f)))
}

/// Checks conditions (a)–(f) and the arithmetical-rank hypotheses. Failures
/// are reported, not thrown; errors signal only oracle-level problems.
pub fn validate(spec: &TwoLinearSpec) -> Result<ValidationReport> {
    let ring = spec.ring();
    let comps = spec.components();
    let l = spec.l();
    let mut ck = Checker { verdicts: Vec::new() };

    let first = &comps[0];
    ck.check(
        "P1=0",
        first
            .p
            .iter()
            .map(|f| violation(vec![1], f, "component 1 must have no P forms"))
            .take(1)
            .collect(),
    );
    ck.check(
        "Delta1=0",
        first
            .delta
            .iter()
            .map(|f| violation(vec![1], f, "component 1 must have no delta forms"))
            .take(1)
            .collect(),
    );

    let mut bad = Vec::new();
    for (k, c) in comps.iter().enumerate() {
        for (name, forms) in [("delta", &c.delta), ("p", &c.p)] {
            if rank(forms) != forms.len() {
                bad.push(violation(vec![k + 1], join(forms), format!("{name} forms are linearly dependent")));
            }
        }
    }
    ck.check("independent", bad);

    // (a): each scroll in standard form, its entries independent modulo Q_i.
    let mut bad = Vec::new();
    for (k, c) in comps.iter().enumerate() {
        let Some(s) = &c.scroll else { continue };
        let entries: Vec<LinearForm> = s.entries().cloned().collect();
        if !s.is_standard_form() {
            bad.push(violation(vec![k + 1], join(&entries), "scroll entries are linearly dependent"));
            continue;
        }
        let q = spec.q_forms(k + 1)?;
        let mut all = entries.clone();
        all.extend(q.iter().cloned());
        if rank(&all) != entries.len() + rank(&q) {
            bad.push(violation(vec![k + 1], join(&entries), "scroll entries are dependent modulo Q_i"));
        }
    }
    ck.check("a", bad);

    // (b): Q_i = D_i ⊕ P_i.
    let mut bad = Vec::new();
    for k in 1..=l {
        let d = spec.d_forms(k);
        let p = &comps[k - 1].p;
        let q = spec.q_forms(k)?;
        if rank(&q) != rank(&d) + rank(p) {
            bad.push(violation(vec![k], join(&q), "D_i and P_i intersect"));
        }
    }
    ck.check("b", bad);

    // (c): Δ_2, …, Δ_l independent, so every D_i is a direct sum.
    let mut bad = Vec::new();
    let mut acc: Vec<LinearForm> = Vec::new();
    let mut expected = 0;
    for (k, c) in comps.iter().enumerate().skip(1) {
        acc.extend(c.delta.iter().cloned());
        expected += rank(&c.delta);
        if rank(&acc) != expected {
            bad.push(violation(vec![k + 1], join(&c.delta), "delta meets the later deltas"));
            expected = rank(&acc);
        }
    }
    ck.check("c", bad);

    // (d): M_i ⊆ (Δ_i) for i ≥ 2.
    let mut bad = Vec::new();
    for (k, c) in comps.iter().enumerate().skip(1) {
        let Some(s) = &c.scroll else { continue };
        if let Case::NotContained { minor, .. } = classify_modulo(s, &c.delta)?.case {
            bad.push(violation(vec![k + 1], minor, "minor outside (delta_i)"));
        }
    }
    ck.check("d", bad);

    // (e): M_i ⊆ (P_j) for i < j.
    let mut bad = Vec::new();
    for (i, ci) in comps.iter().enumerate() {
        let Some(s) = &ci.scroll else { continue };
        for (j, cj) in comps.iter().enumerate().skip(i + 1) {
            if let Case::NotContained { minor, .. } = classify_modulo(s, &cj.p)?.case {
                bad.push(violation(vec![i + 1, j + 1], minor, "minor of B_i outside (P_j)"));
            }
        }
    }
    ck.check("e", bad);

    // (f): ∩_{j<k} (Q_j) ⊆ (P_k, D_{k-1}).
    let mut bad = Vec::new();
    let linear = |forms: &[LinearForm]| IdealHandle::new(ring, forms.iter().map(LinearForm::to_polynomial));
    let mut running = linear(&spec.q_forms(1)?)?;
    for k in 2..=l {
        let mut target = comps[k - 1].p.clone();
        target.extend(spec.d_forms(k - 1));
        let target = linear(&target)?;
        for g in running.generators() {
            if !target.contains(g)? {
                bad.push(violation(vec![k], g, "generator of the running intersection outside (P_k, D_{k-1})"));
                break;
            }
        }
        if k < l {
            running = running.intersect(&linear(&spec.q_forms(k)?)?)?;
        }
    }
    ck.check("f", bad);

    let passed = ck.verdicts.iter().all(|v| v.passed);
    Ok(ValidationReport {
        passed,
        conditions: ck.verdicts,
        ara_hypotheses: ara_hypotheses(spec),
    })
}

fn join(forms: &[LinearForm]) -> String {
    forms.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn ara_hypotheses(spec: &TwoLinearSpec) -> AraHypotheses {
    let comps = spec.components();
    let ring = spec.ring();
    let single_block = comps
        .iter()
        .all(|c| c.scroll.as_ref().map_or(true, |s| s.blocks().len() == 1));
    let row_in_delta = comps.iter().skip(1).all(|c| {
        c.scroll
            .as_ref()
            .map_or(true, |s| contained_row(s, &Subspace::span(ring, &c.delta)).is_some())
    });
    let row_in_p = comps.iter().enumerate().all(|(i, ci)| {
        ci.scroll.as_ref().map_or(true, |s| {
            comps[i + 1..]
                .iter()
                .all(|cj| contained_row(s, &Subspace::span(ring, &cj.p)).is_some())
        })
    });
    AraHypotheses {
        single_block,
        row_in_delta,
        row_in_p,
    }
}

/// `max_{i=2..l} dim(P_i + D_{i-1}) - 1`, without validating the spec.
pub fn projdim_formula(spec: &TwoLinearSpec) -> Result<usize> {
    if spec.l() < 2 {
        return Err(Error::InvalidArgument(
            "single component: use scroll facts (projdim r-1) instead".into(),
        ));
    }
    let mut best = 0;
    for i in 2..=spec.l() {
        let mut forms = spec.component(i)?.p.clone();
        forms.extend(spec.d_forms(i - 1));
        best = best.max(rank(&forms));
    }
    Ok(best.saturating_sub(1))
}

/// Projective dimension of `S/J` for a validated spec.
pub fn projdim(spec: &TwoLinearSpec) -> Result<usize> {
    if spec.l() < 2 {
        return projdim_formula(spec);
    }
    validate(spec)?.require()?;
    projdim_formula(spec)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomDim {
    pub cd: usize,
    pub note: &'static str,
}

/// `cd(J) = projdim(S/J)` when every `M_i` is a set-theoretic complete
/// intersection: absent, a single non-generic block, or principal.
pub fn cohom_dim(spec: &TwoLinearSpec) -> Result<CohomDim> {
    for (k, c) in spec.components().iter().enumerate() {
        let Some(s) = &c.scroll else { continue };
        let single = s.blocks().len() == 1 && !s.blocks()[0].is_generic();
        let principal = s.all_generic() && s.columns_count() <= 2;
        if !single && !principal {
            return Err(Error::Hypothesis(format!(
                "component {}: scroll is neither a single non-generic block nor principal",
                k + 1
            )));
        }
    }
    Ok(CohomDim {
        cd: projdim(spec)?,
        note: "by theorem, not computed from local cohomology",
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AraTerm {
    pub component: usize,
    pub ara: usize,
    pub c_bar: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AraBound {
    pub bound: usize,
    pub projdim: usize,
    pub terms: Vec<AraTerm>,
}

/// `projdim(S/J) + Σ (ara M_i - c̄_i)`.
pub fn ara_upper_bound(spec: &TwoLinearSpec) -> Result<AraBound> {
    let report = validate(spec)?;
    report.require()?;
    let h = report.ara_hypotheses;
    if !h.row_in_delta || !h.row_in_p {
        return Err(Error::Hypothesis(
            "the row hypotheses (a row of B_i in delta_i, a row of B_i in P_j) do not hold".into(),
        ));
    }
    let mut terms = Vec::new();
    for (k, c) in spec.components().iter().enumerate() {
        let (ara, c_bar) = match &c.scroll {
            None => (0, 0),
            Some(s) if s.all_generic() => {
                let r = s.columns_count();
                (if r >= 2 { 2 * r - 3 } else { 0 }, 0)
            }
            Some(s) if s.blocks().len() == 1 => (s.blocks()[0].c(), s.blocks()[0].c()),
            Some(_) => {
                return Err(Error::Hypothesis(format!(
                    "component {}: arithmetical rank of a mixed scroll is unknown",
                    k + 1
                )))
            }
        };
        terms.push(AraTerm {
            component: k + 1,
            ara,
            c_bar,
        });
    }
    let pd = projdim_formula(spec)?;
    let bound = terms.iter().fold(pd, |acc, t| acc + t.ara - t.c_bar);
    Ok(AraBound {
        bound,
        projdim: pd,
        terms,
    })
}
