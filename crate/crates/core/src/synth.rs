//! Up-to-radical generator synthesis for linearly joined specs whose scrolls
//! have at most one block: Verdi generators per block plus anti-diagonal row
//! sums of the reduced products `Δ̃_j × P̃_j`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ideal::IdealHandle;
use crate::linjoin::{projdim_formula, validate, TwoLinearSpec};
use crate::poly::{linear_span_dim, same_ring, LinearForm, Polynomial, Subspace};
use crate::scroll::ScrollBlock;

/// Reduced spaces of one component `j` (1-based).
#[derive(Clone, Debug, PartialEq)]
pub struct TildeComponent {
    pub index: usize,
    /// Ordered basis of `Δ̃_j`; empty for `j = 1`.
    pub delta: Vec<LinearForm>,
    /// Ordered basis of `P̃_j`; empty for `j = 1`.
    pub p: Vec<LinearForm>,
    /// Inner entries of `B_j`.
    pub inner: Vec<LinearForm>,
    /// Corner of `B_j` kept in `Δ̃_j`.
    pub delta_corner: Option<LinearForm>,
    /// Corners of earlier blocks kept in `P̃_j`, keyed by component.
    pub p_corners: Vec<(usize, LinearForm)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TildeData {
    pub components: Vec<TildeComponent>,
}

impl TildeData {
    /// `dim D̃_i = Σ_{k>i} dim Δ̃_k`.
    pub fn d_tilde_dim(&self, i: usize) -> usize {
        self.components.iter().skip(i).map(|c| c.delta.len()).sum()
    }

    /// `max_j (dim D̃_{j-1} + dim P̃_j) - 1`.
    pub fn ara_k(&self) -> usize {
        (2..=self.components.len())
            .map(|j| self.d_tilde_dim(j - 1) + self.components[j - 1].p.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn to_json(&self) -> Value {
        let forms = |v: &[LinearForm]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        Value::Array(
            self.components
                .iter()
                .map(|c| {
                    json!({
                        "component": c.index,
                        "delta_tilde": forms(&c.delta),
                        "p_tilde": forms(&c.p),
                        "inner": forms(&c.inner),
                        "delta_corner": c.delta_corner.as_ref().map(ToString::to_string),
                        "p_corners": c.p_corners.iter().map(|(k, f)| json!({"component": k, "corner": f.to_string()})).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

/// The single non-generic block of component `i`, if any. A lone generic
/// column has no minors and behaves like an absent scroll.
fn block_of(spec: &TwoLinearSpec, i: usize) -> Option<&ScrollBlock> {
    let s = spec.components()[i - 1].scroll.as_ref()?;
    s.blocks().first().filter(|b| !b.is_generic())
}

/// Row of `b` inside `span`, preferring the top row.
fn contained_row(b: &ScrollBlock, span: &Subspace) -> Option<usize> {
    [1, 2]
        .into_iter()
        .find(|&r| b.row(r).iter().all(|f| span.contains(f)))
}

/// Picks an ordered complement of `removed` inside `span(list)` containing
/// every form of `required`. Spec-list elements outside `span(removed)` are
/// tried first as they stand; otherwise the required forms are hoisted to
/// the front and the list is filled in greedily.
fn complement(list: &[LinearForm], removed: &[LinearForm], required: &[LinearForm], what: &str) -> Result<Vec<LinearForm>> {
    let ring = match list.first() {
        Some(f) => f.ring().clone(),
        None if removed.is_empty() && required.is_empty() => return Ok(Vec::new()),
        None => return Err(Error::Hypothesis(format!("{what} is empty but must contain corner or inner entries"))),
    };
    let whole = Subspace::span(&ring, list);
    if let Some(f) = removed.iter().chain(required).find(|f| !whole.contains(f)) {
        return Err(Error::Hypothesis(format!("{f} is not in {what}")));
    }
    let removed_span = Subspace::span(&ring, removed);
    let target = whole.dim() - removed_span.dim();

    let literal: Vec<LinearForm> = list.iter().filter(|f| !removed_span.contains(f)).cloned().collect();
    let literal_span = Subspace::span(&ring, &literal);
    if literal.len() == target
        && literal_span.dim() == target
        && literal_span.sum(&removed_span).dim() == whole.dim()
        && required.iter().all(|f| literal_span.contains(f))
    {
        return Ok(literal);
    }

    let mut acc = removed_span;
    let mut out = Vec::new();
    for f in required.iter().chain(list) {
        if acc.insert(f) {
            out.push(f.clone());
        }
    }
    debug_assert_eq!(out.len(), target);
    Ok(out)
}

fn check_override(
    given: &[LinearForm],
    list: &[LinearForm],
    removed: &[LinearForm],
    required: &[LinearForm],
    j: usize,
) -> Result<Vec<LinearForm>> {
    let Some(ring) = list.first().map(|f| f.ring().clone()) else {
        return if given.is_empty() {
            Ok(Vec::new())
        } else {
            Err(Error::InvalidBasis(format!("p_tilde of component {j} exceeds an empty P")))
        };
    };
    let whole = Subspace::span(&ring, list);
    let mut acc = Subspace::span(&ring, removed);
    for f in given {
        if !whole.contains(f) || !acc.insert(f) {
            return Err(Error::InvalidBasis(format!(
                "p_tilde of component {j}: {f} is outside P or dependent on the earlier forms and inner entries"
            )));
        }
    }
    let given_span = Subspace::span(&ring, given);
    if acc.dim() != whole.dim() {
        return Err(Error::InvalidBasis(format!("p_tilde of component {j} does not complete the inner entries to P")));
    }
    if let Some(f) = required.iter().find(|f| !given_span.contains(f)) {
        return Err(Error::InvalidBasis(format!("p_tilde of component {j} misses the corner {f}")));
    }
    Ok(given.to_vec())
}

/// Splits `Δ_j = Δ̃_j ⊕ L̃_j` and `P_j = P̃_j ⊕ L̃_1 ⊕ … ⊕ L̃_{j-1}`, keeping
/// a corner of every block in the reduced spaces that contain its row.
pub fn tilde_decompose(spec: &TwoLinearSpec) -> Result<TildeData> {
    let report = validate(spec)?;
    report.require()?;
    let h = report.ara_hypotheses;
    if !h.single_block {
        return Err(Error::Hypothesis(
            "a scroll has more than one block; use verify with a hand-supplied list and arabound".into(),
        ));
    }
    if !h.row_in_delta || !h.row_in_p {
        return Err(Error::Hypothesis(
            "a row of B_i must lie in delta_i and a row of B_i in every later P_j".into(),
        ));
    }
    let ring = spec.ring();
    let l = spec.l();
    let mut out = Vec::with_capacity(l);
    for j in 1..=l {
        let comp = &spec.components()[j - 1];
        let block = block_of(spec, j);
        let inner: Vec<LinearForm> = block.map(|b| b.inner().to_vec()).unwrap_or_default();
        if j == 1 {
            out.push(TildeComponent {
                index: 1,
                delta: Vec::new(),
                p: Vec::new(),
                inner,
                delta_corner: None,
                p_corners: Vec::new(),
            });
            continue;
        }
        let delta_corner = match block {
            Some(b) => {
                let row = contained_row(b, &Subspace::span(ring, &comp.delta)).ok_or_else(|| {
                    Error::Hypothesis(format!("no row of B_{j} lies in delta_{j}"))
                })?;
                Some(b.corner(row).clone())
            }
            None => None,
        };
        let delta = complement(&comp.delta, &inner, delta_corner.as_slice(), &format!("delta_{j}"))?;

        let p_span = Subspace::span(ring, &comp.p);
        let mut removed = Vec::new();
        let mut p_corners = Vec::new();
        for i in 1..j {
            if let Some(b) = block_of(spec, i) {
                let row = contained_row(b, &p_span)
                    .ok_or_else(|| Error::Hypothesis(format!("no row of B_{i} lies in P_{j}")))?;
                removed.extend(b.inner().iter().cloned());
                p_corners.push((i, b.corner(row).clone()));
            }
        }
        let required: Vec<LinearForm> = p_corners.iter().map(|(_, f)| f.clone()).collect();
        let p = match &comp.p_tilde {
            Some(given) => check_override(given, &comp.p, &removed, &required, j)?,
            None => complement(&comp.p, &removed, &required, &format!("P_{j}"))?,
        };
        out.push(TildeComponent {
            index: j,
            delta,
            p,
            inner,
            delta_corner,
            p_corners,
        });
    }
    let mut data = TildeData { components: out };
    if !row_condition(&data) {
        reorder_p_tilde(spec, &mut data)?;
    }
    check_tilde(spec, &data)?;
    Ok(data)
}

/// Reorders every `P̃_j` without an explicit `p_tilde` so that it starts with
/// `Δ̃_{j-1}, Δ̃_{j-2}, …` for as long as those lie in `P_j`, followed by the
/// first `P̃_k` contained in `P_j`. Under the prime dichotomy (`Δ_k ⊆ P_j` or
/// `P_k ⊆ P_j`) this makes the row condition hold.
fn reorder_p_tilde(spec: &TwoLinearSpec, t: &mut TildeData) -> Result<()> {
    let ring = spec.ring();
    for j in 2..=spec.l() {
        let comp = &spec.components()[j - 1];
        if comp.p_tilde.is_some() {
            continue;
        }
        let p_span = Subspace::span(ring, &comp.p);
        let mut preferred: Vec<LinearForm> = Vec::new();
        for k in (2..j).rev() {
            let tk = &t.components[k - 1];
            if tk.delta.iter().all(|f| p_span.contains(f)) {
                preferred.extend(tk.delta.iter().cloned());
            } else {
                if tk.p.iter().all(|f| p_span.contains(f)) {
                    preferred.extend(tk.p.iter().cloned());
                }
                break;
            }
        }
        let removed: Vec<LinearForm> = (1..j)
            .filter_map(|i| block_of(spec, i))
            .flat_map(|b| b.inner().iter().cloned())
            .collect();
        let tj = &t.components[j - 1];
        let required: Vec<LinearForm> = tj.p_corners.iter().map(|(_, f)| f.clone()).collect();
        let mut acc = Subspace::span(ring, &removed);
        let mut out = Vec::new();
        for f in preferred.iter().chain(&required).chain(&tj.p) {
            if acc.insert(f) {
                out.push(f.clone());
            }
        }
        let out_span = Subspace::span(ring, &out);
        if out.len() != tj.p.len() || required.iter().any(|f| !out_span.contains(f)) {
            return Err(Error::Hypothesis(format!("cannot reorder the reduced basis of P_{j}")));
        }
        t.components[j - 1].p = out;
    }
    Ok(())
}

/// Every product of two distinct terms of a row is divisible by a single
/// term of an earlier row, and the first row has one term. Under this
/// condition the row sums generate the products up to radical.
pub fn row_condition(t: &TildeData) -> bool {
    let rows = tableau_rows(t);
    if rows.first().is_some_and(|r| r.products.len() > 1) {
        return false;
    }
    let mut earlier: Vec<&(LinearForm, LinearForm)> = Vec::new();
    for row in &rows {
        for (a, x) in row.products.iter().enumerate() {
            for y in &row.products[a + 1..] {
                let factors = [&x.0, &x.1, &y.0, &y.1];
                if !earlier.iter().any(|e| divides(e, &factors)) {
                    return false;
                }
            }
        }
        earlier.extend(row.products.iter());
    }
    true
}

/// `p·q` divides the product of `factors`, all linear forms.
fn divides(term: &(LinearForm, LinearForm), factors: &[&LinearForm; 4]) -> bool {
    let proportional = |a: &LinearForm, b: &LinearForm| a.ratio_to(b).is_some();
    (0..4).any(|i| {
        proportional(&term.0, factors[i])
            && (0..4).any(|k| k != i && proportional(&term.1, factors[k]))
    })
}

/// Rank identities `dim P̃_j = dim P_j - Σ_{i<j} c_i`, `dim Δ̃_j = dim Δ_j - c_j`.
fn check_tilde(spec: &TwoLinearSpec, t: &TildeData) -> Result<()> {
    let mut c_before = 0;
    for (k, tc) in t.components.iter().enumerate() {
        let comp = &spec.components()[k];
        let c = tc.inner.len();
        if k > 0 {
            let ok = linear_span_dim(&tc.p) == tc.p.len()
                && tc.p.len() + c_before == linear_span_dim(&comp.p)
                && linear_span_dim(&tc.delta) == tc.delta.len()
                && tc.delta.len() + c == linear_span_dim(&comp.delta);
            if !ok {
                return Err(Error::Hypothesis(format!("rank identities fail for component {}", k + 1)));
            }
        }
        c_before += c;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableauRow {
    /// 1-based anti-diagonal index.
    pub index: usize,
    pub products: Vec<(LinearForm, LinearForm)>,
    pub sum: Polynomial,
}

/// Row `t` sums the products `f·g`, `f ∈ Δ̃_j`, `g ∈ P̃_j`, with
/// `globalindex(f) + index_j(g) - 1 = t`. The global basis of `D̃_1` lists
/// `Δ̃_l` first and `Δ̃_2` last. Empty rows are dropped.
pub fn tableau_rows(t: &TildeData) -> Vec<TableauRow> {
    let mut offset = vec![0; t.components.len() + 1];
    let mut acc = 0;
    for j in (2..=t.components.len()).rev() {
        offset[j] = acc;
        acc += t.components[j - 1].delta.len();
    }
    let mut rows: Vec<Vec<(LinearForm, LinearForm)>> = Vec::new();
    for j in 2..=t.components.len() {
        let c = &t.components[j - 1];
        for (a, f) in c.delta.iter().enumerate() {
            for (b, g) in c.p.iter().enumerate() {
                let row = offset[j] + a + 1 + b;
                if rows.len() < row {
                    rows.resize(row, Vec::new());
                }
                rows[row - 1].push((f.clone(), g.clone()));
            }
        }
    }
    rows.into_iter()
        .enumerate()
        .filter(|(_, r)| !r.is_empty())
        .map(|(k, products)| {
            let ring = products[0].0.ring().clone();
            let sum = products.iter().fold(Polynomial::zero(&ring), |acc, (f, g)| {
                &acc + &(&f.to_polynomial() * &g.to_polynomial())
            });
            TableauRow {
                index: k + 1,
                products,
                sum,
            }
        })
        .collect()
}

pub fn tableau_generators(t: &TildeData) -> Vec<Polynomial> {
    tableau_rows(t).into_iter().map(|r| r.sum).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Verdi { component: usize, j: usize },
    TableauRow { row: usize },
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Verdi { component, j } => write!(f, "verdi(block {component}, {j})"),
            Provenance::TableauRow { row } => write!(f, "tableau_row({row})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SynthesisCertificate {
    pub generators: Vec<Polynomial>,
    pub provenance: Vec<Provenance>,
    pub projdim: usize,
    /// `None` when the oracle was not run.
    pub verified: Option<bool>,
    /// Nonzero when the verdict was computed over a prime field.
    pub characteristic: u64,
}

impl SynthesisCertificate {
    pub fn count(&self) -> usize {
        self.generators.len()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "generators": self.generators.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "count": self.count(),
            "projdim": self.projdim,
            "verified": self.verified,
            "provenance": self.provenance.iter().map(ToString::to_string).collect::<Vec<_>>(),
        });
        if self.characteristic != 0 {
            v["characteristic"] = json!(self.characteristic);
        }
        v
    }
}

/// Verdi generators of every block followed by the tableau rows, without
/// consulting the oracle.
pub fn synthesize_unverified(spec: &TwoLinearSpec) -> Result<SynthesisCertificate> {
    let tilde = tilde_decompose(spec)?;
    let mut generators = Vec::new();
    let mut provenance = Vec::new();
    for i in 1..=spec.l() {
        if let Some(b) = block_of(spec, i) {
            for (k, f) in b.verdi_generators()?.into_iter().enumerate() {
                generators.push(f);
                provenance.push(Provenance::Verdi { component: i, j: k + 1 });
            }
        }
    }
    for row in tableau_rows(&tilde) {
        generators.push(row.sum);
        provenance.push(Provenance::TableauRow { row: row.index });
    }
    Ok(SynthesisCertificate {
        generators,
        provenance,
        projdim: projdim_formula(spec)?,
        verified: None,
        characteristic: spec.ring().field().characteristic(),
    })
}

/// Synthesizes and certifies `rad(generators) = rad(J_1 ∩ … ∩ J_l)`.
/// A false verdict is reported in the certificate, not raised.
pub fn synthesize(spec: &TwoLinearSpec) -> Result<SynthesisCertificate> {
    let mut cert = synthesize_unverified(spec)?;
    cert.verified = Some(verify_generator_list(&cert.generators, spec)?);
    Ok(cert)
}

/// `rad(gens) = rad(J_1 ∩ … ∩ J_l)`.
pub fn verify_generator_list(gens: &[Polynomial], spec: &TwoLinearSpec) -> Result<bool> {
    if gens.iter().any(|g| !same_ring(g.ring(), spec.ring())) {
        return Err(Error::RingMismatch);
    }
    let target = spec.intersection()?;
    IdealHandle::new(spec.ring(), gens.iter().cloned())?.radical_equal(&target)
}

/// One replayed instance of `(L·g)^n ∈ (M_i, corner·g)`.
#[derive(Clone, Debug)]
pub struct ChainCheck {
    pub component: usize,
    pub product: Polynomial,
    pub member: bool,
    pub witness_exponent: Option<u32>,
}

/// For every block and every partner form multiplied against its corner in
/// the tableau, checks that each inner product is radical over the corner
/// product modulo the block's minors.
pub fn corner_chain_replay(spec: &TwoLinearSpec, t: &TildeData) -> Result<Vec<ChainCheck>> {
    let ring = spec.ring();
    let mut out = Vec::new();
    let mut run = |i: usize, corner: &LinearForm, partners: &[LinearForm]| -> Result<()> {
        let b = block_of(spec, i).expect("corner recorded for a non-generic block");
        for g in partners {
            let g = g.to_polynomial();
            let mut gens = b.minors();
            gens.push(&corner.to_polynomial() * &g);
            let ideal = IdealHandle::new(ring, gens)?;
            for inner in b.inner() {
                let product = &inner.to_polynomial() * &g;
                let cert = ideal.radical_member(&product)?;
                out.push(ChainCheck {
                    component: i,
                    product,
                    member: cert.member,
                    witness_exponent: cert.witness_exponent,
                });
            }
        }
        Ok(())
    };
    for tc in &t.components {
        if let Some(corner) = &tc.delta_corner {
            run(tc.index, corner, &tc.p)?;
        }
        for (i, corner) in &tc.p_corners {
            run(*i, corner, &tc.delta)?;
        }
    }
    Ok(out)
}
