//! Scroll matrices, their minors, Verdi's generators and the classification
//! of scroll matrices whose minors lie in a linear ideal.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ideal::IdealHandle;
use crate::poly::{linear_span_dim, same_ring, LinearForm, Polynomial, Ring, Subspace};

/// One block `L_0, ..., L_{c+1}`: the 2×(c+1) matrix with rows
/// `(L_0..L_c)` and `(L_1..L_{c+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScrollBlock {
    entries: Vec<LinearForm>,
}

impl ScrollBlock {
    pub fn new(entries: Vec<LinearForm>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::InvalidScroll(format!(
                "a block needs at least 2 entries, got {}",
                entries.len()
            )));
        }
        if entries.iter().any(|e| !same_ring(e.ring(), entries[0].ring())) {
            return Err(Error::RingMismatch);
        }
        Ok(ScrollBlock { entries })
    }

    pub fn parse(ring: &Arc<Ring>, entries: &[&str]) -> Result<Self> {
        let forms = entries
            .iter()
            .map(|s| LinearForm::parse(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(forms)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.entries[0].ring()
    }

    pub fn entries(&self) -> &[LinearForm] {
        &self.entries
    }

    /// The width parameter `c`; the block has `c + 1` columns.
    pub fn c(&self) -> usize {
        self.entries.len() - 2
    }

    pub fn is_generic(&self) -> bool {
        self.c() == 0
    }

    pub fn top_row(&self) -> &[LinearForm] {
        &self.entries[..self.entries.len() - 1]
    }

    pub fn bottom_row(&self) -> &[LinearForm] {
        &self.entries[1..]
    }

    /// Row 1 is the top row, row 2 the bottom row.
    pub fn row(&self, row: usize) -> &[LinearForm] {
        if row == 1 {
            self.top_row()
        } else {
            self.bottom_row()
        }
    }

    /// `L_0` for row 1, `L_{c+1}` for row 2.
    pub fn corner(&self, row: usize) -> &LinearForm {
        if row == 1 {
            &self.entries[0]
        } else {
            &self.entries[self.entries.len() - 1]
        }
    }

    pub fn inner(&self) -> &[LinearForm] {
        &self.entries[1..self.entries.len() - 1]
    }

    pub fn columns(&self) -> impl Iterator<Item = (&LinearForm, &LinearForm)> {
        self.entries.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn minors(&self) -> Vec<Polynomial> {
        minors_of_columns(&self.columns().collect::<Vec<_>>())
    }

    /// Verdi's `F_1, ..., F_c` with
    /// `F_j = Σ_k (-1)^k C(j,k) L_{j+1}^{j-k} L_k L_j^k`.
    pub fn verdi_generators(&self) -> Result<Vec<Polynomial>> {
        if self.is_generic() {
            return Err(Error::GenericBlock);
        }
        let ring = self.ring();
        let field = ring.field();
        let l: Vec<Polynomial> = self.entries.iter().map(LinearForm::to_polynomial).collect();
        let mut out = Vec::with_capacity(self.c());
        for j in 1..=self.c() {
            let mut f = Polynomial::zero(ring);
            for k in 0..=j {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let coeff = BigRational::from_integer(BigInt::from(sign) * binomial(BigInt::from(j), BigInt::from(k)));
                let term = &(&l[j + 1].pow((j - k) as u32) * &l[k]) * &l[j].pow(k as u32);
                f = &f + &term.scale(&field.normalize(&coeff)?);
            }
            out.push(f);
        }
        Ok(out)
    }
}

fn minors_of_columns(cols: &[(&LinearForm, &LinearForm)]) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            out.push(minor(cols[i], cols[j]));
        }
    }
    out
}

fn minor(a: (&LinearForm, &LinearForm), b: (&LinearForm, &LinearForm)) -> Polynomial {
    &(&a.0.to_polynomial() * &b.1.to_polynomial()) - &(&b.0.to_polynomial() * &a.1.to_polynomial())
}

/// A nonempty list of blocks over a common ring.
#[derive(Clone, Debug, PartialEq)]
pub struct ScrollMatrix {
    ring: Arc<Ring>,
    blocks: Vec<ScrollBlock>,
}

impl ScrollMatrix {
    pub fn new(blocks: Vec<ScrollBlock>) -> Result<Self> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::InvalidScroll("a scroll matrix needs at least one block".into()))?;
        let ring = first.ring().clone();
        if blocks.iter().any(|b| !same_ring(b.ring(), &ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(ScrollMatrix { ring, blocks })
    }

    pub fn single(block: ScrollBlock) -> Self {
        ScrollMatrix {
            ring: block.ring().clone(),
            blocks: vec![block],
        }
    }

    pub fn parse(ring: &Arc<Ring>, blocks: &[&[&str]]) -> Result<Self> {
        let blocks = blocks
            .iter()
            .map(|b| ScrollBlock::parse(ring, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(blocks)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn blocks(&self) -> &[ScrollBlock] {
        &self.blocks
    }

    /// Total column count `r = Σ (c_i + 1)`.
    pub fn columns_count(&self) -> usize {
        self.blocks.iter().map(|b| b.c() + 1).sum()
    }

    pub fn columns(&self) -> Vec<(&LinearForm, &LinearForm)> {
        self.blocks.iter().flat_map(|b| b.columns()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &LinearForm> {
        self.blocks.iter().flat_map(|b| b.entries.iter())
    }

    pub fn all_generic(&self) -> bool {
        self.blocks.iter().all(ScrollBlock::is_generic)
    }

    /// All entries linearly independent.
    pub fn is_standard_form(&self) -> bool {
        let e: Vec<LinearForm> = self.entries().cloned().collect();
        linear_span_dim(&e) == e.len()
    }

    /// Concatenated row: 1 for the top row, 2 for the bottom row.
    pub fn row(&self, row: usize) -> Vec<&LinearForm> {
        self.blocks.iter().flat_map(|b| b.row(row)).collect()
    }

    /// All `C(r, 2)` minors, column pairs in lexicographic order.
    pub fn minors(&self) -> Vec<Polynomial> {
        minors_of_columns(&self.columns())
    }

    pub fn minors_ideal(&self) -> IdealHandle {
        IdealHandle::new(&self.ring, self.minors()).expect("minors live in the matrix ring")
    }

    fn without_block(&self, k: usize) -> Option<ScrollMatrix> {
        let blocks: Vec<ScrollBlock> = self
            .blocks
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, b)| b.clone())
            .collect();
        ScrollMatrix::new(blocks).ok()
    }
}

/// `ara = cd = 2r - 3` and `projdim = r - 1` for the minors of a generic 2×r matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GenericAra {
    pub r: usize,
    pub ara: usize,
    pub projdim: usize,
}

pub fn ara_bound_generic(r: usize) -> Result<GenericAra> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("generic matrix needs r >= 2, got {r}")));
    }
    Ok(GenericAra {
        r,
        ara: 2 * r - 3,
        projdim: r - 1,
    })
}

/// Cases for a matrix made only of generic blocks. Columns are 1-based
/// indices into the full matrix; rows are 1 (top) and 2 (bottom).
#[derive(Clone, Debug, PartialEq)]
pub enum GenericCase {
    /// Fewer than two columns remain.
    NoMinors,
    Line { row: usize },
    ColumnDeleted { column: usize, rest: Box<GenericCase> },
    /// `L_{i,0} - H_i` and `L_{i,1} - α·H_i` lie in Δ for every column.
    SharedAlpha { alpha: BigRational, h: Vec<(usize, LinearForm)> },
    /// `L_{i,0} - α_i·H_1` and `L_{i,1} - α_i·H_2` lie in Δ for every column.
    TwoForms { h1: LinearForm, h2: LinearForm, alphas: Vec<(usize, BigRational)> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Case {
    /// The minor of columns `(i, j)` is not in `(Δ)`.
    NotContained { columns: (usize, usize), minor: Polynomial },
    RowInDelta { row: usize },
    /// A non-generic block lies in Δ; `rest` classifies the remaining blocks.
    BlockInDelta { block: usize, rest: Option<Box<Case>> },
    /// Shared `α` with `L_{i,j} - α^j·H_i ∈ Δ`; `H_i` is `None` only for a
    /// generic block already inside Δ.
    HAlpha { alpha: BigRational, h: Vec<(usize, Option<LinearForm>)> },
    Generic(GenericCase),
    /// Contained, but no case of the classification matched. Only reachable
    /// for matrices not in standard form.
    Unresolved,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScrollClassification {
    pub case: Case,
    pub secondary: Vec<Case>,
}

impl ScrollClassification {
    pub fn is_contained(&self) -> bool {
        !matches!(self.case, Case::NotContained { .. })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "contained": self.is_contained(),
            "case": self.case.to_json(),
            "secondary": self.secondary.iter().map(Case::to_json).collect::<Vec<_>>(),
        })
    }
}

fn scalar_json(ring: &Ring, a: &BigRational) -> Value {
    Value::String(ring.field().format(a))
}

impl GenericCase {
    fn to_json(&self) -> Value {
        match self {
            GenericCase::NoMinors => json!({"tag": "no_minors"}),
            GenericCase::Line { row } => json!({"tag": "line", "row": row}),
            GenericCase::ColumnDeleted { column, rest } => {
                json!({"tag": "column_deleted", "column": column, "rest": rest.to_json()})
            }
            GenericCase::SharedAlpha { alpha, h } => json!({
                "tag": "shared_alpha",
                "alpha": scalar_json(h[0].1.ring(), alpha),
                "H": h.iter().map(|(c, f)| json!({"column": c, "H": f.to_string()})).collect::<Vec<_>>(),
            }),
            GenericCase::TwoForms { h1, h2, alphas } => json!({
                "tag": "two_forms",
                "H1": h1.to_string(),
                "H2": h2.to_string(),
                "alphas": alphas
                    .iter()
                    .map(|(c, a)| json!({"column": c, "alpha": scalar_json(h1.ring(), a)}))
                    .collect::<Vec<_>>(),
            }),
        }
    }
}

impl Case {
    pub fn tag(&self) -> &'static str {
        match self {
            Case::NotContained { .. } => "not_contained",
            Case::RowInDelta { .. } => "row_in_delta",
            Case::BlockInDelta { .. } => "block_in_delta",
            Case::HAlpha { .. } => "H_alpha",
            Case::Generic(_) => "generic_cases",
            Case::Unresolved => "unresolved",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Case::NotContained { columns, minor } => json!({
                "tag": self.tag(),
                "columns": [columns.0, columns.1],
                "minor": minor.to_string(),
            }),
            Case::RowInDelta { row } => json!({"tag": self.tag(), "row": row}),
            Case::BlockInDelta { block, rest } => json!({
                "tag": self.tag(),
                "block": block,
                "rest": rest.as_ref().map(|r| r.to_json()),
            }),
            Case::HAlpha { alpha, h } => {
                let ring = h
                    .iter()
                    .find_map(|(_, f)| f.as_ref().map(|f| f.ring().clone()));
                let alpha = match &ring {
                    Some(r) => scalar_json(r, alpha),
                    None => Value::String(alpha.to_string()),
                };
                json!({
                    "tag": self.tag(),
                    "alpha": alpha,
                    "H": h
                        .iter()
                        .map(|(b, f)| json!({"block": b, "H": f.as_ref().map(|f| f.to_string())}))
                        .collect::<Vec<_>>(),
                })
            }
            Case::Generic(g) => json!({"tag": self.tag(), "case": g.to_json()}),
            Case::Unresolved => json!({"tag": self.tag()}),
        }
    }
}

/// A column with its global 1-based index and the complement components of
/// its entries.
#[derive(Clone)]
struct Col {
    index: usize,
    top: LinearForm,
    bottom: LinearForm,
}

fn generic_case(cols: &[Col]) -> Option<GenericCase> {
    if cols.len() < 2 {
        return Some(GenericCase::NoMinors);
    }
    for c in cols {
        if c.top.is_zero() != c.bottom.is_zero() {
            let row = if c.top.is_zero() { 1 } else { 2 };
            let whole = cols
                .iter()
                .all(|d| if row == 1 { d.top.is_zero() } else { d.bottom.is_zero() });
            if whole {
                return Some(GenericCase::Line { row });
            }
        }
    }
    if let Some(k) = cols.iter().position(|c| c.top.is_zero() && c.bottom.is_zero()) {
        let rest: Vec<Col> = cols
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, c)| c.clone())
            .collect();
        return Some(GenericCase::ColumnDeleted {
            column: cols[k].index,
            rest: Box::new(generic_case(&rest)?),
        });
    }
    if cols.iter().any(|c| c.top.is_zero() || c.bottom.is_zero()) {
        return None;
    }
    if let Some(alpha) = cols[0].top.ratio_to(&cols[0].bottom) {
        if cols.iter().all(|c| c.top.scale(&alpha) == c.bottom) {
            return Some(GenericCase::SharedAlpha {
                alpha,
                h: cols.iter().map(|c| (c.index, c.top.clone())).collect(),
            });
        }
    }
    let h1 = cols[0].top.clone();
    let h2 = cols[0].bottom.clone();
    let mut alphas = Vec::new();
    for c in cols {
        let a = h1.ratio_to(&c.top)?;
        if h2.scale(&a) != c.bottom {
            return None;
        }
        alphas.push((c.index, a));
    }
    Some(GenericCase::TwoForms { h1, h2, alphas })
}

/// `α` with `h_j = α^j h_0` for all `j`, all `h_j` nonzero.
fn geometric_ratio(h: &[LinearForm]) -> Option<BigRational> {
    if h.iter().any(LinearForm::is_zero) {
        return None;
    }
    let field = h[0].ring().field();
    let alpha = h[0].ratio_to(&h[1])?;
    let mut power = BigRational::one();
    for hj in h {
        if h[0].scale(&power) != *hj {
            return None;
        }
        power = field.mul(&power, &alpha);
    }
    Some(alpha)
}

fn h_alpha(blocks: &[(usize, &ScrollBlock)], delta: &Subspace) -> Option<Case> {
    let mut alpha: Option<BigRational> = None;
    let mut h = Vec::new();
    for (k, b) in blocks.iter().filter(|(_, b)| !b.is_generic()) {
        let hs: Vec<LinearForm> = b.entries().iter().map(|e| delta.reduce(e)).collect();
        let a = geometric_ratio(&hs)?;
        if alpha.as_ref().is_some_and(|x| *x != a) {
            return None;
        }
        alpha = Some(a);
        h.push((*k, Some(hs[0].clone())));
    }
    let alpha = alpha?;
    for (k, b) in blocks.iter().filter(|(_, b)| b.is_generic()) {
        let h0 = delta.reduce(&b.entries()[0]);
        let h1 = delta.reduce(&b.entries()[1]);
        if h0.is_zero() && h1.is_zero() {
            h.push((*k, None));
        } else if !h0.is_zero() && h0.scale(&alpha) == h1 {
            h.push((*k, Some(h0)));
        } else {
            return None;
        }
    }
    h.sort_by_key(|(k, _)| *k);
    Some(Case::HAlpha { alpha, h })
}

/// Applicable cases for a contained matrix, in the Proposition's order.
fn contained_cases(blocks: &[(usize, usize, &ScrollBlock)], delta: &Subspace) -> Vec<Case> {
    let mut cases = Vec::new();
    let cols: Vec<Col> = blocks
        .iter()
        .flat_map(|(_, first, b)| {
            b.columns().enumerate().map(move |(i, (t, d))| (first + i, t, d))
        })
        .map(|(index, t, d)| Col {
            index,
            top: delta.reduce(t),
            bottom: delta.reduce(d),
        })
        .collect();
    let top_in = cols.iter().all(|c| c.top.is_zero());
    let bottom_in = cols.iter().all(|c| c.bottom.is_zero());
    let rows = [(1, top_in), (2, bottom_in)];

    if blocks.iter().all(|(_, _, b)| b.is_generic()) {
        cases.push(generic_case(&cols).map_or(Case::Unresolved, Case::Generic));
        cases.extend(rows.iter().filter(|r| r.1).map(|r| Case::RowInDelta { row: r.0 }));
        return cases;
    }
    if top_in != bottom_in {
        cases.push(Case::RowInDelta {
            row: if top_in { 1 } else { 2 },
        });
    }
    for (k, (block, _, b)) in blocks.iter().enumerate() {
        if !b.is_generic() && b.entries().iter().all(|e| delta.contains(e)) {
            let rest: Vec<(usize, usize, &ScrollBlock)> = blocks
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, x)| *x)
                .collect();
            let rest = (!rest.is_empty()).then(|| {
                Box::new(contained_cases(&rest, delta).into_iter().next().unwrap_or(Case::Unresolved))
            });
            cases.push(Case::BlockInDelta { block: *block, rest });
        }
    }
    let indexed: Vec<(usize, &ScrollBlock)> = blocks.iter().map(|(k, _, b)| (*k, *b)).collect();
    cases.extend(h_alpha(&indexed, delta));
    if top_in && bottom_in {
        // Both lines qualify: reported as secondary matches only.
        cases.push(Case::RowInDelta { row: 1 });
        cases.push(Case::RowInDelta { row: 2 });
    }
    if cases.is_empty() {
        cases.push(Case::Unresolved);
    }
    cases
}

/// Decides `minors(B) ⊆ (Δ)` by reducing modulo the span and, when
/// contained, names the applicable case with witnesses.
pub fn classify_modulo(b: &ScrollMatrix, delta: &[LinearForm]) -> Result<ScrollClassification> {
    if delta.iter().any(|d| !same_ring(d.ring(), b.ring())) {
        return Err(Error::RingMismatch);
    }
    let span = Subspace::span(b.ring(), delta);
    let cols = b.columns();
    let h: Vec<(LinearForm, LinearForm)> = cols
        .iter()
        .map(|(t, d)| (span.reduce(t), span.reduce(d)))
        .collect();
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            let image = minor((&h[i].0, &h[i].1), (&h[j].0, &h[j].1));
            if !image.is_zero() {
                return Ok(ScrollClassification {
                    case: Case::NotContained {
                        columns: (i + 1, j + 1),
                        minor: minor(cols[i], cols[j]),
                    },
                    secondary: Vec::new(),
                });
            }
        }
    }
    let mut first = 1;
    let blocks: Vec<(usize, usize, &ScrollBlock)> = b
        .blocks()
        .iter()
        .enumerate()
        .map(|(k, blk)| {
            let entry = (k + 1, first, blk);
            first += blk.c() + 1;
            entry
        })
        .collect();
    let mut cases = contained_cases(&blocks, &span).into_iter();
    let case = cases.next().unwrap_or(Case::Unresolved);
    Ok(ScrollClassification {
        case,
        secondary: cases.collect(),
    })
}

/// Independently re-checks every witness of a classification: stated
/// combinations lie in span(Δ), every `H` lies outside it, every `α` is
/// nonzero, and a `not_contained` minor is refuted by the ideal oracle.
pub fn replay(b: &ScrollMatrix, delta: &[LinearForm], cls: &ScrollClassification) -> Result<bool> {
    let span = Subspace::span(b.ring(), delta);
    for case in std::iter::once(&cls.case).chain(&cls.secondary) {
        if !replay_case(b, delta, &span, case)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn replay_case(b: &ScrollMatrix, delta: &[LinearForm], span: &Subspace, case: &Case) -> Result<bool> {
    let in_span = |f: &LinearForm| span.contains(f);
    let outside = |f: &LinearForm| !f.is_zero() && !span.contains(f);
    Ok(match case {
        Case::NotContained { columns, minor: m } => {
            let cols = b.columns();
            let (i, j) = *columns;
            if i == 0 || j > cols.len() || i >= j {
                return Ok(false);
            }
            let ideal = IdealHandle::new(b.ring(), delta.iter().map(LinearForm::to_polynomial))?;
            minor(cols[i - 1], cols[j - 1]) == *m && !ideal.contains(m)?
        }
        Case::RowInDelta { row } => b.row(*row).into_iter().all(in_span),
        Case::BlockInDelta { block, rest } => {
            let Some(blk) = b.blocks().get(block.wrapping_sub(1)) else {
                return Ok(false);
            };
            if blk.is_generic() || !blk.entries().iter().all(in_span) {
                return Ok(false);
            }
            match (rest, b.without_block(block - 1)) {
                (None, None) => true,
                (Some(r), Some(sub)) => {
                    let first_col = 1 + b.blocks()[..block - 1].iter().map(|x| x.c() + 1).sum::<usize>();
                    replay_case(&sub, delta, span, &renumber(r, *block, first_col, blk.c() + 1))?
                }
                _ => false,
            }
        }
        Case::HAlpha { alpha, h } => {
            if alpha.is_zero() || h.len() != b.blocks().len() {
                return Ok(false);
            }
            let field = b.ring().field();
            let mut ok = true;
            for (k, hk) in h {
                let Some(blk) = b.blocks().get(k.wrapping_sub(1)) else {
                    return Ok(false);
                };
                ok &= match hk {
                    None => blk.is_generic() && blk.entries().iter().all(in_span),
                    Some(hk) => {
                        let mut power = BigRational::one();
                        let mut all = outside(hk);
                        for e in blk.entries() {
                            all &= in_span(&e.sub(&hk.scale(&power)));
                            power = field.mul(&power, alpha);
                        }
                        all
                    }
                };
            }
            ok
        }
        Case::Generic(g) => {
            let cols: Vec<(usize, &LinearForm, &LinearForm)> = b
                .columns()
                .into_iter()
                .enumerate()
                .map(|(i, (t, d))| (i + 1, t, d))
                .collect();
            b.all_generic() && replay_generic(&cols, span, g)
        }
        Case::Unresolved => false,
    })
}

/// Indices in a `rest` classification refer to the full matrix; shift them
/// to the matrix with the given block deleted.
fn renumber(case: &Case, block: usize, first_col: usize, width: usize) -> Case {
    let shift_block = |k: usize| if k > block { k - 1 } else { k };
    match case {
        Case::BlockInDelta { block: k, rest } => Case::BlockInDelta {
            block: shift_block(*k),
            rest: rest.as_ref().map(|r| Box::new(renumber(r, block, first_col, width))),
        },
        Case::HAlpha { alpha, h } => Case::HAlpha {
            alpha: alpha.clone(),
            h: h.iter().map(|(k, f)| (shift_block(*k), f.clone())).collect(),
        },
        Case::Generic(g) => Case::Generic(renumber_columns(g, first_col, width)),
        other => other.clone(),
    }
}

fn renumber_columns(g: &GenericCase, first_col: usize, width: usize) -> GenericCase {
    let shift = |c: usize| if c >= first_col + width { c - width } else { c };
    match g {
        GenericCase::ColumnDeleted { column, rest } => GenericCase::ColumnDeleted {
            column: shift(*column),
            rest: Box::new(renumber_columns(rest, first_col, width)),
        },
        GenericCase::SharedAlpha { alpha, h } => GenericCase::SharedAlpha {
            alpha: alpha.clone(),
            h: h.iter().map(|(c, f)| (shift(*c), f.clone())).collect(),
        },
        GenericCase::TwoForms { h1, h2, alphas } => GenericCase::TwoForms {
            h1: h1.clone(),
            h2: h2.clone(),
            alphas: alphas.iter().map(|(c, a)| (shift(*c), a.clone())).collect(),
        },
        other => other.clone(),
    }
}

fn replay_generic(cols: &[(usize, &LinearForm, &LinearForm)], span: &Subspace, g: &GenericCase) -> bool {
    let in_span = |f: &LinearForm| span.contains(f);
    let outside = |f: &LinearForm| !f.is_zero() && !span.contains(f);
    let find = |c: usize| cols.iter().find(|x| x.0 == c);
    match g {
        GenericCase::NoMinors => cols.len() < 2,
        GenericCase::Line { row } => cols
            .iter()
            .all(|(_, t, d)| in_span(if *row == 1 { t } else { d })),
        GenericCase::ColumnDeleted { column, rest } => {
            let Some((_, t, d)) = find(*column) else {
                return false;
            };
            let remaining: Vec<_> = cols.iter().filter(|x| x.0 != *column).copied().collect();
            in_span(t) && in_span(d) && replay_generic(&remaining, span, rest)
        }
        GenericCase::SharedAlpha { alpha, h } => {
            !alpha.is_zero()
                && h.len() == cols.len()
                && h.iter().all(|(c, hc)| {
                    find(*c).is_some_and(|(_, t, d)| {
                        outside(hc) && in_span(&t.sub(hc)) && in_span(&d.sub(&hc.scale(alpha)))
                    })
                })
        }
        GenericCase::TwoForms { h1, h2, alphas } => {
            outside(h1)
                && outside(h2)
                && alphas.len() == cols.len()
                && alphas.iter().all(|(c, a)| {
                    !a.is_zero()
                        && find(*c).is_some_and(|(_, t, d)| {
                            in_span(&t.sub(&h1.scale(a))) && in_span(&d.sub(&h2.scale(a)))
                        })
                })
        }
    }
}
