//! Shared fixtures and instance generators for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use scrollstci::io::{self, BlockJson, ComponentJson, FieldJson, LoadedSpec, RingJson, ScrollJson, SpecFile};
use scrollstci::scroll::{ScrollBlock, ScrollMatrix};
use scrollstci::{IdealHandle, LinearForm, Polynomial, Ring};

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture_file(name: &str) -> SpecFile {
    io::read_json(fixtures_dir().join(format!("{name}.json"))).expect("fixture parses")
}

pub fn fixture(name: &str) -> LoadedSpec {
    fixture_file(name).load(None).expect("fixture loads")
}

/// Every spec fixture, by file stem.
pub fn spec_fixture_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixtures_dir())
        .expect("fixtures directory")
        .filter_map(|e| {
            let p = e.ok()?.path();
            let stem = p.file_stem()?.to_str()?.to_string();
            let text = std::fs::read_to_string(&p).ok()?;
            text.contains("\"components\"").then_some(stem)
        })
        .collect();
    names.sort();
    names
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn polys(ring: &Arc<Ring>, s: &[&str]) -> Vec<Polynomial> {
    s.iter().map(|x| Polynomial::parse(ring, x).unwrap()).collect()
}

pub fn ideal(ring: &Arc<Ring>, s: &[&str]) -> IdealHandle {
    IdealHandle::parse(ring, s).unwrap()
}

/// Same spec with the ring's variables and every Δ and P list reordered.
pub fn permuted(file: &SpecFile, rng: &mut impl Rng) -> SpecFile {
    let mut out = file.clone();
    out.ring.vars.shuffle(rng);
    for c in &mut out.components {
        c.delta.shuffle(rng);
        c.p.shuffle(rng);
    }
    out
}

/// Random polynomial in `ring` of degree at most `deg`, small integer
/// coefficients, at most `terms` terms.
pub fn random_poly(rng: &mut impl Rng, ring: &Arc<Ring>, deg: u32, terms: usize) -> Polynomial {
    let n = ring.arity();
    let mut p = Polynomial::zero(ring);
    for _ in 0..rng.gen_range(1..=terms) {
        let d = rng.gen_range(0..=deg);
        let mut m = Polynomial::constant(ring, &q(rng.gen_range(-3..=3), 1));
        for _ in 0..d {
            m = &m * &Polynomial::var_at(ring, rng.gen_range(0..n));
        }
        p = &p + &m;
    }
    p
}

fn random_form<R: Rng + ?Sized>(rng: &mut R, ring: &Arc<Ring>, vars: &[usize]) -> LinearForm {
    loop {
        let mut c = vec![q(0, 1); ring.arity()];
        for &v in vars {
            c[v] = q(rng.gen_range(-2..=2), 1);
        }
        let f = LinearForm::new(ring, c).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

/// Expected case of a constructed classification instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaShape {
    RowInDelta,
    HAlpha,
    BlockInDelta,
    GenericLine,
    GenericSharedAlpha,
    GenericTwoForms,
    NotContained,
}

impl LemmaShape {
    pub const ALL: [LemmaShape; 7] = [
        LemmaShape::RowInDelta,
        LemmaShape::HAlpha,
        LemmaShape::BlockInDelta,
        LemmaShape::GenericLine,
        LemmaShape::GenericSharedAlpha,
        LemmaShape::GenericTwoForms,
        LemmaShape::NotContained,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            LemmaShape::RowInDelta => "row_in_delta",
            LemmaShape::HAlpha => "H_alpha",
            LemmaShape::BlockInDelta => "block_in_delta",
            LemmaShape::GenericLine | LemmaShape::GenericSharedAlpha | LemmaShape::GenericTwoForms => {
                "generic_cases"
            }
            LemmaShape::NotContained => "not_contained",
        }
    }
}

pub struct LemmaInstance {
    pub shape: LemmaShape,
    pub scroll: ScrollMatrix,
    pub delta: Vec<LinearForm>,
    pub alpha: Option<BigRational>,
}

/// `K[d1..d4, h1, h2]` with `Δ = (d1, ..., d4)`; the `h` part of every entry
/// is arranged to realize `shape`. `alpha` is used by the α-shapes.
pub fn lemma_instance(rng: &mut impl Rng, shape: LemmaShape, alpha: &BigRational) -> LemmaInstance {
    let ring = Ring::rationals(&["d1", "d2", "d3", "d4", "h1", "h2"]);
    let dv = [0, 1, 2, 3];
    let delta: Vec<LinearForm> = (0..4).map(|i| LinearForm::variable(&ring, &format!("d{}", i + 1)).unwrap()).collect();
    let h1 = LinearForm::variable(&ring, "h1").unwrap();
    let h2 = LinearForm::variable(&ring, "h2").unwrap();
    let d = |rng: &mut dyn rand::RngCore| random_form(rng, &ring, &dv);
    let power = |k: usize| (0..k).fold(q(1, 1), |acc, _| acc * alpha);
    let c = rng.gen_range(1..=2usize);
    let block = |entries: Vec<LinearForm>| ScrollBlock::new(entries).unwrap();
    let blocks = match shape {
        LemmaShape::RowInDelta => {
            let row = rng.gen_range(1..=2);
            let mut e: Vec<LinearForm> = (0..c + 2).map(|_| d(rng)).collect();
            let k = if row == 1 { c + 1 } else { 0 };
            e[k] = e[k].add(&h1);
            vec![block(e)]
        }
        LemmaShape::HAlpha => {
            let h = h1.add(&h2.scale(&q(rng.gen_range(-2..=2), 1)));
            vec![block((0..c + 2).map(|j| d(rng).add(&h.scale(&power(j)))).collect())]
        }
        LemmaShape::BlockInDelta => {
            let inside = block((0..c + 2).map(|_| d(rng)).collect());
            let generic = block(vec![d(rng).add(&h1), d(rng).add(&h2)]);
            if rng.gen_bool(0.5) {
                vec![inside, generic]
            } else {
                vec![generic, inside]
            }
        }
        LemmaShape::GenericLine => (0..c + 1)
            .map(|_| block(vec![d(rng), d(rng).add(&random_form(rng, &ring, &[4, 5]))]))
            .collect(),
        LemmaShape::GenericSharedAlpha => (0..c + 1)
            .map(|_| {
                let h = random_form(rng, &ring, &[4, 5]);
                block(vec![d(rng).add(&h), d(rng).add(&h.scale(alpha))])
            })
            .collect(),
        LemmaShape::GenericTwoForms => (0..c + 1)
            .map(|i| {
                let a = q(i as i64 + 1, 1);
                block(vec![d(rng).add(&h1.scale(&a)), d(rng).add(&h2.scale(&a))])
            })
            .collect(),
        LemmaShape::NotContained => {
            // Alternating h-parts make the minor of the first two columns nonzero mod Δ.
            let e = (0..c + 2).map(|j| d(rng).add(if j % 2 == 0 { &h1 } else { &h2 })).collect();
            vec![block(e)]
        }
    };
    LemmaInstance {
        shape,
        scroll: ScrollMatrix::new(blocks).unwrap(),
        delta,
        alpha: matches!(shape, LemmaShape::HAlpha).then(|| alpha.clone()),
    }
}

/// A random valid specification with `l ∈ {2, 3}`, one block with `c ≤ 2`
/// placed in a random component, and at most 8 variables. Returns `None`
/// when the draw leaves some `P_j` empty.
pub fn random_spec(rng: &mut impl Rng) -> Option<SpecFile> {
    let l = rng.gen_range(2..=3usize);
    let c = rng.gen_range(1..=2usize);
    let i0 = rng.gen_range(1..=l);
    let bvars: Vec<String> = (0..c + 2).map(|k| format!("b{k}")).collect();
    let top: Vec<String> = bvars[..c + 1].to_vec();
    let bottom: Vec<String> = bvars[1..].to_vec();
    let row = |rng: &mut dyn rand::RngCore| if rng.gen_bool(0.5) { top.clone() } else { bottom.clone() };

    let mut deltas: Vec<Vec<String>> = vec![Vec::new(); l + 1];
    for (i, d) in deltas.iter_mut().enumerate().skip(2) {
        *d = if i == i0 { row(rng) } else { vec![format!("d{i}")] };
    }
    let extras: Vec<String> = (1..=rng.gen_range(0..=2usize)).map(|k| format!("e{k}")).collect();
    let d_set = |i: usize| -> BTreeSet<String> { deltas.iter().skip(i + 1).flatten().cloned().collect() };

    let mut ps: Vec<BTreeSet<String>> = vec![BTreeSet::new(); l + 1];
    for j in 2..=l {
        let d_j = d_set(j);
        let d_prev = d_set(j - 1);
        // For coordinate ideals, (f) at j means some earlier Q_k lies in
        // P_j ∪ D_{j-1}; Q_1 = D_1 always qualifies.
        let k = rng.gen_range(1..j);
        let mut p: BTreeSet<String> = (&d_set(k) | &ps[k]).difference(&d_prev).cloned().collect();
        if j > i0 {
            p.extend(row(rng));
        }
        let mut candidates: Vec<String> = extras.clone();
        candidates.extend(deltas[2..j].iter().flatten().cloned());
        if j != i0 {
            candidates.extend(bvars.iter().cloned());
        }
        for v in candidates {
            if !d_prev.contains(&v) && !d_j.contains(&v) && rng.gen_bool(0.5) {
                p.insert(v);
            }
        }
        if j == i0 && p.iter().any(|v| bvars.contains(v)) {
            return None;
        }
        if p.is_empty() {
            return None;
        }
        ps[j] = p;
    }

    let mut vars: Vec<String> = bvars.clone();
    vars.extend((2..=l).filter(|&i| i != i0).map(|i| format!("d{i}")));
    vars.extend(extras);
    vars.shuffle(rng);
    let components = (1..=l)
        .map(|i| ComponentJson {
            scroll: (i == i0).then(|| ScrollJson {
                blocks: vec![BlockJson { entries: bvars.clone() }],
            }),
            delta: deltas[i].clone(),
            p: ps[i].iter().cloned().collect(),
            p_tilde: None,
        })
        .collect();
    Some(SpecFile {
        ring: RingJson {
            vars,
            field: Some(FieldJson::Named("QQ".into())),
        },
        components,
        reference_generators: None,
        note: None,
    })
}
