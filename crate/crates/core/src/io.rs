//! JSON file formats for ideals, scrolls, specifications, generator lists
//! and lattice bases. Polynomials are always canonical strings.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::ideal::IdealHandle;
use crate::lattice::LatticeBasis;
use crate::linjoin::{parse_forms, ComponentSpec, TwoLinearSpec};
use crate::poly::{collect_identifiers, LinearForm, Polynomial, Ring};
use crate::scroll::{ScrollBlock, ScrollMatrix};

/// `"QQ"` or `{"Fp": p}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldJson {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl FieldJson {
    pub fn to_field(&self) -> Result<FieldSpec> {
        match self {
            FieldJson::Named(s) => s.parse(),
            FieldJson::Prime { fp } => FieldSpec::prime(*fp),
        }
    }

    pub fn from_field(f: &FieldSpec) -> Self {
        match f {
            FieldSpec::Rationals => FieldJson::Named("QQ".into()),
            FieldSpec::Prime(p) => FieldJson::Prime { fp: *p },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RingJson {
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
}

impl RingJson {
    pub fn from_ring(r: &Ring) -> Self {
        RingJson {
            vars: r.vars().to_vec(),
            field: Some(FieldJson::from_field(r.field())),
        }
    }

    /// Builds the ring; `field` overrides whatever the file declares.
    pub fn to_ring(&self, field: Option<&FieldSpec>) -> Result<Arc<Ring>> {
        let f = match (field, &self.field) {
            (Some(f), _) => f.clone(),
            (None, Some(j)) => j.to_field()?,
            (None, None) => FieldSpec::Rationals,
        };
        Ring::new(self.vars.iter().cloned(), f)
    }
}

fn infer_ring<'a>(strings: impl IntoIterator<Item = &'a String>, field: Option<&FieldSpec>) -> Result<Arc<Ring>> {
    let mut vars = Vec::new();
    for s in strings {
        collect_identifiers(s, &mut vars);
    }
    Ring::new(vars, field.cloned().unwrap_or_default())
}

fn resolve_ring<'a>(
    ring: Option<&RingJson>,
    strings: impl IntoIterator<Item = &'a String>,
    field: Option<&FieldSpec>,
) -> Result<Arc<Ring>> {
    match ring {
        Some(r) => r.to_ring(field),
        None => infer_ring(strings, field),
    }
}

/// `{"ring": {...}, "gens": [...]}`; without `ring` the variables are taken
/// in order of first appearance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingJson>,
    pub gens: Vec<String>,
}

impl IdealFile {
    pub fn load(&self, field: Option<&FieldSpec>) -> Result<IdealHandle> {
        let ring = resolve_ring(self.ring.as_ref(), &self.gens, field)?;
        let gens = parse_polys(&ring, &self.gens)?;
        IdealHandle::new(&ring, gens)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockJson {
    pub entries: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScrollJson {
    pub blocks: Vec<BlockJson>,
}

impl ScrollJson {
    fn strings(&self) -> impl Iterator<Item = &String> {
        self.blocks.iter().flat_map(|b| &b.entries)
    }

    pub fn to_matrix(&self, ring: &Arc<Ring>) -> Result<ScrollMatrix> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| ScrollBlock::new(parse_strings(ring, &b.entries)?))
            .collect::<Result<Vec<_>>>()?;
        ScrollMatrix::new(blocks)
    }

    pub fn from_matrix(m: &ScrollMatrix) -> Self {
        ScrollJson {
            blocks: m
                .blocks()
                .iter()
                .map(|b| BlockJson {
                    entries: b.entries().iter().map(ToString::to_string).collect(),
                })
                .collect(),
        }
    }
}

/// `{"ring"?: {...}, "blocks": [{"entries": [...]}, ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScrollFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingJson>,
    pub blocks: Vec<BlockJson>,
}

impl ScrollFile {
    pub fn load(&self, field: Option<&FieldSpec>) -> Result<ScrollMatrix> {
        let s = ScrollJson {
            blocks: self.blocks.clone(),
        };
        let ring = resolve_ring(self.ring.as_ref(), s.strings(), field)?;
        s.to_matrix(&ring)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentJson {
    pub scroll: Option<ScrollJson>,
    #[serde(default)]
    pub delta: Vec<String>,
    #[serde(default)]
    pub p: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_tilde: Option<Vec<String>>,
}

/// `{"ring": {...}, "components": [...], "reference_generators"?: [...]}`;
/// component order is `i = 1..l`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecFile {
    pub ring: RingJson,
    pub components: Vec<ComponentJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A parsed spec file.
#[derive(Clone, Debug)]
pub struct LoadedSpec {
    pub spec: TwoLinearSpec,
    pub reference_generators: Option<Vec<Polynomial>>,
    pub note: Option<String>,
}

impl SpecFile {
    pub fn load(&self, field: Option<&FieldSpec>) -> Result<LoadedSpec> {
        let ring = self.ring.to_ring(field)?;
        let components = self
            .components
            .iter()
            .map(|c| {
                let scroll = c.scroll.as_ref().map(|s| s.to_matrix(&ring)).transpose()?;
                let mut comp = ComponentSpec::new(scroll, parse_strings(&ring, &c.delta)?, parse_strings(&ring, &c.p)?);
                comp.p_tilde = c.p_tilde.as_ref().map(|t| parse_strings(&ring, t)).transpose()?;
                Ok(comp)
            })
            .collect::<Result<Vec<_>>>()?;
        let spec = TwoLinearSpec::new(&ring, components)?;
        let reference_generators = self
            .reference_generators
            .as_ref()
            .map(|g| parse_polys(&ring, g))
            .transpose()?;
        Ok(LoadedSpec {
            spec,
            reference_generators,
            note: self.note.clone(),
        })
    }

    pub fn from_spec(spec: &TwoLinearSpec) -> Self {
        let strings = |v: &[LinearForm]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        SpecFile {
            ring: RingJson::from_ring(spec.ring()),
            components: spec
                .components()
                .iter()
                .map(|c| ComponentJson {
                    scroll: c.scroll.as_ref().map(ScrollJson::from_matrix),
                    delta: strings(&c.delta),
                    p: strings(&c.p),
                    p_tilde: c.p_tilde.as_deref().map(strings),
                })
                .collect(),
            reference_generators: None,
            note: None,
        }
    }
}

/// A generator list: a bare array, `{"gens": [...]}` or a synthesis
/// certificate's `{"generators": [...]}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GeneratorListFile {
    Bare(Vec<String>),
    Gens { gens: Vec<String> },
    Certificate { generators: Vec<String> },
}

impl GeneratorListFile {
    pub fn strings(&self) -> &[String] {
        match self {
            GeneratorListFile::Bare(g) => g,
            GeneratorListFile::Gens { gens } => gens,
            GeneratorListFile::Certificate { generators } => generators,
        }
    }

    pub fn load(&self, ring: &Arc<Ring>) -> Result<Vec<Polynomial>> {
        parse_polys(ring, self.strings())
    }
}

/// A bare array of integer rows, or `{"basis": [...], "vars"?: [...]}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum LatticeFile {
    Bare(Vec<Vec<i64>>),
    Named {
        basis: Vec<Vec<i64>>,
        #[serde(default)]
        vars: Option<Vec<String>>,
    },
}

impl LatticeFile {
    pub fn basis(&self) -> Result<LatticeBasis> {
        match self {
            LatticeFile::Bare(b) | LatticeFile::Named { basis: b, .. } => LatticeBasis::new(b.clone()),
        }
    }

    pub fn vars(&self) -> Option<&[String]> {
        match self {
            LatticeFile::Named { vars: Some(v), .. } => Some(v),
            _ => None,
        }
    }
}

fn parse_polys(ring: &Arc<Ring>, gens: &[String]) -> Result<Vec<Polynomial>> {
    gens.iter().map(|g| Polynomial::parse(ring, g)).collect()
}

fn parse_strings(ring: &Arc<Ring>, forms: &[String]) -> Result<Vec<LinearForm>> {
    let refs: Vec<&str> = forms.iter().map(String::as_str).collect();
    parse_forms(ring, &refs)
}

pub fn read_file(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    Ok(serde_json::from_str(&read_file(path)?)?)
}

pub fn load_ideal(path: impl AsRef<Path>, field: Option<&FieldSpec>) -> Result<IdealHandle> {
    read_json::<IdealFile>(path)?.load(field)
}

pub fn load_scroll(path: impl AsRef<Path>, field: Option<&FieldSpec>) -> Result<ScrollMatrix> {
    read_json::<ScrollFile>(path)?.load(field)
}

pub fn load_spec(path: impl AsRef<Path>, field: Option<&FieldSpec>) -> Result<LoadedSpec> {
    read_json::<SpecFile>(path)?.load(field)
}

pub fn ring_to_json(r: &Ring) -> Value {
    serde_json::to_value(RingJson::from_ring(r)).expect("plain data")
}

pub fn polys_to_json(gens: &[Polynomial]) -> Value {
    Value::from(gens.iter().map(ToString::to_string).collect::<Vec<_>>())
}

pub fn ideal_to_json(i: &IdealHandle) -> Value {
    json!({ "ring": ring_to_json(i.ring()), "gens": polys_to_json(i.generators()) })
}

pub fn spec_to_json(spec: &TwoLinearSpec) -> Value {
    serde_json::to_value(SpecFile::from_spec(spec)).expect("plain data")
}
