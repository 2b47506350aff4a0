//! JSON documents read and written by the command-line tool.
//!
//! Every rational travels as a string (`"3"`, `"-1/2"`). Parsers return
//! errors on malformed input and never panic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cones::SimplicialCone;
use crate::error::{Error, Result};
use crate::graph::{GraphFile, GraphModel};
use crate::matrix::RMatrix;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::subsystem::{check_parties, sym_dimension, Subsystem};
use crate::vectors::{check_dense, EntropyVector, Inequality, SymInequality, SymVector};
use crate::volumes::{RatioRow, VolumeReport};

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn rationals(values: &[String]) -> Result<Vec<Rational>> {
    values.iter().map(|s| parse_rational(s)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VectorKind {
    Entropy,
    Sym,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorFile {
    pub parties: usize,
    pub kind: VectorKind,
    pub entries: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VectorData {
    Entropy(EntropyVector),
    Sym(SymVector),
}

impl VectorData {
    pub fn parties(&self) -> usize {
        match self {
            VectorData::Entropy(v) => v.parties(),
            VectorData::Sym(v) => v.parties(),
        }
    }

    pub fn to_file(&self) -> VectorFile {
        match self {
            VectorData::Entropy(v) => VectorFile {
                parties: v.parties(),
                kind: VectorKind::Entropy,
                entries: strings(v.entries()),
            },
            VectorData::Sym(v) => VectorFile {
                parties: v.parties(),
                kind: VectorKind::Sym,
                entries: strings(v.entries()),
            },
        }
    }

    pub fn from_file(file: &VectorFile) -> Result<Self> {
        let entries = rationals(&file.entries)?;
        match file.kind {
            VectorKind::Entropy => {
                check_dense(file.parties)?;
                Ok(VectorData::Entropy(EntropyVector::new(
                    file.parties,
                    entries,
                )?))
            }
            VectorKind::Sym => {
                check_parties(file.parties)?;
                Ok(VectorData::Sym(SymVector::new(file.parties, entries)?))
            }
        }
    }
}

pub fn parse_vector(text: &str) -> Result<VectorData> {
    let file: VectorFile = serde_json::from_str(text).map_err(json_err)?;
    VectorData::from_file(&file)
}

pub fn vector_json(v: &VectorData) -> String {
    to_pretty(&v.to_file())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InequalityKind {
    Inequality,
    SymInequality,
}

/// Coefficient map. Full inequalities are keyed by subsystem (`"1,3"`);
/// symmetrized ones by cardinality (`"2"`). Missing keys are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InequalityFile {
    pub parties: usize,
    pub kind: InequalityKind,
    pub coeffs: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InequalityData {
    Full(Inequality),
    Sym(SymInequality),
}

impl InequalityData {
    pub fn parties(&self) -> usize {
        match self {
            InequalityData::Full(q) => q.parties(),
            InequalityData::Sym(q) => q.parties(),
        }
    }

    pub fn to_file(&self) -> InequalityFile {
        let mut coeffs = BTreeMap::new();
        let kind = match self {
            InequalityData::Full(q) => {
                for (s, c) in q.terms() {
                    coeffs.insert(s.key(), format_rational(&c));
                }
                InequalityKind::Inequality
            }
            InequalityData::Sym(q) => {
                for (k, c) in q.coeffs().iter().enumerate() {
                    if !num_traits::Zero::is_zero(c) {
                        coeffs.insert((k + 1).to_string(), format_rational(c));
                    }
                }
                InequalityKind::SymInequality
            }
        };
        InequalityFile {
            parties: self.parties(),
            kind,
            coeffs,
        }
    }

    pub fn from_file(file: &InequalityFile) -> Result<Self> {
        let n = file.parties;
        match file.kind {
            InequalityKind::Inequality => {
                let mut q = Inequality::zeros(n)?;
                for (key, value) in &file.coeffs {
                    let s = Subsystem::parse_key(n, key)?;
                    q.add_term(&s, &parse_rational(value)?)?;
                }
                Ok(InequalityData::Full(q))
            }
            InequalityKind::SymInequality => {
                check_parties(n)?;
                let d = sym_dimension(n);
                let mut coeffs = vec![Rational::default(); d];
                for (key, value) in &file.coeffs {
                    let k: usize = key
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad cardinality key {key:?}")))?;
                    if k == 0 || k > d {
                        return Err(Error::Cardinality { k, max: d });
                    }
                    coeffs[k - 1] += parse_rational(value)?;
                }
                Ok(InequalityData::Sym(SymInequality::new(n, coeffs)?))
            }
        }
    }
}

pub fn parse_inequality(text: &str) -> Result<InequalityData> {
    let file: InequalityFile = serde_json::from_str(text).map_err(json_err)?;
    InequalityData::from_file(&file)
}

pub fn inequality_json(q: &InequalityData) -> String {
    to_pretty(&q.to_file())
}

/// `rays` lists ray columns; `facets` lists facet rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeFile {
    pub parties: usize,
    pub rays: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub facets: Vec<Vec<String>>,
}

fn matrix_from_lists(lists: &[Vec<String>], columns: bool) -> Result<RMatrix> {
    let parsed = lists
        .iter()
        .map(|l| rationals(l))
        .collect::<Result<Vec<_>>>()?;
    if columns {
        RMatrix::from_columns(parsed)
    } else {
        RMatrix::from_rows(parsed)
    }
}

pub fn rays_to_lists(m: &RMatrix) -> Vec<Vec<String>> {
    m.column_vecs().iter().map(|c| strings(c)).collect()
}

pub fn facets_to_lists(m: &RMatrix) -> Vec<Vec<String>> {
    m.row_vecs().iter().map(|r| strings(r)).collect()
}

impl ConeFile {
    pub fn from_cone(cone: &SimplicialCone, rays: bool, facets: bool) -> Self {
        ConeFile {
            parties: cone.parties(),
            rays: if rays {
                rays_to_lists(cone.rays())
            } else {
                Vec::new()
            },
            facets: if facets {
                facets_to_lists(cone.facets())
            } else {
                Vec::new()
            },
        }
    }

    /// Cone spanned by `rays`. Stored facets, when present, must agree with
    /// the ones derived from the rays up to positive row scaling. A file
    /// with facets only gets its rays from the inverse facet matrix.
    pub fn to_cone(&self) -> Result<SimplicialCone> {
        check_parties(self.parties)?;
        let rays = match (self.rays.is_empty(), self.facets.is_empty()) {
            (true, true) => return Err(Error::Parse("cone file has no rays or facets".into())),
            (false, _) => matrix_from_lists(&self.rays, true)?,
            (true, false) => {
                let inv = matrix_from_lists(&self.facets, false)?.invert()?;
                let cols = inv
                    .column_vecs()
                    .iter()
                    .map(|c| crate::rational::primitive_rationals(c))
                    .collect();
                RMatrix::from_columns(cols)?
            }
        };
        let cone = SimplicialCone::from_rays(self.parties, rays)?;
        if !self.facets.is_empty() {
            let given = matrix_from_lists(&self.facets, false)?;
            let derived = cone.facets();
            let agree = given.rows() == derived.rows()
                && given.cols() == derived.cols()
                && (0..given.rows())
                    .all(|i| crate::rational::same_ray(given.row(i), derived.row(i)));
            if !agree {
                return Err(Error::DimensionMismatch(
                    "stored facets are not dual to the stored rays".into(),
                ));
            }
        }
        Ok(cone)
    }
}

pub fn parse_cone(text: &str) -> Result<SimplicialCone> {
    let file: ConeFile = serde_json::from_str(text).map_err(json_err)?;
    file.to_cone()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossSectionFile {
    pub vertices: Vec<Vec<String>>,
}

impl CrossSectionFile {
    pub fn new(vertices: &[Vec<Rational>]) -> Self {
        CrossSectionFile {
            vertices: vertices.iter().map(|v| strings(v)).collect(),
        }
    }
}

pub fn parse_graph(text: &str) -> Result<GraphModel> {
    let file: GraphFile = serde_json::from_str(text).map_err(json_err)?;
    GraphModel::from_file(&file)
}

pub fn graph_json(g: &GraphModel) -> String {
    to_pretty(&g.to_file())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioRowFile {
    pub n: usize,
    pub inv_shec: String,
    pub inv_sqec: String,
    pub ratio: String,
    pub ratio_3sf: String,
}

impl From<&RatioRow> for RatioRowFile {
    fn from(r: &RatioRow) -> Self {
        RatioRowFile {
            n: r.n,
            inv_shec: format_rational(&r.inv_shec),
            inv_sqec: format_rational(&r.inv_sqec),
            ratio: format_rational(&r.ratio),
            ratio_3sf: r.ratio_3sf.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeFile {
    pub parties: usize,
    pub kind: String,
    pub dimension: usize,
    pub volume: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse_volume: Option<String>,
    pub determinant: String,
    pub norm_product: String,
}

impl VolumeFile {
    pub fn new(parties: usize, kind: &str, r: &VolumeReport) -> Self {
        VolumeFile {
            parties,
            kind: kind.to_string(),
            dimension: r.dimension,
            volume: format_rational(&r.volume),
            inverse_volume: r.inverse_volume.as_ref().map(|v| v.to_string()),
            determinant: format_rational(&r.determinant),
            norm_product: format_rational(&r.norm_product),
        }
    }
}
