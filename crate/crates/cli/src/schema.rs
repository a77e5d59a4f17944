//! JSON documents read and written by the CLI. Every output carries
//! `"schema": "1"`.

use serde::{Deserialize, Serialize};

use chevgauge::algebra::{FieldElem, Matrix};
use chevgauge::gauge::{FactorKind, GaugeRecord};
use chevgauge::roots::RootSystem;

pub const SCHEMA: &str = "1";

pub type TextMatrix = Vec<Vec<String>>;

pub fn text_matrix(m: &Matrix<FieldElem>) -> TextMatrix {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

pub fn int_matrix(m: &Matrix<i64>) -> Vec<Vec<i64>> {
    m.to_rows()
}

/// Input of `reduce`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixInput {
    #[serde(rename = "type")]
    pub group_type: String,
    pub rank: usize,
    /// `"Cz"` (entries in `C(z)`) or `"Ct"` (entries may use the `t_i`).
    pub field: String,
    pub entries: TextMatrix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaLevel {
    pub k: usize,
    pub roots: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootsOutput {
    pub schema: String,
    #[serde(rename = "type")]
    pub group_type: String,
    pub rank: usize,
    pub positive_roots: Vec<Vec<i64>>,
    pub heights: Vec<i64>,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub gamma: Vec<Vec<i64>>,
    pub gamma_chain: Vec<GammaLevel>,
    pub parameter_roots: Vec<Vec<i64>>,
}

impl RootsOutput {
    pub fn new(rs: &RootSystem) -> RootsOutput {
        let coords = |r: &chevgauge::roots::Root| r.coords().to_vec();
        RootsOutput {
            schema: SCHEMA.into(),
            group_type: rs.group_type().to_string(),
            rank: rs.rank(),
            positive_roots: rs.positive_roots().iter().map(coords).collect(),
            heights: rs.positive_roots().iter().map(|r| r.height()).collect(),
            cartan_matrix: rs.cartan_matrix().to_vec(),
            gamma: rs.gammas().iter().map(coords).collect(),
            gamma_chain: rs
                .gamma_chain()
                .iter()
                .map(|g| GammaLevel {
                    k: g.k,
                    roots: g.roots.iter().map(coords).collect(),
                })
                .collect(),
            parameter_roots: rs.parameter_roots().iter().map(coords).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootVector {
    pub root: Vec<i64>,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisOutput {
    pub schema: String,
    #[serde(rename = "type")]
    pub group_type: String,
    pub rank: usize,
    pub dim: usize,
    pub cartan: Vec<Vec<Vec<i64>>>,
    pub positive: Vec<RootVector>,
    pub negative: Vec<RootVector>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FactorOut {
    Unipotent { root: Vec<i64>, x: String },
    Diagonal { entries: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaugeOut {
    pub total: TextMatrix,
    /// In application order.
    pub factors: Vec<FactorOut>,
}

impl GaugeOut {
    pub fn new(g: &GaugeRecord, rs: Option<&RootSystem>) -> GaugeOut {
        let factors = g
            .factors
            .iter()
            .map(|f| match &f.kind {
                FactorKind::Unipotent { root, x } => FactorOut::Unipotent {
                    root: rs.map(|rs| rs.root(*root).coords().to_vec()).unwrap_or_default(),
                    x: x.to_string(),
                },
                FactorKind::Diagonal(d) => FactorOut::Diagonal {
                    entries: d.iter().map(ToString::to_string).collect(),
                },
            })
            .collect();
        GaugeOut {
            total: text_matrix(&g.total),
            factors,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReduceOutput {
    pub schema: String,
    #[serde(rename = "type")]
    pub group_type: String,
    pub rank: usize,
    pub input: TextMatrix,
    pub normal: TextMatrix,
    pub specialization: Vec<String>,
    pub gauge: GaugeOut,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateOut {
    pub valid: bool,
    pub epsilon: Vec<i8>,
    pub rank_witness: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theorem1Output {
    pub schema: String,
    #[serde(rename = "type")]
    pub group_type: String,
    pub rank: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matrix: Option<TextMatrix>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<CertificateOut>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenericityOutput {
    pub schema: String,
    pub rank: usize,
    pub input: TextMatrix,
    pub a1: TextMatrix,
    pub a2: TextMatrix,
    #[serde(rename = "final")]
    pub final_matrix: TextMatrix,
    pub specialization: Vec<String>,
    pub gauge: GaugeOut,
    pub certified: bool,
}
