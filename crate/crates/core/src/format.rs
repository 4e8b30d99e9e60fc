//! JSON interchange for hypergraphs, spectra and partition lists.
//!
//! Hypergraph files look like
//! `{"dims": [4,3] | null, "vertices": [[1,1],...], "c_edges": [[0,1,4],...], "d_edges": [...]}`
//! with 0-based vertex indices and ascending edges.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ChromaticSpectrum, MixedHypergraph, Partition, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub dims: Option<Vec<usize>>,
    pub vertices: Vec<Vertex>,
    pub c_edges: Vec<Vec<usize>>,
    pub d_edges: Vec<Vec<usize>>,
}

impl From<&MixedHypergraph> for HypergraphJson {
    fn from(h: &MixedHypergraph) -> Self {
        HypergraphJson {
            dims: h.dims().map(|d| d.to_vec()),
            vertices: h.vertices().to_vec(),
            c_edges: h.c_edges().to_vec(),
            d_edges: h.d_edges().to_vec(),
        }
    }
}

impl TryFrom<HypergraphJson> for MixedHypergraph {
    type Error = Error;

    fn try_from(j: HypergraphJson) -> Result<Self> {
        let h = MixedHypergraph::new(j.vertices, j.c_edges, j.d_edges)?;
        match j.dims {
            Some(dims) => h.with_dims(dims),
            None => Ok(h),
        }
    }
}

pub fn hypergraph_to_json(h: &MixedHypergraph) -> String {
    serde_json::to_string(&HypergraphJson::from(h)).expect("hypergraph serializes")
}

pub fn hypergraph_from_json(text: &str) -> Result<MixedHypergraph> {
    let j: HypergraphJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    MixedHypergraph::try_from(j)
}

/// `{"spectrum": {"3": 1, "4": 1}, "feasible_set": [3,4], "chi": 3, "chi_bar": 4, "partition_count": 2}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub spectrum: BTreeMap<usize, u64>,
    pub feasible_set: Vec<usize>,
    pub chi: Option<usize>,
    pub chi_bar: Option<usize>,
    pub partition_count: u64,
}

impl SpectrumJson {
    pub fn new(s: &ChromaticSpectrum) -> Result<Self> {
        Ok(SpectrumJson {
            spectrum: s.nonzero().collect(),
            feasible_set: s.feasible_set(),
            chi: s.lower_chromatic_number(),
            chi_bar: s.upper_chromatic_number(),
            partition_count: s.total()?,
        })
    }
}

pub fn spectrum_to_json(s: &ChromaticSpectrum) -> Result<String> {
    Ok(serde_json::to_string(&SpectrumJson::new(s)?).expect("spectrum serializes"))
}

/// `{"partitions": [[[0,1],[2]], ...]}`, classes in canonical order.
pub fn partitions_to_json(parts: &[Partition]) -> String {
    let classes: Vec<Vec<Vec<usize>>> = parts.iter().map(|p| p.classes()).collect();
    serde_json::json!({ "partitions": classes }).to_string()
}
