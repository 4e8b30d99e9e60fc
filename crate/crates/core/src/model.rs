//! Mixed hypergraphs, set partitions and chromatic spectra.
//!
//! A mixed hypergraph is a vertex set together with two edge families. Under a
//! proper coloring every C-edge contains two vertices of a common color and
//! every D-edge contains two vertices of distinct colors. When both families
//! coincide the edges are called bi-edges and the hypergraph a bi-hypergraph.
//!
//! Edges reference vertices by dense index; vertices carry their coordinate
//! tuples only as labels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex label: an integer coordinate tuple, or a 1-tuple for plain indexed vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(Vec<usize>);

impl Vertex {
    pub fn new(coords: Vec<usize>) -> Self {
        Vertex(coords)
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<usize>> for Vertex {
    fn from(coords: Vec<usize>) -> Self {
        Vertex(coords)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A sorted, duplicate-free list of vertex indices.
pub type Edge = Vec<usize>;

fn normalize_edges(edges: Vec<Vec<usize>>, n: usize) -> Result<Vec<Edge>> {
    let mut out = BTreeSet::new();
    for edge in edges {
        if let Some(&bad) = edge.iter().find(|&&v| v >= n) {
            return Err(Error::VertexIndexOutOfRange { index: bad, len: n });
        }
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertexInEdge { edge });
        }
        if sorted.len() < 2 {
            return Err(Error::EdgeTooSmall { edge });
        }
        out.insert(sorted);
    }
    Ok(out.into_iter().collect())
}

/// A mixed hypergraph `(X, C, D)`.
///
/// Edge families are deduplicated and kept in ascending lexicographic order,
/// so two hypergraphs built from the same edge sets compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedHypergraph {
    dims: Option<Vec<usize>>,
    vertices: Vec<Vertex>,
    c_edges: Vec<Edge>,
    d_edges: Vec<Edge>,
}

impl MixedHypergraph {
    /// Builds a hypergraph, validating vertices and edges.
    pub fn new(vertices: Vec<Vertex>, c_edges: Vec<Vec<usize>>, d_edges: Vec<Vec<usize>>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let width = vertices[0].len();
        let mut seen = BTreeSet::new();
        for (index, v) in vertices.iter().enumerate() {
            if v.len() != width {
                return Err(Error::CoordinateLength { index, expected: width, found: v.len() });
            }
            if v.is_empty() || v.coords().contains(&0) {
                return Err(Error::CoordinateOutOfRange { index });
            }
            if !seen.insert(v) {
                return Err(Error::DuplicateVertex { index });
            }
        }
        let n = vertices.len();
        Ok(MixedHypergraph {
            dims: None,
            c_edges: normalize_edges(c_edges, n)?,
            d_edges: normalize_edges(d_edges, n)?,
            vertices,
        })
    }

    /// A hypergraph on vertices labelled `(1)..(n)`.
    pub fn on_indices(n: usize, c_edges: Vec<Vec<usize>>, d_edges: Vec<Vec<usize>>) -> Result<Self> {
        let vertices = (1..=n).map(|i| Vertex::new(vec![i])).collect();
        Self::new(vertices, c_edges, d_edges)
    }

    /// A bi-hypergraph: the same family is used for C- and D-edges.
    pub fn bi(vertices: Vec<Vertex>, bi_edges: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(vertices, bi_edges.clone(), bi_edges)
    }

    /// Attaches a dimension box; every coordinate must satisfy `1 <= x_j <= dims[j]`.
    pub fn with_dims(mut self, dims: Vec<usize>) -> Result<Self> {
        for (index, v) in self.vertices.iter().enumerate() {
            if v.len() != dims.len() {
                return Err(Error::CoordinateLength { index, expected: dims.len(), found: v.len() });
            }
            if v.coords().iter().zip(&dims).any(|(&x, &n)| x == 0 || x > n) {
                return Err(Error::CoordinateOutOfRange { index });
            }
        }
        self.dims = Some(dims);
        Ok(self)
    }

    /// Internal constructor for builders that already produce sorted, valid edges.
    pub(crate) fn from_parts_unchecked(
        dims: Option<Vec<usize>>,
        vertices: Vec<Vertex>,
        c_edges: Vec<Edge>,
        d_edges: Vec<Edge>,
    ) -> Self {
        debug_assert!(c_edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(d_edges.windows(2).all(|w| w[0] < w[1]));
        MixedHypergraph { dims, vertices, c_edges, d_edges }
    }

    pub fn dims(&self) -> Option<&[usize]> {
        self.dims.as_deref()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn c_edges(&self) -> &[Edge] {
        &self.c_edges
    }

    pub fn d_edges(&self) -> &[Edge] {
        &self.d_edges
    }

    /// True when the C- and D-families coincide.
    pub fn is_bi_hypergraph(&self) -> bool {
        self.c_edges == self.d_edges
    }

    /// The bi-edges when this is a bi-hypergraph.
    pub fn bi_edges(&self) -> Option<&[Edge]> {
        self.is_bi_hypergraph().then_some(self.c_edges.as_slice())
    }

    /// Index of a vertex by its coordinates.
    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }

    /// Returns a copy with one more bi-edge (added to both families).
    pub fn with_bi_edge(&self, edge: Vec<usize>) -> Result<Self> {
        let mut c: Vec<Vec<usize>> = self.c_edges.clone();
        let mut d: Vec<Vec<usize>> = self.d_edges.clone();
        c.push(edge.clone());
        d.push(edge);
        let n = self.vertices.len();
        Ok(MixedHypergraph {
            dims: self.dims.clone(),
            vertices: self.vertices.clone(),
            c_edges: normalize_edges(c, n)?,
            d_edges: normalize_edges(d, n)?,
        })
    }

    /// Number of C- and D-edges containing each vertex.
    pub fn degrees(&self) -> Vec<(usize, usize)> {
        let mut deg = vec![(0, 0); self.vertices.len()];
        for e in &self.c_edges {
            for &v in e {
                deg[v].0 += 1;
            }
        }
        for e in &self.d_edges {
            for &v in e {
                deg[v].1 += 1;
            }
        }
        deg
    }

    /// True when every edge of either family has exactly `r` vertices.
    pub fn is_uniform(&self, r: usize) -> bool {
        self.c_edges.iter().chain(&self.d_edges).all(|e| e.len() == r)
    }
}

/// The derived sub-hypergraph `H[X']`: vertices in `subset` (reindexed in
/// ascending original order) and exactly the edges contained in it.
pub fn derived_subhypergraph(h: &MixedHypergraph, subset: &[usize]) -> Result<MixedHypergraph> {
    let n = h.num_vertices();
    let mut keep: Vec<usize> = subset.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if let Some(&bad) = keep.iter().find(|&&v| v >= n) {
        return Err(Error::VertexIndexOutOfRange { index: bad, len: n });
    }
    if keep.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    let mut new_index = vec![usize::MAX; n];
    for (i, &v) in keep.iter().enumerate() {
        new_index[v] = i;
    }
    let restrict = |edges: &[Edge]| -> Vec<Edge> {
        edges
            .iter()
            .filter(|e| e.iter().all(|&v| new_index[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| new_index[v]).collect())
            .collect()
    };
    Ok(MixedHypergraph {
        dims: h.dims.clone(),
        vertices: keep.iter().map(|&v| h.vertices[v].clone()).collect(),
        c_edges: restrict(&h.c_edges),
        d_edges: restrict(&h.d_edges),
    })
}

/// A set partition of `0..n`, stored as its restricted growth string.
///
/// Class labels are assigned in order of each class's smallest member, so
/// two partitions are equal exactly when they group the vertices the same
/// way. The derived ordering is lexicographic on that string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    labels: Vec<u32>,
    classes: usize,
}

impl Partition {
    /// Canonicalizes an arbitrary labelling (`labels[v]` is the color of vertex `v`).
    pub fn from_labels<T: Copy + Ord>(labels: &[T]) -> Self {
        let mut map: BTreeMap<T, u32> = BTreeMap::new();
        let labels: Vec<u32> = labels
            .iter()
            .map(|l| {
                let next = map.len() as u32;
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Partition { classes: map.len(), labels }
    }

    /// Builds a partition of `0..n` from explicit classes.
    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (ci, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::InvalidPartition(format!("class {ci} is empty")));
            }
            for &v in class {
                if v >= n {
                    return Err(Error::VertexIndexOutOfRange { index: v, len: n });
                }
                if owner[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
                }
                owner[v] = ci;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
        }
        Ok(Self::from_labels(&owner))
    }

    /// The restricted growth string.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.classes
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.labels[v] as usize
    }

    /// Classes in canonical order, each sorted ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.classes];
        for (v, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(v);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes = self.classes();
        write!(f, "{{")?;
        for (i, c) in classes.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            let items: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", items.join(" "))?;
        }
        write!(f, "}}")
    }
}

fn edge_has_common(p: &Partition, e: &[usize]) -> bool {
    e.iter().enumerate().any(|(i, &a)| e[i + 1..].iter().any(|&b| p.class_of(a) == p.class_of(b)))
}

fn edge_has_distinct(p: &Partition, e: &[usize]) -> bool {
    let first = p.class_of(e[0]);
    e[1..].iter().any(|&v| p.class_of(v) != first)
}

/// Whether `p` is a proper coloring: every C-edge has two vertices in a
/// common class and every D-edge has two vertices in distinct classes.
pub fn is_proper_coloring(h: &MixedHypergraph, p: &Partition) -> Result<bool> {
    if p.len() != h.num_vertices() {
        return Err(Error::PartitionMismatch { expected: h.num_vertices(), found: p.len() });
    }
    Ok(h.c_edges.iter().all(|e| edge_has_common(p, e)) && h.d_edges.iter().all(|e| edge_has_distinct(p, e)))
}

/// Proper and using exactly `k` colors.
pub fn is_strict_k_coloring(h: &MixedHypergraph, p: &Partition, k: usize) -> Result<bool> {
    if k < 1 {
        return Err(Error::InvalidClassCount);
    }
    Ok(is_proper_coloring(h, p)? && p.num_classes() == k)
}

/// The chromatic spectrum `(r_1, ..., r_max)`: `r_k` counts feasible
/// partitions with exactly `k` classes. Empty when nothing is colorable.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ChromaticSpectrum {
    counts: Vec<u64>,
}

impl ChromaticSpectrum {
    /// `counts[k-1] = r_k`; trailing zeros are dropped.
    pub fn from_counts(mut counts: Vec<u64>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        ChromaticSpectrum { counts }
    }

    /// Builds a spectrum from `(k, r_k)` pairs; repeated `k` accumulate.
    pub fn from_pairs<I: IntoIterator<Item = (usize, u64)>>(pairs: I) -> Self {
        let mut counts = Vec::new();
        for (k, r) in pairs {
            assert!(k >= 1, "class counts start at 1");
            if counts.len() < k {
                counts.resize(k, 0);
            }
            counts[k - 1] += r;
        }
        Self::from_counts(counts)
    }

    /// The dense vector `(r_1, ..., r_max)`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn r(&self, k: usize) -> u64 {
        if k == 0 {
            0
        } else {
            self.counts.get(k - 1).copied().unwrap_or(0)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// The feasible set `{k : r_k > 0}`, ascending.
    pub fn feasible_set(&self) -> Vec<usize> {
        self.nonzero().map(|(k, _)| k).collect()
    }

    /// Nonzero entries as `(k, r_k)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().enumerate().filter(|(_, &r)| r > 0).map(|(i, &r)| (i + 1, r))
    }

    pub fn lower_chromatic_number(&self) -> Option<usize> {
        self.nonzero().next().map(|(k, _)| k)
    }

    pub fn upper_chromatic_number(&self) -> Option<usize> {
        (!self.counts.is_empty()).then_some(self.counts.len())
    }

    /// Total number of feasible partitions.
    pub fn total(&self) -> Result<u64> {
        self.counts.iter().try_fold(0u64, |acc, &r| acc.checked_add(r).ok_or(Error::CountOverflow))
    }
}

impl fmt::Display for ChromaticSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.nonzero().map(|(k, r)| format!("{k}:{r}")).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}
