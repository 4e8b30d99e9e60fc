//! Computational checks of the structural claims about the product and
//! reduced bi-hypergraph families.

use std::collections::BTreeSet;
use std::fmt;

use crate::constructions::{canonical_colorings, product_bihypergraph, reduced_bihypergraph, DimsSpec};
use crate::error::Result;
use crate::model::{ChromaticSpectrum, MixedHypergraph, Partition, Vertex};

use super::search::{enumerate, EnumerationConfig};

/// The spectrum the product family is expected to have: `r_n` equals the
/// number of times `n` occurs in the dimension vector.
pub fn predicted_spectrum(d: &DimsSpec) -> ChromaticSpectrum {
    ChromaticSpectrum::from_pairs(d.as_slice().iter().map(|&n| (n, 1)))
}

/// Where a reference spectrum came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumSource {
    Enumerated,
    Predicted,
}

impl fmt::Display for SpectrumSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumSource::Enumerated => "enumerated",
            SpectrumSource::Predicted => "predicted",
        })
    }
}

/// Outcome of enumerating a product bi-hypergraph and comparing its strict
/// colorings with the coordinate colorings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductReport {
    pub dims: DimsSpec,
    pub vertices: usize,
    pub edges: usize,
    pub spectrum: ChromaticSpectrum,
    pub predicted: ChromaticSpectrum,
    /// The feasible partitions are exactly the distinct coordinate colorings.
    pub partitions_are_coordinate_colorings: bool,
    /// The dims take a single value, so fewer than two distinct color counts.
    pub outside_hypotheses: bool,
}

impl ProductReport {
    pub fn verified(&self) -> bool {
        self.spectrum == self.predicted && self.partitions_are_coordinate_colorings
    }
}

/// Enumerates `H_{dims}` and checks its strict colorings are exactly the coordinate colorings.
pub fn verify_product_colorings(d: &DimsSpec, cfg: &EnumerationConfig) -> Result<ProductReport> {
    let h = product_bihypergraph(d);
    let cfg = EnumerationConfig { collect_partitions: true, ..cfg.clone() };
    let found = enumerate(&h, &cfg)?;
    let partitions: BTreeSet<Partition> = found.partitions.unwrap_or_default().into_iter().collect();
    let expected: BTreeSet<Partition> = canonical_colorings(d).into_iter().collect();
    Ok(ProductReport {
        dims: d.clone(),
        vertices: h.num_vertices(),
        edges: h.c_edges().len(),
        spectrum: ChromaticSpectrum::from_counts(found.counts),
        predicted: predicted_spectrum(d),
        partitions_are_coordinate_colorings: partitions == expected,
        outside_hypotheses: !d.has_two_distinct_values(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaximalityMode {
    /// Show a coordinate coloring is broken by each added triple.
    Proof,
    /// Re-enumerate the spectrum after each addition.
    Enumerate,
}

impl fmt::Display for MaximalityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MaximalityMode::Proof => "proof",
            MaximalityMode::Enumerate => "enumerate",
        })
    }
}

/// Result of adding every non-edge triple to a product bi-hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalityReport {
    pub dims: DimsSpec,
    pub mode: MaximalityMode,
    pub vertices: usize,
    pub edges: usize,
    /// Number of non-edge triples tried: `C(|X|, 3) - |B|`.
    pub tested_triples: u64,
    /// Triples whose addition left the spectrum unchanged.
    pub failures: Vec<[Vertex; 3]>,
    /// Enumerate mode only: triples whose addition produced a partition the
    /// original hypergraph did not have.
    pub monotonicity_violations: Vec<[Vertex; 3]>,
    /// Enumerate mode only: how many additions left no strict coloring at all.
    pub emptied: u64,
    /// Enumerate mode only: the spectrum of the unmodified product.
    pub base_spectrum: Option<ChromaticSpectrum>,
    pub outside_hypotheses: bool,
}

impl MaximalityReport {
    pub fn verified(&self) -> bool {
        self.failures.is_empty() && self.monotonicity_violations.is_empty()
    }
}

fn for_each_triple(n: usize, mut f: impl FnMut([usize; 3]) -> Result<()>) -> Result<()> {
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                f([a, b, c])?;
            }
        }
    }
    Ok(())
}

/// Checks that no triple can be added to `H_{dims}` without changing its spectrum.
pub fn verify_edge_maximality(d: &DimsSpec, mode: MaximalityMode, cfg: &EnumerationConfig) -> Result<MaximalityReport> {
    let h = product_bihypergraph(d);
    let edges: BTreeSet<&[usize]> = h.c_edges().iter().map(|e| e.as_slice()).collect();
    let n = h.num_vertices();
    let name = |t: [usize; 3]| t.map(|v| h.vertices()[v].clone());
    let mut report = MaximalityReport {
        dims: d.clone(),
        mode,
        vertices: n,
        edges: edges.len(),
        tested_triples: 0,
        failures: Vec::new(),
        monotonicity_violations: Vec::new(),
        emptied: 0,
        base_spectrum: None,
        outside_hypotheses: !d.has_two_distinct_values(),
    };
    match mode {
        MaximalityMode::Proof => {
            // Adding a triple can only remove colorings; the coordinate colorings are
            // the whole spectrum, so it changes iff some coordinate coloring no longer
            // gives the triple exactly two classes.
            let colorings = canonical_colorings(d);
            for_each_triple(n, |t| {
                if edges.contains(&t[..]) {
                    return Ok(());
                }
                report.tested_triples += 1;
                let broken = colorings.iter().any(|p| {
                    let classes: BTreeSet<usize> = t.iter().map(|&v| p.class_of(v)).collect();
                    classes.len() != 2
                });
                if !broken {
                    report.failures.push(name(t));
                }
                Ok(())
            })?;
        }
        MaximalityMode::Enumerate => {
            let cfg = EnumerationConfig { collect_partitions: true, ..cfg.clone() };
            let base = enumerate(&h, &cfg)?;
            let base_parts: BTreeSet<Partition> = base.partitions.unwrap_or_default().into_iter().collect();
            let base_spectrum = ChromaticSpectrum::from_counts(base.counts);
            for_each_triple(n, |t| {
                if edges.contains(&t[..]) {
                    return Ok(());
                }
                report.tested_triples += 1;
                let extended: MixedHypergraph = h.with_bi_edge(t.to_vec())?;
                let after = enumerate(&extended, &cfg)?;
                let spectrum = ChromaticSpectrum::from_counts(after.counts);
                if spectrum == base_spectrum {
                    report.failures.push(name(t));
                }
                if spectrum.is_empty() {
                    report.emptied += 1;
                }
                if after.partitions.unwrap_or_default().iter().any(|p| !base_parts.contains(p)) {
                    report.monotonicity_violations.push(name(t));
                }
                Ok(())
            })?;
            report.base_spectrum = Some(base_spectrum);
        }
    }
    Ok(report)
}

/// Result of comparing the reduced sub-hypergraph against the full product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedEquivalenceReport {
    pub dims: DimsSpec,
    pub reduced_vertices: usize,
    pub reduced_edges: usize,
    pub reduced: ChromaticSpectrum,
    pub reference: ChromaticSpectrum,
    pub reference_source: SpectrumSource,
    pub equal: bool,
}

/// Enumerates `H*` and compares its spectrum with the product's, enumerating
/// the product when it fits under `cfg.max_vertices` and predicting it otherwise.
pub fn verify_reduced_equivalence(d: &DimsSpec, cfg: &EnumerationConfig) -> Result<ReducedEquivalenceReport> {
    d.check_reduced()?;
    let cfg = EnumerationConfig { collect_partitions: false, ..cfg.clone() };
    let reduced_h = reduced_bihypergraph(d)?;
    let reduced = ChromaticSpectrum::from_counts(enumerate(&reduced_h, &cfg)?.counts);
    let fits = d.box_size().is_some_and(|size| size <= cfg.max_vertices);
    let (reference, reference_source) = if fits {
        let full = product_bihypergraph(d);
        (ChromaticSpectrum::from_counts(enumerate(&full, &cfg)?.counts), SpectrumSource::Enumerated)
    } else {
        (predicted_spectrum(d), SpectrumSource::Predicted)
    };
    Ok(ReducedEquivalenceReport {
        dims: d.clone(),
        reduced_vertices: reduced_h.num_vertices(),
        reduced_edges: reduced_h.c_edges().len(),
        equal: reduced == reference,
        reduced,
        reference,
        reference_source,
    })
}
