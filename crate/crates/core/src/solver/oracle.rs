//! Unpruned reference enumeration, used to cross-check the search.

use crate::error::{Error, Result};
use crate::model::{is_proper_coloring, ChromaticSpectrum, MixedHypergraph, Partition};

/// Hard cap for the brute-force oracle (Bell(12) = 4,213,597 partitions).
pub const BRUTE_FORCE_MAX_VERTICES: usize = 12;

/// Iterates all restricted growth strings of length `n` in lexicographic order.
pub struct RestrictedGrowth {
    labels: Vec<u32>,
    // prefix_max[i] = max(labels[..=i])
    prefix_max: Vec<u32>,
    started: bool,
}

impl RestrictedGrowth {
    pub fn new(n: usize) -> Self {
        RestrictedGrowth { labels: vec![0; n], prefix_max: vec![0; n], started: false }
    }

    /// Advances to the next string; `None` when exhausted.
    pub fn next_labels(&mut self) -> Option<&[u32]> {
        let n = self.labels.len();
        if !self.started {
            self.started = true;
            return (n > 0).then_some(&self.labels[..]);
        }
        // Rightmost position (never 0) that can still grow.
        let mut i = n;
        loop {
            if i <= 1 {
                return None;
            }
            i -= 1;
            if self.labels[i] <= self.prefix_max[i - 1] {
                break;
            }
        }
        self.labels[i] += 1;
        self.prefix_max[i] = self.prefix_max[i - 1].max(self.labels[i]);
        for j in i + 1..n {
            self.labels[j] = 0;
            self.prefix_max[j] = self.prefix_max[i];
        }
        Some(&self.labels[..])
    }
}

/// Spectrum by testing every set partition of the vertex set.
pub fn brute_force_spectrum(h: &MixedHypergraph) -> Result<ChromaticSpectrum> {
    let n = h.num_vertices();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::VertexCapExceeded { what: "brute-force oracle", size: n, cap: BRUTE_FORCE_MAX_VERTICES });
    }
    let mut counts = vec![0u64; n];
    let mut it = RestrictedGrowth::new(n);
    while let Some(labels) = it.next_labels() {
        let p = Partition::from_labels(labels);
        if is_proper_coloring(h, &p)? {
            counts[p.num_classes() - 1] += 1;
        }
    }
    Ok(ChromaticSpectrum::from_counts(counts))
}
