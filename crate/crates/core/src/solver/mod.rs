//! Exact strict-coloring enumeration, spectra, and the verifiers built on them.

mod oracle;
mod search;
mod verify;

pub use oracle::{brute_force_spectrum, RestrictedGrowth, BRUTE_FORCE_MAX_VERTICES};
pub use search::{enumerate, Enumeration, EnumerationConfig, MAX_SEARCH_VERTICES};
pub use verify::{
    predicted_spectrum, verify_edge_maximality, verify_product_colorings, verify_reduced_equivalence, MaximalityMode,
    MaximalityReport, ProductReport, ReducedEquivalenceReport, SpectrumSource,
};

use crate::error::{Error, Result};
use crate::model::{ChromaticSpectrum, MixedHypergraph, Partition};

/// All feasible partitions of `h`, canonical and in ascending restricted-growth order.
pub fn enumerate_feasible_partitions(h: &MixedHypergraph, cfg: &EnumerationConfig) -> Result<Vec<Partition>> {
    let cfg = EnumerationConfig { collect_partitions: true, ..cfg.clone() };
    Ok(enumerate(h, &cfg)?.partitions.unwrap_or_default())
}

/// The chromatic spectrum of `h`.
pub fn chromatic_spectrum(h: &MixedHypergraph, cfg: &EnumerationConfig) -> Result<ChromaticSpectrum> {
    let cfg = EnumerationConfig { collect_partitions: false, ..cfg.clone() };
    Ok(ChromaticSpectrum::from_counts(enumerate(h, &cfg)?.counts))
}

/// The feasible set, ascending.
pub fn feasible_set(h: &MixedHypergraph, cfg: &EnumerationConfig) -> Result<Vec<usize>> {
    Ok(chromatic_spectrum(h, cfg)?.feasible_set())
}

/// Lower and upper chromatic numbers; fails when no strict coloring exists.
pub fn chromatic_numbers(h: &MixedHypergraph, cfg: &EnumerationConfig) -> Result<(usize, usize)> {
    let spectrum = chromatic_spectrum(h, cfg)?;
    match (spectrum.lower_chromatic_number(), spectrum.upper_chromatic_number()) {
        (Some(lo), Some(hi)) => Ok((lo, hi)),
        _ => Err(Error::NoStrictColoring),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{product_bihypergraph, DimsSpec};

    fn product(dims: &[usize]) -> MixedHypergraph {
        product_bihypergraph(&DimsSpec::product(dims.to_vec()).unwrap())
    }

    #[test]
    fn spectrum_of_h_4_3() {
        let h = product(&[4, 3]);
        let cfg = EnumerationConfig::default();
        assert_eq!(chromatic_spectrum(&h, &cfg).unwrap().counts(), &[0, 0, 1, 1]);
        assert_eq!(feasible_set(&h, &cfg).unwrap(), vec![3, 4]);
        assert_eq!(chromatic_numbers(&h, &cfg).unwrap(), (3, 4));
        assert_eq!(enumerate_feasible_partitions(&h, &cfg).unwrap().len(), 2);
    }

    #[test]
    fn edgeless_feasible_set_is_everything() {
        let h = MixedHypergraph::on_indices(5, vec![], vec![]).unwrap();
        assert_eq!(feasible_set(&h, &EnumerationConfig::default()).unwrap(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn uncolorable_reports_no_strict_coloring() {
        let h = MixedHypergraph::on_indices(2, vec![vec![0, 1]], vec![vec![0, 1]]).unwrap();
        let cfg = EnumerationConfig::default();
        assert!(chromatic_spectrum(&h, &cfg).unwrap().is_empty());
        assert_eq!(chromatic_numbers(&h, &cfg), Err(Error::NoStrictColoring));
    }
}
