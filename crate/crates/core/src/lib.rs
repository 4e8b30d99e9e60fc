//! Exact coloring of mixed hypergraphs.
//!
//! Builds the 3-uniform product bi-hypergraphs `H_{n1..ns}` and their reduced
//! sub-hypergraphs, enumerates all strict colorings with a pruned
//! backtracking search, and computes feasible sets and chromatic spectra.
//!
//! ```
//! use bihyper::constructions::{product_bihypergraph, DimsSpec};
//! use bihyper::solver::{chromatic_spectrum, EnumerationConfig};
//!
//! let h = product_bihypergraph(&DimsSpec::product(vec![4, 3]).unwrap());
//! let r = chromatic_spectrum(&h, &EnumerationConfig::default()).unwrap();
//! assert_eq!(r.feasible_set(), vec![3, 4]);
//! ```

pub mod constructions;
pub mod error;
pub mod format;
pub mod iso;
pub mod model;
pub mod solver;

pub use error::{Error, Result};
pub use model::{
    derived_subhypergraph, is_proper_coloring, is_strict_k_coloring, ChromaticSpectrum, Edge, MixedHypergraph,
    Partition, Vertex,
};
