//! Builders for the 3-uniform product bi-hypergraphs `H_{n1..ns}`, their
//! coordinate colorings, and the reduced sub-hypergraphs `H*`.
//!
//! The product family lives on the box `[n1] x ... x [ns]`; a triple of
//! vertices is a bi-edge when every coordinate takes exactly two distinct
//! values across the triple. Vertices are indexed in lexicographic order of
//! their coordinate tuples.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{Edge, MixedHypergraph, Partition, Vertex};

/// An ordered dimension vector `(n_1, ..., n_s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DimsSpec {
    dims: Vec<usize>,
}

impl DimsSpec {
    /// Dimensions for the product family: `s >= 2`, non-increasing, every entry `>= 3`.
    pub fn product(dims: Vec<usize>) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidDims { dims: dims.clone(), reason: reason.to_string() };
        if dims.len() < 2 {
            return Err(invalid("need at least two dimensions"));
        }
        if dims.iter().any(|&n| n < 3) {
            return Err(invalid("every dimension must be at least 3"));
        }
        if dims.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid("dimensions must be non-increasing"));
        }
        Ok(DimsSpec { dims })
    }

    /// Dimensions for the reduced family: `n_1 >= n_2 > ... > n_s > 3`.
    pub fn reduced(dims: Vec<usize>) -> Result<Self> {
        let spec = Self::product(dims)?;
        spec.check_reduced()?;
        Ok(spec)
    }

    /// Checks the reduced-family constraints on an existing product spec.
    pub fn check_reduced(&self) -> Result<()> {
        let invalid = |reason: &str| Error::InvalidDims { dims: self.dims.clone(), reason: reason.to_string() };
        if self.dims.iter().any(|&n| n <= 3) {
            return Err(invalid("reduced family needs every dimension above 3"));
        }
        if self.dims[1..].windows(2).any(|w| w[0] <= w[1]) {
            return Err(invalid("reduced family needs n_2 > n_3 > ... > n_s"));
        }
        Ok(())
    }

    pub fn is_reduced_valid(&self) -> bool {
        self.check_reduced().is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.dims
    }

    /// Number of dimensions `s`.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Size of the full box, `None` on overflow.
    pub fn box_size(&self) -> Option<usize> {
        self.dims.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n))
    }

    /// `2 n_1 + n_2 + s - 2`, the size of the reduced vertex set.
    pub fn reduced_size(&self) -> usize {
        2 * self.dims[0] + self.dims[1] + self.dims.len() - 2
    }

    /// True when the dims take at least two distinct values.
    pub fn has_two_distinct_values(&self) -> bool {
        self.dims.first() != self.dims.last()
    }
}

impl fmt::Display for DimsSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.dims.iter().map(|n| n.to_string()).collect();
        write!(f, "({})", items.join(","))
    }
}

/// Requested `(color count, multiplicity)` pairs for a spectrum instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumTarget {
    entries: Vec<(usize, usize)>,
}

impl SpectrumTarget {
    /// Validates and sorts by color count descending.
    pub fn new(mut entries: Vec<(usize, usize)>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::InvalidTarget("need at least two color counts".into()));
        }
        if let Some(&(n, _)) = entries.iter().find(|(n, _)| *n < 3) {
            return Err(Error::InvalidTarget(format!("color count {n} is below 3")));
        }
        if let Some(&(n, _)) = entries.iter().find(|(_, s)| *s == 0) {
            return Err(Error::InvalidTarget(format!("multiplicity for {n} must be positive")));
        }
        entries.sort_by_key(|e| std::cmp::Reverse(e.0));
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidTarget("color counts must be distinct".into()));
        }
        Ok(SpectrumTarget { entries })
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    /// Each color count repeated by its multiplicity, descending.
    pub fn dims(&self) -> Result<DimsSpec> {
        let dims = self.entries.iter().flat_map(|&(n, s)| std::iter::repeat_n(n, s)).collect();
        DimsSpec::product(dims)
    }
}

/// The bi-edge predicate on coordinate tuples: each coordinate takes exactly two values.
pub fn is_product_bi_edge(a: &[usize], b: &[usize], c: &[usize]) -> bool {
    a.iter().zip(b).zip(c).all(|((&x, &y), &z)| {
        let distinct = 1 + usize::from(y != x) + usize::from(z != x && z != y);
        distinct == 2
    })
}

/// All tuples of the box in lexicographic order.
pub fn box_vertices(d: &DimsSpec) -> Vec<Vertex> {
    let dims = d.as_slice();
    let total = d.box_size().expect("box size overflows usize");
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![1usize; dims.len()];
    loop {
        out.push(Vertex::new(cur.clone()));
        let mut j = dims.len();
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if cur[j] < dims[j] {
                cur[j] += 1;
                break;
            }
            cur[j] = 1;
        }
    }
}

fn box_index(dims: &[usize], coords: &[usize]) -> usize {
    coords.iter().zip(dims).fold(0, |acc, (&x, &n)| acc * n + (x - 1))
}

/// The product bi-hypergraph `H_{n1..ns}` on the full box.
pub fn product_bihypergraph(d: &DimsSpec) -> MixedHypergraph {
    let dims = d.as_slice();
    let vertices = box_vertices(d);
    let n = vertices.len();
    let mut edges: Vec<Edge> = Vec::new();
    // For each pair x < y, the third vertex is forced per coordinate: where x and y
    // agree it must differ, where they differ it must repeat one of them.
    let mut choices: Vec<Vec<usize>> = vec![Vec::new(); dims.len()];
    for x in 0..n {
        let cx = vertices[x].coords();
        for (y, vy) in vertices.iter().enumerate().skip(x + 1) {
            let cy = vy.coords();
            for (j, opts) in choices.iter_mut().enumerate() {
                opts.clear();
                if cx[j] == cy[j] {
                    opts.extend((1..=dims[j]).filter(|&v| v != cx[j]));
                } else {
                    opts.push(cx[j]);
                    opts.push(cy[j]);
                }
            }
            let mut pick = vec![0usize; dims.len()];
            let mut cz = vec![0usize; dims.len()];
            'odometer: loop {
                for j in 0..dims.len() {
                    cz[j] = choices[j][pick[j]];
                }
                let z = box_index(dims, &cz);
                if z > y {
                    edges.push(vec![x, y, z]);
                }
                let mut j = dims.len();
                loop {
                    if j == 0 {
                        break 'odometer;
                    }
                    j -= 1;
                    pick[j] += 1;
                    if pick[j] < choices[j].len() {
                        break;
                    }
                    pick[j] = 0;
                }
            }
        }
    }
    edges.sort_unstable();
    MixedHypergraph::from_parts_unchecked(Some(dims.to_vec()), vertices, edges.clone(), edges)
}

/// The partition of vertices of `h` by coordinate `axis` (1-based).
pub fn coordinate_partition(h: &MixedHypergraph, axis: usize) -> Result<Partition> {
    let width = h.vertices()[0].len();
    if axis == 0 || axis > width {
        return Err(Error::AxisOutOfRange { axis, dims: width });
    }
    let labels: Vec<usize> = h.vertices().iter().map(|v| v.coords()[axis - 1]).collect();
    Ok(Partition::from_labels(&labels))
}

/// The coordinate coloring `c_i`: class `j` holds every vertex whose `axis`-th coordinate is `j`.
pub fn canonical_coloring(d: &DimsSpec, axis: usize) -> Result<Partition> {
    if axis == 0 || axis > d.len() {
        return Err(Error::AxisOutOfRange { axis, dims: d.len() });
    }
    let labels: Vec<usize> = box_vertices(d).iter().map(|v| v.coords()[axis - 1]).collect();
    Ok(Partition::from_labels(&labels))
}

/// All coordinate colorings of the product, one per axis, with duplicates kept.
pub fn canonical_colorings(d: &DimsSpec) -> Vec<Partition> {
    (1..=d.len()).map(|i| canonical_coloring(d, i).expect("axis in range")).collect()
}

/// Builds the product instance whose multiplicities realize `target`.
pub fn spectrum_instance(target: &SpectrumTarget) -> Result<(DimsSpec, MixedHypergraph)> {
    let dims = target.dims()?;
    let h = product_bihypergraph(&dims);
    Ok((dims, h))
}

/// The reduced vertex set `X*`, sorted lexicographically.
///
/// Built as the union of three kinds of blocks:
/// - the top block: `(n_2+j, 1, ..., 1)` and `(n_2+j, n_2, ..., n_s)` for `j` in `1..=n_1-n_2`;
/// - for `i` in `2..s`, with `v = n_{i+1}+j`: `(v, 1, ..., 1)` and `(v, ..., v, n_{i+1}, ..., n_s)`
///   (v in coordinates `1..=i`) for `j >= 1`, and the inflexion-style vertex
///   `(1, v, ..., v, 1, ..., 1)` (v in coordinates `2..=i`) for `j >= 0`;
/// - the base block: `(i, k, ..., k)` for `i, k` in `1..=3`, and `(1, k, ..., k)`,
///   `(k, 1, ..., 1)`, `(k, ..., k)` for `k` in `4..=n_s`.
pub fn reduced_vertex_set(d: &DimsSpec) -> Result<Vec<Vertex>> {
    d.check_reduced()?;
    let n = d.as_slice();
    let s = n.len();
    let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut add = |v: Vec<usize>| {
        let fresh = set.insert(v);
        debug_assert!(fresh, "reduced blocks overlap");
    };

    let ones_after = |first: usize| {
        let mut v = vec![1; s];
        v[0] = first;
        v
    };

    for j in 1..=n[0] - n[1] {
        add(ones_after(n[1] + j));
        let mut v = n.to_vec();
        v[0] = n[1] + j;
        add(v);
    }

    // Blocks i = 2..=s-1 (1-based), using n_i = n[i-1], n_{i+1} = n[i].
    for i in 2..s {
        let (hi, lo) = (n[i - 1], n[i]);
        for j in 0..=hi - lo {
            let v = lo + j;
            if j >= 1 {
                add(ones_after(v));
                let mut top = n.to_vec();
                top[..i].fill(v);
                add(top);
            }
            let mut inflexion = vec![1; s];
            inflexion[1..i].fill(v);
            add(inflexion);
        }
    }

    let ns = n[s - 1];
    for i in 1..=3 {
        for k in 1..=3 {
            let mut v = vec![k; s];
            v[0] = i;
            add(v);
        }
    }
    for k in 4..=ns {
        let mut v = vec![k; s];
        v[0] = 1;
        add(v);
        add(ones_after(k));
        add(vec![k; s]);
    }

    debug_assert_eq!(set.len(), d.reduced_size());
    Ok(set.into_iter().map(Vertex::new).collect())
}

/// All 3-subsets of `vertices` that satisfy the product bi-edge predicate.
fn bi_edges_among(vertices: &[Vertex]) -> Vec<Edge> {
    let n = vertices.len();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if is_product_bi_edge(vertices[a].coords(), vertices[b].coords(), vertices[c].coords()) {
                    edges.push(vec![a, b, c]);
                }
            }
        }
    }
    edges
}

/// The reduced bi-hypergraph `H* = H[X*]`, built directly on `X*`.
pub fn reduced_bihypergraph(d: &DimsSpec) -> Result<MixedHypergraph> {
    let vertices = reduced_vertex_set(d)?;
    let edges = bi_edges_among(&vertices);
    Ok(MixedHypergraph::from_parts_unchecked(Some(d.as_slice().to_vec()), vertices, edges.clone(), edges))
}

/// The coordinate coloring `c_i^{s*}` restricted to `X*`.
pub fn reduced_canonical_coloring(d: &DimsSpec, axis: usize) -> Result<Partition> {
    let h = reduced_bihypergraph(d)?;
    coordinate_partition(&h, axis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{derived_subhypergraph, is_strict_k_coloring};

    fn v(c: &[usize]) -> Vertex {
        Vertex::new(c.to_vec())
    }

    fn exhaustive_edge_count(d: &DimsSpec) -> usize {
        bi_edges_among(&box_vertices(d)).len()
    }

    #[test]
    fn dims_validation() {
        assert!(DimsSpec::product(vec![4, 3]).is_ok());
        assert!(DimsSpec::product(vec![3, 3]).is_ok());
        assert!(DimsSpec::product(vec![4]).is_err());
        assert!(DimsSpec::product(vec![3, 4]).is_err());
        assert!(DimsSpec::product(vec![4, 2]).is_err());
        assert!(DimsSpec::reduced(vec![5, 4]).is_ok());
        assert!(DimsSpec::reduced(vec![5, 5]).is_ok());
        assert!(DimsSpec::reduced(vec![6, 6, 4]).is_ok());
        assert!(DimsSpec::reduced(vec![4, 4, 3]).is_err());
        assert!(DimsSpec::reduced(vec![6, 5, 5]).is_err());
        assert!(DimsSpec::reduced(vec![4, 3]).is_err());
    }

    #[test]
    fn product_edge_counts_match_exhaustive_scan() {
        for dims in [vec![3, 3], vec![4, 3], vec![4, 4], vec![5, 3], vec![3, 3, 3], vec![4, 3, 3]] {
            let d = DimsSpec::product(dims).unwrap();
            let h = product_bihypergraph(&d);
            let bi = bi_edges_among(h.vertices());
            assert_eq!(h.c_edges(), bi.as_slice(), "dims {d}");
            assert!(h.is_bi_hypergraph());
            assert!(h.is_uniform(3));
        }
        let d33 = DimsSpec::product(vec![3, 3]).unwrap();
        assert_eq!(exhaustive_edge_count(&d33), 36);
        assert_eq!(product_bihypergraph(&d33).c_edges().len(), 36);
        let d43 = DimsSpec::product(vec![4, 3]).unwrap();
        assert_eq!(product_bihypergraph(&d43).num_vertices(), 12);
        assert_eq!(product_bihypergraph(&d43).c_edges().len(), 72);
    }

    #[test]
    fn product_edge_count_closed_form() {
        // Ordered triples with two values per coordinate, minus those with a repeated vertex.
        for dims in [vec![3, 3], vec![4, 3], vec![5, 4, 3], vec![4, 4, 4]] {
            let d = DimsSpec::product(dims.clone()).unwrap();
            let all: usize = dims.iter().map(|&n| 3 * n * (n - 1)).product();
            let degenerate: usize = 3 * dims.iter().map(|&n| n * (n - 1)).product::<usize>();
            assert_eq!(product_bihypergraph(&d).c_edges().len(), (all - degenerate) / 6, "dims {dims:?}");
        }
    }

    #[test]
    fn named_edge_of_h_n1_n2() {
        let h = product_bihypergraph(&DimsSpec::product(vec![5, 4]).unwrap());
        let mut e: Vec<usize> = [v(&[1, 1]), v(&[1, 2]), v(&[2, 1])].iter().map(|x| h.index_of(x).unwrap()).collect();
        e.sort_unstable();
        assert!(h.c_edges().binary_search(&e).is_ok());
    }

    #[test]
    fn canonical_colorings_are_strict() {
        let d = DimsSpec::product(vec![4, 3]).unwrap();
        let h = product_bihypergraph(&d);
        let c1 = canonical_coloring(&d, 1).unwrap();
        let c2 = canonical_coloring(&d, 2).unwrap();
        assert_eq!(c1.num_classes(), 4);
        assert!(c1.classes().iter().all(|c| c.len() == 3));
        assert_eq!(c2.num_classes(), 3);
        assert!(c2.classes().iter().all(|c| c.len() == 4));
        assert!(is_strict_k_coloring(&h, &c1, 4).unwrap());
        assert!(!is_strict_k_coloring(&h, &c1, 3).unwrap());
        assert!(is_strict_k_coloring(&h, &c2, 3).unwrap());
        assert_eq!(canonical_coloring(&d, 3), Err(Error::AxisOutOfRange { axis: 3, dims: 2 }));
        assert_eq!(canonical_coloring(&d, 0), Err(Error::AxisOutOfRange { axis: 0, dims: 2 }));
        assert_eq!(coordinate_partition(&h, 1).unwrap(), c1);

        let d33 = DimsSpec::product(vec![3, 3]).unwrap();
        assert_ne!(canonical_coloring(&d33, 1).unwrap(), canonical_coloring(&d33, 2).unwrap());
    }

    #[test]
    fn spectrum_target_expands_to_dims() {
        let t = SpectrumTarget::new(vec![(3, 2), (4, 1)]).unwrap();
        assert_eq!(t.entries(), &[(4, 1), (3, 2)]);
        let (d, h) = spectrum_instance(&t).unwrap();
        assert_eq!(d.as_slice(), &[4, 3, 3]);
        assert_eq!(h.num_vertices(), 36);

        let (d, _) = spectrum_instance(&SpectrumTarget::new(vec![(4, 1), (3, 1)]).unwrap()).unwrap();
        assert_eq!(d.as_slice(), &[4, 3]);
        let t = SpectrumTarget::new(vec![(5, 2), (4, 1)]).unwrap();
        assert_eq!(t.dims().unwrap().as_slice(), &[5, 5, 4]);
        assert_eq!(t.dims().unwrap().box_size(), Some(100));

        assert!(SpectrumTarget::new(vec![(4, 1)]).is_err());
        assert!(SpectrumTarget::new(vec![(4, 1), (4, 2)]).is_err());
        assert!(SpectrumTarget::new(vec![(4, 1), (2, 2)]).is_err());
        assert!(SpectrumTarget::new(vec![(4, 0), (3, 2)]).is_err());
    }

    #[test]
    fn reduced_vertex_set_for_5_4() {
        let d = DimsSpec::reduced(vec![5, 4]).unwrap();
        let xs = reduced_vertex_set(&d).unwrap();
        assert_eq!(xs.len(), 14);
        let mut expected: Vec<Vertex> = vec![v(&[5, 1]), v(&[5, 4]), v(&[1, 4]), v(&[4, 1]), v(&[4, 4])];
        for i in 1..=3 {
            for k in 1..=3 {
                expected.push(v(&[i, k]));
            }
        }
        expected.sort();
        assert_eq!(xs, expected);
    }

    #[test]
    fn reduced_vertex_set_for_6_5_4() {
        let d = DimsSpec::reduced(vec![6, 5, 4]).unwrap();
        let xs = reduced_vertex_set(&d).unwrap();
        assert_eq!(xs.len(), 18);
        // Vertices named in the case analysis for s = 3.
        for named in [[1, 4, 1], [1, 5, 1], [5, 5, 4], [5, 1, 1], [6, 5, 4], [6, 1, 1], [2, 2, 2], [4, 4, 4]] {
            assert!(xs.contains(&v(&named)), "missing {named:?}");
        }
        assert!(reduced_vertex_set(&DimsSpec::product(vec![4, 4, 3]).unwrap()).is_err());
    }

    #[test]
    fn reduced_size_formula_small_sweep() {
        for n1 in 4..=7 {
            for n2 in 4..=n1 {
                let d = DimsSpec::reduced(vec![n1, n2]).unwrap();
                assert_eq!(reduced_vertex_set(&d).unwrap().len(), 2 * n1 + n2);
            }
        }
    }

    #[test]
    fn reduced_matches_derived_subhypergraph() {
        for dims in [vec![4, 4], vec![5, 4], vec![6, 4], vec![6, 5, 4]] {
            let d = DimsSpec::reduced(dims).unwrap();
            let full = product_bihypergraph(&d);
            let xs = reduced_vertex_set(&d).unwrap();
            let idx: Vec<usize> = xs.iter().map(|x| full.index_of(x).unwrap()).collect();
            let derived = derived_subhypergraph(&full, &idx).unwrap();
            assert_eq!(derived, reduced_bihypergraph(&d).unwrap(), "dims {d}");
        }
    }

    #[test]
    fn reduced_contains_named_triple() {
        let d = DimsSpec::reduced(vec![5, 4]).unwrap();
        let h = reduced_bihypergraph(&d).unwrap();
        assert_eq!(h.num_vertices(), 14);
        let mut e: Vec<usize> = [v(&[1, 1]), v(&[1, 2]), v(&[2, 1])].iter().map(|x| h.index_of(x).unwrap()).collect();
        e.sort_unstable();
        assert!(h.c_edges().binary_search(&e).is_ok());
    }

    #[test]
    fn reduced_canonical_colorings_are_strict() {
        for dims in [vec![5, 4], vec![5, 5], vec![6, 5, 4], vec![7, 6, 5, 4]] {
            let d = DimsSpec::reduced(dims).unwrap();
            let h = reduced_bihypergraph(&d).unwrap();
            for (axis, &n) in d.as_slice().iter().enumerate() {
                let c = reduced_canonical_coloring(&d, axis + 1).unwrap();
                assert!(is_strict_k_coloring(&h, &c, n).unwrap(), "dims {d} axis {}", axis + 1);
            }
        }
    }
}
