use std::collections::BTreeSet;

use bihyper::constructions::{
    box_vertices, canonical_coloring, canonical_colorings, coordinate_partition, product_bihypergraph,
    reduced_bihypergraph, reduced_vertex_set, DimsSpec,
};
use bihyper::solver::{chromatic_spectrum, enumerate_feasible_partitions, predicted_spectrum, EnumerationConfig};
use bihyper::{derived_subhypergraph, is_strict_k_coloring, Partition};

/// Every non-increasing dims vector with entries in `3..=max_entry`, `2..=max_s` entries.
fn product_dims(max_entry: usize, max_s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (3..=max_entry).map(|n| vec![n]).collect();
    while let Some(d) = stack.pop() {
        if d.len() >= 2 {
            out.push(d.clone());
        }
        if d.len() < max_s {
            for n in 3..=*d.last().unwrap() {
                let mut e = d.clone();
                e.push(n);
                stack.push(e);
            }
        }
    }
    out.sort();
    out
}

/// A triple is an edge iff no coordinate is constant and no coordinate takes three values.
#[test]
fn edge_predicate_matches_two_sided_description() {
    for dims in product_dims(6, 3) {
        let d = DimsSpec::product(dims).unwrap();
        if d.box_size().unwrap() > 12 {
            continue;
        }
        let h = product_bihypergraph(&d);
        let edges: BTreeSet<&Vec<usize>> = h.c_edges().iter().collect();
        let vs = h.vertices();
        let n = vs.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let ok = (0..d.len()).all(|j| {
                        let (x, y, z) = (vs[a].coords()[j], vs[b].coords()[j], vs[c].coords()[j]);
                        let constant = x == y && y == z;
                        let rainbow = x != y && y != z && x != z;
                        !constant && !rainbow
                    });
                    assert_eq!(edges.contains(&vec![a, b, c]), ok);
                }
            }
        }
    }
}

#[test]
fn coordinate_colorings_are_strict_up_to_100_vertices() {
    let mut checked = 0;
    for dims in product_dims(10, 4) {
        let d = DimsSpec::product(dims).unwrap();
        if d.box_size().unwrap() > 100 {
            continue;
        }
        let h = product_bihypergraph(&d);
        for (axis, &n) in d.as_slice().iter().enumerate() {
            let c = canonical_coloring(&d, axis + 1).unwrap();
            assert!(is_strict_k_coloring(&h, &c, n).unwrap(), "dims {d} axis {}", axis + 1);
            let size: usize = d.as_slice().iter().enumerate().filter(|&(j, _)| j != axis).map(|(_, &m)| m).product();
            assert!(c.classes().iter().all(|cl| cl.len() == size));
            checked += 1;
        }
    }
    assert!(checked > 20);
}

#[test]
fn product_colorings_are_exactly_the_coordinate_colorings() {
    let cfg = EnumerationConfig::default();
    for dims in product_dims(12, 3) {
        let d = DimsSpec::product(dims).unwrap();
        if d.box_size().unwrap() > 36 {
            continue;
        }
        let h = product_bihypergraph(&d);
        let found: BTreeSet<Partition> = enumerate_feasible_partitions(&h, &cfg).unwrap().into_iter().collect();
        let expected: BTreeSet<Partition> = canonical_colorings(&d).into_iter().collect();
        assert_eq!(found, expected, "dims {d}");
        assert_eq!(chromatic_spectrum(&h, &cfg).unwrap(), predicted_spectrum(&d), "dims {d}");
    }
}

#[test]
fn repeated_dims_collapse_nothing() {
    let d = DimsSpec::product(vec![3, 3]).unwrap();
    let h = product_bihypergraph(&d);
    let found = enumerate_feasible_partitions(&h, &EnumerationConfig::default()).unwrap();
    assert_eq!(found.len(), 2);
    assert!(found.iter().all(|p| p.num_classes() == 3));
}

#[test]
fn reduced_size_sweep() {
    for dims in product_dims(9, 4) {
        let Ok(d) = DimsSpec::reduced(dims) else { continue };
        let n = d.as_slice();
        assert_eq!(reduced_vertex_set(&d).unwrap().len(), 2 * n[0] + n[1] + n.len() - 2, "dims {d}");
    }
}

#[test]
fn reduced_is_derived_from_product_when_small() {
    let mut checked = 0;
    for dims in product_dims(9, 3) {
        let Ok(d) = DimsSpec::reduced(dims) else { continue };
        if d.box_size().unwrap() > 200 {
            continue;
        }
        let full = product_bihypergraph(&d);
        let idx: Vec<usize> = reduced_vertex_set(&d).unwrap().iter().map(|v| full.index_of(v).unwrap()).collect();
        assert_eq!(derived_subhypergraph(&full, &idx).unwrap(), reduced_bihypergraph(&d).unwrap(), "dims {d}");
        checked += 1;
    }
    assert!(checked >= 10);
}

#[test]
fn reduced_coordinate_colorings_are_restrictions() {
    for dims in [vec![5, 4], vec![6, 6], vec![6, 5, 4], vec![8, 6, 5]] {
        let d = DimsSpec::reduced(dims).unwrap();
        let full = box_vertices(&d);
        let h = reduced_bihypergraph(&d).unwrap();
        for axis in 1..=d.len() {
            let whole = canonical_coloring(&d, axis).unwrap();
            // Restrict the full coloring to X* by looking up each reduced vertex's box index.
            let labels: Vec<usize> =
                h.vertices().iter().map(|v| whole.class_of(full.iter().position(|w| w == v).unwrap())).collect();
            let restricted = Partition::from_labels(&labels);
            assert_eq!(restricted, coordinate_partition(&h, axis).unwrap());
            assert!(is_strict_k_coloring(&h, &restricted, d.as_slice()[axis - 1]).unwrap());
        }
    }
}

#[test]
fn reduced_spectra_match_prediction() {
    let cfg = EnumerationConfig::default();
    for dims in product_dims(9, 4) {
        let Ok(d) = DimsSpec::reduced(dims) else { continue };
        let h = reduced_bihypergraph(&d).unwrap();
        assert_eq!(chromatic_spectrum(&h, &cfg).unwrap(), predicted_spectrum(&d), "dims {d}");
    }
}

#[test]
fn two_rows_of_h_3_3() {
    let d = DimsSpec::product(vec![3, 3]).unwrap();
    let h = product_bihypergraph(&d);
    let rows: Vec<usize> = (0..9).filter(|&v| h.vertices()[v].coords()[0] <= 2).collect();
    let sub = derived_subhypergraph(&h, &rows).unwrap();
    // Scan all C(6,3) = 20 triples of the six kept vertices.
    let vs = sub.vertices();
    let mut expected = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                let two = (0..2).all(|j| {
                    let s: BTreeSet<usize> = [a, b, c].iter().map(|&v| vs[v].coords()[j]).collect();
                    s.len() == 2
                });
                if two {
                    expected.push(vec![a, b, c]);
                }
            }
        }
    }
    assert_eq!(sub.c_edges(), expected.as_slice());
    assert!(!expected.is_empty());
}

#[test]
fn explicit_bi_edges_give_bi_hypergraph() {
    let d = DimsSpec::product(vec![3, 3]).unwrap();
    let built = product_bihypergraph(&d);
    let h = bihyper::MixedHypergraph::bi(built.vertices().to_vec(), built.c_edges().to_vec()).unwrap();
    assert_eq!(h.c_edges().len(), 36);
    assert!(h.is_bi_hypergraph());
}
