//! Isomorphism of small mixed hypergraphs by backtracking.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::model::{Edge, MixedHypergraph};

/// Limits for [`find_isomorphism`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsoConfig {
    pub max_vertices: usize,
    pub max_steps: u64,
}

impl Default for IsoConfig {
    fn default() -> Self {
        IsoConfig { max_vertices: 40, max_steps: 50_000_000 }
    }
}

type Signature = (usize, usize, Vec<usize>, Vec<usize>);

fn signatures(h: &MixedHypergraph) -> Vec<Signature> {
    let mut sig: Vec<Signature> = vec![(0, 0, Vec::new(), Vec::new()); h.num_vertices()];
    for e in h.c_edges() {
        for &v in e {
            sig[v].0 += 1;
            sig[v].2.push(e.len());
        }
    }
    for e in h.d_edges() {
        for &v in e {
            sig[v].1 += 1;
            sig[v].3.push(e.len());
        }
    }
    for s in &mut sig {
        s.2.sort_unstable();
        s.3.sort_unstable();
    }
    sig
}

fn coordinate_set(h: &MixedHypergraph, v: usize) -> Vec<usize> {
    let set: BTreeSet<usize> = h.vertices()[v].coords().iter().copied().collect();
    set.into_iter().collect()
}

fn incidence(n: usize, edges: &[Edge]) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        for &v in e {
            inc[v].push(i);
        }
    }
    inc
}

struct Side<'a> {
    c_edges: &'a [Edge],
    d_edges: &'a [Edge],
    c_set: HashSet<&'a [usize]>,
    d_set: HashSet<&'a [usize]>,
    c_inc: Vec<Vec<usize>>,
    d_inc: Vec<Vec<usize>>,
}

impl<'a> Side<'a> {
    fn new(h: &'a MixedHypergraph) -> Self {
        let n = h.num_vertices();
        Side {
            c_edges: h.c_edges(),
            d_edges: h.d_edges(),
            c_set: h.c_edges().iter().map(|e| e.as_slice()).collect(),
            d_set: h.d_edges().iter().map(|e| e.as_slice()).collect(),
            c_inc: incidence(n, h.c_edges()),
            d_inc: incidence(n, h.d_edges()),
        }
    }
}

/// Every edge of `from` incident to `v` whose vertices are all mapped must map onto an edge of `to`.
fn edges_preserved(from: &Side, to: &Side, map: &[usize], v: usize) -> bool {
    let check = |inc: &[usize], edges: &[Edge], target: &HashSet<&[usize]>| {
        let mut image = Vec::new();
        inc.iter().all(|&ei| {
            image.clear();
            for &u in &edges[ei] {
                if map[u] == usize::MAX {
                    return true;
                }
                image.push(map[u]);
            }
            image.sort_unstable();
            target.contains(image.as_slice())
        })
    };
    check(&from.c_inc[v], from.c_edges, &to.c_set) && check(&from.d_inc[v], from.d_edges, &to.d_set)
}

struct Search<'a> {
    left: Side<'a>,
    right: Side<'a>,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    forward: Vec<usize>,
    backward: Vec<usize>,
    steps: u64,
    max_steps: u64,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let v = self.order[depth];
        for i in 0..self.candidates[v].len() {
            let w = self.candidates[v][i];
            if self.backward[w] != usize::MAX {
                continue;
            }
            self.steps += 1;
            if self.steps > self.max_steps {
                return Err(Error::StepBudgetExceeded { steps: self.max_steps });
            }
            self.forward[v] = w;
            self.backward[w] = v;
            if edges_preserved(&self.left, &self.right, &self.forward, v)
                && edges_preserved(&self.right, &self.left, &self.backward, w)
                && self.extend(depth + 1)?
            {
                return Ok(true);
            }
            self.forward[v] = usize::MAX;
            self.backward[w] = usize::MAX;
        }
        Ok(false)
    }
}

/// Searches for a bijection `phi` (as `phi[v1] = v2`) mapping C-edges onto
/// C-edges and D-edges onto D-edges in both directions.
pub fn find_isomorphism(h1: &MixedHypergraph, h2: &MixedHypergraph, cfg: &IsoConfig) -> Result<Option<Vec<usize>>> {
    let n = h1.num_vertices();
    for size in [n, h2.num_vertices()] {
        if size > cfg.max_vertices {
            return Err(Error::VertexCapExceeded { what: "isomorphism search", size, cap: cfg.max_vertices });
        }
    }
    if n != h2.num_vertices() || h1.c_edges().len() != h2.c_edges().len() || h1.d_edges().len() != h2.d_edges().len() {
        return Ok(None);
    }
    let sig1 = signatures(h1);
    let sig2 = signatures(h2);
    let mut sorted1 = sig1.clone();
    let mut sorted2 = sig2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return Ok(None);
    }

    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let key = coordinate_set(h1, v);
            let mut c: Vec<usize> = (0..n).filter(|&w| sig2[w] == sig1[v]).collect();
            c.sort_by_key(|&w| (coordinate_set(h2, w) != key, w));
            c
        })
        .collect();

    // Map vertices with the most already-placed neighbours first.
    let left = Side::new(h1);
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], sig1[v].0 + sig1[v].1, std::cmp::Reverse(v)))
            .expect("unplaced vertex");
        placed[v] = true;
        order.push(v);
        for &ei in left.c_inc[v].iter() {
            for &u in &left.c_edges[ei] {
                links[u] += 1;
            }
        }
        for &ei in left.d_inc[v].iter() {
            for &u in &left.d_edges[ei] {
                links[u] += 1;
            }
        }
    }

    let mut search = Search {
        left,
        right: Side::new(h2),
        order,
        candidates,
        forward: vec![usize::MAX; n],
        backward: vec![usize::MAX; n],
        steps: 0,
        max_steps: cfg.max_steps,
    };
    Ok(search.extend(0)?.then_some(search.forward))
}

/// Whether `phi` is an isomorphism from `h1` to `h2`.
pub fn is_isomorphism(h1: &MixedHypergraph, h2: &MixedHypergraph, phi: &[usize]) -> bool {
    let n = h1.num_vertices();
    if n != h2.num_vertices() || phi.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &w in phi {
        if w >= n || hit[w] {
            return false;
        }
        hit[w] = true;
    }
    let image = |edges: &[Edge]| -> BTreeSet<Edge> {
        edges
            .iter()
            .map(|e| {
                let mut m: Vec<usize> = e.iter().map(|&v| phi[v]).collect();
                m.sort_unstable();
                m
            })
            .collect()
    };
    let c2: BTreeSet<Edge> = h2.c_edges().iter().cloned().collect();
    let d2: BTreeSet<Edge> = h2.d_edges().iter().cloned().collect();
    image(h1.c_edges()) == c2 && image(h1.d_edges()) == d2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{product_bihypergraph, DimsSpec};
    use crate::model::Vertex;

    fn product(dims: &[usize]) -> MixedHypergraph {
        product_bihypergraph(&DimsSpec::product(dims.to_vec()).unwrap())
    }

    #[test]
    fn coordinate_swap_is_isomorphic() {
        let h = product(&[3, 3]);
        let swapped_vertices: Vec<Vertex> =
            h.vertices().iter().map(|v| Vertex::new(vec![v.coords()[1], v.coords()[0]])).collect();
        let swapped = MixedHypergraph::bi(swapped_vertices, h.c_edges().to_vec()).unwrap();
        let phi = find_isomorphism(&h, &swapped, &IsoConfig::default()).unwrap().unwrap();
        assert!(is_isomorphism(&h, &swapped, &phi));
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        assert_eq!(find_isomorphism(&product(&[4, 3]), &product(&[3, 3]), &IsoConfig::default()), Ok(None));
    }

    #[test]
    fn c_and_d_roles_matter() {
        let a = MixedHypergraph::on_indices(3, vec![vec![0, 1]], vec![vec![1, 2]]).unwrap();
        let b = MixedHypergraph::on_indices(3, vec![vec![1, 2]], vec![vec![0, 1]]).unwrap();
        let phi = find_isomorphism(&a, &b, &IsoConfig::default()).unwrap().unwrap();
        assert!(is_isomorphism(&a, &b, &phi));
        let c = MixedHypergraph::on_indices(3, vec![vec![0, 1]], vec![vec![0, 1]]).unwrap();
        assert_eq!(find_isomorphism(&a, &c, &IsoConfig::default()), Ok(None));
    }

    #[test]
    fn non_isomorphic_with_equal_degrees() {
        // Two triangles vs a hexagon, as graphs of D-edges.
        let two = MixedHypergraph::on_indices(
            6,
            vec![],
            vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]],
        )
        .unwrap();
        let hex = MixedHypergraph::on_indices(
            6,
            vec![],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![0, 5]],
        )
        .unwrap();
        assert_eq!(find_isomorphism(&two, &hex, &IsoConfig::default()), Ok(None));
        assert!(find_isomorphism(&hex, &hex, &IsoConfig::default()).unwrap().is_some());
    }

    #[test]
    fn size_guard_refuses() {
        let h = product(&[4, 3]);
        let cfg = IsoConfig { max_vertices: 10, ..IsoConfig::default() };
        assert!(matches!(find_isomorphism(&h, &h, &cfg), Err(Error::VertexCapExceeded { .. })));
    }

    #[test]
    fn witness_validator_rejects_non_bijections() {
        let h = product(&[3, 3]);
        assert!(!is_isomorphism(&h, &h, &[0; 9]));
        assert!(is_isomorphism(&h, &h, &(0..9).collect::<Vec<_>>()));
    }
}
