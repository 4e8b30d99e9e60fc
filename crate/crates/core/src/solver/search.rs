//! Backtracking enumeration of feasible partitions.
//!
//! Vertices receive class labels one at a time. A vertex may join any class
//! already in use or open exactly one new class, so each set partition is
//! reached once rather than once per permutation of colors. After every
//! assignment the incident edges are re-examined:
//!
//! - an edge with one unlabelled vertex left whose labelled vertices are all
//!   distinct and that must contain a repeat (C-edge) restricts the last
//!   vertex to those labels;
//! - an edge with one unlabelled vertex left whose labelled vertices share a
//!   single label and that must contain two labels (D-edge) forbids that label;
//! - a fully labelled edge is checked outright.
//!
//! A restriction that leaves a single label is applied immediately. Branching
//! follows a static order: descending number of incident edges, ties by index.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{MixedHypergraph, Partition};

/// Class labels are bit positions in a `u128`.
pub const MAX_SEARCH_VERTICES: usize = 128;

const UNSET: u8 = u8::MAX;
const CLOCK_INTERVAL: u64 = 1 << 10;

/// Limits and options for an enumeration run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationConfig {
    /// Refuse hypergraphs with more vertices than this.
    pub max_vertices: usize,
    /// Wall-clock cap; `None` means unlimited.
    pub time_budget: Option<Duration>,
    /// Worker threads; 1 runs on the calling thread.
    pub parallel: usize,
    /// Keep every feasible partition, not just the counts.
    pub collect_partitions: bool,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig { max_vertices: 64, time_budget: None, parallel: 1, collect_partitions: true }
    }
}

impl EnumerationConfig {
    pub fn with_max_vertices(mut self, cap: usize) -> Self {
        self.max_vertices = cap;
        self
    }

    pub fn with_time_budget(mut self, budget: Duration) -> Self {
        self.time_budget = Some(budget);
        self
    }

    pub fn with_parallel(mut self, workers: usize) -> Self {
        self.parallel = workers;
        self
    }

    pub fn counts_only(mut self) -> Self {
        self.collect_partitions = false;
        self
    }
}

/// Result of an enumeration run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// `counts[k-1]` feasible partitions with `k` classes.
    pub counts: Vec<u64>,
    /// Feasible partitions in ascending restricted-growth order, when collected.
    pub partitions: Option<Vec<Partition>>,
    /// Search nodes visited.
    pub nodes: u64,
}

struct Constraint {
    verts: Box<[u32]>,
    common: bool,
    distinct: bool,
}

struct Problem {
    n: usize,
    constraints: Vec<Constraint>,
    incident: Vec<Vec<u32>>,
    order: Vec<usize>,
}

impl Problem {
    fn new(h: &MixedHypergraph) -> Self {
        let n = h.num_vertices();
        let mut merged: BTreeMap<&[usize], (bool, bool)> = BTreeMap::new();
        for e in h.c_edges() {
            merged.entry(e.as_slice()).or_default().0 = true;
        }
        for e in h.d_edges() {
            merged.entry(e.as_slice()).or_default().1 = true;
        }
        let constraints: Vec<Constraint> = merged
            .into_iter()
            .map(|(verts, (common, distinct))| Constraint {
                verts: verts.iter().map(|&v| v as u32).collect(),
                common,
                distinct,
            })
            .collect();
        let mut incident = vec![Vec::new(); n];
        for (i, c) in constraints.iter().enumerate() {
            for &v in c.verts.iter() {
                incident[v as usize].push(i as u32);
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(incident[v].len()), v));
        Problem { n, constraints, incident, order }
    }
}

#[derive(Clone)]
struct State {
    label: Vec<u8>,
    forbid: Vec<u128>,
    require: Vec<u128>,
    classes: u8,
    unset: usize,
}

fn open_mask(classes: u8) -> u128 {
    // Existing labels plus the next fresh one.
    let width = classes as u32 + 1;
    if width >= 128 {
        u128::MAX
    } else {
        (1u128 << width) - 1
    }
}

impl State {
    fn root(n: usize) -> Self {
        State { label: vec![UNSET; n], forbid: vec![0; n], require: vec![u128::MAX; n], classes: 0, unset: n }
    }

    fn domain(&self, v: usize) -> u128 {
        open_mask(self.classes) & self.require[v] & !self.forbid[v]
    }
}

impl Problem {
    /// Assigns `label` to `v` and propagates; `false` on contradiction.
    fn assign(&self, st: &mut State, v: usize, label: u8) -> bool {
        let mut queue: Vec<(usize, u8)> = vec![(v, label)];
        while let Some((v, c)) = queue.pop() {
            if st.label[v] != UNSET {
                if st.label[v] == c {
                    continue;
                }
                return false;
            }
            if st.domain(v) & (1u128 << c) == 0 {
                return false;
            }
            if c == st.classes {
                st.classes += 1;
            }
            st.label[v] = c;
            st.unset -= 1;
            for &ci in &self.incident[v] {
                let con = &self.constraints[ci as usize];
                let mut seen: u128 = 0;
                let mut repeat = false;
                let mut free = 0usize;
                let mut last_free = 0usize;
                for &w in con.verts.iter() {
                    let lw = st.label[w as usize];
                    if lw == UNSET {
                        free += 1;
                        last_free = w as usize;
                    } else {
                        let bit = 1u128 << lw;
                        repeat |= seen & bit != 0;
                        seen |= bit;
                    }
                }
                let single = seen.count_ones() == 1;
                match free {
                    0 => {
                        if (con.common && !repeat) || (con.distinct && single) {
                            return false;
                        }
                    }
                    1 => {
                        let u = last_free;
                        let mut touched = false;
                        if con.common && !repeat {
                            st.require[u] &= seen;
                            touched = true;
                        }
                        if con.distinct && single {
                            st.forbid[u] |= seen;
                            touched = true;
                        }
                        if touched {
                            let dom = st.domain(u);
                            if dom == 0 {
                                return false;
                            }
                            if st.require[u] != u128::MAX && dom.count_ones() == 1 {
                                queue.push((u, dom.trailing_zeros() as u8));
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn pick(&self, st: &State) -> usize {
        *self.order.iter().find(|&&v| st.label[v] == UNSET).expect("an unlabelled vertex")
    }

    /// Child states of a non-complete node, in ascending label order.
    fn children(&self, st: &State) -> Vec<State> {
        let v = self.pick(st);
        let mut dom = st.domain(v);
        let mut out = Vec::new();
        while dom != 0 {
            let c = dom.trailing_zeros() as u8;
            dom &= dom - 1;
            let mut child = st.clone();
            if self.assign(&mut child, v, c) {
                out.push(child);
            }
        }
        out
    }
}

struct Shared {
    start: Instant,
    budget: Option<Duration>,
    aborted: AtomicBool,
    nodes: AtomicU64,
    solutions: AtomicU64,
}

struct Worker<'a> {
    problem: &'a Problem,
    shared: &'a Shared,
    collect: bool,
    counts: Vec<u64>,
    partitions: Vec<Partition>,
    nodes: u64,
    overflow: bool,
}

impl<'a> Worker<'a> {
    fn new(problem: &'a Problem, shared: &'a Shared, collect: bool) -> Self {
        Worker {
            problem,
            shared,
            collect,
            counts: vec![0; problem.n],
            partitions: Vec::new(),
            nodes: 0,
            overflow: false,
        }
    }

    fn record(&mut self, st: &State) {
        let k = st.classes as usize;
        match self.counts[k - 1].checked_add(1) {
            Some(x) => self.counts[k - 1] = x,
            None => self.overflow = true,
        }
        if self.collect {
            self.partitions.push(Partition::from_labels(&st.label));
        }
        self.shared.solutions.fetch_add(1, Ordering::Relaxed);
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes.is_multiple_of(CLOCK_INTERVAL) {
            self.shared.nodes.fetch_add(CLOCK_INTERVAL, Ordering::Relaxed);
            if let Some(budget) = self.shared.budget {
                if self.shared.start.elapsed() > budget {
                    self.shared.aborted.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.shared.aborted.load(Ordering::Relaxed) && !self.overflow
    }

    fn run(&mut self, st: State) {
        if !self.tick() {
            return;
        }
        if st.unset == 0 {
            self.record(&st);
            return;
        }
        for child in self.problem.children(&st) {
            self.run(child);
        }
    }
}

/// Expands the top of the search tree breadth-first until there are enough
/// independent subtrees to share among workers. Complete leaves met on the
/// way are returned separately.
fn split_frontier(problem: &Problem, root: State, target: usize) -> (Vec<State>, Vec<State>) {
    let mut frontier = vec![root];
    let mut leaves = Vec::new();
    for _depth in 0..problem.n {
        if frontier.len() >= target {
            break;
        }
        let mut next = Vec::new();
        let mut grew = false;
        for st in frontier {
            if st.unset == 0 {
                leaves.push(st);
            } else {
                grew = true;
                next.extend(problem.children(&st));
            }
        }
        frontier = next;
        if !grew {
            break;
        }
    }
    let (done, open): (Vec<State>, Vec<State>) = frontier.into_iter().partition(|s| s.unset == 0);
    leaves.extend(done);
    (open, leaves)
}

/// Enumerates every feasible partition of `h`.
pub fn enumerate(h: &MixedHypergraph, cfg: &EnumerationConfig) -> Result<Enumeration> {
    let n = h.num_vertices();
    let cap = cfg.max_vertices.min(MAX_SEARCH_VERTICES);
    if n > cap {
        return Err(Error::VertexCapExceeded { what: "enumeration", size: n, cap });
    }
    let problem = Problem::new(h);
    let shared = Shared {
        start: Instant::now(),
        budget: cfg.time_budget,
        aborted: AtomicBool::new(false),
        nodes: AtomicU64::new(0),
        solutions: AtomicU64::new(0),
    };
    let workers = cfg.parallel.max(1);

    let mut root = State::root(n);
    // The first vertex placed always opens class 0.
    let first = problem.pick(&root);
    let root_ok = problem.assign(&mut root, first, 0);

    let mut parts: Vec<Worker> = Vec::new();
    if root_ok {
        if workers == 1 {
            let mut w = Worker::new(&problem, &shared, cfg.collect_partitions);
            w.run(root);
            parts.push(w);
        } else {
            let (open, leaves) = split_frontier(&problem, root, workers * 8);
            let mut lw = Worker::new(&problem, &shared, cfg.collect_partitions);
            for leaf in &leaves {
                lw.record(leaf);
            }
            parts.push(lw);
            let pool =
                rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("failed to build worker pool");
            let done: Vec<Worker> = pool.install(|| {
                open.into_par_iter()
                    .map(|st| {
                        let mut w = Worker::new(&problem, &shared, cfg.collect_partitions);
                        w.run(st);
                        w
                    })
                    .collect()
            });
            parts.extend(done);
        }
    }

    let nodes: u64 = parts.iter().map(|w| w.nodes).sum();
    if shared.aborted.load(Ordering::Relaxed) {
        return Err(Error::TimeBudgetExceeded {
            budget: cfg.time_budget.unwrap_or_default(),
            nodes,
            solutions: shared.solutions.load(Ordering::Relaxed),
        });
    }
    if parts.iter().any(|w| w.overflow) {
        return Err(Error::CountOverflow);
    }
    let mut counts = vec![0u64; n];
    for w in &parts {
        for (acc, &c) in counts.iter_mut().zip(&w.counts) {
            *acc = acc.checked_add(c).ok_or(Error::CountOverflow)?;
        }
    }
    let partitions = cfg.collect_partitions.then(|| {
        let mut all: Vec<Partition> = parts.into_iter().flat_map(|w| w.partitions).collect();
        all.sort_unstable();
        all
    });
    while counts.last() == Some(&0) {
        counts.pop();
    }
    Ok(Enumeration { counts, partitions, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::is_proper_coloring;

    fn bell(n: usize) -> u64 {
        // Bell triangle.
        let mut row = vec![1u64];
        for _ in 1..n {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                let y = *next.last().unwrap() + x;
                next.push(y);
            }
            row = next;
        }
        *row.last().unwrap()
    }

    #[test]
    fn edgeless_counts_are_bell_numbers() {
        for n in 1..=7 {
            let h = MixedHypergraph::on_indices(n, vec![], vec![]).unwrap();
            let e = enumerate(&h, &EnumerationConfig::default()).unwrap();
            assert_eq!(e.counts.iter().sum::<u64>(), bell(n), "n = {n}");
            assert_eq!(e.partitions.unwrap().len() as u64, bell(n));
        }
    }

    #[test]
    fn single_bi_edge_on_three_vertices() {
        let h = MixedHypergraph::on_indices(3, vec![vec![0, 1, 2]], vec![vec![0, 1, 2]]).unwrap();
        let e = enumerate(&h, &EnumerationConfig::default()).unwrap();
        assert_eq!(e.counts, vec![0, 3]);
        let parts = e.partitions.unwrap();
        let labels: Vec<&[u32]> = parts.iter().map(|p| p.labels()).collect();
        assert_eq!(labels, vec![&[0, 0, 1][..], &[0, 1, 0], &[0, 1, 1]]);
    }

    #[test]
    fn d_edges_and_c_edges_alone() {
        // A D-edge pair is a graph edge: 3-path has 2 colors min.
        let path = MixedHypergraph::on_indices(3, vec![], vec![vec![0, 1], vec![1, 2]]).unwrap();
        let e = enumerate(&path, &EnumerationConfig::default()).unwrap();
        assert_eq!(e.counts, vec![0, 1, 1]);
        // A C-edge pair forces equality.
        let glued = MixedHypergraph::on_indices(3, vec![vec![0, 2]], vec![]).unwrap();
        let e = enumerate(&glued, &EnumerationConfig::default()).unwrap();
        assert_eq!(e.counts, vec![1, 1]);
    }

    #[test]
    fn uncolorable_gives_empty_counts() {
        let h = MixedHypergraph::on_indices(2, vec![vec![0, 1]], vec![vec![0, 1]]).unwrap();
        let e = enumerate(&h, &EnumerationConfig::default()).unwrap();
        assert!(e.counts.is_empty());
        assert_eq!(e.partitions.unwrap(), vec![]);
    }

    #[test]
    fn emitted_partitions_are_proper() {
        let h = MixedHypergraph::on_indices(
            7,
            vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6, 0]],
            vec![vec![0, 1], vec![1, 2, 3], vec![3, 5], vec![5, 6]],
        )
        .unwrap();
        let e = enumerate(&h, &EnumerationConfig::default()).unwrap();
        let parts = e.partitions.unwrap();
        assert!(!parts.is_empty());
        assert!(parts.iter().all(|p| is_proper_coloring(&h, p).unwrap()));
        assert!(parts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn vertex_cap_is_enforced() {
        let h = MixedHypergraph::on_indices(10, vec![], vec![]).unwrap();
        let cfg = EnumerationConfig::default().with_max_vertices(9);
        assert_eq!(enumerate(&h, &cfg), Err(Error::VertexCapExceeded { what: "enumeration", size: 10, cap: 9 }));
    }

    #[test]
    fn time_budget_aborts_without_answer() {
        let h = MixedHypergraph::on_indices(14, vec![], vec![]).unwrap();
        let cfg = EnumerationConfig::default().counts_only().with_time_budget(Duration::from_millis(1));
        assert!(matches!(enumerate(&h, &cfg), Err(Error::TimeBudgetExceeded { .. })));
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let h = MixedHypergraph::on_indices(
            8,
            vec![vec![0, 1, 2], vec![3, 4, 5], vec![5, 6, 7]],
            vec![vec![0, 3], vec![1, 2, 6], vec![4, 7]],
        )
        .unwrap();
        let base = enumerate(&h, &EnumerationConfig::default()).unwrap();
        for workers in [2, 3, 8] {
            let other = enumerate(&h, &EnumerationConfig::default().with_parallel(workers)).unwrap();
            assert_eq!(other.counts, base.counts);
            assert_eq!(other.partitions, base.partitions);
        }
    }
}
