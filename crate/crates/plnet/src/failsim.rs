//! Random node failures and component censuses.
//!
//! Failures are Bernoulli per vertex. A census runs union-find over the
//! surviving vertices and the edges whose both endpoints survive; edges are
//! filtered at traversal time rather than materializing the surviving
//! graph. A census is read-only over the graph and mask, so any number may
//! run in parallel on one immutable graph.

use crate::error::{Error, Result};
use crate::graphgen::Multigraph;
use crate::seed::Seed;
use rand::Rng;
use std::collections::BTreeMap;

/// Realized failure set for one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct FailureMask {
    failed: Vec<bool>,
    p: f64,
    seed: Seed,
    failed_count: u64,
}

impl FailureMask {
    /// Wrap explicit flags (used for constructed masks in tests and for
    /// nested-mask experiments); `p` and `seed` are recorded verbatim.
    pub fn from_flags(failed: Vec<bool>, p: f64, seed: Seed) -> Self {
        let failed_count = failed.iter().filter(|&&f| f).count() as u64;
        FailureMask {
            failed,
            p,
            seed,
            failed_count,
        }
    }

    pub fn len(&self) -> usize {
        self.failed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.failed.is_empty()
    }

    pub fn is_failed(&self, v: u32) -> bool {
        self.failed[v as usize]
    }

    pub fn failed(&self) -> &[bool] {
        &self.failed
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> Seed {
        self.seed
    }

    pub fn failed_count(&self) -> u64 {
        self.failed_count
    }
}

/// Each vertex fails independently with probability `p` (Bernoulli, not
/// fixed-count); identical `(num_vertices, p, seed)` yield identical masks.
pub fn draw_failure_mask(num_vertices: usize, p: f64, seed: Seed) -> Result<FailureMask> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("p must lie in [0, 1], got {p}")));
    }
    let mut rng = seed.rng();
    let failed: Vec<bool> = (0..num_vertices).map(|_| rng.gen::<f64>() < p).collect();
    Ok(FailureMask::from_flags(failed, p, seed))
}

/// Empirical outputs of one failure experiment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCensus {
    /// Vertex count of the largest surviving component (0 if no survivors).
    pub giant_size: u64,
    /// Vertex count of the second-largest surviving component.
    pub second_size: u64,
    /// Surviving vertices with no surviving incident edge. A vertex whose
    /// self-loop survives is its own neighbor and is not an orphan.
    pub orphan_count: u64,
    pub survivors_outside_giant: u64,
    pub total_survivors: u64,
    /// Degree histogram of the surviving graph; the `0` entry (when
    /// present) equals `orphan_count`.
    pub surviving_degree_histogram: BTreeMap<u32, u64>,
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut v: u32) -> u32 {
        // Path halving.
        while self.parent[v as usize] != v {
            let grand = self.parent[self.parent[v as usize] as usize];
            self.parent[v as usize] = grand;
            v = grand;
        }
        v
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }
}

/// Census the components of the surviving graph.
///
/// With `mask = None` the intact graph is censused. Self-loops never join
/// two vertices but do keep their endpoint non-orphaned; both endpoints of
/// an edge must survive for it to count toward surviving degrees.
pub fn census_components(graph: &Multigraph, mask: Option<&FailureMask>) -> Result<ComponentCensus> {
    let n = graph.num_vertices();
    if let Some(m) = mask {
        if m.len() != n {
            return Err(Error::Domain(format!(
                "mask length {} does not match graph order {n}",
                m.len()
            )));
        }
    }
    let alive = |v: u32| mask.is_none_or(|m| !m.is_failed(v));

    let mut uf = UnionFind::new(n);
    let mut surviving_degree = vec![0u32; n];
    for &(u, v) in graph.edges() {
        if alive(u) && alive(v) {
            surviving_degree[u as usize] += 1;
            surviving_degree[v as usize] += 1;
            if u != v {
                uf.union(u, v);
            }
        }
    }

    let mut component_size: BTreeMap<u32, u64> = BTreeMap::new();
    let mut total_survivors = 0u64;
    let mut orphan_count = 0u64;
    let mut surviving_degree_histogram: BTreeMap<u32, u64> = BTreeMap::new();
    for v in 0..n as u32 {
        if !alive(v) {
            continue;
        }
        total_survivors += 1;
        let d = surviving_degree[v as usize];
        *surviving_degree_histogram.entry(d).or_insert(0) += 1;
        if d == 0 {
            orphan_count += 1;
        }
        let root = uf.find(v);
        *component_size.entry(root).or_insert(0) += 1;
    }

    let mut giant_size = 0u64;
    let mut second_size = 0u64;
    for &s in component_size.values() {
        if s > giant_size {
            second_size = giant_size;
            giant_size = s;
        } else if s > second_size {
            second_size = s;
        }
    }

    Ok(ComponentCensus {
        giant_size,
        second_size,
        orphan_count,
        survivors_outside_giant: total_survivors - giant_size,
        total_survivors,
        surviving_degree_histogram,
    })
}

/// m'/m: the giant component's size after failure relative to before.
pub fn giant_decay_ratio(before: &ComponentCensus, after: &ComponentCensus) -> Result<f64> {
    if before.giant_size == 0 {
        return Err(Error::Domain(
            "giant_decay_ratio needs a non-empty giant component before failure".into(),
        ));
    }
    Ok(after.giant_size as f64 / before.giant_size as f64)
}
