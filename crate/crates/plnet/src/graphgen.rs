//! Degree-histogram synthesis and the stub-pairing configuration model.
//!
//! A histogram fixes how many nodes carry each degree; the builder fills a
//! vertex-numbered stub array, shuffles it (Fisher–Yates under the seeded
//! generator), and pairs consecutive stubs into multigraph edges.
//! Self-loops and parallel edges are kept, not rewired: they are rare in
//! the regimes of interest and rewiring would bias the configuration model.

use crate::analytic::PlnParams;
use crate::error::{Error, Result};
use crate::seed::Seed;
use rand::Rng;
use rand_distr::{Distribution, Poisson};
use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;

/// How fractional expected degree counts become integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HistogramMode {
    /// `count(k) = round(e^alpha k^(-beta))`; reproducible without a seed.
    Deterministic,
    /// `count(k) ~ Poisson(e^alpha k^(-beta))`, drawn under the seed.
    Stochastic,
}

/// Exact per-degree node counts used to build a graph.
///
/// Degrees start at 1 (initial graphs have minimum degree 1) and the stub
/// total is always even; [`synthesize_histogram`] adds one degree-1 node
/// when the raw counts leave an odd stub count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHistogram {
    counts: BTreeMap<u32, u64>,
    total_nodes: u64,
    total_stubs: u64,
}

impl DegreeHistogram {
    /// Build from explicit counts. Zero-count entries are dropped; degrees
    /// below 1 or an odd stub total are rejected.
    pub fn from_counts(counts: impl IntoIterator<Item = (u32, u64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, c) in counts {
            if k == 0 {
                return Err(Error::Domain("histogram degrees must be >= 1".into()));
            }
            if c > 0 {
                *map.entry(k).or_insert(0) += c;
            }
        }
        let total_nodes: u64 = map.values().sum();
        let total_stubs: u64 = map.iter().map(|(&k, &c)| k as u64 * c).sum();
        if !total_stubs.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "histogram stub total {total_stubs} is odd and cannot be paired"
            )));
        }
        Ok(DegreeHistogram {
            counts: map,
            total_nodes,
            total_stubs,
        })
    }

    pub fn counts(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.counts.iter().map(|(&k, &c)| (k, c))
    }

    pub fn count(&self, degree: u32) -> u64 {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn total_nodes(&self) -> u64 {
        self.total_nodes
    }

    pub fn total_stubs(&self) -> u64 {
        self.total_stubs
    }

    pub fn max_degree(&self) -> u32 {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    /// Per-vertex degrees in descending order; vertex 0 gets the highest
    /// degree so the hub is always addressable for diagnostics.
    pub fn expand_degrees_desc(&self) -> Vec<u32> {
        let mut degrees = Vec::with_capacity(self.total_nodes as usize);
        for (&k, &c) in self.counts.iter().rev() {
            degrees.extend(std::iter::repeat_n(k, c as usize));
        }
        degrees
    }
}

/// Realize per-degree counts from the power law.
///
/// In both modes degrees run over `1..=params.max_degree()`, zero counts
/// are omitted, and an odd stub total is fixed by adding a single degree-1
/// node (preserving minimum degree 1 at the cost of one extra node).
/// Stochastic mode is deterministic under the seed; deterministic mode
/// ignores it.
pub fn synthesize_histogram(params: &PlnParams, mode: HistogramMode, seed: Seed) -> DegreeHistogram {
    let mut rng = seed.rng();
    let mut counts = BTreeMap::new();
    let mut total_nodes = 0u64;
    let mut total_stubs = 0u64;
    for k in 1..=params.max_degree() {
        let expectation = params.expected_count(k);
        let c = match mode {
            HistogramMode::Deterministic => expectation.round() as u64,
            HistogramMode::Stochastic => {
                // Poisson is defined for any positive mean; expectation can
                // drop below f64 granularity only past max_degree.
                Poisson::new(expectation).map(|d| d.sample(&mut rng) as u64).unwrap_or(0)
            }
        };
        if c > 0 {
            counts.insert(k, c);
            total_nodes += c;
            total_stubs += k as u64 * c;
        }
    }
    if !total_stubs.is_multiple_of(2) {
        *counts.entry(1).or_insert(0) += 1;
        total_nodes += 1;
        total_stubs += 1;
    }
    DegreeHistogram {
        counts,
        total_nodes,
        total_stubs,
    }
}

/// A fixed vertex set with a multiset of undirected edges; self-loops and
/// parallel edges are permitted. A self-loop contributes 2 to its vertex's
/// degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    num_vertices: u32,
    edges: Vec<(u32, u32)>,
    degree: Vec<u32>,
}

impl Multigraph {
    pub fn num_vertices(&self) -> usize {
        self.num_vertices as usize
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.degree[v as usize]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degree
    }

    pub fn degree_sequence_sorted(&self) -> Vec<u32> {
        let mut d = self.degree.clone();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Write in `plngraph v1` text format. Round-trips exactly through
    /// [`Multigraph::load`].
    pub fn save<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "plngraph v1 {} {}", self.num_vertices, self.edges.len())?;
        for &(u, v) in &self.edges {
            writeln!(w, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn save_path(&self, path: &Path) -> std::io::Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.save(&mut f)?;
        f.flush()
    }

    /// Parse the `plngraph v1` format; degree array is rebuilt from edges.
    pub fn load<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty file".into()))?
            .map_err(Error::Io)?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != "plngraph" || fields[1] != "v1" {
            return Err(Error::Format(format!("bad header line: {header:?}")));
        }
        let num_vertices: u32 = fields[2]
            .parse()
            .map_err(|_| Error::Format(format!("bad vertex count: {}", fields[2])))?;
        let num_edges: usize = fields[3]
            .parse()
            .map_err(|_| Error::Format(format!("bad edge count: {}", fields[3])))?;
        let mut edges = Vec::with_capacity(num_edges);
        let mut degree = vec![0u32; num_vertices as usize];
        for line in lines {
            let line = line.map_err(Error::Io)?;
            if line.trim().is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let (u, v) = match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), None) => {
                    let u: u32 = a
                        .parse()
                        .map_err(|_| Error::Format(format!("bad edge line: {line:?}")))?;
                    let v: u32 = b
                        .parse()
                        .map_err(|_| Error::Format(format!("bad edge line: {line:?}")))?;
                    (u, v)
                }
                _ => return Err(Error::Format(format!("bad edge line: {line:?}"))),
            };
            if u >= num_vertices || v >= num_vertices {
                return Err(Error::Format(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{num_vertices}"
                )));
            }
            degree[u as usize] += 1;
            degree[v as usize] += 1;
            edges.push((u, v));
        }
        if edges.len() != num_edges {
            return Err(Error::Format(format!(
                "header promises {num_edges} edges, file holds {}",
                edges.len()
            )));
        }
        Ok(Multigraph {
            num_vertices,
            edges,
            degree,
        })
    }

    pub fn load_path(path: &Path) -> Result<Self> {
        let f = std::fs::File::open(path).map_err(Error::Io)?;
        Multigraph::load(std::io::BufReader::new(f))
    }
}

/// Pair randomly permuted stubs into a multigraph realizing `hist` exactly.
///
/// Vertices are numbered 0..total_nodes-1 in descending-degree order. The
/// stub array is shuffled by Fisher–Yates under the seeded generator and
/// consecutive pairs become edges; the sorted realized degree sequence
/// equals the histogram's expansion with no tolerance.
pub fn build_configuration_multigraph(hist: &DegreeHistogram, seed: Seed) -> Result<Multigraph> {
    if !hist.total_stubs.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "stub total {} is odd; histogram invariant violated upstream",
            hist.total_stubs
        )));
    }
    if hist.total_nodes > u32::MAX as u64 {
        return Err(Error::Domain(format!(
            "vertex count {} exceeds the u32 vertex id space",
            hist.total_nodes
        )));
    }
    let degrees = hist.expand_degrees_desc();
    let mut stubs: Vec<u32> = Vec::with_capacity(hist.total_stubs as usize);
    for (v, &d) in degrees.iter().enumerate() {
        stubs.extend(std::iter::repeat_n(v as u32, d as usize));
    }
    let mut rng = seed.rng();
    for i in (1..stubs.len()).rev() {
        let j = rng.gen_range(0..=i);
        stubs.swap(i, j);
    }
    let edges: Vec<(u32, u32)> = stubs.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    Ok(Multigraph {
        num_vertices: degrees.len() as u32,
        edges,
        degree: degrees,
    })
}

/// Exact diagnostic counts: self-loops, and every edge beyond the first
/// between the same unordered vertex pair (repeated self-loops at one
/// vertex count as parallel too).
pub fn count_self_and_parallel(graph: &Multigraph) -> (u64, u64) {
    let mut self_loops = 0u64;
    let mut normalized: Vec<(u32, u32)> = graph
        .edges
        .iter()
        .map(|&(u, v)| {
            if u == v {
                self_loops += 1;
            }
            (u.min(v), u.max(v))
        })
        .collect();
    normalized.sort_unstable();
    let mut parallel = 0u64;
    let mut prev = None;
    for pair in normalized {
        if Some(pair) == prev {
            parallel += 1;
        } else {
            prev = Some(pair);
        }
    }
    (self_loops, parallel)
}

/// Self-loop count at a given vertex (diagnostic for the hub self-arc rate).
pub fn self_loops_at(graph: &Multigraph, v: u32) -> u64 {
    graph.edges.iter().filter(|&&(a, b)| a == v && b == v).count() as u64
}
