//! Configuration multigraphs by uniform half-edge pairing.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::components::{components_from_edges, ComponentSummary};
use crate::degrees::DegreeSequence;
use crate::error::{invalid, Error, Result};
use crate::weights::WeightSpec;

/// Edges are stored with `u ≤ v`; a self-loop is `(v, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGraph {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
    pub degrees: Vec<u32>,
}

impl MultiGraph {
    pub fn ell_n(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).sum()
    }

    /// Incidence degree of every vertex (a self-loop counts twice).
    pub fn incidence_degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            if u != v {
                adj[v as usize].push(u);
            }
        }
        adj
    }

    pub fn components(&self, weights: &[WeightSpec]) -> Vec<ComponentSummary> {
        components_from_edges(&self.degrees, &self.edges, weights, false)
    }
}

fn ordered(a: u32, b: u32) -> (u32, u32) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Uniform perfect matching of half-edge ids `0..ℓ`, where vertex `v` owns the
/// `d_v` consecutive ids after those of vertices `0..v`.
pub fn pair_stubs<R: Rng + ?Sized>(degrees: &[u32], rng: &mut R) -> Result<Vec<(u32, u32)>> {
    let ell: u64 = degrees.iter().map(|&d| d as u64).sum();
    if ell % 2 == 1 {
        return Err(Error::OddTotalDegree(ell));
    }
    let mut slots: Vec<u32> = (0..ell as u32).collect();
    let mut pairs = Vec::with_capacity(slots.len() / 2);
    let mut m = slots.len();
    while m > 0 {
        let a = slots[m - 1];
        let j = rng.random_range(0..m - 1);
        let b = slots[j];
        slots[j] = slots[m - 2];
        m -= 2;
        pairs.push(ordered(a, b));
    }
    Ok(pairs)
}

/// Owner vertex of every half-edge id.
pub fn stub_owners(degrees: &[u32]) -> Vec<u32> {
    let mut owner = Vec::with_capacity(degrees.iter().map(|&d| d as usize).sum());
    for (v, &d) in degrees.iter().enumerate() {
        owner.extend(std::iter::repeat_n(v as u32, d as usize));
    }
    owner
}

/// Uniform perfect matching of the half-edges of an arbitrary degree vector.
pub fn pair_degrees<R: Rng + ?Sized>(degrees: &[u32], rng: &mut R) -> Result<Vec<(u32, u32)>> {
    let stubs = pair_stubs(degrees, rng)?;
    let owner = stub_owners(degrees);
    Ok(stubs.into_iter().map(|(a, b)| ordered(owner[a as usize], owner[b as usize])).collect())
}

pub fn pair_half_edges<R: Rng + ?Sized>(d: &DegreeSequence, rng: &mut R) -> Result<MultiGraph> {
    let edges = pair_degrees(d.degrees(), rng)?;
    Ok(MultiGraph { n: d.n(), edges, degrees: d.degrees().to_vec() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicityVerdict {
    pub is_simple: bool,
    pub self_loops: u64,
    pub multi_edge_pairs: u64,
}

/// `multi_edge_pairs` counts, over distinct non-loop vertex pairs, the
/// multiplicity minus one.
pub fn simplicity(g: &MultiGraph) -> SimplicityVerdict {
    let mut e: Vec<(u32, u32)> = g.edges.iter().map(|&(u, v)| ordered(u, v)).collect();
    e.sort_unstable();
    let self_loops = e.iter().filter(|(u, v)| u == v).count() as u64;
    let multi_edge_pairs = e.windows(2).filter(|w| w[0] == w[1] && w[0].0 != w[0].1).count() as u64;
    SimplicityVerdict { is_simple: self_loops == 0 && multi_edge_pairs == 0, self_loops, multi_edge_pairs }
}

pub fn sample_simple<R: Rng + ?Sized>(d: &DegreeSequence, rng: &mut R, max_attempts: usize) -> Result<MultiGraph> {
    sample_simple_counted(d, rng, max_attempts).map(|(g, _)| g)
}

/// As [`sample_simple`], also returning the number of attempts used.
pub fn sample_simple_counted<R: Rng + ?Sized>(
    d: &DegreeSequence,
    rng: &mut R,
    max_attempts: usize,
) -> Result<(MultiGraph, usize)> {
    sample_simple_matching(d, rng, max_attempts).map(|(g, _, k)| (g, k))
}

/// Half-edge id pairs; vertex `v` owns a consecutive block of ids.
pub type StubMatching = Vec<(u32, u32)>;

/// Rejection sampling at the half-edge level: returns the simple graph, its
/// half-edge matching (see [`pair_stubs`]) and the attempts used.
pub fn sample_simple_matching<R: Rng + ?Sized>(
    d: &DegreeSequence,
    rng: &mut R,
    max_attempts: usize,
) -> Result<(MultiGraph, StubMatching, usize)> {
    if max_attempts == 0 {
        return Err(invalid("max_attempts must be at least 1"));
    }
    let owner = stub_owners(d.degrees());
    for attempt in 1..=max_attempts {
        let stubs = pair_stubs(d.degrees(), rng)?;
        let edges = stubs.iter().map(|&(a, b)| ordered(owner[a as usize], owner[b as usize])).collect();
        let g = MultiGraph { n: d.n(), edges, degrees: d.degrees().to_vec() };
        if simplicity(&g).is_simple {
            return Ok((g, stubs, attempt));
        }
    }
    Err(Error::AttemptsExhausted(max_attempts))
}
