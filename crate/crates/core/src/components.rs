use serde::{Deserialize, Serialize};

use crate::dsu::UnionFind;
use crate::weights::WeightSpec;

/// Per-component statistics. `weight_totals[j]` belongs to the `j`-th
/// `WeightSpec` passed to the producing routine.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub vertices: u64,
    pub edges: u64,
    pub surplus: u64,
    pub total_degree: u64,
    pub weight_totals: Vec<f64>,
    /// Sparse `(k, v_k(C))` pairs, filled only when requested.
    pub degree_histogram: Vec<(u32, u64)>,
}

impl ComponentSummary {
    pub fn euler_holds(&self) -> bool {
        self.edges + 1 == self.vertices + self.surplus
    }
}

/// Components of the multigraph `(n, edges)` via union-find, in order of
/// smallest member vertex.
pub fn components_from_edges(
    degrees: &[u32],
    edges: &[(u32, u32)],
    weights: &[WeightSpec],
    histograms: bool,
) -> Vec<ComponentSummary> {
    let n = degrees.len();
    let mut uf = UnionFind::new(n);
    for &(u, v) in edges {
        uf.union(u, v);
    }
    let mut slot = vec![u32::MAX; n];
    let mut out: Vec<ComponentSummary> = Vec::new();
    for v in 0..n as u32 {
        let r = uf.find(v) as usize;
        if slot[r] == u32::MAX {
            slot[r] = out.len() as u32;
            out.push(ComponentSummary { weight_totals: vec![0.0; weights.len()], ..Default::default() });
        }
        let c = &mut out[slot[r] as usize];
        c.vertices += 1;
        c.total_degree += degrees[v as usize] as u64;
        for (j, w) in weights.iter().enumerate() {
            c.weight_totals[j] += w.values[v as usize];
        }
        if histograms {
            bump(&mut c.degree_histogram, degrees[v as usize]);
        }
    }
    for &(u, _) in edges {
        let r = uf.find(u) as usize;
        out[slot[r] as usize].edges += 1;
    }
    for c in &mut out {
        c.surplus = c.edges + 1 - c.vertices;
    }
    out
}

pub(crate) fn bump(hist: &mut Vec<(u32, u64)>, k: u32) {
    match hist.binary_search_by_key(&k, |&(d, _)| d) {
        Ok(i) => hist[i].1 += 1,
        Err(i) => hist.insert(i, (k, 1)),
    }
}
