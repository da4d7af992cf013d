//! Breadth-first exploration that generates the configuration model while it
//! walks it, and the walk `S_n` that encodes component sizes.
//!
//! Step convention: starting a component is its own step (the start vertex is
//! discovered, `S` moves by `d - 2`, nothing is paired). Every other step pairs
//! one half-edge of the exploring vertex with a uniform unpaired half-edge.
//! Hence component `k` ends at the first `l` with `S(l) = -2k` and holds
//! `τ_k − τ_{k−1} − 1` edges.

use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{ord, OrderedPairVector};
use crate::components::{bump, ComponentSummary};
use crate::config_model::MultiGraph;
use crate::degrees::{DegreeSequence, ScalingConstants};
use crate::error::{Error, Result};
use crate::weights::WeightSpec;

pub const NO_VERTEX: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExplorationWalk {
    /// `S(0), S(1), …, S(L)`.
    pub steps: Vec<i64>,
    /// `J_l` for `l = 1..=L` (index `l - 1`).
    pub new_vertex_flags: Vec<bool>,
    /// Degree of the vertex found at step `l`, 0 when `J_l = 0`.
    pub new_vertex_degree: Vec<u32>,
    /// Vertex found at step `l`, or [`NO_VERTEX`].
    pub discovered: Vec<u32>,
    /// `τ_1 < τ_2 < …`.
    pub component_boundaries: Vec<usize>,
    pub rescale: Option<(f64, f64)>,
}

impl ExplorationWalk {
    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_surplus(&self, l: usize) -> bool {
        l >= 1 && !self.new_vertex_flags[l - 1]
    }

    /// `S̄_n(t) = a_n⁻¹ S_n(⌊b_n t⌋)` on `points` equally spaced `t ∈ [0, t_max]`.
    pub fn rescaled(&self, consts: &ScalingConstants, t_max: f64, points: usize) -> Vec<(f64, f64)> {
        let last = self.len();
        (0..points)
            .map(|j| {
                let t = if points > 1 { t_max * j as f64 / (points - 1) as f64 } else { 0.0 };
                let l = ((consts.b_n * t).floor() as usize).min(last);
                (t, self.steps[l] as f64 / consts.a_n)
            })
            .collect()
    }

    /// Diagnostic view keeping only the `k` highest-degree vertices:
    /// `a_n⁻¹ Σ_{i≤k} dᵢ(1{i found by t·b_n} − dᵢ t b_n/ℓ_n) + λt`.
    pub fn truncated_view(
        &self,
        d: &DegreeSequence,
        consts: &ScalingConstants,
        k: usize,
        lambda: f64,
        t_max: f64,
        points: usize,
    ) -> Vec<(f64, f64)> {
        let k = k.min(d.n());
        let mut found_at = vec![usize::MAX; k];
        for (idx, &v) in self.discovered.iter().enumerate() {
            if (v as usize) < k {
                found_at[v as usize] = idx + 1;
            }
        }
        let ell = d.ell_n() as f64;
        (0..points)
            .map(|j| {
                let t = if points > 1 { t_max * j as f64 / (points - 1) as f64 } else { 0.0 };
                let l = consts.b_n * t;
                let mut acc = 0.0;
                for (&deg, &at) in d.degrees()[..k].iter().zip(&found_at[..k]) {
                    let di = deg as f64;
                    let hit = if (at as f64) <= l { 1.0 } else { 0.0 };
                    acc += di * (hit - di * l / ell);
                }
                (t, acc / consts.a_n + lambda * t)
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct ExploreOptions {
    pub weights: Vec<WeightSpec>,
    pub degree_histograms: bool,
}

#[derive(Clone, Debug)]
pub struct Exploration {
    pub walk: ExplorationWalk,
    /// Walk components in exploration order, then isolated degree-zero vertices.
    pub components: Vec<ComponentSummary>,
    pub graph: MultiGraph,
}

pub fn explore<R: Rng + ?Sized>(d: &DegreeSequence, rng: &mut R, weights: &[WeightSpec]) -> Result<Exploration> {
    explore_with(d, rng, &ExploreOptions { weights: weights.to_vec(), degree_histograms: false })
}

pub fn explore_with<R: Rng + ?Sized>(d: &DegreeSequence, rng: &mut R, opts: &ExploreOptions) -> Result<Exploration> {
    let deg = d.degrees();
    let n = deg.len();
    for w in &opts.weights {
        w.check_len(n)?;
    }
    let ell = d.ell_n() as usize;
    if ell % 2 == 1 {
        return Err(Error::OddTotalDegree(ell as u64));
    }

    // half-edges of vertex v occupy offset[v]..offset[v + 1]
    let mut offset = Vec::with_capacity(n + 1);
    let mut owner = Vec::with_capacity(ell);
    offset.push(0u32);
    for (v, &dv) in deg.iter().enumerate() {
        owner.extend(std::iter::repeat_n(v as u32, dv as usize));
        offset.push(owner.len() as u32);
    }
    let mut alive: Vec<u32> = (0..ell as u32).collect();
    let mut pos: Vec<u32> = (0..ell as u32).collect();
    let mut alive_deg: Vec<u32> = deg.to_vec();
    let mut cursor: Vec<u32> = offset[..n].to_vec();
    let mut found = vec![false; n];
    let mut queue: VecDeque<u32> = VecDeque::new();

    let kill = |h: u32, alive: &mut Vec<u32>, pos: &mut Vec<u32>| {
        let p = pos[h as usize] as usize;
        let last = *alive.last().unwrap();
        alive[p] = last;
        pos[last as usize] = p as u32;
        alive.pop();
        pos[h as usize] = u32::MAX;
    };

    let cap = ell / 2 + n + 1;
    let mut steps = Vec::with_capacity(cap);
    let mut flags = Vec::with_capacity(cap);
    let mut new_deg = Vec::with_capacity(cap);
    let mut discovered = Vec::with_capacity(cap);
    let mut boundaries = Vec::new();
    let mut edges = Vec::with_capacity(ell / 2);
    let mut components: Vec<ComponentSummary> = Vec::new();
    let mut s: i64 = 0;
    steps.push(0);

    let open = |v: u32, comp: &mut ComponentSummary, opts: &ExploreOptions| {
        comp.vertices += 1;
        comp.total_degree += deg[v as usize] as u64;
        for (j, w) in opts.weights.iter().enumerate() {
            comp.weight_totals[j] += w.values[v as usize];
        }
        if opts.degree_histograms {
            bump(&mut comp.degree_histogram, deg[v as usize]);
        }
    };

    while !alive.is_empty() {
        // start a component at the owner of a uniform unpaired half-edge
        let h = alive[rng.random_range(0..alive.len())];
        let v0 = owner[h as usize];
        found[v0 as usize] = true;
        let mut comp = ComponentSummary { weight_totals: vec![0.0; opts.weights.len()], ..Default::default() };
        open(v0, &mut comp, opts);
        s += deg[v0 as usize] as i64 - 2;
        steps.push(s);
        flags.push(true);
        new_deg.push(deg[v0 as usize]);
        discovered.push(v0);
        queue.push_back(v0);

        while let Some(&v) = queue.front() {
            if alive_deg[v as usize] == 0 {
                queue.pop_front();
                continue;
            }
            let mut e = cursor[v as usize];
            while pos[e as usize] == u32::MAX {
                e += 1;
            }
            cursor[v as usize] = e + 1;
            kill(e, &mut alive, &mut pos);
            alive_deg[v as usize] -= 1;
            let f = alive[rng.random_range(0..alive.len())];
            kill(f, &mut alive, &mut pos);
            let w = owner[f as usize];
            alive_deg[w as usize] -= 1;
            edges.push(if v <= w { (v, w) } else { (w, v) });
            comp.edges += 1;
            if found[w as usize] {
                comp.surplus += 1;
                s -= 2;
                flags.push(false);
                new_deg.push(0);
                discovered.push(NO_VERTEX);
            } else {
                found[w as usize] = true;
                open(w, &mut comp, opts);
                s += deg[w as usize] as i64 - 2;
                flags.push(true);
                new_deg.push(deg[w as usize]);
                discovered.push(w);
                if alive_deg[w as usize] > 0 {
                    queue.push_back(w);
                }
            }
            steps.push(s);
        }
        boundaries.push(steps.len() - 1);
        debug_assert_eq!(s, -2 * boundaries.len() as i64);
        debug_assert!(comp.euler_holds());
        components.push(comp);
    }

    for (v, &seen) in found.iter().enumerate().take(n) {
        if !seen {
            let mut comp = ComponentSummary { weight_totals: vec![0.0; opts.weights.len()], ..Default::default() };
            open(v as u32, &mut comp, opts);
            components.push(comp);
        }
    }

    Ok(Exploration {
        walk: ExplorationWalk {
            steps,
            new_vertex_flags: flags,
            new_vertex_degree: new_deg,
            discovered,
            component_boundaries: boundaries,
            rescale: None,
        },
        components,
        graph: MultiGraph { n, edges, degrees: deg.to_vec() },
    })
}

/// Edge counts per walk component, recovered from the hitting times of `-2k`.
pub fn components_from_walk(w: &ExplorationWalk) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    let mut prev = 0usize;
    let mut k = 1i64;
    for (l, &s) in w.steps.iter().enumerate().skip(1) {
        if s == -2 * k {
            out.push((l - prev - 1) as u64);
            prev = l;
            k += 1;
        }
    }
    if prev != w.steps.len() - 1 {
        return Err(Error::IncompleteWalk);
    }
    Ok(out)
}

/// `N_n(l)`: number of surplus pairings among steps `1..=l`.
pub fn surplus_process(w: &ExplorationWalk) -> Vec<u64> {
    let mut out = Vec::with_capacity(w.steps.len());
    let mut acc = 0u64;
    out.push(0);
    for &f in &w.new_vertex_flags {
        if !f {
            acc += 1;
        }
        out.push(acc);
    }
    out
}

pub fn rescaled_component_vector(summaries: &[ComponentSummary], consts: &ScalingConstants) -> OrderedPairVector {
    ord(summaries.iter().map(|c| (c.vertices as f64 / consts.b_n, c.surplus)).collect())
        .expect("component sizes are non-negative")
}

/// `(W_i / b_n, SP_i)` for the weight labelled `label`, ordered.
pub fn weighted_functionals(
    summaries: &[ComponentSummary],
    weights: &[WeightSpec],
    label: &str,
    consts: &ScalingConstants,
) -> Result<OrderedPairVector> {
    let j = weights
        .iter()
        .position(|w| w.label == label)
        .ok_or_else(|| Error::InvalidParameter(format!("no weight labelled `{label}`")))?;
    let mut pairs = Vec::with_capacity(summaries.len());
    for c in summaries {
        if c.weight_totals.len() != weights.len() {
            return Err(Error::LengthMismatch { expected: weights.len(), got: c.weight_totals.len() });
        }
        let x = c.weight_totals[j] / consts.b_n;
        pairs.push((x, if x > 0.0 { c.surplus } else { 0 }));
    }
    ord(pairs)
}
