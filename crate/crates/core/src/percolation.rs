//! Critical percolation on supercritical configuration models: Janson's
//! explosion, direct edge deletion, the window map `λ ↦ p_n(λ)`, and the
//! dynamic pairing process with its window sweeps.

use rand::Rng;
use rand_distr::{Binomial, Distribution, Exp};
use serde::{Deserialize, Serialize};

use crate::analysis::{ord, OrderedPairVector};
use crate::components::{components_from_edges, ComponentSummary};
use crate::config_model::{pair_degrees, MultiGraph};
use crate::degrees::{check_assumptions_with, compute_nu, AssumptionReport, DegreeSequence, PowerLawSpec, ReportOptions, ScalingConstants};
use crate::dsu::UnionFind;
use crate::error::{invalid, Error, Result};
use crate::weights::WeightSpec;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PercolationSpec {
    pub lambda: f64,
    pub p_n: f64,
    pub nu_n: f64,
}

/// `p_n(λ) = (1 + λ/c_n)/ν_n`.
pub fn window_probability(d: &DegreeSequence, consts: &ScalingConstants, lambda: f64) -> Result<PercolationSpec> {
    let nu_n = compute_nu(d)?;
    window_probability_for(nu_n, consts.c_n, lambda)
}

pub fn window_probability_for(nu_n: f64, c_n: f64, lambda: f64) -> Result<PercolationSpec> {
    if !(nu_n > 1.0) {
        return Err(Error::NotSupercritical(nu_n));
    }
    let p_n = (1.0 + lambda / c_n) / nu_n;
    if !(p_n > 0.0 && p_n <= 1.0) {
        return Err(Error::ProbabilityOutOfRange(p_n));
    }
    Ok(PercolationSpec { lambda, p_n, nu_n })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExplodedDegrees {
    /// Length `n + n_plus`; the first `n` entries keep the base vertex order.
    pub d_tilde: Vec<u32>,
    pub n: usize,
    pub n_plus: usize,
    pub p: f64,
}

impl ExplodedDegrees {
    pub fn red_ids(&self) -> std::ops::Range<usize> {
        self.n..self.n + self.n_plus
    }
}

/// Each half-edge is detached with probability `1 − √p` onto a fresh degree-one red vertex.
pub fn explode<R: Rng + ?Sized>(d: &DegreeSequence, p: f64, rng: &mut R) -> Result<ExplodedDegrees> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    let keep = p.sqrt();
    let mut d_tilde = Vec::with_capacity(d.n() + (d.ell_n() as f64 * (1.0 - keep)) as usize + 16);
    let mut n_plus = 0usize;
    for &di in d.degrees() {
        let kept = if keep >= 1.0 || di == 0 {
            di
        } else {
            Binomial::new(di as u64, keep).map_err(|e| invalid(e.to_string()))?.sample(rng) as u32
        };
        n_plus += (di - kept) as usize;
        d_tilde.push(kept);
    }
    d_tilde.resize(d.n() + n_plus, 1);
    Ok(ExplodedDegrees { d_tilde, n: d.n(), n_plus, p })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RemovalVariant {
    /// Delete the red vertices.
    DeleteRed,
    /// Delete `n_plus` degree-one vertices chosen uniformly.
    DeleteUniformDegreeOne,
}

#[derive(Clone, Debug)]
pub struct Percolated {
    pub graph: MultiGraph,
    pub components: Vec<ComponentSummary>,
}

/// Configuration model on the exploded sequence followed by degree-one removal.
/// Survivors are relabelled `0..n` in increasing original id.
pub fn percolate_explosion<R: Rng + ?Sized>(
    d: &DegreeSequence,
    spec: &PercolationSpec,
    rng: &mut R,
    variant: RemovalVariant,
) -> Result<Percolated> {
    let ex = explode(d, spec.p_n, rng)?;
    percolate_exploded(&ex, rng, variant)
}

pub fn percolate_exploded<R: Rng + ?Sized>(ex: &ExplodedDegrees, rng: &mut R, variant: RemovalVariant) -> Result<Percolated> {
    let total = ex.d_tilde.len();
    let edges = pair_degrees(&ex.d_tilde, rng)?;
    let mut removed = vec![false; total];
    match variant {
        RemovalVariant::DeleteRed => {
            for r in ex.red_ids() {
                removed[r] = true;
            }
        }
        RemovalVariant::DeleteUniformDegreeOne => {
            let mut ones: Vec<u32> = (0..total as u32).filter(|&v| ex.d_tilde[v as usize] == 1).collect();
            assert!(ones.len() >= ex.n_plus, "fewer degree-one vertices than red vertices");
            // partial Fisher-Yates
            for i in 0..ex.n_plus {
                let j = rng.random_range(i..ones.len());
                ones.swap(i, j);
                removed[ones[i] as usize] = true;
            }
        }
    }
    let mut relabel = vec![u32::MAX; total];
    let mut next = 0u32;
    for v in 0..total {
        if !removed[v] {
            relabel[v] = next;
            next += 1;
        }
    }
    let n_left = next as usize;
    let mut kept = Vec::with_capacity(edges.len());
    let mut degrees = vec![0u32; n_left];
    for (u, v) in edges {
        if removed[u as usize] || removed[v as usize] {
            continue;
        }
        let (a, b) = (relabel[u as usize], relabel[v as usize]);
        degrees[a as usize] += 1;
        degrees[b as usize] += 1;
        kept.push(if a <= b { (a, b) } else { (b, a) });
    }
    let components = components_from_edges(&degrees, &kept, &[], false);
    Ok(Percolated { graph: MultiGraph { n: n_left, edges: kept, degrees }, components })
}

/// Keeps each edge independently with probability `p`.
pub fn percolate_direct<R: Rng + ?Sized>(g: &MultiGraph, p: f64, rng: &mut R) -> Result<Percolated> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    let edges: Vec<(u32, u32)> = g.edges.iter().copied().filter(|_| rng.random_bool(p)).collect();
    let mut degrees = vec![0u32; g.n];
    for &(u, v) in &edges {
        degrees[u as usize] += 1;
        degrees[v as usize] += 1;
    }
    let components = components_from_edges(&degrees, &edges, &[], false);
    Ok(Percolated { graph: MultiGraph { n: g.n, edges, degrees }, components })
}

/// `t_n(λ) = ½ log(ν_n/(ν_n − 1)) + λ/(2(ν_n − 1)c_n)`; may be negative.
pub fn t_of_lambda(nu_n: f64, c_n: f64, lambda: f64) -> Result<f64> {
    if !(nu_n > 1.0) {
        return Err(Error::NotSupercritical(nu_n));
    }
    Ok(0.5 * (nu_n / (nu_n - 1.0)).ln() + lambda / (2.0 * (nu_n - 1.0) * c_n))
}

/// [`t_of_lambda`] clamped at 0, with a warning when clamping.
pub fn t_of_lambda_clamped(nu_n: f64, c_n: f64, lambda: f64) -> Result<f64> {
    let t = t_of_lambda(nu_n, c_n, lambda)?;
    if t < 0.0 {
        log::warn!("window point lambda = {lambda} maps to t = {t}; clamped to 0");
        return Ok(0.0);
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnapshotComponent {
    pub size: u64,
    pub surplus: u64,
    pub open: u64,
    pub edges: u64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub weights: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowSnapshot {
    pub lambda: f64,
    pub t: f64,
    /// Ordered by size, then surplus, descending; possibly truncated.
    pub components: Vec<SnapshotComponent>,
    /// `O_1/|C_(1)|` for the largest component.
    pub open_ratio: f64,
    #[serde(skip)]
    pub labels: Option<Vec<u32>>,
}

impl WindowSnapshot {
    pub fn ordered_pairs(&self, b_n: f64) -> OrderedPairVector {
        ord(self.components.iter().map(|c| (c.size as f64 / b_n, c.surplus)).collect())
            .expect("sizes are non-negative")
    }

    pub fn largest(&self) -> u64 {
        self.components.first().map(|c| c.size).unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub weights: Vec<WeightSpec>,
    /// Keep at most this many components per snapshot.
    pub keep_top: usize,
    /// Record each vertex's component label in snapshots.
    pub record_labels: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { weights: Vec::new(), keep_top: usize::MAX, record_labels: false }
    }
}

/// State of the dynamic pairing process: at rate `s₁` (the open half-edge
/// count) two uniform open half-edges are paired.
#[derive(Clone, Debug)]
pub struct SweepState {
    uf: UnionFind,
    surplus: Vec<u64>,
    open: Vec<u64>,
    edges_in: Vec<u64>,
    weights: Vec<Vec<f64>>,
    /// Owners of the currently open half-edges.
    pub open_pool: Vec<u32>,
    pub time: f64,
    pub event_count: u64,
    pub edges: Vec<(u32, u32)>,
    next_event: Option<f64>,
}

impl SweepState {
    pub fn new(d: &DegreeSequence, weights: &[WeightSpec]) -> Result<Self> {
        let n = d.n();
        for w in weights {
            w.check_len(n)?;
        }
        let mut open_pool = Vec::with_capacity(d.ell_n() as usize);
        for (v, &dv) in d.degrees().iter().enumerate() {
            open_pool.extend(std::iter::repeat_n(v as u32, dv as usize));
        }
        Ok(SweepState {
            uf: UnionFind::new(n),
            surplus: vec![0; n],
            open: d.degrees().iter().map(|&x| x as u64).collect(),
            edges_in: vec![0; n],
            weights: weights.iter().map(|w| w.values.clone()).collect(),
            open_pool,
            time: 0.0,
            event_count: 0,
            edges: Vec::new(),
            next_event: None,
        })
    }

    pub fn s1(&self) -> usize {
        self.open_pool.len()
    }

    /// Applies every event with time `≤ t`. The pending event time is kept, so
    /// the trajectory does not depend on where it is observed.
    pub fn advance_to<R: Rng + ?Sized>(&mut self, t: f64, rng: &mut R) {
        loop {
            if self.open_pool.len() < 2 {
                self.next_event = None;
                break;
            }
            let next = match self.next_event {
                Some(x) => x,
                None => {
                    let gap: f64 = Exp::new(self.open_pool.len() as f64).expect("positive rate").sample(rng);
                    let x = self.time + gap;
                    self.next_event = Some(x);
                    x
                }
            };
            if next > t {
                break;
            }
            self.time = next;
            self.next_event = None;
            self.pair_two(rng);
        }
        if self.time < t {
            self.time = t;
        }
    }

    pub fn run_to_end<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        self.advance_to(f64::INFINITY, rng);
    }

    fn pair_two<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let i = rng.random_range(0..self.open_pool.len());
        let a = self.open_pool.swap_remove(i);
        let j = rng.random_range(0..self.open_pool.len());
        let b = self.open_pool.swap_remove(j);
        self.event_count += 1;
        self.edges.push(if a <= b { (a, b) } else { (b, a) });
        let (ra, rb) = (self.uf.find(a), self.uf.find(b));
        if ra == rb {
            let r = ra as usize;
            self.surplus[r] += 1;
            self.open[r] -= 2;
            self.edges_in[r] += 1;
        } else {
            let (root, gone) = self.uf.union(ra, rb).expect("distinct roots");
            let (r, g) = (root as usize, gone as usize);
            self.surplus[r] += self.surplus[g];
            self.open[r] = self.open[r] + self.open[g] - 2;
            self.edges_in[r] += self.edges_in[g] + 1;
            for w in &mut self.weights {
                w[r] += w[g];
            }
        }
    }

    /// Σ over roots of open half-edges; equals `s₁`.
    pub fn open_total(&mut self) -> u64 {
        (0..self.uf.len() as u32).filter(|&v| self.uf.find(v) == v).map(|v| self.open[v as usize]).sum()
    }

    pub fn snapshot(&mut self, lambda: f64, t: f64, opts: &SweepOptions) -> WindowSnapshot {
        let n = self.uf.len();
        let mut comps = Vec::new();
        for v in 0..n as u32 {
            if self.uf.find(v) == v {
                let r = v as usize;
                comps.push(SnapshotComponent {
                    size: self.uf.size_of(v) as u64,
                    surplus: self.surplus[r],
                    open: self.open[r],
                    edges: self.edges_in[r],
                    weights: self.weights.iter().map(|w| w[r]).collect(),
                });
            }
        }
        finish_snapshot(comps, lambda, t, opts, if opts.record_labels { Some(self.uf.labels()) } else { None })
    }
}

fn finish_snapshot(
    mut comps: Vec<SnapshotComponent>,
    lambda: f64,
    t: f64,
    opts: &SweepOptions,
    labels: Option<Vec<u32>>,
) -> WindowSnapshot {
    comps.sort_by(|a, b| b.size.cmp(&a.size).then(b.surplus.cmp(&a.surplus)));
    comps.truncate(opts.keep_top);
    let open_ratio = comps.first().map(|c| c.open as f64 / c.size as f64).unwrap_or(0.0);
    WindowSnapshot { lambda, t, components: comps, open_ratio, labels }
}

fn window_times(d: &DegreeSequence, consts: &ScalingConstants, lambdas: &[f64]) -> Result<(f64, Vec<f64>)> {
    let nu_n = compute_nu(d)?;
    if !(nu_n > 1.0) {
        return Err(Error::NotSupercritical(nu_n));
    }
    if lambdas.windows(2).any(|w| w[0] > w[1]) {
        return Err(invalid("lambda grid must be sorted"));
    }
    let mut ts = Vec::with_capacity(lambdas.len());
    for &l in lambdas {
        let t = t_of_lambda(nu_n, consts.c_n, l)?;
        if t < 0.0 {
            return Err(Error::NegativeWindowTime { lambda: l, t });
        }
        ts.push(t);
    }
    Ok((nu_n, ts))
}

/// Snapshots of one dynamic pairing trajectory at `t_n(λ)` for each grid value;
/// each snapshot is the state after the last event at or before that time.
pub fn dynamic_sweep<R: Rng + ?Sized>(
    d: &DegreeSequence,
    consts: &ScalingConstants,
    lambdas: &[f64],
    rng: &mut R,
    opts: &SweepOptions,
) -> Result<Vec<WindowSnapshot>> {
    let (_, ts) = window_times(d, consts, lambdas)?;
    let mut st = SweepState::new(d, &opts.weights)?;
    let mut out = Vec::with_capacity(ts.len());
    for (&l, &t) in lambdas.iter().zip(&ts) {
        st.advance_to(t, rng);
        out.push(st.snapshot(l, t, opts));
    }
    Ok(out)
}

/// Result of the modified process started at `λ⋆`.
#[derive(Clone, Debug)]
pub struct ModifiedSweep {
    /// Modified graph; `open` is the frozen open-half-edge mass.
    pub snapshots: Vec<WindowSnapshot>,
    /// Subgraph made of the good edges (both half-edges fresh).
    pub good_snapshots: Vec<WindowSnapshot>,
    pub bad_edges: Vec<u64>,
    pub bad_surplus_edges: Vec<u64>,
    pub s_bar: u64,
    /// `(s̄₁(ν_n − 1)c_n)^{1/2}`.
    pub beta_n: f64,
    /// State at `λ⋆` before any modified event.
    pub start: WindowSnapshot,
}

/// From `t_n(λ⋆)` the open half-edges are frozen into a pool of size `s̄₁`; at
/// rate `s̄₁` two pool members are drawn independently with replacement and
/// their owners joined. Drawn half-edges stay in the pool. An edge is bad when
/// either half-edge was drawn before (or both draws coincide); the good edges
/// alone form a subgraph that pairs each half-edge at most once.
pub fn modified_sweep<R: Rng + ?Sized>(
    d: &DegreeSequence,
    consts: &ScalingConstants,
    lambda_star: f64,
    lambdas: &[f64],
    rng: &mut R,
    opts: &SweepOptions,
) -> Result<ModifiedSweep> {
    if lambdas.iter().any(|&l| l < lambda_star) {
        return Err(invalid("grid values must not precede lambda_star"));
    }
    let (nu_n, ts) = window_times(d, consts, lambdas)?;
    let t_star = t_of_lambda(nu_n, consts.c_n, lambda_star)?;
    if t_star < 0.0 {
        return Err(Error::NegativeWindowTime { lambda: lambda_star, t: t_star });
    }
    let mut dynamic = SweepState::new(d, &opts.weights)?;
    dynamic.advance_to(t_star, rng);
    let start = dynamic.snapshot(lambda_star, t_star, opts);

    let pool = dynamic.open_pool.clone();
    let s_bar = pool.len() as u64;
    let beta_n = (s_bar as f64 * (nu_n - 1.0) * consts.c_n).sqrt();
    let mut modified = dynamic.clone();
    let mut good = dynamic;
    // the good subgraph draws from `pool`, never from its own pool
    good.open_pool.clear();
    modified.open_pool.clear();
    let mut used = vec![false; pool.len()];
    let mut time = t_star;
    let mut bad = 0u64;
    let mut bad_sp = 0u64;
    let mut snapshots = Vec::with_capacity(ts.len());
    let mut good_snapshots = Vec::with_capacity(ts.len());
    let clock = if s_bar > 0 { Some(Exp::new(s_bar as f64).expect("positive rate")) } else { None };
    let mut pending: Option<f64> = None;
    let mut bad_at = Vec::with_capacity(ts.len());
    let mut bad_sp_at = Vec::with_capacity(ts.len());

    for (&l, &t) in lambdas.iter().zip(&ts) {
        if let Some(clock) = &clock {
            loop {
                let next = *pending.get_or_insert_with(|| time + clock.sample(rng));
                if next > t {
                    break;
                }
                time = next;
                pending = None;
                let i = rng.random_range(0..pool.len());
                let j = rng.random_range(0..pool.len());
                let (a, b) = (pool[i], pool[j]);
                let is_bad = i == j || used[i] || used[j];
                let same = modified.uf.find(a) == modified.uf.find(b);
                modified.join_frozen(a, b);
                if is_bad {
                    bad += 1;
                    if same {
                        bad_sp += 1;
                    }
                } else {
                    used[i] = true;
                    used[j] = true;
                    good.join_paired(a, b);
                }
            }
        }
        snapshots.push(modified.snapshot(l, t, opts));
        good_snapshots.push(good.snapshot(l, t, opts));
        bad_at.push(bad);
        bad_sp_at.push(bad_sp);
    }
    Ok(ModifiedSweep {
        snapshots,
        good_snapshots,
        bad_edges: bad_at,
        bad_surplus_edges: bad_sp_at,
        s_bar,
        beta_n,
        start,
    })
}

impl SweepState {
    /// Edge between owners whose half-edges remain open (modified process).
    fn join_frozen(&mut self, a: u32, b: u32) {
        self.edges.push(if a <= b { (a, b) } else { (b, a) });
        self.event_count += 1;
        let (ra, rb) = (self.uf.find(a), self.uf.find(b));
        if ra == rb {
            self.surplus[ra as usize] += 1;
            self.edges_in[ra as usize] += 1;
        } else {
            let (root, gone) = self.uf.union(ra, rb).expect("distinct roots");
            let (r, g) = (root as usize, gone as usize);
            self.surplus[r] += self.surplus[g];
            self.open[r] += self.open[g];
            self.edges_in[r] += self.edges_in[g] + 1;
            for w in &mut self.weights {
                w[r] += w[g];
            }
        }
    }

    /// Edge consuming one open half-edge at each end.
    fn join_paired(&mut self, a: u32, b: u32) {
        self.edges.push(if a <= b { (a, b) } else { (b, a) });
        self.event_count += 1;
        let (ra, rb) = (self.uf.find(a), self.uf.find(b));
        if ra == rb {
            let r = ra as usize;
            self.surplus[r] += 1;
            self.open[r] -= 2;
            self.edges_in[r] += 1;
        } else {
            let (root, gone) = self.uf.union(ra, rb).expect("distinct roots");
            let (r, g) = (root as usize, gone as usize);
            self.surplus[r] += self.surplus[g];
            self.open[r] = self.open[r] + self.open[g] - 2;
            self.edges_in[r] += self.edges_in[g] + 1;
            for w in &mut self.weights {
                w[r] += w[g];
            }
        }
    }
}

/// Every class of `fine` lies inside one class of `coarse`.
pub fn labels_refine(fine: &[u32], coarse: &[u32]) -> bool {
    if fine.len() != coarse.len() {
        return false;
    }
    let mut image: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
    fine.iter().zip(coarse).all(|(&f, &c)| *image.entry(f).or_insert(c) == c)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PercolatedReport {
    pub report: AssumptionReport,
    /// `θᵢ √p` for the reported ranks.
    pub theta_sqrt_p: Vec<f64>,
    /// `d̃_(i)/a_n ÷ θᵢ√p − 1`.
    pub relative_error: Vec<f64>,
}

/// Assumption diagnostics of the exploded sequence on the base scale `a_n, c_n`,
/// with `θᵢ = i^{-α}`.
pub fn verify_percolated_assumptions(
    ed: &ExplodedDegrees,
    spec: &PowerLawSpec,
    consts: &ScalingConstants,
    k_report: usize,
) -> Result<PercolatedReport> {
    let report = check_assumptions_with(&ed.d_tilde, spec, consts, ReportOptions { k_report, ..Default::default() })?;
    let sp = ed.p.sqrt();
    let theta_sqrt_p: Vec<f64> = (1..=report.theta_hat.len()).map(|i| (i as f64).powf(-consts.alpha) * sp).collect();
    let relative_error = report.theta_hat.iter().zip(&theta_sqrt_p).map(|(h, t)| h / t - 1.0).collect();
    Ok(PercolatedReport { report, theta_sqrt_p, relative_error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    fn seq(d: &[u32]) -> DegreeSequence {
        DegreeSequence::new(d.to_vec()).unwrap()
    }

    #[test]
    fn window_probability_examples() {
        assert!((window_probability_for(2.0, 100.0, 1.0).unwrap().p_n - 0.505).abs() < 1e-15);
        assert_eq!(window_probability_for(2.0, 100.0, 0.0).unwrap().p_n, 0.5);
        assert!(matches!(window_probability_for(2.0, 1.0, -5.0), Err(Error::ProbabilityOutOfRange(_))));
        assert!(window_probability_for(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn time_map() {
        assert!((t_of_lambda(2.0, 10.0, 0.0).unwrap() - 0.5 * 2f64.ln()).abs() < 1e-15);
        assert!(t_of_lambda(2.0, 10.0, 1.0).unwrap() > t_of_lambda(2.0, 10.0, 0.5).unwrap());
        assert!(t_of_lambda(0.9, 10.0, 0.0).is_err());
        assert_eq!(t_of_lambda_clamped(2.0, 1.0, -100.0).unwrap(), 0.0);
    }

    #[test]
    fn explosion_identity_at_p_one() {
        let d = seq(&[3, 2, 2, 1]);
        let e = explode(&d, 1.0, &mut stream(0, 0)).unwrap();
        assert_eq!(e.d_tilde, vec![3, 2, 2, 1]);
        assert_eq!(e.n_plus, 0);
    }

    #[test]
    fn explosion_near_zero_detaches_everything() {
        let d = seq(&[3, 2, 2, 1]);
        let e = explode(&d, 1e-300, &mut stream(0, 0)).unwrap();
        assert!(e.d_tilde[..4].iter().all(|&x| x == 0));
        assert_eq!(e.n_plus, 8);
        assert_eq!(e.d_tilde.iter().map(|&x| x as u64).sum::<u64>(), 8);
    }

    #[test]
    fn direct_percolation_extremes() {
        let g = crate::config_model::pair_half_edges(&seq(&[3, 3, 2, 2]), &mut stream(0, 0)).unwrap();
        let all = percolate_direct(&g, 1.0, &mut stream(1, 0)).unwrap();
        assert_eq!(all.graph.edges, g.edges);
        let none = percolate_direct(&g, 0.0, &mut stream(1, 0)).unwrap();
        assert!(none.graph.edges.is_empty());
        assert_eq!(none.components.len(), 4);
    }

    #[test]
    fn refinement_check() {
        assert!(labels_refine(&[0, 0, 2, 3], &[0, 0, 0, 3]));
        assert!(!labels_refine(&[0, 0, 2], &[0, 1, 2]));
    }
}
