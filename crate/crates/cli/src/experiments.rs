//! Replicated graph-side and limit-side samples shared by `compare` and the
//! acceptance suite.

use heavycrit::analysis::{compare_to_limit, LimitComparison, OrderedPairVector};
use heavycrit::exploration::{explore_with, rescaled_component_vector, ExploreOptions};
use heavycrit::levy::{excursions, sample_marks_with_rate, sample_path, theta_from_powerlaw};
use heavycrit::{compute_nu, DegreeSequence, PowerLawSpec, Result, ScalingConstants, ThetaSpec, WeightSpec};

use crate::replicate::run_replicates;

/// One explored configuration model, rescaled.
#[derive(Clone, Debug)]
pub struct GraphSample {
    pub vector: OrderedPairVector,
    /// Per weight, `W(C_(1))/|C_(1)|` for the largest component.
    pub largest_weight_ratio: Vec<f64>,
}

pub fn graph_samples(
    d: &DegreeSequence,
    consts: &ScalingConstants,
    weights: &[WeightSpec],
    replicates: usize,
    seed: u64,
    threads: usize,
) -> Result<Vec<GraphSample>> {
    let opts = ExploreOptions { weights: weights.to_vec(), degree_histograms: false };
    run_replicates(threads, seed, replicates, |_, rng| {
        let x = explore_with(d, rng, &opts)?;
        let largest = x
            .components
            .iter()
            .max_by(|a, b| a.vertices.cmp(&b.vertices).then(b.surplus.cmp(&a.surplus)))
            .expect("at least one component");
        let largest_weight_ratio = largest.weight_totals.iter().map(|w| w / largest.vertices as f64).collect();
        Ok(GraphSample { vector: rescaled_component_vector(&x.components, consts), largest_weight_ratio })
    })
}

pub fn levy_samples(
    theta: &ThetaSpec,
    mark_rate: f64,
    replicates: usize,
    seed: u64,
    threads: usize,
) -> Result<Vec<OrderedPairVector>> {
    run_replicates(threads, seed, replicates, |_, rng| {
        let path = sample_path(theta, rng)?;
        Ok(sample_marks_with_rate(&excursions(&path), mark_rate, rng)?.pairs)
    })
}

/// Lévy parameters matched to a degree sequence: `μ = ℓ_n/n`, `λ = c_n(ν_n − 1)`
/// unless overridden.
pub fn matched_theta(
    spec: &PowerLawSpec,
    d: &DegreeSequence,
    consts: &ScalingConstants,
    k: usize,
    horizon: f64,
    lambda: Option<f64>,
) -> Result<ThetaSpec> {
    let mu = d.ell_n() as f64 / d.n() as f64;
    let lambda = match lambda {
        Some(l) => l,
        None => consts.c_n * (compute_nu(d)? - 1.0),
    };
    let mut t = theta_from_powerlaw(spec, k, mu, horizon, None)?;
    t.lambda = lambda;
    Ok(t)
}

pub struct GraphVsLimit {
    pub comparison: LimitComparison,
    pub graph: Vec<GraphSample>,
    pub theta: ThetaSpec,
}

/// Graph replicates on `d` against Lévy replicates with matched θ and marks at
/// rate `1/μ`.
#[allow(clippy::too_many_arguments)]
pub fn graph_vs_limit(
    spec: &PowerLawSpec,
    d: &DegreeSequence,
    consts: &ScalingConstants,
    weights: &[WeightSpec],
    replicates: usize,
    limit_replicates: usize,
    k: usize,
    horizon: f64,
    levy_lambda: Option<f64>,
    seed: u64,
    threads: usize,
) -> Result<GraphVsLimit> {
    let theta = matched_theta(spec, d, consts, k, horizon, levy_lambda)?;
    let graph = graph_samples(d, consts, weights, replicates, seed, threads)?;
    let limit = levy_samples(&theta, theta.graph_mark_rate(), limit_replicates, seed ^ 0x05ee_d1e5, threads)?;
    let gv: Vec<OrderedPairVector> = graph.iter().map(|g| g.vector.clone()).collect();
    let comparison = compare_to_limit(&gv, &limit, 1)?;
    Ok(GraphVsLimit { comparison, graph, theta })
}
