//! Ordered (size, attribute) vectors, the `d_U` metric, and the statistical
//! comparisons used to set finite-n samples against simulated limits.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::config_model::pair_half_edges;
use crate::degrees::{compute_nu, DegreeSequence};
use crate::error::{invalid, Error, Result};

/// Pairs sorted by `x` descending, ties by `y` descending.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OrderedPairVector {
    pub pairs: Vec<(f64, u64)>,
}

impl OrderedPairVector {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `i`-th entry (0-based), `(0, 0)` past the end.
    pub fn get(&self, i: usize) -> (f64, u64) {
        self.pairs.get(i).copied().unwrap_or((0.0, 0))
    }
}

pub fn ord(mut pairs: Vec<(f64, u64)>) -> Result<OrderedPairVector> {
    for &(x, y) in &pairs {
        if !(x >= 0.0) {
            return Err(invalid(format!("negative or undefined size {x}")));
        }
        if x == 0.0 && y != 0 {
            return Err(invalid("a zero size must carry a zero attribute"));
        }
    }
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.cmp(&a.1)));
    Ok(OrderedPairVector { pairs })
}

/// `(Σ(x₁ᵢ−x₂ᵢ)²)^{1/2} + Σ|x₁ᵢy₁ᵢ − x₂ᵢy₂ᵢ|`, padding with `(0,0)`.
pub fn d_u(a: &OrderedPairVector, b: &OrderedPairVector) -> f64 {
    let m = a.len().max(b.len());
    let mut sq = 0.0;
    let mut l1 = 0.0;
    for i in 0..m {
        let (x1, y1) = a.get(i);
        let (x2, y2) = b.get(i);
        sq += (x1 - x2).powi(2);
        l1 += (x1 * y1 as f64 - x2 * y2 as f64).abs();
    }
    sq.sqrt() + l1
}

/// `Σ_{i>K} |C_(i)|² / b_n²`.
pub fn ell2_tail(sizes: &[u64], k: usize, b_n: f64) -> f64 {
    let mut s = sizes.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s.iter().skip(k).map(|&x| (x as f64 / b_n).powi(2)).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
    /// Set when the effective sample size is below 30.
    pub approximate: bool,
}

/// Kolmogorov survival function `Q(λ) = 2Σ(−1)^{k−1} e^{−2k²λ²}`.
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut acc = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * lambda * lambda).exp();
        acc += if k % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * acc).clamp(0.0, 1.0)
}

pub fn ks_two_sample(xs: &[f64], ys: &[f64]) -> Result<KsResult> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut a = xs.to_vec();
    let mut b = ys.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len(), b.len());
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < n && j < m {
        let v = if a[i] <= b[j] { a[i] } else { b[j] };
        while i < n && a[i] <= v {
            i += 1;
        }
        while j < m && b[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let ne = (n * m) as f64 / (n + m) as f64;
    let sq = ne.sqrt();
    let p = kolmogorov_sf((sq + 0.12 + 0.11 / sq) * d);
    Ok(KsResult { statistic: d, p_value: p, approximate: ne < 30.0 })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

fn chi_sf(stat: f64, dof: usize) -> f64 {
    if dof == 0 {
        return 1.0;
    }
    let dist = ChiSquared::new(dof as f64).expect("positive degrees of freedom");
    dist.sf(stat)
}

/// Goodness of fit of `observed` counts to cell probabilities `expected`.
pub fn chi_square_gof(observed: &[u64], expected: &[f64]) -> Result<ChiSquareResult> {
    if observed.len() != expected.len() {
        return Err(Error::LengthMismatch { expected: expected.len(), got: observed.len() });
    }
    let total: u64 = observed.iter().sum();
    if total == 0 {
        return Err(Error::EmptySample);
    }
    let mut stat = 0.0;
    let mut cells = 0;
    for (&o, &p) in observed.iter().zip(expected) {
        let e = p * total as f64;
        if e > 0.0 {
            stat += (o as f64 - e).powi(2) / e;
            cells += 1;
        } else if o > 0 {
            return Ok(ChiSquareResult { statistic: f64::INFINITY, dof: cells, p_value: 0.0 });
        }
    }
    let dof = cells.saturating_sub(1);
    Ok(ChiSquareResult { statistic: stat, dof, p_value: chi_sf(stat, dof) })
}

/// Two-sample homogeneity test on categorical tables. Cells whose pooled
/// expected count falls below 5 are merged into one.
pub fn chi_square_two_sample(a: &[u64], b: &[u64]) -> Result<ChiSquareResult> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { expected: a.len(), got: b.len() });
    }
    let (na, nb): (u64, u64) = (a.iter().sum(), b.iter().sum());
    if na == 0 || nb == 0 {
        return Err(Error::EmptySample);
    }
    let total = (na + nb) as f64;
    let mut cells: Vec<(u64, u64)> = Vec::new();
    let mut rest = (0u64, 0u64);
    for (&x, &y) in a.iter().zip(b) {
        let pooled = (x + y) as f64;
        if pooled * (na.min(nb) as f64) / total < 5.0 {
            rest.0 += x;
            rest.1 += y;
        } else {
            cells.push((x, y));
        }
    }
    if rest.0 + rest.1 > 0 {
        cells.push(rest);
    }
    let mut stat = 0.0;
    for &(x, y) in &cells {
        let pooled = (x + y) as f64;
        let ea = pooled * na as f64 / total;
        let eb = pooled * nb as f64 / total;
        stat += (x as f64 - ea).powi(2) / ea + (y as f64 - eb).powi(2) / eb;
    }
    let dof = cells.len().saturating_sub(1);
    Ok(ChiSquareResult { statistic: stat, dof, p_value: chi_sf(stat, dof) })
}

/// Total-variation distance between two empirical laws on a discrete space.
pub fn total_variation<K: Ord + Clone>(a: &BTreeMap<K, u64>, b: &BTreeMap<K, u64>) -> f64 {
    let na: u64 = a.values().sum();
    let nb: u64 = b.values().sum();
    let mut keys: Vec<&K> = a.keys().chain(b.keys()).collect();
    keys.sort();
    keys.dedup();
    0.5 * keys
        .into_iter()
        .map(|k| {
            let pa = *a.get(k).unwrap_or(&0) as f64 / na.max(1) as f64;
            let pb = *b.get(k).unwrap_or(&0) as f64 / nb.max(1) as f64;
            (pa - pb).abs()
        })
        .sum::<f64>()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n: usize,
    pub mean: f64,
    pub sd: f64,
    pub se: f64,
    pub cv: f64,
}

pub fn summarize(xs: &[f64]) -> Result<Summary> {
    if xs.is_empty() {
        return Err(Error::EmptySample);
    }
    let n = xs.len();
    let mean = xs.iter().sum::<f64>() / n as f64;
    let var = if n > 1 { xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64 } else { 0.0 };
    let sd = var.sqrt();
    Ok(Summary { n, mean, sd, se: sd / (n as f64).sqrt(), cv: sd / mean.abs() })
}

/// Acceptance-style report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub test: String,
    pub statistic: f64,
    pub p: f64,
    pub n: u64,
    pub replicates: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitComparison {
    pub rank: usize,
    pub graph_replicates: usize,
    pub limit_replicates: usize,
    pub ks: KsResult,
    pub joint: ChiSquareResult,
    pub size_buckets: Vec<f64>,
}

pub const MIN_REPLICATES: usize = 30;

/// KS on the rank-`rank` sizes (1-based) plus a chi-square on the joint
/// (size bucket × surplus ∈ {0,1,2,3+}) table, size buckets at pooled quartiles.
pub fn compare_to_limit(
    graph_samples: &[OrderedPairVector],
    limit_samples: &[OrderedPairVector],
    rank: usize,
) -> Result<LimitComparison> {
    for s in [graph_samples, limit_samples] {
        if s.len() < MIN_REPLICATES {
            return Err(Error::InsufficientReplicates { need: MIN_REPLICATES, got: s.len() });
        }
    }
    if rank == 0 {
        return Err(invalid("rank is 1-based"));
    }
    let pick = |v: &[OrderedPairVector]| -> Vec<(f64, u64)> { v.iter().map(|z| z.get(rank - 1)).collect() };
    let g = pick(graph_samples);
    let l = pick(limit_samples);
    let gx: Vec<f64> = g.iter().map(|p| p.0).collect();
    let lx: Vec<f64> = l.iter().map(|p| p.0).collect();
    let ks = ks_two_sample(&gx, &lx)?;

    let mut pooled: Vec<f64> = gx.iter().chain(&lx).copied().collect();
    pooled.sort_by(f64::total_cmp);
    let q = |f: f64| pooled[((pooled.len() - 1) as f64 * f).round() as usize];
    let mut edges = vec![q(0.25), q(0.5), q(0.75)];
    edges.dedup();
    let cell = |(x, y): (f64, u64)| -> usize {
        let b = edges.iter().filter(|&&e| x > e).count();
        b * 4 + (y.min(3) as usize)
    };
    let cells = (edges.len() + 1) * 4;
    let mut ta = vec![0u64; cells];
    let mut tb = vec![0u64; cells];
    for &p in &g {
        ta[cell(p)] += 1;
    }
    for &p in &l {
        tb[cell(p)] += 1;
    }
    let joint = chi_square_two_sample(&ta, &tb)?;
    Ok(LimitComparison {
        rank,
        graph_replicates: graph_samples.len(),
        limit_replicates: limit_samples.len(),
        ks,
        joint,
        size_buckets: edges,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SusceptibilityCheck {
    pub empirical_mean: f64,
    pub standard_error: f64,
    pub bound: f64,
    pub samples: usize,
}

/// `E|C(V_n)|` over independent (graph, uniform vertex) draws against
/// `1 + E[D_n]/(1 − ν_n)`.
pub fn susceptibility_check<R: Rng + ?Sized>(
    d: &DegreeSequence,
    samples: usize,
    rng: &mut R,
) -> Result<SusceptibilityCheck> {
    let nu = compute_nu(d)?;
    if nu >= 1.0 {
        return Err(Error::NotSubcritical(nu));
    }
    if samples == 0 {
        return Err(Error::EmptySample);
    }
    let n = d.n();
    let mean_d = d.ell_n() as f64 / n as f64;
    let mut sizes = Vec::with_capacity(samples);
    for _ in 0..samples {
        let g = pair_half_edges(d, rng)?;
        let v = rng.random_range(0..n) as u32;
        sizes.push(component_size_of(&g.adjacency(), v) as f64);
    }
    let s = summarize(&sizes)?;
    Ok(SusceptibilityCheck {
        empirical_mean: s.mean,
        standard_error: s.se,
        bound: 1.0 + mean_d / (1.0 - nu),
        samples,
    })
}

fn component_size_of(adj: &[Vec<u32>], v: u32) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![v];
    seen[v as usize] = true;
    let mut count = 0;
    while let Some(x) = stack.pop() {
        count += 1;
        for &y in &adj[x as usize] {
            if !seen[y as usize] {
                seen[y as usize] = true;
                stack.push(y);
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    #[test]
    fn ord_examples() {
        let z = ord(vec![(2.0, 1), (2.0, 3), (1.0, 0)]).unwrap();
        assert_eq!(z.pairs, vec![(2.0, 3), (2.0, 1), (1.0, 0)]);
        assert_eq!(ord(z.pairs.clone()).unwrap(), z);
        assert!(ord(vec![]).unwrap().is_empty());
        assert!(ord(vec![(-1.0, 0)]).is_err());
    }

    #[test]
    fn metric_examples() {
        let a = OrderedPairVector { pairs: vec![(1.0, 2)] };
        let e = OrderedPairVector::default();
        assert_eq!(d_u(&a, &e), 3.0);
        assert_eq!(d_u(&a, &a), 0.0);
    }

    #[test]
    fn tail_sums() {
        let s = [3, 1, 2];
        assert_eq!(ell2_tail(&s, 5, 1.0), 0.0);
        assert_eq!(ell2_tail(&s, 0, 1.0), 14.0);
        assert_eq!(ell2_tail(&s, 1, 1.0), 5.0);
    }

    #[test]
    fn ks_examples() {
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[1.0, 2.0]).unwrap().statistic, 0.0);
        assert_eq!(ks_two_sample(&[0.0], &[1.0]).unwrap().statistic, 1.0);
        assert!(ks_two_sample(&[], &[1.0]).is_err());
    }

    #[test]
    fn kolmogorov_reference_points() {
        // scipy.special.kolmogorov
        assert!((kolmogorov_sf(1.0) - 0.26999967167735456).abs() < 1e-12);
        assert!((kolmogorov_sf(1.358) - 0.05002679733444698).abs() < 1e-12);
    }

    #[test]
    fn gof_perfect_fit() {
        let r = chi_square_gof(&[25, 25, 50], &[0.25, 0.25, 0.5]).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.dof, 2);
        assert!((r.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn susceptibility_two_leaves() {
        let d = DegreeSequence::new(vec![1, 1]).unwrap();
        let r = susceptibility_check(&d, 50, &mut stream(1, 0)).unwrap();
        assert_eq!(r.empirical_mean, 2.0);
        assert_eq!(r.bound, 2.0);
        let sup = DegreeSequence::new(vec![3, 3, 2]).unwrap();
        assert!(matches!(susceptibility_check(&sup, 5, &mut stream(1, 0)), Err(Error::NotSubcritical(_))));
    }
}
