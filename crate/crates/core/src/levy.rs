//! Event-driven simulation of the thinned Lévy process
//! `S̄(t) = Σᵢ θᵢ(1{ξᵢ ≤ t} − θᵢt/μ) + λt`, `ξᵢ ~ Exp(θᵢ/μ)`, truncated to `K` terms,
//! with its reflection, excursions, excursion areas and Poisson surplus marks.
//!
//! The drift `λ − Σ_{i≤K} θᵢ²/μ` is the same on every linear piece, so a path is
//! its jump list plus one slope, and all excursion quantities are closed form.

use rand::Rng;
use rand_distr::{Distribution, Exp, Poisson};
use serde::{Deserialize, Serialize};

use crate::analysis::{ord, OrderedPairVector};
use crate::degrees::{GammaCoupling, PowerLawSpec};
use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaSpec {
    pub thetas: Vec<f64>,
    pub mu: f64,
    pub lambda: f64,
    pub horizon: f64,
}

impl ThetaSpec {
    pub fn new(thetas: Vec<f64>, mu: f64, lambda: f64, horizon: f64) -> Result<Self> {
        let s = ThetaSpec { thetas, mu, lambda, horizon };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.thetas.iter().any(|t| !(*t > 0.0) || !t.is_finite()) {
            return Err(invalid("thetas must be positive and finite"));
        }
        if self.thetas.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid("thetas must be non-increasing"));
        }
        if !(self.mu > 0.0) {
            return Err(invalid(format!("mu must be positive, got {}", self.mu)));
        }
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return Err(invalid(format!("horizon must be positive, got {}", self.horizon)));
        }
        if !self.lambda.is_finite() {
            return Err(invalid("lambda must be finite"));
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.thetas.len()
    }

    pub fn drift(&self) -> f64 {
        self.lambda - self.thetas.iter().map(|t| t * t).sum::<f64>() / self.mu
    }

    /// Partial sums `(Σθᵢ², Σθᵢ³)` over the retained terms.
    pub fn moment_partials(&self) -> (f64, f64) {
        self.thetas.iter().fold((0.0, 0.0), |(a, b), t| (a + t * t, b + t * t * t))
    }

    /// Surplus marks accrue at rate `refl/μ` in the graph limit.
    pub fn graph_mark_rate(&self) -> f64 {
        1.0 / self.mu
    }
}

/// `θᵢ = i^{-α}` for `i ≤ K` (the `d₁/a_n → 1` scale), optionally divided by
/// `√ν` as for percolation limits.
pub fn theta_from_powerlaw(spec: &PowerLawSpec, k: usize, mu: f64, horizon: f64, nu: Option<f64>) -> Result<ThetaSpec> {
    spec.validate()?;
    if k == 0 {
        return Err(invalid("K must be at least 1"));
    }
    let scale = nu.map(|v| 1.0 / v.sqrt()).unwrap_or(1.0);
    let alpha = spec.alpha();
    let thetas = (1..=k).map(|i| scale * (i as f64).powf(-alpha)).collect();
    ThetaSpec::new(thetas, mu, spec.lambda, horizon)
}

/// `θᵢ = (Γ_{n+1}/(n Γᵢ))^α`, the Gamma-coupled analogue.
pub fn theta_from_gamma(
    spec: &PowerLawSpec,
    coupling: &GammaCoupling,
    k: usize,
    mu: f64,
    horizon: f64,
) -> Result<ThetaSpec> {
    spec.validate()?;
    let n = coupling.gammas.len() as f64;
    let norm = coupling.gamma_n_plus_1 / n;
    let alpha = spec.alpha();
    let thetas = coupling.gammas.iter().take(k).map(|g| (norm / g).powf(alpha)).collect();
    ThetaSpec::new(thetas, mu, spec.lambda, horizon)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevyPath {
    pub jump_times: Vec<f64>,
    pub jump_index: Vec<u32>,
    pub jump_height: Vec<f64>,
    pub drift: f64,
    pub horizon: f64,
    /// `cumulative[j]` = total height of the first `j` jumps.
    cumulative: Vec<f64>,
}

impl LevyPath {
    /// Builds a path from explicit jumps `(time, index)` with `index` into `spec.thetas`.
    pub fn from_jumps(spec: &ThetaSpec, mut jumps: Vec<(f64, u32)>) -> Result<Self> {
        spec.validate()?;
        if jumps.iter().any(|&(t, i)| !(t >= 0.0) || i as usize >= spec.k()) {
            return Err(invalid("jump times must be non-negative with indices below K"));
        }
        jumps.retain(|&(t, _)| t <= spec.horizon);
        jumps.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let jump_times: Vec<f64> = jumps.iter().map(|j| j.0).collect();
        let jump_index: Vec<u32> = jumps.iter().map(|j| j.1).collect();
        let jump_height: Vec<f64> = jump_index.iter().map(|&i| spec.thetas[i as usize]).collect();
        let mut cumulative = Vec::with_capacity(jumps.len() + 1);
        cumulative.push(0.0);
        let mut acc = 0.0;
        for h in &jump_height {
            acc += h;
            cumulative.push(acc);
        }
        Ok(LevyPath { jump_times, jump_index, jump_height, drift: spec.drift(), horizon: spec.horizon, cumulative })
    }

    /// `S̄(t)`, right-continuous.
    pub fn value_at(&self, t: f64) -> f64 {
        let k = self.jump_times.partition_point(|&x| x <= t);
        self.cumulative[k] + self.drift * t
    }

    /// `S̄(t−)`.
    pub fn left_limit(&self, t: f64) -> f64 {
        let k = self.jump_times.partition_point(|&x| x < t);
        self.cumulative[k] + self.drift * t
    }

    pub fn jumps(&self) -> usize {
        self.jump_times.len()
    }
}

pub fn sample_path<R: Rng + ?Sized>(spec: &ThetaSpec, rng: &mut R) -> Result<LevyPath> {
    spec.validate()?;
    let mut jumps = Vec::new();
    for (i, &th) in spec.thetas.iter().enumerate() {
        let xi: f64 = Exp::new(th / spec.mu).map_err(|e| invalid(e.to_string()))?.sample(rng);
        if xi <= spec.horizon {
            jumps.push((xi, i as u32));
        }
    }
    LevyPath::from_jumps(spec, jumps)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Excursion {
    pub l: f64,
    pub r: f64,
    pub length: f64,
    pub area: f64,
    /// Running minimum held during the excursion.
    pub floor: f64,
    pub truncated: bool,
}

/// Excursions above the running minimum, in chronological order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reflected {
    pub path: LevyPath,
    pub chronological: Vec<Excursion>,
}

impl Reflected {
    /// `S̄(t) − min_{u≤t} S̄(u)`; exactly zero off the excursion intervals.
    pub fn refl(&self, t: f64) -> f64 {
        let k = self.chronological.partition_point(|e| e.l <= t);
        if k == 0 {
            return 0.0;
        }
        let e = &self.chronological[k - 1];
        if t < e.r || (e.truncated && t <= e.r) {
            (self.path.value_at(t) - e.floor).max(0.0)
        } else {
            0.0
        }
    }

    pub fn running_min(&self, t: f64) -> f64 {
        self.path.value_at(t) - self.refl(t)
    }

    /// `∫_0^t refl(u) du` over completed and partial excursions.
    pub fn area_to(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for e in &self.chronological {
            if e.l >= t {
                break;
            }
            if e.r <= t {
                acc += e.area;
            } else {
                acc += piece_area(&self.path, e.l, t, e.floor);
            }
        }
        acc
    }
}

/// Area of `S̄ − floor` over `[a, b]`, assuming `S̄ ≥ floor` there.
fn piece_area(path: &LevyPath, a: f64, b: f64, floor: f64) -> f64 {
    let start = path.jump_times.partition_point(|&x| x <= a);
    let mut acc = 0.0;
    let mut t = a;
    let mut v = path.value_at(a) - floor;
    for j in start..path.jump_times.len() {
        let tj = path.jump_times[j];
        if tj >= b {
            break;
        }
        let end = v + path.drift * (tj - t);
        acc += 0.5 * (v + end) * (tj - t);
        v = end + path.jump_height[j];
        t = tj;
    }
    let end = v + path.drift * (b - t);
    acc + 0.5 * (v + end) * (b - t)
}

pub fn reflect(path: &LevyPath) -> Reflected {
    let s = path.drift;
    let horizon = path.horizon;
    let mut out = Vec::new();
    let mut floor = 0.0;
    let mut cur_t = 0.0;
    let mut cur_v = 0.0;
    // open excursion: (start, accumulated area)
    let mut open: Option<(f64, f64)> = None;
    if s > 0.0 {
        open = Some((0.0, 0.0));
    }
    let n = path.jump_times.len();
    for j in 0..=n {
        let (tj, hj) = if j < n { (path.jump_times[j], path.jump_height[j]) } else { (horizon, 0.0) };
        let end_v = cur_v + s * (tj - cur_t);
        match open {
            Some((l, area)) => {
                if s < 0.0 && end_v <= floor {
                    let r = cur_t + (cur_v - floor) / (-s);
                    let a = area + 0.5 * (cur_v - floor) * (r - cur_t);
                    out.push(Excursion { l, r, length: r - l, area: a, floor, truncated: false });
                    open = None;
                    floor = end_v;
                } else {
                    let a = area + 0.5 * ((cur_v - floor) + (end_v - floor)) * (tj - cur_t);
                    open = Some((l, a));
                }
            }
            None => {
                floor = floor.min(end_v);
            }
        }
        if j == n {
            break;
        }
        if open.is_none() {
            floor = end_v;
            open = Some((tj, 0.0));
        }
        cur_t = tj;
        cur_v = end_v + hj;
    }
    if let Some((l, area)) = open {
        out.push(Excursion { l, r: horizon, length: horizon - l, area, floor, truncated: true });
    }
    Reflected { path: path.clone(), chronological: out }
}

/// Excursions ordered by length descending (ties by area descending).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExcursionSet {
    pub excursions: Vec<Excursion>,
}

impl ExcursionSet {
    pub fn completed(&self) -> impl Iterator<Item = &Excursion> {
        self.excursions.iter().filter(|e| !e.truncated)
    }

    /// Length of the `rank`-th (1-based) longest completed excursion, 0 if absent.
    pub fn gamma(&self, rank: usize) -> f64 {
        self.completed().nth(rank.saturating_sub(1)).map(|e| e.length).unwrap_or(0.0)
    }

    pub fn total_area(&self) -> f64 {
        self.excursions.iter().map(|e| e.area).sum()
    }
}

pub fn excursions(path: &LevyPath) -> ExcursionSet {
    from_reflected(&reflect(path))
}

pub fn from_reflected(r: &Reflected) -> ExcursionSet {
    let mut excursions = r.chronological.clone();
    excursions.sort_by(|a, b| b.length.total_cmp(&a.length).then(b.area.total_cmp(&a.area)));
    ExcursionSet { excursions }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkedLimitVector {
    /// `ord(γᵢ, N(γᵢ))` over completed excursions.
    pub pairs: OrderedPairVector,
    /// Marks aligned with `ExcursionSet::excursions` (truncated ones included).
    pub marks: Vec<u64>,
}

/// `N(γᵢ) ~ Poisson(rate · area(γᵢ))` independently given the path.
pub fn sample_marks_with_rate<R: Rng + ?Sized>(e: &ExcursionSet, rate: f64, rng: &mut R) -> Result<MarkedLimitVector> {
    if !(rate >= 0.0) {
        return Err(invalid("mark rate must be non-negative"));
    }
    let mut marks = Vec::with_capacity(e.excursions.len());
    for ex in &e.excursions {
        let mean = rate * ex.area;
        let m = if mean > 0.0 {
            Poisson::new(mean).map_err(|err| invalid(err.to_string()))?.sample(rng) as u64
        } else {
            0
        };
        marks.push(m);
    }
    let pairs = e
        .excursions
        .iter()
        .zip(&marks)
        .filter(|(ex, _)| !ex.truncated && ex.length > 0.0)
        .map(|(ex, &m)| (ex.length, m))
        .collect();
    Ok(MarkedLimitVector { pairs: ord(pairs)?, marks })
}

/// Marks with intensity `refl` itself.
pub fn sample_marks<R: Rng + ?Sized>(e: &ExcursionSet, rng: &mut R) -> Result<MarkedLimitVector> {
    sample_marks_with_rate(e, 1.0, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    fn one_jump() -> (ThetaSpec, LevyPath) {
        let spec = ThetaSpec::new(vec![1.0], 1.0, 0.0, 2.0).unwrap();
        let p = LevyPath::from_jumps(&spec, vec![(0.5, 0)]).unwrap();
        (spec, p)
    }

    #[test]
    fn pure_drift_paths() {
        let spec = ThetaSpec::new(vec![], 1.0, -1.0, 5.0).unwrap();
        let p = sample_path(&spec, &mut stream(0, 0)).unwrap();
        assert_eq!(p.jumps(), 0);
        assert_eq!(p.value_at(2.0), -2.0);
        let r = reflect(&p);
        assert_eq!(r.refl(3.0), 0.0);
        assert!(excursions(&p).excursions.is_empty());

        let up = ThetaSpec::new(vec![], 1.0, 2.0, 5.0).unwrap();
        let r = reflect(&sample_path(&up, &mut stream(0, 0)).unwrap());
        assert_eq!(r.refl(1.5), 3.0);
        assert!(r.chronological[0].truncated);
    }

    #[test]
    fn single_jump_values() {
        let (_, p) = one_jump();
        assert!((p.value_at(0.4) + 0.4).abs() < 1e-15);
        assert!((p.value_at(0.6) - 0.4).abs() < 1e-15);
        let r = reflect(&p);
        assert!((r.refl(0.6) - 0.9).abs() < 1e-15);
        assert_eq!(r.refl(0.3), 0.0);
    }

    #[test]
    fn single_jump_excursion() {
        let (_, p) = one_jump();
        let e = excursions(&p);
        assert_eq!(e.excursions.len(), 1);
        let x = e.excursions[0];
        assert!((x.l - 0.5).abs() < 1e-15);
        assert!((x.r - 1.5).abs() < 1e-15);
        assert!((x.length - 1.0).abs() < 1e-15);
        assert!((x.area - 0.5).abs() < 1e-15);
        assert!(!x.truncated);
    }

    #[test]
    fn zero_area_means_no_marks() {
        let e = ExcursionSet {
            excursions: vec![Excursion { l: 1.0, r: 1.0, length: 0.0, area: 0.0, floor: 0.0, truncated: false }],
        };
        for s in 0..20 {
            assert_eq!(sample_marks(&e, &mut stream(s, 0)).unwrap().marks, vec![0]);
        }
    }

    #[test]
    fn theta_examples() {
        let spec = PowerLawSpec::pure(3.5, 0.0).unwrap();
        let t = theta_from_powerlaw(&spec, 5, 1.0, 30.0, None).unwrap();
        assert_eq!(t.thetas[0], 1.0);
        assert!((t.thetas[1] - 0.757_858_283_255_198_9).abs() < 1e-15);
    }
}
