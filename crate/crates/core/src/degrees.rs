//! Power-law degree sequences: quantile construction, Gamma-coupled i.i.d.
//! construction, scaling constants and assumption diagnostics.
//!
//! Tail convention: `P(D ≥ k) = min(1, C_F·L₀(k)·k^{-(τ-1)})` for integers `k ≥ 1`.
//! Generated degrees are clipped at 1, so the effective law of `D` puts no mass at 0.
//!
//! Normalisation: `L(n)` is chosen so that `d₁/a_n → 1`, giving `θᵢ = i^{-α}`
//! (for constant `L₀ = c` this is `L = (C_F·c)^α`).

use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::numerics::{bisect_increasing, series_sum};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum SlowlyVarying {
    Constant(f64),
    /// `L₀(x) = (1 + ln x)^p`
    LogPower(f64),
}

impl SlowlyVarying {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            SlowlyVarying::Constant(c) => c,
            SlowlyVarying::LogPower(p) => (1.0 + x.max(1.0).ln()).powf(p),
        }
    }
}

impl Default for SlowlyVarying {
    fn default() -> Self {
        SlowlyVarying::Constant(1.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerLawSpec {
    pub tau: f64,
    pub c_f: f64,
    pub slowly_varying: SlowlyVarying,
    pub lambda: f64,
}

impl PowerLawSpec {
    pub fn new(tau: f64, c_f: f64, slowly_varying: SlowlyVarying, lambda: f64) -> Result<Self> {
        let s = PowerLawSpec { tau, c_f, slowly_varying, lambda };
        s.validate()?;
        Ok(s)
    }

    pub fn pure(tau: f64, lambda: f64) -> Result<Self> {
        Self::new(tau, 1.0, SlowlyVarying::Constant(1.0), lambda)
    }

    /// Spec whose tail constant makes the limiting law exactly critical (`ν = 1`).
    pub fn critical(tau: f64, slowly_varying: SlowlyVarying, lambda: f64) -> Result<Self> {
        let c_f = critical_tail_constant(tau, slowly_varying)?;
        Self::new(tau, c_f, slowly_varying, lambda)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 3.0 && self.tau < 4.0) {
            return Err(Error::TauOutOfRange(self.tau));
        }
        if !(self.c_f > 0.0) || !self.c_f.is_finite() {
            return Err(invalid(format!("tail constant must be positive, got {}", self.c_f)));
        }
        if !self.lambda.is_finite() {
            return Err(invalid("lambda must be finite"));
        }
        match self.slowly_varying {
            SlowlyVarying::Constant(c) if !(c > 0.0) => {
                Err(invalid(format!("slowly varying constant must be positive, got {c}")))
            }
            SlowlyVarying::LogPower(p) if !(p < self.tau - 1.0) || !p.is_finite() => Err(invalid(
                format!("log power {p} must be below tau - 1 to keep the tail monotone"),
            )),
            _ => Ok(()),
        }
    }

    pub fn alpha(&self) -> f64 {
        1.0 / (self.tau - 1.0)
    }

    pub fn rho(&self) -> f64 {
        (self.tau - 2.0) / (self.tau - 1.0)
    }

    pub fn eta(&self) -> f64 {
        (self.tau - 3.0) / (self.tau - 1.0)
    }

    /// `P(D ≥ k)` before clipping, for real `k ≥ 1`.
    pub fn tail(&self, k: f64) -> f64 {
        (self.c_f * self.slowly_varying.eval(k) * k.powf(-(self.tau - 1.0))).min(1.0)
    }

    /// `G(y)` on integers: the tail evaluated at `y + 1`.
    fn g(&self, y: u64) -> f64 {
        self.tail((y + 1) as f64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingConstants {
    pub n: u64,
    pub alpha: f64,
    pub rho: f64,
    pub eta: f64,
    pub l_of_n: f64,
    pub a_n: f64,
    pub b_n: f64,
    pub c_n: f64,
}

pub fn scaling_constants(spec: &PowerLawSpec, n: u64) -> Result<ScalingConstants> {
    spec.validate()?;
    if n < 2 {
        return Err(invalid(format!("need n >= 2, got {n}")));
    }
    let (alpha, rho, eta) = (spec.alpha(), spec.rho(), spec.eta());
    let nf = n as f64;
    let l_of_n = match spec.slowly_varying {
        SlowlyVarying::Constant(c) => (spec.c_f * c).powf(alpha),
        SlowlyVarying::LogPower(_) => {
            // continuous quantile at 1/n, solved on a log scale
            let target = (1.0 / nf).ln();
            let h = |s: f64| {
                let y = s.exp();
                let val = spec.c_f * spec.slowly_varying.eval(y) * y.powf(-(spec.tau - 1.0));
                target - val.ln()
            };
            let mut hi = 1.0;
            while h(hi) < 0.0 {
                hi *= 2.0;
            }
            let s = bisect_increasing(h, 0.0, hi, 200);
            s.exp() / nf.powf(alpha)
        }
    };
    Ok(ScalingConstants {
        n,
        alpha,
        rho,
        eta,
        l_of_n,
        a_n: nf.powf(alpha) * l_of_n,
        b_n: nf.powf(rho) / l_of_n,
        c_n: nf.powf(eta) / (l_of_n * l_of_n),
    })
}

/// `inf{ y ∈ ℕ : G(y) ≤ u }`.
pub fn tail_quantile(spec: &PowerLawSpec, u: f64) -> Result<u64> {
    if !(u > 0.0 && u <= 1.0) {
        return Err(invalid(format!("quantile level must lie in (0, 1], got {u}")));
    }
    Ok(quantile_unchecked(spec, u))
}

fn quantile_unchecked(spec: &PowerLawSpec, u: f64) -> u64 {
    if spec.g(0) <= u {
        return 0;
    }
    let mut y = match spec.slowly_varying {
        SlowlyVarying::Constant(c) => {
            let guess = (spec.c_f * c / u).powf(spec.alpha()) - 1.0;
            guess.max(0.0).ceil() as u64
        }
        SlowlyVarying::LogPower(_) => {
            let mut hi = 1u64;
            while spec.g(hi) > u {
                hi *= 2;
            }
            let mut lo = hi / 2;
            while lo + 1 < hi {
                let mid = lo + (hi - lo) / 2;
                if spec.g(mid) <= u {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            hi
        }
    };
    while spec.g(y) > u {
        y += 1;
    }
    while y > 0 && spec.g(y - 1) <= u {
        y -= 1;
    }
    y
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSequence {
    degrees: Vec<u32>,
    ell_n: u64,
    n_1: u64,
}

impl DegreeSequence {
    /// Requires non-increasing degrees with even total.
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        if degrees.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Unsorted);
        }
        let ell_n: u64 = degrees.iter().map(|&d| d as u64).sum();
        if ell_n % 2 == 1 {
            return Err(Error::OddTotalDegree(ell_n));
        }
        let n_1 = degrees.iter().filter(|&&d| d == 1).count() as u64;
        Ok(DegreeSequence { degrees, ell_n, n_1 })
    }

    pub fn from_unsorted(mut degrees: Vec<u32>) -> Result<Self> {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(degrees)
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn ell_n(&self) -> u64 {
        self.ell_n
    }

    pub fn n_1(&self) -> u64 {
        self.n_1
    }
}

/// `ν_n = Σdᵢ(dᵢ-1) / Σdᵢ` for an arbitrary (unsorted) degree slice.
pub fn nu_of(degrees: &[u32]) -> Result<f64> {
    let mut num = 0u128;
    let mut den = 0u128;
    for &d in degrees {
        let d = d as u128;
        num += d * d.saturating_sub(1);
        den += d;
    }
    if den == 0 {
        return Err(Error::EmptyDegrees);
    }
    Ok(num as f64 / den as f64)
}

pub fn compute_nu(d: &DegreeSequence) -> Result<f64> {
    nu_of(d.degrees())
}

fn perturbed(q: u64, lambda: f64, c_n: f64) -> u32 {
    let delta = (lambda * q as f64 / c_n).round() as i64;
    (q as i64 + delta).max(1) as u32
}

fn repair_parity(mut d: Vec<u32>) -> Result<DegreeSequence> {
    let total: u64 = d.iter().map(|&x| x as u64).sum();
    if total % 2 == 1 {
        // the last entry is a minimal-degree vertex
        if let Some(last) = d.last_mut() {
            *last += 1;
        }
    }
    DegreeSequence::from_unsorted(d)
}

/// `dᵢ = max(1, G⁻¹(i/n) + round(λ·G⁻¹(i/n)/c_n))`, parity repaired, sorted.
pub fn gen_deterministic(spec: &PowerLawSpec, n: u64) -> Result<DegreeSequence> {
    let consts = scaling_constants(spec, n)?;
    let nf = n as f64;
    let d: Vec<u32> = (1..=n)
        .map(|i| perturbed(quantile_unchecked(spec, i as f64 / nf), spec.lambda, consts.c_n))
        .collect();
    repair_parity(d)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaCoupling {
    pub gammas: Vec<f64>,
    pub gamma_n_plus_1: f64,
}

/// Degrees `G⁻¹(Γᵢ/Γ_{n+1})` from unit-exponential partial sums, with the same
/// window perturbation and clipping as [`gen_deterministic`].
pub fn gen_iid_gamma<R: Rng + ?Sized>(
    spec: &PowerLawSpec,
    n: u64,
    rng: &mut R,
) -> Result<(DegreeSequence, GammaCoupling)> {
    let consts = scaling_constants(spec, n)?;
    let mut gammas = Vec::with_capacity(n as usize);
    let mut acc = 0.0;
    for _ in 0..n {
        let e: f64 = Exp1.sample(rng);
        acc += e;
        gammas.push(acc);
    }
    let e: f64 = Exp1.sample(rng);
    let gamma_n_plus_1 = acc + e;
    let d: Vec<u32> = gammas
        .iter()
        .map(|g| perturbed(quantile_unchecked(spec, g / gamma_n_plus_1), spec.lambda, consts.c_n))
        .collect();
    Ok((repair_parity(d)?, GammaCoupling { gammas, gamma_n_plus_1 }))
}

/// Moments of the clipped limiting law of `D`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitLaw {
    pub spec: PowerLawSpec,
    pub mu: f64,
    pub second_factorial: f64,
    pub nu: f64,
}

const SERIES_CUT: u64 = 100_000;

impl LimitLaw {
    pub fn of(spec: &PowerLawSpec) -> Result<Self> {
        spec.validate()?;
        let t = |k: f64| spec.tail(k);
        let mu = 1.0 + series_sum(t, 2, SERIES_CUT);
        let second_factorial = series_sum(|k| 2.0 * (k - 1.0) * t(k), 2, SERIES_CUT);
        Ok(LimitLaw { spec: *spec, mu, second_factorial, nu: second_factorial / mu })
    }

    /// `P(D ≥ k)` for the clipped law.
    pub fn tail(&self, k: u64) -> f64 {
        if k <= 1 {
            1.0
        } else {
            self.spec.tail(k as f64)
        }
    }

    /// `r_k = P(D = k)`.
    pub fn r(&self, k: u64) -> f64 {
        if k == 0 {
            0.0
        } else {
            self.tail(k) - self.tail(k + 1)
        }
    }
}

/// Tail constant `C_F` for which the clipped limit law has `ν = 1`.
pub fn critical_tail_constant(tau: f64, slowly_varying: SlowlyVarying) -> Result<f64> {
    let probe = PowerLawSpec::new(tau, 1.0, slowly_varying, 0.0)?;
    let nu_at = |c: f64| -> f64 {
        let spec = PowerLawSpec { c_f: c, ..probe };
        LimitLaw::of(&spec).map(|l| l.nu - 1.0).unwrap_or(f64::NAN)
    };
    let mut hi = 1.0;
    while nu_at(hi) < 0.0 {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(invalid("could not bracket the critical tail constant"));
        }
    }
    Ok(bisect_increasing(nu_at, 0.0, hi, 60))
}

/// `λ₀ = -(1/μ) Σᵢ (∫_{i-1}^{i} u^{-2α} du − i^{-2α})`, the limit of
/// `c_n(ν_n − ν)` for the quantile construction at `λ = 0`.
///
/// The tail after `M` terms lies in `[0, M^{-2α}]`; the midpoint is used and `M`
/// is chosen so the residual uncertainty is at most `tol`.
pub fn compute_lambda0(spec: &PowerLawSpec, mu: f64, tol: f64) -> Result<f64> {
    spec.validate()?;
    if !(tol > 0.0) {
        return Err(invalid("tolerance must be positive"));
    }
    if !(mu > 0.0) {
        return Err(invalid("mu must be positive"));
    }
    let s = 2.0 * spec.alpha();
    let m = (2.0 * tol).powf(-1.0 / s).ceil().max(1.0) as u64;
    let mut sum = 0.0;
    for i in (1..=m).rev() {
        sum += lambda0_term(i, s);
    }
    sum += 0.5 * (m as f64).powf(-s);
    Ok(-sum / mu)
}

/// `∫_{i-1}^{i} u^{-s} du − i^{-s}`, evaluated without cancellation for large `i`.
pub fn lambda0_term(i: u64, s: f64) -> f64 {
    let x = i as f64;
    if i == 1 {
        return 1.0 / (1.0 - s) - 1.0;
    }
    if i < 1_000 {
        return (x.powf(1.0 - s) - (x - 1.0).powf(1.0 - s)) / (1.0 - s) - x.powf(-s);
    }
    // expand (1 - 1/x)^{1-s} in powers of 1/x
    let a = 1.0 - s;
    let h = 1.0 / x;
    let mut term = 1.0;
    let mut series = 0.0;
    for k in 1..8 {
        term *= (a - (k as f64 - 1.0)) / k as f64 * (-h);
        series += term;
    }
    let integral = -x.powf(a) * series / a;
    integral - x.powf(-s)
}

/// Per-realisation analogue of `λ₀` with Gamma endpoints.
pub fn gamma_lambda0(coupling: &GammaCoupling, spec: &PowerLawSpec, mu: f64) -> Result<f64> {
    spec.validate()?;
    let s = 2.0 * spec.alpha();
    let a = 1.0 - s;
    let mut prev = 0.0f64;
    let mut sum = 0.0;
    for &g in &coupling.gammas {
        let integral = (g.powf(a) - prev.powf(a)) / a;
        sum += integral - g.powf(-s);
        prev = g;
    }
    Ok(-sum / mu)
}

/// `θᵢ` on the scale where `d₁/a_n → 1`.
pub fn thetas(spec: &PowerLawSpec, k: usize) -> Vec<f64> {
    let alpha = spec.alpha();
    (1..=k).map(|i| (i as f64).powf(-alpha)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub n: u64,
    pub theta_hat: Vec<f64>,
    pub mu_hat: f64,
    pub second_moment_hat: f64,
    pub third_moment_tail: BTreeMap<usize, f64>,
    pub nu_n: f64,
    pub lambda_hat: f64,
    /// `c_n(ν_n − ν)` with `ν` from the limit law; equals `lambda_hat` when `ν = 1`.
    pub lambda_hat_centered: f64,
    pub n1_fraction: f64,
    pub zeta: f64,
    pub zeta_check: f64,
    pub theta_sq_partial: f64,
    pub theta_cube_partial: f64,
    pub violations: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    pub k_report: usize,
    pub zeta: Option<f64>,
    pub window_bound: f64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { k_report: 200, zeta: None, window_bound: 50.0 }
    }
}

pub fn check_assumptions(d: &DegreeSequence, spec: &PowerLawSpec, k_report: usize) -> Result<AssumptionReport> {
    let consts = scaling_constants(spec, d.n() as u64)?;
    check_assumptions_with(d.degrees(), spec, &consts, ReportOptions { k_report, ..Default::default() })
}

/// Diagnostics for an arbitrary degree slice against externally supplied scaling
/// constants (used for exploded sequences, whose scale is that of the base graph).
pub fn check_assumptions_with(
    degrees: &[u32],
    spec: &PowerLawSpec,
    consts: &ScalingConstants,
    opts: ReportOptions,
) -> Result<AssumptionReport> {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let len = sorted.len();
    if len == 0 {
        return Err(Error::EmptyDegrees);
    }
    let n = consts.n as f64;
    let a_n = consts.a_n;
    let law = LimitLaw::of(spec)?;

    let ell: u64 = sorted.iter().map(|&x| x as u64).sum();
    let sq: f64 = sorted.iter().map(|&x| (x as f64).powi(2)).sum();
    let nu_n = nu_of(&sorted)?;
    let theta_hat: Vec<f64> = sorted.iter().take(opts.k_report).map(|&x| x as f64 / a_n).collect();

    let mut suffix = vec![0.0; len + 1];
    for i in (0..len).rev() {
        suffix[i] = suffix[i + 1] + (sorted[i] as f64 / a_n).powi(3);
    }
    let mut third_moment_tail = BTreeMap::new();
    for k in [0usize, 1, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 10_000] {
        if k <= len {
            third_moment_tail.insert(k, suffix[k]);
        }
    }

    let n1 = sorted.iter().filter(|&&x| x == 1).count() as f64;
    let zeta = opts.zeta.unwrap_or(0.5 * (consts.eta + 0.5));
    let mu_hat = ell as f64 / n;
    let lambda_hat = consts.c_n * (nu_n - 1.0);

    let half = theta_hat.len() / 2;
    let partial = |p: i32, r: std::ops::Range<usize>| -> f64 { theta_hat[r].iter().map(|t| t.powi(p)).sum() };
    let theta_sq_partial = partial(2, 0..theta_hat.len());
    let theta_cube_partial = partial(3, 0..theta_hat.len());

    let mut violations = Vec::new();
    if lambda_hat.abs() > opts.window_bound {
        violations.push(format!("window: c_n(nu_n - 1) = {lambda_hat:.3} outside +-{}", opts.window_bound));
    }
    if half >= 10 {
        let sq_first = partial(2, 0..half);
        let sq_second = partial(2, half..theta_hat.len());
        if sq_second < 0.05 * sq_first {
            violations.push("theta: partial sums of squares are not growing".to_string());
        }
        let cube_first = partial(3, 0..half);
        let cube_second = partial(3, half..theta_hat.len());
        if cube_second > 0.2 * cube_first {
            violations.push("theta: partial sums of cubes are not settling".to_string());
        }
    }
    if n1 / n < 0.01 {
        violations.push(format!("degree-one fraction {:.4} is not linear in n", n1 / n));
    }

    Ok(AssumptionReport {
        n: consts.n,
        theta_hat,
        mu_hat,
        second_moment_hat: sq / n,
        third_moment_tail,
        nu_n,
        lambda_hat,
        lambda_hat_centered: consts.c_n * (nu_n - law.nu),
        n1_fraction: n1 / n,
        zeta,
        zeta_check: (mu_hat - law.mu).abs() * n.powf(zeta),
        theta_sq_partial,
        theta_cube_partial,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    fn pure() -> PowerLawSpec {
        PowerLawSpec::pure(3.5, 0.0).unwrap()
    }

    #[test]
    fn scaling_exponents_at_tau_3_5() {
        let c = scaling_constants(&pure(), 1_000_000).unwrap();
        assert!((c.alpha - 0.4).abs() < 1e-15);
        assert!((c.rho - 0.6).abs() < 1e-15);
        assert!((c.eta - 0.2).abs() < 1e-15);
        assert!((c.b_n - 3981.071705534972).abs() < 1e-8);
        assert!((c.a_n * c.c_n - c.b_n).abs() < 1e-9 * c.b_n);
    }

    #[test]
    fn tau_outside_range_is_rejected() {
        assert!(matches!(PowerLawSpec::pure(4.0, 0.0), Err(Error::TauOutOfRange(_))));
        let bad = PowerLawSpec { tau: 2.5, ..pure() };
        assert!(scaling_constants(&bad, 10).is_err());
    }

    #[test]
    fn quantile_examples() {
        let s = pure();
        assert_eq!(tail_quantile(&s, 0.001).unwrap(), 15);
        assert_eq!(tail_quantile(&s, 1.0).unwrap(), 0);
        assert!(tail_quantile(&s, 0.0).is_err());
    }

    #[test]
    fn quantile_matches_linear_scan() {
        let s = PowerLawSpec::new(3.3, 0.7, SlowlyVarying::LogPower(1.5), 0.0).unwrap();
        for j in 1..=2000 {
            let u = j as f64 / 2000.0;
            let mut k = 0u64;
            while s.tail((k + 1) as f64) > u {
                k += 1;
            }
            assert_eq!(tail_quantile(&s, u).unwrap(), k, "u = {u}");
        }
    }

    #[test]
    fn deterministic_sequence_golden_values() {
        let d = gen_deterministic(&pure(), 100).unwrap();
        assert_eq!(d.degrees()[0] as u64, tail_quantile(&pure(), 0.01).unwrap());
        // frozen: ceil(100^0.4 - 1) = 6
        assert_eq!(d.degrees()[0], 6);
        assert_eq!(d.ell_n() % 2, 0);
        let again = gen_deterministic(&pure(), 100).unwrap();
        assert_eq!(d, again);
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu_of(&[3, 2, 2, 1]).unwrap(), 1.25);
        assert_eq!(nu_of(&[1, 1]).unwrap(), 0.0);
        assert_eq!(nu_of(&[2; 10]).unwrap(), 1.0);
        assert!(nu_of(&[0, 0]).is_err());
    }

    #[test]
    fn limit_law_of_pure_spec() {
        let l = LimitLaw::of(&pure()).unwrap();
        // mu = zeta(2.5), E[D(D-1)] = 2(zeta(1.5) - zeta(2.5))
        assert!((l.mu - 1.341_487_257_250_917).abs() < 1e-9);
        assert!((l.second_factorial - 2.541_776_182_869_142).abs() < 1e-8);
        assert!((l.r(1) - (1.0 - 2f64.powf(-2.5))).abs() < 1e-15);
    }

    #[test]
    fn critical_constant_closed_form() {
        let c = critical_tail_constant(3.5, SlowlyVarying::Constant(1.0)).unwrap();
        assert!((c - 0.454_485_767_008_542).abs() < 1e-8, "{c}");
        let l = LimitLaw::of(&PowerLawSpec::critical(3.5, SlowlyVarying::Constant(1.0), 0.0).unwrap()).unwrap();
        assert!((l.nu - 1.0).abs() < 1e-10);
    }

    #[test]
    fn lambda0_first_term_and_value() {
        assert!((lambda0_term(1, 0.8) - 4.0).abs() < 1e-12);
        for i in [2u64, 10, 999, 1000, 1001, 50_000] {
            assert!(lambda0_term(i, 0.8) > 0.0);
        }
        // S = -zeta(0.8) = 4.437538415895553 (mpmath); mu = zeta(2.5)
        let mu = 1.341_487_257_250_917;
        let l0 = compute_lambda0(&pure(), mu, 1e-6).unwrap();
        assert!((l0 + 4.437_538_415_895_553 / mu).abs() < 1e-6, "{l0}");
    }

    #[test]
    fn gamma_sequence_is_reproducible_and_sorted() {
        let (a, ca) = gen_iid_gamma(&pure(), 1000, &mut stream(3, 0)).unwrap();
        let (b, _) = gen_iid_gamma(&pure(), 1000, &mut stream(3, 0)).unwrap();
        assert_eq!(a, b);
        assert!(ca.gammas.windows(2).all(|w| w[0] < w[1]));
        assert!(ca.gamma_n_plus_1 > *ca.gammas.last().unwrap());
    }

    #[test]
    fn all_twos_report() {
        let d = DegreeSequence::new(vec![2; 100]).unwrap();
        let r = check_assumptions(&d, &pure(), 10).unwrap();
        assert_eq!(r.lambda_hat, 0.0);
        let vals: Vec<f64> = r.third_moment_tail.values().copied().collect();
        assert!(vals.windows(2).all(|w| w[0] >= w[1]));
    }
}
