//! Exact continuous-time simulation of the augmented multiplicative coalescent.
//!
//! Particles `i ≠ j` merge at rate `K₁XᵢXⱼ`; particle `i` gains one attribute
//! unit at rate `K₂Xᵢ²` (or `Yᵢ²/2` under [`AttributeRule::AttributeSquaredHalf`]).
//! Since total mass is conserved, the merge rate `K₁ Σᵢ Xᵢ(X − Xᵢ)/2` is kept
//! in Fenwick trees; each event costs `O(log m)`.

use rand::Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Particle {
    pub mass: f64,
    pub weight: f64,
    pub attribute: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttributeRule {
    /// `K₂Xᵢ²`
    MassSquared,
    /// `Yᵢ²/2`
    AttributeSquaredHalf,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParticleSystem {
    pub particles: Vec<Particle>,
    pub k1: f64,
    pub k2: f64,
    pub rule: AttributeRule,
}

impl ParticleSystem {
    pub fn standard(masses: &[f64], attributes: &[u64]) -> Self {
        let particles = masses
            .iter()
            .zip(attributes.iter().chain(std::iter::repeat(&0)))
            .map(|(&mass, &attribute)| Particle { mass, weight: 0.0, attribute })
            .collect();
        ParticleSystem { particles, k1: 1.0, k2: 0.5, rule: AttributeRule::MassSquared }
    }

    fn validate(&self) -> Result<()> {
        if !(self.k1 > 0.0) || !(self.k2 > 0.0) {
            return Err(invalid("rate constants must be positive"));
        }
        if self.particles.iter().any(|p| !(p.mass >= 0.0) || !p.mass.is_finite() || !(p.weight >= 0.0)) {
            return Err(invalid("masses and weights must be finite and non-negative"));
        }
        Ok(())
    }

    pub fn total_mass(&self) -> f64 {
        self.particles.iter().map(|p| p.mass).sum()
    }

    /// Particles in `(mass, attribute)` descending order.
    pub fn ordered(&self) -> Vec<Particle> {
        let mut v = self.particles.clone();
        v.sort_by(|a, b| b.mass.total_cmp(&a.mass).then(b.attribute.cmp(&a.attribute)));
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Merge,
    Attribute,
}

/// `i`, `j` are indices into the initial particle list; on a merge `j` is absorbed by `i`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmcEvent {
    pub time: f64,
    pub kind: EventKind,
    pub i: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateDump {
    pub time: f64,
    pub particles: Vec<Particle>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmcTrajectory {
    pub events: Vec<AmcEvent>,
    pub dumps: Vec<StateDump>,
    pub final_state: ParticleSystem,
}

#[derive(Clone, Debug, Default)]
pub struct SimulateOptions {
    pub record_events: bool,
    /// Times (sorted, within the duration) at which ordered states are dumped;
    /// the final state is always dumped.
    pub dump_times: Vec<f64>,
}

struct Fenwick {
    tree: Vec<f64>,
    vals: Vec<f64>,
}

impl Fenwick {
    fn new(vals: &[f64]) -> Self {
        let n = vals.len();
        let mut tree = vec![0.0; n + 1];
        for (i, &v) in vals.iter().enumerate() {
            let mut k = i + 1;
            while k <= n {
                tree[k] += v;
                k += k & k.wrapping_neg();
            }
        }
        Fenwick { tree, vals: vals.to_vec() }
    }

    fn set(&mut self, i: usize, v: f64) {
        let delta = v - self.vals[i];
        self.vals[i] = v;
        let n = self.vals.len();
        let mut k = i + 1;
        while k <= n {
            self.tree[k] += delta;
            k += k & k.wrapping_neg();
        }
    }

    fn prefix(&self, i: usize) -> f64 {
        let mut k = i;
        let mut acc = 0.0;
        while k > 0 {
            acc += self.tree[k];
            k -= k & k.wrapping_neg();
        }
        acc
    }

    fn total(&self) -> f64 {
        self.prefix(self.vals.len())
    }

    /// Index `i` with `prefix(i) ≤ u < prefix(i + 1)`, skipping zero entries.
    fn find(&self, mut u: f64) -> usize {
        let n = self.vals.len();
        let mut pos = 0;
        let mut step = n.next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= u {
                pos = next;
                u -= self.tree[next];
            }
            step >>= 1;
        }
        let mut i = pos.min(n - 1);
        // rounding can land on an empty slot; move to the nearest positive one
        if self.vals[i] <= 0.0 {
            if let Some(k) = (i..n).find(|&k| self.vals[k] > 0.0) {
                i = k;
            } else if let Some(k) = (0..i).rev().find(|&k| self.vals[k] > 0.0) {
                i = k;
            }
        }
        i
    }
}

pub fn simulate<R: Rng + ?Sized>(sys: &ParticleSystem, duration: f64, rng: &mut R) -> Result<AmcTrajectory> {
    simulate_with(sys, duration, &SimulateOptions { record_events: true, dump_times: Vec::new() }, rng)
}

pub fn simulate_with<R: Rng + ?Sized>(
    sys: &ParticleSystem,
    duration: f64,
    opts: &SimulateOptions,
    rng: &mut R,
) -> Result<AmcTrajectory> {
    sys.validate()?;
    if !(duration >= 0.0) {
        return Err(invalid("duration must be non-negative"));
    }
    let m = sys.particles.len();
    let mut parts = sys.particles.clone();
    let mut alive = vec![true; m];
    let total: f64 = parts.iter().map(|p| p.mass).sum();
    let attr_rate = |p: &Particle| match sys.rule {
        AttributeRule::MassSquared => sys.k2 * p.mass * p.mass,
        AttributeRule::AttributeSquaredHalf => 0.5 * (p.attribute as f64).powi(2),
    };
    let merge_weight = |x: f64| (x * (total - x)).max(0.0);

    let mut events = Vec::new();
    let mut dumps = Vec::new();
    let mut dump_iter = opts.dump_times.iter().copied().filter(|&t| t <= duration).peekable();
    if m == 0 {
        dumps.push(StateDump { time: duration, particles: Vec::new() });
        return Ok(AmcTrajectory { events, dumps, final_state: sys.clone() });
    }
    let mut masses = Fenwick::new(&parts.iter().map(|p| p.mass).collect::<Vec<_>>());
    let mut mw = Fenwick::new(&parts.iter().map(|p| merge_weight(p.mass)).collect::<Vec<_>>());
    let mut aw = Fenwick::new(&parts.iter().map(attr_rate).collect::<Vec<_>>());

    let snapshot = |parts: &[Particle], alive: &[bool], time: f64| {
        let mut v: Vec<Particle> = parts.iter().zip(alive).filter(|(_, &a)| a).map(|(p, _)| *p).collect();
        v.sort_by(|a, b| b.mass.total_cmp(&a.mass).then(b.attribute.cmp(&a.attribute)));
        StateDump { time, particles: v }
    };

    let mut time = 0.0;
    loop {
        let r_merge = 0.5 * sys.k1 * mw.total().max(0.0);
        let r_attr = aw.total().max(0.0);
        let rate = r_merge + r_attr;
        let next = if rate > 0.0 { time + Exp::new(rate).expect("positive rate").sample(rng) } else { f64::INFINITY };
        while let Some(&td) = dump_iter.peek() {
            if td < next {
                dumps.push(snapshot(&parts, &alive, td));
                dump_iter.next();
            } else {
                break;
            }
        }
        if next > duration {
            break;
        }
        time = next;
        if rng.random::<f64>() * rate < r_merge {
            let i = mw.find(rng.random::<f64>() * mw.total());
            // j ∝ mass among the others
            let rest = total - parts[i].mass;
            let u = rng.random::<f64>() * rest;
            let before = masses.prefix(i);
            let j = if u < before { masses.find(u) } else { masses.find(u + parts[i].mass) };
            if j == i || !alive[j] || parts[j].mass <= 0.0 {
                continue;
            }
            parts[i].mass += parts[j].mass;
            parts[i].weight += parts[j].weight;
            parts[i].attribute += parts[j].attribute;
            parts[j] = Particle { mass: 0.0, weight: 0.0, attribute: 0 };
            alive[j] = false;
            for k in [i, j] {
                masses.set(k, parts[k].mass);
                mw.set(k, merge_weight(parts[k].mass));
                aw.set(k, attr_rate(&parts[k]));
            }
            if opts.record_events {
                events.push(AmcEvent { time, kind: EventKind::Merge, i, j: Some(j) });
            }
        } else {
            let i = aw.find(rng.random::<f64>() * aw.total());
            if !alive[i] || aw.vals[i] <= 0.0 {
                continue;
            }
            parts[i].attribute += 1;
            aw.set(i, attr_rate(&parts[i]));
            if opts.record_events {
                events.push(AmcEvent { time, kind: EventKind::Attribute, i, j: None });
            }
        }
    }
    dumps.push(snapshot(&parts, &alive, duration));
    let final_parts: Vec<Particle> = parts.iter().zip(&alive).filter(|(_, &a)| a).map(|(p, _)| *p).collect();
    Ok(AmcTrajectory {
        events,
        dumps,
        final_state: ParticleSystem { particles: final_parts, ..sys.clone() },
    })
}

/// Time of the first merge between two particles (no attribute clock).
pub fn two_particle_merge_time<R: Rng + ?Sized>(x1: f64, x2: f64, k1: f64, rng: &mut R) -> Result<f64> {
    let sys = ParticleSystem {
        particles: vec![Particle { mass: x1, weight: 0.0, attribute: 0 }, Particle { mass: x2, weight: 0.0, attribute: 0 }],
        k1,
        k2: f64::MIN_POSITIVE,
        rule: AttributeRule::MassSquared,
    };
    let tr = simulate(&sys, f64::MAX, rng)?;
    tr.events
        .iter()
        .find(|e| e.kind == EventKind::Merge)
        .map(|e| e.time)
        .ok_or_else(|| invalid("particles never merged"))
}
