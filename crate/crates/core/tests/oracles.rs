use std::collections::BTreeMap;

use heavycrit::amc::{simulate_with, two_particle_merge_time, SimulateOptions};
use heavycrit::analysis::{chi_square_gof, summarize};
use heavycrit::config_model::{sample_simple_matching, simplicity};
use heavycrit::degrees::{gen_iid_gamma, tail_quantile};
use heavycrit::levy::{reflect, sample_marks};
use heavycrit::percolation::{labels_refine, RemovalVariant, SweepOptions, SweepState};
use heavycrit::*;
use rand::Rng;

fn seq(d: &[u32]) -> DegreeSequence {
    DegreeSequence::new(d.to_vec()).unwrap()
}

#[test]
fn four_leaves_have_three_equally_likely_matchings() {
    let d = seq(&[1, 1, 1, 1]);
    let mut rng = stream(11, 0);
    let mut counts = [0u64; 3];
    let trials = 30_000;
    for _ in 0..trials {
        let g = pair_half_edges(&d, &mut rng).unwrap();
        let partner = g.edges.iter().find(|e| e.0 == 0).unwrap().1;
        counts[partner as usize - 1] += 1;
    }
    let chi = chi_square_gof(&counts, &[1.0 / 3.0; 3]).unwrap();
    assert!(chi.p_value > 1e-3, "{counts:?} p={}", chi.p_value);
}

#[test]
fn sweep_run_to_end_is_a_uniform_matching() {
    let d = seq(&[1, 1, 1, 1]);
    let mut rng = stream(12, 0);
    let mut counts = [0u64; 3];
    let trials = 30_000;
    for _ in 0..trials {
        let mut st = SweepState::new(&d, &[]).unwrap();
        st.run_to_end(&mut rng);
        assert_eq!(st.s1(), 0);
        let partner = st.edges.iter().find(|e| e.0 == 0).unwrap().1;
        counts[partner as usize - 1] += 1;
    }
    let chi = chi_square_gof(&counts, &[1.0 / 3.0; 3]).unwrap();
    assert!(chi.p_value > 1e-3, "{counts:?} p={}", chi.p_value);
}

#[test]
fn simple_configurations_of_two_one_one_are_uniform() {
    // vertex 0 owns half-edges 0 and 1; the simple outcomes pair 0 with vertex 1 or with vertex 2
    let d = seq(&[2, 1, 1]);
    let mut rng = stream(13, 0);
    let trials = 100_000u64;
    let mut first = 0u64;
    for _ in 0..trials {
        let (g, stubs, _) = sample_simple_matching(&d, &mut rng, 1000).unwrap();
        assert!(simplicity(&g).is_simple);
        if stubs.contains(&(0, 2)) {
            first += 1;
        } else {
            assert!(stubs.contains(&(0, 3)));
        }
    }
    let p = first as f64 / trials as f64;
    let se = (0.25 / trials as f64).sqrt();
    assert!((p - 0.5).abs() < 3.0 * se, "p={p}");
}

#[test]
fn first_explored_vertex_is_size_biased() {
    let d = seq(&[3, 2, 1, 1, 1]);
    let mut rng = stream(14, 0);
    let trials = 40_000u64;
    let mut counts = [0u64; 5];
    for _ in 0..trials {
        let x = explore(&d, &mut rng, &[]).unwrap();
        counts[x.walk.discovered[0] as usize] += 1;
    }
    let expected: Vec<f64> = d.degrees().iter().map(|&k| k as f64 / 8.0).collect();
    let chi = chi_square_gof(&counts, &expected).unwrap();
    assert!(chi.p_value > 1e-3, "{counts:?} p={}", chi.p_value);
}

#[test]
fn deterministic_generation_is_reproducible() {
    let spec = PowerLawSpec::pure(3.5, 0.0).unwrap();
    let a = gen_deterministic(&spec, 5000).unwrap();
    let b = gen_deterministic(&spec, 5000).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.ell_n() % 2, 0);
}

#[test]
fn gamma_generation_matches_inverse_cdf_sampling() {
    let spec = PowerLawSpec::pure(3.5, 0.0).unwrap();
    let n = 10_000u64;
    let mut worst: f64 = 0.0;
    for seed in 0..50 {
        let (d, _) = gen_iid_gamma(&spec, n, &mut stream(seed, 0)).unwrap();
        let mut rng = stream(seed, 1);
        let direct: Vec<f64> =
            (0..n).map(|_| tail_quantile(&spec, 1.0 - rng.random::<f64>()).unwrap() as f64).collect();
        let gen: Vec<f64> = d.degrees().iter().map(|&x| x as f64).collect();
        worst = worst.max(ks_two_sample(&gen, &direct).unwrap().statistic);
    }
    assert!(worst < 0.02, "worst KS over 50 seeds {worst}");
}

#[test]
fn gamma_normaliser_concentrates() {
    let spec = PowerLawSpec::pure(3.5, 0.0).unwrap();
    let n = 10_000u64;
    let ratios: Vec<f64> =
        (0..200).map(|s| gen_iid_gamma(&spec, n, &mut stream(s, 2)).unwrap().1.gamma_n_plus_1 / n as f64).collect();
    let s = summarize(&ratios).unwrap();
    // Γ_{n+1}/n has mean (n+1)/n and sd √(n+1)/n
    assert!((s.mean - 1.0001).abs() < 4.0 * 0.01 / (200f64).sqrt());
    assert!((s.sd - 0.01).abs() < 0.002);
}

/// Reflected path on a fine grid from `value_at` and a running minimum; left
/// limits at jump times are added so the running minimum is exact.
fn grid_reflection(path: &heavycrit::LevyPath, step: f64) -> Vec<(f64, f64)> {
    let mut events: Vec<(f64, bool)> = Vec::new();
    let mut t = 0.0;
    while t <= path.horizon {
        events.push((t, true));
        t += step;
    }
    events.extend(path.jump_times.iter().map(|&t| (t, false)));
    events.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut out = Vec::new();
    let mut min: f64 = 0.0;
    for (t, on_grid) in events {
        let v = if on_grid { path.value_at(t) } else { path.left_limit(t) };
        min = min.min(v);
        if on_grid {
            out.push((t, v - min));
        }
    }
    out
}

#[test]
fn reflection_matches_grid_oracle() {
    let spec = ThetaSpec::new((1..=50).map(|i| (i as f64).powf(-0.4)).collect(), 1.2, 0.5, 10.0).unwrap();
    for seed in 0..20 {
        let path = sample_path(&spec, &mut stream(seed, 3)).unwrap();
        let r = reflect(&path);
        let step = 1e-3;
        let grid = grid_reflection(&path, step);
        for &(t, v) in grid.iter().step_by(37) {
            assert!((r.refl(t) - v).abs() < 1e-9, "seed {seed} t {t}: {} vs {v}", r.refl(t));
        }
        let riemann: f64 = grid.iter().map(|p| p.1).sum::<f64>() * step;
        let exact = r.area_to(path.horizon);
        assert!((riemann - exact).abs() < 0.02 * exact.max(1.0), "seed {seed}: {riemann} vs {exact}");
    }
}

#[test]
fn marks_average_the_area() {
    let spec = ThetaSpec::new((1..=200).map(|i| (i as f64).powf(-0.4)).collect(), 1.2, 0.0, 20.0).unwrap();
    let mut rng = stream(15, 0);
    let mut diffs = Vec::new();
    for _ in 0..4000 {
        let e = excursions(&sample_path(&spec, &mut rng).unwrap());
        let m = sample_marks(&e, &mut rng).unwrap();
        let Some(first) = e.excursions.first() else { continue };
        diffs.push(m.marks[0] as f64 - first.area);
    }
    let s = summarize(&diffs).unwrap();
    assert!(s.mean.abs() < 3.0 * s.se, "mean diff {} se {}", s.mean, s.se);
}

#[test]
fn two_particle_merge_time_has_mean_one_over_product() {
    let mut rng = stream(16, 0);
    let times: Vec<f64> = (0..20_000).map(|_| two_particle_merge_time(0.5, 3.0, 2.0, &mut rng).unwrap()).collect();
    let s = summarize(&times).unwrap();
    assert!((s.mean - 1.0 / 3.0).abs() < 3.0 * s.se, "{} ± {}", s.mean, s.se);
}

#[test]
fn lone_particle_attribute_is_poisson() {
    let sys = ParticleSystem::standard(&[1.5], &[0]);
    let mut rng = stream(17, 0);
    let opts = SimulateOptions { record_events: false, dump_times: Vec::new() };
    let counts: Vec<f64> = (0..20_000)
        .map(|_| simulate_with(&sys, 2.0, &opts, &mut rng).unwrap().final_state.particles[0].attribute as f64)
        .collect();
    let s = summarize(&counts).unwrap();
    let rate = 0.5 * 1.5 * 1.5 * 2.0;
    assert!((s.mean - rate).abs() < 3.0 * s.se);
    assert!((s.sd * s.sd / rate - 1.0).abs() < 0.05);
}

fn profile(comps: &[ComponentSummary]) -> Vec<u64> {
    let mut v: Vec<u64> = comps.iter().map(|c| c.vertices).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

#[test]
fn uniform_degree_one_removal_matches_red_removal() {
    let d = seq(&[2, 2, 1, 1]);
    let spec = heavycrit::percolation::PercolationSpec { lambda: 0.0, p_n: 0.6, nu_n: compute_nu(&d).unwrap() };
    let mut a: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    let mut b: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    let mut rng = stream(18, 0);
    for _ in 0..40_000 {
        let x = percolate_explosion(&d, &spec, &mut rng, RemovalVariant::DeleteRed).unwrap();
        *a.entry(profile(&x.components)).or_default() += 1;
        let y = percolate_explosion(&d, &spec, &mut rng, RemovalVariant::DeleteUniformDegreeOne).unwrap();
        *b.entry(profile(&y.components)).or_default() += 1;
    }
    assert!(total_variation(&a, &b) < 0.02);
}

#[test]
fn sweep_components_only_grow() {
    let spec = PowerLawSpec::pure(3.5, 0.0).unwrap();
    let d = gen_deterministic(&spec, 20_000).unwrap();
    let consts = scaling_constants(&spec, 20_000).unwrap();
    let opts = SweepOptions { record_labels: true, ..Default::default() };
    let grid = [-1.0, -0.5, 0.0, 0.5, 1.0];
    for seed in 0..5 {
        let snaps = dynamic_sweep(&d, &consts, &grid, &mut stream(seed, 4), &opts).unwrap();
        for w in snaps.windows(2) {
            assert!(labels_refine(w[0].labels.as_ref().unwrap(), w[1].labels.as_ref().unwrap()));
            assert!(w[0].largest() <= w[1].largest());
        }
    }
}

#[test]
fn modified_sweep_contains_its_good_subgraph() {
    let spec = PowerLawSpec::pure(3.5, 0.0).unwrap();
    let d = gen_deterministic(&spec, 20_000).unwrap();
    let consts = scaling_constants(&spec, 20_000).unwrap();
    let opts = SweepOptions { record_labels: true, ..Default::default() };
    let grid = [-0.5, 0.0, 1.0];
    for seed in 0..5 {
        let m = modified_sweep(&d, &consts, -1.0, &grid, &mut stream(seed, 5), &opts).unwrap();
        for (g, s) in m.good_snapshots.iter().zip(&m.snapshots) {
            assert!(labels_refine(g.labels.as_ref().unwrap(), s.labels.as_ref().unwrap()));
        }
        assert!(m.bad_edges.windows(2).all(|w| w[0] <= w[1]));
        assert!(m.bad_surplus_edges.iter().zip(&m.bad_edges).all(|(a, b)| a <= b));
        // open mass is frozen
        let open: u64 = m.snapshots.last().unwrap().components.iter().map(|c| c.open).sum();
        assert_eq!(open, m.s_bar);
    }
}

#[test]
fn bad_surplus_edges_thin_out_with_n() {
    let spec = PowerLawSpec::new(3.5, 1.0, SlowlyVarying::Constant(1.0), 0.0).unwrap();
    let opts = SweepOptions { keep_top: 1, ..Default::default() };
    let mut means = Vec::new();
    for (i, n) in [10_000u64, 100_000, 1_000_000].into_iter().enumerate() {
        let d = gen_deterministic(&spec, n).unwrap();
        let consts = scaling_constants(&spec, n).unwrap();
        let reps = 40;
        let total: u64 = (0..reps)
            .map(|r| {
                let m = modified_sweep(&d, &consts, -1.0, &[1.0], &mut stream(60 + i as u64, r), &opts).unwrap();
                m.bad_surplus_edges[0]
            })
            .sum();
        means.push(total as f64 / reps as f64);
    }
    eprintln!("mean bad surplus edges at lambda=1: {means:?}");
    assert!(means.windows(2).all(|w| w[1] < w[0]), "{means:?}");
}
