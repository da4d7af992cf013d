use heavycrit::amc::{simulate_with, SimulateOptions};
use heavycrit::analysis::{d_u, ks_two_sample, ord};
use heavycrit::components::components_from_edges;
use heavycrit::config_model::pair_degrees;
use heavycrit::degrees::{nu_of, tail_quantile};
use heavycrit::exploration::components_from_walk;
use heavycrit::percolation::{explode, SweepState};
use heavycrit::*;
use proptest::prelude::*;

fn even_degrees(max_n: usize, max_d: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1..=max_d, 1..=max_n).prop_map(|mut d| {
        if d.iter().map(|&x| x as u64).sum::<u64>() % 2 == 1 {
            d.push(1);
        }
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    })
}

fn pair_vec() -> impl Strategy<Value = Vec<(f64, u64)>> {
    prop::collection::vec((0.0f64..5.0, 0u64..4), 0..8)
        .prop_map(|v| v.into_iter().map(|(x, y)| if x == 0.0 { (x, 0) } else { (x, y) }).collect())
}

/// Component sizes by breadth-first search over an adjacency list.
fn bfs_sizes(n: usize, edges: &[(u32, u32)]) -> Vec<u64> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u as usize].push(v);
        adj[v as usize].push(u);
    }
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = std::collections::VecDeque::from([s]);
        let mut c = 0;
        while let Some(x) = q.pop_front() {
            c += 1;
            for &y in &adj[x] {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    q.push_back(y as usize);
                }
            }
        }
        sizes.push(c);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn quantile_is_monotone(u1 in 1e-9f64..1.0, u2 in 1e-9f64..1.0, tau in 3.05f64..3.95) {
        let spec = PowerLawSpec::pure(tau, 0.0).unwrap();
        let (lo, hi) = if u1 <= u2 { (u1, u2) } else { (u2, u1) };
        prop_assert!(tail_quantile(&spec, lo).unwrap() >= tail_quantile(&spec, hi).unwrap());
    }

    #[test]
    fn quantile_is_the_generalised_inverse(u in 1e-7f64..1.0) {
        let spec = PowerLawSpec::pure(3.5, 0.0).unwrap();
        let k = tail_quantile(&spec, u).unwrap() as f64;
        prop_assert!(spec.tail(k) >= u);
        prop_assert!(spec.tail(k + 1.0) < u);
    }

    #[test]
    fn nu_is_permutation_invariant(d in even_degrees(40, 30), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut p = d.clone();
        p.shuffle(&mut stream(seed, 0));
        prop_assert_eq!(nu_of(&d).unwrap(), nu_of(&p).unwrap());
    }

    #[test]
    fn ord_is_idempotent(v in pair_vec()) {
        let a = ord(v).unwrap();
        let b = ord(a.pairs.clone()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn d_u_is_a_metric(a in pair_vec(), b in pair_vec(), c in pair_vec()) {
        let (a, b, c) = (ord(a).unwrap(), ord(b).unwrap(), ord(c).unwrap());
        prop_assert_eq!(d_u(&a, &a), 0.0);
        prop_assert!((d_u(&a, &b) - d_u(&b, &a)).abs() < 1e-12);
        prop_assert!(d_u(&a, &c) <= d_u(&a, &b) + d_u(&b, &c) + 1e-9);
    }

    #[test]
    fn ks_matches_brute_force(xs in prop::collection::vec(0u8..20, 1..40), ys in prop::collection::vec(0u8..20, 1..40)) {
        let xs: Vec<f64> = xs.into_iter().map(f64::from).collect();
        let ys: Vec<f64> = ys.into_iter().map(f64::from).collect();
        let ecdf = |s: &[f64], t: f64| s.iter().filter(|&&v| v <= t).count() as f64 / s.len() as f64;
        let brute = xs.iter().chain(&ys).map(|&t| (ecdf(&xs, t) - ecdf(&ys, t)).abs()).fold(0.0, f64::max);
        prop_assert!((ks_two_sample(&xs, &ys).unwrap().statistic - brute).abs() < 1e-12);
    }

    #[test]
    fn exploration_agrees_with_bfs(d in even_degrees(50, 5), seed in any::<u64>()) {
        let ds = DegreeSequence::new(d).unwrap();
        let x = explore(&ds, &mut stream(seed, 0), &[]).unwrap();
        let mut sizes: Vec<u64> = x.components.iter().map(|c| c.vertices).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(sizes, bfs_sizes(ds.n(), &x.graph.edges));
        for c in &x.components {
            prop_assert!(c.euler_holds());
        }
    }

    #[test]
    fn walk_hits_minus_two_k(d in even_degrees(50, 5), seed in any::<u64>()) {
        let ds = DegreeSequence::new(d).unwrap();
        let x = explore(&ds, &mut stream(seed, 1), &[]).unwrap();
        let w = &x.walk;
        for (k, &tk) in w.component_boundaries.iter().enumerate() {
            prop_assert_eq!(w.steps[tk], -2 * (k as i64 + 1));
            let first = w.steps[..tk].iter().position(|&s| s == -2 * (k as i64 + 1));
            prop_assert_eq!(first, None);
        }
        let edges = components_from_walk(w).unwrap();
        let from_walk: Vec<u64> = x.components.iter().take(edges.len()).map(|c| c.edges).collect();
        prop_assert_eq!(edges, from_walk);
    }

    #[test]
    fn pairing_preserves_degrees(d in even_degrees(60, 8), seed in any::<u64>()) {
        let edges = pair_degrees(&d, &mut stream(seed, 2)).unwrap();
        let mut inc = vec![0u32; d.len()];
        for (u, v) in edges {
            inc[u as usize] += 1;
            inc[v as usize] += 1;
        }
        prop_assert_eq!(inc, d);
    }

    #[test]
    fn explosion_conserves_half_edges(d in even_degrees(60, 10), p in 0.001f64..=1.0, seed in any::<u64>()) {
        let ds = DegreeSequence::new(d).unwrap();
        let e = explode(&ds, p, &mut stream(seed, 3)).unwrap();
        prop_assert_eq!(e.d_tilde.iter().map(|&x| x as u64).sum::<u64>(), ds.ell_n());
        prop_assert!(e.d_tilde[e.n..].iter().all(|&x| x == 1));
        prop_assert!(e.d_tilde[..e.n].iter().zip(ds.degrees()).all(|(a, b)| a <= b));
    }

    #[test]
    fn sweep_keeps_open_counts_consistent(d in even_degrees(60, 6), t in 0.0f64..3.0, seed in any::<u64>()) {
        let ds = DegreeSequence::new(d).unwrap();
        let mut st = SweepState::new(&ds, &[]).unwrap();
        st.advance_to(t, &mut stream(seed, 4));
        prop_assert_eq!(st.open_total(), st.s1() as u64);
        let snap = st.snapshot(0.0, t, &Default::default());
        for c in &snap.components {
            prop_assert_eq!(c.edges + 1, c.size + c.surplus);
        }
        let from_edges = components_from_edges(ds.degrees(), &st.edges, &[], false);
        prop_assert_eq!(from_edges.len(), snap.components.len());
    }

    #[test]
    fn amc_conserves_mass(masses in prop::collection::vec(0.0f64..2.0, 1..30), dur in 0.0f64..2.0, seed in any::<u64>()) {
        let sys = ParticleSystem::standard(&masses, &[]);
        let tr = simulate_with(&sys, dur, &SimulateOptions { record_events: true, dump_times: vec![dur / 2.0] }, &mut stream(seed, 5)).unwrap();
        let merges = tr.events.iter().filter(|e| e.kind == heavycrit::amc::EventKind::Merge).count();
        let attrs = tr.events.len() - merges;
        prop_assert_eq!(tr.final_state.particles.len(), masses.len() - merges);
        prop_assert!((tr.final_state.total_mass() - sys.total_mass()).abs() < 1e-9);
        prop_assert_eq!(tr.final_state.particles.iter().map(|p| p.attribute).sum::<u64>(), attrs as u64);
        prop_assert_eq!(tr.dumps.len(), 2);
        prop_assert!(tr.events.windows(2).all(|w| w[0].time <= w[1].time));
    }
}
