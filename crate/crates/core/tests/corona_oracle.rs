mod common;

use common::{random_connected_graph, transition};
use corona_walk_core::arith::Eigenvalue;
use corona_walk_core::corona::{
    eigen_pairs, entry_base_base, entry_base_copy, spectral_closed_form, CoronaEigenPair, CoronaSpec,
};
use corona_walk_core::graph::{Graph, GraphSpec};
use corona_walk_core::spectral::{graph_decomposition, Tolerances};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn build(spec: GraphSpec) -> Graph {
    spec.build().unwrap()
}

fn regular_hs() -> Vec<Graph> {
    vec![
        build(GraphSpec::Cycle(3)),
        build(GraphSpec::Cycle(4)),
        build(GraphSpec::Cycle(5)),
        build(GraphSpec::Complete(4)),
    ]
}

fn check_against_oracle(g: Graph, h: Graph, times: &[f64]) {
    let tol = Tolerances::default();
    let gd = graph_decomposition(&g, &tol).unwrap();
    let hd = graph_decomposition(&h, &tol).unwrap();
    let spec = CoronaSpec::new(g, h);
    let assembled = spec.assemble();
    let closed = spectral_closed_form(&spec, &gd, &hd, tol.group).unwrap();
    let recon = closed.reconstruct().max_abs_diff(&assembled.adjacency_matrix());
    assert!(recon < 1e-8, "reconstruction {recon}");
    for &t in times {
        let u = closed.transition_matrix(t);
        let oracle = transition(&assembled, t);
        for a in 0..spec.order() {
            for b in 0..spec.order() {
                let err = (u[(a, b)] - oracle[(a, b)]).norm();
                assert!(err < 1e-7, "U({t})[{a},{b}] off by {err}");
            }
        }
    }
}

#[test]
fn closed_form_matches_oracle_on_random_bases() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..12 {
        let n = rng.gen_range(2..=5);
        let p = rng.gen_range(0.2..0.8);
        let g = random_connected_graph(&mut rng, n, p);
        for h in regular_hs() {
            let times: Vec<f64> = (0..10).map(|_| rng.gen_range(0.0..20.0)).collect();
            check_against_oracle(g.clone(), h, &times);
        }
    }
}

#[test]
fn entries_match_oracle_on_small_coronas() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let tol = Tolerances::default();
    for gs in [GraphSpec::Path(2), GraphSpec::Path(3)] {
        let g = build(gs);
        let gd = graph_decomposition(&g, &tol).unwrap();
        let spec = CoronaSpec::new(g, build(GraphSpec::Cycle(3)));
        let assembled = spec.assemble();
        for _ in 0..25 {
            let t = rng.gen_range(0.0..20.0);
            let oracle = transition(&assembled, t);
            for v in 0..spec.n() {
                for vp in 0..spec.n() {
                    let bb = entry_base_base(&spec, &gd, v, vp, t).unwrap();
                    let want = oracle[(spec.base_index(v), spec.base_index(vp))];
                    assert!((bb - want).norm() < 1e-7);
                    for w in 0..spec.m() {
                        let bc = entry_base_copy(&spec, &gd, vp, v, w, t).unwrap();
                        let want = oracle[(spec.base_index(vp), spec.copy_index(v, w))];
                        assert!((bc - want).norm() < 1e-7);
                    }
                }
            }
        }
    }
}

#[test]
fn copy_entry_is_independent_of_h_vertex() {
    let g = build(GraphSpec::Path(2));
    let spec = CoronaSpec::new(g, build(GraphSpec::Cycle(3)));
    let oracle = transition(&spec.assemble(), 1.3);
    let vals: Vec<Complex64> = (0..3).map(|w| oracle[(0, spec.copy_index(1, w))]).collect();
    for w in 1..3 {
        assert!((vals[w] - vals[0]).norm() < 1e-10);
    }
}

#[test]
fn copy_only_classes_vanish_on_base_rows() {
    let tol = Tolerances::default();
    let g = build(GraphSpec::Path(3));
    let h = build(GraphSpec::Cycle(4));
    let gd = graph_decomposition(&g, &tol).unwrap();
    let hd = graph_decomposition(&h, &tol).unwrap();
    let spec = CoronaSpec::new(g, h);
    let closed = spectral_closed_form(&spec, &gd, &hd, tol.group).unwrap();
    let pair_values: Vec<f64> = eigen_pairs(&spec, &gd)
        .unwrap()
        .iter()
        .flat_map(|p| [p.plus.value(), p.minus.value()])
        .collect();
    let mut seen = 0;
    for c in closed.classes() {
        if pair_values.iter().any(|x| (x - c.value).abs() < 1e-8) {
            continue;
        }
        seen += 1;
        for a in 0..spec.n() {
            for b in 0..spec.order() {
                assert!(c.projector[(a, b)].abs() < 1e-12);
            }
        }
    }
    // C4 contributes the copy-only eigenvalue -2
    assert_eq!(seen, 1);
}

#[test]
fn product_identities_on_all_pairs() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..50 {
        let n = rng.gen_range(2..=8);
        let prob = rng.gen_range(0.1..0.9);
        let g = random_connected_graph(&mut rng, n, prob);
        let gd = graph_decomposition(&g, &tol).unwrap();
        for h in regular_hs() {
            let spec = CoronaSpec::new(g.clone(), h);
            let (k, m) = (spec.k().unwrap() as f64, spec.m() as f64);
            for p in eigen_pairs(&spec, &gd).unwrap() {
                let l = p.lambda.value();
                let (lp, lm) = (p.plus.value(), p.minus.value());
                let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
                assert!(rel(lp + lm, l + k) < 1e-9);
                assert!(rel(lp * lm, l * k - m * l * l) < 1e-8);
                let lhs = ((lp - k).powi(2) + m * l * l) * ((lm - k).powi(2) + m * l * l);
                assert!(rel(lhs, m * l * l * p.big_lambda.powi(2)) < 1e-6);
                assert!(rel((lp - k) * (lm - k), -m * l * l) < 1e-6);
            }
        }
    }
}

proptest! {
    #[test]
    fn two_term_sum_collapses(l in prop_oneof![-8.0f64..-0.01, 0.01f64..8.0], k in 0usize..6, m in 1usize..8, t in 0.0f64..50.0) {
        let p = CoronaEigenPair::new(Eigenvalue::Inexact(l), k, m);
        let (kf, mf) = (k as f64, m as f64);
        let big = p.big_lambda;
        let term = |root: f64, sign: f64| {
            let w = (root - kf).powi(2) / ((root - kf).powi(2) + mf * l * l);
            Complex64::from_polar(1.0, -sign * t * big / 2.0) * w
        };
        let lhs = term(p.plus.value(), 1.0) + term(p.minus.value(), -1.0);
        let half = t * big / 2.0;
        let rhs = Complex64::new(half.cos(), -(l - kf) / big * half.sin());
        prop_assert!((lhs - rhs).norm() < 1e-9);
    }
}
