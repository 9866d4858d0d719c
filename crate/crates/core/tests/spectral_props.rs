mod common;

use common::{annihilator_residual, eigenvalues, krylov_rank, random_connected_graph, random_graph, transition};
use corona_walk_core::graph::GraphSpec;
use corona_walk_core::linalg::{CMatrix, Matrix};
use corona_walk_core::spectral::{decompose, graph_decomposition, SpectralDecomposition, Tolerances};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_decompositions(count: usize, seed: u64) -> Vec<(corona_walk_core::Graph, SpectralDecomposition)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(1..=8);
            let p = rng.gen_range(0.1..0.9);
            let g = if i % 2 == 0 {
                random_connected_graph(&mut rng, n, p)
            } else {
                random_graph(&mut rng, n, p)
            };
            let d = graph_decomposition(&g, &Tolerances::default()).unwrap();
            (g, d)
        })
        .collect()
}

fn projector_errors(d: &SpectralDecomposition, m: &Matrix) -> [f64; 4] {
    let n = d.order();
    let mut sum = Matrix::zeros(n, n);
    let (mut idem, mut orth) = (0.0f64, 0.0f64);
    for (r, c) in d.classes().iter().enumerate() {
        sum.add_scaled(1.0, &c.projector);
        idem = idem.max(c.projector.matmul(&c.projector).max_abs_diff(&c.projector));
        for s in d.classes().iter().skip(r + 1) {
            orth = orth.max(c.projector.matmul(&s.projector).max_abs());
        }
    }
    [
        sum.max_abs_diff(&Matrix::identity(n)),
        idem,
        orth,
        d.reconstruct().max_abs_diff(m),
    ]
}

#[test]
fn projector_algebra_on_random_graphs() {
    for (g, d) in random_decompositions(50, 11) {
        let [complete, idem, orth, recon] = projector_errors(&d, &g.adjacency_matrix());
        assert!(complete < 1e-9, "completeness {complete}");
        assert!(idem < 1e-9, "idempotence {idem}");
        assert!(orth < 1e-9, "orthogonality {orth}");
        assert!(recon < 1e-8, "reconstruction {recon}");
        for c in d.classes() {
            assert!((c.projector.trace() - c.multiplicity as f64).abs() < 1e-9);
        }
    }
}

#[test]
fn eigenvalues_match_nalgebra() {
    for (g, d) in random_decompositions(50, 12) {
        let oracle = eigenvalues(&g);
        let ours: Vec<f64> = d
            .classes()
            .iter()
            .flat_map(|c| std::iter::repeat_n(c.value, c.multiplicity))
            .collect();
        assert_eq!(ours.len(), oracle.len());
        for (a, b) in ours.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }
}

#[test]
fn exact_labels_match_values() {
    for (_, d) in random_decompositions(50, 13) {
        for c in d.classes() {
            if let Some(q) = c.exact {
                assert!((q.to_f64() - c.value).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn walk_is_unitary_symmetric_and_a_group() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for (_, d) in random_decompositions(50, 15) {
        let n = d.order();
        let t = rng.gen_range(0.0..10.0);
        let s = rng.gen_range(0.0..10.0);
        let ut = d.transition_matrix(t);
        let us = d.transition_matrix(s);
        assert!(ut.matmul(&ut.conj_transpose()).max_abs_diff(&CMatrix::identity(n)) < 1e-8);
        assert!(ut.max_abs_diff(&ut.transpose()) < 1e-8);
        assert!(d.transition_matrix(t + s).max_abs_diff(&ut.matmul(&us)) < 1e-7);
    }
}

#[test]
fn walk_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for (g, d) in random_decompositions(20, 17) {
        let t = rng.gen_range(0.0..10.0);
        let u = d.transition_matrix(t);
        let oracle = transition(&g, t);
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert!((u[(a, b)] - oracle[(a, b)]).norm() < 1e-8);
            }
        }
    }
}

#[test]
fn fidelity_is_symmetric_bit_for_bit() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for (g, d) in random_decompositions(20, 19) {
        let n = g.order();
        for _ in 0..5 {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let t = rng.gen_range(0.0..20.0);
            assert_eq!(
                d.fidelity(u, v, t).unwrap().to_bits(),
                d.fidelity(v, u, t).unwrap().to_bits()
            );
        }
    }
}

#[test]
fn supports_match_krylov_dimension() {
    for (g, d) in random_decompositions(30, 20) {
        for u in 0..g.order() {
            let values: Vec<f64> = d
                .support_values(&d.eigenvalue_support(u, 1e-8).unwrap())
                .iter()
                .map(|x| x.value())
                .collect();
            assert!(annihilator_residual(&g, u, &values) < 1e-7);
            assert_eq!(values.len(), krylov_rank(&g, u));
        }
    }
}

#[test]
fn strong_cospectrality_matches_brute_force() {
    // star leaves: E e_u and E e_v differ on the zero eigenspace
    let star = graph_decomposition(&GraphSpec::Star(3).build().unwrap(), &Tolerances::default()).unwrap();
    assert_eq!(star.strong_cospectral(1, 2, 1e-7).unwrap(), None);
    for spec in [
        GraphSpec::Path(2),
        GraphSpec::Path(3),
        GraphSpec::Cycle(4),
        GraphSpec::Cocktail(3),
    ] {
        let g = spec.build().unwrap();
        let d = graph_decomposition(&g, &Tolerances::default()).unwrap();
        let n = g.order();
        for u in 0..n {
            for v in u + 1..n {
                let brute = d.classes().iter().all(|c| {
                    let (cu, cv) = (c.projector.column(u), c.projector.column(v));
                    let plus = cu.iter().zip(&cv).all(|(a, b)| (a - b).abs() < 1e-7);
                    let minus = cu.iter().zip(&cv).all(|(a, b)| (a + b).abs() < 1e-7);
                    plus || minus
                });
                assert_eq!(
                    d.strong_cospectral(u, v, 1e-7).unwrap().is_some(),
                    brute,
                    "{spec:?} {u} {v}"
                );
            }
        }
    }
}

#[test]
fn decompose_accepts_weighted_symmetric_input() {
    let m = Matrix::from_rows(&[vec![2.0, -1.0, 0.0], vec![-1.0, 2.0, -1.0], vec![0.0, -1.0, 2.0]]).unwrap();
    let d = decompose(&m, 1e-8).unwrap();
    let want = [2.0 + 2f64.sqrt(), 2.0, 2.0 - 2f64.sqrt()];
    for (c, w) in d.classes().iter().zip(want) {
        assert!((c.value - w).abs() < 1e-12);
    }
    assert!(d.reconstruct().max_abs_diff(&m) < 1e-12);
}
