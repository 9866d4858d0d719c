mod common;

use common::transition;
use corona_walk_core::corona::CoronaSpec;
use corona_walk_core::graph::{Graph, GraphSpec};
use corona_walk_core::spectral::{graph_decomposition, SpectralDecomposition, Tolerances};
use corona_walk_core::transfer::{
    corona_base_periodicity, periodicity_test, pgst_search, pst_certify, Periodic, PgstFamily, PgstParams, PstVerdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cube(dim: u32) -> Graph {
    let n = 1usize << dim;
    let edges = (0..n)
        .flat_map(|u| (0..dim).map(move |b| (u, u ^ (1 << b))))
        .filter(|(u, v)| u < v);
    Graph::from_edges(n, edges).unwrap()
}

fn sample_graphs() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = [
        GraphSpec::Path(2),
        GraphSpec::Path(3),
        GraphSpec::Path(4),
        GraphSpec::Path(5),
        GraphSpec::Cycle(4),
        GraphSpec::Cycle(5),
        GraphSpec::Cycle(6),
        GraphSpec::Complete(3),
        GraphSpec::Complete(4),
        GraphSpec::Cocktail(2),
        GraphSpec::Cocktail(3),
        GraphSpec::Star(3),
    ]
    .into_iter()
    .map(|s| (format!("{s:?}"), s.build().unwrap()))
    .collect();
    out.push(("Q3".into(), cube(3)));
    out
}

fn decomposition(g: &Graph) -> SpectralDecomposition {
    graph_decomposition(g, &Tolerances::default()).unwrap()
}

#[test]
fn certified_pst_is_confirmed_and_doubles_to_periodicity() {
    let tol = Tolerances::default();
    let mut certified = 0;
    for (name, g) in sample_graphs() {
        let d = decomposition(&g);
        for u in 0..g.order() {
            for v in u + 1..g.order() {
                let cert = pst_certify(&d, u, v, &tol).unwrap();
                if cert.verdict != PstVerdict::Pst {
                    continue;
                }
                certified += 1;
                let tau = cert.tau.unwrap();
                let oracle = transition(&g, tau);
                assert!(oracle[(u, v)].norm() > 1.0 - 1e-8, "{name} {u} {v}");
                assert!((oracle[(u, v)] - cert.phase.unwrap()).norm() < 1e-8);
                assert!(d.fidelity(u, u, 2.0 * tau).unwrap() > 1.0 - 1e-8);
                let g_value = cert.g.unwrap();
                assert!(cert.differences.iter().all(|d| d % g_value == 0));
            }
        }
    }
    // P2, P3, C4 and cocktail:2 = C4 (two pairs each), Q3 (four pairs)
    assert_eq!(certified, 1 + 1 + 2 + 2 + 4);
}

#[test]
fn no_earlier_transfer_than_certified_time() {
    let tol = Tolerances::default();
    for spec in [GraphSpec::Path(2), GraphSpec::Path(3), GraphSpec::Cycle(4)] {
        let g = spec.build().unwrap();
        let d = decomposition(&g);
        let v = g.order() - 1;
        let v = if matches!(spec, GraphSpec::Cycle(_)) { 2 } else { v };
        let tau = pst_certify(&d, 0, v, &tol).unwrap().tau.unwrap();
        let steps = 20_000;
        for j in 1..steps {
            let t = tau * j as f64 / steps as f64;
            assert!(d.fidelity(0, v, t).unwrap() < 1.0 - 1e-9 || (t - tau).abs() < 1e-3);
        }
    }
}

#[test]
fn periodicity_witness_returns_the_walk() {
    let tol = Tolerances::default();
    for (name, g) in sample_graphs() {
        let d = decomposition(&g);
        for u in 0..g.order() {
            let support = d.support_values(&d.eigenvalue_support(u, tol.support).unwrap());
            let verdict = periodicity_test(&support).unwrap();
            if verdict.periodic == Periodic::Yes {
                let t = verdict.witness_period.unwrap();
                let oracle = transition(&g, t);
                assert!(oracle[(u, u)].norm() > 1.0 - 1e-8, "{name} {u} at {t}");
            }
        }
    }
}

#[test]
fn base_support_is_contained_in_copy_support_away_from_zero() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let hs = [
        GraphSpec::Cycle(3),
        GraphSpec::Cycle(4),
        GraphSpec::Complete(4),
        GraphSpec::Empty(2),
    ];
    for (_, g) in sample_graphs().into_iter().take(11) {
        for hs in &hs {
            let spec = CoronaSpec::new(g.clone(), hs.build().unwrap());
            let k = spec.k().unwrap();
            let assembled = spec.assemble();
            let d = graph_decomposition(&assembled, &tol).unwrap();
            for _ in 0..3 {
                let v = rng.gen_range(0..spec.n());
                let w = rng.gen_range(0..spec.m());
                let base = d.eigenvalue_support(spec.base_index(v), tol.support).unwrap();
                let copy = d.eigenvalue_support(spec.copy_index(v, w), tol.support).unwrap();
                for c in &base.classes {
                    let at_zero = d.class(*c).value.abs() < 1e-9;
                    // the zero branch of a base vertex sits at k on the copies
                    assert!(copy.classes.contains(c) || (at_zero && k > 0));
                }
            }
        }
    }
}

#[test]
fn zero_branch_breaks_literal_containment() {
    let tol = Tolerances::default();
    let spec = CoronaSpec::new(
        GraphSpec::Path(3).build().unwrap(),
        GraphSpec::Cycle(3).build().unwrap(),
    );
    let d = graph_decomposition(&spec.assemble(), &tol).unwrap();
    let base = d.eigenvalue_support(spec.base_index(0), tol.support).unwrap();
    let copy = d.eigenvalue_support(spec.copy_index(0, 0), tol.support).unwrap();
    let zero = d.find_class(0.0, 1e-9).unwrap();
    assert!(base.classes.contains(&zero));
    assert!(!copy.classes.contains(&zero));
}

#[test]
fn aperiodic_base_graph_gives_aperiodic_corona() {
    let tol = Tolerances::default();
    let g = GraphSpec::Path(4).build().unwrap();
    let d = decomposition(&g);
    for u in 0..4 {
        let support = d.support_values(&d.eigenvalue_support(u, tol.support).unwrap());
        assert_eq!(periodicity_test(&support).unwrap().periodic, Periodic::No);
    }
    for h in [GraphSpec::Empty(2), GraphSpec::Cycle(3)] {
        let spec = CoronaSpec::new(g.clone(), h.build().unwrap());
        for v in 0..4 {
            let r = corona_base_periodicity(&spec, v, &tol).unwrap();
            assert_eq!(r.verdict.periodic, Periodic::No);
        }
    }
}

#[test]
fn pgst_traces_increase_strictly() {
    let tol = Tolerances::default();
    let params = PgstParams {
        l_max: 3000,
        target: 2.0,
    };
    for (g, u, v, family) in [
        (GraphSpec::Path(2), 0, 1, PgstFamily::LiftedPst),
        (GraphSpec::Cycle(4), 0, 2, PgstFamily::ZeroInSpectrum),
        (GraphSpec::Cocktail(3), 0, 1, PgstFamily::Cocktail),
    ] {
        let g = g.build().unwrap();
        let d = decomposition(&g);
        let spec = CoronaSpec::new(g, GraphSpec::Cycle(3).build().unwrap());
        let r = pgst_search(&spec, &d, u, v, family, params, &tol).unwrap();
        assert!(r.trace.windows(2).all(|w| w[1].1 > w[0].1 && w[1].0 > w[0].0));
        assert!(r.trace.iter().all(|&(_, f)| f <= 1.0 + 1e-9));
        assert_eq!(r.trace.last().unwrap().1, r.best_fidelity);
        assert_eq!(r.evaluated, 3001);
    }
}

#[test]
fn search_fidelity_matches_assembled_walk() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let g = GraphSpec::Path(2).build().unwrap();
    let d = decomposition(&g);
    let spec = CoronaSpec::new(g, GraphSpec::Cycle(3).build().unwrap());
    let assembled = spec.assemble();
    for _ in 0..5 {
        let l = rng.gen_range(0..5000u64);
        let params = PgstParams {
            l_max: l.max(1),
            target: 2.0,
        };
        let r = pgst_search(&spec, &d, 0, 1, PgstFamily::LiftedPst, params, &tol).unwrap();
        let t = r.family.time(l);
        assert!((t - (4.0 * l as f64 + 1.0) * std::f64::consts::PI).abs() < 1e-9 * t.max(1.0));
        let closed = corona_walk_core::corona::entry_base_base(&spec, &d, 0, 1, t)
            .unwrap()
            .norm();
        let oracle = transition(&assembled, t)[(0, 1)].norm();
        assert!((closed - oracle).abs() < 1e-7, "l={l}: {closed} vs {oracle}");
    }
}
