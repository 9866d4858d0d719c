#![allow(dead_code)]

use corona_walk_core::arith::exact_rank;
use corona_walk_core::graph::Graph;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

/// Random graph on `n` vertices made connected by a random spanning tree.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((order[i].min(order[j]), order[i].max(order[j])));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn adjacency(g: &Graph) -> DMatrix<f64> {
    let n = g.order();
    let mut a = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a
}

/// `exp(-itA)` by nalgebra's Padé scaling-and-squaring.
pub fn transition(g: &Graph, t: f64) -> DMatrix<Complex64> {
    adjacency(g).map(|x| Complex64::new(0.0, -t * x)).exp()
}

/// Eigenvalues in decreasing order.
pub fn eigenvalues(g: &Graph) -> Vec<f64> {
    let mut v: Vec<f64> = adjacency(g).symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Exact rank of `[e_u, Ae_u, …, A^{n-1}e_u]`, which equals `|Φ_u|`.
pub fn krylov_rank(g: &Graph, u: usize) -> usize {
    let n = g.order();
    let a = g.adjacency();
    let mut x: Vec<i64> = (0..n).map(|i| i64::from(i == u)).collect();
    let mut cols = Vec::with_capacity(n);
    for _ in 0..n {
        cols.push(x.clone());
        x = (0..n).map(|i| (0..n).map(|j| a[i][j] * x[j]).sum()).collect();
    }
    let rows: Vec<Vec<i64>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    exact_rank(&rows)
}

/// `‖Π_μ (A - μI) e_u‖_∞`.
pub fn annihilator_residual(g: &Graph, u: usize, values: &[f64]) -> f64 {
    let a = adjacency(g);
    let mut x = DVector::from_fn(g.order(), |i, _| f64::from(u8::from(i == u)));
    for &mu in values {
        x = &a * &x - &x * mu;
    }
    x.amax()
}
