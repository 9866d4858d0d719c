//! Numeric oracles that share no code with the library's eigensolver:
//! nalgebra's Padé matrix exponential and random graph generators.

use corona_walk_core::graph::Graph;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn adjacency(g: &Graph) -> DMatrix<f64> {
    let n = g.order();
    let mut a = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a
}

/// `exp(-itA)`.
pub fn transition(g: &Graph, t: f64) -> DMatrix<Complex64> {
    adjacency(g).map(|x| Complex64::new(0.0, -t * x)).exp()
}

/// Random graph on `n` vertices, connected through a random spanning tree.
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
    Graph::from_edges(n, edges).expect("simple graph")
}
