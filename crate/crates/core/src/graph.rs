//! Undirected simple graphs, the named families used throughout the crate,
//! and the flat vertex-indexing convention for corona products.

use alloc::boxed::Box;
use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// What a vertex of an assembled graph stands for.
///
/// Only corona-built graphs carry labels. For `G ⋆ H` the base copy of `G`
/// uses `Base(v)` and the vertex `w` of the copy of `H` hanging off `v` uses
/// `Copy { base: v, h_vertex: w }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    Base(usize),
    Copy { base: usize, h_vertex: usize },
}

/// Vertex-indexed undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    labels: Option<Vec<VertexLabel>>,
}

impl Graph {
    /// Builds a graph on `n` vertices, normalising each edge to `(min, max)`
    /// and sorting the edge list. Rejects self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize {
                family: "graph",
                min: 1,
                got: 0,
            });
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &edges {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for adj in &mut neighbors {
            adj.sort_unstable();
        }
        Ok(Self {
            n,
            edges,
            neighbors,
            labels: None,
        })
    }

    pub(crate) fn with_labels(mut self, labels: Vec<VertexLabel>) -> Self {
        debug_assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Sorted edge list, each edge as `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.neighbors[u].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<VertexLabel> {
        self.labels.as_ref().and_then(|l| l.get(v).copied())
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Symmetric 0/1 adjacency matrix with zero diagonal.
    pub fn adjacency(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; self.n]; self.n];
        for &(u, v) in &self.edges {
            a[u][v] = 1;
            a[v][u] = 1;
        }
        a
    }

    pub fn adjacency_matrix(&self) -> Matrix {
        let mut a = Matrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        a
    }

    /// Common degree if the graph is regular.
    pub fn is_regular(&self) -> Option<usize> {
        let k = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == k).then_some(k)
    }

    pub fn is_connected(&self) -> bool {
        self.bfs(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// All-pairs BFS distances.
    pub fn distance_matrix(&self) -> DistanceMatrix {
        let mut data = Vec::with_capacity(self.n * self.n);
        for s in 0..self.n {
            data.extend(self.bfs(s));
        }
        DistanceMatrix { n: self.n, data }
    }

    fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in &self.neighbors[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Sentinel for "no path" in a [`DistanceMatrix`].
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    /// Raw distance, [`UNREACHABLE`] when the vertices lie in different components.
    pub fn raw(&self, u: usize, v: usize) -> u32 {
        self.data[u * self.n + v]
    }

    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        let d = self.raw(u, v);
        (d != UNREACHABLE).then_some(d)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Largest finite distance.
    pub fn diameter(&self) -> u32 {
        self.data
            .iter()
            .copied()
            .filter(|&d| d != UNREACHABLE)
            .max()
            .unwrap_or(0)
    }
}

/// Named graph families plus file-backed and corona-composed specs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// Complete graph on `2n` vertices minus the perfect matching `{2i, 2i+1}`.
    Cocktail(usize),
    Empty(usize),
    /// `K_{1,n}`: centre 0 and leaves `1..=n`.
    Star(usize),
    File(String),
    Corona(Box<GraphSpec>, Box<GraphSpec>),
}

impl GraphSpec {
    pub fn corona(g: GraphSpec, h: GraphSpec) -> Self {
        GraphSpec::Corona(Box::new(g), Box::new(h))
    }

    /// Builds the graph. `file:` specs are rejected; use [`GraphSpec::build_with`].
    pub fn build(&self) -> Result<Graph> {
        self.build_with(&mut |path: &str| Err(Error::NeedsLoader(path.into())))
    }

    /// Builds the graph, resolving `file:` specs through `load`.
    pub fn build_with<F>(&self, load: &mut F) -> Result<Graph>
    where
        F: FnMut(&str) -> Result<Graph>,
    {
        let size = |family: &'static str, n: usize, min: usize| {
            if n < min {
                Err(Error::InvalidSize { family, min, got: n })
            } else {
                Ok(n)
            }
        };
        match self {
            GraphSpec::Path(n) => {
                let n = size("path", *n, 1)?;
                Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
            }
            GraphSpec::Cycle(n) => {
                let n = size("cycle", *n, 3)?;
                Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            GraphSpec::Complete(n) => {
                let n = size("complete", *n, 1)?;
                Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            }
            GraphSpec::Cocktail(n) => {
                let n = size("cocktail", *n, 1)?;
                let order = 2 * n;
                Graph::from_edges(
                    order,
                    (0..order).flat_map(|u| (u + 1..order).filter(move |&v| v != (u ^ 1)).map(move |v| (u, v))),
                )
            }
            GraphSpec::Empty(n) => Graph::from_edges(size("empty", *n, 1)?, core::iter::empty()),
            GraphSpec::Star(n) => {
                let n = size("star", *n, 1)?;
                Graph::from_edges(n + 1, (1..=n).map(|leaf| (0, leaf)))
            }
            GraphSpec::File(path) => load(path),
            GraphSpec::Corona(g, h) => {
                let g = g.build_with(load)?;
                let h = h.build_with(load)?;
                Ok(crate::corona::corona_adjacency(&g, &h))
            }
        }
    }
}

/// Antipode of `u` in `cocktail:n` as built by [`GraphSpec::Cocktail`].
pub fn cocktail_antipode(u: usize) -> usize {
    u ^ 1
}
