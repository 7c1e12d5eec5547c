//! Simple connected graphs with an indexed arc set and the structured
//! matrices consumed by the zeta and walk routines.
//!
//! Vertices are `0..n`. Edges are unordered pairs stored in canonical form
//! (`u < v`, sorted lexicographically) so that arc indices, determinants and
//! spectra are reproducible across runs.

use num::{BigInt, BigRational};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph needs at least 2 vertices, got {0}")]
    EmptyGraph(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is disconnected: vertex {0} unreachable from vertex 0")]
    Disconnected(usize),
    #[error("{generator} requires n >= {min}, got {given}")]
    BadOrder {
        generator: &'static str,
        min: usize,
        given: usize,
    },
    #[error("unknown graph name {0:?} (expected cycle:N, complete:N, path:N or petersen)")]
    BadName(String),
    #[error("invalid graph JSON: {0}")]
    BadJson(String),
}

/// Simple connected undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<i64>>,
    degrees: Vec<usize>,
    vertex_transitive: bool,
}

/// Directed arc `origin -> terminus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub origin: usize,
    pub terminus: usize,
}

/// The 2m arcs of a graph together with the inversion involution.
///
/// Edge `i = {u,v}` (with `u < v`) contributes arc `2i = (u,v)` and arc
/// `2i+1 = (v,u)`, so `inv` swaps `2i` and `2i+1`.
#[derive(Debug, Clone)]
pub struct ArcSet {
    arcs: Vec<Arc>,
    inv: Vec<usize>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
}

/// Adjacency, degree, transition and Laplacian matrices of a graph.
///
/// All entries are exact: integers except for the transition matrix, whose
/// rows hold `1/deg(u)` as rationals.
#[derive(Debug, Clone)]
pub struct StructuredMatrices {
    pub adjacency: Vec<Vec<i64>>,
    pub degree: Vec<Vec<i64>>,
    pub transition: Vec<Vec<BigRational>>,
    pub laplacian: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Validates an edge list and builds the graph.
    ///
    /// Rejects self-loops, duplicate edges (in either orientation),
    /// out-of-range vertices and disconnected inputs. The edge list is
    /// canonicalised to `u < v` pairs in lexicographic order.
    pub fn build(edge_list: &[(usize, usize)], n: usize) -> Result<Self, GraphError> {
        Self::build_inner(edge_list, n, false)
    }

    fn build_inner(
        edge_list: &[(usize, usize)],
        n: usize,
        vertex_transitive: bool,
    ) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::EmptyGraph(n));
        }
        let mut adjacency = vec![vec![0i64; n]; n];
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(a, b) in edge_list {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let (u, v) = (a.min(b), a.max(b));
            if adjacency[u][v] != 0 {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adjacency[u][v] = 1;
            adjacency[v][u] = 1;
            edges.push((u, v));
        }
        edges.sort_unstable();

        // connectivity from vertex 0
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if adjacency[u][v] != 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(GraphError::Disconnected(v));
        }

        let degrees = adjacency
            .iter()
            .map(|row| row.iter().sum::<i64>() as usize)
            .collect();
        Ok(Graph {
            n,
            edges,
            adjacency,
            degrees,
            vertex_transitive,
        })
    }

    /// Cycle graph C_n: vertex `i` adjacent to `(i±1) mod n`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::BadOrder {
                generator: "cycle",
                min: 3,
                given: n,
            });
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::build_inner(&edges, n, true)
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::BadOrder {
                generator: "complete",
                min: 2,
                given: n,
            });
        }
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::build_inner(&edges, n, true)
    }

    /// The Petersen graph: outer 5-cycle, inner pentagram, five spokes.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Self::build_inner(&edges, 10, true).expect("petersen construction is valid")
    }

    /// Path graph P_n on vertices 0..n.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::BadOrder {
                generator: "path",
                min: 2,
                given: n,
            });
        }
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Self::build_inner(&edges, n, false)
    }

    /// Resolves a generator name: `cycle:N`, `complete:N`, `path:N`, `petersen`.
    pub fn from_name(name: &str) -> Result<Self, GraphError> {
        let bad = || GraphError::BadName(name.to_string());
        if name == "petersen" {
            return Ok(Self::petersen());
        }
        let (kind, arg) = name.split_once(':').ok_or_else(bad)?;
        let n: usize = arg.parse().map_err(|_| bad())?;
        match kind {
            "cycle" => Self::cycle(n),
            "complete" => Self::complete(n),
            "path" => Self::path(n),
            _ => Err(bad()),
        }
    }

    /// Parses the graph input format `{ "n": int, "edges": [[u,v],...] }`.
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| GraphError::BadJson(e.to_string()))?;
        Self::build(&file.edges, file.n)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Betti number r = m - n + 1 of a connected graph.
    pub fn betti(&self) -> i64 {
        self.edges.len() as i64 - self.n as i64 + 1
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// `Some(k)` when every vertex has degree k.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.degrees[0];
        self.degrees.iter().all(|&d| d == k).then_some(k)
    }

    /// Trusted flag set only by the built-in vertex-transitive generators.
    ///
    /// Vertex-transitivity is not verified algorithmically; user graphs get
    /// only the necessary regularity check via [`Graph::regular_degree`].
    pub fn is_vertex_transitive(&self) -> bool {
        self.vertex_transitive
    }

    pub fn adjacency(&self) -> &[Vec<i64>] {
        &self.adjacency
    }

    /// Indexed arc set with the inversion involution.
    pub fn arcs(&self) -> ArcSet {
        let m = self.edges.len();
        let mut arcs = Vec::with_capacity(2 * m);
        let mut inv = Vec::with_capacity(2 * m);
        for &(u, v) in &self.edges {
            arcs.push(Arc {
                origin: u,
                terminus: v,
            });
            arcs.push(Arc {
                origin: v,
                terminus: u,
            });
            let i = inv.len();
            inv.push(i + 1);
            inv.push(i);
        }
        let mut outgoing = vec![Vec::new(); self.n];
        let mut incoming = vec![Vec::new(); self.n];
        for (e, arc) in arcs.iter().enumerate() {
            outgoing[arc.origin].push(e);
            incoming[arc.terminus].push(e);
        }
        ArcSet {
            arcs,
            inv,
            outgoing,
            incoming,
        }
    }

    /// Adjacency, degree, transition and Laplacian matrices.
    pub fn matrices(&self) -> StructuredMatrices {
        let n = self.n;
        let adjacency = self.adjacency.clone();
        let mut degree = vec![vec![0i64; n]; n];
        let mut laplacian = vec![vec![0i64; n]; n];
        let mut transition = vec![vec![BigRational::from_integer(BigInt::from(0)); n]; n];
        for u in 0..n {
            degree[u][u] = self.degrees[u] as i64;
            for v in 0..n {
                laplacian[u][v] = degree[u][v] - adjacency[u][v];
                if adjacency[u][v] != 0 {
                    transition[u][v] =
                        BigRational::new(BigInt::from(1), BigInt::from(self.degrees[u] as i64));
                }
            }
        }
        StructuredMatrices {
            adjacency,
            degree,
            transition,
            laplacian,
        }
    }

    /// Adjacency matrix as floats, for eigensolves.
    pub fn adjacency_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| self.adjacency[i][j] as f64)
    }

    /// Laplacian D - A as floats.
    pub fn laplacian_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| {
            let d = if i == j { self.degrees[i] as f64 } else { 0.0 };
            d - self.adjacency[i][j] as f64
        })
    }
}

impl ArcSet {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arc(&self, e: usize) -> Arc {
        self.arcs[e]
    }

    pub fn origin(&self, e: usize) -> usize {
        self.arcs[e].origin
    }

    pub fn terminus(&self, e: usize) -> usize {
        self.arcs[e].terminus
    }

    /// Index of the inverse arc; a fixed-point-free involution.
    pub fn inv(&self, e: usize) -> usize {
        self.inv[e]
    }

    /// Arcs with origin u.
    pub fn outgoing(&self, u: usize) -> &[usize] {
        &self.outgoing[u]
    }

    /// Arcs with terminus u (the set D(u) a coin acts on).
    pub fn incoming(&self, u: usize) -> &[usize] {
        &self.incoming[u]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{One, Zero};

    #[test]
    fn triangle_by_construction() {
        let g = Graph::build(&[(0, 1), (1, 2), (2, 0)], 3).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degrees(), &[2, 2, 2]);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn path_degrees() {
        let g = Graph::build(&[(0, 1), (1, 2)], 3).unwrap();
        assert_eq!(g.degrees(), &[1, 2, 1]);
        assert!(g.regular_degree().is_none());
    }

    #[test]
    fn rejects_disconnected() {
        let err = Graph::build(&[(0, 1), (2, 3)], 4).unwrap_err();
        assert_eq!(err, GraphError::Disconnected(2));
    }

    #[test]
    fn rejects_self_loop_and_duplicates() {
        assert_eq!(
            Graph::build(&[(1, 1)], 3).unwrap_err(),
            GraphError::SelfLoop(1)
        );
        assert_eq!(
            Graph::build(&[(0, 1), (1, 0)], 2).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert_eq!(Graph::build(&[], 0).unwrap_err(), GraphError::EmptyGraph(0));
        assert_eq!(
            Graph::build(&[(0, 5)], 3).unwrap_err(),
            GraphError::VertexOutOfRange { vertex: 5, n: 3 }
        );
    }

    #[test]
    fn generators() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!((c5.vertex_count(), c5.edge_count()), (5, 5));
        assert_eq!(c5.regular_degree(), Some(2));
        assert!(c5.is_vertex_transitive());

        let k4 = Graph::complete(4).unwrap();
        assert_eq!((k4.vertex_count(), k4.edge_count()), (4, 6));
        assert_eq!(k4.regular_degree(), Some(3));

        let p = Graph::petersen();
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
        assert_eq!(p.regular_degree(), Some(3));
        assert_eq!(p.betti(), 6);

        assert!(matches!(
            Graph::cycle(2),
            Err(GraphError::BadOrder { min: 3, .. })
        ));
        assert!(matches!(Graph::complete(1), Err(GraphError::BadOrder { .. })));
        assert!(matches!(Graph::path(1), Err(GraphError::BadOrder { .. })));
    }

    #[test]
    fn named_generators() {
        assert_eq!(Graph::from_name("cycle:6").unwrap(), Graph::cycle(6).unwrap());
        assert_eq!(Graph::from_name("petersen").unwrap(), Graph::petersen());
        assert!(matches!(
            Graph::from_name("torus:3"),
            Err(GraphError::BadName(_))
        ));
        assert!(matches!(
            Graph::from_name("cycle:x"),
            Err(GraphError::BadName(_))
        ));
    }

    #[test]
    fn graph_json_round_trip() {
        let g = Graph::from_json(r#"{"n": 4, "edges": [[0,1],[1,2],[2,3],[3,0]]}"#).unwrap();
        assert_eq!(g, Graph::build(&[(0, 1), (1, 2), (2, 3), (0, 3)], 4).unwrap());
        assert!(!g.is_vertex_transitive());
        assert!(Graph::from_json("{}").is_err());
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(Graph::cycle(3).unwrap().betti(), 1);
        assert_eq!(Graph::complete(4).unwrap().betti(), 3);
        assert_eq!(Graph::path(4).unwrap().betti(), 0);
    }

    #[test]
    fn arc_set_involution() {
        for g in [Graph::cycle(3).unwrap(), Graph::petersen()] {
            let arcs = g.arcs();
            assert_eq!(arcs.len(), 2 * g.edge_count());
            for e in 0..arcs.len() {
                let f = arcs.inv(e);
                assert_ne!(e, f);
                assert_eq!(arcs.inv(f), e);
                assert_eq!(arcs.origin(f), arcs.terminus(e));
                assert_eq!(arcs.terminus(f), arcs.origin(e));
            }
        }
    }

    #[test]
    fn arc_order_is_edge_order_uv_first() {
        let g = Graph::cycle(3).unwrap();
        let arcs = g.arcs();
        let listed: Vec<(usize, usize)> = (0..arcs.len())
            .map(|e| (arcs.origin(e), arcs.terminus(e)))
            .collect();
        assert_eq!(
            listed,
            vec![(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)]
        );
    }

    #[test]
    fn structured_matrix_row_sums() {
        for g in [
            Graph::cycle(5).unwrap(),
            Graph::complete(4).unwrap(),
            Graph::petersen(),
            Graph::path(4).unwrap(),
        ] {
            let m = g.matrices();
            for u in 0..g.vertex_count() {
                let a_row: i64 = m.adjacency[u].iter().sum();
                assert_eq!(a_row, g.degree(u) as i64);
                let lap_row: i64 = m.laplacian[u].iter().sum();
                assert_eq!(lap_row, 0);
                let t_row: BigRational = m.transition[u].iter().cloned().sum();
                assert!(t_row.is_one());
                for v in 0..g.vertex_count() {
                    assert_eq!(m.adjacency[u][v], m.adjacency[v][u]);
                    if m.adjacency[u][v] == 1 {
                        assert_eq!(
                            m.transition[u][v],
                            BigRational::new(BigInt::one(), BigInt::from(g.degree(u) as i64))
                        );
                    } else {
                        assert!(m.transition[u][v].is_zero());
                    }
                }
                assert_eq!(m.adjacency[u][u], 0);
            }
        }
    }

    #[test]
    fn cycle_adjacency_spectrum() {
        for n in [3usize, 5, 12, 64] {
            let g = Graph::cycle(n).unwrap();
            let eig = nalgebra::SymmetricEigen::new(g.adjacency_f64());
            let mut got: Vec<f64> = eig.eigenvalues.iter().copied().collect();
            let mut want: Vec<f64> = (0..n)
                .map(|k| 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos())
                .collect();
            got.sort_by(|a, b| a.partial_cmp(b).unwrap());
            want.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (a, b) in got.iter().zip(&want) {
                assert!((a - b).abs() < 1e-10, "n={n}: {a} vs {b}");
            }
        }
    }
}
