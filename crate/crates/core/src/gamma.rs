//! Compatibility graphs over the marked points, and the connectivity and
//! hyperbolicity verdicts they determine.
//!
//! A [`MarkedGraph`] is a finite simple graph together with an injective
//! embedding of its vertices into the marked points of a triangulated
//! surface.  An arc is *compatible* with the graph when its endpoints are
//! the embedded images of the two ends of some graph edge; the matching
//! arc complex is built on compatible arcs only, so it depends on the
//! graph solely through its non-isolated part ([`MarkedGraph::gamma_zero`]).
//!
//! Whether the matching arc complex is connected is decided entirely by
//! the support size, the edge pattern, and the genus of the surface
//! ([`MarkedGraph::connectivity_verdict`]); hyperbolicity is decided in
//! the known cases and reported as open otherwise
//! ([`MarkedGraph::hyperbolicity_verdict`]).

use std::collections::VecDeque;

use thiserror::Error;

use crate::arc::Arc;
use crate::surface::{Triangulation, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {0}) is a loop; the graph must be simple")]
    LoopEdge(u32),
    #[error("edge ({0}, {1}) is listed twice")]
    DuplicateEdge(u32, u32),
    #[error("edge endpoint {0} is not a vertex of the graph")]
    UnknownVertex(u32),
    #[error("the embedding must list one marked point per vertex; got {got} for {expected} vertices")]
    EmbeddingSizeMismatch { expected: u32, got: usize },
    #[error("vertices {0} and {1} embed at the same marked point")]
    EmbeddingNotInjective(u32, u32),
    #[error("vertex {0} embeds at {1:?}, which is not a marked point of the surface")]
    NotAMarkedPoint(u32, VertexId),
}

/// Did the connectivity classification come out connected?
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectivityVerdict {
    Connected,
    Disconnected,
}

/// Why a hyperbolicity verdict is left open.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnknownReason {
    /// The matching arc complex is not connected, so hyperbolicity is not
    /// posed for it here.
    ComplexDisconnected,
    /// Triangle-free but not bipartite (for example an odd cycle of length
    /// at least five): no known criterion applies either way.
    OpenCase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HyperbolicityVerdict {
    Hyperbolic,
    NotHyperbolic,
    Unknown(UnknownReason),
}

/// A finite simple graph with vertices embedded at marked points.
///
/// Vertices are `0..num_vertices`; edges are stored as sorted pairs in
/// lexicographic order, so an edge index is stable for a given graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedGraph {
    num_vertices: u32,
    edges: Vec<(u32, u32)>,
    embedding: Vec<VertexId>,
}

impl MarkedGraph {
    /// Build and validate a graph: simple, with an injective embedding
    /// into the marked points of `tri`.
    pub fn new(
        tri: &Triangulation,
        num_vertices: u32,
        edges: &[(u32, u32)],
        embedding: Vec<VertexId>,
    ) -> Result<Self, GraphError> {
        if embedding.len() != num_vertices as usize {
            return Err(GraphError::EmbeddingSizeMismatch {
                expected: num_vertices,
                got: embedding.len(),
            });
        }
        for (v, p) in embedding.iter().enumerate() {
            if p.0 >= tri.num_marked_points() {
                return Err(GraphError::NotAMarkedPoint(v as u32, *p));
            }
            if let Some(w) = embedding[..v].iter().position(|q| q == p) {
                return Err(GraphError::EmbeddingNotInjective(w as u32, v as u32));
            }
        }
        let mut sorted: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            if u >= num_vertices || v >= num_vertices {
                return Err(GraphError::UnknownVertex(u.max(v)));
            }
            sorted.push((u.min(v), u.max(v)));
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(MarkedGraph {
            num_vertices,
            edges: sorted,
            embedding,
        })
    }

    /// The complete graph on `k` vertices, embedded at marked points `0..k`.
    pub fn complete(tri: &Triangulation, k: u32) -> Result<Self, GraphError> {
        let edges: Vec<(u32, u32)> = (0..k)
            .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
            .collect();
        Self::new(tri, k, &edges, (0..k).map(VertexId).collect())
    }

    /// The cycle on `k >= 3` vertices, embedded at marked points `0..k`.
    pub fn cycle(tri: &Triangulation, k: u32) -> Result<Self, GraphError> {
        let edges: Vec<(u32, u32)> = (0..k).map(|u| (u, (u + 1) % k)).collect();
        Self::new(tri, k, &edges, (0..k).map(VertexId).collect())
    }

    /// The path on `k` vertices, embedded at marked points `0..k`.
    pub fn path(tri: &Triangulation, k: u32) -> Result<Self, GraphError> {
        let edges: Vec<(u32, u32)> = (1..k).map(|v| (v - 1, v)).collect();
        Self::new(tri, k, &edges, (0..k).map(VertexId).collect())
    }

    /// The star with center `0` and `k - 1` leaves, embedded at `0..k`.
    pub fn star(tri: &Triangulation, k: u32) -> Result<Self, GraphError> {
        let edges: Vec<(u32, u32)> = (1..k).map(|v| (0, v)).collect();
        Self::new(tri, k, &edges, (0..k).map(VertexId).collect())
    }

    pub fn num_vertices(&self) -> u32 {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted vertex pairs, in index order.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// The marked point carrying vertex `v`.
    pub fn embedding(&self, v: u32) -> VertexId {
        self.embedding[v as usize]
    }

    /// The vertex embedded at marked point `p`, if any.
    pub fn vertex_at(&self, p: VertexId) -> Option<u32> {
        self.embedding.iter().position(|q| *q == p).map(|v| v as u32)
    }

    /// Index of the edge between `u` and `v`, if present.
    pub fn edge_between(&self, u: u32, v: u32) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn degree(&self, v: u32) -> usize {
        self.edges.iter().filter(|(a, b)| *a == v || *b == v).count()
    }

    fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.num_vertices as usize];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        adj
    }

    /// The support of the graph: the induced subgraph on non-isolated
    /// vertices, relabelled contiguously with the embedding carried along.
    /// The matching arc complex only depends on this part.
    pub fn gamma_zero(&self) -> MarkedGraph {
        let mut keep: Vec<u32> = self.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        keep.sort_unstable();
        keep.dedup();
        let index_of = |v: u32| keep.binary_search(&v).unwrap() as u32;
        MarkedGraph {
            num_vertices: keep.len() as u32,
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| (index_of(u), index_of(v)))
                .collect(),
            embedding: keep.iter().map(|&v| self.embedding[v as usize]).collect(),
        }
    }

    /// Whether the complement of every edge (drop the edge's two vertices)
    /// still contains an edge.
    pub fn edge_complement_condition(&self) -> bool {
        self.edges.iter().all(|&(u, v)| {
            self.edges
                .iter()
                .any(|&(x, y)| x != u && x != v && y != u && y != v)
        })
    }

    pub fn has_triangle(&self) -> bool {
        self.first_triangle().is_some()
    }

    /// The lexicographically least triangle by sorted vertex triple, if any.
    pub fn first_triangle(&self) -> Option<[u32; 3]> {
        let n = self.num_vertices;
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.edge_between(u, v).is_some())
            .find_map(|(u, v)| {
                (v + 1..n)
                    .find(|&w| {
                        self.edge_between(u, w).is_some() && self.edge_between(v, w).is_some()
                    })
                    .map(|w| [u, v, w])
            })
    }

    /// Whether the graph is connected.  The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.num_vertices == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.num_vertices as usize];
        let mut queue = VecDeque::from([0u32]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.num_vertices
    }

    /// A tree: connected and acyclic, with at least one vertex.
    pub fn is_tree(&self) -> bool {
        self.num_vertices >= 1
            && self.edges.len() + 1 == self.num_vertices as usize
            && self.is_connected()
    }

    /// A polygon: a single cycle through all vertices.
    pub fn is_polygon(&self) -> bool {
        self.num_vertices >= 3
            && self.is_connected()
            && (0..self.num_vertices).all(|v| self.degree(v) == 2)
    }

    /// If the graph is bipartite, the part sizes `(smaller, larger)` of a
    /// two-colouring chosen to make the smaller part as large as possible
    /// (for disconnected graphs each component's colouring can be flipped
    /// independently, so the split is not unique).
    pub fn bipartite_part_sizes(&self) -> Option<(u32, u32)> {
        let n = self.num_vertices as usize;
        let adj = self.adjacency();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        // Per-component colour-class sizes.
        let mut splits: Vec<(u32, u32)> = Vec::new();
        for start in 0..n {
            if colour[start].is_some() {
                continue;
            }
            let mut sizes = [1u32, 0u32];
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let c = colour[v].unwrap();
                for &w in &adj[v] {
                    match colour[w as usize] {
                        None => {
                            colour[w as usize] = Some(!c);
                            sizes[!c as usize] += 1;
                            queue.push_back(w as usize);
                        }
                        Some(d) if d == c => return None,
                        Some(_) => {}
                    }
                }
            }
            splits.push((sizes[0], sizes[1]));
        }
        // Flip components independently to maximize the smaller total.
        let total: u32 = self.num_vertices;
        let mut reachable = vec![false; total as usize + 1];
        reachable[0] = true;
        for (a, b) in splits {
            let mut next = vec![false; total as usize + 1];
            for (s, ok) in reachable.iter().enumerate() {
                if *ok {
                    next[s + a as usize] = true;
                    next[s + b as usize] = true;
                }
            }
            reachable = next;
        }
        let best = (0..=total)
            .filter(|&s| reachable[s as usize])
            .map(|s| (s.min(total - s), s.max(total - s)))
            .max_by_key(|&(lo, _)| lo)
            .unwrap();
        Some(best)
    }

    /// The largest distance between two vertices, or `None` when some pair
    /// is not connected.  At most one vertex: distance `0`.
    pub fn graph_diameter(&self) -> Option<u32> {
        let n = self.num_vertices as usize;
        if n <= 1 {
            return Some(0);
        }
        let adj = self.adjacency();
        let mut diameter = 0;
        for start in 0..n {
            let mut dist: Vec<Option<u32>> = vec![None; n];
            dist[start] = Some(0);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if dist[w as usize].is_none() {
                        dist[w as usize] = Some(dist[v].unwrap() + 1);
                        queue.push_back(w as usize);
                    }
                }
            }
            for d in dist {
                diameter = diameter.max(d?);
            }
        }
        Some(diameter)
    }

    /// The graph edge realized by the arc: the unique edge whose embedded
    /// endpoints are the arc's endpoints.  Loops are never compatible.
    pub fn compatible(&self, arc: &Arc) -> Option<usize> {
        let [p, q] = arc.endpoints();
        if p == q {
            return None;
        }
        let u = self.vertex_at(p)?;
        let v = self.vertex_at(q)?;
        self.edge_between(u, v)
    }

    /// Whether the matching arc complex over this graph is connected, on a
    /// surface of the given genus.  The classification is complete:
    /// support of at most three vertices is always disconnected; exactly
    /// four is connected precisely for two disjoint edges on positive
    /// genus; five or more is connected precisely when every edge's
    /// complement keeps an edge.
    pub fn connectivity_verdict(&self, genus: u32) -> ConnectivityVerdict {
        let g0 = self.gamma_zero();
        let connected = match g0.num_vertices {
            0..=3 => false,
            4 => genus >= 1 && g0.num_edges() == 2,
            _ => g0.edge_complement_condition(),
        };
        if connected {
            ConnectivityVerdict::Connected
        } else {
            ConnectivityVerdict::Disconnected
        }
    }

    /// Hyperbolicity of the matching arc complex, in the decided cases.
    ///
    /// Connected support with a triangle gives a hyperbolic complex.  A
    /// bipartition with both parts of size at least four embeds a
    /// quasi-flat, as do trees and even polygons, all non-hyperbolic.
    /// Everything else — notably triangle-free non-bipartite support such
    /// as a pentagon — is open, as is every graph whose complex is
    /// disconnected.
    pub fn hyperbolicity_verdict(&self, genus: u32) -> HyperbolicityVerdict {
        if self.connectivity_verdict(genus) != ConnectivityVerdict::Connected {
            return HyperbolicityVerdict::Unknown(UnknownReason::ComplexDisconnected);
        }
        let g0 = self.gamma_zero();
        if g0.is_connected() && g0.has_triangle() {
            return HyperbolicityVerdict::Hyperbolic;
        }
        if let Some((lo, _)) = g0.bipartite_part_sizes() {
            if lo >= 4 {
                return HyperbolicityVerdict::NotHyperbolic;
            }
        }
        if g0.is_tree() || (g0.is_polygon() && g0.num_vertices % 2 == 0) {
            return HyperbolicityVerdict::NotHyperbolic;
        }
        HyperbolicityVerdict::Unknown(UnknownReason::OpenCase)
    }
}
