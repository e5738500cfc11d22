//! The matching arc complex over a compatibility graph: adjacency, balls,
//! explicit bounded-length paths, and separation tests.
//!
//! Vertices are arcs compatible with a [`MarkedGraph`]; two vertices span an
//! edge when the arcs are completely disjoint (the *matching* complex) or
//! merely disjoint (the relaxed *arc* complex used by the geometry checks).
//!
//! The path constructions mirror the connectivity argument: crossing pairs
//! are interpolated by a unicorn sequence whose consecutive members are
//! disjoint arcs with the same endpoints, each such pair is bridged through
//! auxiliary arcs on other graph edges (length at most 6, or 4 when only one
//! endpoint is shared), and the remaining gap is bridged the same way.  All
//! outputs are [`PathCertificate`]s that can be re-checked independently.

use std::slice;

use thiserror::Error;

use crate::arc::Arc;
use crate::arrange::{cut_along, ArrangeError};
use crate::enumerate::{find_disjoint_arc, ArcPool, DisjointArcOutcome};
use crate::gamma::{ConnectivityVerdict, MarkedGraph};
use crate::overlay;
use crate::surface::{Triangulation, VertexId};
use crate::unicorn::{unicorn_arcs, UnicornError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MacxError {
    #[error("vertex {0} of the graph embeds at {1:?}, outside this surface")]
    GraphSurfaceMismatch(u32, VertexId),
    #[error("the arc is not compatible with the graph")]
    NotCompatible,
    #[error("the arcs must be disjoint (found {crossings} crossings)")]
    NotDisjoint { crossings: u64 },
    #[error("the arcs must share exactly one endpoint")]
    NotOneSharedEndpoint,
    #[error("the arcs must have the same endpoints")]
    NotSameEndpoints,
    #[error("the arcs must be distinct")]
    SameArc,
    #[error("the matching arc complex over this graph is not connected")]
    NotConnected,
    #[error("this construction needs at least five supported vertices and the edge-complement condition")]
    SupportTooSmall,
    #[error("no {role} found within weight {weight}; raise the search bound")]
    SearchBudget { role: &'static str, weight: usize },
    #[error("the base arc has weight {weight}, above the ball's bound {bound}")]
    BaseAboveWeightBound { weight: usize, bound: usize },
    #[error("marked point {0:?} lies on one of the cut arcs")]
    PointOnArc(VertexId),
    #[error("marked point {0:?} is not on the surface")]
    NoSuchMarkedPoint(VertexId),
    #[error(transparent)]
    Arrange(#[from] ArrangeError),
    #[error(transparent)]
    Unicorn(#[from] UnicornError),
}

/// Which complex a certificate or ball lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexKind {
    /// Adjacency is complete disjointness: no crossings, no shared endpoints.
    Matching,
    /// Adjacency is plain disjointness: no crossings.
    Arc,
}

/// How one step of a certificate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    /// The two arcs are adjacent outright.
    Direct,
    /// Produced while bridging two disjoint arcs sharing one endpoint.
    SharedEndpointBridge,
    /// Produced while bridging two disjoint arcs with the same endpoints.
    SameEndpointsBridge,
}

impl std::fmt::Display for StepKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StepKind::Direct => "direct",
            StepKind::SharedEndpointBridge => "shared-endpoint-bridge",
            StepKind::SameEndpointsBridge => "same-endpoints-bridge",
        })
    }
}

/// An explicit path in the chosen complex: a vertex sequence plus one
/// provenance tag per step.  `steps.len() + 1 == arcs.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCertificate {
    pub kind: ComplexKind,
    pub arcs: Vec<Arc>,
    pub steps: Vec<StepKind>,
}

impl PathCertificate {
    pub fn single(kind: ComplexKind, arc: Arc) -> Self {
        PathCertificate {
            kind,
            arcs: vec![arc],
            steps: Vec::new(),
        }
    }

    /// Number of steps (edges) along the certificate.
    pub fn length(&self) -> usize {
        self.steps.len()
    }

    fn push(&mut self, arc: Arc, step: StepKind) {
        self.arcs.push(arc);
        self.steps.push(step);
    }

    /// Append a sub-certificate whose first arc is our current last arc.
    fn splice(&mut self, sub: PathCertificate) {
        debug_assert_eq!(self.arcs.last(), sub.arcs.first());
        debug_assert_eq!(self.kind, sub.kind);
        self.arcs.extend(sub.arcs.into_iter().skip(1));
        self.steps.extend(sub.steps);
    }
}

/// Why a certificate fails validation, with the index of the first arc at
/// which the walk breaks.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("certificate has no arcs")]
    Empty,
    #[error("arc {index} is not compatible with the graph")]
    Incompatible { index: usize },
    #[error("arc {index} is not adjacent to its predecessor in the stated complex")]
    NotAdjacent { index: usize },
}

/// A finite window onto the complex: every vertex of weight at most the
/// bound within a given distance of a base arc.
#[derive(Debug, Clone)]
pub struct Ball {
    kind: ComplexKind,
    base: Arc,
    radius: u32,
    weight_bound: usize,
    /// Members in canonical order.
    vertices: Vec<Arc>,
    /// Distance from the base, aligned with `vertices`.
    distances: Vec<u32>,
    /// All adjacent pairs among members, as sorted index pairs.
    adjacency: Vec<(usize, usize)>,
    saturated: bool,
}

impl Ball {
    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn base(&self) -> &Arc {
        &self.base
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn weight_bound(&self) -> usize {
        self.weight_bound
    }

    pub fn vertices(&self) -> &[Arc] {
        &self.vertices
    }

    pub fn adjacency(&self) -> &[(usize, usize)] {
        &self.adjacency
    }

    /// Whether the ball stopped growing before the radius ran out, so it is
    /// the whole connected component of the weight-bounded subcomplex.
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn index_of(&self, arc: &Arc) -> Option<usize> {
        self.vertices.binary_search(arc).ok()
    }

    pub fn contains(&self, arc: &Arc) -> bool {
        self.index_of(arc).is_some()
    }

    /// Distance from the base arc, if the arc is a member.
    pub fn distance_from_base(&self, arc: &Arc) -> Option<u32> {
        self.index_of(arc).map(|i| self.distances[i])
    }

    /// Distance between two members measured inside the ball; `None` when
    /// either arc is missing or no path stays within the ball.
    pub fn distance(&self, x: &Arc, y: &Arc) -> Option<u32> {
        let from = self.index_of(x)?;
        let to = self.index_of(y)?;
        if from == to {
            return Some(0);
        }
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(i, j) in &self.adjacency {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut dist = vec![None; self.vertices.len()];
        dist[from] = Some(0u32);
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(dist[v].unwrap() + 1);
                    if w == to {
                        return dist[w];
                    }
                    queue.push_back(w);
                }
            }
        }
        dist[to]
    }
}

/// The matching arc complex machinery for one surface and graph.
pub struct Macx<'a> {
    tri: &'a Triangulation,
    graph: &'a MarkedGraph,
    pool: ArcPool<'a>,
    /// Weight cap for auxiliary-arc searches inside the bridge builders.
    search_weight: usize,
    /// How many candidates to try per level in nested searches.
    candidate_limit: usize,
}

impl<'a> Macx<'a> {
    pub fn new(tri: &'a Triangulation, graph: &'a MarkedGraph) -> Result<Self, MacxError> {
        for v in 0..graph.num_vertices() {
            let p = graph.embedding(v);
            if p.0 >= tri.num_marked_points() {
                return Err(MacxError::GraphSurfaceMismatch(v, p));
            }
        }
        Ok(Macx {
            tri,
            graph,
            pool: ArcPool::new(tri),
            search_weight: 8,
            candidate_limit: 24,
        })
    }

    pub fn with_search_weight(mut self, weight: usize) -> Self {
        self.search_weight = weight;
        self
    }

    pub fn triangulation(&self) -> &'a Triangulation {
        self.tri
    }

    pub fn graph(&self) -> &'a MarkedGraph {
        self.graph
    }

    /// Whether the arc is a vertex of the complex.
    pub fn is_vertex(&self, a: &Arc) -> bool {
        self.graph.compatible(a).is_some()
    }

    /// Whether two vertices span an edge of the chosen complex.
    pub fn adjacent(&self, kind: ComplexKind, a: &Arc, b: &Arc) -> bool {
        if a == b || !self.is_vertex(a) || !self.is_vertex(b) {
            return false;
        }
        match kind {
            ComplexKind::Matching => overlay::completely_disjoint(self.tri, a, b),
            ComplexKind::Arc => overlay::disjoint(self.tri, a, b),
        }
    }

    /// All matching-complex neighbors of `a` of weight at most `max_weight`,
    /// in canonical order.  Exhaustive within the weight bound.
    pub fn neighbors(&mut self, a: &Arc, max_weight: usize) -> Vec<Arc> {
        let universe = self.compatible_arcs(max_weight);
        universe
            .into_iter()
            .filter(|b| self.adjacent(ComplexKind::Matching, a, b))
            .collect()
    }

    /// Breadth-first ball of the given radius around `base`, over vertices
    /// of weight at most `weight_bound`.
    pub fn ball(
        &mut self,
        kind: ComplexKind,
        base: &Arc,
        radius: u32,
        weight_bound: usize,
    ) -> Result<Ball, MacxError> {
        self.require_vertex(base)?;
        if base.weight() > weight_bound {
            return Err(MacxError::BaseAboveWeightBound {
                weight: base.weight(),
                bound: weight_bound,
            });
        }
        let universe = self.compatible_arcs(weight_bound);
        let base_idx = universe
            .binary_search(base)
            .expect("a compatible arc within the weight bound is in the universe");
        let mut dist: Vec<Option<u32>> = vec![None; universe.len()];
        dist[base_idx] = Some(0);
        let mut frontier = vec![base_idx];
        let mut depth = 0u32;
        while !frontier.is_empty() && depth < radius {
            let mut next = Vec::new();
            for &v in &frontier {
                for (w, slot) in dist.iter_mut().enumerate() {
                    if slot.is_none() && self.adjacent(kind, &universe[v], &universe[w]) {
                        *slot = Some(depth + 1);
                        next.push(w);
                    }
                }
            }
            frontier = next;
            depth += 1;
        }
        // Saturated when nothing outside the ball touches the last frontier.
        let saturated = frontier.iter().all(|&v| {
            dist.iter()
                .enumerate()
                .all(|(w, slot)| slot.is_some() || !self.adjacent(kind, &universe[v], &universe[w]))
        });
        let mut vertices = Vec::new();
        let mut distances = Vec::new();
        for (i, slot) in dist.iter().enumerate() {
            if let Some(d) = slot {
                vertices.push(universe[i].clone());
                distances.push(*d);
            }
        }
        let mut adjacency = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if self.adjacent(kind, &vertices[i], &vertices[j]) {
                    adjacency.push((i, j));
                }
            }
        }
        Ok(Ball {
            kind,
            base: base.clone(),
            radius,
            weight_bound,
            vertices,
            distances,
            adjacency,
            saturated,
        })
    }

    /// Bridge two disjoint compatible arcs sharing exactly one endpoint by a
    /// matching-complex path of length at most 4.
    pub fn bridge_shared_endpoint(
        &mut self,
        alpha: &Arc,
        beta: &Arc,
    ) -> Result<PathCertificate, MacxError> {
        self.require_rich_support()?;
        let e = self.require_vertex(alpha)?;
        let f = self.require_vertex(beta)?;
        let crossings = overlay::intersection_number(self.tri, alpha, beta);
        if crossings != 0 {
            return Err(MacxError::NotDisjoint { crossings });
        }
        if shared_endpoints(alpha, beta) != 1 {
            return Err(MacxError::NotOneSharedEndpoint);
        }

        let step = StepKind::SharedEndpointBridge;
        let ef: Vec<u32> = self.edge_vertices(e).into_iter().chain(self.edge_vertices(f)).collect();

        // Graph edges avoiding both arcs, avoiding `alpha`'s, and avoiding
        // `beta`'s.  Every edge in `eps` meets `f` at one vertex when `far`
        // is empty (and symmetrically), so two helpers either avoid each
        // other (three steps) or meet at a fifth point, where a connector
        // between and beside them closes a four-step path.
        let far: Vec<usize> = (0..self.graph.num_edges())
            .filter(|&g| !self.edge_meets(g, &ef))
            .collect();
        let eps: Vec<usize> = (0..self.graph.num_edges())
            .filter(|&g| !self.edge_meets(g, &self.edge_vertices(e)))
            .collect();
        let fps: Vec<usize> = (0..self.graph.num_edges())
            .filter(|&g| !self.edge_meets(g, &self.edge_vertices(f)))
            .collect();

        for w in self.weight_rounds() {
            // A connector on a far edge: two steps.
            for &g in &far {
                let cands = self.arcs_with_endpoints(g, w);
                if let Some(c) = self.first_avoiding(&cands, &[alpha, beta]) {
                    let mut cert = PathCertificate::single(ComplexKind::Matching, alpha.clone());
                    cert.push(c, step);
                    cert.push(beta.clone(), step);
                    return Ok(cert);
                }
            }

            // Helpers on a vertex-disjoint pair of side edges: three steps.
            for &ep in &eps {
                for &fp in &fps {
                    if self.edge_meets(fp, &self.edge_vertices(ep)) {
                        continue;
                    }
                    let c1s = self.arcs_with_endpoints(ep, w);
                    let c2s = self.arcs_with_endpoints(fp, w);
                    for g1 in self.avoiding(&c1s, &[alpha, beta]) {
                        if let Some(g2) = self.first_avoiding(&c2s, &[alpha, beta, &g1]) {
                            let mut cert =
                                PathCertificate::single(ComplexKind::Matching, alpha.clone());
                            cert.push(g1, step);
                            cert.push(g2, step);
                            cert.push(beta.clone(), step);
                            return Ok(cert);
                        }
                    }
                }
            }

            // Side helpers meeting at a fifth point, plus a connector edge
            // touching at most one of the six support points: four steps.
            for &ep in &eps {
                for &fp in &fps {
                    let blocked: Vec<u32> = self
                        .edge_vertices(ep)
                        .into_iter()
                        .chain(self.edge_vertices(fp))
                        .collect();
                    let all: Vec<u32> =
                        ef.iter().copied().chain(blocked.iter().copied()).collect();
                    for g in 0..self.graph.num_edges() {
                        if self.edge_meets(g, &blocked) || self.edge_shared_count(g, &all) > 1 {
                            continue;
                        }
                        let c1s = self.arcs_with_endpoints(ep, w);
                        let c2s = self.arcs_with_endpoints(g, w);
                        let c3s = self.arcs_with_endpoints(fp, w);
                        for g1 in self.avoiding(&c1s, &[alpha, beta]) {
                            for g2 in self.avoiding(&c2s, &[alpha, beta, &g1]) {
                                if let Some(g3) =
                                    self.first_avoiding(&c3s, &[alpha, beta, &g1, &g2])
                                {
                                    let mut cert = PathCertificate::single(
                                        ComplexKind::Matching,
                                        alpha.clone(),
                                    );
                                    cert.push(g1, step);
                                    cert.push(g2, step);
                                    cert.push(g3, step);
                                    cert.push(beta.clone(), step);
                                    return Ok(cert);
                                }
                            }
                        }
                    }
                }
            }
        }

        Err(MacxError::SearchBudget {
            role: "bridge arc beside a shared endpoint",
            weight: self.max_search_weight(),
        })
    }

    /// Bridge two disjoint compatible arcs with the same endpoints by a
    /// matching-complex path of length at most 6 (at most 4 when the support
    /// is two disjoint edges on positive genus).
    pub fn bridge_same_endpoints(
        &mut self,
        alpha: &Arc,
        beta: &Arc,
    ) -> Result<PathCertificate, MacxError> {
        let e = self.require_vertex(alpha)?;
        self.require_vertex(beta)?;
        if alpha == beta {
            return Err(MacxError::SameArc);
        }
        let crossings = overlay::intersection_number(self.tri, alpha, beta);
        if crossings != 0 {
            return Err(MacxError::NotDisjoint { crossings });
        }
        if alpha.endpoints() != beta.endpoints() {
            return Err(MacxError::NotSameEndpoints);
        }
        let g0 = self.graph.gamma_zero();
        if g0.num_vertices() >= 5 && g0.edge_complement_condition() {
            self.same_endpoints_rich(alpha, beta, e)
        } else if self.graph.connectivity_verdict(self.tri.genus())
            == ConnectivityVerdict::Connected
        {
            self.same_endpoints_two_edges(alpha, beta, e)
        } else {
            Err(MacxError::NotConnected)
        }
    }

    fn same_endpoints_rich(
        &mut self,
        alpha: &Arc,
        beta: &Arc,
        e: usize,
    ) -> Result<PathCertificate, MacxError> {
        let step = StepKind::SameEndpointsBridge;
        let ev = self.edge_vertices(e);
        let cut = cut_along(self.tri, &[alpha.clone(), beta.clone()])?;

        // Edges avoiding `e` whose endpoints fall in one piece of the
        // complement carry a single connector.
        let copiece: Vec<usize> = (0..self.graph.num_edges())
            .filter(|&g| {
                if self.edge_meets(g, &ev) {
                    return false;
                }
                let [p, q] = self.edge_points(g);
                cut.piece_of(p) == cut.piece_of(q)
            })
            .collect();

        // Otherwise: a helper beside `alpha` on an edge avoiding `e`, and a
        // second helper beside `beta` on an edge nearly avoiding both.
        let f1 = (0..self.graph.num_edges())
            .find(|&g| !self.edge_meets(g, &ev))
            .expect("the edge-complement condition provides a disjoint edge");
        let f1v = self.edge_vertices(f1);
        let union: Vec<u32> = ev.iter().copied().chain(f1v.iter().copied()).collect();
        let f2 = (0..self.graph.num_edges())
            .find(|&g| self.edge_shared_count(g, &union) <= 1)
            .expect("five supported vertices provide a nearly-disjoint edge");
        let meets_f1 = self.edge_meets(f2, &f1v);
        let meets_e = self.edge_meets(f2, &ev);

        for w in self.weight_rounds() {
            for &g in &copiece {
                let cands = self.arcs_with_endpoints(g, w);
                if let Some(c) = self.first_avoiding(&cands, &[alpha, beta]) {
                    let mut cert = PathCertificate::single(ComplexKind::Matching, alpha.clone());
                    cert.push(c, step);
                    cert.push(beta.clone(), step);
                    return Ok(cert);
                }
            }

            let c1s = self.arcs_with_endpoints(f1, w);
            let c2s = self.arcs_with_endpoints(f2, w);
            for g1 in self.avoiding(&c1s, &[alpha]) {
                let Some(g2) = self.first_avoiding(&c2s, &[beta, &g1]) else {
                    continue;
                };
                let mut cert = PathCertificate::single(ComplexKind::Matching, alpha.clone());
                if meets_f1 {
                    // The helpers share one endpoint; bridge between them.
                    let Ok(sub) = self.bridge_shared_endpoint(&g1, &g2) else {
                        continue;
                    };
                    cert.push(g1, step);
                    cert.splice(sub);
                    cert.push(beta.clone(), step);
                } else if meets_e {
                    // The second helper leans on `e`; bridge it to `beta`.
                    let Ok(sub) = self.bridge_shared_endpoint(&g2, beta) else {
                        continue;
                    };
                    cert.push(g1, step);
                    cert.push(g2, step);
                    cert.splice(sub);
                } else {
                    cert.push(g1, step);
                    cert.push(g2, step);
                    cert.push(beta.clone(), step);
                }
                return Ok(cert);
            }
        }

        Err(MacxError::SearchBudget {
            role: "bridge arc between same-endpoint twins",
            weight: self.max_search_weight(),
        })
    }

    /// The two-disjoint-edges, positive-genus bridge: a connector on the
    /// other edge when the complement allows it, else the five-arc path that
    /// hops across the handle.
    fn same_endpoints_two_edges(
        &mut self,
        alpha: &Arc,
        beta: &Arc,
        e: usize,
    ) -> Result<PathCertificate, MacxError> {
        let step = StepKind::SameEndpointsBridge;
        debug_assert_eq!(self.graph.gamma_zero().num_edges(), 2);
        let f = (0..self.graph.num_edges())
            .find(|&g| !self.edge_meets(g, &self.edge_vertices(e)))
            .expect("the support is two disjoint edges");

        let cut = cut_along(self.tri, &[alpha.clone(), beta.clone()])?;
        let [p, q] = self.edge_points(f);
        let copiece = cut.piece_of(p) == cut.piece_of(q);

        for w in self.weight_rounds() {
            if copiece {
                let cands = self.arcs_with_endpoints(f, w);
                if let Some(c) = self.first_avoiding(&cands, &[alpha, beta]) {
                    let mut cert = PathCertificate::single(ComplexKind::Matching, alpha.clone());
                    cert.push(c, step);
                    cert.push(beta.clone(), step);
                    return Ok(cert);
                }
            }

            // The five-arc hop across the handle: helpers beside each twin
            // on the other edge, joined through a middle arc beside both.
            let fc = self.arcs_with_endpoints(f, w);
            let a2s = self.avoiding(&fc, &[alpha]);
            let b2s = self.avoiding(&fc, &[beta]);
            for mid in self.arcs_with_endpoints(e, w) {
                let Some(a2) = a2s
                    .iter()
                    .find(|a2| overlay::disjoint(self.tri, &mid, a2))
                else {
                    continue;
                };
                let Some(b2) = b2s
                    .iter()
                    .find(|b2| overlay::disjoint(self.tri, &mid, b2))
                else {
                    continue;
                };
                let mut cert = PathCertificate::single(ComplexKind::Matching, alpha.clone());
                cert.push(a2.clone(), step);
                cert.push(mid, step);
                cert.push(b2.clone(), step);
                cert.push(beta.clone(), step);
                return Ok(cert);
            }
        }

        Err(MacxError::SearchBudget {
            role: "bridge arc across the handle",
            weight: self.max_search_weight(),
        })
    }

    /// An explicit matching-complex path between any two compatible arcs,
    /// of length at most `6 * (unicorn length) + 6`.
    pub fn connect(&mut self, alpha: &Arc, beta: &Arc) -> Result<PathCertificate, MacxError> {
        self.require_vertex(alpha)?;
        self.require_vertex(beta)?;
        if self.graph.connectivity_verdict(self.tri.genus()) != ConnectivityVerdict::Connected {
            return Err(MacxError::NotConnected);
        }
        let mut cert = PathCertificate::single(ComplexKind::Matching, alpha.clone());
        if alpha == beta {
            return Ok(cert);
        }
        if overlay::completely_disjoint(self.tri, alpha, beta) {
            cert.push(beta.clone(), StepKind::Direct);
            return Ok(cert);
        }

        // A companion of `beta` wearing `alpha`'s endpoints.
        let ends = alpha.endpoints();
        let mut companion = None;
        for w in self.weight_rounds() {
            match find_disjoint_arc(self.tri, slice::from_ref(beta), (ends[0], ends[1]), w)? {
                DisjointArcOutcome::Found(a) => {
                    companion = Some(a);
                    break;
                }
                DisjointArcOutcome::ProvablyAbsent => break,
                DisjointArcOutcome::BudgetExhausted => {}
            }
        }
        let Some(companion) = companion else {
            return Err(MacxError::SearchBudget {
                role: "companion arc beside the target",
                weight: self.max_search_weight(),
            });
        };

        // Interpolate from `alpha` to the companion through arcs that all
        // wear the same endpoints, then bridge each consecutive pair.
        let elements = if *alpha == companion {
            vec![alpha.clone()]
        } else {
            unicorn_arcs(self.tri, alpha, ends[0], &companion, ends[1])?
                .elements()
                .to_vec()
        };
        for pair in elements.windows(2) {
            if pair[0] == pair[1] {
                continue;
            }
            let sub = self.bridge_same_endpoints(&pair[0], &pair[1])?;
            cert.splice(sub);
        }

        // Close the gap from the companion to `beta`.
        let last = cert.arcs.last().expect("certificates are nonempty").clone();
        if last != *beta {
            if overlay::completely_disjoint(self.tri, &last, beta) {
                cert.push(beta.clone(), StepKind::Direct);
            } else if shared_endpoints(&last, beta) == 1 {
                let sub = self.bridge_shared_endpoint(&last, beta)?;
                cert.splice(sub);
            } else {
                let sub = self.bridge_same_endpoints(&last, beta)?;
                cert.splice(sub);
            }
        }
        debug_assert_eq!(self.validate_certificate(&cert), Ok(()));
        Ok(cert)
    }

    /// Check a certificate arc-by-arc: compatibility of every vertex and
    /// adjacency of every consecutive pair in the stated complex.
    pub fn validate_certificate(&self, cert: &PathCertificate) -> Result<(), CertificateError> {
        if cert.arcs.is_empty() {
            return Err(CertificateError::Empty);
        }
        for (index, arc) in cert.arcs.iter().enumerate() {
            if !self.is_vertex(arc) {
                return Err(CertificateError::Incompatible { index });
            }
            if index > 0 && !self.adjacent(cert.kind, &cert.arcs[index - 1], arc) {
                return Err(CertificateError::NotAdjacent { index });
            }
        }
        Ok(())
    }

    /// Whether two marked points fall in different pieces of the surface cut
    /// along two disjoint arcs with the same endpoints.
    pub fn separates(
        &self,
        alpha: &Arc,
        beta: &Arc,
        p: VertexId,
        q: VertexId,
    ) -> Result<bool, MacxError> {
        for point in [p, q] {
            if point.0 >= self.tri.num_marked_points() {
                return Err(MacxError::NoSuchMarkedPoint(point));
            }
        }
        if alpha == beta {
            return Err(MacxError::SameArc);
        }
        if alpha.endpoints() != beta.endpoints() {
            return Err(MacxError::NotSameEndpoints);
        }
        let crossings = overlay::intersection_number(self.tri, alpha, beta);
        if crossings != 0 {
            return Err(MacxError::NotDisjoint { crossings });
        }
        let cut = cut_along(self.tri, &[alpha.clone(), beta.clone()])?;
        let home = cut.piece_of(p).ok_or(MacxError::PointOnArc(p))?;
        let away = cut.piece_of(q).ok_or(MacxError::PointOnArc(q))?;
        Ok(home != away)
    }

    /// All compatible arcs of weight at most the bound, in canonical order.
    pub fn compatible_arcs(&mut self, max_weight: usize) -> Vec<Arc> {
        let graph = self.graph;
        self.pool
            .arcs_up_to(max_weight)
            .into_iter()
            .filter(|a| graph.compatible(a).is_some())
            .collect()
    }

    fn require_vertex(&self, a: &Arc) -> Result<usize, MacxError> {
        self.graph.compatible(a).ok_or(MacxError::NotCompatible)
    }

    fn require_rich_support(&self) -> Result<(), MacxError> {
        let g0 = self.graph.gamma_zero();
        if g0.num_vertices() >= 5 && g0.edge_complement_condition() {
            Ok(())
        } else {
            Err(MacxError::SupportTooSmall)
        }
    }

    /// Graph vertices of edge `g`.
    fn edge_vertices(&self, g: usize) -> Vec<u32> {
        let (u, v) = self.graph.edges()[g];
        vec![u, v]
    }

    /// Marked points of edge `g`, sorted.
    fn edge_points(&self, g: usize) -> [VertexId; 2] {
        let (u, v) = self.graph.edges()[g];
        let (p, q) = (self.graph.embedding(u), self.graph.embedding(v));
        if p <= q {
            [p, q]
        } else {
            [q, p]
        }
    }

    fn edge_meets(&self, g: usize, vertices: &[u32]) -> bool {
        let (u, v) = self.graph.edges()[g];
        vertices.contains(&u) || vertices.contains(&v)
    }

    fn edge_shared_count(&self, g: usize, vertices: &[u32]) -> usize {
        let (u, v) = self.graph.edges()[g];
        vertices.contains(&u) as usize + vertices.contains(&v) as usize
    }

    /// Weight bounds tried in order by the bridge searches, starting at the
    /// configured search weight and escalating past it before giving up.
    fn weight_rounds(&self) -> impl Iterator<Item = usize> {
        let base = self.search_weight;
        (0..=4).map(move |k| base + 2 * k)
    }

    fn max_search_weight(&self) -> usize {
        self.search_weight + 8
    }

    /// All arcs of weight at most `max_weight` wearing the endpoints of
    /// graph edge `g`, in canonical order.
    fn arcs_with_endpoints(&mut self, g: usize, max_weight: usize) -> Vec<Arc> {
        let want = self.edge_points(g);
        self.pool
            .arcs_up_to(max_weight)
            .into_iter()
            .filter(|a| a.endpoints() == want)
            .collect()
    }

    /// Candidates from `cands` disjoint from every arc in `avoid`, capped at
    /// the per-level candidate limit.
    fn avoiding(&self, cands: &[Arc], avoid: &[&Arc]) -> Vec<Arc> {
        cands
            .iter()
            .filter(|c| avoid.iter().all(|a| overlay::disjoint(self.tri, c, a)))
            .take(self.candidate_limit)
            .cloned()
            .collect()
    }

    fn first_avoiding(&self, cands: &[Arc], avoid: &[&Arc]) -> Option<Arc> {
        cands
            .iter()
            .find(|c| avoid.iter().all(|a| overlay::disjoint(self.tri, c, a)))
            .cloned()
    }
}

/// Number of endpoints the two arcs have in common, counted as marked
/// points (0, 1, or 2).
fn shared_endpoints(a: &Arc, b: &Arc) -> usize {
    let [p, q] = a.endpoints();
    let be = b.endpoints();
    if a.endpoints() == be {
        2
    } else {
        be.contains(&p) as usize + be.contains(&q) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SideRef;

    fn sphere(n: u32) -> Triangulation {
        Triangulation::standard(0, n).unwrap()
    }

    fn edge_arc_between(tri: &Triangulation, u: u32, v: u32) -> Arc {
        let (e, _) = tri
            .edges()
            .find(|(_, rec)| rec.endpoints_sorted() == [VertexId(u), VertexId(v)])
            .expect("no edge between the marked points");
        Arc::edge_arc(tri, e)
    }

    fn identity_graph(tri: &Triangulation, edges: &[(u32, u32)], n: u32) -> MarkedGraph {
        MarkedGraph::new(tri, n, edges, (0..n).map(VertexId).collect()).unwrap()
    }

    #[test]
    fn star_graphs_isolate_every_vertex() {
        let tri = sphere(5);
        let star = MarkedGraph::star(&tri, 5).unwrap();
        let mut macx = Macx::new(&tri, &star).unwrap();
        let a = edge_arc_between(&tri, 0, 1);
        assert!(macx.is_vertex(&a));
        assert!(macx.neighbors(&a, 4).is_empty());
    }

    #[test]
    fn complete_graphs_have_neighbors_and_small_balls() {
        let tri = sphere(5);
        let k5 = MarkedGraph::complete(&tri, 5).unwrap();
        let mut macx = Macx::new(&tri, &k5).unwrap();
        let a = edge_arc_between(&tri, 0, 1);
        let n = macx.neighbors(&a, 2);
        assert!(n.contains(&edge_arc_between(&tri, 2, 3)));
        assert!(!n.contains(&a));

        let b0 = macx.ball(ComplexKind::Matching, &a, 0, 2).unwrap();
        assert_eq!(b0.vertices().len(), 1);
        assert_eq!(b0.distance_from_base(&a), Some(0));

        // Weight zero leaves the nine edge arcs; their matching complex is
        // connected, so a deep ball saturates on all of them.
        let ball = macx.ball(ComplexKind::Matching, &a, 5, 0).unwrap();
        assert!(ball.is_saturated());
        assert_eq!(ball.vertices().len(), 9);
        let c = edge_arc_between(&tri, 2, 3);
        let d = edge_arc_between(&tri, 2, 4);
        assert_eq!(ball.distance(&a, &c), Some(1));
        assert_eq!(ball.distance(&c, &d), Some(2));
        assert_eq!(ball.distance_from_base(&c), Some(1));
    }

    #[test]
    fn shared_endpoint_bridge_uses_a_far_edge_when_available() {
        let tri = sphere(5);
        let k5 = MarkedGraph::complete(&tri, 5).unwrap();
        let mut macx = Macx::new(&tri, &k5).unwrap();
        let a = edge_arc_between(&tri, 0, 1);
        let b = edge_arc_between(&tri, 1, 2);
        let cert = macx.bridge_shared_endpoint(&a, &b).unwrap();
        assert_eq!(cert.length(), 2);
        assert_eq!(cert.arcs[1].endpoints(), [VertexId(3), VertexId(4)]);
        assert_eq!(macx.validate_certificate(&cert), Ok(()));
    }

    #[test]
    fn shared_endpoint_bridge_three_step_shape() {
        let tri = sphere(5);
        // Every edge meets {0, 1, 2}, and the helpers beside each arc can
        // avoid each other.
        let graph = identity_graph(&tri, &[(0, 1), (1, 2), (2, 3), (0, 4), (2, 4)], 5);
        assert!(graph.edge_complement_condition());
        let mut macx = Macx::new(&tri, &graph).unwrap();
        let a = edge_arc_between(&tri, 0, 1);
        let b = edge_arc_between(&tri, 1, 2);
        let cert = macx.bridge_shared_endpoint(&a, &b).unwrap();
        assert_eq!(cert.length(), 3);
        assert_eq!(cert.arcs[1].endpoints(), [VertexId(2), VertexId(3)]);
        assert_eq!(cert.arcs[2].endpoints(), [VertexId(0), VertexId(4)]);
        assert_eq!(macx.validate_certificate(&cert), Ok(()));
    }

    #[test]
    fn shared_endpoint_bridge_four_step_shape() {
        let tri = sphere(5);
        // The lone helpers beside each arc meet at marked point 3, forcing
        // the four-step fallback through the edge at marked point 4.
        let graph = identity_graph(&tri, &[(0, 1), (0, 2), (2, 3), (1, 3), (0, 4)], 5);
        assert!(graph.edge_complement_condition());
        let mut macx = Macx::new(&tri, &graph).unwrap();
        let a = edge_arc_between(&tri, 0, 1);
        let b = edge_arc_between(&tri, 0, 2);
        let cert = macx.bridge_shared_endpoint(&a, &b).unwrap();
        assert_eq!(cert.length(), 4);
        assert_eq!(macx.validate_certificate(&cert), Ok(()));

        // Precondition screens.
        assert_eq!(
            macx.bridge_shared_endpoint(&a, &edge_arc_between(&tri, 2, 3))
                .unwrap_err(),
            MacxError::NotOneSharedEndpoint
        );
    }

    #[test]
    fn same_endpoints_bridge_on_a_complete_graph_is_short() {
        let tri = sphere(5);
        let k5 = MarkedGraph::complete(&tri, 5).unwrap();
        let mut macx = Macx::new(&tri, &k5).unwrap();
        let a = edge_arc_between(&tri, 0, 1);
        let b = macx
            .pool
            .find(6, |x| {
                *x != a
                    && x.endpoints() == [VertexId(0), VertexId(1)]
                    && overlay::disjoint(&tri, x, &a)
            })
            .unwrap();
        let cert = macx.bridge_same_endpoints(&a, &b).unwrap();
        // Three leftover points in two pieces: some piece holds a complete-
        // graph edge, so a single connector always suffices.
        assert_eq!(cert.length(), 2);
        assert_eq!(macx.validate_certificate(&cert), Ok(()));
    }

    #[test]
    fn same_endpoints_bridge_recurses_on_a_pentagon() {
        let tri = sphere(5);
        let c5 = MarkedGraph::cycle(&tri, 5).unwrap();
        let mut macx = Macx::new(&tri, &c5).unwrap();
        let a = edge_arc_between(&tri, 0, 1);
        // A twin of `a` that pens marked point 3 alone, so neither piece
        // holds a pentagon edge and the helper cascade must run.
        let b = ArcPool::new(&tri)
            .find(6, |x| {
                *x != a
                    && x.endpoints() == [VertexId(0), VertexId(1)]
                    && overlay::disjoint(&tri, x, &a)
                    && {
                        let cut = cut_along(&tri, &[a.clone(), x.clone()]).unwrap();
                        cut.piece_of(VertexId(2)) == cut.piece_of(VertexId(4))
                            && cut.piece_of(VertexId(2)) != cut.piece_of(VertexId(3))
                    }
            })
            .expect("an arc penning marked point 3");
        let cert = macx.bridge_same_endpoints(&a, &b).unwrap();
        assert!(cert.length() <= 6);
        assert_eq!(cert.length(), 4);
        assert_eq!(macx.validate_certificate(&cert), Ok(()));
    }

    #[test]
    fn two_edge_support_bridges_across_the_handle() {
        let tri = Triangulation::standard(1, 4).unwrap();
        let graph = identity_graph(&tri, &[(0, 1), (2, 3)], 4);
        assert_eq!(
            graph.connectivity_verdict(1),
            ConnectivityVerdict::Connected
        );
        let mut macx = Macx::new(&tri, &graph).unwrap();
        let a = edge_arc_between(&tri, 0, 1);

        let mut separating = None;
        let mut nonseparating = None;
        let mut pool = ArcPool::new(&tri);
        for x in pool.arcs_up_to(5) {
            if x == a
                || x.endpoints() != [VertexId(0), VertexId(1)]
                || !overlay::disjoint(&tri, &x, &a)
            {
                continue;
            }
            match macx.separates(&a, &x, VertexId(2), VertexId(3)) {
                Ok(true) if separating.is_none() => separating = Some(x),
                Ok(false) if nonseparating.is_none() => nonseparating = Some(x),
                _ => {}
            }
            if separating.is_some() && nonseparating.is_some() {
                break;
            }
        }

        let easy = nonseparating.expect("a non-separating twin");
        let cert = macx.bridge_same_endpoints(&a, &easy).unwrap();
        assert_eq!(cert.length(), 2);
        assert_eq!(macx.validate_certificate(&cert), Ok(()));

        let hard = separating.expect("a separating twin");
        let cert = macx.bridge_same_endpoints(&a, &hard).unwrap();
        assert_eq!(cert.length(), 4);
        assert_eq!(macx.validate_certificate(&cert), Ok(()));
    }

    #[test]
    fn connect_produces_valid_certificates() {
        let tri = sphere(5);
        let k5 = MarkedGraph::complete(&tri, 5).unwrap();
        let mut macx = Macx::new(&tri, &k5).unwrap();
        let a = edge_arc_between(&tri, 0, 1);

        let same = macx.connect(&a, &a).unwrap();
        assert_eq!(same.length(), 0);

        let far = edge_arc_between(&tri, 2, 3);
        let direct = macx.connect(&a, &far).unwrap();
        assert_eq!(direct.length(), 1);
        assert_eq!(direct.steps, vec![StepKind::Direct]);

        // A crossing pair: the arc over marked point 2 against the edge
        // below it.
        let over = Arc::from_walk(
            &tri,
            &crate::arc::Walk {
                start_tri: crate::surface::TriId(0),
                start_corner: 1,
                exits: vec![SideRef::new(0, 1)],
                end_corner: 2,
            },
        )
        .unwrap();
        let under = edge_arc_between(&tri, 0, 2);
        assert_eq!(overlay::intersection_number(&tri, &over, &under), 1);
        let cert = macx.connect(&over, &under).unwrap();
        assert_eq!(macx.validate_certificate(&cert), Ok(()));
        assert_eq!(cert.arcs.first(), Some(&over));
        assert_eq!(cert.arcs.last(), Some(&under));
        assert!(cert.length() <= 12, "got {}", cert.length());
    }

    #[test]
    fn connect_respects_the_verdict() {
        let tri = sphere(4);
        let graph = identity_graph(&tri, &[(0, 1), (2, 3)], 4);
        let mut macx = Macx::new(&tri, &graph).unwrap();
        let a = edge_arc_between(&tri, 0, 1);
        let b = edge_arc_between(&tri, 2, 3);
        assert_eq!(macx.connect(&a, &b).unwrap_err(), MacxError::NotConnected);
    }

    #[test]
    fn separation_detects_jordan_fences() {
        let tri = sphere(4);
        let k4 = MarkedGraph::complete(&tri, 4).unwrap();
        let macx = Macx::new(&tri, &k4).unwrap();
        let a = edge_arc_between(&tri, 0, 1);
        let b = ArcPool::new(&tri)
            .find(6, |x| {
                *x != a
                    && x.endpoints() == [VertexId(0), VertexId(1)]
                    && overlay::disjoint(&tri, x, &a)
            })
            .unwrap();
        assert!(macx.separates(&a, &b, VertexId(2), VertexId(3)).unwrap());
        assert_eq!(
            macx.separates(&a, &a, VertexId(2), VertexId(3)).unwrap_err(),
            MacxError::SameArc
        );
        assert_eq!(
            macx.separates(&a, &edge_arc_between(&tri, 2, 3), VertexId(0), VertexId(1))
                .unwrap_err(),
            MacxError::NotSameEndpoints
        );
        assert_eq!(
            macx.separates(&a, &b, VertexId(0), VertexId(2)).unwrap_err(),
            MacxError::PointOnArc(VertexId(0))
        );
    }

    #[test]
    fn certificate_validation_reports_first_failure() {
        let tri = sphere(5);
        let k4 = MarkedGraph::complete(&tri, 4).unwrap();
        let macx = Macx::new(&tri, &k4).unwrap();
        let a = edge_arc_between(&tri, 0, 1);
        let b = edge_arc_between(&tri, 1, 2);
        let c = edge_arc_between(&tri, 0, 4);

        let shared = PathCertificate {
            kind: ComplexKind::Matching,
            arcs: vec![a.clone(), b.clone()],
            steps: vec![StepKind::Direct],
        };
        assert_eq!(
            macx.validate_certificate(&shared),
            Err(CertificateError::NotAdjacent { index: 1 })
        );

        let relaxed = PathCertificate {
            kind: ComplexKind::Arc,
            arcs: vec![a.clone(), b],
            steps: vec![StepKind::Direct],
        };
        assert_eq!(macx.validate_certificate(&relaxed), Ok(()));

        let foreign = PathCertificate {
            kind: ComplexKind::Matching,
            arcs: vec![a, c],
            steps: vec![StepKind::Direct],
        };
        assert_eq!(
            macx.validate_certificate(&foreign),
            Err(CertificateError::Incompatible { index: 1 })
        );
    }
}
