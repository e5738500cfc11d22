//! JSON file formats for graphs, arcs, and path certificates, plus DOT
//! export for graphs and balls.  The formats are hand-editable: graphs are
//! vertex counts with edge lists, arcs are either a triangulation edge or a
//! corner-to-corner walk, and certificates bundle arcs with step labels.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arc::{Arc, ArcError, ArcForm, Walk};
use crate::gamma::{GraphError, MarkedGraph};
use crate::macx::{Ball, ComplexKind, PathCertificate, StepKind};
use crate::surface::{SideRef, Triangulation, VertexId};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error("{0}")]
    BadIndex(String),
    #[error("certificate arcs and steps disagree: {arcs} arcs need {} steps, found {steps}", arcs.saturating_sub(1))]
    StepCountMismatch { arcs: usize, steps: usize },
}

/// A graph file: vertex count, edge list, and an optional embedding into
/// marked points (identity when omitted).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub num_vertices: u32,
    pub edges: Vec<(u32, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Vec<u32>>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph files serialize")
    }

    pub fn to_graph(&self, tri: &Triangulation) -> Result<MarkedGraph, IoError> {
        let embedding: Vec<VertexId> = match &self.embedding {
            Some(points) => points.iter().map(|&p| VertexId(p)).collect(),
            None => (0..self.num_vertices).map(VertexId).collect(),
        };
        Ok(MarkedGraph::new(
            tri,
            self.num_vertices,
            &self.edges,
            embedding,
        )?)
    }

    pub fn from_graph(graph: &MarkedGraph) -> Self {
        let identity = (0..graph.num_vertices()).all(|v| graph.embedding(v) == VertexId(v));
        GraphFile {
            num_vertices: graph.num_vertices(),
            edges: graph.edges().to_vec(),
            embedding: (!identity)
                .then(|| (0..graph.num_vertices()).map(|v| graph.embedding(v).0).collect()),
        }
    }
}

/// One walk step in a serialized arc: the exit side of a triangle.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ExitFile {
    pub tri: u32,
    pub side: u8,
}

/// An arc file: a triangulation edge or a corner-to-corner walk.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ArcFile {
    Edge { edge: u32 },
    Path {
        start_tri: u32,
        start_corner: u8,
        exits: Vec<ExitFile>,
        end_corner: u8,
    },
}

impl ArcFile {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("arc files serialize")
    }

    /// Validate against the surface and canonicalize.
    pub fn to_arc(&self, tri: &Triangulation) -> Result<Arc, IoError> {
        match self {
            ArcFile::Edge { edge } => {
                if *edge >= tri.num_edges() {
                    return Err(IoError::BadIndex(format!(
                        "edge {edge} out of range (surface has {} edges)",
                        tri.num_edges()
                    )));
                }
                Ok(Arc::edge_arc(tri, crate::surface::EdgeId(*edge)))
            }
            ArcFile::Path {
                start_tri,
                start_corner,
                exits,
                end_corner,
            } => {
                let check_tri = |t: u32| -> Result<(), IoError> {
                    if t >= tri.num_triangles() {
                        return Err(IoError::BadIndex(format!(
                            "triangle {t} out of range (surface has {} triangles)",
                            tri.num_triangles()
                        )));
                    }
                    Ok(())
                };
                check_tri(*start_tri)?;
                let mut walk_exits = Vec::with_capacity(exits.len());
                for exit in exits {
                    check_tri(exit.tri)?;
                    if exit.side >= 3 {
                        return Err(IoError::BadIndex(format!(
                            "side {} out of range (triangles have 3 sides)",
                            exit.side
                        )));
                    }
                    walk_exits.push(SideRef::new(exit.tri, exit.side));
                }
                let walk = Walk {
                    start_tri: crate::surface::TriId(*start_tri),
                    start_corner: *start_corner,
                    exits: walk_exits,
                    end_corner: *end_corner,
                };
                Ok(Arc::from_walk(tri, &walk)?)
            }
        }
    }

    pub fn from_arc(tri: &Triangulation, arc: &Arc) -> Self {
        match arc.form() {
            ArcForm::Edge(e) => ArcFile::Edge { edge: e.0 },
            ArcForm::Path(_) => {
                let walk = arc.to_walk(tri);
                ArcFile::Path {
                    start_tri: walk.start_tri.0,
                    start_corner: walk.start_corner,
                    exits: walk
                        .exits
                        .iter()
                        .map(|s| ExitFile {
                            tri: s.tri.0,
                            side: s.side,
                        })
                        .collect(),
                    end_corner: walk.end_corner,
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComplexKindFile {
    Matching,
    Arc,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepFile {
    Direct,
    SharedEndpointBridge,
    SameEndpointsBridge,
}

/// A path certificate file: the complex it lives in, its arcs, and one
/// provenance label per step.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateFile {
    pub complex: ComplexKindFile,
    pub arcs: Vec<ArcFile>,
    pub steps: Vec<StepFile>,
}

impl CertificateFile {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate files serialize")
    }

    pub fn to_certificate(&self, tri: &Triangulation) -> Result<PathCertificate, IoError> {
        if self.arcs.is_empty() || self.steps.len() + 1 != self.arcs.len() {
            return Err(IoError::StepCountMismatch {
                arcs: self.arcs.len(),
                steps: self.steps.len(),
            });
        }
        let arcs = self
            .arcs
            .iter()
            .map(|a| a.to_arc(tri))
            .collect::<Result<Vec<_>, _>>()?;
        let steps = self
            .steps
            .iter()
            .map(|s| match s {
                StepFile::Direct => StepKind::Direct,
                StepFile::SharedEndpointBridge => StepKind::SharedEndpointBridge,
                StepFile::SameEndpointsBridge => StepKind::SameEndpointsBridge,
            })
            .collect();
        let kind = match self.complex {
            ComplexKindFile::Matching => ComplexKind::Matching,
            ComplexKindFile::Arc => ComplexKind::Arc,
        };
        Ok(PathCertificate { kind, arcs, steps })
    }

    pub fn from_certificate(tri: &Triangulation, cert: &PathCertificate) -> Self {
        CertificateFile {
            complex: match cert.kind {
                ComplexKind::Matching => ComplexKindFile::Matching,
                ComplexKind::Arc => ComplexKindFile::Arc,
            },
            arcs: cert
                .arcs
                .iter()
                .map(|a| ArcFile::from_arc(tri, a))
                .collect(),
            steps: cert
                .steps
                .iter()
                .map(|s| match s {
                    StepKind::Direct => StepFile::Direct,
                    StepKind::SharedEndpointBridge => StepFile::SharedEndpointBridge,
                    StepKind::SameEndpointsBridge => StepFile::SameEndpointsBridge,
                })
                .collect(),
        }
    }
}

/// DOT rendering of a graph, with embedded marked points as labels.
pub fn graph_dot(graph: &MarkedGraph) -> String {
    let mut out = String::from("graph {\n");
    for v in 0..graph.num_vertices() {
        out.push_str(&format!(
            "  v{v} [label=\"{v} @ p{}\"];\n",
            graph.embedding(v).0
        ));
    }
    for &(u, v) in graph.edges() {
        out.push_str(&format!("  v{u} -- v{v};\n"));
    }
    out.push_str("}\n");
    out
}

/// DOT rendering of a ball: vertices labeled by endpoints, weight, and
/// distance from the base.
pub fn ball_dot(ball: &Ball) -> String {
    let mut out = String::from("graph {\n");
    for (i, arc) in ball.vertices().iter().enumerate() {
        let [p, q] = arc.endpoints();
        let d = ball.distance_from_base(arc).expect("members have distances");
        let base = if arc == ball.base() { ", base" } else { "" };
        out.push_str(&format!(
            "  a{i} [label=\"({}-{}) w{} d{d}{base}\"];\n",
            p.0,
            q.0,
            arc.weight()
        ));
    }
    for &(i, j) in ball.adjacency() {
        out.push_str(&format!("  a{i} -- a{j};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macx::Macx;
    use crate::surface::EdgeId;

    fn sphere(n: u32) -> Triangulation {
        Triangulation::standard(0, n).unwrap()
    }

    #[test]
    fn graph_files_round_trip_and_validate() {
        let tri = sphere(5);
        let file = GraphFile::parse(r#"{"num_vertices": 5, "edges": [[0,1],[2,3]]}"#).unwrap();
        let graph = file.to_graph(&tri).unwrap();
        assert_eq!(graph.num_edges(), 2);
        let back = GraphFile::from_graph(&graph);
        assert_eq!(back.num_vertices, 5);
        assert_eq!(back.edges, vec![(0, 1), (2, 3)]);
        assert!(back.embedding.is_none());

        let reparsed = GraphFile::parse(&back.to_json()).unwrap();
        assert_eq!(reparsed.edges, back.edges);

        // Too many vertices for the surface.
        let big = GraphFile {
            num_vertices: 9,
            edges: vec![],
            embedding: None,
        };
        assert!(big.to_graph(&tri).is_err());
    }

    #[test]
    fn arc_files_reject_bad_indices_and_canonicalize() {
        let tri = sphere(5);
        let edge = ArcFile::Edge { edge: 2 };
        let arc = edge.to_arc(&tri).unwrap();
        assert_eq!(arc, Arc::edge_arc(&tri, EdgeId(2)));

        assert!(matches!(
            ArcFile::Edge { edge: 99 }.to_arc(&tri),
            Err(IoError::BadIndex(_))
        ));

        let path = ArcFile::Path {
            start_tri: 0,
            start_corner: 1,
            exits: vec![ExitFile { tri: 0, side: 1 }],
            end_corner: 2,
        };
        let arc = path.to_arc(&tri).unwrap();
        assert_eq!(arc.weight(), 1);
        let back = ArcFile::from_arc(&tri, &arc);
        assert_eq!(back.to_arc(&tri).unwrap(), arc);

        assert!(matches!(
            ArcFile::Path {
                start_tri: 0,
                start_corner: 0,
                exits: vec![ExitFile { tri: 0, side: 7 }],
                end_corner: 1,
            }
            .to_arc(&tri),
            Err(IoError::BadIndex(_))
        ));
    }

    #[test]
    fn certificates_round_trip_through_files() {
        let tri = sphere(5);
        let k5 = MarkedGraph::complete(&tri, 5).unwrap();
        let mut macx = Macx::new(&tri, &k5).unwrap();
        let a = {
            let (e, _) = tri
                .edges()
                .find(|(_, rec)| rec.endpoints_sorted() == [VertexId(0), VertexId(1)])
                .unwrap();
            Arc::edge_arc(&tri, e)
        };
        let b = {
            let (e, _) = tri
                .edges()
                .find(|(_, rec)| rec.endpoints_sorted() == [VertexId(1), VertexId(2)])
                .unwrap();
            Arc::edge_arc(&tri, e)
        };
        let cert = macx.bridge_shared_endpoint(&a, &b).unwrap();
        let file = CertificateFile::from_certificate(&tri, &cert);
        let text = file.to_json();
        let reparsed = CertificateFile::parse(&text).unwrap();
        let rebuilt = reparsed.to_certificate(&tri).unwrap();
        assert_eq!(rebuilt, cert);
        assert_eq!(macx.validate_certificate(&rebuilt), Ok(()));

        // Mismatched steps are refused.
        let broken = CertificateFile {
            steps: vec![],
            ..file
        };
        assert!(matches!(
            broken.to_certificate(&tri),
            Err(IoError::StepCountMismatch { .. })
        ));
    }

    #[test]
    fn dot_exports_mention_every_vertex() {
        let tri = sphere(5);
        let k5 = MarkedGraph::complete(&tri, 5).unwrap();
        let dot = graph_dot(&k5);
        assert!(dot.contains("v0 -- v1") || dot.contains("v0--v1"));

        let mut macx = Macx::new(&tri, &k5).unwrap();
        let base = Arc::edge_arc(&tri, EdgeId(2));
        let ball = macx.ball(ComplexKind::Matching, &base, 1, 0).unwrap();
        let dot = ball_dot(&ball);
        assert!(dot.contains("base"));
        assert_eq!(dot.matches(" a").count() >= ball.vertices().len(), true);
    }
}
