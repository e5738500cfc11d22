//! Parsing of command-line inputs: surfaces, graphs (built-in names or JSON
//! files), and arcs (shorthand specs or JSON files).

use std::fmt;
use std::fs;
use std::path::Path;

use arcx_core::arc::Arc;
use arcx_core::gamma::MarkedGraph;
use arcx_core::io::{ArcFile, GraphFile};
use arcx_core::surface::{EdgeId, Triangulation, VertexId};
use arcx_core::ArcPool;

/// How far `join:P-Q` searches when no triangulation edge joins the points.
const JOIN_SEARCH_WEIGHT: usize = 6;

/// Failures split by exit code: bad inputs exit 2, failed verifications
/// exit 1.
#[derive(Debug)]
pub enum RunError {
    Input(String),
    Verification(String),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Input(msg) => write!(f, "input error: {msg}"),
            RunError::Verification(msg) => write!(f, "verification failed: {msg}"),
        }
    }
}

pub fn input_err(msg: impl Into<String>) -> RunError {
    RunError::Input(msg.into())
}

/// Build the standard surface, defaulting the puncture count to the graph's
/// vertex count when a graph is in play.
pub fn surface(genus: u32, punctures: u32) -> Result<Triangulation, RunError> {
    Triangulation::standard(genus, punctures)
        .map_err(|e| input_err(format!("cannot build the surface: {e}")))
}

/// Resolve a graph argument: a built-in name (`k6`, `c5`, `p5`, `star5`,
/// `two-edges`, `triangle-plus-point`) or a path to a graph JSON file.
pub fn graph_file(spec: &str) -> Result<GraphFile, RunError> {
    if let Some(file) = builtin_graph(spec) {
        return Ok(file);
    }
    if Path::new(spec).exists() {
        let text = fs::read_to_string(spec)
            .map_err(|e| input_err(format!("cannot read {spec}: {e}")))?;
        return GraphFile::parse(&text)
            .map_err(|e| input_err(format!("cannot parse {spec}: {e}")));
    }
    Err(input_err(format!(
        "unknown graph '{spec}': not a built-in name and no such file"
    )))
}

fn builtin_graph(spec: &str) -> Option<GraphFile> {
    let sized = |prefix: &str| -> Option<u32> {
        spec.strip_prefix(prefix)?.parse().ok()
    };
    let graph = |n: u32, edges: Vec<(u32, u32)>| GraphFile {
        num_vertices: n,
        edges,
        embedding: None,
    };
    if let Some(n) = sized("k") {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        return Some(graph(n, edges));
    }
    if let Some(n) = sized("c") {
        if n < 3 {
            return None;
        }
        let edges = (0..n).map(|u| (u.min((u + 1) % n), u.max((u + 1) % n))).collect();
        return Some(graph(n, edges));
    }
    if let Some(n) = sized("p") {
        let edges = (0..n.saturating_sub(1)).map(|u| (u, u + 1)).collect();
        return Some(graph(n, edges));
    }
    if let Some(n) = sized("star") {
        let edges = (1..n).map(|v| (0, v)).collect();
        return Some(graph(n, edges));
    }
    match spec {
        "two-edges" => Some(graph(4, vec![(0, 1), (2, 3)])),
        "triangle-plus-point" => Some(graph(4, vec![(0, 1), (0, 2), (1, 2)])),
        _ => None,
    }
}

/// Instantiate a graph on a surface, enforcing that the surface has enough
/// punctures.
pub fn graph_on(tri: &Triangulation, file: &GraphFile) -> Result<MarkedGraph, RunError> {
    if file.num_vertices > tri.num_marked_points() {
        return Err(input_err(format!(
            "the surface needs at least as many punctures as the graph has vertices \
             ({} punctures < {} vertices)",
            tri.num_marked_points(),
            file.num_vertices
        )));
    }
    file.to_graph(tri)
        .map_err(|e| input_err(format!("graph does not fit the surface: {e}")))
}

/// Resolve an arc argument: `edge:K` (triangulation edge by index),
/// `join:P-Q` (the lightest canonical arc between marked points P and Q,
/// preferring a triangulation edge), or a path to an arc JSON file.
pub fn arc(tri: &Triangulation, spec: &str) -> Result<Arc, RunError> {
    if let Some(k) = spec.strip_prefix("edge:") {
        let k: u32 = k
            .parse()
            .map_err(|_| input_err(format!("bad edge index in '{spec}'")))?;
        if k >= tri.num_edges() {
            return Err(input_err(format!(
                "edge {k} out of range (surface has {} edges)",
                tri.num_edges()
            )));
        }
        return Ok(Arc::edge_arc(tri, EdgeId(k)));
    }
    if let Some(pq) = spec.strip_prefix("join:") {
        let (p, q) = pq
            .split_once('-')
            .and_then(|(p, q)| Some((p.parse::<u32>().ok()?, q.parse::<u32>().ok()?)))
            .ok_or_else(|| input_err(format!("bad point pair in '{spec}', expected join:P-Q")))?;
        if p.max(q) >= tri.num_marked_points() {
            return Err(input_err(format!(
                "point {} out of range (surface has {} marked points)",
                p.max(q),
                tri.num_marked_points()
            )));
        }
        let want = [VertexId(p.min(q)), VertexId(p.max(q))];
        if let Some((e, _)) = tri.edges().find(|(_, rec)| rec.endpoints_sorted() == want) {
            return Ok(Arc::edge_arc(tri, e));
        }
        // No triangulation edge joins them: take the first arc that does in
        // the canonical enumeration (lightest first, so deterministic).
        return ArcPool::new(tri)
            .find(JOIN_SEARCH_WEIGHT, |a| {
                let mut got = a.endpoints();
                got.sort();
                got == want
            })
            .ok_or_else(|| {
                input_err(format!(
                    "no arc of weight <= {JOIN_SEARCH_WEIGHT} joins points {p} and {q}"
                ))
            });
    }
    let text =
        fs::read_to_string(spec).map_err(|e| input_err(format!("cannot read {spec}: {e}")))?;
    let file =
        ArcFile::parse(&text).map_err(|e| input_err(format!("cannot parse {spec}: {e}")))?;
    file.to_arc(tri)
        .map_err(|e| input_err(format!("bad arc in {spec}: {e}")))
}

/// A weight bound for enumeration or search; the command line requires at
/// least 1.
pub fn weight_bound(w: usize) -> Result<usize, RunError> {
    if w < 1 {
        return Err(input_err("the weight bound must be at least 1"));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_names_cover_the_fixture_graphs() {
        for (name, vertices, edges) in [
            ("k6", 6, 15),
            ("c8", 8, 8),
            ("p5", 5, 4),
            ("star5", 5, 4),
            ("two-edges", 4, 2),
            ("triangle-plus-point", 4, 3),
        ] {
            let file = builtin_graph(name).unwrap_or_else(|| panic!("{name} should resolve"));
            assert_eq!(file.num_vertices, vertices, "{name}");
            assert_eq!(file.edges.len(), edges, "{name}");
        }
        assert!(builtin_graph("c2").is_none());
        assert!(builtin_graph("q7").is_none());
    }

    #[test]
    fn arc_specs_parse_edges_and_joins() {
        let tri = surface(0, 5).unwrap();
        let a = arc(&tri, "edge:3").unwrap();
        assert_eq!(a.weight(), 0);
        let b = arc(&tri, "join:2-4").unwrap();
        assert_eq!(b.endpoints(), [VertexId(2), VertexId(4)]);
        // No triangulation edge joins 1 and 3 on the fan; the fallback
        // search still produces the lightest such arc.
        let c = arc(&tri, "join:1-3").unwrap();
        assert_eq!(c.endpoints(), [VertexId(1), VertexId(3)]);
        assert!(c.weight() > 0);
        // Same endpoints asks for a loop, and the lightest loop exists too.
        let d = arc(&tri, "join:0-0").unwrap();
        assert_eq!(d.endpoints(), [VertexId(0), VertexId(0)]);
        assert!(arc(&tri, "edge:99").is_err());
        assert!(arc(&tri, "join:7-0").is_err());
        assert!(arc(&tri, "no-such-file.json").is_err());
    }

    #[test]
    fn puncture_shortfall_is_an_input_error() {
        let tri = surface(0, 4).unwrap();
        let file = builtin_graph("k6").unwrap();
        assert!(matches!(graph_on(&tri, &file), Err(RunError::Input(_))));
    }
}
