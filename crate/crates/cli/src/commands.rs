//! Implementations of the subcommands.  Every command produces an
//! `Outcome`: the full text to emit (built deterministically, in instance
//! order) and whether all checks passed.

use std::cell::RefCell;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use serde_json::json;

use arcx_core::arc::Arc;
use arcx_core::gamma::{ConnectivityVerdict, HyperbolicityVerdict, UnknownReason};
use arcx_core::disjoint;
use arcx_core::hyp::{estimate_delta, guessing_geodesics_check, qi_sample, Hyp};
use arcx_core::io::{ball_dot, graph_dot, ArcFile, CertificateFile};
use arcx_core::macx::{Ball, ComplexKind, Macx};
use arcx_core::sample::{seeded_pairs, seeded_triples};
use arcx_core::surface::VertexId;
use arcx_core::unicorn::unicorn_arcs;

use crate::inputs::{input_err, RunError};

/// What a command produced: its full output text and whether every check in
/// it passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn pass(text: String) -> Outcome {
        Outcome { text, passed: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Complex {
    Matching,
    Arc,
}

impl Complex {
    pub fn kind(self) -> ComplexKind {
        match self {
            Complex::Matching => ComplexKind::Matching,
            Complex::Arc => ComplexKind::Arc,
        }
    }
}

fn no_dot(format: Format) -> Result<(), RunError> {
    if format == Format::Dot {
        return Err(input_err("this command has no DOT output"));
    }
    Ok(())
}

fn arc_label(a: &Arc) -> String {
    let [p, q] = a.endpoints();
    format!("({}-{})w{}", p.0, q.0, a.weight())
}

fn connectivity_label(v: ConnectivityVerdict) -> &'static str {
    match v {
        ConnectivityVerdict::Connected => "connected",
        ConnectivityVerdict::Disconnected => "disconnected",
    }
}

fn hyperbolicity_label(v: HyperbolicityVerdict) -> &'static str {
    match v {
        HyperbolicityVerdict::Hyperbolic => "hyperbolic",
        HyperbolicityVerdict::NotHyperbolic => "not hyperbolic",
        HyperbolicityVerdict::Unknown(UnknownReason::ComplexDisconnected) => {
            "unknown (complex disconnected)"
        }
        HyperbolicityVerdict::Unknown(UnknownReason::OpenCase) => "unknown (open case)",
    }
}

pub fn surface_info(genus: u32, punctures: u32, format: Format) -> Result<Outcome, RunError> {
    no_dot(format)?;
    let tri = crate::inputs::surface(genus, punctures)?;
    let text = match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({
                "genus": tri.genus(),
                "marked_points": tri.num_marked_points(),
                "triangles": tri.num_triangles(),
                "edges": tri.num_edges(),
                "euler_characteristic": tri.euler_characteristic(),
            }))
            .expect("reports serialize")
        ),
        _ => format!(
            "surface: genus {}, {} marked points\ntriangulation: {} triangles, {} edges\n\
             euler characteristic: {}\n",
            tri.genus(),
            tri.num_marked_points(),
            tri.num_triangles(),
            tri.num_edges(),
            tri.euler_characteristic(),
        ),
    };
    Ok(Outcome::pass(text))
}

pub fn graph_check(
    genus: u32,
    punctures: Option<u32>,
    graph_spec: &str,
    format: Format,
) -> Result<Outcome, RunError> {
    let file = crate::inputs::graph_file(graph_spec)?;
    let tri = crate::inputs::surface(genus, punctures.unwrap_or(file.num_vertices))?;
    let graph = crate::inputs::graph_on(&tri, &file)?;
    let support = graph.gamma_zero();
    let conn = graph.connectivity_verdict(tri.genus());
    let hyp = graph.hyperbolicity_verdict(tri.genus());
    let text = match format {
        Format::Dot => graph_dot(&graph),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({
                "vertices": graph.num_vertices(),
                "edges": graph.num_edges(),
                "supported_vertices": support.num_vertices(),
                "connected_support": support.is_connected(),
                "tree": graph.is_tree(),
                "polygon": graph.is_polygon(),
                "edge_complement_condition": graph.edge_complement_condition(),
                "matching_complex": connectivity_label(conn),
                "hyperbolicity": hyperbolicity_label(hyp),
            }))
            .expect("reports serialize")
        ),
        Format::Text => format!(
            "graph: {} vertices, {} edges ({} supported vertices)\n\
             support connected: {}  tree: {}  polygon: {}\n\
             edge-complement condition: {}\n\
             matching complex: {}\nhyperbolicity: {}\n",
            graph.num_vertices(),
            graph.num_edges(),
            support.num_vertices(),
            support.is_connected(),
            graph.is_tree(),
            graph.is_polygon(),
            graph.edge_complement_condition(),
            connectivity_label(conn),
            hyperbolicity_label(hyp),
        ),
    };
    Ok(Outcome::pass(text))
}

#[allow(clippy::too_many_arguments)]
pub fn ball(
    genus: u32,
    punctures: Option<u32>,
    graph_spec: &str,
    base_spec: &str,
    radius: u32,
    weight: usize,
    complex: Complex,
    format: Format,
) -> Result<Outcome, RunError> {
    let weight = crate::inputs::weight_bound(weight)?;
    let file = crate::inputs::graph_file(graph_spec)?;
    let tri = crate::inputs::surface(genus, punctures.unwrap_or(file.num_vertices))?;
    let graph = crate::inputs::graph_on(&tri, &file)?;
    let base = crate::inputs::arc(&tri, base_spec)?;
    let mut macx = Macx::new(&tri, &graph).map_err(|e| input_err(e.to_string()))?;
    let ball = macx
        .ball(complex.kind(), &base, radius, weight)
        .map_err(|e| input_err(e.to_string()))?;
    let text = match format {
        Format::Dot => ball_dot(&ball),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({
                "complex": match complex { Complex::Matching => "matching", Complex::Arc => "arc" },
                "base": arc_label(ball.base()),
                "radius": ball.radius(),
                "weight_bound": ball.weight_bound(),
                "vertices": ball.vertices().len(),
                "edges": ball.adjacency().len(),
                "by_distance": shell_sizes(&ball),
                "saturated": ball.is_saturated(),
            }))
            .expect("reports serialize")
        ),
        Format::Text => {
            let mut s = format!(
                "ball around {} (radius {}, weight bound {}, {} complex)\n\
                 {} vertices, {} adjacencies, saturated: {}\n",
                arc_label(ball.base()),
                ball.radius(),
                ball.weight_bound(),
                match complex {
                    Complex::Matching => "matching",
                    Complex::Arc => "arc",
                },
                ball.vertices().len(),
                ball.adjacency().len(),
                ball.is_saturated(),
            );
            for (d, count) in shell_sizes(&ball).into_iter().enumerate() {
                let _ = writeln!(s, "  distance {d}: {count} arcs");
            }
            s
        }
    };
    Ok(Outcome::pass(text))
}

fn shell_sizes(ball: &Ball) -> Vec<usize> {
    let mut sizes = vec![0usize; ball.radius() as usize + 1];
    for arc in ball.vertices() {
        let d = ball.distance_from_base(arc).expect("members have distances") as usize;
        sizes[d] += 1;
    }
    while sizes.last() == Some(&0) {
        sizes.pop();
    }
    sizes
}

#[allow(clippy::too_many_arguments)]
pub fn connect(
    genus: u32,
    punctures: Option<u32>,
    graph_spec: &str,
    from_spec: &str,
    to_spec: &str,
    out: Option<PathBuf>,
    format: Format,
) -> Result<Outcome, RunError> {
    no_dot(format)?;
    let file = crate::inputs::graph_file(graph_spec)?;
    let tri = crate::inputs::surface(genus, punctures.unwrap_or(file.num_vertices))?;
    let graph = crate::inputs::graph_on(&tri, &file)?;
    let a = crate::inputs::arc(&tri, from_spec)?;
    let b = crate::inputs::arc(&tri, to_spec)?;
    let mut macx = Macx::new(&tri, &graph).map_err(|e| input_err(e.to_string()))?;
    let cert = macx
        .connect(&a, &b)
        .map_err(|e| RunError::Verification(format!("no path found: {e}")))?;
    if let Err(e) = macx.validate_certificate(&cert) {
        return Err(RunError::Verification(format!(
            "constructed certificate failed validation: {e}"
        )));
    }
    let cert_json = CertificateFile::from_certificate(&tri, &cert).to_json() + "\n";
    if let Some(path) = &out {
        fs::write(path, &cert_json)
            .map_err(|e| input_err(format!("cannot write {}: {e}", path.display())))?;
    }
    let text = match format {
        Format::Json if out.is_none() => cert_json,
        _ => {
            let mut s = format!(
                "path of length {} in the matching complex:\n",
                cert.length()
            );
            let _ = writeln!(
                s,
                "  {}",
                cert.arcs
                    .iter()
                    .map(arc_label)
                    .collect::<Vec<_>>()
                    .join(" - ")
            );
            let _ = writeln!(
                s,
                "  steps: {}",
                cert.steps
                    .iter()
                    .map(|k| k.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            if let Some(path) = &out {
                let _ = writeln!(s, "certificate written to {}", path.display());
            }
            s
        }
    };
    Ok(Outcome::pass(text))
}

pub fn unicorn(
    genus: u32,
    punctures: u32,
    from_spec: &str,
    basepoint_from: u32,
    to_spec: &str,
    basepoint_to: u32,
    format: Format,
) -> Result<Outcome, RunError> {
    no_dot(format)?;
    let tri = crate::inputs::surface(genus, punctures)?;
    let a = crate::inputs::arc(&tri, from_spec)?;
    let b = crate::inputs::arc(&tri, to_spec)?;
    let seq = unicorn_arcs(&tri, &a, VertexId(basepoint_from), &b, VertexId(basepoint_to))
        .map_err(|e| input_err(e.to_string()))?;
    let verified = seq.verify(&tri);
    let text = match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({
                "length": seq.len(),
                "elements": seq
                    .elements()
                    .iter()
                    .map(|e| serde_json::to_value(ArcFile::from_arc(&tri, e)).unwrap())
                    .collect::<Vec<_>>(),
                "consecutive_disjoint": verified,
            }))
            .expect("reports serialize")
        ),
        _ => {
            let mut s = format!(
                "unicorn sequence from {} (basepoint {}) to {} (basepoint {}): {} elements\n",
                arc_label(&a),
                basepoint_from,
                arc_label(&b),
                basepoint_to,
                seq.len(),
            );
            for (i, e) in seq.elements().iter().enumerate() {
                let _ = writeln!(s, "  {i}: {}", arc_label(e));
            }
            let _ = writeln!(s, "consecutive elements disjoint: {verified}");
            s
        }
    };
    Ok(Outcome {
        text,
        passed: verified,
    })
}

pub fn validate(
    genus: u32,
    punctures: Option<u32>,
    graph_spec: &str,
    certificate: &PathBuf,
) -> Result<Outcome, RunError> {
    let file = crate::inputs::graph_file(graph_spec)?;
    let tri = crate::inputs::surface(genus, punctures.unwrap_or(file.num_vertices))?;
    let graph = crate::inputs::graph_on(&tri, &file)?;
    let text = fs::read_to_string(certificate)
        .map_err(|e| input_err(format!("cannot read {}: {e}", certificate.display())))?;
    let parsed = CertificateFile::parse(&text)
        .map_err(|e| input_err(format!("cannot parse {}: {e}", certificate.display())))?;
    let cert = parsed
        .to_certificate(&tri)
        .map_err(|e| input_err(format!("bad certificate in {}: {e}", certificate.display())))?;
    let macx = Macx::new(&tri, &graph).map_err(|e| input_err(e.to_string()))?;
    match macx.validate_certificate(&cert) {
        Ok(()) => Ok(Outcome::pass(format!(
            "certificate valid: {} steps from {} to {}\n",
            cert.length(),
            arc_label(cert.arcs.first().expect("validated certificates are nonempty")),
            arc_label(cert.arcs.last().expect("validated certificates are nonempty")),
        ))),
        Err(e) => Err(RunError::Verification(e.to_string())),
    }
}

/// Shared harness for the two bridge verifications: sample qualifying pairs,
/// run the construction, validate and bound every certificate.
#[allow(clippy::too_many_arguments)]
fn verify_bridges(
    genus: u32,
    punctures: Option<u32>,
    graph_spec: &str,
    samples: usize,
    seed: u64,
    weight: usize,
    shared_endpoints: usize,
    max_length: usize,
) -> Result<Outcome, RunError> {
    let weight = crate::inputs::weight_bound(weight)?;
    let file = crate::inputs::graph_file(graph_spec)?;
    let tri = crate::inputs::surface(genus, punctures.unwrap_or(file.num_vertices))?;
    let graph = crate::inputs::graph_on(&tri, &file)?;
    let mut macx = Macx::new(&tri, &graph).map_err(|e| input_err(e.to_string()))?;

    let pairs = seeded_pairs(&tri, weight, samples, seed, |a, b| {
        a != b
            && graph.compatible(a).is_some()
            && graph.compatible(b).is_some()
            && shared_count(a, b) == shared_endpoints
            && disjoint(&tri, a, b)
    });
    if pairs.is_empty() {
        return Err(input_err(format!(
            "no qualifying pairs exist at weight <= {weight}"
        )));
    }

    let mut s = String::new();
    let mut ok_count = 0usize;
    for (i, (a, b)) in pairs.iter().enumerate() {
        let result = match shared_endpoints {
            1 => macx.bridge_shared_endpoint(a, b),
            _ => macx.bridge_same_endpoints(a, b),
        };
        match result {
            Ok(cert) => {
                let valid = macx.validate_certificate(&cert).is_ok();
                let bounded = cert.length() <= max_length;
                let ok = valid && bounded;
                ok_count += ok as usize;
                let _ = writeln!(
                    s,
                    "pair {i}: {} ~ {} -> length {} {}",
                    arc_label(a),
                    arc_label(b),
                    cert.length(),
                    if ok {
                        "ok"
                    } else if !valid {
                        "FAIL (invalid certificate)"
                    } else {
                        "FAIL (too long)"
                    },
                );
            }
            Err(e) => {
                let _ = writeln!(
                    s,
                    "pair {i}: {} ~ {} -> FAIL ({e})",
                    arc_label(a),
                    arc_label(b),
                );
            }
        }
    }
    let _ = writeln!(
        s,
        "{ok_count}/{} certificates of length <= {max_length}",
        pairs.len()
    );
    Ok(Outcome {
        text: s,
        passed: ok_count == pairs.len(),
    })
}

fn shared_count(a: &Arc, b: &Arc) -> usize {
    let [p, q] = a.endpoints();
    b.endpoints().iter().filter(|&&v| v == p || v == q).count()
}

#[allow(clippy::too_many_arguments)]
pub fn verify_bridge_shared(
    genus: u32,
    punctures: Option<u32>,
    graph_spec: &str,
    samples: usize,
    seed: u64,
    weight: usize,
) -> Result<Outcome, RunError> {
    verify_bridges(genus, punctures, graph_spec, samples, seed, weight, 1, 4)
}

#[allow(clippy::too_many_arguments)]
pub fn verify_bridge_same(
    genus: u32,
    punctures: Option<u32>,
    graph_spec: &str,
    samples: usize,
    seed: u64,
    weight: usize,
) -> Result<Outcome, RunError> {
    verify_bridges(genus, punctures, graph_spec, samples, seed, weight, 2, 6)
}

#[allow(clippy::too_many_arguments)]
pub fn verify_thin(
    genus: u32,
    punctures: Option<u32>,
    graph_spec: &str,
    samples: usize,
    seed: u64,
    weight: usize,
    window: usize,
) -> Result<Outcome, RunError> {
    let weight = crate::inputs::weight_bound(weight)?;
    let window = crate::inputs::weight_bound(window)?;
    let file = crate::inputs::graph_file(graph_spec)?;
    let tri = crate::inputs::surface(genus, punctures.unwrap_or(file.num_vertices))?;
    let graph = crate::inputs::graph_on(&tri, &file)?;
    let mut hyp = Hyp::new(&tri, &graph).map_err(|e| input_err(e.to_string()))?;

    let triples = seeded_triples(
        &tri,
        weight,
        samples,
        seed,
        |a| graph.compatible(a).is_some(),
        |_, _, _| true,
    );
    let mut s = String::new();
    let mut ok_count = 0usize;
    for (i, (a, b, c)) in triples.iter().enumerate() {
        match hyp.verify_thinness(a, b, c, window) {
            Ok(report) => {
                ok_count += report.holds as usize;
                let _ = writeln!(
                    s,
                    "triple {i}: {} {} {} -> max distance {} {}",
                    arc_label(a),
                    arc_label(b),
                    arc_label(c),
                    report
                        .max_distance
                        .map_or("-".to_string(), |d| d.to_string()),
                    if report.holds { "ok" } else { "FAIL" },
                );
            }
            Err(e) => {
                let _ = writeln!(s, "triple {i}: FAIL ({e})");
            }
        }
    }
    let _ = writeln!(s, "{ok_count}/{} triples 2-thin", triples.len());
    Ok(Outcome {
        text: s,
        passed: ok_count == triples.len() && !triples.is_empty(),
    })
}

#[allow(clippy::too_many_arguments)]
pub fn verify_diam(
    genus: u32,
    punctures: Option<u32>,
    graph_spec: &str,
    samples: usize,
    seed: u64,
    weight: usize,
    window: usize,
) -> Result<Outcome, RunError> {
    let weight = crate::inputs::weight_bound(weight)?;
    let window = crate::inputs::weight_bound(window)?;
    let file = crate::inputs::graph_file(graph_spec)?;
    let tri = crate::inputs::surface(genus, punctures.unwrap_or(file.num_vertices))?;
    let graph = crate::inputs::graph_on(&tri, &file)?;
    let mut hyp = Hyp::new(&tri, &graph).map_err(|e| input_err(e.to_string()))?;

    let pairs = seeded_pairs(&tri, weight, samples, seed, |a, b| {
        a != b
            && graph.compatible(a).is_some()
            && graph.compatible(b).is_some()
            && disjoint(&tri, a, b)
    });
    let mut s = String::new();
    let mut ok_count = 0usize;
    for (i, (a, b)) in pairs.iter().enumerate() {
        match hyp.verify_diam_bound(a, b, window) {
            Ok(report) => {
                ok_count += report.holds as usize;
                let _ = writeln!(
                    s,
                    "pair {i}: {} ~ {} -> diameter {} (bound {}) {}",
                    arc_label(a),
                    arc_label(b),
                    report.measured.map_or("-".to_string(), |d| d.to_string()),
                    report.bound,
                    if report.holds { "ok" } else { "FAIL" },
                );
            }
            Err(e) => {
                let _ = writeln!(s, "pair {i}: FAIL ({e})");
            }
        }
    }
    let _ = writeln!(s, "{ok_count}/{} pair families within bound", pairs.len());
    Ok(Outcome {
        text: s,
        passed: ok_count == pairs.len() && !pairs.is_empty(),
    })
}

/// All-geodesics family on a fixed graph: every vertex on some geodesic
/// between the two endpoints.
fn geodesics_family(n: usize, edges: &[(usize, usize)]) -> impl Fn(usize, usize) -> Vec<usize> {
    let mut adjacency = vec![Vec::new(); n];
    for &(u, v) in edges {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    let bfs = |s: usize| -> Vec<Option<u32>> {
        let mut dist = vec![None; n];
        let mut queue = std::collections::VecDeque::from([s]);
        dist[s] = Some(0);
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(dist[v].unwrap() + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    };
    let dist: Vec<Vec<Option<u32>>> = (0..n).map(bfs).collect();
    move |x: usize, y: usize| {
        let Some(d) = dist[x][y] else {
            return Vec::new();
        };
        (0..dist.len())
            .filter(|&v| {
                matches!((dist[x][v], dist[v][y]), (Some(a), Some(b)) if a + b == d)
            })
            .collect()
    }
}

pub enum GuessFixture {
    Tree { size: usize },
    Cycle { size: usize },
    Window(Box<WindowFixture>),
}

pub struct WindowFixture {
    pub genus: u32,
    pub punctures: Option<u32>,
    pub graph_spec: String,
    pub base_spec: String,
    pub radius: u32,
    pub weight: usize,
    pub sample: Option<(usize, u64)>,
}

pub fn verify_guess(fixture: GuessFixture, m: Option<u32>) -> Result<Outcome, RunError> {
    let (report, m) = match fixture {
        GuessFixture::Tree { size } => {
            let m = m.ok_or_else(|| input_err("--m is required for the tree fixture"))?;
            let edges: Vec<(usize, usize)> = (0..size.saturating_sub(1)).map(|i| (i, i + 1)).collect();
            let family = geodesics_family(size, &edges);
            (guessing_geodesics_check(size, &edges, family, m, None), m)
        }
        GuessFixture::Cycle { size } => {
            let m = m.ok_or_else(|| input_err("--m is required for the cycle fixture"))?;
            if size < 3 {
                return Err(input_err("a cycle needs at least 3 vertices"));
            }
            let edges: Vec<(usize, usize)> = (0..size).map(|i| (i, (i + 1) % size)).collect();
            let family = geodesics_family(size, &edges);
            (guessing_geodesics_check(size, &edges, family, m, None), m)
        }
        GuessFixture::Window(w) => {
            let weight = crate::inputs::weight_bound(w.weight)?;
            let file = crate::inputs::graph_file(&w.graph_spec)?;
            let tri = crate::inputs::surface(w.genus, w.punctures.unwrap_or(file.num_vertices))?;
            let graph = crate::inputs::graph_on(&tri, &file)?;
            let base = crate::inputs::arc(&tri, &w.base_spec)?;
            let mut macx = Macx::new(&tri, &graph).map_err(|e| input_err(e.to_string()))?;
            let ball = macx
                .ball(ComplexKind::Arc, &base, w.radius, weight)
                .map_err(|e| input_err(e.to_string()))?;
            let hyp = Hyp::new(&tri, &graph).map_err(|e| input_err(e.to_string()))?;
            let diameter = graph
                .gamma_zero()
                .graph_diameter()
                .ok_or_else(|| input_err("the supported subgraph must be connected"))?;
            let m = m.unwrap_or(2 * diameter + 9);

            let vertices = ball.vertices().to_vec();
            let edges: Vec<(usize, usize)> = ball.adjacency().to_vec();
            let hyp = RefCell::new(hyp);
            let family = |x: usize, y: usize| -> Vec<usize> {
                let set = hyp
                    .borrow_mut()
                    .guess_set(&vertices[x], &vertices[y], weight)
                    .expect("ball members are compatible");
                let mut members: Vec<usize> = set
                    .full
                    .iter()
                    .filter_map(|a| ball.index_of(a))
                    .collect();
                members.sort_unstable();
                members.dedup();
                members
            };
            (
                guessing_geodesics_check(vertices.len(), &edges, family, m, w.sample),
                m,
            )
        }
    };
    let text = format!(
        "hypothesis 1 (adjacent families have diameter <= {m}): {} (worst {})\n\
         hypothesis 2 (families are {m}-thin over triples): {} (worst {})\n\
         checked {} pairs, {} triples{}\n{}\n",
        if report.adjacent_diameter_ok { "ok" } else { "FAIL" },
        report.worst_adjacent_diameter,
        if report.thinness_ok { "ok" } else { "FAIL" },
        report.worst_thinness,
        report.checked_pairs,
        report.checked_triples,
        if report.exhaustive { " (exhaustive)" } else { " (sampled)" },
        if report.ok() { "both hypotheses hold" } else { "hypotheses FAILED" },
    );
    Ok(Outcome {
        text,
        passed: report.ok(),
    })
}

pub fn verify_qi(
    genus: u32,
    punctures: Option<u32>,
    graph_spec: &str,
    samples: usize,
    seed: u64,
    weight: usize,
) -> Result<Outcome, RunError> {
    let weight = crate::inputs::weight_bound(weight)?;
    let file = crate::inputs::graph_file(graph_spec)?;
    let tri = crate::inputs::surface(genus, punctures.unwrap_or(file.num_vertices))?;
    let graph = crate::inputs::graph_on(&tri, &file)?;
    let report = qi_sample(&tri, &graph, weight, samples, seed)
        .map_err(|e| input_err(e.to_string()))?;
    let mut s = String::new();
    for (i, pair) in report.pairs.iter().enumerate() {
        let _ = writeln!(
            s,
            "pair {i}: {} ~ {} -> relaxed {} matching {} {}",
            arc_label(&pair.a),
            arc_label(&pair.b),
            pair.d_arc,
            pair.d_matching.map_or("-".to_string(), |d| d.to_string()),
            if pair.ok { "ok" } else { "FAIL" },
        );
    }
    let _ = writeln!(
        s,
        "{}/{} pairs within the sandwich d <= D <= 6d ({} unreachable skipped)",
        report.pairs.iter().filter(|p| p.ok).count(),
        report.pairs.len(),
        report.skipped_unreachable,
    );
    Ok(Outcome {
        text: s,
        passed: report.ok,
    })
}

#[allow(clippy::too_many_arguments)]
pub fn delta(
    genus: u32,
    punctures: Option<u32>,
    graph_spec: &str,
    base_spec: &str,
    radius: u32,
    weight: usize,
    complex: Complex,
    sample: Option<(usize, u64)>,
    format: Format,
) -> Result<Outcome, RunError> {
    no_dot(format)?;
    let weight = crate::inputs::weight_bound(weight)?;
    let file = crate::inputs::graph_file(graph_spec)?;
    let tri = crate::inputs::surface(genus, punctures.unwrap_or(file.num_vertices))?;
    let graph = crate::inputs::graph_on(&tri, &file)?;
    let base = crate::inputs::arc(&tri, base_spec)?;
    let mut macx = Macx::new(&tri, &graph).map_err(|e| input_err(e.to_string()))?;
    let ball = macx
        .ball(complex.kind(), &base, radius, weight)
        .map_err(|e| input_err(e.to_string()))?;
    let estimate = estimate_delta(&ball, sample);
    let text = match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({
                "vertices": estimate.num_vertices,
                "radius": estimate.radius,
                "twice_delta": estimate.twice_delta,
                "delta": estimate.delta(),
                "quadruples_checked": estimate.quadruples_checked,
                "exhaustive": estimate.exhaustive,
            }))
            .expect("reports serialize")
        ),
        _ => format!(
            "four-point hyperbolicity estimate on {} vertices (radius {}):\n\
             delta = {} ({} quadruples, {})\n",
            estimate.num_vertices,
            estimate.radius,
            estimate.delta(),
            estimate.quadruples_checked,
            if estimate.exhaustive { "exhaustive" } else { "sampled" },
        ),
    };
    Ok(Outcome::pass(text))
}
