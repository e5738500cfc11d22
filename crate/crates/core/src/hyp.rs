//! Geometry checks for the matching arc complex: triangle-arc systems,
//! guess-sets, thinness and diameter verifiers, the generic
//! guessing-geodesics hypothesis checker, quasi-isometry sampling between
//! the matching and relaxed complexes, and empirical hyperbolicity-constant
//! estimation on balls.
//!
//! The strategy mirrors the hyperbolicity argument: to every arc we attach
//! three pairwise disjoint arcs spanning a fixed graph triangle and bounding
//! a disk; the guess-set of a pair is the unicorn interpolation between
//! their triangle arcs plus its 1-neighborhood.  Thinness (within 2) and a
//! diameter bound of `2 * diam + 9` for adjacent pairs are then checked by
//! direct measurement, and a generic finite-graph checker validates the
//! same two hypotheses on arbitrary vertex families.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arc::Arc;
use crate::arrange::{triangle_bounds_disk, ArrangeError};
use crate::enumerate::ArcPool;
use crate::gamma::{ConnectivityVerdict, MarkedGraph};
use crate::macx::Ball;
use crate::overlay;
use crate::surface::{Triangulation, VertexId};
use crate::unicorn::{unicorn_arcs, UnicornError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypError {
    #[error("the supported subgraph is not connected")]
    GraphNotConnected,
    #[error("the graph has no triangle")]
    NoTriangle,
    #[error("the matching arc complex over this graph is not connected")]
    ComplexNotConnected,
    #[error("the arc is not compatible with the graph")]
    NotCompatible,
    #[error("the arcs are not adjacent in the relaxed complex")]
    NotAdjacentInArcComplex,
    #[error("no {role} found within weight {weight}; raise the search bound")]
    SearchBudget { role: &'static str, weight: usize },
    #[error(transparent)]
    Arrange(#[from] ArrangeError),
    #[error(transparent)]
    Unicorn(#[from] UnicornError),
}

/// Three pairwise disjoint arcs spanning the fixed graph triangle, bounding
/// a disk, and each disjoint from the source arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleArcs {
    /// The arc this system is attached to.
    pub source: Arc,
    /// Graph vertices of the triangle; slot `i` spans vertices `i` and
    /// `(i + 1) % 3`.
    pub vertices: [u32; 3],
    /// The triangle arcs, one per slot.
    pub arcs: [Arc; 3],
}

/// Which unicorn family a guess-set element came from: slots into the two
/// triangle-arc systems plus the chosen basepoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Origin {
    pub source_slot: u8,
    pub target_slot: u8,
    pub source_basepoint: VertexId,
    pub target_basepoint: VertexId,
}

/// The guess-set of an arc pair: unicorn elements between their triangle
/// arcs (the prime set) together with its 1-neighborhood in the relaxed
/// complex, truncated at a weight bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuessSet {
    pub source: Arc,
    pub target: Arc,
    /// Prime elements in canonical order.
    pub prime: Vec<Arc>,
    /// For each prime element, every family it arose from.
    pub origins: Vec<Vec<Origin>>,
    /// The prime set, the pair itself, and all weight-bounded neighbors of
    /// the prime set in the relaxed complex, in canonical order.
    pub full: Vec<Arc>,
    pub weight_bound: usize,
}

impl GuessSet {
    pub fn contains(&self, arc: &Arc) -> bool {
        self.full.binary_search(arc).is_ok()
    }
}

/// Outcome of a thinness check on one triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThinnessReport {
    /// Whether every element sat within distance 2 of the side union.
    pub holds: bool,
    /// Largest observed distance, when every element was reachable.
    pub max_distance: Option<u32>,
    /// An element realizing the maximum (or an unreachable one).
    pub witness: Option<Arc>,
    pub weight_bound: usize,
}

/// Outcome of a diameter check on one adjacent pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiamReport {
    /// Measured diameter of the guess-set, when connected in the window.
    pub measured: Option<u32>,
    /// The certified bound, `2 * graph diameter + 9`.
    pub bound: u32,
    pub holds: bool,
    pub weight_bound: usize,
}

/// The geometry machinery for one surface and graph with a fixed triangle.
pub struct Hyp<'a> {
    tri: &'a Triangulation,
    graph: &'a MarkedGraph,
    pool: ArcPool<'a>,
    triangle: [u32; 3],
    memo: BTreeMap<Arc, TriangleArcs>,
    windows: BTreeMap<usize, CachedWindow>,
    search_weight: usize,
    candidate_limit: usize,
}

/// The weight-bounded compatible universe with its precomputed adjacency,
/// cached per weight bound because building it is quadratic.
struct CachedWindow {
    arcs: Vec<Arc>,
    adjacency: Vec<Vec<usize>>,
}

impl<'a> Hyp<'a> {
    /// Requires a connected supported subgraph containing a triangle and a
    /// connected matching arc complex.
    pub fn new(tri: &'a Triangulation, graph: &'a MarkedGraph) -> Result<Self, HypError> {
        let g0 = graph.gamma_zero();
        if !g0.is_connected() {
            return Err(HypError::GraphNotConnected);
        }
        let triangle = graph.first_triangle().ok_or(HypError::NoTriangle)?;
        if graph.connectivity_verdict(tri.genus()) != ConnectivityVerdict::Connected {
            return Err(HypError::ComplexNotConnected);
        }
        Ok(Hyp {
            tri,
            graph,
            pool: ArcPool::new(tri),
            triangle,
            memo: BTreeMap::new(),
            windows: BTreeMap::new(),
            search_weight: 8,
            candidate_limit: 24,
        })
    }

    pub fn with_search_weight(mut self, weight: usize) -> Self {
        self.search_weight = weight;
        self
    }

    /// The fixed triangle, as graph vertices.
    pub fn triangle(&self) -> [u32; 3] {
        self.triangle
    }

    /// Marked points spanned by triangle slot `i`, sorted.
    fn slot_points(&self, slot: usize) -> [VertexId; 2] {
        let u = self.graph.embedding(self.triangle[slot]);
        let v = self.graph.embedding(self.triangle[(slot + 1) % 3]);
        if u <= v {
            [u, v]
        } else {
            [v, u]
        }
    }

    fn weight_rounds(&self) -> impl Iterator<Item = usize> {
        let base = self.search_weight;
        (0..=4).map(move |k| base + 2 * k)
    }

    /// The triangle-arc system of `alpha`: deterministic (first valid triple
    /// in canonical order) and memoized per canonical form.  When `alpha`
    /// itself spans a triangle edge it occupies that slot.
    pub fn triangle_arcs(&mut self, alpha: &Arc) -> Result<TriangleArcs, HypError> {
        if let Some(t) = self.memo.get(alpha) {
            return Ok(t.clone());
        }
        if self.graph.compatible(alpha).is_none() {
            return Err(HypError::NotCompatible);
        }
        let slots = [self.slot_points(0), self.slot_points(1), self.slot_points(2)];
        let forced: Vec<usize> = (0..3)
            .filter(|&i| alpha.endpoints() == slots[i])
            .collect();
        debug_assert!(forced.len() <= 1);

        for w in self.weight_rounds() {
            let all = self.pool.arcs_up_to(w);
            let cands: Vec<Vec<&Arc>> = (0..3)
                .map(|i| {
                    if forced.contains(&i) {
                        vec![alpha]
                    } else {
                        all.iter()
                            .filter(|a| {
                                a.endpoints() == slots[i]
                                    && overlay::disjoint(self.tri, a, alpha)
                            })
                            .take(self.candidate_limit)
                            .collect()
                    }
                })
                .collect();
            for &a1 in &cands[0] {
                for &a2 in &cands[1] {
                    if !overlay::disjoint(self.tri, a1, a2) {
                        continue;
                    }
                    for &a3 in &cands[2] {
                        if !overlay::disjoint(self.tri, a1, a3)
                            || !overlay::disjoint(self.tri, a2, a3)
                        {
                            continue;
                        }
                        if triangle_bounds_disk(self.tri, [a1, a2, a3])? {
                            let system = TriangleArcs {
                                source: alpha.clone(),
                                vertices: self.triangle,
                                arcs: [a1.clone(), a2.clone(), a3.clone()],
                            };
                            self.memo.insert(alpha.clone(), system.clone());
                            return Ok(system);
                        }
                    }
                }
            }
        }
        Err(HypError::SearchBudget {
            role: "disk-bounding triangle-arc system",
            weight: self.search_weight + 8,
        })
    }

    /// The guess-set of a pair: all compatible unicorn elements between
    /// their triangle arcs over every slot pair and admissible basepoint
    /// pair, plus the 1-neighborhood within the weight bound.
    pub fn guess_set(
        &mut self,
        alpha: &Arc,
        beta: &Arc,
        weight_bound: usize,
    ) -> Result<GuessSet, HypError> {
        let ta = self.triangle_arcs(alpha)?;
        let tb = self.triangle_arcs(beta)?;
        let mut prime: BTreeMap<Arc, Vec<Origin>> = BTreeMap::new();
        for i in 0..3 {
            for j in 0..3 {
                let a = &ta.arcs[i];
                let b = &tb.arcs[j];
                for v in a.endpoints() {
                    for u in b.endpoints() {
                        if v == u {
                            continue;
                        }
                        let seq = unicorn_arcs(self.tri, a, v, b, u)?;
                        for arc in seq.elements() {
                            if self.graph.compatible(arc).is_none() {
                                continue;
                            }
                            prime.entry(arc.clone()).or_default().push(Origin {
                                source_slot: i as u8,
                                target_slot: j as u8,
                                source_basepoint: v,
                                target_basepoint: u,
                            });
                        }
                    }
                }
            }
        }

        let mut full: BTreeSet<Arc> = prime.keys().cloned().collect();
        full.insert(alpha.clone());
        full.insert(beta.clone());
        for arc in self.compatible_arcs(weight_bound) {
            if prime
                .keys()
                .any(|p| *p != arc && overlay::disjoint(self.tri, p, &arc))
            {
                full.insert(arc);
            }
        }

        let (prime, origins) = prime.into_iter().unzip();
        Ok(GuessSet {
            source: alpha.clone(),
            target: beta.clone(),
            prime,
            origins,
            full: full.into_iter().collect(),
            weight_bound,
        })
    }

    /// Check that the guess-set of `(alpha, beta)` lies within distance 2 of
    /// the union of the guess-sets of `(alpha, gamma)` and `(gamma, beta)`,
    /// measured in the relaxed complex restricted to the weight window.
    pub fn verify_thinness(
        &mut self,
        alpha: &Arc,
        beta: &Arc,
        gamma: &Arc,
        weight_bound: usize,
    ) -> Result<ThinnessReport, HypError> {
        let ab = self.guess_set(alpha, beta, weight_bound)?;
        let ag = self.guess_set(alpha, gamma, weight_bound)?;
        let gb = self.guess_set(gamma, beta, weight_bound)?;

        let window = self.arc_window(weight_bound, &[&ab.full, &ag.full, &gb.full]);
        let sources: Vec<usize> = ag
            .full
            .iter()
            .chain(gb.full.iter())
            .map(|a| window.index_of(a).expect("guess sets are in the window"))
            .collect();
        let dist = window.distances_from(&sources);

        let mut max_distance = Some(0u32);
        let mut witness = None;
        for arc in &ab.full {
            let idx = window.index_of(arc).expect("guess sets are in the window");
            match (dist[idx], max_distance) {
                (None, _) => {
                    max_distance = None;
                    witness = Some(arc.clone());
                    break;
                }
                (Some(d), Some(m)) if d > m => {
                    max_distance = Some(d);
                    witness = Some(arc.clone());
                }
                _ => {}
            }
        }
        let holds = matches!(max_distance, Some(m) if m <= 2);
        Ok(ThinnessReport {
            holds,
            max_distance,
            witness,
            weight_bound,
        })
    }

    /// Check the guess-set diameter bound `2 * graph diameter + 9` for a
    /// pair adjacent in the relaxed complex, measured in the weight window.
    pub fn verify_diam_bound(
        &mut self,
        alpha: &Arc,
        beta: &Arc,
        weight_bound: usize,
    ) -> Result<DiamReport, HypError> {
        if alpha != beta && !overlay::disjoint(self.tri, alpha, beta) {
            return Err(HypError::NotAdjacentInArcComplex);
        }
        let diameter = self
            .graph
            .gamma_zero()
            .graph_diameter()
            .expect("the supported subgraph is connected");
        let bound = 2 * diameter + 9;

        let gs = self.guess_set(alpha, beta, weight_bound)?;
        let window = self.arc_window(weight_bound, &[&gs.full]);
        let members: Vec<usize> = gs
            .full
            .iter()
            .map(|a| window.index_of(a).expect("guess set is in the window"))
            .collect();

        let mut measured = Some(0u32);
        'outer: for &m in &members {
            let dist = window.distances_from(&[m]);
            for &n in &members {
                match dist[n] {
                    None => {
                        measured = None;
                        break 'outer;
                    }
                    Some(d) => {
                        if let Some(cur) = measured {
                            if d > cur {
                                measured = Some(d);
                            }
                        }
                    }
                }
            }
        }
        let holds = matches!(measured, Some(m) if m <= bound);
        Ok(DiamReport {
            measured,
            bound,
            holds,
            weight_bound,
        })
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

    /// The finite window of the relaxed complex used for distance
    /// measurements: weight-bounded compatible arcs plus the given extras.
    /// The universe's quadratic adjacency is cached per weight bound; only
    /// the extras are joined per call.
    fn arc_window(&mut self, max_weight: usize, extras: &[&[Arc]]) -> ArcWindow {
        if !self.windows.contains_key(&max_weight) {
            let arcs = self.compatible_arcs(max_weight);
            let mut adjacency = vec![Vec::new(); arcs.len()];
            for i in 0..arcs.len() {
                for j in i + 1..arcs.len() {
                    if overlay::disjoint(self.tri, &arcs[i], &arcs[j]) {
                        adjacency[i].push(j);
                        adjacency[j].push(i);
                    }
                }
            }
            self.windows
                .insert(max_weight, CachedWindow { arcs, adjacency });
        }
        let base = &self.windows[&max_weight];
        let mut arcs = base.arcs.clone();
        let mut adjacency = base.adjacency.clone();
        let mut index: BTreeMap<Arc, usize> =
            arcs.iter().cloned().zip(0..arcs.len()).collect();
        for extra in extras {
            for a in *extra {
                if index.contains_key(a) {
                    continue;
                }
                let k = arcs.len();
                adjacency.push(Vec::new());
                for i in 0..k {
                    if overlay::disjoint(self.tri, &arcs[i], a) {
                        adjacency[i].push(k);
                        adjacency[k].push(i);
                    }
                }
                index.insert(a.clone(), k);
                arcs.push(a.clone());
            }
        }
        ArcWindow {
            arcs,
            index,
            adjacency,
        }
    }
}

/// A finite induced subgraph of the relaxed complex with precomputed
/// adjacency, used as the measuring stick for distances.
struct ArcWindow {
    arcs: Vec<Arc>,
    index: BTreeMap<Arc, usize>,
    adjacency: Vec<Vec<usize>>,
}

impl ArcWindow {
    fn index_of(&self, arc: &Arc) -> Option<usize> {
        self.index.get(arc).copied()
    }

    /// Multi-source BFS distances.
    fn distances_from(&self, sources: &[usize]) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.arcs.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(dist[v].unwrap() + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Report of the generic two-hypothesis check behind the guessing-geodesics
/// criterion on a finite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuessingGeodesicsReport {
    /// Hypothesis one: families of adjacent pairs have diameter at most M.
    pub adjacent_diameter_ok: bool,
    pub worst_adjacent_diameter: u32,
    /// Hypothesis two: every family sits in the M-neighborhood of the union
    /// over each third vertex.
    pub thinness_ok: bool,
    pub worst_thinness: u32,
    pub checked_pairs: usize,
    pub checked_triples: usize,
    /// False when the triple scan was sampled instead of exhaustive.
    pub exhaustive: bool,
}

impl GuessingGeodesicsReport {
    pub fn ok(&self) -> bool {
        self.adjacent_diameter_ok && self.thinness_ok
    }
}

/// Check the two guessing-geodesics hypotheses on a finite graph with a
/// family of vertex sets: for adjacent (or equal) pairs the family has
/// diameter at most `m`, and for every triple the family of the outer pair
/// lies in the `m`-neighborhood of the union over the middle vertex.
/// Distances are graph distances; unreachable vertices count as failures.
/// `sample` draws that many random triples instead of scanning all of them.
pub fn guessing_geodesics_check(
    num_vertices: usize,
    edges: &[(usize, usize)],
    family: impl Fn(usize, usize) -> Vec<usize>,
    m: u32,
    sample: Option<(usize, u64)>,
) -> GuessingGeodesicsReport {
    let mut adjacency = vec![Vec::new(); num_vertices];
    for &(u, v) in edges {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    let dist: Vec<Vec<Option<u32>>> = (0..num_vertices)
        .map(|s| bfs(&adjacency, s))
        .collect();

    let mut worst_adjacent_diameter = 0u32;
    let mut adjacent_diameter_ok = true;
    let mut checked_pairs = 0usize;
    for x in 0..num_vertices {
        for y in x..num_vertices {
            if x != y && !matches!(dist[x][y], Some(1)) {
                continue;
            }
            checked_pairs += 1;
            let set = family(x, y);
            for (k, &p) in set.iter().enumerate() {
                for &q in &set[k + 1..] {
                    match dist[p][q] {
                        Some(d) => worst_adjacent_diameter = worst_adjacent_diameter.max(d),
                        None => adjacent_diameter_ok = false,
                    }
                }
            }
        }
    }
    adjacent_diameter_ok &= worst_adjacent_diameter <= m;

    let mut worst_thinness = 0u32;
    let mut thinness_ok = true;
    let mut checked_triples = 0usize;
    let mut check_triple = |x: usize, y: usize, z: usize| {
        checked_triples += 1;
        let side: BTreeSet<usize> = family(x, z).into_iter().chain(family(z, y)).collect();
        for &p in &family(x, y) {
            let near = side
                .iter()
                .filter_map(|&q| dist[p][q])
                .min();
            match near {
                Some(d) => worst_thinness = worst_thinness.max(d),
                None => thinness_ok = false,
            }
        }
    };
    let exhaustive = sample.is_none();
    match sample {
        None => {
            for x in 0..num_vertices {
                for y in 0..num_vertices {
                    for z in 0..num_vertices {
                        check_triple(x, y, z);
                    }
                }
            }
        }
        Some((count, seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let x = rng.gen_range(0..num_vertices);
                let y = rng.gen_range(0..num_vertices);
                let z = rng.gen_range(0..num_vertices);
                check_triple(x, y, z);
            }
        }
    }
    thinness_ok &= worst_thinness <= m;

    GuessingGeodesicsReport {
        adjacent_diameter_ok,
        worst_adjacent_diameter,
        thinness_ok,
        worst_thinness,
        checked_pairs,
        checked_triples,
        exhaustive,
    }
}

fn bfs(adjacency: &[Vec<usize>], source: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; adjacency.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &w in &adjacency[v] {
            if dist[w].is_none() {
                dist[w] = Some(dist[v].unwrap() + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// One sampled pair of the quasi-isometry comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QiPair {
    pub a: Arc,
    pub b: Arc,
    /// Distance in the relaxed complex window.
    pub d_arc: u32,
    /// Distance in the matching complex window, when reachable.
    pub d_matching: Option<u32>,
    /// `d_arc <= d_matching <= 6 * d_arc`.
    pub ok: bool,
}

/// Report of the sampled comparison between the two complexes' metrics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QiReport {
    pub pairs: Vec<QiPair>,
    pub ok: bool,
    pub weight_bound: usize,
    /// Pairs skipped because they were unreachable even in the relaxed
    /// window (truncation artifact).
    pub skipped_unreachable: usize,
}

/// Sample distinct compatible arc pairs within a weight window and compare
/// their distances in the relaxed and matching complexes: each relaxed edge
/// expands to a matching path of length at most 6, so the matching distance
/// must sit between the relaxed distance and six times it.
pub fn qi_sample(
    tri: &Triangulation,
    graph: &MarkedGraph,
    weight_bound: usize,
    samples: usize,
    seed: u64,
) -> Result<QiReport, HypError> {
    if graph.connectivity_verdict(tri.genus()) != ConnectivityVerdict::Connected {
        return Err(HypError::ComplexNotConnected);
    }
    let mut pool = ArcPool::new(tri);
    let arcs: Vec<Arc> = pool
        .arcs_up_to(weight_bound)
        .into_iter()
        .filter(|a| graph.compatible(a).is_some())
        .collect();

    let n = arcs.len();
    let mut relaxed = vec![Vec::new(); n];
    let mut matching = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if overlay::disjoint(tri, &arcs[i], &arcs[j]) {
                relaxed[i].push(j);
                relaxed[j].push(i);
                if overlay::completely_disjoint(tri, &arcs[i], &arcs[j]) {
                    matching[i].push(j);
                    matching[j].push(i);
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    let mut skipped_unreachable = 0usize;
    let mut ok = true;
    for _ in 0..samples {
        if n < 2 {
            break;
        }
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let d_arc = match bfs(&relaxed, i)[j] {
            Some(d) => d,
            None => {
                skipped_unreachable += 1;
                continue;
            }
        };
        let d_matching = bfs(&matching, i)[j];
        let pair_ok = match d_matching {
            Some(dm) => u64::from(d_arc) <= u64::from(dm) && u64::from(dm) <= 6 * u64::from(d_arc),
            None => false,
        };
        ok &= pair_ok;
        pairs.push(QiPair {
            a: arcs[i].clone(),
            b: arcs[j].clone(),
            d_arc,
            d_matching,
            ok: pair_ok,
        });
    }
    Ok(QiReport {
        pairs,
        ok,
        weight_bound,
        skipped_unreachable,
    })
}

/// Empirical four-point hyperbolicity estimate on a ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaEstimate {
    /// Twice the four-point defect bound (kept doubled to stay integral).
    pub twice_delta: u32,
    pub exhaustive: bool,
    pub quadruples_checked: u64,
    pub radius: u32,
    pub num_vertices: usize,
}

impl DeltaEstimate {
    pub fn delta(&self) -> f64 {
        f64::from(self.twice_delta) / 2.0
    }
}

/// Largest four-point-condition defect over vertex quadruples of the ball:
/// for each quadruple the two largest of the three pairing sums differ by
/// at most twice the hyperbolicity constant.  Exhaustive by default; with
/// `sample`, that many random quadruples are drawn instead.
pub fn estimate_delta(ball: &Ball, sample: Option<(usize, u64)>) -> DeltaEstimate {
    let n = ball.vertices().len();
    let mut adjacency = vec![Vec::new(); n];
    for &(i, j) in ball.adjacency() {
        adjacency[i].push(j);
        adjacency[j].push(i);
    }
    let dist: Vec<Vec<Option<u32>>> = (0..n).map(|s| bfs(&adjacency, s)).collect();
    let d = |a: usize, b: usize| dist[a][b].expect("balls are connected");

    let mut twice_delta = 0u32;
    let mut quadruples_checked = 0u64;
    let mut check = |a: usize, b: usize, c: usize, e: usize| {
        quadruples_checked += 1;
        let mut sums = [
            d(a, b) + d(c, e),
            d(a, c) + d(b, e),
            d(a, e) + d(b, c),
        ];
        sums.sort_unstable();
        twice_delta = twice_delta.max(sums[2] - sums[1]);
    };
    let exhaustive = sample.is_none();
    match sample {
        None => {
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        for e in c + 1..n {
                            check(a, b, c, e);
                        }
                    }
                }
            }
        }
        Some((count, seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if n >= 4 {
                for _ in 0..count {
                    let mut picks = BTreeSet::new();
                    while picks.len() < 4 {
                        picks.insert(rng.gen_range(0..n));
                    }
                    let q: Vec<usize> = picks.into_iter().collect();
                    check(q[0], q[1], q[2], q[3]);
                }
            }
        }
    }

    DeltaEstimate {
        twice_delta,
        exhaustive,
        quadruples_checked,
        radius: ball.radius(),
        num_vertices: n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macx::{ComplexKind, Macx};
    use crate::surface::{SideRef, TriId};

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

    #[test]
    fn triangle_arcs_reuse_the_source_when_it_fits() {
        let tri = sphere(6);
        let k6 = MarkedGraph::complete(&tri, 6).unwrap();
        let mut hyp = Hyp::new(&tri, &k6).unwrap();
        assert_eq!(hyp.triangle(), [0, 1, 2]);

        let a = edge_arc_between(&tri, 0, 1);
        let system = hyp.triangle_arcs(&a).unwrap();
        assert_eq!(system.arcs[0], a);
        for i in 0..3 {
            assert_eq!(system.arcs[i].endpoints(), hyp.slot_points(i));
            assert_eq!(overlay::intersection_number(&tri, &a, &system.arcs[i]), 0);
            for j in i + 1..3 {
                assert_eq!(
                    overlay::intersection_number(&tri, &system.arcs[i], &system.arcs[j]),
                    0
                );
            }
        }
        let [x, y, z] = &system.arcs;
        assert!(triangle_bounds_disk(&tri, [x, y, z]).unwrap());

        // Deterministic across fresh machinery.
        let mut fresh = Hyp::new(&tri, &k6).unwrap();
        assert_eq!(fresh.triangle_arcs(&a).unwrap(), system);
    }

    #[test]
    fn triangle_arcs_exist_away_from_the_triangle() {
        let tri = sphere(6);
        let k6 = MarkedGraph::complete(&tri, 6).unwrap();
        let mut hyp = Hyp::new(&tri, &k6).unwrap();
        let a = edge_arc_between(&tri, 3, 4);
        let system = hyp.triangle_arcs(&a).unwrap();
        for i in 0..3 {
            assert_ne!(system.arcs[i], a);
            assert_eq!(overlay::intersection_number(&tri, &a, &system.arcs[i]), 0);
        }
        let [x, y, z] = &system.arcs;
        assert!(triangle_bounds_disk(&tri, [x, y, z]).unwrap());
    }

    #[test]
    fn guess_sets_contain_their_pair_and_stay_compatible() {
        let tri = sphere(6);
        let k6 = MarkedGraph::complete(&tri, 6).unwrap();
        let mut hyp = Hyp::new(&tri, &k6).unwrap();

        let a = edge_arc_between(&tri, 0, 1);
        let same = hyp.guess_set(&a, &a, 2).unwrap();
        assert!(same.contains(&a));
        assert!(!same.prime.is_empty());
        assert_eq!(same.prime.len(), same.origins.len());

        // A crossing pair: the arc over marked point 2 against the edge
        // below it.
        let over = Arc::from_walk(
            &tri,
            &crate::arc::Walk {
                start_tri: TriId(0),
                start_corner: 1,
                exits: vec![SideRef::new(0, 1)],
                end_corner: 2,
            },
        )
        .unwrap();
        let under = edge_arc_between(&tri, 0, 2);
        assert_eq!(overlay::intersection_number(&tri, &over, &under), 1);
        let gs = hyp.guess_set(&over, &under, 2).unwrap();
        assert!(gs.contains(&over));
        assert!(gs.contains(&under));
        for p in &gs.prime {
            assert!(k6.compatible(p).is_some());
        }
        // The full set is connected in the relaxed complex.
        let window = hyp.arc_window(0, &[&gs.full]);
        let indices: Vec<usize> = gs
            .full
            .iter()
            .map(|x| window.index_of(x).unwrap())
            .collect();
        let dist = window.distances_from(&indices[..1]);
        assert!(indices.iter().all(|&i| dist[i].is_some()));
    }

    #[test]
    fn thinness_holds_on_tested_triples() {
        let tri = sphere(6);
        let k6 = MarkedGraph::complete(&tri, 6).unwrap();
        let mut hyp = Hyp::new(&tri, &k6).unwrap();
        let a = edge_arc_between(&tri, 0, 1);
        let b = edge_arc_between(&tri, 2, 3);

        // Degenerate middle: containment is immediate.
        let report = hyp.verify_thinness(&a, &b, &a, 2).unwrap();
        assert!(report.holds);

        let c = edge_arc_between(&tri, 4, 5);
        let report = hyp.verify_thinness(&a, &b, &c, 2).unwrap();
        assert!(report.holds, "max distance {:?}", report.max_distance);
        assert!(report.max_distance.unwrap() <= 2);
    }

    #[test]
    fn diameter_bound_holds_for_adjacent_pairs() {
        let tri = sphere(6);
        let k6 = MarkedGraph::complete(&tri, 6).unwrap();
        let mut hyp = Hyp::new(&tri, &k6).unwrap();
        let a = edge_arc_between(&tri, 0, 1);
        let b = edge_arc_between(&tri, 2, 3);

        let report = hyp.verify_diam_bound(&a, &b, 2).unwrap();
        assert_eq!(report.bound, 11);
        assert!(report.holds, "measured {:?}", report.measured);

        let degenerate = hyp.verify_diam_bound(&a, &a, 2).unwrap();
        assert!(degenerate.holds);

        let crossing = Arc::from_walk(
            &tri,
            &crate::arc::Walk {
                start_tri: TriId(0),
                start_corner: 1,
                exits: vec![SideRef::new(0, 1)],
                end_corner: 2,
            },
        )
        .unwrap();
        assert_eq!(
            hyp.verify_diam_bound(&crossing, &edge_arc_between(&tri, 0, 2), 2)
                .unwrap_err(),
            HypError::NotAdjacentInArcComplex
        );
    }

    #[test]
    fn guessing_geodesics_passes_on_trees_and_cycles() {
        // A path on six vertices with geodesic families: adjacent pairs
        // have diameter exactly 1 and the tripod property makes thinness 0,
        // so the hypotheses hold at 1 and nothing smaller.
        let path_edges: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 1)).collect();
        let geodesic = |x: usize, y: usize| -> Vec<usize> {
            let (lo, hi) = (x.min(y), x.max(y));
            (lo..=hi).collect()
        };
        let report = guessing_geodesics_check(6, &path_edges, geodesic, 1, None);
        assert!(report.ok());
        assert_eq!(report.worst_adjacent_diameter, 1);
        assert_eq!(report.worst_thinness, 0);
        assert!(report.exhaustive);
        assert!(!guessing_geodesics_check(6, &path_edges, geodesic, 0, None).ok());

        // A hexagon with all-geodesics families passes at 2 but not 0.
        let cycle_edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let mut adjacency = vec![Vec::new(); 6];
        for &(u, v) in &cycle_edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let all_geodesics = move |x: usize, y: usize| -> Vec<usize> {
            let dx = bfs(&adjacency, x);
            let dy = bfs(&adjacency, y);
            let d = dx[y].unwrap();
            (0..6)
                .filter(|&v| dx[v].unwrap() + dy[v].unwrap() == d)
                .collect()
        };
        let report = guessing_geodesics_check(6, &cycle_edges, &all_geodesics, 2, None);
        assert!(report.ok());
        assert_eq!(report.worst_thinness, 1);
        assert!(!guessing_geodesics_check(6, &cycle_edges, &all_geodesics, 0, None).ok());
    }

    #[test]
    fn qi_sampling_confirms_the_distance_sandwich() {
        let tri = sphere(5);
        let k5 = MarkedGraph::complete(&tri, 5).unwrap();
        let report = qi_sample(&tri, &k5, 2, 40, 7).unwrap();
        assert!(!report.pairs.is_empty());
        assert!(report.ok, "failing pair: {:?}",
            report.pairs.iter().find(|p| !p.ok));
        for pair in &report.pairs {
            assert!(pair.d_arc <= pair.d_matching.unwrap());
        }
    }

    #[test]
    fn delta_estimates_are_zero_on_trivial_balls_and_finite_on_real_ones() {
        let tri = sphere(5);
        let k5 = MarkedGraph::complete(&tri, 5).unwrap();
        let mut macx = Macx::new(&tri, &k5).unwrap();
        let a = edge_arc_between(&tri, 0, 1);

        let point = macx.ball(ComplexKind::Matching, &a, 0, 1).unwrap();
        let est = estimate_delta(&point, None);
        assert_eq!(est.twice_delta, 0);
        assert_eq!(est.quadruples_checked, 0);

        let ball = macx.ball(ComplexKind::Matching, &a, 5, 0).unwrap();
        let est = estimate_delta(&ball, None);
        assert!(est.exhaustive);
        assert_eq!(est.num_vertices, 9);
        assert_eq!(est.quadruples_checked, 126);
        assert!(est.delta() <= 2.0, "delta {}", est.delta());

        let sampled = estimate_delta(&ball, Some((50, 3)));
        assert!(!sampled.exhaustive);
        assert!(sampled.twice_delta <= est.twice_delta);
    }
}
