//! Shared fixtures and pinned parameters for the acceptance suite.
//!
//! Every tolerance, seed, sample count, weight bound, and time budget the
//! acceptance tests use lives here as a named constant, so the contract is
//! readable in one place and cannot drift silently.  The tests themselves
//! are in `tests/acceptance.rs`, one per criterion, each printing a single
//! summary line.

use std::ops::RangeInclusive;
use std::time::Duration;

use arcx_core::gamma::MarkedGraph;
use arcx_core::surface::{Triangulation, VertexId};

// ---- criterion 2 and 3: bounded bridges between sampled pairs ----------

pub const BRIDGE_SAMPLES: usize = 50;
pub const BRIDGE_WEIGHT: usize = 6;
pub const SHARED_ENDPOINT_SEED: u64 = 1002;
pub const SAME_ENDPOINTS_SEED: u64 = 1003;
pub const SHARED_ENDPOINT_MAX_LENGTH: usize = 4;
pub const SAME_ENDPOINTS_MAX_LENGTH: usize = 6;

// ---- criterion 4: every constructed path validates and is no shorter
// ---- than the exact distance measured in a saturated window ------------

pub const CONNECT_WEIGHT: usize = 4;
pub const EXACT_WINDOW_WEIGHT: usize = 10;

// ---- criterion 5: star support leaves every arc isolated ---------------

pub const STAR_ARC_WEIGHT: usize = 6;
pub const STAR_NEIGHBOR_WEIGHTS: RangeInclusive<usize> = 1..=10;

// ---- criterion 6: separation verdicts and the handle path --------------

pub const SEPARATION_WEIGHT: usize = 6;
pub const TORUS_SEPARATION_WEIGHT: usize = 5;
pub const HANDLE_TWIN_WEIGHT: usize = 5;
pub const HANDLE_PATH_LENGTH: usize = 4;

// ---- criterion 7: unicorn sequences and slim-triangle witnesses --------

pub const UNICORN_WEIGHT: usize = 8;
pub const UNICORN_PAIRS: usize = 500;
pub const UNICORN_TRIPLES: usize = 500;
pub const UNICORN_PAIR_SEED: u64 = 1007;
pub const UNICORN_TRIPLE_SEED: u64 = 2007;

// ---- criterion 8: intersection numbers against the geodesic oracle -----

pub const ORACLE_WEIGHT: usize = 6;

// ---- criterion 9 and 10: guess-set family geometry ---------------------

pub const GUESS_SAMPLES: usize = 100;
pub const GUESS_ARC_WEIGHT: usize = 6;
pub const GUESS_WINDOW_WEIGHT: usize = 10;
pub const THIN_SEED: u64 = 1009;
pub const DIAM_SEED: u64 = 1010;
/// Two times the support diameter of the complete graph plus nine.
pub const DIAM_BOUND: u32 = 11;

// ---- criterion 11: the two complexes are quasi-isometric ---------------

pub const QI_SAMPLES: usize = 100;
pub const QI_WEIGHT: usize = 8;
pub const QI_SEED: u64 = 1011;

// ---- criterion 12: the generic checker on known fixtures ---------------

pub const CHECKER_TREE_SIZE: usize = 7;
pub const CHECKER_CYCLE_SIZE: usize = 6;
pub const CHECKER_CYCLE_M: u32 = 2;
pub const CHECKER_BALL_RADIUS: u32 = 2;
pub const CHECKER_BALL_WEIGHT: usize = 4;
/// Same bound as criterion 10, applied to ball-restricted guess sets.
pub const CHECKER_WINDOW_M: u32 = 11;
pub const CHECKER_TRIPLE_SAMPLE: (usize, u64) = (150, 1012);

// ---- wall-clock budgets, one per criterion ------------------------------

pub const BUDGET_VERDICTS: Duration = Duration::from_secs(1);
pub const BUDGET_SHARED_BRIDGES: Duration = Duration::from_secs(120);
pub const BUDGET_SAME_BRIDGES: Duration = Duration::from_secs(120);
pub const BUDGET_CONNECT: Duration = Duration::from_secs(600);
pub const BUDGET_STAR: Duration = Duration::from_secs(60);
pub const BUDGET_SEPARATION: Duration = Duration::from_secs(300);
pub const BUDGET_UNICORN: Duration = Duration::from_secs(300);
pub const BUDGET_ORACLE: Duration = Duration::from_secs(600);
pub const BUDGET_THIN: Duration = Duration::from_secs(900);
pub const BUDGET_DIAM: Duration = Duration::from_secs(900);
pub const BUDGET_QI: Duration = Duration::from_secs(600);
pub const BUDGET_CHECKER: Duration = Duration::from_secs(120);

/// The sphere with `n` punctures.
pub fn sphere(n: u32) -> Triangulation {
    Triangulation::standard(0, n).expect("spheres with three or more punctures exist")
}

/// The torus with `n` punctures.
pub fn torus(n: u32) -> Triangulation {
    Triangulation::standard(1, n).expect("punctured tori exist")
}

/// A graph whose vertex `k` sits at puncture `k`.
pub fn identity_graph(tri: &Triangulation, n: u32, edges: &[(u32, u32)]) -> MarkedGraph {
    MarkedGraph::new(tri, n, edges, (0..n).map(VertexId).collect())
        .expect("fixture graphs are well formed")
}

/// The two-disjoint-edges graph on four punctures.
pub fn two_edges(tri: &Triangulation) -> MarkedGraph {
    identity_graph(tri, 4, &[(0, 1), (2, 3)])
}

/// Breadth-first distances from `source` over adjacency lists.
pub fn bfs(adjacency: &[Vec<usize>], source: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; adjacency.len()];
    let mut queue = std::collections::VecDeque::from([source]);
    dist[source] = Some(0);
    while let Some(v) = queue.pop_front() {
        for &w in &adjacency[v] {
            if dist[w].is_none() {
                dist[w] = Some(dist[v].expect("visited") + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}
