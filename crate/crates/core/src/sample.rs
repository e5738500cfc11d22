//! Deterministic seeded sampling over weight-bounded canonical arcs.
//!
//! Every sampler enumerates the canonical arc list up to the weight bound,
//! filters it by the caller's predicate, and then draws uniform indices from
//! a ChaCha8 stream seeded by the caller.  Identical (surface, bound,
//! predicate, count, seed) inputs therefore always reproduce the same draws,
//! independent of platform or build.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arc::Arc;
use crate::enumerate::ArcPool;
use crate::surface::Triangulation;

/// Draw `count` arcs of weight at most `max_weight` satisfying `keep`,
/// uniformly with replacement from the filtered canonical enumeration.
/// Returns fewer than `count` arcs only when the filtered list is empty.
pub fn seeded_arcs(
    tri: &Triangulation,
    max_weight: usize,
    count: usize,
    seed: u64,
    mut keep: impl FnMut(&Arc) -> bool,
) -> Vec<Arc> {
    let mut pool = ArcPool::new(tri);
    let universe: Vec<Arc> = pool
        .arcs_up_to(max_weight)
        .iter()
        .filter(|a| keep(a))
        .cloned()
        .collect();
    if universe.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| universe[rng.gen_range(0..universe.len())].clone())
        .collect()
}

/// Draw `count` ordered pairs of arcs of weight at most `max_weight`
/// satisfying `keep`, uniformly with replacement from the filtered pair set.
/// Returns fewer than `count` pairs only when no pair qualifies.
pub fn seeded_pairs(
    tri: &Triangulation,
    max_weight: usize,
    count: usize,
    seed: u64,
    mut keep: impl FnMut(&Arc, &Arc) -> bool,
) -> Vec<(Arc, Arc)> {
    let mut pool = ArcPool::new(tri);
    let universe = pool.arcs_up_to(max_weight).to_vec();
    let pairs: Vec<(usize, usize)> = (0..universe.len())
        .flat_map(|i| (0..universe.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| keep(&universe[i], &universe[j]))
        .collect();
    if pairs.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (i, j) = pairs[rng.gen_range(0..pairs.len())];
            (universe[i].clone(), universe[j].clone())
        })
        .collect()
}

/// Draw `count` ordered triples, uniformly with replacement, from the arcs
/// of weight at most `max_weight` satisfying `keep`; triples are drawn
/// componentwise and then filtered by `keep_triple`, redrawing until enough
/// qualify or the redraw budget runs out.
pub fn seeded_triples(
    tri: &Triangulation,
    max_weight: usize,
    count: usize,
    seed: u64,
    mut keep: impl FnMut(&Arc) -> bool,
    mut keep_triple: impl FnMut(&Arc, &Arc, &Arc) -> bool,
) -> Vec<(Arc, Arc, Arc)> {
    let mut pool = ArcPool::new(tri);
    let universe: Vec<Arc> = pool
        .arcs_up_to(max_weight)
        .iter()
        .filter(|a| keep(a))
        .cloned()
        .collect();
    if universe.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let budget = count.saturating_mul(1000).max(1000);
    for _ in 0..budget {
        if out.len() == count {
            break;
        }
        let a = &universe[rng.gen_range(0..universe.len())];
        let b = &universe[rng.gen_range(0..universe.len())];
        let c = &universe[rng.gen_range(0..universe.len())];
        if keep_triple(a, b, c) {
            out.push((a.clone(), b.clone(), c.clone()));
        }
    }
    out
}
