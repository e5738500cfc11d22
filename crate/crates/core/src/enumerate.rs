//! Exhaustive generation of arcs ordered by crossing weight.
//!
//! Taut positions are in bijection with their step sequences, and every
//! spur-free sequence whose ends are at opposite corners is taut, so the arcs
//! of weight `w` are exactly the canonical forms of the `3T * 2^(w-1)`
//! sequences built by choosing a first side to cross and then one of the two
//! legal exits in each triangle entered.  Sequences describing non-embedded
//! classes are discarded; the rest are deduplicated by canonical form.

use std::collections::BTreeSet;

use crate::arc::{Arc, Walk};
use crate::arrange::{cut_along, ArrangeError};
use crate::overlay;
use crate::surface::{SideRef, Triangulation, VertexId};

/// A growing, memoized enumeration of all arcs on one surface.
pub struct ArcPool<'t> {
    tri: &'t Triangulation,
    by_weight: Vec<Vec<Arc>>,
    /// Normal step sequences of length `by_weight.len() - 1` (once nonempty).
    frontier: Vec<Vec<SideRef>>,
}

impl<'t> ArcPool<'t> {
    pub fn new(tri: &'t Triangulation) -> Self {
        ArcPool {
            tri,
            by_weight: Vec::new(),
            frontier: Vec::new(),
        }
    }

    pub fn triangulation(&self) -> &'t Triangulation {
        self.tri
    }

    /// All arcs of weight exactly `w`, in canonical order.
    pub fn weight_class(&mut self, w: usize) -> &[Arc] {
        self.ensure(w);
        &self.by_weight[w]
    }

    /// All arcs of weight at most `max_weight`, in canonical order.
    pub fn arcs_up_to(&mut self, max_weight: usize) -> Vec<Arc> {
        self.ensure(max_weight);
        self.by_weight[..=max_weight].concat()
    }

    /// The first arc in canonical order, among arcs of weight at most
    /// `max_weight`, that satisfies `pred`.
    pub fn find<F: FnMut(&Arc) -> bool>(&mut self, max_weight: usize, mut pred: F) -> Option<Arc> {
        for w in 0..=max_weight {
            self.ensure(w);
            for arc in &self.by_weight[w] {
                if pred(arc) {
                    return Some(arc.clone());
                }
            }
        }
        None
    }

    fn ensure(&mut self, w: usize) {
        while self.by_weight.len() <= w {
            let next = self.by_weight.len();
            if next == 0 {
                let mut arcs: Vec<Arc> = self
                    .tri
                    .edge_ids()
                    .map(|e| Arc::edge_arc(self.tri, e))
                    .collect();
                arcs.sort();
                self.by_weight.push(arcs);
                continue;
            }
            if next == 1 {
                self.frontier = self
                    .tri
                    .triangles()
                    .flat_map(|t| (0..3u8).map(move |side| vec![SideRef { tri: t, side }]))
                    .collect();
            } else {
                let mut grown = Vec::with_capacity(self.frontier.len() * 2);
                for seq in &self.frontier {
                    let entered = self.tri.glued(*seq.last().unwrap());
                    for turn in [1u8, 2u8] {
                        let mut longer = seq.clone();
                        longer.push(SideRef {
                            tri: entered.tri,
                            side: (entered.side + turn) % 3,
                        });
                        grown.push(longer);
                    }
                }
                self.frontier = grown;
            }
            let mut class = BTreeSet::new();
            for seq in &self.frontier {
                let walk = Walk {
                    start_tri: seq[0].tri,
                    start_corner: seq[0].side,
                    exits: seq.clone(),
                    end_corner: self.tri.glued(*seq.last().unwrap()).side,
                };
                if let Ok(arc) = Arc::from_walk(self.tri, &walk) {
                    debug_assert_eq!(arc.weight(), next);
                    class.insert(arc);
                }
            }
            self.by_weight.push(class.into_iter().collect());
        }
    }
}

/// All arcs of weight at most `max_weight`, in canonical order.
pub fn arcs_up_to_weight(tri: &Triangulation, max_weight: usize) -> Vec<Arc> {
    ArcPool::new(tri).arcs_up_to(max_weight)
}

/// Result of searching for an arc avoiding a set of forbidden arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DisjointArcOutcome {
    /// The least-weight arc with the requested endpoints that is disjoint
    /// from every forbidden arc.
    Found(Arc),
    /// No such arc exists: the requested endpoints touch no common piece of
    /// the surface cut along the forbidden arcs.
    ProvablyAbsent,
    /// The weight budget ran out before a candidate appeared.  With distinct
    /// endpoints in a common piece an arc always exists, so a larger budget
    /// would find one.
    BudgetExhausted,
}

/// Search for the least-weight arc between the given marked points that is
/// disjoint from every arc in `forbidden` (which must be pairwise disjoint).
///
/// Such an arc must stay inside one piece of the surface cut along the
/// forbidden set, so when the endpoints touch no common piece the search
/// reports a certified absence instead of exhausting the budget.
pub fn find_disjoint_arc(
    tri: &Triangulation,
    forbidden: &[Arc],
    endpoints: (VertexId, VertexId),
    max_weight: usize,
) -> Result<DisjointArcOutcome, ArrangeError> {
    let cut = cut_along(tri, forbidden)?;
    let (p, q) = endpoints;
    let reachable = cut
        .pieces_touching(p)
        .iter()
        .any(|piece| cut.pieces_touching(q).contains(piece));
    if !reachable {
        return Ok(DisjointArcOutcome::ProvablyAbsent);
    }
    let want = if p <= q { [p, q] } else { [q, p] };
    let found = ArcPool::new(tri).find(max_weight, |a| {
        a.endpoints() == want && forbidden.iter().all(|f| overlay::disjoint(tri, a, f))
    });
    Ok(match found {
        Some(arc) => DisjointArcOutcome::Found(arc),
        None => DisjointArcOutcome::BudgetExhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::overlay;
    use crate::surface::VertexId;

    #[test]
    fn torus_weight_profile_matches_lattice_slopes() {
        // Arcs on the one-point torus are lattice directions (p, q); the one
        // of direction (p, q) crosses the three edges |p|-1, |q|-1 and
        // |p-q|-1 times.  Weights 0..3 therefore hold 3, 3, 0 and 6 arcs.
        let tri = Triangulation::standard(1, 1).unwrap();
        let mut pool = ArcPool::new(&tri);
        assert_eq!(pool.weight_class(0).len(), 3);
        assert_eq!(pool.weight_class(1).len(), 3);
        assert_eq!(pool.weight_class(2).len(), 0);
        assert_eq!(pool.weight_class(3).len(), 6);
    }

    #[test]
    fn three_point_sphere_has_six_arcs() {
        let tri = Triangulation::standard(0, 3).unwrap();
        let mut pool = ArcPool::new(&tri);
        let small = pool.arcs_up_to(2);
        let all = pool.arcs_up_to(9);
        assert_eq!(small.len(), 6);
        assert_eq!(all.len(), 6, "no new arcs appear at higher weight");
        let loops = all.iter().filter(|a| a.is_loop()).count();
        assert_eq!(loops, 3);
    }

    #[test]
    fn five_point_sphere_small_weights() {
        let tri = Triangulation::standard(0, 5).unwrap();
        let mut pool = ArcPool::new(&tri);
        assert_eq!(pool.weight_class(0).len(), 9);
        assert_eq!(pool.weight_class(1).len(), 9);
        for arc in pool.weight_class(1) {
            assert!(!arc.is_loop());
        }
    }

    #[test]
    fn find_scans_in_canonical_order() {
        let tri = Triangulation::standard(0, 5).unwrap();
        let mut pool = ArcPool::new(&tri);
        let want = [VertexId(1), VertexId(3)];
        let found = pool.find(6, |a| a.endpoints() == want).unwrap();
        // Marked points 1 and 3 are not joined by an edge; the least arc
        // between them crosses one edge.
        assert_eq!(found.weight(), 1);
        let e = Arc::edge_arc(&tri, tri.edge_of(SideRef::new(0, 1)));
        assert_eq!(overlay::intersection_number(&tri, &found, &e), 1);
    }

    fn edge_arc_between(tri: &Triangulation, u: u32, v: u32) -> Arc {
        let (e, _) = tri
            .edges()
            .find(|(_, rec)| rec.endpoints_sorted() == [VertexId(u), VertexId(v)])
            .expect("no edge between the marked points");
        Arc::edge_arc(tri, e)
    }

    #[test]
    fn disjoint_search_finds_small_arcs_without_obstacles() {
        let tri = Triangulation::standard(0, 5).unwrap();
        for p in 0..5u32 {
            for q in (p + 1)..5 {
                let out =
                    find_disjoint_arc(&tri, &[], (VertexId(p), VertexId(q)), 6).unwrap();
                match out {
                    DisjointArcOutcome::Found(a) => {
                        assert_eq!(a.endpoints(), [VertexId(p), VertexId(q)]);
                        assert!(a.weight() <= 2);
                    }
                    other => panic!("expected an arc for ({p}, {q}), got {other:?}"),
                }
            }
        }
    }

    #[test]
    fn disjoint_search_certifies_jordan_separation() {
        let tri = Triangulation::standard(0, 4).unwrap();
        let a = edge_arc_between(&tri, 0, 1);
        let b = ArcPool::new(&tri)
            .find(6, |x| {
                *x != a
                    && x.endpoints() == [VertexId(0), VertexId(1)]
                    && overlay::disjoint(&tri, x, &a)
            })
            .expect("a second arc joining 0 and 1");
        // The pair fences marked points 2 and 3 apart.
        let out = find_disjoint_arc(
            &tri,
            &[a.clone(), b.clone()],
            (VertexId(2), VertexId(3)),
            8,
        )
        .unwrap();
        assert_eq!(out, DisjointArcOutcome::ProvablyAbsent);
        // Endpoints on the fence itself still reach both sides.
        let out = find_disjoint_arc(&tri, &[a.clone(), b], (VertexId(0), VertexId(2)), 8).unwrap();
        assert!(matches!(out, DisjointArcOutcome::Found(_)));
    }

    #[test]
    fn disjoint_search_threads_between_handle_loops() {
        let tri = Triangulation::standard(1, 4).unwrap();
        let a = Arc::edge_arc(&tri, tri.edge_of(SideRef::new(0, 2)));
        let b = Arc::edge_arc(&tri, tri.edge_of(SideRef::new(0, 0)));
        let out = find_disjoint_arc(
            &tri,
            &[a.clone(), b.clone()],
            (VertexId(1), VertexId(2)),
            8,
        )
        .unwrap();
        match out {
            DisjointArcOutcome::Found(c) => {
                assert!(overlay::disjoint(&tri, &c, &a));
                assert!(overlay::disjoint(&tri, &c, &b));
                assert_eq!(c.endpoints(), [VertexId(1), VertexId(2)]);
            }
            other => panic!("expected an arc threading the cut torus, got {other:?}"),
        }
    }
}
