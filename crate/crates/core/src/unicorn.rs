//! Unicorn arcs: interpolating sequences between two crossing arcs.
//!
//! Fix an endpoint `v` of an arc `alpha` and an endpoint `u` of an arc
//! `beta`, drawn with the fewest possible crossings.  Every crossing point
//! `p` splits off an initial segment of `alpha` (from `v` to `p`) and of
//! `beta` (from `u` to `p`); their union is an arc from `v` to `u` whenever
//! it is embedded, which happens exactly when no other crossing lies
//! strictly earlier along both segments.  Listing those spliced arcs by
//! decreasing length of their `alpha`-segment — equivalently, increasing
//! length of their `beta`-segment — and sandwiching the list between
//! `alpha` and `beta` yields a sequence in which any two consecutive arcs
//! are disjoint.  [`unicorn_arcs`] builds that sequence.
//!
//! Loops are rejected as sequence ends: the construction needs each chosen
//! basepoint to single out one end of its arc.

use std::cmp::Ordering;

use thiserror::Error;

use crate::arc::{reversed_exits, Arc, ArcError, ArcForm, Walk};
use crate::overlay;
use crate::surface::{EdgeId, SideRef, Triangulation, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UnicornError {
    /// The chosen basepoint is not an endpoint of its arc.
    #[error("marked point {0:?} is not an endpoint of the arc")]
    NotAnEndpoint(VertexId),
    /// The arc is a loop, so a basepoint does not single out one of its ends.
    #[error("a loop cannot serve as an end of a unicorn sequence")]
    AmbiguousBasepoint,
    /// A spliced walk failed to normalize to an embedded essential arc.
    /// This indicates an internal inconsistency and should never surface.
    #[error("spliced walk failed to normalize: {0}")]
    BadSplice(#[from] ArcError),
    /// No element of either flanking sequence is disjoint from the arc.
    #[error("no element of either sequence is disjoint from the given arc")]
    NoWitness,
}

/// The crossing at which an interior element switches arcs, identified by
/// its rank along each arc counted from that arc's basepoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pivot {
    /// 0-based rank of the crossing along the source arc, from its basepoint.
    pub along_source: usize,
    /// 0-based rank of the crossing along the target arc, from its basepoint.
    pub along_target: usize,
}

/// The unicorn sequence between two arcs with chosen basepoints.
///
/// The first element is the source arc and the last is the target arc;
/// interior element `k` switches arcs at `pivots()[k - 1]`.  Pivot ranks
/// strictly decrease along the source and strictly increase along the
/// target, and any two consecutive elements are disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnicornSequence {
    source: (Arc, VertexId),
    target: (Arc, VertexId),
    elements: Vec<Arc>,
    pivots: Vec<Pivot>,
}

impl UnicornSequence {
    pub fn source(&self) -> (&Arc, VertexId) {
        (&self.source.0, self.source.1)
    }

    pub fn target(&self) -> (&Arc, VertexId) {
        (&self.target.0, self.target.1)
    }

    pub fn elements(&self) -> &[Arc] {
        &self.elements
    }

    /// Switch points of the interior elements, in element order.
    pub fn pivots(&self) -> &[Pivot] {
        &self.pivots
    }

    /// Number of elements, counting the source and target arcs.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Check the defining properties: the sequence runs from the source arc
    /// to the target arc and consecutive elements are disjoint.
    pub fn verify(&self, tri: &Triangulation) -> bool {
        self.elements.first() == Some(&self.source.0)
            && self.elements.last() == Some(&self.target.0)
            && self
                .elements
                .windows(2)
                .all(|w| overlay::disjoint(tri, &w[0], &w[1]))
    }
}

/// The arc's taut walk, oriented to start at `v`.
fn walk_from(tri: &Triangulation, arc: &Arc, v: VertexId) -> Result<Walk, UnicornError> {
    if arc.is_loop() {
        return Err(if arc.endpoints()[0] == v {
            UnicornError::AmbiguousBasepoint
        } else {
            UnicornError::NotAnEndpoint(v)
        });
    }
    if !arc.endpoints().contains(&v) {
        return Err(UnicornError::NotAnEndpoint(v));
    }
    let walk = arc.to_walk(tri);
    if tri.corner_vertex(walk.start_tri, walk.start_corner) == v {
        Ok(walk)
    } else {
        Ok(walk.reversed(tri))
    }
}

/// The corner of `side` whose marked point is `x`.
fn corner_at(tri: &Triangulation, side: SideRef, x: VertexId) -> u8 {
    if tri.corner_vertex(side.tri, side.from_corner()) == x {
        side.from_corner()
    } else {
        debug_assert_eq!(tri.corner_vertex(side.tri, side.to_corner()), x);
        side.to_corner()
    }
}

/// Ranks of the given crossing steps of a path over edge `e`, counted along
/// `e` from its endpoint `from`.
fn ranks_along_edge(
    tri: &Triangulation,
    exits: &[SideRef],
    steps: &[usize],
    e: EdgeId,
    from: VertexId,
) -> Vec<usize> {
    let rec = tri.edge(e);
    let side = rec.sides[0];
    let mut order: Vec<usize> = (0..steps.len()).collect();
    order.sort_by(|&i, &j| {
        if i == j {
            return Ordering::Equal;
        }
        overlay::strand_cmp(tri, exits, steps[i], exits, steps[j], side)
            .expect("distinct strands of an embedded arc are strictly ordered")
    });
    // `strand_cmp` orders along `sides[0]`, whose direction runs from
    // `endpoints[0]` to `endpoints[1]`.
    if from == rec.endpoints[1] {
        order.reverse();
    } else {
        debug_assert_eq!(from, rec.endpoints[0]);
    }
    let mut ranks = vec![0usize; steps.len()];
    for (rank, &i) in order.iter().enumerate() {
        ranks[i] = rank;
    }
    ranks
}

/// Crossing steps of `exits` over edge `e`, in path order.
fn crossing_steps(tri: &Triangulation, exits: &[SideRef], e: EdgeId) -> Vec<usize> {
    exits
        .iter()
        .enumerate()
        .filter(|(_, s)| tri.edge_of(**s) == e)
        .map(|(k, _)| k)
        .collect()
}

/// Build the unicorn sequence from `alpha` (based at its endpoint `v`) to
/// `beta` (based at its endpoint `u`).
///
/// Disjoint arcs give the two-element sequence with no pivots.  Loops are
/// rejected.  The arcs may share endpoints; only transverse crossings
/// contribute pivots.
pub fn unicorn_arcs(
    tri: &Triangulation,
    alpha: &Arc,
    v: VertexId,
    beta: &Arc,
    u: VertexId,
) -> Result<UnicornSequence, UnicornError> {
    let wa = walk_from(tri, alpha, v)?;
    let wb = walk_from(tri, beta, u)?;

    // Every crossing, with its rank along each arc from the basepoints and
    // the walk that follows `alpha` to the crossing and `beta` back to `u`.
    let mut raw: Vec<(usize, usize, Walk)> = Vec::new();
    match (alpha.form(), beta.form()) {
        _ if alpha == beta => {}
        (ArcForm::Edge(_), ArcForm::Edge(_)) => {}
        (ArcForm::Path(_), ArcForm::Path(_)) => {
            for cp in overlay::crossing_points(tri, &wa.exits, &wb.exits) {
                let mut exits = wa.exits[..cp.a_chord].to_vec();
                exits.extend(reversed_exits(tri, &wb.exits[..cp.b_chord]));
                let walk = Walk {
                    start_tri: wa.start_tri,
                    start_corner: wa.start_corner,
                    exits,
                    end_corner: wb.start_corner,
                };
                raw.push((cp.a_rank, cp.b_rank, walk));
            }
        }
        (ArcForm::Path(_), ArcForm::Edge(e)) => {
            // The target is a single edge: switching there means stopping
            // at the crossed copy of `e` and ending at `u`'s corner.
            let steps = crossing_steps(tri, &wa.exits, *e);
            let target_ranks = ranks_along_edge(tri, &wa.exits, &steps, *e, u);
            for (i, &k) in steps.iter().enumerate() {
                let walk = Walk {
                    start_tri: wa.start_tri,
                    start_corner: wa.start_corner,
                    exits: wa.exits[..k].to_vec(),
                    end_corner: corner_at(tri, wa.exits[k], u),
                };
                raw.push((i, target_ranks[i], walk));
            }
        }
        (ArcForm::Edge(e), ArcForm::Path(_)) => {
            let steps = crossing_steps(tri, &wb.exits, *e);
            let source_ranks = ranks_along_edge(tri, &wb.exits, &steps, *e, v);
            for (j, &k) in steps.iter().enumerate() {
                let walk = Walk {
                    start_tri: wb.exits[k].tri,
                    start_corner: corner_at(tri, wb.exits[k], v),
                    exits: reversed_exits(tri, &wb.exits[..k]),
                    end_corner: wb.start_corner,
                };
                raw.push((source_ranks[j], j, walk));
            }
        }
    }

    // A crossing yields an embedded union exactly when no other crossing
    // lies strictly earlier along both segments.  On the surviving set the
    // two rank orders are exactly opposite, so sorting by decreasing source
    // rank sorts by increasing target rank.
    let mut picked: Vec<&(usize, usize, Walk)> = raw
        .iter()
        .filter(|p| !raw.iter().any(|q| q.0 < p.0 && q.1 < p.1))
        .collect();
    picked.sort_by(|x, y| y.0.cmp(&x.0));

    let mut elements = Vec::with_capacity(picked.len() + 2);
    let mut pivots = Vec::with_capacity(picked.len());
    elements.push(alpha.clone());
    for (along_source, along_target, walk) in picked {
        elements.push(Arc::from_walk(tri, walk)?);
        pivots.push(Pivot {
            along_source: *along_source,
            along_target: *along_target,
        });
    }
    elements.push(beta.clone());

    Ok(UnicornSequence {
        source: (alpha.clone(), v),
        target: (beta.clone(), u),
        elements,
        pivots,
    })
}

/// For an element `c` of the sequence from `alpha` to `beta`, some element
/// of the sequence from `alpha` to `gamma` or from `gamma` to `beta` is
/// disjoint from `c`; return the first one found.
pub fn unicorn_triangle_witness(
    tri: &Triangulation,
    c: &Arc,
    alpha: &Arc,
    v: VertexId,
    beta: &Arc,
    u: VertexId,
    gamma: &Arc,
    w: VertexId,
) -> Result<Arc, UnicornError> {
    let first = unicorn_arcs(tri, alpha, v, gamma, w)?;
    let second = unicorn_arcs(tri, gamma, w, beta, u)?;
    first
        .elements
        .into_iter()
        .chain(second.elements)
        .find(|x| overlay::disjoint(tri, c, x))
        .ok_or(UnicornError::NoWitness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::ArcPool;
    use crate::overlay::intersection_number;
    use crate::surface::TriId;

    fn sphere5() -> Triangulation {
        Triangulation::standard(0, 5).unwrap()
    }

    fn edge_arc_between(tri: &Triangulation, u: u32, v: u32) -> Arc {
        let (e, _) = tri
            .edges()
            .find(|(_, rec)| rec.endpoints_sorted() == [VertexId(u), VertexId(v)])
            .expect("no edge between the marked points");
        Arc::edge_arc(tri, e)
    }

    /// The weight-1 arc from marked point 1 to 3 passing over point 2.
    fn over_arc(tri: &Triangulation) -> Arc {
        Arc::from_walk(
            tri,
            &Walk {
                start_tri: TriId(0),
                start_corner: 1,
                exits: vec![SideRef::new(0, 1)],
                end_corner: 2,
            },
        )
        .unwrap()
    }

    #[test]
    fn disjoint_arcs_give_the_two_element_sequence() {
        let tri = sphere5();
        let a = edge_arc_between(&tri, 0, 1);
        let b = edge_arc_between(&tri, 2, 3);
        let seq = unicorn_arcs(&tri, &a, VertexId(0), &b, VertexId(3)).unwrap();
        assert_eq!(seq.elements(), &[a.clone(), b.clone()]);
        assert!(seq.pivots().is_empty());
        assert!(seq.verify(&tri));
        assert_eq!(
            unicorn_arcs(&tri, &a, VertexId(4), &b, VertexId(3)).unwrap_err(),
            UnicornError::NotAnEndpoint(VertexId(4))
        );
    }

    #[test]
    fn loops_cannot_serve_as_sequence_ends() {
        let tri = Triangulation::standard(1, 1).unwrap();
        let a = Arc::edge_arc(&tri, EdgeId(0));
        let b = Arc::edge_arc(&tri, EdgeId(2));
        assert_eq!(
            unicorn_arcs(&tri, &a, VertexId(0), &b, VertexId(0)).unwrap_err(),
            UnicornError::AmbiguousBasepoint
        );
    }

    #[test]
    fn edge_target_switches_inside_the_crossing_triangle() {
        let tri = sphere5();
        let alpha = over_arc(&tri);
        let beta = edge_arc_between(&tri, 0, 2);
        assert_eq!(intersection_number(&tri, &alpha, &beta), 1);

        let seq = unicorn_arcs(&tri, &alpha, VertexId(1), &beta, VertexId(0)).unwrap();
        assert_eq!(seq.len(), 3);
        assert_eq!(seq.elements()[1], edge_arc_between(&tri, 0, 1));
        assert_eq!(seq.pivots(), &[Pivot { along_source: 0, along_target: 0 }]);
        assert!(seq.verify(&tri));

        let other = unicorn_arcs(&tri, &alpha, VertexId(3), &beta, VertexId(2)).unwrap();
        assert_eq!(other.elements()[1], edge_arc_between(&tri, 2, 3));

        // The mirrored call exercises the edge-source branch and must list
        // the same arcs backwards.
        let rev = unicorn_arcs(&tri, &beta, VertexId(0), &alpha, VertexId(1)).unwrap();
        let mut back = rev.elements().to_vec();
        back.reverse();
        assert_eq!(seq.elements(), &back[..]);
    }

    #[test]
    fn far_basepoints_pick_up_a_step_of_each_arc() {
        let tri = sphere5();
        let alpha = over_arc(&tri);
        // The weight-1 arc from 0 to 4 passing under point 1.
        let beta = Arc::from_walk(
            &tri,
            &Walk {
                start_tri: TriId(0),
                start_corner: 0,
                exits: vec![SideRef::new(0, 0)],
                end_corner: 2,
            },
        )
        .unwrap();
        assert_eq!(beta.endpoints(), [VertexId(0), VertexId(4)]);
        assert_eq!(intersection_number(&tri, &alpha, &beta), 1);

        // Basepoints next to the crossing: the splice stays in one triangle.
        let near = unicorn_arcs(&tri, &alpha, VertexId(1), &beta, VertexId(0)).unwrap();
        assert_eq!(near.len(), 3);
        assert_eq!(near.elements()[1], edge_arc_between(&tri, 0, 1));

        // Far basepoints: the splice keeps one step of each arc.
        let far = unicorn_arcs(&tri, &alpha, VertexId(3), &beta, VertexId(4)).unwrap();
        assert_eq!(far.len(), 3);
        assert_eq!(far.elements()[1].weight(), 2);
        assert_eq!(far.elements()[1].endpoints(), [VertexId(3), VertexId(4)]);
        assert!(far.verify(&tri));
    }

    #[test]
    fn crossing_pairs_interpolate_with_disjoint_consecutive_elements() {
        let tri = sphere5();
        let mut pool = ArcPool::new(&tri);
        let arcs: Vec<Arc> = pool
            .arcs_up_to(3)
            .into_iter()
            .filter(|a| !a.is_loop())
            .collect();
        let mut checked = 0usize;
        for a in &arcs {
            for b in &arcs {
                if intersection_number(&tri, a, b) == 0 {
                    continue;
                }
                let v = a.endpoints()[0];
                let u = b.endpoints()[1];
                let seq = unicorn_arcs(&tri, a, v, b, u).unwrap();
                assert!(seq.len() >= 3);
                assert!(seq.verify(&tri), "broken sequence for {a:?} / {b:?}");
                for w in seq.pivots().windows(2) {
                    assert!(w[0].along_source > w[1].along_source);
                    assert!(w[0].along_target < w[1].along_target);
                }
                let rev = unicorn_arcs(&tri, b, u, a, v).unwrap();
                let mut back = rev.elements().to_vec();
                back.reverse();
                assert_eq!(seq.elements(), &back[..]);
                checked += 1;
            }
        }
        assert!(checked > 100, "only {checked} crossing pairs exercised");
    }

    #[test]
    fn every_element_has_a_disjoint_witness_through_a_third_arc() {
        let tri = sphere5();
        let mut pool = ArcPool::new(&tri);
        let arcs: Vec<Arc> = pool
            .arcs_up_to(2)
            .into_iter()
            .filter(|a| !a.is_loop())
            .collect();
        let mut checked = 0usize;
        for (i, a) in arcs.iter().enumerate() {
            for (j, b) in arcs.iter().enumerate().skip(i + 1) {
                if intersection_number(&tri, a, b) == 0 {
                    continue;
                }
                let g = &arcs[(i + j) % arcs.len()];
                if g.is_loop() {
                    continue;
                }
                let (v, u, w) = (a.endpoints()[0], b.endpoints()[1], g.endpoints()[0]);
                let seq = unicorn_arcs(&tri, a, v, b, u).unwrap();
                for c in seq.elements() {
                    let witness = unicorn_triangle_witness(&tri, c, a, v, b, u, g, w).unwrap();
                    assert!(overlay::disjoint(&tri, c, &witness));
                }
                checked += 1;
                if checked >= 60 {
                    return;
                }
            }
        }
        panic!("too few crossing pairs: {checked}");
    }
}
