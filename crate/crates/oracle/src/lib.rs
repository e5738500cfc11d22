//! An independent minimal-crossing-number computation for arcs on a
//! triangulated surface, used as a cross-check for the combinatorial count
//! in `arcx-core`.
//!
//! The method realizes every triangle as the ideal hyperbolic triangle with
//! vertices 0, 1, ∞ in the upper half-plane and glues neighbours with zero
//! shear.  Developing a reduced walk across the triangulation then stays in
//! integer homogeneous coordinates: the two corners of the crossed edge keep
//! their values and the new opposite corner is the harmonic conjugate of the
//! old one, so every developed vertex is a "Farey neighbour" (determinant ±1)
//! of its edge partners.  The geodesic representative of an arc runs between
//! its developed endpoint values and passes through exactly the triangles of
//! its reduced walk, and two distinct geodesics realize the minimal crossing
//! number of their classes.  The count is therefore a sum over pairs of
//! visits to a common triangle: develop both geodesics in that triangle's
//! chart, decide whether they cross (endpoint interleaving on the boundary
//! circle, a sign of a determinant product), and locate the crossing against
//! the fixed region 0 ≤ x ≤ 1, x² + y² ≥ x with exact rational arithmetic.
//! A crossing in the interior scores two, a crossing exactly on an edge is
//! seen from both neighbouring triangles and scores one from each side; half
//! the total is the crossing number.

use num::rational::Ratio;
use num::Zero;

use arcx_core::arc::{Arc, ArcForm, Walk};
use arcx_core::surface::{EdgeId, SideRef, TriId, Triangulation};

type Q = Ratio<i128>;

/// A point of the boundary circle in homogeneous integer coordinates:
/// `(p, q)` is the real number `p / q`, and `(1, 0)` is the point at
/// infinity.  Scaling by a nonzero constant gives the same point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pt(i128, i128);

fn det(a: Pt, b: Pt) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

/// The harmonic conjugate of `z` with respect to `a` and `b`: the image of
/// `z` under the hyperbolic reflection across the geodesic `(a, b)`.  When
/// `z` is the corner opposite a triangle side this is where the neighbouring
/// triangle's far corner develops under a zero-shear gluing.
fn harmonic(z: Pt, a: Pt, b: Pt) -> Pt {
    let za = det(z, a);
    let zb = det(z, b);
    Pt(zb * a.0 + za * b.0, zb * a.1 + za * b.1)
}

/// Corner values of one developed triangle, indexed by corner.
type Chart = [Pt; 3];

const BASE_CHART: Chart = [Pt(0, 1), Pt(1, 1), Pt(1, 0)];

/// Develop across side `s` of the chart's triangle; returns the chart of the
/// glued triangle.  The two shared corners keep their values (matched in
/// reverse, since gluings reverse the canonical side direction) and the new
/// opposite corner is the harmonic conjugate of the old one.
fn cross(tri: &Triangulation, chart: &Chart, s: SideRef) -> (TriId, Chart) {
    let t = tri.glued(s);
    let mut next = [Pt(0, 0); 3];
    next[t.from_corner() as usize] = chart[s.to_corner() as usize];
    next[t.to_corner() as usize] = chart[s.from_corner() as usize];
    next[t.side as usize] = harmonic(
        chart[s.side as usize],
        chart[s.from_corner() as usize],
        chart[s.to_corner() as usize],
    );
    (t.tri, next)
}

/// The development of one walk: the triangles it visits, the chart of each
/// visit (all in the coordinates of the first visit), and the two endpoint
/// values.
struct Developed {
    visits: Vec<(TriId, Chart)>,
    start: Pt,
    end: Pt,
}

impl Developed {
    fn new(tri: &Triangulation, walk: &Walk) -> Developed {
        let mut visits = vec![(walk.start_tri, BASE_CHART)];
        for &s in &walk.exits {
            let (_, here) = *visits.last().unwrap();
            let (t, chart) = cross(tri, &here, s);
            visits.push((t, chart));
        }
        let start = visits[0].1[walk.start_corner as usize];
        let end = visits.last().unwrap().1[walk.end_corner as usize];
        Developed { visits, start, end }
    }

    /// Endpoint values rewritten in the standard chart of visit `k`, i.e.
    /// after the Möbius map sending that visit's corners to 0, 1, ∞.
    fn endpoints_at(&self, k: usize) -> (Pt, Pt) {
        let [v0, v1, v2] = self.visits[k].1;
        let d01 = det(v0, v1);
        let d12 = det(v1, v2);
        debug_assert!(d01.abs() == 1 && d12.abs() == 1);
        let map = |p: Pt| {
            Pt(
                (v0.0 * p.1 - v0.1 * p.0) * d01,
                (v2.1 * p.0 - v2.0 * p.1) * d12,
            )
        };
        (map(self.start), map(self.end))
    }
}

/// Doubled crossing score of the geodesics `(a1, a2)` and `(b1, b2)` inside
/// the region of the ideal triangle (0, 1, ∞): 2 for a crossing in the open
/// region, 1 for a crossing on its boundary, 0 otherwise.
fn crossing_score(a1: Pt, a2: Pt, b1: Pt, b2: Pt) -> u64 {
    // The endpoint pairs must interleave on the boundary circle for the
    // geodesics to cross at all; a zero factor is a shared ideal endpoint,
    // where distinct geodesics only meet asymptotically.
    let linked = det(a1, b1)
        .checked_mul(det(a1, b2))
        .and_then(|p| p.checked_mul(det(a2, b1)))
        .and_then(|p| p.checked_mul(det(a2, b2)))
        .expect("determinant products stay within i128");
    if linked >= 0 {
        return 0;
    }

    // The geodesic with boundary values p, q is the solution set of
    // C·(x² + y²) + L·x + K = 0, the circle with diameter (p, q), or the
    // vertical line x = p when q is infinite.
    let form = |p: Pt, q: Pt| -> (i128, i128, i128) { (p.1 * q.1, -(p.1 * q.0 + p.0 * q.1), p.0 * q.0) };
    let (ac, al, ak) = form(a1, a2);
    let (bc, bl, bk) = form(b1, b2);

    // Eliminate x² + y² between the two circle equations to get x, then
    // substitute back for x² + y².
    let denom = al * bc - bl * ac;
    assert!(denom != 0, "linked geodesics have distinct centers");
    let x = Q::new(bk * ac - ak * bc, denom);
    let s = if ac != 0 {
        -(Q::from_integer(al) * x + Q::from_integer(ak)) / Q::from_integer(ac)
    } else {
        -(Q::from_integer(bl) * x + Q::from_integer(bk)) / Q::from_integer(bc)
    };
    debug_assert!(s.clone() - x.clone() * x.clone() > Q::zero(), "crossings lie above the boundary");

    // Signed side values against the region bounds x = 0, x = 1, and the
    // circle x² + y² = x; nonnegative means inside or on the bound.
    let sides = [x.clone(), Q::from_integer(1) - x.clone(), s - x];
    if sides.iter().any(|v| *v < Q::zero()) {
        return 0;
    }
    let on_boundary = sides.iter().filter(|v| v.is_zero()).count();
    debug_assert!(on_boundary <= 1, "crossings cannot sit on an ideal vertex");
    match on_boundary {
        0 => 2,
        _ => 1,
    }
}

/// How often a reduced walk crosses a given edge of the triangulation.
fn walk_crossings_over(tri: &Triangulation, walk: &Walk, e: EdgeId) -> u64 {
    walk.exits.iter().filter(|&&s| tri.edge_of(s) == e).count() as u64
}

/// The minimal number of transversal crossings between representatives of
/// the two arc classes, computed by exact geodesic development.
pub fn intersection_number(tri: &Triangulation, a: &Arc, b: &Arc) -> u64 {
    if a == b {
        return 0;
    }
    match (a.form(), b.form()) {
        (ArcForm::Edge(_), ArcForm::Edge(_)) => 0,
        (ArcForm::Edge(e), ArcForm::Path(_)) => walk_crossings_over(tri, &b.to_walk(tri), *e),
        (ArcForm::Path(_), ArcForm::Edge(e)) => walk_crossings_over(tri, &a.to_walk(tri), *e),
        (ArcForm::Path(_), ArcForm::Path(_)) => {
            let da = Developed::new(tri, &a.to_walk(tri));
            let db = Developed::new(tri, &b.to_walk(tri));
            let mut doubled = 0u64;
            for (k, &(t, _)) in da.visits.iter().enumerate() {
                for (l, &(u, _)) in db.visits.iter().enumerate() {
                    if t != u {
                        continue;
                    }
                    let (a1, a2) = da.endpoints_at(k);
                    let (b1, b2) = db.endpoints_at(l);
                    doubled += crossing_score(a1, a2, b1, b2);
                }
            }
            assert!(doubled % 2 == 0, "every crossing is seen from both sides");
            doubled / 2
        }
    }
}

/// Whether the two arc classes have disjoint representatives.
pub fn disjoint(tri: &Triangulation, a: &Arc, b: &Arc) -> bool {
    a == b || intersection_number(tri, a, b) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use arcx_core::surface::VertexId;

    fn sphere(n: u32) -> Triangulation {
        Triangulation::standard(0, n).unwrap()
    }

    fn edge_between(tri: &Triangulation, p: u32, q: u32) -> Arc {
        let (e, _) = tri
            .edges()
            .find(|(_, rec)| rec.endpoints_sorted() == [VertexId(p.min(q)), VertexId(p.max(q))])
            .unwrap();
        Arc::edge_arc(tri, e)
    }

    /// The arc from marked point 1 to 3 passing between 0 and 2 on the
    /// five-point sphere: one exit, across the edge {0, 2}.
    fn over_two(tri: &Triangulation) -> Arc {
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
    fn harmonic_conjugates_follow_the_farey_pattern() {
        // Reflecting -1 across (0, ∞) gives 1; reflecting ∞ across (0, 1)
        // gives 1/2; reflecting 0 across (1, ∞) gives 2.
        let h = harmonic(Pt(-1, 1), Pt(0, 1), Pt(1, 0));
        assert_eq!(h.0 * 1 - h.1 * 1, 0, "expected the point 1, got {h:?}");
        let h = harmonic(Pt(1, 0), Pt(0, 1), Pt(1, 1));
        assert_eq!(h.0 * 2 - h.1 * 1, 0, "expected the point 1/2, got {h:?}");
        let h = harmonic(Pt(0, 1), Pt(1, 1), Pt(1, 0));
        assert_eq!(h.0 * 1 - h.1 * 2, 0, "expected the point 2, got {h:?}");
    }

    #[test]
    fn edge_arcs_never_cross_each_other() {
        let tri = sphere(5);
        let arcs: Vec<Arc> = tri.edges().map(|(e, _)| Arc::edge_arc(&tri, e)).collect();
        for a in &arcs {
            for b in &arcs {
                assert_eq!(intersection_number(&tri, a, b), 0);
            }
        }
    }

    #[test]
    fn a_single_detour_crosses_exactly_the_edge_it_steps_over() {
        let tri = sphere(5);
        let alpha = over_two(&tri);
        assert_eq!(alpha.endpoints(), [VertexId(1), VertexId(3)]);
        assert_eq!(intersection_number(&tri, &alpha, &edge_between(&tri, 0, 2)), 1);
        assert_eq!(intersection_number(&tri, &edge_between(&tri, 0, 2), &alpha), 1);
        assert_eq!(intersection_number(&tri, &alpha, &edge_between(&tri, 0, 3)), 0);
        assert_eq!(intersection_number(&tri, &alpha, &edge_between(&tri, 1, 2)), 0);
    }

    #[test]
    fn interleaved_detours_cross_once() {
        // On the five-point sphere, the arc 1→3 passing between 0 and 2 and
        // the arc 2→4 passing between 0 and 3 must cross exactly once: the
        // first fences 2 off from 4 on one side.
        let tri = sphere(5);
        let alpha = over_two(&tri);
        let beta = Arc::from_walk(
            &tri,
            &Walk {
                start_tri: TriId(1),
                start_corner: 1,
                exits: vec![SideRef::new(1, 1)],
                end_corner: 2,
            },
        )
        .unwrap();
        assert_eq!(beta.endpoints(), [VertexId(2), VertexId(4)]);
        assert_eq!(intersection_number(&tri, &alpha, &beta), 1);
        assert_eq!(intersection_number(&tri, &beta, &alpha), 1);
    }

    #[test]
    fn parallel_detours_with_shared_endpoints_do_not_cross() {
        // On the five-point sphere there are exactly three one-step arcs
        // from 1 to 3: above 2, below 2, and around behind 4.  Each pair
        // can be drawn disjointly, since none crosses the fence the others
        // cobound with the chain of hull edges from 1 to 3.
        let tri = sphere(5);
        let mut pool = arcx_core::enumerate::ArcPool::new(&tri);
        let detours: Vec<Arc> = pool
            .arcs_up_to(1)
            .iter()
            .filter(|a| a.weight() == 1 && a.endpoints() == [VertexId(1), VertexId(3)])
            .cloned()
            .collect();
        assert_eq!(detours.len(), 3, "expected over, under, and around detours");
        for a in &detours {
            for b in &detours {
                assert_eq!(intersection_number(&tri, a, b), 0);
            }
        }
    }

    #[test]
    fn development_works_on_positive_genus() {
        let tri = arcx_core::surface::Triangulation::standard(1, 4).unwrap();
        let arcs: Vec<Arc> = tri.edges().map(|(e, _)| Arc::edge_arc(&tri, e)).collect();
        for a in &arcs {
            for b in &arcs {
                assert_eq!(intersection_number(&tri, a, b), 0);
            }
        }
    }
}
