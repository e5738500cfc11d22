//! Geometric intersection numbers for taut arcs.
//!
//! Inside every triangle a taut arc appears as straight "chords" whose ends
//! sit on the triangle's sides (where the arc crosses an edge) or at its
//! corners (where the arc ends).  Two arcs cross exactly where a chord of one
//! interleaves with a chord of the other around the triangle boundary, so the
//! intersection number is a sum of per-triangle chord-pair tests.
//!
//! When chords of both arcs meet the same side, the test needs the order of
//! the two crossing points along that side.  The order is found by walking
//! both strands away from the edge in parallel, on both of its sides, until
//! they diverge: entering a triangle through side `s`, a strand continues to
//! side `s+1`, ends at the opposite corner `s`, or continues to side `s+2`,
//! and these three continuations occupy decreasing positions along `s`.  The
//! divergence closer to the edge decides; the resulting pairwise orders
//! reproduce the orders of the arcs drawn with all removable crossings
//! undone, so the chord-pair count equals the geometric intersection number.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::arc::{Arc, ArcForm};
use crate::surface::{SideRef, TriId, Triangulation};

/// One straight piece of an arc inside a triangle.
///
/// `ends[0]` is where the piece begins in the arc's direction (a corner for
/// the first chord, otherwise the entry crossing); `ends[1]` is where it ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Chord {
    pub tri: TriId,
    pub ends: [ChordEnd; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ChordEnd {
    /// The arc ends at this corner of the triangle.
    Corner(u8),
    /// The arc crosses the side with this local index; `idx` is the crossing
    /// index along the arc's step sequence.
    Strand { slot: u8, idx: usize },
}

/// Splits a directed step sequence into its per-triangle chords.
/// A sequence of `m` exits yields `m + 1` chords.
pub(crate) fn path_chords(tri: &Triangulation, exits: &[SideRef]) -> Vec<Chord> {
    assert!(!exits.is_empty());
    let mut chords = Vec::with_capacity(exits.len() + 1);
    chords.push(Chord {
        tri: exits[0].tri,
        ends: [
            ChordEnd::Corner(exits[0].side),
            ChordEnd::Strand {
                slot: exits[0].side,
                idx: 0,
            },
        ],
    });
    for k in 1..exits.len() {
        let entry = tri.glued(exits[k - 1]);
        debug_assert_eq!(entry.tri, exits[k].tri);
        chords.push(Chord {
            tri: exits[k].tri,
            ends: [
                ChordEnd::Strand {
                    slot: entry.side,
                    idx: k - 1,
                },
                ChordEnd::Strand {
                    slot: exits[k].side,
                    idx: k,
                },
            ],
        });
    }
    let entry = tri.glued(*exits.last().unwrap());
    chords.push(Chord {
        tri: entry.tri,
        ends: [
            ChordEnd::Strand {
                slot: entry.side,
                idx: exits.len() - 1,
            },
            ChordEnd::Corner(entry.side),
        ],
    });
    chords
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RayEvent {
    Exit(SideRef),
    End,
}

/// Walks one strand away from an edge, reporting the side it exits each
/// triangle through, and finally that it ends at a corner.
struct Ray<'a> {
    steps: &'a [SideRef],
    forward: bool,
    cursor: isize,
}

impl<'a> Ray<'a> {
    fn next(&mut self, tri: &Triangulation) -> RayEvent {
        if self.forward {
            if (self.cursor as usize) < self.steps.len() {
                let s = self.steps[self.cursor as usize];
                self.cursor += 1;
                RayEvent::Exit(s)
            } else {
                RayEvent::End
            }
        } else if self.cursor >= 0 {
            let s = tri.glued(self.steps[self.cursor as usize]);
            self.cursor -= 1;
            RayEvent::Exit(s)
        } else {
            RayEvent::End
        }
    }
}

/// The ray of crossing `idx` that proceeds into `side`'s triangle through
/// `side`.
fn ray_into<'a>(tri: &Triangulation, steps: &'a [SideRef], idx: usize, side: SideRef) -> Ray<'a> {
    if steps[idx] == side {
        Ray {
            steps,
            forward: false,
            cursor: idx as isize - 1,
        }
    } else {
        debug_assert_eq!(tri.glued(steps[idx]), side);
        Ray {
            steps,
            forward: true,
            cursor: idx as isize + 1,
        }
    }
}

enum RaysResult {
    /// The strands run parallel until both end.
    Together,
    /// The strands diverge after `depth` shared triangles; `ord` is the order
    /// of the first strand relative to the second along the side they entered
    /// the divergence triangle through (equivalently, along the original
    /// side, since parallel transport preserves entry-side order).
    Diverge { ord: Ordering, depth: u32 },
}

fn compare_rays(tri: &Triangulation, mut p: Ray, mut q: Ray, mut entry: SideRef) -> RaysResult {
    let mut depth = 0u32;
    loop {
        let ep = p.next(tri);
        let eq = q.next(tri);
        if ep == eq {
            match ep {
                RayEvent::End => return RaysResult::Together,
                RayEvent::Exit(s) => {
                    entry = tri.glued(s);
                    depth += 1;
                }
            }
        } else {
            // Continuations out of a triangle entered through side `c`, in
            // decreasing position along `c`: exit `c+1`, end at corner `c`,
            // exit `c+2`.
            let rank = |ev: RayEvent| -> u8 {
                match ev {
                    RayEvent::Exit(s) if s.side == (entry.side + 1) % 3 => 0,
                    RayEvent::End => 1,
                    RayEvent::Exit(s) => {
                        debug_assert_eq!(s.side, (entry.side + 2) % 3);
                        2
                    }
                }
            };
            let ord = rank(eq).cmp(&rank(ep));
            return RaysResult::Diverge { ord, depth };
        }
    }
}

/// Orders two crossings of the same edge along `side`'s canonical direction.
///
/// `(steps_p, idx_p)` and `(steps_q, idx_q)` are crossings of the edge that
/// `side` realizes.  Returns `None` only if the strands coincide (identical
/// step context in both directions).
pub(crate) fn strand_cmp(
    tri: &Triangulation,
    steps_p: &[SideRef],
    idx_p: usize,
    steps_q: &[SideRef],
    idx_q: usize,
    side: SideRef,
) -> Option<Ordering> {
    let other = tri.glued(side);
    let res_a = compare_rays(
        tri,
        ray_into(tri, steps_p, idx_p, side),
        ray_into(tri, steps_q, idx_q, side),
        side,
    );
    let res_b = compare_rays(
        tri,
        ray_into(tri, steps_p, idx_p, other),
        ray_into(tri, steps_q, idx_q, other),
        other,
    );
    match (res_a, res_b) {
        (RaysResult::Together, RaysResult::Together) => None,
        (RaysResult::Diverge { ord, .. }, RaysResult::Together) => Some(ord),
        (RaysResult::Together, RaysResult::Diverge { ord, .. }) => Some(ord.reverse()),
        (
            RaysResult::Diverge { ord: oa, depth: da },
            RaysResult::Diverge { ord: ob, depth: db },
        ) => {
            if da < db {
                Some(oa)
            } else if db < da {
                Some(ob.reverse())
            } else if side == tri.edge(tri.edge_of(side)).sides[0] {
                // Equidistant divergences: anchor the tie-break to the edge's
                // primary side so both query directions agree.
                Some(oa)
            } else {
                Some(ob.reverse())
            }
        }
    }
}

/// Boundary position cell of a chord end: corners at even cells, sides at odd
/// cells, increasing counterclockwise and aligned with each side's canonical
/// direction.  Scaled so a +-1 nudge stays within a cell.
fn base_key(end: ChordEnd) -> i64 {
    match end {
        ChordEnd::Corner(k) => 16 * k as i64,
        ChordEnd::Strand { slot, .. } => 8 * ((2 * slot as i64 + 3) % 6),
    }
}

const CYCLE: i64 = 48;

/// Whether two chords in the same triangle must cross: their four ends
/// strictly interleave around the triangle boundary.  Ends of different
/// chords on the same side are ordered with [`strand_cmp`]; chords sharing a
/// corner never cross (they can be combed apart at the marked point).
pub(crate) fn chords_cross(
    tri: &Triangulation,
    steps_a: &[SideRef],
    ca: &Chord,
    steps_b: &[SideRef],
    cb: &Chord,
) -> bool {
    debug_assert_eq!(ca.tri, cb.tri);
    let mut eps_a = [0i64; 2];
    let mut eps_b = [0i64; 2];
    for (i, ea) in ca.ends.iter().enumerate() {
        for (j, eb) in cb.ends.iter().enumerate() {
            match (*ea, *eb) {
                (ChordEnd::Corner(x), ChordEnd::Corner(y)) if x == y => return false,
                (
                    ChordEnd::Strand { slot: sa, idx: ia },
                    ChordEnd::Strand { slot: sb, idx: ib },
                ) if sa == sb => {
                    let at = SideRef {
                        tri: ca.tri,
                        side: sa,
                    };
                    match strand_cmp(tri, steps_a, ia, steps_b, ib, at) {
                        Some(Ordering::Less) => {
                            eps_a[i] = -1;
                            eps_b[j] = 1;
                        }
                        Some(Ordering::Greater) => {
                            eps_a[i] = 1;
                            eps_b[j] = -1;
                        }
                        Some(Ordering::Equal) | None => {
                            debug_assert!(false, "coincident strands in chord pair");
                            return false;
                        }
                    }
                }
                _ => {}
            }
        }
    }
    let mut pts = [
        (base_key(ca.ends[0]) + eps_a[0], true),
        (base_key(ca.ends[1]) + eps_a[1], true),
        (base_key(cb.ends[0]) + eps_b[0], false),
        (base_key(cb.ends[1]) + eps_b[1], false),
    ];
    pts.sort_unstable();
    pts[0].1 != pts[1].1 && pts[1].1 != pts[2].1 && pts[2].1 != pts[3].1
}

/// Groups chord indices by the triangle they lie in.
fn chords_by_tri(chords: &[Chord]) -> BTreeMap<TriId, Vec<usize>> {
    let mut map: BTreeMap<TriId, Vec<usize>> = BTreeMap::new();
    for (i, c) in chords.iter().enumerate() {
        map.entry(c.tri).or_default().push(i);
    }
    map
}

fn count_path_pair(tri: &Triangulation, sa: &[SideRef], sb: &[SideRef]) -> u64 {
    let ca = path_chords(tri, sa);
    let cb = path_chords(tri, sb);
    let by_a = chords_by_tri(&ca);
    let by_b = chords_by_tri(&cb);
    let mut total = 0;
    for (t, ia) in &by_a {
        if let Some(ib) = by_b.get(t) {
            for &i in ia {
                for &j in ib {
                    if chords_cross(tri, sa, &ca[i], sb, &cb[j]) {
                        total += 1;
                    }
                }
            }
        }
    }
    total
}

fn count_self(tri: &Triangulation, s: &[SideRef]) -> u64 {
    let chords = path_chords(tri, s);
    let mut total = 0;
    for idxs in chords_by_tri(&chords).values() {
        for (p, &i) in idxs.iter().enumerate() {
            for &j in &idxs[p + 1..] {
                if chords_cross(tri, s, &chords[i], s, &chords[j]) {
                    total += 1;
                }
            }
        }
    }
    total
}

/// The geometric intersection number of two arcs: the minimal number of
/// interior crossings over all representatives of their isotopy classes.
pub fn intersection_number(tri: &Triangulation, a: &Arc, b: &Arc) -> u64 {
    if a == b {
        return 0;
    }
    match (a.form(), b.form()) {
        (ArcForm::Edge(_), ArcForm::Edge(_)) => 0,
        (ArcForm::Edge(e), ArcForm::Path(_)) => b.crossing_multiplicity(tri, *e),
        (ArcForm::Path(_), ArcForm::Edge(e)) => a.crossing_multiplicity(tri, *e),
        (ArcForm::Path(sa), ArcForm::Path(sb)) => count_path_pair(tri, sa, sb),
    }
}

/// Whether two arcs can be drawn without interior crossings.
pub fn disjoint(tri: &Triangulation, a: &Arc, b: &Arc) -> bool {
    intersection_number(tri, a, b) == 0
}

/// Disjoint with no endpoints in common.  An arc is never completely
/// disjoint from itself.
pub fn completely_disjoint(tri: &Triangulation, a: &Arc, b: &Arc) -> bool {
    let [p, q] = a.endpoints();
    !b.endpoints().contains(&p) && !b.endpoints().contains(&q) && disjoint(tri, a, b)
}

/// Minimal number of self-crossings of the path's class; zero exactly when
/// the class contains an embedded representative.
pub(crate) fn count_self_crossings(tri: &Triangulation, a: &Arc) -> u64 {
    match a.form() {
        ArcForm::Edge(_) => 0,
        ArcForm::Path(s) => count_self(tri, s),
    }
}

/// A crossing between two directed paths, with its rank along each of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct CrossingPoint {
    /// The crossing lies on this chord of the first path; the first
    /// `a_chord` exits of the first path precede it.
    pub a_chord: usize,
    /// Likewise for the second path.
    pub b_chord: usize,
    /// 0-based rank along the first path's direction.
    pub a_rank: usize,
    /// 0-based rank along the second path's direction.
    pub b_rank: usize,
}

/// All crossings of two directed paths, sorted along the first path.
pub(crate) fn crossing_points(
    tri: &Triangulation,
    sa: &[SideRef],
    sb: &[SideRef],
) -> Vec<CrossingPoint> {
    let ca = path_chords(tri, sa);
    let cb = path_chords(tri, sb);
    let by_a = chords_by_tri(&ca);
    let by_b = chords_by_tri(&cb);
    let mut raw: Vec<(usize, usize)> = Vec::new();
    for (t, ia) in &by_a {
        if let Some(ib) = by_b.get(t) {
            for &i in ia {
                for &j in ib {
                    if chords_cross(tri, sa, &ca[i], sb, &cb[j]) {
                        raw.push((i, j));
                    }
                }
            }
        }
    }
    let mut a_order: Vec<usize> = (0..raw.len()).collect();
    a_order.sort_by(|&x, &y| {
        let (ax, bx) = raw[x];
        let (ay, by) = raw[y];
        ax.cmp(&ay)
            .then_with(|| crossing_cmp_along(tri, sa, &ca[ax], sb, &cb[bx], &cb[by]))
    });
    let mut b_order: Vec<usize> = (0..raw.len()).collect();
    b_order.sort_by(|&x, &y| {
        let (ax, bx) = raw[x];
        let (ay, by) = raw[y];
        bx.cmp(&by)
            .then_with(|| crossing_cmp_along(tri, sb, &cb[bx], sa, &ca[ax], &ca[ay]))
    });
    let mut a_rank = vec![0usize; raw.len()];
    for (rank, &i) in a_order.iter().enumerate() {
        a_rank[i] = rank;
    }
    let mut b_rank = vec![0usize; raw.len()];
    for (rank, &i) in b_order.iter().enumerate() {
        b_rank[i] = rank;
    }
    let mut out: Vec<CrossingPoint> = raw
        .iter()
        .enumerate()
        .map(|(i, &(a_chord, b_chord))| CrossingPoint {
            a_chord,
            b_chord,
            a_rank: a_rank[i],
            b_rank: b_rank[i],
        })
        .collect();
    out.sort_by_key(|c| c.a_rank);
    out
}

/// Orders two guest chords (both crossing the host chord) along the host,
/// measured from the host's first end.
///
/// The host's ends split the triangle boundary into two intervals, and each
/// crossing guest has exactly one end in each; along the host, crossings
/// appear in the order of their guest ends within either interval.  Guests
/// come from one embedded path, so their per-side orders are mutually
/// consistent and this comparison is transitive.
fn crossing_cmp_along(
    tri: &Triangulation,
    host_steps: &[SideRef],
    host: &Chord,
    guest_steps: &[SideRef],
    g1: &Chord,
    g2: &Chord,
) -> Ordering {
    let x1 = interval_end(tri, host_steps, host, guest_steps, g1);
    let x2 = interval_end(tri, host_steps, host, guest_steps, g2);
    let p0 = host.ends[0];
    let b0 = 2 * base_key(p0);
    let k1 = 2 * base_key(x1) + end_eps(tri, guest_steps, x1, host_steps, p0, host.tri);
    let k2 = 2 * base_key(x2) + end_eps(tri, guest_steps, x2, host_steps, p0, host.tri);
    let d1 = (k1 - b0).rem_euclid(2 * CYCLE);
    let d2 = (k2 - b0).rem_euclid(2 * CYCLE);
    d1.cmp(&d2).then_with(|| {
        // Same cell and same offset from the host end: both guests cross one
        // side; their order along it is their order along the host.
        match (x1, x2) {
            (
                ChordEnd::Strand { slot: s1, idx: i1 },
                ChordEnd::Strand { slot: s2, idx: i2 },
            ) => {
                debug_assert_eq!(s1, s2);
                let at = SideRef {
                    tri: host.tri,
                    side: s1,
                };
                strand_cmp(tri, guest_steps, i1, guest_steps, i2, at)
                    .expect("guest strands coincide")
            }
            _ => {
                debug_assert!(false, "tied cell must hold two strand ends");
                Ordering::Equal
            }
        }
    })
}

/// A +-1 nudge for `end` relative to `anchor` when both sit on the same side.
fn end_eps(
    tri: &Triangulation,
    end_steps: &[SideRef],
    end: ChordEnd,
    anchor_steps: &[SideRef],
    anchor: ChordEnd,
    t: TriId,
) -> i64 {
    match (end, anchor) {
        (ChordEnd::Strand { slot: se, idx: ie }, ChordEnd::Strand { slot: sa, idx: ia })
            if se == sa =>
        {
            let at = SideRef { tri: t, side: se };
            match strand_cmp(tri, end_steps, ie, anchor_steps, ia, at) {
                Some(Ordering::Less) => -1,
                Some(Ordering::Greater) => 1,
                _ => {
                    debug_assert!(false, "coincident strands");
                    0
                }
            }
        }
        _ => 0,
    }
}

/// The end of `guest` lying in the positive boundary interval from
/// `host.ends[0]` to `host.ends[1]`; the other end lies in the complementary
/// interval because `guest` crosses `host`.
fn interval_end(
    tri: &Triangulation,
    host_steps: &[SideRef],
    host: &Chord,
    guest_steps: &[SideRef],
    guest: &Chord,
) -> ChordEnd {
    let k0 = 2 * base_key(host.ends[0]);
    let k1 = 2 * base_key(host.ends[1]);
    let inside = |end: ChordEnd| -> bool {
        let kx = 2 * base_key(end)
            + end_eps(tri, guest_steps, end, host_steps, host.ends[0], host.tri)
            + end_eps(tri, guest_steps, end, host_steps, host.ends[1], host.tri);
        (kx - k0).rem_euclid(2 * CYCLE) < (k1 - k0).rem_euclid(2 * CYCLE)
    };
    let in0 = inside(guest.ends[0]);
    let in1 = inside(guest.ends[1]);
    debug_assert_ne!(in0, in1, "guest chord does not cross the host chord");
    if in0 {
        guest.ends[0]
    } else {
        guest.ends[1]
    }
}
