//! Cutting the surface along a family of pairwise disjoint arcs.
//!
//! The arcs are drawn simultaneously without crossings (possible exactly when
//! they are pairwise disjoint), which refines every triangle into cells
//! separated by chords.  Gluing cells across the sub-segments of uncut edges
//! yields the connected pieces of the cut surface; each piece is a compact
//! surface whose boundary is made of arc copies and marked-point copies.
//!
//! Conventions:
//! - A marked point that is an endpoint of some cut arc splits into one
//!   boundary vertex per "run" of triangle corners between consecutive arc
//!   ends around it; a marked point touched by no arc stays a single interior
//!   point of its piece.
//! - `euler_characteristic` is that of the compact piece with its interior
//!   marked points filled in, so a piece with χ = 1 is a disk.  Summed over
//!   all pieces this equals χ(S) + (number of arcs) − (number of marked
//!   points that are endpoints of arcs).

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::arc::{Arc, ArcForm};
use crate::overlay::{self, Chord, ChordEnd};
use crate::surface::{EdgeId, SideRef, TriId, Triangulation, VertexId};
use crate::util::UnionFind;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArrangeError {
    #[error("arcs {0} and {1} coincide")]
    DuplicateArc(usize, usize),
    #[error("arcs {i} and {j} cross {crossings} times")]
    NotDisjoint { i: usize, j: usize, crossings: u64 },
    #[error("the three arcs do not form a triangle of marked points")]
    NotATriangle,
}

/// One connected piece of the surface cut along all the arcs.
#[derive(Debug, Clone)]
pub struct CutPiece {
    /// χ of the compact piece (interior marked points filled in); 1 = disk.
    pub euler_characteristic: i64,
    /// Number of triangle cells making up the piece.
    pub num_cells: usize,
    /// For each arc index, how many of its boundary copies border this piece.
    /// One full side of arc `a` contributes `a.weight() + 1` copies.
    pub boundary_arc_copies: BTreeMap<usize, usize>,
    /// One entry per boundary copy of a marked point (ascending).
    pub marked_point_runs: Vec<VertexId>,
    /// Marked points in the interior of the piece (ascending).
    pub interior_marked_points: Vec<VertexId>,
}

impl CutPiece {
    pub fn is_disk(&self) -> bool {
        self.euler_characteristic == 1
    }
}

/// The surface cut along a family of pairwise disjoint arcs.
#[derive(Debug, Clone)]
pub struct CutSurface {
    pieces: Vec<CutPiece>,
    location: BTreeMap<VertexId, usize>,
    touching: BTreeMap<VertexId, Vec<usize>>,
}

impl CutSurface {
    pub fn pieces(&self) -> &[CutPiece] {
        &self.pieces
    }

    pub fn num_pieces(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_connected(&self) -> bool {
        self.pieces.len() == 1
    }

    /// The piece containing `v`, or `None` if `v` lies on a cut arc.
    pub fn piece_of(&self, v: VertexId) -> Option<usize> {
        self.location.get(&v).copied()
    }

    /// Pieces having `v` in their interior or on their boundary (ascending).
    pub fn pieces_touching(&self, v: VertexId) -> &[usize] {
        self.touching.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Whether some piece touches both marked points; two points can be
    /// joined by an arc avoiding the cut arcs exactly when this holds.
    pub fn shares_piece(&self, p: VertexId, q: VertexId) -> bool {
        let a = self.pieces_touching(p);
        let b = self.pieces_touching(q);
        a.iter().any(|x| b.contains(x))
    }

    pub fn total_euler_characteristic(&self) -> i64 {
        self.pieces.iter().map(|p| p.euler_characteristic).sum()
    }
}

/// Whether `p` and `q` end up in different pieces of the surface cut along
/// `arcs` (no piece touches both).
pub fn separates(
    tri: &Triangulation,
    arcs: &[Arc],
    p: VertexId,
    q: VertexId,
) -> Result<bool, ArrangeError> {
    let cut = cut_along(tri, arcs)?;
    Ok(!cut.shares_piece(p, q))
}

/// Whether three arcs forming a triangle of marked points bound a disk: some
/// piece of the cut surface is a disk whose boundary consists of exactly one
/// side of each arc and whose interior holds no marked point.
pub fn triangle_bounds_disk(
    tri: &Triangulation,
    sides: [&Arc; 3],
) -> Result<bool, ArrangeError> {
    let mut end_count: BTreeMap<VertexId, usize> = BTreeMap::new();
    for a in sides {
        for v in a.endpoints() {
            *end_count.entry(v).or_default() += 1;
        }
    }
    if end_count.len() != 3 || end_count.values().any(|&c| c != 2) {
        return Err(ArrangeError::NotATriangle);
    }
    let corners: BTreeSet<VertexId> = end_count.into_keys().collect();
    let arcs: Vec<Arc> = sides.iter().map(|&a| a.clone()).collect();
    let cut = cut_along(tri, &arcs)?;
    Ok(cut.pieces().iter().any(|piece| {
        piece.euler_characteristic == 1
            && piece.interior_marked_points.is_empty()
            && piece.marked_point_runs.len() == 3
            && piece
                .marked_point_runs
                .iter()
                .copied()
                .collect::<BTreeSet<_>>()
                == corners
            && piece.boundary_arc_copies.len() == 3
            && (0..3).all(|i| piece.boundary_arc_copies.get(&i) == Some(&(arcs[i].weight() + 1)))
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct StrandRef {
    arc: usize,
    step: usize,
}

/// Cuts the surface along all the arcs at once.
pub fn cut_along(tri: &Triangulation, arcs: &[Arc]) -> Result<CutSurface, ArrangeError> {
    for i in 0..arcs.len() {
        for j in (i + 1)..arcs.len() {
            if arcs[i] == arcs[j] {
                return Err(ArrangeError::DuplicateArc(i, j));
            }
            let crossings = overlay::intersection_number(tri, &arcs[i], &arcs[j]);
            if crossings > 0 {
                return Err(ArrangeError::NotDisjoint { i, j, crossings });
            }
        }
    }

    let steps: Vec<&[SideRef]> = arcs.iter().map(|a| a.path_steps().unwrap_or(&[])).collect();
    let chords: Vec<Vec<Chord>> = arcs
        .iter()
        .map(|a| match a.path_steps() {
            Some(s) => overlay::path_chords(tri, s),
            None => Vec::new(),
        })
        .collect();
    let cut_edges: BTreeSet<EdgeId> = arcs
        .iter()
        .filter_map(|a| match a.form() {
            ArcForm::Edge(e) => Some(*e),
            ArcForm::Path(_) => None,
        })
        .collect();

    // Crossings of each side, ordered along the side's canonical direction.
    let mut side_strands: BTreeMap<SideRef, Vec<StrandRef>> = BTreeMap::new();
    for (ai, s) in steps.iter().enumerate() {
        for (k, &exit) in s.iter().enumerate() {
            let sr = StrandRef { arc: ai, step: k };
            side_strands.entry(exit).or_default().push(sr);
            side_strands.entry(tri.glued(exit)).or_default().push(sr);
        }
    }
    for (&side, list) in side_strands.iter_mut() {
        list.sort_by(|p, q| {
            overlay::strand_cmp(tri, steps[p.arc], p.step, steps[q.arc], q.step, side)
                .expect("strands of disjoint embedded arcs are strictly ordered")
        });
    }
    #[cfg(debug_assertions)]
    for (&side, list) in &side_strands {
        // The canonical directions of an edge's two sides are opposite, so
        // the two orderings must be reverses of each other.
        let partner = &side_strands[&tri.glued(side)];
        assert!(list.iter().eq(partner.iter().rev()));
    }
    debug_assert!(cut_edges
        .iter()
        .all(|e| !side_strands.contains_key(&tri.edge(*e).sides[0])));

    let num_tris = tri.num_triangles() as usize;
    let mut tri_chord_refs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); num_tris];
    for (ai, cl) in chords.iter().enumerate() {
        for (ci, c) in cl.iter().enumerate() {
            tri_chord_refs[c.tri.index()].push((ai, ci));
        }
    }

    let mut num_cells = 0usize;
    let mut door_flank: BTreeMap<SideRef, Vec<usize>> = BTreeMap::new();
    let mut chord_flank: BTreeMap<(usize, usize), [usize; 2]> = BTreeMap::new();
    let mut corner_sectors: BTreeMap<(TriId, u8), Vec<usize>> = BTreeMap::new();
    for t in tri.triangles() {
        trace_triangle(
            t,
            &tri_chord_refs[t.index()],
            &side_strands,
            &chords,
            &mut num_cells,
            &mut door_flank,
            &mut chord_flank,
            &mut corner_sectors,
        );
    }

    // Glue cells across the sub-segments of every uncut edge.
    let mut uf = UnionFind::new(num_cells);
    for (e, rec) in tri.edges() {
        if cut_edges.contains(&e) {
            continue;
        }
        let f0 = &door_flank[&rec.sides[0]];
        let f1 = &door_flank[&rec.sides[1]];
        let m = f0.len() - 1;
        debug_assert_eq!(f1.len(), m + 1);
        for j in 0..=m {
            uf.union(f0[j], f1[m - j]);
        }
    }
    let mut comp_of = vec![usize::MAX; num_cells];
    let mut n_comps = 0usize;
    for cell in 0..num_cells {
        let root = uf.find(cell);
        if comp_of[root] == usize::MAX {
            comp_of[root] = n_comps;
            n_comps += 1;
        }
        comp_of[cell] = comp_of[root];
    }

    let mut v_count = vec![0i64; n_comps];
    let mut e_count = vec![0i64; n_comps];
    let mut f_count = vec![0i64; n_comps];
    let mut arc_copies: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n_comps];
    let mut runs: Vec<Vec<VertexId>> = vec![Vec::new(); n_comps];
    let mut interior: Vec<Vec<VertexId>> = vec![Vec::new(); n_comps];
    let mut location: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut touching: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();

    for cell in 0..num_cells {
        f_count[comp_of[cell]] += 1;
    }

    for (e, rec) in tri.edges() {
        if cut_edges.contains(&e) {
            // The two copies of a cut edge are boundary edges of their cells.
            for s in rec.sides {
                e_count[comp_of[door_flank[&s][0]]] += 1;
            }
        } else {
            for &cell in &door_flank[&rec.sides[0]] {
                e_count[comp_of[cell]] += 1;
            }
        }
    }
    for (&(ai, _), flanks) in &chord_flank {
        for &cell in flanks {
            e_count[comp_of[cell]] += 1;
            *arc_copies[comp_of[cell]].entry(ai).or_default() += 1;
        }
    }
    for (ai, a) in arcs.iter().enumerate() {
        if let ArcForm::Edge(e) = a.form() {
            for s in tri.edge(*e).sides {
                *arc_copies[comp_of[door_flank[&s][0]]].entry(ai).or_default() += 1;
            }
        }
    }
    // Each crossing splits into one copy per side of its arc.
    for (ai, s) in steps.iter().enumerate() {
        for k in 0..s.len() {
            for cell in chord_flank[&(ai, k)] {
                v_count[comp_of[cell]] += 1;
            }
        }
    }

    // Walk the corner wedges around each marked point; arc ends and cut
    // edges sever the cycle into the runs that survive cutting.
    let mut corners_at: BTreeMap<VertexId, Vec<(TriId, u8)>> = BTreeMap::new();
    for t in tri.triangles() {
        for c in 0..3u8 {
            corners_at
                .entry(tri.corner_vertex(t, c))
                .or_default()
                .push((t, c));
        }
    }
    #[cfg(debug_assertions)]
    let mut touched_count = 0i64;
    for (&v, corners) in &corners_at {
        let start = corners[0];
        let mut seq: Vec<usize> = Vec::new();
        let mut sever: Vec<bool> = Vec::new();
        let mut cur = start;
        let mut visited = 0usize;
        loop {
            let (ct, cc) = cur;
            let sectors = &corner_sectors[&(ct, cc)];
            // Sectors run from the side after the corner (index 0) to the
            // side before it; walking around `v` we traverse them backwards,
            // severed at the arc end between each consecutive pair.
            for s in (0..sectors.len()).rev() {
                seq.push(sectors[s]);
                if s > 0 {
                    sever.push(true);
                }
            }
            let out = SideRef {
                tri: ct,
                side: (cc + 2) % 3,
            };
            sever.push(cut_edges.contains(&tri.edge_of(out)));
            let g = tri.glued(out);
            cur = (g.tri, (g.side + 2) % 3);
            visited += 1;
            if cur == start {
                break;
            }
        }
        debug_assert_eq!(visited, corners.len());
        debug_assert_eq!(seq.len(), sever.len());
        let mut touched_pieces: Vec<usize> = Vec::new();
        if sever.iter().all(|&x| !x) {
            let comp = comp_of[seq[0]];
            debug_assert!(seq.iter().all(|&c| comp_of[c] == comp));
            v_count[comp] += 1;
            interior[comp].push(v);
            location.insert(v, comp);
            touched_pieces.push(comp);
        } else {
            #[cfg(debug_assertions)]
            {
                touched_count += 1;
            }
            for gap in 0..seq.len() {
                if !sever[gap] {
                    continue;
                }
                // A run starts after each severed gap.
                let first = (gap + 1) % seq.len();
                let comp = comp_of[seq[first]];
                #[cfg(debug_assertions)]
                {
                    let mut i = first;
                    loop {
                        assert_eq!(comp_of[seq[i]], comp);
                        if sever[i] {
                            break;
                        }
                        i = (i + 1) % seq.len();
                    }
                }
                v_count[comp] += 1;
                runs[comp].push(v);
                touched_pieces.push(comp);
            }
            touched_pieces.sort_unstable();
            touched_pieces.dedup();
        }
        touching.insert(v, touched_pieces);
    }

    let pieces: Vec<CutPiece> = (0..n_comps)
        .map(|i| CutPiece {
            euler_characteristic: v_count[i] - e_count[i] + f_count[i],
            num_cells: f_count[i] as usize,
            boundary_arc_copies: std::mem::take(&mut arc_copies[i]),
            marked_point_runs: std::mem::take(&mut runs[i]),
            interior_marked_points: std::mem::take(&mut interior[i]),
        })
        .collect();

    #[cfg(debug_assertions)]
    {
        // The glued complex must recover the closed surface.
        let total_crossings: i64 = steps.iter().map(|s| s.len() as i64).sum();
        let total_chords: i64 = chords.iter().map(|c| c.len() as i64).sum();
        let doors: i64 = tri
            .edges()
            .map(|(_, rec)| door_flank[&rec.sides[0]].len() as i64)
            .sum();
        let chi_surface = i64::from(tri.euler_characteristic());
        assert_eq!(
            tri.num_marked_points() as i64 + total_crossings - (doors + total_chords)
                + num_cells as i64,
            chi_surface
        );
        let total: i64 = pieces.iter().map(|p| p.euler_characteristic).sum();
        assert_eq!(total, chi_surface + arcs.len() as i64 - touched_count);
    }

    Ok(CutSurface {
        pieces,
        location,
        touching,
    })
}

/// Splits one triangle into cells along its chords, recording for every
/// boundary sub-segment, chord side and corner sector the cell it borders.
#[allow(clippy::too_many_arguments)]
fn trace_triangle(
    t: TriId,
    chord_refs: &[(usize, usize)],
    side_strands: &BTreeMap<SideRef, Vec<StrandRef>>,
    all_chords: &[Vec<Chord>],
    num_cells: &mut usize,
    door_flank: &mut BTreeMap<SideRef, Vec<usize>>,
    chord_flank: &mut BTreeMap<(usize, usize), [usize; 2]>,
    corner_sectors: &mut BTreeMap<(TriId, u8), Vec<usize>>,
) {
    #[derive(Clone, Copy)]
    enum Item {
        Corner(u8),
        Strand(u8),
    }
    let empty: Vec<StrandRef> = Vec::new();
    let strands_of =
        |side: u8| -> &Vec<StrandRef> { side_strands.get(&SideRef { tri: t, side }).unwrap_or(&empty) };

    // Boundary items counterclockwise: after corner c comes the side joining
    // it to the next corner, crossed in its canonical direction.
    let mut items: Vec<Item> = Vec::new();
    let mut corner_pos = [0usize; 3];
    let mut band_start = [0usize; 3];
    for c in 0..3u8 {
        corner_pos[c as usize] = items.len();
        items.push(Item::Corner(c));
        let s = (c + 2) % 3;
        band_start[s as usize] = items.len();
        for _ in 0..strands_of(s).len() {
            items.push(Item::Strand(s));
        }
    }
    let n_items = items.len();

    let mut strand_rank: BTreeMap<(u8, usize, usize), usize> = BTreeMap::new();
    for s in 0..3u8 {
        for (r, sr) in strands_of(s).iter().enumerate() {
            strand_rank.insert((s, sr.arc, sr.step), r);
        }
    }
    let item_of_end = |end: ChordEnd, arc: usize| -> usize {
        match end {
            ChordEnd::Corner(k) => corner_pos[k as usize],
            ChordEnd::Strand { slot, idx } => {
                band_start[slot as usize] + strand_rank[&(slot, arc, idx)]
            }
        }
    };

    // Edges 0..n_items are the boundary sub-segments (i joins items i, i+1);
    // the rest are chords.
    let mut edge_ends: Vec<[usize; 2]> = (0..n_items).map(|i| [i, (i + 1) % n_items]).collect();
    for &(ai, ci) in chord_refs {
        let c = &all_chords[ai][ci];
        let x = item_of_end(c.ends[0], ai);
        let y = item_of_end(c.ends[1], ai);
        debug_assert_ne!(x, y);
        edge_ends.push([x, y]);
    }
    let n_edges = edge_ends.len();

    // Rotation at each item, counterclockwise: the boundary segment ahead,
    // then chords by increasing counterclockwise distance of their far end,
    // then the boundary segment behind.
    let mut rot: Vec<Vec<usize>> = Vec::with_capacity(n_items);
    for i in 0..n_items {
        let mut r = vec![i];
        let mut incident: Vec<(usize, usize)> = Vec::new();
        for (ei, ends) in edge_ends.iter().enumerate().skip(n_items) {
            let far = if ends[0] == i {
                ends[1]
            } else if ends[1] == i {
                ends[0]
            } else {
                continue;
            };
            incident.push(((far + n_items - i) % n_items, ei));
        }
        incident.sort_unstable();
        r.extend(incident.into_iter().map(|(_, ei)| ei));
        r.push((i + n_items - 1) % n_items);
        rot.push(r);
    }

    // Half-edge 2e + d; d = 0 travels ends[0] -> ends[1].  The next half-edge
    // of a face is the counterclockwise predecessor at the head, keeping the
    // face on the left.
    let head = |h: usize| edge_ends[h >> 1][1 - (h & 1)];
    let next_in_face = |h: usize| -> usize {
        let v = head(h);
        let r = &rot[v];
        let pos = r.iter().position(|&x| x == h >> 1).unwrap();
        let e2 = r[(pos + r.len() - 1) % r.len()];
        if edge_ends[e2][0] == v {
            2 * e2
        } else {
            2 * e2 + 1
        }
    };
    let mut face_of = vec![usize::MAX; 2 * n_edges];
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for h0 in 0..2 * n_edges {
        if face_of[h0] != usize::MAX {
            continue;
        }
        let f = faces.len();
        let mut walk = Vec::new();
        let mut h = h0;
        loop {
            face_of[h] = f;
            walk.push(h);
            h = next_in_face(h);
            if h == h0 {
                break;
            }
        }
        faces.push(walk);
    }
    let outer = face_of[1];
    debug_assert_eq!(faces.len(), chord_refs.len() + 2);

    let mut cell_id = vec![usize::MAX; faces.len()];
    for f in 0..faces.len() {
        if f != outer {
            cell_id[f] = *num_cells;
            *num_cells += 1;
        }
    }

    for i in 0..n_items {
        let (side, piece) = match items[i] {
            Item::Corner(c) => ((c + 2) % 3, 0usize),
            Item::Strand(s) => (s, i - band_start[s as usize] + 1),
        };
        debug_assert_eq!(face_of[2 * i + 1], outer);
        let f = face_of[2 * i];
        debug_assert_ne!(f, outer);
        let flank = door_flank
            .entry(SideRef { tri: t, side })
            .or_insert_with(|| vec![usize::MAX; strands_of(side).len() + 1]);
        debug_assert_eq!(flank[piece], usize::MAX);
        flank[piece] = cell_id[f];
    }

    for (li, &(ai, ci)) in chord_refs.iter().enumerate() {
        let e = n_items + li;
        let f0 = face_of[2 * e];
        let f1 = face_of[2 * e + 1];
        debug_assert!(f0 != outer && f1 != outer && f0 != f1);
        chord_flank.insert((ai, ci), [cell_id[f0], cell_id[f1]]);
    }

    // Sector s at a corner lies between rotation entries s and s + 1; the
    // face leaving through rotation entry s occupies it.  The last sector
    // (behind the corner, outside the triangle) belongs to the outer face.
    for (f, walk) in faces.iter().enumerate() {
        if f == outer {
            continue;
        }
        for (w, &h) in walk.iter().enumerate() {
            let v = head(h);
            if let Item::Corner(c) = items[v] {
                let out_edge = walk[(w + 1) % walk.len()] >> 1;
                let pos = rot[v].iter().position(|&x| x == out_edge).unwrap();
                debug_assert!(pos + 1 < rot[v].len());
                let sectors = corner_sectors
                    .entry((t, c))
                    .or_insert_with(|| vec![usize::MAX; rot[v].len() - 1]);
                debug_assert_eq!(sectors[pos], usize::MAX);
                sectors[pos] = cell_id[f];
            }
        }
    }
    #[cfg(debug_assertions)]
    for c in 0..3u8 {
        assert!(corner_sectors[&(t, c)].iter().all(|&x| x != usize::MAX));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::ArcPool;

    fn edge_arc_between(tri: &Triangulation, u: u32, v: u32) -> Arc {
        let (e, _) = tri
            .edges()
            .find(|(_, rec)| rec.endpoints_sorted() == [VertexId(u), VertexId(v)])
            .expect("no edge between the marked points");
        Arc::edge_arc(tri, e)
    }

    #[test]
    fn empty_cut_is_the_whole_surface() {
        let tri = Triangulation::standard(0, 5).unwrap();
        let cut = cut_along(&tri, &[]).unwrap();
        assert!(cut.is_connected());
        let piece = &cut.pieces()[0];
        assert_eq!(piece.euler_characteristic, 2);
        assert_eq!(piece.interior_marked_points.len(), 5);
        assert!(piece.marked_point_runs.is_empty());
        for v in tri.marked_points() {
            assert_eq!(cut.piece_of(v), Some(0));
        }
    }

    #[test]
    fn single_arc_cut_on_sphere_is_a_disk() {
        let tri = Triangulation::standard(0, 5).unwrap();
        let cut = cut_along(&tri, &[edge_arc_between(&tri, 0, 1)]).unwrap();
        assert_eq!(cut.num_pieces(), 1);
        let piece = &cut.pieces()[0];
        assert_eq!(piece.euler_characteristic, 1);
        assert_eq!(piece.marked_point_runs, vec![VertexId(0), VertexId(1)]);
        assert_eq!(
            piece.interior_marked_points,
            vec![VertexId(2), VertexId(3), VertexId(4)]
        );
        assert_eq!(cut.piece_of(VertexId(0)), None);
        assert_eq!(cut.piece_of(VertexId(2)), Some(0));
    }

    #[test]
    fn jordan_loop_on_sphere_separates_by_side() {
        let tri = Triangulation::standard(0, 4).unwrap();
        let e = edge_arc_between(&tri, 0, 1);
        let mut pool = ArcPool::new(&tri);
        let alpha = pool
            .find(4, |a| {
                a.endpoints() == [VertexId(0), VertexId(1)]
                    && *a != e
                    && overlay::disjoint(&tri, a, &e)
            })
            .unwrap();
        let cut = cut_along(&tri, &[e.clone(), alpha.clone()]).unwrap();
        assert_eq!(cut.num_pieces(), 2);
        assert!(cut.pieces().iter().all(|p| p.euler_characteristic == 1));
        assert_ne!(cut.piece_of(VertexId(2)), cut.piece_of(VertexId(3)));
        assert!(separates(&tri, &[e.clone(), alpha.clone()], VertexId(2), VertexId(3)).unwrap());
        // The endpoints lie on both pieces' boundaries, so they are not
        // separated from anything.
        assert!(!separates(&tri, &[e, alpha], VertexId(0), VertexId(2)).unwrap());
    }

    #[test]
    fn torus_handle_loops_leave_a_disk() {
        let tri = Triangulation::standard(1, 4).unwrap();
        let a = Arc::edge_arc(&tri, tri.edge_of(SideRef::new(0, 2)));
        let b = Arc::edge_arc(&tri, tri.edge_of(SideRef::new(0, 0)));
        assert!(a.is_loop() && b.is_loop());
        assert_eq!(a.endpoints()[0], b.endpoints()[0]);

        // One handle loop alone does not disconnect the torus.
        let one = cut_along(&tri, &[a.clone()]).unwrap();
        assert!(one.is_connected());
        assert_eq!(one.pieces()[0].euler_characteristic, 0);

        let both = cut_along(&tri, &[a.clone(), b.clone()]).unwrap();
        assert!(both.is_connected());
        let piece = &both.pieces()[0];
        assert_eq!(piece.euler_characteristic, 1);
        // The basepoint splits into the four corners of the square.
        assert_eq!(piece.marked_point_runs, vec![a.endpoints()[0]; 4]);
        assert_eq!(piece.interior_marked_points.len(), 3);
        assert_eq!(piece.boundary_arc_copies.get(&0), Some(&2));
        assert_eq!(piece.boundary_arc_copies.get(&1), Some(&2));
    }

    #[test]
    fn crossing_arcs_are_rejected() {
        let tri = Triangulation::standard(1, 1).unwrap();
        let mut pool = ArcPool::new(&tri);
        let w1 = pool.weight_class(1).to_vec();
        let crossing: Vec<Arc> = w1
            .iter()
            .filter(|a| overlay::intersection_number(&tri, a, &w1[0]) > 0)
            .cloned()
            .collect();
        assert!(!crossing.is_empty());
        let err = cut_along(&tri, &[w1[0].clone(), crossing[0].clone()]).unwrap_err();
        assert!(matches!(err, ArrangeError::NotDisjoint { .. }));
        let dup = cut_along(&tri, &[w1[0].clone(), w1[0].clone()]).unwrap_err();
        assert_eq!(dup, ArrangeError::DuplicateArc(0, 1));
    }

    #[test]
    fn face_triangle_bounds_a_disk() {
        let tri = Triangulation::standard(0, 5).unwrap();
        let a = edge_arc_between(&tri, 0, 1);
        let b = edge_arc_between(&tri, 1, 2);
        let c = edge_arc_between(&tri, 0, 2);
        assert!(triangle_bounds_disk(&tri, [&a, &b, &c]).unwrap());
    }

    #[test]
    fn splitting_triangle_bounds_no_disk() {
        let tri = Triangulation::standard(0, 5).unwrap();
        let a = edge_arc_between(&tri, 0, 1);
        let b = edge_arc_between(&tri, 1, 2);
        let e1 = edge_arc_between(&tri, 0, 2);
        let mut pool = ArcPool::new(&tri);
        // The least non-edge arc between 0 and 2 crosses the edge between 3
        // and 4, so the triangle it closes up splits those two points.
        let alpha = pool
            .find(3, |x| x.endpoints() == [VertexId(0), VertexId(2)] && *x != e1)
            .unwrap();
        assert_eq!(alpha.weight(), 1);
        let cut = cut_along(&tri, &[a.clone(), b.clone(), alpha.clone()]).unwrap();
        assert_eq!(cut.num_pieces(), 2);
        assert_ne!(cut.piece_of(VertexId(3)), cut.piece_of(VertexId(4)));
        assert_eq!(cut.total_euler_characteristic(), 2);
        assert!(!triangle_bounds_disk(&tri, [&a, &b, &alpha]).unwrap());
        assert_eq!(
            triangle_bounds_disk(&tri, [&a, &b, &b]).unwrap_err(),
            ArrangeError::NotATriangle
        );
    }
}
