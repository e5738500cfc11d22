//! Arcs between marked points, stored in a canonical taut position.
//!
//! A raw [`Walk`] records a path combinatorially: the corner it starts at,
//! the ordered triangle sides it crosses, and the corner it ends at.
//! Canonicalization removes detours that an isotopy (fixing the marked
//! points) can undo:
//!
//! * an *interior spur*, where the walk leaves a triangle through the side it
//!   just entered, cancels two crossings;
//! * an *endpoint push*, where the segment at an endpoint cuts off a corner
//!   of its triangle, slides the endpoint across that edge and cancels one
//!   crossing.
//!
//! A walk with no such detour crosses each triangle in straight "chords" and
//! is the unique minimal representative of its isotopy class.  Finally the
//! direction is normalized (smaller endpoint first; for loops, the
//! lexicographically smaller of the two directions), so equal isotopy classes
//! compare equal as values.

use std::cmp::Ordering;

use crate::overlay;
use crate::surface::{EdgeId, SideRef, TriId, Triangulation, VertexId};

/// A raw combinatorial path from one marked point to another.
///
/// The walk starts at corner `start_corner` of triangle `start_tri`, crosses
/// the sides listed in `exits` (each a side of the triangle the walk is in at
/// that moment), and ends at corner `end_corner` of the final triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub start_tri: TriId,
    pub start_corner: u8,
    pub exits: Vec<SideRef>,
    pub end_corner: u8,
}

impl Walk {
    /// The triangle the walk ends in.
    pub fn end_tri(&self, tri: &Triangulation) -> TriId {
        match self.exits.last() {
            Some(&s) => tri.glued(s).tri,
            None => self.start_tri,
        }
    }

    /// Checks that consecutive exits live in consecutive triangles and all
    /// indices are in range.
    pub fn validate(&self, tri: &Triangulation) -> Result<(), ArcError> {
        let bad = |msg: String| Err(ArcError::InvalidWalk(msg));
        if self.start_tri.0 >= tri.num_triangles() {
            return bad(format!("start triangle {} out of range", self.start_tri));
        }
        if self.start_corner > 2 || self.end_corner > 2 {
            return bad("corner index out of range".into());
        }
        let mut here = self.start_tri;
        for (i, s) in self.exits.iter().enumerate() {
            if s.tri.0 >= tri.num_triangles() || s.side > 2 {
                return bad(format!("exit {i} ({s}) out of range"));
            }
            if s.tri != here {
                return bad(format!("exit {i} leaves {s} but the walk is in t{}", here.0));
            }
            here = tri.glued(*s).tri;
        }
        Ok(())
    }

    /// The same path traversed in the opposite direction.
    pub fn reversed(&self, tri: &Triangulation) -> Walk {
        Walk {
            start_tri: self.end_tri(tri),
            start_corner: self.end_corner,
            exits: reversed_exits(tri, &self.exits),
            end_corner: self.start_corner,
        }
    }
}

/// Exit sequence of the reversed path: the sides entered, in reverse order.
pub(crate) fn reversed_exits(tri: &Triangulation, exits: &[SideRef]) -> Vec<SideRef> {
    exits.iter().rev().map(|&s| tri.glued(s)).collect()
}

/// Maps a corner across a gluing: `corner` must be an endpoint of side
/// `from`, and the result is the matching corner of `to`'s triangle, where
/// `to = tri.glued(from)`.
pub(crate) fn map_corner_across(from: SideRef, to: SideRef, corner: u8) -> u8 {
    if corner == from.from_corner() {
        to.to_corner()
    } else {
        debug_assert_eq!(corner, from.to_corner());
        to.from_corner()
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ArcError {
    #[error("walk is not a valid path on this surface: {0}")]
    InvalidWalk(String),
    #[error("the path is contractible into a marked point")]
    NotEssential,
    #[error("the path is not embedded ({crossings} self-crossings)")]
    NotEmbedded { crossings: u64 },
}

/// Canonical position of an arc.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ArcForm {
    /// Isotopic to an edge of the triangulation; crosses no edges.
    Edge(EdgeId),
    /// Crosses at least one edge: the sides exited, in canonical direction.
    Path(Vec<SideRef>),
}

/// An essential embedded arc between marked points, in canonical taut
/// position.  Two arcs are equal exactly when they are isotopic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arc {
    endpoints: [VertexId; 2],
    form: ArcForm,
}

impl Arc {
    /// The arc isotopic to edge `e`.
    pub fn edge_arc(tri: &Triangulation, e: EdgeId) -> Arc {
        Arc {
            endpoints: tri.edge(e).endpoints_sorted(),
            form: ArcForm::Edge(e),
        }
    }

    /// Canonicalizes a walk: tightens it, rejects contractible loops and
    /// non-embedded paths, and normalizes the direction.
    pub fn from_walk(tri: &Triangulation, walk: &Walk) -> Result<Arc, ArcError> {
        walk.validate(tri)?;
        let mut start_tri = walk.start_tri;
        let mut start_corner = walk.start_corner;
        let mut end_corner = walk.end_corner;
        let mut exits = walk.exits.clone();
        loop {
            if let Some(i) =
                (0..exits.len().saturating_sub(1)).find(|&i| exits[i + 1] == tri.glued(exits[i]))
            {
                exits.drain(i..=i + 1);
                continue;
            }
            if let Some(&first) = exits.first() {
                if first.side != start_corner {
                    let other = tri.glued(first);
                    start_corner = map_corner_across(first, other, start_corner);
                    start_tri = other.tri;
                    exits.remove(0);
                    continue;
                }
            }
            if let Some(&last) = exits.last() {
                let entry = tri.glued(last);
                if entry.side != end_corner {
                    end_corner = map_corner_across(entry, last, end_corner);
                    exits.pop();
                    continue;
                }
            }
            break;
        }

        if exits.is_empty() {
            if start_corner == end_corner {
                return Err(ArcError::NotEssential);
            }
            let joining_side = 3 - start_corner - end_corner;
            let e = tri.edge_of(SideRef {
                tri: start_tri,
                side: joining_side,
            });
            return Ok(Arc::edge_arc(tri, e));
        }

        let u = tri.corner_vertex(start_tri, start_corner);
        let entry = tri.glued(*exits.last().unwrap());
        let v = tri.corner_vertex(entry.tri, entry.side);
        let steps = match u.cmp(&v) {
            Ordering::Less => exits,
            Ordering::Greater => reversed_exits(tri, &exits),
            Ordering::Equal => {
                let rev = reversed_exits(tri, &exits);
                if rev < exits {
                    rev
                } else {
                    exits
                }
            }
        };
        let arc = Arc {
            endpoints: if u <= v { [u, v] } else { [v, u] },
            form: ArcForm::Path(steps),
        };
        let self_crossings = overlay::count_self_crossings(tri, &arc);
        if self_crossings > 0 {
            return Err(ArcError::NotEmbedded {
                crossings: self_crossings,
            });
        }
        Ok(arc)
    }

    /// Endpoints as marked points, smaller first.
    pub fn endpoints(&self) -> [VertexId; 2] {
        self.endpoints
    }

    pub fn is_loop(&self) -> bool {
        self.endpoints[0] == self.endpoints[1]
    }

    pub fn form(&self) -> &ArcForm {
        &self.form
    }

    /// Number of crossings with the edges of the triangulation.
    pub fn weight(&self) -> usize {
        match &self.form {
            ArcForm::Edge(_) => 0,
            ArcForm::Path(steps) => steps.len(),
        }
    }

    /// The exit sides in canonical direction, if this arc crosses edges.
    pub fn path_steps(&self) -> Option<&[SideRef]> {
        match &self.form {
            ArcForm::Edge(_) => None,
            ArcForm::Path(steps) => Some(steps),
        }
    }

    /// The edge this arc is isotopic to, if any.
    pub fn as_edge(&self) -> Option<EdgeId> {
        match self.form {
            ArcForm::Edge(e) => Some(e),
            ArcForm::Path(_) => None,
        }
    }

    /// Edges crossed, in order along the canonical direction.
    pub fn crossed_edges(&self, tri: &Triangulation) -> Vec<EdgeId> {
        match &self.form {
            ArcForm::Edge(_) => Vec::new(),
            ArcForm::Path(steps) => steps.iter().map(|&s| tri.edge_of(s)).collect(),
        }
    }

    /// How many times this arc crosses edge `e`.
    pub fn crossing_multiplicity(&self, tri: &Triangulation, e: EdgeId) -> u64 {
        match &self.form {
            ArcForm::Edge(_) => 0,
            ArcForm::Path(steps) => {
                steps.iter().filter(|&&s| tri.edge_of(s) == e).count() as u64
            }
        }
    }

    /// The full walk realizing this arc (in canonical direction).
    pub fn to_walk(&self, tri: &Triangulation) -> Walk {
        match &self.form {
            ArcForm::Edge(e) => {
                let s = tri.edge(*e).sides[0];
                Walk {
                    start_tri: s.tri,
                    start_corner: s.from_corner(),
                    exits: Vec::new(),
                    end_corner: s.to_corner(),
                }
            }
            ArcForm::Path(steps) => {
                let first = steps[0];
                let entry = tri.glued(*steps.last().unwrap());
                Walk {
                    start_tri: first.tri,
                    start_corner: first.side,
                    exits: steps.clone(),
                    end_corner: entry.side,
                }
            }
        }
    }
}

impl Ord for Arc {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.endpoints.cmp(&other.endpoints))
            .then_with(|| match (&self.form, &other.form) {
                (ArcForm::Edge(a), ArcForm::Edge(b)) => a.cmp(b),
                (ArcForm::Path(a), ArcForm::Path(b)) => a.cmp(b),
                (ArcForm::Edge(_), ArcForm::Path(_)) => Ordering::Less,
                (ArcForm::Path(_), ArcForm::Edge(_)) => Ordering::Greater,
            })
    }
}

impl PartialOrd for Arc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
