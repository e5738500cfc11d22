//! Combinatorial triangulations of closed oriented surfaces with marked points.
//!
//! A surface is presented as a collection of abstract triangles whose sides
//! are glued in pairs.  Side `k` of a triangle joins corners `(k + 1) % 3` and
//! `(k + 2) % 3` and is opposite corner `k`; its canonical direction runs from
//! corner `(k + 1) % 3` to corner `(k + 2) % 3`.  Gluing two sides always
//! identifies their canonical directions in reverse, so every side pairing
//! produces an oriented surface.  Marked points are the equivalence classes of
//! triangle corners under the gluing.

use std::collections::HashMap;
use std::fmt;

/// A marked point of the surface (an equivalence class of triangle corners).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// An edge of the triangulation (an equivalence class of two triangle sides).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

/// A triangle of the triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl TriId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl fmt::Display for TriId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

/// One side of one triangle.  Ordered lexicographically by `(tri, side)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SideRef {
    pub tri: TriId,
    pub side: u8,
}

impl SideRef {
    pub fn new(tri: u32, side: u8) -> Self {
        SideRef {
            tri: TriId(tri),
            side,
        }
    }

    /// The corner opposite this side (same index by convention).
    pub fn opposite_corner(self) -> u8 {
        self.side
    }

    /// The corner the canonical direction of this side starts at.
    pub fn from_corner(self) -> u8 {
        (self.side + 1) % 3
    }

    /// The corner the canonical direction of this side ends at.
    pub fn to_corner(self) -> u8 {
        (self.side + 2) % 3
    }
}

impl fmt::Display for SideRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}.s{}", self.tri.0, self.side)
    }
}

/// An edge together with the two triangle sides that realize it.
///
/// `sides[0]` is the lexicographically smaller of the two sides; `endpoints`
/// lists the marked points at the ends of the edge in the canonical direction
/// of `sides[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRec {
    pub sides: [SideRef; 2],
    pub endpoints: [VertexId; 2],
}

impl EdgeRec {
    /// Endpoints as an unordered (sorted) pair.
    pub fn endpoints_sorted(&self) -> [VertexId; 2] {
        let [a, b] = self.endpoints;
        if a <= b {
            [a, b]
        } else {
            [b, a]
        }
    }

    /// Whether both endpoints coincide.
    pub fn is_loop(&self) -> bool {
        self.endpoints[0] == self.endpoints[1]
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("a genus-{genus} surface needs at least {min} marked points")]
    TooFewMarkedPoints { genus: u32, min: u32 },
    #[error("side {0} referenced by the pairing does not exist")]
    UnknownSide(SideRef),
    #[error("side {0} appears more than once in the pairing")]
    DuplicateSide(SideRef),
    #[error("side {0} is paired with itself")]
    SelfPairedSide(SideRef),
    #[error("side {0} is missing from the pairing")]
    UnpairedSide(SideRef),
    #[error("the glued triangles do not form a connected surface")]
    NotConnected,
    #[error("the gluing has Euler characteristic {0}, which is not of the form 2 - 2g")]
    BadEulerCharacteristic(i64),
}

/// A triangulated closed oriented surface with marked points.
///
/// Constructed either from an explicit side pairing
/// ([`Triangulation::from_side_pairing`]) or as the standard triangulation of
/// a given genus and number of marked points ([`Triangulation::standard`]).
#[derive(Debug, Clone)]
pub struct Triangulation {
    genus: u32,
    num_marked_points: u32,
    /// Marked point at each corner of each triangle.
    tri_vertices: Vec<[VertexId; 3]>,
    /// Side glued to each side of each triangle.
    glue: Vec<[SideRef; 3]>,
    /// Edge realized by each side of each triangle.
    tri_edges: Vec<[EdgeId; 3]>,
    edges: Vec<EdgeRec>,
}

impl Triangulation {
    /// Builds a surface from a perfect matching on triangle sides.
    ///
    /// Every one of the `3 * num_triangles` sides must occur in exactly one
    /// pair, and no side may be paired with itself.  The result must be
    /// connected; its genus is derived from the Euler characteristic.
    pub fn from_side_pairing(
        num_triangles: u32,
        pairs: &[(SideRef, SideRef)],
    ) -> Result<Self, SurfaceError> {
        let t = num_triangles as usize;
        let unset = SideRef::new(u32::MAX, 3);
        let mut glue = vec![[unset; 3]; t];
        for &(a, b) in pairs {
            for s in [a, b] {
                if s.tri.index() >= t || s.side > 2 {
                    return Err(SurfaceError::UnknownSide(s));
                }
            }
            if a == b {
                return Err(SurfaceError::SelfPairedSide(a));
            }
            for (s, other) in [(a, b), (b, a)] {
                let slot = &mut glue[s.tri.index()][s.side as usize];
                if *slot != unset {
                    return Err(SurfaceError::DuplicateSide(s));
                }
                *slot = other;
            }
        }
        for (ti, sides) in glue.iter().enumerate() {
            for (si, s) in sides.iter().enumerate() {
                if *s == unset {
                    return Err(SurfaceError::UnpairedSide(SideRef::new(ti as u32, si as u8)));
                }
            }
        }

        // Connectivity of the triangle adjacency graph.
        let mut seen = vec![false; t];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(ti) = stack.pop() {
            for s in &glue[ti] {
                let next = s.tri.index();
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        if seen.iter().any(|&v| !v) {
            return Err(SurfaceError::NotConnected);
        }

        // Edges: number side pairs by first appearance in (tri, side) order.
        let mut tri_edges = vec![[EdgeId(u32::MAX); 3]; t];
        let mut edge_sides = Vec::new();
        for ti in 0..t {
            for si in 0..3u8 {
                if tri_edges[ti][si as usize] != EdgeId(u32::MAX) {
                    continue;
                }
                let here = SideRef::new(ti as u32, si);
                let there = glue[ti][si as usize];
                let id = EdgeId(edge_sides.len() as u32);
                tri_edges[ti][si as usize] = id;
                tri_edges[there.tri.index()][there.side as usize] = id;
                edge_sides.push([here, there]);
            }
        }

        // Marked points: equivalence classes of corners under the gluing.
        // Across a glued side pair (s, s') the corner maps are
        // s+1 <-> s'+2 and s+2 <-> s'+1 (reversing canonical directions).
        let mut uf = crate::util::UnionFind::new(3 * t);
        for (ti, sides) in glue.iter().enumerate() {
            for (si, other) in sides.iter().enumerate() {
                let from = 3 * ti + (si + 1) % 3;
                let to = 3 * other.tri.index() + (other.side as usize + 2) % 3;
                uf.union(from, to);
                let from2 = 3 * ti + (si + 2) % 3;
                let to2 = 3 * other.tri.index() + (other.side as usize + 1) % 3;
                uf.union(from2, to2);
            }
        }
        let mut class_ids: HashMap<usize, u32> = HashMap::new();
        let mut tri_vertices = vec![[VertexId(u32::MAX); 3]; t];
        for ti in 0..t {
            for ci in 0..3 {
                let root = uf.find(3 * ti + ci);
                let next = class_ids.len() as u32;
                let id = *class_ids.entry(root).or_insert(next);
                tri_vertices[ti][ci] = VertexId(id);
            }
        }
        let num_marked_points = class_ids.len() as u32;

        let chi = num_marked_points as i64 - edge_sides.len() as i64 + t as i64;
        if chi > 2 || (2 - chi) % 2 != 0 {
            return Err(SurfaceError::BadEulerCharacteristic(chi));
        }
        let genus = ((2 - chi) / 2) as u32;

        let edges = edge_sides
            .into_iter()
            .map(|sides| {
                let s0 = sides[0];
                let endpoints = [
                    tri_vertices[s0.tri.index()][s0.from_corner() as usize],
                    tri_vertices[s0.tri.index()][s0.to_corner() as usize],
                ];
                EdgeRec { sides, endpoints }
            })
            .collect();

        Ok(Triangulation {
            genus,
            num_marked_points,
            tri_vertices,
            glue,
            tri_edges,
            edges,
        })
    }

    /// Builds the standard triangulation of the closed oriented genus-`g`
    /// surface with `n` marked points.
    ///
    /// For genus 0 (which needs `n >= 3`) this is a "double fan": top
    /// triangles `(0, i, i+1)` and bottom triangles `(j+1, j, n-1)` glued
    /// along their common boundary edges.  For positive genus (`n >= 1`) it is
    /// the fan triangulation of a `(4g + 2n - 2)`-gon whose boundary sides are
    /// glued following the word
    /// `a1 b1 a1' b1' ... ag bg ag' bg' c1 c1' ... c(n-1) c(n-1)'`,
    /// where `x'` denotes the reverse of `x`.
    pub fn standard(genus: u32, marked_points: u32) -> Result<Self, SurfaceError> {
        let min = if genus == 0 { 3 } else { 1 };
        if marked_points < min {
            return Err(SurfaceError::TooFewMarkedPoints { genus, min });
        }
        let tri = if genus == 0 {
            Self::standard_sphere(marked_points)?
        } else {
            Self::standard_positive_genus(genus, marked_points)?
        };
        debug_assert_eq!(tri.genus, genus);
        debug_assert_eq!(tri.num_marked_points, marked_points);
        Ok(tri)
    }

    fn standard_sphere(n: u32) -> Result<Self, SurfaceError> {
        let mut triples: Vec<[u32; 3]> = Vec::new();
        for i in 1..=n - 2 {
            triples.push([0, i, i + 1]);
        }
        for j in 0..=n - 3 {
            triples.push([j + 1, j, n - 1]);
        }
        // Each labelled edge occurs as two sides with opposite directions;
        // match them up to obtain the side pairing.
        let mut directed: HashMap<(u32, u32), SideRef> = HashMap::new();
        for (ti, tv) in triples.iter().enumerate() {
            for si in 0..3u8 {
                let s = SideRef::new(ti as u32, si);
                let from = tv[s.from_corner() as usize];
                let to = tv[s.to_corner() as usize];
                directed.insert((from, to), s);
            }
        }
        let mut pairs = Vec::new();
        for (&(from, to), &s) in directed.iter() {
            let partner = directed[&(to, from)];
            if s < partner {
                pairs.push((s, partner));
            }
        }
        pairs.sort();
        let tri = Self::from_side_pairing(triples.len() as u32, &pairs)?;
        debug_assert!(tri
            .tri_vertices
            .iter()
            .zip(&triples)
            .all(|(got, want)| (0..3).all(|c| got[c].0 == want[c])));
        Ok(tri)
    }

    fn standard_positive_genus(g: u32, n: u32) -> Result<Self, SurfaceError> {
        let sides_of_polygon = 4 * g + 2 * n - 2;
        let num_tris = sides_of_polygon - 2;
        // Fan triangle i (for i in 1..=num_tris) has its corners at polygon
        // corners (0, i, i+1) and is stored as triangle i - 1.  Polygon side p
        // (joining polygon corners p and p+1) is realized by a triangle side
        // whose canonical direction agrees with p -> p+1.
        let polygon_side = |p: u32| -> SideRef {
            if p == 0 {
                SideRef::new(0, 2)
            } else if p == sides_of_polygon - 1 {
                SideRef::new(num_tris - 1, 1)
            } else {
                SideRef::new(p - 1, 0)
            }
        };
        let mut pairs = Vec::new();
        // Interior fan diagonals.
        for i in 1..num_tris {
            pairs.push((SideRef::new(i - 1, 1), SideRef::new(i, 2)));
        }
        // Handle words a b a' b'.
        for i in 0..g {
            pairs.push((polygon_side(4 * i), polygon_side(4 * i + 2)));
            pairs.push((polygon_side(4 * i + 1), polygon_side(4 * i + 3)));
        }
        // Marked-point words c c'.
        for k in 0..n - 1 {
            pairs.push((polygon_side(4 * g + 2 * k), polygon_side(4 * g + 2 * k + 1)));
        }
        Self::from_side_pairing(num_tris, &pairs)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn num_marked_points(&self) -> u32 {
        self.num_marked_points
    }

    pub fn num_triangles(&self) -> u32 {
        self.tri_vertices.len() as u32
    }

    pub fn num_edges(&self) -> u32 {
        self.edges.len() as u32
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_marked_points as i64 - self.edges.len() as i64 + self.tri_vertices.len() as i64
    }

    /// The side glued to `side`.
    pub fn glued(&self, side: SideRef) -> SideRef {
        self.glue[side.tri.index()][side.side as usize]
    }

    /// The edge realized by `side`.
    pub fn edge_of(&self, side: SideRef) -> EdgeId {
        self.tri_edges[side.tri.index()][side.side as usize]
    }

    pub fn edge(&self, e: EdgeId) -> &EdgeRec {
        &self.edges[e.index()]
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &EdgeRec)> {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, rec)| (EdgeId(i as u32), rec))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.num_edges()).map(EdgeId)
    }

    pub fn triangles(&self) -> impl Iterator<Item = TriId> {
        (0..self.num_triangles()).map(TriId)
    }

    pub fn marked_points(&self) -> impl Iterator<Item = VertexId> {
        (0..self.num_marked_points).map(VertexId)
    }

    /// The marked point at corner `corner` of triangle `tri`.
    pub fn corner_vertex(&self, tri: TriId, corner: u8) -> VertexId {
        self.tri_vertices[tri.index()][corner as usize]
    }

    /// Marked points at the ends of `side` in its canonical direction.
    pub fn side_endpoints(&self, side: SideRef) -> (VertexId, VertexId) {
        (
            self.corner_vertex(side.tri, side.from_corner()),
            self.corner_vertex(side.tri, side.to_corner()),
        )
    }

    /// The three edges around triangle `tri`.
    pub fn tri_edges(&self, tri: TriId) -> [EdgeId; 3] {
        self.tri_edges[tri.index()]
    }

    /// The three marked points at the corners of triangle `tri`.
    pub fn tri_vertices(&self, tri: TriId) -> [VertexId; 3] {
        self.tri_vertices[tri.index()]
    }
}
