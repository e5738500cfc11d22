//! Property tests over the public API: canonical forms absorb detours and
//! reversal, intersection numbers are symmetric, cutting keeps its
//! promises, and unicorn sequences read the same from both ends.

use std::sync::OnceLock;

use proptest::prelude::*;

use arcx_core::arc::{Arc, Walk};
use arcx_core::surface::{SideRef, Triangulation};
use arcx_core::unicorn::unicorn_arcs;
use arcx_core::{completely_disjoint, cut_along, disjoint, intersection_number, ArcPool};

/// Small surfaces with pools rich enough to matter but cheap to enumerate.
fn fixtures() -> &'static Vec<(Triangulation, Vec<Arc>)> {
    static FIXTURES: OnceLock<Vec<(Triangulation, Vec<Arc>)>> = OnceLock::new();
    FIXTURES.get_or_init(|| {
        [(0, 4, 5), (0, 5, 4), (1, 4, 3)]
            .into_iter()
            .map(|(genus, points, weight)| {
                let tri = Triangulation::standard(genus, points).expect("fixture surfaces");
                let pool = ArcPool::new(&tri).arcs_up_to(weight);
                (tri, pool)
            })
            .collect()
    })
}

/// Strategy: a fixture surface with one pooled arc on it.
fn arc_on_surface() -> impl Strategy<Value = (usize, usize)> {
    (0..fixtures().len()).prop_flat_map(|s| {
        let len = fixtures()[s].1.len();
        (Just(s), 0..len)
    })
}

fn pair_on_surface() -> impl Strategy<Value = (usize, usize, usize)> {
    (0..fixtures().len()).prop_flat_map(|s| {
        let len = fixtures()[s].1.len();
        (Just(s), 0..len, 0..len)
    })
}

/// The triangle a walk occupies after its first `k` exits.
fn triangle_at(tri: &Triangulation, walk: &Walk, k: usize) -> arcx_core::surface::TriId {
    walk.exits[..k]
        .iter()
        .fold(walk.start_tri, |_, e| tri.glued(*e).tri)
}

proptest! {
    #[test]
    fn walks_round_trip_to_the_same_arc((s, i) in arc_on_surface()) {
        let (tri, pool) = &fixtures()[s];
        let arc = &pool[i];
        let walk = arc.to_walk(tri);
        prop_assert_eq!(&Arc::from_walk(tri, &walk).expect("own walks are valid"), arc);
    }

    #[test]
    fn reversed_walks_name_the_same_arc((s, i) in arc_on_surface()) {
        let (tri, pool) = &fixtures()[s];
        let arc = &pool[i];
        let back = arc.to_walk(tri).reversed(tri);
        prop_assert_eq!(&Arc::from_walk(tri, &back).expect("reversals are valid"), arc);
    }

    #[test]
    fn backtrack_detours_normalize_away(
        (s, i) in arc_on_surface(),
        position: usize,
        side in 0u8..3,
    ) {
        let (tri, pool) = &fixtures()[s];
        let arc = &pool[i];
        let mut walk = arc.to_walk(tri);
        let at = position % (walk.exits.len() + 1);
        let here = triangle_at(tri, &walk, at);
        let out = SideRef::new(here.0, side);
        walk.exits.splice(at..at, [out, tri.glued(out)]);
        walk.validate(tri).expect("a backtrack keeps the walk valid");
        prop_assert_eq!(&Arc::from_walk(tri, &walk).expect("detours normalize"), arc);
    }

    #[test]
    fn intersection_numbers_are_symmetric((s, i, j) in pair_on_surface()) {
        let (tri, pool) = &fixtures()[s];
        let (a, b) = (&pool[i], &pool[j]);
        let ab = intersection_number(tri, a, b);
        prop_assert_eq!(ab, intersection_number(tri, b, a));
        prop_assert_eq!(disjoint(tri, a, b), ab == 0);
        if completely_disjoint(tri, a, b) {
            prop_assert_eq!(ab, 0);
        }
        prop_assert_eq!(intersection_number(tri, a, a), 0);
    }

    #[test]
    fn cutting_along_one_arc_keeps_the_surface_together((s, i) in arc_on_surface()) {
        let (tri, pool) = &fixtures()[s];
        let arc = &pool[i];
        let cut = cut_along(tri, std::slice::from_ref(arc)).expect("single cuts succeed");
        prop_assert!(cut.num_pieces() >= 1);
        // Every marked point still lives somewhere: either intact in one
        // piece or split into copies the cut tracks.
        for v in tri.marked_points() {
            prop_assert!(cut.piece_of(v).is_some() || !cut.pieces_touching(v).is_empty());
        }
        if !arc.is_loop() {
            // An arc between two distinct punctures never separates.
            prop_assert!(cut.is_connected());
        }
    }

    #[test]
    fn unicorn_sequences_read_the_same_backwards((s, i, j) in pair_on_surface()) {
        let (tri, pool) = &fixtures()[s];
        let (a, b) = (&pool[i], &pool[j]);
        prop_assume!(!a.is_loop() && !b.is_loop() && a != b);
        let v = a.endpoints()[0];
        let u = b.endpoints()[0];
        let fwd = unicorn_arcs(tri, a, v, b, u).expect("non-loop ends");
        let bwd = unicorn_arcs(tri, b, u, a, v).expect("non-loop ends");
        prop_assert!(fwd.verify(tri));
        let mut reversed: Vec<_> = bwd.elements().to_vec();
        reversed.reverse();
        prop_assert_eq!(fwd.elements(), reversed.as_slice());
    }
}
