//! The oracle and the combinatorial counter must agree pair-for-pair.
//! The two implementations share nothing past the walk representation:
//! one counts corridor crossings on the triangulation, the other develops
//! geodesics into the plane and scores circle intersections.

use arcx_core::surface::Triangulation;
use arcx_core::ArcPool;

#[test]
fn every_light_pair_agrees_across_three_surfaces() {
    let mut total = 0usize;
    for (genus, points, weight) in [(0u32, 4u32, 5usize), (0, 5, 4), (1, 4, 3)] {
        let tri = Triangulation::standard(genus, points).expect("fixture surfaces");
        let pool = ArcPool::new(&tri).arcs_up_to(weight);
        assert!(pool.len() > 50, "pools must be big enough to mean something");
        for (i, a) in pool.iter().enumerate() {
            for b in pool.iter().skip(i) {
                assert_eq!(
                    arcx_core::intersection_number(&tri, a, b),
                    arcx_oracle::intersection_number(&tri, a, b),
                    "disagreement on genus {genus}, {points} punctures"
                );
                total += 1;
            }
        }
    }
    assert!(total > 9000, "the sweep covered {total} pairs");
}
