//! Arcs on triangulated punctured surfaces and the complexes they form.
//!
//! The crate models a closed oriented surface with marked points via a
//! combinatorial triangulation, represents essential embedded arcs between
//! marked points in a canonical taut form, computes geometric intersection
//! numbers, cuts surfaces along arc systems, and builds paths and balls in
//! arc complexes whose vertex set is restricted by a graph on the marked
//! points.

pub mod arc;
pub mod arrange;
pub mod enumerate;
pub mod gamma;
pub mod hyp;
pub mod io;
pub mod macx;
pub(crate) mod overlay;
pub mod sample;
pub mod surface;
pub mod unicorn;
pub(crate) mod util;

pub use arrange::{cut_along, CutSurface};
pub use enumerate::{find_disjoint_arc, ArcPool, DisjointArcOutcome};
pub use overlay::{completely_disjoint, disjoint, intersection_number};
