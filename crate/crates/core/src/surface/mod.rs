//! Exact simple closed curves on the closed genus-2 surface, drawn as chord
//! diagrams in an octagon with side identifications.

mod curve;
pub mod fixtures;
mod homotopy;
mod meridian;
mod octagon;
mod ops;

pub use curve::{
    crossing_points, crossings, disjoint, interleaves, intersect, validate, Chord, ChordCrossing,
    ChordCurve, CurveCrossing, Violation,
};
pub use homotopy::{bounds_disk, is_trivial_in_surface_group, surface_relator, surface_word};
pub use meridian::{word_along, word_of, MeridianSystem};
pub use octagon::{parse_rat, rat, BoundaryPoint, OctagonModel, Rat};
pub use ops::{
    band_sum, band_sum_avoiding, compact, min_gap, neighbourhood_boundary,
    neighbourhood_boundary_avoiding, push_off, push_off_by, resolve, smooth, twist, twist_avoiding,
    Resolved, Side, Smoothing, TwistProgram,
};

#[cfg(test)]
mod tests;
