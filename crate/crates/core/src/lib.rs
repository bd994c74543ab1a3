//! Genus-2 Heegaard splitting constructions: free-group decision procedures,
//! exact curves on the genus-2 surface, Farey-graph arithmetic, splitting
//! descriptions and distance certificates.

pub mod chart;
pub mod corpus;
pub mod distance;
pub mod error;
pub mod farey;
pub mod freegroup;
pub mod registry;
pub mod splittings;
pub mod surface;

pub use error::{Error, Result};
