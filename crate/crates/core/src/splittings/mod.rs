//! Heegaard splitting specifications, the family builders, Dehn derivation and
//! classification of doubly primitive pairs.

mod build;
mod classify;
mod derive;
mod spec;
mod stabilization;

pub use build::*;
pub use classify::*;
pub use derive::*;
pub use spec::*;
pub use stabilization::*;
