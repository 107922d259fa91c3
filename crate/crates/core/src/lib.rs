//! Fibered classes of the magic manifold, certified dilatations and
//! minimal-dilatation tables for its Dehn fillings.
//!
//! The crate is layered: [`homology`] gives closed formulas on the fibered
//! cone, [`polyroot`] isolates and compares largest real roots exactly,
//! [`fillings`] specializes to the three filling families, and [`tables`]
//! enumerates minima and checks the published bounds.

pub mod dyadic;
pub mod error;
pub mod fillings;
pub mod homology;
pub mod polyroot;
pub mod tables;

pub use error::{Error, Result};
