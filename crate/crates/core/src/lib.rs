//! Area-based geometry of tetrahedra.
//!
//! Start from coordinates ([`tetra::Tetrahedron`]), squared edge lengths
//! ([`tetra::SquaredDistances`]), the seven facial areas
//! ([`tetra::FacialAreas`]) or the six natural parameters
//! ([`natural::NaturalParams`]) and move between them, including into the
//! zero-volume regime.

pub mod areal;
pub mod degeneracy;
pub mod error;
pub mod exact;
pub mod involutions;
pub mod linalg;
pub mod natural;
pub mod nsimplex;
pub mod param2to2;
pub mod planar;
pub mod reconstruction;
pub mod sampling;
pub mod scalar;
pub mod tetra;

pub use error::{Error, Result};
