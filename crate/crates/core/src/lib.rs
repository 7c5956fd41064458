//! Exact combinatorics of stability chambers for framed preprojective
//! algebras of affine ADE type, McKay correspondence data, and desk-scale
//! verification of θ-stability.

pub mod error;
pub mod field;
pub mod mckay;
pub mod quiver;
pub mod rootsys;
pub mod stabcheck;
pub mod stability;
pub mod walls;

pub use error::{Error, Result};
