//! Local invariants of genus-2 curves, mod-p image certificates for their
//! Jacobians, and the weight combinatorics of GSp4.

pub mod checker;
pub mod curve;
pub mod error;
pub mod ffpoly;
pub mod gsp4f3;
pub mod lmfdb;
pub mod mod2image;
pub mod weyl;

pub use error::{Error, Result};
