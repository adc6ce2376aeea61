//! Exact syzygy computations and tight-closure decisions for homogeneous
//! ideals in the coordinate ring of a smooth plane curve.

pub mod cohomology;
pub mod curvering;
pub mod error;
pub mod criteria;
pub mod exactfield;
pub mod frobenius;
pub mod parse;
pub mod polyspace;
pub mod syzygy;

pub use error::{Error, Result};
