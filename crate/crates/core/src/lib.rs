pub mod arith;
pub mod curve;
pub mod divpoly;
pub mod error;
pub mod families;
pub mod numfield;
pub mod torsion;

pub use error::{Error, Result};
