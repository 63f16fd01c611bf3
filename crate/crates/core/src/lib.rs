pub mod arith;
pub mod charts;
pub mod error;
pub mod euler;
pub mod groebner;
pub mod punctual;
pub mod rng;
pub mod tautological;
pub mod vandermonde;

pub use error::{Error, Result};
