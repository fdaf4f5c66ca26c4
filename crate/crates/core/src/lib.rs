//! Certification of log-concavity and log-convexity in the shift
//! parameter for hypergeometric-type families, plus the bounds and
//! identities that follow from it.

pub mod ball;
pub mod bounds;
pub mod error;
pub mod families;
pub mod fps;
pub mod hyper;
pub mod interval;
pub mod rational;
pub mod symmetric;
pub mod verifier;

pub use error::{Error, Result};
