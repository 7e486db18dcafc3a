mod arith;
pub mod error;
pub mod intlinalg;
pub mod oracle;
pub mod rootsys;
pub mod spectrum;
pub mod torus;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
