//! Graded free resolutions, Ext and Tor over quotients of polynomial rings
//! over prime fields, and experiments on their vanishing.

pub mod algebra;
pub mod error;
pub mod groebner;
pub mod lab;
pub mod module;
pub mod par;
pub mod resolution;

#[cfg(test)]
mod testing;

pub use error::{Error, ErrorKind, Result};
