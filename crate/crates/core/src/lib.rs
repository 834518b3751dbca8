//! Capacity bounds for the symmetric Gaussian relay channel with an
//! isolated relay-destination bit pipe, together with the high-dimensional
//! sphere geometry that backs the converse and a Monte Carlo harness for
//! the extended isoperimetric inequalities on spheres and shells.
//!
//! All rates are in bits per channel use and all measures are carried as
//! base-2 logarithms.

pub mod bounds;
pub mod channel;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod montecarlo;

pub use channel::{ChannelParams, LinkCapacity, Rate};
pub use error::{Error, Result};
