//! Line-segment discrepancy against two-colored lattice checkerboards whose tiles
//! are general polygonal fundamental domains.

pub mod certificate;
pub mod clip;
pub mod coloring;
pub mod config;
pub mod error;
pub mod fourier;
pub mod lattice;
pub mod polygon;
pub mod quadrature;
pub mod render;
pub mod search;
pub mod transect;

pub use error::{Error, Result};
