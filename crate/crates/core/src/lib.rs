//! Inclusion calculus between Carleson sets `S(b, h)` and Carleson windows
//! `W(b, h)` in the open unit disk.
//!
//! * [`geometry`]: points, regions, membership predicates, window landmarks.
//! * [`analysis`]: admissible constants `c` and the crossover height.
//! * [`oracle`]: sampling verifier for region inclusions.
//! * [`render`]: SVG figures.
//! * [`cli`]: the `carleson` command-line frontend.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod render;

pub use error::{Error, Result};
