//! Level-set solver for the two-dimensional least gradient problem.
//!
//! Given a strictly convex planar domain and boundary data of bounded
//! variation, the solver builds the superlevel sets of the minimizer one level
//! at a time: at every regular level the boundary crossings are joined by a
//! non-crossing system of chords of least total length (measured in an
//! `l^p` norm), and the solution is recovered as the supremum of the levels
//! whose region contains a point. Total variation follows from the co-area
//! formula and can be cross-checked on the raster.
//!
//! The crate is `no_std` (it needs `alloc`). Enable `std` for `std::error::Error`
//! integration and `parallel` to spread the level sweep and rasterization over
//! a rayon pool; results are bit-identical either way.
//!
//! Module map:
//! - [`geometry`]: domains, anisotropic chord costs.
//! - [`boundary`]: boundary data, level crossings, Cantor stages, mollification.
//! - [`matching`]: minimal non-crossing matchings and optimal-set enumeration.
//! - [`solver`]: level sweep, nesting repair, reconstruction, trace checks.
//! - [`decompose`]: continuous + jump decomposition on a region tree.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

mod error;
mod math;

pub mod boundary;
pub mod decompose;
pub mod geometry;
pub mod matching;
pub mod solver;

pub use error::{Error, Result};

pub use boundary::{BoundaryDatum, Crossing, CrossingSet, Direction};
pub use decompose::RegionTree;
pub use geometry::{Anisotropy, ConvexDomain, Point};
pub use matching::LevelMatching;
pub use solver::{SolutionField, SuperlevelFamily};
