//! Construction and analysis of high-genus square-lattice surfaces and the
//! topological codes they carry.
//!
//! The crate is organised bottom-up:
//!
//! * [`complex`] holds the cell complex, its surgery operations (punch, sew,
//!   cut, dualize) and the versioned surface file format.
//! * [`surface`] assembles many-handle surfaces from a [`surface::SurfaceBlueprint`],
//!   cuts their handles and randomly re-pairs the loose ends.
//! * [`homology`] extracts the CSS code of a closed complex, tests homology
//!   classes and computes systoles.
//! * [`geometry`] measures circle growth and evaluates the scaling formulas
//!   for minimal loops, threshold factors and walk counts.
//! * [`decoding`] samples independent errors, decodes them with exact
//!   minimum-weight perfect matching (or baselines) and estimates logical
//!   failure rates.
//!
//! All logarithms in the scaling formulas are natural logarithms.

pub mod chain;
pub mod complex;
pub mod decoding;
pub mod error;
pub mod geometry;
pub mod gf2;
pub mod graph;
pub mod homology;
pub mod matching;
pub mod stats;
pub mod surface;

pub use chain::BinaryChain;
pub use complex::{Boundary, CellComplex, Cut, Diagnostics, FaceTag, Handle, Walk};
pub use error::{Error, ErrorFamily, Result};
