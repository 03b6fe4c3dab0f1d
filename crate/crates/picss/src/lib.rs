//! Exact algebra for Picard groups of higher real K-theories at height `p − 1`.
//!
//! The crate is organized bottom-up:
//!
//! * [`field`], [`zmod`], [`abelian`], [`ring`]: coefficient arithmetic and
//!   finite abelian `p`-group linear algebra.
//! * [`trunclog`]: the `p`-truncated exponential and logarithm and their
//!   discrepancy polynomials.
//! * [`cohomology`], [`filtss`]: cyclic-group cohomology and a brute-force
//!   spectral sequence engine for filtered cochain complexes.
//! * [`reps`]: symmetric powers of the reduced regular representation.
//! * [`cosimp`]: cosimplicial modules, `φ`, and brute-force `βP⁰`.
//! * [`hfpss`]: symbolic homotopy fixed point and Picard spectral sequences.
//! * [`chart`]: chart documents, SVG/ASCII rendering, golden comparison.

pub mod abelian;
pub mod chart;
pub mod cohomology;
pub mod cosimp;
pub mod error;
pub mod field;
pub mod filtss;
pub mod fqlin;
pub mod hfpss;
pub mod par;
pub mod reps;
pub mod ring;
pub mod trunclog;
pub mod zmod;

pub use error::{Error, Result};
