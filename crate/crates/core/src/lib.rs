//! Exact integer toolkit for monomial Cremona transformations of P^n.
//!
//! - [`intmat`]: overflow-checked dense integer matrices.
//! - [`cremap`]: reduced log-matrices, birationality, inversion, composition.
//! - [`glnz`]: the correspondence with GL_n(Z) and a random walk sampler.
//! - [`census`]: exhaustive enumeration of all maps of a given degree.
//! - [`families`]: named constructions with closed-form inverse degrees.
//! - [`io`]: plain-text and JSON matrix documents.

pub mod census;
pub mod cremap;
pub mod error;
pub mod families;
pub mod glnz;
pub mod intmat;
pub mod io;

pub use census::{CensusReport, DegreeHistogram, ExponentVector};
pub use cremap::{equivalent, InversionResult, MonomialMap};
pub use error::{Error, Result};
pub use families::{Family, FamilySpec};
pub use glnz::{ElementaryOp, UnimodularMatrix, Walk, WalkConfig, WalkSample};
pub use intmat::{IntMatrix, RowShifts};
