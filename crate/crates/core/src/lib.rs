//! Trace codes from places of arbitrary degree over rational function fields.

pub mod analysis;
pub mod bounds;
pub mod error;
pub mod funcfield;
pub mod gf;
pub mod linalg;
pub mod numtheory;
pub mod poly;
pub mod repro;
pub mod sweep;
pub mod text;
pub mod tracecode;

pub use error::{Error, Result};
pub use gf::{Field, FieldElem};
pub use linalg::{Matrix, Subspace};
pub use poly::Poly;
pub use analysis::{AnalysisReport, LinearCode, MixedCode};
pub use bounds::{BoundEntry, BoundsInput, Num, Verdict};
pub use funcfield::{Divisor, Place, RRSpace, RationalFunction};
pub use tracecode::{CodeSpec, QCGrid, TraceCode};
