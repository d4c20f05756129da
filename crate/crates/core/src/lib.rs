//! Exact symbolic engine for Hopf algebras, comodule algebras, Hopf-Galois
//! extensions and their deformations by 2-cocycles.

pub mod catalog;
pub mod cocycles;
pub mod error;
pub mod galois;
pub mod hopf;
pub mod instance_file;
pub mod linalg;
pub mod presentations;
pub mod report;
pub mod run;
pub mod sampling;
pub mod scalars;
pub mod suites;
pub mod tensor;
pub mod twisting;
mod util;

pub use error::{Error, Result};
pub use presentations::{AlgebraElement, GradingGroup, Presentation, PresentationBuilder, Word};
pub use report::{Report, Witness};
pub use galois::GaloisInstance;
pub use hopf::{HopfAlgebra, HopfStructure, RightCoaction};
pub use scalars::{CycloLaurent, ScalarRing};
pub use tensor::TensorElement;

/// Scalars over arbitrary precision rationals; used throughout the crate.
pub type Scalar = CycloLaurent<num_rational::BigRational>;

/// Scalars over `i64` rationals, for small standalone computations.
pub type Scalar64 = CycloLaurent<num_rational::Rational64>;
