//! Exact-arithmetic toolkit for finite-dimensional Hopf algebras given by
//! structure constants.
//!
//! The crate builds the quantum double of a Hopf algebra, translates double
//! representations into bicovariant bimodules, searches for first-order
//! differential calculi, and computes the associated degree-zero and
//! degree-one Hochschild cohomology, all over the rationals with no
//! rounding. A small numeric module checks the explicit five-dimensional
//! representation of the deformed two-dimensional Euclidean group in
//! floating point.
//!
//! Every algebraic object is immutable after construction and all operations
//! are pure, so values can be shared freely across threads.

pub mod bimodule;
pub mod calculus;
pub mod double;
pub mod eq2;
pub mod format;
pub mod group;
pub mod hochschild;
pub mod hopf;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod tensor;

pub use bimodule::{BicovariantBimodule, DoubleRepresentation, GammaElement};
pub use calculus::FirstOrderCalculus;
pub use double::{DoubleElement, DrinfeldDouble};
pub use group::{ConjugacyClass, FiniteGroup, GroupDoubleContext};
pub use hopf::{AlgebraElement, AxiomReport, DualPair, HopfAlgebra, HopfStructure};
pub use scalar::Scalar;

/// Errors shared by all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("singular matrix")]
    SingularMatrix,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("Hopf axioms failed: {0}")]
    AxiomsFailed(String),

    #[error("elements belong to different algebras: {0}")]
    ParentMismatch(&'static str),

    #[error("not a group: {0}")]
    InvalidGroup(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension {dim} exceeds the configured bound {max}")]
    LimitExceeded { dim: usize, max: usize },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default cap on the dimension of a loaded algebra or the order of a loaded
/// group. Overridable through `HOPFDOUBLE_MAX_DIM` or a CLI flag.
pub const DEFAULT_MAX_DIM: usize = 24;
