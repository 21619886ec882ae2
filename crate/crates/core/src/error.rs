use alloc::string::String;

use crate::Complex;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("argument {at} lies within the guard radius of the pole at {pole}")]
    PoleProximity { at: Complex, pole: Complex },
    #[error("outside the region of absolute convergence: {0}")]
    ConvergenceRegion(String),
    #[error("enumeration would exceed the vector budget of {budget}")]
    EnumerationOverflow { budget: usize },
    #[error("basis or Gram matrix is singular")]
    SingularBasis,
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("invalid argument: {0}")]
    Domain(String),
    #[error("iteration did not converge within {0} steps")]
    NonConvergence(usize),
    #[error("quadrature did not reach tolerance (last refinement changed the value by {estimate:e})")]
    QuadratureBudget { estimate: f64 },
    #[error("contour integration failed at node {node}: {message}")]
    ContourFailure { node: usize, message: String },
    #[error("invalid parabolic bundle: {0}")]
    InvalidBundle(String),
    #[error("no decomposition into library members")]
    NoDecomposition,
    #[error("{0} distinct decompositions into library members")]
    AmbiguousDecomposition(usize),
}
