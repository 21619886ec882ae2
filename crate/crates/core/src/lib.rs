//! Numerical and exact kernels for rank-1/rank-2 non-abelian zeta functions of `Q`.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure function of
//! its inputs and a [`NumericsConfig`]; IO, file formats and the command-line
//! front end live in the companion `nazeta` crate.
//!
//! Module map:
//!
//! - [`numerics`]: complex gamma, completed Riemann xi, K-Bessel, divisor sums,
//!   Gauss-Legendre rules.
//! - [`lattice`]: exact rational lattices, theta-series cohomology `h0`/`h1`,
//!   Fincke-Pohst enumeration, reduction of rank-2 lattices to the modular domain.
//! - [`stability`]: slopes, canonical polygons and filtrations, truncation indicators.
//! - [`eis2`]: completed `SL2(Z)` Eisenstein series, its truncations and the
//!   truncated integral over `D_T`.
//! - [`zeta`]: rank-1 and rank-2 zeta functions, contour residues, areas of `D_T`.
//! - [`eis3`]: `SL3` coordinates, coset-sum Eisenstein series, constant terms,
//!   functional-equation adjudication and cusp-region predicates.
//! - [`tannaka`]: exact parabolic bundles on `P^1` with three marked points.
#![no_std]
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod config;
mod error;

pub mod eis2;
pub mod eis3;
pub mod lattice;
pub mod linalg;
pub mod numerics;
pub mod stability;
pub mod tannaka;
pub mod zeta;

pub use config::NumericsConfig;
pub use error::{Error, Result};
pub use num_complex::Complex64 as Complex;
pub use num_rational::BigRational as Rational;
