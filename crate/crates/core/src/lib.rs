//! Exact polynomial solutions of the Poisson equation `Δu = P` in the layer
//! `x ∈ R^n, 0 < y < a`, under Dirichlet or mixed Dirichlet–Neumann
//! polynomial boundary data.
//!
//! Everything in the solver path is exact rational arithmetic: a particular
//! solution is built monomial by monomial, the corrected boundary data is
//! expanded in harmonic basis polynomials, and the result is certified by
//! computing its residuals symbolically. [`numcheck`] holds the
//! floating-point cross-checks against the integral kernels.

pub mod basis;
pub mod dirichlet;
pub mod error;
pub mod mixed;
pub mod numcheck;
pub mod particular;
pub mod polyring;
pub mod solver;
pub mod text;

pub use basis::Width;
pub use error::{Error, Result};
pub use polyring::{MultiIndex, Poly, Rational, Ring};
pub use solver::{solve, verify, BoundaryKind, LayerProblem, SolutionReport};
pub use text::parse_poly;
