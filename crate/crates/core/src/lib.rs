//! Exact-arithmetic toolkit for linear complementarity problems whose matrix
//! is a hidden Z-matrix.
//!
//! Every quantity is an arbitrary-precision rational, so class memberships,
//! certificates and LCP solutions are decided exactly, with no tolerances.
//!
//! Modules, bottom-up:
//!
//! - [`ratmat`]: dense rational matrices, determinants, Schur complements,
//!   principal pivot transforms.
//! - [`lpcore`]: two-phase simplex with Bland's rule and strict-inequality
//!   feasibility.
//! - [`matclass`]: Z, K, P, P₀, almost P, S, S̄, E, E₀, N and type-D tests.
//! - [`gameval`]: matrix game value and sign queries.
//! - [`hiddenz`]: hidden Z certificates and the P/P₀ classification LP.
//! - [`lcpsolve`]: Lemke, criss-cross, LP reformulation and enumeration.
//! - [`labgen`]: seeded instance generators and property suites.
//! - [`io`]: JSON file formats and report shapes shared by the CLI and FFI.

pub mod error;
pub mod gameval;
pub mod hiddenz;
pub mod io;
pub mod labgen;
pub mod lcpsolve;
pub mod lpcore;
pub mod matclass;
pub mod rational;
pub mod ratmat;

pub use error::{Error, Result};
pub use rational::Rational;
pub use ratmat::{IndexSet, RatMatrix};

/// Default cap on matrix order for procedures that sweep all principal
/// submatrices.
pub const DEFAULT_SUBSET_CAP: usize = 12;
