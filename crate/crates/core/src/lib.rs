//! Numerical solvers for the interior Bernoulli free boundary problem of the
//! one-dimensional fractional Laplacian on intervals.
//!
//! Two problem variants are covered, both on a domain `D = (x0 - r, x0 + r)`
//! and both asking for a profile `u: R -> [0, 1]` that is harmonic for the
//! operator between a plateau `K` (where `u = 1`) and the domain boundary,
//! vanishes outside `D`, and realizes a prescribed boundary rate `lambda` at
//! the free point(s) of `K`:
//!
//! * **one free point** — `K = (a, x0 + r)`; the realized rate is the closed
//!   curve `R(a)`, strictly convex, whose minimum is the constant `mu`.
//! * **two symmetric free points** — `K = (x0 - a r, x0 + a r)`; the profile
//!   couples two intervals with no closed Poisson kernel, so it is built as
//!   a geometrically convergent series of kernel iterates, and the realized
//!   rate `Psi(a)` is minimized by a scan (no convexity is assumed).
//!
//! The crate exposes the special functions and singular-endpoint quadrature
//! the formulas need, the kernel layer (interval Poisson kernel, Dirichlet
//! representation, mean-value harmonicity residual), both solvers, and the
//! computer-assisted inequality check separating the variational threshold
//! from the Bernoulli constant at `alpha = 1`.

pub mod error;
pub mod interp;
pub mod kernels;
pub mod one_free;
pub mod proofcheck;
pub mod quadrature;
mod search;
pub mod specialfn;
pub mod two_free;
pub mod types;

pub use error::{Error, Result};
pub use kernels::OpenInterval;
pub use proofcheck::ProofReport;
pub use quadrature::{IntegralResult, QuadratureSpec};
pub use specialfn::AlphaContext;
pub use two_free::{NeumannSolution, SeriesSpec, UnimodalityReport};
pub use types::{BernoulliResult, CurveSample, FreeBoundarySolution, Interval, ProfilePoint};
