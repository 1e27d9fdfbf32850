//! Elliptic solutions of the associative Yang-Baxter equation.
//!
//! The crate evaluates the elliptic solution attached to a coprime type
//! `(n, d)` and a modular parameter `tau` by two independent routes and
//! verifies the functional identities it is supposed to satisfy:
//!
//! - [`theta`] and [`kronecker`]: Jacobi theta functions with quasi-periodic
//!   argument reduction, and the Kronecker elliptic function `sigma(u, z)`.
//! - [`heisenberg`] and [`tensor`]: the clock-and-shift basis of `Mat_n(C)`,
//!   trace duality, tensor-leg embeddings, and products in two and three
//!   tensor legs.
//! - [`elliptic`]: the closed-form solution `r(v; x1, x2)` as a theta-series
//!   sum over the basis.
//! - [`construction`]: the same solution recovered from the residue and
//!   evaluation maps on a space of quasi-periodic matrix functions; an
//!   independent oracle for the closed form.
//! - [`laurent`]: numerical Laurent coefficients around `v = 0`.
//! - [`gauge`]: conjugation and scalar gauge transformations of evaluators.
//! - [`verify`]: residual sweeps for the associative, classical, and quantum
//!   identities, skew-symmetry, non-degeneracy, and the closed-form versus
//!   construction cross-check.
//! - [`cli`]: the `aybe` binary (`eval`, `verify`, `expand`).
//!
//! Start with [`elliptic::SolutionParams`]; the `examples/` directory has a
//! runnable walkthrough per capability.

pub mod error;

pub mod construction;
pub mod cli;
pub mod elliptic;
pub mod fixtures;
pub mod gauge;
pub mod heisenberg;
pub mod kronecker;
pub mod laurent;
pub mod matrix;
pub mod serialize;
pub mod tensor;
pub mod theta;
pub mod verify;

pub use error::{Error, Result, C64};
