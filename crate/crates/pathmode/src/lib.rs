//! Solve boundary value problems for linear second-order ODEs
//! `y'' + f(t) y' + g(t) y + h(t) = 0`, `y(0) = 0`, `y(T) = a`,
//! by constructing a diffusion whose most likely path is the solution.
//!
//! The pipeline has four stages:
//!
//! 1. **transform** — an exponential weight `V(t) = ½∫₀ᵗ f` removes the
//!    first-derivative term, leaving a reduced equation in `ĝ = g - f'/2 - f²/4`
//!    and `ĥ = e^V h`; the answer is recovered as `y = e^{-V} ŷ`.
//! 2. **riccati** — the drift pair `(A, D)` solves `AᵀA + Ȧ = -ĝ` and
//!    `Ḋ + AᵀD = -ĥ`, by closed form, by reduction to a linear second-order
//!    equation, or by direct integration, with blow-up detection.
//! 3. **variational** — the reduced solution minimizes the quadratic
//!    path-space functional `½∫ E‖ż - A(B+z) - D‖² dt` over paths pinned at
//!    both ends; a Legendre basis turns this into a small SPD solve.
//! 4. **pathspace / reference** — Monte Carlo sampling of the underlying
//!    diffusion, a discrete-grid mode, and finite-difference / series oracles
//!    cross-check every stage.
//!
//! See the crate examples for one runnable program per capability, and the
//! `pathmode` binary for the `solve`, `riccati`, `compare`, `sample`
//! subcommands.

pub mod expr;
pub mod problem;

pub use expr::{parse_expression, EvalError, Expr, ParseError};
pub use problem::{load_problem, load_problem_file, Coefficient, ConfigError, Grid, Problem};
