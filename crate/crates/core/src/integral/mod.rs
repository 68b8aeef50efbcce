//! Quadrature discretization of
//! `x(t) = y₀(t) + ∫₀¹ b(t, z, x(z)) dz` on grid functions.

mod function;
mod kernel;
mod problem;
mod quadrature;
mod solve;

pub use function::{GridFunction, Polynomial};
pub use kernel::KernelSpec;
pub use problem::{check_kernel_hypotheses, IntegralProblem, ProblemSpec};
pub use quadrature::{build_grid, QuadratureGrid, QuadratureRule};
pub use solve::{refine_check, solve_picard, solve_thakur, Solver};
