//! Small dense linear programming.
//!
//! [`solve_lp`] is a two-phase primal simplex with Bland's anti-cycling rule;
//! ties are broken by lowest index so optima are reproducible. [`min_ratio`]
//! minimises a ratio of affine functions over a polytope through the
//! Charnes–Cooper change of variables.

mod fractional;
mod simplex;

pub use fractional::{min_ratio, Affine, FractionalProgram, RatioOptimum};
pub use simplex::{solve_lp, Constraint, LinearProgram, LpSolution, LpStatus, Relation};
