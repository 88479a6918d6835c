//! Exact-arithmetic satisfiability solving for conjunctions of polynomial
//! constraints over the reals, using cylindrical algebraic coverings.
//!
//! The solver decides conjunctions of constraints `p(x1..xn) ~ 0` with
//! `~` one of `<, <=, =, !=, >=, >` by recursively sampling values for the
//! variables in order. Every sample that fails is generalized to an interval
//! of values that fail for the same reason; once those intervals cover the
//! whole real line the conflict is projected one level down. All arithmetic
//! is exact: rational coefficients throughout, with real algebraic numbers
//! for sample coordinates that cannot be chosen rationally.
//!
//! Strict inequalities admit a refinement: an interval excluded purely by
//! strict constraints can be closed up to include its endpoints, which makes
//! later coverings cheaper. The `Variant` enum selects between the plain
//! algorithm, the closed-interval refinement, and a covering heuristic that
//! prefers closed intervals.

pub mod rational;
pub mod poly;
pub mod polygcd;
pub mod resultant;
pub mod unipoly;
pub mod isolate;
pub mod realalg;
pub mod covering;
pub mod engine;
pub mod verify;
pub mod smtlib;
pub mod report;
pub mod fuzzgen;

pub use engine::{solve, Constraint, Formula, Relation, SolveResult, Variant, Verdict};
pub use poly::Polynomial;
pub use rational::Rational;
pub use realalg::RealAlgebraicNumber;
