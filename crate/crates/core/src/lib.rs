//! Weighted-soliton invariants of toric Fano manifolds from their canonical
//! momentum polytopes.
//!
//! The crate is organized bottom up:
//!
//! * [`polytope`]: exact H-representation, vertices, faces, triangulation.
//! * [`weights`]: symbolic positive weights and the weight gap.
//! * [`integrate`]: moments of weights (closed form, adaptive cubature, Monte Carlo).
//! * [`functionals`]: convex functionals and Futaki invariants.
//! * [`solve`]: damped Newton and the named critical points.
//! * [`invariants`]: obstruction checks and stability quantities.
//! * [`catalog`] and [`cli`]: built-in polytopes and the command-line front end.
//!
//! Integrals use Lebesgue measure on P, so `n! int_P 1 dx` is the
//! anticanonical degree.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod extremum;
pub mod functionals;
pub mod integrate;
pub mod invariants;
pub mod polytope;
pub mod solve;
pub mod weights;

pub use error::{Error, Result};
pub use functionals::{futaki, ConvexFunctional, FunctionalKind};
pub use integrate::{integrate_weight, IntegrationConfig, MomentData};
pub use polytope::{AffineFn, Facet, Polytope, Simplex};
pub use solve::{SolveReport, SolverConfig};
pub use weights::Weight;
