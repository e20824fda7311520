//! Exact simulation of an append-only multiway rewriting system and its
//! coarse-graining onto a single qubit.
//!
//! States are words over the alphabet `a_0 ..= a_K`; every rule appends one
//! symbol. Each word collapses to the qubit term `(-i)^m |m mod 2>` where `m`
//! counts occurrences of `a_K`, and the sum of a level's terms is the level's
//! *template*. Normalized templates approach the solution of
//! `i dΨ/dt = X Ψ`, `Ψ(0) = |0>`.
//!
//! Modules:
//!
//! * [`multiway`] - words, levels and edges of the multiway system.
//! * [`renormalization`] - the coarse-graining map and the induced rule multiset.
//! * [`template`] - templates computed by enumeration, recurrence, closed form
//!   and binomial counting, all in exact Gaussian-integer arithmetic.
//! * [`continuum`] - the analytic wave function and 2x2 matrix exponentials.
//! * [`gaussian`] - arbitrary-precision Gaussian integers.

pub mod continuum;
pub mod error;
pub mod gaussian;
pub mod multiway;
pub mod renormalization;
pub mod template;

pub use continuum::{
    exact_solution, expm_2x2, expm_limit, l2_error, schrodinger_residual, Matrix2c, WaveFunction,
};
pub use error::{Error, Result};
pub use gaussian::GaussianInt;
pub use multiway::{
    enumerate_level, level_edges, level_size, successors, ModelConfig, MultiwayLevel, Symbol, Word,
    DEFAULT_ENUMERATION_CAP,
};
pub use renormalization::{
    coarse_grain, count_marked, omega_image, renormalized_ruleset, Basis, QubitTerm,
    RenormalizedRule, Unit,
};
pub use template::{
    class_multiplicity, compute_template, normalize_template, normalize_template_literal,
    template_binomial, template_bruteforce, template_closedform, template_recurrence, Algorithm,
    TemplateVector,
};
