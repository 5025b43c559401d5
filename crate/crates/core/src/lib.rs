//! Nash implementation toolkit for choice-liberal social choice rules.
//!
//! The crate has three layers:
//!
//! - **Environment** ([`prefs`], [`rules`]): outcomes, weak-order preference
//!   profiles, decisive-pair assignments, the liberal rule, and the axiom
//!   checkers (choice liberalism, no-veto power, monotonicity).
//! - **Games** ([`mechanisms`], [`nash`]): finite game forms — the naming
//!   mechanism for `n >= 3` players and arbitrary two-player matrices — plus
//!   exhaustive pure-strategy Nash equilibrium enumeration.
//! - **Evidence** ([`verify`], [`impossibility`]): the implementation
//!   identity `η(H(γ, R)) = σ(R)` checked over enumerated, sampled and
//!   adversarial profile streams, and constructive witnesses for the negative
//!   cases (overlapping decisive pairs; no small two-player implementation).
//!
//! Everything is deterministic: enumeration orders are frozen, sampling is
//! exact unranking under a caller-supplied seed, and reports are reproducible
//! bit-for-bit.

pub mod error;
pub mod impossibility;
pub mod mechanisms;
pub mod nash;
pub mod prefs;
pub mod rules;
pub mod verify;

pub use error::{Error, Result};
pub use mechanisms::{GameForm, LiberalGameForm, LiberalStrategy, MatrixGameForm};
pub use nash::{best_deviation, equilibrium_outcomes, nash_equilibria, EquilibriumSet};
pub use prefs::{OutcomeId, Profile, Relation, WeakOrder, WeakOrderSpace};
pub use rules::{liberal_rule, OutcomeSet, PairAssignment, Violation, ViolationKind};
pub use verify::{check_implementation_at, verify_profiles, ProfileVerdict, Verdict};
