//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("outcome count must be at least {min}, got {got}")]
    BadOutcomeCount { got: u32, min: u32 },

    #[error("outcome count {got} exceeds the enumeration limit {limit}")]
    OutcomeCountTooLarge { got: u32, limit: u32 },

    #[error("outcome index {index} out of range 1..={m}")]
    OutcomeOutOfRange { index: u32, m: u32 },

    #[error(
        "tier vector is not a valid weak order: tiers must cover 1..=t with every tier occupied"
    )]
    NonContiguousTiers,

    #[error("profile needs at least one player")]
    EmptyProfile,

    #[error(
        "players disagree on the outcome count: player 1 has {expected}, player {player} has {got}"
    )]
    MixedOutcomeCounts {
        player: usize,
        expected: u32,
        got: u32,
    },

    #[error("dimension mismatch: expected {expected_players} players over {expected_outcomes} outcomes, got {got_players} over {got_outcomes}")]
    DimensionMismatch {
        expected_players: usize,
        expected_outcomes: u32,
        got_players: usize,
        got_outcomes: u32,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("a pair must contain two distinct outcomes, got {{{index},{index}}}", index = .index)]
    DegeneratePair { index: u32 },

    #[error("{n} disjoint pairs need at least {needed} outcomes, got {m}")]
    TooFewOutcomes { n: u32, needed: u32, m: u32 },

    #[error("pair assignment must have at least one pair")]
    EmptyAssignment,

    #[error("pair assignment is not disjoint: outcome {shared} appears in the pairs of players {first} and {second}")]
    NotDisjoint {
        shared: u32,
        first: usize,
        second: usize,
    },

    #[error("pair assignment is disjoint; no shared outcome to witness")]
    DisjointAssignment,

    #[error("the naming mechanism needs at least three players, got {n}")]
    TooFewPlayers { n: usize },

    #[error("two-player analysis requires exactly two pairs, got {n}")]
    NotTwoPlayers { n: usize },

    #[error("{size} {kind} exceed the guard limit {limit}; raise it explicitly to proceed")]
    GuardLimit {
        size: u128,
        kind: &'static str,
        limit: u64,
    },

    #[error("rule returned an empty outcome set for profile #{index}")]
    EmptyRuleOutput { index: u64 },

    #[error("no outcome selected at the base profile is maintained-or-improved by the transformed profile")]
    UnusableMonotonePair,

    #[error("ragged grid: row {row} has {got} cells, expected {expected}")]
    RaggedGrid {
        row: usize,
        got: usize,
        expected: usize,
    },

    #[error("grid must have at least one row and one column")]
    EmptyGrid,
}

pub type Result<T> = std::result::Result<T, Error>;
