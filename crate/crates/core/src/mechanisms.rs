//! Finite game forms: the naming mechanism and two-player outcome matrices.
//!
//! In the naming mechanism each player simultaneously names one member of
//! their own decisive pair and one player. If at least all-but-one players
//! name the same player, that player's named outcome is final; otherwise the
//! final outcome is the one named by the lowest-indexed player. Under the
//! canonical pairing the disagreement branch coincides with "smallest named
//! outcome" (checked as a test invariant), but for generalized assignments
//! the two readings differ and the lowest-indexed-player reading is the one
//! implemented, matching how the three-player worked example resolves
//! disagreement.
//!
//! Strategy profiles are passed as one 0-based strategy index per player;
//! every form is immutable after construction and evaluation is pure.

use std::fmt;

use crate::error::{Error, Result};
use crate::prefs::{OutcomeId, Profile};
use crate::rules::{OutcomeSet, PairAssignment};

/// One strategy of the naming mechanism: a named outcome from the owner's
/// pair and a named player (0-based).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LiberalStrategy {
    pub named_outcome: OutcomeId,
    pub named_player: usize,
}

/// The naming mechanism for a disjoint assignment of `n >= 3` pairs.
#[derive(Clone, Debug)]
pub struct LiberalGameForm {
    assign: PairAssignment,
    /// Strategy set of each player: `(low, 1), ..., (low, n), (high, 1),
    /// ..., (high, n)` — 2n strategies, frozen in this order.
    strategies: Vec<Vec<LiberalStrategy>>,
}

impl LiberalGameForm {
    /// Builds the mechanism. The all-but-one consensus reading is ambiguous
    /// between two players, and no two-player mechanism implements the
    /// liberal rule anyway, so `n < 3` is rejected outright.
    pub fn new(assign: PairAssignment) -> Result<Self> {
        let n = assign.players();
        if n < 3 {
            return Err(Error::TooFewPlayers { n });
        }
        if let Some((first, second, shared)) = assign.first_overlap() {
            return Err(Error::NotDisjoint {
                shared: shared.get(),
                first: first + 1,
                second: second + 1,
            });
        }
        let strategies = (0..n)
            .map(|player| {
                let (low, high) = assign.pair(player);
                let mut set = Vec::with_capacity(2 * n);
                for named_outcome in [low, high] {
                    for named_player in 0..n {
                        set.push(LiberalStrategy {
                            named_outcome,
                            named_player,
                        });
                    }
                }
                set
            })
            .collect();
        Ok(LiberalGameForm { assign, strategies })
    }

    pub fn assignment(&self) -> &PairAssignment {
        &self.assign
    }

    pub fn players(&self) -> usize {
        self.assign.players()
    }

    pub fn outcome_count(&self) -> u32 {
        self.assign.outcomes()
    }

    pub fn strategy_count(&self, player: usize) -> usize {
        self.strategies[player].len()
    }

    /// Decodes a strategy index of one player.
    pub fn strategy(&self, player: usize, index: usize) -> LiberalStrategy {
        self.strategies[player][index]
    }

    /// Outcome of a full strategy profile (one index per player).
    pub fn outcome(&self, profile: &[usize]) -> OutcomeId {
        let n = self.players();
        assert_eq!(profile.len(), n, "strategy profile length");
        // Find a player named by at least n - 1 players; for n >= 3 two such
        // players would need 2(n - 1) <= n votes, so at most one exists.
        let mut consensus = None;
        for named in 0..n {
            let votes = (0..n)
                .filter(|&p| self.strategies[p][profile[p]].named_player == named)
                .count();
            if votes + 1 >= n {
                assert!(
                    consensus.is_none(),
                    "two distinct consensus players; impossible for n >= 3"
                );
                consensus = Some(named);
            }
        }
        let chooser = consensus.unwrap_or(0);
        self.strategies[chooser][profile[chooser]].named_outcome
    }
}

/// A two-player game form given by a `rows x cols` outcome grid; the row
/// player is player 0, the column player is player 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixGameForm {
    grid: Vec<Vec<OutcomeId>>,
    m: u32,
}

impl MatrixGameForm {
    /// Builds a matrix form over `m` outcomes, rejecting ragged or empty
    /// grids and out-of-range cells.
    pub fn new(grid: Vec<Vec<u32>>, m: u32) -> Result<Self> {
        let cols = grid.first().map(|r| r.len()).unwrap_or(0);
        if grid.is_empty() || cols == 0 {
            return Err(Error::EmptyGrid);
        }
        let mut rows = Vec::with_capacity(grid.len());
        for (r, row) in grid.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedGrid {
                    row: r + 1,
                    got: row.len(),
                    expected: cols,
                });
            }
            let mut cells = Vec::with_capacity(cols);
            for &cell in row {
                if cell < 1 || cell > m {
                    return Err(Error::OutcomeOutOfRange { index: cell, m });
                }
                cells.push(OutcomeId::new(cell));
            }
            rows.push(cells);
        }
        Ok(MatrixGameForm { grid: rows, m })
    }

    /// Parses the matrix text format:
    ///
    /// ```text
    /// outcomes: 4
    /// rows: 2
    /// cols: 2
    /// row 1: 1 1
    /// row 2: 2 3
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse { line, message };
        let mut m: Option<u32> = None;
        let mut rows: Option<usize> = None;
        let mut cols: Option<usize> = None;
        let mut grid: Vec<Vec<u32>> = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once(':')
                .ok_or_else(|| err(line, "expected `key: value`".into()))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "outcomes" => {
                    m = Some(
                        value
                            .parse()
                            .map_err(|_| err(line, format!("invalid outcome count `{value}`")))?,
                    );
                }
                "rows" => {
                    rows = Some(
                        value
                            .parse()
                            .map_err(|_| err(line, format!("invalid row count `{value}`")))?,
                    );
                }
                "cols" => {
                    cols = Some(
                        value
                            .parse()
                            .map_err(|_| err(line, format!("invalid column count `{value}`")))?,
                    );
                }
                _ if key.starts_with("row") => {
                    let q = cols.ok_or_else(|| err(line, "row line before `cols:`".into()))?;
                    let label: usize = key["row".len()..]
                        .trim()
                        .parse()
                        .map_err(|_| err(line, format!("invalid row label `{key}`")))?;
                    if label != grid.len() + 1 {
                        return Err(err(line, format!("expected `row {}`", grid.len() + 1)));
                    }
                    let cells: Vec<u32> = value
                        .split_whitespace()
                        .map(|tok| {
                            tok.parse()
                                .map_err(|_| err(line, format!("invalid outcome index `{tok}`")))
                        })
                        .collect::<Result<_>>()?;
                    if cells.len() != q {
                        return Err(err(
                            line,
                            format!("expected {q} cells, got {}", cells.len()),
                        ));
                    }
                    grid.push(cells);
                }
                _ => return Err(err(line, format!("unknown key `{key}`"))),
            }
        }
        let m = m.ok_or_else(|| err(last_line + 1, "missing `outcomes:` line".into()))?;
        let p = rows.ok_or_else(|| err(last_line + 1, "missing `rows:` line".into()))?;
        if grid.len() != p {
            return Err(err(
                last_line + 1,
                format!("rows: {p} but found {} row lines", grid.len()),
            ));
        }
        MatrixGameForm::new(grid, m)
    }

    /// Renders the canonical text form parsed by [`MatrixGameForm::parse`].
    pub fn format(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("outcomes: {}\n", self.m));
        out.push_str(&format!("rows: {}\n", self.rows()));
        out.push_str(&format!("cols: {}\n", self.cols()));
        for (r, row) in self.grid.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("row {}: {}\n", r + 1, cells.join(" ")));
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.grid.len()
    }

    pub fn cols(&self) -> usize {
        self.grid[0].len()
    }

    pub fn outcome_count(&self) -> u32 {
        self.m
    }

    /// Cell lookup, 0-based.
    pub fn cell(&self, row: usize, col: usize) -> OutcomeId {
        self.grid[row][col]
    }

    pub fn outcome(&self, profile: &[usize]) -> OutcomeId {
        assert_eq!(profile.len(), 2, "matrix forms have two players");
        self.grid[profile[0]][profile[1]]
    }

    /// True when every cell of some row is `outcome` (a structural feature
    /// the two-player refutation narrative points at).
    pub fn constant_row(&self, outcome: OutcomeId) -> Option<usize> {
        self.grid
            .iter()
            .position(|row| row.iter().all(|&c| c == outcome))
    }
}

/// A finite game form of either kind, behind one evaluation interface.
#[derive(Clone, Debug)]
pub enum GameForm {
    Liberal(LiberalGameForm),
    Matrix(MatrixGameForm),
}

impl From<LiberalGameForm> for GameForm {
    fn from(gf: LiberalGameForm) -> Self {
        GameForm::Liberal(gf)
    }
}

impl From<MatrixGameForm> for GameForm {
    fn from(gf: MatrixGameForm) -> Self {
        GameForm::Matrix(gf)
    }
}

impl GameForm {
    pub fn players(&self) -> usize {
        match self {
            GameForm::Liberal(gf) => gf.players(),
            GameForm::Matrix(_) => 2,
        }
    }

    pub fn outcome_count(&self) -> u32 {
        match self {
            GameForm::Liberal(gf) => gf.outcome_count(),
            GameForm::Matrix(gf) => gf.outcome_count(),
        }
    }

    pub fn strategy_count(&self, player: usize) -> usize {
        match self {
            GameForm::Liberal(gf) => gf.strategy_count(player),
            GameForm::Matrix(gf) => {
                if player == 0 {
                    gf.rows()
                } else {
                    gf.cols()
                }
            }
        }
    }

    /// Number of strategy profiles `|S_1| x ... x |S_n|`.
    pub fn total_profiles(&self) -> u128 {
        (0..self.players())
            .map(|p| self.strategy_count(p) as u128)
            .product()
    }

    /// Evaluates the outcome function on a full strategy profile.
    pub fn outcome(&self, profile: &[usize]) -> OutcomeId {
        match self {
            GameForm::Liberal(gf) => gf.outcome(profile),
            GameForm::Matrix(gf) => gf.outcome(profile),
        }
    }

    /// Human-readable strategy label: `(z=4,a=2)` or `row 3` / `col 1`.
    pub fn describe_strategy(&self, player: usize, index: usize) -> String {
        match self {
            GameForm::Liberal(gf) => {
                let s = gf.strategy(player, index);
                format!("(z={},a={})", s.named_outcome, s.named_player + 1)
            }
            GameForm::Matrix(_) => {
                if player == 0 {
                    format!("row {}", index + 1)
                } else {
                    format!("col {}", index + 1)
                }
            }
        }
    }

    pub(crate) fn check_profile(&self, profile: &Profile) -> Result<()> {
        if profile.players() != self.players() || profile.outcomes() != self.outcome_count() {
            return Err(Error::DimensionMismatch {
                expected_players: self.players(),
                expected_outcomes: self.outcome_count(),
                got_players: profile.players(),
                got_outcomes: profile.outcomes(),
            });
        }
        Ok(())
    }

    /// Outcomes one player can reach by varying only their own strategy,
    /// with everyone else frozen at `others` (that player's own entry in
    /// `others` is ignored).
    pub fn attainable_set(&self, player: usize, others: &[usize]) -> OutcomeSet {
        assert!(player < self.players());
        assert_eq!(others.len(), self.players());
        let mut probe = others.to_vec();
        let mut out = OutcomeSet::new();
        for s in 0..self.strategy_count(player) {
            probe[player] = s;
            out.insert(self.outcome(&probe));
        }
        out
    }
}

impl fmt::Display for GameForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameForm::Liberal(gf) => write!(
                f,
                "naming mechanism, {} players, pairs {}",
                gf.players(),
                gf.assignment()
            ),
            GameForm::Matrix(gf) => write!(
                f,
                "matrix {}x{} over {} outcomes",
                gf.rows(),
                gf.cols(),
                gf.outcome_count()
            ),
        }
    }
}
