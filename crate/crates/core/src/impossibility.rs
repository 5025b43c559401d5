//! Constructive witnesses for the negative cases: the overlap contradiction
//! when outcomes are scarce, and refutation of every small two-player
//! matrix as an implementation of the liberal rule.
//!
//! The two-player search treats the structural argument (universal
//! attainers, a dictator) only as a probe-ordering heuristic: a form counts
//! as refuted solely because a concrete profile makes the implementation
//! identity fail, so "refuted" is sound for arbitrary forms. A form no probe
//! kills is reported as an explicit unrefuted result, never silently
//! dropped.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::mechanisms::{GameForm, MatrixGameForm};
use crate::prefs::{self, OutcomeId, Profile, WeakOrder};
use crate::rules::{liberal_rule, OutcomeSet, PairAssignment};
use crate::verify::{adversarial_profiles, check_implementation_at, Verdict};

/// Two players whose pairs share an outcome, if any: `(first, second, ω*)`
/// with 0-based players. With fewer outcomes than twice the players, some
/// overlap always exists (pigeonhole: `2n` members over `m < 2n` indices).
pub fn pigeonhole_overlap(assign: &PairAssignment) -> Option<(usize, usize, OutcomeId)> {
    assign.first_overlap()
}

/// A profile on which two overlapping decisive pairs force a shared outcome
/// both into and out of any rule output.
#[derive(Clone, Debug)]
pub struct ContradictionWitness {
    /// Player whose strict preference forces `shared` in (0-based).
    pub forced_in_player: usize,
    /// Player whose strict preference forces `shared` out.
    pub forced_out_player: usize,
    /// The outcome both pairs contain.
    pub shared: OutcomeId,
    /// The other member of the in-player's pair (`shared` beats it).
    pub partner_in: OutcomeId,
    /// The other member of the out-player's pair (it beats `shared`).
    pub partner_out: OutcomeId,
    pub profile: Profile,
}

impl ContradictionWitness {
    /// Re-derives both decisiveness implications from the stored data:
    /// the in-player strictly prefers `shared` to their partner (so `shared`
    /// must be selected and the partner excluded) while the out-player
    /// strictly prefers their partner to `shared` (so `shared` must be
    /// excluded). Both firing on the same outcome is the contradiction.
    pub fn validate(&self, assign: &PairAssignment) -> bool {
        let pair_has = |player: usize, x: OutcomeId, y: OutcomeId| {
            let (a, b) = assign.pair(player);
            (a, b) == (x.min(y), x.max(y))
        };
        pair_has(self.forced_in_player, self.shared, self.partner_in)
            && pair_has(self.forced_out_player, self.shared, self.partner_out)
            && self
                .profile
                .order(self.forced_in_player)
                .strictly_prefers(self.shared, self.partner_in)
                .unwrap_or(false)
            && self
                .profile
                .order(self.forced_out_player)
                .strictly_prefers(self.partner_out, self.shared)
                .unwrap_or(false)
    }
}

impl fmt::Display for ContradictionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "outcome {} is forced in by player {} ({} > {}) and forced out by player {} ({} > {})",
            self.shared,
            self.forced_in_player + 1,
            self.shared,
            self.partner_in,
            self.forced_out_player + 1,
            self.partner_out,
            self.shared,
        )
    }
}

/// Scans a given profile for a decisiveness contradiction under an
/// assignment: two players sharing an outcome, one forcing it in, the other
/// forcing it out. Deterministic scan order (in-player major).
pub fn find_contradiction(
    assign: &PairAssignment,
    profile: &Profile,
) -> Option<ContradictionWitness> {
    let n = assign.players();
    for forced_in in 0..n {
        let (a_in, b_in) = assign.pair(forced_in);
        for forced_out in 0..n {
            if forced_in == forced_out {
                continue;
            }
            let (a_out, b_out) = assign.pair(forced_out);
            for shared in [a_in, b_in] {
                if shared != a_out && shared != b_out {
                    continue;
                }
                let partner_in = if shared == a_in { b_in } else { a_in };
                let partner_out = if shared == a_out { b_out } else { a_out };
                let fires_in = profile
                    .order(forced_in)
                    .strictly_prefers(shared, partner_in)
                    .ok()?;
                let fires_out = profile
                    .order(forced_out)
                    .strictly_prefers(partner_out, shared)
                    .ok()?;
                if fires_in && fires_out {
                    return Some(ContradictionWitness {
                        forced_in_player: forced_in,
                        forced_out_player: forced_out,
                        shared,
                        partner_in,
                        partner_out,
                        profile: profile.clone(),
                    });
                }
            }
        }
    }
    None
}

/// Builds the contradiction witness for a non-disjoint assignment: takes the
/// first overlap `(i, j, ω*)`, gives player `i` the profile `ω* > rest` and
/// player `j` the profile `partner_j > rest` (everyone else ranks by index),
/// and packages the two implications that fire on `ω*`.
///
/// Fails on disjoint assignments — there is no contradiction to witness.
pub fn contradiction_witness(assign: &PairAssignment) -> Result<ContradictionWitness> {
    let (first, second, shared) = assign.first_overlap().ok_or(Error::DisjointAssignment)?;
    let m = assign.outcomes();
    let (a, b) = assign.pair(second);
    let partner_second = if shared == a { b } else { a };
    let mut orders: Vec<WeakOrder> = (0..assign.players())
        .map(|_| WeakOrder::by_index(m))
        .collect();
    orders[first] = WeakOrder::strict_with_ends(m, &[shared], &[]);
    orders[second] = WeakOrder::strict_with_ends(m, &[partner_second], &[]);
    let profile = Profile::new(orders).expect("uniform m");
    let witness =
        find_contradiction(assign, &profile).expect("constructed profile carries a contradiction");
    debug_assert!(witness.validate(assign));
    Ok(witness)
}

/// For each target outcome, the players (0-based; 0 = row, 1 = column) who
/// can reach it against *every* opponent strategy: the row player attains an
/// outcome universally iff every column contains it, the column player iff
/// every row contains it.
pub fn find_universal_attainers(
    gf: &MatrixGameForm,
    targets: &OutcomeSet,
) -> BTreeMap<OutcomeId, Vec<usize>> {
    let mut map = BTreeMap::new();
    for target in targets.iter() {
        let mut players = Vec::new();
        let row_everywhere =
            (0..gf.cols()).all(|c| (0..gf.rows()).any(|r| gf.cell(r, c) == target));
        if row_everywhere {
            players.push(0);
        }
        let col_everywhere =
            (0..gf.rows()).all(|r| (0..gf.cols()).any(|c| gf.cell(r, c) == target));
        if col_everywhere {
            players.push(1);
        }
        map.insert(target, players);
    }
    map
}

/// Evidence that a two-player matrix fails to implement the liberal rule.
#[derive(Clone, Debug)]
pub struct RefutationWitness {
    pub form: MatrixGameForm,
    /// The failing comparison; re-running the checker on the stored profile
    /// reproduces it.
    pub verdict: crate::verify::ProfileVerdict,
    /// Which players universally attain each pair member.
    pub universal_attainers: BTreeMap<OutcomeId, Vec<usize>>,
    /// Probes evaluated before the failure, this one included.
    pub probes_used: u64,
}

impl RefutationWitness {
    /// A player who universally attains at least one member of every pair —
    /// whoever that is can steer the outcome into either player's sphere
    /// regardless of the opponent, the dictator of the two-player argument.
    pub fn dictator(&self, assign: &PairAssignment) -> Option<usize> {
        (0..2).find(|&player| {
            assign.pairs().iter().all(|&(a, b)| {
                [a, b].iter().any(|o| {
                    self.universal_attainers
                        .get(o)
                        .is_some_and(|players| players.contains(&player))
                })
            })
        })
    }
}

/// Result of probing one two-player form.
#[derive(Clone, Debug)]
pub enum RefutationOutcome {
    Refuted(Box<RefutationWitness>),
    /// No probe failed. The probe set is finite evidence, not a proof, so
    /// this is a first-class answer rather than an error.
    Unrefuted {
        probes_tried: u64,
    },
}

impl RefutationOutcome {
    pub fn is_refuted(&self) -> bool {
        matches!(self, RefutationOutcome::Refuted(_))
    }
}

/// Probe profiles for a two-player assignment: the adversarial list first
/// (favourite, opposed-favourite and dictator-killing patterns), then every
/// pair of strict orders over the four pair members, non-members appended at
/// the bottom by index. The liberal rule only reads within-pair comparisons,
/// so this tail is exhaustive for everything the rule can distinguish.
fn two_player_probes(assign: &PairAssignment) -> Vec<(Profile, OutcomeSet)> {
    let m = assign.outcomes();
    let members: Vec<OutcomeId> = assign.pairs().iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut sorted_members = members.clone();
    sorted_members.sort();
    let mut profiles = adversarial_profiles(assign);
    let perms = prefs::factorial(4);
    let mut sequences = Vec::with_capacity(perms as usize);
    for rank in 0..perms {
        let tiers = prefs::unrank_strict(4, rank);
        let mut seq = [OutcomeId::new(1); 4];
        for (pos, &tier) in tiers.tiers().iter().enumerate() {
            seq[(tier - 1) as usize] = sorted_members[pos];
        }
        sequences.push(seq);
    }
    for seq_row in &sequences {
        for seq_col in &sequences {
            let profile = Profile::new(vec![
                WeakOrder::strict_with_ends(m, seq_row, &[]),
                WeakOrder::strict_with_ends(m, seq_col, &[]),
            ])
            .expect("uniform m");
            if !profiles.contains(&profile) {
                profiles.push(profile);
            }
        }
    }
    profiles
        .into_iter()
        .map(|p| {
            let rule = liberal_rule(assign, &p).expect("disjoint two-player assignment");
            (p, rule)
        })
        .collect()
}

fn refute_with_probes(
    form: &MatrixGameForm,
    assign: &PairAssignment,
    probes: &[(Profile, OutcomeSet)],
    guard_limit: u64,
) -> Result<RefutationOutcome> {
    let gf = GameForm::Matrix(form.clone());
    for (index, (profile, rule_outcomes)) in probes.iter().enumerate() {
        let mut verdict =
            check_implementation_at(&gf, |_| rule_outcomes.clone(), profile, guard_limit)?;
        verdict.index = index as u64;
        if verdict.verdict != Verdict::Equal {
            let universal_attainers = find_universal_attainers(form, &assign.members());
            return Ok(RefutationOutcome::Refuted(Box::new(RefutationWitness {
                form: form.clone(),
                verdict,
                universal_attainers,
                probes_used: index as u64 + 1,
            })));
        }
    }
    Ok(RefutationOutcome::Unrefuted {
        probes_tried: probes.len() as u64,
    })
}

fn check_two_player_setup(assign: &PairAssignment) -> Result<()> {
    if assign.players() != 2 {
        return Err(Error::NotTwoPlayers {
            n: assign.players(),
        });
    }
    if let Some((first, second, shared)) = assign.first_overlap() {
        return Err(Error::NotDisjoint {
            shared: shared.get(),
            first: first + 1,
            second: second + 1,
        });
    }
    Ok(())
}

/// Searches for a profile on which `gf` fails to implement the two-player
/// liberal rule for `assign`, probing the proof-derived patterns first and
/// falling back to every strict order pair over the pair members.
pub fn refute_two_player(
    gf: &MatrixGameForm,
    assign: &PairAssignment,
    guard_limit: u64,
) -> Result<RefutationOutcome> {
    check_two_player_setup(assign)?;
    if gf.outcome_count() != assign.outcomes() {
        return Err(Error::DimensionMismatch {
            expected_players: 2,
            expected_outcomes: assign.outcomes(),
            got_players: 2,
            got_outcomes: gf.outcome_count(),
        });
    }
    let probes = two_player_probes(assign);
    refute_with_probes(gf, assign, &probes, guard_limit)
}

/// Outcome of an exhaustive sweep over all `rows x cols` grids.
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub rows: u32,
    pub cols: u32,
    pub outcomes: u32,
    pub forms_enumerated: u64,
    pub forms_refuted: u64,
    /// Lexicographic indices of unrefuted forms (capped at 32 entries; the
    /// count is `forms_enumerated - forms_refuted` exactly).
    pub unrefuted: Vec<u64>,
    /// Largest number of probes any single form consumed.
    pub max_probes: u64,
    pub elapsed: Duration,
}

impl SearchReport {
    pub fn all_refuted(&self) -> bool {
        self.forms_refuted == self.forms_enumerated
    }

    /// `forms=<e> refuted=<r> unrefuted=<u>`
    pub fn summary_line(&self) -> String {
        format!(
            "forms={} refuted={} unrefuted={}",
            self.forms_enumerated,
            self.forms_refuted,
            self.forms_enumerated - self.forms_refuted
        )
    }
}

/// Enumerates every `rows x cols` outcome grid over `m` outcomes in
/// lexicographic order (cell (1,1) most significant) and runs the two-player
/// refutation on each, with early exit per form. `progress` is invoked with
/// the running count every 10,000 forms.
pub fn search_two_player(
    rows: u32,
    cols: u32,
    m: u32,
    assign: &PairAssignment,
    guard_limit: u64,
    mut progress: impl FnMut(u64),
) -> Result<SearchReport> {
    check_two_player_setup(assign)?;
    if m != assign.outcomes() {
        return Err(Error::DimensionMismatch {
            expected_players: 2,
            expected_outcomes: assign.outcomes(),
            got_players: 2,
            got_outcomes: m,
        });
    }
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyGrid);
    }
    let cells = rows * cols;
    let total = checked_pow(m as u128, cells).unwrap_or(u128::MAX);
    if total > guard_limit as u128 {
        return Err(Error::GuardLimit {
            size: total,
            kind: "game forms",
            limit: guard_limit,
        });
    }
    let started = Instant::now();
    let probes = two_player_probes(assign);
    let total = total as u64;
    let mut refuted = 0u64;
    let mut unrefuted = Vec::new();
    let mut max_probes = 0u64;
    let mut grid = vec![vec![1u32; cols as usize]; rows as usize];
    for index in 0..total {
        let mut rest = index;
        for cell in (0..cells as usize).rev() {
            grid[cell / cols as usize][cell % cols as usize] = (rest % m as u64) as u32 + 1;
            rest /= m as u64;
        }
        let form = MatrixGameForm::new(grid.clone(), m).expect("cells in range");
        match refute_with_probes(&form, assign, &probes, guard_limit)? {
            RefutationOutcome::Refuted(witness) => {
                refuted += 1;
                max_probes = max_probes.max(witness.probes_used);
            }
            RefutationOutcome::Unrefuted { probes_tried } => {
                max_probes = max_probes.max(probes_tried);
                if unrefuted.len() < 32 {
                    unrefuted.push(index);
                }
            }
        }
        if (index + 1) % 10_000 == 0 {
            progress(index + 1);
        }
    }
    Ok(SearchReport {
        rows,
        cols,
        outcomes: m,
        forms_enumerated: total,
        forms_refuted: refuted,
        unrefuted,
        max_probes,
        elapsed: started.elapsed(),
    })
}

fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
