//! Exhaustive pure-strategy Nash equilibrium enumeration.
//!
//! A strategy profile is an equilibrium when every unilateral deviation is
//! weakly worse for the deviating player; indifferent deviations do not
//! destroy equilibrium. The solver scans every strategy profile and every
//! deviation — the strategy spaces in scope are tiny and the scan is the
//! most auditable transcription of the definition. A guard limit turns
//! accidental blow-ups into an error instead of an open-ended run.

use crate::error::{Error, Result};
use crate::mechanisms::GameForm;
use crate::prefs::{OutcomeId, Profile};
use crate::rules::OutcomeSet;

/// Default ceiling on `|S_1| x ... x |S_n|` before the solver refuses to run.
pub const DEFAULT_GUARD_LIMIT: u64 = 10_000_000;

/// Above this size the solver evaluates the outcome function on the fly
/// instead of materializing it.
const TABLE_LIMIT: u128 = 1 << 22;

/// The set `H(γ, R)` of pure equilibria together with its outcome image.
#[derive(Clone, Debug)]
pub struct EquilibriumSet {
    profiles: Vec<Vec<usize>>,
    outcomes: OutcomeSet,
}

impl EquilibriumSet {
    /// Equilibrium strategy profiles in enumeration order (lexicographic,
    /// last player's strategy fastest).
    pub fn profiles(&self) -> &[Vec<usize>] {
        &self.profiles
    }

    /// The image `η(H(γ, R))` — possibly empty.
    pub fn outcomes(&self) -> &OutcomeSet {
        &self.outcomes
    }

    pub fn into_outcomes(self) -> OutcomeSet {
        self.outcomes
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }
}

/// First strategy (in strategy-set order) that strictly improves `player`'s
/// outcome against the rest of `s`, or `None` when no profitable unilateral
/// deviation exists.
///
/// Panics when `s` or the profile does not match the game form.
pub fn best_deviation(
    gf: &GameForm,
    profile: &Profile,
    s: &[usize],
    player: usize,
) -> Option<usize> {
    gf.check_profile(profile)
        .expect("profile matches game form");
    assert_eq!(s.len(), gf.players(), "strategy profile length");
    assert!(player < gf.players());
    let tiers = profile.order(player).tiers();
    let current = tiers[gf.outcome(s).pos()];
    let mut probe = s.to_vec();
    for alt in 0..gf.strategy_count(player) {
        probe[player] = alt;
        if tiers[gf.outcome(&probe).pos()] < current {
            return Some(alt);
        }
    }
    None
}

/// Enumerates every pure Nash equilibrium of `(gf, profile)` by exhaustive
/// scan of all strategy profiles, in deterministic lexicographic order.
///
/// Fails with [`Error::GuardLimit`] when the strategy space exceeds
/// `guard_limit`.
pub fn nash_equilibria(
    gf: &GameForm,
    profile: &Profile,
    guard_limit: u64,
) -> Result<EquilibriumSet> {
    nash_equilibria_with_table_limit(gf, profile, guard_limit, TABLE_LIMIT)
}

fn nash_equilibria_with_table_limit(
    gf: &GameForm,
    profile: &Profile,
    guard_limit: u64,
    table_limit: u128,
) -> Result<EquilibriumSet> {
    gf.check_profile(profile)?;
    let total_wide = gf.total_profiles();
    if total_wide > guard_limit as u128 {
        return Err(Error::GuardLimit {
            size: total_wide,
            kind: "strategy profiles",
            limit: guard_limit,
        });
    }
    let total = total_wide as usize;
    let n = gf.players();
    let counts: Vec<usize> = (0..n).map(|p| gf.strategy_count(p)).collect();
    let mut strides = vec![0usize; n];
    let mut acc = 1usize;
    for p in (0..n).rev() {
        strides[p] = acc;
        acc *= counts[p];
    }
    let tiers: Vec<&[u32]> = (0..n).map(|p| profile.order(p).tiers()).collect();

    // Outcome function as a flat table (0-based outcome positions) when it
    // fits; the deviation scan then reduces to index arithmetic.
    let table: Option<Vec<u32>> = if total_wide <= table_limit {
        let mut t = Vec::with_capacity(total);
        let mut strat = vec![0usize; n];
        for _ in 0..total {
            t.push(gf.outcome(&strat).pos() as u32);
            bump(&mut strat, &counts);
        }
        Some(t)
    } else {
        None
    };

    let mut profiles = Vec::new();
    let mut outcomes = OutcomeSet::new();
    let mut strat = vec![0usize; n];
    let mut scratch = vec![0usize; n];
    for flat in 0..total {
        let here = match &table {
            Some(t) => t[flat] as usize,
            None => gf.outcome(&strat).pos(),
        };
        let mut is_equilibrium = true;
        'players: for p in 0..n {
            let current = tiers[p][here];
            match &table {
                Some(t) => {
                    let base = flat - strat[p] * strides[p];
                    for alt in 0..counts[p] {
                        if tiers[p][t[base + alt * strides[p]] as usize] < current {
                            is_equilibrium = false;
                            break 'players;
                        }
                    }
                }
                None => {
                    scratch.copy_from_slice(&strat);
                    for alt in 0..counts[p] {
                        scratch[p] = alt;
                        if tiers[p][gf.outcome(&scratch).pos()] < current {
                            is_equilibrium = false;
                            break 'players;
                        }
                    }
                }
            }
        }
        if is_equilibrium {
            profiles.push(strat.clone());
            outcomes.insert(OutcomeId::new(here as u32 + 1));
        }
        bump(&mut strat, &counts);
    }
    Ok(EquilibriumSet { profiles, outcomes })
}

/// The equilibrium outcome image `η(H(γ, R))`.
pub fn equilibrium_outcomes(
    gf: &GameForm,
    profile: &Profile,
    guard_limit: u64,
) -> Result<OutcomeSet> {
    Ok(nash_equilibria(gf, profile, guard_limit)?.into_outcomes())
}

/// Advances a mixed-radix odometer with the last position fastest.
fn bump(strat: &mut [usize], counts: &[usize]) {
    for p in (0..strat.len()).rev() {
        strat[p] += 1;
        if strat[p] < counts[p] {
            return;
        }
        strat[p] = 0;
    }
}
