//! Decisive-pair assignments, the liberal rule, and the axiom checkers.
//!
//! The liberal rule gives every player one pair of outcomes and selects, for
//! each player, every pair member the player weakly prefers to the other.
//! With a strict preference exactly the preferred member enters the output
//! and the other is excluded, which is precisely the decisiveness the
//! choice-liberalism checker demands.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::prefs::{OutcomeId, Profile, Relation};

/// One unordered outcome pair per player. The liberal rule and the naming
/// mechanism require all pairs to be pairwise disjoint; the impossibility
/// analysis deliberately builds overlapping assignments.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairAssignment {
    /// Normalized `(low, high)` per player.
    pairs: Vec<(OutcomeId, OutcomeId)>,
    m: u32,
    disjoint: bool,
}

impl PairAssignment {
    /// Builds an assignment over `m` outcomes, normalizing each pair to
    /// `(low, high)` and recording whether all `2n` members are distinct.
    pub fn new(pairs: Vec<(OutcomeId, OutcomeId)>, m: u32) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyAssignment);
        }
        let mut normalized = Vec::with_capacity(pairs.len());
        for &(a, b) in &pairs {
            for o in [a, b] {
                if o.get() > m {
                    return Err(Error::OutcomeOutOfRange { index: o.get(), m });
                }
            }
            if a == b {
                return Err(Error::DegeneratePair { index: a.get() });
            }
            normalized.push((a.min(b), a.max(b)));
        }
        let mut owner = vec![usize::MAX; m as usize];
        let mut disjoint = true;
        'scan: for (player, &(a, b)) in normalized.iter().enumerate() {
            for o in [a, b] {
                if owner[o.pos()] != usize::MAX {
                    disjoint = false;
                    break 'scan;
                }
                owner[o.pos()] = player;
            }
        }
        Ok(PairAssignment {
            pairs: normalized,
            m,
            disjoint,
        })
    }

    /// The canonical assignment: player `i` (1-based) owns `{2i-1, 2i}`.
    /// Requires `m >= 2n`, which makes it disjoint by construction.
    pub fn canonical(n: u32, m: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::EmptyAssignment);
        }
        if m < 2 * n {
            return Err(Error::TooFewOutcomes {
                n,
                needed: 2 * n,
                m,
            });
        }
        let pairs = (1..=n)
            .map(|i| (OutcomeId::new(2 * i - 1), OutcomeId::new(2 * i)))
            .collect();
        PairAssignment::new(pairs, m)
    }

    /// Canonical pairing with indices wrapped modulo `m`, so that `m < 2n`
    /// yields a deterministic overlapping assignment. With `m >= 2n` this is
    /// exactly [`PairAssignment::canonical`].
    pub fn wrapped(n: u32, m: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::EmptyAssignment);
        }
        if m < 2 {
            return Err(Error::BadOutcomeCount { got: m, min: 2 });
        }
        let pairs = (1..=n)
            .map(|i| {
                (
                    OutcomeId::new((2 * i - 2) % m + 1),
                    OutcomeId::new((2 * i - 1) % m + 1),
                )
            })
            .collect();
        PairAssignment::new(pairs, m)
    }

    /// Parses the CLI pair syntax `"1,2;3,4;5,6"` (player order).
    pub fn parse(text: &str, m: u32) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, chunk) in text.split(';').enumerate() {
            let bad = || Error::Parse {
                line: i + 1,
                message: format!("pair {} must be `a,b`, got `{chunk}`", i + 1),
            };
            let (a, b) = chunk.split_once(',').ok_or_else(bad)?;
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().parse().map_err(|_| bad())?;
            if a < 1 || b < 1 {
                return Err(bad());
            }
            pairs.push((OutcomeId::new(a), OutcomeId::new(b)));
        }
        PairAssignment::new(pairs, m)
    }

    pub fn players(&self) -> usize {
        self.pairs.len()
    }

    pub fn outcomes(&self) -> u32 {
        self.m
    }

    /// The pair of a player (0-based), as `(low, high)`.
    pub fn pair(&self, player: usize) -> (OutcomeId, OutcomeId) {
        self.pairs[player]
    }

    pub fn pairs(&self) -> &[(OutcomeId, OutcomeId)] {
        &self.pairs
    }

    /// True when all `2n` pair members are distinct.
    pub fn is_disjoint(&self) -> bool {
        self.disjoint
    }

    /// The first outcome shared by two pairs, scanning players in order,
    /// together with the two owners (0-based). `None` iff disjoint.
    pub fn first_overlap(&self) -> Option<(usize, usize, OutcomeId)> {
        for second in 1..self.pairs.len() {
            let (c, d) = self.pairs[second];
            for first in 0..second {
                let (a, b) = self.pairs[first];
                for shared in [a, b] {
                    if shared == c || shared == d {
                        return Some((first, second, shared));
                    }
                }
            }
        }
        None
    }

    /// Every outcome that belongs to some pair.
    pub fn members(&self) -> OutcomeSet {
        self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect()
    }

    pub(crate) fn check_profile(&self, profile: &Profile) -> Result<()> {
        if profile.players() != self.players() || profile.outcomes() != self.m {
            return Err(Error::DimensionMismatch {
                expected_players: self.players(),
                expected_outcomes: self.m,
                got_players: profile.players(),
                got_outcomes: profile.outcomes(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for PairAssignment {
    /// `{1,2} {3,4} {5,6}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{{{a},{b}}}")?;
        }
        Ok(())
    }
}

/// A set of outcomes, compared order-insensitively.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct OutcomeSet(BTreeSet<OutcomeId>);

impl OutcomeSet {
    pub fn new() -> Self {
        OutcomeSet(BTreeSet::new())
    }

    pub fn insert(&mut self, outcome: OutcomeId) {
        self.0.insert(outcome);
    }

    pub fn contains(&self, outcome: OutcomeId) -> bool {
        self.0.contains(&outcome)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = OutcomeId> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &OutcomeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Members of `self` absent from `other`, ascending.
    pub fn minus(&self, other: &OutcomeSet) -> Vec<OutcomeId> {
        self.0.difference(&other.0).copied().collect()
    }
}

impl FromIterator<OutcomeId> for OutcomeSet {
    fn from_iter<I: IntoIterator<Item = OutcomeId>>(iter: I) -> Self {
        OutcomeSet(iter.into_iter().collect())
    }
}

impl fmt::Display for OutcomeSet {
    /// `{4, 5, 6}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, o) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{o}")?;
        }
        write!(f, "}}")
    }
}

/// Convenience constructor used throughout the tests and demos.
pub fn outcome_set(indices: &[u32]) -> OutcomeSet {
    indices.iter().map(|&i| OutcomeId::new(i)).collect()
}

/// The liberal rule: from each player's pair, every member the player weakly
/// prefers to the other. Strict preference admits exactly the preferred
/// member; indifference admits both.
///
/// Requires a disjoint assignment — with overlapping pairs no rule can honor
/// every player's decisiveness, so no semantics is invented for that case.
pub fn liberal_rule(assign: &PairAssignment, profile: &Profile) -> Result<OutcomeSet> {
    if let Some((first, second, shared)) = assign.first_overlap() {
        return Err(Error::NotDisjoint {
            shared: shared.get(),
            first: first + 1,
            second: second + 1,
        });
    }
    assign.check_profile(profile)?;
    let mut out = OutcomeSet::new();
    for (player, &(a, b)) in assign.pairs().iter().enumerate() {
        match profile.order(player).compare(a, b)? {
            Relation::StrictlyPrefers => out.insert(a),
            Relation::StrictlyDispreferred => out.insert(b),
            Relation::Indifferent => {
                out.insert(a);
                out.insert(b);
            }
        }
    }
    Ok(out)
}

/// A recorded failure of one of the axioms, with enough context to replay
/// the corresponding checker on the stored inputs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    /// A player strictly preferred one pair member but the rule did not put
    /// exactly the preferred member in (and the other out).
    ChoiceLiberalism {
        player: usize,
        preferred: OutcomeId,
        dispreferred: OutcomeId,
        profile: Profile,
        output: OutcomeSet,
    },
    /// An outcome top-ranked by at least `n - 1` players was left out.
    NoVetoPower {
        outcome: OutcomeId,
        top_rankers: Vec<usize>,
        profile: Profile,
        output: OutcomeSet,
    },
    /// A selected outcome that fell for no player dropped out of the output.
    Monotonicity {
        outcome: OutcomeId,
        before: Profile,
        after: Profile,
        output_before: OutcomeSet,
        output_after: OutcomeSet,
    },
}

/// Discriminant of [`Violation`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ViolationKind {
    ChoiceLiberalism,
    NoVetoPower,
    Monotonicity,
}

impl Violation {
    pub fn kind(&self) -> ViolationKind {
        match self {
            Violation::ChoiceLiberalism { .. } => ViolationKind::ChoiceLiberalism,
            Violation::NoVetoPower { .. } => ViolationKind::NoVetoPower,
            Violation::Monotonicity { .. } => ViolationKind::Monotonicity,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ChoiceLiberalism {
                player,
                preferred,
                dispreferred,
                output,
                ..
            } => write!(
                f,
                "choice liberalism: player {} strictly prefers {preferred} over {dispreferred} \
                 but the output {output} does not select {preferred} and exclude {dispreferred}",
                player + 1
            ),
            Violation::NoVetoPower {
                outcome,
                top_rankers,
                output,
                ..
            } => write!(
                f,
                "no-veto power: outcome {outcome} is top-ranked by {} of the players \
                 yet missing from the output {output}",
                top_rankers.len()
            ),
            Violation::Monotonicity {
                outcome,
                output_before,
                output_after,
                ..
            } => write!(
                f,
                "monotonicity: outcome {outcome} was selected ({output_before}), fell in \
                 nobody's ranking, yet dropped out of the transformed output ({output_after})"
            ),
        }
    }
}

/// Checks choice liberalism (decisiveness of every player over their pair)
/// for an arbitrary rule over a caller-supplied profile stream.
///
/// The rule is any total map from profiles to outcome sets. An empty output
/// violates the non-emptiness every rule must satisfy and is reported as an
/// error rather than a violation. An empty result means no violation was
/// found on the tested stream — exhaustiveness is the caller's policy.
pub fn decisive_violations<F, I>(
    rule: F,
    assign: &PairAssignment,
    profiles: I,
) -> Result<Vec<Violation>>
where
    F: Fn(&Profile) -> OutcomeSet,
    I: IntoIterator<Item = Profile>,
{
    let mut violations = Vec::new();
    for (index, profile) in profiles.into_iter().enumerate() {
        assign.check_profile(&profile)?;
        let output = rule(&profile);
        if output.is_empty() {
            return Err(Error::EmptyRuleOutput {
                index: index as u64,
            });
        }
        for (player, &(a, b)) in assign.pairs().iter().enumerate() {
            let oriented = match profile.order(player).compare(a, b)? {
                Relation::StrictlyPrefers => Some((a, b)),
                Relation::StrictlyDispreferred => Some((b, a)),
                Relation::Indifferent => None,
            };
            if let Some((preferred, dispreferred)) = oriented {
                if !output.contains(preferred) || output.contains(dispreferred) {
                    violations.push(Violation::ChoiceLiberalism {
                        player,
                        preferred,
                        dispreferred,
                        profile: profile.clone(),
                        output: output.clone(),
                    });
                }
            }
        }
    }
    Ok(violations)
}

/// Checks no-veto power on a single rule output: every outcome top-ranked by
/// at least `n - 1` players must be selected. Returns the violation on the
/// lowest-indexed offending outcome, if any.
pub fn no_veto_violation(output: &OutcomeSet, profile: &Profile) -> Option<Violation> {
    let n = profile.players();
    for index in 1..=profile.outcomes() {
        let outcome = OutcomeId::new(index);
        let top_rankers: Vec<usize> = (0..n)
            .filter(|&p| profile.order(p).tiers()[outcome.pos()] == 1)
            .collect();
        if top_rankers.len() + 1 >= n && !output.contains(outcome) {
            return Some(Violation::NoVetoPower {
                outcome,
                top_rankers,
                profile: profile.clone(),
                output: output.clone(),
            });
        }
    }
    None
}

/// True when `outcome` does not fall in any player's ranking from `before`
/// to `after`: whatever it was weakly better than, it still is.
pub fn maintains_or_improves(
    before: &Profile,
    after: &Profile,
    outcome: OutcomeId,
) -> Result<bool> {
    if before.players() != after.players() || before.outcomes() != after.outcomes() {
        return Err(Error::DimensionMismatch {
            expected_players: before.players(),
            expected_outcomes: before.outcomes(),
            got_players: after.players(),
            got_outcomes: after.outcomes(),
        });
    }
    let m = before.outcomes();
    for player in 0..before.players() {
        for other_index in 1..=m {
            let other = OutcomeId::new(other_index);
            let was_weak = before.order(player).weakly_prefers(outcome, other)?;
            let still_weak = after.order(player).weakly_prefers(outcome, other)?;
            if was_weak && !still_weak {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks monotonicity of a rule across one profile transformation.
///
/// `after` must maintain-or-improve at least one outcome the rule selects at
/// `before`; otherwise the pair is unusable and reported as an error, not a
/// violation. Among the maintained-or-improved selected outcomes, any that
/// drop out of the rule's output at `after` is a violation.
pub fn monotonic_violation<F>(
    rule: F,
    before: &Profile,
    after: &Profile,
) -> Result<Option<Violation>>
where
    F: Fn(&Profile) -> OutcomeSet,
{
    let output_before = rule(before);
    let mut usable = false;
    for outcome in output_before.iter() {
        if maintains_or_improves(before, after, outcome)? {
            usable = true;
            break;
        }
    }
    if !usable {
        return Err(Error::UnusableMonotonePair);
    }
    let output_after = rule(after);
    let tracked: Vec<OutcomeId> = output_before.iter().collect();
    for outcome in tracked {
        if !maintains_or_improves(before, after, outcome)? {
            continue;
        }
        if !output_after.contains(outcome) {
            return Ok(Some(Violation::Monotonicity {
                outcome,
                before: before.clone(),
                after: after.clone(),
                output_before,
                output_after,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prefs::{WeakOrder, WeakOrderSpace};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn o(i: u32) -> OutcomeId {
        OutcomeId::new(i)
    }

    fn pairs(list: &[(u32, u32)], m: u32) -> PairAssignment {
        PairAssignment::new(list.iter().map(|&(a, b)| (o(a), o(b))).collect(), m).unwrap()
    }

    /// Independent route to the liberal rule: scan every outcome and admit it
    /// iff some player owns it in their pair and weakly prefers it to the
    /// other member (set-builder form, outcome-major instead of pair-major).
    fn liberal_rule_bruteforce(assign: &PairAssignment, profile: &Profile) -> OutcomeSet {
        let mut out = OutcomeSet::new();
        for index in 1..=assign.outcomes() {
            let candidate = o(index);
            for (player, &(a, b)) in assign.pairs().iter().enumerate() {
                let other = if candidate == a {
                    b
                } else if candidate == b {
                    a
                } else {
                    continue;
                };
                if profile
                    .order(player)
                    .weakly_prefers(candidate, other)
                    .unwrap()
                {
                    out.insert(candidate);
                }
            }
        }
        out
    }

    #[test]
    fn canonical_assignments() {
        let a = PairAssignment::canonical(3, 6).unwrap();
        assert_eq!(a.pairs(), &[(o(1), o(2)), (o(3), o(4)), (o(5), o(6))]);
        assert!(a.is_disjoint());
        let b = PairAssignment::canonical(2, 4).unwrap();
        assert_eq!(b.pairs(), &[(o(1), o(2)), (o(3), o(4))]);
        assert_eq!(
            PairAssignment::canonical(3, 5),
            Err(Error::TooFewOutcomes {
                n: 3,
                needed: 6,
                m: 5
            })
        );
    }

    #[test]
    fn wrapped_assignment_overlaps_when_short() {
        let a = PairAssignment::wrapped(3, 5).unwrap();
        assert_eq!(a.pairs(), &[(o(1), o(2)), (o(3), o(4)), (o(1), o(5))]);
        assert!(!a.is_disjoint());
        let b = PairAssignment::wrapped(3, 6).unwrap();
        assert_eq!(b, PairAssignment::canonical(3, 6).unwrap());
    }

    #[test]
    fn parse_pair_syntax() {
        let a = PairAssignment::parse("2,4;3,6;1,5", 6).unwrap();
        assert_eq!(a.pairs(), &[(o(2), o(4)), (o(3), o(6)), (o(1), o(5))]);
        assert!(PairAssignment::parse("1,1", 4).is_err());
        assert!(PairAssignment::parse("1,9", 4).is_err());
        assert!(PairAssignment::parse("1;2", 4).is_err());
        assert!(PairAssignment::parse("", 4).is_err());
    }

    #[test]
    fn liberal_rule_on_the_three_player_demo() {
        let assign = pairs(&[(2, 4), (3, 6), (1, 5)], 6);
        let profile = Profile::new(vec![
            WeakOrder::from_groups(&[vec![4], vec![2], vec![1, 3, 5, 6]]).unwrap(),
            WeakOrder::from_groups(&[vec![6], vec![3], vec![1, 2, 4, 5]]).unwrap(),
            WeakOrder::from_groups(&[vec![5], vec![1], vec![2, 3, 4, 6]]).unwrap(),
        ])
        .unwrap();
        assert_eq!(
            liberal_rule(&assign, &profile).unwrap(),
            outcome_set(&[4, 5, 6])
        );
    }

    #[test]
    fn liberal_rule_under_total_indifference_selects_all_members() {
        let assign = PairAssignment::canonical(3, 6).unwrap();
        let profile = Profile::new(vec![WeakOrder::indifferent(6); 3]).unwrap();
        assert_eq!(
            liberal_rule(&assign, &profile).unwrap(),
            outcome_set(&[1, 2, 3, 4, 5, 6])
        );
    }

    #[test]
    fn liberal_rule_on_identical_index_orders() {
        let assign = PairAssignment::canonical(3, 6).unwrap();
        let profile = Profile::new(vec![WeakOrder::by_index(6); 3]).unwrap();
        let got = liberal_rule(&assign, &profile).unwrap();
        assert_eq!(got, outcome_set(&[1, 3, 5]));
        assert_eq!(got, liberal_rule_bruteforce(&assign, &profile));
    }

    #[test]
    fn liberal_rule_matches_bruteforce_on_sampled_profiles() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let assign = PairAssignment::canonical(3, 6).unwrap();
        let space = WeakOrderSpace::new(6).unwrap();
        for _ in 0..500 {
            let profile = space.sample_profile(3, &mut rng);
            let fast = liberal_rule(&assign, &profile).unwrap();
            assert_eq!(fast, liberal_rule_bruteforce(&assign, &profile));
            // Structural invariants of the rule output.
            assert!(!fast.is_empty());
            assert!(fast.len() >= 3 && fast.len() <= 6);
            assert!(fast.is_subset(&assign.members()));
            let strict_in_pairs = assign.pairs().iter().enumerate().all(|(p, &(a, b))| {
                profile.order(p).compare(a, b).unwrap() != Relation::Indifferent
            });
            if strict_in_pairs {
                assert_eq!(fast.len(), 3);
            }
        }
    }

    #[test]
    fn liberal_rule_refuses_overlapping_pairs() {
        let assign = pairs(&[(1, 4), (2, 4), (3, 4)], 4);
        let profile = Profile::new(vec![WeakOrder::by_index(4); 3]).unwrap();
        assert!(matches!(
            liberal_rule(&assign, &profile),
            Err(Error::NotDisjoint { shared: 4, .. })
        ));
    }

    #[test]
    fn liberal_rule_depends_only_on_own_pair_comparisons() {
        // Re-randomize every player's order while preserving only that
        // player's comparison of their own pair; the output must not move.
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let assign = PairAssignment::canonical(3, 6).unwrap();
        let space = WeakOrderSpace::new(6).unwrap();
        for _ in 0..300 {
            let profile = space.sample_profile(3, &mut rng);
            let base = liberal_rule(&assign, &profile).unwrap();
            let mut mutated = Vec::new();
            for (player, &(a, b)) in assign.pairs().iter().enumerate() {
                let want = profile.order(player).compare(a, b).unwrap();
                let replacement = loop {
                    let candidate = space.sample(&mut rng);
                    if candidate.compare(a, b).unwrap() == want {
                        break candidate;
                    }
                };
                mutated.push(replacement);
            }
            let mutated = Profile::new(mutated).unwrap();
            assert_eq!(liberal_rule(&assign, &mutated).unwrap(), base);
        }
    }

    #[test]
    fn decisive_checker_accepts_the_liberal_rule() {
        let assign = PairAssignment::canonical(3, 6).unwrap();
        let space = WeakOrderSpace::new(6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let profiles: Vec<Profile> = (0..1_000)
            .map(|_| space.sample_profile(3, &mut rng))
            .collect();
        let violations =
            decisive_violations(|p| liberal_rule(&assign, p).unwrap(), &assign, profiles).unwrap();
        assert!(violations.is_empty());
    }

    #[test]
    fn decisive_checker_flags_a_constant_rule() {
        let assign = PairAssignment::canonical(1, 2).unwrap();
        // Player 1 strictly prefers 2 over 1, but the rule always answers {1}.
        let profile =
            Profile::new(vec![WeakOrder::from_groups(&[vec![2], vec![1]]).unwrap()]).unwrap();
        let violations =
            decisive_violations(|_| outcome_set(&[1]), &assign, vec![profile.clone()]).unwrap();
        assert_eq!(violations.len(), 1);
        match &violations[0] {
            Violation::ChoiceLiberalism {
                player,
                preferred,
                dispreferred,
                ..
            } => {
                assert_eq!(*player, 0);
                assert_eq!(*preferred, o(2));
                assert_eq!(*dispreferred, o(1));
            }
            other => panic!("unexpected violation {other:?}"),
        }
        // Replaying the checker on the stored inputs reproduces the hit.
        if let Violation::ChoiceLiberalism { profile, .. } = &violations[0] {
            let again =
                decisive_violations(|_| outcome_set(&[1]), &assign, vec![profile.clone()]).unwrap();
            assert_eq!(again.len(), 1);
        }
    }

    #[test]
    fn decisive_checker_reports_empty_rule_output_as_error() {
        let assign = PairAssignment::canonical(1, 2).unwrap();
        let profile = Profile::new(vec![WeakOrder::by_index(2)]).unwrap();
        assert_eq!(
            decisive_violations(|_| OutcomeSet::new(), &assign, vec![profile]),
            Err(Error::EmptyRuleOutput { index: 0 })
        );
    }

    /// With overlapping pairs and the classic conflicted profile, every
    /// candidate output set earns at least one violation.
    #[test]
    fn overlap_dooms_every_candidate_output() {
        let assign = pairs(&[(1, 4), (2, 4), (3, 4)], 4);
        let profile = Profile::new(vec![
            WeakOrder::strict_with_ends(4, &[o(1)], &[]), // 1 P 4
            WeakOrder::strict_with_ends(4, &[o(2)], &[]), // 2 P 4
            WeakOrder::strict_with_ends(4, &[o(4)], &[]), // 4 P 3
        ])
        .unwrap();
        for bits in 1u32..16 {
            let candidate: OutcomeSet = (1..=4)
                .filter(|i| bits & (1 << (i - 1)) != 0)
                .map(o)
                .collect();
            let violations =
                decisive_violations(|_| candidate.clone(), &assign, vec![profile.clone()]).unwrap();
            assert!(
                !violations.is_empty(),
                "candidate {candidate} escaped unviolated"
            );
        }
    }

    #[test]
    fn no_veto_examples() {
        // Everyone top-ranks 1 and the output contains it: fine.
        let all_top_one = Profile::new(vec![WeakOrder::by_index(4); 3]).unwrap();
        assert!(no_veto_violation(&outcome_set(&[1]), &all_top_one).is_none());

        // Exactly one of three players top-ranks 2: threshold n-1 not met.
        let one_fan = Profile::new(vec![
            WeakOrder::from_groups(&[vec![2], vec![1], vec![3], vec![4]]).unwrap(),
            WeakOrder::by_index(4),
            WeakOrder::by_index(4),
        ])
        .unwrap();
        assert!(no_veto_violation(&outcome_set(&[1]), &one_fan).is_none());

        // Two of three top-rank 2, output omits it: violation on 2.
        let two_fans = Profile::new(vec![
            WeakOrder::by_index(4),
            WeakOrder::from_groups(&[vec![2], vec![1], vec![3], vec![4]]).unwrap(),
            WeakOrder::from_groups(&[vec![2], vec![1], vec![3], vec![4]]).unwrap(),
        ])
        .unwrap();
        match no_veto_violation(&outcome_set(&[1]), &two_fans) {
            Some(Violation::NoVetoPower {
                outcome,
                top_rankers,
                ..
            }) => {
                assert_eq!(outcome, o(2));
                assert_eq!(top_rankers, vec![1, 2]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn monotone_identity_transformation_never_violates() {
        let assign = PairAssignment::canonical(3, 6).unwrap();
        let space = WeakOrderSpace::new(6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let profile = space.sample_profile(3, &mut rng);
            let got =
                monotonic_violation(|p| liberal_rule(&assign, p).unwrap(), &profile, &profile)
                    .unwrap();
            assert!(got.is_none());
        }
    }

    #[test]
    fn monotone_checker_rejects_unusable_pairs() {
        let assign = PairAssignment::canonical(1, 2).unwrap();
        // Rule output at `before` is {1}; `after` drops 1 below 2, so no
        // selected outcome is maintained-or-improved.
        let before = Profile::new(vec![WeakOrder::by_index(2)]).unwrap();
        let after =
            Profile::new(vec![WeakOrder::from_groups(&[vec![2], vec![1]]).unwrap()]).unwrap();
        assert_eq!(
            monotonic_violation(|p| liberal_rule(&assign, p).unwrap(), &before, &after),
            Err(Error::UnusableMonotonePair)
        );
    }

    /// A rule that selects the member of player 1's pair the player weakly
    /// DISprefers is not monotone; brute force over small profile pairs
    /// finds a firing transformation.
    #[test]
    fn perverse_rule_trips_the_monotonicity_checker() {
        let assign = PairAssignment::canonical(1, 2).unwrap();
        let (a, b) = assign.pair(0);
        let perverse = |p: &Profile| -> OutcomeSet {
            let mut out = OutcomeSet::new();
            if p.order(0).weakly_prefers(b, a).unwrap() {
                out.insert(a);
            }
            if p.order(0).weakly_prefers(a, b).unwrap() {
                out.insert(b);
            }
            out
        };
        let space = WeakOrderSpace::new(2).unwrap();
        let all: Vec<Profile> = space
            .iter()
            .map(|w| Profile::new(vec![w]).unwrap())
            .collect();
        let mut fired = None;
        for before in &all {
            for after in &all {
                match monotonic_violation(perverse, before, after) {
                    Ok(Some(v)) => {
                        fired = Some((before.clone(), after.clone(), v));
                        break;
                    }
                    Ok(None) | Err(Error::UnusableMonotonePair) => {}
                    Err(other) => panic!("unexpected error {other:?}"),
                }
            }
            if fired.is_some() {
                break;
            }
        }
        let (before, after, violation) = fired.expect("brute force finds a violation");
        // Replay on the stored pair reproduces it.
        let again = monotonic_violation(perverse, &before, &after).unwrap();
        assert!(again.is_some());
        assert_eq!(violation.kind(), ViolationKind::Monotonicity);
    }
}
