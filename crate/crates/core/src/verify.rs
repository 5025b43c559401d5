//! The implementation identity `η(H(γ, R)) = σ(R)`, checked per profile and
//! aggregated over enumerated, sampled and adversarial profile streams.
//!
//! Exhaustive verification over every weak-order profile is hopeless at the
//! sizes of interest (the profile space for three players over six outcomes
//! already has 4683³ elements), so evidence comes from three sources: small
//! exhaustive sweeps under a guard limit, seeded uniform samples, and a
//! deterministic adversarial list that instantiates exactly the preference
//! patterns the correctness arguments single out as dangerous.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mechanisms::GameForm;
use crate::nash::equilibrium_outcomes;
use crate::prefs::{self, OutcomeId, Profile, WeakOrder, WeakOrderSpace};
use crate::rules::{OutcomeSet, PairAssignment};

/// How one profile's equilibrium outcome set relates to the rule's output.
///
/// When both inclusions fail at once the verdict is `ExtraEquilibria`: an
/// equilibrium outcome the rule rejects is the sharper failure, and it is
/// the direction the two-player refutations rely on. The exact two-sided
/// decomposition stays recoverable from the stored sets via
/// [`ProfileVerdict::missing`] and [`ProfileVerdict::extra`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    /// The sets coincide.
    Equal,
    /// Some rule outcome is not an equilibrium outcome (and every
    /// equilibrium outcome is a rule outcome).
    MissingFromEquilibria,
    /// Some equilibrium outcome is not a rule outcome.
    ExtraEquilibria,
}

impl Verdict {
    pub fn from_sets(rule: &OutcomeSet, equilibria: &OutcomeSet) -> Verdict {
        if rule == equilibria {
            Verdict::Equal
        } else if !equilibria.is_subset(rule) {
            Verdict::ExtraEquilibria
        } else {
            Verdict::MissingFromEquilibria
        }
    }
}

/// The two outcome sets computed at one profile, with their comparison.
#[derive(Clone, Debug)]
pub struct ProfileVerdict {
    /// Position of the profile in the stream that produced it.
    pub index: u64,
    pub profile: Profile,
    pub rule_outcomes: OutcomeSet,
    pub equilibrium_outcomes: OutcomeSet,
    pub verdict: Verdict,
}

impl ProfileVerdict {
    /// Rule outcomes with no supporting equilibrium.
    pub fn missing(&self) -> Vec<OutcomeId> {
        self.rule_outcomes.minus(&self.equilibrium_outcomes)
    }

    /// Equilibrium outcomes the rule rejects.
    pub fn extra(&self) -> Vec<OutcomeId> {
        self.equilibrium_outcomes.minus(&self.rule_outcomes)
    }
}

/// Evaluates both sides of the implementation identity at one profile.
pub fn check_implementation_at<F>(
    gf: &GameForm,
    rule: F,
    profile: &Profile,
    guard_limit: u64,
) -> Result<ProfileVerdict>
where
    F: Fn(&Profile) -> OutcomeSet,
{
    gf.check_profile(profile)?;
    let rule_outcomes = rule(profile);
    let equilibria = equilibrium_outcomes(gf, profile, guard_limit)?;
    let verdict = Verdict::from_sets(&rule_outcomes, &equilibria);
    Ok(ProfileVerdict {
        index: 0,
        profile: profile.clone(),
        rule_outcomes,
        equilibrium_outcomes: equilibria,
        verdict,
    })
}

/// Where the profiles under test come from.
#[derive(Clone, Debug)]
pub enum ProfileSource {
    /// Every weak-order profile of `players` over `outcomes` — guarded.
    ExhaustiveWeak { players: u32, outcomes: u32 },
    /// Every strict-order profile — guarded.
    ExhaustiveStrict { players: u32, outcomes: u32 },
    /// `count` profiles of independent uniform weak orders, seeded.
    Sampled {
        players: u32,
        outcomes: u32,
        count: u64,
        seed: u64,
    },
    /// An explicit list (adversarial constructions, parsed files).
    Listed {
        label: String,
        profiles: Vec<Profile>,
    },
}

impl ProfileSource {
    /// The adversarial list for an assignment, as a named source.
    pub fn adversarial(assign: &PairAssignment) -> ProfileSource {
        ProfileSource::Listed {
            label: "adversarial profiles".into(),
            profiles: adversarial_profiles(assign),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ProfileSource::ExhaustiveWeak { players, outcomes } => {
                format!("all weak-order profiles (n={players}, m={outcomes})")
            }
            ProfileSource::ExhaustiveStrict { players, outcomes } => {
                format!("all strict-order profiles (n={players}, m={outcomes})")
            }
            ProfileSource::Sampled {
                players,
                outcomes,
                count,
                seed,
            } => format!(
                "{count} sampled weak-order profiles (n={players}, m={outcomes}, seed {seed})"
            ),
            ProfileSource::Listed { label, profiles } => {
                format!("{label} ({} profiles)", profiles.len())
            }
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            ProfileSource::Sampled { seed, .. } => Some(*seed),
            _ => None,
        }
    }

    /// Number of profiles the source yields; `None` when it overflows u128.
    fn cardinality(&self) -> Option<u128> {
        match self {
            ProfileSource::ExhaustiveWeak { players, outcomes } => {
                let per_player = prefs::ordered_bell(*outcomes).ok()?;
                checked_pow(per_player, *players)
            }
            ProfileSource::ExhaustiveStrict { players, outcomes } => {
                let per_player = prefs::order_count(*outcomes, true).ok()?;
                checked_pow(per_player, *players)
            }
            ProfileSource::Sampled { count, .. } => Some(*count as u128),
            ProfileSource::Listed { profiles, .. } => Some(profiles.len() as u128),
        }
    }

    /// The profile stream, in the source's deterministic order.
    fn profiles(&self) -> Result<Box<dyn Iterator<Item = Profile> + '_>> {
        match self {
            ProfileSource::ExhaustiveWeak { players, outcomes } => {
                let space = WeakOrderSpace::new(*outcomes)?;
                let per_player = space.count();
                let total = self.cardinality().expect("guarded before iteration");
                let n = *players as usize;
                Ok(Box::new((0..total).map(move |flat| {
                    let mut rest = flat;
                    let mut orders = vec![WeakOrder::indifferent(1); n];
                    for p in (0..n).rev() {
                        orders[p] = space.unrank(rest % per_player);
                        rest /= per_player;
                    }
                    Profile::new(orders).expect("uniform m")
                })))
            }
            ProfileSource::ExhaustiveStrict { players, outcomes } => {
                let m = *outcomes;
                prefs::order_count(m, true)?;
                let per_player = prefs::factorial(m);
                let total = self.cardinality().expect("guarded before iteration");
                let n = *players as usize;
                Ok(Box::new((0..total).map(move |flat| {
                    let mut rest = flat;
                    let mut orders = vec![WeakOrder::indifferent(1); n];
                    for p in (0..n).rev() {
                        orders[p] = prefs::unrank_strict(m, rest % per_player);
                        rest /= per_player;
                    }
                    Profile::new(orders).expect("uniform m")
                })))
            }
            ProfileSource::Sampled {
                players,
                outcomes,
                count,
                seed,
            } => {
                let space = WeakOrderSpace::new(*outcomes)?;
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let n = *players as usize;
                Ok(Box::new(
                    (0..*count).map(move |_| space.sample_profile(n, &mut rng)),
                ))
            }
            ProfileSource::Listed { profiles, .. } => Ok(Box::new(profiles.iter().cloned())),
        }
    }
}

fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Knobs for [`verify_profiles`].
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Bounds both exhaustive-source cardinality and per-profile strategy
    /// spaces.
    pub guard_limit: u64,
    /// At most this many failing verdicts are retained in the report; the
    /// total count stays exact.
    pub violation_cap: usize,
    /// Worker threads; 1 = fully sequential.
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            guard_limit: crate::nash::DEFAULT_GUARD_LIMIT,
            violation_cap: 32,
            threads: 1,
        }
    }
}

/// Aggregate result of one verification run. Reproducible: identical source
/// and options give an identical report apart from `elapsed`.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub source: String,
    pub tested: u64,
    pub total_violations: u64,
    /// Failing verdicts ordered by stream index, truncated to the cap.
    pub violations: Vec<ProfileVerdict>,
    pub seed: Option<u64>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.total_violations == 0
    }

    /// Machine-readable one-liner: `tested=<k> violations=<v> seed=<s>`.
    pub fn summary_line(&self) -> String {
        let seed = match self.seed {
            Some(s) => s.to_string(),
            None => "none".into(),
        };
        format!(
            "tested={} violations={} seed={}",
            self.tested, self.total_violations, seed
        )
    }

    /// Human-readable block: source, summary, and the retained violations.
    /// Excludes `elapsed` so renders stay byte-identical across runs.
    pub fn render(&self) -> String {
        let mut out = format!("source: {}\n{}\n", self.source, self.summary_line());
        for v in &self.violations {
            let direction = match v.verdict {
                Verdict::Equal => continue,
                Verdict::MissingFromEquilibria => "missing from equilibria",
                Verdict::ExtraEquilibria => "extra equilibria",
            };
            out.push_str(&format!(
                "violation at profile #{}: {direction}; rule={} equilibria={}\n{}",
                v.index,
                v.rule_outcomes,
                v.equilibrium_outcomes,
                crate::prefs::format_profile(&v.profile)
            ));
        }
        out
    }
}

/// Runs [`check_implementation_at`] over a profile stream and aggregates.
pub fn verify_profiles<F>(
    gf: &GameForm,
    rule: F,
    source: &ProfileSource,
    opts: &VerifyOptions,
) -> Result<VerificationReport>
where
    F: Fn(&Profile) -> OutcomeSet + Sync,
{
    let started = Instant::now();
    let cardinality = source.cardinality().unwrap_or(u128::MAX);
    if matches!(
        source,
        ProfileSource::ExhaustiveWeak { .. } | ProfileSource::ExhaustiveStrict { .. }
    ) && cardinality > opts.guard_limit as u128
    {
        return Err(Error::GuardLimit {
            size: cardinality,
            kind: "profiles",
            limit: opts.guard_limit,
        });
    }

    let mut tested: u64 = 0;
    let mut total_violations: u64 = 0;
    let mut kept: Vec<ProfileVerdict> = Vec::new();
    let mut record = |verdict: ProfileVerdict, kept: &mut Vec<ProfileVerdict>| {
        if verdict.verdict != Verdict::Equal {
            total_violations += 1;
            if kept.len() < opts.violation_cap {
                kept.push(verdict);
            }
        }
    };

    let mut stream = source.profiles()?.enumerate();
    if opts.threads <= 1 {
        for (index, profile) in stream {
            let mut verdict = check_implementation_at(gf, &rule, &profile, opts.guard_limit)?;
            verdict.index = index as u64;
            tested += 1;
            record(verdict, &mut kept);
        }
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .expect("thread pool");
        const BATCH: usize = 4096;
        loop {
            let batch: Vec<(usize, Profile)> = stream.by_ref().take(BATCH).collect();
            if batch.is_empty() {
                break;
            }
            let results: Result<Vec<ProfileVerdict>> = pool.install(|| {
                batch
                    .into_par_iter()
                    .map(|(index, profile)| {
                        let mut verdict =
                            check_implementation_at(gf, &rule, &profile, opts.guard_limit)?;
                        verdict.index = index as u64;
                        Ok(verdict)
                    })
                    .collect()
            });
            for verdict in results? {
                tested += 1;
                record(verdict, &mut kept);
            }
        }
    }

    Ok(VerificationReport {
        source: source.describe(),
        tested,
        total_violations,
        violations: kept,
        seed: source.seed(),
        elapsed: started.elapsed(),
    })
}

/// The deterministic adversarial profile list for an assignment: for every
/// player, profiles in which that player strictly prefers either member of
/// their pair; the combined all-low / all-high patterns; the near-unanimity
/// profile in which all but the first player top-rank the first player's
/// high pair member while the first player bottom-ranks it; and, for two
/// players, the favourite / opposed-favourite / dictator-killing patterns
/// the two-player impossibility argument steps through.
///
/// All partially specified rankings are completed to strict total orders by
/// ascending index. The list carries no randomness and is identical across
/// runs.
pub fn adversarial_profiles(assign: &PairAssignment) -> Vec<Profile> {
    let n = assign.players();
    let m = assign.outcomes();
    let index_order = WeakOrder::by_index(m);
    let mut out: Vec<Profile> = Vec::new();
    let push = |orders: Vec<WeakOrder>, out: &mut Vec<Profile>| {
        let profile = Profile::new(orders).expect("uniform m");
        if !out.contains(&profile) {
            out.push(profile);
        }
    };

    if n == 2 {
        let members: Vec<OutcomeId> = assign.pairs().iter().flat_map(|&(a, b)| [a, b]).collect();
        // Step 1: both players chase one pair member, its partner second.
        for player in 0..2 {
            let (low, high) = assign.pair(player);
            for (fav, partner) in [(low, high), (high, low)] {
                let order = WeakOrder::strict_with_ends(m, &[fav, partner], &[]);
                push(vec![order.clone(), order], &mut out);
            }
        }
        // Step 2: opposed favourites over all ordered member pairs.
        for &x in &members {
            for &y in &members {
                if x == y {
                    continue;
                }
                push(
                    vec![
                        WeakOrder::strict_with_ends(m, &[x], &[]),
                        WeakOrder::strict_with_ends(m, &[y], &[]),
                    ],
                    &mut out,
                );
            }
        }
        // Step 3: one player top-ranks an outcome the other player's
        // decisiveness will exclude.
        for owner in 0..2 {
            let other = 1 - owner;
            let (low, high) = assign.pair(owner);
            for (kept, excluded) in [(low, high), (high, low)] {
                let mut orders = vec![index_order.clone(), index_order.clone()];
                orders[other] = WeakOrder::strict_with_ends(m, &[excluded], &[]);
                orders[owner] = WeakOrder::strict_with_ends(m, &[kept, excluded], &[]);
                push(orders, &mut out);
            }
        }
    }

    // Each player strictly preferring each member of their own pair.
    for player in 0..n {
        let (low, high) = assign.pair(player);
        for fav in [low, high] {
            let mut orders = vec![index_order.clone(); n];
            orders[player] = WeakOrder::strict_with_ends(m, &[fav], &[]);
            push(orders, &mut out);
        }
    }
    // Everyone on their low member; everyone on their high member.
    for pick_high in [false, true] {
        let orders = (0..n)
            .map(|player| {
                let (low, high) = assign.pair(player);
                WeakOrder::strict_with_ends(m, &[if pick_high { high } else { low }], &[])
            })
            .collect();
        push(orders, &mut out);
    }
    // Near-unanimity: all but player 1 top-rank player 1's high member,
    // which player 1 ranks strictly last (their low member stays preferred).
    {
        let (_, high) = assign.pair(0);
        let mut orders = vec![WeakOrder::strict_with_ends(m, &[high], &[]); n];
        orders[0] = WeakOrder::strict_with_ends(m, &[], &[high]);
        push(orders, &mut out);
    }

    out
}

/// The near-unanimity profile alone (the no-veto incompatibility witness).
pub fn near_unanimity_profile(assign: &PairAssignment) -> Profile {
    let n = assign.players();
    let m = assign.outcomes();
    let (_, high) = assign.pair(0);
    let mut orders = vec![WeakOrder::strict_with_ends(m, &[high], &[]); n];
    orders[0] = WeakOrder::strict_with_ends(m, &[], &[high]);
    Profile::new(orders).expect("uniform m")
}
