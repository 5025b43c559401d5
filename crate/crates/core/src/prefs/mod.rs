//! Outcomes, weak orderings and preference profiles.
//!
//! A [`WeakOrder`] stores one tier number per outcome (lower tier = more
//! preferred, ties share a tier). Because the tiers are required to cover a
//! contiguous range `1..=t`, every representable value is a complete,
//! transitive, reflexive ranking; invalid orderings cannot be constructed.

mod enumerate;
mod text;

pub use enumerate::{
    enumerate_orders, order_count, ordered_bell, sample_weak_order, OrderEnumeration,
    WeakOrderSpace, MAX_ENUMERABLE_OUTCOMES,
};
pub(crate) use enumerate::{factorial, unrank_strict};
pub use text::{format_profile, parse_profile};

use std::fmt;

use crate::error::{Error, Result};

/// 1-based index of an outcome in the ambient outcome set.
///
/// Range checks against the ambient outcome count happen at the operation
/// that receives the id, since the id itself does not know the ambient size.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OutcomeId(u32);

impl OutcomeId {
    /// Wraps a 1-based outcome index.
    ///
    /// Panics on 0; parsing front ends reject 0 before constructing ids.
    pub fn new(index: u32) -> Self {
        assert!(index >= 1, "outcome indices are 1-based");
        OutcomeId(index)
    }

    /// The 1-based index.
    pub fn get(self) -> u32 {
        self.0
    }

    /// 0-based position, for indexing into per-outcome vectors.
    pub fn pos(self) -> usize {
        (self.0 - 1) as usize
    }
}

impl fmt::Display for OutcomeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// How one outcome relates to another under a given weak order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    StrictlyPrefers,
    Indifferent,
    StrictlyDispreferred,
}

/// One player's complete, transitive, reflexive ranking over `m` outcomes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeakOrder {
    /// `ranks[o]` is the tier of outcome `o + 1`; tiers cover `1..=t`.
    ranks: Vec<u32>,
}

impl WeakOrder {
    /// Builds a weak order from one tier number per outcome.
    ///
    /// The tiers must cover `1..=t` for some `t` with every tier occupied;
    /// anything else is rejected, so the ordering axioms hold by construction.
    pub fn from_tiers(ranks: Vec<u32>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::BadOutcomeCount { got: 0, min: 1 });
        }
        let m = ranks.len() as u32;
        let t = *ranks.iter().max().expect("non-empty");
        if t > m {
            return Err(Error::NonContiguousTiers);
        }
        let mut seen = vec![false; t as usize];
        for &r in &ranks {
            if r < 1 {
                return Err(Error::NonContiguousTiers);
            }
            seen[(r - 1) as usize] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::NonContiguousTiers);
        }
        Ok(WeakOrder { ranks })
    }

    /// Builds a weak order from tier groups listed best-first, e.g.
    /// `[[4], [2], [1, 3], [5], [6]]` for `4 > 2 > 1 = 3 > 5 > 6`.
    ///
    /// Every outcome `1..=m` must appear exactly once, where `m` is the total
    /// number of listed outcomes.
    pub fn from_groups(groups: &[Vec<u32>]) -> Result<Self> {
        let m: usize = groups.iter().map(|g| g.len()).sum();
        if m == 0 {
            return Err(Error::BadOutcomeCount { got: 0, min: 1 });
        }
        let mut ranks = vec![0u32; m];
        for (tier0, group) in groups.iter().enumerate() {
            for &index in group {
                if index < 1 || index as usize > m {
                    return Err(Error::OutcomeOutOfRange { index, m: m as u32 });
                }
                let slot = &mut ranks[(index - 1) as usize];
                if *slot != 0 {
                    return Err(Error::NonContiguousTiers);
                }
                *slot = tier0 as u32 + 1;
            }
        }
        // Empty groups would leave a tier unoccupied; from_tiers rejects that.
        WeakOrder::from_tiers(ranks)
    }

    /// The fully indifferent order: every outcome in tier 1.
    pub fn indifferent(m: u32) -> Self {
        assert!(m >= 1);
        WeakOrder {
            ranks: vec![1; m as usize],
        }
    }

    /// The strict order `1 > 2 > ... > m`.
    pub fn by_index(m: u32) -> Self {
        assert!(m >= 1);
        WeakOrder {
            ranks: (1..=m).collect(),
        }
    }

    /// Strict order that ranks `prefix` first (in the given sequence), then
    /// every outcome in `suffix` last (in the given sequence), with all
    /// remaining outcomes in ascending index order in between.
    ///
    /// Deterministic completion helper for partially specified rankings.
    pub fn strict_with_ends(m: u32, prefix: &[OutcomeId], suffix: &[OutcomeId]) -> Self {
        let mut placed = vec![false; m as usize];
        let mut sequence: Vec<OutcomeId> = Vec::with_capacity(m as usize);
        for &o in prefix {
            assert!(o.get() <= m && !placed[o.pos()], "invalid prefix");
            placed[o.pos()] = true;
            sequence.push(o);
        }
        for &o in suffix {
            assert!(o.get() <= m && !placed[o.pos()], "invalid suffix");
            placed[o.pos()] = true;
        }
        for index in 1..=m {
            if !placed[(index - 1) as usize] {
                sequence.push(OutcomeId::new(index));
            }
        }
        sequence.extend_from_slice(suffix);
        let mut ranks = vec![0u32; m as usize];
        for (tier0, o) in sequence.iter().enumerate() {
            ranks[o.pos()] = tier0 as u32 + 1;
        }
        WeakOrder { ranks }
    }

    /// Number of outcomes `m` this order ranks.
    pub fn outcome_count(&self) -> u32 {
        self.ranks.len() as u32
    }

    /// Number of distinct tiers `t`.
    pub fn tier_count(&self) -> u32 {
        *self.ranks.iter().max().expect("non-empty")
    }

    /// Tier of an outcome (1 = most preferred).
    pub fn tier(&self, outcome: OutcomeId) -> Result<u32> {
        self.check_range(outcome)?;
        Ok(self.ranks[outcome.pos()])
    }

    /// The raw tier vector, one entry per outcome.
    pub fn tiers(&self) -> &[u32] {
        &self.ranks
    }

    /// True when the order has no ties.
    pub fn is_strict(&self) -> bool {
        self.tier_count() == self.outcome_count()
    }

    /// Compares two outcomes under this order.
    pub fn compare(&self, a: OutcomeId, b: OutcomeId) -> Result<Relation> {
        self.check_range(a)?;
        self.check_range(b)?;
        let (ta, tb) = (self.ranks[a.pos()], self.ranks[b.pos()]);
        Ok(if ta < tb {
            Relation::StrictlyPrefers
        } else if ta == tb {
            Relation::Indifferent
        } else {
            Relation::StrictlyDispreferred
        })
    }

    /// `a R b`: weak preference.
    pub fn weakly_prefers(&self, a: OutcomeId, b: OutcomeId) -> Result<bool> {
        Ok(!matches!(
            self.compare(a, b)?,
            Relation::StrictlyDispreferred
        ))
    }

    /// `a P b`: strict preference.
    pub fn strictly_prefers(&self, a: OutcomeId, b: OutcomeId) -> Result<bool> {
        Ok(matches!(self.compare(a, b)?, Relation::StrictlyPrefers))
    }

    /// Outcomes in tier 1, ascending by index.
    pub fn top_outcomes(&self) -> Vec<OutcomeId> {
        self.ranks
            .iter()
            .enumerate()
            .filter(|(_, &r)| r == 1)
            .map(|(pos, _)| OutcomeId::new(pos as u32 + 1))
            .collect()
    }

    /// Tier groups best-first, members ascending by index.
    pub fn groups(&self) -> Vec<Vec<OutcomeId>> {
        let mut out = vec![Vec::new(); self.tier_count() as usize];
        for (pos, &r) in self.ranks.iter().enumerate() {
            out[(r - 1) as usize].push(OutcomeId::new(pos as u32 + 1));
        }
        out
    }

    fn check_range(&self, outcome: OutcomeId) -> Result<()> {
        if outcome.get() > self.outcome_count() {
            return Err(Error::OutcomeOutOfRange {
                index: outcome.get(),
                m: self.outcome_count(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for WeakOrder {
    /// `4 > 2 > 1 = 3 > 5 > 6` — the pref-line syntax of the profile format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (gi, group) in self.groups().iter().enumerate() {
            if gi > 0 {
                write!(f, " > ")?;
            }
            for (oi, outcome) in group.iter().enumerate() {
                if oi > 0 {
                    write!(f, " = ")?;
                }
                write!(f, "{outcome}")?;
            }
        }
        Ok(())
    }
}

/// A preference profile: one weak order per player over a shared outcome set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Profile {
    orders: Vec<WeakOrder>,
}

impl Profile {
    /// Builds a profile, checking that every order ranks the same `m`.
    pub fn new(orders: Vec<WeakOrder>) -> Result<Self> {
        let first = orders.first().ok_or(Error::EmptyProfile)?;
        let m = first.outcome_count();
        for (i, order) in orders.iter().enumerate() {
            if order.outcome_count() != m {
                return Err(Error::MixedOutcomeCounts {
                    player: i + 1,
                    expected: m,
                    got: order.outcome_count(),
                });
            }
        }
        Ok(Profile { orders })
    }

    /// Number of players `n`.
    pub fn players(&self) -> usize {
        self.orders.len()
    }

    /// Number of outcomes `m`.
    pub fn outcomes(&self) -> u32 {
        self.orders[0].outcome_count()
    }

    /// The ranking of one player (0-based).
    pub fn order(&self, player: usize) -> &WeakOrder {
        &self.orders[player]
    }

    /// All rankings in player order.
    pub fn orders(&self) -> &[WeakOrder] {
        &self.orders
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_profile(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(i: u32) -> OutcomeId {
        OutcomeId::new(i)
    }

    /// The running example `4 > 2 > 1 = 3 > 5 > 6`.
    fn example_order() -> WeakOrder {
        WeakOrder::from_tiers(vec![3, 2, 3, 1, 4, 5]).unwrap()
    }

    #[test]
    fn compare_follows_tiers() {
        let w = example_order();
        assert_eq!(w.compare(o(4), o(2)).unwrap(), Relation::StrictlyPrefers);
        assert_eq!(w.compare(o(1), o(3)).unwrap(), Relation::Indifferent);
        assert_eq!(
            w.compare(o(6), o(4)).unwrap(),
            Relation::StrictlyDispreferred
        );
    }

    #[test]
    fn compare_is_reflexive() {
        let w = example_order();
        for i in 1..=6 {
            assert_eq!(w.compare(o(i), o(i)).unwrap(), Relation::Indifferent);
        }
    }

    #[test]
    fn compare_rejects_out_of_range() {
        let w = example_order();
        assert_eq!(
            w.compare(o(7), o(1)),
            Err(Error::OutcomeOutOfRange { index: 7, m: 6 })
        );
    }

    /// Complete, transitive, reflexive — exhaustively for every weak order
    /// with m <= 5 and every outcome triple.
    #[test]
    fn order_axioms_hold_exhaustively() {
        for m in 1..=5u32 {
            for w in enumerate_orders(m, false).unwrap() {
                for a in 1..=m {
                    for b in 1..=m {
                        // Completeness: compare always answers, and the answer
                        // is antisymmetric across the argument swap.
                        let ab = w.compare(o(a), o(b)).unwrap();
                        let ba = w.compare(o(b), o(a)).unwrap();
                        match ab {
                            Relation::StrictlyPrefers => {
                                assert_eq!(ba, Relation::StrictlyDispreferred)
                            }
                            Relation::Indifferent => assert_eq!(ba, Relation::Indifferent),
                            Relation::StrictlyDispreferred => {
                                assert_eq!(ba, Relation::StrictlyPrefers)
                            }
                        }
                        for c in 1..=m {
                            // Transitivity of the weak relation.
                            let weak_ab = w.weakly_prefers(o(a), o(b)).unwrap();
                            let weak_bc = w.weakly_prefers(o(b), o(c)).unwrap();
                            let weak_ac = w.weakly_prefers(o(a), o(c)).unwrap();
                            if weak_ab && weak_bc {
                                assert!(weak_ac, "transitivity failed, m={m} a={a} b={b} c={c}");
                            }
                        }
                    }
                    assert_eq!(w.compare(o(a), o(a)).unwrap(), Relation::Indifferent);
                }
            }
        }
    }

    #[test]
    fn from_tiers_validates_contiguity() {
        assert!(WeakOrder::from_tiers(vec![1, 3]).is_err()); // tier 2 missing
        assert!(WeakOrder::from_tiers(vec![2, 2]).is_err()); // tier 1 missing
        assert!(WeakOrder::from_tiers(vec![0, 1]).is_err()); // tiers are 1-based
        assert!(WeakOrder::from_tiers(vec![]).is_err());
        assert!(WeakOrder::from_tiers(vec![1, 1, 2]).is_ok());
    }

    #[test]
    fn from_groups_builds_the_example() {
        let w = WeakOrder::from_groups(&[vec![4], vec![2], vec![1, 3], vec![5], vec![6]]).unwrap();
        assert_eq!(w, example_order());
        assert_eq!(w.to_string(), "4 > 2 > 1 = 3 > 5 > 6");
    }

    #[test]
    fn from_groups_rejects_duplicates_and_gaps() {
        assert!(WeakOrder::from_groups(&[vec![1], vec![1]]).is_err());
        assert!(WeakOrder::from_groups(&[vec![1], vec![3]]).is_err());
    }

    #[test]
    fn strict_with_ends_completes_by_index() {
        let w = WeakOrder::strict_with_ends(6, &[o(4)], &[o(2)]);
        assert_eq!(w.to_string(), "4 > 1 > 3 > 5 > 6 > 2");
        assert!(w.is_strict());
    }

    #[test]
    fn profile_requires_matching_outcome_counts() {
        let err = Profile::new(vec![WeakOrder::by_index(3), WeakOrder::by_index(4)]);
        assert_eq!(
            err,
            Err(Error::MixedOutcomeCounts {
                player: 2,
                expected: 3,
                got: 4
            })
        );
        assert!(Profile::new(vec![]).is_err());
    }

    #[test]
    fn top_outcomes_lists_tier_one() {
        let w = WeakOrder::from_tiers(vec![1, 2, 1]).unwrap();
        assert_eq!(w.top_outcomes(), vec![o(1), o(3)]);
    }
}
