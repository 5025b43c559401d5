//! Enumeration, ranking and exact uniform sampling of weak orders.
//!
//! A weak order over `m` outcomes is stored as its tier vector
//! `(t_1, ..., t_m)`, and the enumeration order is the lexicographic order on
//! those vectors. Both the iterator and the sampler go through the same
//! unranking routine, so the n-th enumerated order and `unrank(n)` agree by
//! construction. Counts are exact (`u128`), which keeps uniform sampling
//! exact as well: draw a rank below the ordered Bell number, unrank it.

use rand::Rng;

use super::{Profile, WeakOrder};
use crate::error::{Error, Result};

/// Largest `m` for which enumeration and sampling are supported.
///
/// Beyond this the exact counts still fit `u128` but nothing in the toolkit
/// needs them, and the completion tables would be pointlessly large.
pub const MAX_ENUMERABLE_OUTCOMES: u32 = 20;

fn check_enumerable(m: u32) -> Result<()> {
    if m < 1 {
        return Err(Error::BadOutcomeCount { got: m, min: 1 });
    }
    if m > MAX_ENUMERABLE_OUTCOMES {
        return Err(Error::OutcomeCountTooLarge {
            got: m,
            limit: MAX_ENUMERABLE_OUTCOMES,
        });
    }
    Ok(())
}

/// Number of weak orders on `m` outcomes (ordered Bell number).
pub fn ordered_bell(m: u32) -> Result<u128> {
    Ok(WeakOrderSpace::new(m)?.count())
}

/// Number of orders yielded by [`enumerate_orders`] for the same arguments.
pub fn order_count(m: u32, strict_only: bool) -> Result<u128> {
    check_enumerable(m)?;
    if strict_only {
        Ok((2..=m as u128).product())
    } else {
        ordered_bell(m)
    }
}

/// The ranked space of all weak orders over a fixed `m`.
///
/// Construction precomputes the completion-count table; keep one instance
/// around when unranking or sampling many orders.
#[derive(Clone, Debug)]
pub struct WeakOrderSpace {
    m: u32,
    /// `comp[(k * (m+1) + g) * (m+1) + r]`: number of ways to extend a
    /// partial tier vector with max tier `k` and `g` unused tiers below `k`
    /// by `r` more entries into a valid weak order.
    comp: Vec<u128>,
}

impl WeakOrderSpace {
    pub fn new(m: u32) -> Result<Self> {
        check_enumerable(m)?;
        let mu = m as usize;
        let dim = mu + 1;

        // Binomials up to m and powers base^exp for base, exp <= m.
        let mut binom = vec![vec![0u128; dim]; dim];
        for n in 0..dim {
            binom[n][0] = 1;
            for k in 1..=n {
                binom[n][k] = binom[n - 1][k - 1] + if k < n { binom[n - 1][k] } else { 0 };
            }
        }
        let mut pow = vec![vec![0u128; dim]; dim];
        for (base, row) in pow.iter_mut().enumerate() {
            row[0] = 1;
            for exp in 1..dim {
                row[exp] = row[exp - 1] * base as u128;
            }
        }

        let mut comp = vec![0u128; dim * dim * dim];
        for k in 0..dim {
            for g in 0..dim {
                // The max tier k is itself used, so at most k - 1 gaps can
                // sit below it; other (k, g) states are unreachable.
                if g >= k.max(1) && !(k == 0 && g == 0) {
                    continue;
                }
                for r in 0..dim {
                    if g > r {
                        continue; // not enough entries left to fill the gaps
                    }
                    // Extend the maximum tier by j; every gap and every new
                    // tier must be hit at least once (inclusion-exclusion),
                    // remaining entries range over the k + j tiers freely.
                    let j_max = (r - g).min(mu.saturating_sub(k));
                    let mut total: i128 = 0;
                    for j in 0..=j_max {
                        let designated = g + j;
                        for s in 0..=designated {
                            let term = (binom[designated][s] * pow[k + j - s][r]) as i128;
                            if s % 2 == 0 {
                                total += term;
                            } else {
                                total -= term;
                            }
                        }
                    }
                    debug_assert!(total >= 0);
                    comp[(k * dim + g) * dim + r] = total as u128;
                }
            }
        }
        Ok(WeakOrderSpace { m, comp })
    }

    pub fn outcome_count(&self) -> u32 {
        self.m
    }

    /// Total number of weak orders in the space (ordered Bell number of `m`).
    pub fn count(&self) -> u128 {
        self.completions(0, 0, self.m as usize)
    }

    fn completions(&self, k: usize, g: usize, r: usize) -> u128 {
        let dim = self.m as usize + 1;
        self.comp[(k * dim + g) * dim + r]
    }

    /// The `rank`-th weak order in lexicographic tier-vector order.
    ///
    /// Panics when `rank >= count()`.
    #[allow(clippy::needless_range_loop)]
    pub fn unrank(&self, rank: u128) -> WeakOrder {
        assert!(rank < self.count(), "rank out of range");
        let m = self.m as usize;
        let mut remaining = rank;
        let mut ranks = vec![0u32; m];
        let mut used = vec![false; m + 1];
        let mut max_tier = 0usize;
        let mut gaps = 0usize;
        for pos in 0..m {
            let left = m - pos - 1;
            for tier in 1..=m {
                let (k2, g2) = if tier <= max_tier {
                    (max_tier, gaps - usize::from(!used[tier]))
                } else {
                    (tier, gaps + (tier - 1 - max_tier))
                };
                let ways = self.completions(k2, g2, left);
                if remaining < ways {
                    ranks[pos] = tier as u32;
                    used[tier] = true;
                    max_tier = k2;
                    gaps = g2;
                    break;
                }
                remaining -= ways;
            }
            debug_assert!(ranks[pos] != 0, "unrank failed to place a tier");
        }
        debug_assert_eq!(gaps, 0);
        WeakOrder { ranks }
    }

    /// Draws a uniformly distributed weak order by unranking a uniform rank.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> WeakOrder {
        let rank = rng.gen_range(0..self.count());
        self.unrank(rank)
    }

    /// Draws `n` independent orders into a profile.
    pub fn sample_profile<R: Rng + ?Sized>(&self, players: usize, rng: &mut R) -> Profile {
        assert!(players >= 1);
        Profile::new((0..players).map(|_| self.sample(rng)).collect())
            .expect("sampled orders share m")
    }

    /// All orders in enumeration order.
    pub fn iter(&self) -> impl Iterator<Item = WeakOrder> + '_ {
        let count = self.count();
        (0..count).map(|rank| self.unrank(rank))
    }
}

/// Draws one uniformly distributed weak order over `m` outcomes.
///
/// Builds a [`WeakOrderSpace`] per call; hot paths should construct the
/// space once and call [`WeakOrderSpace::sample`] on it.
pub fn sample_weak_order<R: Rng + ?Sized>(m: u32, rng: &mut R) -> Result<WeakOrder> {
    Ok(WeakOrderSpace::new(m)?.sample(rng))
}

/// Deterministic stream of every weak order (or every strict order) over `m`
/// outcomes, in lexicographic tier-vector order, each exactly once.
pub fn enumerate_orders(m: u32, strict_only: bool) -> Result<OrderEnumeration> {
    check_enumerable(m)?;
    if strict_only {
        Ok(OrderEnumeration::Strict {
            next: Some((1..=m).collect()),
        })
    } else {
        let space = WeakOrderSpace::new(m)?;
        let count = space.count();
        Ok(OrderEnumeration::Weak {
            space,
            next: 0,
            count,
        })
    }
}

/// Iterator returned by [`enumerate_orders`].
pub enum OrderEnumeration {
    Weak {
        space: WeakOrderSpace,
        next: u128,
        count: u128,
    },
    Strict {
        next: Option<Vec<u32>>,
    },
}

impl Iterator for OrderEnumeration {
    type Item = WeakOrder;

    fn next(&mut self) -> Option<WeakOrder> {
        match self {
            OrderEnumeration::Weak { space, next, count } => {
                if next == count {
                    return None;
                }
                let order = space.unrank(*next);
                *next += 1;
                Some(order)
            }
            OrderEnumeration::Strict { next } => {
                let current = next.take()?;
                let order = WeakOrder {
                    ranks: current.clone(),
                };
                *next = next_permutation(current);
                Some(order)
            }
        }
    }
}

/// `m!` as an exact count.
pub(crate) fn factorial(m: u32) -> u128 {
    (2..=m as u128).product()
}

/// The `rank`-th strict order over `m` outcomes, in the same lexicographic
/// tier-vector order that `enumerate_orders(m, true)` yields (factoradic
/// decoding).
pub(crate) fn unrank_strict(m: u32, rank: u128) -> WeakOrder {
    debug_assert!(rank < factorial(m));
    let mut remaining = rank;
    let mut pool: Vec<u32> = (1..=m).collect();
    let mut ranks = Vec::with_capacity(m as usize);
    for left in (0..m).rev() {
        let block = factorial(left);
        let pick = (remaining / block) as usize;
        remaining %= block;
        ranks.push(pool.remove(pick));
    }
    WeakOrder { ranks }
}

/// Classic lexicographic successor; `None` after the descending permutation.
fn next_permutation(mut v: Vec<u32>) -> Option<Vec<u32>> {
    let n = v.len();
    if n < 2 {
        return None;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    Some(v)
}
