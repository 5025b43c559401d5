//! Line-oriented text format for preference profiles.
//!
//! ```text
//! # comment
//! outcomes: 6
//! players: 3
//! pref 1: 4 > 2 > 1 = 3 > 5 > 6
//! pref 2: ...
//! ```
//!
//! Tiers are separated by `>`, ties within a tier by `=`; every outcome
//! index `1..=m` must appear exactly once per pref line. Parse errors carry
//! the 1-based line number.

use super::{Profile, WeakOrder};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the profile text format. `format_profile` followed by
/// `parse_profile` is the identity.
pub fn parse_profile(text: &str) -> Result<Profile> {
    let mut outcomes: Option<u32> = None;
    let mut players: Option<u32> = None;
    let mut orders: Vec<WeakOrder> = Vec::new();
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
            .ok_or_else(|| parse_err(line, "expected `key: value`"))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "outcomes" => {
                if outcomes.is_some() {
                    return Err(parse_err(line, "duplicate `outcomes` line"));
                }
                let m: u32 = value
                    .parse()
                    .map_err(|_| parse_err(line, format!("invalid outcome count `{value}`")))?;
                if m < 1 {
                    return Err(parse_err(line, "outcome count must be at least 1"));
                }
                outcomes = Some(m);
            }
            "players" => {
                if players.is_some() {
                    return Err(parse_err(line, "duplicate `players` line"));
                }
                let n: u32 = value
                    .parse()
                    .map_err(|_| parse_err(line, format!("invalid player count `{value}`")))?;
                if n < 1 {
                    return Err(parse_err(line, "player count must be at least 1"));
                }
                players = Some(n);
            }
            _ if key.starts_with("pref") => {
                let m = outcomes.ok_or_else(|| parse_err(line, "pref line before `outcomes:`"))?;
                let n = players.ok_or_else(|| parse_err(line, "pref line before `players:`"))?;
                let label: u32 = key["pref".len()..]
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(line, format!("invalid pref label `{key}`")))?;
                let expected = orders.len() as u32 + 1;
                if label != expected {
                    return Err(parse_err(line, format!("expected `pref {expected}`")));
                }
                if label > n {
                    return Err(parse_err(
                        line,
                        format!("pref line for player {label} but players: {n}"),
                    ));
                }
                orders.push(parse_pref_line(value, m, line)?);
            }
            _ => return Err(parse_err(line, format!("unknown key `{key}`"))),
        }
    }

    let n = players.ok_or_else(|| parse_err(last_line + 1, "missing `players:` line"))?;
    outcomes.ok_or_else(|| parse_err(last_line + 1, "missing `outcomes:` line"))?;
    if orders.len() as u32 != n {
        return Err(parse_err(
            last_line + 1,
            format!("players: {n} but found {} pref lines", orders.len()),
        ));
    }
    Profile::new(orders)
}

fn parse_pref_line(value: &str, m: u32, line: usize) -> Result<WeakOrder> {
    let mut ranks = vec![0u32; m as usize];
    let mut tier = 0u32;
    for group in value.split('>') {
        tier += 1;
        let group = group.trim();
        if group.is_empty() {
            return Err(parse_err(line, "empty tier between `>` separators"));
        }
        for token in group.split('=') {
            let token = token.trim();
            if token.is_empty() {
                return Err(parse_err(line, "empty entry between `=` separators"));
            }
            let index: u32 = token
                .parse()
                .map_err(|_| parse_err(line, format!("invalid outcome index `{token}`")))?;
            if index < 1 || index > m {
                return Err(parse_err(
                    line,
                    format!("outcome index {index} out of range 1..={m}"),
                ));
            }
            let slot = &mut ranks[(index - 1) as usize];
            if *slot != 0 {
                return Err(parse_err(line, format!("duplicate outcome index {index}")));
            }
            *slot = tier;
        }
    }
    if let Some(pos) = ranks.iter().position(|&r| r == 0) {
        return Err(parse_err(
            line,
            format!("outcome index {} missing from pref line", pos + 1),
        ));
    }
    WeakOrder::from_tiers(ranks)
}

/// Renders a profile in the canonical text format parsed by
/// [`parse_profile`].
pub fn format_profile(profile: &Profile) -> String {
    let mut out = String::new();
    out.push_str(&format!("outcomes: {}\n", profile.outcomes()));
    out.push_str(&format!("players: {}\n", profile.players()));
    for (player, order) in profile.orders().iter().enumerate() {
        out.push_str(&format!("pref {}: {}\n", player + 1, order));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prefs::{OutcomeId, WeakOrderSpace};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parses_a_minimal_profile() {
        let p = parse_profile("outcomes: 2\nplayers: 1\npref 1: 2 > 1\n").unwrap();
        assert_eq!(p.players(), 1);
        assert_eq!(p.order(0).tier(OutcomeId::new(2)).unwrap(), 1);
        assert_eq!(p.order(0).tier(OutcomeId::new(1)).unwrap(), 2);
    }

    #[test]
    fn parses_comments_and_blank_lines() {
        let text = "# header\n\noutcomes: 3  # trailing\nplayers: 1\npref 1: 1 = 2 = 3\n";
        let p = parse_profile(text).unwrap();
        assert_eq!(p.outcomes(), 3);
        assert_eq!(p.order(0).tier_count(), 1);
    }

    #[test]
    fn duplicate_outcome_is_reported_with_its_line() {
        let err = parse_profile("outcomes: 2\nplayers: 1\npref 1: 1 > 1 = 2\n").unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("duplicate outcome index 1"), "{message}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn error_catalogue_carries_line_numbers() {
        let cases: &[(&str, usize, &str)] = &[
            ("outcomes: 2\nplayers: 1\nbogus: 1\n", 3, "unknown key"),
            ("outcomes: 2\nplayers: 1\npref 1: 1\n", 3, "missing"),
            (
                "outcomes: 2\nplayers: 1\npref 1: 1 > 3\n",
                3,
                "out of range",
            ),
            (
                "outcomes: 2\nplayers: 1\npref 1: 1 > > 2\n",
                3,
                "empty tier",
            ),
            (
                "outcomes: 2\nplayers: 1\npref 2: 1 > 2\n",
                3,
                "expected `pref 1`",
            ),
            ("outcomes: 2\nplayers: 2\npref 1: 1 > 2\n", 4, "pref lines"),
            ("players: 1\npref 1: 1\n", 2, "before `outcomes:`"),
            (
                "outcomes: 2\nplayers: 1\npref 1: 1 = > 2\n",
                3,
                "empty entry",
            ),
            ("outcomes: 0\nplayers: 1\n", 1, "at least 1"),
            ("outcomes: 2\n", 2, "missing `players:`"),
        ];
        for (text, want_line, want_fragment) in cases {
            match parse_profile(text).unwrap_err() {
                Error::Parse { line, message } => {
                    assert_eq!(line, *want_line, "text {text:?} -> {message}");
                    assert!(
                        message.contains(want_fragment),
                        "text {text:?}: message {message:?} missing {want_fragment:?}"
                    );
                }
                other => panic!("unexpected error {other:?} for {text:?}"),
            }
        }
    }

    /// The three-player demo profile in text form parses to exactly the
    /// profile the demo constructs: each player's pair outcome on top, the
    /// pair partner second, everything else tied below.
    #[test]
    fn parses_the_three_player_demo_profile() {
        let text = "outcomes: 6\nplayers: 3\n\
                    pref 1: 4 > 2 > 1 = 3 = 5 = 6\n\
                    pref 2: 6 > 3 > 1 = 2 = 4 = 5\n\
                    pref 3: 5 > 1 > 2 = 3 = 4 = 6\n";
        let parsed = parse_profile(text).unwrap();
        let built = crate::prefs::Profile::new(vec![
            WeakOrder::from_groups(&[vec![4], vec![2], vec![1, 3, 5, 6]]).unwrap(),
            WeakOrder::from_groups(&[vec![6], vec![3], vec![1, 2, 4, 5]]).unwrap(),
            WeakOrder::from_groups(&[vec![5], vec![1], vec![2, 3, 4, 6]]).unwrap(),
        ])
        .unwrap();
        assert_eq!(parsed, built);
    }

    #[test]
    fn format_then_parse_is_identity_on_sampled_profiles() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..1_000 {
            let m = rng.gen_range(1..=6);
            let n = rng.gen_range(1..=4);
            let space = WeakOrderSpace::new(m).unwrap();
            let profile = space.sample_profile(n, &mut rng);
            let round = parse_profile(&format_profile(&profile)).unwrap();
            assert_eq!(round, profile);
        }
    }
}
