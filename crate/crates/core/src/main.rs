//! Command-line front end: solve, verify, witness, search2p, demo.
//!
//! Exit codes: 0 = verified/success, 1 = counterexample or violation found,
//! 2 = usage, parse or guard-limit error. Standard output is byte-identical
//! across runs with the same flags and seeds; timings go to standard error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nashimpl::impossibility::{
    contradiction_witness, find_contradiction, find_universal_attainers, refute_two_player,
    search_two_player,
};
use nashimpl::nash::DEFAULT_GUARD_LIMIT;
use nashimpl::prefs::{parse_profile, OutcomeId, Profile, WeakOrder};
use nashimpl::rules::{liberal_rule, outcome_set, PairAssignment};
use nashimpl::verify::{
    check_implementation_at, verify_profiles, ProfileSource, Verdict, VerificationReport,
    VerifyOptions,
};
use nashimpl::{best_deviation, nash_equilibria, GameForm, LiberalGameForm, MatrixGameForm};

#[derive(Parser)]
#[command(
    name = "nashimpl",
    version,
    about = "Nash implementation toolkit for choice-liberal social choice rules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the pure Nash equilibria of a game form under a profile
    Solve(SolveArgs),
    /// Check that the naming mechanism implements the liberal rule on
    /// sampled plus adversarial profiles
    Verify(VerifyArgs),
    /// Build the decisiveness contradiction for an overlapping assignment
    Witness(WitnessArgs),
    /// Exhaustively refute every small two-player matrix game form
    Search2p(SearchArgs),
    /// Self-checking worked examples (6.1, 6.2, 6.3)
    Demo(DemoArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Profile file (text format)
    #[arg(long)]
    profile: PathBuf,
    /// Decisive pairs "1,2;3,4;5,6" — selects the naming mechanism
    #[arg(long, group = "form")]
    pairs: Option<String>,
    /// Matrix game-form file — selects a two-player matrix
    #[arg(long, group = "form")]
    matrix: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_GUARD_LIMIT)]
    guard_limit: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Number of players (at least 3)
    #[arg(long)]
    n: u32,
    /// Number of outcomes (at least 2n)
    #[arg(long)]
    m: u32,
    /// Decisive pairs; canonical {1,2}{3,4}... when omitted
    #[arg(long)]
    pairs: Option<String>,
    /// Sampled weak-order profiles to test
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_GUARD_LIMIT)]
    guard_limit: u64,
    /// Retain at most this many violation records in the report
    #[arg(long, default_value_t = 32)]
    violation_cap: usize,
    /// Worker threads (results are merged deterministically)
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u32,
    /// Pairs to analyze; with m < 2n an overlapping assignment is generated
    /// automatically when omitted
    #[arg(long)]
    pairs: Option<String>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    rows: u32,
    #[arg(long)]
    cols: u32,
    #[arg(long)]
    m: u32,
    /// Two decisive pairs; canonical {1,2}{3,4} when omitted
    #[arg(long)]
    pairs: Option<String>,
    #[arg(long, default_value_t = DEFAULT_GUARD_LIMIT)]
    guard_limit: u64,
}

#[derive(Args)]
struct DemoArgs {
    /// Which worked example to run
    #[arg(value_parser = ["6.1", "6.2", "6.3"])]
    which: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Witness(args) => cmd_witness(args),
        Command::Search2p(args) => cmd_search2p(args),
        Command::Demo(args) => cmd_demo(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

type CmdResult = Result<u8, String>;

fn read_file(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_pairs(text: &str, m: u32) -> Result<PairAssignment, String> {
    PairAssignment::parse(text, m).map_err(|e| format!("--pairs: {e}"))
}

fn cmd_solve(args: SolveArgs) -> CmdResult {
    let profile = parse_profile(&read_file(&args.profile)?)
        .map_err(|e| format!("{}: {e}", args.profile.display()))?;
    let gf: GameForm = match (&args.pairs, &args.matrix) {
        (Some(pairs), None) => {
            let assign = parse_pairs(pairs, profile.outcomes())?;
            LiberalGameForm::new(assign)
                .map_err(|e| e.to_string())?
                .into()
        }
        (None, Some(path)) => MatrixGameForm::parse(&read_file(path)?)
            .map_err(|e| format!("{}: {e}", path.display()))?
            .into(),
        _ => return Err("exactly one of --pairs or --matrix must be given".into()),
    };
    let equilibria = nash_equilibria(&gf, &profile, args.guard_limit).map_err(|e| e.to_string())?;
    println!("game form: {gf}");
    println!("equilibria: {}", equilibria.len());
    for s in equilibria.profiles() {
        let labels: Vec<String> = s
            .iter()
            .enumerate()
            .map(|(player, &index)| gf.describe_strategy(player, index))
            .collect();
        println!("  ({}) -> {}", labels.join(", "), gf.outcome(s));
    }
    println!("equilibrium outcomes: {}", equilibria.outcomes());
    Ok(0)
}

fn print_violations(report: &VerificationReport) {
    for v in &report.violations {
        let direction = match v.verdict {
            Verdict::Equal => continue,
            Verdict::MissingFromEquilibria => "missing from equilibria",
            Verdict::ExtraEquilibria => "extra equilibria",
        };
        println!(
            "violation at profile #{}: {direction}; rule={} equilibria={}",
            v.index, v.rule_outcomes, v.equilibrium_outcomes
        );
        print!("{}", v.profile);
    }
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    if args.n < 3 {
        return Err(format!("--n must be at least 3, got {}", args.n));
    }
    if args.m < 2 * args.n {
        return Err(format!(
            "--m must be at least 2n = {}, got {}",
            2 * args.n,
            args.m
        ));
    }
    let assign = match &args.pairs {
        Some(text) => parse_pairs(text, args.m)?,
        None => PairAssignment::canonical(args.n, args.m).map_err(|e| e.to_string())?,
    };
    if assign.players() as u32 != args.n {
        return Err(format!(
            "--pairs has {} pairs but --n is {}",
            assign.players(),
            args.n
        ));
    }
    let gf: GameForm = LiberalGameForm::new(assign.clone())
        .map_err(|e| e.to_string())?
        .into();
    let rule = |p: &Profile| liberal_rule(&assign, p).expect("dimensions pre-checked");
    let opts = VerifyOptions {
        guard_limit: args.guard_limit,
        violation_cap: args.violation_cap,
        threads: args.threads,
    };
    println!(
        "verify: naming mechanism vs liberal rule, n={}, m={}, pairs {}",
        args.n, args.m, assign
    );
    let sampled_source = ProfileSource::Sampled {
        players: args.n,
        outcomes: args.m,
        count: args.samples,
        seed: args.seed,
    };
    let sampled = verify_profiles(&gf, rule, &sampled_source, &opts).map_err(|e| e.to_string())?;
    println!("sampled: {}", sampled.summary_line());
    let adversarial_source = ProfileSource::adversarial(&assign);
    let adversarial =
        verify_profiles(&gf, rule, &adversarial_source, &opts).map_err(|e| e.to_string())?;
    println!("adversarial: {}", adversarial.summary_line());
    let tested = sampled.tested + adversarial.tested;
    let violations = sampled.total_violations + adversarial.total_violations;
    println!("tested={tested} violations={violations} seed={}", args.seed);
    print_violations(&sampled);
    print_violations(&adversarial);
    eprintln!(
        "elapsed: {:?} sampled, {:?} adversarial",
        sampled.elapsed, adversarial.elapsed
    );
    Ok(if violations == 0 { 0 } else { 1 })
}

fn cmd_witness(args: WitnessArgs) -> CmdResult {
    if args.n < 1 || args.m < 2 {
        return Err("need --n >= 1 and --m >= 2".into());
    }
    let assign = match &args.pairs {
        Some(text) => parse_pairs(text, args.m)?,
        None => PairAssignment::wrapped(args.n, args.m).map_err(|e| e.to_string())?,
    };
    if assign.players() as u32 != args.n {
        return Err(format!(
            "--pairs has {} pairs but --n is {}",
            assign.players(),
            args.n
        ));
    }
    let witness = contradiction_witness(&assign).map_err(|e| e.to_string())?;
    println!("assignment: {assign}  (m={})", args.m);
    let (first, second, shared) = assign.first_overlap().expect("witness implies overlap");
    println!(
        "overlap: players {} and {} share outcome {}",
        first + 1,
        second + 1,
        shared
    );
    println!("profile:");
    print!("{}", witness.profile);
    println!("witness: {witness}");
    if witness.validate(&assign) {
        println!(
            "validated: both decisiveness implications fire on outcome {}",
            witness.shared
        );
        Ok(0)
    } else {
        println!("validation FAILED: stored profile does not reproduce the contradiction");
        Ok(1)
    }
}

fn cmd_search2p(args: SearchArgs) -> CmdResult {
    let assign = match &args.pairs {
        Some(text) => parse_pairs(text, args.m)?,
        None => PairAssignment::canonical(2, args.m).map_err(|e| e.to_string())?,
    };
    println!(
        "search: {}x{} grids over m={}, pairs {}",
        args.rows, args.cols, args.m, assign
    );
    let report = search_two_player(
        args.rows,
        args.cols,
        args.m,
        &assign,
        args.guard_limit,
        |count| eprintln!("processed {count} forms"),
    )
    .map_err(|e| e.to_string())?;
    println!("{}", report.summary_line());
    eprintln!("max probes per form: {}", report.max_probes);
    eprintln!("elapsed: {:?}", report.elapsed);
    if report.all_refuted() {
        Ok(0)
    } else {
        println!(
            "UNREFUTED FORMS FOUND — these grids survived every probe (lexicographic indices):"
        );
        for index in &report.unrefuted {
            println!("  form #{index}");
        }
        Ok(1)
    }
}

fn cmd_demo(args: DemoArgs) -> CmdResult {
    match args.which.as_str() {
        "6.1" => demo_overlap(),
        "6.2" => demo_implementation(),
        "6.3" => demo_two_player(),
        _ => unreachable!("clap validates the demo id"),
    }
}

fn o(i: u32) -> OutcomeId {
    OutcomeId::new(i)
}

/// Three players, four outcomes: every player is decisive over a pair
/// containing the shared fallback outcome 4, and one conflicted profile
/// forces outcome 4 both in and out of any rule output.
fn demo_overlap() -> CmdResult {
    println!("demo 6.1: three players, four outcomes, overlapping pairs");
    let assign = PairAssignment::parse("1,4;2,4;3,4", 4).map_err(|e| e.to_string())?;
    println!("assignment: {assign}  (m=4)");
    let profile = Profile::new(vec![
        WeakOrder::strict_with_ends(4, &[o(1)], &[]),
        WeakOrder::strict_with_ends(4, &[o(2)], &[]),
        WeakOrder::strict_with_ends(4, &[o(4)], &[]),
    ])
    .expect("uniform m");
    println!(
        "profile (players 1 and 2 favour their own outcome; player 3 favours the shared one):"
    );
    print!("{profile}");
    let witness =
        find_contradiction(&assign, &profile).ok_or("expected a contradiction on this profile")?;
    println!("witness: {witness}");
    if witness.shared == o(4) && witness.validate(&assign) {
        println!(
            "no rule can honour all three decisive pairs: outcome 4 must be both selected and excluded"
        );
        Ok(0)
    } else {
        println!("DEMO FAILED: expected the contradiction on outcome 4");
        Ok(1)
    }
}

/// Three players, six outcomes, disjoint pairs: the liberal rule selects
/// {4, 5, 6} and the naming mechanism's equilibrium outcomes match exactly.
fn demo_implementation() -> CmdResult {
    println!("demo 6.2: three players, six outcomes, disjoint pairs");
    let assign = PairAssignment::parse("2,4;3,6;1,5", 6).map_err(|e| e.to_string())?;
    println!("assignment: {assign}  (m=6)");
    let profile = Profile::new(vec![
        WeakOrder::from_groups(&[vec![4], vec![2], vec![1, 3, 5, 6]]).expect("valid"),
        WeakOrder::from_groups(&[vec![6], vec![3], vec![1, 2, 4, 5]]).expect("valid"),
        WeakOrder::from_groups(&[vec![5], vec![1], vec![2, 3, 4, 6]]).expect("valid"),
    ])
    .expect("uniform m");
    println!("profile (each player prefers their pair's higher-indexed outcome):");
    print!("{profile}");
    let rule_out = liberal_rule(&assign, &profile).map_err(|e| e.to_string())?;
    println!("liberal rule output: {rule_out}");
    let gf: GameForm = LiberalGameForm::new(assign.clone())
        .map_err(|e| e.to_string())?
        .into();
    let equilibria =
        nash_equilibria(&gf, &profile, DEFAULT_GUARD_LIMIT).map_err(|e| e.to_string())?;
    println!(
        "equilibrium outcomes over all {} strategy profiles: {}",
        gf.total_profiles(),
        equilibria.outcomes()
    );
    // Why outcome 1 is not an equilibrium outcome: when player 3's named
    // outcome 1 is final, naming 5 instead pays.
    let find = |player: usize, outcome: u32, named: usize| -> usize {
        let GameForm::Liberal(lib) = &gf else {
            unreachable!()
        };
        (0..lib.strategy_count(player))
            .find(|&i| {
                let st = lib.strategy(player, i);
                st.named_outcome == o(outcome) && st.named_player == named
            })
            .expect("strategy exists")
    };
    let s = vec![find(0, 4, 2), find(1, 6, 2), find(2, 1, 2)];
    let from = gf.outcome(&s);
    let deviation = best_deviation(&gf, &profile, &s, 2);
    let expected = outcome_set(&[4, 5, 6]);
    match deviation {
        Some(alt) if rule_out == expected && equilibria.outcomes() == &expected => {
            let mut s2 = s.clone();
            s2[2] = alt;
            println!(
                "deviation trace: at ({}) -> {from}, player 3 switches to {} -> {}",
                s.iter()
                    .enumerate()
                    .map(|(p, &i)| gf.describe_strategy(p, i))
                    .collect::<Vec<_>>()
                    .join(", "),
                gf.describe_strategy(2, alt),
                gf.outcome(&s2)
            );
            println!("implementation identity holds at this profile");
            Ok(0)
        }
        _ => {
            println!(
                "DEMO FAILED: expected outcome set {{4, 5, 6}} and a profitable deviation for player 3"
            );
            Ok(1)
        }
    }
}

/// Two players: a sample matrix with a constant-outcome-1 row. The row
/// player reaches both relevant outcomes regardless of the opponent, and a
/// profile on which the rule demands outcome 2 has no supporting
/// equilibrium.
fn demo_two_player() -> CmdResult {
    println!("demo 6.3: two players, six outcomes");
    let assign = PairAssignment::parse("1,6;2,5", 6).map_err(|e| e.to_string())?;
    println!("assignment: {assign}  (m=6)");
    let matrix = MatrixGameForm::new(vec![vec![1, 1], vec![2, 2]], 6).map_err(|e| e.to_string())?;
    println!("sample mechanism (player 1 picks the row, player 2 the column):");
    print!("{}", matrix.format());
    let constant = matrix.constant_row(o(1));
    if let Some(row) = constant {
        println!("row {} contains only outcome 1", row + 1);
    }
    let attainers = find_universal_attainers(&matrix, &assign.members());
    let rendered: Vec<String> = attainers
        .iter()
        .map(|(outcome, players)| {
            let who: Vec<String> = players.iter().map(|p| (p + 1).to_string()).collect();
            format!("{outcome} -> {{{}}}", who.join(", "))
        })
        .collect();
    println!(
        "universal attainers among pair members: {}",
        rendered.join(", ")
    );
    // Both players prefer the lower-indexed member of their pair; the rule
    // selects {1, 2}, but the row player owns a constant-1 row and strictly
    // prefers 1, so no equilibrium can deliver 2.
    let profile = Profile::new(vec![
        WeakOrder::strict_with_ends(6, &[o(1), o(6)], &[]),
        WeakOrder::strict_with_ends(6, &[o(2), o(5)], &[]),
    ])
    .expect("uniform m");
    println!("refuting profile:");
    print!("{profile}");
    let gf = GameForm::Matrix(matrix.clone());
    let verdict = check_implementation_at(
        &gf,
        |p| liberal_rule(&assign, p).expect("dims"),
        &profile,
        DEFAULT_GUARD_LIMIT,
    )
    .map_err(|e| e.to_string())?;
    println!(
        "rule output {} vs equilibrium outcomes {}",
        verdict.rule_outcomes, verdict.equilibrium_outcomes
    );
    let refuted = refute_two_player(&matrix, &assign, DEFAULT_GUARD_LIMIT)
        .map_err(|e| e.to_string())?
        .is_refuted();
    if constant == Some(0)
        && verdict.rule_outcomes == outcome_set(&[1, 2])
        && verdict.verdict == Verdict::MissingFromEquilibria
        && verdict.missing() == vec![o(2)]
        && refuted
    {
        println!(
            "outcome 2 is socially required but unreachable in equilibrium: the row player \
             deviates to the constant row whenever 2 would win (missing from equilibria)"
        );
        println!("automated probe search confirms: the form is refuted");
        Ok(0)
    } else {
        println!("DEMO FAILED: expected the missing-equilibrium refutation on outcome 2");
        Ok(1)
    }
}
