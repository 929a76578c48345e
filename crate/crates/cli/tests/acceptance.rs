//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::Rng;

use perpetual_core::apportionment::{
    self, search_quota_violation, verify_consensus_frege_identity, verify_dhondt_equivalence, ApportionmentInstance,
    Method, SearchConfig,
};
use perpetual_core::axioms::condition::{check_winbased_sp_condition, WinWeightSequence};
use perpetual_core::axioms::degree::estimate_proportionality_degree;
use perpetual_core::axioms::dry_spell::{self, claimed_bound, exponential_h};
use perpetual_core::axioms::{QuotaKind, Witness};
use perpetual_core::corpus::constructions::{phragmen_dryspell, reset_dryspell, DrySpellConstruction};
use perpetual_core::corpus::entries::entry;
use perpetual_core::corpus::random::{random_party_sizes, random_sequence, seeded, DEFAULT_SEED};
use perpetual_core::corpus::reference::naive_choices;
use perpetual_core::rational::{self, ratio, Rational};
use perpetual_core::rules::{choices, consensus, exponential, phragmen, run_rule, BasicWamSpec, Rule, RuleId, RuleState};
use perpetual_core::tables::{self, CampaignConfig, Evaluations, Evidence, Mark};
use perpetual_core::{ChoiceSequence, DecisionHistory, TieBreaker};

use perpetual_cli::commands::{degree_config, verified_corpus, BudgetArgs};
use perpetual_cli::parallel;

/// Criterion 1 time limit.
const GOLDEN_LIMIT: Duration = Duration::from_secs(1);
/// Criterion 2 time limit per table.
const TABLE_LIMIT: Duration = Duration::from_secs(600);
/// Criterion 3 random campaign size.
const DRY_SPELL_INSTANCES: usize = 10_000;
/// Criteria 4 to 6 instance counts.
const EQUIVALENCE_INSTANCES: usize = 1_000;
const ORACLE_INSTANCES: usize = 1_000;
/// Criterion 7: prefix bound and the latest acceptable refutation.
const CONDITION_BOUND: usize = 100;
const GEOMETRIC_LIMIT: usize = 10_000;
/// Criterion 8 campaign size.
const DEGREE_INSTANCES: usize = 10_000;

type Outcome = Result<String, String>;

fn ch(names: &[&str]) -> ChoiceSequence {
    ChoiceSequence::from_names(names)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let lex = TieBreaker::lexicographic();
    let mut checked = 0;
    for (id, expected) in [
        ("av-golden", &["a", "a", "a"][..]),
        ("reset-golden", &["a", "a", "a", "b", "a", "c"]),
        ("exponential-golden", &["a", "a", "b", "a", "b"]),
        ("pav-golden", &["a", "a", "a", "b"]),
    ] {
        let e = entry(id).map_err(|e| e.to_string())?.ok_or(format!("missing {id}"))?;
        let got = choices(&e.rule, &e.sequence, &lex).map_err(|e| e.to_string())?;
        if got != ch(expected) {
            return Err(format!("{id}: got {got}"));
        }
        checked += 1;
    }
    for (id, rule, expected) in [("pav-iud", RuleId::Pav, &["c", "a", "a", "a", "a"][..]), ("reset-iud", RuleId::Reset, &["a", "a", "c", "a"])] {
        let e = entry(id).map_err(|e| e.to_string())?.ok_or(format!("missing {id}"))?;
        let Some(Witness::Iud { sequence, position, inserted, .. }) = e.witness() else {
            return Err(format!("{id} has no IUD witness"));
        };
        let spliced = sequence.insert_round(*position, inserted.clone()).map_err(|e| e.to_string())?;
        let got = choices(&Rule::from(rule), &spliced, &lex).map_err(|e| e.to_string())?;
        if got != ch(expected) {
            return Err(format!("{id}: perturbed run gives {got}"));
        }
        checked += 1;
    }
    let elapsed = start.elapsed();
    if elapsed >= GOLDEN_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{checked} traces exact in {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let cfg = CampaignConfig::default();
    let corpus = verified_corpus().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let mut jobs = tables::rules_table_jobs();
    let mut seen: BTreeSet<(String, String)> = jobs.iter().map(|(r, a)| (r.name(), a.to_string())).collect();
    for (r, a) in tables::classes_table_jobs() {
        if seen.insert((r.name(), a.to_string())) {
            jobs.push((r, a));
        }
    }
    let results = parallel::map(&jobs, |(rule, axiom)| tables::evaluate(rule, *axiom, &corpus, &cfg));
    let mut evals = Evaluations::default();
    let mut problems = Vec::new();
    for ((rule, _), e) in jobs.iter().zip(results) {
        let e = e.map_err(|e| e.to_string())?;
        match (&e.mark, &e.evidence) {
            (Mark::No, ev) => match ev.witness() {
                Some(w) if w.replay(rule).unwrap_or(false) => {}
                _ => problems.push(format!("{} {}: ✗ without a replayable witness", e.rule, e.axiom)),
            },
            (Mark::Unbounded, Evidence::Corpus { .. }) => {}
            (Mark::Yes, Evidence::Campaign { budget, summary, .. }) => {
                if !budget.exhaustive {
                    problems.push(format!("{} {}: ✓ from a non-exhaustive campaign ({summary})", e.rule, e.axiom));
                }
            }
            (m, ev) => problems.push(format!("{} {}: {} backed by {}", e.rule, e.axiom, m.symbol(), ev.describe())),
        }
        evals.insert(e);
    }
    let elapsed = start.elapsed();
    if elapsed >= 2 * TABLE_LIMIT {
        problems.push(format!("both tables took {elapsed:?}"));
    }
    for table in [tables::rules_table(&evals), tables::classes_table(&evals)] {
        let table = table.map_err(|e| e.to_string())?;
        for (r, c) in table.disagreements() {
            let cell = &table.cells[r][c];
            problems.push(format!(
                "{} / {}: computed {} but reference {}",
                table.rows[r],
                table.columns[c],
                cell.computed.symbol(),
                cell.reference.symbol()
            ));
        }
    }
    if problems.is_empty() {
        Ok(format!("both tables match, {} evaluations in {elapsed:?}", jobs.len()))
    } else {
        Err(problems.join("; "))
    }
}

fn exact_dry_spell(rule: RuleId, c: &DrySpellConstruction, expected: usize) -> Result<(), String> {
    let got = choices(&Rule::from(rule), &c.sequence, &c.tiebreak).map_err(|e| e.to_string())?;
    let h = DecisionHistory::new(c.sequence.clone(), got).map_err(|e| e.to_string())?;
    let (_, longest, _) = h.longest_dry_spell();
    let voter = h.max_dry_spell(c.voter).map_err(|e| e.to_string())?;
    if longest != expected || voter != expected {
        return Err(format!("{rule} n = {}: dry spell {voter} (longest {longest}), expected {expected}", c.sequence.voters()));
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    for n in 3..=8 {
        exact_dry_spell(RuleId::Reset, &reset_dryspell(n).map_err(|e| e.to_string())?, 2 * n - 3)?;
    }
    for n in 2..=6 {
        exact_dry_spell(RuleId::Phragmen, &phragmen_dryspell(n).map_err(|e| e.to_string())?, 2 * n - 2)?;
    }
    let reset = Rule::from(RuleId::Reset);
    for n in 2..=4 {
        let v = dry_spell::exhaustive(&reset, n, 2 * n - 2, 10).map_err(|e| e.to_string())?;
        if v.is_refuted() || !v.budget.exhaustive {
            return Err(format!("Reset n = {n}: {:?}", v.witness.map(|w| w.describe())));
        }
    }
    for (id, limit) in [
        (RuleId::Consensus, (|n: usize| (n * n + 3 * n) / 4) as fn(usize) -> usize),
        (RuleId::Exponential, |n| n + exponential_h(n)),
    ] {
        let config = dry_spell::RandomConfig {
            instances: DRY_SPELL_INSTANCES,
            min_voters: 1,
            max_voters: 4,
            min_rounds: 1,
            max_rounds: 9,
            max_candidates: 3,
            seed: DEFAULT_SEED,
        };
        for n in 1..=4 {
            assert_eq!(claimed_bound(id, n), Some(limit(n) + 1));
        }
        let v = dry_spell::random(&Rule::from(id), |n| limit(n) + 1, config).map_err(|e| e.to_string())?;
        if let Some(w) = v.witness {
            return Err(format!("{id}: {}", w.describe()));
        }
    }
    Ok(format!(
        "constructions exact; Reset exhaustive n <= 4, k <= 10; {DRY_SPELL_INSTANCES} random each for Consensus and Exponential"
    ))
}

/// Random votes with `m <= 5` parties and `n <= max_voters` voters in total.
fn random_apportionment<R: Rng>(rng: &mut R, max_voters: usize, max_seats: usize) -> (Vec<u64>, usize, usize) {
    let n = rng.gen_range(1..=max_voters);
    let sizes = random_party_sizes(rng, n, 5);
    let k = rng.gen_range(1..=max_seats);
    (sizes.iter().map(|&s| s as u64).collect(), n, k)
}

fn criterion_4() -> Outcome {
    let mut rng = seeded(DEFAULT_SEED);
    for _ in 0..EQUIVALENCE_INSTANCES {
        let (votes, n, k) = random_apportionment(&mut rng, 12, 30);
        let inst = ApportionmentInstance::from_votes(&votes, k).map_err(|e| e.to_string())?;
        let v = verify_consensus_frege_identity(&inst, n).map_err(|e| e.to_string())?;
        if let Some(w) = v.witness {
            return Err(w.describe());
        }
    }
    Ok(format!("{EQUIVALENCE_INSTANCES} instances, identity exact at every round"))
}

fn criterion_5() -> Outcome {
    let mut rng = seeded(DEFAULT_SEED ^ 5);
    for _ in 0..EQUIVALENCE_INSTANCES {
        let (votes, n, k) = random_apportionment(&mut rng, 12, 20);
        let inst = ApportionmentInstance::from_votes(&votes, k).map_err(|e| e.to_string())?;
        for id in [RuleId::Pav, RuleId::Phragmen] {
            if let Some(w) = verify_dhondt_equivalence(id, &inst, n).map_err(|e| e.to_string())?.witness {
                return Err(w.describe());
            }
        }
        let audit = apportionment::quota_audit(&apportionment::dhondt(&inst), &inst);
        if let Some((prefix, party)) = audit.first_violation(QuotaKind::Lower) {
            return Err(format!("D'Hondt below lower quota: votes {votes:?}, prefix {prefix}, party {party}"));
        }
    }
    let search = SearchConfig {
        instances: 20_000,
        max_parties: 5,
        max_votes: 20,
        max_seats: 30,
        seed: DEFAULT_SEED,
    };
    let pinned = [
        (Method::Dhondt, QuotaKind::Upper, vec![2, 1, 1], 2, 0),
        (Method::Frege, QuotaKind::Lower, vec![14, 1, 14, 18, 1], 24, 3),
    ];
    for (method, kind, votes, prefix, party) in pinned {
        let found = search_quota_violation(method, kind, search).map_err(|e| e.to_string())?;
        let Some(v) = found else {
            return Err(format!("{} {kind:?}: search found nothing", method.as_str()));
        };
        if (v.votes.clone(), v.prefix, v.party) != (votes.clone(), prefix, party) || !v.replay().map_err(|e| e.to_string())? {
            return Err(format!("{} {kind:?}: found {:?}, pinned {votes:?}", method.as_str(), v));
        }
    }
    Ok(format!(
        "{EQUIVALENCE_INSTANCES} instances agree, lower quota holds; fixtures D'Hondt upper (2,1,1) k=2, Frege lower (14,1,14,18,1) k=24"
    ))
}

fn criterion_6() -> Outcome {
    let tb = TieBreaker::lexicographic();
    let mut mismatches = 0;
    for id in RuleId::ALL {
        let rule = Rule::from(id);
        let mut rng = seeded(DEFAULT_SEED ^ id as u64);
        for _ in 0..ORACLE_INSTANCES {
            let seq = random_sequence(&mut rng, 6, 8, 4);
            let fast = choices(&rule, &seq, &tb).map_err(|e| e.to_string())?;
            let slow = naive_choices(id, &seq, &tb).map_err(|e| e.to_string())?;
            mismatches += usize::from(fast != slow);
        }
    }
    if mismatches > 0 {
        return Err(format!("{mismatches} mismatches"));
    }
    Ok(format!("{} rules x {ORACLE_INSTANCES} sequences, zero mismatches", RuleId::ALL.len()))
}

fn criterion_7() -> Outcome {
    let mut problems = Vec::new();
    let mut notes = Vec::new();
    for (name, spec) in [
        ("pav", BasicWamSpec::pav()),
        ("harmonic(3/4)", BasicWamSpec::harmonic(ratio(3, 4))),
        ("harmonic(1)", BasicWamSpec::harmonic(rational::one())),
    ] {
        let v = check_winbased_sp_condition(&mut WinWeightSequence::from_spec(&spec), CONDITION_BOUND).map_err(|e| e.to_string())?;
        match v.witness {
            Some(w) => problems.push(format!("{name} refuted: {}", w.describe())),
            None => notes.push(format!("{name} holds")),
        }
    }
    for c in [ratio(99, 100), ratio(9, 10), ratio(1, 2)] {
        let spec = BasicWamSpec::geometric(c.clone());
        let v = check_winbased_sp_condition(&mut WinWeightSequence::from_spec(&spec), GEOMETRIC_LIMIT).map_err(|e| e.to_string())?;
        let c = rational::to_fraction_string(&c);
        match v.witness {
            Some(Witness::WinCondition { x, y, .. }) if x.max(y) <= GEOMETRIC_LIMIT => {
                notes.push(format!("geometric {c} refuted at x = {x}, y = {y}"))
            }
            _ => problems.push(format!("geometric {c} not refuted")),
        }
    }
    let summary = format!("B = {CONDITION_BOUND}: {}", notes.join(", "));
    if problems.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{}; {summary}", problems.join("; ")))
    }
}

fn criterion_8() -> Outcome {
    let rule = Rule::from(RuleId::Phragmen);
    let budget = BudgetArgs {
        instances: Some(DEGREE_INSTANCES),
        ..BudgetArgs::default()
    };
    let mut seen = Vec::new();
    for ell in [2, 3] {
        let ell = rational::int(ell);
        let target: Rational = (&ell - rational::one()) / rational::int(2);
        let est = estimate_proportionality_degree(&rule, &ell, degree_config(budget, None)).map_err(|e| e.to_string())?;
        let min = est.minimum.ok_or("no large cohesive group sampled")?.average_satisfaction;
        if min < target {
            return Err(format!("ℓ = {ell}: minimum {min} < {target}"));
        }
        seen.push(format!("ℓ = {ell}: min {min} >= {target}"));
    }
    Ok(format!("{DEGREE_INSTANCES} instances each; {}", seen.join(", ")))
}

fn criterion_9() -> Outcome {
    let tb = TieBreaker::lexicographic();
    let mut rng = seeded(DEFAULT_SEED ^ 9);
    let mut steps = 0;
    for _ in 0..ORACLE_INSTANCES {
        let seq = random_sequence(&mut rng, 6, 9, 4);
        for id in [RuleId::Consensus, RuleId::Phragmen, RuleId::Exponential] {
            let run = run_rule(&Rule::from(id), &seq, &tb).map_err(|e| e.to_string())?;
            for (t, state) in run.states.iter().enumerate() {
                let (RuleState::Weights(w) | RuleState::Loads(w)) = state else {
                    return Err(format!("{id}: unexpected state"));
                };
                let ok = match id {
                    RuleId::Consensus => consensus::check_conservation(w).is_ok(),
                    RuleId::Phragmen => phragmen::check_invariants(w, t).is_ok(),
                    _ => exponential::check_round_encoding(w, t as u64 + 1).is_ok(),
                };
                if !ok {
                    return Err(format!("{id}: invariant broken before round {}", t + 1));
                }
                steps += 1;
            }
        }
    }
    let mut frege_steps = 0;
    for _ in 0..ORACLE_INSTANCES {
        let (votes, _, k) = random_apportionment(&mut rng, 12, 30);
        let inst = ApportionmentInstance::from_votes(&votes, k).map_err(|e| e.to_string())?;
        let (_, trace) = apportionment::frege_trace(&inst).map_err(|e| e.to_string())?;
        for row in &trace {
            apportionment::check_frege_mass(row).map_err(|e| e.to_string())?;
            frege_steps += 1;
        }
    }
    Ok(format!("{steps} rule states and {frege_steps} Frege states checked"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("golden traces", criterion_1),
        ("table regeneration", criterion_2),
        ("dry-spell tightness", criterion_3),
        ("Consensus = Frege", criterion_4),
        ("PAV/Phragmén = D'Hondt", criterion_5),
        ("oracle equivalence", criterion_6),
        ("characterization condition", criterion_7),
        ("proportionality degree", criterion_8),
        ("conservation invariants", criterion_9),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let label = format!("criterion {}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.ends_with(f.as_str()) || name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("{label} PASS ({name}, {secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{label} FAIL ({name}, {secs:.1}s): {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
