//! Command implementations. Each returns the process exit code.

use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use perpetual_core::apportionment::{self, ApportionmentInstance, Method};
use perpetual_core::axioms::degree::{estimate_proportionality_degree, DegreeConfig};
use perpetual_core::axioms::dictatorial::detect_dictatorial_rounds;
use perpetual_core::axioms::dry_spell::{self, claimed_bound};
use perpetual_core::axioms::iud::{check_iud, uncontroversial_profiles};
use perpetual_core::axioms::proportionality::{check_quota, QuotaKind};
use perpetual_core::axioms::{Axiom, AxiomVerdict, Budget, Witness};
use perpetual_core::corpus::constructions::dictator_unboundedness;
use perpetual_core::corpus::entries::{entries, one_sided_representatives, CorpusEntry, Expected};
use perpetual_core::corpus::enumerate::EnumerationSpace;
use perpetual_core::corpus::random::DEFAULT_SEED;
use perpetual_core::rational::{self, parse_fraction, to_fraction_string, Rational};
use perpetual_core::rules::{run_rule, Rule, RuleId};
use perpetual_core::tables::{self, CampaignConfig, Evaluation, Evaluations, Evidence, Mark, Table};
use perpetual_core::{party_label, DecisionHistory, DecisionSequence, TieBreaker};

use crate::format::{self, SequenceFile};
use crate::{parallel, ApportionArgs, AxiomArg, CheckArgs, Cli, Command, CorpusAction, InputArgs, MethodArg, RunArgs, TableArgs, Which};

pub const HOLDS: i32 = 0;
pub const REFUTED: i32 = 1;

pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Run(a) => run(a, cli.json, out),
        Command::Check(a) => check(a, cli.json, out),
        Command::Table(a) => table(a, cli.json, out),
        Command::Apportion(a) => apportion(a, cli.json, out),
        Command::Corpus(a) => match &a.action {
            CorpusAction::Verify => corpus_verify(cli.json, out),
            CorpusAction::Export { dir } => corpus_export(dir, out),
        },
    }
}

/// Resolves a rule id or the name of a class representative.
pub fn resolve_rule(name: &str, max_round: u64) -> Result<Rule> {
    if let Ok(id) = RuleId::from_str(name) {
        return Ok(match id {
            RuleId::Exponential => Rule::exponential(max_round),
            other => Rule::from(other),
        });
    }
    one_sided_representatives()
        .into_iter()
        .find(|(key, rule)| *key == name || rule.name() == name)
        .map(|(_, rule)| rule)
        .ok_or_else(|| anyhow!("unknown rule `{name}`"))
}

/// Parses `sizes:k`, e.g. `2,1:3`.
pub fn parse_simple(text: &str) -> Result<(Vec<usize>, usize)> {
    let (sizes, k) = text.split_once(':').context("expected `sizes:k`, e.g. `2,1:3`")?;
    let sizes = parse_list(sizes)?;
    let k = k.trim().parse().context("round count must be a non-negative integer")?;
    Ok((sizes, k))
}

fn parse_list<T: FromStr>(text: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|s| s.trim().parse::<T>().map_err(|_| anyhow!("`{s}` is not a non-negative integer")))
        .collect()
}

fn load_input(input: &InputArgs) -> Result<Option<SequenceFile>> {
    if let Some(path) = &input.input {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return SequenceFile::parse(&text).map(Some).with_context(|| format!("parsing {}", path.display()));
    }
    if let Some(spec) = &input.simple {
        let (sizes, k) = parse_simple(spec)?;
        return Ok(Some(SequenceFile {
            sequence: DecisionSequence::simple(&sizes, k)?,
            tiebreak: TieBreaker::lexicographic(),
        }));
    }
    Ok(None)
}

fn run(a: &RunArgs, json: bool, out: &mut dyn Write) -> Result<i32> {
    let rule = resolve_rule(&a.rule, a.max_round)?;
    let file = load_input(&a.input)?.context("one of --input or --simple is required")?;
    let outcome = run_rule(&rule, &file.sequence, &file.tiebreak)?;
    if json {
        let mut doc = json!({"rule": rule.name(), "choices": outcome.winner_names()});
        if a.trace {
            doc["trace"] = outcome
                .winner_names()
                .iter()
                .enumerate()
                .map(|(i, w)| json!({"round": i + 1, "state": outcome.states[i].render(), "kind": outcome.states[i].kind(), "winner": w}))
                .collect();
        }
        out.write_all(format::canonical(&doc).as_bytes())?;
        return Ok(HOLDS);
    }
    for (i, w) in outcome.winner_names().iter().enumerate() {
        if a.trace {
            let state = &outcome.states[i];
            writeln!(out, "{w}\t{} {}", state.kind(), state.render().join(" "))?;
        } else {
            writeln!(out, "{w}")?;
        }
    }
    Ok(HOLDS)
}

/// Limits parsed from `--budget`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BudgetArgs {
    pub voters: Option<usize>,
    pub rounds: Option<usize>,
    pub instances: Option<usize>,
}

impl FromStr for BudgetArgs {
    type Err = anyhow::Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut b = BudgetArgs::default();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once("<=")
                .or_else(|| part.split_once('='))
                .with_context(|| format!("budget item `{part}` is not `key<=value`"))?;
            let value: usize = value.trim().parse().with_context(|| format!("budget value in `{part}`"))?;
            match key.trim() {
                "n" => b.voters = Some(value),
                "k" => b.rounds = Some(value),
                "instances" => b.instances = Some(value),
                other => bail!("unknown budget key `{other}`"),
            }
        }
        Ok(b)
    }
}

impl BudgetArgs {
    /// The default campaign with these limits applied.
    pub fn config(&self, seed: Option<u64>) -> CampaignConfig {
        let mut cfg = CampaignConfig::default();
        if let Some(n) = self.voters {
            cfg.dry_spell_voters = n;
            cfg.sp_voters = n;
            cfg.quota_voters = n;
            cfg.iud_random.max_voters = n;
            cfg.iud_spaces = (1..=n).map(|v| EnumerationSpace::new(v, 2, 2).canonical()).collect();
        }
        if let Some(k) = self.rounds {
            cfg.quota_rounds = k;
            cfg.iud_random.max_rounds = k;
        }
        if let Some(i) = self.instances {
            cfg.iud_random.instances = i;
        }
        if let Some(s) = seed {
            cfg.iud_random.seed = s;
        }
        cfg
    }
}

fn axiom_of(a: AxiomArg) -> Option<Axiom> {
    match a {
        AxiomArg::Dryspell => Some(Axiom::BoundedDrySpells),
        AxiomArg::Iud => Some(Axiom::Iud),
        AxiomArg::Simpleprop => Some(Axiom::SimpleProportionality),
        AxiomArg::Alq => Some(Axiom::LowerQuota),
        AxiomArg::Auq => Some(Axiom::UpperQuota),
        AxiomArg::Degree | AxiomArg::Dictatorial => None,
    }
}

/// One check result, ready to print.
struct Report {
    rule: String,
    axiom: String,
    refuted: bool,
    evidence: String,
    witness: Option<Witness>,
    budget: Option<Budget>,
    seed: Option<u64>,
    extra: Vec<(String, Value)>,
}

impl Report {
    fn from_verdict(rule: &Rule, axiom: &str, evidence: String, v: AxiomVerdict) -> Self {
        Self {
            rule: rule.name(),
            axiom: axiom.to_string(),
            refuted: v.is_refuted(),
            evidence,
            witness: v.witness,
            budget: Some(v.budget),
            seed: v.seed,
            extra: Vec::new(),
        }
    }

    fn from_evaluation(e: Evaluation, seed: Option<u64>) -> Self {
        let refuted = matches!(e.mark, Mark::No | Mark::Unbounded);
        let evidence = e.evidence.describe();
        let (witness, budget) = match e.evidence {
            Evidence::Corpus { witness, .. } => (witness, None),
            Evidence::Campaign { budget, witness, .. } => (witness, Some(budget)),
        };
        Self {
            rule: e.rule,
            axiom: e.axiom.as_str().to_string(),
            refuted,
            evidence,
            witness,
            budget,
            seed,
            extra: Vec::new(),
        }
    }

    fn emit(&self, json: bool, witness_out: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
        let mut witness_path = None;
        if let (Some(path), Some(w)) = (witness_out, &self.witness) {
            std::fs::write(path, format::canonical(&format::witness(w))).with_context(|| format!("writing {}", path.display()))?;
            witness_path = Some(path.display().to_string());
        }
        let verdict = if self.refuted { "refuted" } else { "holds" };
        if json {
            let mut doc = json!({
                "rule": self.rule,
                "axiom": self.axiom,
                "verdict": verdict,
                "evidence": self.evidence,
                "witness": self.witness.as_ref().map(format::witness),
                "witness_path": witness_path,
                "budget": self.budget.as_ref().map(format::budget),
                "seed": self.seed,
            });
            for (k, v) in &self.extra {
                doc[k] = v.clone();
            }
            out.write_all(format::canonical(&doc).as_bytes())?;
        } else {
            writeln!(out, "rule: {}", self.rule)?;
            writeln!(out, "axiom: {}", self.axiom)?;
            writeln!(out, "verdict: {verdict}")?;
            writeln!(out, "evidence: {}", self.evidence)?;
            if let Some(w) = &self.witness {
                writeln!(out, "witness: {}", w.describe())?;
            }
            if let Some(p) = &witness_path {
                writeln!(out, "witness file: {p}")?;
            }
            if let Some(b) = &self.budget {
                writeln!(out, "budget: {} examined, exhaustive {}, closed {}", b.examined, b.exhaustive, b.closed)?;
            }
            if let Some(s) = self.seed {
                writeln!(out, "seed: {s:#x}")?;
            }
            for (k, v) in &self.extra {
                writeln!(out, "{k}: {}", v.as_str().map(String::from).unwrap_or_else(|| v.to_string()))?;
            }
        }
        Ok(if self.refuted { REFUTED } else { HOLDS })
    }
}

fn check(a: &CheckArgs, json: bool, out: &mut dyn Write) -> Result<i32> {
    let rule = resolve_rule(&a.rule, perpetual_core::rules::exponential::DEFAULT_MAX_ROUND)?;
    let budget: BudgetArgs = a.budget.as_deref().map(str::parse).transpose()?.unwrap_or_default();
    if a.ell.is_some() && a.axiom != AxiomArg::Degree {
        bail!("--ell only applies to --axiom degree");
    }
    let input = load_input(&a.input)?;
    let report = match (a.axiom, input) {
        (AxiomArg::Degree, _) => check_degree(&rule, a, budget)?,
        (AxiomArg::Dictatorial, input) => check_dictatorial(&rule, input)?,
        (axiom, Some(file)) => check_sequence(&rule, axiom, &file, &a.input)?,
        (axiom, None) => {
            let axiom = axiom_of(axiom).expect("sequence axioms");
            let corpus = entries()?;
            let cfg = budget.config(a.seed);
            let e = tables::evaluate(&rule, axiom, &corpus, &cfg)?;
            let campaign = matches!(e.evidence, Evidence::Campaign { .. });
            let seed = (campaign && axiom == Axiom::Iud).then_some(cfg.iud_random.seed);
            Report::from_evaluation(e, seed)
        }
    };
    report.emit(json, a.witness_out.as_deref(), out)
}

fn check_sequence(rule: &Rule, axiom: AxiomArg, file: &SequenceFile, input: &InputArgs) -> Result<Report> {
    let seq = &file.sequence;
    let tb = &file.tiebreak;
    let name = axiom_of(axiom).expect("sequence axioms").as_str();
    let v = match axiom {
        AxiomArg::Dryspell => {
            let id = rule.id().context("this rule has no dry-spell bound")?;
            let bound = claimed_bound(id, seq.voters()).context("this rule has no dry-spell bound")?;
            dry_spell::check_sequence(rule, seq, tb, bound)?
        }
        AxiomArg::Iud => {
            let c = seq.rounds().iter().map(|r| r.candidates().len()).max().unwrap_or(1).max(1);
            check_iud(rule, seq, tb, &uncontroversial_profiles(seq.voters(), c))?
        }
        AxiomArg::Simpleprop | AxiomArg::Alq | AxiomArg::Auq => {
            let spec = input.simple.as_deref().context("this axiom is checked on --simple sequences")?;
            let (sizes, k) = parse_simple(spec)?;
            match axiom {
                AxiomArg::Alq => check_quota(rule, &sizes, k, QuotaKind::Lower)?.1,
                AxiomArg::Auq => check_quota(rule, &sizes, k, QuotaKind::Upper)?.1,
                _ => simple_proportionality(rule, &sizes, k)?,
            }
        }
        AxiomArg::Degree | AxiomArg::Dictatorial => unreachable!("handled by the caller"),
    };
    Ok(Report::from_verdict(rule, name, "single sequence".to_string(), v))
}

fn simple_proportionality(rule: &Rule, sizes: &[usize], k: usize) -> Result<AxiomVerdict> {
    let n: usize = sizes.iter().sum();
    if k != n {
        bail!("simple proportionality needs k = n = {n}");
    }
    let seq = DecisionSequence::simple(sizes, k)?;
    let ch = perpetual_core::rules::choices(rule, &seq, &TieBreaker::lexicographic())?;
    let h = DecisionHistory::new(seq.clone(), ch.clone())?;
    let budget = Budget {
        examined: 1,
        exhaustive: true,
        closed: false,
    };
    for v in 0..n {
        let (satisfaction, party_size) = (h.satisfaction(v)?, seq.party_size(v)?);
        if satisfaction != party_size {
            return Ok(AxiomVerdict::refuted(
                Witness::SimpleProportionality {
                    party_sizes: sizes.to_vec(),
                    choices: ch,
                    voter: v,
                    satisfaction,
                    party_size,
                },
                budget,
            ));
        }
    }
    Ok(AxiomVerdict::holds(budget))
}

/// Default degree campaign: 10⁴ instances, `n, k <= 8`, three candidates.
pub fn degree_config(budget: BudgetArgs, seed: Option<u64>) -> DegreeConfig {
    DegreeConfig {
        instances: budget.instances.unwrap_or(10_000),
        max_voters: budget.voters.unwrap_or(8),
        max_rounds: budget.rounds.unwrap_or(8),
        max_candidates: 3,
        seed: seed.unwrap_or(DEFAULT_SEED),
    }
}

fn check_degree(rule: &Rule, a: &CheckArgs, budget: BudgetArgs) -> Result<Report> {
    let ell_text = a.ell.as_deref().context("--axiom degree needs --ell")?;
    let ell = parse_fraction(ell_text).with_context(|| format!("`{ell_text}` is not a rational"))?;
    let target: Rational = (&ell - rational::one()) / rational::int(2);
    let est = estimate_proportionality_degree(rule, &ell, degree_config(budget, a.seed))?;
    let minimum = est.minimum.as_ref().map(|m| m.average_satisfaction.clone());
    let refuted = minimum.as_ref().is_some_and(|m| *m < target);
    let mut extra = vec![
        ("ell".to_string(), json!(to_fraction_string(&ell))),
        ("target".to_string(), json!(to_fraction_string(&target))),
        ("minimum".to_string(), json!(minimum.as_ref().map(to_fraction_string))),
        ("groups".to_string(), json!(est.groups)),
    ];
    if let Some(m) = &est.minimum {
        extra.push(("minimum_group".to_string(), json!(m.group)));
        extra.push((
            "minimum_sequence".to_string(),
            SequenceFile {
                sequence: m.sequence.clone(),
                tiebreak: TieBreaker::lexicographic(),
            }
            .to_value(),
        ));
    }
    Ok(Report {
        rule: rule.name(),
        axiom: "degree".to_string(),
        refuted,
        evidence: format!("{} random instances, least group average vs (ℓ-1)/2", est.instances),
        witness: None,
        budget: Some(Budget {
            examined: est.instances,
            exhaustive: false,
            closed: false,
        }),
        seed: Some(est.seed),
        extra,
    })
}

fn check_dictatorial(rule: &Rule, input: Option<SequenceFile>) -> Result<Report> {
    let (file, evidence) = match input {
        Some(f) => (f, "single sequence".to_string()),
        None => {
            let (sequence, tiebreak) = dictator_unboundedness(3, 5)?;
            (SequenceFile { sequence, tiebreak }, "dictator construction, n = 3, d = 5".to_string())
        }
    };
    let ch = perpetual_core::rules::choices(rule, &file.sequence, &file.tiebreak)?;
    let h = DecisionHistory::new(file.sequence.clone(), ch.clone())?;
    let r = detect_dictatorial_rounds(&h);
    Ok(Report {
        rule: rule.name(),
        axiom: "dictatorial".to_string(),
        refuted: !r.rounds.is_empty(),
        evidence,
        witness: None,
        budget: None,
        seed: None,
        extra: vec![
            ("choices".to_string(), json!(ch.winners())),
            ("dictatorial_rounds".to_string(), json!(r.rounds.iter().map(|x| x + 1).collect::<Vec<_>>())),
            ("longest_run".to_string(), json!(r.longest_run)),
        ],
    })
}

/// Replays every corpus entry, failing on the first broken one.
pub fn verified_corpus() -> Result<Vec<CorpusEntry>> {
    let corpus = entries()?;
    for e in &corpus {
        let r = e.verify()?;
        if !r.ok {
            bail!("corpus entry {} failed: {}", r.id, r.detail);
        }
    }
    Ok(corpus)
}

/// Evaluates the jobs of one table on the worker pool.
pub fn compute_table(which: Which, cfg: &CampaignConfig) -> Result<(Table, Evaluations)> {
    let corpus = verified_corpus()?;
    let jobs = match which {
        Which::Rules => tables::rules_table_jobs(),
        Which::Classes => tables::classes_table_jobs(),
    };
    let mut evals = Evaluations::default();
    for e in parallel::map(&jobs, |(rule, axiom)| tables::evaluate(rule, *axiom, &corpus, cfg)) {
        evals.insert(e?);
    }
    let table = match which {
        Which::Rules => tables::rules_table(&evals)?,
        Which::Classes => tables::classes_table(&evals)?,
    };
    Ok((table, evals))
}

fn table(a: &TableArgs, json: bool, out: &mut dyn Write) -> Result<i32> {
    let cfg = if a.quick { CampaignConfig::quick() } else { CampaignConfig::default() };
    let (table, evals) = compute_table(a.which, &cfg)?;
    let disagreements = table.disagreements();
    if json {
        let rows: Vec<Value> = table
            .rows
            .iter()
            .zip(&table.cells)
            .map(|(name, cells)| {
                let cells: Vec<Value> = table
                    .columns
                    .iter()
                    .zip(cells)
                    .map(|(col, c)| {
                        json!({
                            "column": col,
                            "computed": c.computed.symbol(),
                            "reference": c.reference.symbol(),
                            "agrees": c.agrees(),
                            "note": c.note,
                        })
                    })
                    .collect();
                json!({"row": name, "cells": cells})
            })
            .collect();
        let evidence: Vec<Value> = evals
            .0
            .values()
            .map(|e| {
                json!({
                    "rule": e.rule,
                    "axiom": e.axiom.as_str(),
                    "mark": e.mark.symbol(),
                    "evidence": e.evidence.describe(),
                    "witness": e.evidence.witness().map(format::witness),
                })
            })
            .collect();
        let doc = json!({"title": table.title, "rows": rows, "evidence": evidence, "disagreements": disagreements.len()});
        out.write_all(format::canonical(&doc).as_bytes())?;
    } else {
        out.write_all(table.render().as_bytes())?;
        if a.evidence {
            writeln!(out)?;
            for e in evals.0.values() {
                writeln!(out, "{} / {}: {} ({})", e.rule, e.axiom, e.mark.symbol(), e.evidence.describe())?;
            }
        }
        if !disagreements.is_empty() {
            writeln!(out, "\n{} cell(s) differ from the reference table", disagreements.len())?;
        }
    }
    Ok(if disagreements.is_empty() { HOLDS } else { REFUTED })
}

fn apportion(a: &ApportionArgs, json: bool, out: &mut dyn Write) -> Result<i32> {
    let method = match a.method {
        MethodArg::Dhondt => Method::Dhondt,
        MethodArg::Frege => Method::Frege,
    };
    let votes: Vec<u64> = parse_list(&a.votes)?;
    let inst = ApportionmentInstance::from_votes(&votes, a.seats)?;
    let seats = apportionment::apportion(method, &inst)?;
    let totals = apportionment::totals(&seats, inst.parties());
    let audit = apportionment::quota_audit(&seats, &inst);
    let lower = audit.first_violation(QuotaKind::Lower);
    let upper = audit.first_violation(QuotaKind::Upper);
    let equivalence = match &a.verify_equivalence {
        None => None,
        Some(r) => {
            let id = RuleId::from_str(r).map_err(|e| anyhow!(e))?;
            let voters = a.voters.unwrap_or_else(|| votes.iter().sum::<u64>() as usize);
            let v = match id {
                RuleId::Consensus => apportionment::verify_consensus_frege_identity(&inst, voters)?,
                RuleId::Pav | RuleId::Phragmen => apportionment::verify_dhondt_equivalence(id, &inst, voters)?,
                _ => bail!("no apportionment equivalence for `{r}`; use consensus, pav or phragmen"),
            };
            Some((id, v))
        }
    };
    let labels: Vec<String> = seats.iter().map(|&p| party_label(p)).collect();
    let violation = |v: Option<(usize, usize)>| v.map(|(prefix, party)| json!({"prefix": prefix, "party": party_label(party)}));
    if json {
        let mut doc = json!({
            "method": method.as_str(),
            "votes": votes,
            "seats": labels,
            "totals": totals,
            "lower_quota_violation": violation(lower),
            "upper_quota_violation": violation(upper),
        });
        if let Some((id, v)) = &equivalence {
            doc["equivalence"] = format::verdict(id.as_str(), "equivalence", v, None);
        }
        out.write_all(format::canonical(&doc).as_bytes())?;
    } else {
        writeln!(out, "seats: {}", labels.join(" "))?;
        writeln!(out, "totals: {}", totals.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))?;
        for (name, v) in [("lower quota", lower), ("upper quota", upper)] {
            match v {
                None => writeln!(out, "{name}: holds at every prefix")?,
                Some((prefix, party)) => writeln!(
                    out,
                    "{name}: violated by party {} after {prefix} seats ({} seats, bounds {}..{})",
                    party_label(party),
                    audit.satisfaction(prefix, party),
                    audit.lower(prefix, party),
                    audit.upper(prefix, party)
                )?,
            }
        }
        if let Some((id, v)) = &equivalence {
            match &v.witness {
                None => writeln!(out, "equivalence with {id}: holds")?,
                Some(w) => writeln!(out, "equivalence with {id}: fails, {}", w.describe())?,
            }
        }
    }
    Ok(match equivalence {
        Some((_, v)) if v.is_refuted() => REFUTED,
        _ => HOLDS,
    })
}

fn corpus_verify(json: bool, out: &mut dyn Write) -> Result<i32> {
    let mut failed = 0;
    let mut rows = Vec::new();
    for e in entries()? {
        let r = e.verify()?;
        failed += usize::from(!r.ok);
        if json {
            rows.push(json!({"id": r.id, "ok": r.ok, "detail": r.detail}));
        } else {
            writeln!(out, "{} {}: {}", if r.ok { "ok  " } else { "FAIL" }, r.id, r.detail)?;
        }
    }
    if json {
        out.write_all(format::canonical(&json!({"entries": rows, "failed": failed})).as_bytes())?;
    }
    Ok(if failed == 0 { HOLDS } else { REFUTED })
}

fn expected(e: &Expected) -> Value {
    match e {
        Expected::Choices(c) => json!({"choices": c.winners()}),
        Expected::DrySpell { voter, length } => json!({"dry_spell": {"voter": voter, "length": length}}),
        Expected::DrySpellAtLeast(l) => json!({"dry_spell_at_least": l}),
        Expected::Violation(w) => json!({"violation": format::witness(w)}),
        Expected::DictatorialRun(d) => json!({"dictatorial_run": d}),
    }
}

fn corpus_export(dir: &Path, out: &mut dyn Write) -> Result<i32> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let corpus = entries()?;
    for e in &corpus {
        let file = SequenceFile {
            sequence: e.sequence.clone(),
            tiebreak: e.tiebreak.clone(),
        };
        let safe = e.id.replace('/', "_");
        std::fs::write(dir.join(format!("{safe}.json")), file.write())?;
        let sidecar = json!({
            "id": e.id,
            "claim": e.claim,
            "rule": e.rule.name(),
            "unbounded": e.unbounded,
            "expected": expected(&e.expected),
        });
        std::fs::write(dir.join(format!("{safe}.expected.json")), format::canonical(&sidecar))?;
    }
    writeln!(out, "wrote {} entries to {}", corpus.len(), dir.display())?;
    Ok(HOLDS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple_and_budget() {
        assert_eq!(parse_simple("2,1:3").unwrap(), (vec![2, 1], 3));
        assert!(parse_simple("2,1").is_err());
        let b: BudgetArgs = "n<=7, k<=30,instances=10".parse().unwrap();
        assert_eq!((b.voters, b.rounds, b.instances), (Some(7), Some(30), Some(10)));
        assert!("m<=3".parse::<BudgetArgs>().is_err());
    }

    #[test]
    fn resolves_representatives() {
        assert_eq!(resolve_rule("pav", 10).unwrap().id(), Some(RuleId::Pav));
        assert!(resolve_rule("harmonic-3/4", 10).unwrap().id().is_none());
        assert!(resolve_rule("nope", 10).is_err());
    }
}
