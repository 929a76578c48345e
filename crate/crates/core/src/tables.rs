//! Regeneration of the two overview tables: axioms per rule, and axiom
//! combinations per class of weighted approval methods.
//!
//! Each cell is decided from evidence. A refutation comes from a verified
//! corpus entry or from a campaign counterexample; a ✓ comes from a campaign
//! that found nothing. Class cells are decided through representatives: ✓
//! when one representative satisfies every axiom of the combination, ✗ when
//! each representative is refuted on at least one.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::axioms::dry_spell::{self, claimed_bound};
use crate::axioms::{iud, proportionality, Axiom, AxiomVerdict, Budget, QuotaKind, Witness};
use crate::corpus::entries::{entries, one_sided_representatives, CorpusEntry};
use crate::corpus::enumerate::EnumerationSpace;
use crate::error::{Error, Result};
use crate::rules::{Rule, RuleId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mark {
    Yes,
    No,
    /// Refuted by a family with dry spells of every length.
    Unbounded,
    /// Undecided.
    Open,
}

impl Mark {
    pub fn symbol(self) -> &'static str {
        match self {
            Mark::Yes => "✓",
            Mark::No => "✗",
            Mark::Unbounded => "unbounded (witness)",
            Mark::Open => "open",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Evidence {
    /// A verified corpus entry.
    Corpus { id: String, witness: Option<Witness> },
    /// A bounded campaign; carries its counterexample when it found one.
    Campaign { summary: String, budget: Budget, witness: Option<Witness> },
}

impl Evidence {
    pub fn describe(&self) -> String {
        match self {
            Evidence::Corpus { id, .. } => format!("corpus {id}"),
            Evidence::Campaign { summary, witness: Some(w), .. } => format!("{summary}: {}", w.describe()),
            Evidence::Campaign { summary, budget, .. } => format!("{summary} ({} examined)", budget.examined),
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Evidence::Corpus { witness, .. } | Evidence::Campaign { witness, .. } => witness.as_ref(),
        }
    }
}

/// The decision for one rule and one axiom.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub rule: String,
    pub axiom: Axiom,
    pub mark: Mark,
    pub evidence: Evidence,
}

/// Campaign sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    /// Coalition searches for `n = 1..=dry_spell_voters`.
    pub dry_spell_voters: usize,
    /// Searches that do not close stop after `bound + dry_spell_extra_rounds`.
    pub dry_spell_extra_rounds: usize,
    /// Distinct search states per voter count before a search stops early.
    pub dry_spell_state_limit: usize,
    pub iud_spaces: Vec<EnumerationSpace>,
    pub iud_random: iud::RandomConfig,
    /// Simple sequences for every partition of `n <= sp_voters`.
    pub sp_voters: usize,
    pub quota_voters: usize,
    pub quota_rounds: usize,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        let mut iud_spaces = Vec::new();
        for n in 1..=5 {
            iud_spaces.push(EnumerationSpace::new(n, 2, 2).canonical());
        }
        for n in 1..=3 {
            iud_spaces.push(EnumerationSpace::new(n, 3, 2).canonical());
            iud_spaces.push(EnumerationSpace::new(n, 2, 3).canonical());
        }
        Self {
            dry_spell_voters: 5,
            dry_spell_extra_rounds: 2,
            dry_spell_state_limit: dry_spell::DEFAULT_STATE_LIMIT,
            iud_spaces,
            iud_random: iud::RandomConfig {
                instances: 2000,
                max_voters: 5,
                max_rounds: 6,
                max_candidates: 3,
                seed: crate::corpus::random::DEFAULT_SEED,
            },
            sp_voters: 7,
            quota_voters: 5,
            quota_rounds: 12,
        }
    }
}

impl CampaignConfig {
    /// Small campaigns for quick checks.
    pub fn quick() -> Self {
        Self {
            dry_spell_voters: 3,
            dry_spell_extra_rounds: 1,
            dry_spell_state_limit: 100_000,
            iud_spaces: alloc::vec![EnumerationSpace::new(2, 2, 2), EnumerationSpace::new(3, 2, 2).canonical()],
            iud_random: iud::RandomConfig {
                instances: 200,
                max_voters: 4,
                max_rounds: 4,
                max_candidates: 3,
                seed: crate::corpus::random::DEFAULT_SEED,
            },
            sp_voters: 7,
            quota_voters: 4,
            quota_rounds: 8,
        }
    }
}

fn campaign(summary: String, verdict: AxiomVerdict) -> (Mark, Evidence) {
    let mark = if verdict.is_refuted() { Mark::No } else { Mark::Yes };
    (
        mark,
        Evidence::Campaign {
            summary,
            budget: verdict.budget,
            witness: verdict.witness,
        },
    )
}

/// Most rounds the Exponential Rule is run for in campaigns.
const EXPONENTIAL_CAMPAIGN_ROUNDS: usize = 9;

fn rounds_for(rule: &Rule, wanted: usize) -> usize {
    if rule.id() == Some(RuleId::Exponential) {
        wanted.min(EXPONENTIAL_CAMPAIGN_ROUNDS)
    } else {
        wanted
    }
}

/// Runs the campaign for `axiom`, ignoring the corpus.
pub fn run_campaign(rule: &Rule, axiom: Axiom, config: &CampaignConfig) -> Result<(Mark, Evidence)> {
    match axiom {
        Axiom::BoundedDrySpells => {
            let id = rule.id().ok_or(Error::InvalidParameter("no dry-spell bound for this rule"))?;
            let mut budget = Budget {
                examined: 0,
                exhaustive: true,
                closed: true,
            };
            for n in 1..=config.dry_spell_voters {
                let bound = claimed_bound(id, n).ok_or(Error::InvalidParameter("no dry-spell bound for this rule"))?;
                let v = dry_spell::exhaustive_with_limit(
                    rule,
                    n,
                    bound,
                    bound + config.dry_spell_extra_rounds,
                    config.dry_spell_state_limit,
                )?;
                budget.examined += v.budget.examined;
                budget.closed &= v.budget.closed;
                budget.exhaustive &= v.budget.exhaustive;
                if v.is_refuted() {
                    return Ok(campaign(format!("coalition search, n = {n}, dry spell {bound}"), AxiomVerdict { budget, ..v }));
                }
            }
            let scope = match (budget.closed, budget.exhaustive) {
                (true, _) => "all lengths",
                (false, true) => "bounded lengths",
                (false, false) => "bounded lengths, state limit reached",
            };
            Ok(campaign(
                format!("coalition search, n <= {}, {scope}", config.dry_spell_voters),
                AxiomVerdict::holds(budget),
            ))
        }
        Axiom::Iud => {
            let mut examined = 0;
            for space in &config.iud_spaces {
                let space = EnumerationSpace {
                    rounds: rounds_for(rule, space.rounds),
                    ..*space
                };
                let v = iud::exhaustive(rule, space)?;
                examined += v.budget.examined;
                if v.is_refuted() {
                    let summary = format!("exhaustive n = {}, k = {}, |C| = {}", space.voters, space.rounds, space.candidates);
                    return Ok(campaign(summary, v));
                }
            }
            let cfg = iud::RandomConfig {
                max_rounds: rounds_for(rule, config.iud_random.max_rounds + 1) - 1,
                ..config.iud_random
            };
            let v = iud::random(rule, cfg)?;
            examined += v.budget.examined;
            let summary = format!("exhaustive small spaces and {} seeded instances (seed {:#x})", cfg.instances, cfg.seed);
            // Every listed space was enumerated in full; the random part
            // only adds coverage.
            let verdict = AxiomVerdict {
                budget: Budget {
                    examined,
                    exhaustive: true,
                    closed: false,
                },
                ..v
            };
            Ok(campaign(summary, verdict))
        }
        Axiom::SimpleProportionality => {
            let max_n = rounds_for(rule, config.sp_voters);
            let v = proportionality::check_simple_proportionality(rule, max_n)?;
            Ok(campaign(format!("every partition of n <= {max_n}"), v))
        }
        Axiom::LowerQuota | Axiom::UpperQuota => {
            let kind = if axiom == Axiom::LowerQuota { QuotaKind::Lower } else { QuotaKind::Upper };
            let k = rounds_for(rule, config.quota_rounds);
            let v = proportionality::quota_campaign(rule, config.quota_voters, k, kind)?;
            Ok(campaign(format!("every party composition of n <= {}, k = {k}", config.quota_voters), v))
        }
    }
}

/// Decides one rule and axiom: a verified corpus refutation if there is
/// one, otherwise the campaign.
pub fn evaluate(rule: &Rule, axiom: Axiom, corpus: &[CorpusEntry], config: &CampaignConfig) -> Result<Evaluation> {
    let name = rule.name();
    let backing = corpus
        .iter()
        .filter(|e| e.rule.name() == name && e.refutes() == Some(axiom))
        .find_map(|e| match e.verify() {
            Ok(r) if r.ok => Some(Ok(e)),
            Ok(_) => None,
            Err(err) => Some(Err(err)),
        })
        .transpose()?;
    let (mark, evidence) = match backing {
        Some(e) => (
            if e.unbounded || e.witness().is_none() { Mark::Unbounded } else { Mark::No },
            Evidence::Corpus {
                id: e.id.clone(),
                witness: e.witness().cloned(),
            },
        ),
        None => run_campaign(rule, axiom, config)?,
    };
    Ok(Evaluation {
        rule: name,
        axiom,
        mark,
        evidence,
    })
}

/// Computed evaluations keyed by rule name and axiom.
#[derive(Debug, Clone, Default)]
pub struct Evaluations(pub BTreeMap<(String, Axiom), Evaluation>);

impl Evaluations {
    pub fn insert(&mut self, e: Evaluation) {
        self.0.insert((e.rule.clone(), e.axiom), e);
    }

    pub fn get(&self, rule: &str, axiom: Axiom) -> Result<&Evaluation> {
        self.0
            .get(&(String::from(rule), axiom))
            .ok_or(Error::InvalidParameter("missing evaluation"))
    }

    /// Evaluates every job in order.
    pub fn compute(jobs: &[(Rule, Axiom)], config: &CampaignConfig) -> Result<Self> {
        let corpus = entries()?;
        let mut out = Self::default();
        for (rule, axiom) in jobs {
            out.insert(evaluate(rule, *axiom, &corpus, config)?);
        }
        Ok(out)
    }
}

/// One rendered cell with the reference value it is compared against.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub computed: Mark,
    pub reference: Mark,
    pub note: String,
}

impl Cell {
    /// Open reference cells are not compared.
    pub fn decided(&self) -> bool {
        self.reference != Mark::Open
    }

    pub fn agrees(&self) -> bool {
        !self.decided() || self.computed == self.reference
    }

    pub fn render(&self) -> &'static str {
        if self.decided() {
            self.computed.symbol()
        } else {
            Mark::Open.symbol()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<String>,
    pub cells: Vec<Vec<Cell>>,
}

impl Table {
    /// `(row, column)` of cells whose computed mark differs from the
    /// reference.
    pub fn disagreements(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (r, row) in self.cells.iter().enumerate() {
            for (c, cell) in row.iter().enumerate() {
                if !cell.agrees() {
                    out.push((r, c));
                }
            }
        }
        out
    }

    pub fn row(&self, name: &str) -> Option<Vec<&'static str>> {
        let r = self.rows.iter().position(|x| x == name)?;
        Some(self.cells[r].iter().map(Cell::render).collect())
    }

    /// Aligned plain-text rendering; disagreeing cells are starred and
    /// followed by the reference mark.
    pub fn render(&self) -> String {
        let text = |cell: &Cell| {
            if cell.agrees() {
                String::from(cell.render())
            } else {
                format!("{}* (ref {})", cell.render(), cell.reference.symbol())
            }
        };
        let width = |s: &str| s.chars().count();
        let first = self.rows.iter().map(|r| width(r)).max().unwrap_or(0);
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(c, h)| self.cells.iter().map(|row| width(&text(&row[c]))).chain([width(h)]).max().unwrap_or(0))
            .collect();
        let pad = |s: &str, w: usize| {
            let mut out = String::from(s);
            out.extend(core::iter::repeat(' ').take(w - width(s)));
            out
        };
        let mut out = format!("{}\n{}", self.title, pad("", first));
        for (h, &w) in self.columns.iter().zip(&widths) {
            out.push_str("  ");
            out.push_str(&pad(h, w));
        }
        out = String::from(out.trim_end());
        out.push('\n');
        for (name, row) in self.rows.iter().zip(&self.cells) {
            let mut line = pad(name, first);
            for (cell, &w) in row.iter().zip(&widths) {
                line.push_str("  ");
                line.push_str(&pad(&text(cell), w));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

use Mark::{No as N, Open as O, Unbounded as U, Yes as Y};

/// Columns of the rules table.
pub const RULE_COLUMNS: [Axiom; 5] = Axiom::ALL;

/// Reference values of the rules table, in [`RuleId::TABLE`] order.
pub const REFERENCE_RULES: [[Mark; 5]; 7] = [
    [N, Y, U, N, N],
    [Y, N, U, Y, N],
    [N, N, Y, N, N],
    [N, Y, Y, N, N],
    [Y, Y, Y, N, Y],
    [Y, N, Y, N, N],
    [Y, N, Y, Y, N],
];

pub fn rules_table_jobs() -> Vec<(Rule, Axiom)> {
    RuleId::TABLE
        .iter()
        .flat_map(|&id| RULE_COLUMNS.iter().map(move |&a| (Rule::from(id), a)))
        .collect()
}

pub fn rules_table(evals: &Evaluations) -> Result<Table> {
    let mut cells = Vec::new();
    for (r, id) in RuleId::TABLE.iter().enumerate() {
        let name = Rule::from(*id).name();
        let mut row = Vec::new();
        for (c, &axiom) in RULE_COLUMNS.iter().enumerate() {
            let e = evals.get(&name, axiom)?;
            row.push(Cell {
                computed: e.mark,
                reference: REFERENCE_RULES[r][c],
                note: e.evidence.describe(),
            });
        }
        cells.push(row);
    }
    Ok(Table {
        title: String::from("Axioms of selected perpetual voting rules"),
        columns: ["Simple Prop.", "IUD", "Bounded Dry Spells", "Lower Quota", "Upper Quota"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        rows: RuleId::TABLE.iter().map(|id| String::from(id.display_name())).collect(),
        cells,
    })
}

/// Columns of the classes table, as axiom sets.
pub const CLASS_COLUMNS: [&[Axiom]; 7] = [
    &[Axiom::BoundedDrySpells],
    &[Axiom::Iud],
    &[Axiom::SimpleProportionality],
    &[Axiom::BoundedDrySpells, Axiom::Iud],
    &[Axiom::BoundedDrySpells, Axiom::SimpleProportionality],
    &[Axiom::Iud, Axiom::SimpleProportionality],
    &[Axiom::BoundedDrySpells, Axiom::Iud, Axiom::SimpleProportionality],
];

pub const CLASS_NAMES: [&str; 4] = ["win-based WAMs", "loss-based WAMs", "basic WAMs", "WAMs"];

/// Reference values of the classes table.
pub const REFERENCE_CLASSES: [[Mark; 7]; 4] = [
    [N, Y, Y, N, N, N, N],
    [N, Y, N, N, N, N, N],
    [Y, Y, Y, Y, O, O, O],
    [Y, Y, Y, Y, Y, Y, Y],
];

/// Known members of each class, checked against the class cells.
pub fn class_representatives() -> [Vec<Rule>; 4] {
    let reps = one_sided_representatives();
    let pick = |names: &[&str]| -> Vec<Rule> {
        names
            .iter()
            .map(|n| reps.iter().find(|(m, _)| m == n).expect("representative").1.clone())
            .collect()
    };
    let win = pick(&["av", "pav", "harmonic-3/4", "geometric-9/10"]);
    let loss = pick(&["av", "loss-increment", "loss-doubling"]);
    let mut basic = win.clone();
    basic.extend(loss.iter().skip(1).cloned());
    basic.push(Rule::from(RuleId::Reset));
    basic.push(Rule::from(RuleId::Exponential));
    let mut wams = basic.clone();
    wams.push(Rule::from(RuleId::Consensus));
    [win, loss, basic, wams]
}

pub fn classes_table_jobs() -> Vec<(Rule, Axiom)> {
    let mut out: Vec<(Rule, Axiom)> = Vec::new();
    for rule in class_representatives().into_iter().flatten() {
        for a in [Axiom::BoundedDrySpells, Axiom::Iud, Axiom::SimpleProportionality] {
            if !out.iter().any(|(r, b)| r.name() == rule.name() && *b == a) {
                out.push((rule.clone(), a));
            }
        }
    }
    out
}

pub fn classes_table(evals: &Evaluations) -> Result<Table> {
    let reps = class_representatives();
    let mut cells = Vec::new();
    for (r, members) in reps.iter().enumerate() {
        let mut row = Vec::new();
        for (c, axioms) in CLASS_COLUMNS.iter().enumerate() {
            let mut satisfying = None;
            let mut refutations = Vec::new();
            for rule in members {
                let name = rule.name();
                let mut failed = None;
                for &a in axioms.iter() {
                    if evals.get(&name, a)?.mark != Mark::Yes {
                        failed = Some(a);
                        break;
                    }
                }
                match failed {
                    None => {
                        satisfying = Some(name);
                        break;
                    }
                    Some(a) => refutations.push(format!("{name}: {a}")),
                }
            }
            let (computed, note) = match satisfying {
                Some(name) => (Mark::Yes, format!("satisfied by {name}")),
                None => (Mark::No, format!("every representative refuted ({})", refutations.join(", "))),
            };
            row.push(Cell {
                computed,
                reference: REFERENCE_CLASSES[r][c],
                note,
            });
        }
        cells.push(row);
    }
    Ok(Table {
        title: String::from("Axiom combinations per class of weighted approval methods"),
        columns: ["BD", "IUD", "SP", "BD+IUD", "BD+SP", "IUD+SP", "BD+IUD+SP"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        rows: CLASS_NAMES.iter().map(|s| String::from(*s)).collect(),
        cells,
    })
}
