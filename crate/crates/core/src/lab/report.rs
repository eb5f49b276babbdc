use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::parse::parse_homogeneous;
use crate::algebra::poly::Polynomial;
use crate::algebra::vector::{FreeModuleSpec, FreeVector};
use crate::error::Result;
use crate::groebner::Ctx;
use crate::module::PresentedModule;

use super::pattern::VanishingPattern;

/// Version of the JSON layout of every report in this module.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "consistent")]
    Consistent,
    /// A statement failed with every hypothesis verified.
    #[serde(rename = "VIOLATION")]
    Violation,
    /// A statement failed but some hypothesis was bypassed or is not known
    /// to hold, so nothing is contradicted.
    #[serde(rename = "disagreement")]
    Disagreement,
    /// A logged formula failed on a module whose side conditions cannot be
    /// decided.
    #[serde(rename = "hypothesis not established")]
    NotEstablished,
    /// Some value needed for the verdict is unknown.
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl Verdict {
    pub fn is_violation(&self) -> bool {
        *self == Verdict::Violation
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "consistent",
            Verdict::Violation => "VIOLATION",
            Verdict::Disagreement => "disagreement",
            Verdict::NotEstablished => "hypothesis not established",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// How a fact is read off the stored patterns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Rule {
    /// The listed patterns agree on tail vanishing.
    Agree { patterns: Vec<usize> },
    /// The pattern vanishes on `(d, H]`.
    TailVanishes { pattern: usize },
    /// The pattern is nonzero somewhere in `lo..=hi`.
    NonzeroIn { pattern: usize, lo: usize, hi: usize },
}

impl Rule {
    pub fn evaluate(&self, patterns: &[VanishingPattern]) -> Option<bool> {
        match self {
            Rule::Agree { patterns: idx } => {
                let flags: Option<Vec<bool>> = idx.iter().map(|&i| patterns[i].tail_vanishing).collect();
                flags.map(|f| f.windows(2).all(|w| w[0] == w[1]))
            }
            Rule::TailVanishes { pattern } => patterns[*pattern].tail_vanishing,
            Rule::NonzeroIn { pattern, lo, hi } => {
                let p = &patterns[*pattern];
                let vals: Vec<Option<bool>> = (*lo..=*hi).map(|i| p.dim(i).is_zero()).collect();
                if vals.contains(&Some(false)) {
                    Some(true)
                } else if vals.iter().all(|v| v.is_some()) {
                    Some(false)
                } else {
                    None
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub name: String,
    pub holds: Option<bool>,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub rule: Option<Rule>,
}

impl Fact {
    pub fn new(name: impl Into<String>, holds: Option<bool>, detail: impl Into<String>) -> Self {
        Fact { name: name.into(), holds, detail: detail.into(), rule: None }
    }

    pub fn from_rule(name: impl Into<String>, rule: Rule, patterns: &[VanishingPattern]) -> Self {
        Fact { name: name.into(), holds: rule.evaluate(patterns), detail: String::new(), rule: Some(rule) }
    }
}

/// A presentation in text form, enough to rebuild the module in a ring with
/// the same variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleRecord {
    pub gens: Vec<i32>,
    pub rels: Vec<i32>,
    /// Row `j` lists the coefficients of generator `j` in each relation.
    pub rows: Vec<Vec<String>>,
}

impl ModuleRecord {
    pub fn of(m: &PresentedModule) -> Self {
        let ring = m.ctx().poly();
        let rows = (0..m.num_gens())
            .map(|j| (0..m.num_rels()).map(|i| ring.format(&m.entry(j, i))).collect())
            .collect();
        ModuleRecord { gens: m.gen_twists().to_vec(), rels: m.rel_twists().to_vec(), rows }
    }

    pub fn to_module(&self, ctx: &Ctx) -> Result<PresentedModule> {
        let ring = ctx.poly();
        let rows: Vec<Vec<Polynomial>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|s| parse_homogeneous(s, ring)).collect())
            .collect::<Result<_>>()?;
        let space = FreeModuleSpec::new(self.gens.clone());
        let mut rels = Vec::with_capacity(self.rels.len());
        for i in 0..self.rels.len() {
            let entries: Vec<(usize, Polynomial)> = rows.iter().enumerate().map(|(j, r)| (j, r[i].clone())).collect();
            rels.push(FreeVector::from_entries(ring, &space, &entries)?);
        }
        PresentedModule::new(ctx, self.gens.clone(), self.rels.clone(), rels)
    }
}

/// Everything needed to rerun a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Replay {
    pub ring: String,
    pub window: usize,
    pub modules: Vec<ModuleRecord>,
}

impl Replay {
    pub fn new(ctx: &Ctx, window: usize, modules: &[&PresentedModule]) -> Self {
        Replay { ring: ctx.describe(), window, modules: modules.iter().map(|m| ModuleRecord::of(m)).collect() }
    }
}

/// Outcome of one checker run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub ring: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    pub hypotheses: Vec<Fact>,
    /// Hypotheses were recorded but not enforced.
    pub bypassed: bool,
    /// Failing facts are logged as unestablished rather than judged.
    pub lenient: bool,
    pub patterns: Vec<VanishingPattern>,
    pub facts: Vec<Fact>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replay: Option<Replay>,
}

impl CheckReport {
    pub(crate) fn new(check: &str, ctx: &Ctx, window: Option<usize>) -> Self {
        CheckReport {
            check: check.into(),
            ring: ctx.describe(),
            window,
            hypotheses: Vec::new(),
            bypassed: false,
            lenient: false,
            patterns: Vec::new(),
            facts: Vec::new(),
            verdict: Verdict::Consistent,
            notes: Vec::new(),
            replay: None,
        }
    }

    /// Verdict recomputed from the stored hypotheses, facts and patterns.
    pub fn judge(&self) -> Verdict {
        let holds: Vec<Option<bool>> = self
            .facts
            .iter()
            .map(|f| f.rule.as_ref().map_or(f.holds, |r| r.evaluate(&self.patterns)))
            .collect();
        if holds.contains(&Some(false)) {
            let established = self.hypotheses.iter().all(|h| h.holds == Some(true));
            if self.lenient {
                Verdict::NotEstablished
            } else if established {
                Verdict::Violation
            } else {
                Verdict::Disagreement
            }
        } else if holds.contains(&None) {
            Verdict::Inconclusive
        } else {
            Verdict::Consistent
        }
    }

    pub(crate) fn finish(mut self) -> Self {
        self.verdict = self.judge();
        self
    }

    pub fn fact(&self, name: &str) -> Option<&Fact> {
        self.facts.iter().find(|f| f.name == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).unwrap_or(serde_json::Value::Null)
    }
}
