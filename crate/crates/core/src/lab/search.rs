use serde::{Deserialize, Serialize};

use crate::error::{ErrorKind, Result};
use crate::groebner::Ctx;
use crate::module::PresentedModule;
use crate::par;
use crate::resolution::projective_dimension;

use super::config::{random_module, ExperimentConfig};
use super::pattern::{scan_ext, VanishingPattern};
use super::report::{ModuleRecord, Replay};

/// One random pair and its Ext pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trial {
    pub index: usize,
    pub seeds: (u64, u64),
    pub pattern: VanishingPattern,
    /// For tail-vanishing pairs: one of the modules has finite projective
    /// dimension (`None` if the resolution budget ran out first).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub finite_pd_member: Option<bool>,
    /// Tail-vanishing with a nonzero entry past the ring dimension.
    pub candidate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replay: Option<Replay>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub ring: String,
    pub ring_dim: usize,
    pub config: ExperimentConfig,
    pub trials: Vec<Trial>,
    pub tail_vanishing: usize,
    pub unknown: usize,
    pub candidates: usize,
    pub note: String,
}

impl SearchReport {
    /// Tail-vanishing trials where neither module was seen to have finite
    /// projective dimension.
    pub fn tail_vanishing_without_finite_pd(&self) -> Vec<&Trial> {
        self.trials.iter().filter(|t| t.finite_pd_member == Some(false)).collect()
    }
}

fn finite_pd(m: &PresentedModule) -> Result<Option<bool>> {
    match projective_dimension(m, m.ctx().dim()) {
        Ok(pd) => Ok(Some(pd.is_some())),
        Err(e) if e.kind() == ErrorKind::Resource => Ok(None),
        Err(e) => Err(e),
    }
}

fn run_trial(cfg: &ExperimentConfig, ctx: &Ctx, index: usize) -> Result<Trial> {
    let seeds = (cfg.module_seed(2 * index as u64), cfg.module_seed(2 * index as u64 + 1));
    let m = random_module(&cfg.with_seed(seeds.0), ctx)?;
    let n = random_module(&cfg.with_seed(seeds.1), ctx)?;
    let pattern = scan_ext(&m, &n, cfg.window)?;
    let d = ctx.dim();
    let mut finite_pd_member = None;
    if pattern.tail_vanishing == Some(true) {
        finite_pd_member = match (finite_pd(&m)?, finite_pd(&n)?) {
            (Some(true), _) | (_, Some(true)) => Some(true),
            (Some(false), Some(false)) => Some(false),
            _ => None,
        };
    }
    let candidate = pattern.tail_vanishing == Some(true) && pattern.last_nonzero > d;
    let replay = candidate.then(|| Replay {
        ring: ctx.describe(),
        window: cfg.window,
        modules: vec![ModuleRecord::of(&m), ModuleRecord::of(&n)],
    });
    Ok(Trial { index, seeds, pattern, finite_pd_member, candidate, replay })
}

/// Scans `cfg.trials` random pairs `(M, N)` for tail-vanishing Ext patterns
/// whose last nonzero index exceeds the ring dimension. Such a pair is
/// logged as a candidate with replay data; nothing is claimed beyond the
/// window. Trials run in parallel and are reported in index order.
pub fn search_harness(cfg: &ExperimentConfig, ctx: &Ctx) -> Result<SearchReport> {
    let ctx = cfg.context(ctx);
    let indices: Vec<usize> = (0..cfg.trials).collect();
    let results = par::map(&indices, |&i| run_trial(cfg, &ctx, i));
    let mut trials = Vec::with_capacity(results.len());
    for r in results {
        trials.push(r?);
    }
    let count = |f: &dyn Fn(&Trial) -> bool| trials.iter().filter(|t| f(t)).count();
    Ok(SearchReport {
        ring: ctx.describe(),
        ring_dim: ctx.dim(),
        config: cfg.clone(),
        tail_vanishing: count(&|t| t.pattern.tail_vanishing == Some(true)),
        unknown: count(&|t| t.pattern.tail_vanishing.is_none()),
        candidates: count(&|t| t.candidate),
        trials,
        note: format!("candidates are window-bounded observations up to index {}, not counterexamples", cfg.window),
    })
}
