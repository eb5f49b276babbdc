use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::monomial::Monomial;
use crate::algebra::vector::{FreeModuleSpec, FreeVector};
use crate::error::Result;
use crate::groebner::{Ctx, Limits};
use crate::module::PresentedModule;

/// Parameters of a batch of random trials. Two runs with equal configs
/// produce identical modules and reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    /// Indices `1..=window` are scanned.
    pub window: usize,
    pub seed: u64,
    /// At most this many generators per module.
    pub max_gens: usize,
    /// Presentation entries have degree at most this.
    pub max_rel_degree: u32,
    pub trials: usize,
    /// Rank budget for resolutions; entries past it are reported unknown.
    pub max_rank: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig { window: 10, seed: 0, max_gens: 3, max_rel_degree: 3, trials: 100, max_rank: None }
    }
}

impl ExperimentConfig {
    /// Seed of the `k`-th module drawn in a run: word 0 of ChaCha8 stream `k`.
    pub fn module_seed(&self, k: u64) -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(k);
        rng.next_u64()
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        ExperimentConfig { seed, ..self.clone() }
    }

    /// `ctx` with the configured rank budget, or `ctx` itself.
    pub fn context(&self, ctx: &Ctx) -> Ctx {
        match self.max_rank {
            Some(r) if r != ctx.limits().max_rank => ctx.with_new_limits(Limits { max_rank: r, ..ctx.limits().clone() }),
            _ => ctx.clone(),
        }
    }
}

/// A random graded module. The generator count is uniform in
/// `1..=max_gens` and each generator twist uniform in `{0, 1}` (just `0`
/// when `max_rel_degree = 1`); the relation count is uniform in
/// `1..=max_gens`. Each relation has a degree `b` uniform among those
/// keeping every entry degree `b - a_j` in `1..=max_rel_degree`; entry `j`
/// is a sum of 0 to 2 terms, each a monomial drawn uniformly from the
/// standard monomials of degree `b - a_j` (those outside the initial ideal)
/// with a coefficient uniform in `1..p`.
pub fn random_module(cfg: &ExperimentConfig, ctx: &Ctx) -> Result<PresentedModule> {
    let ring = ctx.poly();
    let p = ring.field().characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let top_twist = if cfg.max_rel_degree >= 2 { 1 } else { 0 };
    let ng = rng.gen_range(1..=cfg.max_gens.max(1));
    let gens: Vec<i32> = (0..ng).map(|_| rng.gen_range(0..=top_twist)).collect();
    let (lo, hi) = (*gens.iter().min().unwrap(), *gens.iter().max().unwrap());
    let space = FreeModuleSpec::new(gens.clone());
    let mut twists = Vec::new();
    let mut rels = Vec::new();
    for _ in 0..rng.gen_range(1..=cfg.max_gens.max(1)) {
        let b = rng.gen_range(hi + 1..=(lo + cfg.max_rel_degree.max(1) as i32).max(hi + 1));
        let mut entries = Vec::new();
        for (j, &a) in gens.iter().enumerate() {
            let pool: Vec<Monomial> = ctx.basis_in_degree((b - a) as i64);
            let mut terms = Vec::new();
            if !pool.is_empty() {
                for _ in 0..rng.gen_range(0..=2) {
                    terms.push((pool[rng.gen_range(0..pool.len())], rng.gen_range(1..p)));
                }
            }
            entries.push((j, ctx.reduce(&ring.from_terms(terms))));
        }
        twists.push(b);
        rels.push(FreeVector::from_entries(ring, &space, &entries)?);
    }
    PresentedModule::new(ctx, gens, twists, rels)
}
