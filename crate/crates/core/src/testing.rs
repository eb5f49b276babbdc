//! Rings and modules shared by the unit tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::monomial::Monomial;
use crate::algebra::parse::parse_homogeneous;
use crate::algebra::poly::Polynomial;
use crate::algebra::vector::{FreeModuleSpec, FreeVector};
use crate::groebner::ring::monomials_of_degree;
use crate::groebner::{Ctx, QuotientRing};
use crate::module::PresentedModule;

pub(crate) fn r1() -> Ctx {
    QuotientRing::parse(101, &["w", "x", "y", "z"], &["w*x - y*z"]).unwrap()
}

pub(crate) fn r2() -> Ctx {
    QuotientRing::parse(101, &["x", "y"], &["x^2", "y^2"]).unwrap()
}

pub(crate) fn r3() -> Ctx {
    QuotientRing::parse(101, &["x", "y", "z"], &["x*y", "x*z", "y*z", "x^2 - y^2", "x^2 - z^2"]).unwrap()
}

pub(crate) fn dual_numbers() -> Ctx {
    QuotientRing::parse(101, &["x"], &["x^2"]).unwrap()
}

pub(crate) fn p(ctx: &Ctx, s: &str) -> Polynomial {
    parse_homogeneous(s, ctx.poly()).unwrap()
}

pub(crate) fn coker(ctx: &Ctx, rows: &[&[&str]]) -> PresentedModule {
    let rows: Vec<Vec<Polynomial>> = rows.iter().map(|r| r.iter().map(|s| p(ctx, s)).collect()).collect();
    PresentedModule::from_rows(ctx, &rows).unwrap()
}

pub(crate) fn example_n(ctx: &Ctx) -> PresentedModule {
    coker(ctx, &[&["w"], &["x"], &["y"], &["z"]])
}

pub(crate) fn random_module(ctx: &Ctx, seed: u64) -> PresentedModule {
    let ring = ctx.poly();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ng = rng.gen_range(1..=2);
    let gens: Vec<i32> = (0..ng).map(|_| rng.gen_range(0..=1)).collect();
    let space = FreeModuleSpec::new(gens.clone());
    let mut twists = Vec::new();
    let mut rels = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let b = gens.iter().max().unwrap() + rng.gen_range(1..=2);
        let mut entries = Vec::new();
        for (j, &a) in gens.iter().enumerate() {
            let pool: Vec<Monomial> = monomials_of_degree(ring, (b - a) as u32);
            let mut terms = Vec::new();
            for _ in 0..rng.gen_range(0..=2) {
                terms.push((pool[rng.gen_range(0..pool.len())], rng.gen_range(1..101)));
            }
            entries.push((j, ctx.reduce(&ring.from_terms(terms))));
        }
        twists.push(b);
        rels.push(FreeVector::from_entries(ring, &space, &entries).unwrap());
    }
    PresentedModule::new(ctx, gens, twists, rels).unwrap()
}

