//! Gröbner bases of ideals and submodules, normal forms, syzygies, Hilbert
//! series and the quotient-ring context.

pub mod artinian;
pub mod engine;
pub mod hilbert;
pub mod limits;
pub(crate) mod reduce;
pub mod ring;
pub mod submodule;

use crate::algebra::poly::PolyRing;
use crate::algebra::vector::{FreeModuleSpec, FreeVector, SchreyerFrame, VTerm};
use crate::error::{Error, Result};

pub use engine::Engine;
pub use hilbert::HilbertSeries;
pub use limits::Limits;
pub use ring::{ideal_groebner, Ctx, QuotientRing};

/// Homogeneous generators of a submodule of a twisted free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleBasis {
    pub space: FreeModuleSpec,
    pub gens: Vec<FreeVector>,
}

impl SubmoduleBasis {
    pub fn new(twists: Vec<i32>, gens: Vec<FreeVector>) -> Self {
        SubmoduleBasis { space: FreeModuleSpec::new(twists), gens }
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }
}

/// A Gröbner basis over the ambient polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub space: FreeModuleSpec,
    pub generators: Vec<FreeVector>,
    pub reduced: bool,
}

/// Reduced Gröbner basis of a homogeneous submodule.
pub fn buchberger(ring: &PolyRing, sub: &SubmoduleBasis, limits: &Limits) -> Result<GroebnerBasis> {
    let mut e = Engine::new(ring, sub.space.clone(), limits);
    for g in &sub.gens {
        if !g.is_homogeneous(&sub.space) {
            return Err(Error::Inhomogeneous("generator".into()));
        }
        e.push(g.clone(), None)?;
    }
    e.complete(None)?;
    Ok(GroebnerBasis { space: sub.space.clone(), generators: e.reduced_basis(), reduced: true })
}

/// Normal form of `v` with respect to `gb`.
pub fn normal_form(ring: &PolyRing, gb: &GroebnerBasis, v: &FreeVector) -> Result<FreeVector> {
    if let Some(c) = v.max_component() {
        if c as usize >= gb.space.rank() {
            return Err(Error::Incompatible(format!("component {c} outside rank {}", gb.space.rank())));
        }
    }
    let limits = Limits::default();
    let mut e = Engine::new(ring, gb.space.clone(), &limits);
    e.load_basis(&gb.generators);
    Ok(e.normal_form(&v.reorder(ring, &gb.space)))
}

/// Schreyer syzygies of the generators of a Gröbner basis, in the induced
/// Schreyer order on `⊕ S(-deg g_i)`.
pub fn syzygy_basis(ring: &PolyRing, gb: &GroebnerBasis, limits: &Limits) -> Result<SubmoduleBasis> {
    let gens: Vec<&FreeVector> = gb.generators.iter().filter(|g| !g.is_zero()).collect();
    let twists: Vec<i32> = gens.iter().map(|g| g.degree(&gb.space).unwrap() as i32).collect();
    let leads = gens.iter().map(|g| (g.lead().unwrap().mon, g.lead().unwrap().comp)).collect();
    let frame = SchreyerFrame { base: gb.space.clone(), leads };
    let sspace = FreeModuleSpec::schreyer(twists, frame);
    let mut e = Engine::new(ring, gb.space.clone(), limits).tracking(sspace.clone(), &[]);
    for (i, g) in gens.iter().enumerate() {
        e.push((*g).clone(), Some(FreeVector::basis(i)))?;
    }
    e.complete(None)?;
    let syz = e.take_syzygies().into_iter().map(|s| s.reorder(ring, &sspace)).collect();
    Ok(SubmoduleBasis { space: sspace, gens: syz })
}

/// Generators over the ambient ring whose Gröbner computations answer
/// questions over the quotient: the input plus `I e_j` for every component.
pub fn lift_over_quotient(ctx: &QuotientRing, sub: &SubmoduleBasis) -> SubmoduleBasis {
    let ring = ctx.poly();
    let mut gens = sub.gens.clone();
    for comp in 0..sub.rank() as u32 {
        for g in ctx.ideal() {
            let terms = g.terms().iter().map(|&(mon, coeff)| VTerm { mon, comp, coeff }).collect();
            gens.push(FreeVector::from_terms(ring, &sub.space, terms));
        }
    }
    SubmoduleBasis { space: sub.space.clone(), gens }
}

/// Hilbert series and Krull dimension of the cokernel `F / span(gb)`.
pub fn hilbert_data(ring: &PolyRing, gb: &GroebnerBasis) -> (HilbertSeries, i64) {
    let mut leads = vec![Vec::new(); gb.space.rank()];
    for g in &gb.generators {
        if let Some(t) = g.lead() {
            leads[t.comp as usize].push(t.mon);
        }
    }
    let h = HilbertSeries::of_monomial_module(ring.weights(), gb.space.twists(), &leads);
    let d = h.dimension();
    (h, d)
}

#[cfg(test)]
mod tests;
