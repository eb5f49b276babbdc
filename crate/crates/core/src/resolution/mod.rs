//! Minimal free resolutions, complete resolutions of maximal Cohen-Macaulay
//! modules, Ext and Tor, stable Hom, depth.

pub(crate) mod cache;
mod complete;
mod complex;
mod homology;

#[cfg(test)]
mod tests;

use std::sync::Arc;

use crate::error::{Error, ErrorKind, Result};
use crate::groebner::submodule::kernel;
use crate::groebner::Ctx;
use crate::module::{natural_map_tensor_to_hom, socle, PresentedModule};

pub use complete::{complete_resolution, ext_via_complete, negative_syzygy, tor_via_complete, CompleteResolution};
pub use complex::{BettiTable, FreeComplex};
pub use homology::{
    ext, ext_dim, ext_dims, hom_homology, hom_homology_dim, tensor_homology, tensor_homology_dim, tor, tor_dim,
    tor_dims, Dimension, ExtTorResult, Family, HomologyEntry,
};

/// A minimal free resolution `F_0 ← F_1 ← …` of a module, computed up to
/// some length.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: PresentedModule,
    complex: FreeComplex,
    pd: Option<usize>,
    halted: Option<Error>,
}

impl Resolution {
    fn start(m: &PresentedModule) -> Result<Self> {
        let min = m.minimal_presentation()?;
        let mut complex = FreeComplex::new(m.ctx(), 0, min.gen_twists().to_vec());
        let mut pd = None;
        if min.num_rels() == 0 {
            pd = Some(0);
        } else {
            complex.push(min.rel_twists().to_vec(), min.relations().to_vec())?;
        }
        Ok(Resolution { module: min, complex, pd, halted: None })
    }

    /// Resolves further until `F_n` is known, the resolution stops, or a
    /// resource cap is hit.
    fn extend(&mut self, n: usize) -> Result<()> {
        let ctx = self.module.ctx().clone();
        while self.pd.is_none() && self.halted.is_none() && (self.complex.hi() as usize) < n {
            let i = self.complex.hi();
            let c = &self.complex;
            let step = kernel(&ctx, c.twists(i), c.twists(i - 1), c.differential(i))
                .and_then(|k| ctx.limits().check_rank(k.len(), "resolution").map(|_| k));
            match step {
                Ok(k) if k.is_empty() => self.pd = Some(i as usize),
                Ok(k) => {
                    let space = crate::algebra::vector::FreeModuleSpec::new(c.twists(i).to_vec());
                    let twists = k.iter().map(|v| v.degree(&space).unwrap() as i32).collect();
                    self.complex.push(twists, k)?;
                }
                Err(e) if e.kind() == ErrorKind::Resource => self.halted = Some(e),
                Err(e) => return Err(e),
            }
        }
        Ok(())
    }

    /// The minimal presentation being resolved; `F_0` is on its generators.
    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    pub fn betti(&self) -> BettiTable {
        self.complex.betti()
    }

    /// Known once the resolution has been seen to stop.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.pd
    }

    /// Largest index computed.
    pub fn length(&self) -> usize {
        self.complex.hi().max(0) as usize
    }

    /// True when `F_0, …, F_n` are all known (trailing ones possibly zero).
    pub fn covers(&self, n: usize) -> bool {
        self.pd.is_some() || self.length() >= n
    }

    /// The resource error that stopped the computation, if any.
    pub fn halted(&self) -> Option<&Error> {
        self.halted.as_ref()
    }

    pub(crate) fn covers_as_much(&self, other: &Resolution) -> bool {
        self.pd.is_some() || (other.pd.is_none() && self.length() >= other.length())
    }
}

/// Cached resolution of `m` reaching index `n` if the limits allow.
pub(crate) fn resolve(m: &PresentedModule, n: usize) -> Result<Arc<Resolution>> {
    let ctx = m.ctx();
    let key = m.key();
    let mut r = match ctx.cache.get(&key) {
        Some(r) if r.covers(n) || r.halted.is_some() => return Ok(r),
        Some(r) => (*r).clone(),
        None => Resolution::start(m)?,
    };
    r.extend(n)?;
    Ok(ctx.cache.insert(key, Arc::new(r)))
}

fn require(r: &Resolution, n: usize) -> Result<()> {
    if r.covers(n) {
        Ok(())
    } else {
        Err(r.halted.clone().unwrap_or_else(|| Error::ResourceCap("resolution".into())))
    }
}

/// Minimal free resolution of `m` through `F_n`, stopping early when the
/// projective dimension is smaller.
pub fn minimal_free_resolution(m: &PresentedModule, n: usize) -> Result<Resolution> {
    let r = resolve(m, n)?;
    require(&r, n)?;
    Ok(Resolution {
        module: r.module.clone(),
        complex: r.complex.truncate(0, n as i64),
        pd: r.pd.filter(|&p| p <= n),
        halted: None,
    })
}

/// `M_i`, the image of the `i`-th differential; `M_0` is `M` minimized.
pub fn syzygy(m: &PresentedModule, i: usize) -> Result<PresentedModule> {
    if i == 0 {
        return m.minimal_presentation();
    }
    let r = resolve(m, i + 1)?;
    require(&r, i + 1)?;
    if r.pd.is_some_and(|p| p < i) {
        return Ok(PresentedModule::zero(m.ctx()));
    }
    Ok(r.complex.cokernel_at(i as i64)?.assume_minimal())
}

/// Projective dimension if the resolution stops by index `bound`.
pub fn projective_dimension(m: &PresentedModule, bound: usize) -> Result<Option<usize>> {
    let r = resolve(m, bound + 1)?;
    require(&r, bound + 1)?;
    Ok(r.pd)
}

/// `coker(M* ⊗ N → Hom(M, N))`, minimized.
pub fn stable_hom(m: &PresentedModule, n: &PresentedModule) -> Result<PresentedModule> {
    natural_map_tensor_to_hom(m, n)?.cokernel()
}

/// Least `i` with `Ext^i(k, M) ≠ 0`.
pub fn depth(m: &PresentedModule) -> Result<usize> {
    if m.is_zero()? {
        return Err(Error::ZeroModule);
    }
    let ctx = m.ctx();
    let k = PresentedModule::residue_field(ctx);
    for i in 0..=ctx.dim() + 1 {
        match ext_dim(&k, m, i)? {
            Dimension::Unknown => return Err(Error::ResourceCap(format!("Ext^{i}(k, M) out of budget"))),
            d if d.is_zero() == Some(false) => return Ok(i),
            _ => {}
        }
    }
    Err(Error::Hypothesis("no nonvanishing Ext(k, M) up to dim + 1".into()))
}

/// Depth equals the dimension of the ring. The zero module counts as
/// maximal Cohen-Macaulay.
pub fn is_mcm(m: &PresentedModule) -> Result<bool> {
    if m.is_zero()? {
        return Ok(true);
    }
    let d = m.ctx().dim();
    if d == 0 {
        return Ok(true);
    }
    if m.dimension()? < d as i64 {
        return Ok(false);
    }
    Ok(depth(m)? == d)
}

/// Socle of dimension one in the artinian case, otherwise `Ext^i(k, R)`
/// vanishing below the dimension and one-dimensional at it.
pub fn gorenstein_check(ctx: &Ctx) -> Result<bool> {
    if let Some(&g) = ctx.cache.gorenstein.get() {
        return Ok(g);
    }
    let d = ctx.dim();
    let g = if d == 0 {
        socle(ctx)?.length()? == Some(1)
    } else {
        let k = PresentedModule::residue_field(ctx);
        let r = PresentedModule::free(ctx, vec![0]);
        let dims = ext_dims(&k, &r, 0..=d)?;
        if dims.dims().iter().any(|x| !x.is_known()) {
            return Err(Error::ResourceCap("Ext(k, R) out of budget".into()));
        }
        (0..d).all(|i| dims.dim(i) == Dimension::Finite(0)) && dims.dim(d) == Dimension::Finite(1)
    };
    Ok(*ctx.cache.gorenstein.get_or_init(|| g))
}

/// Fails with the hypothesis errors of complete resolutions.
pub(crate) fn require_mcm_over_gorenstein(m: &PresentedModule) -> Result<()> {
    if !gorenstein_check(m.ctx())? {
        return Err(Error::NotGorenstein);
    }
    if !is_mcm(m)? {
        return Err(Error::NotMcm(m.to_string()));
    }
    Ok(())
}
