use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::module::{dual, dual_embedded, PresentedModule};

use super::complex::{transpose, FreeComplex};
use super::homology::{tensor_homology_dim, Dimension, ExtTorResult, Family, HomologyEntry};
use super::{require, require_mcm_over_gorenstein, resolve, syzygy};

/// `C(M)` on the window `[-t, n]`: the minimal resolution of `M` in
/// non-negative indices, spliced at `F_0 → G_0*` onto the dual of a minimal
/// resolution `G` of `M*`, with `C_{-j-1} = G_j*`.
#[derive(Clone, Debug)]
pub struct CompleteResolution {
    module: PresentedModule,
    complex: FreeComplex,
}

impl CompleteResolution {
    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    /// Index where the resolution of `M` meets the dual resolution of `M*`.
    pub fn splice_index(&self) -> i64 {
        0
    }

    /// `M_i = coker(d_{i+1})` for `-t ≤ i < n`.
    pub fn syzygy(&self, i: i64) -> Result<PresentedModule> {
        if i < self.complex.lo() || i >= self.complex.hi() {
            return Err(Error::WindowTooSmall(format!(
                "M_{i} outside [{}, {})",
                self.complex.lo(),
                self.complex.hi()
            )));
        }
        if i >= 0 {
            return syzygy(&self.module, i as usize);
        }
        let m = self.complex.cokernel_at(i)?;
        // the splice map may carry units when M has free summands
        if i == -1 {
            m.minimal_presentation()
        } else {
            Ok(m.assume_minimal())
        }
    }

    /// Homology vanishes at every interior index.
    pub fn is_exact(&self) -> Result<bool> {
        let ctx = self.complex.ctx();
        let r = PresentedModule::free(ctx, vec![0]);
        for i in self.complex.lo() + 1..self.complex.hi() {
            if tensor_homology_dim(&self.complex, &r, i)? != Dimension::Finite(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Complete resolution of a maximal Cohen-Macaulay module over a Gorenstein
/// ring on the window `[-t, n]`.
pub fn complete_resolution(m: &PresentedModule, t: usize, n: usize) -> Result<CompleteResolution> {
    if t == 0 {
        return Err(Error::WindowTooSmall("negative window must be at least 1".into()));
    }
    require_mcm_over_gorenstein(m)?;
    let ctx = m.ctx();
    let ring = ctx.poly();
    let f = resolve(m, n)?;
    require(&f, n)?;
    let module = f.module().clone();
    let d = dual_embedded(&module)?;
    let g = resolve(&d.module, t - 1)?;
    require(&g, t - 1)?;
    let (fc, gc) = (f.complex(), g.complex());
    if gc.rank(0) != d.gens.len() {
        return Err(Error::Incompatible("dual resolution does not start on the dual's generators".into()));
    }
    let neg = |v: &[i32]| v.iter().map(|a| -a).collect::<Vec<i32>>();
    let top = t as i64 - 1;
    let mut c = FreeComplex::new(ctx, -(t as i64), neg(gc.twists(top)));
    for j in (1..=top).rev() {
        let cols = transpose(ring, gc.differential(j), gc.rank(j - 1), &neg(gc.twists(j)));
        c.push(neg(gc.twists(j - 1)), cols)?;
    }
    // F_0 → G_0*: e_j ↦ Σ_s φ_s(e_j) e_s*
    let splice = transpose(ring, &d.gens, fc.rank(0), &neg(gc.twists(0)));
    c.push(fc.twists(0).to_vec(), splice)?;
    for i in 1..=n as i64 {
        c.push(fc.twists(i).to_vec(), fc.differential(i).to_vec())?;
    }
    Ok(CompleteResolution { module, complex: c })
}

/// `M_i` for `i ≤ -1`, from the complete resolution.
pub fn negative_syzygy(m: &PresentedModule, i: i64) -> Result<PresentedModule> {
    if i >= 0 {
        return Err(Error::WindowTooSmall(format!("negative syzygy index {i} ≥ 0")));
    }
    complete_resolution(m, (-i) as usize, 0)?.syzygy(i)
}

/// Checks `1 ≤ i ≤ t - 2` for every index, with `t ≥ 3`.
fn check_window(range: &RangeInclusive<usize>, t: usize) -> Result<()> {
    if t < 3 || *range.start() < 1 || *range.end() + 2 > t {
        return Err(Error::WindowTooSmall(format!(
            "indices {}..={} need 1 ≤ i ≤ t - 2 with t = {t}",
            range.start(),
            range.end()
        )));
    }
    Ok(())
}

/// The auxiliary module `Y = (M_t)*`, whose `-t`-th syzygy is stably `M`,
/// and its complete resolution on `[-1, n]`.
fn converted(m: &PresentedModule, t: usize, n: usize) -> Result<CompleteResolution> {
    require_mcm_over_gorenstein(m)?;
    let y = dual(&syzygy(m, t)?)?;
    complete_resolution(&y, 1, n)
}

fn dim_entry(index: usize, dim: Dimension) -> HomologyEntry {
    HomologyEntry { index, dim, hilbert: None, module: None }
}

/// `Ext^i(M, N)` for `1 ≤ i ≤ t - 2` computed as `Tor_{t-i-1}(Y, N)` with
/// `Y = (M_t)*`, the Tor read off `C(Y) ⊗ N`.
pub fn ext_via_complete(
    m: &PresentedModule,
    n: &PresentedModule,
    range: RangeInclusive<usize>,
    t: usize,
) -> Result<ExtTorResult> {
    m.check_same_ring(n)?;
    check_window(&range, t)?;
    let c = converted(m, t, t - range.start())?;
    let mut entries = Vec::new();
    for i in range {
        let j = (t - i - 1) as i64;
        entries.push(dim_entry(i, tensor_homology_dim(c.complex(), n, j)?));
    }
    Ok(ExtTorResult { family: Family::Ext, source: m.clone(), target: n.clone(), entries })
}

/// `Tor_i(M, N)` for `1 ≤ i ≤ t - 2` computed as `Ext^{t-i-1}(Y, N)` with
/// `Y = (M_t)*`, the Ext read off `C(Y)* ⊗ N` at index `i - t`.
pub fn tor_via_complete(
    m: &PresentedModule,
    n: &PresentedModule,
    range: RangeInclusive<usize>,
    t: usize,
) -> Result<ExtTorResult> {
    m.check_same_ring(n)?;
    check_window(&range, t)?;
    let c = converted(m, t, t - range.start())?;
    let dual = c.complex().dual();
    let mut entries = Vec::new();
    for i in range {
        let j = (t - i - 1) as i64;
        entries.push(dim_entry(i, tensor_homology_dim(&dual, n, -j - 1)?));
    }
    Ok(ExtTorResult { family: Family::Tor, source: m.clone(), target: n.clone(), entries })
}
