//! Finitely presented graded modules over a ring context and the maps
//! between them.

mod finite;
mod map;
mod ops;

#[cfg(test)]
mod tests;

use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::poly::Polynomial;
use crate::algebra::vector::{FreeModuleSpec, FreeVector, VTerm};
use crate::error::{Error, Result};
use crate::groebner::submodule::{kernel_projected, minimal_generators, quotient_hilbert, Lifter};
use crate::groebner::{Ctx, HilbertSeries};

pub use finite::{socle, FiniteLengthRealization};
pub use map::ModuleMap;
pub use ops::{
    direct_sum, dual, dual_embedded, hom, hom_embedded, natural_map_tensor_to_hom,
    natural_map_tensor_to_hom_dual, tensor, tensor_embedded,
};

/// `coker(⊕R(-b_i) → ⊕R(-a_j))`: generator `j` sits in degree `a_j`, and
/// relation `i` is a homogeneous vector of degree `b_i`.
#[derive(Clone)]
pub struct PresentedModule {
    ctx: Ctx,
    space: FreeModuleSpec,
    rel_twists: Vec<i32>,
    rels: Vec<FreeVector>,
    minimal: bool,
    hilbert: Arc<OnceLock<HilbertSeries>>,
}

impl fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ctx.poly();
        write!(f, "coker {{gens {:?}, rels {:?}}} [", self.gen_twists(), self.rel_twists)?;
        for j in 0..self.num_gens() {
            if j > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = (0..self.num_rels()).map(|i| ring.format(&self.entry(j, i))).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl PresentedModule {
    /// Builds a module from relation vectors. Entries are reduced modulo the
    /// defining ideal and zero relations dropped.
    pub fn new(ctx: &Ctx, gen_twists: Vec<i32>, rel_twists: Vec<i32>, rels: Vec<FreeVector>) -> Result<Self> {
        if rel_twists.len() != rels.len() {
            return Err(Error::Incompatible(format!("{} relation twists for {} relations", rel_twists.len(), rels.len())));
        }
        let space = FreeModuleSpec::new(gen_twists);
        let mut keep_t = Vec::new();
        let mut keep_r = Vec::new();
        for (b, r) in rel_twists.into_iter().zip(rels) {
            if let Some(c) = r.max_component() {
                if c as usize >= space.rank() {
                    return Err(Error::Incompatible(format!("relation component {c} outside rank {}", space.rank())));
                }
            }
            let r = ctx.reduce_vector(&space, &r.reorder(ctx.poly(), &space));
            if r.is_zero() {
                continue;
            }
            if !r.is_homogeneous(&space) || r.degree(&space) != Some(b as i64) {
                return Err(Error::Inhomogeneous(format!("relation of twist {b}")));
            }
            keep_t.push(b);
            keep_r.push(r);
        }
        Ok(Self::raw(ctx, space, keep_t, keep_r, false))
    }

    pub(crate) fn raw(ctx: &Ctx, space: FreeModuleSpec, rel_twists: Vec<i32>, rels: Vec<FreeVector>, minimal: bool) -> Self {
        PresentedModule {
            ctx: ctx.clone(),
            space,
            rel_twists,
            rels,
            minimal,
            hilbert: Arc::new(OnceLock::new()),
        }
    }

    /// Cokernel of a matrix given row by row (rows index generators),
    /// with twists inferred so every entry is homogeneous of the right degree.
    pub fn from_rows(ctx: &Ctx, rows: &[Vec<Polynomial>]) -> Result<Self> {
        let (a, b) = infer_twists(rows, None)?;
        Self::from_rows_with_twists(ctx, a, b, rows)
    }

    /// Like [`PresentedModule::from_rows`] with the generator twists fixed.
    pub fn from_rows_with_gens(ctx: &Ctx, gen_twists: Vec<i32>, rows: &[Vec<Polynomial>]) -> Result<Self> {
        let (a, b) = infer_twists(rows, Some(&gen_twists))?;
        Self::from_rows_with_twists(ctx, a, b, rows)
    }

    fn from_rows_with_twists(ctx: &Ctx, a: Vec<i32>, b: Vec<i32>, rows: &[Vec<Polynomial>]) -> Result<Self> {
        let space = FreeModuleSpec::new(a.clone());
        let ring = ctx.poly();
        let mut rels = Vec::with_capacity(b.len());
        for i in 0..b.len() {
            let entries: Vec<(usize, Polynomial)> = rows.iter().enumerate().map(|(j, r)| (j, r[i].clone())).collect();
            rels.push(FreeVector::from_entries(ring, &space, &entries)?);
        }
        Self::new(ctx, a, b, rels)
    }

    /// `⊕ R(-a_j)`.
    pub fn free(ctx: &Ctx, twists: Vec<i32>) -> Self {
        Self::raw(ctx, FreeModuleSpec::new(twists), Vec::new(), Vec::new(), true)
    }

    pub fn zero(ctx: &Ctx) -> Self {
        Self::free(ctx, Vec::new())
    }

    /// The residue field `R/m` in degree 0.
    pub fn residue_field(ctx: &Ctx) -> Self {
        let ring = ctx.poly();
        let space = FreeModuleSpec::new(vec![0]);
        let mut twists = Vec::new();
        let mut rels = Vec::new();
        for v in 0..ring.nvars() {
            let r = FreeVector::from_terms(
                ring,
                &space,
                vec![VTerm { mon: ring.var_monomial(v), comp: 0, coeff: 1 }],
            );
            let r = ctx.reduce_vector(&space, &r);
            if !r.is_zero() {
                twists.push(ring.weights()[v] as i32);
                rels.push(r);
            }
        }
        Self::raw(ctx, space, twists, rels, false)
    }

    /// `R/J` for homogeneous `J`.
    pub fn cyclic(ctx: &Ctx, ideal: &[Polynomial]) -> Result<Self> {
        let row: Vec<Polynomial> = ideal.to_vec();
        Self::from_rows_with_gens(ctx, vec![0], &[row])
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn space(&self) -> &FreeModuleSpec {
        &self.space
    }

    pub fn gen_twists(&self) -> &[i32] {
        self.space.twists()
    }

    pub fn rel_twists(&self) -> &[i32] {
        &self.rel_twists
    }

    pub fn relations(&self) -> &[FreeVector] {
        &self.rels
    }

    pub fn num_gens(&self) -> usize {
        self.space.rank()
    }

    pub fn num_rels(&self) -> usize {
        self.rels.len()
    }

    /// Entry of the presentation matrix at (generator `j`, relation `i`).
    pub fn entry(&self, j: usize, i: usize) -> Polynomial {
        self.rels[i].entry(self.ctx.poly(), j)
    }

    /// True when this value came out of a minimization.
    /// Marks a presentation known to be minimal by construction.
    pub(crate) fn assume_minimal(mut self) -> Self {
        self.minimal = true;
        self
    }

    pub fn is_known_minimal(&self) -> bool {
        self.minimal
    }

    pub fn hilbert(&self) -> Result<HilbertSeries> {
        if let Some(h) = self.hilbert.get() {
            return Ok(h.clone());
        }
        let h = quotient_hilbert(&self.ctx, self.gen_twists(), &self.rels)?;
        Ok(self.hilbert.get_or_init(|| h).clone())
    }

    /// Minimal presentation: minimal generators and minimal relations, so no
    /// relation entry has a unit coefficient.
    pub fn minimal_presentation(&self) -> Result<PresentedModule> {
        if self.minimal {
            return Ok(self.clone());
        }
        Ok(self.minimize_embedded()?.module)
    }

    /// Minimal presentation together with the chosen generators as vectors of
    /// the original free module.
    pub fn minimize_embedded(&self) -> Result<Embedded> {
        let basis: Vec<FreeVector> = (0..self.num_gens()).map(FreeVector::basis).collect();
        subquotient(&self.ctx, self.gen_twists(), &basis, &self.rels)
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.num_gens() == 0 || self.hilbert()?.is_zero())
    }

    pub fn is_free(&self) -> Result<bool> {
        Ok(self.minimal_presentation()?.num_rels() == 0)
    }

    /// Krull dimension; `-1` for the zero module.
    pub fn dimension(&self) -> Result<i64> {
        Ok(self.hilbert()?.dimension())
    }

    /// Length over the ring, `None` when infinite.
    pub fn length(&self) -> Result<Option<u64>> {
        Ok(self.hilbert()?.length())
    }

    /// `M(s)`, whose degree-`d` part is `M_{s+d}`.
    pub fn twist(&self, s: i32) -> PresentedModule {
        let twists = self.gen_twists().iter().map(|a| a - s).collect();
        let rel_twists = self.rel_twists.iter().map(|b| b - s).collect();
        Self::raw(&self.ctx, FreeModuleSpec::new(twists), rel_twists, self.rels.clone(), self.minimal)
    }

    /// Structural key for caches.
    pub(crate) fn key(&self) -> (Vec<i32>, Vec<i32>, Vec<FreeVector>) {
        (self.gen_twists().to_vec(), self.rel_twists.clone(), self.rels.clone())
    }

    pub(crate) fn check_same_ring(&self, other: &PresentedModule) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.same_ring(&other.ctx) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Image of an element of the free module on the generators, reduced.
    pub fn reduce_element(&self, v: &FreeVector) -> FreeVector {
        self.ctx.reduce_vector(&self.space, &v.reorder(self.ctx.poly(), &self.space))
    }
}

/// A module presented as `(span(gens) + span(modulo)) / span(modulo)` inside a
/// free module, remembering that realization.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub module: PresentedModule,
    pub ambient: Vec<i32>,
    pub gens: Vec<FreeVector>,
    pub modulo: Vec<FreeVector>,
}

impl Embedded {
    /// Expresses ambient elements through the module generators.
    pub fn lifter(&self) -> Result<Lifter<'_>> {
        Lifter::new(self.module.ctx(), self.module.gen_twists(), &self.ambient, &self.gens, &self.modulo)
    }
}

/// Minimal presentation of the submodule generated by `gens` in
/// `⊕R(-ambient_j) / span(modulo)`.
pub fn subquotient(ctx: &Ctx, ambient: &[i32], gens: &[FreeVector], modulo: &[FreeVector]) -> Result<Embedded> {
    let aspace = FreeModuleSpec::new(ambient.to_vec());
    let gens: Vec<FreeVector> = gens.iter().map(|g| ctx.reduce_vector(&aspace, g)).collect();
    let modulo: Vec<FreeVector> = modulo
        .iter()
        .map(|g| ctx.reduce_vector(&aspace, g))
        .filter(|g| !g.is_zero())
        .collect();
    let chosen = minimal_generators(ctx, ambient, &gens, &modulo)?;
    let g: Vec<FreeVector> = chosen.into_iter().map(|i| gens[i].clone()).collect();
    let twists: Vec<i32> = g.iter().map(|v| v.degree(&aspace).unwrap() as i32).collect();
    ctx.limits().check_rank(g.len(), "subquotient")?;
    let rels = kernel_projected(ctx, &twists, ambient, &g, &modulo)?;
    let space = FreeModuleSpec::new(twists);
    let rel_twists = rels.iter().map(|r| r.degree(&space).unwrap() as i32).collect();
    let module = PresentedModule::raw(ctx, space, rel_twists, rels, true);
    Ok(Embedded { module, ambient: ambient.to_vec(), gens: g, modulo })
}

/// Solves `b_i - a_j = deg(entry_{j,i})` over the nonzero entries.
fn infer_twists(rows: &[Vec<Polynomial>], gens: Option<&[i32]>) -> Result<(Vec<i32>, Vec<i32>)> {
    let nr = rows.len();
    let nc = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != nc) {
        return Err(Error::Incompatible("ragged matrix".into()));
    }
    for r in rows {
        for e in r {
            if !e.is_homogeneous() {
                return Err(Error::Inhomogeneous("matrix entry".into()));
            }
        }
    }
    if let Some(g) = gens {
        if g.len() != nr {
            return Err(Error::Incompatible(format!("{} generator twists for {nr} rows", g.len())));
        }
    }
    let deg = |j: usize, i: usize| rows[j][i].degree().map(|d| d as i32);
    let mut a: Vec<Option<i32>> = match gens {
        Some(g) => g.iter().map(|&x| Some(x)).collect(),
        None => vec![None; nr],
    };
    let mut b: Vec<Option<i32>> = vec![None; nc];
    let mut queue: VecDeque<(bool, usize)> = VecDeque::new();
    let seeds: Vec<usize> = if gens.is_some() { (0..nr).collect() } else { Vec::new() };
    for j in seeds {
        queue.push_back((true, j));
    }
    let mut next_root = 0;
    loop {
        while let Some((is_row, k)) = queue.pop_front() {
            if is_row {
                let aj = a[k].unwrap();
                for i in 0..nc {
                    if let Some(d) = deg(k, i) {
                        match b[i] {
                            None => {
                                b[i] = Some(aj + d);
                                queue.push_back((false, i));
                            }
                            Some(bi) if bi != aj + d => {
                                return Err(Error::Inhomogeneous(format!("column {i} has inconsistent degrees")))
                            }
                            _ => {}
                        }
                    }
                }
            } else {
                let bi = b[k].unwrap();
                for j in 0..nr {
                    if let Some(d) = deg(j, k) {
                        match a[j] {
                            None => {
                                a[j] = Some(bi - d);
                                queue.push_back((true, j));
                            }
                            Some(aj) if aj != bi - d => {
                                return Err(Error::Inhomogeneous(format!("row {j} has inconsistent degrees")))
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        while next_root < nr && a[next_root].is_some() {
            next_root += 1;
        }
        if next_root == nr {
            break;
        }
        a[next_root] = Some(0);
        queue.push_back((true, next_root));
    }
    // put the lowest generator in degree 0
    if gens.is_none() {
        let min = a.iter().flatten().copied().min().unwrap_or(0);
        if min != 0 {
            for x in a.iter_mut().flatten() {
                *x -= min;
            }
            for x in b.iter_mut().flatten() {
                *x -= min;
            }
        }
    }
    let a: Vec<i32> = a.into_iter().map(|x| x.unwrap_or(0)).collect();
    let b: Vec<i32> = b.into_iter().map(|x| x.unwrap_or(0)).collect();
    Ok((a, b))
}
