//! Submodule computations over a ring context: kernels, minimal generators,
//! lifting and Hilbert series. Artinian contexts use degree-wise linear
//! algebra over the field (standard grading only); all others go through the Buchberger engine with
//! the defining ideal preloaded in every component.

use std::collections::BTreeMap;

use crate::algebra::linalg::{left_kernel, Echelon, Reduced, SparseVec};
use crate::algebra::vector::{FreeModuleSpec, FreeVector};
use crate::error::{Error, Result};

use super::artinian::{Artinian, DegreeBasis};
use super::engine::Engine;
use super::hilbert::HilbertSeries;
use super::ring::QuotientRing;

fn check_homogeneous(space: &FreeModuleSpec, vs: &[FreeVector]) -> Result<()> {
    for v in vs {
        if !v.is_homogeneous(space) {
            return Err(Error::Inhomogeneous("module element".into()));
        }
    }
    Ok(())
}

/// Degree of each vector; zero vectors take the supplied nominal degree.
fn degrees(space: &FreeModuleSpec, vs: &[FreeVector], nominal: Option<&[i32]>) -> Vec<i64> {
    vs.iter()
        .enumerate()
        .map(|(i, v)| {
            v.degree(space)
                .or_else(|| nominal.map(|n| n[i] as i64))
                .unwrap_or(i64::MIN)
        })
        .collect()
}

/// Minimal generators of `{c in ⊕R(-src_i) : Σ c_i cols_i ∈ span(untracked)}`.
pub fn kernel_projected(
    ctx: &QuotientRing,
    src: &[i32],
    tgt: &[i32],
    tracked: &[FreeVector],
    untracked: &[FreeVector],
) -> Result<Vec<FreeVector>> {
    let tspace = FreeModuleSpec::new(tgt.to_vec());
    check_homogeneous(&tspace, tracked)?;
    check_homogeneous(&tspace, untracked)?;
    if tracked.is_empty() {
        return Ok(Vec::new());
    }
    ctx.limits().check_time()?;
    let gens = match ctx.artinian() {
        Some(art) => kernel_artinian(ctx, art, src, tgt, tracked, untracked)?,
        None => kernel_gb(ctx, src, tgt, tracked, untracked)?,
    };
    Ok(gens.into_iter().map(|g| monic(ctx, &g)).collect())
}

/// Scales a vector so its leading coefficient is 1.
pub fn monic(ctx: &QuotientRing, v: &FreeVector) -> FreeVector {
    match v.lead() {
        Some(t) if t.coeff != 1 => v.scale(ctx.poly(), ctx.poly().field().inv(t.coeff)),
        _ => v.clone(),
    }
}

/// Minimal generators of the kernel of the map `⊕R(-src_i) → ⊕R(-tgt_j)` with
/// the given columns.
pub fn kernel(ctx: &QuotientRing, src: &[i32], tgt: &[i32], cols: &[FreeVector]) -> Result<Vec<FreeVector>> {
    kernel_projected(ctx, src, tgt, cols, &[])
}

fn kernel_gb(
    ctx: &QuotientRing,
    src: &[i32],
    tgt: &[i32],
    tracked: &[FreeVector],
    untracked: &[FreeVector],
) -> Result<Vec<FreeVector>> {
    let ring = ctx.poly();
    let sspace = FreeModuleSpec::new(src.to_vec());
    let mut e = Engine::new(ring, FreeModuleSpec::new(tgt.to_vec()), ctx.limits())
        .tracking(sspace.clone(), ctx.ideal());
    e.add_presets(ctx.ideal());
    for (i, c) in tracked.iter().enumerate() {
        e.push(c.clone(), Some(FreeVector::basis(i)))?;
    }
    for c in untracked {
        e.push(c.clone(), None)?;
    }
    e.complete(None)?;
    let syz = e.take_syzygies();
    let chosen = minimal_generators(ctx, src, &syz, &[])?;
    Ok(chosen.into_iter().map(|i| syz[i].clone()).collect())
}

fn kernel_artinian(
    ctx: &QuotientRing,
    art: &Artinian,
    src: &[i32],
    tgt: &[i32],
    tracked: &[FreeVector],
    untracked: &[FreeVector],
) -> Result<Vec<FreeVector>> {
    let ring = ctx.poly();
    let f = ring.field();
    let sspace = FreeModuleSpec::new(src.to_vec());
    let tspace = FreeModuleSpec::new(tgt.to_vec());
    let udeg = degrees(&tspace, untracked, None);
    let top = art.top_degree();
    let lo = *src.iter().min().unwrap() as i64;
    let hi = *src.iter().max().unwrap() as i64 + top;
    let mut out = Vec::new();
    let mut prev: Option<(DegreeBasis, Vec<SparseVec>)> = None;
    for d in lo..=hi {
        ctx.limits().check_time()?;
        let sb = DegreeBasis::new(art, src, d);
        if sb.len() == 0 {
            prev = Some((sb, Vec::new()));
            continue;
        }
        let tb = DegreeBasis::new(art, tgt, d);
        let mut rows: Vec<SparseVec> = Vec::with_capacity(sb.len());
        for &(i, s) in &sb.elems {
            let v = art.mul_vector(ring, &tspace, &s, &tracked[i as usize]);
            rows.push(tb.coords(&v));
        }
        for (k, u) in untracked.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for s in art.basis(d - udeg[k]) {
                rows.push(tb.coords(&art.mul_vector(ring, &tspace, s, u)));
            }
        }
        let ntr = sb.len() as u32;
        let kern = left_kernel(f, tb.len(), &rows);
        // projection to the tracked labels, then a basis of the projection
        let mut pe = Echelon::new(f, sb.len());
        for k in &kern {
            let p: SparseVec = k.iter().copied().filter(|e| e.0 < ntr).collect();
            pe.insert(&p, &[]);
        }
        let basis: Vec<SparseVec> = pe.rows().to_vec();
        // span of the part generated in lower degrees
        let mut we = Echelon::new(f, sb.len());
        if let Some((pb, pbasis)) = &prev {
            for row in pbasis {
                let v = pb.vector(ring, &sspace, row);
                for var in 0..ring.nvars() {
                    let x = ring.var_monomial(var);
                    let xv = art.mul_vector(ring, &sspace, &x, &v);
                    we.insert(&sb.coords(&xv), &[]);
                }
            }
        }
        for row in &basis {
            if let Reduced::Independent(_) = we.insert(row, &[]) {
                out.push(sb.vector(ring, &sspace, row));
            }
        }
        prev = Some((sb, basis));
    }
    Ok(out)
}

/// Indices of a minimal subset of `cands` generating `(span(cands) + span(modulo)) / span(modulo)`.
pub fn minimal_generators(
    ctx: &QuotientRing,
    tgt: &[i32],
    cands: &[FreeVector],
    modulo: &[FreeVector],
) -> Result<Vec<usize>> {
    let space = FreeModuleSpec::new(tgt.to_vec());
    check_homogeneous(&space, cands)?;
    check_homogeneous(&space, modulo)?;
    let cdeg = degrees(&space, cands, None);
    let mut order: Vec<usize> = (0..cands.len()).filter(|&i| !cands[i].is_zero()).collect();
    order.sort_by_key(|&i| (cdeg[i], i));
    if order.is_empty() {
        return Ok(Vec::new());
    }
    match ctx.artinian() {
        Some(art) => mingens_artinian(ctx, art, &space, cands, &cdeg, &order, modulo),
        None => {
            let ring = ctx.poly();
            let mut e = Engine::new(ring, space, ctx.limits());
            e.add_presets(ctx.ideal());
            for m in modulo {
                e.push(m.clone(), None)?;
            }
            let mut chosen = Vec::new();
            for &i in &order {
                e.complete(Some(cdeg[i]))?;
                if e.try_insert(cands[i].clone()).is_some() {
                    chosen.push(i);
                }
            }
            Ok(chosen)
        }
    }
}

fn mingens_artinian(
    ctx: &QuotientRing,
    art: &Artinian,
    space: &FreeModuleSpec,
    cands: &[FreeVector],
    cdeg: &[i64],
    order: &[usize],
    modulo: &[FreeVector],
) -> Result<Vec<usize>> {
    let ring = ctx.poly();
    let f = ring.field();
    let tw = space.twists();
    let mdeg = degrees(space, modulo, None);
    let lo = cdeg[order[0]].min(mdeg.iter().copied().filter(|&d| d > i64::MIN).min().unwrap_or(i64::MAX));
    let hi = cdeg[*order.last().unwrap()];
    let mut by_deg: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for &i in order {
        by_deg.entry(cdeg[i]).or_default().push(i);
    }
    let mut chosen = Vec::new();
    let mut prev: Option<(DegreeBasis, Vec<SparseVec>)> = None;
    for d in lo..=hi {
        ctx.limits().check_time()?;
        let b = DegreeBasis::new(art, tw, d);
        let mut e = Echelon::new(f, b.len());
        if let Some((pb, rows)) = &prev {
            for row in rows {
                let v = pb.vector(ring, space, row);
                for var in 0..ring.nvars() {
                    let x = ring.var_monomial(var);
                    e.insert(&b.coords(&art.mul_vector(ring, space, &x, &v)), &[]);
                }
            }
        }
        for (k, m) in modulo.iter().enumerate() {
            if mdeg[k] == d {
                e.insert(&b.coords(m), &[]);
            }
        }
        if let Some(list) = by_deg.get(&d) {
            for &i in list {
                if let Reduced::Independent(_) = e.insert(&b.coords(&cands[i]), &[]) {
                    chosen.push(i);
                }
            }
        }
        prev = Some((b, e.rows().to_vec()));
    }
    Ok(chosen)
}

/// Expresses elements through a fixed list of generators, modulo a second
/// (untracked) list.
pub struct Lifter<'c> {
    ctx: &'c QuotientRing,
    tspace: FreeModuleSpec,
    sspace: FreeModuleSpec,
    kind: LiftKind<'c>,
}

enum LiftKind<'c> {
    Gb(Box<Engine<'c>>),
    Art {
        art: &'c Artinian,
        gens: Vec<FreeVector>,
        modulo: Vec<FreeVector>,
        mdeg: Vec<i64>,
        cache: BTreeMap<i64, (DegreeBasis, DegreeBasis, Echelon)>,
    },
}

impl<'c> Lifter<'c> {
    /// `src` are the twists of the generator labels (degrees of `gens`).
    pub fn new(
        ctx: &'c QuotientRing,
        src: &[i32],
        tgt: &[i32],
        gens: &[FreeVector],
        modulo: &[FreeVector],
    ) -> Result<Self> {
        let tspace = FreeModuleSpec::new(tgt.to_vec());
        let sspace = FreeModuleSpec::new(src.to_vec());
        check_homogeneous(&tspace, gens)?;
        check_homogeneous(&tspace, modulo)?;
        let kind = match ctx.artinian() {
            Some(art) => LiftKind::Art {
                art,
                mdeg: degrees(&tspace, modulo, None),
                gens: gens.to_vec(),
                modulo: modulo.to_vec(),
                cache: BTreeMap::new(),
            },
            None => {
                let mut e = Engine::new(ctx.poly(), tspace.clone(), ctx.limits())
                    .tracking(sspace.clone(), ctx.ideal());
                e.add_presets(ctx.ideal());
                for (i, g) in gens.iter().enumerate() {
                    e.push(g.clone(), Some(FreeVector::basis(i)))?;
                }
                for m in modulo {
                    e.push(m.clone(), None)?;
                }
                e.complete(None)?;
                LiftKind::Gb(Box::new(e))
            }
        };
        Ok(Lifter { ctx, tspace, sspace, kind })
    }

    /// Coefficients `c` with `v ≡ Σ c_i gens_i` modulo `span(modulo)`, or
    /// `None` if `v` is not in the span.
    pub fn lift(&mut self, v: &FreeVector) -> Result<Option<FreeVector>> {
        let ctx = self.ctx;
        let v = ctx.reduce_vector(&self.tspace, v);
        let Some(d) = v.degree(&self.tspace) else {
            return Ok(Some(FreeVector::zero()));
        };
        if !v.is_homogeneous(&self.tspace) {
            return Err(Error::Inhomogeneous("lifted element".into()));
        }
        match &mut self.kind {
            LiftKind::Gb(e) => Ok(e.lift(&v)),
            LiftKind::Art { art, gens, modulo, mdeg, cache } => {
                let ring = ctx.poly();
                let (tw, sw) = (self.tspace.twists(), self.sspace.twists());
                let entry = cache.entry(d).or_insert_with(|| {
                    let tb = DegreeBasis::new(art, tw, d);
                    let sb = DegreeBasis::new(art, sw, d);
                    let mut labels = sb.len();
                    for (k, m) in modulo.iter().enumerate() {
                        if !m.is_zero() {
                            labels += art.basis(d - mdeg[k]).len();
                        }
                    }
                    let mut e = Echelon::with_tracking(ring.field(), tb.len(), labels);
                    let mut label = 0u32;
                    for &(i, s) in &sb.elems {
                        let img = art.mul_vector(ring, &self.tspace, &s, &gens[i as usize]);
                        e.insert(&tb.coords(&img), &[(label, 1)]);
                        label += 1;
                    }
                    for (k, m) in modulo.iter().enumerate() {
                        if m.is_zero() {
                            continue;
                        }
                        for s in art.basis(d - mdeg[k]) {
                            let img = art.mul_vector(ring, &self.tspace, s, m);
                            e.insert(&tb.coords(&img), &[(label, 1)]);
                            label += 1;
                        }
                    }
                    (tb, sb, e)
                });
                let (tb, sb, e) = entry;
                let Some(c) = e.solve(&tb.coords(&v)) else {
                    return Ok(None);
                };
                let n = sb.len() as u32;
                let c: SparseVec = c.into_iter().filter(|x| x.0 < n).collect();
                Ok(Some(sb.vector(ring, &self.sspace, &c)))
            }
        }
    }

    pub fn contains(&mut self, v: &FreeVector) -> Result<bool> {
        Ok(self.lift(v)?.is_some())
    }
}

/// Hilbert series of `⊕R(-tgt_j) / span(cols)`.
pub fn quotient_hilbert(ctx: &QuotientRing, tgt: &[i32], cols: &[FreeVector]) -> Result<HilbertSeries> {
    let space = FreeModuleSpec::new(tgt.to_vec());
    check_homogeneous(&space, cols)?;
    let ring = ctx.poly();
    match ctx.artinian() {
        Some(art) => {
            if tgt.is_empty() {
                return Ok(HilbertSeries::zero(ring.weights()));
            }
            let cdeg = degrees(&space, cols, None);
            let lo = *tgt.iter().min().unwrap() as i64;
            let hi = *tgt.iter().max().unwrap() as i64 + art.top_degree();
            let mut dims = Vec::new();
            let mut prev: Option<(DegreeBasis, Vec<SparseVec>)> = None;
            for d in lo..=hi {
                let b = DegreeBasis::new(art, tgt, d);
                let mut e = Echelon::new(ring.field(), b.len());
                if let Some((pb, rows)) = &prev {
                    for row in rows {
                        let v = pb.vector(ring, &space, row);
                        for var in 0..ring.nvars() {
                            let x = ring.var_monomial(var);
                            e.insert(&b.coords(&art.mul_vector(ring, &space, &x, &v)), &[]);
                        }
                    }
                }
                for (k, c) in cols.iter().enumerate() {
                    if cdeg[k] == d {
                        e.insert(&b.coords(c), &[]);
                    }
                }
                dims.push((d, (b.len() - e.rank()) as u64));
                prev = Some((b, e.rows().to_vec()));
            }
            Ok(HilbertSeries::from_dims(ring.weights(), &dims))
        }
        None => {
            let mut e = Engine::new(ring, space, ctx.limits());
            e.add_presets(ctx.ideal());
            for c in cols {
                e.push(c.clone(), None)?;
            }
            e.complete(None)?;
            Ok(HilbertSeries::of_monomial_module(ring.weights(), tgt, &e.leading_monomials()))
        }
    }
}
