//! Homology of `Hom(C, N)` and `C ⊗ N` for a free complex `C`, and Ext/Tor
//! built on it.

use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{rank, SparseVec};
use crate::algebra::poly::Polynomial;
use crate::algebra::vector::{FreeModuleSpec, FreeVector, VTerm};
use crate::error::{Error, Result};
use crate::groebner::submodule::{kernel_projected, quotient_hilbert};
use crate::groebner::{Ctx, HilbertSeries};
use crate::module::{subquotient, FiniteLengthRealization, PresentedModule};
use crate::par;

use super::complex::FreeComplex;
use super::resolve;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Ext,
    Tor,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Ext => "Ext",
            Family::Tor => "Tor",
        })
    }
}

/// Length of a homology module over the base field. Serialized as a number,
/// `"infinite"` or `"unknown"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dimension {
    Finite(u64),
    /// Positive Krull dimension.
    Infinite,
    /// Not computed: a resource cap stopped the resolution first.
    Unknown,
}

impl Dimension {
    pub fn is_zero(&self) -> Option<bool> {
        match self {
            Dimension::Finite(d) => Some(*d == 0),
            Dimension::Infinite => Some(false),
            Dimension::Unknown => None,
        }
    }

    pub fn is_known(&self) -> bool {
        !matches!(self, Dimension::Unknown)
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            Dimension::Finite(d) => Some(*d),
            _ => None,
        }
    }

    fn of_series(h: &HilbertSeries) -> Self {
        if h.is_zero() {
            Dimension::Finite(0)
        } else {
            h.length().map_or(Dimension::Infinite, Dimension::Finite)
        }
    }
}

impl Serialize for Dimension {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dimension::Finite(d) => s.serialize_u64(*d),
            Dimension::Infinite => s.serialize_str("infinite"),
            Dimension::Unknown => s.serialize_str("unknown"),
        }
    }
}

impl<'de> Deserialize<'de> for Dimension {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Finite(u64),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Finite(n) => Ok(Dimension::Finite(n)),
            Raw::Word(w) if w == "infinite" => Ok(Dimension::Infinite),
            Raw::Word(w) if w == "unknown" => Ok(Dimension::Unknown),
            Raw::Word(w) => Err(serde::de::Error::custom(format!("not a dimension: {w}"))),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(d) => write!(f, "{d}"),
            Dimension::Infinite => f.write_str("inf"),
            Dimension::Unknown => f.write_str("?"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HomologyEntry {
    pub index: usize,
    pub dim: Dimension,
    pub hilbert: Option<HilbertSeries>,
    pub module: Option<PresentedModule>,
}

impl HomologyEntry {
    fn unknown(index: usize) -> Self {
        HomologyEntry { index, dim: Dimension::Unknown, hilbert: None, module: None }
    }

    /// Nonzero `(degree, dim)` pairs when the length is finite.
    pub fn graded(&self) -> Option<Vec<(i64, u64)>> {
        self.hilbert.as_ref().and_then(|h| h.finite_dims())
    }
}

/// `Ext^i_R(M, N)` or `Tor^R_i(M, N)` over a range of indices.
#[derive(Clone, Debug)]
pub struct ExtTorResult {
    pub family: Family,
    pub source: PresentedModule,
    pub target: PresentedModule,
    pub entries: Vec<HomologyEntry>,
}

impl ExtTorResult {
    pub fn get(&self, i: usize) -> Option<&HomologyEntry> {
        self.entries.iter().find(|e| e.index == i)
    }

    pub fn dim(&self, i: usize) -> Dimension {
        self.get(i).map_or(Dimension::Unknown, |e| e.dim)
    }

    pub fn dims(&self) -> Vec<Dimension> {
        self.entries.iter().map(|e| e.dim).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|e| {
                serde_json::json!({
                    "index": e.index,
                    "dim": e.dim,
                    "graded": e.graded(),
                })
            })
            .collect();
        serde_json::json!({ "family": self.family, "entries": entries })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Want {
    Module,
    Dims,
}

/// `(p, q, d[p, q])` for the nonzero entries of `d_i`.
fn entries(c: &FreeComplex, i: i64) -> Vec<(usize, usize, Polynomial)> {
    let ring = c.ctx().poly();
    let mut out = Vec::new();
    for (q, col) in c.differential(i).iter().enumerate() {
        for (p, f) in col.entries(ring) {
            out.push((p, q, f));
        }
    }
    out
}

fn relabel(ctx: &Ctx, space: &FreeModuleSpec, v: &FreeVector, f: impl Fn(u32) -> u32) -> FreeVector {
    let terms = v.terms().iter().map(|t| VTerm { mon: t.mon, comp: f(t.comp), coeff: t.coeff }).collect();
    FreeVector::from_terms(ctx.poly(), space, terms)
}

/// Block layout `⊕_p N(shift_p)` over a free module, for `N` presented with
/// generator twists `c_l`: component `p * gens(N) + l` has twist `c_l - shift_p`.
struct Blocks<'a> {
    n: &'a PresentedModule,
    twists: Vec<i32>,
    rels: Vec<FreeVector>,
}

impl<'a> Blocks<'a> {
    fn new(n: &'a PresentedModule, shifts: &[i32]) -> Self {
        let ctx = n.ctx();
        let gn = n.num_gens() as u32;
        let mut twists = Vec::with_capacity(shifts.len() * gn as usize);
        for &s in shifts {
            twists.extend(n.gen_twists().iter().map(|c| c - s));
        }
        let space = FreeModuleSpec::new(twists.clone());
        let mut rels = Vec::new();
        for p in 0..shifts.len() as u32 {
            for r in n.relations() {
                rels.push(relabel(ctx, &space, r, |l| p * gn + l));
            }
        }
        Blocks { n, twists, rels }
    }

    /// Images of the basis of `⊕_p N(shift_p)` under the block matrix with
    /// entries `(p, q, f)` sending block `p` to block `q` of `target`.
    fn images(&self, target: &Blocks<'_>, src_blocks: usize, entries: &[(usize, usize, Polynomial)]) -> Vec<FreeVector> {
        let ctx = self.n.ctx();
        let ring = ctx.poly();
        let gn = self.n.num_gens();
        let tspace = FreeModuleSpec::new(target.twists.clone());
        let mut per_src: Vec<Vec<(usize, &Polynomial)>> = vec![Vec::new(); src_blocks];
        for (p, q, f) in entries {
            per_src[*p].push((*q, f));
        }
        let mut out = Vec::with_capacity(src_blocks * gn);
        for row in &per_src {
            for l in 0..gn {
                let mut terms = Vec::new();
                for &(q, f) in row {
                    for &(mon, coeff) in f.terms() {
                        terms.push(VTerm { mon, comp: (q * gn + l) as u32, coeff });
                    }
                }
                out.push(FreeVector::from_terms(ring, &tspace, terms));
            }
        }
        out
    }
}

fn neg(t: &[i32]) -> Vec<i32> {
    t.iter().map(|a| -a).collect()
}

fn swap(e: Vec<(usize, usize, Polynomial)>) -> Vec<(usize, usize, Polynomial)> {
    e.into_iter().map(|(p, q, f)| (q, p, f)).collect()
}

/// `ker(out) / (im(incoming) + relations)` on the block module `here`.
fn homology_general(
    here: &Blocks<'_>,
    out: Option<(&Blocks<'_>, Vec<FreeVector>)>,
    incoming: Vec<FreeVector>,
    want: Want,
) -> Result<(HilbertSeries, Option<PresentedModule>)> {
    let ctx = here.n.ctx();
    let amb = &here.twists;
    if amb.is_empty() {
        let zero = PresentedModule::zero(ctx);
        return Ok((HilbertSeries::zero(ctx.poly().weights()), (want == Want::Module).then_some(zero)));
    }
    let kernel = match out {
        Some((next, images)) if !next.twists.is_empty() => {
            kernel_projected(ctx, amb, &next.twists, &images, &next.rels)?
        }
        _ => (0..amb.len()).map(FreeVector::basis).collect(),
    };
    let mut modulo = incoming;
    modulo.extend(here.rels.iter().cloned());
    match want {
        Want::Module => {
            let sq = subquotient(ctx, amb, &kernel, &modulo)?;
            let h = sq.module.hilbert()?;
            Ok((h, Some(sq.module)))
        }
        Want::Dims => {
            let whole = quotient_hilbert(ctx, amb, &modulo)?;
            let image = quotient_hilbert(ctx, amb, &kernel)?;
            Ok((whole.sub(&image), None))
        }
    }
}

/// Rank of the degree-wise block map on a finite-length module: block `s`
/// sits in degree `src_degs[s]`, block `t` in `tgt_degs[t]`.
fn block_rank(
    real: &FiniteLengthRealization,
    src_degs: &[i64],
    tgt_degs: &[i64],
    entries: &[(usize, usize, Polynomial)],
) -> usize {
    let mut offsets = Vec::with_capacity(tgt_degs.len());
    let mut ncols = 0usize;
    for &d in tgt_degs {
        offsets.push(ncols as u32);
        ncols += real.dim(d);
    }
    if ncols == 0 {
        return 0;
    }
    let mut per_src: Vec<Vec<(usize, &Polynomial)>> = vec![Vec::new(); src_degs.len()];
    for (s, t, f) in entries {
        if real.dim(tgt_degs[*t]) > 0 {
            per_src[*s].push((*t, f));
        }
    }
    let mut rows: Vec<SparseVec> = Vec::new();
    for (s, list) in per_src.iter().enumerate() {
        if list.is_empty() {
            continue;
        }
        for k in 0..real.dim(src_degs[s]) {
            let x: SparseVec = vec![(k as u32, 1)];
            let mut row: SparseVec = Vec::new();
            for &(t, f) in list {
                let y = real.act_poly(f, src_degs[s], &x);
                row.extend(y.into_iter().map(|(i, c)| (i + offsets[t], c)));
            }
            if !row.is_empty() {
                row.sort_unstable_by_key(|e| e.0);
                rows.push(row);
            }
        }
    }
    rank(real.field(), ncols, &rows)
}

/// Graded dims of the homology of a complex of block modules over a finite
/// length module, degree by degree: `here` has blocks in degrees
/// `e + here[p]`, and so on.
fn homology_finite(
    real: &FiniteLengthRealization,
    here: &[i32],
    (out_shifts, out_entries): (&[i32], &[(usize, usize, Polynomial)]),
    (in_shifts, in_entries): (&[i32], &[(usize, usize, Polynomial)]),
) -> Vec<(i64, u64)> {
    if here.is_empty() || real.length() == 0 {
        return Vec::new();
    }
    let lo = real.lo() - *here.iter().max().unwrap() as i64;
    let hi = real.hi() - *here.iter().min().unwrap() as i64;
    let degs = |e: i64, s: &[i32]| s.iter().map(|&t| e + t as i64).collect::<Vec<i64>>();
    let dims = par::map_range(lo, hi, |e| {
        let h = degs(e, here);
        let dim: usize = h.iter().map(|&d| real.dim(d)).sum();
        if dim == 0 {
            return (e, 0);
        }
        let r_out = block_rank(real, &h, &degs(e, out_shifts), out_entries);
        let r_in = block_rank(real, &degs(e, in_shifts), &h, in_entries);
        (e, (dim - r_out - r_in) as u64)
    });
    dims.into_iter().filter(|d| d.1 > 0).collect()
}

/// Cohomology of `Hom(C, N)` at `Hom(C_i, N)`.
fn hom_at(c: &FreeComplex, n: &PresentedModule, i: i64, want: Want, real: Option<&FiniteLengthRealization>) -> Result<(HilbertSeries, Option<PresentedModule>)> {
    let weights = n.ctx().poly().weights();
    if let (Some(real), Want::Dims) = (real, want) {
        // Hom(R(-t), N)_e = N_{e+t}
        let out = entries(c, i + 1);
        let inc = entries(c, i);
        let dims = homology_finite(real, c.twists(i), (c.twists(i + 1), &out), (c.twists(i - 1), &inc));
        return Ok((HilbertSeries::from_dims(weights, &dims), None));
    }
    let here = Blocks::new(n, c.twists(i));
    let next = Blocks::new(n, c.twists(i + 1));
    let prev = Blocks::new(n, c.twists(i - 1));
    let out_images = here.images(&next, c.rank(i), &entries(c, i + 1));
    let in_images = prev.images(&here, c.rank(i - 1), &entries(c, i));
    homology_general(&here, Some((&next, out_images)), in_images, want)
}

/// Homology of `C ⊗ N` at `C_i ⊗ N`.
fn tensor_at(c: &FreeComplex, n: &PresentedModule, i: i64, want: Want, real: Option<&FiniteLengthRealization>) -> Result<(HilbertSeries, Option<PresentedModule>)> {
    let weights = n.ctx().poly().weights();
    if let (Some(real), Want::Dims) = (real, want) {
        // (R(-t) ⊗ N)_e = N_{e-t}
        let out = swap(entries(c, i));
        let inc = swap(entries(c, i + 1));
        let dims = homology_finite(
            real,
            &neg(c.twists(i)),
            (&neg(c.twists(i - 1)), &out),
            (&neg(c.twists(i + 1)), &inc),
        );
        return Ok((HilbertSeries::from_dims(weights, &dims), None));
    }
    let here = Blocks::new(n, &neg(c.twists(i)));
    let next = Blocks::new(n, &neg(c.twists(i - 1)));
    let prev = Blocks::new(n, &neg(c.twists(i + 1)));
    let out_images = here.images(&next, c.rank(i), &swap(entries(c, i)));
    let in_images = prev.images(&here, c.rank(i + 1), &swap(entries(c, i + 1)));
    homology_general(&here, Some((&next, out_images)), in_images, want)
}

fn realization_if_finite(n: &PresentedModule) -> Result<Option<FiniteLengthRealization>> {
    if n.length()?.is_some() {
        Ok(Some(FiniteLengthRealization::of_module(n)?))
    } else {
        Ok(None)
    }
}

fn entry(index: usize, (h, module): (HilbertSeries, Option<PresentedModule>)) -> HomologyEntry {
    HomologyEntry { index, dim: Dimension::of_series(&h), hilbert: Some(h), module }
}

/// Cohomology of `Hom(C, N)` at index `i` as a minimized subquotient.
pub fn hom_homology(c: &FreeComplex, n: &PresentedModule, i: i64) -> Result<PresentedModule> {
    Ok(hom_at(c, n, i, Want::Module, None)?.1.unwrap())
}

/// Homology of `C ⊗ N` at index `i` as a minimized subquotient.
pub fn tensor_homology(c: &FreeComplex, n: &PresentedModule, i: i64) -> Result<PresentedModule> {
    Ok(tensor_at(c, n, i, Want::Module, None)?.1.unwrap())
}

/// Dimension of the homology of `C ⊗ N` at index `i`.
pub fn tensor_homology_dim(c: &FreeComplex, n: &PresentedModule, i: i64) -> Result<Dimension> {
    let real = realization_if_finite(n)?;
    Ok(Dimension::of_series(&tensor_at(c, n, i, Want::Dims, real.as_ref())?.0))
}

/// Dimension of the cohomology of `Hom(C, N)` at index `i`.
pub fn hom_homology_dim(c: &FreeComplex, n: &PresentedModule, i: i64) -> Result<Dimension> {
    let real = realization_if_finite(n)?;
    Ok(Dimension::of_series(&hom_at(c, n, i, Want::Dims, real.as_ref())?.0))
}

fn compute(family: Family, m: &PresentedModule, n: &PresentedModule, range: RangeInclusive<usize>, want: Want) -> Result<ExtTorResult> {
    m.check_same_ring(n)?;
    let hi = *range.end();
    let res = resolve(m, hi + 1)?;
    if want == Want::Module && !res.covers(hi + 1) {
        return Err(res.halted().cloned().unwrap_or_else(|| Error::ResourceCap("resolution".into())));
    }
    let real = match want {
        Want::Dims => realization_if_finite(n)?,
        Want::Module => None,
    };
    let c = res.complex();
    let mut entries = Vec::new();
    for i in range {
        if !res.covers(i + 1) {
            entries.push(HomologyEntry::unknown(i));
            continue;
        }
        n.ctx().limits().check_time()?;
        let h = match family {
            Family::Ext => hom_at(c, n, i as i64, want, real.as_ref())?,
            Family::Tor => tensor_at(c, n, i as i64, want, real.as_ref())?,
        };
        entries.push(entry(i, h));
    }
    Ok(ExtTorResult { family, source: m.clone(), target: n.clone(), entries })
}

/// `Ext^i(M, N)` for `i` in `range`, as modules.
pub fn ext(m: &PresentedModule, n: &PresentedModule, range: RangeInclusive<usize>) -> Result<ExtTorResult> {
    compute(Family::Ext, m, n, range, Want::Module)
}

/// `Tor_i(M, N)` for `i` in `range`, as modules.
pub fn tor(m: &PresentedModule, n: &PresentedModule, range: RangeInclusive<usize>) -> Result<ExtTorResult> {
    compute(Family::Tor, m, n, range, Want::Module)
}

/// Degree `j` goes to `-j`.
fn mirrored(h: &HilbertSeries, weights: &[u32]) -> Option<HilbertSeries> {
    let dims: Vec<(i64, u64)> = h.finite_dims()?.into_iter().map(|(j, d)| (-j, d)).collect();
    Some(HilbertSeries::from_dims(weights, &dims))
}

/// Dimensions computed from a resolution of `M`, or, for finite-length
/// modules, from one of the other side: `Tor_i(M, N) = Tor_i(N, M)` and
/// `Ext^i(M, N)_j = Tor_i(N^∨, M)_{-j}` with `N^∨` the graded k-dual. The
/// other side goes first when its module is free; entries the first path
/// leaves unknown are filled from the second.
fn balanced(family: Family, m: &PresentedModule, n: &PresentedModule, range: RangeInclusive<usize>) -> Result<ExtTorResult> {
    m.check_same_ring(n)?;
    if m.length()?.is_none() || n.length()?.is_none() {
        return compute(family, m, n, range, Want::Dims);
    }
    let other = match family {
        Family::Tor => n.clone(),
        Family::Ext => n.matlis_dual()?,
    };
    let across = |range: RangeInclusive<usize>| -> Result<Vec<HomologyEntry>> {
        let mut entries = compute(Family::Tor, &other, m, range, Want::Dims)?.entries;
        if family == Family::Ext {
            for e in &mut entries {
                e.hilbert = e.hilbert.as_ref().and_then(|h| mirrored(h, m.ctx().poly().weights()));
            }
        }
        Ok(entries)
    };
    let other_first = other.is_free()? && !m.is_free()?;
    let mut first = if other_first {
        ExtTorResult { family, source: m.clone(), target: n.clone(), entries: across(range.clone())? }
    } else {
        compute(family, m, n, range.clone(), Want::Dims)?
    };
    if first.entries.iter().all(|e| e.dim.is_known()) {
        return Ok(first);
    }
    let second = if other_first { compute(family, m, n, range, Want::Dims)?.entries } else { across(range)? };
    for (e, alt) in first.entries.iter_mut().zip(second) {
        if !e.dim.is_known() {
            *e = alt;
        }
    }
    Ok(first)
}

/// Dimensions of `Ext^i(M, N)` only. Indices no path could reach within the
/// rank budget come back as [`Dimension::Unknown`].
pub fn ext_dims(m: &PresentedModule, n: &PresentedModule, range: RangeInclusive<usize>) -> Result<ExtTorResult> {
    balanced(Family::Ext, m, n, range)
}

pub fn tor_dims(m: &PresentedModule, n: &PresentedModule, range: RangeInclusive<usize>) -> Result<ExtTorResult> {
    balanced(Family::Tor, m, n, range)
}

pub fn ext_dim(m: &PresentedModule, n: &PresentedModule, i: usize) -> Result<Dimension> {
    Ok(ext_dims(m, n, i..=i)?.dim(i))
}

pub fn tor_dim(m: &PresentedModule, n: &PresentedModule, i: usize) -> Result<Dimension> {
    Ok(tor_dims(m, n, i..=i)?.dim(i))
}
