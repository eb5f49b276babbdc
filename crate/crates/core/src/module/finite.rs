//! Finite-length modules as graded vector spaces with variable actions.

use std::collections::HashMap;

use crate::algebra::field::{Coeff, FieldSpec};
use crate::algebra::linalg::{left_kernel, Echelon, Reduced, SparseVec};
use crate::algebra::monomial::Monomial;
use crate::algebra::poly::Polynomial;
use crate::algebra::vector::{FreeModuleSpec, FreeVector, VTerm};
use crate::error::{Error, Result};
use crate::groebner::ring::monomials_of_degree;
use crate::groebner::{Ctx, Engine};

use super::{direct_sum, ModuleMap, PresentedModule};

/// Graded pieces `M_lo, ..., M_hi` with one action matrix per variable and
/// degree: `actions[v][k][i]` is `x_v` applied to basis vector `i` of
/// `M_{lo+k}`, in coordinates of `M_{lo+k+w_v}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLengthRealization {
    field: FieldSpec,
    weights: Vec<u32>,
    lo: i64,
    dims: Vec<usize>,
    actions: Vec<Vec<Vec<SparseVec>>>,
}

fn add_into(field: FieldSpec, acc: &mut HashMap<u32, Coeff>, v: &SparseVec, c: Coeff) {
    for &(i, a) in v {
        let e = acc.entry(i).or_insert(0);
        *e = field.add(*e, field.mul(a, c));
    }
}

fn collect(acc: HashMap<u32, Coeff>) -> SparseVec {
    let mut out: SparseVec = acc.into_iter().filter(|e| e.1 != 0).collect();
    out.sort_unstable_by_key(|e| e.0);
    out
}

impl FiniteLengthRealization {
    pub fn of_module(m: &PresentedModule) -> Result<Self> {
        let ctx = m.ctx();
        let ring = ctx.poly();
        let h = m.hilbert()?;
        let dims = h.finite_dims().ok_or(Error::NotFiniteLength)?;
        let weights = ring.weights().to_vec();
        let Some(lo) = dims.first().map(|d| d.0) else {
            return Ok(FiniteLengthRealization {
                field: ring.field(),
                weights: weights.clone(),
                lo: 0,
                dims: Vec::new(),
                actions: vec![Vec::new(); weights.len()],
            });
        };
        let hi = dims.last().unwrap().0;
        let space = m.space().clone();
        let mut e = Engine::new(ring, space.clone(), ctx.limits());
        e.add_presets(ctx.ideal());
        for r in m.relations() {
            e.push(r.clone(), None)?;
        }
        e.complete(None)?;
        let leads = e.leading_monomials();
        let mut bases: Vec<Vec<(u32, Monomial)>> = Vec::new();
        let mut index: Vec<HashMap<(u32, Monomial), u32>> = Vec::new();
        for d in lo..=hi {
            let mut b = Vec::new();
            for (j, &a) in m.gen_twists().iter().enumerate() {
                let k = d - a as i64;
                if k < 0 {
                    continue;
                }
                let mut ms: Vec<Monomial> = monomials_of_degree(ring, k as u32)
                    .into_iter()
                    .filter(|x| !leads[j].iter().any(|l| l.divides(x)))
                    .collect();
                ms.sort_by(|x, y| ring.cmp_mon(y, x));
                b.extend(ms.into_iter().map(|x| (j as u32, x)));
            }
            index.push(b.iter().enumerate().map(|(i, x)| (*x, i as u32)).collect());
            bases.push(b);
        }
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let mut actions = Vec::with_capacity(weights.len());
        for (v, &w) in weights.iter().enumerate() {
            let x = ring.var_monomial(v);
            let mut per_deg = Vec::with_capacity(dims.len());
            for (k, b) in bases.iter().enumerate() {
                let tk = k + w as usize;
                let rows = b
                    .iter()
                    .map(|&(j, mon)| {
                        if tk >= bases.len() {
                            return SparseVec::new();
                        }
                        let vec = FreeVector::from_terms(ring, &space, vec![VTerm { mon: mon.mul(&x), comp: j, coeff: 1 }]);
                        let nf = e.normal_form(&vec);
                        let mut out: SparseVec = nf.terms().iter().map(|t| (index[tk][&(t.comp, t.mon)], t.coeff)).collect();
                        out.sort_unstable_by_key(|e| e.0);
                        out
                    })
                    .collect();
                per_deg.push(rows);
            }
            actions.push(per_deg);
        }
        Ok(FiniteLengthRealization { field: ring.field(), weights, lo, dims, actions })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, d: i64) -> usize {
        if d < self.lo || d > self.hi() {
            0
        } else {
            self.dims[(d - self.lo) as usize]
        }
    }

    pub fn length(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Nonzero `(degree, dim)` pairs.
    pub fn graded_dims(&self) -> Vec<(i64, u64)> {
        (self.lo..=self.hi()).filter(|&d| self.dim(d) > 0).map(|d| (d, self.dim(d) as u64)).collect()
    }

    /// `x_v` applied to a vector of degree `d`.
    pub fn act_var(&self, v: usize, d: i64, x: &SparseVec) -> SparseVec {
        let w = self.weights[v] as i64;
        if self.dim(d) == 0 || self.dim(d + w) == 0 {
            return SparseVec::new();
        }
        let rows = &self.actions[v][(d - self.lo) as usize];
        let mut acc = HashMap::new();
        for &(i, c) in x {
            add_into(self.field, &mut acc, &rows[i as usize], c);
        }
        collect(acc)
    }

    pub fn act_monomial(&self, m: &Monomial, d: i64, x: &SparseVec) -> SparseVec {
        let mut cur = x.clone();
        let mut deg = d;
        for v in 0..self.weights.len() {
            for _ in 0..m.exponent(v) {
                if cur.is_empty() {
                    return cur;
                }
                cur = self.act_var(v, deg, &cur);
                deg += self.weights[v] as i64;
            }
        }
        cur
    }

    pub fn act_poly(&self, f: &Polynomial, d: i64, x: &SparseVec) -> SparseVec {
        let mut acc = HashMap::new();
        for &(m, c) in f.terms() {
            add_into(self.field, &mut acc, &self.act_monomial(&m, d, x), c);
        }
        collect(acc)
    }

    /// Pairwise commutation of the variable actions.
    pub fn actions_commute(&self) -> bool {
        let n = self.weights.len();
        for d in self.lo..=self.hi() {
            for i in 0..self.dim(d) {
                let e: SparseVec = vec![(i as u32, 1)];
                for a in 0..n {
                    for b in a + 1..n {
                        let ab = self.act_var(b, d + self.weights[a] as i64, &self.act_var(a, d, &e));
                        let ba = self.act_var(a, d + self.weights[b] as i64, &self.act_var(b, d, &e));
                        if ab != ba {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Every defining relation acts as zero.
    pub fn satisfies(&self, relations: &[Polynomial]) -> bool {
        (self.lo..=self.hi()).all(|d| {
            (0..self.dim(d)).all(|i| relations.iter().all(|f| self.act_poly(f, d, &vec![(i as u32, 1)]).is_empty()))
        })
    }

    /// Graded vector-space dual: `(M^∨)_d = Hom(M_{-d}, k)` with transposed actions.
    pub fn dual(&self) -> Self {
        let n = self.dims.len();
        let lo = -self.hi();
        let dims: Vec<usize> = self.dims.iter().rev().copied().collect();
        let mut actions = Vec::with_capacity(self.weights.len());
        for (v, &w) in self.weights.iter().enumerate() {
            let w = w as usize;
            let mut per_deg: Vec<Vec<SparseVec>> = dims.iter().map(|&dm| vec![SparseVec::new(); dm]).collect();
            // x_v on M_e -> M_{e+w} transposes to M^∨_{-e-w} -> M^∨_{-e}
            for k in 0..n {
                if k + w >= n {
                    continue;
                }
                let rows = &self.actions[v][k];
                let src = n - 1 - (k + w);
                let mut cols: Vec<SparseVec> = vec![SparseVec::new(); dims[src]];
                for (i, row) in rows.iter().enumerate() {
                    for &(j, c) in row {
                        cols[j as usize].push((i as u32, c));
                    }
                }
                per_deg[src] = cols;
            }
            actions.push(per_deg);
        }
        FiniteLengthRealization { field: self.field, weights: self.weights.clone(), lo, dims, actions }
    }

    /// Minimal presentation over `ctx` of the module this realizes.
    pub fn present(&self, ctx: &Ctx) -> Result<PresentedModule> {
        let ring = ctx.poly();
        if ring.weights() != self.weights.as_slice() {
            return Err(Error::RingMismatch);
        }
        if self.length() == 0 {
            return Ok(PresentedModule::zero(ctx));
        }
        let f = self.field;
        let maxw = *self.weights.iter().max().unwrap_or(&1) as i64;
        // generators: complement of the part generated from below
        let mut gens: Vec<(i64, SparseVec)> = Vec::new();
        for d in self.lo..=self.hi() {
            let mut e = Echelon::new(f, self.dim(d));
            for (v, &w) in self.weights.iter().enumerate() {
                let src = d - w as i64;
                for i in 0..self.dim(src) {
                    e.insert(&self.act_var(v, src, &vec![(i as u32, 1)]), &[]);
                }
            }
            for i in 0..self.dim(d) {
                let unit = vec![(i as u32, 1)];
                if let Reduced::Independent(_) = e.insert(&unit, &[]) {
                    gens.push((d, unit));
                }
            }
        }
        let twists: Vec<i32> = gens.iter().map(|g| g.0 as i32).collect();
        let space = FreeModuleSpec::new(twists.clone());
        ctx.limits().check_rank(gens.len(), "finite-length presentation")?;
        // relations: minimal generators of the kernel of ⊕R(-g) → M, degree by degree
        let mut rels = Vec::new();
        let lo = self.lo;
        let hi = self.hi() + maxw;
        let mut by_deg: HashMap<i64, (Vec<(u32, Monomial)>, Vec<SparseVec>)> = HashMap::new();
        for d in lo..=hi {
            let mut fb: Vec<(u32, Monomial)> = Vec::new();
            for (g, &(gd, _)) in gens.iter().enumerate() {
                for s in ctx.basis_in_degree(d - gd) {
                    fb.push((g as u32, s));
                }
            }
            let index: HashMap<(u32, Monomial), u32> = fb.iter().enumerate().map(|(i, x)| (*x, i as u32)).collect();
            let images: Vec<SparseVec> = fb
                .iter()
                .map(|&(g, s)| {
                    let (gd, ref gv) = gens[g as usize];
                    self.act_monomial(&s, gd, gv)
                })
                .collect();
            let kern = left_kernel(f, self.dim(d), &images);
            let mut e = Echelon::new(f, fb.len());
            for (v, &w) in self.weights.iter().enumerate() {
                let Some((pb, pk)) = by_deg.get(&(d - w as i64)) else { continue };
                let x = ring.var_monomial(v);
                for row in pk {
                    let mut acc: HashMap<u32, Coeff> = HashMap::new();
                    for &(i, c) in row {
                        let (g, s) = pb[i as usize];
                        let p = ctx.reduce(&ring.from_terms(vec![(s.mul(&x), 1)]));
                        for &(m, a) in p.terms() {
                            let e = acc.entry(index[&(g, m)]).or_insert(0);
                            *e = f.add(*e, f.mul(a, c));
                        }
                    }
                    e.insert(&collect(acc), &[]);
                }
            }
            for row in &kern {
                if let Reduced::Independent(_) = e.insert(row, &[]) {
                    let terms = row
                        .iter()
                        .map(|&(i, c)| {
                            let (g, s) = fb[i as usize];
                            VTerm { mon: s, comp: g, coeff: c }
                        })
                        .collect();
                    rels.push(FreeVector::from_terms(ring, &space, terms));
                }
            }
            by_deg.insert(d, (fb, kern));
        }
        let rel_twists = rels.iter().map(|r| r.degree(&space).unwrap() as i32).collect();
        Ok(PresentedModule::raw(ctx, space, rel_twists, rels, true))
    }
}

impl PresentedModule {
    /// Graded Matlis dual of a finite-length module.
    pub fn matlis_dual(&self) -> Result<PresentedModule> {
        FiniteLengthRealization::of_module(self)?.dual().present(self.ctx())
    }

    /// Elements killed by every variable.
    pub fn socle(&self) -> Result<PresentedModule> {
        let ctx = self.ctx();
        let ring = ctx.poly();
        let mut target = PresentedModule::zero(ctx);
        for &w in ring.weights() {
            target = direct_sum(&target, &self.twist(w as i32))?;
        }
        let g = self.num_gens() as u32;
        let images = (0..g)
            .map(|j| {
                let terms = (0..ring.nvars())
                    .map(|v| VTerm { mon: ring.var_monomial(v), comp: v as u32 * g + j, coeff: 1 })
                    .collect();
                FreeVector::from_terms(ring, target.space(), terms)
            })
            .collect();
        ModuleMap::unchecked(self, &target, images)?.kernel()
    }
}

/// Socle of the ring itself.
pub fn socle(ctx: &Ctx) -> Result<PresentedModule> {
    PresentedModule::free(ctx, vec![0]).socle()
}
