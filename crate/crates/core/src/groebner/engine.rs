//! Homogeneous Buchberger algorithm over twisted free modules.
//!
//! Elements are processed degree by degree (normal selection). Every element
//! may carry a cofactor: its expression in a second free module (the
//! "tracked" space), reduced modulo the defining ideal. Zero reductions then
//! yield syzygies of the tracked generators; untracked generators contribute
//! nothing to the cofactors, so the syzygies come out already projected.

use std::collections::BTreeMap;

use crate::algebra::monomial::Monomial;
use crate::algebra::poly::{PolyRing, Polynomial, Term};
use crate::algebra::vector::{FreeModuleSpec, FreeVector, VTerm};
use crate::error::Result;

use super::limits::Limits;
use super::reduce::reduce_vector;

#[derive(Clone, Debug)]
pub struct Elem {
    pub v: FreeVector,
    pub lead: Monomial,
    pub comp: u32,
    pub cof: Option<FreeVector>,
    pub preset: bool,
    single: bool,
}

#[derive(Clone, Debug)]
struct Pair {
    lcm: Monomial,
    comp: u32,
    i: u32,
    j: u32,
}

pub struct Engine<'a> {
    ring: &'a PolyRing,
    space: FreeModuleSpec,
    ideal: &'a [Polynomial],
    track: Option<FreeModuleSpec>,
    limits: &'a Limits,
    elems: Vec<Elem>,
    by_comp: Vec<Vec<u32>>,
    pairs: BTreeMap<i64, Vec<Pair>>,
    gens: BTreeMap<i64, Vec<(FreeVector, Option<FreeVector>)>>,
    syz: Vec<FreeVector>,
    steps: u32,
}

impl<'a> Engine<'a> {
    pub fn new(ring: &'a PolyRing, space: FreeModuleSpec, limits: &'a Limits) -> Self {
        let rank = space.rank();
        Engine {
            ring,
            space,
            ideal: &[],
            track: None,
            limits,
            elems: Vec::new(),
            by_comp: vec![Vec::new(); rank],
            pairs: BTreeMap::new(),
            gens: BTreeMap::new(),
            syz: Vec::new(),
            steps: 0,
        }
    }

    /// Records cofactors in `track`; cofactors and syzygies are reduced
    /// modulo `ideal` (a monic Gröbner basis).
    pub fn tracking(mut self, track: FreeModuleSpec, ideal: &'a [Polynomial]) -> Self {
        self.track = Some(track);
        self.ideal = ideal;
        self
    }

    pub fn ring(&self) -> &PolyRing {
        self.ring
    }

    pub fn space(&self) -> &FreeModuleSpec {
        &self.space
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    /// Adds `g * e_j` for every `g` in `ideal_gb` and every component `j`.
    /// These form a Gröbner basis among themselves, so no pairs are formed
    /// between them.
    pub fn add_presets(&mut self, ideal_gb: &[Polynomial]) {
        for comp in 0..self.space.rank() as u32 {
            for g in ideal_gb {
                let terms = g.terms().iter().map(|&(mon, coeff)| VTerm { mon, comp, coeff }).collect();
                let v = FreeVector::from_terms(self.ring, &self.space, terms);
                self.insert(v, None, true);
            }
        }
    }

    /// Loads vectors already known to form a Gröbner basis (no pairs formed).
    pub fn load_basis(&mut self, basis: &[FreeVector]) {
        for v in basis.iter().filter(|v| !v.is_zero()) {
            self.insert(v.clone(), None, true);
        }
    }

    /// Queues an input generator (optionally with its cofactor).
    pub fn push(&mut self, v: FreeVector, cof: Option<FreeVector>) -> Result<()> {
        // untracked inputs still collect cofactors from tracked reducers
        let cof = if self.track.is_some() { Some(cof.unwrap_or_default()) } else { cof };
        match v.degree(&self.space) {
            None => {
                if let Some(c) = cof {
                    self.record_syzygy(c);
                }
            }
            Some(d) => {
                let top = v.terms().iter().map(|t| t.mon.degree()).max().unwrap_or(0);
                self.limits.check_degree(top)?;
                self.gens.entry(d).or_default().push((v, cof));
            }
        }
        Ok(())
    }

    /// Smallest degree with outstanding work.
    pub fn next_degree(&self) -> Option<i64> {
        let dp = self.pairs.keys().next().copied();
        let dg = self.gens.keys().next().copied();
        match (dp, dg) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Runs Buchberger's algorithm through degree `up_to` (everything if `None`).
    pub fn complete(&mut self, up_to: Option<i64>) -> Result<()> {
        while let Some(d) = self.next_degree() {
            if up_to.is_some_and(|u| d > u) {
                break;
            }
            if let Some(mut batch) = self.pairs.remove(&d) {
                let (ring, space) = (self.ring, &self.space);
                batch.sort_by(|a, b| {
                    space
                        .cmp_terms(ring, (&a.lcm, a.comp), (&b.lcm, b.comp))
                        .then(a.i.cmp(&b.i))
                        .then(a.j.cmp(&b.j))
                });
                for p in batch {
                    self.tick()?;
                    self.limits.check_degree(p.lcm.degree())?;
                    self.process_pair(&p);
                }
            }
            if self.pairs.contains_key(&d) {
                continue;
            }
            if let Some(batch) = self.gens.remove(&d) {
                for (v, cof) in batch {
                    self.tick()?;
                    let (r, c) = self.reduce(v, cof);
                    self.absorb(r, c);
                }
            }
        }
        Ok(())
    }

    fn tick(&mut self) -> Result<()> {
        self.steps = self.steps.wrapping_add(1);
        if self.steps % 32 == 0 {
            self.limits.check_time()?;
        }
        Ok(())
    }

    /// Inserts a reduced vector, or records the syzygy if it vanished.
    fn absorb(&mut self, r: FreeVector, cof: Option<FreeVector>) {
        if r.is_zero() {
            if let Some(c) = cof {
                self.record_syzygy(c);
            }
        } else {
            self.insert(r, cof, false);
        }
    }

    /// Reduces a candidate of degree `d` after `complete(Some(d))`; inserts it
    /// and returns its normal form when that is nonzero.
    pub fn try_insert(&mut self, v: FreeVector) -> Option<FreeVector> {
        let (r, _) = self.reduce(v, None);
        if r.is_zero() {
            None
        } else {
            self.insert(r.clone(), None, false);
            Some(r)
        }
    }

    fn record_syzygy(&mut self, c: FreeVector) {
        let track = self.track.as_ref().expect("syzygy without tracking");
        let c = reduce_vector(self.ring, track, self.ideal, &c);
        if !c.is_zero() {
            self.syz.push(c);
        }
    }

    fn process_pair(&mut self, p: &Pair) {
        let (ei, ej) = (&self.elems[p.i as usize], &self.elems[p.j as usize]);
        let qi = ei.lead.quotient_of(&p.lcm);
        let qj = ej.lead.quotient_of(&p.lcm);
        let minus = self.ring.field().neg(1);
        let s = ei.v.mul_term(self.ring, &qi, 1).add_mul_term(self.ring, &self.space, &ej.v, &qj, minus);
        let cof = self.track.as_ref().map(|ts| {
            let mut c = FreeVector::zero();
            if let Some(ci) = &ei.cof {
                c = ci.mul_term(self.ring, &qi, 1);
            }
            if let Some(cj) = &ej.cof {
                c = c.add_mul_term(self.ring, ts, cj, &qj, minus);
            }
            c
        });
        let (r, c) = self.reduce(s, cof);
        self.absorb(r, c);
    }

    fn find_divisor(&self, mon: &Monomial, comp: u32) -> Option<&Elem> {
        self.by_comp[comp as usize]
            .iter()
            .map(|&k| &self.elems[k as usize])
            .find(|e| e.lead.divides(mon))
    }

    /// Full reduction; the cofactor (if any) is updated alongside.
    pub fn reduce(
        &self,
        v: FreeVector,
        mut cof: Option<FreeVector>,
    ) -> (FreeVector, Option<FreeVector>) {
        let f = self.ring.field();
        let mut w = v;
        let mut idx = 0;
        while idx < w.len() {
            let t = w.terms()[idx];
            match self.find_divisor(&t.mon, t.comp) {
                Some(e) => {
                    let q = e.lead.quotient_of(&t.mon);
                    let c = f.neg(t.coeff);
                    w = w.add_mul_term(self.ring, &self.space, &e.v, &q, c);
                    if let (Some(acc), Some(ec), Some(ts)) = (cof.as_mut(), &e.cof, &self.track) {
                        *acc = acc.add_mul_term(self.ring, ts, ec, &q, c);
                    }
                }
                None => idx += 1,
            }
        }
        if let (Some(c), Some(ts)) = (cof.as_mut(), &self.track) {
            *c = reduce_vector(self.ring, ts, self.ideal, c);
        }
        (w, cof)
    }

    /// Normal form of `v`.
    pub fn normal_form(&self, v: &FreeVector) -> FreeVector {
        self.reduce(v.clone(), None).0
    }

    /// Coefficients `c` with `v = Σ c_i g_i` over the tracked generators,
    /// modulo untracked ones; `None` if `v` is not in the submodule.
    pub fn lift(&self, v: &FreeVector) -> Option<FreeVector> {
        let ts = self.track.as_ref().expect("lift without tracking");
        let (r, c) = self.reduce(v.clone(), Some(FreeVector::zero()));
        if !r.is_zero() {
            return None;
        }
        let c = c.unwrap_or_default();
        Some(c.scale(self.ring, self.ring.field().neg(1)).reorder(self.ring, ts))
    }

    fn insert(&mut self, v: FreeVector, cof: Option<FreeVector>, preset: bool) {
        let f = self.ring.field();
        let lead = *v.lead().expect("inserting zero");
        let inv = f.inv(lead.coeff);
        let (v, cof) = if lead.coeff == 1 {
            (v, cof)
        } else {
            (v.scale(self.ring, inv), cof.map(|c| c.scale(self.ring, inv)))
        };
        let k = self.elems.len() as u32;
        let comp = lead.comp;
        let elem = Elem {
            single: v.single_component().is_some(),
            v,
            lead: lead.mon,
            comp,
            cof,
            preset,
        };
        if !preset {
            self.update_pairs(k, &elem);
        }
        self.by_comp[comp as usize].push(k);
        self.elems.push(elem);
    }

    fn product_applies(&self, a: &Elem, b: &Elem) -> bool {
        a.single && b.single && a.lead.is_coprime(&b.lead)
    }

    fn update_pairs(&mut self, k: u32, ek: &Elem) {
        let ring = self.ring;
        let comp = ek.comp;
        // old pending pairs made redundant by the new leading term
        let elems = &self.elems;
        for ps in self.pairs.values_mut() {
            ps.retain(|p| {
                if p.comp != comp || !ek.lead.divides(&p.lcm) {
                    return true;
                }
                let li = ring.lcm(&elems[p.i as usize].lead, &ek.lead);
                let lj = ring.lcm(&elems[p.j as usize].lead, &ek.lead);
                li == p.lcm || lj == p.lcm
            });
        }
        self.pairs.retain(|_, ps| !ps.is_empty());

        let cands: Vec<(u32, Monomial)> = self.by_comp[comp as usize]
            .iter()
            .map(|&i| (i, ring.lcm(&self.elems[i as usize].lead, &ek.lead)))
            .collect();
        // drop (i,k) when some (j,k) has a strictly smaller lcm dividing it
        let mut keep: Vec<(u32, Monomial)> = cands
            .iter()
            .filter(|(_, l)| !cands.iter().any(|(_, m)| m != l && m.divides(l)))
            .cloned()
            .collect();
        // one representative per lcm, preferring a coprime pair
        keep.sort_by(|a, b| ring.cmp_mon(&a.1, &b.1).then(a.0.cmp(&b.0)));
        let mut i = 0;
        while i < keep.len() {
            let mut j = i;
            while j < keep.len() && keep[j].1 == keep[i].1 {
                j += 1;
            }
            let group = &keep[i..j];
            let coprime = group
                .iter()
                .find(|(g, _)| self.product_applies(&self.elems[*g as usize], ek));
            match coprime {
                Some(&(g, _)) => self.koszul(g, ek),
                None => {
                    let (g, lcm) = group[0];
                    let deg = lcm.degree() as i64 + self.space.twist(comp) as i64;
                    self.pairs.entry(deg).or_default().push(Pair { lcm, comp, i: g, j: k });
                }
            }
            i = j;
        }
    }

    /// Records `f_k cof_i - f_i cof_k` for a coprime single-component pair.
    fn koszul(&mut self, i: u32, ek: &Elem) {
        let Some(ts) = self.track.clone() else { return };
        let ei = &self.elems[i as usize];
        if ei.preset || ek.preset || (ei.cof.is_none() && ek.cof.is_none()) {
            return;
        }
        let fi: Vec<Term> = ei.v.terms().iter().map(|t| (t.mon, t.coeff)).collect();
        let fk: Vec<Term> = ek.v.terms().iter().map(|t| (t.mon, t.coeff)).collect();
        let minus = self.ring.field().neg(1);
        let mut s = FreeVector::zero();
        if let Some(ci) = &ei.cof {
            s = s.add_poly_mul(self.ring, &ts, ci, &fk);
        }
        if let Some(ck) = &ek.cof {
            let neg: Vec<Term> = fi.iter().map(|&(m, c)| (m, self.ring.field().mul(c, minus))).collect();
            s = s.add_poly_mul(self.ring, &ts, ck, &neg);
        }
        self.record_syzygy(s);
    }

    /// Syzygies found so far (in the tracked space).
    pub fn syzygies(&self) -> &[FreeVector] {
        &self.syz
    }

    pub fn take_syzygies(&mut self) -> Vec<FreeVector> {
        std::mem::take(&mut self.syz)
    }

    /// Leading monomials grouped by component.
    pub fn leading_monomials(&self) -> Vec<Vec<Monomial>> {
        self.by_comp
            .iter()
            .map(|ks| ks.iter().map(|&k| self.elems[k as usize].lead).collect())
            .collect()
    }

    /// Minimal, fully interreduced basis (monic), by increasing degree and
    /// decreasing leading term within a degree.
    pub fn reduced_basis(&self) -> Vec<FreeVector> {
        let mut keep: Vec<&Elem> = Vec::new();
        for (ie, e) in self.elems.iter().enumerate() {
            let redundant = self.elems.iter().enumerate().any(|(io, o)| {
                o.comp == e.comp && o.lead.divides(&e.lead) && (o.lead != e.lead || io < ie)
            });
            if !redundant {
                keep.push(e);
            }
        }
        let mut sub = Engine::new(self.ring, self.space.clone(), self.limits);
        for e in &keep {
            sub.by_comp[e.comp as usize].push(sub.elems.len() as u32);
            sub.elems.push((*e).clone());
        }
        let mut out: Vec<FreeVector> = Vec::with_capacity(keep.len());
        for idx in 0..sub.elems.len() {
            let e = &sub.elems[idx];
            let head = FreeVector::from_sorted(vec![e.v.terms()[0]]);
            let tail = FreeVector::from_sorted(e.v.terms()[1..].to_vec());
            let rt = sub.normal_form(&tail);
            out.push(head.add(self.ring, &self.space, &rt));
        }
        out.sort_by(|a, b| {
            let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
            let (dx, dy) = (self.space.term_degree(&x.mon, x.comp), self.space.term_degree(&y.mon, y.comp));
            dx.cmp(&dy).then_with(|| self.space.cmp_terms(self.ring, (&y.mon, y.comp), (&x.mon, x.comp)))
        });
        out
    }
}
