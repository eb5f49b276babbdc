use std::cmp::Ordering;
use std::sync::Arc;

use super::field::Coeff;
use super::monomial::Monomial;
use super::poly::{PolyRing, Polynomial, Term};
use crate::error::{Error, Result};

/// One term `coeff * mon * e_comp` of a free-module element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VTerm {
    pub mon: Monomial,
    pub comp: u32,
    pub coeff: Coeff,
}

/// How module terms are compared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleOrder {
    /// Twisted total degree, then the ring order, then smaller component first.
    TermOverPosition,
    /// `m e_i > n e_j` iff `m*lead_i > n*lead_j` in the frame's base module,
    /// ties broken towards the smaller index.
    Schreyer(Arc<SchreyerFrame>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreyerFrame {
    pub base: FreeModuleSpec,
    pub leads: Vec<(Monomial, u32)>,
}

/// A twisted free module `⊕ R(-a_j)` together with a module order.
/// Basis element `e_j` sits in degree `a_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleSpec {
    twists: Vec<i32>,
    order: ModuleOrder,
}

impl FreeModuleSpec {
    pub fn new(twists: Vec<i32>) -> Self {
        FreeModuleSpec { twists, order: ModuleOrder::TermOverPosition }
    }

    pub fn schreyer(twists: Vec<i32>, frame: SchreyerFrame) -> Self {
        FreeModuleSpec { twists, order: ModuleOrder::Schreyer(Arc::new(frame)) }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i32] {
        &self.twists
    }

    #[inline]
    pub fn twist(&self, comp: u32) -> i32 {
        self.twists[comp as usize]
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    /// Same twists with the default term-over-position order.
    pub fn top(&self) -> FreeModuleSpec {
        FreeModuleSpec::new(self.twists.clone())
    }

    #[inline]
    pub fn term_degree(&self, mon: &Monomial, comp: u32) -> i64 {
        mon.degree() as i64 + self.twists[comp as usize] as i64
    }

    #[inline]
    pub fn cmp_terms(&self, ring: &PolyRing, a: (&Monomial, u32), b: (&Monomial, u32)) -> Ordering {
        match &self.order {
            ModuleOrder::TermOverPosition => {
                let da = self.term_degree(a.0, a.1);
                let db = self.term_degree(b.0, b.1);
                da.cmp(&db)
                    .then_with(|| ring.cmp_mon(a.0, b.0))
                    .then_with(|| b.1.cmp(&a.1))
            }
            ModuleOrder::Schreyer(frame) => {
                let la = frame.leads[a.1 as usize];
                let lb = frame.leads[b.1 as usize];
                let ma = a.0.mul(&la.0);
                let mb = b.0.mul(&lb.0);
                frame
                    .base
                    .cmp_terms(ring, (&ma, la.1), (&mb, lb.1))
                    .then_with(|| b.1.cmp(&a.1))
            }
        }
    }
}

/// Sparse element of a free module; terms strictly descending in the module
/// order of the space it belongs to. Spaces are passed explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreeVector {
    terms: Vec<VTerm>,
}

impl FreeVector {
    pub fn zero() -> Self {
        FreeVector { terms: Vec::new() }
    }

    /// Trusts the caller that `terms` are sorted for the intended space.
    pub(crate) fn from_sorted(terms: Vec<VTerm>) -> Self {
        FreeVector { terms }
    }

    pub fn from_terms(ring: &PolyRing, space: &FreeModuleSpec, mut terms: Vec<VTerm>) -> Self {
        terms.sort_by(|a, b| space.cmp_terms(ring, (&b.mon, b.comp), (&a.mon, a.comp)));
        let field = ring.field();
        let mut out: Vec<VTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mon == t.mon && last.comp == t.comp => {
                    last.coeff = field.add(last.coeff, t.coeff)
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coeff != 0);
        FreeVector { terms: out }
    }

    /// Builds `Σ f_j e_j` from `(component, polynomial)` entries.
    pub fn from_entries(
        ring: &PolyRing,
        space: &FreeModuleSpec,
        entries: &[(usize, Polynomial)],
    ) -> Result<Self> {
        let mut terms = Vec::new();
        for (comp, poly) in entries {
            if *comp >= space.rank() {
                return Err(Error::Incompatible(format!(
                    "component {comp} out of range for rank {}",
                    space.rank()
                )));
            }
            terms.extend(poly.terms().iter().map(|&(mon, coeff)| VTerm {
                mon,
                comp: *comp as u32,
                coeff,
            }));
        }
        Ok(Self::from_terms(ring, space, terms))
    }

    /// Unit vector `e_comp`.
    pub fn basis(comp: usize) -> Self {
        FreeVector { terms: vec![VTerm { mon: Monomial::ONE, comp: comp as u32, coeff: 1 }] }
    }

    pub fn terms(&self) -> &[VTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&VTerm> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Twisted degree of the leading term.
    pub fn degree(&self, space: &FreeModuleSpec) -> Option<i64> {
        self.lead().map(|t| space.term_degree(&t.mon, t.comp))
    }

    pub fn is_homogeneous(&self, space: &FreeModuleSpec) -> bool {
        match self.degree(space) {
            None => true,
            Some(d) => self.terms.iter().all(|t| space.term_degree(&t.mon, t.comp) == d),
        }
    }

    /// Polynomial sitting in component `comp`, in the ring's term order.
    pub fn entry(&self, ring: &PolyRing, comp: usize) -> Polynomial {
        ring.from_terms(self.entry_terms(comp))
    }

    pub(crate) fn entry_terms(&self, comp: usize) -> Vec<Term> {
        self.terms
            .iter()
            .filter(|t| t.comp as usize == comp)
            .map(|t| (t.mon, t.coeff))
            .collect()
    }

    pub fn entries(&self, ring: &PolyRing) -> Vec<(usize, Polynomial)> {
        let mut comps: Vec<u32> = self.terms.iter().map(|t| t.comp).collect();
        comps.sort_unstable();
        comps.dedup();
        comps.into_iter().map(|c| (c as usize, self.entry(ring, c as usize))).collect()
    }

    /// Whether every term lies in one component.
    pub fn single_component(&self) -> Option<u32> {
        let c = self.terms.first()?.comp;
        self.terms.iter().all(|t| t.comp == c).then_some(c)
    }

    pub fn scale(&self, ring: &PolyRing, c: Coeff) -> FreeVector {
        if c == 0 {
            return FreeVector::zero();
        }
        let f = ring.field();
        FreeVector {
            terms: self.terms.iter().map(|t| VTerm { coeff: f.mul(t.coeff, c), ..*t }).collect(),
        }
    }

    /// `c * mon * self`; order-preserving because module orders are multiplicative.
    pub fn mul_term(&self, ring: &PolyRing, mon: &Monomial, c: Coeff) -> FreeVector {
        if c == 0 {
            return FreeVector::zero();
        }
        let f = ring.field();
        FreeVector {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm { mon: t.mon.mul(mon), comp: t.comp, coeff: f.mul(t.coeff, c) })
                .collect(),
        }
    }

    /// `self + c * mon * other`, merged in the order of `space`.
    pub fn add_mul_term(
        &self,
        ring: &PolyRing,
        space: &FreeModuleSpec,
        other: &FreeVector,
        mon: &Monomial,
        c: Coeff,
    ) -> FreeVector {
        let f = ring.field();
        let a = &self.terms;
        let b = &other.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut bj = b.first().map(|t| (t.mon.mul(mon), t));
        while i < a.len() {
            let Some((bm, bt)) = bj else { break };
            match space.cmp_terms(ring, (&a[i].mon, a[i].comp), (&bm, bt.comp)) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                    continue;
                }
                Ordering::Less => {
                    let v = f.mul(bt.coeff, c);
                    if v != 0 {
                        out.push(VTerm { mon: bm, comp: bt.comp, coeff: v });
                    }
                }
                Ordering::Equal => {
                    let v = f.add(a[i].coeff, f.mul(bt.coeff, c));
                    if v != 0 {
                        out.push(VTerm { mon: bm, comp: bt.comp, coeff: v });
                    }
                    i += 1;
                }
            }
            j += 1;
            bj = b.get(j).map(|t| (t.mon.mul(mon), t));
        }
        out.extend_from_slice(&a[i..]);
        while let Some((bm, bt)) = bj {
            let v = f.mul(bt.coeff, c);
            if v != 0 {
                out.push(VTerm { mon: bm, comp: bt.comp, coeff: v });
            }
            j += 1;
            bj = b.get(j).map(|t| (t.mon.mul(mon), t));
        }
        FreeVector { terms: out }
    }

    pub fn add(&self, ring: &PolyRing, space: &FreeModuleSpec, other: &FreeVector) -> FreeVector {
        self.add_mul_term(ring, space, other, &Monomial::ONE, 1)
    }

    pub fn sub(&self, ring: &PolyRing, space: &FreeModuleSpec, other: &FreeVector) -> FreeVector {
        let minus = ring.field().neg(1);
        self.add_mul_term(ring, space, other, &Monomial::ONE, minus)
    }

    /// `self + p * other` for a polynomial `p` given as sorted terms.
    pub fn add_poly_mul(
        &self,
        ring: &PolyRing,
        space: &FreeModuleSpec,
        other: &FreeVector,
        p: &[Term],
    ) -> FreeVector {
        if p.is_empty() || other.is_zero() {
            return self.clone();
        }
        let mut parts: Vec<VTerm> = Vec::with_capacity(self.len() + p.len() * other.len());
        parts.extend_from_slice(&self.terms);
        for &(m, c) in p {
            for t in &other.terms {
                parts.push(VTerm {
                    mon: t.mon.mul(&m),
                    comp: t.comp,
                    coeff: ring.field().mul(t.coeff, c),
                });
            }
        }
        FreeVector::from_terms(ring, space, parts)
    }

    /// Re-sorts for a different order on the same components.
    pub fn reorder(&self, ring: &PolyRing, space: &FreeModuleSpec) -> FreeVector {
        FreeVector::from_terms(ring, space, self.terms.clone())
    }

    /// Renumbers components via `map` (old index -> new index) and re-sorts.
    pub fn remap(&self, ring: &PolyRing, space: &FreeModuleSpec, map: &[u32]) -> FreeVector {
        let terms = self.terms.iter().map(|t| VTerm { comp: map[t.comp as usize], ..*t }).collect();
        FreeVector::from_terms(ring, space, terms)
    }

    /// Keeps components in `[lo, hi)` and shifts them down by `lo`.
    pub fn slice_components(&self, lo: u32, hi: u32) -> FreeVector {
        FreeVector {
            terms: self
                .terms
                .iter()
                .filter(|t| t.comp >= lo && t.comp < hi)
                .map(|t| VTerm { comp: t.comp - lo, ..*t })
                .collect(),
        }
    }

    pub fn max_component(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.comp).max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;
    use crate::algebra::parse::parse_polynomial;

    fn ring() -> PolyRing {
        PolyRing::new(FieldSpec::default_field(), vec!["x".into(), "y".into()]).unwrap()
    }

    #[test]
    fn entries_round_trip() {
        let r = ring();
        let sp = FreeModuleSpec::new(vec![0, 1]);
        let f = parse_polynomial("x^2 + x*y", &r).unwrap();
        let g = parse_polynomial("y", &r).unwrap();
        let v = FreeVector::from_entries(&r, &sp, &[(0, f.clone()), (1, g.clone())]).unwrap();
        assert!(v.is_homogeneous(&sp));
        assert_eq!(v.degree(&sp), Some(2));
        assert_eq!(v.entry(&r, 0), f);
        assert_eq!(v.entry(&r, 1), g);
        assert_eq!(v.entries(&r).len(), 2);
    }

    #[test]
    fn add_cancels() {
        let r = ring();
        let sp = FreeModuleSpec::new(vec![0, 0]);
        let v = FreeVector::from_entries(
            &r,
            &sp,
            &[(0, parse_polynomial("x", &r).unwrap()), (1, parse_polynomial("y", &r).unwrap())],
        )
        .unwrap();
        assert!(v.sub(&r, &sp, &v).is_zero());
        let w = v.add_mul_term(&r, &sp, &v, &r.var_monomial(0), 1);
        assert_eq!(w.len(), 4);
    }

    #[test]
    fn top_order_prefers_smaller_component() {
        let r = ring();
        let sp = FreeModuleSpec::new(vec![0, 0]);
        let x = r.var_monomial(0);
        assert_eq!(sp.cmp_terms(&r, (&x, 0), (&x, 1)), Ordering::Greater);
        let twisted = FreeModuleSpec::new(vec![0, 2]);
        // 1*e_1 has degree 2 > x*e_0 of degree 1
        assert_eq!(twisted.cmp_terms(&r, (&Monomial::ONE, 1), (&x, 0)), Ordering::Greater);
    }
}
