//! Normal forms modulo the defining ideal of a quotient ring.

use crate::algebra::poly::{PolyRing, Polynomial, Term};
use crate::algebra::vector::{FreeModuleSpec, FreeVector, VTerm};

/// Full reduction of a sorted term list by a Gröbner basis of monic polynomials.
pub(crate) fn reduce_terms(ring: &PolyRing, gb: &[Polynomial], terms: Vec<Term>) -> Vec<Term> {
    if gb.is_empty() {
        return terms;
    }
    let f = ring.field();
    let mut w = terms;
    let mut idx = 0;
    while idx < w.len() {
        let (m, c) = w[idx];
        let div = gb.iter().find(|g| g.terms()[0].0.divides(&m));
        match div {
            Some(g) => {
                let q = g.terms()[0].0.quotient_of(&m);
                let shifted: Vec<Term> = g.terms().iter().map(|&(gm, gc)| (gm.mul(&q), gc)).collect();
                w = crate::algebra::poly::add_scaled(ring, &w, &shifted, f.neg(c));
            }
            None => idx += 1,
        }
    }
    w
}

pub(crate) fn reduce_poly(ring: &PolyRing, gb: &[Polynomial], p: &Polynomial) -> Polynomial {
    ring.from_terms(reduce_terms(ring, gb, p.terms().to_vec()))
}

/// Reduces every component of `v` modulo the ideal.
pub(crate) fn reduce_vector(
    ring: &PolyRing,
    space: &FreeModuleSpec,
    gb: &[Polynomial],
    v: &FreeVector,
) -> FreeVector {
    if gb.is_empty() || v.is_zero() {
        return v.clone();
    }
    let needs = v
        .terms()
        .iter()
        .any(|t| gb.iter().any(|g| g.terms()[0].0.divides(&t.mon)));
    if !needs {
        return v.clone();
    }
    let mut by_comp: std::collections::BTreeMap<u32, Vec<Term>> = Default::default();
    for t in v.terms() {
        by_comp.entry(t.comp).or_default().push((t.mon, t.coeff));
    }
    let mut out = Vec::with_capacity(v.len());
    for (comp, terms) in by_comp {
        let terms = crate::algebra::poly::normalize_terms(ring, terms);
        for (mon, coeff) in reduce_terms(ring, gb, terms) {
            out.push(VTerm { mon, comp, coeff });
        }
    }
    FreeVector::from_terms(ring, space, out)
}
