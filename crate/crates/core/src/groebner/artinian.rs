//! Finite-dimensional graded algebras: standard-monomial bases and
//! multiplication tables, used for degree-wise linear algebra.

use std::collections::HashMap;

use crate::algebra::field::Coeff;
use crate::algebra::linalg::SparseVec;
use crate::algebra::monomial::Monomial;
use crate::algebra::poly::{PolyRing, Polynomial, Term};
use crate::algebra::vector::{FreeModuleSpec, FreeVector, VTerm};

use super::reduce::reduce_terms;

#[derive(Clone, Debug)]
pub struct Artinian {
    /// Standard monomials by degree.
    by_degree: Vec<Vec<Monomial>>,
    index: HashMap<Monomial, usize>,
    flat: Vec<Monomial>,
    /// `table[a][b]` = normal form of `flat[a] * flat[b]`.
    table: Vec<Vec<Vec<Term>>>,
}

impl Artinian {
    /// Builds the data from the reduced Gröbner basis of a zero-dimensional ideal.
    pub fn new(ring: &PolyRing, gb: &[Polynomial]) -> Self {
        let leads: Vec<Monomial> = gb.iter().map(|g| g.terms()[0].0).collect();
        let mut by_degree: Vec<Vec<Monomial>> = vec![vec![Monomial::ONE]];
        loop {
            let prev = by_degree.last().unwrap();
            let mut next: Vec<Monomial> = Vec::new();
            for m in prev {
                for v in 0..ring.nvars() {
                    let n = m.mul(&ring.var_monomial(v));
                    if !leads.iter().any(|l| l.divides(&n)) && !next.contains(&n) {
                        next.push(n);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_by(|a, b| ring.cmp_mon(b, a));
            by_degree.push(next);
        }
        // with non-unit weights the loop above is indexed by "steps", regroup
        let mut flat: Vec<Monomial> = by_degree.concat();
        flat.sort_by(|a, b| a.degree().cmp(&b.degree()).then(ring.cmp_mon(b, a)));
        let top = flat.last().map_or(0, |m| m.degree()) as usize;
        let mut by_degree = vec![Vec::new(); top + 1];
        for m in &flat {
            by_degree[m.degree() as usize].push(*m);
        }
        let index: HashMap<Monomial, usize> = flat.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let table = flat
            .iter()
            .map(|a| {
                flat.iter()
                    .map(|b| reduce_terms(ring, gb, vec![(a.mul(b), 1)]))
                    .collect()
            })
            .collect();
        Artinian { by_degree, index, flat, table }
    }

    /// Largest degree of a nonzero element (the socle degree when Gorenstein).
    pub fn top_degree(&self) -> i64 {
        self.by_degree.len() as i64 - 1
    }

    pub fn length(&self) -> usize {
        self.flat.len()
    }

    pub fn basis(&self, degree: i64) -> &[Monomial] {
        if degree < 0 || degree as usize >= self.by_degree.len() {
            &[]
        } else {
            &self.by_degree[degree as usize]
        }
    }

    pub fn all(&self) -> &[Monomial] {
        &self.flat
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// `s * v` for a standard monomial `s` and a vector in normal form.
    pub fn mul_vector(
        &self,
        ring: &PolyRing,
        space: &FreeModuleSpec,
        s: &Monomial,
        v: &FreeVector,
    ) -> FreeVector {
        let si = self.index[s];
        let f = ring.field();
        let mut out: Vec<VTerm> = Vec::new();
        for t in v.terms() {
            let ti = self.index[&t.mon];
            for &(m, c) in &self.table[si][ti] {
                out.push(VTerm { mon: m, comp: t.comp, coeff: f.mul(c, t.coeff) });
            }
        }
        FreeVector::from_terms(ring, space, out)
    }
}

/// Coordinates of a graded free module `⊕ R(-a_j)` in one degree.
pub(crate) struct DegreeBasis {
    pub elems: Vec<(u32, Monomial)>,
    index: HashMap<(u32, Monomial), u32>,
}

impl DegreeBasis {
    pub fn new(art: &Artinian, twists: &[i32], degree: i64) -> Self {
        let mut elems = Vec::new();
        for (j, &a) in twists.iter().enumerate() {
            for m in art.basis(degree - a as i64) {
                elems.push((j as u32, *m));
            }
        }
        let index = elems.iter().enumerate().map(|(i, e)| (*e, i as u32)).collect();
        DegreeBasis { elems, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// Coordinates of a homogeneous vector of this degree.
    pub fn coords(&self, v: &FreeVector) -> SparseVec {
        let mut out: SparseVec = v
            .terms()
            .iter()
            .map(|t| (self.index[&(t.comp, t.mon)], t.coeff))
            .collect();
        out.sort_unstable_by_key(|e| e.0);
        out
    }

    pub fn vector(&self, ring: &PolyRing, space: &FreeModuleSpec, c: &[(u32, Coeff)]) -> FreeVector {
        let terms = c
            .iter()
            .map(|&(i, coeff)| {
                let (comp, mon) = self.elems[i as usize];
                VTerm { mon, comp, coeff }
            })
            .collect();
        FreeVector::from_terms(ring, space, terms)
    }
}
