use std::fmt;
use std::sync::Arc;

use crate::algebra::field::FieldSpec;
use crate::algebra::monomial::Monomial;
use crate::algebra::parse::parse_homogeneous;
use crate::algebra::poly::{PolyRing, Polynomial};
use crate::algebra::vector::{FreeModuleSpec, FreeVector, VTerm};
use crate::error::{Error, Result};
use crate::resolution::cache::ResolutionCache;

use super::artinian::Artinian;
use super::engine::Engine;
use super::hilbert::HilbertSeries;
use super::limits::Limits;
use super::reduce::{reduce_poly, reduce_vector};

/// A graded quotient `S/I` of a polynomial ring, with the data every module
/// computation over it needs.
pub struct QuotientRing {
    poly: PolyRing,
    ideal: Vec<Polynomial>,
    hilbert: HilbertSeries,
    dim: i64,
    artinian: Option<Artinian>,
    limits: Limits,
    pub(crate) cache: ResolutionCache,
}

/// Shared handle to a ring context.
pub type Ctx = Arc<QuotientRing>;

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientRing({})", self.describe())
    }
}

impl QuotientRing {
    pub fn new(poly: PolyRing, relations: Vec<Polynomial>) -> Result<Ctx> {
        Self::with_limits(poly, relations, Limits::default())
    }

    pub fn with_limits(poly: PolyRing, relations: Vec<Polynomial>, limits: Limits) -> Result<Ctx> {
        for r in &relations {
            if !r.is_homogeneous() {
                return Err(Error::Inhomogeneous(poly.format(r)));
            }
        }
        let ideal = ideal_groebner(&poly, &relations, &limits)?;
        let leads = vec![ideal.iter().map(|g| g.terms()[0].0).collect()];
        let hilbert = HilbertSeries::of_monomial_module(poly.weights(), &[0], &leads);
        let dim = hilbert.dimension();
        let standard = poly.weights().iter().all(|&w| w == 1);
        let artinian = (dim == 0 && standard).then(|| Artinian::new(&poly, &ideal));
        Ok(Arc::new(QuotientRing {
            poly,
            ideal,
            hilbert,
            dim,
            artinian,
            limits,
            cache: ResolutionCache::default(),
        }))
    }

    /// The polynomial ring itself.
    pub fn polynomial(poly: PolyRing) -> Result<Ctx> {
        Self::new(poly, Vec::new())
    }

    /// Convenience constructor from variable names and relation strings.
    pub fn parse(p: u64, vars: &[&str], relations: &[&str]) -> Result<Ctx> {
        let poly = PolyRing::new(FieldSpec::new(p)?, vars.iter().map(|s| s.to_string()).collect())?;
        let rels = relations
            .iter()
            .map(|r| parse_homogeneous(r, &poly))
            .collect::<Result<Vec<_>>>()?;
        Self::new(poly, rels)
    }

    /// Same ring with different resource limits (and an empty cache).
    pub fn with_new_limits(&self, limits: Limits) -> Ctx {
        Arc::new(QuotientRing {
            poly: self.poly.clone(),
            ideal: self.ideal.clone(),
            hilbert: self.hilbert.clone(),
            dim: self.dim,
            artinian: self.artinian.clone(),
            limits,
            cache: ResolutionCache::default(),
        })
    }

    /// Same ring with the finite-dimensional fast path disabled, so every
    /// computation runs through the Gröbner engine.
    pub fn generic_backend(&self) -> Ctx {
        Arc::new(QuotientRing {
            poly: self.poly.clone(),
            ideal: self.ideal.clone(),
            hilbert: self.hilbert.clone(),
            dim: self.dim,
            artinian: None,
            limits: self.limits.clone(),
            cache: ResolutionCache::default(),
        })
    }

    pub fn poly(&self) -> &PolyRing {
        &self.poly
    }

    /// Reduced Gröbner basis of the defining ideal.
    pub fn ideal(&self) -> &[Polynomial] {
        &self.ideal
    }

    pub fn hilbert(&self) -> &HilbertSeries {
        &self.hilbert
    }

    /// Krull dimension.
    pub fn dim(&self) -> usize {
        self.dim.max(0) as usize
    }

    pub fn artinian(&self) -> Option<&Artinian> {
        self.artinian.as_ref()
    }

    pub fn is_artinian(&self) -> bool {
        self.artinian.is_some()
    }

    /// Number of modules with a cached resolution.
    pub fn cached_resolutions(&self) -> usize {
        self.cache.len()
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    /// Embedding dimension: number of variables not eliminated by linear relations.
    pub fn embedding_dim(&self) -> usize {
        let linear = self.ideal.iter().filter(|g| g.degree() == Some(1)).count();
        self.nvars() - linear
    }

    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        reduce_poly(&self.poly, &self.ideal, p)
    }

    pub fn reduce_vector(&self, space: &FreeModuleSpec, v: &FreeVector) -> FreeVector {
        reduce_vector(&self.poly, space, &self.ideal, v)
    }

    /// Standard monomials of degree `d`, descending in the monomial order.
    pub fn basis_in_degree(&self, d: i64) -> Vec<Monomial> {
        if let Some(art) = &self.artinian {
            return art.basis(d).to_vec();
        }
        if d < 0 {
            return Vec::new();
        }
        let leads: Vec<Monomial> = self.ideal.iter().map(|g| g.terms()[0].0).collect();
        let mut out: Vec<Monomial> = monomials_of_degree(&self.poly, d as u32)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect();
        out.sort_by(|a, b| self.poly.cmp_mon(b, a));
        out
    }

    pub fn describe(&self) -> String {
        let vars = self.poly.vars().join(",");
        let p = self.poly.field().characteristic();
        if self.ideal.is_empty() {
            format!("GF({p})[{vars}]")
        } else {
            let rels: Vec<String> = self.ideal.iter().map(|g| self.poly.format(g)).collect();
            format!("GF({p})[{vars}]/({})", rels.join(", "))
        }
    }

    /// Structural identity used for cache keys and compatibility checks.
    pub fn same_ring(&self, other: &QuotientRing) -> bool {
        self.poly == other.poly && self.ideal == other.ideal
    }
}

/// All monomials of weighted degree `d`.
pub fn monomials_of_degree(poly: &PolyRing, d: u32) -> Vec<Monomial> {
    fn go(w: &[u32], var: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if var == w.len() {
            if left == 0 {
                out.push(exps.clone());
            }
            return;
        }
        let mut e = 0;
        while e * w[var] <= left {
            exps.push(e);
            go(w, var + 1, left - e * w[var], exps, out);
            exps.pop();
            e += 1;
        }
    }
    let mut raw = Vec::new();
    go(poly.weights(), 0, d, &mut Vec::new(), &mut raw);
    raw.iter().filter_map(|e| Monomial::from_exponents(e, poly.weights()).ok()).collect()
}

/// Reduced Gröbner basis (monic, by degree then leading term) of a
/// homogeneous ideal.
pub fn ideal_groebner(poly: &PolyRing, gens: &[Polynomial], limits: &Limits) -> Result<Vec<Polynomial>> {
    let space = FreeModuleSpec::new(vec![0]);
    let mut e = Engine::new(poly, space.clone(), limits);
    for g in gens {
        let terms = g.terms().iter().map(|&(mon, coeff)| VTerm { mon, comp: 0, coeff }).collect();
        e.push(FreeVector::from_terms(poly, &space, terms), None)?;
    }
    e.complete(None)?;
    Ok(e.reduced_basis().into_iter().map(|v| v.entry(poly, 0)).collect())
}
