use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use super::field::{Coeff, FieldSpec};
use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::error::{Error, Result};

pub type Term = (Monomial, Coeff);

/// A graded polynomial ring `F_p[x_1, ..., x_n]` with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRing {
    field: FieldSpec,
    vars: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
    #[serde(skip)]
    tag: u64,
}

/// Sparse polynomial: terms strictly descending in the ring's order, no zero
/// coefficients. The tag identifies the ring it was built for.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    tag: u64,
    terms: Vec<Term>,
}

impl PolyRing {
    pub fn new(field: FieldSpec, vars: Vec<String>) -> Result<Self> {
        let n = vars.len();
        Self::with_weights(field, vars, vec![1; n], MonomialOrder::Grevlex)
    }

    pub fn with_weights(
        field: FieldSpec,
        vars: Vec<String>,
        weights: Vec<u32>,
        order: MonomialOrder,
    ) -> Result<Self> {
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables { max: MAX_VARS, got: vars.len() });
        }
        if weights.len() != vars.len() {
            return Err(Error::DimensionMismatch { expected: vars.len(), found: weights.len() });
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::Incompatible("variable weights must be positive".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Incompatible(format!("duplicate variable `{v}`")));
            }
        }
        let mut ring = PolyRing { field, vars, weights, order, tag: 0 };
        ring.tag = ring.fingerprint();
        Ok(ring)
    }

    fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.field.hash(&mut h);
        self.vars.hash(&mut h);
        self.weights.hash(&mut h);
        self.order.hash(&mut h);
        h.finish()
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        self.field
    }
    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
    pub fn vars(&self) -> &[String] {
        &self.vars
    }
    #[inline]
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }
    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    #[inline]
    pub fn cmp_mon(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b, self.vars.len())
    }

    pub fn monomial(&self, exps: &[u32]) -> Result<Monomial> {
        Monomial::from_exponents(exps, &self.weights)
    }

    pub fn var_monomial(&self, var: usize) -> Monomial {
        Monomial::variable(var, self.weights[var])
    }

    pub fn lcm(&self, a: &Monomial, b: &Monomial) -> Monomial {
        a.lcm(b, &self.weights)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { tag: self.tag, terms: Vec::new() }
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        let c = self.field.from_i64(c);
        self.from_sorted_terms(if c == 0 { vec![] } else { vec![(Monomial::ONE, c)] })
    }

    pub fn variable(&self, var: usize) -> Polynomial {
        self.from_sorted_terms(vec![(self.var_monomial(var), 1)])
    }

    /// Builds a polynomial from arbitrary (unsorted, possibly repeated) terms.
    pub fn from_terms(&self, terms: Vec<Term>) -> Polynomial {
        self.from_sorted_terms(normalize_terms(self, terms))
    }

    pub(crate) fn from_sorted_terms(&self, terms: Vec<Term>) -> Polynomial {
        Polynomial { tag: self.tag, terms }
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if f.tag == self.tag {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.from_sorted_terms(add_scaled(self, &f.terms, &g.terms, 1)))
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.check(g)?;
        let minus_one = self.field.neg(1);
        Ok(self.from_sorted_terms(add_scaled(self, &f.terms, &g.terms, minus_one)))
    }

    pub fn neg(&self, f: &Polynomial) -> Result<Polynomial> {
        self.scalar_mul(self.field.neg(1), f)
    }

    pub fn scalar_mul(&self, c: Coeff, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        let c = c % self.field.characteristic();
        if c == 0 {
            return Ok(self.zero());
        }
        let terms = f.terms.iter().map(|&(m, a)| (m, self.field.mul(a, c))).collect();
        Ok(self.from_sorted_terms(terms))
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.check(g)?;
        let mut out = Vec::with_capacity(f.terms.len() * g.terms.len());
        for &(mf, cf) in &f.terms {
            for &(mg, cg) in &g.terms {
                let m = mf.checked_mul(&mg).ok_or(Error::ExponentOverflow)?;
                out.push((m, self.field.mul(cf, cg)));
            }
        }
        Ok(self.from_terms(out))
    }

    pub fn pow(&self, f: &Polynomial, e: u32) -> Result<Polynomial> {
        let mut acc = self.constant(1);
        for _ in 0..e {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// Canonical text: descending terms, explicit `*`, signed coefficients.
    pub fn format(&self, f: &Polynomial) -> String {
        format_terms(self, &f.terms)
    }

    /// Reinterprets a polynomial of another ring here; `var_map[i]` is the
    /// index in this ring of the other ring's variable `i`.
    pub fn transport(&self, f: &Polynomial, var_map: &[usize]) -> Polynomial {
        let terms = f.terms.iter().map(|&(m, c)| (m.relabel(var_map), c)).collect();
        self.from_terms(terms)
    }
}

impl Polynomial {
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }
    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }
    /// Degree of the leading term (all terms when homogeneous).
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(&(m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }
}

/// Sorts descending and merges equal monomials, dropping zeros.
pub(crate) fn normalize_terms(ring: &PolyRing, mut terms: Vec<Term>) -> Vec<Term> {
    terms.sort_by(|a, b| ring.cmp_mon(&b.0, &a.0));
    let field = ring.field;
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == m => last.1 = field.add(last.1, c),
            _ => out.push((m, c)),
        }
        if out.last().is_some_and(|t| t.1 == 0) {
            out.pop();
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

/// `a + c * b` for sorted term lists.
pub(crate) fn add_scaled(ring: &PolyRing, a: &[Term], b: &[Term], c: Coeff) -> Vec<Term> {
    let field = ring.field;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ring.cmp_mon(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                let v = field.mul(b[j].1, c);
                if v != 0 {
                    out.push((b[j].0, v));
                }
                j += 1;
            }
            Ordering::Equal => {
                let v = field.add(a[i].1, field.mul(b[j].1, c));
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for &(m, bc) in &b[j..] {
        let v = field.mul(bc, c);
        if v != 0 {
            out.push((m, v));
        }
    }
    out
}

pub(crate) fn format_terms(ring: &PolyRing, terms: &[Term]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, &(m, c)) in terms.iter().enumerate() {
        let signed = ring.field.to_signed(c);
        let mag = signed.unsigned_abs();
        if k == 0 {
            if signed < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if signed < 0 { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if mag != 1 || m.is_one() {
            factors.push(mag.to_string());
        }
        for v in 0..ring.nvars() {
            match m.exponent(v) {
                0 => {}
                1 => factors.push(ring.vars[v].clone()),
                e => factors.push(format!("{}^{}", ring.vars[v], e)),
            }
        }
        let _ = write!(s, "{}", factors.join("*"));
    }
    s
}
