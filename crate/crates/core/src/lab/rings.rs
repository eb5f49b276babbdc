use crate::algebra::poly::{PolyRing, Polynomial};
use crate::algebra::vector::{FreeModuleSpec, FreeVector, VTerm};
use crate::error::{Error, Result};
use crate::groebner::{Ctx, HilbertSeries, QuotientRing};
use crate::module::PresentedModule;
use crate::resolution::{ext_dims, gorenstein_check, tor_dims, Dimension, ExtTorResult};

use super::pattern::{scan_ext_labeled, VanishingPattern};
use super::report::{CheckReport, Fact, Replay, Rule};

/// `S/(x)` with the limits of `S`.
pub fn quotient_by(s: &Ctx, x: &Polynomial) -> Result<Ctx> {
    let mut rels = s.ideal().to_vec();
    rels.push(x.clone());
    QuotientRing::with_limits(s.poly().clone(), rels, s.limits().clone())
}

/// `HS(X/xX) = (1 - t^e) HS(X)` exactly when `x` of degree `e` is a
/// nonzerodivisor on `X`.
fn regular_on(series: &HilbertSeries, quotient: &HilbertSeries, e: i64) -> bool {
    series.sub(&series.shifted(e)).sub(quotient).is_zero()
}

/// `M / xM` over the same ring.
fn mod_element(m: &PresentedModule, x: &Polynomial) -> Result<PresentedModule> {
    let ring = m.ctx().poly();
    let e = x.degree().unwrap_or(0) as i32;
    let mut twists = m.rel_twists().to_vec();
    let mut rels = m.relations().to_vec();
    for (j, &a) in m.gen_twists().iter().enumerate() {
        twists.push(a + e);
        rels.push(FreeVector::from_entries(ring, m.space(), &[(j, x.clone())])?);
    }
    PresentedModule::new(m.ctx(), m.gen_twists().to_vec(), twists, rels)
}

/// The same presentation over another ring on the same variables.
pub fn transport(m: &PresentedModule, ctx: &Ctx) -> Result<PresentedModule> {
    if m.ctx().poly() != ctx.poly() {
        return Err(Error::RingMismatch);
    }
    PresentedModule::new(ctx, m.gen_twists().to_vec(), m.rel_twists().to_vec(), m.relations().to_vec())
}

/// Degree range covering where two graded pieces could differ, with room
/// for the given shifts.
fn span(series: &[&HilbertSeries], shift: i64) -> (i64, i64) {
    let nonzero: Vec<&&HilbertSeries> = series.iter().filter(|h| !h.is_zero()).collect();
    if nonzero.is_empty() {
        return (0, 0);
    }
    let lo = nonzero.iter().map(|h| h.shift()).min().unwrap() - shift.abs();
    let hi = nonzero.iter().map(|h| h.shift() + h.numerator().len() as i64).max().unwrap() + shift.abs() + 4;
    (lo, hi)
}

fn series(r: &ExtTorResult, i: usize) -> Option<&HilbertSeries> {
    r.get(i).and_then(|e| e.hilbert.as_ref())
}

/// `dim A_j ≤ dim B_j + dim C_{j + shift}` for every degree `j`.
fn bounded_by(a: &HilbertSeries, b: &HilbertSeries, c: &HilbertSeries, shift: i64) -> bool {
    let (lo, hi) = span(&[a, b, c], shift);
    let (va, vb, vc) = (a.values(lo, hi), b.values(lo, hi), c.values(lo + shift, hi + shift));
    (0..va.len()).all(|k| va[k] <= vb[k] + vc[k])
}

/// `dim A_j = dim B_{j + shift}` for every degree `j`.
fn shifted_equal(a: &HilbertSeries, b: &HilbertSeries, shift: i64) -> bool {
    a.sub(&b.shifted(-shift)).is_zero()
}

fn dims_text(r: &ExtTorResult) -> String {
    r.dims().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
}

/// Change of rings from `S` to `R = S/(x)` for `x` a homogeneous
/// nonzerodivisor of degree `e`, on `S`-modules `M`, `N` annihilated by `x`.
///
/// Checks, degree by degree, that
/// `dim Ext^i_S(M,N)_j ≤ dim Ext^i_R(M,N)_j + dim Ext^{i-1}_R(M,N)_{j+e}` and
/// `dim Tor^S_i(M,N)_j ≤ dim Tor^R_i(M,N)_j + dim Tor^R_{i-1}(M,N)_{j-e}` for
/// `1 ≤ i ≤ H`; that `Ext^{i+1}_R ≅ Ext^{i-1}_R(e)` and
/// `Tor^R_{i+1} ≅ Tor^R_{i-1}(-e)` in dimensions wherever the two `S`-modules
/// between them vanish; and, when the lift `M~` of a minimal presentation
/// of `M` to `S` is `x`-regular, that `Ext^i_R(M, N)` and `Ext^i_S(M~, N)`
/// have the same graded dimensions for `0 ≤ i ≤ H`.
pub fn change_of_rings_check(s: &Ctx, x: &Polynomial, m: &PresentedModule, n: &PresentedModule, h: usize) -> Result<CheckReport> {
    m.check_same_ring(n)?;
    if !QuotientRing::same_ring(s, m.ctx()) {
        return Err(Error::RingMismatch);
    }
    let x = s.reduce(x);
    if x.is_zero() || !x.is_homogeneous() || x.degree() == Some(0) {
        return Err(Error::NotNonzerodivisor(s.poly().format(&x)));
    }
    let e = x.degree().unwrap() as i64;
    let r = quotient_by(s, &x)?;
    if !regular_on(s.hilbert(), r.hilbert(), e) {
        return Err(Error::NotNonzerodivisor(s.poly().format(&x)));
    }
    for (name, a) in [("M", m), ("N", n)] {
        if !a.hilbert()?.sub(&mod_element(a, &x)?.hilbert()?).is_zero() {
            return Err(Error::NotAnnihilated(format!("{name} by {}", s.poly().format(&x))));
        }
    }
    let (mr, nr) = (transport(m, &r)?, transport(n, &r)?);
    let mut report = CheckReport::new("change-of-rings", s, Some(h));
    report.hypotheses = vec![
        Fact::new("x is a nonzerodivisor on S", Some(true), s.poly().format(&x)),
        Fact::new("x annihilates M and N", Some(true), ""),
    ];
    report.notes.push(format!("R = {}", r.describe()));

    let ext_s = ext_dims(m, n, 0..=h)?;
    let ext_r = ext_dims(&mr, &nr, 0..=h)?;
    let tor_s = tor_dims(m, n, 0..=h)?;
    let tor_r = tor_dims(&mr, &nr, 0..=h)?;
    report.notes.push(format!("Ext_S: [{}]; Ext_R: [{}]", dims_text(&ext_s), dims_text(&ext_r)));
    report.notes.push(format!("Tor^S: [{}]; Tor^R: [{}]", dims_text(&tor_s), dims_text(&tor_r)));
    for i in 1..=h {
        let holds = match (series(&ext_s, i), series(&ext_r, i), series(&ext_r, i - 1)) {
            (Some(a), Some(b), Some(c)) => Some(bounded_by(a, b, c, e)),
            _ => None,
        };
        report.facts.push(Fact::new(format!("Ext^{i}_S <= Ext^{i}_R + Ext^{}_R(e)", i - 1), holds, ""));
        let holds = match (series(&tor_s, i), series(&tor_r, i), series(&tor_r, i - 1)) {
            (Some(a), Some(b), Some(c)) => Some(bounded_by(a, b, c, -e)),
            _ => None,
        };
        report.facts.push(Fact::new(format!("Tor^S_{i} <= Tor^R_{i} + Tor^R_{}(-e)", i - 1), holds, ""));
    }
    for i in 1..h {
        let zero = |r: &ExtTorResult, k: usize| r.dim(k) == Dimension::Finite(0);
        if zero(&ext_s, i) && zero(&ext_s, i + 1) {
            if let (Some(a), Some(b)) = (series(&ext_r, i + 1), series(&ext_r, i - 1)) {
                let name = format!("Ext^{}_R = Ext^{}_R(e) where Ext^{i}_S = Ext^{}_S = 0", i + 1, i - 1, i + 1);
                report.facts.push(Fact::new(name, Some(shifted_equal(a, b, e)), ""));
            }
        }
        if zero(&tor_s, i) && zero(&tor_s, i + 1) {
            if let (Some(a), Some(b)) = (series(&tor_r, i + 1), series(&tor_r, i - 1)) {
                let name = format!("Tor^R_{} = Tor^R_{}(-e) where Tor^S_{i} = Tor^S_{} = 0", i + 1, i - 1, i + 1);
                report.facts.push(Fact::new(name, Some(shifted_equal(a, b, -e)), ""));
            }
        }
    }

    let lift = transport(&mr.minimal_presentation()?, s)?;
    if regular_on(&lift.hilbert()?, &mod_element(&lift, &x)?.hilbert()?, e) {
        let ext_lift = ext_dims(&lift, n, 0..=h)?;
        for i in 0..=h {
            let holds = match (series(&ext_r, i), series(&ext_lift, i)) {
                (Some(a), Some(b)) => Some(shifted_equal(a, b, 0)),
                _ => None,
            };
            report.facts.push(Fact::new(format!("Ext^{i}_R(M,N) = Ext^{i}_S(M~,N)"), holds, ""));
        }
        report.notes.push(format!("lift M~ = {lift}"));
    } else {
        report.notes.push("x is a zerodivisor on the lift of M; base-change equality not applicable".into());
    }
    let mut report = report.finish();
    if report.verdict.is_violation() {
        report.replay = Some(Replay::new(s, h, &[m, n]));
    }
    Ok(report)
}

/// The graded tensor product over the field of two quotient rings: the
/// polynomial ring on both sets of variables modulo both ideals. Clashing
/// variable names on the right get the first free numeric suffix.
#[derive(Clone, Debug)]
pub struct ExternalTensor {
    pub ctx: Ctx,
    /// `left[i]`: index in the product of variable `i` of the left ring.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl ExternalTensor {
    /// `M ⊗_k S` for a module over the left ring.
    pub fn left_module(&self, m: &PresentedModule) -> Result<PresentedModule> {
        self.carry(m, &self.left)
    }

    /// `R ⊗_k N` for a module over the right ring.
    pub fn right_module(&self, n: &PresentedModule) -> Result<PresentedModule> {
        self.carry(n, &self.right)
    }

    fn carry(&self, m: &PresentedModule, map: &[usize]) -> Result<PresentedModule> {
        if m.ctx().nvars() != map.len() {
            return Err(Error::RingMismatch);
        }
        let ring = self.ctx.poly();
        let space = FreeModuleSpec::new(m.gen_twists().to_vec());
        let rels = m
            .relations()
            .iter()
            .map(|v| {
                let terms = v.terms().iter().map(|t| VTerm { mon: t.mon.relabel(map), comp: t.comp, coeff: t.coeff }).collect();
                FreeVector::from_terms(ring, &space, terms)
            })
            .collect();
        PresentedModule::new(&self.ctx, m.gen_twists().to_vec(), m.rel_twists().to_vec(), rels)
    }
}

pub fn external_tensor(r: &Ctx, s: &Ctx) -> Result<ExternalTensor> {
    let (pr, ps) = (r.poly(), s.poly());
    if pr.field() != ps.field() {
        return Err(Error::FieldMismatch);
    }
    let mut vars: Vec<String> = pr.vars().to_vec();
    for v in ps.vars() {
        let mut name = v.clone();
        let mut k = 1;
        while vars.contains(&name) || (ps.vars().contains(&name) && name != *v) {
            name = format!("{v}{k}");
            k += 1;
        }
        vars.push(name);
    }
    let mut weights = pr.weights().to_vec();
    weights.extend_from_slice(ps.weights());
    let poly = PolyRing::with_weights(pr.field(), vars, weights, pr.order())?;
    let left: Vec<usize> = (0..pr.nvars()).collect();
    let right: Vec<usize> = (pr.nvars()..pr.nvars() + ps.nvars()).collect();
    let mut ideal: Vec<Polynomial> = r.ideal().iter().map(|f| poly.transport(f, &left)).collect();
    ideal.extend(s.ideal().iter().map(|f| poly.transport(f, &right)));
    let ctx = QuotientRing::with_limits(poly, ideal, r.limits().clone())?;
    Ok(ExternalTensor { ctx, left, right })
}

/// For `M_R` over `R` and `N_S` over `S`, both Gorenstein, the product
/// `A = R ⊗_k S` is Gorenstein and `Ext^i_A(M_R ⊗ S, R ⊗ N_S)` vanishes for
/// `dim A < i ≤ H`.
pub fn external_tensor_check(m: &PresentedModule, n: &PresentedModule, h: usize) -> Result<CheckReport> {
    let t = external_tensor(m.ctx(), n.ctx())?;
    let a = &t.ctx;
    let mut report = CheckReport::new("external-tensor", a, Some(h));
    report.hypotheses = vec![
        Fact::new("left ring is Gorenstein", Some(gorenstein_check(m.ctx())?), m.ctx().describe()),
        Fact::new("right ring is Gorenstein", Some(gorenstein_check(n.ctx())?), n.ctx().describe()),
    ];
    let (ma, na) = (t.left_module(m)?, t.right_module(n)?);
    report.facts.push(Fact::new("product ring is Gorenstein", Some(gorenstein_check(a)?), ""));
    let p: VanishingPattern = scan_ext_labeled(&ma, &na, h, "M⊗S", "R⊗N")?;
    report.patterns.push(p);
    report.facts.push(Fact::from_rule("Ext^i_A vanishes for dim A < i <= H", Rule::TailVanishes { pattern: 0 }, &report.patterns));
    let mut report = report.finish();
    if report.verdict.is_violation() {
        report.replay = Some(Replay::new(a, h, &[&ma, &na]));
    }
    Ok(report)
}
