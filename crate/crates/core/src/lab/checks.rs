use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{Ctx, QuotientRing};
use crate::module::{dual, hom, tensor, PresentedModule};
use crate::resolution::{ext_dims, gorenstein_check, is_mcm, minimal_free_resolution, syzygy, Dimension};

use super::pattern::{scan_ext_labeled, scan_tor_labeled, VanishingPattern};
use super::report::{CheckReport, Fact, Replay, Rule, Verdict};

/// Extra indices scanned before a disagreement is reported as a violation.
pub const RECHECK_MARGIN: usize = 4;

/// The ring is a complete intersection: its defining ideal needs exactly
/// `codim` minimal generators.
pub fn is_complete_intersection(ctx: &Ctx) -> Result<bool> {
    if ctx.ideal().is_empty() {
        return Ok(true);
    }
    let s = QuotientRing::polynomial(ctx.poly().clone())?;
    let quotient = PresentedModule::cyclic(&s, ctx.ideal())?.minimal_presentation()?;
    Ok(quotient.num_rels() == ctx.nvars() - ctx.dim())
}

/// The artinian hypotheses for the Betti-number formulas and the low-Tor
/// test: socle of dimension one, length `embdim + 2`, `embdim > 2`.
pub fn minimal_multiplicity_facts(ctx: &Ctx) -> Result<Vec<Fact>> {
    let artinian = ctx.dim() == 0;
    let n = ctx.embedding_dim();
    let mut facts = vec![Fact::new("ring is artinian", Some(artinian), format!("dim {}", ctx.dim()))];
    if artinian {
        let len = ctx.hilbert().length().unwrap_or(0);
        facts.push(Fact::new("socle has dimension 1", Some(gorenstein_check(ctx)?), ""));
        facts.push(Fact::new("length = embdim + 2", Some(len == n as u64 + 2), format!("length {len}, embdim {n}")));
        facts.push(Fact::new("embdim > 2", Some(n > 2), format!("embdim {n}")));
    }
    Ok(facts)
}

fn require_all(facts: &[Fact]) -> Result<()> {
    match facts.iter().find(|f| f.holds != Some(true)) {
        Some(f) if f.detail.is_empty() => Err(Error::Hypothesis(f.name.clone())),
        Some(f) => Err(Error::Hypothesis(format!("{} ({})", f.name, f.detail))),
        None => Ok(()),
    }
}

/// Why the ring is known to have finite Ext-index, if it is: complete
/// intersections, and artinian Gorenstein rings of minimal multiplicity.
pub fn known_ab(ctx: &Ctx) -> Result<Option<&'static str>> {
    if !gorenstein_check(ctx)? {
        return Ok(None);
    }
    if is_complete_intersection(ctx)? {
        return Ok(Some("complete intersection"));
    }
    if ctx.dim() == 0 && minimal_multiplicity_facts(ctx)?.iter().all(|f| f.holds == Some(true)) {
        return Ok(Some("minimal multiplicity"));
    }
    Ok(None)
}

fn mcm_facts(pairs: &[(&str, &PresentedModule)]) -> Result<Vec<Fact>> {
    let mut out = Vec::new();
    if let Some((_, m)) = pairs.first() {
        out.push(Fact::new("ring is Gorenstein", Some(gorenstein_check(m.ctx())?), ""));
    }
    for (name, m) in pairs {
        out.push(Fact::new(format!("{name} is maximal Cohen-Macaulay"), Some(is_mcm(m)?), ""));
    }
    Ok(out)
}

/// Each scan is `(is_ext, source, target, labels)`, indexing `modules`.
fn scan_all(modules: &[&PresentedModule], scans: &[(bool, usize, usize, &str, &str)], h: usize) -> Result<Vec<VanishingPattern>> {
    scans
        .iter()
        .map(|&(is_ext, a, b, la, lb)| {
            if is_ext {
                scan_ext_labeled(modules[a], modules[b], h, la, lb)
            } else {
                scan_tor_labeled(modules[a], modules[b], h, la, lb)
            }
        })
        .collect()
}

/// Runs an agreement check at window `h`; if the patterns disagree with
/// every hypothesis verified, rescans at `h + RECHECK_MARGIN` and reports
/// that window instead.
fn agreement(
    mut report: CheckReport,
    modules: &[&PresentedModule],
    scans: &[(bool, usize, usize, &str, &str)],
    h: usize,
    statement: &str,
) -> Result<CheckReport> {
    let rule = Rule::Agree { patterns: (0..scans.len()).collect() };
    report.patterns = scan_all(modules, scans, h)?;
    report.facts = vec![Fact::from_rule(statement, rule.clone(), &report.patterns)];
    let mut report = report.finish();
    if report.verdict == Verdict::Violation {
        let wider = h + RECHECK_MARGIN;
        report.patterns = scan_all(modules, scans, wider)?;
        report.facts = vec![Fact::from_rule(statement, rule, &report.patterns)];
        report.window = Some(wider);
        report.notes.push(format!("disagreement at window {h} rechecked at window {wider}"));
        report = report.finish();
    }
    if report.verdict != Verdict::Consistent {
        let ctx = modules[0].ctx();
        report.replay = Some(Replay::new(ctx, report.window.unwrap_or(h), modules));
    }
    Ok(report)
}

/// Over a Gorenstein ring with `M`, `N` maximal Cohen-Macaulay, the
/// tail vanishing of `Tor_i(M, N)`, `Ext^i(M, N*)` and `Ext^i(N, M*)` agree.
/// With `bypass` the module hypotheses are recorded but not enforced, and a
/// failure is only a disagreement.
pub fn duality_check(m: &PresentedModule, n: &PresentedModule, h: usize, bypass: bool) -> Result<CheckReport> {
    m.check_same_ring(n)?;
    let mut report = CheckReport::new("duality", m.ctx(), Some(h));
    report.hypotheses = mcm_facts(&[("M", m), ("N", n)])?;
    report.bypassed = bypass;
    if !bypass {
        if report.hypotheses[0].holds != Some(true) {
            return Err(Error::NotGorenstein);
        }
        for (f, x) in report.hypotheses[1..].iter().zip([m, n]) {
            if f.holds != Some(true) {
                return Err(Error::NotMcm(x.to_string()));
            }
        }
    }
    let (md, nd) = (dual(m)?, dual(n)?);
    let modules = [m, n, &nd, &md];
    let scans = [(false, 0, 1, "M", "N"), (true, 0, 2, "M", "N*"), (true, 1, 3, "N", "M*")];
    agreement(report, &modules, &scans, h, "tail vanishing agrees across Tor(M,N), Ext(M,N*), Ext(N,M*)")
}

/// Over a ring known to have finite Ext-index, with `M`, `N` maximal
/// Cohen-Macaulay, the tail vanishing of `Tor_i(M, N)`, `Ext^i(M*, N)` and
/// `Ext^i(N*, M)` agree. Elsewhere a failure is only a disagreement.
pub fn dual_symmetry_check(m: &PresentedModule, n: &PresentedModule, h: usize) -> Result<CheckReport> {
    m.check_same_ring(n)?;
    let ctx = m.ctx();
    let mut report = CheckReport::new("dual-symmetry", ctx, Some(h));
    report.hypotheses = mcm_facts(&[("M", m), ("N", n)])?;
    if let Some(f) = report.hypotheses.iter().find(|f| f.holds != Some(true)) {
        return Err(Error::Hypothesis(f.name.clone()));
    }
    let ab = known_ab(ctx)?;
    report.hypotheses.push(Fact::new("ring has finite Ext-index", ab.map(|_| true), ab.unwrap_or("not known")));
    let (md, nd) = (dual(m)?, dual(n)?);
    let modules = [m, n, &md, &nd];
    let scans = [(false, 0, 1, "M", "N"), (true, 2, 1, "M*", "N"), (true, 3, 0, "N*", "M")];
    agreement(report, &modules, &scans, h, "tail vanishing agrees across Tor(M,N), Ext(M*,N), Ext(N*,M)")
}

/// `Ext(M, N)` and `Ext(N, M)` with a verdict on whether their tail
/// vanishing agrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub ring: String,
    pub window: usize,
    /// Reason the ring has finite Ext-index, when known.
    pub known_ab: Option<String>,
    pub forward: VanishingPattern,
    pub backward: VanishingPattern,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replay: Option<Replay>,
}

impl SymmetryReport {
    /// Verdict recomputed from the two stored patterns.
    pub fn judge(&self) -> Verdict {
        match (self.forward.tail_vanishing, self.backward.tail_vanishing) {
            (Some(a), Some(b)) if a == b => Verdict::Consistent,
            (Some(_), Some(_)) if self.known_ab.is_some() => Verdict::Violation,
            (Some(_), Some(_)) => Verdict::Disagreement,
            _ => Verdict::Inconclusive,
        }
    }
}

pub fn symmetry_check(m: &PresentedModule, n: &PresentedModule, h: usize) -> Result<SymmetryReport> {
    m.check_same_ring(n)?;
    let ctx = m.ctx();
    let known = known_ab(ctx)?.map(String::from);
    let scan = |h| -> Result<(VanishingPattern, VanishingPattern)> {
        Ok((scan_ext_labeled(m, n, h, "M", "N")?, scan_ext_labeled(n, m, h, "N", "M")?))
    };
    let (forward, backward) = scan(h)?;
    let mut report =
        SymmetryReport { ring: ctx.describe(), window: h, known_ab: known, forward, backward, verdict: Verdict::Consistent, replay: None };
    report.verdict = report.judge();
    if report.verdict == Verdict::Violation {
        let wider = h + RECHECK_MARGIN;
        (report.forward, report.backward) = scan(wider)?;
        report.window = wider;
        report.verdict = report.judge();
    }
    if report.verdict != Verdict::Consistent {
        report.replay = Some(Replay::new(ctx, report.window, &[m, n]));
    }
    Ok(report)
}

/// Betti numbers of the first syzygy `M'` of `M` over an artinian
/// Gorenstein ring with `m³ = 0`: with `n = embdim`, `s = dim mM'` and
/// `b_0` the number of generators of `M'`, the formulas
/// `b_1 = n b_0 - s`, `b_2 = b_0(n² - 1) - s n`, `b_3 = b_0(n³ - 2n) - s(n² - 1)`.
/// Failures are logged, not judged.
pub fn betti_formula_check(m: &PresentedModule) -> Result<CheckReport> {
    let ctx = m.ctx();
    let mut report = CheckReport::new("betti-formulas", ctx, None);
    report.hypotheses = minimal_multiplicity_facts(ctx)?;
    require_all(&report.hypotheses)?;
    report.lenient = true;
    let m1 = syzygy(m, 1)?;
    if m1.is_zero()? {
        report.notes.push("M is free; nothing to check".into());
        return Ok(report.finish());
    }
    let n = ctx.embedding_dim() as i64;
    let b0 = m1.num_gens() as i64;
    let s = m1.length()?.ok_or(Error::NotFiniteLength)? as i64 - b0;
    let res = minimal_free_resolution(&m1, 3)?;
    let b: Vec<i64> = (0..=3).map(|i| res.complex().rank(i) as i64).collect();
    let expected = [n * b0 - s, b0 * (n * n - 1) - s * n, b0 * (n * n * n - 2 * n) - s * (n * n - 1)];
    let names = ["b1 = n b0 - s", "b2 = b0 (n^2 - 1) - s n", "b3 = b0 (n^3 - 2n) - s (n^2 - 1)"];
    for (k, (name, e)) in names.iter().zip(expected).enumerate() {
        let got = b[k + 1];
        report.facts.push(Fact::new(*name, Some(got == e), format!("b{} = {got}, formula gives {e} (n = {n}, b0 = {b0}, s = {s})", k + 1)));
    }
    let report = report.finish();
    Ok(if report.verdict == Verdict::NotEstablished {
        let mut r = report;
        r.notes.push("k may be a summand of a low syzygy of M; formula failures are not judged".into());
        r
    } else {
        report
    })
}

/// Over an artinian Gorenstein ring with `m³ = 0` and `embdim > 2`, if
/// neither module is free then one of `Tor_3`, `Tor_4`, `Tor_5` is nonzero.
pub fn low_tor_check(m: &PresentedModule, n: &PresentedModule) -> Result<CheckReport> {
    m.check_same_ring(n)?;
    let ctx = m.ctx();
    let mut report = CheckReport::new("low-tor", ctx, Some(5));
    report.hypotheses = minimal_multiplicity_facts(ctx)?;
    require_all(&report.hypotheses)?;
    let (mf, nf) = (m.is_free()?, n.is_free()?);
    report.hypotheses.push(Fact::new("neither module is free", Some(!mf && !nf), ""));
    if mf || nf {
        report.notes.push("a free module makes the statement vacuous".into());
        return Ok(report.finish());
    }
    report.patterns = vec![scan_tor_labeled(m, n, 5, "M", "N")?];
    let rule = Rule::NonzeroIn { pattern: 0, lo: 3, hi: 5 };
    report.facts.push(Fact::from_rule("Tor_3, Tor_4, Tor_5 not all zero", rule, &report.patterns));
    let mut report = report.finish();
    if report.verdict != Verdict::Consistent {
        report.replay = Some(Replay::new(ctx, 5, &[m, n]));
    }
    Ok(report)
}

/// For `M`, `N` maximal Cohen-Macaulay over a Gorenstein ring of dimension
/// `d`: `Ext^1..d(N, M) = 0` forces `M* ⊗ N` to be maximal Cohen-Macaulay;
/// the converse when those Ext modules have finite length; and when
/// `M* ⊗ N` is maximal Cohen-Macaulay, so is `Hom(N, M)`, with
/// `M* ⊗ N ≅ Hom(N, M)*`.
pub fn tensor_mcm_check(m: &PresentedModule, n: &PresentedModule) -> Result<CheckReport> {
    m.check_same_ring(n)?;
    let ctx = m.ctx();
    let d = ctx.dim();
    let mut report = CheckReport::new("tensor-mcm", ctx, None);
    report.hypotheses = mcm_facts(&[("M", m), ("N", n)])?;
    if report.hypotheses[0].holds != Some(true) {
        return Err(Error::NotGorenstein);
    }
    require_all(&report.hypotheses)?;
    let t = tensor(&dual(m)?, n)?;
    let c1 = is_mcm(&t)?;
    let (c2, finite) = if d == 0 {
        (Some(true), true)
    } else {
        let e = ext_dims(n, m, 1..=d)?.dims();
        let c2 = if e.iter().any(|x| x.is_zero() == Some(false)) {
            Some(false)
        } else if e.iter().all(|x| x.is_known()) {
            Some(true)
        } else {
            None
        };
        let shown: Vec<String> = e.iter().map(|x| x.to_string()).collect();
        report.notes.push(format!("dim Ext^1..{d}(N, M) = [{}]", shown.join(" ")));
        (c2, e.iter().all(|x| matches!(x, Dimension::Finite(_))))
    };
    report.notes.push(format!("M* ⊗ N maximal Cohen-Macaulay: {c1}"));
    report.facts.push(Fact::new("Ext^1..d(N,M) = 0 implies M* ⊗ N is MCM", c2.map(|c2| !c2 || c1), ""));
    if finite {
        report.facts.push(Fact::new("M* ⊗ N MCM implies Ext^1..d(N,M) = 0", c2.map(|c2| !c1 || c2), ""));
    } else {
        report.notes.push("Ext^1..d(N, M) not of finite length; converse not tested".into());
    }
    if c1 {
        let h = hom(n, m)?;
        report.facts.push(Fact::new("Hom(N,M) is MCM", Some(is_mcm(&h)?), ""));
        let same = t.hilbert()?.sub(&dual(&h)?.hilbert()?).is_zero();
        report.facts.push(Fact::new("M* ⊗ N and Hom(N,M)* have equal Hilbert series", Some(same), ""));
    }
    let mut report = report.finish();
    if report.verdict != Verdict::Consistent {
        report.replay = Some(Replay::new(ctx, 0, &[m, n]));
    }
    Ok(report)
}
