use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use gorext::algebra::{parse_homogeneous, FieldSpec, FreeModuleSpec, FreeVector, PolyRing, Polynomial};
use gorext::groebner::{Ctx, Limits, QuotientRing};
use gorext::lab::{
    betti_formula_check, change_of_rings_check, dual_symmetry_check, duality_check, external_tensor_check,
    low_tor_check, random_module, search_harness, symmetry_check, tensor_mcm_check, CheckReport, ExperimentConfig,
    SymmetryReport, VanishingPattern, Verdict,
};
use gorext::module::{direct_sum, dual, hom, tensor, PresentedModule};
use gorext::resolution::{
    ext_dims, is_mcm, minimal_free_resolution, negative_syzygy, stable_hom, syzygy, tor_dims, depth, Dimension, Family,
};
use gorext::{Error, ErrorKind};

use crate::script::{parse, Check, CheckKind, Expr, Format, ParseError, PolyText, Pos, Script, SearchOpts, StmtKind};

pub const SCHEMA_VERSION: u32 = 1;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const ERROR: i32 = 1;
    pub const HYPOTHESIS: i32 = 2;
    pub const VIOLATION: i32 = 3;
    pub const RESOURCE: i32 = 4;
    pub const PARSE: i32 = 5;
}

#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    /// Seed for `search` statements that do not set one.
    pub seed: u64,
    /// Default window `H` for checks, scans, Betti tables and searches.
    pub window: usize,
    pub degree_cap: u32,
    pub timeout: Option<Duration>,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 0, window: 10, degree_cap: Limits::default().degree_cap, timeout: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailKind {
    Parse,
    Type,
    Hypothesis,
    Resource,
    Io,
    Engine,
}

impl FailKind {
    pub fn label(self) -> &'static str {
        match self {
            FailKind::Parse => "parse",
            FailKind::Type => "type",
            FailKind::Hypothesis => "hypothesis",
            FailKind::Resource => "resource",
            FailKind::Io => "io",
            FailKind::Engine => "engine",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            FailKind::Parse | FailKind::Type => exit::PARSE,
            FailKind::Hypothesis => exit::HYPOTHESIS,
            FailKind::Resource => exit::RESOURCE,
            FailKind::Io | FailKind::Engine => exit::ERROR,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunError {
    pub pos: Pos,
    pub kind: FailKind,
    pub message: String,
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} error at {}: {}", self.kind.label(), self.pos, self.message)
    }
}

impl From<ParseError> for RunError {
    fn from(e: ParseError) -> Self {
        RunError { pos: e.pos, kind: FailKind::Parse, message: e.msg }
    }
}

fn engine(pos: Pos, e: Error) -> RunError {
    let kind = match e.kind() {
        ErrorKind::Hypothesis => FailKind::Hypothesis,
        ErrorKind::Resource => FailKind::Resource,
        ErrorKind::Input => FailKind::Parse,
        ErrorKind::Other => match e {
            Error::RingMismatch | Error::FieldMismatch | Error::DimensionMismatch { .. } | Error::Incompatible(_) => FailKind::Type,
            _ => FailKind::Engine,
        },
    };
    RunError { pos, kind, message: e.to_string() }
}

/// Errors from parsing `p`, located inside its text.
fn poly_error(p: &PolyText, e: Error) -> RunError {
    let at = |k: usize| p.pos.advance(&p.text[..k.min(p.text.len())]);
    match e {
        Error::Syntax { pos, msg } => RunError { pos: at(pos), kind: FailKind::Parse, message: msg },
        Error::UnknownVariable { name, pos } => {
            RunError { pos: at(pos), kind: FailKind::Parse, message: format!("unknown variable `{name}`") }
        }
        e => engine(p.pos, e),
    }
}

/// One executed statement.
#[derive(Clone, Debug)]
pub struct Entry {
    pub pos: Pos,
    pub statement: String,
    pub command: &'static str,
    pub result: Value,
    /// Human-readable rendering of `result`.
    pub lines: Vec<String>,
    pub violations: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub options: Options,
    pub entries: Vec<Entry>,
    pub error: Option<RunError>,
    pub total: Duration,
}

fn ms(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

impl RunReport {
    pub fn violations(&self) -> usize {
        self.entries.iter().map(|e| e.violations).sum()
    }

    pub fn exit_code(&self) -> i32 {
        match &self.error {
            Some(e) => e.kind.exit_code(),
            None if self.violations() > 0 => exit::VIOLATION,
            None => exit::OK,
        }
    }

    /// The report as JSON. Only the `*_ms` fields vary between identical runs.
    pub fn to_json(&self) -> Value {
        let results: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "line": e.pos.line,
                    "column": e.pos.col,
                    "statement": e.statement,
                    "command": e.command,
                    "result": e.result,
                    "violations": e.violations,
                    "elapsed_ms": ms(e.elapsed),
                })
            })
            .collect();
        let error = self.error.as_ref().map(|e| {
            json!({ "line": e.pos.line, "column": e.pos.col, "kind": e.kind.label(), "message": e.message })
        });
        json!({
            "schema_version": SCHEMA_VERSION,
            "engine": { "name": "gorext", "version": env!("CARGO_PKG_VERSION") },
            "flags": {
                "seed": self.options.seed,
                "window": self.options.window,
                "degree_cap": self.options.degree_cap,
                "timeout_secs": self.options.timeout.map(|t| t.as_secs_f64()),
            },
            "results": results,
            "violations": self.violations(),
            "error": error,
            "exit_code": self.exit_code(),
            "timings": { "total_ms": ms(self.total) },
        })
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "gorext {}  seed {}  window {}  degree cap {}\n",
            env!("CARGO_PKG_VERSION"),
            self.options.seed,
            self.options.window,
            self.options.degree_cap
        );
        for e in &self.entries {
            out.push_str(&format!("\n[{}] {}\n", e.pos.line, e.statement));
            for l in &e.lines {
                out.push_str(&format!("    {l}\n"));
            }
        }
        out.push_str(&format!("\nviolations: {}\n", self.violations()));
        if let Some(e) = &self.error {
            out.push_str(&format!("{e}\n"));
        }
        out.push_str(&format!("exit code: {}\n", self.exit_code()));
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.to_json()).unwrap() + "\n",
            Format::Table => self.to_table(),
        }
    }
}

/// Parses and runs a script. Parse errors produce a report with no results.
pub fn run_source(src: &str, opts: &Options) -> RunReport {
    match parse(src) {
        Ok(script) => run_script(&script, opts),
        Err(e) => RunReport { options: opts.clone(), entries: Vec::new(), error: Some(e.into()), total: Duration::ZERO },
    }
}

/// Executes statements in order, stopping at the first error.
pub fn run_script(script: &Script, opts: &Options) -> RunReport {
    let start = Instant::now();
    let limits = Limits {
        degree_cap: opts.degree_cap,
        deadline: opts.timeout.map(|t| start + t),
        ..Limits::default()
    };
    let mut env = Env { opts: opts.clone(), limits, rings: HashMap::new(), modules: HashMap::new(), current: None };
    let mut report = RunReport { options: opts.clone(), entries: Vec::new(), error: None, total: Duration::ZERO };
    for s in &script.statements {
        let t = Instant::now();
        match env.exec(&s.kind, s.pos, &report) {
            Ok(out) => report.entries.push(Entry {
                pos: s.pos,
                statement: s.text.clone(),
                command: out.command,
                result: out.result,
                lines: out.lines,
                violations: out.violations,
                elapsed: t.elapsed(),
            }),
            Err(e) => {
                report.error = Some(e);
                break;
            }
        }
    }
    report.total = start.elapsed();
    report
}

struct Outcome {
    command: &'static str,
    result: Value,
    lines: Vec<String>,
    violations: usize,
}

impl Outcome {
    fn new(command: &'static str, result: Value, lines: Vec<String>) -> Self {
        Outcome { command, result, lines, violations: 0 }
    }
}

fn dims_text(dims: &[Dimension]) -> String {
    dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
}

enum Checked {
    Report(CheckReport),
    Symmetry(SymmetryReport),
}

impl Checked {
    fn verdict(&self) -> Verdict {
        match self {
            Checked::Report(r) => r.verdict,
            Checked::Symmetry(r) => r.verdict,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Checked::Report(r) => r.to_json(),
            Checked::Symmetry(r) => serde_json::to_value(r).unwrap_or(Value::Null),
        }
    }

    fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        match self {
            Checked::Report(r) => {
                out.push(format!("{}: {}", r.check, r.verdict));
                for h in &r.hypotheses {
                    out.push(format!("  hypothesis {}: {}", h.name, holds_text(h.holds)));
                }
                for p in &r.patterns {
                    out.push(format!("  {p}"));
                }
                for f in &r.facts {
                    let detail = if f.detail.is_empty() { String::new() } else { format!(" ({})", f.detail) };
                    out.push(format!("  {}: {}{detail}", f.name, holds_text(f.holds)));
                }
                out.extend(r.notes.iter().map(|n| format!("  note: {n}")));
            }
            Checked::Symmetry(r) => {
                out.push(format!("symmetry: {}", r.verdict));
                out.push(format!("  finite Ext-index known: {}", r.known_ab.as_deref().unwrap_or("no")));
                out.push(format!("  {}", r.forward));
                out.push(format!("  {}", r.backward));
            }
        }
        out
    }
}

fn holds_text(h: Option<bool>) -> &'static str {
    match h {
        Some(true) => "holds",
        Some(false) => "fails",
        None => "unknown",
    }
}

fn run_check(kind: CheckKind, m: &PresentedModule, n: Option<&PresentedModule>, h: usize, bypass: bool) -> gorext::Result<Checked> {
    let n = || n.ok_or_else(|| Error::Incompatible("check needs two modules".into()));
    Ok(match kind {
        CheckKind::Duality => Checked::Report(duality_check(m, n()?, h, bypass)?),
        CheckKind::Symmetry => Checked::Symmetry(symmetry_check(m, n()?, h)?),
        CheckKind::DualSymmetry => Checked::Report(dual_symmetry_check(m, n()?, h)?),
        CheckKind::BettiFormulas => Checked::Report(betti_formula_check(m)?),
        CheckKind::LowTor => Checked::Report(low_tor_check(m, n()?)?),
        CheckKind::TensorMcm => Checked::Report(tensor_mcm_check(m, n()?)?),
        CheckKind::ExternalTensor => Checked::Report(external_tensor_check(m, n()?, h)?),
        CheckKind::ChangeOfRings => return Err(Error::Incompatible("change-of-rings needs a base ring".into())),
    })
}

struct Env {
    opts: Options,
    limits: Limits,
    rings: HashMap<String, Ctx>,
    modules: HashMap<String, PresentedModule>,
    current: Option<Ctx>,
}

impl Env {
    fn current(&self, pos: Pos) -> Result<&Ctx, RunError> {
        self.current
            .as_ref()
            .ok_or_else(|| RunError { pos, kind: FailKind::Type, message: "no ring declared".into() })
    }

    fn ring(&self, name: &str, pos: Pos) -> Result<&Ctx, RunError> {
        match self.rings.get(name) {
            Some(c) => Ok(c),
            None if name == "R" => self.current(pos),
            None => Err(RunError { pos, kind: FailKind::Type, message: format!("`{name}` is not a ring") }),
        }
    }

    fn poly(&self, ctx: &Ctx, p: &PolyText) -> Result<Polynomial, RunError> {
        parse_homogeneous(&p.text, ctx.poly()).map_err(|e| poly_error(p, e))
    }

    fn eval(&self, e: &Expr) -> Result<PresentedModule, RunError> {
        let at = |r: gorext::Result<PresentedModule>| r.map_err(|err| engine(e.pos(), err));
        match e {
            Expr::Name(id) => {
                if let Some(m) = self.modules.get(&id.name) {
                    return Ok(m.clone());
                }
                if let Some(c) = self.rings.get(&id.name) {
                    return Ok(PresentedModule::free(c, vec![0]));
                }
                let ctx = self.current(id.pos)?;
                match id.name.as_str() {
                    "k" => Ok(PresentedModule::residue_field(ctx)),
                    "R" => Ok(PresentedModule::free(ctx, vec![0])),
                    _ => Err(RunError { pos: id.pos, kind: FailKind::Type, message: format!("`{}` is not defined", id.name) }),
                }
            }
            Expr::Coker { ring, rows } => self.coker(self.ring(&ring.name, ring.pos)?, rows),
            Expr::Cyclic { pos, gens } => {
                let ctx = self.current(*pos)?;
                let ideal = gens.iter().map(|g| self.poly(ctx, g)).collect::<Result<Vec<_>, _>>()?;
                at(PresentedModule::cyclic(ctx, &ideal))
            }
            Expr::Dual(a) => at(dual(&self.eval(a)?)),
            Expr::Minimal(a) => at(self.eval(a)?.minimal_presentation()),
            Expr::Hom(a, b) => at(hom(&self.eval(a)?, &self.eval(b)?)),
            Expr::Tensor(a, b) => at(tensor(&self.eval(a)?, &self.eval(b)?)),
            Expr::Sum(a, b) => at(direct_sum(&self.eval(a)?, &self.eval(b)?)),
            Expr::StableHom(a, b) => at(stable_hom(&self.eval(a)?, &self.eval(b)?)),
            Expr::Syzygy(a, i) if *i >= 0 => at(syzygy(&self.eval(a)?, *i as usize)),
            Expr::Syzygy(a, i) => at(negative_syzygy(&self.eval(a)?, *i)),
            Expr::Twist(a, d) => {
                let d = i32::try_from(*d).map_err(|_| RunError { pos: e.pos(), kind: FailKind::Parse, message: "twist out of range".into() })?;
                Ok(self.eval(a)?.twist(d))
            }
        }
    }

    /// Generator twists are the smallest non-negative ones making every
    /// entry homogeneous of degree `b_i - a_j`.
    fn coker(&self, ctx: &Ctx, rows: &[Vec<PolyText>]) -> Result<PresentedModule, RunError> {
        let ng = rows.len();
        let nr = rows.first().map_or(0, |r| r.len());
        let mut entries: Vec<Vec<Option<(Polynomial, i64)>>> = Vec::with_capacity(ng);
        for row in rows {
            let mut out = Vec::with_capacity(nr);
            for p in row {
                let f = ctx.reduce(&self.poly(ctx, p)?);
                out.push(f.degree().map(|d| (f, d as i64)));
            }
            entries.push(out);
        }
        // Nodes 0..ng are generators, ng.. relations; edges carry b - a.
        let mut value: Vec<Option<i64>> = vec![None; ng + nr];
        for root in 0..ng + nr {
            if value[root].is_some() {
                continue;
            }
            value[root] = Some(0);
            let mut component = vec![root];
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                let vu = value[u].unwrap();
                let neighbours: Vec<(usize, i64, Pos)> = if u < ng {
                    (0..nr).filter_map(|c| entries[u][c].as_ref().map(|(_, d)| (ng + c, vu + d, rows[u][c].pos))).collect()
                } else {
                    let c = u - ng;
                    (0..ng).filter_map(|j| entries[j][c].as_ref().map(|(_, d)| (j, vu - d, rows[j][c].pos))).collect()
                };
                for (v, want, pos) in neighbours {
                    match value[v] {
                        None => {
                            value[v] = Some(want);
                            component.push(v);
                            stack.push(v);
                        }
                        Some(have) if have != want => {
                            return Err(RunError { pos, kind: FailKind::Parse, message: "matrix entries have inconsistent degrees".into() });
                        }
                        Some(_) => {}
                    }
                }
            }
            let low = component.iter().filter(|&&v| v < ng).map(|&v| value[v].unwrap()).min().unwrap_or(0);
            for v in component {
                value[v] = value[v].map(|x| x - low);
            }
        }
        let gens: Vec<i32> = value[..ng].iter().map(|v| v.unwrap() as i32).collect();
        let space = FreeModuleSpec::new(gens.clone());
        let pos = rows[0][0].pos;
        let mut twists = Vec::new();
        let mut rels = Vec::new();
        for c in 0..nr {
            let col: Vec<(usize, Polynomial)> = (0..ng).filter_map(|j| entries[j][c].as_ref().map(|(f, _)| (j, f.clone()))).collect();
            if col.is_empty() {
                continue;
            }
            twists.push(value[ng + c].unwrap() as i32);
            rels.push(FreeVector::from_entries(ctx.poly(), &space, &col).map_err(|e| engine(pos, e))?);
        }
        PresentedModule::new(ctx, gens, twists, rels).map_err(|e| engine(pos, e))
    }

    fn exec(&mut self, kind: &StmtKind, pos: Pos, so_far: &RunReport) -> Result<Outcome, RunError> {
        let fail = |e: Error| engine(pos, e);
        match kind {
            StmtKind::Ring { name, characteristic, vars, relations } => {
                let field = FieldSpec::new(*characteristic).map_err(fail)?;
                let poly = PolyRing::new(field, vars.iter().map(|v| v.name.clone()).collect()).map_err(|e| engine(vars[0].pos, e))?;
                let rels = relations
                    .iter()
                    .map(|r| parse_homogeneous(&r.text, &poly).map_err(|e| poly_error(r, e)))
                    .collect::<Result<Vec<_>, _>>()?;
                let ctx = QuotientRing::with_limits(poly, rels, self.limits.clone()).map_err(fail)?;
                let result = json!({
                    "name": name.name,
                    "ring": ctx.describe(),
                    "dim": ctx.dim(),
                    "embedding_dim": ctx.embedding_dim(),
                    "hilbert": ctx.hilbert().to_string(),
                });
                let lines = vec![format!("{} = {}, dimension {}, Hilbert series {}", name.name, ctx.describe(), ctx.dim(), ctx.hilbert())];
                self.rings.insert(name.name.clone(), ctx.clone());
                self.current = Some(ctx);
                Ok(Outcome::new("ring", result, lines))
            }
            StmtKind::Bind { name, expr } => {
                let m = self.eval(expr)?;
                let result = json!({
                    "name": name.name,
                    "expr": expr.to_string(),
                    "module": m.to_string(),
                    "gens": m.num_gens(),
                    "rels": m.num_rels(),
                });
                let lines = vec![format!("{} = {m}", name.name)];
                self.modules.insert(name.name.clone(), m);
                Ok(Outcome::new("bind", result, lines))
            }
            StmtKind::Scan { family, source, target, range } => {
                let (m, n) = (self.eval(source)?, self.eval(target)?);
                let (lo, hi) = range.unwrap_or((1, self.opts.window));
                let r = match family {
                    Family::Ext => ext_dims(&m, &n, lo..=hi),
                    Family::Tor => tor_dims(&m, &n, lo..=hi),
                }
                .map_err(fail)?;
                let dims = r.dims();
                let (a, b) = (source.to_string(), target.to_string());
                let label = match family {
                    Family::Ext => format!("Ext^i({a}, {b})"),
                    Family::Tor => format!("Tor_i({a}, {b})"),
                };
                let entries: Vec<Value> = (lo..=hi)
                    .map(|i| json!({ "index": i, "dim": r.dim(i), "graded": r.get(i).and_then(|e| e.graded()) }))
                    .collect();
                let d = m.ctx().dim();
                let pattern = if lo <= 1 && hi >= d + 3 {
                    let window: Vec<Dimension> = (1..=hi).map(|i| r.dim(i)).collect();
                    VanishingPattern::new(*family, &a, &b, d, window).ok()
                } else {
                    None
                };
                let lines = vec![match &pattern {
                    Some(p) => p.to_string(),
                    None => format!("{label}, i = {lo}..{hi}: {}", dims_text(&dims)),
                }];
                let result = json!({
                    "family": family.to_string(),
                    "source": a,
                    "target": b,
                    "range": [lo, hi],
                    "entries": entries,
                    "pattern": pattern,
                });
                Ok(Outcome::new("scan", result, lines))
            }
            StmtKind::Betti { module, length } => {
                let m = self.eval(module)?;
                let n = length.unwrap_or(self.opts.window);
                let res = minimal_free_resolution(&m, n).map_err(fail)?;
                let table = res.betti();
                let pd = res.projective_dimension();
                let mut lines: Vec<String> = table.to_string().lines().map(String::from).collect();
                lines.push(match pd {
                    Some(p) => format!("projective dimension {p}"),
                    None => format!("projective dimension > {n} (resolution still running at index {n})"),
                });
                let result = json!({
                    "module": module.to_string(),
                    "length": n,
                    "totals": table.totals(),
                    "table": table.to_json(),
                    "projective_dimension": pd,
                });
                Ok(Outcome::new("betti", result, lines))
            }
            StmtKind::Show(expr) => {
                let m = self.eval(expr)?;
                let h = m.hilbert().map_err(fail)?;
                let zero = m.is_zero().map_err(fail)?;
                let free = m.is_free().map_err(fail)?;
                let mcm = is_mcm(&m).map_err(fail)?;
                let dep = if zero { None } else { Some(depth(&m).map_err(fail)?) };
                let len = m.length().map_err(fail)?;
                let result = json!({
                    "module": expr.to_string(),
                    "presentation": m.to_string(),
                    "gens": m.num_gens(),
                    "rels": m.num_rels(),
                    "hilbert": h.to_string(),
                    "dimension": m.dimension().map_err(fail)?,
                    "length": len,
                    "depth": dep,
                    "zero": zero,
                    "free": free,
                    "mcm": mcm,
                });
                let lines = vec![
                    m.to_string(),
                    format!("Hilbert series {h}"),
                    format!(
                        "dimension {}, depth {}, length {}, free {free}, maximal Cohen-Macaulay {mcm}",
                        m.dimension().map_err(fail)?,
                        dep.map_or("-".into(), |d| d.to_string()),
                        len.map_or("infinite".into(), |l| l.to_string())
                    ),
                ];
                Ok(Outcome::new("show", result, lines))
            }
            StmtKind::Check(c) => self.check(c, pos),
            StmtKind::Search(opts) => self.search(opts, pos),
            StmtKind::Emit { format, path } => {
                let text = so_far.render(*format);
                std::fs::write(path, text).map_err(|e| RunError { pos, kind: FailKind::Io, message: format!("{path}: {e}") })?;
                let fmt = match format {
                    Format::Json => "json",
                    Format::Table => "table",
                };
                Ok(Outcome::new("emit", json!({ "format": fmt, "path": path }), vec![format!("wrote {fmt} report to {path}")]))
            }
        }
    }

    fn check(&self, c: &Check, pos: Pos) -> Result<Outcome, RunError> {
        let fail = |e: Error| engine(pos, e);
        let h = c.window.unwrap_or(self.opts.window);
        let modules = c.modules.iter().map(|m| self.eval(m)).collect::<Result<Vec<_>, _>>()?;
        let checked = if let Some((ring, x)) = &c.base {
            let s = self.ring(&ring.name, ring.pos)?;
            let x = self.poly(s, x)?;
            Checked::Report(change_of_rings_check(s, &x, &modules[0], &modules[1], h).map_err(fail)?)
        } else {
            run_check(c.kind, &modules[0], modules.get(1), h, c.bypass).map_err(fail)?
        };
        let violations = usize::from(checked.verdict() == Verdict::Violation);
        let mut result = checked.to_json();
        result["check"] = json!(c.kind.name());
        result["arguments"] = json!(c.modules.iter().map(|m| m.to_string()).collect::<Vec<_>>());
        Ok(Outcome { command: "check", result, lines: checked.lines(), violations })
    }

    fn search(&self, o: &SearchOpts, pos: Pos) -> Result<Outcome, RunError> {
        let fail = |e: Error| engine(pos, e);
        let ctx = self.current(pos)?;
        let defaults = ExperimentConfig::default();
        let cfg = ExperimentConfig {
            window: o.window.unwrap_or(self.opts.window),
            seed: o.seed.unwrap_or(self.opts.seed),
            max_gens: o.max_gens.unwrap_or(defaults.max_gens),
            max_rel_degree: o.max_rel_degree.unwrap_or(defaults.max_rel_degree),
            trials: o.trials.unwrap_or(defaults.trials),
            max_rank: o.max_rank,
        };
        let report = search_harness(&cfg, ctx).map_err(fail)?;
        let mut lines = vec![format!(
            "{} trials over {} (seed {}, window {}): {} tail-vanishing, {} unknown, {} candidates",
            report.trials.len(),
            report.ring,
            cfg.seed,
            cfg.window,
            report.tail_vanishing,
            report.unknown,
            report.candidates
        )];
        let without = report.tail_vanishing_without_finite_pd().len();
        if without > 0 {
            lines.push(format!("{without} tail-vanishing trials with neither module of finite projective dimension"));
        }
        let mut result = json!({ "search": serde_json::to_value(&report).unwrap_or(Value::Null) });
        let mut violations = 0;
        if let Some(kind) = o.check {
            let ctx = cfg.context(ctx);
            let run = |t: &gorext::lab::Trial| -> gorext::Result<Verdict> {
                let m = random_module(&cfg.with_seed(t.seeds.0), &ctx)?;
                let n = random_module(&cfg.with_seed(t.seeds.1), &ctx)?;
                Ok(run_check(kind, &m, Some(&n), cfg.window, false)?.verdict())
            };
            let verdicts = gorext::par::map(&report.trials, run).into_iter().collect::<gorext::Result<Vec<_>>>().map_err(fail)?;
            let mut counts: std::collections::BTreeMap<String, usize> = std::collections::BTreeMap::new();
            for v in &verdicts {
                *counts.entry(v.to_string()).or_default() += 1;
            }
            let bad: Vec<usize> = verdicts.iter().enumerate().filter(|(_, v)| **v == Verdict::Violation).map(|(i, _)| i).collect();
            violations = bad.len();
            let summary: Vec<String> = counts.iter().map(|(k, v)| format!("{v} {k}")).collect();
            lines.push(format!("{} on each pair: {}", kind.name(), summary.join(", ")));
            result["check"] = json!({ "name": kind.name(), "verdicts": counts, "violating_trials": bad });
        }
        lines.push(report.note.clone());
        Ok(Outcome { command: "search", result, lines, violations })
    }
}
