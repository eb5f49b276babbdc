use std::collections::HashSet;

use gorext::resolution::Family;

use super::ast::*;
use super::lexer::{lex, ParseError, Pos, Tok, Token};

/// Parses a script and checks that every identifier is defined before use.
pub fn parse(src: &str) -> Result<Script, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { src, toks, at: 0 };
    let mut statements = Vec::new();
    while p.peek() != &Tok::Eof {
        statements.push(p.statement()?);
    }
    let script = Script { statements };
    check_names(&script)?;
    Ok(script)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    at: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::new(self.pos(), format!("expected {wanted}, found {}", self.peek()))
    }

    fn is(&self, p: &str) -> bool {
        matches!(self.peek(), Tok::Punct(q) if *q == p)
    }

    fn eat(&mut self, p: &str) -> bool {
        let hit = self.is(p);
        if hit {
            self.at += 1;
        }
        hit
    }

    fn expect(&mut self, p: &str) -> Result<(), ParseError> {
        if self.eat(p) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{p}`")))
        }
    }

    fn ident(&mut self) -> Result<Ident, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let pos = self.bump().pos;
                Ok(Ident { name, pos })
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn keyword(&mut self, options: &[&str]) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(s) if options.contains(&s.as_str()) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected(&options.iter().map(|o| format!("`{o}`")).collect::<Vec<_>>().join(" or "))),
        }
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        match *self.peek() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn usize(&mut self) -> Result<usize, ParseError> {
        let pos = self.pos();
        usize::try_from(self.uint()?).map_err(|_| ParseError::new(pos, "integer out of range"))
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat("-");
        let pos = self.pos();
        let n = i64::try_from(self.uint()?).map_err(|_| ParseError::new(pos, "integer out of range"))?;
        Ok(if neg { -n } else { n })
    }

    /// Raw source up to a `,`, `)` or `]` outside brackets.
    fn poly(&mut self) -> Result<PolyText, ParseError> {
        let first = self.toks[self.at].clone();
        let mut depth = 0usize;
        let mut end = first.start;
        loop {
            match self.peek() {
                Tok::Eof | Tok::Punct(";") => break,
                Tok::Punct("," | ")" | "]") if depth == 0 => break,
                Tok::Punct("(" | "[") => depth += 1,
                Tok::Punct(")" | "]") => depth -= 1,
                _ => {}
            }
            end = self.bump().end;
        }
        if end == first.start {
            return Err(self.unexpected("a polynomial"));
        }
        Ok(PolyText { text: self.src[first.start..end].to_string(), pos: first.pos })
    }

    fn polys(&mut self, close: &str) -> Result<Vec<PolyText>, ParseError> {
        let mut out = vec![self.poly()?];
        while self.eat(",") {
            out.push(self.poly()?);
        }
        self.expect(close)?;
        Ok(out)
    }

    /// A check name: identifiers joined by unspaced hyphens.
    fn check_name(&mut self) -> Result<(CheckKind, Pos), ParseError> {
        let first = self.ident()?;
        let mut name = first.name;
        while self.is("-") && !self.toks[self.at].spaced && matches!(self.toks[self.at + 1].tok, Tok::Ident(_)) {
            self.bump();
            name.push('-');
            name.push_str(&self.ident()?.name);
        }
        CheckKind::from_name(&name)
            .map(|k| (k, first.pos))
            .ok_or_else(|| ParseError::new(first.pos, format!("unknown check `{name}`")))
    }

    fn statement(&mut self) -> Result<Stmt, ParseError> {
        let start = self.toks[self.at].clone();
        let word = self.keyword(&["ring", "module", "let", "scan", "betti", "show", "check", "search", "emit"])?;
        let kind = match word.as_str() {
            "ring" => self.ring()?,
            "module" | "let" => {
                let name = self.ident()?;
                self.expect("=")?;
                StmtKind::Bind { name, expr: self.expr()? }
            }
            "scan" => {
                let family = match self.keyword(&["ext", "tor"])?.as_str() {
                    "ext" => Family::Ext,
                    _ => Family::Tor,
                };
                self.expect("(")?;
                let source = self.expr()?;
                self.expect(",")?;
                let target = self.expr()?;
                let range = if self.eat(",") { Some(self.range()?) } else { None };
                self.expect(")")?;
                StmtKind::Scan { family, source, target, range }
            }
            "betti" => {
                self.expect("(")?;
                let module = self.expr()?;
                let length = if self.eat(",") { Some(self.usize()?) } else { None };
                self.expect(")")?;
                StmtKind::Betti { module, length }
            }
            "show" => StmtKind::Show(self.expr()?),
            "check" => StmtKind::Check(self.check()?),
            "search" => StmtKind::Search(self.search()?),
            _ => {
                let format = match self.keyword(&["json", "table"])?.as_str() {
                    "json" => Format::Json,
                    _ => Format::Table,
                };
                let path = match self.peek().clone() {
                    Tok::Str(s) => {
                        self.bump();
                        s
                    }
                    _ => return Err(self.unexpected("a quoted path")),
                };
                StmtKind::Emit { format, path }
            }
        };
        let end = self.toks[self.at].end;
        self.expect(";")?;
        Ok(Stmt { pos: start.pos, text: self.src[start.start..end].to_string(), kind })
    }

    fn ring(&mut self) -> Result<StmtKind, ParseError> {
        let name = self.ident()?;
        self.expect("=")?;
        self.keyword(&["GF"])?;
        self.expect("(")?;
        let characteristic = self.uint()?;
        self.expect(")")?;
        self.expect("[")?;
        let mut vars = vec![self.ident()?];
        while self.eat(",") {
            vars.push(self.ident()?);
        }
        self.expect("]")?;
        let relations = if self.eat("/") {
            self.expect("(")?;
            self.polys(")")?
        } else {
            Vec::new()
        };
        Ok(StmtKind::Ring { name, characteristic, vars, relations })
    }

    fn range(&mut self) -> Result<(usize, usize), ParseError> {
        let pos = self.pos();
        let lo = self.usize()?;
        self.expect("..")?;
        let hi = self.usize()?;
        if hi < lo {
            return Err(ParseError::new(pos, format!("empty range {lo}..{hi}")));
        }
        Ok((lo, hi))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let id = self.ident()?;
        if id.name == "coker" {
            let ring = self.ident()?;
            self.expect("[")?;
            let mut rows = Vec::new();
            loop {
                self.expect("[")?;
                rows.push(self.polys("]")?);
                if !self.eat(",") {
                    break;
                }
            }
            self.expect("]")?;
            if let Some(r) = rows.iter().find(|r| r.len() != rows[0].len()) {
                return Err(ParseError::new(r[0].pos, "matrix rows have different lengths"));
            }
            return Ok(Expr::Coker { ring, rows });
        }
        if !self.eat("(") {
            return Ok(Expr::Name(id));
        }
        let one = |p: &mut Self, f: fn(Box<Expr>) -> Expr| -> Result<Expr, ParseError> { Ok(f(Box::new(p.expr()?))) };
        let two = |p: &mut Self, f: fn(Box<Expr>, Box<Expr>) -> Expr| -> Result<Expr, ParseError> {
            let a = p.expr()?;
            p.expect(",")?;
            Ok(f(Box::new(a), Box::new(p.expr()?)))
        };
        let indexed = |p: &mut Self, f: fn(Box<Expr>, i64) -> Expr| -> Result<Expr, ParseError> {
            let a = p.expr()?;
            p.expect(",")?;
            Ok(f(Box::new(a), p.int()?))
        };
        let e = match id.name.as_str() {
            "cyclic" => return Ok(Expr::Cyclic { pos: id.pos, gens: self.polys(")")? }),
            "dual" => one(self, Expr::Dual)?,
            "minimal" => one(self, Expr::Minimal)?,
            "hom" => two(self, Expr::Hom)?,
            "tensor" => two(self, Expr::Tensor)?,
            "sum" => two(self, Expr::Sum)?,
            "stable_hom" => two(self, Expr::StableHom)?,
            "syzygy" => indexed(self, Expr::Syzygy)?,
            "twist" => indexed(self, Expr::Twist)?,
            other => return Err(ParseError::new(id.pos, format!("unknown function `{other}`"))),
        };
        self.expect(")")?;
        Ok(e)
    }

    fn check(&mut self) -> Result<Check, ParseError> {
        let (kind, pos) = self.check_name()?;
        self.expect("(")?;
        let mut base = None;
        if kind == CheckKind::ChangeOfRings {
            let ring = self.ident()?;
            self.expect(",")?;
            let x = self.poly()?;
            self.expect(",")?;
            base = Some((ring, x));
        }
        let mut modules = vec![self.expr()?];
        for _ in 1..kind.modules() {
            self.expect(",")?;
            modules.push(self.expr()?);
        }
        let mut window = None;
        let mut bypass = false;
        if kind.takes_window() && self.eat(",") {
            window = Some(self.usize()?);
            if kind == CheckKind::Duality && self.eat(",") {
                self.keyword(&["bypass"])?;
                bypass = true;
            }
        }
        if !self.is(")") {
            return Err(ParseError::new(self.pos(), format!("too many arguments to `{}` (started at {pos})", kind.name())));
        }
        self.bump();
        Ok(Check { kind, modules, window, bypass, base })
    }

    fn search(&mut self) -> Result<SearchOpts, ParseError> {
        let mut opts = SearchOpts::default();
        if !self.eat("(") {
            return Ok(opts);
        }
        if self.eat(")") {
            return Ok(opts);
        }
        loop {
            let key = self.ident()?;
            self.expect("=")?;
            match key.name.as_str() {
                "trials" => opts.trials = Some(self.usize()?),
                "window" => opts.window = Some(self.usize()?),
                "max_gens" => opts.max_gens = Some(self.usize()?),
                "max_rel_degree" => {
                    let pos = self.pos();
                    opts.max_rel_degree = Some(u32::try_from(self.uint()?).map_err(|_| ParseError::new(pos, "integer out of range"))?)
                }
                "seed" => opts.seed = Some(self.uint()?),
                "max_rank" => opts.max_rank = Some(self.usize()?),
                "check" => {
                    let (kind, pos) = self.check_name()?;
                    if !kind.pairwise() {
                        return Err(ParseError::new(pos, format!("`{}` cannot run on random pairs", kind.name())));
                    }
                    opts.check = Some(kind);
                }
                other => return Err(ParseError::new(key.pos, format!("unknown search option `{other}`"))),
            }
            if !self.eat(",") {
                break;
            }
        }
        self.expect(")")?;
        Ok(opts)
    }
}

/// Rings and modules in scope at one point of a script.
#[derive(Default)]
struct Scope {
    rings: HashSet<String>,
    modules: HashSet<String>,
}

impl Scope {
    fn undefined(id: &Ident) -> ParseError {
        ParseError::new(id.pos, format!("`{}` is used before it is defined", id.name))
    }

    fn ring(&self, id: &Ident) -> Result<(), ParseError> {
        if self.rings.contains(&id.name) || (id.name == "R" && !self.rings.is_empty()) {
            Ok(())
        } else {
            Err(Self::undefined(id))
        }
    }

    fn module(&self, id: &Ident) -> Result<(), ParseError> {
        let builtin = matches!(id.name.as_str(), "k" | "R") && !self.rings.is_empty();
        if self.modules.contains(&id.name) || self.rings.contains(&id.name) || builtin {
            Ok(())
        } else {
            Err(Self::undefined(id))
        }
    }

    fn expr(&self, e: &Expr) -> Result<(), ParseError> {
        match e {
            Expr::Name(id) => self.module(id),
            Expr::Coker { ring, .. } => self.ring(ring),
            Expr::Cyclic { pos, .. } if self.rings.is_empty() => Err(ParseError::new(*pos, "`cyclic` needs a ring declared before it")),
            Expr::Cyclic { .. } => Ok(()),
            Expr::Dual(a) | Expr::Minimal(a) | Expr::Syzygy(a, _) | Expr::Twist(a, _) => self.expr(a),
            Expr::Hom(a, b) | Expr::Tensor(a, b) | Expr::Sum(a, b) | Expr::StableHom(a, b) => {
                self.expr(a)?;
                self.expr(b)
            }
        }
    }
}

fn check_names(script: &Script) -> Result<(), ParseError> {
    let mut scope = Scope::default();
    for s in &script.statements {
        match &s.kind {
            StmtKind::Ring { name, .. } => {
                scope.rings.insert(name.name.clone());
            }
            StmtKind::Bind { name, expr } => {
                scope.expr(expr)?;
                scope.modules.insert(name.name.clone());
            }
            StmtKind::Scan { source, target, .. } => {
                scope.expr(source)?;
                scope.expr(target)?;
            }
            StmtKind::Betti { module, .. } | StmtKind::Show(module) => scope.expr(module)?,
            StmtKind::Check(c) => {
                if let Some((ring, _)) = &c.base {
                    scope.ring(ring)?;
                }
                for m in &c.modules {
                    scope.expr(m)?;
                }
            }
            StmtKind::Search(_) if scope.rings.is_empty() => {
                return Err(ParseError::new(s.pos, "`search` needs a ring declared before it"));
            }
            StmtKind::Search(_) | StmtKind::Emit { .. } => {}
        }
    }
    Ok(())
}
