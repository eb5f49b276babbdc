use std::fmt;

use gorext::resolution::Family;

use super::lexer::Pos;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub pos: Pos,
}

/// Polynomial source text, parsed once its ring is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyText {
    pub text: String,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// A module binding, a ring (as the free module of rank one), `k` or `R`.
    Name(Ident),
    /// Rows index generators, columns relations.
    Coker { ring: Ident, rows: Vec<Vec<PolyText>> },
    /// `R/(f_1, …, f_r)` over the current ring.
    Cyclic { pos: Pos, gens: Vec<PolyText> },
    Dual(Box<Expr>),
    Minimal(Box<Expr>),
    Hom(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    StableHom(Box<Expr>, Box<Expr>),
    /// Negative indices give the syzygies of a complete resolution.
    Syzygy(Box<Expr>, i64),
    Twist(Box<Expr>, i64),
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Name(id) => id.pos,
            Expr::Coker { ring, .. } => ring.pos,
            Expr::Cyclic { pos, .. } => *pos,
            Expr::Dual(a) | Expr::Minimal(a) | Expr::Syzygy(a, _) | Expr::Twist(a, _) => a.pos(),
            Expr::Hom(a, _) | Expr::Tensor(a, _) | Expr::Sum(a, _) | Expr::StableHom(a, _) => a.pos(),
        }
    }
}

fn join(items: &[PolyText]) -> String {
    items.iter().map(|p| p.text.as_str()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Name(id) => f.write_str(&id.name),
            Expr::Coker { ring, rows } => {
                let rows: Vec<String> = rows.iter().map(|r| format!("[{}]", join(r))).collect();
                write!(f, "coker {} [{}]", ring.name, rows.join(", "))
            }
            Expr::Cyclic { gens, .. } => write!(f, "cyclic({})", join(gens)),
            Expr::Dual(a) => write!(f, "dual({a})"),
            Expr::Minimal(a) => write!(f, "minimal({a})"),
            Expr::Hom(a, b) => write!(f, "hom({a}, {b})"),
            Expr::Tensor(a, b) => write!(f, "tensor({a}, {b})"),
            Expr::Sum(a, b) => write!(f, "sum({a}, {b})"),
            Expr::StableHom(a, b) => write!(f, "stable_hom({a}, {b})"),
            Expr::Syzygy(a, i) => write!(f, "syzygy({a}, {i})"),
            Expr::Twist(a, d) => write!(f, "twist({a}, {d})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Duality,
    Symmetry,
    DualSymmetry,
    BettiFormulas,
    LowTor,
    TensorMcm,
    ChangeOfRings,
    ExternalTensor,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::Duality,
        CheckKind::Symmetry,
        CheckKind::DualSymmetry,
        CheckKind::BettiFormulas,
        CheckKind::LowTor,
        CheckKind::TensorMcm,
        CheckKind::ChangeOfRings,
        CheckKind::ExternalTensor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Duality => "duality",
            CheckKind::Symmetry => "symmetry",
            CheckKind::DualSymmetry => "dual-symmetry",
            CheckKind::BettiFormulas => "betti-formulas",
            CheckKind::LowTor => "low-tor",
            CheckKind::TensorMcm => "tensor-mcm",
            CheckKind::ChangeOfRings => "change-of-rings",
            CheckKind::ExternalTensor => "external-tensor",
        }
    }

    /// Short synonyms accepted by the parser.
    fn aliases(self) -> &'static [&'static str] {
        match self {
            CheckKind::Duality => &["theorem21"],
            CheckKind::DualSymmetry => &["corollary42"],
            CheckKind::BettiFormulas => &["lescot"],
            CheckKind::LowTor => &["lemma36"],
            CheckKind::TensorMcm => &["theorem59"],
            CheckKind::ExternalTensor => &["prop43"],
            _ => &[],
        }
    }

    pub fn from_name(s: &str) -> Option<CheckKind> {
        let s = s.replace('_', "-");
        CheckKind::ALL.into_iter().find(|k| k.name() == s || k.aliases().contains(&s.as_str()))
    }

    /// Number of module arguments.
    pub fn modules(self) -> usize {
        match self {
            CheckKind::BettiFormulas => 1,
            _ => 2,
        }
    }

    pub fn takes_window(self) -> bool {
        matches!(
            self,
            CheckKind::Duality | CheckKind::Symmetry | CheckKind::DualSymmetry | CheckKind::ChangeOfRings | CheckKind::ExternalTensor
        )
    }

    /// Usable on random pairs from `search`.
    pub fn pairwise(self) -> bool {
        !matches!(self, CheckKind::BettiFormulas | CheckKind::ChangeOfRings | CheckKind::ExternalTensor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub modules: Vec<Expr>,
    pub window: Option<usize>,
    /// Record module hypotheses without enforcing them (duality only).
    pub bypass: bool,
    /// The ring `S` and element `x` of a change-of-rings check.
    pub base: Option<(Ident, PolyText)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchOpts {
    pub trials: Option<usize>,
    pub window: Option<usize>,
    pub max_gens: Option<usize>,
    pub max_rel_degree: Option<u32>,
    pub seed: Option<u64>,
    pub max_rank: Option<usize>,
    pub check: Option<CheckKind>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Ring { name: Ident, characteristic: u64, vars: Vec<Ident>, relations: Vec<PolyText> },
    Bind { name: Ident, expr: Expr },
    Scan { family: Family, source: Expr, target: Expr, range: Option<(usize, usize)> },
    Betti { module: Expr, length: Option<usize> },
    Show(Expr),
    Check(Check),
    Search(SearchOpts),
    Emit { format: Format, path: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stmt {
    pub pos: Pos,
    /// Source text of the statement.
    pub text: String,
    pub kind: StmtKind,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Stmt>,
}
