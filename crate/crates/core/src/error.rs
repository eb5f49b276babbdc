use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { max: usize, got: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("degree cap {cap} exceeded (degree {degree})")]
    DegreeCapExceeded { cap: u32, degree: u32 },
    #[error("resource cap reached: {0}")]
    ResourceCap(String),
    #[error("incompatible operands: {0}")]
    Incompatible(String),
    #[error("map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("module is not of finite length")]
    NotFiniteLength,
    #[error("module is not maximal Cohen-Macaulay: {0}")]
    NotMcm(String),
    #[error("ring is not Gorenstein")]
    NotGorenstein,
    #[error("operation undefined on the zero module")]
    ZeroModule,
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("element is not a nonzerodivisor: {0}")]
    NotNonzerodivisor(String),
    #[error("module is not annihilated by the element: {0}")]
    NotAnnihilated(String),
    #[error("rings are defined over different fields")]
    FieldMismatch,
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Hypothesis,
    Resource,
    Input,
    Other,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NotMcm(_)
            | Error::NotGorenstein
            | Error::Hypothesis(_)
            | Error::NotFiniteLength
            | Error::NotNonzerodivisor(_)
            | Error::NotAnnihilated(_)
            | Error::ZeroModule => ErrorKind::Hypothesis,
            Error::DegreeCapExceeded { .. } | Error::ResourceCap(_) => ErrorKind::Resource,
            Error::Syntax { .. }
            | Error::UnknownVariable { .. }
            | Error::Inhomogeneous(_)
            | Error::InvalidField(_)
            | Error::TooManyVariables { .. } => ErrorKind::Input,
            _ => ErrorKind::Other,
        }
    }
}
