use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("operation needs at most one variable, ring has {0:?}")]
    TooManyVariables(Vec<String>),

    #[error("expected {expected} variable(s), found {found:?}")]
    WrongVariableCount { expected: usize, found: Vec<String> },

    #[error("matrix entry ({row}, {col}) is not a constant")]
    NonConstantEntry { row: usize, col: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parse error at byte {pos} in {input:?}: {msg}")]
    Parse { input: String, pos: usize, msg: String },

    #[error("module is not torsion (free rank {0})")]
    NotTorsion(usize),

    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),

    #[error("invalid category: {0}")]
    InvalidCategory(String),

    #[error("invalid functor: {0}")]
    InvalidFunctor(String),

    #[error("invalid natural transformation: {0}")]
    InvalidTransformation(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("frames do not match: {0}")]
    FrameMismatch(String),

    #[error("no object named {0:?}")]
    UnknownObject(String),

    #[error("no morphism named {0:?}")]
    UnknownMorphism(String),

    #[error("enumeration budget of {0} exceeded")]
    BudgetExceeded(usize),

    #[error("{0} does not satisfy the intertwiner equation")]
    NotIntertwiner(String),

    #[error("{0}")]
    Unsupported(String),
}
