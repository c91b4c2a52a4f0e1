use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("duplicate {kind} id {id:?}")]
    DuplicateId { kind: &'static str, id: String },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("invalid relation {index}: {reason}")]
    InvalidRelation { index: usize, reason: String },
    #[error("path is not composable: {0}")]
    NonComposable(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("representation is invalid: {0}")]
    InvalidRepresentation(String),
    #[error("representations live over different algebras")]
    AlgebraMismatch,
    #[error("integer overflow converting {0}")]
    Overflow(String),

    #[error("algebra has oriented cycles; supply an Ext table for the simples")]
    NonTriangular,
    #[error("algebra has relations; this operation needs a hereditary algebra")]
    NotHereditary,
    #[error("radical of the symmetrized Euler form has dimension {0}, expected 1")]
    Nullity(usize),
    #[error("radical generator {0:?} is not sign-definite")]
    NotSignDefinite(Vec<i64>),

    #[error("subrepresentation problem undecided for dimension vector {dim:?}: {reason}")]
    Undecided { dim: Vec<usize>, reason: String },
    #[error("certifier found a subrepresentation of dimension {0:?} that the decider rejects")]
    BackendDisagreement(Vec<usize>),
    #[error("retry budget exhausted after {attempts} attempts: {what}")]
    RetryBudgetExhausted { attempts: usize, what: String },
    #[error("degenerate facet: {0}")]
    DegenerateFacet(String),
    #[error("no stable pair found: {0}")]
    NoStablePair(String),
    #[error("exceptional pair check failed: {0}")]
    ExceptionalCheck(String),
    #[error("Ext^2 between sequence members is {0}; quotient algebra would need relations")]
    NonzeroExt2(i64),
    #[error("lifted module violates the relations of the algebra: {0}")]
    LiftInvalid(String),

    #[error("pipeline stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn at_stage(stage: &'static str) -> impl FnOnce(Error) -> Error {
        move |source| Error::Stage { stage, source: Box::new(source) }
    }

    /// True when the failure is an undecided stability subproblem, however deeply wrapped.
    pub fn is_undecided(&self) -> bool {
        match self {
            Error::Undecided { .. } => true,
            Error::Stage { source, .. } => source.is_undecided(),
            _ => false,
        }
    }

    /// Process exit status: 1 for bad input, 2 for a failed certificate, 3 for an undecided subproblem.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Stage { source, .. } => source.exit_code(),
            Error::Undecided { .. } => 3,
            Error::BackendDisagreement(_)
            | Error::RetryBudgetExhausted { .. }
            | Error::DegenerateFacet(_)
            | Error::NoStablePair(_)
            | Error::ExceptionalCheck(_)
            | Error::NonzeroExt2(_)
            | Error::LiftInvalid(_) => 2,
            _ => 1,
        }
    }
}
