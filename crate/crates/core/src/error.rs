use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("factor index {index} out of range for a group with {rank} factors")]
    FactorOutOfRange { index: usize, rank: usize },
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("invalid cocycle class: {0}")]
    InvalidCocycle(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("exponent {exp} out of range for factor of order {order} at byte {pos}")]
    ExponentOutOfRange { pos: usize, exp: i64, order: u32 },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("system is infeasible")]
    Infeasible,
    #[error("charged input: {0}")]
    ChargedInput(String),
    #[error("invalid QCA: {0}")]
    InvalidQca(String),
    #[error("geometry violation: {0}")]
    Geometry(String),
    #[error("index not representable: {0}")]
    NotRepresentable(String),
    #[error("bulk not a pure string: {0}")]
    BulkNotPure(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inconsistent invariants: {0}")]
    Inconsistent(String),
    #[error("oracle failure: {0}")]
    Oracle(String),
    #[error("definition file: {0}")]
    Definition(String),
}

impl Error {
    /// Short machine-readable tag used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::GroupMismatch(_) => "group_mismatch",
            Error::InvalidGroup(_) => "invalid_group",
            Error::FactorOutOfRange { .. } => "factor_out_of_range",
            Error::InvalidAutomorphism(_) => "invalid_automorphism",
            Error::InvalidCocycle(_) => "invalid_cocycle",
            Error::Syntax { .. } => "syntax",
            Error::ExponentOutOfRange { .. } => "exponent_out_of_range",
            Error::Malformed(_) => "malformed",
            Error::Infeasible => "infeasible",
            Error::ChargedInput(_) => "charged_input",
            Error::InvalidQca(_) => "invalid_qca",
            Error::Geometry(_) => "geometry",
            Error::NotRepresentable(_) => "not_representable",
            Error::BulkNotPure(_) => "bulk_not_pure",
            Error::Precondition(_) => "precondition",
            Error::Inconsistent(_) => "inconsistent",
            Error::Oracle(_) => "oracle",
            Error::Definition(_) => "definition",
        }
    }

    /// True for errors caused by malformed user input rather than mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::ExponentOutOfRange { .. }
                | Error::Malformed(_)
                | Error::Definition(_)
                | Error::InvalidGroup(_)
                | Error::FactorOutOfRange { .. }
                | Error::Geometry(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
