use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse grouping of errors, used by the command line for exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorFamily {
    Config,
    Surgery,
    Io,
    Infeasible,
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("surgery conflict: {0}")]
    SurgeryConflict(String),
    #[error("boundary length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("sewing a boundary to itself is unsupported")]
    SelfSewUnsupported,
    #[error("no boundary circle with id {0}")]
    NoSuchBoundary(usize),
    #[error("loop is not a vertex-simple closed cycle: {0}")]
    NotSimple(String),
    #[error("loop is one-sided; cutting it would not produce two boundary circles")]
    OneSidedLoop,
    #[error("cutting along the loop disconnects the surface")]
    SeparatingCut,
    #[error("re-pairing infeasible: {0}")]
    RepairInfeasible(String),
    #[error("symmetrize failed: {0}")]
    SymmetrizeFailed(String),
    #[error("blueprint too dense: {0}")]
    BlueprintTooDense(String),
    #[error("dual undefined for a complex with boundary")]
    DualUndefined,
    #[error("operation requires a closed complex")]
    BoundedComplex,
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("no such handle: {0}")]
    NoSuchHandle(usize),
    #[error("invalid syndrome: {0}")]
    InvalidSyndrome(String),
    #[error("oracle infeasible: {0}")]
    OracleInfeasible(String),
    #[error("correction does not reproduce the error syndrome")]
    InconsistentCorrection,
    #[error("fit underdetermined: {0}")]
    FitUnderdetermined(String),
    #[error("undefined scaling: {0}")]
    UndefinedScaling(String),
    #[error("surface format: {0}")]
    Format(String),
    #[error("unsupported format version {0}")]
    UnsupportedVersion(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn family(&self) -> ErrorFamily {
        use Error::*;
        match self {
            InvalidParameter(_) | UndefinedScaling(_) => ErrorFamily::Config,
            SurgeryConflict(_) | LengthMismatch(..) | SelfSewUnsupported | NoSuchBoundary(_)
            | NotSimple(_) | OneSidedLoop | SeparatingCut | RepairInfeasible(_)
            | SymmetrizeFailed(_) | BlueprintTooDense(_) | DualUndefined | BoundedComplex
            | NotACycle | NoSuchHandle(_) => ErrorFamily::Surgery,
            Format(_) | UnsupportedVersion(_) => ErrorFamily::Io,
            InvalidSyndrome(_) | OracleInfeasible(_) | FitUnderdetermined(_) => {
                ErrorFamily::Infeasible
            }
            InconsistentCorrection | Internal(_) => ErrorFamily::Internal,
        }
    }
}
