use casimir_core::kernels::KernelError;
use casimir_core::response::ResponseError;
use casimir_core::statics::StaticsError;
use casimir_core::units::UnitError;
use thiserror::Error;

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const VALIDATION: i32 = 2;
    pub const NON_CONVERGENCE: i32 = 3;
    pub const DIVERGENT: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("numerical non-convergence: {0}")]
    NonConvergence(String),
    #[error("divergent-region request: {0}")]
    Divergent(String),
    #[error("{0} self-test check(s) failed")]
    SelftestFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => exit::VALIDATION,
            CliError::Io { .. } | CliError::SelftestFailed(_) => exit::FAILURE,
            CliError::NonConvergence(_) => exit::NON_CONVERGENCE,
            CliError::Divergent(_) => exit::DIVERGENT,
        }
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::Divergent(_) => CliError::Divergent(e.to_string()),
            KernelError::NonConvergence { .. } | KernelError::ResidueDivergence { .. } | KernelError::Quad(_) => {
                CliError::NonConvergence(e.to_string())
            }
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<ResponseError> for CliError {
    fn from(e: ResponseError) -> Self {
        match e {
            ResponseError::Divergent(_) => CliError::Divergent(e.to_string()),
            ResponseError::Kernel(k) => k.into(),
            ResponseError::InvalidScenario(_) => CliError::Validation(e.to_string()),
        }
    }
}

impl From<StaticsError> for CliError {
    fn from(e: StaticsError) -> Self {
        match e {
            StaticsError::NonConvergence { .. } | StaticsError::Quad(_) => CliError::NonConvergence(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<UnitError> for CliError {
    fn from(e: UnitError) -> Self {
        CliError::Validation(e.to_string())
    }
}
