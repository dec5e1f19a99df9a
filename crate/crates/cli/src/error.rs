use thiserror::Error;

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_RANGE: u8 = 3;
pub const EXIT_INFEASIBLE: u8 = 4;
pub const EXIT_VERIFY: u8 = 5;
pub const EXIT_NOT_CONVERGED: u8 = 6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] capwedge::Error),

    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use capwedge::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) | CliError::Output(_) => EXIT_INPUT,
            CliError::Core(e) => match e {
                E::InvalidProfile(_) | E::DepthUnderflow { .. } | E::Parse(_) | E::Io(_) | E::Csv(_) | E::Json(_) => {
                    EXIT_INPUT
                }
                E::InfeasibleScan { .. } => EXIT_INFEASIBLE,
                E::NotConverged { .. } | E::LinearSolve(_) | E::Unconverged => EXIT_NOT_CONVERGED,
                _ => EXIT_RANGE,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// How a command that ran to completion ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerifyFailed,
    NotConverged,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::VerifyFailed => EXIT_VERIFY,
            Outcome::NotConverged => EXIT_NOT_CONVERGED,
        }
    }
}
