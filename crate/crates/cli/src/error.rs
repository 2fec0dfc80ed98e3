use std::fmt;

/// Command-line failure modes mapped onto the process exit codes:
/// 1 validation, 2 numerical guard (tail/branch/wrap/memory), 3 verify.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Guard(dtqw::Error),
    Io(std::io::Error),
    VerifyFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 1,
            CliError::Guard(_) => 2,
            CliError::VerifyFailed(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(msg) => write!(f, "{msg}"),
            CliError::Guard(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::VerifyFailed(n) => write!(f, "{n} verification check(s) failed"),
        }
    }
}

impl From<dtqw::Error> for CliError {
    fn from(e: dtqw::Error) -> Self {
        use dtqw::Error::*;
        match e {
            InvalidParameter(_) | ZeroField | DegenerateFit => {
                CliError::Validation(e.to_string())
            }
            TailTooLarge { .. } | LightConeWrap { .. } | BranchAmbiguity { .. }
            | GridTooLarge { .. } | NonFinite { .. } => CliError::Guard(e),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
