use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Inconsistent or malformed arguments; reported with exit code 2.
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Model(#[from] ifa_core::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("worker thread panicked")]
    Worker,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// Stable snake_case tag for the one-line error report.
    pub fn kind(&self) -> &'static str {
        use ifa_core::Error as E;
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Csv(_) => "csv",
            CliError::Json(_) => "json",
            CliError::Worker => "worker",
            CliError::Model(e) => match e {
                E::ResourceGuard { .. } => "resource_guard",
                E::RuleOutOfRange { .. } => "rule_out_of_range",
                E::ZeroVariance => "zero_variance",
                E::NotDivisible { .. } => "not_divisible",
                E::SymbolOutOfRange { .. } | E::StateOutOfRange { .. } => "out_of_range",
                E::WindowLength { .. } | E::EmptyWindow | E::AlphabetMismatch { .. } => "bad_window",
                E::ActionOverflow { .. } => "overflow",
                _ => "invalid_input",
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}
