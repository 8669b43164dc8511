use std::fmt;

use mcmkit::cluster::ClusterError;
use mcmkit::endoalg::EndoError;
use mcmkit::homalg::HomalgError;
use mcmkit::matfac::MatfacError;

/// Errors with their process exit codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// Bad flags, unknown names, or an input the command does not apply to.
    Usage(String),
    Parse(String),
    Verification(String),
    PrecisionCap(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Verification(_) => 3,
            CliError::PrecisionCap(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::PrecisionCap(m) => write!(f, "precision cap reached: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<HomalgError> for CliError {
    fn from(e: HomalgError) -> Self {
        match e {
            HomalgError::PrecisionCap { .. } => CliError::PrecisionCap(e.to_string()),
            other => CliError::Verification(other.to_string()),
        }
    }
}

impl From<ClusterError> for CliError {
    fn from(e: ClusterError) -> Self {
        match e {
            ClusterError::Parse(_) | ClusterError::Unit(_) | ClusterError::Associates(..) => CliError::Parse(e.to_string()),
            ClusterError::Homalg(h) => h.into(),
            ClusterError::ConditionA { .. } | ClusterError::IndexRange(..) | ClusterError::BadPermutation(_) => CliError::Usage(e.to_string()),
            other => CliError::Verification(other.to_string()),
        }
    }
}

impl From<EndoError> for CliError {
    fn from(e: EndoError) -> Self {
        match e {
            EndoError::Homalg(h) => h.into(),
            EndoError::Relation(..) => CliError::Parse(e.to_string()),
            other => CliError::Verification(other.to_string()),
        }
    }
}

impl From<MatfacError> for CliError {
    fn from(e: MatfacError) -> Self {
        match e {
            MatfacError::UnknownCatalog(_) | MatfacError::Parameter(_) => CliError::Usage(e.to_string()),
            other => CliError::Verification(other.to_string()),
        }
    }
}
