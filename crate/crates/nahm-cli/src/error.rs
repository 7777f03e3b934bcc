use nahm_exact::invariants::InvariantsError;
use nahm_exact::triple_stability::TripleError;
use nahm_exact::vortex::VortexError;
use nahm_spectral::SpectralError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error(transparent)]
    Vortex(#[from] VortexError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("{0}")]
    Usage(String),
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    /// Name of the module the error originates from.
    pub fn tag(&self) -> &'static str {
        match self {
            CliError::Invariants(_) => "invariants",
            CliError::Triple(_) => "triple_stability",
            CliError::Vortex(_) => "vortex",
            CliError::Spectral(_) => "spectral_nahm",
            CliError::Usage(_) => "usage",
            CliError::UnsupportedFormat(_) => "emit",
            CliError::Io(_) => "io",
        }
    }
}
