use autorbit_core::{FamilyError, OrbitError, StructureError, WordError};
use std::fmt;

/// Anything a command can fail with, carrying the process exit code:
/// 2 for unusable input, 3 when a search cap was hit.
#[derive(Debug)]
pub enum CliError {
    Word(WordError),
    Orbit(OrbitError),
    Family(FamilyError),
    Structure(StructureError),
    Usage(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        if self.is_resource_limit() {
            3
        } else {
            2
        }
    }

    fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            CliError::Orbit(OrbitError::LimitExceeded { .. })
                | CliError::Family(FamilyError::Orbit(OrbitError::LimitExceeded { .. }))
                | CliError::Structure(StructureError::Orbit(OrbitError::LimitExceeded { .. }))
        )
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Word(e) => fmt::Display::fmt(e, f),
            CliError::Orbit(e) => fmt::Display::fmt(e, f),
            CliError::Family(e) => fmt::Display::fmt(e, f),
            CliError::Structure(e) => fmt::Display::fmt(e, f),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Io(e) => fmt::Display::fmt(e, f),
        }
    }
}

impl std::error::Error for CliError {}

impl From<WordError> for CliError {
    fn from(e: WordError) -> CliError {
        CliError::Word(e)
    }
}

impl From<OrbitError> for CliError {
    fn from(e: OrbitError) -> CliError {
        CliError::Orbit(e)
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> CliError {
        CliError::Family(e)
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> CliError {
        CliError::Structure(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Io(e)
    }
}
