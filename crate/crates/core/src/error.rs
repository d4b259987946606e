use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid spin quantum number {0}: 2s must be a positive integer")]
    InvalidSpin(f64),

    #[error("axis must have unit norm, got |axis| = {norm}")]
    NonUnitAxis { norm: f64 },

    #[error("operator dimension {op} does not match subsystem slot dimension {slot}")]
    DimensionMismatch { op: usize, slot: usize },

    #[error("subsystem index {index} out of range for {len} subsystems")]
    SlotOutOfRange { index: usize, len: usize },

    #[error("nucleus index {index} out of range: center has {len} nuclei")]
    NucleusOutOfRange { index: usize, len: usize },

    #[error("{0} must be finite")]
    NonFinite(&'static str),

    #[error("zero-field splitting D = {d} MHz given for a spin-1/2 center")]
    ZfsOnSpinHalf { d: f64 },

    #[error("operation requires a second center but the system has only one")]
    MissingSecondCenter,

    #[error("center with spin {spin} has no Ms = 0 sublevel")]
    NoBrightState { spin: f64 },

    #[error("polarization degree alpha = {0} outside [0, 1]")]
    InvalidAlpha(f64),

    #[error("matrix is not Hermitian: max |H - H^dagger| = {residual:e}")]
    NotHermitian { residual: f64 },

    #[error("eigendecomposition failed to converge")]
    EigenFailure,

    #[error("mean evolution time must be positive, got {0} s")]
    InvalidTau(f64),

    #[error("population has imaginary residue {0:e}")]
    ImaginaryResidue(f64),

    #[error("population {0} outside the admissible range")]
    PopulationOutOfRange(f64),

    #[error("invalid field grid: {0}")]
    InvalidGrid(String),

    #[error("spectra are defined on different field grids")]
    GridMismatch,

    #[error("derivative needs at least 3 points, got {0}")]
    TooFewPoints(usize),

    #[error("empty orientation ensemble")]
    EmptyEnsemble,

    #[error("at B0 = {field_gauss} G: {source}")]
    AtField {
        field_gauss: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("config parse error: {0}")]
    Parse(String),

    #[error("invalid config: {0}")]
    Validation(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed spectrum file: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn at_field(self, field_gauss: f64) -> Self {
        Error::AtField {
            field_gauss,
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
