use thiserror::Error;

/// Marker returned when an evaluation at zero broadening lands exactly on a
/// pole. Carries the real frequency that was probed.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("evaluation on a pole at omega = {omega}")]
pub struct Singular {
    pub omega: f64,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Singular(#[from] Singular),
    #[error("spin gap vanishes; susceptibility undefined")]
    DegenerateSpin,
    #[error("mean-field solver failed: {0}")]
    MeanField(String),
    #[error("bosonization failed: {0}")]
    Bosonization(String),
    #[error("quadratic Hamiltonian is dynamically unstable: {0}")]
    Unstable(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("export error: {0}")]
    Export(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be finite, got {x}")))
    }
}
