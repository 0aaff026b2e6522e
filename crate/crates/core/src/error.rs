use num_complex::Complex64;
use thiserror::Error;

/// Errors surfaced by the library. Domain errors identify the offending
/// input, accuracy errors carry the tolerance that was actually achieved,
/// and configuration errors name the violated condition so a harness run
/// can report it verbatim.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("gamma pole at z = {z} (non-positive integer on the real axis)")]
    GammaPole { z: Complex64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("accuracy failure in {context}: achieved {achieved:.3e}, required {required:.3e}")]
    Accuracy {
        context: &'static str,
        achieved: f64,
        required: f64,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("functions do not share a measure ({0})")]
    MeasureMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
