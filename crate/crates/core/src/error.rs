use num_complex::Complex64;
use thiserror::Error;

/// What the limit driver saw before giving up.
#[derive(Debug, Clone, PartialEq)]
pub struct NotSummable {
    /// Highest power of P that was tried.
    pub max_power: u32,
    /// Averaged lattice values at the probe points, for the highest power tried.
    pub last_values: Vec<Complex64>,
    /// Coefficient b of a fitted `a + b·ln t` drift, when one was detected.
    pub log_growth: Option<Complex64>,
    pub reason: String,
}

impl std::fmt::Display for NotSummable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (tried P^0..P^{})", self.reason, self.max_power)?;
        if let Some(b) = self.log_growth {
            write!(f, "; residual grows like ({:.3e}{:+.3e}i)·ln t", b.re, b.im)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CesaroError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("power −1 is not an eigenfunction of P")]
    SingularEigenvalue,
    #[error("misuse: {0}")]
    Misuse(String),
    #[error("not Cesàro summable: {0}")]
    NotCesaroSummable(Box<NotSummable>),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("resolution: {0}")]
    Resolution(String),
    #[error("excluded case: {0}")]
    Excluded(String),
}

pub type Result<T> = std::result::Result<T, CesaroError>;
