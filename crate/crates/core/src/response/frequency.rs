use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Singular};
use crate::C64;

/// Outcome of a response evaluation: a value, or a tagged pole hit.
pub type Eval<T> = std::result::Result<T, Singular>;

/// Retarded frequency `omega + i*delta` with `delta >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexFrequency {
    omega: f64,
    delta: f64,
}

impl ComplexFrequency {
    pub const DEFAULT_BROADENING: f64 = 1e-3;

    pub fn new(omega: f64, delta: f64) -> Result<Self> {
        if !omega.is_finite() || !delta.is_finite() || delta < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "frequency requires finite omega and delta >= 0, got ({omega}, {delta})"
            )));
        }
        Ok(Self { omega, delta })
    }

    /// Frequency on the real axis, as used by the pole finder.
    pub fn real(omega: f64) -> Self {
        Self { omega, delta: 0.0 }
    }

    pub fn with_default_broadening(omega: f64) -> Self {
        Self { omega, delta: Self::DEFAULT_BROADENING }
    }

    pub fn omega(self) -> f64 {
        self.omega
    }

    pub fn delta(self) -> f64 {
        self.delta
    }

    pub fn value(self) -> C64 {
        C64::new(self.omega, self.delta)
    }

    pub(crate) fn guard(self, z: C64) -> Eval<C64> {
        if z.is_finite() {
            Ok(z)
        } else {
            Err(Singular { omega: self.omega })
        }
    }
}

/// Matter operator index carried by susceptibility matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    X,
    Y,
    Z,
}

impl Operator {
    pub fn as_str(self) -> &'static str {
        match self {
            Operator::X => "x",
            Operator::Y => "y",
            Operator::Z => "z",
        }
    }
}

impl std::fmt::Display for Operator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
