//! Evaluation coordinates shared by every route.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Temperature regime. In the low phase `t = k^-2`, in the high phase `t = k^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Low,
    High,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Low => "low",
            Phase::High => "high",
        })
    }
}

impl FromStr for Phase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "low" => Ok(Phase::Low),
            "high" => Ok(Phase::High),
            _ => Err(Error::Parameter(format!("unknown phase '{s}'"))),
        }
    }
}

/// `(phase, n, t, lambda)` with `0 <= t < 1` and `lambda >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelPoint {
    pub phase: Phase,
    pub n: u32,
    pub t: f64,
    pub lambda: f64,
}

impl ModelPoint {
    pub fn new(phase: Phase, n: u32, t: f64, lambda: f64) -> Result<Self> {
        let p = Self { phase, n, t, lambda };
        p.validate()?;
        Ok(p)
    }

    pub fn low(n: u32, t: f64, lambda: f64) -> Result<Self> {
        Self::new(Phase::Low, n, t, lambda)
    }

    pub fn high(n: u32, t: f64, lambda: f64) -> Result<Self> {
        Self::new(Phase::High, n, t, lambda)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t.is_finite() && self.t >= 0.0 && self.t < 1.0) {
            return Err(Error::Domain(format!("t = {} outside [0,1)", self.t)));
        }
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return Err(Error::Domain(format!("lambda = {} must be finite and >= 0", self.lambda)));
        }
        Ok(())
    }

    /// `(1-t)^(1/4)`.
    pub fn prefactor(&self) -> f64 {
        (1.0 - self.t).powf(0.25)
    }
}
