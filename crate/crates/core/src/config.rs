use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scoring::DEFAULT_LAMBDA;

pub const DEFAULT_ALPHA: f64 = 1.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "2ps")]
    TwoPs,
    #[serde(rename = "hdrf")]
    Hdrf,
    #[serde(rename = "dbh")]
    Dbh,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::TwoPs, Algorithm::Hdrf, Algorithm::Dbh];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::TwoPs => "2ps",
            Algorithm::Hdrf => "hdrf",
            Algorithm::Dbh => "dbh",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "2ps" => Ok(Algorithm::TwoPs),
            "hdrf" => Ok(Algorithm::Hdrf),
            "dbh" => Ok(Algorithm::Dbh),
            other => Err(Error::config(format!(
                "unknown algorithm {other:?} (expected 2ps, hdrf or dbh)"
            ))),
        }
    }
}

/// Partition count, balance factor α and HDRF's λ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionerConfig {
    pub k: usize,
    pub alpha: f64,
    pub lambda: f64,
}

impl PartitionerConfig {
    pub fn new(k: usize) -> Self {
        PartitionerConfig {
            k,
            alpha: DEFAULT_ALPHA,
            lambda: DEFAULT_LAMBDA,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    /// `min_k` is 2 for 2PS and 1 for the baselines.
    pub fn validate(&self, min_k: usize) -> Result<()> {
        if self.k < min_k {
            return Err(Error::config(format!(
                "k must be at least {min_k}, got {}",
                self.k
            )));
        }
        if self.k > u32::MAX as usize {
            return Err(Error::config("k exceeds the 32-bit partition id space"));
        }
        if !self.alpha.is_finite() || self.alpha < 1.0 {
            return Err(Error::config(format!(
                "alpha must be >= 1, got {}",
                self.alpha
            )));
        }
        if !self.lambda.is_finite() || self.lambda < 0.0 {
            return Err(Error::config(format!(
                "lambda must be a finite value >= 0, got {}",
                self.lambda
            )));
        }
        Ok(())
    }
}
