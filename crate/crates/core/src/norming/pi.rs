//! Weight sequences `1 = π₁ ≥ π₂ ≥ … > 0` with divergent sums, the data
//! defining a Lorentz norming function and its dual.

use std::fmt;
use std::str::FromStr;

use crate::error::{LeafError, Result};

/// Closed-form rule producing `π_j` for every `j ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum PiRule {
    /// `π_j = 1`.
    Constant,
    /// `π_j = j^{−α}`, `0 ≤ α < 1`.
    Power { alpha: f64 },
    /// Explicit prefix, then `π_j = π_L · (j/L)^{−α}` where `L` is the prefix
    /// length and `π_L` its last entry.
    PrefixPowerTail { prefix: Vec<f64>, alpha: f64 },
}

/// A weight sequence plus the horizon used for numerical suprema.
#[derive(Debug, Clone, PartialEq)]
pub struct PiSequence {
    rule: PiRule,
    horizon: usize,
}

pub const DEFAULT_HORIZON: usize = 100_000;

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(LeafError::InvalidParameter(format!(
            "power exponent alpha = {alpha} must lie in [0, 1) for the weights to have a divergent sum"
        )))
    }
}

impl PiSequence {
    pub fn constant() -> Self {
        Self { rule: PiRule::Constant, horizon: DEFAULT_HORIZON }
    }

    pub fn power(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self { rule: PiRule::Power { alpha }, horizon: DEFAULT_HORIZON })
    }

    pub fn prefix_power_tail(prefix: Vec<f64>, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if prefix.is_empty() || prefix[0] != 1.0 {
            return Err(LeafError::InvalidParameter("weight prefix must start with 1".into()));
        }
        if prefix.iter().any(|&p| !(p > 0.0 && p.is_finite())) || prefix.windows(2).any(|w| w[1] > w[0]) {
            return Err(LeafError::InvalidParameter("weight prefix must be positive and nonincreasing".into()));
        }
        Ok(Self { rule: PiRule::PrefixPowerTail { prefix, alpha }, horizon: DEFAULT_HORIZON })
    }

    pub fn with_horizon(mut self, horizon: usize) -> Result<Self> {
        if horizon == 0 {
            return Err(LeafError::InvalidParameter("horizon must be positive".into()));
        }
        self.horizon = horizon;
        Ok(self)
    }

    pub fn rule(&self) -> &PiRule {
        &self.rule
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// `π_j` for `j ≥ 1`.
    pub fn term(&self, j: usize) -> f64 {
        assert!(j >= 1, "weights are indexed from 1");
        match &self.rule {
            PiRule::Constant => 1.0,
            PiRule::Power { alpha } => (j as f64).powf(-alpha),
            PiRule::PrefixPowerTail { prefix, alpha } => {
                let len = prefix.len();
                if j <= len {
                    prefix[j - 1]
                } else {
                    prefix[len - 1] * (j as f64 / len as f64).powf(-alpha)
                }
            }
        }
    }

    /// `(π₁, …, π_n)`.
    pub fn terms(&self, n: usize) -> Vec<f64> {
        (1..=n).map(|j| self.term(j)).collect()
    }
}

impl fmt::Display for PiSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rule {
            PiRule::Constant => write!(f, "constant"),
            PiRule::Power { alpha } => write!(f, "power:{alpha}"),
            PiRule::PrefixPowerTail { prefix, alpha } => {
                let p: Vec<String> = prefix.iter().map(|x| x.to_string()).collect();
                write!(f, "prefix:{}:power:{alpha}", p.join(","))
            }
        }
    }
}

impl FromStr for PiSequence {
    type Err = LeafError;

    /// Parses the `Display` forms `constant`, `power:α` and
    /// `prefix:π₁,…,π_L:power:α`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || LeafError::InvalidParameter(format!("unrecognized weight sequence `{s}`"));
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["constant"] => Ok(Self::constant()),
            ["power", a] => Self::power(num(a)?),
            ["prefix", list, "power", a] => {
                let prefix = list.split(',').map(num).collect::<Result<Vec<f64>>>()?;
                Self::prefix_power_tail(prefix, num(a)?)
            }
            _ => Err(bad()),
        }
    }
}

/// Finite-horizon view of `sup_n (π₁ + … + π_n) / (n π_n)`.
#[derive(Debug, Clone)]
pub struct PiRegularity {
    /// `ratios[n − 1] = (Σ_{j≤n} π_j) / (n π_n)` for `n = 1..=horizon`.
    pub ratios: Vec<f64>,
    pub sup_over_horizon: f64,
    /// Stabilization heuristic: over the last half of the horizon the
    /// ratios are monotone and drift by less than 1% of their final value.
    pub monotone_tail: bool,
}

/// Regularity ratios up to the sequence's horizon. Regularity itself is a
/// supremum over all `n` and is not decided here.
pub fn pi_regularity(pi: &PiSequence) -> PiRegularity {
    let horizon = pi.horizon();
    let mut ratios = Vec::with_capacity(horizon);
    let mut partial = 0.0;
    for n in 1..=horizon {
        let t = pi.term(n);
        partial += t;
        ratios.push(partial / (n as f64 * t));
    }
    let sup_over_horizon = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tail = &ratios[(horizon - 1) / 2..];
    let nondecreasing = tail.windows(2).all(|w| w[1] >= w[0] - 1e-15 * w[0]);
    let nonincreasing = tail.windows(2).all(|w| w[1] <= w[0] + 1e-15 * w[0]);
    let last = *tail.last().expect("horizon is positive");
    let drift = (last - tail[0]).abs();
    let monotone_tail = (nondecreasing || nonincreasing) && drift <= 0.01 * last;
    PiRegularity { ratios, sup_over_horizon, monotone_tail }
}
