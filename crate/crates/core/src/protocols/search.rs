use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{theorem1_residual, theorem2_residual};
use crate::par::{self, Execution};
use crate::states::{haar_sample, PureState, StateJson};
use crate::tensor::Dims;

use super::Grouping;

/// A residual below this counts as a violation.
pub const VIOLATION_TOL: f64 = 1e-9;

/// Which monogamy-type inequality to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Residual {
    /// Negativity: `N(AC:B) + N(AB:C) ≥ N(A:CB)`.
    Theorem1,
    /// Logarithmic negativity version of the same inequality.
    Theorem2,
}

impl Residual {
    pub fn evaluate(self, psi: &PureState, g: &Grouping) -> Result<f64> {
        match self {
            Residual::Theorem1 => theorem1_residual(psi, g),
            Residual::Theorem2 => theorem2_residual(psi, g),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Residual::Theorem1 => "theorem1",
            Residual::Theorem2 => "theorem2",
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Residual {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem1" | "negativity" => Ok(Residual::Theorem1),
            "theorem2" | "log_negativity" => Ok(Residual::Theorem2),
            other => Err(Error::UnknownMeasure(other.to_string())),
        }
    }
}

/// A sampled state violating the tested inequality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// Position in the seeded sample stream.
    pub index: u64,
    pub residual: f64,
    #[serde(flatten)]
    pub state: StateJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub dims: Dims,
    pub residual: Residual,
    pub trials: u64,
    pub seed: u64,
    /// Smallest residual seen over all samples.
    pub min_residual: f64,
    pub witnesses: Vec<Witness>,
}

/// Haar states on `[d_a, 2, 2]` whose residual is below `−1e-9`.
pub fn search_violation(d_a: usize, trials: u64, seed: u64, residual: Residual) -> Result<Vec<PureState>> {
    search_violation_with(d_a, trials, seed, residual, Execution::default())?
        .witnesses
        .iter()
        .map(|w| w.state.to_pure())
        .collect()
}

/// Full search report. Sample `i` depends only on `(seed, i)`, so the result
/// is identical for every execution mode.
pub fn search_violation_with(
    d_a: usize,
    trials: u64,
    seed: u64,
    residual: Residual,
    exec: Execution,
) -> Result<SearchReport> {
    if trials == 0 {
        return Err(Error::InvalidAxis("trials must be at least 1".into()));
    }
    let dims = Dims::new(vec![d_a, 2, 2])?;
    let g = Grouping::new(vec![0], vec![1], vec![2])?;
    let values = par::try_map_indexed(exec, trials as usize, |i| {
        let psi = haar_sample(dims.clone(), seed, i as u64);
        residual.evaluate(&psi, &g).map(|r| (r, psi))
    })?;
    let mut min_residual = f64::INFINITY;
    let mut witnesses = Vec::new();
    for (i, (r, psi)) in values.into_iter().enumerate() {
        min_residual = min_residual.min(r);
        if r < -VIOLATION_TOL {
            witnesses.push(Witness {
                index: i as u64,
                residual: r,
                state: StateJson::from(&psi),
            });
        }
    }
    Ok(SearchReport {
        dims,
        residual,
        trials,
        seed,
        min_residual,
        witnesses,
    })
}
