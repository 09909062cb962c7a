//! Eventual behaviour of periodic arbitrage chains.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Lin;
use crate::market::{Chain, RateEnsemble};

/// Numeric-mode equality tolerance for shift comparisons.
const NUMERIC_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Periodicity {
    /// Rₙ₊q = Rₙ from the transient bound on; q minimal among divisors of 24p.
    Periodic { q: usize },
    /// Rₙ₊q = γ·Rₙ componentwise with some γⱼ ≠ 1.
    Divergent { q: usize, factors: [f64; 6], log_shift: [f64; 6] },
}

impl Periodicity {
    pub fn q(&self) -> usize {
        match self {
            Periodicity::Periodic { q } | Periodicity::Divergent { q, .. } => *q,
        }
    }
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

enum Track {
    Exact(Vec<[Lin; 6]>),
    Float(Vec<[f64; 6]>),
}

impl Track {
    fn shift_const(&self, start: usize, window: usize, q: usize) -> bool {
        match self {
            Track::Exact(s) => {
                let d = |n: usize| -> [Lin; 6] { std::array::from_fn(|j| s[n + q][j] - s[n][j]) };
                let s0 = d(start);
                (start..start + window).all(|n| d(n) == s0)
            }
            Track::Float(s) => {
                let d = |n: usize| -> [f64; 6] { std::array::from_fn(|j| s[n + q][j] - s[n][j]) };
                let s0 = d(start);
                (start..start + window).all(|n| d(n).iter().zip(&s0).all(|(x, y)| (x - y).abs() <= NUMERIC_TOL))
            }
        }
    }
}

/// Classifies the orbit of `r0` under the periodic `chain` from step 36p on.
pub fn classify_periodic_chain(chain: &Chain, r0: &RateEnsemble) -> Result<Periodicity> {
    chain.validate()?;
    let p = chain.len();
    if p == 0 {
        return Err(Error::Domain("periodic chain needs a nonempty block".into()));
    }
    let periodic = Chain::periodic(chain.chain.clone());
    let start = 36 * p;
    let window = 24 * p;
    let total = start + window + 24 * p;
    let traj = r0.apply_chain(&periodic, total)?;
    let numeric: Vec<[f64; 6]> = traj.iter().map(RateEnsemble::log_rates).collect();
    let track = match r0 {
        RateEnsemble::Lattice { .. } => Track::Exact(traj.iter().map(|r| *r.coeffs().expect("lattice")).collect()),
        RateEnsemble::Numeric { .. } => Track::Float(numeric.clone()),
    };
    for q in divisors(24 * p) {
        if !track.shift_const(start, window, q) {
            continue;
        }
        let shift: [f64; 6] = std::array::from_fn(|j| numeric[start + q][j] - numeric[start][j]);
        let zero = match &track {
            Track::Exact(s) => s[start + q] == s[start],
            Track::Float(_) => shift.iter().all(|x| x.abs() <= NUMERIC_TOL),
        };
        return Ok(if zero {
            Periodicity::Periodic { q }
        } else {
            Periodicity::Divergent { q, factors: shift.map(f64::exp), log_shift: shift }
        });
    }
    Err(Error::Verification(format!("no divisor of {} gives a constant shift", 24 * p)))
}

/// Smallest q ≥ 1 with Rₙ₊q = Rₙ for all n in `[from, from + window)` (lattice exact).
pub fn minimal_period(traj: &[RateEnsemble], from: usize, window: usize) -> Option<usize> {
    let n = traj.len();
    (1..n).find(|&q| (from..from + window).all(|i| i + q < n && traj[i + q] == traj[i]))
}
