//! Chain construction and reachability.

pub mod bfs;
pub mod bounds;
pub mod caseb;
pub mod classify;
pub mod formulas;
pub mod knots;
pub mod star;
pub mod words;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{GeneratorBasis, Lin};
use crate::market::{Coeffs, RateEnsemble};

pub use bfs::{bfs_chain, BfsTree};
pub use bounds::{check_exponent_bounds, BoundReport};
pub use caseb::{approximate_target, reach_exponents, reach_offsets};
pub use classify::{reachability_classification, DeclaredDiscrepancy, LatticeSpec};
pub use formulas::{basic_chain, variant_chain};
pub use star::{printed_star_chain, star_chain};

/// Default α for the perturbed starting ensembles.
pub const DEFAULT_ALPHA: f64 = 2.0;

/// Target powers (n₁, n₂, n₃) of α on the three dollar rates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TargetExponents(pub [i64; 3]);

impl TargetExponents {
    pub fn new(n1: i64, n2: i64, n3: i64) -> Self {
        TargetExponents([n1, n2, n3])
    }

    /// Balanced 6-vector of exponents (n₁, n₂, n₃, n₂−n₁, n₃−n₁, n₃−n₂).
    pub fn full(&self) -> [i64; 6] {
        let [n1, n2, n3] = self.0;
        [n1, n2, n3, n2 - n1, n3 - n1, n3 - n2]
    }

    pub fn coeffs(&self) -> Coeffs {
        self.full().map(|n| Lin::new(n, 0))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<i64> = s
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|e| Error::Parse(format!("target component {p:?}: {e}"))))
            .collect::<Result<_>>()?;
        match parts.as_slice() {
            [a, b, c] => Ok(Self::new(*a, *b, *c)),
            _ => Err(Error::Parse(format!("expected n1,n2,n3, got {s:?}"))),
        }
    }
}

/// The six perturbed starts over base zeros with generator log α.
pub fn standard_start(which: usize, alpha: f64) -> Result<RateEnsemble> {
    if !(alpha > 0.0) || alpha == 1.0 {
        return Err(Error::Domain("α must be positive and ≠ 1".into()));
    }
    RateEnsemble::perturbed(&GeneratorBasis::single(alpha.ln(), [0.0; 3])?, which)
}

/// Published length bound for start `which` and target `n`.
pub fn length_bound(which: usize, n: TargetExponents) -> Result<usize> {
    let [n1, n2, n3] = n.0;
    let v = match which {
        1 => 3 * ((n1 - 1).abs() + n2.abs() + n3.abs()) + 3,
        2 => 3 * (n1.abs() + (n2 - 1).abs() + n3.abs()) + 3,
        3 => 3 * (n1.abs() + n2.abs() + (n3 - 1).abs()) + 3,
        4..=6 => 3 * (n1.abs() + n2.abs() + n3.abs()) + 4,
        _ => return Err(Error::OutOfRange(format!("start {which}"))),
    };
    Ok(v as usize)
}

/// Outcome of a synthesis request.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SynthResult {
    pub chain: Vec<usize>,
    pub length: usize,
    pub bound: usize,
    pub method: String,
    /// The published formula did not reach the target (or could not be built).
    pub deviation: bool,
    pub note: Option<String>,
}

impl SynthResult {
    pub fn within_bound(&self) -> bool {
        self.length <= self.bound
    }
}

/// Runs `chain` from `r0` and reports whether it lands exactly on `target`.
pub fn reaches(r0: &RateEnsemble, chain: &[usize], target: &Coeffs) -> Result<bool> {
    let Some(mut c) = r0.coeffs().copied() else {
        return Err(Error::Domain("exact check needs a lattice ensemble".into()));
    };
    let basis = r0.basis().expect("lattice");
    for &k in chain {
        if !(1..=24).contains(&k) {
            return Err(Error::OutOfRange(format!("arbitrage {k}")));
        }
        if let Some(n) = crate::market::lattice_apply(&c, k, basis) {
            c = n;
        }
    }
    Ok(&c == target)
}
