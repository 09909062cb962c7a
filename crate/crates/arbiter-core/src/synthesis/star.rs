//! The 24-periodic non-converging chain.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::market::{lattice_discrepancies, Chain, RateEnsemble};
use crate::periodic::minimal_period;
use crate::reference::{STAR_CHAIN_PRINTED, STAR_ROUTE};
use crate::semigroup::disc12_index;

/// A 24-block that realizes the published discrepancy route with every step
/// active. Differs from the printed list at positions 5, 7, 8, 13, 15, 18, 24.
pub const STAR_CHAIN: [usize; 24] = [
    15, 10, 3, 21, 12, 8, 23, 18, 6, 9, 16, 13, 11, 22, 2, 17, 24, 20, 5, 7, 4, 19, 1, 14,
];

pub fn star_chain() -> Chain {
    Chain::periodic(STAR_CHAIN.to_vec())
}

pub fn printed_star_chain() -> Chain {
    Chain::periodic(STAR_CHAIN_PRINTED.to_vec())
}

/// What running a 24-block from the first perturbed start shows.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StarReport {
    pub fired: Vec<bool>,
    /// 1-based step of the first inactive arbitrage, if any.
    pub first_inactive: Option<usize>,
    /// Discrepancy route as indices into the 12-element list (0 = balanced).
    pub route: Vec<usize>,
    pub route_matches: bool,
    pub minimal_period: Option<usize>,
    pub distinct_states: usize,
}

impl StarReport {
    pub fn passes(&self) -> bool {
        self.first_inactive.is_none() && self.route_matches && self.minimal_period == Some(24)
    }
}

pub fn analyze_star(chain: &Chain, r0: &RateEnsemble) -> Result<StarReport> {
    if chain.len() != 24 {
        return Err(Error::Domain("expected a 24-block".into()));
    }
    if r0.basis().map(|b| b.rank()) != Some(1) {
        return Err(Error::Domain("needs a single-generator lattice start".into()));
    }
    let (traj, fired) = r0.run_chain(chain, 96)?;
    let route: Vec<usize> = traj[..=24]
        .iter()
        .map(|r| {
            let d = lattice_discrepancies(r.coeffs().expect("lattice"));
            if d.iter().any(|x| x.b() != 0) {
                return usize::MAX;
            }
            disc12_index(&d.map(|x| x.a())).unwrap_or(usize::MAX)
        })
        .collect();
    let distinct_states = {
        let mut seen: Vec<&RateEnsemble> = Vec::new();
        for r in &traj[..24] {
            if !seen.contains(&r) {
                seen.push(r);
            }
        }
        seen.len()
    };
    Ok(StarReport {
        first_inactive: fired[..24].iter().position(|f| !f).map(|p| p + 1),
        fired: fired[..24].to_vec(),
        route_matches: route == STAR_ROUTE,
        route,
        minimal_period: minimal_period(&traj, 0, 48),
        distinct_states,
    })
}
