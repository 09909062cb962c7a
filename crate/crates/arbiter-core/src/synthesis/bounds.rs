//! Exponent bounds along orbits of the first perturbed start.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::market::RateEnsemble;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundViolation {
    pub step: usize,
    pub exponents: [i64; 6],
    pub rule: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BoundReport {
    pub states_checked: usize,
    pub violations: Vec<BoundViolation>,
}

impl BoundReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every state of a single-generator trajectory: each discrepancy
/// exponent stays within ±1, and at the final state of an N-step chain
/// 3(|n₁−1|+|n₂|+|n₃|) ≤ N+8.
pub fn check_exponent_bounds(trajectory: &[RateEnsemble]) -> Result<BoundReport> {
    let mut rep = BoundReport::default();
    for (step, r) in trajectory.iter().enumerate() {
        let Some(c) = r.coeffs() else {
            return Err(Error::Domain("bound checks need lattice states".into()));
        };
        if c.iter().any(|x| x.b() != 0) {
            return Err(Error::Domain("bound checks need a single generator".into()));
        }
        let n: [i64; 6] = c.map(|x| x.a());
        rep.states_checked += 1;
        let d = [n[0] - n[1] + n[3], n[0] - n[2] + n[4], n[1] - n[2] + n[5]];
        for (j, v) in d.iter().enumerate() {
            if v.abs() > 1 {
                rep.violations.push(BoundViolation { step, exponents: n, rule: format!("discrepancy exponent {} = {v}", j + 1) });
            }
        }
    }
    if let Some(last) = trajectory.last() {
        let n = last.coeffs().expect("checked").map(|x| x.a());
        let steps = trajectory.len() as i64 - 1;
        let lhs = 3 * ((n[0] - 1).abs() + n[1].abs() + n[2].abs());
        if lhs > steps + 8 {
            rep.violations.push(BoundViolation {
                step: steps as usize,
                exponents: n,
                rule: format!("3(|n1-1|+|n2|+|n3|) = {lhs} > N+8 = {}", steps + 8),
            });
        }
    }
    Ok(rep)
}

/// Uniform random arbitrage indices, reproducible from `seed`.
pub fn random_chain(seed: u64, len: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.gen_range(1..=24)).collect()
}

/// Runs `count` random chains of length `len` and aggregates the reports.
pub fn random_bound_sweep(r0: &RateEnsemble, count: usize, len: usize, seed: u64) -> Result<BoundReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = BoundReport::default();
    for _ in 0..count {
        let chain: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=24)).collect();
        let traj = r0.apply_chain(&crate::market::Chain::finite(chain), len)?;
        let rep = check_exponent_bounds(&traj)?;
        total.states_checked += rep.states_checked;
        total.violations.extend(rep.violations);
    }
    Ok(total)
}

/// A 12-step chain whose end state breaks the final-state inequality.
pub const BOUND_COUNTEREXAMPLE: [usize; 12] = [3, 21, 6, 2, 3, 6, 2, 3, 6, 2, 3, 6];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::market::Chain;
    use crate::synthesis::standard_start;

    #[test]
    fn start_is_within_bounds() {
        let r = standard_start(1, 2.0).unwrap();
        assert!(check_exponent_bounds(&[r]).unwrap().ok());
    }

    #[test]
    fn counterexample_breaks_final_inequality() {
        let r = standard_start(1, 2.0).unwrap();
        let traj = r.apply_chain(&Chain::finite(BOUND_COUNTEREXAMPLE.to_vec()), 12).unwrap();
        assert_eq!(traj.last().unwrap().coeffs().unwrap().map(|x| x.a()), [4, 4, 4, 0, -1, 0]);
        let rep = check_exponent_bounds(&traj).unwrap();
        assert_eq!(rep.violations.len(), 1);
    }
}
