//! Which balanced ensembles are reachable from a given discrepancy triple.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A discrepancy triple together with the caller's rationality declaration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum DeclaredDiscrepancy {
    /// d = γ·k with integer k (all pairwise ratios rational).
    Commensurate { gamma: f64, k: [i64; 3] },
    /// At least one ratio between nonzero entries is irrational.
    Incommensurate { d: [f64; 3] },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LatticeSpec {
    /// Already balanced: nothing moves.
    Balanced,
    /// Reachable balanced ensembles are dense among all balanced ensembles.
    Dense { reason: String },
    /// Reachable balanced ensembles are a union of lattices with log steps
    /// `steps[i] = multipliers[i]·gamma`; step values αᵢ = exp(steps[i]).
    Lattice {
        case: String,
        gamma: f64,
        multipliers: Vec<i64>,
        steps: Vec<f64>,
        alphas: Vec<f64>,
        constraint: String,
    },
}

fn lattice(case: &str, gamma: f64, multipliers: Vec<i64>, constraint: String) -> LatticeSpec {
    let steps: Vec<f64> = multipliers.iter().map(|m| *m as f64 * gamma).collect();
    LatticeSpec::Lattice {
        case: case.into(),
        gamma,
        alphas: steps.iter().map(|s| s.exp()).collect(),
        multipliers,
        steps,
        constraint,
    }
}

fn reduce(n: i64, d: i64) -> (i64, i64) {
    let g = n.gcd(&d);
    let (n, d) = (n / g, d / g);
    if d < 0 {
        (-n, -d)
    } else {
        (n, d)
    }
}

/// The six gcd step multipliers of the general commensurate case, in the
/// order (k₁,k₂), (k₁,k₃), (k₂,k₃), (k₁−k₂,k₃), (k₁+k₃,k₂), (k₁,k₂−k₃).
pub fn gcd_multipliers(k: [i64; 3]) -> [i64; 6] {
    let [k1, k2, k3] = k;
    [k1.gcd(&k2), k1.gcd(&k3), k2.gcd(&k3), (k1 - k2).gcd(&k3), (k1 + k3).gcd(&k2), k1.gcd(&(k2 - k3))]
}

pub fn reachability_classification(d: &DeclaredDiscrepancy) -> Result<LatticeSpec> {
    match d {
        DeclaredDiscrepancy::Incommensurate { d } => {
            if d.iter().any(|x| !x.is_finite()) {
                return Err(Error::Domain("discrepancies must be finite".into()));
            }
            let nonzero: Vec<f64> = d.iter().copied().filter(|x| *x != 0.0).collect();
            match nonzero.len() {
                0 => Ok(LatticeSpec::Balanced),
                1 => Ok(lattice(
                    "A",
                    nonzero[0].abs(),
                    vec![1],
                    "dollar exponents n₁,n₂,n₃ arbitrary integers; cross exponents forced by balance".into(),
                )),
                _ => Ok(LatticeSpec::Dense {
                    reason: "a ratio of nonzero discrepancies is declared irrational".into(),
                }),
            }
        }
        DeclaredDiscrepancy::Commensurate { gamma, k } => {
            if !gamma.is_finite() || *gamma == 0.0 {
                return Err(Error::Domain("γ must be finite and nonzero".into()));
            }
            if k.iter().all(|x| *x == 0) {
                return Ok(LatticeSpec::Balanced);
            }
            let g = k.iter().fold(0i64, |acc, x| acc.gcd(x));
            let gamma = gamma * g as f64;
            let k = k.map(|x| x / g);
            let nonzero: Vec<i64> = k.iter().copied().filter(|x| *x != 0).collect();
            let free = "dollar exponents n₁,n₂,n₃ arbitrary integers; cross exponents forced by balance";
            match nonzero.len() {
                1 => Ok(lattice("A", gamma.abs(), vec![1], free.into())),
                2 => {
                    // q = m/n for the two nonzero entries: the step is d_first/n = d_second/m.
                    let (_, n) = reduce(nonzero[1], nonzero[0]);
                    let step = nonzero[0] / n;
                    Ok(lattice("B", gamma, vec![step.abs()], free.into()))
                }
                _ => {
                    let (_, n1) = reduce(k[1], k[0]);
                    let (_, n2) = reduce(k[2], k[0]);
                    let l = n1.lcm(&n2);
                    if l == n1 * n2 {
                        let step = k[0] / l;
                        Ok(lattice("C", gamma, vec![step.abs()], free.into()))
                    } else {
                        Ok(lattice(
                            "C-general",
                            gamma.abs(),
                            gcd_multipliers(k).to_vec(),
                            "union over the six steps; each lattice has arbitrary integer dollar exponents".into(),
                        ))
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_multipliers() {
        assert_eq!(gcd_multipliers([595, 1683, 308]), [17, 7, 11, 4, 3, 5]);
    }

    #[test]
    fn zero_is_balanced() {
        let spec = reachability_classification(&DeclaredDiscrepancy::Commensurate { gamma: 1.0, k: [0, 0, 0] }).unwrap();
        assert_eq!(spec, LatticeSpec::Balanced);
    }

    #[test]
    fn irrational_pair_is_dense() {
        let d = DeclaredDiscrepancy::Incommensurate { d: [1.0, 2f64.sqrt(), 0.0] };
        assert!(matches!(reachability_classification(&d).unwrap(), LatticeSpec::Dense { .. }));
    }

    #[test]
    fn case_b_step_is_common_measure() {
        // d = (2γ, 3γ, 0): q = 3/2, step d₁/2 = d₂/3 = γ.
        let d = DeclaredDiscrepancy::Commensurate { gamma: 0.5, k: [2, 3, 0] };
        match reachability_classification(&d).unwrap() {
            LatticeSpec::Lattice { steps, case, .. } => {
                assert_eq!(case, "B");
                assert!((steps[0].abs() - 0.5).abs() < 1e-15);
            }
            other => panic!("{other:?}"),
        }
    }
}
