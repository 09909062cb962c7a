//! Two-generator starts: exact offsets and approximate targets.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{GeneratorBasis, Lin};
use crate::market::{lattice_discrepancies, Coeffs, RateEnsemble};

use super::words::{adjust_single, exit_b, pumps_b, realize_chain, HOME_B};

/// Lattice start with discrepancies exactly (a, b, 0) over the given base.
pub fn case_b_start(a: f64, b: f64, base: [f64; 3]) -> Result<RateEnsemble> {
    let basis = GeneratorBasis::pair(a, b, base)?;
    check_generic(&basis)?;
    let mut coeffs = [Lin::ZERO; 6];
    coeffs[3] = Lin::A;
    coeffs[4] = Lin::B;
    Ok(RateEnsemble::lattice(basis, coeffs))
}

/// a, b, a±b, a−2b and 2a−b must all be nonzero.
pub fn check_generic(basis: &GeneratorBasis) -> Result<()> {
    if basis.rank() != 2 {
        return Err(Error::WrongCase("two generators are required".into()));
    }
    for (x, name) in [
        (Lin::A, "a"),
        (Lin::B, "b"),
        (Lin::new(1, -1), "a-b"),
        (Lin::new(1, 1), "a+b"),
        (Lin::new(1, -2), "a-2b"),
        (Lin::new(2, -1), "2a-b"),
    ] {
        if basis.sign(x) == 0 {
            return Err(Error::Degenerate(format!("{name} vanishes; use single-generator handling")));
        }
    }
    Ok(())
}

fn case_b_parts(r0: &RateEnsemble) -> Result<(Coeffs, &GeneratorBasis)> {
    let (Some(c), Some(basis)) = (r0.coeffs(), r0.basis()) else {
        return Err(Error::WrongCase("needs a lattice ensemble".into()));
    };
    check_generic(basis)?;
    if lattice_discrepancies(c) != HOME_B {
        return Err(Error::WrongCase(format!(
            "discrepancies must be exactly (a, b, 0), got {:?}",
            lattice_discrepancies(c)
        )));
    }
    Ok((*c, basis))
}

/// Chain to the balanced state whose dollar log-rates are
/// lᵢ + a_offsets[i]·a + b_offsets[i]·b.
pub fn reach_offsets(r0: &RateEnsemble, a_offsets: [i64; 3], b_offsets: [i64; 3]) -> Result<Vec<usize>> {
    let (c, basis) = case_b_parts(r0)?;
    let target: [Lin; 3] = std::array::from_fn(|i| c[i] + Lin::new(a_offsets[i], b_offsets[i]));
    let pumps = pumps_b();
    let mut word = Vec::new();
    for (i, &n) in b_offsets.iter().enumerate() {
        for _ in 0..n.unsigned_abs() {
            word.extend_from_slice(&pumps.get(i, n > 0).strongs);
        }
    }
    word.extend_from_slice(&exit_b().strongs);
    let mut chain = Vec::new();
    let mid = realize_chain(&c, basis, &word, &mut chain)?;
    if (0..3).any(|i| mid[i].b() != target[i].b()) {
        return Err(Error::Internal("b offsets not met after pumping".into()));
    }
    adjust_single(&mid, basis, &target, &mut chain)?;
    Ok(chain)
}

/// Chain ending balanced at dollar log-rates
/// (l₁ + M₁a − N₁b, l₂ + M₂a + N₂b, l₃ + M₃a − N₃b).
pub fn reach_exponents(r0: &RateEnsemble, m: [i64; 3], n: [i64; 3]) -> Result<Vec<usize>> {
    if m.iter().chain(&n).any(|x| *x < 0) {
        return Err(Error::Domain("M and N must be non-negative".into()));
    }
    reach_offsets(r0, m, [-n[0], n[1], -n[2]])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Approximation {
    pub chain: Vec<usize>,
    pub a_offsets: [i64; 3],
    pub b_offsets: [i64; 3],
    /// Max-norm distance over the six log-rates at the end state.
    pub error: f64,
}

/// Denominators of the continued-fraction convergents of x up to `limit`.
fn convergent_denominators(x: f64, limit: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let (mut q0, mut q1) = (1i64, 0i64);
    let mut r = x.abs();
    for _ in 0..64 {
        let a = r.floor();
        let q2 = (a as i64).saturating_mul(q1).saturating_add(q0);
        if q2 > limit || q2 <= 0 {
            break;
        }
        out.push(q2);
        let frac = r - a;
        if frac < 1e-15 {
            break;
        }
        r = 1.0 / frac;
        q0 = q1;
        q1 = q2;
    }
    out
}

/// Best (M, N) with |M·a + N·b − delta| ≤ tol and |M|, |N| ≤ budget.
fn solve_coordinate(a: f64, b: f64, delta: f64, tol: f64, budget: i64, order: &[i64]) -> Option<(i64, i64)> {
    let try_n = |n: i64| -> Option<(i64, i64)> {
        let m = ((delta - n as f64 * b) / a).round();
        if m.abs() > budget as f64 {
            return None;
        }
        let m = m as i64;
        ((m as f64 * a + n as f64 * b - delta).abs() <= tol).then_some((m, n))
    };
    order.iter().find_map(|&n| try_n(n))
}

/// Chain from a two-generator start to within `eps` (max-norm over the six
/// log-rates) of the balanced numeric `target`. The generator ratio is
/// assumed irrational; `Ok(None)` means the budget was too small.
pub fn approximate_target(r0: &RateEnsemble, target: &RateEnsemble, eps: f64, budget: usize) -> Result<Option<Approximation>> {
    let (_, basis) = case_b_parts(r0)?;
    if !(eps > 0.0) {
        return Err(Error::Domain("eps must be positive".into()));
    }
    if !target.is_balanced(1e-12) {
        return Err(Error::Domain("target must be balanced".into()));
    }
    let (a, b) = (basis.value(Lin::A), basis.value(Lin::B));
    let start = r0.log_rates();
    let goal = target.log_rates();
    let budget = budget as i64;
    let mut order = Vec::new();
    for q in convergent_denominators(b / a, budget) {
        order.extend([q, -q]);
    }
    order.push(0);
    for n in 1..=budget {
        order.extend([n, -n]);
    }
    let mut a_off = [0i64; 3];
    let mut b_off = [0i64; 3];
    for i in 0..3 {
        let delta = goal[i] - start[i];
        match solve_coordinate(a, b, delta, eps / 2.0, budget, &order) {
            Some((m, n)) => {
                a_off[i] = m;
                b_off[i] = n;
            }
            None => return Ok(None),
        }
    }
    let chain = reach_offsets(r0, a_off, b_off)?;
    let end = r0.apply_chain(&crate::market::Chain::finite(chain.clone()), chain.len())?;
    let end = end.last().expect("nonempty").log_rates();
    let error = end.iter().zip(&goal).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    Ok(Some(Approximation { chain, a_offsets: a_off, b_offsets: b_off, error }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convergents_of_sqrt2() {
        assert_eq!(convergent_denominators(2f64.sqrt(), 100), vec![1, 2, 5, 12, 29, 70]);
    }

    #[test]
    fn zero_offsets_only_balance() {
        let r = case_b_start(1.0, 2f64.sqrt(), [0.0; 3]).unwrap();
        let chain = reach_offsets(&r, [0; 3], [0; 3]).unwrap();
        let end = r.apply_chain(&crate::market::Chain::finite(chain.clone()), chain.len()).unwrap();
        let c = *end.last().unwrap().coeffs().unwrap();
        assert_eq!(&c[..3], &[Lin::ZERO; 3]);
        assert!(end.last().unwrap().discrepancies().is_zero());
    }

    #[test]
    fn degenerate_pair_rejected() {
        assert!(case_b_start(1.0, 2.0, [0.0; 3]).is_err());
        assert!(case_b_start(1.0, -1.0, [0.0; 3]).is_err());
    }
}
