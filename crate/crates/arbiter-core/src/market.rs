//! Rate ensembles, the 24 arbitrage operators and their strong versions.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::currency::{Currency, PrincipalPair};
use crate::error::{Error, Result};
use crate::lattice::{GeneratorBasis, Lin};

/// Activation tolerance in the log domain (numeric mode).
pub const ACTIVATION_TOL: f64 = 1e-12;

/// Rows of the discrepancy forms d€£, d€¥, d£¥ over l₁..l₆.
pub const DISCREPANCY_FORMS: [[i8; 6]; 3] = [
    [1, -1, 0, 1, 0, 0],
    [1, 0, -1, 0, 1, 0],
    [0, 1, -1, 0, 0, 1],
];

/// Static description of arbitrage A_XYZ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArbitrageInfo {
    /// 1..24.
    pub number: usize,
    /// Acting trader X.
    pub trader: Currency,
    /// Quoted currency Y.
    pub quoted: Currency,
    /// Via currency Z.
    pub via: Currency,
    pub pair: PrincipalPair,
    /// New value of the affected principal log-rate, as a row over l₁..l₆.
    pub form: [i8; 6],
    /// Active iff `test · l > 0`.
    pub test: [i8; 6],
    /// Owning strong arbitrage, 1..12.
    pub strong: usize,
}

impl ArbitrageInfo {
    pub fn label(&self) -> String {
        format!("{}{}{}", self.trader, self.quoted, self.via)
    }
}

/// Unconditional balancing of one three-currency sub-market.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongInfo {
    /// 1..12.
    pub number: usize,
    pub pair: PrincipalPair,
    pub form: [i8; 6],
    /// The two arbitrages (1-based) sharing this action.
    pub members: [usize; 2],
    pub sub_market: [Currency; 3],
}

fn add6(a: [i8; 6], b: [i8; 6]) -> [i8; 6] {
    std::array::from_fn(|i| a[i] + b[i])
}

fn build_tables() -> (Vec<ArbitrageInfo>, Vec<StrongInfo>) {
    let mut arbs = Vec::with_capacity(24);
    let mut strong: Vec<StrongInfo> = Vec::with_capacity(12);
    for x in Currency::ALL {
        for y in Currency::ALL {
            if y == x {
                continue;
            }
            for z in Currency::ALL {
                if z == x || z == y {
                    continue;
                }
                let unit = |p, q| PrincipalPair::unit(p, q).expect("distinct currencies");
                let route = add6(unit(x, z), unit(z, y));
                let direct = unit(x, y);
                let test: [i8; 6] = std::array::from_fn(|i| route[i] - direct[i]);
                let (pair, orient) = PrincipalPair::locate(x, y).expect("distinct");
                let form: [i8; 6] = std::array::from_fn(|i| route[i] * orient);
                let number = arbs.len() + 1;
                let s = match strong.iter().position(|s| s.pair == pair && s.form == form) {
                    Some(pos) => {
                        strong[pos].members[1] = number;
                        pos + 1
                    }
                    None => {
                        let mut sub = [x, y, z];
                        sub.sort();
                        strong.push(StrongInfo {
                            number: strong.len() + 1,
                            pair,
                            form,
                            members: [number, 0],
                            sub_market: sub,
                        });
                        strong.len()
                    }
                };
                arbs.push(ArbitrageInfo { number, trader: x, quoted: y, via: z, pair, form, test, strong: s });
            }
        }
    }
    (arbs, strong)
}

fn tables() -> &'static (Vec<ArbitrageInfo>, Vec<StrongInfo>) {
    static T: OnceLock<(Vec<ArbitrageInfo>, Vec<StrongInfo>)> = OnceLock::new();
    T.get_or_init(build_tables)
}

/// All 24 arbitrages in lexicographic (X, Y, Z) order.
pub fn arbitrages() -> &'static [ArbitrageInfo] {
    &tables().0
}

/// All 12 strong arbitrages.
pub fn strong_arbitrages() -> &'static [StrongInfo] {
    &tables().1
}

pub fn arbitrage(k: usize) -> Result<&'static ArbitrageInfo> {
    arbitrages()
        .get(k.wrapping_sub(1))
        .ok_or_else(|| Error::OutOfRange(format!("arbitrage {k}")))
}

pub fn strong(i: usize) -> Result<&'static StrongInfo> {
    strong_arbitrages()
        .get(i.wrapping_sub(1))
        .ok_or_else(|| Error::OutOfRange(format!("strong arbitrage {i}")))
}

// ---- raw lattice kernels (hot paths for search) ----

pub type Coeffs = [Lin; 6];

pub fn lattice_discrepancies(c: &Coeffs) -> [Lin; 3] {
    DISCREPANCY_FORMS.map(|f| Lin::dot(&f, c))
}

pub fn lattice_active(c: &Coeffs, k: usize, basis: &GeneratorBasis) -> bool {
    let info = &arbitrages()[k - 1];
    basis.sign(Lin::dot(&info.test, c)) > 0
}

/// Applies arbitrage `k`; `None` when inactive.
pub fn lattice_apply(c: &Coeffs, k: usize, basis: &GeneratorBasis) -> Option<Coeffs> {
    let info = &arbitrages()[k - 1];
    if basis.sign(Lin::dot(&info.test, c)) <= 0 {
        return None;
    }
    let mut out = *c;
    out[info.pair.slot()] = Lin::dot(&info.form, c);
    Some(out)
}

pub fn lattice_strong(c: &Coeffs, i: usize) -> Coeffs {
    let info = &strong_arbitrages()[i - 1];
    let mut out = *c;
    out[info.pair.slot()] = Lin::dot(&info.form, c);
    out
}

/// The member of strong arbitrage `i` that is active, if any.
pub fn active_member(c: &Coeffs, i: usize, basis: &GeneratorBasis) -> Option<usize> {
    strong_arbitrages()[i - 1].members.into_iter().find(|&k| lattice_active(c, k, basis))
}

fn dot_f(w: &[i8; 6], l: &[f64; 6]) -> f64 {
    w.iter().zip(l).map(|(a, b)| *a as f64 * b).sum()
}

// ---- ensembles ----

/// Six principal log-rates, numeric or as an exact lattice over generators.
#[derive(Clone, Debug, PartialEq)]
pub enum RateEnsemble {
    Numeric { logs: [f64; 6] },
    Lattice { basis: GeneratorBasis, coeffs: Coeffs },
}

/// Discrepancy triple (d€£, d€¥, d£¥); `exact` is present in lattice mode.
#[derive(Clone, Debug, PartialEq)]
pub struct Discrepancies {
    pub values: [f64; 3],
    pub exact: Option<[Lin; 3]>,
}

impl Discrepancies {
    pub fn is_zero(&self) -> bool {
        match &self.exact {
            Some(e) => e.iter().all(|x| x.is_zero()),
            None => self.values.iter().all(|v| *v == 0.0),
        }
    }
}

impl RateEnsemble {
    pub fn numeric(logs: [f64; 6]) -> Result<Self> {
        if logs.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("log-rates must be finite".into()));
        }
        Ok(RateEnsemble::Numeric { logs })
    }

    /// From linear-domain principal rates (all positive).
    pub fn from_rates(rates: [f64; 6]) -> Result<Self> {
        if rates.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
            return Err(Error::Domain("rates must be positive and finite".into()));
        }
        Self::numeric(rates.map(f64::ln))
    }

    pub fn lattice(basis: GeneratorBasis, coeffs: Coeffs) -> Self {
        RateEnsemble::Lattice { basis, coeffs }
    }

    /// Balanced ensemble over `basis` with a single +1 coefficient of the
    /// first generator on principal slot `which` (1..6).
    pub fn perturbed(basis: &GeneratorBasis, which: usize) -> Result<Self> {
        if !(1..=6).contains(&which) {
            return Err(Error::OutOfRange(format!("perturbed slot {which}")));
        }
        if basis.rank() != 1 {
            return Err(Error::Domain("perturbed ensembles need a single generator".into()));
        }
        let mut coeffs = [Lin::ZERO; 6];
        coeffs[which - 1] = Lin::A;
        Ok(Self::lattice(basis.clone(), coeffs))
    }

    pub fn is_lattice(&self) -> bool {
        matches!(self, RateEnsemble::Lattice { .. })
    }

    pub fn coeffs(&self) -> Option<&Coeffs> {
        match self {
            RateEnsemble::Lattice { coeffs, .. } => Some(coeffs),
            _ => None,
        }
    }

    pub fn basis(&self) -> Option<&GeneratorBasis> {
        match self {
            RateEnsemble::Lattice { basis, .. } => Some(basis),
            _ => None,
        }
    }

    pub fn log_rates(&self) -> [f64; 6] {
        match self {
            RateEnsemble::Numeric { logs } => *logs,
            RateEnsemble::Lattice { basis, coeffs } => {
                let base = basis.full_base();
                std::array::from_fn(|j| base[j] + basis.value(coeffs[j]))
            }
        }
    }

    pub fn rates(&self) -> [f64; 6] {
        self.log_rates().map(f64::exp)
    }

    /// Numeric view of the same state.
    pub fn to_numeric(&self) -> Self {
        RateEnsemble::Numeric { logs: self.log_rates() }
    }

    pub fn reciprocal_rate(&self, from: Currency, to: Currency) -> Result<f64> {
        let (p, s) = PrincipalPair::locate(from, to)?;
        Ok((s as f64 * self.log_rates()[p.slot()]).exp())
    }

    /// Exact in lattice mode (tolerance ignored).
    pub fn is_balanced(&self, tol: f64) -> bool {
        match self {
            RateEnsemble::Lattice { coeffs, .. } => lattice_discrepancies(coeffs).iter().all(|d| d.is_zero()),
            RateEnsemble::Numeric { logs } => DISCREPANCY_FORMS.iter().all(|f| dot_f(f, logs).abs() <= tol),
        }
    }

    pub fn discrepancies(&self) -> Discrepancies {
        match self {
            RateEnsemble::Numeric { logs } => Discrepancies {
                values: DISCREPANCY_FORMS.map(|f| dot_f(&f, logs)),
                exact: None,
            },
            RateEnsemble::Lattice { basis, coeffs } => {
                let e = lattice_discrepancies(coeffs);
                Discrepancies { values: e.map(|x| basis.value(x)), exact: Some(e) }
            }
        }
    }

    pub fn activation(&self, k: usize) -> Result<bool> {
        let info = arbitrage(k)?;
        Ok(match self {
            RateEnsemble::Numeric { logs } => dot_f(&info.test, logs) > ACTIVATION_TOL,
            RateEnsemble::Lattice { basis, coeffs } => lattice_active(coeffs, k, basis),
        })
    }

    pub fn active_flags(&self) -> [bool; 24] {
        std::array::from_fn(|i| self.activation(i + 1).expect("valid index"))
    }

    /// Applies arbitrage `k`; returns the new ensemble and whether it fired.
    pub fn apply_arbitrage(&self, k: usize) -> Result<(Self, bool)> {
        if !self.activation(k)? {
            return Ok((self.clone(), false));
        }
        let info = arbitrage(k)?;
        Ok((self.set_slot(info.pair.slot(), &info.form), true))
    }

    pub fn apply_strong(&self, i: usize) -> Result<Self> {
        let info = strong(i)?;
        Ok(self.set_slot(info.pair.slot(), &info.form))
    }

    fn set_slot(&self, slot: usize, form: &[i8; 6]) -> Self {
        match self {
            RateEnsemble::Numeric { logs } => {
                let mut out = *logs;
                out[slot] = dot_f(form, logs);
                RateEnsemble::Numeric { logs: out }
            }
            RateEnsemble::Lattice { basis, coeffs } => {
                let mut out = *coeffs;
                out[slot] = Lin::dot(form, coeffs);
                RateEnsemble::Lattice { basis: basis.clone(), coeffs: out }
            }
        }
    }

    /// Trajectory R₀..R_steps; finite chains stop at their length.
    pub fn apply_chain(&self, chain: &Chain, steps: usize) -> Result<Vec<Self>> {
        let mut out = Vec::with_capacity(steps.min(chain.unrolled_len(steps)) + 1);
        out.push(self.clone());
        for k in chain.iter_steps(steps) {
            let next = out.last().expect("nonempty").apply_arbitrage(k)?.0;
            out.push(next);
        }
        Ok(out)
    }

    /// Same as [`apply_chain`](Self::apply_chain) but also records which steps fired.
    pub fn run_chain(&self, chain: &Chain, steps: usize) -> Result<(Vec<Self>, Vec<bool>)> {
        let mut out = vec![self.clone()];
        let mut fired = Vec::new();
        for k in chain.iter_steps(steps) {
            let (next, f) = out.last().expect("nonempty").apply_arbitrage(k)?;
            out.push(next);
            fired.push(f);
        }
        Ok((out, fired))
    }

    /// The three principal slots of strong arbitrage `i`'s sub-market satisfy
    /// the cross-rate law.
    pub fn sub_market_balanced(&self, i: usize, tol: f64) -> Result<bool> {
        let s = strong(i)?;
        let [x, y, z] = s.sub_market;
        let unit = |p, q| PrincipalPair::unit(p, q).expect("distinct");
        let f = add6(add6(unit(x, y), unit(y, z)), unit(z, x));
        Ok(match self {
            RateEnsemble::Lattice { coeffs, .. } => Lin::dot(&f, coeffs).is_zero(),
            RateEnsemble::Numeric { logs } => dot_f(&f, logs).abs() <= tol,
        })
    }
}

/// A finite arbitrage word, optionally repeated forever.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub chain: Vec<usize>,
    pub period: Option<usize>,
}

impl Chain {
    pub fn finite(chain: Vec<usize>) -> Self {
        Chain { chain, period: None }
    }

    pub fn periodic(block: Vec<usize>) -> Self {
        let p = block.len();
        Chain { chain: block, period: Some(p) }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(&bad) = self.chain.iter().find(|&&k| !(1..=24).contains(&k)) {
            return Err(Error::OutOfRange(format!("arbitrage {bad}")));
        }
        if let Some(p) = self.period {
            if p != self.chain.len() || p == 0 {
                return Err(Error::Domain(format!("period {p} must equal block length {}", self.chain.len())));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    fn unrolled_len(&self, steps: usize) -> usize {
        match self.period {
            Some(_) if !self.chain.is_empty() => steps,
            _ => steps.min(self.chain.len()),
        }
    }

    pub fn iter_steps(&self, steps: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.unrolled_len(steps);
        (0..n).map(move |i| self.chain[i % self.chain.len()])
    }
}

/// Three-currency warm-up: the first mover's adjustment balances ($€, $£, €£).
pub fn balance_three(r_usd_eur: f64, r_usd_gbp: f64, r_eur_gbp: f64, first_mover: Currency) -> Result<[f64; 3]> {
    if [r_usd_eur, r_usd_gbp, r_eur_gbp].iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
        return Err(Error::Domain("rates must be positive".into()));
    }
    match first_mover {
        Currency::Usd => Ok([r_usd_gbp / r_eur_gbp, r_usd_gbp, r_eur_gbp]),
        Currency::Eur => Ok([r_usd_eur, r_usd_gbp, r_usd_gbp / r_usd_eur]),
        Currency::Gbp => Ok([r_usd_eur, r_usd_eur * r_eur_gbp, r_eur_gbp]),
        Currency::Jpy => Err(Error::Domain("first mover must be one of $, €, £".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis() -> GeneratorBasis {
        GeneratorBasis::single(2f64.ln(), [0.0; 3]).unwrap()
    }

    #[test]
    fn table_sizes_and_membership() {
        assert_eq!(arbitrages().len(), 24);
        assert_eq!(strong_arbitrages().len(), 12);
        let members: Vec<[usize; 2]> = strong_arbitrages().iter().map(|s| s.members).collect();
        assert_eq!(
            members,
            vec![[1, 7], [2, 8], [3, 13], [4, 14], [5, 19], [6, 20], [9, 15], [10, 16], [11, 21], [12, 22], [17, 23], [18, 24]]
        );
        assert_eq!(arbitrage(1).unwrap().label(), "$€£");
        assert_eq!(arbitrage(24).unwrap().label(), "¥£€");
    }

    #[test]
    fn reciprocal_example() {
        let r = RateEnsemble::numeric([2f64.ln(), 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((r.reciprocal_rate(Currency::Usd, Currency::Eur).unwrap() - 2.0).abs() < 1e-15);
        assert!((r.reciprocal_rate(Currency::Eur, Currency::Usd).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(r.reciprocal_rate(Currency::Usd, Currency::Usd), Err(Error::InvalidPair(_))));
    }

    #[test]
    fn balanced_examples() {
        assert!(RateEnsemble::from_rates([1.0; 6]).unwrap().is_balanced(1e-12));
        let r = RateEnsemble::from_rates([2.0, 6.0, 8.0, 3.0, 4.0, 4.0 / 3.0]).unwrap();
        assert!(r.is_balanced(1e-12));
        let r = RateEnsemble::from_rates([2.0, 6.0, 8.0, 4.0, 4.0, 4.0 / 3.0]).unwrap();
        assert!(!r.is_balanced(1e-12));
    }

    #[test]
    fn perturbed_discrepancies() {
        let b = basis();
        let d = |w| RateEnsemble::perturbed(&b, w).unwrap().discrepancies().exact.unwrap();
        assert_eq!(d(1), [Lin::A, Lin::A, Lin::ZERO]);
        assert_eq!(d(3), [Lin::ZERO, -Lin::A, -Lin::A]);
        assert_eq!(d(4), [Lin::A, Lin::ZERO, Lin::ZERO]);
        assert_eq!(d(6), [Lin::ZERO, Lin::ZERO, Lin::A]);
        assert!(RateEnsemble::perturbed(&b, 7).is_err());
    }

    #[test]
    fn activation_examples() {
        // r$€ = 1, r$£ = 1, r€£ = 2, remaining rates balanced against these.
        let r = RateEnsemble::from_rates([1.0, 1.0, 1.0, 2.0, 1.0, 1.0]).unwrap();
        assert!(r.activation(3).unwrap());
        assert!(r.activation(7).unwrap());
        let (after, fired) = r.apply_arbitrage(3).unwrap();
        assert!(fired);
        assert!((after.rates()[1] - 2.0).abs() < 1e-12);
        let bal = RateEnsemble::from_rates([1.0; 6]).unwrap();
        assert!(bal.active_flags().iter().all(|a| !a));
    }

    #[test]
    fn arbitrage_15_on_perturbed() {
        let r = RateEnsemble::perturbed(&basis(), 1).unwrap();
        let (after, fired) = r.apply_arbitrage(15).unwrap();
        assert!(fired);
        assert!((after.rates()[3] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn strong_seven_on_perturbed() {
        let r = RateEnsemble::perturbed(&basis(), 1).unwrap();
        let after = r.apply_strong(7).unwrap();
        assert_eq!(after.coeffs().unwrap()[3], -Lin::A);
        assert_eq!(after.discrepancies().exact.unwrap(), [Lin::ZERO, Lin::A, Lin::ZERO]);
    }

    #[test]
    fn chain_examples() {
        let r = RateEnsemble::perturbed(&basis(), 1).unwrap();
        let t = r.apply_chain(&Chain::finite(vec![15, 18]), 2).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[2].discrepancies().exact.unwrap(), [Lin::ZERO, Lin::A, Lin::A]);
        assert_eq!(r.apply_chain(&Chain::finite(vec![]), 5).unwrap(), vec![r.clone()]);
        let t = r.apply_chain(&Chain::finite(vec![15, 21]), 2).unwrap();
        let c = t[2].coeffs().unwrap().map(|x| x.a());
        assert_eq!(c, [1, 0, 0, -1, -1, 0]);
    }

    #[test]
    fn balance_three_cases() {
        let [a, b, c] = balance_three(2.0, 6.0, 4.0, Currency::Usd).unwrap();
        assert!((a - 1.5).abs() < 1e-15 && b == 6.0 && c == 4.0);
        let [_, _, c] = balance_three(2.0, 6.0, 4.0, Currency::Eur).unwrap();
        assert!((c - 3.0).abs() < 1e-15);
        let [_, b, _] = balance_three(2.0, 6.0, 4.0, Currency::Gbp).unwrap();
        assert!((b - 8.0).abs() < 1e-15);
        for m in [Currency::Usd, Currency::Eur, Currency::Gbp] {
            assert_eq!(balance_three(2.0, 6.0, 3.0, m).unwrap(), [2.0, 6.0, 3.0]);
        }
        assert!(balance_three(-1.0, 1.0, 1.0, Currency::Usd).is_err());
    }
}
