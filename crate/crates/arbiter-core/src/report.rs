//! Verification suites.
//!
//! Every check is either a property of the derived model (pass/fail) or a
//! comparison against a published value. Published values that disagree
//! with the derivation are reported as deviations: they never fail a run,
//! but they are always listed together with the evidence that settles them.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::currency::Currency;
use crate::error::{Error, Result};
use crate::lattice::{GeneratorBasis, Lin};
use crate::linalg;
use crate::market::{self, Chain, RateEnsemble};
use crate::periodic::{classify_periodic_chain, Periodicity};
use crate::reference;
use crate::semigroup::{self, semigroup};
use crate::synthesis::{self, bfs::BfsTree, bounds, caseb, classify, formulas, knots, star, TargetExponents};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Deviation,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Deviation => "deviation",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.details.is_empty() {
            write!(f, "{} {}", self.name, self.status)
        } else {
            write!(f, "{} {} — {}", self.name, self.status, self.details)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn push(&mut self, name: impl Into<String>, status: Status, details: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status, details: details.into() });
    }

    fn pass_if(&mut self, name: impl Into<String>, ok: bool, details: impl Into<String>) {
        self.push(name, if ok { Status::Pass } else { Status::Fail }, details);
    }

    /// Published value checked against the derivation.
    fn published(&mut self, name: impl Into<String>, agrees: bool, details: impl Into<String>) {
        self.push(name, if agrees { Status::Pass } else { Status::Deviation }, details);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn deviations(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Deviation)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Core,
    Matrices,
    Semigroup,
    Synthesis,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "core" => Suite::Core,
            "matrices" => Suite::Matrices,
            "semigroup" => Suite::Semigroup,
            "synthesis" => Suite::Synthesis,
            "all" => Suite::All,
            other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
        })
    }
}

pub fn run_suite(suite: Suite) -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    match suite {
        Suite::Core => r.extend(core_suite()?),
        Suite::Matrices => r.extend(matrices_suite()?),
        Suite::Semigroup => r.extend(semigroup_suite()?),
        Suite::Synthesis => r.extend(synthesis_suite()?),
        Suite::All => {
            r.extend(core_suite()?);
            r.extend(matrices_suite()?);
            r.extend(semigroup_suite()?);
            r.extend(synthesis_suite()?);
        }
    }
    Ok(r)
}

// ---- random inputs ----

const SEED: u64 = 0x5eed_a7b1;

pub fn random_logs(rng: &mut impl Rng) -> [f64; 6] {
    std::array::from_fn(|_| rng.gen_range(-2.0..2.0))
}

pub fn random_balanced(rng: &mut impl Rng) -> [f64; 6] {
    let (l1, l2, l3): (f64, f64, f64) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    [l1, l2, l3, l2 - l1, l3 - l1, l3 - l2]
}

fn random_lattice(rng: &mut impl Rng) -> RateEnsemble {
    let basis = GeneratorBasis::pair(0.7, 2f64.sqrt() * 0.5, [0.1, -0.3, 0.25]).expect("valid basis");
    let coeffs = std::array::from_fn(|_| Lin::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3)));
    RateEnsemble::lattice(basis, coeffs)
}

fn max_abs_diff(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

// ---- core ----

fn core_suite() -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    let mismatched: Vec<usize> = (1..=24)
        .filter(|&k| market::arbitrages()[k - 1].test != reference::TABLE1_ACTIVATION[k - 1])
        .collect();
    r.pass_if(
        "activation-rule-rows",
        mismatched.iter().all(|&k| k == 1),
        format!("{} of 24 printed activation conditions equal the generated rule", 24 - mismatched.len()),
    );
    if mismatched.contains(&1) {
        r.push(
            "printed-activation-row-1",
            Status::Deviation,
            format!(
                "printed condition r€£ > r$€·r$£ disagrees with the profitability rule r$£·r£€ > r$€; generated test vector {:?}",
                market::arbitrages()[0].test
            ),
        );
    }

    let members: Vec<[usize; 2]> = market::strong_arbitrages().iter().map(|s| s.members).collect();
    r.pass_if("strong-membership", members == reference::TABLE2_MEMBERS, "");

    let mut fixed = true;
    let mut idem = true;
    let mut recip = 0.0f64;
    let mut submarket = true;
    for _ in 0..1000 {
        let bal = RateEnsemble::numeric(random_balanced(&mut rng))?;
        fixed &= (1..=24).all(|k| bal.apply_arbitrage(k).map(|(n, f)| !f && n == bal).unwrap_or(false));
        let x = RateEnsemble::numeric(random_logs(&mut rng))?;
        for i in 1..=12 {
            let once = x.apply_strong(i)?;
            idem &= once.apply_strong(i)? == once;
            submarket &= once.sub_market_balanced(i, 1e-12)?;
        }
        for p in Currency::ALL {
            for q in Currency::ALL {
                if p != q {
                    recip = recip.max((x.reciprocal_rate(p, q)? * x.reciprocal_rate(q, p)? - 1.0).abs());
                }
            }
        }
    }
    r.pass_if("balanced-fixed-point", fixed, "1000 random balanced ensembles × 24 arbitrages");
    r.pass_if("strong-idempotence", idem, "1000 random ensembles × 12 strong arbitrages");
    r.pass_if("reciprocal-consistency", recip <= 1e-12, format!("max |r·r⁻¹ − 1| = {recip:.1e}"));
    r.pass_if("sub-market-balance", submarket, "");

    let mut worst = 0.0f64;
    let mut closed = true;
    for _ in 0..200 {
        let l = random_lattice(&mut rng);
        let chain: Vec<usize> = (0..30).map(|_| rng.gen_range(1..=24)).collect();
        let mut num = l.to_numeric();
        let mut lat = l.clone();
        for &k in &chain {
            lat = lat.apply_arbitrage(k)?.0;
            num = num.apply_arbitrage(k)?.0;
            closed &= lat.is_lattice();
            worst = worst.max(max_abs_diff(&lat.log_rates(), &num.log_rates()));
        }
    }
    r.pass_if("lattice-numeric-agreement", worst <= 1e-9 && closed, format!("max deviation {worst:.1e}"));

    let basis = GeneratorBasis::single(2f64.ln(), [0.0; 3])?;
    let expected: [[i64; 3]; 6] = [[1, 1, 0], [-1, 0, 1], [0, -1, -1], [1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let got: Vec<[i64; 3]> = (1..=6)
        .map(|w| {
            let e = RateEnsemble::perturbed(&basis, w).expect("valid slot");
            market::lattice_discrepancies(e.coeffs().expect("lattice")).map(|x| x.a())
        })
        .collect();
    r.pass_if("perturbed-discrepancies", got == expected, "");

    let warm = [Currency::Usd, Currency::Eur, Currency::Gbp]
        .iter()
        .map(|&m| market::balance_three(2.0, 6.0, 2.5, m))
        .collect::<Result<Vec<_>>>()?;
    r.pass_if("three-currency-warm-up", warm.iter().all(|t| (t[2] - t[1] / t[0]).abs() < 1e-12), "");
    Ok(r)
}

// ---- matrices ----

fn matrices_suite() -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    let m = linalg::matrices();
    r.pass_if("q-inverse", linalg::mul(&m.q, &m.qinv) == linalg::identity(), "");
    r.pass_if("g-rank-two", (1..=12).all(|i| linalg::rank(linalg::g(i)) == 2), "");
    r.pass_if("h-zero-7-12", (7..=12).all(|i| *linalg::h(i) == [[0; 3]; 3]), "");

    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut lin_err = 0.0f64;
    let mut block_err = 0.0f64;
    let mut incr_err = 0.0f64;
    for _ in 0..100 {
        let x = RateEnsemble::numeric(random_logs(&mut rng))?;
        let l = x.log_rates();
        let v = linalg::vector_v(&x);
        for i in 1..=12 {
            let y = x.apply_strong(i)?;
            lin_err = lin_err.max(max_abs_diff(&y.log_rates(), &linalg::vec_mul_f64(&l, &m.b[i - 1])));
            block_err = block_err.max(max_abs_diff(&linalg::vector_v(&y), &linalg::vec_mul_f64(&v, &m.d[i - 1])));
            let inc = linalg::increment(&x, i)?;
            let direct: Vec<f64> = (0..3).map(|j| y.log_rates()[j] - l[j]).collect();
            incr_err = incr_err.max(max_abs_diff(&inc, &direct));
        }
    }
    r.pass_if("linearization-identity", lin_err < 1e-12, format!("max error {lin_err:.1e}"));
    r.pass_if("block-identity", block_err < 1e-12, format!("max error {block_err:.1e}"));
    r.pass_if("increment-identity", incr_err < 1e-12, format!("max error {incr_err:.1e}"));

    let mut factor_ok = true;
    for _ in 0..1000 {
        let x = random_lattice(&mut rng);
        let d = market::lattice_discrepancies(x.coeffs().expect("lattice"));
        for i in 1..=12 {
            let y = x.apply_strong(i)?;
            factor_ok &= market::lattice_discrepancies(y.coeffs().expect("lattice")) == linalg::vec_mul_lin(&d, linalg::g(i));
        }
    }
    r.pass_if("discrepancy-factorization", factor_ok, "1000 random lattice states, exact");

    let devs = linalg::published_deviations();
    for name in ["Q", "Qinv"].iter().map(|s| s.to_string()).chain((1..=12).map(|i| format!("B{i}"))) {
        match devs.iter().find(|d| d.name == name) {
            Some(d) => r.push(format!("printed-matrix-{name}"), Status::Deviation, d.detail.clone()),
            None => r.push(format!("printed-matrix-{name}"), Status::Pass, ""),
        }
    }
    let gh_bad: Vec<&str> = devs.iter().filter(|d| d.name.starts_with('G') || d.name.starts_with('H')).map(|d| d.name.as_str()).collect();
    r.published("printed-g-h-blocks", gh_bad.is_empty(), gh_bad.join(", "));
    Ok(r)
}

// ---- semigroup ----

/// Cells (1-based strong, 1-based vertex) where the printed transition table
/// differs from the derived one.
pub fn table3_mismatches() -> Result<Vec<(usize, usize, usize, usize)>> {
    let t = semigroup::discrepancy_transition_table(1.0)?;
    let mut out = Vec::new();
    for i in 0..12 {
        for j in 0..12 {
            if t[i][j] != reference::TABLE3[i][j] {
                out.push((i + 1, j + 1, reference::TABLE3[i][j], t[i][j]));
            }
        }
    }
    Ok(out)
}

fn fmt_matrix<T: fmt::Debug>(rows: &[T]) -> String {
    rows.iter().map(|r| format!("{r:?}")).collect::<Vec<_>>().join(" ")
}

fn semigroup_suite() -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    let sg = semigroup();
    r.pass_if(format!("semigroup-size: {}", sg.len()), sg.len() == 229, "expected 229");
    let hist = sg.rank_histogram();
    r.pass_if(
        "rank-histogram",
        hist.get(&2) == Some(&144) && hist.get(&1) == Some(&84) && hist.get(&0) == Some(&1),
        format!("{hist:?}"),
    );
    r.pass_if("closure", sg.is_closed(), "");
    r.pass_if("projector-powers", sg.elements.iter().all(|e| semigroup::has_projector_power(&e.m)), "");
    let sizes = sg.component_sizes();
    let profile_ok = sizes.len() == 14
        && sizes[..6].iter().all(|&s| s == 24)
        && sizes[6..13].iter().all(|&s| s == 12)
        && sizes[13] == 1
        && sg.labelling_issues.is_empty();
    r.pass_if("component-profile", profile_ok, format!("sizes {sizes:?}; {}", sg.labelling_issues.join("; ")));

    let mut direct_ok = true;
    let mut detail = Vec::new();
    for i in 1..=6 {
        let got: BTreeSet<usize> = sg.successors(i).into_iter().filter(|&j| j != 14).collect();
        let want: BTreeSet<usize> = reference::COMPONENT_SUCCESSORS[i - 1].into_iter().collect();
        if got != want {
            direct_ok = false;
            detail.push(format!("U{i}: {got:?} vs {want:?}"));
        }
    }
    r.pass_if("component-transitions", direct_ok, detail.join("; "));
    let direct_zero: Vec<usize> = (1..=13).filter(|&i| sg.successors(i).contains(&14)).collect();
    let reach_zero = (1..=13).all(|i| sg.reaches(i, 14));
    r.pass_if(
        "zero-component-reachable",
        reach_zero,
        format!("one-step into U14 from {direct_zero:?}; the rank-two components get there through rank one"),
    );

    let cells = table3_mismatches()?;
    let detail = cells
        .iter()
        .map(|(i, j, p, d)| format!("strong {i} on D{j}: printed D{p}, derived D{d}"))
        .collect::<Vec<_>>()
        .join("; ");
    r.published("printed-transition-table", cells.is_empty(), detail);

    let t = semigroup::discrepancy_transition_table(1.0)?;
    let inc = semigroup::incidence_from_table(&t);
    r.published("printed-incidence-12", inc == reference::INCIDENCE_12, "");
    let orbit = semigroup::disc12_orbit(1.0)?;
    let from_orbit = orbit.incidence();
    r.pass_if(
        "incidence-from-orbit-graph",
        (0..12).all(|i| (0..12).all(|j| i == j || from_orbit[i][j] == inc[i][j])),
        "off-diagonal graph edges agree with the transition table",
    );

    let generic = semigroup::orbit_polyhedron(1.0, 0.37)?.vertices.len();
    let anti = semigroup::orbit_polyhedron(1.0, -1.0)?.vertices.len();
    let flat = semigroup::orbit_polyhedron(1.0, 0.0)?.vertices.len();
    r.pass_if("polyhedron-vertices", generic == 24 && anti == 12 && flat == 12, format!("{generic}/{anti}/{flat}"));

    // Images of the 24 two-generator triples under every semigroup element.
    let mut images: BTreeSet<[Lin; 3]> = BTreeSet::new();
    for e in &sg.elements {
        for d in &reference::DISC24 {
            images.insert(linalg::vec_mul_lin(d, &e.m));
        }
    }
    let mut expected: BTreeSet<[Lin; 3]> = reference::DISC24.iter().copied().collect();
    for u in [Lin::A, Lin::B, Lin::new(1, -1)] {
        for d in &reference::DISC12 {
            expected.insert(d.map(|x| u * x));
        }
    }
    expected.insert([Lin::ZERO; 3]);
    r.pass_if(
        "orbit-images",
        images == expected,
        format!("{} images; 24 + 3×12 vertices plus zero", images.len()),
    );

    let r1 = synthesis::standard_start(1, synthesis::DEFAULT_ALPHA)?;
    let mut unclassified = Vec::new();
    let mut divergent = 0;
    for n in 0..100 {
        let p = 1 + (n % 4);
        let block = bounds::random_chain(SEED + 100 + n as u64, p);
        match classify_periodic_chain(&Chain::periodic(block.clone()), &r1) {
            Ok(Periodicity::Divergent { .. }) => divergent += 1,
            Ok(Periodicity::Periodic { .. }) => {}
            Err(_) => unclassified.push(block),
        }
    }
    r.pass_if(
        "periodic-classifier",
        unclassified.is_empty(),
        format!("100 random blocks (p ≤ 4): {divergent} divergent, {} unclassified", unclassified.len()),
    );
    let star_q = classify_periodic_chain(&star::star_chain(), &r1)?;
    r.pass_if("star-period", star_q == Periodicity::Periodic { q: 24 }, format!("{star_q:?}"));
    Ok(r)
}

// ---- synthesis ----

/// Outcome of certifying one start over the target grid.
#[derive(Clone, Debug, Serialize)]
pub struct GridReport {
    pub start: usize,
    pub targets: usize,
    pub unreached: Vec<[i64; 3]>,
    /// (target, minimal length, bound, certificate chain)
    pub overruns: Vec<([i64; 3], usize, usize, Vec<usize>)>,
    /// (target, note, certificate chain) for printed formulas that miss.
    pub formula_misses: Vec<([i64; 3], String, Vec<usize>)>,
    pub formula_hits: usize,
}

/// The target grid [−2, 3]³.
pub fn grid() -> Vec<TargetExponents> {
    let mut out = Vec::new();
    for n1 in -2..=3 {
        for n2 in -2..=3 {
            for n3 in -2..=3 {
                out.push(TargetExponents::new(n1, n2, n3));
            }
        }
    }
    out
}

/// Certifies every grid target from start `which` by exhaustive BFS, and
/// executes the printed formula for each.
pub fn certify_grid(which: usize) -> Result<GridReport> {
    let r0 = synthesis::standard_start(which, synthesis::DEFAULT_ALPHA)?;
    let targets = grid();
    let max_bound = targets.iter().map(|n| synthesis::length_bound(which, *n)).collect::<Result<Vec<_>>>()?;
    let tree = BfsTree::build(&r0, max_bound.iter().max().copied().unwrap_or(0) + 12)?;
    let mut rep = GridReport {
        start: which,
        targets: targets.len(),
        unreached: vec![],
        overruns: vec![],
        formula_misses: vec![],
        formula_hits: 0,
    };
    for (n, bound) in targets.iter().zip(max_bound) {
        let coeffs = n.coeffs();
        let Some(path) = tree.path(&coeffs) else {
            rep.unreached.push(n.0);
            continue;
        };
        if !synthesis::reaches(&r0, &path, &coeffs)? {
            rep.unreached.push(n.0);
            continue;
        }
        if path.len() > bound {
            rep.overruns.push((n.0, path.len(), bound, path.clone()));
        }
        let printed = formulas::printed_formula(which, *n)?;
        if let Some(bad) = printed.iter().find(|k| !(1..=24).contains(*k)) {
            rep.formula_misses.push((n.0, format!("uses nonexistent arbitrage {bad}"), path));
        } else if synthesis::reaches(&r0, &printed, &coeffs)? {
            rep.formula_hits += 1;
        } else {
            rep.formula_misses.push((n.0, "misses the target".into(), path));
        }
    }
    Ok(rep)
}

fn synthesis_suite() -> Result<VerificationReport> {
    let mut r = VerificationReport::default();

    let grids: Vec<GridReport> = (1..=6).into_par_iter().map(certify_grid).collect::<Result<_>>()?;
    for g in &grids {
        r.pass_if(
            format!("reachability-grid-start-{}", g.start),
            g.unreached.is_empty(),
            format!("{}/{} targets reached exactly, each chain re-executed", g.targets - g.unreached.len(), g.targets),
        );
        let detail = g
            .overruns
            .iter()
            .map(|(n, len, bound, c)| format!("{n:?}: minimal length {len} > bound {bound}, certificate {c:?}"))
            .collect::<Vec<_>>()
            .join("; ");
        r.published(format!("length-bound-start-{}", g.start), g.overruns.is_empty(), detail);
        let mut detail = format!("{} of {} printed chains hit their target", g.formula_hits, g.targets);
        for (n, why, cert) in g.formula_misses.iter().take(8) {
            detail.push_str(&format!("; {n:?} {why}, BFS certificate {cert:?}"));
        }
        if g.formula_misses.len() > 8 {
            detail.push_str(&format!("; … {} more, all BFS-certified", g.formula_misses.len() - 8));
        }
        r.published(format!("printed-chain-formula-start-{}", g.start), g.formula_misses.is_empty(), detail);
    }
    let uses_34 = reference::AUX_BLOCKS.iter().flatten().flatten().any(|&k| k == 34);
    r.published(
        "printed-aux-block-index",
        !uses_34,
        "the negative second-coordinate auxiliary block lists arbitrage 34; targets using it are BFS-certified",
    );
    r.push(
        "printed-basic-result-sign",
        Status::Deviation,
        "the stated end state lists the €£ exponent as n₁−n₂; balance forces n₂−n₁, which is what is targeted",
    );

    let r1 = synthesis::standard_start(1, synthesis::DEFAULT_ALPHA)?;
    let printed = star::analyze_star(&star::printed_star_chain(), &r1)?;
    r.published(
        "printed-star-chain",
        printed.passes(),
        format!(
            "printed block stalls at step {:?}; the unique block realizing the printed route is {:?}",
            printed.first_inactive,
            star::STAR_CHAIN
        ),
    );
    let rec = star::analyze_star(&star::star_chain(), &r1)?;
    r.pass_if(
        "star-chain",
        rec.passes(),
        format!("all active, minimal period {:?}, route matches: {}", rec.minimal_period, rec.route_matches),
    );
    r.published(
        "star-distinct-states",
        rec.distinct_states == 24,
        format!("{} distinct states in a period of 24", rec.distinct_states),
    );

    let sweep = bounds::random_bound_sweep(&r1, 10_000, 50, SEED + 3)?;
    r.pass_if(
        "exponent-bounds-random",
        sweep.ok(),
        format!("{} states, {} violations", sweep.states_checked, sweep.violations.len()),
    );
    let traj = r1.apply_chain(&Chain::finite(bounds::BOUND_COUNTEREXAMPLE.to_vec()), 12)?;
    let cx = bounds::check_exponent_bounds(&traj)?;
    r.published(
        "final-state-bound-general",
        cx.ok(),
        format!(
            "chain {:?} ends at {:?}: {}",
            bounds::BOUND_COUNTEREXAMPLE,
            traj.last().and_then(|x| x.coeffs()).map(|c| c.map(|x| x.a())),
            cx.violations.iter().map(|v| v.rule.clone()).collect::<Vec<_>>().join("; ")
        ),
    );

    knot_checks(&mut r)?;

    let (k, want) = reference::CASE_C_EXAMPLE;
    let spec = classify::reachability_classification(&classify::DeclaredDiscrepancy::Commensurate { gamma: 1.0, k })?;
    let got = match &spec {
        classify::LatticeSpec::Lattice { multipliers, .. } => multipliers.clone(),
        _ => vec![],
    };
    r.pass_if("commensurate-example", got == want, format!("{got:?}"));
    let formula_order = [
        classify::gcd_multipliers(k)[0],
        classify::gcd_multipliers(k)[1],
        classify::gcd_multipliers(k)[2],
        num_integer::gcd(k[0], k[1] - k[2]),
        num_integer::gcd(k[1], k[0] + k[2]),
        num_integer::gcd(k[2], k[0] - k[1]),
    ];
    r.published(
        "printed-gcd-formula-order",
        formula_order == want,
        format!(
            "the general formula gives {formula_order:?}; the worked example (and this implementation) uses gcd(k₁−k₂,k₃) fourth and gcd(k₁,k₂−k₃) sixth"
        ),
    );
    r.push(
        "printed-two-discrepancy-step",
        Status::Deviation,
        "for q = m/n the step exp(d€¥/n) is not a common measure unless m = 1; the lattice step used is d€£/n = d€¥/m",
    );

    let b = caseb::case_b_start(1.0, 2f64.sqrt(), [0.0; 3])?;
    let mut reach_ok = true;
    for (m, n) in [([0, 0, 0], [0, 0, 0]), ([1, 1, 1], [0, 0, 0]), ([0, 0, 0], [1, 1, 1]), ([2, 0, 1], [1, 2, 0])] {
        let chain = caseb::reach_exponents(&b, m, n)?;
        let end = b.apply_chain(&Chain::finite(chain.clone()), chain.len())?;
        let c = *end.last().expect("nonempty").coeffs().expect("lattice");
        reach_ok &= end.last().expect("nonempty").is_balanced(0.0)
            && c[0] == Lin::new(m[0], -n[0])
            && c[1] == Lin::new(m[1], n[1])
            && c[2] == Lin::new(m[2], -n[2]);
    }
    r.pass_if("two-generator-exact-offsets", reach_ok, "end states verified by execution");

    let (fails, worst) = density_trial(20, 1e-3, 10_000, SEED + 4)?;
    r.pass_if(
        "density-trial",
        fails == 0,
        format!("20 random balanced targets, ε = 1e-3: {fails} failures, worst error {worst:.2e}"),
    );
    Ok(r)
}

fn knot_checks(r: &mut VerificationReport) -> Result<()> {
    let (a, b) = (1.0, 0.37);
    let derived = knots::knot_structure(a, b);
    r.pass_if("knot-structure", derived.is_ok(), derived.err().map(|e| e.to_string()).unwrap_or_default());
    let printed_bad: Vec<String> =
        knots::printed_commuter_checks().into_iter().filter(|c| !c.holds).map(|c| c.what).collect();
    r.published(
        "printed-commuter-equalities",
        printed_bad.is_empty(),
        format!(
            "{} of 54 fail as printed ({}); they all hold once the third and fourth commuters trade knots",
            printed_bad.len(),
            printed_bad.join(", ")
        ),
    );
    let eqs = knots::cargo_equality_checks(&reference::CARGO_EQUALITIES);
    let bad: Vec<String> = eqs
        .iter()
        .filter(|(_, i, c)| !(*i && *c))
        .map(|(e, i, c)| {
            format!(
                "T{}_{}·G{} → T{}_{}{}{}",
                e.src.0,
                e.src.1,
                e.strong,
                e.dst.0,
                e.dst.1,
                if *i { "" } else { " (image differs)" },
                if *c { "" } else { " (cargo differs)" }
            )
        })
        .collect();
    r.published(
        "printed-cargo-equalities",
        bad.is_empty(),
        format!("{} of {} hold; failing: {}", eqs.len() - bad.len(), eqs.len(), bad.join(", ")),
    );
    let g = knots::travel_graph(a, b)?;
    let rows: Vec<[u8; 6]> = g.incidence.to_vec();
    r.published(
        "printed-knot-incidence",
        g.incidence == reference::INCIDENCE_KNOTS,
        format!("derived {}", fmt_matrix(&rows)),
    );
    for (idx, (walk, cargo)) in reference::CYCLES.iter().enumerate() {
        let got = knots::cycle_cargo(&g, walk)?;
        let shown: Vec<String> = got.iter().map(|t| format!("({}, {}, {})", t[0], t[1], t[2])).collect();
        r.published(
            format!("cycle-cargo-{}", idx + 1),
            got.contains(cargo),
            format!(
                "claimed ({}, {}, {}); achievable {}",
                cargo[0],
                cargo[1],
                cargo[2],
                shown.join(" ")
            ),
        );
    }
    Ok(())
}

/// Random balanced targets within max-norm 3 of a two-generator start,
/// each approached to within `eps`. Returns (failures, worst error).
pub fn density_trial(count: usize, eps: f64, budget: usize, seed: u64) -> Result<(usize, f64)> {
    let r0 = caseb::case_b_start(1.0, 2f64.sqrt(), [0.0; 3])?;
    let start = r0.log_rates();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let targets: Vec<RateEnsemble> = (0..count)
        .map(|_| {
            // Dollar offsets within ±1.5 keep all six coordinates within 3.
            let l: [f64; 3] = std::array::from_fn(|i| start[i] + rng.gen_range(-1.5..1.5));
            RateEnsemble::numeric([l[0], l[1], l[2], l[1] - l[0], l[2] - l[0], l[2] - l[1]]).expect("finite")
        })
        .collect();
    let results: Vec<Option<f64>> = targets
        .par_iter()
        .map(|t| caseb::approximate_target(&r0, t, eps, budget).map(|a| a.map(|a| a.error)))
        .collect::<Result<_>>()?;
    let fails = results.iter().filter(|e| !matches!(e, Some(x) if *x <= eps)).count();
    let worst = results.iter().flatten().copied().fold(0.0, f64::max);
    Ok((fails, worst))
}
