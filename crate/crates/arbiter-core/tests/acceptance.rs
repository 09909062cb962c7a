//! Acceptance criteria 1–12. Prints one line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use arbiter_core::market::Chain;
use arbiter_core::periodic::{classify_periodic_chain, Periodicity};
use arbiter_core::reference;
use arbiter_core::report::{self, Status, Suite};
use arbiter_core::semigroup::{self, enumerate_products, semigroup};
use arbiter_core::synthesis::{self, bounds, classify, knots, star};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn c1() -> Outcome {
    let t = Instant::now();
    let els = enumerate_products().expect("enumeration");
    let dt = t.elapsed();
    outcome(els.len() == 229 && dt < Duration::from_secs(5), format!("{} elements in {dt:.2?}", els.len()))
}

fn c2() -> Outcome {
    let sg = semigroup();
    let mut profile: Vec<(usize, usize)> = sg
        .components
        .iter()
        .map(|c| (c.len(), sg.elements[c[0]].rank))
        .collect();
    profile.sort();
    let mut want = vec![(1, 0)];
    want.extend([(12, 1); 7]);
    want.extend([(24, 2); 6]);
    let shape = sg.components.len() == 14 && profile == want;

    let reps: Vec<usize> = reference::RANK1_REPRESENTATIVES
        .iter()
        .filter_map(|m| sg.find(m).map(|e| sg.elements[e].component))
        .collect();
    let distinct = reps.len() == 7 && reps.iter().collect::<BTreeSet<_>>().len() == 7;

    let mut trans = true;
    for i in 1..=6 {
        let direct: BTreeSet<usize> = sg.successors(i).into_iter().filter(|&j| j != i).collect();
        let printed: BTreeSet<usize> = reference::COMPONENT_SUCCESSORS[i - 1].into_iter().collect();
        trans &= direct == printed;
    }
    let to_zero = (1..=13).all(|i| sg.reaches(i, 14));
    outcome(
        shape && distinct && trans && to_zero,
        format!("14 components: {shape}; representatives distinct: {distinct}; U1..U6 successors exact: {trans}; all reach U14: {to_zero}"),
    )
}

fn c3() -> Outcome {
    let cells = report::table3_mismatches().expect("table");
    let shown: Vec<String> = cells.iter().map(|(i, j, p, d)| format!("({i},{j}) printed {p} derived {d}")).collect();
    outcome(cells.is_empty(), format!("{}/144 cells agree; {}", 144 - cells.len(), shown.join(", ")))
}

fn c4() -> Outcome {
    let t = semigroup::discrepancy_transition_table(1.0).expect("table");
    let i12 = semigroup::incidence_from_table(&t) == reference::INCIDENCE_12;
    let g = knots::travel_graph(1.0, 0.37).expect("graph");
    let rows_off: Vec<usize> = (0..6).filter(|&r| g.incidence[r] != reference::INCIDENCE_KNOTS[r]).map(|r| r + 1).collect();
    outcome(
        i12 && rows_off.is_empty(),
        format!("12×12 matches: {i12}; 6×6 rows differing: {rows_off:?}"),
    )
}

fn c5() -> Outcome {
    let r1 = synthesis::standard_start(1, synthesis::DEFAULT_ALPHA).expect("start");
    let rep = star::analyze_star(&star::star_chain(), &r1).expect("star");
    let all_fire = rep.fired.iter().all(|&f| f);
    let route_ok = rep.route == reference::STAR_ROUTE;
    outcome(
        all_fire && route_ok && rep.minimal_period == Some(24),
        format!("period {:?}, all active {all_fire}, route equal {route_ok}", rep.minimal_period),
    )
}

fn c6() -> Outcome {
    let t = Instant::now();
    let grids: Vec<report::GridReport> = (1..=6).map(|s| report::certify_grid(s).expect("grid")).collect();
    let dt = t.elapsed();
    let unreached: usize = grids.iter().map(|g| g.unreached.len()).sum();
    let over: Vec<String> = grids
        .iter()
        .flat_map(|g| g.overruns.iter().map(move |(n, len, b, _)| format!("start {} {n:?} needs {len} > {b}", g.start)))
        .collect();
    outcome(
        unreached == 0 && over.is_empty() && dt < Duration::from_secs(60),
        format!("{unreached} unreached of 1296, {} over bound ({}), {dt:.2?}", over.len(), over.join("; ")),
    )
}

fn c7() -> Outcome {
    let r1 = synthesis::standard_start(1, synthesis::DEFAULT_ALPHA).expect("start");
    let rep = bounds::random_bound_sweep(&r1, 10_000, 50, 7).expect("sweep");
    outcome(rep.ok(), format!("{} states, {} violations", rep.states_checked, rep.violations.len()))
}

fn c8() -> Outcome {
    let r1 = synthesis::standard_start(1, synthesis::DEFAULT_ALPHA).expect("start");
    let mut bad = 0;
    let mut divergent = 0;
    for n in 0..100u64 {
        let p = 1 + (n as usize % 4);
        let block = bounds::random_chain(1000 + n, p);
        match classify_periodic_chain(&Chain::periodic(block), &r1) {
            Ok(Periodicity::Periodic { q }) if (24 * p) % q == 0 => {}
            Ok(Periodicity::Divergent { q, .. }) if (24 * p) % q == 0 => divergent += 1,
            _ => bad += 1,
        }
    }
    outcome(bad == 0, format!("{bad} unclassified, {divergent} shift-constant"))
}

fn c9() -> Outcome {
    let (k, want) = reference::CASE_C_EXAMPLE;
    let spec = classify::reachability_classification(&classify::DeclaredDiscrepancy::Commensurate { gamma: 1.0, k })
        .expect("classify");
    let got = match spec {
        classify::LatticeSpec::Lattice { multipliers, .. } => multipliers,
        _ => vec![],
    };
    outcome(got == want, format!("{got:?}"))
}

fn c10() -> Outcome {
    let (fails, worst) = report::density_trial(20, 1e-3, 10_000, 10).expect("density");
    outcome(fails == 0, format!("{fails} failures, worst error {worst:.2e}"))
}

fn c11() -> Outcome {
    let commute_bad = knots::printed_commuter_checks().iter().filter(|c| !c.holds).count();
    let cargo_bad = knots::cargo_equality_checks(&reference::CARGO_EQUALITIES).iter().filter(|(_, i, c)| !(*i && *c)).count();
    let g = knots::travel_graph(1.0, 0.37).expect("graph");
    let cycles: Vec<bool> = reference::CYCLES
        .iter()
        .map(|(walk, cargo)| knots::cycle_cargo(&g, walk).map(|s| s.contains(cargo)).unwrap_or(false))
        .collect();
    outcome(
        commute_bad == 0 && cargo_bad == 0 && cycles.iter().all(|&c| c),
        format!("commuter equalities failing: {commute_bad}; cargo equalities failing: {cargo_bad}/22; cycles realized: {cycles:?}"),
    )
}

fn c12() -> Outcome {
    let r = report::run_suite(Suite::All).expect("verify all");
    let devs: Vec<_> = r.deviations().collect();
    let row1 = r.find("printed-activation-row-1").is_some_and(|c| c.status == Status::Deviation);
    let formula = devs.iter().filter(|c| c.name.starts_with("printed-chain-formula")).collect::<Vec<_>>();
    let certified = !formula.is_empty() && formula.iter().all(|c| c.details.contains("BFS certificate"));
    let explained = devs.iter().all(|c| !c.details.is_empty());
    outcome(
        r.passed() && !devs.is_empty() && row1 && certified && explained,
        format!(
            "verify all passed: {}; {} deviations; activation row 1 named: {row1}; formula mismatches certified: {certified}",
            r.passed(),
            devs.len()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("semigroup count", c1),
        ("component structure", c2),
        ("transition table", c3),
        ("incidence matrices", c4),
        ("periodic star chain", c5),
        ("reachability grid", c6),
        ("exponent bounds", c7),
        ("periodicity classifier", c8),
        ("commensurate example", c9),
        ("density", c10),
        ("knot machinery", c11),
        ("deviation ledger", c12),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        println!("criterion {:>2} {:<24} {} — {}", i + 1, name, if o.ok { "PASS" } else { "FAIL" }, o.detail);
        if !o.ok {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 12 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
