//! Commuters, terminals, knots and the knot travel graph.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{GeneratorBasis, Lin};
use crate::reference::{CargoEquality, COMMUTERS_PRINTED, TERMINALS_PRINTED};

use super::caseb::check_generic;
use super::words::{strong_step, Triple};

/// Order of printed commuters that actually generate each knot's terminals:
/// the third and fourth printed commuters belong to each other's knots.
pub const COMMUTER_ORDER: [usize; 6] = [0, 1, 3, 2, 4, 5];

/// Strong arbitrage taking a commuter to terminal j (1-based j = index + 1).
pub const TO_TERMINAL: [usize; 3] = [7, 9, 11];
/// Strong arbitrage taking terminal j back to its commuter.
pub const TO_COMMUTER: [usize; 3] = [8, 10, 12];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Knot {
    pub id: usize,
    pub commuter: Triple,
    pub terminals: [Triple; 3],
}

/// A checked equality with its description.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub what: String,
    pub holds: bool,
}

fn generic_basis(a: f64, b: f64) -> Result<GeneratorBasis> {
    let basis = GeneratorBasis::pair(a, b, [0.0; 3])?;
    check_generic(&basis)?;
    Ok(basis)
}

/// Equalities linking commuters and terminals for the given commuter list.
pub fn commuter_checks(commuters: &[Triple; 6]) -> Vec<Check> {
    let mut out = Vec::new();
    for (i, c) in commuters.iter().enumerate() {
        for j in 0..3 {
            let (img, cargo) = strong_step(c, TO_TERMINAL[j]);
            out.push(Check {
                what: format!("C{}·G{} = T{}_{}", i + 1, TO_TERMINAL[j], j + 1, i + 1),
                holds: img == TERMINALS_PRINTED[i][j],
            });
            out.push(Check {
                what: format!("C{}·H{} = 0", i + 1, TO_TERMINAL[j]),
                holds: cargo.iter().all(|x| x.is_zero()),
            });
            let (back, _) = strong_step(&TERMINALS_PRINTED[i][j], TO_COMMUTER[j]);
            out.push(Check {
                what: format!("T{}_{}·G{} = C{}", j + 1, i + 1, TO_COMMUTER[j], i + 1),
                holds: back == *c,
            });
        }
    }
    out
}

/// The printed commuter list, as published.
pub fn printed_commuter_checks() -> Vec<Check> {
    commuter_checks(&COMMUTERS_PRINTED)
}

/// Six knots with terminals as printed and commuters re-paired so that every
/// commuter/terminal equality holds.
pub fn knot_structure(a: f64, b: f64) -> Result<Vec<Knot>> {
    generic_basis(a, b)?;
    let commuters: [Triple; 6] = COMMUTER_ORDER.map(|k| COMMUTERS_PRINTED[k]);
    if let Some(bad) = commuter_checks(&commuters).into_iter().find(|c| !c.holds) {
        return Err(Error::Internal(format!("knot structure inconsistent: {}", bad.what)));
    }
    Ok((0..6)
        .map(|i| Knot { id: i + 1, commuter: commuters[i], terminals: TERMINALS_PRINTED[i] })
        .collect())
}

/// Terminal-to-terminal move between different knots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TravelEdge {
    pub from: (usize, usize),
    pub strong: usize,
    pub to: (usize, usize),
    pub cargo: Triple,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TravelGraph {
    pub knots: Vec<Knot>,
    pub edges: Vec<TravelEdge>,
    pub incidence: [[u8; 6]; 6],
}

fn locate_terminal(t: &Triple) -> Option<(usize, usize)> {
    for (i, ts) in TERMINALS_PRINTED.iter().enumerate() {
        if let Some(j) = ts.iter().position(|x| x == t) {
            return Some((i + 1, j + 1));
        }
    }
    None
}

/// Single strong steps that carry a terminal of one knot to a terminal of
/// another; `incidence[i][j] = 1` when knot i+1 reaches knot j+1.
pub fn travel_graph(a: f64, b: f64) -> Result<TravelGraph> {
    let knots = knot_structure(a, b)?;
    let mut edges = Vec::new();
    let mut incidence = [[0u8; 6]; 6];
    for k in &knots {
        for (j, t) in k.terminals.iter().enumerate() {
            for s in 1..=12 {
                let (img, cargo) = strong_step(t, s);
                if let Some((ki, tj)) = locate_terminal(&img) {
                    if ki != k.id {
                        edges.push(TravelEdge { from: (k.id, j + 1), strong: s, to: (ki, tj), cargo });
                        incidence[k.id - 1][ki - 1] = 1;
                    }
                }
            }
        }
    }
    Ok(TravelGraph { knots, edges, incidence })
}

/// Each printed terminal equality re-evaluated: (image matches, cargo matches).
pub fn cargo_equality_checks(eqs: &[CargoEquality]) -> Vec<(CargoEquality, bool, bool)> {
    eqs.iter()
        .map(|e| {
            let src = TERMINALS_PRINTED[e.src.1 - 1][e.src.0 - 1];
            let dst = TERMINALS_PRINTED[e.dst.1 - 1][e.dst.0 - 1];
            let (img, cargo) = strong_step(&src, e.strong);
            (*e, img == dst, cargo == e.cargo)
        })
        .collect()
}

/// A realized closed walk: starting terminal, strong word, total cargo.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleRealization {
    pub start: (usize, usize),
    pub word: Vec<usize>,
    pub cargo: Triple,
}

fn hop(from_terminal: usize, to_terminal: usize, word: &mut Vec<usize>) {
    if from_terminal != to_terminal {
        word.push(TO_COMMUTER[from_terminal - 1]);
        word.push(TO_TERMINAL[to_terminal - 1]);
    }
}

/// Every way to traverse the closed knot walk `cycle` (first = last) using
/// one travel edge per step and commuter hops inside knots.
pub fn cycle_realizations(graph: &TravelGraph, cycle: &[usize]) -> Result<Vec<CycleRealization>> {
    if cycle.len() < 2 || cycle.first() != cycle.last() {
        return Err(Error::InvalidCycle("walk must be closed and nonempty".into()));
    }
    if cycle.iter().any(|k| !(1..=6).contains(k)) {
        return Err(Error::InvalidCycle("knot ids are 1..6".into()));
    }
    let steps: Vec<Vec<&TravelEdge>> = cycle
        .windows(2)
        .map(|w| graph.edges.iter().filter(|e| e.from.0 == w[0] && e.to.0 == w[1]).collect::<Vec<_>>())
        .collect();
    if let Some(p) = steps.iter().position(|s| s.is_empty()) {
        return Err(Error::InvalidCycle(format!("K{} → K{} is not an edge", cycle[p], cycle[p + 1])));
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; steps.len()];
    loop {
        let chosen: Vec<&TravelEdge> = idx.iter().zip(&steps).map(|(&i, s)| s[i]).collect();
        let mut word = Vec::new();
        let mut cargo = [Lin::ZERO; 3];
        for (n, e) in chosen.iter().enumerate() {
            if n > 0 {
                hop(chosen[n - 1].to.1, e.from.1, &mut word);
            }
            word.push(e.strong);
            for c in 0..3 {
                cargo[c] = cargo[c] + e.cargo[c];
            }
        }
        hop(chosen.last().expect("nonempty").to.1, chosen[0].from.1, &mut word);
        out.push(CycleRealization { start: chosen[0].from, word, cargo });
        let mut p = 0;
        loop {
            if p == idx.len() {
                return Ok(out);
            }
            idx[p] += 1;
            if idx[p] < steps[p].len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

/// Distinct cargo vectors achievable along the closed walk.
pub fn cycle_cargo(graph: &TravelGraph, cycle: &[usize]) -> Result<BTreeSet<Triple>> {
    Ok(cycle_realizations(graph, cycle)?.into_iter().map(|r| r.cargo).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::{CARGO_EQUALITIES, CYCLES};

    const A: f64 = 1.0;
    const B: f64 = 0.37;

    #[test]
    fn first_knot() {
        let k = knot_structure(A, B).unwrap();
        assert_eq!(k[0].commuter, [Lin::A, Lin::B, Lin::new(-1, 1)]);
        assert_eq!(k[0].terminals[2], [Lin::A, Lin::B, Lin::ZERO]);
        assert_eq!(strong_step(&k[1].commuter, 7).0, [Lin::ZERO, Lin::B, Lin::A]);
    }

    #[test]
    fn printed_commuters_fail_only_for_swapped_pair() {
        let bad: Vec<String> = printed_commuter_checks().into_iter().filter(|c| !c.holds).map(|c| c.what).collect();
        assert!(!bad.is_empty());
        assert!(bad.iter().all(|w| w.starts_with("C3") || w.starts_with("C4") || w.contains("= C3") || w.contains("= C4")));
    }

    #[test]
    fn graph_is_bipartite_between_odd_and_even() {
        let g = travel_graph(A, B).unwrap();
        assert_eq!(g.edges.len(), 36);
        assert_eq!(g.incidence[0], [0, 1, 0, 1, 0, 1]);
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(g.incidence[i][j], u8::from((i + j) % 2 == 1));
            }
        }
    }

    #[test]
    fn half_the_printed_equalities_hold() {
        let n = cargo_equality_checks(&CARGO_EQUALITIES).iter().filter(|(_, i, c)| *i && *c).count();
        assert_eq!(n, 11);
    }

    #[test]
    fn cycle_cargo_membership() {
        let g = travel_graph(A, B).unwrap();
        let got: Vec<bool> = CYCLES.iter().map(|(w, c)| cycle_cargo(&g, w).unwrap().contains(c)).collect();
        assert_eq!(got, vec![false, true, true]);
    }

    #[test]
    fn non_edge_rejected() {
        let g = travel_graph(A, B).unwrap();
        assert!(matches!(cycle_cargo(&g, &[1, 3, 1]), Err(Error::InvalidCycle(_))));
    }
}
