//! Strong-arbitrage words over the reduced (discrepancy, cargo) state.
//!
//! Applying strong arbitrage `i` maps the discrepancy triple `d` to `d·G⁽ⁱ⁾`
//! and adds `d·H⁽ⁱ⁾` to the three dollar log-rates (the "cargo"). Words found
//! here are realized as arbitrage chains by picking, at each step, whichever
//! member of the strong pair is active.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::lattice::{GeneratorBasis, Lin};
use crate::linalg::{g, h, vec_mul_lin};
use crate::market::{active_member, lattice_apply, lattice_discrepancies, lattice_strong, Coeffs};
use crate::reference::DISC12;

pub type Triple = [Lin; 3];

const ZERO3: Triple = [Lin::ZERO; 3];

fn add3(x: &Triple, y: &Triple) -> Triple {
    std::array::from_fn(|i| x[i] + y[i])
}

/// One strong step on the reduced state.
pub fn strong_step(d: &Triple, i: usize) -> (Triple, Triple) {
    (vec_mul_lin(d, g(i)), vec_mul_lin(d, h(i)))
}

/// End discrepancy and total cargo of a word started at `d`.
pub fn run_word(d: &Triple, word: &[usize]) -> (Triple, Triple) {
    let mut d = *d;
    let mut cargo = ZERO3;
    for &i in word {
        let (nd, inc) = strong_step(&d, i);
        d = nd;
        cargo = add3(&cargo, &inc);
    }
    (d, cargo)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub strongs: Vec<usize>,
    pub end: Triple,
    pub cargo: Triple,
}

type Key = (Triple, Triple);

/// Breadth-first search over (discrepancy, cargo) with bounded cargo.
struct WordSearch {
    prev: HashMap<Key, Option<(Key, usize)>>,
}

impl WordSearch {
    fn run(start: Triple, max_len: usize, cargo_bound: i64, mut stop: impl FnMut(&Key) -> bool) -> Self {
        let s0 = (start, ZERO3);
        let mut prev = HashMap::from([(s0, None)]);
        let mut q = VecDeque::from([(s0, 0usize)]);
        while let Some((s, len)) = q.pop_front() {
            if len >= max_len {
                continue;
            }
            for i in 1..=12 {
                let (d, inc) = strong_step(&s.0, i);
                let c = add3(&s.1, &inc);
                if c.iter().any(|x| x.a().abs() > cargo_bound || x.b().abs() > cargo_bound) {
                    continue;
                }
                let n = (d, c);
                if prev.contains_key(&n) {
                    continue;
                }
                prev.insert(n, Some((s, i)));
                if stop(&n) {
                    return WordSearch { prev };
                }
                q.push_back((n, len + 1));
            }
        }
        WordSearch { prev }
    }

    fn word(&self, key: &Key) -> Option<Word> {
        let mut out = Vec::new();
        let mut cur = *key;
        loop {
            match self.prev.get(&cur)? {
                None => break,
                Some((p, i)) => {
                    out.push(*i);
                    cur = *p;
                }
            }
        }
        out.reverse();
        Some(Word { strongs: out, end: key.0, cargo: key.1 })
    }
}

/// Shortest word from `start` to `goal` ignoring cargo (cargo still reported).
pub fn shortest_path(start: &Triple, goal: &Triple) -> Option<Word> {
    if start == goal {
        return Some(Word { strongs: vec![], end: *start, cargo: ZERO3 });
    }
    let mut prev: HashMap<Triple, (Triple, usize)> = HashMap::new();
    let mut q = VecDeque::from([*start]);
    while let Some(d) = q.pop_front() {
        for i in 1..=12 {
            let (n, _) = strong_step(&d, i);
            if n == *start || prev.contains_key(&n) {
                continue;
            }
            prev.insert(n, (d, i));
            if n == *goal {
                let mut w = Vec::new();
                let mut cur = n;
                while cur != *start {
                    let (p, i) = prev[&cur];
                    w.push(i);
                    cur = p;
                }
                w.reverse();
                let (end, cargo) = run_word(start, &w);
                return Some(Word { strongs: w, end, cargo });
            }
            q.push_back(n);
        }
    }
    None
}

/// Pump words at a home vertex: closed walks whose cargo is ±eᵢ in the
/// selected generator (other generator's cargo unconstrained).
#[derive(Clone, Debug)]
pub struct Pumps {
    pub home: Triple,
    /// `[coordinate][0 = +1, 1 = −1]`
    pub words: [[Word; 2]; 3],
}

impl Pumps {
    pub fn get(&self, coord: usize, positive: bool) -> &Word {
        &self.words[coord][usize::from(!positive)]
    }
}

fn find_pumps(home: Triple, generator: usize, max_len: usize, cargo_bound: i64) -> Option<Pumps> {
    let unit = |i: usize, s: i64| -> Triple {
        let mut t = [0i64; 3];
        t[i] = s;
        t.map(|v| if generator == 0 { Lin::new(v, 0) } else { Lin::new(0, v) })
    };
    let part = |x: Lin| if generator == 0 { x.a() } else { x.b() };
    let mut wanted: Vec<(usize, i64)> = (0..3).flat_map(|i| [(i, 1), (i, -1)]).collect();
    let mut found: HashMap<(usize, i64), Key> = HashMap::new();
    let search = WordSearch::run(home, max_len, cargo_bound, |(d, c)| {
        if *d != home {
            return false;
        }
        let sel = c.map(part);
        if let Some(pos) = wanted.iter().position(|&(i, s)| {
            let u = unit(i, s);
            sel == u.map(part)
        }) {
            found.insert(wanted.remove(pos), (*d, *c));
        }
        wanted.is_empty()
    });
    let pick = |i: usize, s: i64| found.get(&(i, s)).and_then(|k| search.word(k));
    Some(Pumps {
        home,
        words: [
            [pick(0, 1)?, pick(0, -1)?],
            [pick(1, 1)?, pick(1, -1)?],
            [pick(2, 1)?, pick(2, -1)?],
        ],
    })
}

/// Home vertex for single-generator adjustment: a·(1,1,0).
pub const HOME_A: [i64; 3] = [1, 1, 0];

/// Home vertex for two-generator adjustment: (a, b, 0).
pub const HOME_B: Triple = [Lin::A, Lin::B, Lin::ZERO];

pub fn pumps_a() -> &'static Pumps {
    static P: OnceLock<Pumps> = OnceLock::new();
    P.get_or_init(|| {
        find_pumps(HOME_A.map(|v| Lin::new(v, 0)), 0, 16, 3).expect("single-generator pump words exist")
    })
}

pub fn pumps_b() -> &'static Pumps {
    static P: OnceLock<Pumps> = OnceLock::new();
    P.get_or_init(|| {
        find_pumps(HOME_B, 1, 16, 2)
            .or_else(|| find_pumps(HOME_B, 1, 16, 3))
            .expect("two-generator pump words exist")
    })
}

/// Shortest word from the two-generator home to a single-generator vertex
/// without moving any `b` cargo.
pub fn exit_b() -> &'static Word {
    static W: OnceLock<Word> = OnceLock::new();
    W.get_or_init(|| {
        let ok = |(d, c): &Key| {
            d.iter().all(|x| x.b() == 0) && d.iter().any(|x| !x.is_zero()) && c.iter().all(|x| x.b() == 0)
        };
        let mut hit = None;
        let s = WordSearch::run(HOME_B, 8, 2, |k| {
            if ok(k) {
                hit = Some(*k);
                true
            } else {
                false
            }
        });
        s.word(&hit.expect("exit word exists")).expect("recorded")
    })
}

/// Exact quotient x / u in the lattice, if it exists.
fn lin_div(x: Lin, u: Lin) -> Option<i64> {
    let k = if u.a() != 0 {
        x.a() / u.a()
    } else if u.b() != 0 {
        x.b() / u.b()
    } else {
        return None;
    };
    (u * k == x).then_some(k)
}

/// Writes `d = u·v` with `v` one of the twelve single-generator vertices.
pub fn factor_single(d: &Triple) -> Option<(Lin, [i64; 3])> {
    let first = *d.iter().find(|x| !x.is_zero())?;
    for u in [first, -first] {
        let v: Option<Vec<i64>> = d.iter().map(|x| lin_div(*x, u)).collect();
        if let Some(v) = v {
            let v = [v[0], v[1], v[2]];
            if DISC12.contains(&v) {
                return Some((u, v));
            }
        }
    }
    None
}

/// Drives a state whose discrepancy lies on a single-generator orbit to the
/// balanced state with dollar log-rate coefficients `target`.
pub fn adjust_single(c: &Coeffs, basis: &GeneratorBasis, target: &Triple, out: &mut Vec<usize>) -> Result<Coeffs> {
    let d = lattice_discrepancies(c);
    if d.iter().all(|x| x.is_zero()) {
        if c[..3] == target[..] {
            return Ok(*c);
        }
        return Err(Error::WrongCase("state is already balanced; no arbitrage is active".into()));
    }
    let (u, v) = factor_single(&d)
        .ok_or_else(|| Error::WrongCase(format!("discrepancy {d:?} is not a multiple of a single-generator vertex")))?;
    let unit = |t: [i64; 3]| t.map(|x| Lin::new(x, 0));
    let path = shortest_path(&unit(v), &unit(HOME_A)).ok_or_else(|| Error::Internal("home vertex unreachable".into()))?;
    let finish = shortest_path(&unit(HOME_A), &ZERO3).ok_or_else(|| Error::Internal("no balancing word".into()))?;
    let mut word = path.strongs.clone();
    let pumps = pumps_a();
    for i in 0..3 {
        let delta = target[i] - c[i];
        let k = lin_div(delta, u)
            .ok_or_else(|| Error::WrongCase(format!("offset {delta} on dollar rate {} is not a multiple of {u}", i + 1)))?;
        let k = k - path.cargo[i].a() - finish.cargo[i].a();
        for _ in 0..k.unsigned_abs() {
            word.extend_from_slice(&pumps.get(i, k > 0).strongs);
        }
    }
    word.extend_from_slice(&finish.strongs);
    let end = realize_chain(c, basis, &word, out)?;
    if end[..3] != target[..] || !lattice_discrepancies(&end).iter().all(|x| x.is_zero()) {
        return Err(Error::Internal("adjustment word missed its target".into()));
    }
    Ok(end)
}

/// Realizes a strong word, appending the fired arbitrages to `out`.
pub fn realize_chain(c: &Coeffs, basis: &GeneratorBasis, word: &[usize], out: &mut Vec<usize>) -> Result<Coeffs> {
    let mut c = *c;
    for &i in word {
        match active_member(&c, i, basis) {
            Some(k) => {
                c = lattice_apply(&c, k, basis).expect("active");
                out.push(k);
            }
            None if lattice_strong(&c, i) == c => {}
            None => {
                return Err(Error::Degenerate(format!(
                    "strong arbitrage {i} would move the state but neither member is active"
                )))
            }
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pumps_have_unit_cargo() {
        let p = pumps_a();
        for i in 0..3 {
            for pos in [true, false] {
                let w = p.get(i, pos);
                let (end, cargo) = run_word(&p.home, &w.strongs);
                assert_eq!(end, p.home);
                let mut e = [0i64; 3];
                e[i] = if pos { 1 } else { -1 };
                assert_eq!(cargo.map(|x| x.a()), e);
            }
        }
    }

    #[test]
    fn b_pumps_move_only_selected_b_cargo() {
        let p = pumps_b();
        for i in 0..3 {
            for pos in [true, false] {
                let w = p.get(i, pos);
                let (end, cargo) = run_word(&HOME_B, &w.strongs);
                assert_eq!(end, HOME_B);
                let mut e = [0i64; 3];
                e[i] = if pos { 1 } else { -1 };
                assert_eq!(cargo.map(|x| x.b()), e);
            }
        }
    }

    #[test]
    fn exit_lands_on_single_generator_orbit() {
        let w = exit_b();
        assert!(factor_single(&w.end).is_some());
        assert!(w.cargo.iter().all(|x| x.b() == 0));
    }
}
