//! The semigroup generated by the twelve 3×3 discrepancy matrices, its
//! component structure, and the discrepancy transition graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::OnceLock;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Lin;
use crate::linalg::{self, rank, IntMatrix3};
use crate::market::arbitrages;
use crate::reference;

/// Hard cap on closure size; reaching it means the generators are wrong.
const CLOSURE_CAP: usize = 1_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct Element {
    pub m: IntMatrix3,
    pub rank: usize,
    /// 1..14 (15+ only if the partition deviates from the expected shape).
    pub component: usize,
}

#[derive(Debug)]
pub struct Semigroup {
    pub elements: Vec<Element>,
    index: HashMap<IntMatrix3, usize>,
    /// `succ[e][i-1]` = index of element e·G⁽ⁱ⁾.
    pub succ: Vec<[usize; 12]>,
    pub components: Vec<Vec<usize>>,
    /// Direct one-step relation between distinct components (1-based ids).
    pub transitions: BTreeSet<(usize, usize)>,
    /// Problems found while labelling components (empty when the shape matches).
    pub labelling_issues: Vec<String>,
}

/// Right-multiplication closure of the twelve generators.
pub fn enumerate_matrices(gens: &[IntMatrix3]) -> Result<(Vec<IntMatrix3>, Vec<Vec<usize>>)> {
    let mut elems: Vec<IntMatrix3> = Vec::new();
    let mut index: HashMap<IntMatrix3, usize> = HashMap::new();
    for g in gens {
        if !index.contains_key(g) {
            index.insert(*g, elems.len());
            elems.push(*g);
        }
    }
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    while next < elems.len() {
        let e = elems[next];
        let mut row = Vec::with_capacity(gens.len());
        for g in gens {
            let p = linalg::mul(&e, g);
            let id = match index.get(&p) {
                Some(&id) => id,
                None => {
                    if elems.len() >= CLOSURE_CAP {
                        return Err(Error::Resource(format!("closure exceeded {CLOSURE_CAP} elements")));
                    }
                    index.insert(p, elems.len());
                    elems.push(p);
                    elems.len() - 1
                }
            };
            row.push(id);
        }
        succ.push(row);
        next += 1;
    }
    Ok((elems, succ))
}

fn build() -> Result<Semigroup> {
    let gens: Vec<IntMatrix3> = (1..=12).map(|i| *linalg::g(i)).collect();
    let (mats, succ_v) = enumerate_matrices(&gens)?;
    let succ: Vec<[usize; 12]> = succ_v.iter().map(|r| std::array::from_fn(|i| r[i])).collect();
    let index: HashMap<IntMatrix3, usize> = mats.iter().enumerate().map(|(i, m)| (*m, i)).collect();

    let mut graph = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..mats.len()).map(|_| graph.add_node(())).collect();
    for (e, row) in succ.iter().enumerate() {
        for &t in row {
            graph.add_edge(nodes[e], nodes[t], ());
        }
    }
    let mut sccs: Vec<Vec<usize>> = tarjan_scc(&graph)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
            v.sort();
            v
        })
        .collect();
    sccs.sort();
    let scc_of: Vec<usize> = {
        let mut s = vec![0; mats.len()];
        for (c, members) in sccs.iter().enumerate() {
            for &m in members {
                s[m] = c;
            }
        }
        s
    };

    // Label: U₁..U₆ by generator pairs, U₇..U₁₃ by representatives, U₁₄ = {0}.
    let mut label: Vec<Option<usize>> = vec![None; sccs.len()];
    let mut issues = Vec::new();
    let assign = |scc: usize, id: usize, what: String, label: &mut Vec<Option<usize>>, issues: &mut Vec<String>| match label[scc] {
        None => label[scc] = Some(id),
        Some(prev) if prev == id => {}
        Some(prev) => issues.push(format!("{what} lands in U{prev}, expected U{id}")),
    };
    for i in 1..=6 {
        let a = scc_of[index[linalg::g(2 * i - 1)]];
        let b = scc_of[index[linalg::g(2 * i)]];
        if a != b {
            issues.push(format!("G{} and G{} in different components", 2 * i - 1, 2 * i));
        }
        assign(a, i, format!("G{}", 2 * i - 1), &mut label, &mut issues);
    }
    for (k, rep) in reference::RANK1_REPRESENTATIVES.iter().enumerate() {
        match index.get(rep) {
            Some(&e) => assign(scc_of[e], 7 + k, format!("representative {}", k + 1), &mut label, &mut issues),
            None => issues.push(format!("representative {} not in the semigroup", k + 1)),
        }
    }
    match index.get(&[[0; 3]; 3]) {
        Some(&z) => assign(scc_of[z], 14, "zero matrix".into(), &mut label, &mut issues),
        None => issues.push("zero matrix not in the semigroup".into()),
    }
    let mut extra = 15;
    for l in label.iter_mut() {
        if l.is_none() {
            *l = Some(extra);
            extra += 1;
        }
    }
    let ncomp = extra - 1;
    let mut components = vec![Vec::new(); ncomp];
    for (c, members) in sccs.iter().enumerate() {
        components[label[c].unwrap() - 1] = members.clone();
    }
    let comp_of = |e: usize| label[scc_of[e]].unwrap();
    let mut transitions = BTreeSet::new();
    for (e, row) in succ.iter().enumerate() {
        for &t in row {
            if comp_of(e) != comp_of(t) {
                transitions.insert((comp_of(e), comp_of(t)));
            }
        }
    }
    let elements = mats
        .iter()
        .enumerate()
        .map(|(i, m)| Element { m: *m, rank: rank(m), component: comp_of(i) })
        .collect();
    Ok(Semigroup { elements, index, succ, components, transitions, labelling_issues: issues })
}

pub fn semigroup() -> &'static Semigroup {
    static S: OnceLock<Semigroup> = OnceLock::new();
    S.get_or_init(|| build().expect("semigroup closure is finite"))
}

/// Fresh (uncached) closure, for timing.
pub fn enumerate_products() -> Result<Vec<Element>> {
    Ok(build()?.elements)
}

impl Semigroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn find(&self, m: &IntMatrix3) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn rank_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for e in &self.elements {
            *h.entry(e.rank).or_insert(0) += 1;
        }
        h
    }

    pub fn component_sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    pub fn successors(&self, u: usize) -> BTreeSet<usize> {
        self.transitions.iter().filter(|(a, _)| *a == u).map(|(_, b)| *b).collect()
    }

    /// Transitive reachability between components (excluding the trivial path).
    pub fn reaches(&self, from: usize, to: usize) -> bool {
        let mut seen = BTreeSet::new();
        let mut stack = vec![from];
        while let Some(u) = stack.pop() {
            for v in self.successors(u) {
                if v == to {
                    return true;
                }
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        false
    }

    /// True when every E·G⁽ⁱ⁾ is again a stored element.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|e| (1..=12).all(|i| self.index.contains_key(&linalg::mul(&e.m, linalg::g(i)))))
    }
}

/// M, M² or M³ is idempotent.
pub fn has_projector_power(m: &IntMatrix3) -> bool {
    let mut p = *m;
    for _ in 0..3 {
        if linalg::mul(&p, &p) == p {
            return true;
        }
        p = linalg::mul(&p, m);
    }
    false
}

/// Index of a one-generator triple within the 12-element list (0 for zero).
pub fn disc12_index(t: &[i64; 3]) -> Option<usize> {
    if *t == [0, 0, 0] {
        return Some(0);
    }
    reference::DISC12.iter().position(|d| d == t).map(|p| p + 1)
}

/// 12×12 transition table: entry (i, j) is the index of Dⱼ(a)·G⁽ⁱ⁾.
pub fn discrepancy_transition_table(a: f64) -> Result<[[usize; 12]; 12]> {
    if a == 0.0 || !a.is_finite() {
        return Err(Error::Domain("a must be finite and nonzero".into()));
    }
    let mut t = [[0usize; 12]; 12];
    for i in 1..=12 {
        for (j, d) in reference::DISC12.iter().enumerate() {
            let img = linalg::vec_mul_i64(d, linalg::g(i));
            t[i - 1][j] = disc12_index(&img)
                .ok_or_else(|| Error::Verification(format!("D{}·G{i} = {img:?} leaves the 12-element set", j + 1)))?;
        }
    }
    Ok(t)
}

/// Undirected incidence (with self-loops) of the transition table, ignoring D₀.
pub fn incidence_from_table(t: &[[usize; 12]; 12]) -> [[u8; 12]; 12] {
    let mut m = [[0u8; 12]; 12];
    for row in t {
        for (j, &to) in row.iter().enumerate() {
            if to != 0 {
                m[j][to - 1] = 1;
                m[to - 1][j] = 1;
            }
        }
    }
    m
}

/// Coefficients w with `test_k · l = w · d` for arbitrage k.
pub fn activation_in_discrepancies(k: usize) -> [i64; 3] {
    let test = arbitrages()[k - 1].test.map(|x| x as i64);
    let (_, qinv) = linalg::q_matrices();
    let w: [i64; 6] = std::array::from_fn(|i| (0..6).map(|j| qinv[i][j] * test[j]).sum());
    debug_assert_eq!(&w[..3], &[0, 0, 0]);
    [w[3], w[4], w[5]]
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitVertex {
    pub name: String,
    pub value: [f64; 3],
    pub exact: [Lin; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitEdge {
    pub from: usize,
    pub to: usize,
    pub arbitrage: usize,
    pub strong: usize,
}

/// Discrepancy vertices and the labelled moves between them.
#[derive(Clone, Debug, Serialize)]
pub struct DiscrepancyOrbit {
    pub a: f64,
    pub b: f64,
    pub vertices: Vec<OrbitVertex>,
    pub edges: Vec<OrbitEdge>,
    /// Moves leaving the vertex set: (from, arbitrage, image).
    pub exits: Vec<(usize, usize, [f64; 3])>,
}

const DEDUP_TOL: f64 = 1e-9;

fn eval(t: &[Lin; 3], a: f64, b: f64) -> [f64; 3] {
    t.map(|x| x.a() as f64 * a + x.b() as f64 * b)
}

fn close(x: &[f64; 3], y: &[f64; 3]) -> bool {
    x.iter().zip(y).all(|(p, q)| (p - q).abs() <= DEDUP_TOL)
}

fn build_orbit(a: f64, b: f64, candidates: Vec<(String, [Lin; 3])>) -> DiscrepancyOrbit {
    let mut vertices: Vec<OrbitVertex> = Vec::new();
    for (name, exact) in candidates {
        let value = eval(&exact, a, b);
        if value.iter().all(|v| v.abs() <= DEDUP_TOL) {
            continue;
        }
        if !vertices.iter().any(|v| close(&v.value, &value)) {
            vertices.push(OrbitVertex { name, value, exact });
        }
    }
    let mut edges = Vec::new();
    let mut exits = Vec::new();
    for (vi, v) in vertices.iter().enumerate() {
        for info in arbitrages() {
            let w = activation_in_discrepancies(info.number);
            let q: f64 = (0..3).map(|i| w[i] as f64 * v.value[i]).sum();
            if q <= 1e-12 {
                continue;
            }
            let img = linalg::vec_mul_lin(&v.exact, linalg::g(info.strong));
            let val = eval(&img, a, b);
            match vertices.iter().position(|u| close(&u.value, &val)) {
                Some(to) => edges.push(OrbitEdge { from: vi, to, arbitrage: info.number, strong: info.strong }),
                None => exits.push((vi, info.number, val)),
            }
        }
    }
    DiscrepancyOrbit { a, b, vertices, edges, exits }
}

/// The orbit of the 24 two-generator triples; degenerate parameters
/// collapse by numeric deduplication.
pub fn orbit_polyhedron(a: f64, b: f64) -> Result<DiscrepancyOrbit> {
    if (a == 0.0 && b == 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain("(a, b) must be finite and not both zero".into()));
    }
    let cands = reference::DISC24.iter().enumerate().map(|(i, t)| (format!("D{}", i + 1), *t)).collect();
    Ok(build_orbit(a, b, cands))
}

/// The 12-vertex one-generator graph in its canonical order.
pub fn disc12_orbit(a: f64) -> Result<DiscrepancyOrbit> {
    if a == 0.0 || !a.is_finite() {
        return Err(Error::Domain("a must be finite and nonzero".into()));
    }
    let cands = reference::DISC12
        .iter()
        .enumerate()
        .map(|(i, t)| (format!("D{}", i + 1), t.map(|x| Lin::new(x, 0))))
        .collect();
    Ok(build_orbit(a, 0.0, cands))
}

impl DiscrepancyOrbit {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph orbit {\n");
        for v in &self.vertices {
            s.push_str(&format!(
                "  {} [label=\"{}\\n({}, {}, {})\"];\n",
                v.name, v.name, v.exact[0], v.exact[1], v.exact[2]
            ));
        }
        for e in &self.edges {
            s.push_str(&format!(
                "  {} -> {} [label=\"{}\"];\n",
                self.vertices[e.from].name, self.vertices[e.to].name, e.arbitrage
            ));
        }
        s.push_str("}\n");
        s
    }

    /// Undirected incidence with self-loops for moves that stay put.
    pub fn incidence(&self) -> Vec<Vec<u8>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0u8; n]; n];
        for e in &self.edges {
            m[e.from][e.to] = 1;
            m[e.to][e.from] = 1;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projector_power() {
        assert!(has_projector_power(&[[0, -1, 0], [0, 1, 0], [0, 0, 1]]));
        assert!(has_projector_power(&[[0, 1, 0], [0, 0, 1], [1, 0, 0]]));
        assert!(!has_projector_power(&[[2, 0, 0], [0, 1, 0], [0, 0, 1]]));
    }

    #[test]
    fn disc12_lookup() {
        assert_eq!(disc12_index(&[1, 1, 0]), Some(10));
        assert_eq!(disc12_index(&[0, 0, 0]), Some(0));
        assert_eq!(disc12_index(&[2, 0, 0]), None);
    }

    #[test]
    fn activation_of_first_arbitrage_is_minus_d1() {
        assert_eq!(activation_in_discrepancies(1), [-1, 0, 0]);
    }
}
