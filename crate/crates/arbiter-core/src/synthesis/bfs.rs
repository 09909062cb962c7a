//! Breadth-first certification over exact lattice states.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::market::{lattice_apply, Coeffs, RateEnsemble};

use super::TargetExponents;

/// State-count ceiling for a single search.
pub const STATE_LIMIT: usize = 10_000_000;

fn lattice_parts(r0: &RateEnsemble) -> Result<(Coeffs, &crate::GeneratorBasis)> {
    match r0 {
        RateEnsemble::Lattice { basis, coeffs } => Ok((*coeffs, basis)),
        _ => Err(Error::Domain("search needs a lattice ensemble".into())),
    }
}

/// Full BFS tree to a fixed depth, answering many target queries.
pub struct BfsTree {
    /// state → (depth, parent, arbitrage)
    nodes: HashMap<Coeffs, (usize, Option<Coeffs>, usize)>,
    pub max_depth: usize,
}

impl BfsTree {
    pub fn build(r0: &RateEnsemble, max_depth: usize) -> Result<Self> {
        let (start, basis) = lattice_parts(r0)?;
        let mut nodes = HashMap::new();
        nodes.insert(start, (0, None, 0));
        let mut q = VecDeque::from([start]);
        while let Some(u) = q.pop_front() {
            let d = nodes[&u].0;
            if d == max_depth {
                continue;
            }
            for k in 1..=24 {
                if let Some(v) = lattice_apply(&u, k, basis) {
                    if !nodes.contains_key(&v) {
                        if nodes.len() >= STATE_LIMIT {
                            return Err(Error::Resource(format!("more than {STATE_LIMIT} states")));
                        }
                        nodes.insert(v, (d + 1, Some(u), k));
                        q.push_back(v);
                    }
                }
            }
        }
        Ok(BfsTree { nodes, max_depth })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn states(&self) -> impl Iterator<Item = &Coeffs> {
        self.nodes.keys()
    }

    pub fn depth(&self, target: &Coeffs) -> Option<usize> {
        self.nodes.get(target).map(|n| n.0)
    }

    pub fn path(&self, target: &Coeffs) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = *target;
        loop {
            let &(_, parent, k) = self.nodes.get(&cur)?;
            match parent {
                None => break,
                Some(p) => {
                    out.push(k);
                    cur = p;
                }
            }
        }
        out.reverse();
        Some(out)
    }
}

/// Minimal-length arbitrage chain from `r0` to the exact state `target`.
pub fn bfs_to_state(r0: &RateEnsemble, target: &Coeffs, max_len: usize) -> Result<Option<Vec<usize>>> {
    let (start, basis) = lattice_parts(r0)?;
    if &start == target {
        return Ok(Some(Vec::new()));
    }
    let mut nodes: HashMap<Coeffs, (usize, Option<Coeffs>, usize)> = HashMap::new();
    nodes.insert(start, (0, None, 0));
    let mut q = VecDeque::from([start]);
    while let Some(u) = q.pop_front() {
        let d = nodes[&u].0;
        if d >= max_len {
            continue;
        }
        for k in 1..=24 {
            let Some(v) = lattice_apply(&u, k, basis) else { continue };
            if nodes.contains_key(&v) {
                continue;
            }
            if nodes.len() >= STATE_LIMIT {
                return Err(Error::Resource(format!("more than {STATE_LIMIT} states")));
            }
            nodes.insert(v, (d + 1, Some(u), k));
            if &v == target {
                let mut out = Vec::new();
                let mut cur = v;
                while let Some(&(_, Some(p), k)) = nodes.get(&cur) {
                    out.push(k);
                    cur = p;
                }
                out.reverse();
                return Ok(Some(out));
            }
            q.push_back(v);
        }
    }
    Ok(None)
}

/// Minimal chain to the balanced target exponents `n` (single generator).
pub fn bfs_chain(r0: &RateEnsemble, n: TargetExponents, max_len: usize) -> Result<Option<Vec<usize>>> {
    if max_len == 0 {
        return Err(Error::Domain("max_len must be at least 1".into()));
    }
    if r0.basis().map(|b| b.rank()) != Some(1) {
        return Err(Error::Domain("bfs_chain needs a single-generator lattice ensemble".into()));
    }
    bfs_to_state(r0, &n.coeffs(), max_len)
}
