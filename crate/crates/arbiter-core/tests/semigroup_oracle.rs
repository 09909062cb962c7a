//! Rebuilds the discrepancy matrices from simulation and closes them under
//! products with a plain hash set.

use std::collections::{HashSet, VecDeque};

use arbiter_core::market::RateEnsemble;
use arbiter_core::semigroup::semigroup;

type M = [[i64; 3]; 3];

fn disc(l: &[f64; 6]) -> [f64; 3] {
    [l[0] - l[1] + l[3], l[0] - l[2] + l[4], l[1] - l[2] + l[5]]
}

/// Row j of the matrix is the image of the j-th unit discrepancy.
fn simulated_g(i: usize) -> M {
    let mut m = [[0; 3]; 3];
    for (j, row) in m.iter_mut().enumerate() {
        // Units in the cross slots give discrepancy e_j with dollar rates zero.
        let mut l = [0.0; 6];
        l[3 + j] = 1.0;
        let next = RateEnsemble::numeric(l).unwrap().apply_strong(i).unwrap().log_rates();
        *row = disc(&next).map(|x| x.round() as i64);
    }
    m
}

fn mul(a: &M, b: &M) -> M {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

#[test]
fn closure_has_229_elements() {
    let gens: Vec<M> = (1..=12).map(simulated_g).collect();
    let mut seen: HashSet<M> = gens.iter().copied().collect();
    let mut queue: VecDeque<M> = gens.iter().copied().collect();
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let p = mul(&m, g);
            if seen.insert(p) {
                queue.push_back(p);
            }
        }
    }
    assert_eq!(seen.len(), 229);
    let lib: HashSet<M> = semigroup().elements.iter().map(|e| e.m).collect();
    assert_eq!(lib, seen);
}

#[test]
fn simulated_generators_match_library() {
    for i in 1..=12 {
        assert_eq!(&simulated_g(i), arbiter_core::linalg::g(i), "strong {i}");
    }
}
