use arbiter_core::currency::Currency;
use arbiter_core::io;
use arbiter_core::lattice::{GeneratorBasis, Lin};
use arbiter_core::linalg;
use arbiter_core::market::{self, Chain, RateEnsemble};
use proptest::prelude::*;

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// log r(p→q) read straight off the six principal logs.
fn log_rate(l: &[f64; 6], p: usize, q: usize) -> f64 {
    if let Some(s) = PAIRS.iter().position(|&x| x == (p, q)) {
        l[s]
    } else {
        -l[PAIRS.iter().position(|&x| x == (q, p)).unwrap()]
    }
}

fn triangle(l: &[f64; 6], x: usize, y: usize, z: usize) -> f64 {
    log_rate(l, x, y) + log_rate(l, y, z) + log_rate(l, z, x)
}

fn logs() -> impl Strategy<Value = [f64; 6]> {
    prop::array::uniform6(-3.0f64..3.0)
}

fn dollar_logs() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-3.0f64..3.0)
}

fn balanced(d: [f64; 3]) -> [f64; 6] {
    [d[0], d[1], d[2], d[1] - d[0], d[2] - d[0], d[2] - d[1]]
}

fn lattice_state() -> impl Strategy<Value = RateEnsemble> {
    prop::array::uniform6((-4i64..=4, -4i64..=4)).prop_map(|c| {
        let basis = GeneratorBasis::pair(0.9, std::f64::consts::E.sqrt(), [0.2, -0.1, 0.05]).unwrap();
        RateEnsemble::lattice(basis, c.map(|(a, b)| Lin::new(a, b)))
    })
}

fn idx(c: Currency) -> usize {
    c.index()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn discrepancies_match_cross_rate_law(l in logs()) {
        let r = RateEnsemble::numeric(l).unwrap();
        let d = r.discrepancies().values;
        // d€£ = l$€ − l$£ + l€£ etc.
        let want = [l[0] - l[1] + l[3], l[0] - l[2] + l[4], l[1] - l[2] + l[5]];
        for j in 0..3 {
            prop_assert!((d[j] - want[j]).abs() < 1e-12);
        }
    }

    #[test]
    fn balanced_ensemble_is_fixed(d in dollar_logs(), k in 1usize..=24) {
        let r = RateEnsemble::numeric(balanced(d)).unwrap();
        let (next, fired) = r.apply_arbitrage(k).unwrap();
        prop_assert!(!fired);
        prop_assert_eq!(next, r);
    }

    #[test]
    fn activation_is_indirect_route_profit(l in logs(), k in 1usize..=24) {
        let a = market::arbitrage(k).unwrap();
        let (x, y, z) = (idx(a.trader), idx(a.quoted), idx(a.via));
        let gain = log_rate(&l, x, z) + log_rate(&l, z, y) - log_rate(&l, x, y);
        prop_assume!(gain.abs() > 1e-9);
        let r = RateEnsemble::numeric(l).unwrap();
        prop_assert_eq!(r.activation(k).unwrap(), gain > 0.0);
        let (next, fired) = r.apply_arbitrage(k).unwrap();
        prop_assert_eq!(fired, gain > 0.0);
        if fired {
            let n = next.log_rates();
            prop_assert!((log_rate(&n, x, y) - log_rate(&l, x, z) - log_rate(&l, z, y)).abs() < 1e-12);
        }
    }

    #[test]
    fn strong_is_idempotent_and_balances_its_sub_market(l in logs(), i in 1usize..=12) {
        let r = RateEnsemble::numeric(l).unwrap();
        let once = r.apply_strong(i).unwrap();
        prop_assert_eq!(once.apply_strong(i).unwrap(), once.clone());
        let s = market::strong(i).unwrap();
        let [x, y, z] = s.sub_market.map(idx);
        prop_assert!(triangle(&once.log_rates(), x, y, z).abs() < 1e-12);
        let slot = s.pair.slot();
        for j in 0..6 {
            if j != slot {
                prop_assert_eq!(once.log_rates()[j], l[j]);
            }
        }
    }

    #[test]
    fn reciprocal_rates_multiply_to_one(l in logs(), p in 0usize..4, q in 0usize..4) {
        prop_assume!(p != q);
        let r = RateEnsemble::numeric(l).unwrap();
        let (cp, cq) = (Currency::from_index(p).unwrap(), Currency::from_index(q).unwrap());
        let prod = r.reciprocal_rate(cp, cq).unwrap() * r.reciprocal_rate(cq, cp).unwrap();
        prop_assert!((prod - 1.0).abs() < 1e-12);
        prop_assert!((r.reciprocal_rate(cp, cq).unwrap().ln() - log_rate(&l, p, q)).abs() < 1e-12);
    }

    #[test]
    fn lattice_states_stay_on_lattice(r in lattice_state(), chain in prop::collection::vec(1usize..=24, 0..40)) {
        let traj = r.apply_chain(&Chain::finite(chain.clone()), chain.len()).unwrap();
        let num = r.to_numeric().apply_chain(&Chain::finite(chain.clone()), chain.len()).unwrap();
        for (a, b) in traj.iter().zip(&num) {
            prop_assert!(a.is_lattice());
            for j in 0..6 {
                prop_assert!((a.log_rates()[j] - b.log_rates()[j]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn discrepancy_update_is_local(r in lattice_state(), i in 1usize..=12) {
        let d = market::lattice_discrepancies(r.coeffs().unwrap());
        let next = r.apply_strong(i).unwrap();
        let d2 = market::lattice_discrepancies(next.coeffs().unwrap());
        prop_assert_eq!(d2, linalg::vec_mul_lin(&d, linalg::g(i)));
    }

    #[test]
    fn linear_update_matches_operator(l in logs(), i in 1usize..=12) {
        let r = RateEnsemble::numeric(l).unwrap();
        let next = r.apply_strong(i).unwrap().log_rates();
        let lin = linalg::vec_mul_f64(&l, &linalg::matrices().b[i - 1]);
        for j in 0..6 {
            prop_assert!((next[j] - lin[j]).abs() < 1e-12);
        }
    }

    #[test]
    fn dollar_cargo_adds_up(r in lattice_state(), word in prop::collection::vec(1usize..=12, 0..20)) {
        let mut cur = r.clone();
        let mut total = [Lin::ZERO; 3];
        for &i in &word {
            let d = market::lattice_discrepancies(cur.coeffs().unwrap());
            let inc = linalg::increment_exact(&d, i);
            for j in 0..3 {
                total[j] += inc[j];
            }
            cur = cur.apply_strong(i).unwrap();
        }
        let (c0, c1) = (r.coeffs().unwrap(), cur.coeffs().unwrap());
        for j in 0..3 {
            prop_assert_eq!(c1[j] - c0[j], total[j]);
        }
    }

    #[test]
    fn ensemble_json_round_trip(l in logs(), lat in lattice_state()) {
        for r in [RateEnsemble::numeric(l).unwrap(), lat] {
            let back = io::ensemble_from_json(&io::ensemble_to_json(&r)).unwrap();
            prop_assert_eq!(back, r);
        }
    }

    #[test]
    fn chain_json_round_trip(block in prop::collection::vec(1usize..=24, 1..30), periodic in any::<bool>()) {
        let c = if periodic { Chain::periodic(block) } else { Chain::finite(block) };
        prop_assert_eq!(io::chain_from_json(&io::chain_to_json(&c)).unwrap(), c);
    }
}
