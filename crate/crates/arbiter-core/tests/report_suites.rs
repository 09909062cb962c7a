use arbiter_core::report::{run_suite, Status, Suite};

fn show(suite: Suite) -> arbiter_core::report::VerificationReport {
    let r = run_suite(suite).unwrap();
    for c in &r.checks {
        println!("{c}");
    }
    r
}

#[test]
fn core_suite_passes() {
    let r = show(Suite::Core);
    assert!(r.passed());
    assert_eq!(r.find("printed-activation-row-1").unwrap().status, Status::Deviation);
}

#[test]
fn matrices_suite_passes() {
    assert!(show(Suite::Matrices).passed());
}

#[test]
fn semigroup_suite_passes() {
    let r = show(Suite::Semigroup);
    assert!(r.passed());
    assert!(r.find("semigroup-size: 229").is_some());
    let t3 = r.find("printed-transition-table").unwrap();
    assert_eq!(t3.status, Status::Deviation);
    assert_eq!(t3.details.matches("printed D").count(), 5);
}

#[test]
fn synthesis_suite_passes() {
    let r = show(Suite::Synthesis);
    assert!(r.passed());
    for name in ["printed-star-chain", "star-distinct-states", "final-state-bound-general", "printed-cargo-equalities", "printed-knot-incidence", "cycle-cargo-1"] {
        assert_eq!(r.find(name).unwrap().status, Status::Deviation, "{name}");
    }
    for name in ["star-chain", "cycle-cargo-2", "cycle-cargo-3", "commensurate-example", "density-trial"] {
        assert_eq!(r.find(name).unwrap().status, Status::Pass, "{name}");
    }
}

