use ckr_gap::instances::{build_amm_j, build_component, combine};
use ckr_gap::rational::{int, rat};
use ckr_gap::search::{min_non_opposite_cost, min_non_opposite_cost_threaded, SearchBudget};
use ckr_gap::{Component, GapParams};

const BUDGET: u128 = 1 << 32;

#[test]
fn branch_and_bound_matches_exhaustive_on_delta_3_3() {
    let j = build_amm_j(3).unwrap();
    let ex = min_non_opposite_cost(&j, SearchBudget::exhaustive(BUDGET)).unwrap();
    let bb = min_non_opposite_cost(&j, SearchBudget::branch_and_bound(BUDGET)).unwrap();
    assert_eq!(ex.min_cost, int(1));
    assert_eq!(bb.min_cost, ex.min_cost);
    assert!(ex.proven_optimal && bb.proven_optimal);
    assert!(bb.explored < ex.explored);
    assert_eq!(bb.argmin.cost(&j).unwrap(), bb.min_cost);
}

#[test]
fn branch_and_bound_matches_exhaustive_on_delta_4_3() {
    // I1 and I3 at c = 1/3 both need n = 3; one mixture exercises both.
    let c = rat(1, 3);
    let p = GapParams::new([rat(1, 2), int(0), rat(1, 2), int(0)], c.clone()).unwrap();
    let w = combine(&p, 3).unwrap();
    let ex = min_non_opposite_cost_threaded(&w, SearchBudget::exhaustive(BUDGET), 2).unwrap();
    let bb = min_non_opposite_cost(&w, SearchBudget::branch_and_bound(BUDGET)).unwrap();
    assert_eq!(ex.explored, 136_048_896);
    assert_eq!(bb.min_cost, ex.min_cost);
    assert_eq!(ex.argmin.cost(&w).unwrap(), ex.min_cost);

    for m in [Component::I1, Component::I3] {
        let wm = build_component(m, 3, Some(&c)).unwrap();
        let bb = min_non_opposite_cost(&wm, SearchBudget::branch_and_bound(BUDGET)).unwrap();
        assert!(bb.proven_optimal, "{m}");
        assert!(bb.argmin.is_non_opposite());
        assert_eq!(bb.argmin.cost(&wm).unwrap(), bb.min_cost);
    }
}

#[test]
fn minima_dominate_their_components() {
    let p = GapParams::reference().with_c(rat(1, 3));
    let w = combine(&p, 3).unwrap();
    let whole = min_non_opposite_cost(&w, SearchBudget::branch_and_bound(BUDGET)).unwrap().min_cost;
    let mut mixed = int(0);
    for (m, l) in Component::ALL.iter().zip(&p.lambda) {
        let wm = build_component(*m, 3, Some(&p.c)).unwrap();
        let part = min_non_opposite_cost(&wm, SearchBudget::branch_and_bound(BUDGET)).unwrap().min_cost;
        mixed += l * part;
    }
    assert!(whole >= mixed);
}
