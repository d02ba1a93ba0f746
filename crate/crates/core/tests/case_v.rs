use dihedrant_core::metrics::{self, find_twins};
use dihedrant_core::structure::{
    case_v_candidates, central_orbit_partition, evaluate_case_v, scan_case_v, verify_case_v,
};
use dihedrant_core::{automorphism_group, CayleyGraph, DihedralElement, DihedralGroup, Family, Limits};

fn case_v(n: usize, pi: u8, delta: &[DihedralElement]) -> CayleyGraph {
    let group = DihedralGroup::new(n).unwrap();
    CayleyGraph::new(Family::CaseV { pi, delta: delta.to_vec() }.build(group).unwrap())
}

#[test]
fn shell_formulas_up_to_20() {
    let mut count = 0;
    for n in (4..=20).step_by(2) {
        for delta in case_v_candidates(n).unwrap() {
            for pi in [0, 1] {
                let cay = case_v(n, pi, &delta);
                let report = verify_case_v(&cay).unwrap();
                if let Some(c) = report.failures().next() {
                    panic!("n={n} pi={pi} {delta:?}: {} ({})", c.name, c.detail);
                }
                count += 1;
            }
        }
    }
    assert!(count > 50, "{count}");
}

#[test]
fn unit_rotations_third_shell() {
    let group = DihedralGroup::new(12).unwrap();
    let cay = CayleyGraph::new(Family::UnitRotations { p: 3, pi: 1 }.build(group).unwrap());
    let shells = metrics::distance_partition(cay.graph(), 0).unwrap();
    assert_eq!(shells.shell(3), &[3, 9]);
}

#[test]
fn twins_are_central_cells() {
    for p in [3, 5] {
        let group = DihedralGroup::new(4 * p).unwrap();
        let cay = CayleyGraph::new(Family::UnitRotations { p, pi: 1 }.build(group).unwrap());
        let twins = find_twins(cay.graph());
        let cells: Vec<(usize, usize)> = central_orbit_partition(&cay)
            .unwrap()
            .blocks
            .cells()
            .iter()
            .map(|c| (c[0], c[1]))
            .collect();
        let mut cells = cells;
        cells.sort_unstable();
        assert_eq!(twins, cells);
    }
}

#[test]
fn theta_a_relates_the_two_parities() {
    let group = DihedralGroup::new(30).unwrap();
    for (s0, s1) in [
        (Family::D60Orders6And30 { pi: 0 }, Family::D60Orders6And30 { pi: 1 }),
        (Family::D60Orders10And30 { pi: 0 }, Family::D60Orders10And30 { pi: 1 }),
    ] {
        let g0 = CayleyGraph::new(s0.build(group).unwrap());
        let g1 = CayleyGraph::new(s1.build(group).unwrap());
        let theta = group.theta(1).unwrap();
        let image = g0.apply_group_automorphism(theta);
        assert_eq!(image.connection(), g1.connection());
        let relabel = group.automorphism_permutation(theta);
        assert!(g0.graph().is_isomorphism_onto(g1.graph(), &relabel));
        let limits = Limits::default();
        assert_eq!(
            automorphism_group(g0.graph(), &limits).unwrap().order(),
            automorphism_group(g1.graph(), &limits).unwrap().order()
        );
    }
}

fn flagged(n: usize) -> Vec<Vec<DihedralElement>> {
    scan_case_v(n, &Limits::default())
        .unwrap()
        .into_iter()
        .filter(|r| {
            assert!(r.connected);
            r.arc_transitive
        })
        .map(|r| r.delta)
        .collect()
}

fn odd_rotations_of_order(n: usize, orders: &[usize]) -> Vec<DihedralElement> {
    let group = DihedralGroup::new(n).unwrap();
    (1..n)
        .step_by(2)
        .map(DihedralElement::rotation)
        .filter(|&x| orders.contains(&group.element_order(x)))
        .collect()
}

#[test]
fn scan_12_finds_the_generators() {
    assert_eq!(flagged(12), vec![odd_rotations_of_order(12, &[12])]);
}

#[test]
fn scan_30_finds_example_sets() {
    let hits = flagged(30);
    for orders in [[6, 30], [10, 30]] {
        let delta = odd_rotations_of_order(30, &orders);
        assert!(hits.contains(&delta), "missing {delta:?} in {hits:?}");
    }
    for delta in &hits {
        assert!(verify_case_v(&case_v(30, 1, delta)).unwrap().all_passed());
    }
    println!("n=30 flagged {hits:?}");
}

#[test]
fn evaluate_record_fields() {
    let delta = odd_rotations_of_order(12, &[12]);
    let rec = evaluate_case_v(12, 1, &delta, &Limits::default()).unwrap();
    assert!(rec.arc_transitive && rec.connected);
    assert_eq!(rec.girth, Some(4));
    assert_eq!(rec.diameter, 3);
    assert_eq!(rec.aut_order.to_u128(), Some((1u128 << 17) * 45));
}
