use dihedrant_core::{automorphism_group, CayleyGraph, DihedralGroup, FactoredInteger, Family, Limits};

fn aut_order(n: usize, family: Family) -> FactoredInteger {
    let group = DihedralGroup::new(n).unwrap();
    let cay = CayleyGraph::new(family.build(group).unwrap());
    let aut = automorphism_group(cay.graph(), &Limits::default()).unwrap();
    for g in aut.generators() {
        assert!(cay.graph().is_automorphism(g).unwrap());
    }
    aut.order().clone()
}

#[test]
fn unit_rotations_p3() {
    assert_eq!(aut_order(12, Family::UnitRotations { p: 3, pi: 1 }), FactoredInteger::from_prime_powers([(2, 17), (3, 2), (5, 1)]));
}

#[test]
fn unit_rotations_p5() {
    let expected = FactoredInteger::from_u64(2).pow(21) * FactoredInteger::factorial(10);
    assert_eq!(aut_order(20, Family::UnitRotations { p: 5, pi: 0 }), expected);
}

#[test]
fn ex44_s() {
    assert_eq!(aut_order(30, Family::D60Orders6And30 { pi: 1 }), FactoredInteger::from_prime_powers([(2, 41), (3, 14), (5, 13)]));
}

#[test]
fn ex45_s() {
    assert_eq!(
        aut_order(42, Family::D84Orders6And42 { pi: 1 }),
        FactoredInteger::from_prime_powers([(2, 53), (3, 26), (5, 13), (7, 12)])
    );
}

#[test]
fn ex_r_orders() {
    eprintln!("ex44_R {}", aut_order(30, Family::D60Orders10And30 { pi: 1 }));
    eprintln!("ex45_R {}", aut_order(42, Family::D84Orders14And42 { pi: 1 }));
}
