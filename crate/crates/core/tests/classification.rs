use dihedrant_core::cayley::class_unions;
use dihedrant_core::permgroup::{is_2_distance_transitive, is_s_arc_transitive};
use dihedrant_core::structure::{classify_with, ClassificationOutcome};
use dihedrant_core::{automorphism_group, CayleyGraph, DihedralGroup, Family, Limits};

/// Largest `s <= 4` with `Aut` transitive on s-arcs (0 if not arc-transitive).
fn arc_level(cay: &CayleyGraph, aut: &dihedrant_core::PermutationGroup) -> usize {
    let mut s = 0;
    while s < 4 && is_s_arc_transitive(cay.graph(), aut, s + 1, u128::MAX).unwrap() {
        s += 1;
    }
    s
}

#[test]
fn exhaustive_small_orders() {
    let limits = Limits::default();
    let mut checked = 0;
    for n in 3..=12 {
        let group = DihedralGroup::new(n).unwrap();
        for s in class_unions(group) {
            if !s.is_connected() {
                continue;
            }
            let cay = CayleyGraph::new(s.clone());
            let aut = automorphism_group(cay.graph(), &limits).unwrap();
            let level = arc_level(&cay, &aut);
            let two_dt = is_2_distance_transitive(cay.graph(), &aut).unwrap();
            let mut cached = Some(aut);
            let outcome = classify_with(&s, &limits, &mut cached).unwrap();
            let name = format!("{s:?} -> {outcome:?}");
            if level >= 1 {
                assert!(outcome.is_case(), "arc-transitive outside the cases: {name}");
            }
            if outcome.is_closed_form_case() {
                assert!(level >= 1, "closed-form case not arc-transitive: {name}");
            }
            if let ClassificationOutcome::CaseV { arc_transitive, .. } = outcome {
                assert_eq!(arc_transitive, level >= 1, "{name}");
            }
            assert_eq!(two_dt, outcome.is_closed_form_case(), "2-distance-transitivity: {name}");
            assert!(level < 4, "4-arc-transitive: {name}");
            assert_eq!(level == 3, matches!(outcome, ClassificationOutcome::CaseI { .. }), "3-arc: {name}");
            checked += 1;
        }
    }
    assert!(checked > 200, "{checked}");
}

#[test]
fn family_round_trip() {
    let limits = Limits::default();
    for n in 3..=32 {
        let group = DihedralGroup::new(n).unwrap();
        let mut families = vec![Family::KnnV1, Family::Complete];
        if n % 2 == 0 {
            families.extend([Family::KnnV2, Family::KnnV3]);
        }
        if n % 2 == 0 && (n / 2) % 2 == 1 && n >= 6 {
            families.extend([Family::KnnMinusMatchingV1, Family::KnnMinusMatchingV2]);
        }
        for t in 2..n {
            if n % t == 0 {
                families.push(Family::Multipartite { t });
            }
        }
        for fam in families {
            let s = fam.build(group).unwrap();
            let expected = match &fam {
                Family::KnnV1 => ClassificationOutcome::CaseI { variant: 1 },
                Family::KnnV2 => ClassificationOutcome::CaseI { variant: 2 },
                Family::KnnV3 => ClassificationOutcome::CaseI { variant: 3 },
                Family::KnnMinusMatchingV1 => ClassificationOutcome::CaseII { pi: 0 },
                Family::KnnMinusMatchingV2 => ClassificationOutcome::CaseII { pi: 1 },
                Family::Complete => ClassificationOutcome::CaseIII,
                Family::Multipartite { t } => ClassificationOutcome::CaseIV { m: 2 * n / t, t: *t },
                _ => unreachable!(),
            };
            assert_eq!(dihedrant_core::classify(&s, &limits).unwrap(), expected, "n={n} {fam:?}");
        }
    }
}

#[test]
fn unit_rotations_classifies_as_arc_transitive_case_v() {
    let group = DihedralGroup::new(12).unwrap();
    let s = Family::UnitRotations { p: 3, pi: 1 }.build(group).unwrap();
    match dihedrant_core::classify(&s, &Limits::default()).unwrap() {
        ClassificationOutcome::CaseV { pi, delta, arc_transitive } => {
            assert_eq!(pi, 1);
            assert_eq!(delta.len(), 4);
            assert!(arc_transitive);
        }
        other => panic!("{other:?}"),
    }
}
