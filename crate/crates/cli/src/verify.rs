//! Named verification suites. Each returns a [`Report`] of pass/fail checks.

use std::ops::RangeInclusive;

use clap::ValueEnum;
use dihedrant_core::cayley::{class_unions, inverse_pairs};
use dihedrant_core::metrics::{self, find_twins, FamilyTag};
use dihedrant_core::permgroup::{is_2_distance_transitive, is_s_arc_transitive};
use dihedrant_core::structure::{
    case_v_candidates, central_orbit_partition, classify_with, quotient_with_cover_check, verify_case_v,
    verify_kernel, verify_quotient_group_structure, ClassificationOutcome, Report,
};
use dihedrant_core::{
    automorphism_group, CayleyGraph, ConnectionSet, DihedralGroup, Error, FactoredInteger, Family, Limits,
    PermutationGroup,
};

/// Verification suites, selected on the command line by their short names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Aut order, kernel, quotient and arc-transitivity of the D_8p graphs.
    #[value(name = "thm14")]
    UnitRotations,
    /// Girth, diameter, bipartition and shells of every case (v) set.
    #[value(name = "lemma35")]
    CaseVShells,
    /// Central cells, twins and the 2-cover of K_{2p,2p} - 2pK_2.
    #[value(name = "lemma42")]
    CentralCover,
    /// The kernel Z_2^{4p} and the regular dihedral image.
    #[value(name = "lemma43")]
    Kernel,
    /// Ā⁺ primitive of order (2p)!, |Ā| = 2 (2p)!.
    #[value(name = "lemma45")]
    QuotientGroup,
    /// s-arc transitivity of the closed-form families.
    #[value(name = "cor12")]
    ArcTransitivity,
    /// 2-distance transitivity exactly for the closed-form cases.
    #[value(name = "cor13")]
    DistanceTransitivity,
    /// Class closure versus the inversion map and L(G).
    #[value(name = "prop21")]
    ClassClosure,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::UnitRotations => "thm14",
            Suite::CaseVShells => "lemma35",
            Suite::CentralCover => "lemma42",
            Suite::Kernel => "lemma43",
            Suite::QuotientGroup => "lemma45",
            Suite::ArcTransitivity => "cor12",
            Suite::DistanceTransitivity => "cor13",
            Suite::ClassClosure => "prop21",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyParams {
    pub p: usize,
    pub pi: u8,
    pub n: usize,
    pub exhaustive: bool,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            p: 3,
            pi: 1,
            n: 12,
            exhaustive: false,
        }
    }
}

pub fn run(suite: Suite, params: &VerifyParams, limits: &Limits) -> Result<Report, Error> {
    match suite {
        Suite::UnitRotations => unit_rotations(params.p, params.pi, limits),
        Suite::CaseVShells => case_v_shells(params.n),
        Suite::CentralCover => central_cover(params.p, params.pi),
        Suite::Kernel => kernel_suite(params.p, params.pi, limits),
        Suite::QuotientGroup => {
            let (cay, aut) = unit_rotation_graph(params.p, params.pi, limits)?;
            verify_quotient_group_structure(&cay, params.p, &aut)
        }
        Suite::ArcTransitivity => arc_transitivity(params.n, params.exhaustive, limits),
        Suite::DistanceTransitivity => distance_transitivity(params.n, params.exhaustive, limits),
        Suite::ClassClosure => class_closure(params.n, params.exhaustive),
    }
}

fn unit_rotation_graph(p: usize, pi: u8, limits: &Limits) -> Result<(CayleyGraph, PermutationGroup), Error> {
    let group = DihedralGroup::new(4 * p)?;
    let cay = CayleyGraph::new(Family::UnitRotations { p, pi }.build(group)?);
    let aut = automorphism_group(cay.graph(), limits)?;
    Ok((cay, aut))
}

/// `2^(4p) (2p)! 2`.
pub fn unit_rotation_order(p: usize) -> FactoredInteger {
    let mut x = FactoredInteger::from_u64(2).pow(4 * p as u32 + 1);
    x *= FactoredInteger::factorial(2 * p as u64);
    x
}

fn unit_rotations(p: usize, pi: u8, limits: &Limits) -> Result<Report, Error> {
    let (cay, aut) = unit_rotation_graph(p, pi, limits)?;
    let mut report = Report::default();
    let expected = unit_rotation_order(p);
    report.push(
        "|Aut| = 2^(4p) (2p)! 2",
        *aut.order() == expected,
        format!("computed {}, expected {expected}", aut.order()),
    );
    let arc = is_s_arc_transitive(cay.graph(), &aut, 1, limits.arc_cap)?;
    report.push("arc-transitive", arc, "");
    let two_arc = is_s_arc_transitive(cay.graph(), &aut, 2, limits.arc_cap)?;
    report.push("not 2-arc-transitive", !two_arc, "");
    report.extend(verify_case_v(&cay)?);
    report.extend(central_cover(p, pi)?);
    report.extend(verify_kernel(&cay, p, &aut)?);
    report.extend(verify_quotient_group_structure(&cay, p, &aut)?);
    Ok(report)
}

fn case_v_shells(max_n: usize) -> Result<Report, Error> {
    let mut report = Report::default();
    for n in (4..=max_n).step_by(2) {
        let group = DihedralGroup::new(n)?;
        let mut total = 0;
        let mut failures = Vec::new();
        for delta in case_v_candidates(n)? {
            for pi in [0, 1] {
                let s = Family::CaseV { pi, delta: delta.clone() }.build(group)?;
                let r = verify_case_v(&CayleyGraph::new(s.clone()))?;
                total += 1;
                let first = r.failures().next().map(|c| format!("{s:?}: {} ({})", c.name, c.detail));
                failures.extend(first);
            }
        }
        report.push(
            format!("n = {n}: girth, diameter, biparts and shells"),
            failures.is_empty(),
            if failures.is_empty() { format!("{total} sets") } else { failures.join("; ") },
        );
    }
    Ok(report)
}

fn central_cover(p: usize, pi: u8) -> Result<Report, Error> {
    let group = DihedralGroup::new(4 * p)?;
    let cay = CayleyGraph::new(Family::UnitRotations { p, pi }.build(group)?);
    let g = cay.graph();
    let cells = central_orbit_partition(&cay)?;
    let mut report = Report::default();

    let mut pairs: Vec<(usize, usize)> = cells.blocks.cells().iter().map(|c| (c[0], c[1])).collect();
    pairs.sort_unstable();
    report.push("twins are exactly the central cells", find_twins(g) == pairs, format!("{} cells", pairs.len()));

    let q = quotient_with_cover_check(&cay, &cells.blocks)?;
    report.push("cells are edgeless", !q.internal_edges, "");
    report.push(
        "uniform cover multiplicity 2",
        q.multiplicity == Some(2),
        format!("{:?}", q.multiplicity),
    );
    report.push(
        "Σ ≅ K_{2p,2p} - 2pK_2",
        q.family == FamilyTag::CompleteBipartiteMinusMatching { n: 2 * p },
        format!("{:?}", q.family),
    );

    let Some((side_a, side_1)) = cells.sides else {
        report.push("Σ bipartite on the two sides", false, "cells straddle the biparts");
        return Ok(report);
    };
    let mut bad = Vec::new();
    for &b in &side_a {
        for &c in &side_1 {
            let vs: Vec<usize> = cells.blocks.cells()[b].iter().chain(&cells.blocks.cells()[c]).copied().collect();
            let edges: usize = vs
                .iter()
                .map(|&u| vs.iter().filter(|&&v| u < v && g.is_adjacent(u, v)).count())
                .sum();
            if edges != 0 && edges != 4 {
                bad.push((b, c, edges));
            }
        }
    }
    report.push("each [B ∪ C] is edgeless or a 4-cycle", bad.is_empty(), format!("{bad:?}"));
    let same_side_edge = [&side_a, &side_1]
        .iter()
        .any(|side| side.iter().any(|&b| side.iter().any(|&c| q.quotient.is_adjacent(b, c))));
    report.push("Σ is bipartite with the two sides as parts", !same_side_edge, "");
    Ok(report)
}

fn kernel_suite(p: usize, pi: u8, limits: &Limits) -> Result<Report, Error> {
    let (cay, aut) = unit_rotation_graph(p, pi, limits)?;
    let mut report = verify_kernel(&cay, p, &aut)?;
    let structure = verify_quotient_group_structure(&cay, p, &aut)?;
    report.checks.extend(structure.checks.into_iter().filter(|c| c.name.starts_with("R(")));
    Ok(report)
}

/// One connected class union with its classification and transitivity.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub set: ConnectionSet,
    pub outcome: ClassificationOutcome,
    /// Largest `s <= 4` with `Aut` transitive on s-arcs.
    pub arc_level: usize,
    pub two_distance: bool,
}

/// Every connected class union for `n` in the range.
pub fn sweep(ns: RangeInclusive<usize>, limits: &Limits) -> Result<Vec<SweepRow>, Error> {
    let mut rows = Vec::new();
    for n in ns {
        let group = DihedralGroup::new(n)?;
        for set in class_unions(group) {
            if !set.is_connected() {
                continue;
            }
            let cay = CayleyGraph::new(set.clone());
            let aut = automorphism_group(cay.graph(), limits)?;
            let mut arc_level = 0;
            while arc_level < 4 && is_s_arc_transitive(cay.graph(), &aut, arc_level + 1, limits.arc_cap)? {
                arc_level += 1;
            }
            let two_distance = is_2_distance_transitive(cay.graph(), &aut)?;
            let mut cached = Some(aut);
            let outcome = classify_with(&set, limits, &mut cached)?;
            rows.push(SweepRow {
                set,
                outcome,
                arc_level,
                two_distance,
            });
        }
    }
    Ok(rows)
}

fn push_rows(report: &mut Report, name: &str, rows: &[SweepRow], bad: impl Fn(&SweepRow) -> bool) {
    let failing: Vec<String> = rows
        .iter()
        .filter(|r| bad(r))
        .take(5)
        .map(|r| format!("{:?} -> {}", r.set, r.outcome.label()))
        .collect();
    let detail = if failing.is_empty() { format!("{} sets", rows.len()) } else { failing.join("; ") };
    report.push(name, failing.is_empty(), detail);
}

/// Arc-transitivity implies one of the cases, and the closed-form cases are
/// arc-transitive.
pub fn classification_checks(rows: &[SweepRow]) -> Report {
    let mut report = Report::default();
    push_rows(&mut report, "arc-transitive sets fall in cases (i)-(v)", rows, |r| {
        r.arc_level >= 1 && !r.outcome.is_case()
    });
    push_rows(&mut report, "cases (i)-(iv) are arc-transitive", rows, |r| {
        r.outcome.is_closed_form_case() && r.arc_level == 0
    });
    report
}

fn sweep_range(n: usize, exhaustive: bool) -> RangeInclusive<usize> {
    if exhaustive {
        3..=n
    } else {
        n..=n
    }
}

fn arc_transitivity(n: usize, exhaustive: bool, limits: &Limits) -> Result<Report, Error> {
    let group = DihedralGroup::new(n)?;
    let mut report = Report::default();
    let mut expect = |label: String, family: Family, level: usize| -> Result<(), Error> {
        let cay = CayleyGraph::new(family.build(group)?);
        let aut = automorphism_group(cay.graph(), limits)?;
        let at = is_s_arc_transitive(cay.graph(), &aut, level, limits.arc_cap)?;
        let above = is_s_arc_transitive(cay.graph(), &aut, level + 1, limits.arc_cap)?;
        report.push(
            format!("{label} is {level}-arc-transitive, not {}-arc-transitive", level + 1),
            at && !above,
            format!("{level}: {at}, {}: {above}", level + 1),
        );
        Ok(())
    };
    expect(format!("K_{{{n},{n}}}"), Family::KnnV1, 3)?;
    expect(format!("K_{}", 2 * n), Family::Complete, 2)?;
    if n % 2 == 0 && n / 2 >= 3 && (n / 2) % 2 == 1 {
        expect(format!("K_{{{n},{n}}} - {n}K_2"), Family::KnnMinusMatchingV1, 2)?;
    }
    if exhaustive {
        let rows = sweep(sweep_range(n, true), limits)?;
        push_rows(&mut report, "no set is 4-arc-transitive", &rows, |r| r.arc_level >= 4);
        push_rows(&mut report, "3-arc-transitive exactly in case (i)", &rows, |r| {
            (r.arc_level >= 3) != matches!(r.outcome, ClassificationOutcome::CaseI { .. })
        });
    }
    Ok(report)
}

fn distance_transitivity(n: usize, exhaustive: bool, limits: &Limits) -> Result<Report, Error> {
    let rows = sweep(sweep_range(n, exhaustive), limits)?;
    let mut report = classification_checks(&rows);
    push_rows(&mut report, "2-distance-transitive exactly in cases (i)-(iv)", &rows, |r| {
        r.two_distance != r.outcome.is_closed_form_case()
    });
    Ok(report)
}

/// Class closure, inversion-map automorphism and `L(G) <= Aut`, as three bits.
pub fn closure_bits(s: &ConnectionSet) -> [bool; 3] {
    let cay = CayleyGraph::new(s.clone());
    [s.is_inner_automorphic(), cay.inversion_map_is_automorphism(), cay.left_regular_in_aut()]
}

fn class_closure(n: usize, exhaustive: bool) -> Result<Report, Error> {
    let group = DihedralGroup::new(n)?;
    let mut report = Report::default();
    let unions = class_unions(group);
    let bad: Vec<String> = unions
        .iter()
        .filter(|s| closure_bits(s) != [true; 3])
        .map(|s| format!("{s:?}"))
        .collect();
    report.push("class unions: all three bits true", bad.is_empty(), format!("{} sets {bad:?}", unions.len()));

    let pairs = inverse_pairs(group);
    let masks: Box<dyn Iterator<Item = u64>> = if exhaustive && pairs.len() <= 20 {
        Box::new(1..1u64 << pairs.len())
    } else {
        Box::new((0..pairs.len()).map(|i| 1u64 << i))
    };
    let mut total = 0;
    let mut mismatched = Vec::new();
    for mask in masks {
        let elements: Vec<_> = (0..pairs.len())
            .filter(|i| mask >> i & 1 == 1)
            .flat_map(|i| pairs[i].iter().copied())
            .collect();
        let s = ConnectionSet::new(group, &elements)?;
        let bits = closure_bits(&s);
        total += 1;
        if !(bits[0] == bits[1] && bits[1] == bits[2]) {
            mismatched.push(format!("{s:?}: {bits:?}"));
        }
    }
    let scope = if exhaustive && pairs.len() <= 20 { "all inverse-closed sets" } else { "single inverse pairs" };
    report.push(
        format!("{scope}: the three bits agree"),
        mismatched.is_empty(),
        if mismatched.is_empty() { format!("{total} sets") } else { mismatched.join("; ") },
    );
    Ok(report)
}

/// Recognition of the invariants a connected arc-transitive case (v) graph
/// must have: bipartite, girth 4, diameter 3.
pub fn case_v_invariants(cay: &CayleyGraph) -> Result<Report, Error> {
    let g = cay.graph();
    let mut report = Report::default();
    report.push("connected", cay.connection().is_connected(), "");
    report.push("inner-automorphic", cay.connection().is_inner_automorphic(), "");
    report.push("bipartite", metrics::bipartition(g).is_some(), "");
    report.push("girth 4", metrics::girth(g) == Some(4), format!("{:?}", metrics::girth(g)));
    let d = metrics::diameter(g)?;
    report.push("diameter 3", d == 3, format!("{d}"));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_rotations_order_p3() {
        assert_eq!(unit_rotation_order(3).to_u128(), Some((1u128 << 17) * 45));
    }

    #[test]
    fn small_suites_pass() {
        let limits = Limits::default();
        for (t, params) in [
            (Suite::ArcTransitivity, VerifyParams { n: 4, ..Default::default() }),
            (Suite::ClassClosure, VerifyParams { n: 8, exhaustive: true, ..Default::default() }),
            (Suite::CaseVShells, VerifyParams { n: 12, ..Default::default() }),
            (Suite::CentralCover, VerifyParams::default()),
        ] {
            let report = run(t, &params, &limits).unwrap();
            assert!(report.all_passed(), "{t:?}: {:?}", report.failures().collect::<Vec<_>>());
        }
    }
}
