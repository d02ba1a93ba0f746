//! Classification of connected inner-automorphic dihedrants and the
//! structural checks for the case (v) family and the `D_8p` graphs.
//!
//! Throughout, `n = 2k` when `n` is even, `pi` is the parity of the
//! reflection class `(a^pi b)^G`, and `Δ = S ∩ <a^2>a` is the set of
//! odd-exponent rotations in `S`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::cayley::{CayleyGraph, ConnectionSet, Family};
use crate::dihedral::{DihedralElement, DihedralGroup};
use crate::factored::FactoredInteger;
use crate::graph::Graph;
use crate::metrics::{self, FamilyTag};
use crate::perm::Permutation;
use crate::permgroup::{self, BlockSystem, PermutationGroup};
use crate::search::automorphism_group;
use crate::{Error, Limits};

/// Which case of the classification a connection set falls into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassificationOutcome {
    Disconnected,
    NotInnerAutomorphic,
    /// `K_{n,n}`: `S = G \ H` with `|G : H| = 2`. Variant 1 is
    /// `H = <a>`, variant 2 is `H = <a^2, ab>`, variant 3 is `H = <a^2, b>`.
    CaseI { variant: u8 },
    /// `K_{n,n} - nK_2`, `S = (a^pi b)^G ∪ (<a^2>a \ {a^k})`.
    CaseII { pi: u8 },
    /// `K_2n`.
    CaseIII,
    /// `K_{m[t]}`, `S = G \ H` with `H <= <a>` of order `t`.
    CaseIV { m: usize, t: usize },
    /// `(a^pi b)^G ⊆ S ⊆ (a^pi b)^G ∪ <a^2>a` with `0 < |Δ| <= k - 2`.
    CaseV {
        pi: u8,
        delta: Vec<DihedralElement>,
        arc_transitive: bool,
    },
    /// Connected, inner-automorphic, matches no case, and not arc-transitive.
    NotArcTransitive,
}

impl ClassificationOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            ClassificationOutcome::Disconnected => "Disconnected",
            ClassificationOutcome::NotInnerAutomorphic => "NotInnerAutomorphic",
            ClassificationOutcome::CaseI { .. } => "CaseI",
            ClassificationOutcome::CaseII { .. } => "CaseII",
            ClassificationOutcome::CaseIII => "CaseIII",
            ClassificationOutcome::CaseIV { .. } => "CaseIV",
            ClassificationOutcome::CaseV { .. } => "CaseV",
            ClassificationOutcome::NotArcTransitive => "NotArcTransitive",
        }
    }

    /// One of cases (i)-(iv), the 2-distance-transitive ones.
    pub fn is_closed_form_case(&self) -> bool {
        matches!(
            self,
            ClassificationOutcome::CaseI { .. }
                | ClassificationOutcome::CaseII { .. }
                | ClassificationOutcome::CaseIII
                | ClassificationOutcome::CaseIV { .. }
        )
    }

    /// One of cases (i)-(v).
    pub fn is_case(&self) -> bool {
        self.is_closed_form_case() || matches!(self, ClassificationOutcome::CaseV { .. })
    }
}

/// The result of matching a connection set against the case shapes, before
/// any automorphism computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Disconnected,
    NotInnerAutomorphic,
    CaseI { variant: u8 },
    CaseII { pi: u8 },
    CaseIII,
    CaseIV { m: usize, t: usize },
    CaseV { pi: u8, delta: Vec<DihedralElement> },
    Unmatched,
}

/// Pattern-matches `S` in the order connectivity, class closure, (iii),
/// (i), (iv), (ii), (v).
pub fn shape(s: &ConnectionSet) -> Shape {
    let g = s.group();
    let n = g.n();
    if !s.is_connected() {
        return Shape::Disconnected;
    }
    if !s.is_inner_automorphic() {
        return Shape::NotInnerAutomorphic;
    }
    if s.len() + 1 == g.order() {
        return Shape::CaseIII;
    }
    if let Some(h) = s.complement_subgroup() {
        if h.len() == n {
            let variant = if h.iter().all(|x| !x.refl) {
                1
            } else if h.contains(&DihedralElement::reflection(1 % n)) {
                2
            } else {
                3
            };
            return Shape::CaseI { variant };
        }
        if h.iter().all(|x| !x.refl) && h.len() >= 2 && g.order() / h.len() >= 3 {
            return Shape::CaseIV {
                m: g.order() / h.len(),
                t: h.len(),
            };
        }
    }
    for (pi, fam) in [(0, Family::KnnMinusMatchingV1), (1, Family::KnnMinusMatchingV2)] {
        if fam.build(g).is_ok_and(|m| m == *s) {
            return Shape::CaseII { pi };
        }
    }
    if let Some((pi, delta)) = case_v_parts(s) {
        return Shape::CaseV { pi, delta };
    }
    Shape::Unmatched
}

/// `(pi, Δ)` when `S` has the case (v) shape.
fn case_v_parts(s: &ConnectionSet) -> Option<(u8, Vec<DihedralElement>)> {
    let n = s.n();
    if n % 2 == 1 {
        return None;
    }
    let k = n / 2;
    let refl: Vec<usize> = s.elements().filter(|x| x.refl).map(|x| x.rot).collect();
    if refl.len() != k {
        return None;
    }
    let pi = (refl[0] % 2) as u8;
    if refl.iter().any(|r| r % 2 != pi as usize) {
        return None;
    }
    let rotations: Vec<DihedralElement> = s.elements().filter(|x| !x.refl).collect();
    if rotations.iter().any(|x| x.rot % 2 == 0) {
        return None;
    }
    (!rotations.is_empty() && rotations.len() + 2 <= k).then_some((pi, rotations))
}

/// Classification, computing `Aut(Γ)` only when arc-transitivity decides
/// the outcome.
pub fn classify(s: &ConnectionSet, limits: &Limits) -> Result<ClassificationOutcome, Error> {
    let mut aut = None;
    classify_with(s, limits, &mut aut)
}

/// As [`classify`], reusing (or filling in) a cached automorphism group of
/// `Cay(G, S)`.
pub fn classify_with(
    s: &ConnectionSet,
    limits: &Limits,
    aut: &mut Option<PermutationGroup>,
) -> Result<ClassificationOutcome, Error> {
    let arc_transitive = |aut: &mut Option<PermutationGroup>| -> Result<bool, Error> {
        let cay = CayleyGraph::new(s.clone());
        if aut.is_none() {
            *aut = Some(automorphism_group(cay.graph(), limits)?);
        }
        permgroup::is_arc_transitive(cay.graph(), aut.as_ref().unwrap(), limits.arc_cap)
    };
    Ok(match shape(s) {
        Shape::Disconnected => ClassificationOutcome::Disconnected,
        Shape::NotInnerAutomorphic => ClassificationOutcome::NotInnerAutomorphic,
        Shape::CaseI { variant } => ClassificationOutcome::CaseI { variant },
        Shape::CaseII { pi } => ClassificationOutcome::CaseII { pi },
        Shape::CaseIII => ClassificationOutcome::CaseIII,
        Shape::CaseIV { m, t } => ClassificationOutcome::CaseIV { m, t },
        Shape::CaseV { pi, delta } => ClassificationOutcome::CaseV {
            pi,
            delta,
            arc_transitive: arc_transitive(aut)?,
        },
        Shape::Unmatched => {
            if arc_transitive(aut)? {
                return Err(Error::Counterexample(format!(
                    "{s:?} is connected, inner-automorphic and arc-transitive but matches no case"
                )));
            }
            ClassificationOutcome::NotArcTransitive
        }
    })
}

/// One named pass/fail check of a verification report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// An ordered list of checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records a set equality, naming both differences on failure.
    pub fn push_set_eq(&mut self, name: impl Into<String>, found: &[usize], expected: &[usize], label: impl Fn(usize) -> String) {
        let mut found = found.to_vec();
        let mut expected = expected.to_vec();
        found.sort_unstable();
        expected.sort_unstable();
        let extra: Vec<String> = found.iter().filter(|x| !expected.contains(x)).map(|&x| label(x)).collect();
        let missing: Vec<String> = expected.iter().filter(|x| !found.contains(x)).map(|&x| label(x)).collect();
        let passed = extra.is_empty() && missing.is_empty();
        let detail = if passed {
            format!("{} elements", found.len())
        } else {
            format!("unexpected {extra:?}, missing {missing:?}")
        };
        self.push(name, passed, detail);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Girth, diameter, bipartition and the distance-2/3 shells of a case (v)
/// graph, each compared with its closed form as an exact set equality.
///
/// The bipart holding the identity is `<a^2, a^(1-pi) b>`; for `pi = 1` this
/// is `<a^2, b>`.
pub fn verify_case_v(cay: &CayleyGraph) -> Result<Report, Error> {
    let s = cay.connection();
    let g = cay.group();
    let n = g.n();
    let (pi, _) = case_v_parts(s).ok_or_else(|| Error::InvalidFamilyParameter {
        family: "caseV",
        reason: format!("{s:?} does not have the case (v) shape"),
    })?;
    let pi = pi as usize;
    let graph = cay.graph();
    let label = |v: usize| g.from_index(v).to_string();
    let mut report = Report::default();

    let girth = metrics::girth(graph);
    report.push("girth is 4", girth == Some(4), format!("{girth:?}"));
    let diameter = metrics::diameter(graph)?;
    report.push("diameter is 3", diameter == 3, format!("{diameter}"));

    // <a^2, a^(1-pi) b>: even rotations and reflections of parity 1 - pi
    let home: Vec<usize> = g
        .elements()
        .filter(|x| if x.refl { x.rot % 2 != pi } else { x.rot % 2 == 0 })
        .map(|x| g.index(x))
        .collect();
    let away: Vec<usize> = (0..g.order()).filter(|v| !home.contains(v)).collect();
    match metrics::bipartition(graph) {
        Some((left, right)) => {
            report.push_set_eq("bipart containing 1", &left, &home, label);
            report.push_set_eq("other bipart", &right, &away, label);
        }
        None => report.push("bipartite", false, "odd cycle found"),
    }

    let shells = metrics::distance_partition(graph, 0)?;
    let gamma2: Vec<usize> = home.iter().copied().filter(|&v| v != 0).collect();
    report.push_set_eq("Γ_2(1) = ((a^(1-pi)b)^G ∪ <a^2>) \\ {1}", shells.shell(2), &gamma2, label);
    let gamma3: Vec<usize> = (0..n)
        .filter(|r| r % 2 == 1 && !s.contains(DihedralElement::rotation(*r)))
        .collect();
    report.push_set_eq("Γ_3(1) = <a^2>a \\ S", shells.shell(3), &gamma3, label);
    Ok(report)
}

/// The orbits `{x, x a^k}` of the central rotation `a^k`, `n = 2k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralPartition {
    pub blocks: BlockSystem,
    /// When `Γ` is bipartite and no cell meets both parts: the cell indices
    /// on the side of `a`, then those on the side of `1`. For the `D_8p`
    /// graphs with `pi = 1` these are the odd-exponent and even-exponent
    /// cells.
    pub sides: Option<(Vec<usize>, Vec<usize>)>,
}

/// Cells `{a^i, a^(i+k)}` (cell `i`) and `{a^i b, a^(i+k) b}` (cell `k + i`)
/// for `0 <= i < k`, tagged by the bipartition of `Γ`.
pub fn central_orbit_partition(cay: &CayleyGraph) -> Result<CentralPartition, Error> {
    let n = cay.n();
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    let k = n / 2;
    let cells: Vec<Vec<usize>> = (0..k)
        .map(|i| vec![i, i + k])
        .chain((0..k).map(|i| vec![n + i, n + i + k]))
        .collect();
    let sides = metrics::bipartition(cay.graph()).and_then(|(home, _)| {
        let at_home = |v: usize| home.binary_search(&v).is_ok();
        if cells.iter().any(|c| at_home(c[0]) != at_home(c[1])) {
            return None;
        }
        let (away, home): (Vec<usize>, Vec<usize>) = (0..cells.len()).partition(|&c| !at_home(cells[c][0]));
        Some((away, home))
    });
    let blocks = BlockSystem::new(2 * n, cells)?;
    Ok(CentralPartition { blocks, sides })
}

/// A quotient graph with its cover multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientReport {
    pub quotient: Graph,
    /// The common value of `|Γ(u) ∩ C|` over quotient edges `{B, C}` and
    /// `u ∈ B`, if it is uniform.
    pub multiplicity: Option<usize>,
    /// Whether some cell contains an edge.
    pub internal_edges: bool,
    pub family: FamilyTag,
}

/// The quotient of `graph` on the cells of `blocks`.
pub fn quotient(graph: &Graph, blocks: &BlockSystem) -> Result<QuotientReport, Error> {
    if blocks.degree() != graph.order() {
        return Err(Error::DegreeMismatch {
            expected: graph.order(),
            found: blocks.degree(),
        });
    }
    let cells = blocks.cells();
    let mut edges = Vec::new();
    let mut internal_edges = false;
    for u in 0..graph.order() {
        for &v in graph.neighbors(u) {
            let (cu, cv) = (blocks.cell_of(u), blocks.cell_of(v));
            if cu == cv {
                internal_edges = true;
            } else if cu < cv {
                edges.push((cu, cv));
            }
        }
    }
    let quotient = Graph::from_edges(cells.len(), &edges);
    let mut counts = Vec::new();
    for b in 0..cells.len() {
        for &c in quotient.neighbors(b) {
            for &u in &cells[b] {
                counts.push(cells[c].iter().filter(|&&v| graph.is_adjacent(u, v)).count());
            }
        }
    }
    let multiplicity = counts
        .first()
        .copied()
        .filter(|&r| counts.iter().all(|&x| x == r));
    let family = metrics::recognize(&quotient);
    Ok(QuotientReport {
        quotient,
        multiplicity,
        internal_edges,
        family,
    })
}

/// [`quotient`] after checking that `R(G)` preserves the partition.
pub fn quotient_with_cover_check(cay: &CayleyGraph, blocks: &BlockSystem) -> Result<QuotientReport, Error> {
    for r in cay.right_regular_generators() {
        if blocks.degree() != r.degree() || !blocks.is_invariant_under(&r) {
            return Err(Error::NonInvariantPartition("not preserved by R(G)".into()));
        }
    }
    quotient(cay.graph(), blocks)
}

fn check_unit_rotation_p(p: usize) -> Result<DihedralGroup, Error> {
    if p < 3 || !crate::factored::is_prime(p as u64) {
        return Err(Error::InvalidFamilyParameter {
            family: "thm14",
            reason: format!("p = {p} must be an odd prime"),
        });
    }
    DihedralGroup::new(4 * p)
}

fn case_pi(cay: &CayleyGraph) -> Result<u8, Error> {
    case_v_parts(cay.connection())
        .map(|(pi, _)| pi)
        .ok_or_else(|| Error::InvalidFamilyParameter {
            family: "thm14",
            reason: format!("{:?} does not have the case (v) shape", cay.connection()),
        })
}

fn check_group(cay: &CayleyGraph, p: usize) -> Result<DihedralGroup, Error> {
    let g = check_unit_rotation_p(p)?;
    if cay.group() != g {
        return Err(Error::InvalidFamilyParameter {
            family: "thm14",
            reason: format!("graph is on D_{}, expected D_{}", 2 * cay.n(), 2 * g.n()),
        });
    }
    Ok(g)
}

/// The `4p` transpositions `α_t, β_t, γ_t, δ_t` (`1 <= t <= p`) swapping
/// `x` and `x a^(2p)` for `x = a^(2t+1) b, a^(2t+1), a^(2t) b, a^(2t)`.
pub fn kernel_generators(p: usize) -> Result<Vec<Permutation>, Error> {
    let g = check_unit_rotation_p(p)?;
    let n = g.n();
    let mut out = Vec::with_capacity(4 * p);
    for t in 1..=p {
        for (exp, refl) in [(2 * t + 1, true), (2 * t + 1, false), (2 * t, true), (2 * t, false)] {
            let x = g.element(exp as i64, refl);
            let y = g.element((exp + 2 * p) as i64, refl);
            out.push(Permutation::transposition(2 * n, g.index(x), g.index(y)));
        }
    }
    Ok(out)
}

/// Kernel of `aut` acting on the cells of `blocks`: the pointwise
/// stabilizer of the cell points in the combined action on vertices and
/// cells.
pub fn block_kernel(aut: &PermutationGroup, blocks: &BlockSystem) -> Result<PermutationGroup, Error> {
    let d = aut.degree();
    let total = d + blocks.len();
    let gens = aut
        .generators()
        .iter()
        .map(|g| {
            let on_cells = blocks.induced(g)?;
            let mut images = g.images().to_vec();
            images.extend(on_cells.images().iter().map(|&c| d + c));
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let combined = PermutationGroup::new(total, gens)?;
    debug_assert_eq!(combined.order(), aut.order());
    let cell_points: Vec<usize> = (d..total).collect();
    let kernel = combined.pointwise_stabilizer(&cell_points);
    let restricted = kernel
        .generators()
        .iter()
        .map(|g| Permutation::from_images(g.images()[..d].to_vec()))
        .collect::<Result<Vec<_>, _>>()?;
    PermutationGroup::new(d, restricted)
}

/// Checks on the kernel `K` of `Aut(Γ)` on the central cells for the `D_8p`
/// graph `Γ = Cay(D_8p, S_pi)`.
pub fn verify_kernel(cay: &CayleyGraph, p: usize, aut: &PermutationGroup) -> Result<Report, Error> {
    let g = check_group(cay, p)?;
    let gens = kernel_generators(p)?;
    let mut report = Report::default();
    let bad: Vec<String> = gens
        .iter()
        .filter(|t| !cay.graph().is_automorphism(t).unwrap_or(false))
        .map(|t| t.to_string())
        .collect();
    report.push(
        format!("the {} transpositions are automorphisms", gens.len()),
        bad.is_empty(),
        if bad.is_empty() { String::from("all preserve adjacency") } else { format!("failing: {bad:?}") },
    );

    let k = PermutationGroup::new(2 * g.n(), gens.clone())?;
    let expected = FactoredInteger::from_u64(2).pow(4 * p as u32);
    report.push(format!("|<transpositions>| = 2^{}", 4 * p), *k.order() == expected, k.order().to_string());
    let elementary = gens.iter().all(|x| x.pow(2).is_identity())
        && gens.iter().all(|x| gens.iter().all(|y| x.commutes_with(y)));
    report.push("elementary abelian", elementary, "involutory, pairwise commuting generators");

    let product = gens.iter().fold(Permutation::identity(2 * g.n()), |acc, t| &acc * t);
    let central = g.right_regular(g.element(2 * p as i64, false));
    report.push("∏ α_t β_t γ_t δ_t = R(a^(2p))", product == central, product.to_string());

    let cells = central_orbit_partition(cay)?;
    let kernel = block_kernel(aut, &cells.blocks)?;
    let equal = kernel.order() == k.order() && gens.iter().all(|t| kernel.contains(t));
    report.push(
        "kernel of Aut on the central cells equals <transpositions>",
        equal,
        format!("computed kernel order {}", kernel.order()),
    );
    Ok(report)
}

/// Structure of `Ā = Aut(Γ)/K` on the central cells for the `D_8p` graph:
/// the part-preserving subgroup `Ā⁺` restricted to the side of `a` is
/// primitive of order `(2p)!` and contains the regular dihedral image of
/// `R(<a^2, a^(1-pi) b>)`, `|Ā| = 2 (2p)!`, and `|A| = |K| |Ā|`.
pub fn verify_quotient_group_structure(cay: &CayleyGraph, p: usize, aut: &PermutationGroup) -> Result<Report, Error> {
    let g = check_group(cay, p)?;
    let pi = case_pi(cay)?;
    let cells = central_orbit_partition(cay)?;
    let mut report = Report::default();
    let Some((odd, _)) = cells.sides.clone() else {
        report.push("central cells lie within the biparts", false, "");
        return Ok(report);
    };

    let on_cells = aut.action_on_blocks(&cells.blocks)?;
    let kernel = block_kernel(aut, &cells.blocks)?;
    let two_fact = FactoredInteger::factorial(2 * p as u64);
    report.push(
        "|Ā| = 2 (2p)!",
        *on_cells.order() == &two_fact * &FactoredInteger::from_u64(2),
        on_cells.order().to_string(),
    );
    report.push(
        "|A| = |K| |Ā|",
        *aut.order() == kernel.order() * on_cells.order(),
        format!("{} = {} * {}", aut.order(), kernel.order(), on_cells.order()),
    );

    // Ā⁺: index-2 subgroup fixing the odd side setwise, via Schreier
    // generators for the transversal {1, s}
    let is_odd = |c: usize| odd.contains(&c);
    let preserves = |x: &Permutation| odd.iter().all(|&c| is_odd(x.apply(c)));
    let swap = on_cells.generators().iter().find(|x| !preserves(x)).cloned();
    let mut plus_gens = Vec::new();
    for x in on_cells.generators() {
        match &swap {
            None => plus_gens.push(x.clone()),
            Some(s) => {
                let s_inv = s.inverse();
                if preserves(x) {
                    plus_gens.push(x.clone());
                    plus_gens.push(&(s * x) * &s_inv);
                } else {
                    plus_gens.push(x * &s_inv);
                    plus_gens.push(s * x);
                }
            }
        }
    }
    report.push("Ā swaps the two sides", swap.is_some(), "part-swapping automorphism present");
    let plus = PermutationGroup::new(on_cells.degree(), plus_gens)?;
    let plus_odd = plus.restrict(&odd)?;
    report.push(
        "|Ā⁺ on the side of a| = (2p)!",
        *plus_odd.order() == two_fact,
        plus_odd.order().to_string(),
    );
    report.push(
        "Ā⁺ acts faithfully on the side of a",
        plus_odd.order() == plus.order(),
        plus.order().to_string(),
    );
    report.push("Ā⁺ is primitive on the side of a", plus_odd.is_primitive()?, format!("degree {}", odd.len()));

    let sub_gens = [
        g.right_regular(g.element(2, false)),
        g.right_regular(g.element(1 - pi as i64, true)),
    ];
    let image_gens = sub_gens
        .iter()
        .map(|r| cells.blocks.induced(r))
        .collect::<Result<Vec<_>, _>>()?;
    let image = PermutationGroup::new(cells.blocks.len(), image_gens.clone())?.restrict(&odd)?;
    report.push(
        "R(<a^2,a^(1-pi)b>) image is regular on the side of a",
        image.is_regular(),
        format!("order {}", image.order()),
    );
    report.push(
        "R(<a^2,a^(1-pi)b>) image has order 2p",
        image.order().to_u128() == Some(2 * p as u128),
        image.order().to_string(),
    );
    let (x, y) = (&image.generators()[0], &image.generators()[1]);
    let dihedral = y.pow(2).is_identity() && &(y * x) * y == x.inverse() && x.order().to_u128() == Some(p as u128);
    report.push("R(<a^2,a^(1-pi)b>) image is dihedral", dihedral, format!("rotation order {}", x.order()));
    let inside = image.generators().iter().all(|h| plus_odd.contains(h));
    report.push("R(<a^2,a^(1-pi)b>) image lies in Ā⁺", inside, "membership by sifting");
    Ok(report)
}

/// The candidate `Δ` sets of the case (v) scan for `n = 2k`: unions of the
/// pairs `{a^j, a^-j}` (`j` odd, `j < k`) and, when `k` is odd, `{a^k}`,
/// with `0 < |Δ| <= k - 2`. Ordered by the bitmask over those pieces.
pub fn case_v_candidates(n: usize) -> Result<Vec<Vec<DihedralElement>>, Error> {
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    let k = n / 2;
    let mut pieces: Vec<Vec<usize>> = (1..k).step_by(2).map(|j| vec![j, n - j]).collect();
    if k % 2 == 1 {
        pieces.push(vec![k]);
    }
    assert!(pieces.len() < 30, "too many pieces to enumerate");
    let mut out = Vec::new();
    for mask in 1u32..(1 << pieces.len()) {
        let mut delta: Vec<usize> = (0..pieces.len())
            .filter(|i| mask >> i & 1 == 1)
            .flat_map(|i| pieces[i].iter().copied())
            .collect();
        if delta.len() + 2 > k {
            continue;
        }
        delta.sort_unstable();
        out.push(delta.into_iter().map(DihedralElement::rotation).collect());
    }
    Ok(out)
}

/// What the scan records for one candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseVRecord {
    pub n: usize,
    pub pi: u8,
    pub delta: Vec<DihedralElement>,
    pub connected: bool,
    pub arc_transitive: bool,
    pub aut_order: FactoredInteger,
    pub girth: Option<usize>,
    pub diameter: usize,
}

/// Builds `(a^pi b)^G ∪ Δ`, computes `Aut` and tests arc-transitivity.
pub fn evaluate_case_v(n: usize, pi: u8, delta: &[DihedralElement], limits: &Limits) -> Result<CaseVRecord, Error> {
    let group = DihedralGroup::new(n)?;
    let s = Family::CaseV {
        pi,
        delta: delta.to_vec(),
    }
    .build(group)?;
    let cay = CayleyGraph::new(s.clone());
    let aut = automorphism_group(cay.graph(), limits)?;
    let arc_transitive = permgroup::is_arc_transitive(cay.graph(), &aut, limits.arc_cap)?;
    Ok(CaseVRecord {
        n,
        pi,
        delta: delta.to_vec(),
        connected: s.is_connected(),
        arc_transitive,
        aut_order: aut.order().clone(),
        girth: metrics::girth(cay.graph()),
        diameter: metrics::diameter(cay.graph())?,
    })
}

/// Sequential scan over [`case_v_candidates`] with `pi = 1`.
pub fn scan_case_v(n: usize, limits: &Limits) -> Result<Vec<CaseVRecord>, Error> {
    case_v_candidates(n)?
        .iter()
        .map(|delta| evaluate_case_v(n, 1, delta, limits))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> DihedralGroup {
        DihedralGroup::new(n).unwrap()
    }
    fn r(i: usize) -> DihedralElement {
        DihedralElement::rotation(i)
    }
    fn f(i: usize) -> DihedralElement {
        DihedralElement::reflection(i)
    }

    #[test]
    fn shape_examples() {
        let s = ConnectionSet::from_class_reps(g(5), &[f(1)]).unwrap();
        assert_eq!(shape(&s), Shape::CaseI { variant: 1 });
        assert_eq!(shape(&Family::KnnV2.build(g(6)).unwrap()), Shape::CaseI { variant: 2 });
        assert_eq!(shape(&Family::KnnV3.build(g(6)).unwrap()), Shape::CaseI { variant: 3 });
        assert_eq!(
            shape(&Family::Multipartite { t: 2 }.build(g(6)).unwrap()),
            Shape::CaseIV { m: 6, t: 2 }
        );
        assert_eq!(shape(&Family::Complete.build(g(4)).unwrap()), Shape::CaseIII);
        assert_eq!(shape(&Family::KnnMinusMatchingV2.build(g(10)).unwrap()), Shape::CaseII { pi: 1 });
        assert_eq!(
            shape(&Family::UnitRotations { p: 3, pi: 1 }.build(g(12)).unwrap()),
            Shape::CaseV {
                pi: 1,
                delta: vec![r(1), r(5), r(7), r(11)]
            }
        );
        assert_eq!(shape(&ConnectionSet::new(g(6), &[r(1), r(5)]).unwrap()), Shape::Disconnected);
        assert_eq!(
            shape(&ConnectionSet::new(g(6), &[f(1), f(2)]).unwrap()),
            Shape::NotInnerAutomorphic
        );
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(case_v_candidates(8).unwrap(), vec![vec![r(1), r(7)], vec![r(3), r(5)]]);
        assert_eq!(case_v_candidates(12).unwrap().len(), 6);
        assert_eq!(case_v_candidates(30).unwrap().len(), 253);
        assert!(case_v_candidates(7).is_err());
        // n = 6, k = 3: at most one element, only {a^3}
        assert_eq!(case_v_candidates(6).unwrap(), vec![vec![r(3)]]);
    }

    #[test]
    fn central_partition_cells() {
        let cay = CayleyGraph::new(Family::UnitRotations { p: 3, pi: 1 }.build(g(12)).unwrap());
        let c = central_orbit_partition(&cay).unwrap();
        assert_eq!(c.blocks.len(), 12);
        assert_eq!(c.blocks.cells()[0], vec![0, 6]);
        let (odd, even) = c.sides.unwrap();
        assert_eq!(odd, vec![1, 3, 5, 7, 9, 11]);
        assert_eq!(even.len(), 6);
        let cay0 = CayleyGraph::new(Family::UnitRotations { p: 3, pi: 0 }.build(g(12)).unwrap());
        assert_eq!(central_orbit_partition(&cay0).unwrap().sides.unwrap().0, vec![1, 3, 5, 6, 8, 10]);
        let odd_n = CayleyGraph::new(Family::KnnV1.build(g(5)).unwrap());
        assert_eq!(central_orbit_partition(&odd_n), Err(Error::OddOrder(5)));
    }

    #[test]
    fn k4_quotient() {
        let cay = CayleyGraph::new(Family::Complete.build(g(2)).unwrap());
        let blocks = BlockSystem::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let q = quotient_with_cover_check(&cay, &blocks).unwrap();
        assert_eq!(q.quotient.edge_count(), 1);
        assert_eq!(q.multiplicity, Some(2));
        assert!(q.internal_edges);
    }

    #[test]
    fn kernel_generator_shape() {
        let gens = kernel_generators(3).unwrap();
        assert_eq!(gens.len(), 12);
        // α_1 = (a^3 b, a^9 b)
        assert_eq!(gens[0], Permutation::transposition(24, 12 + 3, 12 + 9));
        assert!(kernel_generators(4).is_err());
    }
}
