//! JSON reports. `serde_json::Map` is ordered by key, so every report
//! serializes key-sorted.

use std::time::Instant;

use dihedrant_core::metrics::{self, FamilyTag};
use dihedrant_core::permgroup::{is_2_distance_transitive, is_s_arc_transitive};
use dihedrant_core::search::{search, ColoredPartition};
use dihedrant_core::structure::{self, central_orbit_partition, ClassificationOutcome, QuotientReport};
use dihedrant_core::{
    CayleyGraph, DihedralGroup, Error, FactoredInteger, Limits, Permutation, PermutationGroup,
};
use serde_json::{json, Map, Value};

use crate::dsl::Spec;

/// Factored integers as `{"prime": exponent}` maps.
pub fn order_json(x: &FactoredInteger) -> Value {
    let map: Map<String, Value> = x
        .prime_powers()
        .map(|(p, e)| (p.to_string(), Value::from(e)))
        .collect();
    Value::Object(map)
}

/// A vertex permutation in cycle notation over element tokens.
pub fn cycles_json(group: DihedralGroup, perm: &Permutation) -> String {
    let cycles = perm.cycles();
    if cycles.is_empty() {
        return "()".into();
    }
    cycles
        .iter()
        .map(|c| {
            let labels: Vec<String> = c.iter().map(|&v| group.from_index(v).to_string()).collect();
            format!("({})", labels.join(","))
        })
        .collect()
}

pub fn outcome_json(outcome: &ClassificationOutcome) -> Value {
    let mut map = Map::new();
    map.insert("case".into(), outcome.label().into());
    match outcome {
        ClassificationOutcome::CaseI { variant } => {
            map.insert("variant".into(), (*variant).into());
        }
        ClassificationOutcome::CaseII { pi } => {
            map.insert("pi".into(), (*pi).into());
        }
        ClassificationOutcome::CaseIV { m, t } => {
            map.insert("m".into(), (*m).into());
            map.insert("t".into(), (*t).into());
        }
        ClassificationOutcome::CaseV { pi, delta, arc_transitive } => {
            map.insert("pi".into(), (*pi).into());
            map.insert("delta".into(), tokens(delta.iter()));
            map.insert("arc_transitive".into(), (*arc_transitive).into());
        }
        _ => {}
    }
    Value::Object(map)
}

pub fn family_json(tag: &FamilyTag) -> Value {
    match *tag {
        FamilyTag::Complete { order } => json!({"kind": "Complete", "order": order}),
        FamilyTag::CompleteBipartite { n } => json!({"kind": "CompleteBipartite", "n": n}),
        FamilyTag::CompleteBipartiteMinusMatching { n } => {
            json!({"kind": "CompleteBipartiteMinusMatching", "n": n})
        }
        FamilyTag::CompleteMultipartite { m, t } => json!({"kind": "CompleteMultipartite", "m": m, "t": t}),
        FamilyTag::Cycle { length } => json!({"kind": "Cycle", "length": length}),
        FamilyTag::Other => json!({"kind": "Other"}),
    }
}

fn tokens<'a>(xs: impl Iterator<Item = &'a dihedrant_core::DihedralElement>) -> Value {
    xs.map(|x| Value::from(x.to_string())).collect()
}

pub fn input_json(spec: &Spec) -> Value {
    json!({
        "n": spec.group.n(),
        "S": spec.set.tokens(),
        "family": spec.family.as_ref().map(|f| f.name()),
    })
}

pub fn invariants_json(cay: &CayleyGraph) -> Value {
    let s = cay.connection();
    let connected = s.is_connected();
    let g = cay.graph();
    json!({
        "vertices": g.order(),
        "valency": s.len(),
        "connected": connected,
        "inner_automorphic": s.is_inner_automorphic(),
        "girth": metrics::girth(g),
        "diameter": metrics::diameter(g).ok(),
        "bipartite": metrics::bipartition(g).is_some(),
        "recognized": family_json(&metrics::recognize(g)),
    })
}

/// Records elapsed milliseconds per phase, or nothing when disabled.
#[derive(Debug)]
pub struct Timer {
    enabled: bool,
    start: Instant,
    phases: Map<String, Value>,
}

impl Timer {
    pub fn new(enabled: bool) -> Self {
        Timer {
            enabled,
            start: Instant::now(),
            phases: Map::new(),
        }
    }

    pub fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        if self.enabled {
            let ms = t.elapsed().as_secs_f64() * 1e3;
            self.phases.insert(format!("{phase}_ms"), json!(ms));
        }
        out
    }

    pub fn finish(mut self) -> Value {
        if !self.enabled {
            return Value::Null;
        }
        let ms = self.start.elapsed().as_secs_f64() * 1e3;
        self.phases.insert("total_ms".into(), json!(ms));
        Value::Object(self.phases)
    }
}

/// `Aut(Γ)` and the number of search nodes used.
pub fn aut_with_nodes(cay: &CayleyGraph, limits: &Limits) -> Result<(PermutationGroup, u64), Error> {
    let out = search(cay.graph(), &ColoredPartition::unit(cay.graph().order()), limits)?;
    Ok((out.group, out.nodes))
}

/// The full report: input, invariants, classification, `|Aut|` and the
/// transitivity flags.
pub fn classify_report(spec: &Spec, limits: &Limits, timings: bool) -> Result<Value, Error> {
    let mut timer = Timer::new(timings);
    let cay = timer.time("build", || CayleyGraph::new(spec.set.clone()));
    let invariants = timer.time("invariants", || invariants_json(&cay));
    let (aut, _) = timer.time("aut", || aut_with_nodes(&cay, limits))?;
    let mut cached = Some(aut);
    let outcome = timer.time("classify", || structure::classify_with(&spec.set, limits, &mut cached))?;
    let aut = cached.expect("filled above");
    let transitivity = timer.time("transitivity", || transitivity_json(&cay, &aut, limits))?;
    Ok(json!({
        "input": input_json(spec),
        "invariants": invariants,
        "classification": outcome_json(&outcome),
        "aut_order": order_json(aut.order()),
        "transitivity": transitivity,
        "timings": timer.finish(),
    }))
}

/// Arc, 2-arc and 3-arc transitivity and 2-distance transitivity. The
/// higher arc levels are skipped (false) once a lower one fails.
pub fn transitivity_json(cay: &CayleyGraph, aut: &PermutationGroup, limits: &Limits) -> Result<Value, Error> {
    let g = cay.graph();
    let mut levels = [false; 3];
    for s in 1..=3 {
        if s > 1 && !levels[s - 2] {
            break;
        }
        levels[s - 1] = is_s_arc_transitive(g, aut, s, limits.arc_cap)?;
    }
    let two_distance = if cay.connection().is_connected() {
        Value::from(is_2_distance_transitive(g, aut)?)
    } else {
        Value::Null
    };
    Ok(json!({
        "arc": levels[0],
        "two_arc": levels[1],
        "three_arc": levels[2],
        "two_distance": two_distance,
    }))
}

pub fn invariants_report(spec: &Spec) -> Value {
    let cay = CayleyGraph::new(spec.set.clone());
    json!({
        "input": input_json(spec),
        "invariants": invariants_json(&cay),
        "shape": format!("{:?}", structure::shape(&spec.set)),
    })
}

pub fn aut_report(spec: &Spec, limits: &Limits, timings: bool) -> Result<Value, Error> {
    let mut timer = Timer::new(timings);
    let cay = CayleyGraph::new(spec.set.clone());
    let (aut, nodes) = timer.time("aut", || aut_with_nodes(&cay, limits))?;
    let gens: Vec<String> = aut
        .generators()
        .iter()
        .map(|p| cycles_json(spec.group, p))
        .collect();
    let base: Vec<String> = aut.base().iter().map(|&v| spec.group.from_index(v).to_string()).collect();
    Ok(json!({
        "input": input_json(spec),
        "aut_order": order_json(aut.order()),
        "base": base,
        "orbit_lengths": aut.orbit_lengths(),
        "generators": gens,
        "search_nodes": nodes,
        "timings": timer.finish(),
    }))
}

pub fn quotient_json(q: &QuotientReport) -> Value {
    let edges: Vec<[usize; 2]> = (0..q.quotient.order())
        .flat_map(|u| {
            q.quotient
                .neighbors(u)
                .iter()
                .filter(move |&&v| u < v)
                .map(move |&v| [u, v])
        })
        .collect();
    json!({
        "vertices": q.quotient.order(),
        "edges": edges,
        "recognized": family_json(&q.family),
        "multiplicity": q.multiplicity,
        "internal_edges": q.internal_edges,
    })
}

/// The quotient on the orbits of the central rotation.
pub fn quotient_report(spec: &Spec) -> Result<Value, Error> {
    let cay = CayleyGraph::new(spec.set.clone());
    let cells = central_orbit_partition(&cay)?;
    let q = structure::quotient_with_cover_check(&cay, &cells.blocks)?;
    let cell_tokens: Vec<Vec<String>> = cells
        .blocks
        .cells()
        .iter()
        .map(|c| c.iter().map(|&v| spec.group.from_index(v).to_string()).collect())
        .collect();
    Ok(json!({
        "input": input_json(spec),
        "cells": cell_tokens,
        "sides": cells.sides.map(|(a, b)| json!([a, b])),
        "quotient": quotient_json(&q),
    }))
}

/// Flattens a JSON value into aligned `path  value` lines.
pub fn to_text(value: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", value, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) if !map.is_empty() && !is_order(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, rows);
            }
        }
        Value::Object(map) if is_order(map) => {
            let parts: Vec<String> = map.iter().map(|(p, e)| format!("{p}^{e}")).collect();
            rows.push((prefix.into(), if parts.is_empty() { "1".into() } else { parts.join(" * ") }));
        }
        Value::String(s) => rows.push((prefix.into(), s.clone())),
        other => rows.push((prefix.into(), other.to_string())),
    }
}

fn is_order(map: &Map<String, Value>) -> bool {
    !map.is_empty() && map.iter().all(|(k, v)| k.parse::<u64>().is_ok() && v.is_u64())
}
