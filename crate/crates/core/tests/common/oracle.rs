//! Brute-force reference computations. These read the raw link lists and
//! never go through the engine's indexes, so they can check it.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use opp_core::model::{
    ElementId, IndicatorCategory, MethodDefinition, ObservationSet, ReferenceFramework,
};

/// All element ids of a framework, in layer order.
pub fn nodes(fw: &ReferenceFramework) -> Vec<ElementId> {
    fw.objectives
        .iter()
        .chain(&fw.principles)
        .chain(&fw.practices)
        .map(|e| e.id.clone())
        .chain(fw.indicators.iter().map(|i| i.id.clone()))
        .collect()
}

/// Boolean reachability matrix via Warshall's algorithm over all links.
/// `reach[a][b]` holds when b is reachable from a by following links downward.
pub fn closure(fw: &ReferenceFramework) -> (Vec<ElementId>, Vec<Vec<bool>>) {
    let nodes = nodes(fw);
    let n = nodes.len();
    let pos = |id: &ElementId| nodes.iter().position(|x| x == id).unwrap();
    let mut reach = vec![vec![false; n]; n];
    for link in fw.op_links.iter().chain(&fw.pp_links).chain(&fw.pi_links) {
        reach[pos(&link.0)][pos(&link.1)] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                let via = reach[k].clone();
                for (cell, &through) in reach[i].iter_mut().zip(&via) {
                    *cell |= through;
                }
            }
        }
    }
    (nodes, reach)
}

fn linked<'a>(
    links: &'a [opp_core::model::Link],
    upper: &'a ElementId,
) -> impl Iterator<Item = &'a ElementId> {
    links.iter().filter(move |l| &l.0 == upper).map(|l| &l.1)
}

/// (code, subject, context) triples a correct engine must flag.
pub fn suspect_flags(
    fw: &ReferenceFramework,
    m: &MethodDefinition,
) -> BTreeSet<(String, String, String)> {
    let mut flags = BTreeSet::new();
    for o in &m.objectives {
        for p in linked(&fw.op_links, o) {
            if !m.principles.contains(p) {
                flags.insert(("missing-principle".into(), p.to_string(), o.to_string()));
            } else if !linked(&fw.pp_links, p).any(|r| m.practices.contains(r)) {
                flags.insert(("unrealized-principle".into(), p.to_string(), o.to_string()));
            }
        }
    }
    flags
}

/// Principles the method adopts that support none of its objectives.
pub fn unsupported_principles(
    fw: &ReferenceFramework,
    m: &MethodDefinition,
) -> BTreeSet<ElementId> {
    m.principles
        .iter()
        .filter(|p| {
            let objectives: BTreeSet<_> = fw
                .op_links
                .iter()
                .filter(|l| &l.1 == *p)
                .map(|l| l.0.clone())
                .collect();
            objectives.intersection(&m.objectives).next().is_none()
        })
        .cloned()
        .collect()
}

fn average(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        None
    } else {
        let mut sum = 0.0;
        for v in values {
            sum += v;
        }
        Some(sum / values.len() as f64)
    }
}

#[derive(Debug, Default, PartialEq)]
pub struct Attainments {
    pub practices: BTreeMap<ElementId, Option<f64>>,
    pub principles: BTreeMap<ElementId, Option<f64>>,
    pub objectives: BTreeMap<ElementId, Option<f64>>,
    pub overall: Option<f64>,
}

/// Bottom-up aggregation straight from the link lists.
pub fn attainments(
    fw: &ReferenceFramework,
    m: &MethodDefinition,
    obs: &ObservationSet,
    categories: &[IndicatorCategory],
) -> Attainments {
    let level = |indicator: &ElementId| -> Option<f64> {
        let category = fw.indicators.iter().find(|i| &i.id == indicator)?.category;
        if !categories.contains(&category) {
            return None;
        }
        obs.observations
            .iter()
            .find(|o| &o.indicator == indicator)
            .map(|o| o.level.value())
    };
    let sorted = |ids: Vec<&ElementId>| -> Vec<ElementId> {
        let set: BTreeSet<ElementId> = ids.into_iter().cloned().collect();
        set.into_iter().collect()
    };

    let mut out = Attainments::default();
    for r in &m.practices {
        let values: Vec<f64> = sorted(linked(&fw.pi_links, r).collect())
            .iter()
            .filter_map(level)
            .collect();
        out.practices.insert(r.clone(), average(&values));
    }
    for p in &m.principles {
        let values: Vec<f64> = sorted(
            linked(&fw.pp_links, p)
                .filter(|r| m.practices.contains(*r))
                .collect(),
        )
        .iter()
        .filter_map(|r| out.practices[r])
        .collect();
        out.principles.insert(p.clone(), average(&values));
    }
    for o in &m.objectives {
        let values: Vec<f64> = sorted(
            linked(&fw.op_links, o)
                .filter(|p| m.principles.contains(*p))
                .collect(),
        )
        .iter()
        .filter_map(|p| out.principles[p])
        .collect();
        out.objectives.insert(o.clone(), average(&values));
    }
    let values: Vec<f64> = out.objectives.values().filter_map(|v| *v).collect();
    out.overall = average(&values);
    out
}
