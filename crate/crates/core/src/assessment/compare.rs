use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::adequacy::{adequacy_unchecked, check_method, AdequacyReport};
use crate::error::{Error, Result};
use crate::model::{
    validate_framework, ElementId, FrameworkMetadata, LinkIndex, MethodDefinition,
    ReferenceFramework,
};

/// One cell of the comparison grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ObjectiveCell {
    Score(f64),
    /// The method does not adopt this objective.
    NotClaimed,
}

const NOT_CLAIMED: &str = "not-claimed";

impl fmt::Display for ObjectiveCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectiveCell::Score(v) => write!(f, "{v:.2}"),
            ObjectiveCell::NotClaimed => f.write_str(NOT_CLAIMED),
        }
    }
}

impl Serialize for ObjectiveCell {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ObjectiveCell::Score(v) => serializer.serialize_f64(*v),
            ObjectiveCell::NotClaimed => serializer.serialize_str(NOT_CLAIMED),
        }
    }
}

impl<'de> Deserialize<'de> for ObjectiveCell {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct CellVisitor;

        impl Visitor<'_> for CellVisitor {
            type Value = ObjectiveCell;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a score or \"not-claimed\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<ObjectiveCell, E> {
                Ok(ObjectiveCell::Score(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ObjectiveCell, E> {
                Ok(ObjectiveCell::Score(v as f64))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ObjectiveCell, E> {
                Ok(ObjectiveCell::Score(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ObjectiveCell, E> {
                if v == NOT_CLAIMED {
                    Ok(ObjectiveCell::NotClaimed)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        deserializer.deserialize_any(CellVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub method: ElementId,
    pub overall_score: f64,
    pub per_objective: BTreeMap<ElementId, ObjectiveCell>,
}

impl ComparisonRow {
    fn from_report(report: &AdequacyReport, columns: &BTreeSet<ElementId>) -> Self {
        let per_objective = columns
            .iter()
            .map(|o| {
                let cell = report
                    .per_objective
                    .get(o)
                    .map_or(ObjectiveCell::NotClaimed, |a| ObjectiveCell::Score(a.score));
                (o.clone(), cell)
            })
            .collect();
        ComparisonRow {
            method: report.method.clone(),
            overall_score: report.overall_score,
            per_objective,
        }
    }

    /// True when the row carries exactly the scores of `report`.
    pub fn matches(&self, report: &AdequacyReport) -> bool {
        self.method == report.method
            && self.overall_score == report.overall_score
            && self.per_objective.iter().all(|(o, cell)| {
                match (cell, report.per_objective.get(o)) {
                    (ObjectiveCell::Score(s), Some(a)) => *s == a.score,
                    (ObjectiveCell::NotClaimed, None) => true,
                    _ => false,
                }
            })
            && report
                .per_objective
                .keys()
                .all(|o| self.per_objective.contains_key(o))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub framework: FrameworkMetadata,
    /// Union of the objectives adopted by any compared method.
    pub objectives: Vec<ElementId>,
    /// Sorted by method id.
    pub rows: Vec<ComparisonRow>,
}

/// Assesses the adequacy of several methods side by side.
pub fn compare_adequacy(
    framework: &ReferenceFramework,
    methods: &[MethodDefinition],
) -> Result<ComparisonTable> {
    if methods.is_empty() {
        return Err(Error::NoMethods);
    }
    let report = validate_framework(framework);
    if !report.valid {
        return Err(Error::FrameworkInvalid(report));
    }

    let mut sorted: Vec<&MethodDefinition> = methods.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    for pair in sorted.windows(2) {
        if pair[0].id == pair[1].id {
            return Err(Error::DuplicateMethod(pair[0].id.clone()));
        }
    }
    for m in &sorted {
        check_method(framework, m)?;
    }

    let index = LinkIndex::new(framework);
    let reports: Vec<_> = sorted
        .iter()
        .map(|m| adequacy_unchecked(&index, m))
        .collect();
    let columns: BTreeSet<ElementId> = sorted
        .iter()
        .flat_map(|m| m.objectives.iter().cloned())
        .collect();
    Ok(ComparisonTable {
        framework: framework.metadata.clone(),
        rows: reports
            .iter()
            .map(|r| ComparisonRow::from_report(r, &columns))
            .collect(),
        objectives: columns.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assessment::assess_adequacy;
    use crate::catalog::{builtin_reference, corpus};
    use crate::model::id;

    #[test]
    fn singleton_matches_standalone() {
        let fw = builtin_reference();
        let m = corpus().remove(0).method;
        let table = compare_adequacy(&fw, std::slice::from_ref(&m)).unwrap();
        assert_eq!(table.rows.len(), 1);
        assert!(table.rows[0].matches(&assess_adequacy(&fw, &m).unwrap()));
    }

    #[test]
    fn corpus_rows_are_sorted() {
        let fw = builtin_reference();
        let methods: Vec<_> = corpus().into_iter().map(|e| e.method).collect();
        let table = compare_adequacy(&fw, &methods).unwrap();
        let ids: Vec<_> = table.rows.iter().map(|r| r.method.as_str()).collect();
        assert_eq!(ids, ["fdd", "scrum", "xp"]);
        for (row, m) in table.rows.iter().zip(["fdd", "scrum", "xp"]) {
            let m = methods.iter().find(|x| x.id.as_str() == m).unwrap();
            assert!(row.matches(&assess_adequacy(&fw, m).unwrap()));
            assert_eq!(row.per_objective.len(), table.objectives.len());
        }
    }

    #[test]
    fn identical_definitions_score_identically() {
        let fw = builtin_reference();
        let a = corpus().remove(0).method;
        let mut b = a.clone();
        b.id = id("copy");
        let table = compare_adequacy(&fw, &[a, b]).unwrap();
        assert_eq!(table.rows[0].overall_score, table.rows[1].overall_score);
        assert_eq!(table.rows[0].per_objective, table.rows[1].per_objective);
    }

    #[test]
    fn errors() {
        let fw = builtin_reference();
        assert_eq!(compare_adequacy(&fw, &[]).unwrap_err().code(), "no-methods");
        let m = corpus().remove(0).method;
        let err = compare_adequacy(&fw, &[m.clone(), m]).unwrap_err();
        assert_eq!(err.code(), "duplicate-method");
        let bad = MethodDefinition::new(id("bad"), "Bad");
        match compare_adequacy(&fw, &[bad]).unwrap_err() {
            Error::MethodInvalid { method, .. } => assert_eq!(method.as_str(), "bad"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn not_claimed_marker() {
        assert_eq!(
            serde_json::to_string(&ObjectiveCell::NotClaimed).unwrap(),
            "\"not-claimed\""
        );
        let cell: ObjectiveCell = serde_json::from_str("0.5").unwrap();
        assert_eq!(cell, ObjectiveCell::Score(0.5));
    }
}
