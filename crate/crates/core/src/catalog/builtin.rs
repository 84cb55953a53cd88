use std::sync::OnceLock;

use super::{parse_catalog, parse_method};
use crate::model::{MethodDefinition, ReferenceFramework};

const REFERENCE_CATALOG: &str = include_str!("../../data/reference-catalog.json");

const CORPUS: [(&str, &str); 3] = [
    (
        include_str!("../../data/corpus/xp.json"),
        "Curated from K. Beck, Extreme Programming Explained (1st ed., 1999): the twelve XP practices, \
         each mapped onto the nearest catalog practice.",
    ),
    (
        include_str!("../../data/corpus/scrum.json"),
        "Curated from K. Schwaber and J. Sutherland, The Scrum Guide (2020): events and artifacts \
         mapped onto catalog practices.",
    ),
    (
        include_str!("../../data/corpus/fdd.json"),
        "Curated from S. Palmer and J. Felsing, A Practical Guide to Feature-Driven Development (2002): \
         the five FDD processes and its best practices mapped onto catalog practices.",
    ),
];

/// A shipped method definition and a note on how it was curated.
#[derive(Clone, Debug, PartialEq)]
pub struct CorpusEntry {
    pub method: MethodDefinition,
    pub provenance: String,
}

/// The shipped reference catalog.
///
/// Contains the objective `flexible`, its principle `accommodate-change` and
/// that principle's three practices (`face-to-face-communication`,
/// `on-site-customer`, `no-bruf`), extended with elements derived from the
/// agile manifesto's values and principles.
pub fn builtin_reference() -> ReferenceFramework {
    static CATALOG: OnceLock<ReferenceFramework> = OnceLock::new();
    CATALOG
        .get_or_init(|| {
            parse_catalog(REFERENCE_CATALOG.as_bytes())
                .expect("shipped reference catalog is valid")
                .value
        })
        .clone()
}

/// XP, Scrum and FDD, in that order.
pub fn corpus() -> Vec<CorpusEntry> {
    CORPUS
        .iter()
        .map(|(document, provenance)| CorpusEntry {
            method: parse_method(document.as_bytes())
                .expect("shipped corpus method parses")
                .value,
            provenance: provenance.to_string(),
        })
        .collect()
}

pub fn corpus_entry(id: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.method.id.as_str() == id)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::catalog::emit_catalog;
    use crate::model::{
        id, validate_framework, validate_method, IndicatorCategory, Link, LinkIndex,
    };

    #[test]
    fn shipped_file_is_in_canonical_form() {
        let emitted = emit_catalog(&builtin_reference()).unwrap();
        assert_eq!(String::from_utf8(emitted).unwrap(), REFERENCE_CATALOG);
    }

    #[test]
    fn catalog_is_valid() {
        let report = validate_framework(&builtin_reference());
        assert!(report.valid);
        assert!(report.issues.is_empty());
    }

    #[test]
    fn anchored_fragment() {
        let fw = builtin_reference();
        assert!(fw.objective("flexible").is_some());
        assert!(fw.principle("accommodate-change").is_some());
        for p in ["face-to-face-communication", "on-site-customer", "no-bruf"] {
            assert!(fw.practice(p).is_some(), "{p}");
            assert!(fw
                .pp_links
                .contains(&Link::new(id("accommodate-change"), id(p))));
        }
        assert!(fw
            .op_links
            .contains(&Link::new(id("flexible"), id("accommodate-change"))));

        let index = LinkIndex::new(&fw);
        let expected: BTreeSet<_> = ["face-to-face-communication", "on-site-customer", "no-bruf"]
            .into_iter()
            .map(id)
            .collect();
        assert_eq!(index.practices_of(&id("accommodate-change")), &expected);
        assert_eq!(
            index.principles_of(&id("flexible")),
            &[id("accommodate-change")].into()
        );
        assert_eq!(
            index.principles_realized_by(&id("no-bruf")),
            &[id("accommodate-change")].into()
        );
    }

    #[test]
    fn every_category_is_exercisable() {
        let fw = builtin_reference();
        let index = LinkIndex::new(&fw);
        for category in IndicatorCategory::ALL {
            let linked = fw
                .indicators
                .iter()
                .filter(|i| {
                    i.category == category && !index.practices_indicated_by(&i.id).is_empty()
                })
                .count();
            assert!(linked >= 2, "{category}: {linked}");
        }
    }

    #[test]
    fn extension_elements_cite_the_manifesto() {
        let fw = builtin_reference();
        let sources = fw
            .objectives
            .iter()
            .chain(&fw.principles)
            .chain(&fw.practices)
            .map(|e| &e.source)
            .chain(fw.indicators.iter().map(|i| &i.source));
        for source in sources {
            assert!(source.starts_with("Agile Manifesto"), "{source}");
        }
    }

    #[test]
    fn corpus_validates() {
        let fw = builtin_reference();
        let entries = corpus();
        let ids: Vec<_> = entries.iter().map(|e| e.method.id.as_str()).collect();
        assert_eq!(ids, ["xp", "scrum", "fdd"]);
        for entry in &entries {
            assert!(!entry.method.objectives.is_empty());
            assert!(!entry.provenance.is_empty());
            let report = validate_method(&fw, &entry.method).unwrap();
            assert!(report.valid, "{}: {:?}", entry.method.id, report.issues);
        }
    }
}
