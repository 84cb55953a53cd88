use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{validate_framework, ElementId, LinkIndex, LinkKind, ReferenceFramework};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// Objectives towards indicators.
    TopDown,
    /// Indicators towards objectives.
    BottomUp,
}

/// Transitive closure queries over a validated framework.
#[derive(Clone, Debug)]
pub struct Traversal<'a> {
    framework: &'a ReferenceFramework,
    index: LinkIndex,
}

impl<'a> Traversal<'a> {
    pub fn new(framework: &'a ReferenceFramework) -> Result<Self> {
        let report = validate_framework(framework);
        if !report.valid {
            return Err(Error::FrameworkInvalid(report));
        }
        Ok(Traversal {
            framework,
            index: LinkIndex::new(framework),
        })
    }

    /// Every element reachable from `start` along the links in `direction`,
    /// excluding `start` itself.
    pub fn reachable(&self, direction: Direction, start: &str) -> Result<BTreeSet<ElementId>> {
        let start = match self.framework.layer_of(start) {
            Some(_) => ElementId::new(start).map_err(|_| Error::UnknownElement(start.into()))?,
            None => return Err(Error::UnknownElement(start.into())),
        };

        let mut seen = BTreeSet::new();
        let mut frontier = vec![start.clone()];
        while let Some(node) = frontier.pop() {
            for kind in LinkKind::ALL {
                let next = match direction {
                    Direction::TopDown => self.index.children(kind, &node),
                    Direction::BottomUp => self.index.parents(kind, &node),
                };
                for n in next {
                    if seen.insert(n.clone()) {
                        frontier.push(n.clone());
                    }
                }
            }
        }
        seen.remove(&start);
        Ok(seen)
    }
}

pub fn reachability(
    framework: &ReferenceFramework,
    direction: Direction,
    start: &str,
) -> Result<BTreeSet<ElementId>> {
    Traversal::new(framework)?.reachable(direction, start)
}
