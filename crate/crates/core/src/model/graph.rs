use std::collections::{BTreeMap, BTreeSet};

use super::{ElementId, Link, ReferenceFramework};

static EMPTY: BTreeSet<ElementId> = BTreeSet::new();

type Adjacency = BTreeMap<ElementId, BTreeSet<ElementId>>;

/// Adjacency index over the three link layers, in both directions.
#[derive(Clone, Debug, Default)]
pub struct LinkIndex {
    down: [Adjacency; 3],
    up: [Adjacency; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkKind {
    ObjectivePrinciple = 0,
    PrinciplePractice = 1,
    PracticeIndicator = 2,
}

impl LinkKind {
    pub const ALL: [LinkKind; 3] = [
        LinkKind::ObjectivePrinciple,
        LinkKind::PrinciplePractice,
        LinkKind::PracticeIndicator,
    ];

    pub fn field(self) -> &'static str {
        match self {
            LinkKind::ObjectivePrinciple => "op_links",
            LinkKind::PrinciplePractice => "pp_links",
            LinkKind::PracticeIndicator => "pi_links",
        }
    }

    pub fn links(self, framework: &ReferenceFramework) -> &[Link] {
        match self {
            LinkKind::ObjectivePrinciple => &framework.op_links,
            LinkKind::PrinciplePractice => &framework.pp_links,
            LinkKind::PracticeIndicator => &framework.pi_links,
        }
    }
}

impl LinkIndex {
    /// Indexes every link of `framework`, whether or not its endpoints resolve.
    pub fn new(framework: &ReferenceFramework) -> Self {
        let mut index = LinkIndex::default();
        for kind in LinkKind::ALL {
            for link in kind.links(framework) {
                index.insert(kind, link);
            }
        }
        index
    }

    /// Indexes only links whose endpoints exist in the adjacent layers.
    pub fn resolved(framework: &ReferenceFramework) -> Self {
        let ids = |items: &mut dyn Iterator<Item = &ElementId>| -> BTreeSet<ElementId> {
            items.cloned().collect()
        };
        let objectives = ids(&mut framework.objectives.iter().map(|e| &e.id));
        let principles = ids(&mut framework.principles.iter().map(|e| &e.id));
        let practices = ids(&mut framework.practices.iter().map(|e| &e.id));
        let indicators = ids(&mut framework.indicators.iter().map(|e| &e.id));
        let layers = [&objectives, &principles, &practices, &indicators];

        let mut index = LinkIndex::default();
        for kind in LinkKind::ALL {
            let (upper, lower) = (layers[kind as usize], layers[kind as usize + 1]);
            for link in kind.links(framework) {
                if upper.contains(link.upper()) && lower.contains(link.lower()) {
                    index.insert(kind, link);
                }
            }
        }
        index
    }

    fn insert(&mut self, kind: LinkKind, link: &Link) {
        let k = kind as usize;
        self.down[k]
            .entry(link.upper().clone())
            .or_default()
            .insert(link.lower().clone());
        self.up[k]
            .entry(link.lower().clone())
            .or_default()
            .insert(link.upper().clone());
    }

    pub fn children(&self, kind: LinkKind, id: &ElementId) -> &BTreeSet<ElementId> {
        self.down[kind as usize].get(id).unwrap_or(&EMPTY)
    }

    pub fn parents(&self, kind: LinkKind, id: &ElementId) -> &BTreeSet<ElementId> {
        self.up[kind as usize].get(id).unwrap_or(&EMPTY)
    }

    pub fn principles_of(&self, objective: &ElementId) -> &BTreeSet<ElementId> {
        self.children(LinkKind::ObjectivePrinciple, objective)
    }

    pub fn objectives_of(&self, principle: &ElementId) -> &BTreeSet<ElementId> {
        self.parents(LinkKind::ObjectivePrinciple, principle)
    }

    pub fn practices_of(&self, principle: &ElementId) -> &BTreeSet<ElementId> {
        self.children(LinkKind::PrinciplePractice, principle)
    }

    pub fn principles_realized_by(&self, practice: &ElementId) -> &BTreeSet<ElementId> {
        self.parents(LinkKind::PrinciplePractice, practice)
    }

    pub fn indicators_of(&self, practice: &ElementId) -> &BTreeSet<ElementId> {
        self.children(LinkKind::PracticeIndicator, practice)
    }

    pub fn practices_indicated_by(&self, indicator: &ElementId) -> &BTreeSet<ElementId> {
        self.parents(LinkKind::PracticeIndicator, indicator)
    }
}
