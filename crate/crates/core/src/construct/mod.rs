//! Explicit super edge-graceful labelings, one construction per family.
//!
//! Every labeling leaves through [`Builder::finish`], which re-verifies it.
//! A construction that fails verification surfaces as
//! [`ConstructError::Fault`] and is never returned as a labeling.

mod caterpillar;
mod lobster;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::classify::{classify, Conjecture, Dispatch, Family, Lemma, Params};
use crate::labeling::{verify, EdgeLabeling, Label, Violation};
use crate::search::{self, Certificate, SearchConfig, SearchError, SearchResult};
use crate::tree::{RootedTree, TreeSpec, Vertex};

pub use caterpillar::{label_even_caterpillar, label_odd_caterpillar};
pub use lobster::{label_even_lobster, label_odd_lobster};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Lemma(Lemma),
    Search,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Lemma(l) => l.fmt(f),
            Provenance::Search => f.write_str("search"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NonExistence {
    Lemma(Lemma),
    Exhaustion(Certificate),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Unknown {
    Conjectured(Conjecture),
    Uncovered,
    /// Search ran out of budget before deciding.
    BudgetExceeded { nodes_visited: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LabelOutcome {
    Labeled {
        labeling: EdgeLabeling,
        source: Provenance,
    },
    ProvedNotSeg(NonExistence),
    Unknown(Unknown),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("{spec} is a {family}, not handled by this labeler")]
    WrongFamily { spec: TreeSpec, family: Family },
    #[error("construction {lemma} with r={r}, s={s}, t={t} failed on {spec}: {detail}")]
    Fault {
        spec: TreeSpec,
        lemma: Lemma,
        r: usize,
        s: usize,
        t: usize,
        detail: String,
    },
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// Dispatches on the classification. With `search` set, undecided families
/// fall back to exhaustive search.
pub fn label_any(spec: &TreeSpec, search: Option<&SearchConfig>) -> Result<LabelOutcome, ConstructError> {
    let outcome = match classify(spec).family {
        Family::EvenCaterpillar => label_even_caterpillar(spec)?,
        Family::OddCaterpillar => label_odd_caterpillar(spec)?,
        Family::EvenLobster => label_even_lobster(spec)?,
        Family::OddLobster => label_odd_lobster(spec)?,
    };
    match (outcome, search) {
        (LabelOutcome::Unknown(_), Some(config)) => {
            let tree = spec.build();
            let found = search::search(&tree, config)?;
            Ok(match found.result {
                SearchResult::Found(labeling) => LabelOutcome::Labeled {
                    labeling,
                    source: Provenance::Search,
                },
                SearchResult::ExhaustedNone => {
                    LabelOutcome::ProvedNotSeg(NonExistence::Exhaustion(Certificate::new(&tree, config, &found)))
                }
                SearchResult::BudgetExceeded => LabelOutcome::Unknown(Unknown::BudgetExceeded {
                    nodes_visited: found.nodes_visited,
                }),
            })
        }
        (outcome, _) => Ok(outcome),
    }
}

/// Classification outcome for families without a construction.
pub(crate) fn settled(dispatch: &Dispatch) -> Option<LabelOutcome> {
    match dispatch {
        Dispatch::Constructive { .. } => None,
        Dispatch::NotSeg(lemma) => Some(LabelOutcome::ProvedNotSeg(NonExistence::Lemma(*lemma))),
        Dispatch::Conjectured(c) => Some(LabelOutcome::Unknown(Unknown::Conjectured(*c))),
        Dispatch::Uncovered => Some(LabelOutcome::Unknown(Unknown::Uncovered)),
    }
}

/// Collects edge assignments in the 1-based `e_{0,i}` / `e_{i,m}` indexing
/// and checks them on the way out.
pub(crate) struct Builder<'a> {
    tree: RootedTree,
    lemma: Lemma,
    params: &'a Params,
    labels: EdgeLabeling,
    faults: Vec<String>,
}

impl<'a> Builder<'a> {
    pub(crate) fn new(spec: &TreeSpec, lemma: Lemma, params: &'a Params) -> Self {
        Builder {
            tree: spec.build(),
            lemma,
            params,
            labels: EdgeLabeling::new(),
            faults: Vec::new(),
        }
    }

    fn set(&mut self, edge: Vertex, label: i64) {
        if !self.tree.has_edge(edge) {
            self.faults.push(format!("assigned {label} to missing edge {edge}"));
        } else if let Some(old) = self.labels.insert(edge, label) {
            self.faults.push(format!("edge {edge} assigned twice ({old}, then {label})"));
        }
    }

    /// `f(e_{0,i})`.
    pub(crate) fn spine(&mut self, i: usize, label: i64) {
        self.set(Vertex::Spine(i), label);
    }

    /// `f(e_{i,m})`.
    pub(crate) fn leaf(&mut self, i: usize, m: usize, label: i64) {
        self.set(Vertex::Leaf(i, m), label);
    }

    /// `f(e_{i,m})` and `f(e_{i,m+1}) = -f(e_{i,m})`.
    pub(crate) fn leaf_pair(&mut self, i: usize, m: usize, label: i64) {
        self.leaf(i, m, label);
        self.leaf(i, m + 1, -label);
    }

    /// `f(e_{0,i})` and `f(e_{0,i+1}) = -f(e_{0,i})`.
    pub(crate) fn spine_pair(&mut self, i: usize, label: i64) {
        self.spine(i, label);
        self.spine(i + 1, -label);
    }

    pub(crate) fn finish(self) -> Result<LabelOutcome, ConstructError> {
        let report = verify(&self.tree, &self.labels);
        if self.faults.is_empty() && report.is_seg {
            return Ok(LabelOutcome::Labeled {
                labeling: self.labels,
                source: Provenance::Lemma(self.lemma),
            });
        }
        let mut detail: Vec<String> = self.faults;
        detail.extend(report.violations.iter().map(Violation::to_string));
        Err(ConstructError::Fault {
            spec: self.tree.spec().clone(),
            lemma: self.lemma,
            r: self.params.r,
            s: self.params.s,
            t: self.params.t,
            detail: detail.join("; "),
        })
    }
}

/// `x` as a label.
pub(crate) fn lab(x: usize) -> Label {
    x as Label
}
