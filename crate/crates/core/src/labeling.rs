//! Edge labelings, induced vertex sums and the super edge-graceful check.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::{parse_spec, RootedTree, SpecError, Vertex};

pub type Label = i64;

/// Labels `{0, ±1, ..., ±(q-1)/2}` for odd `q`, `{±1, ..., ±q/2}` for even `q`.
pub fn edge_label_target(q: usize) -> Vec<Label> {
    balanced_set(q)
}

/// Labels `{0, ±1, ..., ±(p-1)/2}` for odd `p`, `{±1, ..., ±p/2}` for even `p`.
pub fn vertex_label_target(p: usize) -> Vec<Label> {
    balanced_set(p)
}

/// The symmetric integer set of cardinality `size`, sorted ascending.
fn balanced_set(size: usize) -> Vec<Label> {
    let h = (size / 2) as Label;
    if size % 2 == 1 {
        (-h..=h).collect()
    } else {
        (-h..=h).filter(|&x| x != 0).collect()
    }
}

/// Edge labels keyed by the child endpoint of each edge.
///
/// May name edges a tree does not have; [`verify`] reports that as a
/// domain mismatch.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeLabeling(BTreeMap<Vertex, Label>);

impl EdgeLabeling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, edge: Vertex, label: Label) -> Option<Label> {
        self.0.insert(edge, label)
    }

    pub fn get(&self, edge: Vertex) -> Option<Label> {
        self.0.get(&edge).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Label)> + '_ {
        self.0.iter().map(|(&v, &x)| (v, x))
    }

    pub fn negate(&self) -> EdgeLabeling {
        EdgeLabeling(self.0.iter().map(|(&v, &x)| (v, -x)).collect())
    }

    /// Labels in the tree's edge order; `None` where an edge is unlabeled.
    pub fn in_order(&self, tree: &RootedTree) -> Vec<Option<Label>> {
        tree.edges().iter().map(|&e| self.get(e)).collect()
    }
}

impl FromIterator<(Vertex, Label)> for EdgeLabeling {
    fn from_iter<I: IntoIterator<Item = (Vertex, Label)>>(iter: I) -> Self {
        EdgeLabeling(iter.into_iter().collect())
    }
}

impl std::ops::Add for &EdgeLabeling {
    type Output = EdgeLabeling;

    /// Pointwise sum over the union of both domains.
    fn add(self, rhs: &EdgeLabeling) -> EdgeLabeling {
        let mut out = self.clone();
        for (v, x) in rhs.iter() {
            *out.0.entry(v).or_insert(0) += x;
        }
        out
    }
}

/// Induced vertex sums `f+(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct VertexLabeling(BTreeMap<Vertex, Label>);

impl VertexLabeling {
    pub fn get(&self, v: Vertex) -> Option<Label> {
        self.0.get(&v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Label)> + '_ {
        self.0.iter().map(|(&v, &x)| (v, x))
    }

    pub fn values(&self) -> impl Iterator<Item = Label> + '_ {
        self.0.values().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("labeling does not match the tree's edge set ({} missing, {} extra)", .0.missing.len(), .0.extra.len())]
pub struct DomainMismatch(pub DomainDiff);

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DomainDiff {
    pub missing: Vec<Vertex>,
    pub extra: Vec<Vertex>,
}

impl DomainDiff {
    fn of(tree: &RootedTree, f: &EdgeLabeling) -> Self {
        DomainDiff {
            missing: tree.edges().iter().copied().filter(|&e| f.get(e).is_none()).collect(),
            extra: f.iter().map(|(e, _)| e).filter(|&e| !tree.has_edge(e)).collect(),
        }
    }

    fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

pub fn induce(tree: &RootedTree, f: &EdgeLabeling) -> Result<VertexLabeling, DomainMismatch> {
    let diff = DomainDiff::of(tree, f);
    if !diff.is_empty() {
        return Err(DomainMismatch(diff));
    }
    let mut sums: BTreeMap<Vertex, Label> = tree.vertices().map(|v| (v, 0)).collect();
    for (child, x) in f.iter() {
        *sums.get_mut(&child).expect("domain checked") += x;
        let parent = child.parent().expect("root names no edge");
        *sums.get_mut(&parent).expect("domain checked") += x;
    }
    Ok(VertexLabeling(sums))
}

/// Difference between an observed label multiset and its target set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MultisetDiff {
    /// Values seen more than once, with their multiplicity.
    pub duplicates: Vec<(Label, usize)>,
    /// Target values never seen.
    pub missing: Vec<Label>,
    /// Values outside the target set.
    pub unexpected: Vec<Label>,
}

impl MultisetDiff {
    pub fn compare(observed: impl IntoIterator<Item = Label>, target: &[Label]) -> Self {
        let mut counts: BTreeMap<Label, usize> = BTreeMap::new();
        for x in observed {
            *counts.entry(x).or_default() += 1;
        }
        let duplicates = counts.iter().filter(|(_, &c)| c > 1).map(|(&x, &c)| (x, c)).collect();
        let missing = target.iter().copied().filter(|x| !counts.contains_key(x)).collect();
        let unexpected = counts.keys().copied().filter(|x| target.binary_search(x).is_err()).collect();
        MultisetDiff {
            duplicates,
            missing,
            unexpected,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.duplicates.is_empty() && self.missing.is_empty() && self.unexpected.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    DomainMismatch(DomainDiff),
    EdgeLabelsNotTargetSet(MultisetDiff),
    VertexLabelsNotTargetSet(MultisetDiff),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |xs: &[Label]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let multiset = |f: &mut fmt::Formatter<'_>, what: &str, d: &MultisetDiff| {
            write!(f, "{what} labels are not the target set:")?;
            if !d.duplicates.is_empty() {
                let dups: Vec<String> = d.duplicates.iter().map(|(x, c)| format!("{x} (x{c})")).collect();
                write!(f, " duplicate {}", dups.join(","))?;
            }
            if !d.missing.is_empty() {
                write!(f, " missing {}", list(&d.missing))?;
            }
            if !d.unexpected.is_empty() {
                write!(f, " unexpected {}", list(&d.unexpected))?;
            }
            Ok(())
        };
        match self {
            Violation::DomainMismatch(d) => {
                let names = |vs: &[Vertex]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
                write!(f, "labeling domain differs from the edge set:")?;
                if !d.missing.is_empty() {
                    write!(f, " unlabeled {}", names(&d.missing))?;
                }
                if !d.extra.is_empty() {
                    write!(f, " unknown {}", names(&d.extra))?;
                }
                Ok(())
            }
            Violation::EdgeLabelsNotTargetSet(d) => multiset(f, "edge", d),
            Violation::VertexLabelsNotTargetSet(d) => multiset(f, "vertex", d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub is_seg: bool,
    pub violations: Vec<Violation>,
}

/// Checks that `f` is a super edge-graceful labeling of `tree`.
///
/// All violations are collected. Vertex sums are only checked when the
/// labeling covers exactly the tree's edges.
pub fn verify(tree: &RootedTree, f: &EdgeLabeling) -> VerificationReport {
    let mut violations = Vec::new();
    let edges = MultisetDiff::compare(f.iter().map(|(_, x)| x), &edge_label_target(tree.size()));
    let vertex_sums = induce(tree, f);
    if let Err(DomainMismatch(diff)) = &vertex_sums {
        violations.push(Violation::DomainMismatch(diff.clone()));
    }
    if !edges.is_empty() {
        violations.push(Violation::EdgeLabelsNotTargetSet(edges));
    }
    if let Ok(sums) = vertex_sums {
        let vertices = MultisetDiff::compare(sums.values(), &vertex_label_target(tree.order()));
        if !vertices.is_empty() {
            violations.push(Violation::VertexLabelsNotTargetSet(vertices));
        }
    }
    VerificationReport {
        is_seg: violations.is_empty(),
        violations,
    }
}

pub fn negate(f: &EdgeLabeling) -> EdgeLabeling {
    f.negate()
}

/// On-disk labeling document: `{"spec": "RT(...)", "edges": {"v1": 3, "v5.2": -4}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingFile {
    pub spec: String,
    pub edges: EdgeLabeling,
}

#[derive(Debug, Error)]
pub enum LabelingFileError {
    #[error("malformed labeling document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad spec in labeling document: {0}")]
    Spec(#[from] SpecError),
}

impl LabelingFile {
    pub fn new(tree: &RootedTree, edges: EdgeLabeling) -> Self {
        LabelingFile {
            spec: tree.spec().to_string(),
            edges,
        }
    }

    pub fn parse(text: &str) -> Result<Self, LabelingFileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("labeling serializes")
    }

    pub fn tree(&self) -> Result<RootedTree, LabelingFileError> {
        Ok(parse_spec(&self.spec)?.build())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_spec;
    use Vertex::*;

    fn tree(text: &str) -> RootedTree {
        parse_spec(text).unwrap().build()
    }

    #[test]
    fn targets() {
        let plus_minus = |h: Label| -> Vec<Label> { (-h..=h).filter(|&x| x != 0).collect() };
        assert_eq!(edge_label_target(14), plus_minus(7));
        assert_eq!(edge_label_target(11), (-5..=5).collect::<Vec<_>>());
        assert_eq!(edge_label_target(1), vec![0]);
        assert_eq!(vertex_label_target(15), (-7..=7).collect::<Vec<_>>());
        assert_eq!(vertex_label_target(12), plus_minus(6));
        assert_eq!(vertex_label_target(2), vec![-1, 1]);
        for q in 1..40 {
            assert_eq!(edge_label_target(q).len(), q);
        }
    }

    fn path5() -> EdgeLabeling {
        [(Spine(1), 1), (Spine(2), -1), (Leaf(1, 1), -2), (Leaf(2, 1), 2)]
            .into_iter()
            .collect()
    }

    #[test]
    fn induce_path() {
        let t = tree("RT(1,1)");
        let sums = induce(&t, &path5()).unwrap();
        assert_eq!(sums.get(Root), Some(0));
        assert_eq!(sums.get(Spine(1)), Some(-1));
        assert_eq!(sums.get(Spine(2)), Some(1));
        assert_eq!(sums.get(Leaf(1, 1)), Some(-2));
        assert!(verify(&t, &path5()).is_seg);
    }

    #[test]
    fn induce_needs_total_labeling() {
        let t = tree("RT(1,1)");
        let mut f = path5();
        f.0.remove(&Leaf(2, 1));
        let err = induce(&t, &f).unwrap_err();
        assert_eq!(err.0.missing, vec![Leaf(2, 1)]);
    }

    #[test]
    fn reports_duplicates() {
        let t = tree("RT(1,1)");
        let mut f = path5();
        f.insert(Spine(2), 2);
        let report = verify(&t, &f);
        assert!(!report.is_seg);
        let Violation::EdgeLabelsNotTargetSet(d) = &report.violations[0] else {
            panic!("{:?}", report.violations)
        };
        assert_eq!(d.duplicates, vec![(2, 2)]);
        assert_eq!(d.missing, vec![-1]);
    }

    #[test]
    fn reports_domain_mismatch() {
        let t = tree("RT(1,1)");
        let mut f = path5();
        f.insert(Leaf(1, 2), 5);
        let report = verify(&t, &f);
        assert!(!report.is_seg);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::DomainMismatch(d) if d.extra == vec![Leaf(1, 2)])));
    }

    #[test]
    fn negation_is_an_involution() {
        let f: EdgeLabeling = [(Spine(1), 3)].into_iter().collect();
        assert_eq!(negate(&f).get(Spine(1)), Some(-3));
        assert_eq!(negate(&negate(&path5())), path5());
    }

    #[test]
    fn file_round_trip() {
        let t = tree("RT(1,1)");
        let doc = LabelingFile::new(&t, path5());
        let text = doc.to_json();
        assert!(text.contains("\"v1.1\": -2"));
        let back = LabelingFile::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.tree().unwrap(), t);
    }
}
