//! Rooted trees of height two, `RT(a_1, ..., a_n)`.
//!
//! A tree is described by the child counts of the root's children (the
//! *spine*). The sequence is kept in canonical order: zeros first, then the
//! positive even counts, then the positive odd counts, each group
//! nondecreasing. Diameter four requires at least two positive counts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("empty tree specification")]
    Empty,
    #[error("not a diameter-4 tree: need at least two spine vertices with children, got {positive}")]
    NotDiameterFour { positive: usize },
    #[error("no diameter-4 tree has fewer than 4 edges (q_max = {q_max})")]
    EmptyRange { q_max: usize },
}

/// Canonical child-count sequence of a diameter-4 rooted tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct TreeSpec {
    counts: Vec<usize>,
}

impl TreeSpec {
    /// Sorts `raw` into canonical order and checks the diameter.
    pub fn canonicalize(raw: &[usize]) -> Result<Self, SpecError> {
        if raw.is_empty() {
            return Err(SpecError::Empty);
        }
        let mut counts = raw.to_vec();
        // stable: ties inside a parity class stay in input order
        counts.sort_by_key(|&a| match a {
            0 => (0, 0),
            a if a % 2 == 0 => (1, a),
            a => (2, a),
        });
        let positive = counts.iter().filter(|&&a| a > 0).count();
        if positive < 2 {
            return Err(SpecError::NotDiameterFour { positive });
        }
        Ok(TreeSpec { counts })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Child count of spine vertex `i` (1-based).
    pub fn a(&self, i: usize) -> usize {
        self.counts[i - 1]
    }

    /// Number of spine vertices.
    pub fn n(&self) -> usize {
        self.counts.len()
    }

    /// Spine vertices without children.
    pub fn j(&self) -> usize {
        self.counts.iter().filter(|&&a| a == 0).count()
    }

    /// Spine vertices with a positive even number of children.
    pub fn k(&self) -> usize {
        self.counts.iter().filter(|&&a| a > 0 && a % 2 == 0).count()
    }

    /// Spine vertices with an odd number of children.
    pub fn l(&self) -> usize {
        self.counts.iter().filter(|&&a| a % 2 == 1).count()
    }

    /// Edge count `q = n + sum(a_i)`.
    pub fn size(&self) -> usize {
        self.n() + self.counts.iter().sum::<usize>()
    }

    /// Vertex count `p = q + 1`.
    pub fn order(&self) -> usize {
        self.size() + 1
    }

    pub fn is_caterpillar(&self) -> bool {
        self.k() + self.l() == 2
    }

    /// `b_i` with `a_i = 2 b_i` (even) or `a_i = 2 b_i + 1` (odd).
    pub fn half(&self, i: usize) -> usize {
        self.a(i) / 2
    }

    /// Builds the explicit rooted tree.
    pub fn build(&self) -> RootedTree {
        RootedTree::new(self.clone())
    }
}

impl fmt::Display for TreeSpec {
    /// Writes the compact `RT(0^4,2,6)` form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("RT(")?;
        let mut first = true;
        let mut idx = 0;
        while idx < self.counts.len() {
            let value = self.counts[idx];
            let run = self.counts[idx..].iter().take_while(|&&a| a == value).count();
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if run > 1 {
                write!(f, "{value}^{run}")?;
            } else {
                write!(f, "{value}")?;
            }
            idx += run;
        }
        f.write_str(")")
    }
}

impl FromStr for TreeSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_spec(s)
    }
}

impl TryFrom<Vec<usize>> for TreeSpec {
    type Error = SpecError;

    fn try_from(raw: Vec<usize>) -> Result<Self, Self::Error> {
        TreeSpec::canonicalize(&raw)
    }
}

impl From<TreeSpec> for Vec<usize> {
    fn from(spec: TreeSpec) -> Self {
        spec.counts
    }
}

/// Parses `RT(0^4,2,6)`, `rt( 0,0,0,0,2,6 )` or the bare list `0^4,2,6`.
pub fn parse_spec(text: &str) -> Result<TreeSpec, SpecError> {
    let stripped: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    if stripped.is_empty() {
        return Err(SpecError::Empty);
    }
    let syntax = |pos: usize, msg: &str| SpecError::Syntax {
        pos,
        msg: msg.to_string(),
    };

    let mut body: &[(usize, char)] = &stripped;
    if body.len() >= 2 && body[0].1.eq_ignore_ascii_case(&'r') && body[1].1.eq_ignore_ascii_case(&'t') {
        if body.get(2).map(|c| c.1) != Some('(') {
            return Err(syntax(body.get(2).map_or(text.len(), |c| c.0), "expected '(' after RT"));
        }
        match body.last() {
            Some(&(_, ')')) => {}
            _ => return Err(syntax(text.len(), "missing closing ')'")),
        }
        body = &body[3..body.len() - 1];
        if body.is_empty() {
            return Err(SpecError::Empty);
        }
    }

    let mut counts = Vec::new();
    for item in body.split(|&(_, c)| c == ',') {
        let Some(&(start, _)) = item.first() else {
            let pos = body.first().map_or(0, |c| c.0);
            return Err(syntax(pos, "empty list item"));
        };
        let mut parts = item.split(|&(_, c)| c == '^');
        let base = parse_int(parts.next().unwrap_or(&[]), start)?;
        let reps = match parts.next() {
            Some(exp) => parse_int(exp, start)?,
            None => 1,
        };
        if parts.next().is_some() {
            return Err(syntax(start, "more than one '^' in item"));
        }
        counts.extend(std::iter::repeat_n(base, reps));
    }
    if counts.is_empty() {
        return Err(SpecError::Empty);
    }
    TreeSpec::canonicalize(&counts)
}

fn parse_int(chars: &[(usize, char)], item_start: usize) -> Result<usize, SpecError> {
    let pos = chars.first().map_or(item_start, |c| c.0);
    if chars.is_empty() {
        return Err(SpecError::Syntax {
            pos,
            msg: "expected integer".into(),
        });
    }
    if let Some(&(bad, c)) = chars.iter().find(|(_, c)| !c.is_ascii_digit()) {
        return Err(SpecError::Syntax {
            pos: bad,
            msg: format!("unexpected character {c:?}"),
        });
    }
    let digits: String = chars.iter().map(|&(_, c)| c).collect();
    digits.parse().map_err(|_| SpecError::Syntax {
        pos,
        msg: "integer out of range".into(),
    })
}

/// All canonical specs with `q <= q_max`, ordered by size, then spine
/// length, then counts.
pub fn enumerate_specs(q_max: usize) -> Result<Vec<TreeSpec>, SpecError> {
    if q_max < 4 {
        return Err(SpecError::EmptyRange { q_max });
    }
    let mut out = Vec::new();
    let mut positive = Vec::new();
    // a spine vertex with c children contributes c + 1 edges
    fn grow(min: usize, budget: usize, positive: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if positive.len() >= 2 {
            out.push(positive.clone());
        }
        for c in min..budget {
            positive.push(c);
            grow(c, budget - c - 1, positive, out);
            positive.pop();
        }
    }
    let mut multisets = Vec::new();
    grow(1, q_max, &mut positive, &mut multisets);
    for ms in multisets {
        let used: usize = ms.iter().map(|c| c + 1).sum();
        for zeros in 0..=(q_max - used) {
            let mut raw = vec![0; zeros];
            raw.extend_from_slice(&ms);
            out.push(TreeSpec::canonicalize(&raw).expect("two positive entries"));
        }
    }
    out.sort_by(|a, b| {
        (a.size(), a.n(), a.counts()).cmp(&(b.size(), b.n(), b.counts()))
    });
    Ok(out)
}

/// A vertex of `RT(a_1, ..., a_n)`, named as in `v0`, `v3`, `v3.2`.
///
/// Every non-root vertex also names the edge to its parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Root,
    /// `v_i`, 1-based.
    Spine(usize),
    /// `v_{i,m}`, both 1-based.
    Leaf(usize, usize),
}

impl Vertex {
    pub fn parent(self) -> Option<Vertex> {
        match self {
            Vertex::Root => None,
            Vertex::Spine(_) => Some(Vertex::Root),
            Vertex::Leaf(i, _) => Some(Vertex::Spine(i)),
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Root => f.write_str("v0"),
            Vertex::Spine(i) => write!(f, "v{i}"),
            Vertex::Leaf(i, m) => write!(f, "v{i}.{m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid vertex identifier {0:?}")]
pub struct VertexParseError(pub String);

impl FromStr for Vertex {
    type Err = VertexParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || VertexParseError(s.to_string());
        let rest = s.strip_prefix('v').ok_or_else(err)?;
        let index = |t: &str| -> Result<usize, VertexParseError> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            t.parse().map_err(|_| err())
        };
        match rest.split_once('.') {
            None => match index(rest)? {
                0 => Ok(Vertex::Root),
                i => Ok(Vertex::Spine(i)),
            },
            Some((i, m)) => {
                let (i, m) = (index(i)?, index(m)?);
                if i == 0 || m == 0 {
                    return Err(err());
                }
                Ok(Vertex::Leaf(i, m))
            }
        }
    }
}

impl Serialize for Vertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Explicit vertex and edge structure of a [`TreeSpec`].
///
/// Edges are identified by their child endpoint. `edges()` lists spine edges
/// `e_{0,1..n}` first, then leaf edges grouped by parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    spec: TreeSpec,
    edges: Vec<Vertex>,
}

impl RootedTree {
    pub fn new(spec: TreeSpec) -> Self {
        let n = spec.n();
        let mut edges: Vec<Vertex> = (1..=n).map(Vertex::Spine).collect();
        for i in 1..=n {
            edges.extend((1..=spec.a(i)).map(|m| Vertex::Leaf(i, m)));
        }
        RootedTree { spec, edges }
    }

    pub fn spec(&self) -> &TreeSpec {
        &self.spec
    }

    /// Edge count `q`.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Vertex count `p`.
    pub fn order(&self) -> usize {
        self.edges.len() + 1
    }

    /// Child endpoints of all edges, in search order.
    pub fn edges(&self) -> &[Vertex] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        std::iter::once(Vertex::Root).chain(self.edges.iter().copied())
    }

    pub fn contains(&self, v: Vertex) -> bool {
        match v {
            Vertex::Root => true,
            Vertex::Spine(i) => (1..=self.spec.n()).contains(&i),
            Vertex::Leaf(i, m) => (1..=self.spec.n()).contains(&i) && (1..=self.spec.a(i)).contains(&m),
        }
    }

    /// Whether `v` names an edge of this tree.
    pub fn has_edge(&self, v: Vertex) -> bool {
        v != Vertex::Root && self.contains(v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        match v {
            Vertex::Root => self.spec.n(),
            Vertex::Spine(i) => 1 + self.spec.a(i),
            Vertex::Leaf(..) => 1,
        }
    }

    /// Edges incident to `v`, each named by its child endpoint.
    pub fn incident(&self, v: Vertex) -> Vec<Vertex> {
        match v {
            Vertex::Root => (1..=self.spec.n()).map(Vertex::Spine).collect(),
            Vertex::Spine(i) => std::iter::once(v)
                .chain((1..=self.spec.a(i)).map(|m| Vertex::Leaf(i, m)))
                .collect(),
            Vertex::Leaf(..) => vec![v],
        }
    }

    pub fn is_pendant(&self, v: Vertex) -> bool {
        self.degree(v) == 1
    }

    /// An edge is pendant-incident when its child endpoint is a leaf of the tree.
    pub fn is_pendant_edge(&self, e: Vertex) -> bool {
        self.is_pendant(e)
    }
}
