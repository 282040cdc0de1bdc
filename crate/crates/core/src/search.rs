//! Exhaustive backtracking search for super edge-graceful labelings.
//!
//! Variables are the edges in [`RootedTree::edges`] order: spine edges
//! first, then leaf edges grouped by parent. A vertex sum is checked as soon
//! as its last incident edge is assigned, against the vertex target set and
//! the sums already fixed.
//!
//! Three optional symmetry quotients shrink the space:
//!
//! * leaf permutations: labels under one parent are increasing;
//! * equal spine vertices: among consecutive spine vertices with equal
//!   child counts, parent-edge labels are increasing;
//! * negation: of a labeling `f` and the canonical form of `-f`, only the
//!   lexicographically larger one is kept. Without the spine quotient this is
//!   "the first nonzero label is positive".
//!
//! The permutation quotients act freely (edge labels are distinct), so each
//! representative stands for exactly `prod a_i!` (leaves) times
//! `prod c!` (spine classes of size `c`) labelings. A representative equal
//! to the canonical form of its own negation stands for one negation orbit
//! element instead of two. Counts are re-expanded with these weights.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::labeling::{edge_label_target, vertex_label_target, EdgeLabeling, Label};
use crate::tree::{RootedTree, Vertex};

/// Largest size searched without `override_guard`.
pub const GUARD_MAX_SIZE: usize = 24;
/// Hard limit of the bitset representation.
pub const MAX_SIZE: usize = 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Stop at the first labeling.
    FindOne,
    /// Visit the whole space and count labelings.
    CountAll,
    /// Visit the whole space; report the first labeling, if any.
    ExhaustAll,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub node_budget: u64,
    pub break_negation: bool,
    pub break_leaf_permutations: bool,
    pub break_equal_spine_vertices: bool,
    /// Never label a pendant-incident edge 0.
    pub prune_pendant_zero: bool,
    pub mode: Mode,
    /// Worker threads; the first branching level is split among them.
    pub workers: usize,
    pub override_guard: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: 100_000_000,
            break_negation: true,
            break_leaf_permutations: true,
            break_equal_spine_vertices: true,
            prune_pendant_zero: true,
            mode: Mode::FindOne,
            workers: 1,
            override_guard: false,
        }
    }
}

impl SearchConfig {
    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_budget(mut self, node_budget: u64) -> Self {
        self.node_budget = node_budget;
        self
    }

    /// Sets the three symmetry flags from the low bits of `mask`
    /// (negation, leaves, spine).
    pub fn with_symmetry_mask(mut self, mask: u8) -> Self {
        self.break_negation = mask & 1 != 0;
        self.break_leaf_permutations = mask & 2 != 0;
        self.break_equal_spine_vertices = mask & 4 != 0;
        self
    }

    pub fn flags(&self) -> SymmetryFlags {
        SymmetryFlags {
            negation: self.break_negation,
            leaf_permutations: self.break_leaf_permutations,
            equal_spine_vertices: self.break_equal_spine_vertices,
            pendant_zero: self.prune_pendant_zero,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryFlags {
    pub negation: bool,
    pub leaf_permutations: bool,
    pub equal_spine_vertices: bool,
    pub pendant_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SearchResult {
    Found(EdgeLabeling),
    ExhaustedNone,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub result: SearchResult,
    pub nodes_visited: u64,
    /// Number of labelings after re-expanding the symmetry quotients;
    /// only in [`Mode::CountAll`].
    pub count: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("refusing to search a tree with {q} edges (limit {GUARD_MAX_SIZE}; pass the override to force)")]
    GuardRefused { q: usize },
    #[error("trees with more than {MAX_SIZE} edges are not supported (got {q})")]
    TooLarge { q: usize },
    #[error("node budget must be at least 1")]
    ZeroBudget,
    #[error("node budget exhausted after {nodes_visited} nodes")]
    BudgetExceeded { nodes_visited: u64 },
    #[error("a super edge-graceful labeling exists, no certificate")]
    LabelingExists(EdgeLabeling),
}

/// Searches according to `config.mode`.
pub fn search(tree: &RootedTree, config: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    let q = tree.size();
    if q > MAX_SIZE {
        return Err(SearchError::TooLarge { q });
    }
    if q > GUARD_MAX_SIZE && !config.override_guard {
        return Err(SearchError::GuardRefused { q });
    }
    if config.node_budget == 0 {
        return Err(SearchError::ZeroBudget);
    }
    let problem = Problem::new(tree, config);
    let merged = problem.run(config);
    let result = if merged.exceeded {
        SearchResult::BudgetExceeded
    } else {
        match merged.first {
            Some(values) => SearchResult::Found(problem.labeling(&values)),
            None => SearchResult::ExhaustedNone,
        }
    };
    Ok(SearchOutcome {
        result,
        nodes_visited: merged.nodes,
        count: (config.mode == Mode::CountAll && !merged.exceeded).then_some(merged.count),
    })
}

/// Exact number of super edge-graceful labelings of `tree`.
pub fn count_all(tree: &RootedTree, config: &SearchConfig) -> Result<u128, SearchError> {
    let config = config.clone().with_mode(Mode::CountAll);
    let outcome = search(tree, &config)?;
    match outcome.count {
        Some(c) => Ok(c),
        None => Err(SearchError::BudgetExceeded {
            nodes_visited: outcome.nodes_visited,
        }),
    }
}

/// Record of a completed search that found no labeling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub spec: String,
    pub q: usize,
    pub p: usize,
    pub edge_target: Vec<Label>,
    pub vertex_target: Vec<Label>,
    pub flags: SymmetryFlags,
    pub nodes_visited: u64,
    pub outcome: String,
    pub version: String,
}

impl Certificate {
    pub(crate) fn new(tree: &RootedTree, config: &SearchConfig, outcome: &SearchOutcome) -> Self {
        Certificate {
            spec: tree.spec().to_string(),
            q: tree.size(),
            p: tree.order(),
            edge_target: edge_label_target(tree.size()),
            vertex_target: vertex_label_target(tree.order()),
            flags: config.flags(),
            nodes_visited: outcome.nodes_visited,
            outcome: "none".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// File name used when certificates are stored in a directory.
    pub fn file_name(&self) -> String {
        let safe: String = self
            .spec
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        format!("{safe}.json")
    }
}

/// Proves non-existence by a complete search.
pub fn certify_not_seg(tree: &RootedTree, config: &SearchConfig) -> Result<Certificate, SearchError> {
    let config = config.clone().with_mode(Mode::ExhaustAll);
    let outcome = search(tree, &config)?;
    match &outcome.result {
        SearchResult::ExhaustedNone => Ok(Certificate::new(tree, &config, &outcome)),
        SearchResult::Found(f) => Err(SearchError::LabelingExists(f.clone())),
        SearchResult::BudgetExceeded => Err(SearchError::BudgetExceeded {
            nodes_visited: outcome.nodes_visited,
        }),
    }
}

#[derive(Debug, Clone, Copy)]
enum Var {
    Spine { i: usize },
    Leaf { i: usize, last: bool },
}

struct Problem<'t> {
    tree: &'t RootedTree,
    n: usize,
    counts: Vec<usize>,
    vars: Vec<Var>,
    /// Whether the variable's child endpoint is a pendant vertex.
    pendant: Vec<bool>,
    /// For leaf variables, whether the previous variable shares the parent.
    follows_sibling: Vec<bool>,
    /// Spine vertex `i` (0-based) has the same child count as `i - 1`.
    same_as_prev: Vec<bool>,
    /// Maximal runs of equal child counts, as 0-based spine ranges.
    classes: Vec<std::ops::Range<usize>>,
    /// First variable index of each spine vertex's leaf group.
    leaf_start: Vec<usize>,
    edge_values: Vec<Label>,
    edge_offset: Label,
    vertex_half: Label,
    vertex_odd: bool,
    weight: u128,
}

#[derive(Debug, Default, Clone)]
struct BranchResult {
    nodes: u64,
    exceeded: bool,
    first: Option<Vec<Label>>,
    count: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum NegStatus {
    Undecided,
    /// Representative strictly larger than its negation's canonical form.
    Greater,
    /// Spine parts tie; compare the whole labeling at the end.
    Tied,
}

struct State {
    values: Vec<Label>,
    used_edges: u128,
    used_vertices: u128,
    spine_sum: Vec<Label>,
    root_sum: Label,
    neg: NegStatus,
    nodes: u64,
    cap: u64,
    exceeded: bool,
    first: Option<Vec<Label>>,
    count: u128,
}

fn factorial(x: usize) -> u128 {
    (1..=x as u128).product()
}

impl<'t> Problem<'t> {
    fn new(tree: &'t RootedTree, config: &SearchConfig) -> Self {
        let counts = tree.spec().counts().to_vec();
        let n = counts.len();
        let mut vars = Vec::with_capacity(tree.size());
        let mut pendant = Vec::with_capacity(tree.size());
        let mut follows_sibling = Vec::with_capacity(tree.size());
        let mut leaf_start = vec![0; n];
        for (idx, &e) in tree.edges().iter().enumerate() {
            match e {
                Vertex::Spine(i) => vars.push(Var::Spine { i: i - 1 }),
                Vertex::Leaf(i, m) => {
                    if m == 1 {
                        leaf_start[i - 1] = idx;
                    }
                    vars.push(Var::Leaf {
                        i: i - 1,
                        last: m == counts[i - 1],
                    })
                }
                Vertex::Root => unreachable!(),
            }
            pendant.push(tree.is_pendant(e));
            follows_sibling.push(matches!(e, Vertex::Leaf(_, m) if m > 1));
        }
        let same_as_prev: Vec<bool> = (0..n).map(|i| i > 0 && counts[i] == counts[i - 1]).collect();
        let mut classes = Vec::new();
        let mut start = 0;
        for i in 1..=n {
            if i == n || counts[i] != counts[start] {
                classes.push(start..i);
                start = i;
            }
        }
        let mut weight = 1u128;
        if config.break_leaf_permutations {
            weight *= counts.iter().map(|&a| factorial(a)).product::<u128>();
        }
        if config.break_equal_spine_vertices {
            weight *= classes.iter().map(|c| factorial(c.len())).product::<u128>();
        }
        let q = tree.size();
        Problem {
            tree,
            n,
            counts,
            vars,
            pendant,
            follows_sibling,
            same_as_prev,
            classes,
            leaf_start,
            edge_values: edge_label_target(q),
            edge_offset: (q / 2) as Label,
            vertex_half: (tree.order() / 2) as Label,
            vertex_odd: tree.order() % 2 == 1,
            weight,
        }
    }

    fn labeling(&self, values: &[Label]) -> EdgeLabeling {
        self.tree.edges().iter().copied().zip(values.iter().copied()).collect()
    }

    fn edge_bit(&self, v: Label) -> u128 {
        1u128 << (v + self.edge_offset) as u32
    }

    fn vertex_bit(&self, v: Label) -> Option<u128> {
        if v.abs() > self.vertex_half || (v == 0 && !self.vertex_odd) {
            return None;
        }
        Some(1u128 << (v + self.vertex_half) as u32)
    }

    /// Runs all first-level branches and merges them in branch order, so the
    /// result matches a sequential depth-first search exactly.
    fn run(&self, config: &SearchConfig) -> BranchResult {
        let branch_cap = config.node_budget - 1;
        let firsts: Vec<Label> = self.edge_values.clone();
        let branches: Vec<BranchResult> = if config.workers <= 1 {
            let mut out = Vec::new();
            let mut used = 1u64;
            for &v in &firsts {
                let r = self.branch(config, v, config.node_budget - used, None, 0);
                used += r.nodes;
                let stop = r.exceeded || (config.mode == Mode::FindOne && r.first.is_some());
                out.push(r);
                if stop {
                    break;
                }
            }
            out
        } else {
            let winner = AtomicUsize::new(usize::MAX);
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(config.workers)
                .build()
                .expect("thread pool");
            pool.install(|| {
                firsts
                    .par_iter()
                    .enumerate()
                    .map(|(idx, &v)| self.branch(config, v, branch_cap, Some(&winner), idx))
                    .collect()
            })
        };

        let mut merged = BranchResult {
            nodes: 1,
            ..Default::default()
        };
        for r in branches {
            if r.exceeded || merged.nodes + r.nodes > config.node_budget {
                merged.nodes = config.node_budget;
                merged.exceeded = true;
                return merged;
            }
            merged.nodes += r.nodes;
            merged.count += r.count;
            if merged.first.is_none() {
                merged.first = r.first;
            }
            if config.mode == Mode::FindOne && merged.first.is_some() {
                break;
            }
        }
        merged
    }

    fn branch(
        &self,
        config: &SearchConfig,
        first: Label,
        cap: u64,
        winner: Option<&AtomicUsize>,
        index: usize,
    ) -> BranchResult {
        let mut state = State {
            values: vec![0; self.vars.len()],
            used_edges: 0,
            used_vertices: 0,
            spine_sum: vec![0; self.n],
            root_sum: 0,
            neg: NegStatus::Undecided,
            nodes: 0,
            cap,
            exceeded: false,
            first: None,
            count: 0,
        };
        let cancel = winner.map(|w| (w, index));
        self.try_assign(config, &mut state, 0, first, cancel);
        if let (Some(w), Some(_)) = (winner, &state.first) {
            if config.mode == Mode::FindOne {
                w.fetch_min(index, Ordering::Relaxed);
            }
        }
        BranchResult {
            nodes: state.nodes,
            exceeded: state.exceeded,
            first: state.first,
            count: state.count,
        }
    }

    /// Whether the search below this point can be abandoned.
    fn halted(&self, config: &SearchConfig, state: &State, cancel: Option<(&AtomicUsize, usize)>) -> bool {
        if state.exceeded {
            return true;
        }
        if config.mode == Mode::FindOne {
            if state.first.is_some() {
                return true;
            }
            if let Some((w, idx)) = cancel {
                if state.nodes.is_multiple_of(1024) && w.load(Ordering::Relaxed) < idx {
                    return true;
                }
            }
        }
        false
    }

    fn admissible(&self, config: &SearchConfig, state: &State, depth: usize, v: Label) -> bool {
        if state.used_edges & self.edge_bit(v) != 0 {
            return false;
        }
        if config.prune_pendant_zero && v == 0 && self.pendant[depth] {
            return false;
        }
        match self.vars[depth] {
            Var::Leaf { .. } => {
                if config.break_leaf_permutations && self.follows_sibling[depth] && v <= state.values[depth - 1] {
                    return false;
                }
            }
            Var::Spine { i } => {
                if config.break_equal_spine_vertices && self.same_as_prev[i] && v <= state.values[depth - 1] {
                    return false;
                }
                if config.break_negation
                    && !config.break_equal_spine_vertices
                    && v < 0
                    && state.values[..depth].iter().all(|&x| x == 0)
                {
                    return false;
                }
            }
        }
        true
    }

    fn mark_vertex(&self, state: &mut State, label: Label, undo: &mut Vec<u128>) -> bool {
        match self.vertex_bit(label) {
            Some(bit) if state.used_vertices & bit == 0 => {
                state.used_vertices |= bit;
                undo.push(bit);
                true
            }
            _ => false,
        }
    }

    fn try_assign(
        &self,
        config: &SearchConfig,
        state: &mut State,
        depth: usize,
        v: Label,
        cancel: Option<(&AtomicUsize, usize)>,
    ) {
        if !self.admissible(config, state, depth, v) {
            return;
        }
        state.nodes += 1;
        if state.nodes > state.cap {
            state.exceeded = true;
            return;
        }
        let edge_bit = self.edge_bit(v);
        state.used_edges |= edge_bit;
        state.values[depth] = v;
        let mut undo: Vec<u128> = Vec::with_capacity(3);
        let saved_neg = state.neg;
        let ok = match self.vars[depth] {
            Var::Spine { i } => {
                state.spine_sum[i] = v;
                state.root_sum += v;
                let mut ok = self.counts[i] != 0 || self.mark_vertex(state, v, &mut undo);
                if ok && i + 1 == self.n {
                    ok = self.mark_vertex(state, state.root_sum, &mut undo) && self.spine_negation(config, state);
                }
                ok
            }
            Var::Leaf { i, last } => {
                state.spine_sum[i] += v;
                self.mark_vertex(state, v, &mut undo) && (!last || self.mark_vertex(state, state.spine_sum[i], &mut undo))
            }
        };
        if ok {
            if depth + 1 == self.vars.len() {
                self.record_solution(config, state);
            } else {
                for idx in 0..self.edge_values.len() {
                    if self.halted(config, state, cancel) {
                        break;
                    }
                    let next = self.edge_values[idx];
                    self.try_assign(config, state, depth + 1, next, cancel);
                }
            }
        }
        for bit in undo {
            state.used_vertices &= !bit;
        }
        match self.vars[depth] {
            Var::Spine { i } => {
                state.spine_sum[i] = 0;
                state.root_sum -= v;
            }
            Var::Leaf { i, .. } => state.spine_sum[i] -= v,
        }
        state.neg = saved_neg;
        state.used_edges &= !edge_bit;
    }

    /// Negation check once every spine edge is labeled, when the spine
    /// quotient is on. Returns false to prune.
    fn spine_negation(&self, config: &SearchConfig, state: &mut State) -> bool {
        if !(config.break_negation && config.break_equal_spine_vertices) {
            return true;
        }
        let spine = &state.values[..self.n];
        let negated = self.canonical_spine(spine);
        match spine.cmp(&negated[..]) {
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Greater => {
                state.neg = NegStatus::Greater;
                true
            }
            std::cmp::Ordering::Equal => {
                state.neg = NegStatus::Tied;
                true
            }
        }
    }

    /// Spine part of the canonical form of `-f`.
    fn canonical_spine(&self, spine: &[Label]) -> Vec<Label> {
        let mut out: Vec<Label> = spine.iter().map(|&x| -x).collect();
        for class in &self.classes {
            out[class.clone()].sort_unstable();
        }
        out
    }

    /// Full canonical form of `-f` under the enabled permutation quotients.
    fn canonical_negation(&self, config: &SearchConfig, values: &[Label]) -> Vec<Label> {
        let leaves = |i: usize| -> Vec<Label> {
            let start = self.leaf_start[i];
            let mut group: Vec<Label> = values[start..start + self.counts[i]].iter().map(|&x| -x).collect();
            if config.break_leaf_permutations {
                group.sort_unstable();
            }
            group
        };
        let mut order: Vec<usize> = (0..self.n).collect();
        if config.break_equal_spine_vertices {
            for class in &self.classes {
                order[class.clone()].sort_by_key(|&i| -values[i]);
            }
        }
        let mut out: Vec<Label> = order.iter().map(|&i| -values[i]).collect();
        for &i in &order {
            out.extend(leaves(i));
        }
        out
    }

    fn record_solution(&self, config: &SearchConfig, state: &mut State) {
        let negation_factor: u128 = if !config.break_negation {
            1
        } else if !config.break_equal_spine_vertices {
            2
        } else {
            match state.neg {
                NegStatus::Greater => 2,
                NegStatus::Tied | NegStatus::Undecided => {
                    let negated = self.canonical_negation(config, &state.values);
                    match state.values.cmp(&negated) {
                        std::cmp::Ordering::Less => return,
                        std::cmp::Ordering::Equal => 1,
                        std::cmp::Ordering::Greater => 2,
                    }
                }
            }
        };
        state.count += negation_factor * self.weight;
        if state.first.is_none() {
            state.first = Some(state.values.clone());
        }
    }
}
