//! Membership evaluation for class expressions: a compiled form of the
//! expression tree, a concurrent memoization cache keyed by canonical class
//! identity, and the node-budget plumbing shared by the exponential searches.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};
use std::sync::Arc;

use dashmap::DashMap;
use thiserror::Error;

use crate::class::ClassExpr;
use crate::grid::GridMatrix;
use crate::perm::Permutation;

/// Default node budget for a single membership search. Exceeding the budget
/// is an error that signals "raise the budget", never a silent `false`.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Only permutations up to this length are memoized. Longer permutations are
/// almost always queried exactly once (as enumeration candidates), while the
/// short prefix patterns probed by the merge and gridding searches are
/// queried millions of times.
const CACHE_MAX_LEN: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("node budget of {limit} exhausted; raise the budget and retry")]
pub struct BudgetExceeded {
    pub limit: u64,
}

/// A countdown of search nodes, shared by every search a single top-level
/// query spawns. Cheap to share across threads.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    #[inline]
    pub fn charge(&self) -> Result<(), BudgetExceeded> {
        let used = self.used.fetch_add(1, Ordering::Relaxed);
        if used >= self.limit {
            Err(BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_NODE_BUDGET)
    }
}

pub(crate) struct OracleCore {
    ids: DashMap<String, u32>,
    next_id: AtomicU32,
    /// `None` disables memoization (used to cross-check cached evaluation).
    cache: Option<DashMap<(u32, Permutation), bool>>,
}

impl OracleCore {
    fn intern(&self, canonical: &str) -> u32 {
        if let Some(id) = self.ids.get(canonical) {
            return *id;
        }
        *self
            .ids
            .entry(canonical.to_string())
            .or_insert_with(|| self.next_id.fetch_add(1, Ordering::Relaxed))
    }
}

/// Compiles expressions and owns the shared membership cache. Classes
/// compiled by the same oracle share cache entries whenever subexpressions
/// print identically.
pub struct Oracle {
    core: Arc<OracleCore>,
}

impl Oracle {
    pub fn new() -> Self {
        Oracle {
            core: Arc::new(OracleCore {
                ids: DashMap::new(),
                next_id: AtomicU32::new(0),
                cache: Some(DashMap::new()),
            }),
        }
    }

    /// An oracle that never memoizes. Results must agree with the cached
    /// variant; the test suite checks this.
    pub fn uncached() -> Self {
        Oracle {
            core: Arc::new(OracleCore {
                ids: DashMap::new(),
                next_id: AtomicU32::new(0),
                cache: None,
            }),
        }
    }

    pub fn compile(&self, expr: &ClassExpr) -> CompiledClass {
        let node = compile_expr(&self.core, expr);
        CompiledClass {
            core: Arc::clone(&self.core),
            canonical: expr.canonical(),
            node,
        }
    }

    /// One-off membership query; compiles on the fly.
    pub fn member(
        &self,
        expr: &ClassExpr,
        p: &Permutation,
        budget: &Budget,
    ) -> Result<bool, BudgetExceeded> {
        self.compile(expr).member(p, budget)
    }

    pub fn cache_len(&self) -> usize {
        self.core.cache.as_ref().map_or(0, |c| c.len())
    }
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new()
    }
}

/// A class expression compiled for repeated membership queries.
#[derive(Clone)]
pub struct CompiledClass {
    core: Arc<OracleCore>,
    canonical: String,
    node: Arc<Node>,
}

impl CompiledClass {
    /// Membership per the downward-closure semantics of each connective:
    /// avoidance of every basis element, listed membership for finite sets,
    /// a coloring search for merges, a gridding search for grid classes,
    /// componentwise membership for closures, and conjunction for
    /// intersections. ε is a member of every class except the empty one.
    pub fn member(&self, p: &Permutation, budget: &Budget) -> Result<bool, BudgetExceeded> {
        member_node(&self.core, &self.node, p, budget)
    }

    pub fn canonical(&self) -> &str {
        &self.canonical
    }

    pub(crate) fn core(&self) -> &OracleCore {
        &self.core
    }

    pub(crate) fn node(&self) -> &Arc<Node> {
        &self.node
    }
}

pub(crate) struct Node {
    pub(crate) id: u32,
    pub(crate) kind: NodeKind,
}

pub(crate) enum NodeKind {
    Avoid(Vec<Permutation>),
    FiniteSet(BTreeSet<Permutation>),
    Merge(Arc<Node>, Arc<Node>),
    Grid(CompiledGrid),
    SumClosure(Arc<Node>),
    SkewClosure(Arc<Node>),
    Intersection(Vec<Arc<Node>>),
}

/// How a grid cell's class can be checked during the gridding search.
/// Monotone classes and finite sets come up constantly and admit direct
/// scans over a value range, with no pattern extraction at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum CellKind {
    /// Av(21): cell content must be increasing.
    Increasing,
    /// Av(12): cell content must be decreasing.
    Decreasing,
    /// A finite set whose longest member has this length. Up to one entry is
    /// always fine (every nonempty downset contains ε, and the singleton
    /// permutation too unless the bound is 0).
    Finite(u8),
    General,
}

pub(crate) fn classify_cell(node: &Node) -> CellKind {
    match &node.kind {
        NodeKind::Avoid(basis) if basis.len() == 1 => match basis[0].values() {
            [2, 1] => CellKind::Increasing,
            [1, 2] => CellKind::Decreasing,
            _ => CellKind::General,
        },
        NodeKind::FiniteSet(members) => {
            let longest = members.iter().map(|p| p.len()).max().unwrap_or(0);
            CellKind::Finite(longest as u8)
        }
        _ => CellKind::General,
    }
}

/// Grid cells in Cartesian layout: index `row * cols + col`, column 0 at the
/// left, row 0 at the bottom.
pub(crate) struct CompiledGrid {
    pub(crate) cols: usize,
    pub(crate) rows: usize,
    pub(crate) cells: Vec<Option<(Arc<Node>, CellKind)>>,
}

impl CompiledGrid {
    pub(crate) fn cell(&self, col: usize, row: usize) -> Option<&(Arc<Node>, CellKind)> {
        self.cells[row * self.cols + col].as_ref()
    }

    pub(crate) fn column_cells(&self, col: usize) -> Vec<(usize, Arc<Node>, CellKind)> {
        (0..self.rows)
            .filter_map(|row| {
                self.cell(col, row)
                    .map(|(n, kind)| (row, Arc::clone(n), *kind))
            })
            .collect()
    }
}

fn compile_expr(core: &Arc<OracleCore>, expr: &ClassExpr) -> Arc<Node> {
    let id = core.intern(&expr.canonical());
    let kind = match expr {
        ClassExpr::Avoid(basis) => NodeKind::Avoid(basis.clone()),
        ClassExpr::FiniteSet(members) => NodeKind::FiniteSet(members.clone()),
        ClassExpr::Merge(l, r) => NodeKind::Merge(compile_expr(core, l), compile_expr(core, r)),
        ClassExpr::Grid(m) => NodeKind::Grid(compile_grid(core, m)),
        ClassExpr::SumClosure(inner) => NodeKind::SumClosure(compile_expr(core, inner)),
        ClassExpr::SkewClosure(inner) => NodeKind::SkewClosure(compile_expr(core, inner)),
        ClassExpr::Intersection(parts) => {
            NodeKind::Intersection(parts.iter().map(|p| compile_expr(core, p)).collect())
        }
    };
    Arc::new(Node { id, kind })
}

pub(crate) fn compile_grid(core: &Arc<OracleCore>, m: &GridMatrix) -> CompiledGrid {
    let mut cells = Vec::with_capacity(m.cols() * m.rows());
    for row in 0..m.rows() {
        for col in 0..m.cols() {
            cells.push(m.cell(col, row).map(|e| {
                let node = compile_expr(core, e);
                let kind = classify_cell(&node);
                (node, kind)
            }));
        }
    }
    CompiledGrid {
        cols: m.cols(),
        rows: m.rows(),
        cells,
    }
}

/// Membership of the pattern of a raw value sequence, without renormalizing
/// when the node can be decided directly on the slice. Avoidance bases only
/// need relative order, which makes the prefix tests inside the merge and
/// gridding searches allocation-free; everything else renormalizes and goes
/// through the cache.
pub(crate) fn slice_member(
    core: &OracleCore,
    node: &Node,
    values: &[u8],
    budget: &Budget,
) -> Result<bool, BudgetExceeded> {
    match &node.kind {
        // callers charge per search node, which covers these direct scans
        NodeKind::Avoid(basis) => Ok(basis
            .iter()
            .all(|b| !crate::perm::contains_raw(values, b.values()))),
        _ => member_node(core, node, &Permutation::pattern_of(values), budget),
    }
}

/// Check a grid cell against the entries of `window` whose values lie in
/// `lo..=hi`, without materializing the cell content when the cell kind
/// allows a direct scan.
#[allow(clippy::too_many_arguments)]
pub(crate) fn cell_range_member(
    core: &OracleCore,
    node: &Node,
    kind: CellKind,
    window: &[u8],
    lo: u8,
    hi: u8,
    buf: &mut Vec<u8>,
    budget: &Budget,
) -> Result<bool, BudgetExceeded> {
    let in_range = |v: u8| v >= lo && v <= hi;
    match kind {
        CellKind::Increasing => {
            let mut last = 0u8;
            for &v in window {
                if in_range(v) {
                    if v < last {
                        return Ok(false);
                    }
                    last = v;
                }
            }
            Ok(true)
        }
        CellKind::Decreasing => {
            let mut last = u8::MAX;
            for &v in window {
                if in_range(v) {
                    if v > last {
                        return Ok(false);
                    }
                    last = v;
                }
            }
            Ok(true)
        }
        CellKind::Finite(longest) => {
            let count = window.iter().filter(|&&v| in_range(v)).count();
            if count > longest as usize {
                return Ok(false);
            }
            if count <= 1 {
                // ε always fits, and so does a single entry when the set has
                // any member of length 1 (downward closure guarantees it)
                return Ok(count == 0 || longest >= 1);
            }
            buf.clear();
            buf.extend(window.iter().copied().filter(|&v| in_range(v)));
            slice_member(core, node, buf, budget)
        }
        CellKind::General => {
            buf.clear();
            buf.extend(window.iter().copied().filter(|&v| in_range(v)));
            if buf.is_empty() {
                return Ok(true);
            }
            slice_member(core, node, buf, budget)
        }
    }
}

pub(crate) fn member_node(
    core: &OracleCore,
    node: &Node,
    p: &Permutation,
    budget: &Budget,
) -> Result<bool, BudgetExceeded> {
    budget.charge()?;
    let cacheable = p.len() <= CACHE_MAX_LEN;
    if cacheable {
        if let Some(cache) = &core.cache {
            if let Some(hit) = cache.get(&(node.id, p.clone())) {
                return Ok(*hit);
            }
        }
    }
    let result = match &node.kind {
        NodeKind::Avoid(basis) => basis.iter().all(|b| p.avoids(b)),
        NodeKind::FiniteSet(members) => members.contains(p),
        NodeKind::Merge(left, right) => {
            crate::merge::search(core, left, core, right, p, budget)?.is_some()
        }
        NodeKind::Grid(grid) => crate::grid::search_compiled(core, grid, p, budget)?.is_some(),
        NodeKind::SumClosure(inner) => {
            let mut ok = true;
            for component in p.sum_components() {
                if !member_node(core, inner, &component, budget)? {
                    ok = false;
                    break;
                }
            }
            ok
        }
        NodeKind::SkewClosure(inner) => {
            let mut ok = true;
            for component in p.skew_components() {
                if !member_node(core, inner, &component, budget)? {
                    ok = false;
                    break;
                }
            }
            ok
        }
        NodeKind::Intersection(parts) => {
            let mut ok = true;
            for part in parts {
                if !member_node(core, part, p, budget)? {
                    ok = false;
                    break;
                }
            }
            ok
        }
    };
    if cacheable {
        if let Some(cache) = &core.cache {
            cache.insert((node.id, p.clone()), result);
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn av(s: &str) -> ClassExpr {
        ClassExpr::av1(s)
    }

    #[test]
    fn avoidance_membership() {
        let oracle = Oracle::new();
        let budget = Budget::default();
        let c = oracle.compile(&av("321"));
        assert!(!c.member(&p("321"), &budget).unwrap());
        assert!(c.member(&p("312"), &budget).unwrap());
        assert!(c.member(&Permutation::empty(), &budget).unwrap());
    }

    #[test]
    fn finite_set_membership() {
        let oracle = Oracle::new();
        let budget = Budget::default();
        let c = oracle.compile(&ClassExpr::finite_set([p("1")]));
        assert!(c.member(&Permutation::empty(), &budget).unwrap());
        assert!(c.member(&p("1"), &budget).unwrap());
        assert!(!c.member(&p("12"), &budget).unwrap());

        let empty = oracle.compile(&ClassExpr::finite_set([]));
        assert!(!empty.member(&Permutation::empty(), &budget).unwrap());
    }

    #[test]
    fn sum_closure_membership() {
        let oracle = Oracle::new();
        let budget = Budget::default();
        // layered permutations: sums of decreasing runs
        let layered = oracle.compile(&ClassExpr::sum_closure(av("12")));
        assert!(layered.member(&p("2134"), &budget).unwrap());
        assert!(layered.member(&p("321"), &budget).unwrap());
        assert!(layered.member(&p("132"), &budget).unwrap()); // 1 ⊕ 21
        assert!(!layered.member(&p("312"), &budget).unwrap());
        assert!(!layered.member(&p("2413"), &budget).unwrap());
        assert!(layered.member(&Permutation::empty(), &budget).unwrap());
    }

    #[test]
    fn skew_closure_membership() {
        let oracle = Oracle::new();
        let budget = Budget::default();
        let c = oracle.compile(&ClassExpr::skew_closure(av("21")));
        // skew sums of increasing runs
        assert!(c.member(&p("3412"), &budget).unwrap());
        assert!(!c.member(&p("213"), &budget).unwrap());
    }

    #[test]
    fn intersection_membership() {
        let oracle = Oracle::new();
        let budget = Budget::default();
        let c = oracle.compile(&ClassExpr::intersection(vec![av("12"), av("21")]).unwrap());
        assert!(c.member(&p("1"), &budget).unwrap());
        assert!(!c.member(&p("12"), &budget).unwrap());
        assert!(!c.member(&p("21"), &budget).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let oracle = Oracle::new();
        let tiny = Budget::new(2);
        let c = oracle.compile(&ClassExpr::merge(av("21"), av("12")));
        let err = c.member(&p("4321"), &tiny);
        assert_eq!(err, Err(BudgetExceeded { limit: 2 }));
    }

    #[test]
    fn structurally_equal_expressions_share_cache() {
        let oracle = Oracle::new();
        let budget = Budget::default();
        let a = oracle.compile(&av("321"));
        let b = oracle.compile(&av("321"));
        a.member(&p("21"), &budget).unwrap();
        let before = oracle.cache_len();
        b.member(&p("21"), &budget).unwrap();
        assert_eq!(oracle.cache_len(), before);
    }
}
