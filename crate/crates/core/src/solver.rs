//! Maximum `A`-good sets and maximum `d`-degenerate induced subgraphs.
//!
//! `f(G; A)` is the largest `Y` with `G[Y]` `(k, A ∩ Y)`-degenerate for
//! `k = 3`; `α_d(G)` is the same quantity with `A = ∅` and `k = d`. Both go
//! through one engine. Three routes are provided: a brute-force bitmask
//! oracle, an exact branch and bound, and a greedy delete-and-collect
//! heuristic. Every result carries an ordering that is re-checked by
//! [`verify_certificate`] before it is returned.

use std::cmp::Reverse;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degeneracy::is_ka_good;
use crate::fraction::Fraction;
use crate::graph::{Graph, Ordering, VertexSet};
use crate::plane::PlaneGraph;
use crate::special::tau;

/// Largest graph the brute-force oracle accepts.
pub const ORACLE_MAX_VERTICES: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("oracle is limited to {ORACLE_MAX_VERTICES} vertices, got {0}")]
    TooLarge(usize),
    #[error("vertex set {0:?} is not usable in this plane graph")]
    NotUsable(Vec<usize>),
    #[error("search budget exhausted after {nodes} nodes; best value {lower_bound} is only a lower bound")]
    Inexact { nodes: u64, lower_bound: usize },
    #[error("certificate for witness {0:?} failed verification")]
    BadCertificate(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Oracle,
    BranchAndBound,
    Heuristic,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub optimum: usize,
    pub witness: VertexSet,
    /// `A`-vertices of the witness first, then every other vertex after at
    /// most `k` of its neighbours.
    pub certificate: Ordering,
    pub stats: SearchStats,
    pub method: Method,
    /// False when the value is only known to be a lower bound.
    pub exact: bool,
}

/// Limits for the branch and bound; `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }
}

/// Checks an ordering against the definition by direct counting: it orders
/// exactly `y`, puts `a ∩ y` first, and every vertex of `y - a` has at most
/// `k` neighbours in `y` before it.
pub fn verify_certificate(g: &Graph, a: &VertexSet, y: &VertexSet, ordering: &Ordering, k: usize) -> bool {
    let seq = ordering.as_slice();
    if seq.len() != y.len() || seq.iter().any(|&v| !y.contains(v)) {
        return false;
    }
    let mut placed = vec![false; g.n()];
    let mut seen_non_a = false;
    for &v in seq {
        if placed[v] {
            return false;
        }
        if a.contains(v) {
            if seen_non_a {
                return false;
            }
        } else {
            seen_non_a = true;
            let back = g.neighbors(v).iter().filter(|&&w| placed[w]).count();
            if back > k {
                return false;
            }
        }
        placed[v] = true;
    }
    true
}

fn finish(
    g: &Graph,
    a: &VertexSet,
    k: usize,
    witness: VertexSet,
    stats: SearchStats,
    method: Method,
    exact: bool,
) -> Result<SolveResult, SolveError> {
    let certificate = is_ka_good(g, a, &witness, k).ok_or_else(|| SolveError::BadCertificate(witness.to_vec()))?;
    finish_with(g, a, k, witness, certificate, stats, method, exact)
}

#[allow(clippy::too_many_arguments)]
fn finish_with(
    g: &Graph,
    a: &VertexSet,
    k: usize,
    witness: VertexSet,
    certificate: Ordering,
    stats: SearchStats,
    method: Method,
    exact: bool,
) -> Result<SolveResult, SolveError> {
    if !verify_certificate(g, a, &witness, &certificate, k) {
        return Err(SolveError::BadCertificate(witness.to_vec()));
    }
    Ok(SolveResult {
        optimum: witness.len(),
        witness,
        certificate,
        stats,
        method,
        exact,
    })
}

/// Exhaustive search over subsets in decreasing size, with its own bitmask
/// peeling. Independent of the branch and bound.
pub fn alpha_oracle(g: &Graph, a: &VertexSet, k: usize) -> Result<SolveResult, SolveError> {
    let n = g.n();
    if n > ORACLE_MAX_VERTICES {
        return Err(SolveError::TooLarge(n));
    }
    let start = Instant::now();
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let a_mask: u32 = a.iter().fold(0, |m, v| m | (1 << v));
    let mut nodes = 0u64;

    // peel order of `mask`, or None if a non-A vertex is stuck
    let peel = |mask: u32| -> Option<Vec<usize>> {
        let mut rest = mask;
        let mut order = Vec::new();
        while rest & !a_mask != 0 {
            let mut cand = rest & !a_mask;
            let mut found = None;
            while cand != 0 {
                let v = cand.trailing_zeros() as usize;
                if (adj[v] & rest).count_ones() as usize <= k {
                    found = Some(v);
                    break;
                }
                cand &= cand - 1;
            }
            let v = found?;
            rest &= !(1 << v);
            order.push(v);
        }
        let mut seq: Vec<usize> = (0..n).filter(|&v| rest & (1 << v) != 0).collect();
        seq.extend(order.into_iter().rev());
        Some(seq)
    };

    for size in (0..=n).rev() {
        for mask in subsets_of_size(n, size) {
            nodes += 1;
            if let Some(seq) = peel(mask) {
                let witness = VertexSet::from_vertices(n, (0..n).filter(|&v| mask & (1 << v) != 0)).expect("in range");
                let stats = SearchStats {
                    nodes,
                    elapsed: start.elapsed(),
                };
                let cert = Ordering::new(seq).expect("distinct");
                return finish_with(g, a, k, witness, cert, stats, Method::Oracle, true);
            }
        }
    }
    unreachable!("the empty set is always good")
}

/// All `size`-subsets of `0..n` as bitmasks, in increasing numeric order.
fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = u32> {
    let limit: u64 = 1u64 << n;
    let first: u64 = if size == 0 { 0 } else { (1u64 << size) - 1 };
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= limit {
            return None;
        }
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur as u32)
    })
}

/// Delete-and-collect heuristic: collect every eligible vertex, and when
/// stuck delete the vertex that makes the most vertices eligible (ties by
/// larger degree, then smaller id).
pub fn greedy_heuristic(g: &Graph, a: &VertexSet, k: usize) -> SolveResult {
    let start = Instant::now();
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut deleted = VertexSet::new(n);
    let mut nodes = 0u64;
    let remove = |v: usize, alive: &mut Vec<bool>, deg: &mut Vec<usize>| {
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
            }
        }
    };
    loop {
        nodes += 1;
        // collect
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..n {
                if alive[v] && !a.contains(v) && deg[v] <= k {
                    remove(v, &mut alive, &mut deg);
                    changed = true;
                }
            }
        }
        if !(0..n).any(|v| alive[v] && !a.contains(v)) {
            break;
        }
        let gain = |v: usize| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| alive[w] && !a.contains(w) && deg[w] == k + 1)
                .count()
        };
        let victim = (0..n)
            .filter(|&v| alive[v])
            .max_by_key(|&v| (gain(v), deg[v], Reverse(v)))
            .expect("a stuck vertex is alive");
        deleted.insert(victim);
        remove(victim, &mut alive, &mut deg);
    }
    let stats = SearchStats {
        nodes,
        elapsed: start.elapsed(),
    };
    finish(g, a, k, deleted.complement(), stats, Method::Heuristic, false)
        .expect("greedy witness is good by construction")
}

struct BranchAndBound<'g> {
    g: &'g Graph,
    in_a: Vec<bool>,
    k: usize,
    budget: Budget,
    start: Instant,
    nodes: u64,
    truncated: bool,
    best: usize,
    best_witness: Option<Vec<usize>>,
}

#[derive(Clone)]
struct Node {
    /// In the candidate set: fixed or undecided, not yet collected.
    alive: Vec<bool>,
    fixed: Vec<bool>,
    deg: Vec<usize>,
    collected: Vec<usize>,
}

impl Node {
    fn remove(&mut self, g: &Graph, v: usize) {
        self.alive[v] = false;
        for &w in g.neighbors(v) {
            if self.alive[w] {
                self.deg[w] -= 1;
            }
        }
    }
}

impl BranchAndBound<'_> {
    fn out_of_budget(&mut self) -> bool {
        let over_nodes = self.budget.max_nodes.is_some_and(|m| self.nodes >= m);
        let over_time = self.budget.max_time.is_some_and(|t| self.start.elapsed() >= t);
        if over_nodes || over_time {
            self.truncated = true;
        }
        self.truncated
    }

    /// Collects every vertex outside `A` of degree at most `k`: some optimum
    /// inside the candidate set contains it, and it can be peeled first.
    fn collect(&self, node: &mut Node) {
        let n = self.g.n();
        let mut stack: Vec<usize> = (0..n)
            .filter(|&v| node.alive[v] && !self.in_a[v] && node.deg[v] <= self.k)
            .collect();
        while let Some(v) = stack.pop() {
            if !node.alive[v] {
                continue;
            }
            node.remove(self.g, v);
            node.collected.push(v);
            for &w in self.g.neighbors(v) {
                if node.alive[w] && !self.in_a[w] && node.deg[w] == self.k {
                    stack.push(w);
                }
            }
        }
    }

    /// Whether the fixed vertices still in play can be peeled down to `A`.
    fn fixed_feasible(&self, node: &Node) -> bool {
        let n = self.g.n();
        let mut rest: Vec<bool> = (0..n).map(|v| node.alive[v] && node.fixed[v]).collect();
        let mut deg: Vec<usize> = (0..n)
            .map(|v| {
                if rest[v] {
                    self.g.neighbors(v).iter().filter(|&&w| rest[w]).count()
                } else {
                    0
                }
            })
            .collect();
        let mut stack: Vec<usize> = (0..n)
            .filter(|&v| rest[v] && !self.in_a[v] && deg[v] <= self.k)
            .collect();
        while let Some(v) = stack.pop() {
            if !rest[v] {
                continue;
            }
            rest[v] = false;
            for &w in self.g.neighbors(v) {
                if rest[w] {
                    deg[w] -= 1;
                    if !self.in_a[w] && deg[w] == self.k {
                        stack.push(w);
                    }
                }
            }
        }
        (0..n).all(|v| !rest[v] || self.in_a[v])
    }

    /// Fewest undecided vertices that must be dropped so that the edge count
    /// of the remaining candidate set can meet `e ≤ k·|Y - A| + e(A)`.
    fn min_deletions(&self, node: &Node) -> Option<usize> {
        let n = self.g.n();
        let k = self.k as i64;
        let mut edges = 0i64;
        let mut a_edges = 0i64;
        let mut non_a = 0i64;
        let mut undecided_a = 0i64;
        let mut degs = Vec::new();
        for v in 0..n {
            if !node.alive[v] {
                continue;
            }
            edges += node.deg[v] as i64;
            if self.in_a[v] {
                a_edges += self
                    .g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| node.alive[w] && self.in_a[w])
                    .count() as i64;
            } else {
                non_a += 1;
            }
            if !node.fixed[v] {
                degs.push(node.deg[v] as i64);
                if self.in_a[v] {
                    undecided_a += 1;
                }
            }
        }
        edges /= 2;
        a_edges /= 2;
        degs.sort_unstable_by(|x, y| y.cmp(x));
        let mut dropped = 0i64;
        for r in 0..=degs.len() {
            let non_a_left = non_a - (r as i64 - undecided_a).max(0);
            if edges - dropped <= k * non_a_left + a_edges {
                return Some(r);
            }
            if r < degs.len() {
                dropped += degs[r];
            }
        }
        None
    }

    fn search(&mut self, mut node: Node) {
        if self.out_of_budget() {
            return;
        }
        self.nodes += 1;
        self.collect(&mut node);
        let n = self.g.n();
        let alive_count = node.alive.iter().filter(|&&b| b).count();
        if !(0..n).any(|v| node.alive[v] && !self.in_a[v]) {
            let value = node.collected.len() + alive_count;
            if value > self.best {
                self.best = value;
                let mut w = node.collected.clone();
                w.extend((0..n).filter(|&v| node.alive[v]));
                self.best_witness = Some(w);
            }
            return;
        }
        let Some(drop) = self.min_deletions(&node) else {
            return;
        };
        if node.collected.len() + alive_count - drop <= self.best {
            return;
        }
        let Some(v) = (0..n)
            .filter(|&v| node.alive[v] && !node.fixed[v])
            .max_by_key(|&v| (node.deg[v], Reverse(v)))
        else {
            // every candidate is fixed yet some non-A vertex cannot be peeled
            return;
        };

        let mut without = node.clone();
        without.remove(self.g, v);
        self.search(without);

        node.fixed[v] = true;
        if self.fixed_feasible(&node) {
            self.search(node);
        }
    }
}

/// Exact branch and bound for the largest `(k, A)`-good set.
///
/// Vertices that can be collected are never branched on; branching picks the
/// undecided vertex of largest degree and tries deleting it before keeping
/// it. The greedy heuristic supplies the first incumbent. If the budget runs
/// out the best set found is returned with `exact = false` and
/// [`Method::Heuristic`].
pub fn alpha_bb(g: &Graph, a: &VertexSet, k: usize, budget: Budget) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let n = g.n();
    let greedy = greedy_heuristic(g, a, k);
    let mut bb = BranchAndBound {
        g,
        in_a: (0..n).map(|v| a.contains(v)).collect(),
        k,
        budget,
        start,
        nodes: 0,
        truncated: false,
        best: greedy.optimum,
        best_witness: None,
    };
    let root = Node {
        alive: vec![true; n],
        fixed: vec![false; n],
        deg: (0..n).map(|v| g.degree(v)).collect(),
        collected: Vec::new(),
    };
    bb.search(root);
    let exact = !bb.truncated;
    let witness = match bb.best_witness {
        Some(w) if w.len() > greedy.optimum => VertexSet::from_vertices(n, w).expect("in range"),
        _ => greedy.witness,
    };
    let stats = SearchStats {
        nodes: bb.nodes + greedy.stats.nodes,
        elapsed: start.elapsed(),
    };
    let method = if exact {
        Method::BranchAndBound
    } else {
        Method::Heuristic
    };
    finish(g, a, k, witness, stats, method, exact)
}

/// `α_d(G)` by branch and bound without a budget.
pub fn alpha(g: &Graph, d: usize) -> Result<SolveResult, SolveError> {
    alpha_bb(g, &VertexSet::new(g.n()), d, Budget::unlimited())
}

/// Outcome of comparing `f(G; A)` against `∂(G)` on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub n: usize,
    pub a: Vec<usize>,
    pub boundary: usize,
    pub tau: usize,
    pub partial: Fraction,
    pub f: usize,
    pub holds: bool,
    /// `4 f ≥ 3n + 2`, checked when `A` is empty and `n ≥ 2`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub floor_holds: Option<bool>,
    pub method: Method,
    pub nodes: u64,
    pub millis: u64,
}

impl BoundReport {
    /// The report with the wall-clock field zeroed, for reproducibility checks.
    pub fn without_timing(&self) -> BoundReport {
        BoundReport {
            millis: 0,
            ..self.clone()
        }
    }

    /// `f / ∂`.
    pub fn ratio(&self) -> Fraction {
        Fraction(num_rational::Ratio::from_integer(self.f as i64) / self.partial.0)
    }
}

/// Computes `f(G; A)` exactly and compares it with `∂(G)`.
///
/// The instance field of the report is left empty; callers that know the
/// instance fingerprint fill it in.
pub fn check_theorem(p: &PlaneGraph, a: &VertexSet, budget: Budget) -> Result<BoundReport, SolveError> {
    if !p.is_usable(a) {
        return Err(SolveError::NotUsable(a.to_vec()));
    }
    let result = alpha_bb(p.graph(), a, 3, budget)?;
    if !result.exact {
        return Err(SolveError::Inexact {
            nodes: result.stats.nodes,
            lower_bound: result.optimum,
        });
    }
    let packing = tau(p);
    let n = p.n();
    let floor_holds = (a.is_empty() && n >= 2).then(|| 4 * result.optimum >= 3 * n + 2);
    Ok(BoundReport {
        instance: String::new(),
        seed: None,
        n,
        a: a.to_vec(),
        boundary: p.boundary().vertices.len(),
        tau: packing.tau,
        partial: packing.partial_bound,
        f: result.optimum,
        holds: Fraction::from_integer(result.optimum as i64) >= packing.partial_bound,
        floor_holds,
        method: result.method,
        nodes: result.stats.nodes,
        millis: result.stats.elapsed.as_millis() as u64,
    })
}
