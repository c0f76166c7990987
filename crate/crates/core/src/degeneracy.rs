//! Degeneracy orderings, `(k, A)`-degeneracy and collection orders.
//!
//! Everything here is greedy peeling. Removing a vertex only lowers the
//! degrees of the others, so a vertex that is eligible for removal stays
//! eligible, and any maximal peeling sequence removes the same set. Ties are
//! broken by the lowest vertex id, which keeps certificates reproducible.

use std::collections::BTreeSet;

use crate::graph::{Graph, Ordering, VertexSet};

/// Degeneracy of `g` and an ordering witnessing it.
///
/// Repeatedly removes a vertex of minimum degree; the removal sequence is
/// reversed so that every vertex has back-degree at most the returned value.
/// The null graph has degeneracy 0.
pub fn degeneracy(g: &Graph) -> (usize, Ordering) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut removed = vec![false; n];
    let mut peel = Vec::with_capacity(n);
    let mut value = 0;
    while let Some((d, v)) = queue.pop_first() {
        value = value.max(d);
        removed[v] = true;
        peel.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                queue.remove(&(deg[w], w));
                deg[w] -= 1;
                queue.insert((deg[w], w));
            }
        }
    }
    peel.reverse();
    (value, Ordering::from_distinct(peel))
}

pub fn is_d_degenerate(g: &Graph, d: usize) -> bool {
    ka_degenerate_ordering(g, &VertexSet::new(g.n()), d).is_some()
}

/// Peels vertices outside `a` of degree at most `k` until none is eligible.
///
/// Returns the peel sequence and the set of vertices left over.
fn peel(g: &Graph, a: &VertexSet, k: usize) -> (Vec<usize>, VertexSet) {
    let n = g.n();
    let mut alive = VertexSet::full(n);
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut eligible: BTreeSet<usize> = (0..n).filter(|&v| !a.contains(v) && deg[v] <= k).collect();
    let mut seq = Vec::new();
    while let Some(v) = eligible.pop_first() {
        alive.remove(v);
        seq.push(v);
        for &w in g.neighbors(v) {
            if alive.contains(w) {
                deg[w] -= 1;
                if deg[w] == k && !a.contains(w) {
                    eligible.insert(w);
                }
            }
        }
    }
    (seq, alive)
}

/// An ordering of `V(g)` placing `a` first in which every vertex outside `a`
/// has back-degree at most `k`, if one exists.
pub fn ka_degenerate_ordering(g: &Graph, a: &VertexSet, k: usize) -> Option<Ordering> {
    let (seq, rest) = peel(g, a, k);
    if !rest.is_subset(a) {
        return None;
    }
    let mut order: Vec<usize> = rest.iter().collect();
    order.extend(seq.into_iter().rev());
    Some(Ordering::from_distinct(order))
}

/// Whether `g[y]` is `(k, a ∩ y)`-degenerate; the ordering is in host ids.
pub fn is_ka_good(g: &Graph, a: &VertexSet, y: &VertexSet, k: usize) -> Option<Ordering> {
    let sub = g.induced_subgraph(y);
    let local_a = sub.restrict_set(a);
    ka_degenerate_ordering(&sub.graph, &local_a, k).map(|ord| sub.lift_ordering(&ord))
}

/// `y` is `A`-good: `g[y]` is `(3, a ∩ y)`-degenerate.
pub fn is_a_good(g: &Graph, a: &VertexSet, y: &VertexSet) -> Option<Ordering> {
    is_ka_good(g, a, y, 3)
}

/// A collection order for `y` in `g` with degree threshold `k`.
///
/// Each collected vertex is outside `a` with degree at most `k` in what
/// remains of `g`, unless everything that remains lies in `a`.
pub fn collect_order_k(g: &Graph, a: &VertexSet, y: &VertexSet, k: usize) -> Option<Ordering> {
    let n = g.n();
    let mut alive = VertexSet::full(n);
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut outside_a = (0..n).filter(|&v| !a.contains(v)).count();
    let mut pending = y.clone();
    let mut order = Vec::with_capacity(y.len());
    while !pending.is_empty() {
        let next = if outside_a == 0 {
            pending.iter().next()
        } else {
            pending.iter().find(|&v| !a.contains(v) && deg[v] <= k)
        };
        let v = next?;
        pending.remove(v);
        alive.remove(v);
        if !a.contains(v) {
            outside_a -= 1;
        }
        for &w in g.neighbors(v) {
            if alive.contains(w) {
                deg[w] -= 1;
            }
        }
        order.push(v);
    }
    Some(Ordering::from_distinct(order))
}

pub fn collect_order(g: &Graph, a: &VertexSet, y: &VertexSet) -> Option<Ordering> {
    collect_order_k(g, a, y, 3)
}
