//! Simple undirected graphs, vertex sets and vertex orderings.
//!
//! Vertices are dense ids `0..n`. Adjacency lists are kept sorted so that
//! edge queries are a binary search and iteration order is deterministic.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} repeated in ordering")]
    RepeatedVertex(usize),
    #[error("path query endpoint {0} is the forbidden vertex")]
    ForbiddenEndpoint(usize),
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops and repeated edges.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj })
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Number of neighbours of `v` inside `set`.
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        self.adj[v].iter().filter(|&&w| set.contains(w)).count()
    }

    /// `G[s]`, relabelled densely, together with the index maps.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Subgraph {
        assert_eq!(s.universe(), self.n(), "vertex set over a different graph");
        let to_host: Vec<usize> = s.iter().collect();
        let mut from_host = vec![None; self.n()];
        for (i, &v) in to_host.iter().enumerate() {
            from_host[v] = Some(i);
        }
        let adj = to_host
            .iter()
            .map(|&v| {
                // host adjacency is sorted and the relabelling is monotone
                self.adj[v].iter().filter_map(|&w| from_host[w]).collect()
            })
            .collect();
        Subgraph {
            graph: Graph { adj },
            to_host,
            from_host,
        }
    }

    /// `G - s`.
    pub fn remove_vertices(&self, s: &VertexSet) -> Subgraph {
        self.induced_subgraph(&s.complement())
    }

    /// Connected components, each sorted, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Component index of every vertex, numbered as in [`Graph::components`].
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![0; self.n()];
        for (i, comp) in self.components().iter().enumerate() {
            for &v in comp {
                label[v] = i;
            }
        }
        label
    }

    /// Whether `G - forbidden` has a path from `s` to `t`.
    pub fn has_path_avoiding(&self, s: usize, t: usize, forbidden: usize) -> Result<bool, GraphError> {
        for w in [s, t, forbidden] {
            if w >= self.n() {
                return Err(GraphError::OutOfRange { vertex: w, n: self.n() });
            }
        }
        if s == forbidden {
            return Err(GraphError::ForbiddenEndpoint(s));
        }
        if t == forbidden {
            return Err(GraphError::ForbiddenEndpoint(t));
        }
        let mut seen = vec![false; self.n()];
        seen[s] = true;
        seen[forbidden] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            if u == t {
                return Ok(true);
            }
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        Ok(false)
    }
}

/// An induced subgraph with maps between its ids and the host's ids.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    pub to_host: Vec<usize>,
    pub from_host: Vec<Option<usize>>,
}

impl Subgraph {
    pub fn lift_ordering(&self, ord: &Ordering) -> Ordering {
        Ordering::from_distinct(ord.as_slice().iter().map(|&v| self.to_host[v]).collect())
    }

    pub fn lift_set(&self, s: &VertexSet) -> VertexSet {
        VertexSet::from_iter_unchecked(self.from_host.len(), s.iter().map(|v| self.to_host[v]))
    }

    /// Restricts a host set to the subgraph's vertices, in subgraph ids.
    pub fn restrict_set(&self, s: &VertexSet) -> VertexSet {
        VertexSet::from_iter_unchecked(
            self.to_host.len(),
            s.iter().filter_map(|v| self.from_host.get(v).copied().flatten()),
        )
    }
}

/// A subset of `0..universe`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: Vec<bool>,
    len: usize,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            members: vec![false; universe],
            len: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        VertexSet {
            members: vec![true; universe],
            len: universe,
        }
    }

    pub fn from_vertices<I>(universe: usize, vertices: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = VertexSet::new(universe);
        for v in vertices {
            if v >= universe {
                return Err(GraphError::OutOfRange { vertex: v, n: universe });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub(crate) fn from_iter_unchecked<I: IntoIterator<Item = usize>>(universe: usize, vertices: I) -> Self {
        let mut s = VertexSet::new(universe);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.members.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.get(v).copied().unwrap_or(false)
    }

    /// Returns true if `v` was newly inserted.
    pub fn insert(&mut self, v: usize) -> bool {
        let fresh = !self.members[v];
        if fresh {
            self.members[v] = true;
            self.len += 1;
        }
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let had = self.contains(v);
        if had {
            self.members[v] = false;
            self.len -= 1;
        }
        had
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet {
            members: self.members.iter().map(|b| !b).collect(),
            len: self.universe() - self.len,
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_iter_unchecked(self.universe(), self.iter().filter(|&v| other.contains(v)))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        for v in other.iter() {
            out.insert(v);
        }
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_iter_unchecked(self.universe(), self.iter().filter(|&v| !other.contains(v)))
    }
}

/// A total order on a set of vertices; earlier vertices come first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Ordering {
    seq: Vec<usize>,
}

impl Ordering {
    pub fn new(seq: Vec<usize>) -> Result<Self, GraphError> {
        let mut sorted = seq.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::RepeatedVertex(w[0]));
        }
        Ok(Ordering { seq })
    }

    pub(crate) fn from_distinct(seq: Vec<usize>) -> Self {
        debug_assert!(Ordering::new(seq.clone()).is_ok());
        Ordering { seq }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// The set of ordered vertices as a subset of `0..universe`.
    pub fn scope(&self, universe: usize) -> VertexSet {
        VertexSet::from_iter_unchecked(universe, self.seq.iter().copied())
    }

    /// Position of each vertex of `0..universe`, `None` if unordered.
    pub fn positions(&self, universe: usize) -> Vec<Option<usize>> {
        let mut pos = vec![None; universe];
        for (i, &v) in self.seq.iter().enumerate() {
            pos[v] = Some(i);
        }
        pos
    }

    pub fn reversed(&self) -> Ordering {
        Ordering {
            seq: self.seq.iter().rev().copied().collect(),
        }
    }

    /// Back-degree of every ordered vertex (neighbours placed earlier),
    /// in sequence order.
    pub fn back_degrees(&self, g: &Graph) -> Vec<usize> {
        let pos = self.positions(g.n());
        self.seq
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                g.neighbors(v)
                    .iter()
                    .filter(|&&w| matches!(pos[w], Some(j) if j < i))
                    .count()
            })
            .collect()
    }

    pub fn max_back_degree(&self, g: &Graph) -> usize {
        self.back_degrees(g).into_iter().max().unwrap_or(0)
    }
}

impl IntoIterator for Ordering {
    type Item = usize;
    type IntoIter = std::vec::IntoIter<usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.seq.into_iter()
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn k4_is_3_regular() {
        let g = k4();
        assert_eq!(g.edge_count(), 6);
        assert!((0..4).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn octahedron_is_4_regular() {
        let g = octahedron();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 12);
        assert!((0..6).all(|v| g.degree(v) == 4));
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(3, [(0, 1), (0, 1)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(3, [(1, 0), (0, 1)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(3, [(2, 2)]), Err(GraphError::Loop(2)));
        assert_eq!(Graph::new(3, [(0, 3)]), Err(GraphError::OutOfRange { vertex: 3, n: 3 }));
    }

    #[test]
    fn induced_subgraph_counts() {
        let g = octahedron();
        for drop in 0..6 {
            let mut s = VertexSet::full(6);
            s.remove(drop);
            let sub = g.induced_subgraph(&s);
            assert_eq!(sub.graph.n(), 5);
            assert_eq!(sub.graph.edge_count(), 8);
        }
        assert_eq!(g.induced_subgraph(&VertexSet::new(6)).graph.n(), 0);
        let pair = VertexSet::from_vertices(4, [0, 1]).unwrap();
        let sub = k4().induced_subgraph(&pair);
        assert_eq!(sub.graph.edge_count(), 1);
        assert_eq!(sub.to_host, vec![0, 1]);
    }

    #[test]
    fn path_avoiding() {
        assert!(!path3().has_path_avoiding(0, 2, 1).unwrap());
        assert!(triangle().has_path_avoiding(0, 2, 1).unwrap());
        assert_eq!(
            path3().has_path_avoiding(1, 2, 1),
            Err(GraphError::ForbiddenEndpoint(1))
        );
    }

    #[test]
    fn components_of_two_edges() {
        let g = Graph::new(4, [(0, 2), (1, 3)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(g.component_labels(), vec![0, 1, 0, 1]);
    }

    #[test]
    fn ordering_rejects_repeats() {
        assert_eq!(Ordering::new(vec![0, 1, 0]), Err(GraphError::RepeatedVertex(0)));
        let ord = Ordering::new(vec![2, 0, 1]).unwrap();
        assert_eq!(ord.back_degrees(&triangle()), vec![0, 1, 2]);
    }
}
