//! Special cycles, their packings and the bound `∂(G)`.
//!
//! A cycle `C` of length 3 to 5 is special when the closed inside of `C` is
//! isomorphic, as a plane graph with `C` as its outer boundary, to one of
//! seven small templates. Each template consists of the boundary cycle
//! `v1 .. vk` and an inner triangle `x y z`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fraction::Fraction;
use crate::graph::VertexSet;
use crate::plane::{CycleRef, EmbeddingError, PlaneGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QKind {
    #[serde(rename = "Q1")]
    Q1,
    #[serde(rename = "Q2")]
    Q2,
    #[serde(rename = "Q2+")]
    Q2Plus,
    #[serde(rename = "Q3")]
    Q3,
    #[serde(rename = "Q4")]
    Q4,
    #[serde(rename = "Q4+")]
    Q4Plus,
    #[serde(rename = "Q4++")]
    Q4PlusPlus,
}

impl QKind {
    pub const ALL: [QKind; 7] = [
        QKind::Q1,
        QKind::Q2,
        QKind::Q2Plus,
        QKind::Q3,
        QKind::Q4,
        QKind::Q4Plus,
        QKind::Q4PlusPlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QKind::Q1 => "Q1",
            QKind::Q2 => "Q2",
            QKind::Q2Plus => "Q2+",
            QKind::Q3 => "Q3",
            QKind::Q4 => "Q4",
            QKind::Q4Plus => "Q4+",
            QKind::Q4PlusPlus => "Q4++",
        }
    }

    pub fn from_name(name: &str) -> Option<QKind> {
        QKind::ALL.into_iter().find(|k| k.name() == name)
    }

    pub fn boundary_len(self) -> usize {
        match self {
            QKind::Q1 => 3,
            QKind::Q2 | QKind::Q2Plus | QKind::Q3 => 4,
            QKind::Q4 | QKind::Q4Plus | QKind::Q4PlusPlus => 5,
        }
    }

    /// Faces in terms of the labels `v1..v5, x, y, z`; the last face is the
    /// infinite one.
    fn faces(self) -> Vec<&'static str> {
        // shared corner of every template: x by v2v3, y by v1v2
        let mut faces = vec!["x y z", "x v2 y", "z v3 x", "v3 v2 x", "v2 v1 y"];
        let rest: &[&str] = match self {
            QKind::Q1 => &["y v1 z", "v1 v3 z", "v3 v1 v2"],
            QKind::Q2 => &["y v1 z", "z v1 v4 v3", "v3 v4 v1 v2"],
            QKind::Q2Plus => &["y v1 z", "z v1 v4", "z v4 v3", "v3 v4 v1 v2"],
            QKind::Q3 => &["y v1 v4 z", "z v4 v3", "v3 v4 v1 v2"],
            QKind::Q4 => &["y v1 z", "z v1 v5 v4 v3", "v3 v4 v5 v1 v2"],
            QKind::Q4Plus => &["y v1 z", "z v1 v5 v4", "z v4 v3", "v3 v4 v5 v1 v2"],
            QKind::Q4PlusPlus => &["y v1 z", "z v1 v5", "z v5 v4", "z v4 v3", "v3 v4 v5 v1 v2"],
        };
        faces.extend_from_slice(rest);
        faces
    }
}

impl fmt::Display for QKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One member of the template family, with vertex ids `v1..vk = 0..k`
/// followed by `x, y, z`.
#[derive(Clone, Debug)]
pub struct QTemplate {
    pub kind: QKind,
    pub plane: PlaneGraph,
    /// `v1, .., vk`.
    pub boundary: Vec<usize>,
    /// `[x, y, z]`.
    pub triangle: [usize; 3],
    /// The boundary vertices that lie on a face with two triangle vertices.
    pub x_set: Vec<usize>,
}

impl QTemplate {
    fn build(kind: QKind) -> QTemplate {
        let k = kind.boundary_len();
        let id = |label: &str| -> usize {
            match label {
                "x" => k,
                "y" => k + 1,
                "z" => k + 2,
                v => v[1..].parse::<usize>().expect("template label") - 1,
            }
        };
        let faces: Vec<Vec<usize>> = kind
            .faces()
            .iter()
            .map(|f| f.split_whitespace().map(id).collect())
            .collect();
        let plane = PlaneGraph::from_faces(k + 3, &faces, &[faces.len() - 1]).expect("template embedding");
        let triangle = [k, k + 1, k + 2];
        let x_set = x_set_of(&plane, &(0..k).collect::<Vec<_>>(), &triangle);
        QTemplate {
            kind,
            plane,
            boundary: (0..k).collect(),
            triangle,
            x_set,
        }
    }

    /// Label of a template vertex: `v1..vk`, `x`, `y` or `z`.
    pub fn label(&self, v: usize) -> String {
        let k = self.boundary.len();
        match v.checked_sub(k) {
            Some(0) => "x".into(),
            Some(1) => "y".into(),
            Some(2) => "z".into(),
            _ => format!("v{}", v + 1),
        }
    }
}

/// The seven templates.
pub fn q_family() -> &'static [QTemplate] {
    static FAMILY: OnceLock<Vec<QTemplate>> = OnceLock::new();
    FAMILY.get_or_init(|| QKind::ALL.into_iter().map(QTemplate::build).collect())
}

pub fn q_template(kind: QKind) -> &'static QTemplate {
    &q_family()[QKind::ALL.iter().position(|&k| k == kind).unwrap()]
}

/// Cycle vertices lying on a face together with two vertices of `triangle`.
fn x_set_of(p: &PlaneGraph, cycle: &[usize], triangle: &[usize]) -> Vec<usize> {
    let mut x = BTreeSet::new();
    for face in p.faces() {
        let on_face = face.vertices();
        if triangle.iter().filter(|t| on_face.contains(t)).count() >= 2 {
            x.extend(cycle.iter().copied().filter(|v| on_face.contains(v)));
        }
    }
    x.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialCycleRecord {
    pub cycle: Vec<usize>,
    pub template: QKind,
    pub t_c: Vec<usize>,
    pub x_c: Vec<usize>,
    pub y_c: Vec<usize>,
    pub ybar_c: Vec<usize>,
    pub exposed: bool,
    /// Host vertex for each template label.
    pub correspondence: BTreeMap<String, usize>,
}

impl SpecialCycleRecord {
    pub fn y_set(&self, n: usize) -> VertexSet {
        VertexSet::from_vertices(n, self.y_c.iter().copied()).expect("record over this graph")
    }
}

/// Checks whether the closed inside of `c` is one of the templates.
///
/// Only a side that does not contain the infinite face can qualify.
pub fn match_special(p: &PlaneGraph, c: &CycleRef) -> Result<Option<SpecialCycleRecord>, EmbeddingError> {
    let split = p.cycle_split(c)?;
    if split.inside_holds_outer || split.interior.len() != 3 || !(3..=5).contains(&c.len()) {
        return Ok(None);
    }
    let (inner, to_host) = p.inner_plane(c)?;
    let mut from_host = vec![usize::MAX; p.n()];
    for (i, &v) in to_host.iter().enumerate() {
        from_host[v] = i;
    }
    let cycle_local: Vec<usize> = c.vertices.iter().map(|&v| from_host[v]).collect();
    let interior_local: Vec<usize> = split.interior.iter().map(|v| from_host[v]).collect();
    for template in q_family().iter().filter(|t| t.boundary.len() == c.len()) {
        let Some(map) = plane_isomorphism(&inner, &cycle_local, &interior_local, template) else {
            continue;
        };
        let t_c: Vec<usize> = split.interior.to_vec();
        let x_c = x_set_of(p, &c.vertices, &t_c);
        let mut y_c: Vec<usize> = x_c.iter().chain(t_c.iter()).copied().collect();
        y_c.sort_unstable();
        let mut ybar_c: Vec<usize> = c.vertices.iter().copied().filter(|v| !x_c.contains(v)).collect();
        ybar_c.sort_unstable();
        let boundary = p.boundary();
        let exposed = x_c.iter().all(|&v| boundary.vertices.contains(v));
        let correspondence = map
            .iter()
            .enumerate()
            .map(|(local, &tv)| (template.label(tv), to_host[local]))
            .collect();
        return Ok(Some(SpecialCycleRecord {
            cycle: c.vertices.clone(),
            template: template.kind,
            t_c,
            x_c,
            y_c,
            ybar_c,
            exposed,
            correspondence,
        }));
    }
    Ok(None)
}

/// Finds a map from `inner` to the template taking the boundary cycle to
/// `v1..vk` (up to rotation and reflection) that preserves edges and the
/// rotation system up to a global reversal. Returns template ids by local id.
fn plane_isomorphism(
    inner: &PlaneGraph,
    cycle: &[usize],
    interior: &[usize],
    template: &QTemplate,
) -> Option<Vec<usize>> {
    let k = cycle.len();
    let n = inner.n();
    if n != template.plane.n() || inner.graph().edge_count() != template.plane.graph().edge_count() {
        return None;
    }
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for shift in 0..k {
        for reflect in [false, true] {
            for perm in PERMS {
                let mut map = vec![usize::MAX; n];
                for (i, &v) in cycle.iter().enumerate() {
                    let j = if reflect { (shift + k - i) % k } else { (shift + i) % k };
                    map[v] = template.boundary[j];
                }
                for (i, &v) in interior.iter().enumerate() {
                    map[v] = template.triangle[perm[i]];
                }
                let tg = template.plane.graph();
                if !inner.graph().edges().all(|(a, b)| tg.has_edge(map[a], map[b])) {
                    continue;
                }
                let agrees = |reverse: bool| {
                    (0..n).all(|v| {
                        let mut image: Vec<usize> = inner.rotation()[v].iter().map(|&w| map[w]).collect();
                        if reverse {
                            image.reverse();
                        }
                        same_cycle(&image, &template.plane.rotation()[map[v]])
                    })
                };
                if agrees(false) || agrees(true) {
                    return Some(map);
                }
            }
        }
    }
    None
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    match b.iter().position(|&x| x == a[0]) {
        Some(s) => (0..a.len()).all(|i| a[i] == b[(s + i) % b.len()]),
        None => false,
    }
}

/// All cycles with `min_len..=max_len` vertices, each listed once, starting
/// at its smallest vertex with the smaller of its two neighbours second.
pub fn enumerate_cycles(p: &PlaneGraph, min_len: usize, max_len: usize) -> Vec<Vec<usize>> {
    let g = p.graph();
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(max_len);
    fn extend(
        g: &crate::graph::Graph,
        path: &mut Vec<usize>,
        min_len: usize,
        max_len: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let (start, last) = (path[0], *path.last().unwrap());
        if path.len() >= min_len.max(3) && g.has_edge(last, start) && path[1] < last {
            out.push(path.clone());
        }
        if path.len() == max_len {
            return;
        }
        for &w in g.neighbors(last) {
            if w > start && !path.contains(&w) {
                path.push(w);
                extend(g, path, min_len, max_len, out);
                path.pop();
            }
        }
    }
    for s in 0..g.n() {
        path.clear();
        path.push(s);
        extend(g, &mut path, min_len, max_len, &mut out);
    }
    out
}

/// All special cycles of `p`, deduplicated by vertex set and inside.
pub fn enumerate_special(p: &PlaneGraph) -> Vec<SpecialCycleRecord> {
    let cycles = enumerate_cycles(p, 3, 5);
    let found: Vec<SpecialCycleRecord> = cycles
        .par_iter()
        .flat_map_iter(|cycle| {
            let c = CycleRef::new(cycle.clone());
            [c.clone(), c.flipped()]
                .into_iter()
                .filter_map(|c| match_special(p, &c).expect("enumerated cycle"))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut out: Vec<SpecialCycleRecord> = found
        .into_iter()
        .filter(|r| {
            let mut vs = r.cycle.clone();
            vs.sort_unstable();
            seen.insert((vs, r.t_c.clone()))
        })
        .collect();
    out.sort_by(|a, b| (&a.t_c, &a.cycle).cmp(&(&b.t_c, &b.cycle)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingResult {
    pub cycles: Vec<SpecialCycleRecord>,
    pub tau: usize,
    pub partial_bound: Fraction,
}

impl PackingResult {
    /// Every packed cycle is exposed and the `Y` sets are pairwise disjoint.
    pub fn is_feasible(&self) -> bool {
        let mut used = BTreeSet::new();
        self.cycles
            .iter()
            .all(|r| r.exposed && r.y_c.iter().all(|&v| used.insert(v)))
            && self.tau == self.cycles.len()
    }
}

/// A maximum packing of exposed special cycles with disjoint `Y` sets.
pub fn tau(p: &PlaneGraph) -> PackingResult {
    let candidates: Vec<SpecialCycleRecord> = enumerate_special(p).into_iter().filter(|r| r.exposed).collect();
    let conflicts = conflict_graph(&candidates);
    let chosen = max_independent_set(&conflicts);
    let cycles: Vec<SpecialCycleRecord> = chosen.into_iter().map(|i| candidates[i].clone()).collect();
    let tau = cycles.len();
    PackingResult {
        partial_bound: bound_from(p, tau),
        cycles,
        tau,
    }
}

/// First-fit packing; a lower bound on `τ`, never used for reported values.
pub fn greedy_packing(p: &PlaneGraph) -> PackingResult {
    let mut used = BTreeSet::new();
    let mut cycles = Vec::new();
    for r in enumerate_special(p).into_iter().filter(|r| r.exposed) {
        if r.y_c.iter().all(|v| !used.contains(v)) {
            used.extend(r.y_c.iter().copied());
            cycles.push(r);
        }
    }
    let tau = cycles.len();
    PackingResult {
        partial_bound: bound_from(p, tau),
        cycles,
        tau,
    }
}

/// `3/4 |V| + 1/4 (|B| - τ)`.
pub fn partial_bound(p: &PlaneGraph) -> Fraction {
    bound_from(p, tau(p).tau)
}

fn bound_from(p: &PlaneGraph, tau: usize) -> Fraction {
    let b = p.boundary().vertices.len() as i64;
    Fraction::new(3 * p.n() as i64 + b - tau as i64, 4)
}

fn conflict_graph(records: &[SpecialCycleRecord]) -> Vec<Vec<bool>> {
    let sets: Vec<BTreeSet<usize>> = records.iter().map(|r| r.y_c.iter().copied().collect()).collect();
    (0..records.len())
        .map(|i| {
            (0..records.len())
                .map(|j| i != j && !sets[i].is_disjoint(&sets[j]))
                .collect()
        })
        .collect()
}

/// Exact maximum independent set by branch and bound; returns sorted indices.
pub(crate) fn max_independent_set(adj: &[Vec<bool>]) -> Vec<usize> {
    fn search(adj: &[Vec<bool>], cand: Vec<usize>, current: &mut Vec<usize>, best: &mut Vec<usize>) {
        if current.len() + cand.len() <= best.len() {
            return;
        }
        let degree = |v: usize| cand.iter().filter(|&&w| adj[v][w]).count();
        let Some(&pivot) = cand.iter().max_by_key(|&&v| (degree(v), std::cmp::Reverse(v))) else {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        };
        if degree(pivot) == 0 {
            let before = current.len();
            current.extend(cand.iter().copied());
            if current.len() > best.len() {
                *best = current.clone();
            }
            current.truncate(before);
            return;
        }
        let with: Vec<usize> = cand.iter().copied().filter(|&w| w != pivot && !adj[pivot][w]).collect();
        current.push(pivot);
        search(adj, with, current, best);
        current.pop();
        let without: Vec<usize> = cand.iter().copied().filter(|&w| w != pivot).collect();
        search(adj, without, current, best);
    }
    let mut best = Vec::new();
    search(adj, (0..adj.len()).collect(), &mut Vec::new(), &mut best);
    best.sort_unstable();
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::fixtures;

    #[test]
    fn templates_have_expected_sizes() {
        for t in q_family() {
            let g = t.plane.graph();
            assert_eq!(g.n(), t.boundary.len() + 3, "{}", t.kind);
            let b = t.plane.boundary();
            assert!(b.is_cycle);
            assert_eq!(b.vertices.to_vec(), t.boundary);
            let [x, y, z] = t.triangle;
            assert!(g.has_edge(x, y) && g.has_edge(y, z) && g.has_edge(x, z));
        }
    }

    #[test]
    fn x_sets() {
        for t in q_family() {
            let expected: Vec<usize> = if t.kind == QKind::Q3 {
                vec![0, 1, 2, 3]
            } else {
                vec![0, 1, 2]
            };
            assert_eq!(t.x_set, expected, "{}", t.kind);
        }
    }

    #[test]
    fn octahedron_outer_triangle_is_special() {
        let p = fixtures::octahedron();
        let r = match_special(&p, &CycleRef::new(vec![0, 1, 2])).unwrap().unwrap();
        assert_eq!(r.template, QKind::Q1);
        assert_eq!(r.x_c, vec![0, 1, 2]);
        assert!(r.exposed);
        assert!(r.ybar_c.is_empty());
        assert!(match_special(&p, &CycleRef::new(vec![3, 4, 5])).unwrap().is_none());
        assert!(match_special(&p, &CycleRef::new(vec![0, 1, 2]).flipped())
            .unwrap()
            .is_none());
        assert_eq!(enumerate_special(&p).len(), 1);
    }

    #[test]
    fn tau_and_bound_of_octahedron() {
        let p = fixtures::octahedron();
        let packing = tau(&p);
        assert_eq!(packing.tau, 1);
        assert!(packing.is_feasible());
        assert_eq!(packing.partial_bound, Fraction::from_integer(5));
        assert_eq!(partial_bound(&fixtures::k4()), Fraction::new(15, 4));
    }

    #[test]
    fn cycle_enumeration_counts() {
        // K4: four triangles and three 4-cycles
        let cycles = enumerate_cycles(&fixtures::k4(), 3, 5);
        assert_eq!(cycles.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(cycles.iter().filter(|c| c.len() == 4).count(), 3);
    }

    #[test]
    fn mis_small_cases() {
        let path = vec![
            vec![false, true, false],
            vec![true, false, true],
            vec![false, true, false],
        ];
        assert_eq!(max_independent_set(&path), vec![0, 2]);
        assert!(max_independent_set(&[]).is_empty());
    }
}
