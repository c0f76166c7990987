//! Combinatorial plane embeddings.
//!
//! A [`PlaneGraph`] is a graph with a rotation system (the clockwise cyclic
//! order of neighbours around every vertex) and, for each component with an
//! edge, one designated dart on the infinite face. Faces are traced with the
//! rule `(u, v) -> (v, w)` where `w` follows `u` in the rotation at `v`, so a
//! face lies to the left of each of its darts: bounded faces come out
//! counter-clockwise and the infinite face clockwise.
//!
//! Interiors and exteriors of cycles are computed from the faces alone.
//! There are no coordinates.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Subgraph, VertexSet};

pub type Dart = (usize, usize);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("rotation at vertex {0} is not a permutation of its neighbours")]
    RotationMismatch(usize),
    #[error("rotation lists are not symmetric: {0} lists {1} but not vice versa")]
    AsymmetricRotation(usize, usize),
    #[error("component containing vertex {vertex} has Euler characteristic {chi}, expected 2")]
    Euler { vertex: usize, chi: isize },
    #[error("outer face walk {0:?} is not a face of the embedding")]
    OuterNotAFace(Vec<usize>),
    #[error("component containing vertex {0} has no designated outer face")]
    MissingOuter(usize),
    #[error("component containing vertex {0} has more than one designated outer face")]
    DuplicateOuter(usize),
    #[error("face list does not determine a rotation at vertex {0}")]
    BadFaces(usize),
    #[error("dart {0:?} appears in more than one face of the face list")]
    RepeatedDart(Dart),
    #[error("walk {0:?} is not a cycle of the graph")]
    NotACycle(Vec<usize>),
}

/// A facial walk; darts are `walk[i] -> walk[i + 1]` cyclically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub walk: Vec<usize>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        let k = self.walk.len();
        (0..k).map(move |i| (self.walk[i], self.walk[(i + 1) % k]))
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        self.walk.iter().copied().collect()
    }
}

/// Darts are numbered by vertex, then by position in that vertex's rotation.
#[derive(Clone, Debug)]
struct DartIndex {
    offset: Vec<usize>,
    // rot_pos[u][j] = position of the j-th sorted neighbour of u in its rotation
    rot_pos: Vec<Vec<usize>>,
}

impl DartIndex {
    fn new(graph: &Graph, rotation: &[Vec<usize>]) -> Self {
        let mut offset = Vec::with_capacity(graph.n() + 1);
        let mut acc = 0;
        for v in 0..graph.n() {
            offset.push(acc);
            acc += graph.degree(v);
        }
        offset.push(acc);
        let rot_pos = (0..graph.n())
            .map(|u| {
                let mut pos = vec![0; graph.degree(u)];
                for (i, &w) in rotation[u].iter().enumerate() {
                    let j = graph.neighbors(u).binary_search(&w).expect("validated rotation");
                    pos[j] = i;
                }
                pos
            })
            .collect();
        DartIndex { offset, rot_pos }
    }

    fn position(&self, graph: &Graph, u: usize, v: usize) -> Option<usize> {
        let j = graph.neighbors(u).binary_search(&v).ok()?;
        Some(self.rot_pos[u][j])
    }

    fn id(&self, graph: &Graph, u: usize, v: usize) -> Option<usize> {
        self.position(graph, u, v).map(|p| self.offset[u] + p)
    }

    fn count(&self) -> usize {
        *self.offset.last().unwrap_or(&0)
    }
}

/// Traces all faces of a rotation system and checks Euler's formula per
/// component. Returns the faces and the face index of every dart id.
pub fn validate_embedding(graph: &Graph, rotation: &[Vec<usize>]) -> Result<Vec<Face>, EmbeddingError> {
    check_rotation(graph, rotation)?;
    let index = DartIndex::new(graph, rotation);
    Ok(trace_faces(graph, rotation, &index)?.0)
}

fn check_rotation(graph: &Graph, rotation: &[Vec<usize>]) -> Result<(), EmbeddingError> {
    if rotation.len() != graph.n() {
        return Err(EmbeddingError::RotationMismatch(rotation.len().min(graph.n())));
    }
    for (v, rot) in rotation.iter().enumerate() {
        let mut sorted = rot.clone();
        sorted.sort_unstable();
        if sorted != graph.neighbors(v) {
            return Err(EmbeddingError::RotationMismatch(v));
        }
    }
    Ok(())
}

fn trace_faces(
    graph: &Graph,
    rotation: &[Vec<usize>],
    index: &DartIndex,
) -> Result<(Vec<Face>, Vec<usize>), EmbeddingError> {
    let mut dart_face = vec![usize::MAX; index.count()];
    let mut faces = Vec::new();
    for u in 0..graph.n() {
        for &v in &rotation[u] {
            let start = index.id(graph, u, v).unwrap();
            if dart_face[start] != usize::MAX {
                continue;
            }
            let fid = faces.len();
            let mut walk = Vec::new();
            let (mut a, mut b) = (u, v);
            loop {
                let id = index.id(graph, a, b).unwrap();
                if dart_face[id] != usize::MAX {
                    break;
                }
                dart_face[id] = fid;
                walk.push(a);
                let p = index.position(graph, b, a).unwrap();
                let next = rotation[b][(p + 1) % rotation[b].len()];
                a = b;
                b = next;
            }
            faces.push(Face { walk });
        }
    }

    // Euler characteristic per component; an isolated vertex bounds one face.
    let labels = graph.component_labels();
    let comps = graph.components();
    let mut chi: Vec<isize> = comps.iter().map(|c| c.len() as isize).collect();
    for (u, _) in graph.edges() {
        chi[labels[u]] -= 1;
    }
    for face in &faces {
        chi[labels[face.walk[0]]] += 1;
    }
    for (i, comp) in comps.iter().enumerate() {
        if comp.len() == 1 {
            chi[i] += 1;
        }
        if chi[i] != 2 {
            return Err(EmbeddingError::Euler {
                vertex: comp[0],
                chi: chi[i],
            });
        }
    }
    Ok((faces, dart_face))
}

/// Rotation lists (clockwise) derived from a consistently oriented face list.
///
/// In a face walk `.., u, v, w, ..` the neighbour `w` follows `u` around `v`.
pub fn rotation_from_faces(n: usize, faces: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, EmbeddingError> {
    let mut next: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut darts = BTreeSet::new();
    for walk in faces {
        let k = walk.len();
        for i in 0..k {
            let (u, v, w) = (walk[(i + k - 1) % k], walk[i], walk[(i + 1) % k]);
            for x in [u, v, w] {
                if x >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n }.into());
                }
            }
            if !darts.insert((v, w)) {
                return Err(EmbeddingError::RepeatedDart((v, w)));
            }
            next[v].push((u, w));
        }
    }
    let mut rotation = Vec::with_capacity(n);
    for (v, pairs) in next.iter_mut().enumerate() {
        pairs.sort_unstable();
        if pairs.windows(2).any(|p| p[0].0 == p[1].0) {
            return Err(EmbeddingError::BadFaces(v));
        }
        let mut rot = Vec::with_capacity(pairs.len());
        if let Some(&(first, _)) = pairs.first() {
            let mut cur = first;
            loop {
                rot.push(cur);
                let i = pairs
                    .binary_search_by_key(&cur, |p| p.0)
                    .map_err(|_| EmbeddingError::BadFaces(v))?;
                cur = pairs[i].1;
                if cur == first {
                    break;
                }
                if rot.len() > pairs.len() {
                    return Err(EmbeddingError::BadFaces(v));
                }
            }
        }
        if rot.len() != pairs.len() {
            return Err(EmbeddingError::BadFaces(v));
        }
        rotation.push(rot);
    }
    Ok(rotation)
}

/// Which side of a cycle counts as its inside.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    /// The inside is the side not containing the infinite face.
    Standard,
    /// The inside is the side containing the infinite face.
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleRef {
    pub vertices: Vec<usize>,
    pub orientation: Orientation,
}

impl CycleRef {
    pub fn new(vertices: Vec<usize>) -> Self {
        CycleRef {
            vertices,
            orientation: Orientation::Standard,
        }
    }

    pub fn flipped(&self) -> Self {
        CycleRef {
            vertices: self.vertices.clone(),
            orientation: match self.orientation {
                Orientation::Standard => Orientation::Reversed,
                Orientation::Reversed => Orientation::Standard,
            },
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % k]);
            (a.min(b), a.max(b))
        })
    }
}

/// The partition of a plane graph by a cycle.
#[derive(Clone, Debug)]
pub struct CycleSplit {
    pub interior: VertexSet,
    pub exterior: VertexSet,
    /// `inn[C]` and `ext[C]`, relabelled with index maps.
    pub inn_closed: Subgraph,
    pub ext_closed: Subgraph,
    /// Whether the inside (per the cycle's orientation) holds the infinite face.
    pub inside_holds_outer: bool,
    inside_faces: Vec<usize>,
}

impl CycleSplit {
    /// Faces (indices into [`PlaneGraph::faces`]) lying inside the cycle.
    pub fn inside_faces(&self) -> &[usize] {
        &self.inside_faces
    }
}

/// Vertices and edges of the boundary of the infinite face(s).
#[derive(Clone, Debug)]
pub struct Boundary {
    /// One closed walk per component; an isolated vertex is the walk `[v]`.
    pub walks: Vec<Vec<usize>>,
    pub vertices: VertexSet,
    /// Edges traversed by the boundary walks, as `(min, max)`.
    pub edges: BTreeSet<(usize, usize)>,
    /// The graph is connected and its boundary walk is a cycle.
    pub is_cycle: bool,
    /// Some edge of `G[B]` is not an edge of the boundary walk.
    pub has_chord: bool,
}

impl Boundary {
    /// The boundary walk of a connected graph.
    pub fn walk(&self) -> &[usize] {
        self.walks.first().map(Vec::as_slice).unwrap_or(&[])
    }
}

#[derive(Clone, Debug)]
pub struct PlaneGraph {
    graph: Graph,
    rotation: Vec<Vec<usize>>,
    index: DartIndex,
    faces: Vec<Face>,
    dart_face: Vec<usize>,
    /// Index of the designated outer face of each component, `None` for
    /// isolated vertices.
    outer_of_component: Vec<Option<usize>>,
    component: Vec<usize>,
}

impl PlaneGraph {
    /// Validates the rotation system and designates, for each component with
    /// edges, the face containing the given dart as its infinite face.
    pub fn new(graph: Graph, rotation: Vec<Vec<usize>>, outer_darts: &[Dart]) -> Result<Self, EmbeddingError> {
        check_rotation(&graph, &rotation)?;
        let index = DartIndex::new(&graph, &rotation);
        let (faces, dart_face) = trace_faces(&graph, &rotation, &index)?;
        let component = graph.component_labels();
        let comps = graph.components();
        let mut outer_of_component = vec![None; comps.len()];
        for &(u, v) in outer_darts {
            let id = index
                .id(&graph, u, v)
                .ok_or_else(|| EmbeddingError::OuterNotAFace(vec![u, v]))?;
            let c = component[u];
            if outer_of_component[c].is_some() {
                return Err(EmbeddingError::DuplicateOuter(comps[c][0]));
            }
            outer_of_component[c] = Some(dart_face[id]);
        }
        for (c, comp) in comps.iter().enumerate() {
            if comp.len() > 1 && outer_of_component[c].is_none() {
                return Err(EmbeddingError::MissingOuter(comp[0]));
            }
        }
        Ok(PlaneGraph {
            graph,
            rotation,
            index,
            faces,
            dart_face,
            outer_of_component,
            component,
        })
    }

    /// Builds a graph from rotation lists alone; the edge set is read off
    /// the rotations, which must be symmetric.
    pub fn from_rotation(rotation: Vec<Vec<usize>>, outer_darts: &[Dart]) -> Result<Self, EmbeddingError> {
        let n = rotation.len();
        let mut edges = Vec::new();
        for (u, rot) in rotation.iter().enumerate() {
            for &v in rot {
                if v >= n {
                    return Err(GraphError::OutOfRange { vertex: v, n }.into());
                }
                if !rotation[v].contains(&u) {
                    return Err(EmbeddingError::AsymmetricRotation(u, v));
                }
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        let graph = Graph::new(n, edges)?;
        PlaneGraph::new(graph, rotation, outer_darts)
    }

    /// Builds a plane graph from a consistently oriented list of all its
    /// faces; `outer` lists the indices of the infinite faces, one per
    /// component with edges.
    pub fn from_faces(n: usize, faces: &[Vec<usize>], outer: &[usize]) -> Result<Self, EmbeddingError> {
        let rotation = rotation_from_faces(n, faces)?;
        let darts: Vec<Dart> = outer
            .iter()
            .map(|&i| (faces[i][0], faces[i][1 % faces[i].len()]))
            .collect();
        PlaneGraph::from_rotation(rotation, &darts)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_of_dart(&self, u: usize, v: usize) -> Option<usize> {
        self.index.id(&self.graph, u, v).map(|id| self.dart_face[id])
    }

    /// Indices of the designated infinite faces, one per component with edges.
    pub fn outer_faces(&self) -> Vec<usize> {
        self.outer_of_component.iter().flatten().copied().collect()
    }

    pub fn is_outer_face(&self, f: usize) -> bool {
        self.outer_of_component.contains(&Some(f))
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn boundary(&self) -> Boundary {
        let comps = self.graph.components();
        let mut walks = Vec::with_capacity(comps.len());
        let mut vertices = VertexSet::new(self.n());
        let mut edges = BTreeSet::new();
        for (c, comp) in comps.iter().enumerate() {
            match self.outer_of_component[c] {
                Some(f) => {
                    let face = &self.faces[f];
                    for v in &face.walk {
                        vertices.insert(*v);
                    }
                    for (a, b) in face.darts() {
                        edges.insert((a.min(b), a.max(b)));
                    }
                    walks.push(face.walk.clone());
                }
                None => {
                    vertices.insert(comp[0]);
                    walks.push(vec![comp[0]]);
                }
            }
        }
        let is_cycle = walks.len() == 1 && walks[0].len() >= 3 && {
            let distinct: BTreeSet<_> = walks[0].iter().collect();
            distinct.len() == walks[0].len()
        };
        let has_chord = self
            .graph
            .edges()
            .any(|(u, v)| vertices.contains(u) && vertices.contains(v) && !edges.contains(&(u, v)));
        Boundary {
            walks,
            vertices,
            edges,
            is_cycle,
            has_chord,
        }
    }

    fn check_cycle(&self, c: &CycleRef) -> Result<(), EmbeddingError> {
        let vs = &c.vertices;
        let distinct: BTreeSet<_> = vs.iter().collect();
        let ok = vs.len() >= 3
            && distinct.len() == vs.len()
            && vs.iter().all(|&v| v < self.n())
            && c.edges().all(|(a, b)| self.graph.has_edge(a, b));
        if ok {
            Ok(())
        } else {
            Err(EmbeddingError::NotACycle(vs.clone()))
        }
    }

    /// Splits the graph along a cycle by classifying faces.
    ///
    /// Faces joined across an edge that is not on the cycle lie on the same
    /// side. The side holding the infinite face is the exterior for a
    /// [`Orientation::Standard`] cycle and the interior for a reversed one.
    pub fn cycle_split(&self, c: &CycleRef) -> Result<CycleSplit, EmbeddingError> {
        self.check_cycle(c)?;
        let on_cycle: BTreeSet<(usize, usize)> = c.edges().collect();
        let mut uf = UnionFind::new(self.faces.len());
        for (u, v) in self.graph.edges() {
            if !on_cycle.contains(&(u, v)) {
                uf.union(self.face_of_dart(u, v).unwrap(), self.face_of_dart(v, u).unwrap());
            }
        }
        let (c0, c1) = (c.vertices[0], c.vertices[1]);
        let left = uf.find(self.face_of_dart(c0, c1).unwrap());
        let right = uf.find(self.face_of_dart(c1, c0).unwrap());
        if left == right {
            return Err(EmbeddingError::NotACycle(c.vertices.clone()));
        }
        let outer = self.outer_of_component[self.component[c0]].expect("cycle component has edges");
        let outer_side = uf.find(outer);
        let bounded_side = if outer_side == left { right } else { left };
        let inside = match c.orientation {
            Orientation::Standard => bounded_side,
            Orientation::Reversed => outer_side,
        };
        let inside_faces: Vec<usize> = (0..self.faces.len())
            .filter(|&f| self.component[self.faces[f].walk[0]] == self.component[c0] && uf.find(f) == inside)
            .collect();

        let cycle_set = VertexSet::from_iter_unchecked(self.n(), c.vertices.iter().copied());
        let mut interior = VertexSet::new(self.n());
        for &f in &inside_faces {
            for &v in &self.faces[f].walk {
                if !cycle_set.contains(v) {
                    interior.insert(v);
                }
            }
        }
        let exterior = interior.union(&cycle_set).complement();

        let mut inn_edges = Vec::new();
        let mut ext_edges = Vec::new();
        for (u, v) in self.graph.edges() {
            if on_cycle.contains(&(u, v)) {
                inn_edges.push((u, v));
                ext_edges.push((u, v));
            } else if uf.find(self.face_of_dart(u, v).unwrap()) == inside {
                inn_edges.push((u, v));
            } else {
                ext_edges.push((u, v));
            }
        }
        let inn_closed = edge_subgraph(self.n(), &interior.union(&cycle_set), &inn_edges);
        let ext_closed = edge_subgraph(self.n(), &exterior.union(&cycle_set), &ext_edges);
        Ok(CycleSplit {
            interior,
            exterior,
            inn_closed,
            ext_closed,
            inside_holds_outer: inside == outer_side,
            inside_faces,
        })
    }

    pub fn is_separating(&self, c: &CycleRef) -> Result<bool, EmbeddingError> {
        let split = self.cycle_split(c)?;
        Ok(!split.interior.is_empty() && !split.exterior.is_empty())
    }

    /// `inn[C]` as a plane graph whose infinite face is bounded by `C`,
    /// with the map from its ids to host ids.
    pub fn inner_plane(&self, c: &CycleRef) -> Result<(PlaneGraph, Vec<usize>), EmbeddingError> {
        let split = self.cycle_split(c)?;
        let keep = VertexSet::from_iter_unchecked(self.n(), split.interior.iter().chain(c.vertices.iter().copied()));
        let inside: BTreeSet<usize> = split.inside_faces.iter().copied().collect();
        let inn_edges: BTreeSet<(usize, usize)> = split
            .inn_closed
            .graph
            .edges()
            .map(|(a, b)| {
                let (ha, hb) = (split.inn_closed.to_host[a], split.inn_closed.to_host[b]);
                (ha.min(hb), ha.max(hb))
            })
            .collect();
        // the dart of C whose face is outside becomes the new infinite face
        let (c0, c1) = (c.vertices[0], c.vertices[1]);
        let seed = if inside.contains(&self.face_of_dart(c0, c1).unwrap()) {
            (c1, c0)
        } else {
            (c0, c1)
        };
        self.sub_embedding(&keep, |u, v| inn_edges.contains(&(u.min(v), u.max(v))), &[seed])
    }

    /// `G - x` with the inherited embedding. Each remaining component takes
    /// as its infinite face the face holding a surviving dart of an old
    /// infinite face, or its first face if there is none.
    pub fn delete_vertices(&self, x: &VertexSet) -> Result<(PlaneGraph, Vec<usize>), EmbeddingError> {
        let keep = x.complement();
        let seeds: Vec<Dart> = self
            .outer_faces()
            .into_iter()
            .flat_map(|f| self.faces[f].darts().collect::<Vec<_>>())
            .filter(|&(a, b)| keep.contains(a) && keep.contains(b))
            .collect();
        self.sub_embedding(&keep, |_, _| true, &seeds)
    }

    /// Restricts the embedding to the vertices in `keep` and the edges
    /// accepted by `keep_edge`. Each component gets as infinite face the face
    /// containing its first seed dart (its first traced face otherwise).
    fn sub_embedding<F>(
        &self,
        keep: &VertexSet,
        keep_edge: F,
        seeds: &[Dart],
    ) -> Result<(PlaneGraph, Vec<usize>), EmbeddingError>
    where
        F: Fn(usize, usize) -> bool,
    {
        let to_host: Vec<usize> = keep.iter().collect();
        let mut from_host = vec![usize::MAX; self.n()];
        for (i, &v) in to_host.iter().enumerate() {
            from_host[v] = i;
        }
        let rotation: Vec<Vec<usize>> = to_host
            .iter()
            .map(|&v| {
                self.rotation[v]
                    .iter()
                    .filter(|&&w| keep.contains(w) && keep_edge(v, w))
                    .map(|&w| from_host[w])
                    .collect()
            })
            .collect();
        let mut edges = Vec::new();
        for (i, rot) in rotation.iter().enumerate() {
            edges.extend(rot.iter().filter(|&&j| i < j).map(|&j| (i, j)));
        }
        let graph = Graph::new(to_host.len(), edges)?;
        let index = DartIndex::new(&graph, &rotation);
        let (faces, _) = trace_faces(&graph, &rotation, &index)?;
        let labels = graph.component_labels();
        let mut chosen: Vec<Option<Dart>> = vec![None; graph.components().len()];
        for &(a, b) in seeds {
            if !(keep.contains(a) && keep.contains(b)) {
                continue;
            }
            let (la, lb) = (from_host[a], from_host[b]);
            if graph.has_edge(la, lb) && chosen[labels[la]].is_none() {
                chosen[labels[la]] = Some((la, lb));
            }
        }
        for face in &faces {
            let c = labels[face.walk[0]];
            if chosen[c].is_none() {
                chosen[c] = Some((face.walk[0], face.walk[1 % face.walk.len()]));
            }
        }
        let darts: Vec<Dart> = chosen.into_iter().flatten().collect();
        Ok((PlaneGraph::new(graph, rotation, &darts)?, to_host))
    }

    /// Every bounded face is a triangle.
    pub fn is_near_triangulation(&self) -> bool {
        self.faces
            .iter()
            .enumerate()
            .all(|(f, face)| self.is_outer_face(f) || face.len() == 3)
    }

    /// A path along boundary edges whose every internal vertex separates its
    /// two neighbours on the path.
    pub fn is_admissible_path(&self, path: &[usize]) -> bool {
        self.is_admissible_with(path, &self.boundary())
    }

    fn is_admissible_with(&self, path: &[usize], boundary: &Boundary) -> bool {
        if path.is_empty() || path.iter().any(|&v| v >= self.n()) {
            return false;
        }
        let distinct: BTreeSet<_> = path.iter().collect();
        if distinct.len() != path.len() || !path.iter().all(|&v| boundary.vertices.contains(v)) {
            return false;
        }
        if !path
            .windows(2)
            .all(|w| boundary.edges.contains(&(w[0].min(w[1]), w[0].max(w[1]))))
        {
            return false;
        }
        path.windows(3).all(|w| {
            !self
                .graph
                .has_path_avoiding(w[0], w[2], w[1])
                .expect("distinct path vertices")
        })
    }

    /// Every admissible path, listed once per direction-pair (first < last,
    /// or a single vertex).
    pub fn admissible_paths(&self) -> Vec<Vec<usize>> {
        let boundary = self.boundary();
        let mut out = Vec::new();
        for start in boundary.vertices.iter() {
            let mut path = vec![start];
            self.extend_admissible(&boundary, &mut path, &mut out);
        }
        out
    }

    fn extend_admissible(&self, boundary: &Boundary, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if path.len() == 1 || path[0] < last {
            out.push(path.clone());
        }
        for &w in self.graph.neighbors(last) {
            if path.contains(&w) || !boundary.edges.contains(&(last.min(w), last.max(w))) {
                continue;
            }
            if path.len() >= 2 {
                let prev = path[path.len() - 2];
                if self.graph.has_path_avoiding(prev, w, last).expect("distinct") {
                    continue;
                }
            }
            path.push(w);
            self.extend_admissible(boundary, path, out);
            path.pop();
        }
    }

    /// Per component, the part of `a` is empty or the vertex set of an
    /// admissible path.
    pub fn is_usable(&self, a: &VertexSet) -> bool {
        if a.iter().any(|v| v >= self.n()) {
            return false;
        }
        let boundary = self.boundary();
        let usable = self.graph.components().iter().all(|comp| {
            let part: Vec<usize> = comp.iter().copied().filter(|&v| a.contains(v)).collect();
            part.is_empty() || self.spans_admissible_path(&part, &boundary)
        });
        if usable {
            debug_assert!(
                (0..self.n()).all(|v| self.graph.degree_into(v, a) <= 2),
                "usable set with a vertex of three neighbours in it"
            );
        }
        usable
    }

    fn spans_admissible_path(&self, part: &[usize], boundary: &Boundary) -> bool {
        let members: BTreeSet<usize> = part.iter().copied().collect();
        if !members.iter().all(|&v| boundary.vertices.contains(v)) {
            return false;
        }
        fn search(p: &PlaneGraph, b: &Boundary, members: &BTreeSet<usize>, path: &mut Vec<usize>) -> bool {
            if path.len() == members.len() {
                return p.is_admissible_with(path, b);
            }
            let last = *path.last().unwrap();
            for &w in p.graph.neighbors(last) {
                if members.contains(&w) && !path.contains(&w) && b.edges.contains(&(last.min(w), last.max(w))) {
                    path.push(w);
                    if search(p, b, members, path) {
                        return true;
                    }
                    path.pop();
                }
            }
            false
        }
        members.iter().any(|&s| search(self, boundary, &members, &mut vec![s]))
    }
}

fn edge_subgraph(n: usize, keep: &VertexSet, edges: &[(usize, usize)]) -> Subgraph {
    let to_host: Vec<usize> = keep.iter().collect();
    let mut from_host = vec![None; n];
    for (i, &v) in to_host.iter().enumerate() {
        from_host[v] = Some(i);
    }
    let local = edges.iter().filter_map(|&(u, v)| Some((from_host[u]?, from_host[v]?)));
    let graph = Graph::new(to_host.len(), local).expect("subgraph of a simple graph");
    Subgraph {
        graph,
        to_host,
        from_host,
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn face_counts() {
        assert_eq!(k4().faces().len(), 4);
        let oct = octahedron();
        assert_eq!(oct.faces().len(), 8);
        assert!(oct.faces().iter().all(|f| f.len() == 3));
        let total: usize = oct.faces().iter().map(Face::len).sum();
        assert_eq!(total, 2 * oct.graph().edge_count());
    }

    #[test]
    fn twisted_rotation_fails_euler() {
        let p = k4();
        let mut rot = p.rotation().to_vec();
        rot[0].swap(0, 1);
        let err = validate_embedding(p.graph(), &rot).unwrap_err();
        assert!(matches!(err, EmbeddingError::Euler { .. }), "{err:?}");
    }

    #[test]
    fn rotation_must_match_adjacency() {
        let p = k4();
        let mut rot = p.rotation().to_vec();
        rot[0].pop();
        assert_eq!(
            validate_embedding(p.graph(), &rot),
            Err(EmbeddingError::RotationMismatch(0))
        );
    }

    #[test]
    fn boundaries() {
        let b = octahedron().boundary();
        assert_eq!(b.vertices.to_vec(), vec![0, 1, 2]);
        assert!(b.is_cycle);
        assert!(!b.has_chord);
        let b = path3().boundary();
        assert!(!b.is_cycle);
        assert_eq!(b.walk().len(), 4);
        assert_eq!(b.vertices.len(), 3);
        let b = k4().boundary();
        assert_eq!(b.vertices.len(), 3);
        assert!(!b.has_chord);
    }

    #[test]
    fn chord_detected() {
        // square with diagonal 0-2, all on the outer face
        let faces = vec![vec![0, 1, 2], vec![0, 2, 3], vec![3, 2, 1, 0]];
        let p = PlaneGraph::from_faces(4, &faces, &[2]).unwrap();
        let b = p.boundary();
        assert!(b.is_cycle);
        assert!(b.has_chord);
    }

    #[test]
    fn octahedron_splits() {
        let p = octahedron();
        let outer = CycleRef::new(vec![0, 1, 2]);
        let split = p.cycle_split(&outer).unwrap();
        assert_eq!(split.interior.to_vec(), vec![3, 4, 5]);
        assert!(split.exterior.is_empty());
        assert_eq!(split.inn_closed.graph.edge_count(), 12);
        assert!(!p.is_separating(&outer).unwrap());
        let flipped = p.cycle_split(&outer.flipped()).unwrap();
        assert!(flipped.interior.is_empty());
        assert_eq!(flipped.exterior.to_vec(), vec![3, 4, 5]);
        // inner facial triangle bounds a face
        let inner = CycleRef::new(vec![3, 4, 5]);
        let split = p.cycle_split(&inner).unwrap();
        assert!(split.interior.is_empty());
        assert_eq!(split.exterior.len(), 3);
        // 4-cycle 1-3-5-0 around vertex 4
        let quad = CycleRef::new(vec![1, 3, 5, 0]);
        let split = p.cycle_split(&quad).unwrap();
        assert_eq!(split.interior.to_vec(), vec![4]);
        assert_eq!(split.exterior.to_vec(), vec![2]);
        assert!(p.is_separating(&quad).unwrap());
    }

    #[test]
    fn cycle_split_rejects_non_cycles() {
        let p = octahedron();
        assert!(p.cycle_split(&CycleRef::new(vec![0, 3, 2])).is_err());
        assert!(p.cycle_split(&CycleRef::new(vec![0, 1])).is_err());
    }

    #[test]
    fn inner_plane_of_octahedron_cycle() {
        let p = octahedron();
        let (inner, map) = p.inner_plane(&CycleRef::new(vec![1, 3, 5, 0])).unwrap();
        assert_eq!(map, vec![0, 1, 3, 4, 5]);
        assert_eq!(inner.boundary().vertices.len(), 4);
        assert!(inner.boundary().is_cycle);
        assert!(inner.is_near_triangulation());
    }

    #[test]
    fn near_triangulation() {
        assert!(octahedron().is_near_triangulation());
        assert!(k4().is_near_triangulation());
        assert!(!square().is_near_triangulation());
    }

    #[test]
    fn admissible_paths() {
        let p = octahedron();
        assert!(p.is_admissible_path(&[0]));
        assert!(p.is_admissible_path(&[0, 1]));
        assert!(!p.is_admissible_path(&[0, 1, 2]));
        assert!(!p.is_admissible_path(&[3]));
        assert!(!p.is_admissible_path(&[]));
        let q = path3();
        assert!(q.is_admissible_path(&[0, 1, 2]));
        assert_eq!(p.admissible_paths().len(), 6);
    }

    #[test]
    fn usable_sets() {
        let p = octahedron();
        assert!(p.is_usable(&VertexSet::new(6)));
        assert!(p.is_usable(&set(6, &[0, 1])));
        assert!(!p.is_usable(&set(6, &[0, 1, 2])));
        assert!(!p.is_usable(&set(6, &[3])));
        assert!(path3().is_usable(&set(3, &[0, 1, 2])));
    }

    #[test]
    fn deleting_a_boundary_vertex() {
        let p = octahedron();
        let (q, map) = p.delete_vertices(&set(6, &[0])).unwrap();
        let b: Vec<usize> = q.boundary().vertices.iter().map(|v| map[v]).collect();
        assert_eq!(b, vec![1, 2, 4, 5]);
    }

    #[test]
    fn disconnected_embedding() {
        // two disjoint triangles and an isolated vertex
        let faces = vec![vec![0, 1, 2], vec![0, 2, 1], vec![3, 4, 5], vec![3, 5, 4]];
        let p = PlaneGraph::from_faces(7, &faces, &[1, 3]).unwrap();
        let b = p.boundary();
        assert_eq!(b.walks.len(), 3);
        assert_eq!(b.vertices.len(), 7);
        assert!(!b.is_cycle);
        assert!(p.is_usable(&set(7, &[0, 1, 3, 6])));
        assert!(p
            .cycle_split(&CycleRef::new(vec![0, 1, 2]))
            .unwrap()
            .interior
            .is_empty());
        assert!(matches!(
            PlaneGraph::from_faces(7, &faces, &[1]),
            Err(EmbeddingError::MissingOuter(3))
        ));
    }
}
