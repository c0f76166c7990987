//! Edge-list and rotation-JSON formats.
//!
//! Edge lists are `n m` on the first line followed by `m` lines `u v`.
//! Rotation JSON is
//! `{"n": .., "rotations": [[clockwise neighbours], ..], "outer_face": [walk]}`;
//! a disconnected graph lists the infinite faces of its other components in
//! `extra_outer_faces`. Serialization is canonical: every rotation starts at
//! its smallest neighbour and every outer walk at its smallest vertex.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::plane::{Dart, EmbeddingError, PlaneGraph};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses the edge-list format. Blank lines are skipped; positions are
/// 1-based.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let last_line = text.lines().count().max(1);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "empty input, expected \"n m\""))?;
    let [n, m] = parse_pair(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    let mut edge_lines = Vec::with_capacity(m);
    for i in 0..m {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| parse_err(last_line + 1, 1, format!("expected {m} edges, found {i}")))?;
        let [u, v] = parse_pair(lno, line)?;
        edges.push((u, v));
        edge_lines.push(lno);
    }
    if let Some((lno, line)) = lines.next() {
        let col = line.len() - line.trim_start().len() + 1;
        return Err(parse_err(lno, col, format!("unexpected content after {m} edges")));
    }
    // re-run edge by edge to attribute the error to a line
    Graph::new(n, edges.iter().copied()).map_err(|source| {
        let line = (1..=edges.len())
            .find(|&j| Graph::new(n, edges[..j].iter().copied()).is_err())
            .map(|j| edge_lines[j - 1])
            .unwrap_or(hline);
        FormatError::Graph { line, source }
    })
}

fn parse_pair(lno: usize, line: &str) -> Result<[usize; 2], FormatError> {
    let mut out = [0usize; 2];
    let mut fields = 0;
    let mut offset = 0;
    for token in line.split_whitespace() {
        let col = line[offset..].find(token).map(|p| p + offset).unwrap_or(offset) + 1;
        offset = col - 1 + token.len();
        if fields == 2 {
            return Err(parse_err(lno, col, format!("unexpected token {token:?}")));
        }
        out[fields] = token
            .parse()
            .map_err(|_| parse_err(lno, col, format!("expected a non-negative integer, got {token:?}")))?;
        fields += 1;
    }
    if fields < 2 {
        return Err(parse_err(lno, line.len() + 1, "expected two integers"));
    }
    Ok(out)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationJson {
    pub n: usize,
    pub rotations: Vec<Vec<usize>>,
    pub outer_face: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_outer_faces: Vec<Vec<usize>>,
}

fn rotate_to_min(walk: &[usize]) -> Vec<usize> {
    let Some(&min) = walk.iter().min() else {
        return Vec::new();
    };
    (0..walk.len())
        .filter(|&s| walk[s] == min)
        .map(|s| walk[s..].iter().chain(&walk[..s]).copied().collect::<Vec<_>>())
        .min()
        .unwrap()
}

impl RotationJson {
    pub fn from_plane(p: &PlaneGraph) -> RotationJson {
        let rotations = p.rotation().iter().map(|r| rotate_to_min(r)).collect();
        let mut walks: Vec<Vec<usize>> = p
            .outer_faces()
            .into_iter()
            .map(|f| rotate_to_min(&p.faces()[f].walk))
            .collect();
        walks.sort();
        let mut walks = walks.into_iter();
        RotationJson {
            n: p.n(),
            rotations,
            outer_face: walks.next().unwrap_or_default(),
            extra_outer_faces: walks.collect(),
        }
    }

    pub fn to_plane(&self) -> Result<PlaneGraph, EmbeddingError> {
        if self.rotations.len() != self.n {
            return Err(EmbeddingError::RotationMismatch(self.rotations.len().min(self.n)));
        }
        let walks: Vec<&Vec<usize>> = std::iter::once(&self.outer_face)
            .chain(self.extra_outer_faces.iter())
            .filter(|w| w.len() >= 2)
            .collect();
        let darts: Vec<Dart> = walks.iter().map(|w| (w[0], w[1])).collect();
        let p = PlaneGraph::from_rotation(self.rotations.clone(), &darts)?;
        for w in walks {
            let f = p
                .face_of_dart(w[0], w[1])
                .ok_or_else(|| EmbeddingError::OuterNotAFace(w.clone()))?;
            if rotate_to_min(&p.faces()[f].walk) != rotate_to_min(w) {
                return Err(EmbeddingError::OuterNotAFace(w.clone()));
            }
        }
        Ok(p)
    }
}

/// Canonical compact rotation JSON.
pub fn to_rotation_json(p: &PlaneGraph) -> String {
    serde_json::to_string(&RotationJson::from_plane(p)).expect("plain data")
}

pub fn parse_rotation_json(text: &str) -> Result<PlaneGraph, FormatError> {
    let raw: RotationJson = serde_json::from_str(text).map_err(|e| FormatError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(raw.to_plane()?)
}

/// SHA-256 of the canonical rotation JSON, hex encoded.
pub fn instance_hash(p: &PlaneGraph) -> String {
    hex::encode(Sha256::digest(to_rotation_json(p).as_bytes()))
}

/// A graph read from disk: rotation JSON gives an embedding, an edge list
/// only the graph.
#[derive(Clone, Debug)]
pub enum Loaded {
    Plane(PlaneGraph),
    Plain(Graph),
}

impl Loaded {
    pub fn graph(&self) -> &Graph {
        match self {
            Loaded::Plane(p) => p.graph(),
            Loaded::Plain(g) => g,
        }
    }
}

/// Parses either format, telling them apart by a leading `{`.
pub fn parse_any(text: &str) -> Result<Loaded, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_rotation_json(text).map(Loaded::Plane)
    } else {
        parse_edge_list(text).map(Loaded::Plain)
    }
}

pub fn load(path: &Path) -> Result<Loaded, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_any(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::fixtures;

    #[test]
    fn edge_list_round_trip() {
        let g = fixtures::octahedron().graph().clone();
        let text = write_edge_list(&g);
        assert!(text.starts_with("6 12\n"));
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_errors_carry_positions() {
        match parse_edge_list("3 2\n0 1\n") {
            Err(FormatError::Parse { line, message, .. }) => {
                assert_eq!(line, 3);
                assert!(message.contains("expected 2 edges"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_edge_list("3 1\n0 x\n") {
            Err(FormatError::Parse { line: 2, column: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_edge_list("3 2\n0 1\n1 0\n") {
            Err(FormatError::Graph {
                line: 3,
                source: GraphError::DuplicateEdge(0, 1),
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_edge_list(""), Err(FormatError::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("2 1\n0 0\n"), Err(FormatError::Graph { .. })));
    }

    #[test]
    fn rotation_json_is_canonical() {
        let p = fixtures::octahedron();
        let text = to_rotation_json(&p);
        let q = parse_rotation_json(&text).unwrap();
        assert_eq!(to_rotation_json(&q), text);
        let raw: RotationJson = serde_json::from_str(&text).unwrap();
        assert_eq!(raw.outer_face[0], 0);
        assert!(raw.rotations.iter().all(|r| r[0] == *r.iter().min().unwrap()));
        assert_eq!(instance_hash(&p), instance_hash(&q));
        assert_eq!(instance_hash(&p).len(), 64);
    }

    #[test]
    fn rotation_json_rejects_bad_input() {
        let bad_outer = r#"{"n":3,"rotations":[[1,2],[2,0],[0,1]],"outer_face":[0,1,3]}"#;
        assert!(parse_rotation_json(bad_outer).is_err());
        let asym = r#"{"n":3,"rotations":[[1],[],[]],"outer_face":[0,1]}"#;
        assert!(matches!(
            parse_rotation_json(asym),
            Err(FormatError::Embedding(EmbeddingError::AsymmetricRotation(0, 1)))
        ));
        let truncated = r#"{"n":3,"rotations":[[1,2],[2,0],"#;
        assert!(matches!(
            parse_rotation_json(truncated),
            Err(FormatError::Parse { line: 1, .. })
        ));
    }
}
