//! Named plane graphs and seeded generators.
//!
//! All generators build a face list and hand it to
//! [`PlaneGraph::from_faces`], so every output is a validated embedding.
//! Randomness comes from ChaCha seeded with the given 64-bit seed, which
//! makes the output a pure function of the parameters.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plane::{EmbeddingError, PlaneGraph};
use crate::special::{q_template, QKind};

pub const NAMES: [&str; 10] = [
    "K4",
    "octahedron",
    "icosahedron",
    "Q1",
    "Q2",
    "Q2+",
    "Q3",
    "Q4",
    "Q4+",
    "Q4++",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("unknown instance name {0:?}")]
    UnknownName(String),
    #[error("unknown generator kind {0:?}")]
    UnknownKind(String),
    #[error("{kind} needs at least {min} vertices, got {n}")]
    TooSmall { kind: &'static str, min: usize, n: usize },
    #[error("input is not a plane triangulation")]
    NotTriangulation,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

pub fn named(name: &str) -> Result<PlaneGraph, InstanceError> {
    match name {
        "K4" => Ok(k4()),
        "octahedron" => Ok(q_template(QKind::Q1).plane.clone()),
        "icosahedron" => Ok(icosahedron()),
        other => QKind::from_name(other)
            .map(|k| q_template(k).plane.clone())
            .ok_or_else(|| InstanceError::UnknownName(other.to_string())),
    }
}

fn k4() -> PlaneGraph {
    let faces = vec![vec![0, 2, 1], vec![0, 3, 2], vec![0, 1, 3], vec![1, 2, 3]];
    PlaneGraph::from_faces(4, &faces, &[3]).expect("tetrahedron")
}

/// Apex 0, upper ring 1..=5, lower ring 6..=10, apex 11; the triangle
/// 0-1-2 is the infinite face.
fn icosahedron() -> PlaneGraph {
    let up = |i: usize| 1 + i % 5;
    let low = |i: usize| 6 + i % 5;
    let mut faces = Vec::new();
    for i in 0..5 {
        faces.push(vec![0, up(i), up(i + 1)]);
        faces.push(vec![up(i), low(i), up(i + 1)]);
        faces.push(vec![up(i + 1), low(i), low(i + 1)]);
        faces.push(vec![11, low(i + 1), low(i)]);
    }
    PlaneGraph::from_faces(12, &faces, &[0]).expect("icosahedron")
}

/// Stacked triangulation: start from a triangle and repeatedly put a new
/// vertex into a uniformly random bounded face, joined to its corners.
pub fn stacked_triangulation(n: usize, seed: u64) -> Result<PlaneGraph, InstanceError> {
    if n < 3 {
        return Err(InstanceError::TooSmall {
            kind: "stacked",
            min: 3,
            n,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inner = vec![[0usize, 1, 2]];
    for v in 3..n {
        let i = rng.random_range(0..inner.len());
        let [a, b, c] = inner.swap_remove(i);
        inner.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }
    let mut faces: Vec<Vec<usize>> = inner.iter().map(|f| f.to_vec()).collect();
    faces.push(vec![0, 2, 1]);
    let outer = faces.len() - 1;
    Ok(PlaneGraph::from_faces(n, &faces, &[outer])?)
}

/// Performs `flips` random diagonal flips on edges off the infinite face.
/// A flip that would duplicate an edge is skipped but still counts.
pub fn flip_walk(p: &PlaneGraph, flips: usize, seed: u64) -> Result<PlaneGraph, InstanceError> {
    let is_triangulation = p.faces().iter().all(|f| f.len() == 3) && p.graph().components().len() == 1;
    if !is_triangulation || p.n() < 3 {
        return Err(InstanceError::NotTriangulation);
    }
    if flips == 0 {
        return Ok(p.clone());
    }
    let outer = p.outer_faces()[0];
    let outer_walk = p.faces()[outer].walk.clone();
    let outer_edges: Vec<(usize, usize)> = (0..3)
        .map(|i| {
            let (a, b) = (outer_walk[i], outer_walk[(i + 1) % 3]);
            (a.min(b), a.max(b))
        })
        .collect();
    let mut rotation: Vec<Vec<usize>> = p.rotation().to_vec();
    let mut edges: Vec<(usize, usize)> = p.graph().edges().filter(|e| !outer_edges.contains(e)).collect();
    if edges.is_empty() {
        return Ok(p.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let succ = |rot: &Vec<Vec<usize>>, v: usize, u: usize| {
        let r = &rot[v];
        r[(r.iter().position(|&x| x == u).unwrap() + 1) % r.len()]
    };
    for _ in 0..flips {
        let idx = rng.random_range(0..edges.len());
        let (u, v) = edges[idx];
        // faces u->v->w and v->u->x
        let w = succ(&rotation, v, u);
        let x = succ(&rotation, u, v);
        if w == x || rotation[w].contains(&x) {
            continue;
        }
        rotation[u].retain(|&t| t != v);
        rotation[v].retain(|&t| t != u);
        // around w, x goes between v and u; around x, w goes between u and v
        let pos = rotation[w].iter().position(|&t| t == v).unwrap();
        rotation[w].insert(pos + 1, x);
        let pos = rotation[x].iter().position(|&t| t == u).unwrap();
        rotation[x].insert(pos + 1, w);
        edges[idx] = (w.min(x), w.max(x));
    }
    let dart = (outer_walk[0], outer_walk[1]);
    Ok(PlaneGraph::from_rotation(rotation, &[dart])?)
}

/// A random triangulation of the polygon `0..n`, built by cutting off
/// random ears. Every vertex lies on the infinite face.
pub fn maximal_outerplanar(n: usize, seed: u64) -> Result<PlaneGraph, InstanceError> {
    if n < 3 {
        return Err(InstanceError::TooSmall {
            kind: "outerplanar",
            min: 3,
            n,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut polygon: Vec<usize> = (0..n).collect();
    let mut faces = Vec::new();
    while polygon.len() > 3 {
        let i = rng.random_range(0..polygon.len());
        let len = polygon.len();
        faces.push(vec![polygon[(i + len - 1) % len], polygon[i], polygon[(i + 1) % len]]);
        polygon.remove(i);
    }
    faces.push(polygon);
    faces.push((0..n).rev().collect());
    let outer = faces.len() - 1;
    Ok(PlaneGraph::from_faces(n, &faces, &[outer])?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    Named(String),
    Stacked,
    Flipped,
    Outerplanar,
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceKind::Named(name) => write!(f, "named:{name}"),
            InstanceKind::Stacked => f.write_str("stacked"),
            InstanceKind::Flipped => f.write_str("flipped"),
            InstanceKind::Outerplanar => f.write_str("outerplanar"),
        }
    }
}

impl FromStr for InstanceKind {
    type Err = InstanceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "stacked" => Ok(InstanceKind::Stacked),
            "flipped" => Ok(InstanceKind::Flipped),
            "outerplanar" => Ok(InstanceKind::Outerplanar),
            _ => {
                let name = s.strip_prefix("named:").unwrap_or(s);
                if NAMES.contains(&name) {
                    Ok(InstanceKind::Named(name.to_string()))
                } else {
                    Err(InstanceError::UnknownKind(s.to_string()))
                }
            }
        }
    }
}

/// Everything needed to regenerate an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub kind: InstanceKind,
    pub n: usize,
    pub seed: u64,
    pub flips: usize,
}

impl InstanceSpec {
    pub fn generate(&self) -> Result<PlaneGraph, InstanceError> {
        match &self.kind {
            InstanceKind::Named(name) => named(name),
            InstanceKind::Stacked => stacked_triangulation(self.n, self.seed),
            InstanceKind::Flipped => {
                let base = stacked_triangulation(self.n, self.seed)?;
                // the flip stream gets its own seed so it does not replay the insertions
                flip_walk(&base, self.flips, self.seed ^ 0x9e37_79b9_7f4a_7c15)
            }
            InstanceKind::Outerplanar => maximal_outerplanar(self.n, self.seed),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneracy::degeneracy;
    use crate::io::to_rotation_json;

    #[test]
    fn named_sizes() {
        let oct = named("octahedron").unwrap();
        assert_eq!((oct.n(), oct.graph().edge_count()), (6, 12));
        assert!((0..6).all(|v| oct.graph().degree(v) == 4));
        let ico = named("icosahedron").unwrap();
        assert_eq!((ico.n(), ico.graph().edge_count()), (12, 30));
        assert!((0..12).all(|v| ico.graph().degree(v) == 5));
        assert_eq!(ico.faces().len(), 20);
        assert_eq!(ico.boundary().vertices.len(), 3);
        let q3 = named("Q3").unwrap();
        assert_eq!(q3.n(), 7);
        assert!(q3.boundary().is_cycle);
        assert_eq!(q3.boundary().vertices.len(), 4);
        assert_eq!(
            named("dodecahedron").unwrap_err(),
            InstanceError::UnknownName("dodecahedron".into())
        );
    }

    #[test]
    fn stacked_small_cases() {
        let t = stacked_triangulation(3, 1).unwrap();
        assert_eq!(t.graph().edge_count(), 3);
        let k = stacked_triangulation(4, 9).unwrap();
        assert_eq!(k.graph().edge_count(), 6);
        assert!(stacked_triangulation(2, 0).is_err());
        for seed in 0..20 {
            let p = stacked_triangulation(12, seed).unwrap();
            assert_eq!(p.graph().edge_count(), 3 * 12 - 6);
            assert!(p.is_near_triangulation());
            assert!(degeneracy(p.graph()).0 <= 3);
        }
        assert_eq!(
            to_rotation_json(&stacked_triangulation(10, 7).unwrap()),
            to_rotation_json(&stacked_triangulation(10, 7).unwrap())
        );
    }

    #[test]
    fn flips_preserve_triangulation() {
        let base = stacked_triangulation(10, 3).unwrap();
        assert_eq!(
            to_rotation_json(&flip_walk(&base, 0, 1).unwrap()),
            to_rotation_json(&base)
        );
        for seed in 0..20 {
            let p = flip_walk(&base, 40, seed).unwrap();
            assert_eq!(p.graph().edge_count(), 24);
            assert!(p.faces().iter().all(|f| f.len() == 3));
            assert_eq!(p.boundary().vertices, base.boundary().vertices);
        }
        let tri = stacked_triangulation(3, 0).unwrap();
        assert_eq!(
            to_rotation_json(&flip_walk(&tri, 10, 0).unwrap()),
            to_rotation_json(&tri)
        );
        let k4 = named("K4").unwrap();
        let flipped = flip_walk(&k4, 25, 5).unwrap();
        assert_eq!(to_rotation_json(&flipped), to_rotation_json(&k4));
    }

    #[test]
    fn outerplanar_shape() {
        assert_eq!(maximal_outerplanar(3, 0).unwrap().graph().edge_count(), 3);
        for seed in 0..10 {
            let p = maximal_outerplanar(5, seed).unwrap();
            assert_eq!(p.graph().edge_count(), 7);
            assert_eq!(p.boundary().vertices.len(), 5);
            assert!(p.is_near_triangulation());
        }
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("stacked".parse::<InstanceKind>().unwrap(), InstanceKind::Stacked);
        assert_eq!(
            "Q4++".parse::<InstanceKind>().unwrap(),
            InstanceKind::Named("Q4++".into())
        );
        assert!("wheel".parse::<InstanceKind>().is_err());
    }
}
