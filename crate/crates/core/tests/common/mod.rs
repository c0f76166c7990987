#![allow(dead_code)]

use degen_core::graph::{Graph, VertexSet};
use degen_core::instances::{InstanceKind, InstanceSpec};
use degen_core::plane::PlaneGraph;
use degen_core::special::{q_template, QKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Whether the vertex mask induces a k-degenerate subgraph, by repeatedly
/// stripping any vertex of degree at most k.
pub fn mask_is_degenerate(g: &Graph, mask: u32, k: usize) -> bool {
    let mut alive = mask;
    loop {
        if alive == 0 {
            return true;
        }
        let low = (0..g.n())
            .find(|&v| alive >> v & 1 == 1 && g.neighbors(v).iter().filter(|&&w| alive >> w & 1 == 1).count() <= k);
        match low {
            Some(v) => alive &= !(1 << v),
            None => return false,
        }
    }
}

/// Largest k-degenerate induced subgraph by checking every vertex subset.
pub fn brute_alpha(g: &Graph, k: usize) -> usize {
    assert!(g.n() <= 20);
    (0u32..1 << g.n())
        .filter(|&m| mask_is_degenerate(g, m, k))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Back-degrees of an ordering counted directly from the edge list.
pub fn back_degrees(g: &Graph, order: &[usize]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut back = vec![0; order.len()];
    for (u, v) in g.edges() {
        if pos[u] != usize::MAX && pos[v] != usize::MAX {
            back[pos[u].max(pos[v])] += 1;
        }
    }
    back
}

pub fn set(n: usize, vs: &[usize]) -> VertexSet {
    VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
}

pub fn spec(kind: InstanceKind, n: usize, seed: u64, flips: usize) -> InstanceSpec {
    InstanceSpec { kind, n, seed, flips }
}

/// Stacked triangulations with flips, sizes cycling through `lo..=hi`.
pub fn triangulation_corpus(count: usize, lo: usize, hi: usize, base_seed: u64) -> Vec<(InstanceSpec, PlaneGraph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    (0..count)
        .map(|i| {
            let n = lo + i % (hi - lo + 1);
            let flips = rng.random_range(0..=4 * n);
            let s = spec(InstanceKind::Flipped, n, rng.random(), flips);
            let p = s.generate().unwrap();
            (s, p)
        })
        .collect()
}

pub fn outerplanar_corpus(count: usize, lo: usize, hi: usize, base_seed: u64) -> Vec<(InstanceSpec, PlaneGraph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    (0..count)
        .map(|i| {
            let n = lo + i % (hi - lo + 1);
            let s = spec(InstanceKind::Outerplanar, n, rng.random(), 0);
            let p = s.generate().unwrap();
            (s, p)
        })
        .collect()
}

/// Disjoint union of plane graphs, each keeping its own infinite face.
pub fn disjoint_union(parts: &[&PlaneGraph]) -> PlaneGraph {
    let mut faces = Vec::new();
    let mut outer = Vec::new();
    let mut offset = 0;
    for p in parts {
        for (i, f) in p.faces().iter().enumerate() {
            if p.is_outer_face(i) {
                outer.push(faces.len());
            }
            faces.push(f.walk.iter().map(|v| v + offset).collect::<Vec<_>>());
        }
        offset += p.n();
    }
    PlaneGraph::from_faces(offset, &faces, &outer).unwrap()
}

/// Two copies of a template joined by an edge between their `v1` vertices,
/// drawn side by side.
pub fn joined_templates(a: QKind, b: QKind) -> PlaneGraph {
    let ta = &q_template(a).plane;
    let tb = &q_template(b).plane;
    let mut faces: Vec<Vec<usize>> = Vec::new();
    let mut outers = Vec::new();
    for (p, offset) in [(ta, 0), (tb, ta.n())] {
        for (i, f) in p.faces().iter().enumerate() {
            let walk: Vec<usize> = f.walk.iter().map(|v| v + offset).collect();
            if p.is_outer_face(i) {
                outers.push(walk);
            } else {
                faces.push(walk);
            }
        }
    }
    // merge the two infinite faces through the new edge between vertex 0 of each copy
    let rot = |w: &Vec<usize>, start: usize| -> Vec<usize> {
        let i = w.iter().position(|&v| v == start).unwrap();
        w[i..].iter().chain(&w[..i]).copied().collect()
    };
    let wa = rot(&outers[0], 0);
    let wb = rot(&outers[1], ta.n());
    let mut merged = wa.clone();
    merged.push(0);
    merged.extend(wb.iter().copied());
    merged.push(ta.n());
    faces.push(merged);
    let outer = faces.len() - 1;
    PlaneGraph::from_faces(ta.n() + tb.n(), &faces, &[outer]).unwrap()
}
