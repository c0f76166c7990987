mod common;

use std::collections::BTreeSet;

use common::*;
use degen_core::degeneracy::{collect_order, degeneracy, is_a_good, is_d_degenerate, ka_degenerate_ordering};
use degen_core::graph::{Graph, VertexSet};
use degen_core::instances::{maximal_outerplanar, InstanceKind, InstanceSpec};
use degen_core::io::{parse_edge_list, parse_rotation_json, to_rotation_json, write_edge_list};
use degen_core::plane::{CycleRef, PlaneGraph};
use degen_core::solver::{alpha_bb, alpha_oracle, check_theorem, greedy_heuristic, Budget};
use degen_core::special::{enumerate_cycles, enumerate_special, q_family, tau};
use proptest::prelude::*;

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

fn subset_of(n: usize) -> impl Strategy<Value = VertexSet> {
    proptest::collection::vec(any::<bool>(), n)
        .prop_map(move |bits| VertexSet::from_vertices(n, (0..n).filter(|&v| bits[v])).unwrap())
}

fn graph_with_sets(max_n: usize) -> impl Strategy<Value = (Graph, VertexSet, VertexSet)> {
    small_graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), subset_of(n), subset_of(n))
    })
}

fn plane_instance(max_n: usize) -> impl Strategy<Value = PlaneGraph> {
    (0..3usize, 3..=max_n, any::<u64>(), 0..40usize).prop_map(|(kind, n, seed, flips)| {
        let kind = match kind {
            0 => InstanceKind::Stacked,
            1 => InstanceKind::Flipped,
            _ => InstanceKind::Outerplanar,
        };
        InstanceSpec { kind, n, seed, flips }.generate().unwrap()
    })
}

/// Largest minimum degree met while repeatedly deleting a minimum-degree vertex.
fn peel_value(g: &Graph) -> usize {
    let mut alive: BTreeSet<usize> = (0..g.n()).collect();
    let mut best = 0;
    while !alive.is_empty() {
        let deg = |v: usize| g.neighbors(v).iter().filter(|w| alive.contains(w)).count();
        let v = *alive.iter().min_by_key(|&&v| deg(v)).unwrap();
        best = best.max(deg(v));
        alive.remove(&v);
    }
    best
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Whether some ordering of all vertices puts `a` first and keeps every
/// other back-degree at most `k`, by trying every ordering of the rest.
fn exhaustive_ka(g: &Graph, a: &VertexSet, k: usize) -> bool {
    let rest: Vec<usize> = (0..g.n()).filter(|&v| !a.contains(v)).collect();
    permutations(&rest).into_iter().any(|tail| {
        let order: Vec<usize> = a.iter().chain(tail.iter().copied()).collect();
        let back = back_degrees(g, &order);
        order.iter().zip(&back).all(|(&v, &b)| a.contains(v) || b <= k)
    })
}

/// Whether `y` can be removed in some order, each removed vertex outside `a`
/// with at most `k` surviving neighbours unless only `a` vertices remain.
fn exhaustive_collect(g: &Graph, a: &VertexSet, y: &VertexSet, k: usize) -> bool {
    permutations(&y.to_vec()).into_iter().any(|order| {
        let mut alive = VertexSet::full(g.n());
        order.iter().all(|&v| {
            let only_a = alive.iter().all(|u| a.contains(u));
            let ok = only_a || (!a.contains(v) && g.neighbors(v).iter().filter(|&&w| alive.contains(w)).count() <= k);
            alive.remove(v);
            ok
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn degeneracy_certificate_and_value(g in small_graph(12)) {
        let (d, ord) = degeneracy(&g);
        prop_assert_eq!(ord.len(), g.n());
        let back = back_degrees(&g, ord.as_slice());
        prop_assert_eq!(back.iter().copied().max().unwrap_or(0), d);
        prop_assert_eq!(d, peel_value(&g));
        prop_assert!(d <= g.max_degree());
        if g.edge_count() == 0 {
            prop_assert_eq!(d, 0);
        }
    }

    #[test]
    fn empty_prefix_matches_degeneracy(g in small_graph(10), k in 0usize..6) {
        let d = degeneracy(&g).0;
        prop_assert_eq!(ka_degenerate_ordering(&g, &VertexSet::new(g.n()), k).is_some(), d <= k);
        prop_assert_eq!(is_d_degenerate(&g, k), d <= k);
    }

    #[test]
    fn orderings_verify_by_counting((g, a, _) in graph_with_sets(10), k in 0usize..5) {
        if let Some(ord) = ka_degenerate_ordering(&g, &a, k) {
            let order = ord.as_slice();
            prop_assert_eq!(order.len(), g.n());
            prop_assert!(order[..a.len()].iter().all(|&v| a.contains(v)));
            let back = back_degrees(&g, order);
            prop_assert!(order.iter().zip(&back).all(|(&v, &b)| a.contains(v) || b <= k));
        }
    }

    #[test]
    fn a_good_is_closed_under_subsets((g, a, y) in graph_with_sets(10)) {
        if is_a_good(&g, &a, &y).is_some() {
            for v in y.iter() {
                let mut smaller = y.clone();
                smaller.remove(v);
                prop_assert!(is_a_good(&g, &a, &smaller).is_some());
            }
        }
    }

    #[test]
    fn greedy_peeling_is_complete((g, a, y) in graph_with_sets(7), k in 0usize..4) {
        prop_assert_eq!(ka_degenerate_ordering(&g, &a, k).is_some(), exhaustive_ka(&g, &a, k));
        prop_assert_eq!(collect_order(&g, &a, &y).is_some(), exhaustive_collect(&g, &a, &y, 3));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn faces_cover_every_dart_once(p in plane_instance(14)) {
        let g = p.graph();
        let mut seen = BTreeSet::new();
        for f in p.faces() {
            for d in f.darts() {
                prop_assert!(seen.insert(d));
            }
        }
        prop_assert_eq!(seen.len(), 2 * g.edge_count());
        prop_assert_eq!(g.n() + p.faces().len(), g.edge_count() + 2);
        prop_assert!(p.is_near_triangulation());
    }

    #[test]
    fn cycle_splits_partition_the_vertices(p in plane_instance(9)) {
        let n = p.n();
        for cycle in enumerate_cycles(&p, 3, n) {
            let c = CycleRef::new(cycle.clone());
            let split = p.cycle_split(&c).unwrap();
            let on_cycle = set(n, &cycle);
            prop_assert!(split.interior.is_disjoint(&split.exterior));
            prop_assert!(split.interior.is_disjoint(&on_cycle));
            prop_assert_eq!(split.interior.len() + split.exterior.len() + cycle.len(), n);
            prop_assert_eq!(split.inn_closed.graph.n(), cycle.len() + split.interior.len());
            prop_assert_eq!(split.ext_closed.graph.n(), cycle.len() + split.exterior.len());
            let flipped = p.cycle_split(&c.flipped()).unwrap();
            prop_assert_eq!(&flipped.interior, &split.exterior);
            prop_assert_eq!(&flipped.exterior, &split.interior);
        }
    }

    #[test]
    fn usable_sets_on_outerplanar(n in 3usize..=14, seed in any::<u64>()) {
        let p = maximal_outerplanar(n, seed).unwrap();
        let g = p.graph();
        let mut sets = vec![VertexSet::new(n)];
        sets.extend(p.admissible_paths().iter().map(|path| set(n, path)));
        for a in sets {
            prop_assert!(p.is_usable(&a));
            prop_assert!((0..n).all(|v| g.neighbors(v).iter().filter(|&&w| a.contains(w)).count() <= 2));
            prop_assert!(ka_degenerate_ordering(g, &a, 2).is_some());
        }
    }

    #[test]
    fn serialization_round_trips(p in plane_instance(14)) {
        let text = to_rotation_json(&p);
        let back = parse_rotation_json(&text).unwrap();
        prop_assert_eq!(to_rotation_json(&back), text);
        prop_assert_eq!(back.graph(), p.graph());
        prop_assert_eq!(&parse_edge_list(&write_edge_list(p.graph())).unwrap(), p.graph());
    }

    #[test]
    fn generation_is_deterministic(kind in 0..3usize, n in 3usize..=14, seed in any::<u64>(), flips in 0..40usize) {
        let kind = [InstanceKind::Stacked, InstanceKind::Flipped, InstanceKind::Outerplanar][kind].clone();
        let s = InstanceSpec { kind, n, seed, flips };
        prop_assert_eq!(to_rotation_json(&s.generate().unwrap()), to_rotation_json(&s.generate().unwrap()));
    }

    #[test]
    fn packing_invariants(p in plane_instance(12)) {
        let boundary = p.boundary().vertices;
        for r in enumerate_special(&p) {
            let mut y: Vec<usize> = r.x_c.iter().chain(&r.t_c).copied().collect();
            y.sort_unstable();
            prop_assert_eq!(&r.y_c, &y);
            let mut ybar: Vec<usize> = r.cycle.iter().copied().filter(|v| !r.x_c.contains(v)).collect();
            ybar.sort_unstable();
            prop_assert_eq!(&r.ybar_c, &ybar);
            prop_assert_eq!(r.exposed, r.x_c.iter().all(|&v| boundary.contains(v)));
        }
        let packing = tau(&p);
        prop_assert!(packing.is_feasible());
        prop_assert!(packing.tau <= (p.n() - boundary.len()) / 3);
        prop_assert!(boundary.len() >= packing.tau + 2);
    }

    #[test]
    fn solvers_agree_and_are_ordered(p in plane_instance(12), k in 0usize..5) {
        let g = p.graph();
        let n = g.n();
        let a = VertexSet::new(n);
        let oracle = alpha_oracle(g, &a, k).unwrap().optimum;
        let bb = alpha_bb(g, &a, k, Budget::unlimited()).unwrap();
        let greedy = greedy_heuristic(g, &a, k).optimum;
        prop_assert!(bb.exact);
        prop_assert_eq!(bb.optimum, oracle);
        prop_assert!(greedy <= bb.optimum && bb.optimum <= n);
        let next = alpha_bb(g, &a, k + 1, Budget::unlimited()).unwrap().optimum;
        prop_assert!(bb.optimum <= next);
    }

    #[test]
    fn planar_floor_and_ceiling(p in plane_instance(14)) {
        let g = p.graph();
        let n = g.n();
        let a = VertexSet::new(n);
        prop_assert_eq!(alpha_bb(g, &a, 5, Budget::unlimited()).unwrap().optimum, n);
        prop_assert!(alpha_bb(g, &a, 0, Budget::unlimited()).unwrap().optimum >= n.div_ceil(4));
    }

    #[test]
    fn larger_prefix_never_lowers_f(p in plane_instance(12)) {
        let g = p.graph();
        let n = g.n();
        for path in p.admissible_paths().into_iter().filter(|path| path.len() >= 2) {
            let big = set(n, &path);
            let small = set(n, &path[..1]);
            let f_none = alpha_bb(g, &VertexSet::new(n), 3, Budget::unlimited()).unwrap().optimum;
            let f_small = alpha_bb(g, &small, 3, Budget::unlimited()).unwrap().optimum;
            let f_big = alpha_bb(g, &big, 3, Budget::unlimited()).unwrap();
            prop_assert!(f_none <= f_small && f_small <= f_big.optimum);
            prop_assert_eq!(f_big.optimum, alpha_oracle(g, &big, 3).unwrap().optimum);
            let report = check_theorem(&p, &big, Budget::unlimited()).unwrap();
            prop_assert!(report.holds);
        }
    }
}

#[test]
fn template_triangle_shares_a_face_with_ybar() {
    for t in q_family() {
        let [x, y, z] = t.triangle;
        let ybar: Vec<usize> = t.boundary.iter().copied().filter(|v| !t.x_set.contains(v)).collect();
        if ybar.is_empty() {
            continue;
        }
        let witnesses: Vec<usize> = [x, y, z]
            .into_iter()
            .filter(|&v| {
                t.plane.faces().iter().enumerate().any(|(i, f)| {
                    let vs = f.vertices();
                    !t.plane.is_outer_face(i) && vs.contains(&v) && ybar.iter().all(|u| vs.contains(u))
                })
            })
            .collect();
        assert_eq!(witnesses, vec![z], "{}", t.kind);
    }
}
