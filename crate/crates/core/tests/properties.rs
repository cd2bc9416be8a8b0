mod common;

use std::collections::HashSet;

use fumlab::fum::oracle::{brute_force_chromatic_number, brute_force_fum_colorable};
use fumlab::fum::*;
use fumlab::generators::*;
use fumlab::plane_graph::*;
use proptest::prelude::*;

fn suite_graph() -> impl Strategy<Value = (String, PlaneGraph)> {
    proptest::sample::select(common::small_suite())
}

/// Plane graphs obtained by deleting edges from generated ones.
fn thinned_graph() -> impl Strategy<Value = PlaneGraph> {
    (suite_graph(), proptest::collection::vec(any::<proptest::sample::Index>(), 0..6)).prop_map(
        |((_, mut g), picks)| {
            for p in picks {
                let edges = g.edges();
                if edges.is_empty() {
                    break;
                }
                let (u, v) = edges[p.index(edges.len())];
                g = g.remove_edge(u, v).unwrap();
            }
            g
        },
    )
}

fn opts() -> SearchOptions {
    SearchOptions::unbounded()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn faces_partition_the_darts(g in thinned_graph()) {
        let census = trace_faces(&g);
        let mut seen = HashSet::new();
        for face in &census.faces {
            for d in &face.walk {
                prop_assert!(seen.insert(*d), "dart {d} used twice");
            }
        }
        prop_assert_eq!(seen.len(), 2 * g.num_edges());
        prop_assert!(g.component_characteristics().iter().all(|&c| c == 2));
    }

    #[test]
    fn text_format_round_trips(g in thinned_graph()) {
        let text = serialize_graph(&g);
        prop_assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn solver_agrees_with_oracle_on_thinned_graphs(g in thinned_graph(), k in 1u32..=4) {
        let got = solve_fum(&g, k, &opts()).unwrap().is_satisfiable();
        prop_assert_eq!(got, brute_force_fum_colorable(&g, k).unwrap());
    }

    #[test]
    fn certificates_are_sound((_, g) in suite_graph(), k in 1u32..=5, strong in any::<bool>(), threads in 1usize..=3) {
        let o = SearchOptions { strong_pruning: strong, threads, ..opts() };
        let out = solve_fum(&g, k, &o).unwrap();
        if let Some(c) = out.certificate {
            prop_assert!(check_fum(&g, &c, &trace_faces(&g)).unwrap().is_fum());
        }
    }

    #[test]
    fn strong_pruning_never_changes_the_answer((_, g) in suite_graph(), k in 1u32..=5) {
        let on = solve_fum(&g, k, &SearchOptions { strong_pruning: true, ..opts() }).unwrap();
        let off = solve_fum(&g, k, &SearchOptions { strong_pruning: false, ..opts() }).unwrap();
        prop_assert_eq!(on.status, off.status);
        prop_assert_eq!(on.certificate, off.certificate);
    }

    #[test]
    fn satisfiability_is_monotone_in_k((_, g) in suite_graph(), k in 1u32..=4) {
        if let Some(c) = solve_fum(&g, k, &opts()).unwrap().certificate {
            prop_assert!(solve_fum(&g, k + 1, &opts()).unwrap().is_satisfiable());
            let wider = c.with_palette(k + 1).unwrap();
            prop_assert!(check_fum(&g, &wider, &trace_faces(&g)).unwrap().is_fum());
        }
    }

    #[test]
    fn increasing_recoloring_preserves_fum(
        (_, g) in suite_graph(),
        extra in 0u32..4,
        seed in any::<proptest::sample::Index>(),
    ) {
        let (k, c) = chi_fum(&g, &opts()).unwrap();
        let target = k + extra;
        // All strictly increasing maps {1..k} -> {1..target} are subsets of size k.
        let subsets: Vec<Vec<u32>> = subsets_of((1..=target).collect(), k as usize);
        let image = &subsets[seed.index(subsets.len())];
        let mapped = c.recolor(|x| image[x as usize - 1], target).unwrap();
        prop_assert!(check_fum(&g, &mapped, &trace_faces(&g)).unwrap().is_fum());
    }

    #[test]
    fn chi_fum_is_at_least_the_chromatic_number((_, g) in suite_graph()) {
        let (k, _) = chi_fum(&g, &opts()).unwrap();
        prop_assert!(k >= brute_force_chromatic_number(&g).unwrap());
    }
}

fn subsets_of(items: Vec<u32>, size: usize) -> Vec<Vec<u32>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if items.len() < size {
        return Vec::new();
    }
    let head = items[0];
    let rest = items[1..].to_vec();
    let mut out: Vec<Vec<u32>> = subsets_of(rest.clone(), size - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, head);
            s
        })
        .collect();
    out.extend(subsets_of(rest, size));
    out
}

#[test]
fn color_swap_can_break_fum() {
    let g = gen_cycle(4).unwrap();
    let census = trace_faces(&g);
    let c = Coloring::new(vec![1, 2, 1, 3], 3).unwrap();
    assert!(check_fum(&g, &c, &census).unwrap().is_fum());
    let swapped = c.recolor(|x| match x { 1 => 3, 3 => 1, x => x }, 3).unwrap();
    assert!(!check_fum(&g, &swapped, &census).unwrap().is_fum());
}

#[test]
fn generated_graphs_keep_euler_and_round_trip() {
    for (name, g) in common::generator_suite() {
        assert!(g.component_characteristics().iter().all(|&c| c == 2), "{name}");
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g, "{name}");
        let census = trace_faces(&g);
        let total: usize = census.faces.iter().map(Face::len).sum();
        assert_eq!(total, 2 * g.num_edges(), "{name}");
        // Same input, same face order.
        assert_eq!(trace_faces(&parse_graph(&serialize_graph(&g)).unwrap()), census, "{name}");
    }
}
