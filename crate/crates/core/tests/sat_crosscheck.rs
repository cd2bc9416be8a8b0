mod common;

use fumlab::fum::*;
use fumlab::generators::gen_fig1;
use fumlab::plane_graph::trace_faces;
use fumlab::sat::*;
use proptest::prelude::*;

#[test]
fn encoding_sizes_follow_the_closed_form() {
    for (name, g) in common::generator_suite() {
        let census = trace_faces(&g);
        let sizes: Vec<usize> = census.faces.iter().map(|f| f.vertices.len()).collect();
        for k in 1..=5 {
            let f = encode_fum(&g, k);
            assert_eq!(f.num_vars, (g.num_vertices() + census.len()) * k as usize, "{name}");
            assert_eq!(
                f.clauses.len(),
                fum_clause_count(g.num_vertices(), g.num_edges(), &sizes, k as usize),
                "{name} k={k}"
            );
        }
    }
}

#[test]
fn fig1_encodings_decide_like_the_search() {
    let g = gen_fig1();
    assert!(solve_cnf(&encode_fum(&g, 4), None).unwrap().is_none());
    let f = encode_fum(&g, 5);
    let model = solve_cnf(&f, None).unwrap().unwrap();
    // Go through the external-solver text path.
    let text = format!(
        "s SATISFIABLE\nv {} 0\n",
        (1..=f.num_vars)
            .map(|v| if model.value(v) { v as i64 } else { -(v as i64) })
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    let reread = read_model(&text, f.num_vars).unwrap();
    let c = decode_model(&f, &reread).unwrap();
    let census = trace_faces(&g);
    assert!(check_fum(&g, &c, &census).unwrap().is_fum());
    for face in &census.faces {
        let max = face.vertices.iter().map(|&v| c.color(v)).max().unwrap();
        assert_eq!(face.vertices.iter().filter(|&&v| c.color(v) == max).count(), 1);
    }
}

#[test]
fn dimacs_round_trip_on_a_real_encoding() {
    let f = encode_fum(&gen_fig1(), 4);
    let text = write_dimacs(&f);
    assert!(text.contains("\np cnf 140 "));
    let back = parse_dimacs(&text).unwrap();
    assert_eq!(back.num_vars, f.num_vars);
    assert_eq!(back.clauses, f.clauses);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn equisatisfiable_with_search(
        (_, g) in proptest::sample::select(common::small_suite()),
        k in 1u32..=5,
    ) {
        let f = encode_fum(&g, k);
        let model = solve_cnf(&f, None).unwrap();
        let search = solve_fum(&g, k, &SearchOptions::unbounded()).unwrap();
        prop_assert_eq!(model.is_some(), search.is_satisfiable());
        if let Some(a) = model {
            let c = decode_model(&f, &a).unwrap();
            prop_assert!(check_fum(&g, &c, &trace_faces(&g)).unwrap().is_fum());
        }
    }
}
