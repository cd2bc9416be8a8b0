#![allow(dead_code)]

use fumlab::generators::*;
use fumlab::plane_graph::PlaneGraph;

/// Graphs small enough for the brute-force oracles (n <= 8).
pub fn small_suite() -> Vec<(String, PlaneGraph)> {
    let mut out = Vec::new();
    for n in 3..=7 {
        out.push((format!("C{n}"), gen_cycle(n).unwrap()));
    }
    for n in 2..=5 {
        out.push((format!("P{n}"), gen_path(n).unwrap()));
    }
    out.push(("K4".into(), gen_k4()));
    out.push(("W4".into(), gen_wheel(4).unwrap()));
    out.push(("W5".into(), gen_wheel(5).unwrap()));
    out.push(("H1".into(), gen_gadget(1).unwrap().graph));
    out
}

/// Everything the generators produce, connected or not.
pub fn generator_suite() -> Vec<(String, PlaneGraph)> {
    let mut out = small_suite();
    for k in 2..=5 {
        out.push((format!("H{k}"), gen_gadget(k).unwrap().graph));
    }
    out.push(("P1".into(), gen_path(1).unwrap()));
    out.push(("W8".into(), gen_wheel(8).unwrap()));
    let fig1 = gen_fig1();
    let a4 = fig1.vertex_by_label("a4").unwrap();
    let a2p = fig1.vertex_by_label("a2'").unwrap();
    out.push(("fig1-minus-bridge".into(), fig1.remove_edge(a4, a2p).unwrap()));
    out.push(("fig1".into(), fig1));
    out.push(("k4-composite".into(), gen_k4_composite(&default_k4_faces(), 1).unwrap()));
    out.push((
        "k4-composite-all-k2".into(),
        gen_k4_composite(&(0..4).collect(), 2).unwrap(),
    ));
    let spec = AttachmentSpec::new(FaceRef::Index(2), gen_gadget(1).unwrap());
    out.push(("k4+H1".into(), attach_gadget(&gen_k4(), &spec).unwrap()));
    out
}
