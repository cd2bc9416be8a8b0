//! Constructors for the gadget family, the two-gadget counterexample, the
//! K4 composites, and small standard graphs.
//!
//! All rotations are counterclockwise and every generated graph carries an
//! outer dart.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::plane_graph::{trace_faces, Dart, FaceId, GraphError, PlaneGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("face {0} does not exist in the host graph")]
    FaceNotFound(String),
    #[error("host anchor {anchor} is not incident with host face {face}")]
    AnchorNotOnFace { anchor: VertexId, face: FaceId },
    #[error("gadget anchor {0} is not on the gadget's outer cycle")]
    AnchorNotOnOuterCycle(VertexId),
    #[error("gadget graph has no designated outer face")]
    NoOuterFace,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A member of the gadget family: two nested cycles `a_1..a_m` (outer) and
/// `b_1..b_m` (inner), `m = 3k + 1`, joined by spokes `a_i b_i` and
/// `b_i a_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetHandle {
    pub graph: PlaneGraph,
    /// `a_1, .., a_{3k+1}`.
    pub outer_cycle: Vec<VertexId>,
    /// `b_1, .., b_{3k+1}`.
    pub inner_cycle: Vec<VertexId>,
    pub k: usize,
}

impl GadgetHandle {
    /// Vertex `a_i` (1-based, as in the usual naming).
    pub fn a(&self, i: usize) -> VertexId {
        self.outer_cycle[i - 1]
    }

    pub fn b(&self, i: usize) -> VertexId {
        self.inner_cycle[i - 1]
    }
}

/// Builds `H_k` on `6k + 2` vertices.
///
/// Vertex `a_i` is index `i - 1` and `b_i` is index `m + i - 1`. The outer
/// face is the a-cycle, traced through dart `(a_1, a_2)`.
pub fn gen_gadget(k: usize) -> Result<GadgetHandle, GenError> {
    if k == 0 {
        return Err(GenError::InvalidParameter("gadget index k must be at least 1".into()));
    }
    let m = 3 * k + 1;
    let a = |i: usize| i % m;
    let b = |i: usize| m + i % m;
    let mut rotations = Vec::with_capacity(2 * m);
    // a_i sits on the outer circle with b_i just ahead of it and b_{i-1}
    // just behind it on the inner circle.
    for i in 0..m {
        rotations.push(vec![a(i + 1), b(i), b(i + m - 1), a(i + m - 1)]);
    }
    for i in 0..m {
        rotations.push(vec![a(i + 1), b(i + 1), b(i + m - 1), a(i)]);
    }
    let labels = (0..m)
        .map(|i| (a(i), format!("a{}", i + 1)))
        .chain((0..m).map(|i| (b(i), format!("b{}", i + 1))));
    let graph = PlaneGraph::new(2 * m, rotations)?
        .with_labels(labels)?
        .with_outer(Dart::new(a(0), a(1)))?;
    Ok(GadgetHandle {
        graph,
        outer_cycle: (0..m).map(a).collect(),
        inner_cycle: (0..m).map(b).collect(),
        k,
    })
}

/// How to pick a face of the host graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceRef {
    /// Index into the host's face census.
    Index(FaceId),
    /// The face containing this dart.
    Containing(Dart),
}

impl std::fmt::Display for FaceRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FaceRef::Index(i) => write!(f, "#{i}"),
            FaceRef::Containing(d) => write!(f, "containing dart {d}"),
        }
    }
}

/// Where and how to embed a gadget inside a face of a host graph.
#[derive(Debug, Clone)]
pub struct AttachmentSpec {
    pub host_face: FaceRef,
    pub gadget: GadgetHandle,
    /// Gadget-local index; must be on the outer cycle.
    pub gadget_anchor: VertexId,
    /// `None` picks the first vertex of the host face's walk.
    pub host_anchor: Option<VertexId>,
    /// Appended to every gadget label.
    pub label_suffix: String,
}

impl AttachmentSpec {
    /// Defaults: gadget anchor `a_4`, host anchor the first vertex of the
    /// host face, labels suffixed with `'`.
    pub fn new(host_face: FaceRef, gadget: GadgetHandle) -> Self {
        let gadget_anchor = gadget.a(4);
        AttachmentSpec {
            host_face,
            gadget,
            gadget_anchor,
            host_anchor: None,
            label_suffix: "'".into(),
        }
    }

    pub fn host_anchor(mut self, v: VertexId) -> Self {
        self.host_anchor = Some(v);
        self
    }

    pub fn gadget_anchor(mut self, v: VertexId) -> Self {
        self.gadget_anchor = v;
        self
    }

    pub fn label_suffix(mut self, suffix: impl Into<String>) -> Self {
        self.label_suffix = suffix.into();
        self
    }
}

/// Embeds a copy of the gadget inside a face of `base`, joined by a single
/// edge from the host anchor to the gadget anchor.
///
/// The gadget's outer face opens into the host face. At the host anchor the
/// new edge goes between the two neighbors that are consecutive along the
/// host face; at the gadget anchor it goes between its two outer-cycle
/// neighbors. Gadget vertices are appended after the host's vertices.
pub fn attach_gadget(base: &PlaneGraph, spec: &AttachmentSpec) -> Result<PlaneGraph, GenError> {
    let census = trace_faces(base);
    let face_id = match spec.host_face {
        FaceRef::Index(i) if i < census.len() => i,
        FaceRef::Containing(d) => census
            .face_of_dart(d)
            .ok_or_else(|| GenError::FaceNotFound(spec.host_face.to_string()))?,
        FaceRef::Index(_) => return Err(GenError::FaceNotFound(spec.host_face.to_string())),
    };
    let face = &census.faces[face_id];
    let host_anchor = spec.host_anchor.unwrap_or_else(|| face.first_vertex());
    if !face.contains_vertex(host_anchor) {
        return Err(GenError::AnchorNotOnFace {
            anchor: host_anchor,
            face: face_id,
        });
    }
    let gadget = &spec.gadget;
    if !gadget.outer_cycle.contains(&spec.gadget_anchor) {
        return Err(GenError::AnchorNotOnOuterCycle(spec.gadget_anchor));
    }
    let gadget_census = trace_faces(&gadget.graph);
    let gadget_outer = gadget_census.outer_face().ok_or(GenError::NoOuterFace)?;

    let offset = base.num_vertices();
    let new_gadget_anchor = spec.gadget_anchor + offset;
    let mut rotations: Vec<Vec<VertexId>> = base.rotations().to_vec();
    rotations.extend(
        gadget
            .graph
            .rotations()
            .iter()
            .map(|rot| rot.iter().map(|&u| u + offset).collect::<Vec<_>>()),
    );

    // Host side: insert right after the predecessor of the host anchor on
    // the face walk.
    match face.walk.iter().find(|d| d.head == host_anchor) {
        Some(d) => {
            let rot = &mut rotations[host_anchor];
            let pos = rot.iter().position(|&w| w == d.tail).unwrap();
            rot.insert(pos + 1, new_gadget_anchor);
        }
        None => rotations[host_anchor].push(new_gadget_anchor),
    }
    // Gadget side: same rule on the gadget's outer face.
    let into_anchor = gadget_census.faces[gadget_outer]
        .walk
        .iter()
        .find(|d| d.head == spec.gadget_anchor)
        .ok_or(GenError::AnchorNotOnOuterCycle(spec.gadget_anchor))?;
    let rot = &mut rotations[new_gadget_anchor];
    let pos = rot.iter().position(|&w| w == into_anchor.tail + offset).unwrap();
    rot.insert(pos + 1, host_anchor);

    let labels = base
        .labels()
        .iter()
        .enumerate()
        .filter_map(|(v, l)| l.clone().map(|l| (v, l)))
        .chain(gadget.graph.labels().iter().enumerate().filter_map(|(v, l)| {
            l.as_ref()
                .map(|l| (v + offset, format!("{l}{}", spec.label_suffix)))
        }))
        .collect::<Vec<_>>();
    let mut g = PlaneGraph::new(rotations.len(), rotations)?.with_labels(labels)?;
    if let Some(d) = base.outer_dart() {
        g = g.with_outer(d)?;
    }
    Ok(g)
}

/// Two copies of `H_1`, the second placed in the outer face of the first
/// and joined by the edge `a_4 a_2'`.
pub fn gen_fig1() -> PlaneGraph {
    let h = gen_gadget(1).expect("k = 1 is valid");
    let copy = h.clone();
    let spec = AttachmentSpec::new(FaceRef::Containing(Dart::new(h.a(1), h.a(2))), copy)
        .host_anchor(h.a(4))
        .gadget_anchor(h.a(2));
    attach_gadget(&h.graph, &spec).expect("fixed construction is valid")
}

/// Faces of [`gen_k4`] filled by default: faces 0 and 1 share an edge and
/// together touch all four vertices.
pub fn default_k4_faces() -> BTreeSet<FaceId> {
    BTreeSet::from([0, 1])
}

/// K4 with a copy of `H_k` in each selected face, attached at the first
/// vertex of that face's walk and the gadget's `a_4`.
pub fn gen_k4_composite(faces_to_fill: &BTreeSet<FaceId>, k: usize) -> Result<PlaneGraph, GenError> {
    if faces_to_fill.is_empty() {
        return Err(GenError::InvalidParameter("at least one face must be filled".into()));
    }
    let k4 = gen_k4();
    let census = trace_faces(&k4);
    let mut targets = Vec::new();
    for &f in faces_to_fill {
        let face = census
            .faces
            .get(f)
            .ok_or_else(|| GenError::FaceNotFound(format!("#{f}")))?;
        targets.push((f, face.walk[0]));
    }
    let gadget = gen_gadget(k)?;
    let mut g = k4;
    for (f, dart) in targets {
        // The face's first dart survives earlier attachments in other faces.
        let spec = AttachmentSpec::new(FaceRef::Containing(dart), gadget.clone())
            .host_anchor(dart.tail)
            .label_suffix(format!("@f{f}"));
        g = attach_gadget(&g, &spec)?;
    }
    Ok(g)
}

/// Cycle `0, 1, .., n-1`; `n >= 3`.
pub fn gen_cycle(n: usize) -> Result<PlaneGraph, GenError> {
    if n < 3 {
        return Err(GenError::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    let rotations = (0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect();
    Ok(PlaneGraph::new(n, rotations)?.with_outer(Dart::new(0, 1))?)
}

/// Path on `n >= 1` vertices.
pub fn gen_path(n: usize) -> Result<PlaneGraph, GenError> {
    if n == 0 {
        return Err(GenError::InvalidParameter("path needs n >= 1".into()));
    }
    let rotations = (0..n)
        .map(|i| {
            let mut rot = Vec::new();
            if i + 1 < n {
                rot.push(i + 1);
            }
            if i > 0 {
                rot.push(i - 1);
            }
            rot
        })
        .collect();
    let g = PlaneGraph::new(n, rotations)?;
    Ok(if n >= 2 { g.with_outer(Dart::new(0, 1))? } else { g })
}

/// K4 drawn as triangle `0, 1, 2` around center vertex `3`; the outer face
/// is `0 → 1 → 2`.
pub fn gen_k4() -> PlaneGraph {
    let rotations = vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]];
    PlaneGraph::new(4, rotations)
        .and_then(|g| g.with_outer(Dart::new(0, 1)))
        .expect("fixed K4 embedding is valid")
}

/// Rim cycle `0..n` plus hub `n`.
pub fn gen_wheel(n: usize) -> Result<PlaneGraph, GenError> {
    if n < 3 {
        return Err(GenError::InvalidParameter(format!("wheel needs a rim of n >= 3, got {n}")));
    }
    let hub = n;
    let mut rotations: Vec<Vec<VertexId>> =
        (0..n).map(|i| vec![(i + 1) % n, hub, (i + n - 1) % n]).collect();
    rotations.push((0..n).collect());
    Ok(PlaneGraph::new(n + 1, rotations)?.with_outer(Dart::new(0, 1))?)
}

pub fn remove_edge(g: &PlaneGraph, u: VertexId, v: VertexId) -> Result<PlaneGraph, GenError> {
    Ok(g.remove_edge(u, v)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gadget_one_census() {
        let h = gen_gadget(1).unwrap();
        assert_eq!(h.graph.num_vertices(), 8);
        assert_eq!(h.graph.num_edges(), 16);
        let census = trace_faces(&h.graph);
        assert_eq!(census.len(), 10);
        assert_eq!(census.counts_by_length.get(&3), Some(&8));
        assert_eq!(census.counts_by_length.get(&4), Some(&2));
        let outer = &census.faces[census.outer_face().unwrap()];
        assert_eq!(outer.vertices, h.outer_cycle);
    }

    #[test]
    fn gadget_triangles_have_the_zigzag_shape() {
        let h = gen_gadget(2).unwrap();
        let m = 7;
        let census = trace_faces(&h.graph);
        let mut expected: BTreeSet<Vec<VertexId>> = BTreeSet::new();
        for i in 0..m {
            let mut t1 = vec![h.outer_cycle[i], h.inner_cycle[i], h.outer_cycle[(i + 1) % m]];
            let mut t2 = vec![h.inner_cycle[i], h.outer_cycle[(i + 1) % m], h.inner_cycle[(i + 1) % m]];
            t1.sort();
            t2.sort();
            expected.insert(t1);
            expected.insert(t2);
        }
        expected.insert(h.outer_cycle.clone());
        expected.insert(h.inner_cycle.clone());
        let got: BTreeSet<_> = census.faces.iter().map(|f| f.vertices.clone()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn gadget_rejects_zero() {
        assert!(matches!(gen_gadget(0), Err(GenError::InvalidParameter(_))));
    }

    #[test]
    fn fig1_shape() {
        let g = gen_fig1();
        assert_eq!(g.num_vertices(), 16);
        assert_eq!(g.num_edges(), 33);
        assert_eq!(trace_faces(&g).len(), 19);
        assert_eq!(g.max_degree(), 5);
        let a4 = g.vertex_by_label("a4").unwrap();
        let a2p = g.vertex_by_label("a2'").unwrap();
        assert!(g.has_edge(a4, a2p));
        let fives: Vec<_> = (0..16).filter(|&v| g.degree(v) == 5).collect();
        assert_eq!(fives, vec![a4, a2p]);
    }

    #[test]
    fn fig1_outer_face_holds_both_outer_cycles() {
        let g = gen_fig1();
        let census = trace_faces(&g);
        let outer = &census.faces[census.outer_face().unwrap()];
        let names: BTreeSet<_> = outer.vertices.iter().map(|&v| g.display_name(v)).collect();
        let expected: BTreeSet<_> = ["a1", "a2", "a3", "a4", "a1'", "a2'", "a3'", "a4'"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(names, expected);
    }

    #[test]
    fn removing_the_bridge_disconnects_fig1() {
        let g = gen_fig1();
        let a4 = g.vertex_by_label("a4").unwrap();
        let a2p = g.vertex_by_label("a2'").unwrap();
        let d = remove_edge(&g, a4, a2p).unwrap();
        assert_eq!(d.num_components(), 2);
        for (c, _) in d.split_components() {
            assert_eq!(c.max_degree(), 4);
        }
        assert!(matches!(remove_edge(&d, a4, a2p), Err(GenError::Graph(GraphError::EdgeNotFound { .. }))));
    }

    #[test]
    fn attach_into_k4_triangle() {
        let k4 = gen_k4();
        let spec = AttachmentSpec::new(FaceRef::Index(2), gen_gadget(1).unwrap());
        let g = attach_gadget(&k4, &spec).unwrap();
        assert_eq!(g.num_vertices(), 12);
        assert_eq!(g.num_edges(), 23);
        assert_eq!(g.euler_characteristic(), 2);
    }

    #[test]
    fn attach_errors() {
        let k4 = gen_k4();
        let h = gen_gadget(1).unwrap();
        let census = trace_faces(&k4);
        let off_face = (0..4).find(|&v| !census.faces[0].contains_vertex(v)).unwrap();
        let spec = AttachmentSpec::new(FaceRef::Index(0), h.clone()).host_anchor(off_face);
        assert!(matches!(attach_gadget(&k4, &spec), Err(GenError::AnchorNotOnFace { .. })));
        let spec = AttachmentSpec::new(FaceRef::Index(9), h.clone());
        assert!(matches!(attach_gadget(&k4, &spec), Err(GenError::FaceNotFound(_))));
        let spec = AttachmentSpec::new(FaceRef::Index(0), h.clone()).gadget_anchor(h.b(1));
        assert!(matches!(attach_gadget(&k4, &spec), Err(GenError::AnchorNotOnOuterCycle(_))));
    }

    #[test]
    fn k4_composite_counts() {
        let g = gen_k4_composite(&default_k4_faces(), 1).unwrap();
        assert_eq!(g.num_vertices(), 20);
        assert_eq!(g.num_edges(), 6 + 2 * 17);
        assert_eq!(g.euler_characteristic(), 2);
        assert!(gen_k4_composite(&BTreeSet::new(), 1).is_err());
        assert!(matches!(
            gen_k4_composite(&BTreeSet::from([4]), 1),
            Err(GenError::FaceNotFound(_))
        ));
    }

    #[test]
    fn small_graphs() {
        let c4 = gen_cycle(4).unwrap();
        assert_eq!((c4.num_vertices(), c4.num_edges(), trace_faces(&c4).len()), (4, 4, 2));
        let w5 = gen_wheel(5).unwrap();
        assert_eq!((w5.num_vertices(), w5.num_edges(), trace_faces(&w5).len()), (6, 10, 6));
        let k4 = gen_k4();
        let census = trace_faces(&k4);
        assert_eq!(census.counts_by_length.get(&3), Some(&4));
        assert_eq!(census.outer_face(), Some(0));
        assert_eq!(trace_faces(&gen_path(4).unwrap()).len(), 1);
        assert!(gen_cycle(2).is_err());
    }
}
