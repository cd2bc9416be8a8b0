use std::collections::{BTreeMap, HashMap};

use super::{Dart, PlaneGraph, VertexId};

pub type FaceId = usize;

/// A face, identified with its closed boundary walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Boundary walk, starting at the smallest dart of the face. Empty for
    /// the face around an isolated vertex.
    pub walk: Vec<Dart>,
    /// Distinct vertices on the walk, sorted.
    pub vertices: Vec<VertexId>,
    pub is_outer: bool,
}

impl Face {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// First vertex of the walk (the tail of the smallest dart).
    pub fn first_vertex(&self) -> VertexId {
        self.walk.first().map_or(self.vertices[0], |d| d.tail)
    }
}

/// All faces of a plane graph, ordered by smallest dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceCensus {
    pub faces: Vec<Face>,
    /// Histogram of walk lengths.
    pub counts_by_length: BTreeMap<usize, usize>,
    dart_face: HashMap<Dart, FaceId>,
    outer: Option<FaceId>,
}

impl FaceCensus {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face_of_dart(&self, dart: Dart) -> Option<FaceId> {
        self.dart_face.get(&dart).copied()
    }

    pub fn outer_face(&self) -> Option<FaceId> {
        self.outer
    }

    /// Faces incident with `v`.
    pub fn faces_at(&self, v: VertexId) -> impl Iterator<Item = FaceId> + '_ {
        self.faces
            .iter()
            .enumerate()
            .filter(move |(_, f)| f.contains_vertex(v))
            .map(|(i, _)| i)
    }

    /// Distinct incident vertex sets, one per face.
    pub fn vertex_sets(&self) -> Vec<Vec<VertexId>> {
        self.faces.iter().map(|f| f.vertices.clone()).collect()
    }
}

/// Traces every face of `g` from its rotation system.
///
/// Darts are visited in `(tail, head)` order, so face `i` is the face whose
/// smallest dart is the `i`-th smallest among face minima. Isolated
/// vertices get a face with an empty walk.
pub fn trace_faces(g: &PlaneGraph) -> FaceCensus {
    let mut dart_face = HashMap::with_capacity(2 * g.num_edges());
    let mut faces = Vec::new();
    let mut outer = None;
    for v in 0..g.num_vertices() {
        if g.degree(v) == 0 {
            faces.push(Face {
                walk: Vec::new(),
                vertices: vec![v],
                is_outer: false,
            });
            continue;
        }
        let mut heads = g.rotation(v).to_vec();
        heads.sort_unstable();
        for head in heads {
            let start = Dart::new(v, head);
            if dart_face.contains_key(&start) {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let mut dart = start;
            loop {
                dart_face.insert(dart, id);
                walk.push(dart);
                dart = g.face_successor(dart);
                if dart == start {
                    break;
                }
            }
            let mut vertices: Vec<_> = walk.iter().map(|d| d.tail).collect();
            vertices.sort_unstable();
            vertices.dedup();
            let is_outer = g.outer_dart().is_some_and(|o| walk.contains(&o));
            if is_outer {
                outer = Some(id);
            }
            faces.push(Face {
                walk,
                vertices,
                is_outer,
            });
        }
    }
    let mut counts_by_length = BTreeMap::new();
    for f in &faces {
        *counts_by_length.entry(f.len()).or_insert(0) += 1;
    }
    FaceCensus {
        faces,
        counts_by_length,
        dart_face,
        outer,
    }
}
