//! Plane graphs given by rotation systems.
//!
//! Every vertex stores the cyclic order of its neighbors, counterclockwise.
//! Faces are never part of the input; they are traced from the rotations
//! (see [`faces`]). The successor rule is: after dart `(u, v)` continue with
//! `(v, w)` where `w` follows `u` in `rotations[v]`. Under the counterclockwise
//! convention this walks bounded faces clockwise and the unbounded face
//! counterclockwise.

mod faces;
mod text;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use faces::{trace_faces, Face, FaceCensus, FaceId};
pub use text::{parse_graph, serialize_graph, ParseError};

/// Dense 0-based vertex index.
pub type VertexId = usize;

/// One directed side of an undirected edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Dart {
    pub tail: VertexId,
    pub head: VertexId,
}

impl Dart {
    pub fn new(tail: VertexId, head: VertexId) -> Self {
        Dart { tail, head }
    }

    pub fn reversed(self) -> Self {
        Dart::new(self.head, self.tail)
    }
}

impl std::fmt::Display for Dart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.tail, self.head)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("expected {expected} rotation lists, found {found}")]
    RotationCountMismatch { expected: usize, found: usize },
    #[error("vertex {vertex} lists neighbor {neighbor}, but the graph has only {n} vertices")]
    IndexOutOfRange {
        vertex: VertexId,
        neighbor: VertexId,
        n: usize,
    },
    #[error("vertex {vertex} lists itself as a neighbor")]
    SelfLoop { vertex: VertexId },
    #[error("vertex {vertex} lists neighbor {neighbor} more than once")]
    DuplicateNeighbor { vertex: VertexId, neighbor: VertexId },
    #[error("vertex {from} lists {to}, but vertex {to} does not list {from}")]
    AsymmetricAdjacency { from: VertexId, to: VertexId },
    #[error("component {component} has Euler characteristic {characteristic}, expected 2")]
    NotPlane {
        component: usize,
        characteristic: i64,
    },
    #[error("outer dart {0} is not an edge of the graph")]
    OuterDartNotAnEdge(Dart),
    #[error("label given for vertex {vertex}, but the graph has only {n} vertices")]
    LabelOutOfRange { vertex: VertexId, n: usize },
    #[error("edge {u}-{v} is not present")]
    EdgeNotFound { u: VertexId, v: VertexId },
}

/// A graph together with a fixed plane embedding.
///
/// Immutable once built; all invariants are checked by [`PlaneGraph::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    rotations: Vec<Vec<VertexId>>,
    labels: Vec<Option<String>>,
    outer: Option<Dart>,
    component_of: Vec<usize>,
    num_components: usize,
}

impl PlaneGraph {
    /// Validates a rotation system and builds the graph.
    pub fn new(n: usize, rotations: Vec<Vec<VertexId>>) -> Result<Self, GraphError> {
        if rotations.len() != n {
            return Err(GraphError::RotationCountMismatch {
                expected: n,
                found: rotations.len(),
            });
        }
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &u) in rot.iter().enumerate() {
                if u >= n {
                    return Err(GraphError::IndexOutOfRange {
                        vertex: v,
                        neighbor: u,
                        n,
                    });
                }
                if u == v {
                    return Err(GraphError::SelfLoop { vertex: v });
                }
                if rot[..i].contains(&u) {
                    return Err(GraphError::DuplicateNeighbor {
                        vertex: v,
                        neighbor: u,
                    });
                }
            }
        }
        for (v, rot) in rotations.iter().enumerate() {
            for &u in rot {
                if !rotations[u].contains(&v) {
                    return Err(GraphError::AsymmetricAdjacency { from: v, to: u });
                }
            }
        }
        let (component_of, num_components) = label_components(&rotations);
        let g = PlaneGraph {
            rotations,
            labels: vec![None; n],
            outer: None,
            component_of,
            num_components,
        };
        for (component, characteristic) in g.component_characteristics().into_iter().enumerate() {
            if characteristic != 2 {
                return Err(GraphError::NotPlane {
                    component,
                    characteristic,
                });
            }
        }
        Ok(g)
    }

    /// Designates the outer face as the face containing `dart`.
    pub fn with_outer(mut self, dart: Dart) -> Result<Self, GraphError> {
        if !self.has_edge(dart.tail, dart.head) {
            return Err(GraphError::OuterDartNotAnEdge(dart));
        }
        self.outer = Some(dart);
        Ok(self)
    }

    pub fn with_label(mut self, v: VertexId, label: impl Into<String>) -> Result<Self, GraphError> {
        let n = self.num_vertices();
        let slot = self
            .labels
            .get_mut(v)
            .ok_or(GraphError::LabelOutOfRange { vertex: v, n })?;
        *slot = Some(label.into());
        Ok(self)
    }

    pub fn with_labels<I, S>(mut self, labels: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, S)>,
        S: Into<String>,
    {
        for (v, s) in labels {
            self = self.with_label(v, s)?;
        }
        Ok(self)
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn num_edges(&self) -> usize {
        self.rotations.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<VertexId>] {
        &self.rotations
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotations[v].len()
    }

    /// Largest rotation length; 0 for an edgeless graph.
    pub fn max_degree(&self) -> usize {
        self.rotations.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.num_vertices() && self.rotations[u].contains(&v)
    }

    /// Undirected edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out: Vec<_> = self
            .rotations
            .iter()
            .enumerate()
            .flat_map(|(u, rot)| rot.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// All darts, sorted by `(tail, head)`.
    pub fn darts(&self) -> Vec<Dart> {
        let mut out: Vec<_> = self
            .rotations
            .iter()
            .enumerate()
            .flat_map(|(u, rot)| rot.iter().map(move |&v| Dart::new(u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels.get(v).and_then(|l| l.as_deref())
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    /// First vertex carrying `label`.
    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l.as_deref() == Some(label))
    }

    /// Label if present, otherwise `v<i>`.
    pub fn display_name(&self, v: VertexId) -> String {
        match self.label(v) {
            Some(l) => l.to_string(),
            None => format!("v{v}"),
        }
    }

    pub fn outer_dart(&self) -> Option<Dart> {
        self.outer
    }

    pub fn num_components(&self) -> usize {
        self.num_components
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.component_of[v]
    }

    /// Vertex sets of the connected components, each sorted; components are
    /// numbered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut out = vec![Vec::new(); self.num_components];
        for (v, &c) in self.component_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.num_components <= 1
    }

    /// The dart that follows `dart` on its face.
    pub fn face_successor(&self, dart: Dart) -> Dart {
        let rot = &self.rotations[dart.head];
        let pos = rot
            .iter()
            .position(|&w| w == dart.tail)
            .expect("dart is an edge of the graph");
        Dart::new(dart.head, rot[(pos + 1) % rot.len()])
    }

    /// V − E + F over the whole graph, with faces traced per component.
    pub fn euler_characteristic(&self) -> i64 {
        let census = trace_faces(self);
        self.num_vertices() as i64 - self.num_edges() as i64 + census.faces.len() as i64
    }

    /// V − E + F for each connected component on its own.
    pub fn component_characteristics(&self) -> Vec<i64> {
        let census = trace_faces(self);
        let mut chi = vec![0i64; self.num_components];
        for (v, &c) in self.component_of.iter().enumerate() {
            chi[c] += 1;
            chi[c] -= self.rotations[v].iter().filter(|&&u| v < u).count() as i64;
        }
        for face in &census.faces {
            chi[self.component_of[face.vertices[0]]] += 1;
        }
        chi
    }

    /// Deletes edge `u`-`v` from both rotations.
    ///
    /// The two faces on either side of the edge merge, or the component
    /// splits. If the outer dart was one side of the removed edge, the outer
    /// designation moves to the dart that followed it on the outer face.
    pub fn remove_edge(&self, u: VertexId, v: VertexId) -> Result<PlaneGraph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::EdgeNotFound { u, v });
        }
        let outer = self.outer.and_then(|d| {
            let mut d = d;
            // Walk forward until leaving the removed edge.
            for _ in 0..2 {
                if (d.tail, d.head) == (u, v) || (d.tail, d.head) == (v, u) {
                    d = self.face_successor(d);
                } else {
                    return Some(d);
                }
            }
            None
        });
        let mut rotations = self.rotations.clone();
        rotations[u].retain(|&w| w != v);
        rotations[v].retain(|&w| w != u);
        let mut g = PlaneGraph::new(self.num_vertices(), rotations)?;
        g.labels = self.labels.clone();
        g.outer = outer.filter(|d| g.has_edge(d.tail, d.head));
        Ok(g)
    }

    /// Splits into connected components. Each entry pairs the component
    /// graph with the map from its local indices to indices in `self`.
    /// Labels and the outer dart travel with their component.
    pub fn split_components(&self) -> Vec<(PlaneGraph, Vec<VertexId>)> {
        let mut out = Vec::with_capacity(self.num_components);
        for members in self.components() {
            let mut local = vec![usize::MAX; self.num_vertices()];
            for (i, &v) in members.iter().enumerate() {
                local[v] = i;
            }
            let rotations = members
                .iter()
                .map(|&v| self.rotations[v].iter().map(|&u| local[u]).collect())
                .collect();
            let mut g = PlaneGraph::new(members.len(), rotations)
                .expect("a component of a plane graph is plane");
            g.labels = members.iter().map(|&v| self.labels[v].clone()).collect();
            g.outer = self
                .outer
                .filter(|d| local[d.tail] != usize::MAX)
                .map(|d| Dart::new(local[d.tail], local[d.head]));
            out.push((g, members));
        }
        out
    }

    /// Disjoint union; vertices of `graphs[i]` are offset by the sizes of
    /// the graphs before it. The outer dart of the first graph that has one
    /// is kept.
    pub fn disjoint_union(graphs: &[PlaneGraph]) -> PlaneGraph {
        let mut rotations = Vec::new();
        let mut labels = Vec::new();
        let mut outer = None;
        for g in graphs {
            let offset = rotations.len();
            rotations.extend(
                g.rotations
                    .iter()
                    .map(|rot| rot.iter().map(|&u| u + offset).collect::<Vec<_>>()),
            );
            labels.extend(g.labels.iter().cloned());
            if outer.is_none() {
                outer = g
                    .outer
                    .map(|d| Dart::new(d.tail + offset, d.head + offset));
            }
        }
        let mut g = PlaneGraph::new(rotations.len(), rotations)
            .expect("a disjoint union of plane graphs is plane");
        g.labels = labels;
        g.outer = outer;
        g
    }
}

fn label_components(rotations: &[Vec<VertexId>]) -> (Vec<usize>, usize) {
    let n = rotations.len();
    let mut component_of = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if component_of[start] != usize::MAX {
            continue;
        }
        component_of[start] = count;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &u in &rotations[v] {
                if component_of[u] == usize::MAX {
                    component_of[u] = count;
                    queue.push_back(u);
                }
            }
        }
        count += 1;
    }
    (component_of, count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> PlaneGraph {
        PlaneGraph::new(3, vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn triangle_builds() {
        let g = triangle();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g.euler_characteristic(), 2);
        assert_eq!(g.max_degree(), 2);
    }

    #[test]
    fn construction_errors_name_the_offender() {
        assert_eq!(
            PlaneGraph::new(3, vec![vec![1, 2], vec![2], vec![0, 1]]),
            Err(GraphError::AsymmetricAdjacency { from: 0, to: 1 })
        );
        assert_eq!(
            PlaneGraph::new(2, vec![vec![1, 1], vec![0]]),
            Err(GraphError::DuplicateNeighbor {
                vertex: 0,
                neighbor: 1
            })
        );
        assert_eq!(
            PlaneGraph::new(2, vec![vec![0], vec![]]),
            Err(GraphError::SelfLoop { vertex: 0 })
        );
        assert_eq!(
            PlaneGraph::new(2, vec![vec![5], vec![]]),
            Err(GraphError::IndexOutOfRange {
                vertex: 0,
                neighbor: 5,
                n: 2
            })
        );
        assert!(matches!(
            PlaneGraph::new(2, vec![vec![1]]),
            Err(GraphError::RotationCountMismatch { .. })
        ));
    }

    #[test]
    fn twisted_rotation_is_not_plane() {
        // K4 with one rotation reversed gives a torus-like system.
        let rot = vec![vec![1, 2, 3], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]];
        let err = PlaneGraph::new(4, rot).unwrap_err();
        assert!(matches!(err, GraphError::NotPlane { .. }), "{err}");
    }

    #[test]
    fn disjoint_triangles_have_characteristic_two_each() {
        let g = PlaneGraph::disjoint_union(&[triangle(), triangle()]);
        assert_eq!(g.num_components(), 2);
        assert_eq!(g.component_characteristics(), vec![2, 2]);
        assert_eq!(g.euler_characteristic(), 4);
        let parts = g.split_components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[1].1, vec![3, 4, 5]);
        assert_eq!(parts[1].0, triangle());
    }

    #[test]
    fn remove_edge_merges_faces() {
        let g = triangle().with_outer(Dart::new(0, 1)).unwrap();
        let path = g.remove_edge(1, 0).unwrap();
        assert_eq!(path.num_edges(), 2);
        assert_eq!(trace_faces(&path).faces.len(), 1);
        assert_eq!(path.outer_dart(), Some(Dart::new(1, 2)));
        assert_eq!(
            g.remove_edge(1, 0).unwrap().remove_edge(0, 1),
            Err(GraphError::EdgeNotFound { u: 0, v: 1 })
        );
    }

    #[test]
    fn isolated_vertex_counts_as_one_face() {
        let g = PlaneGraph::new(1, vec![vec![]]).unwrap();
        assert_eq!(g.euler_characteristic(), 2);
        assert_eq!(g.max_degree(), 0);
    }
}
