use std::collections::BTreeSet;

use super::{check_proper, face_max, Color, Coloring, CheckReport, FaceTag, FumError, FumProblem, FumViolation};
use super::{SearchOptions, SolveOutcome};
use crate::plane_graph::{trace_faces, FaceId, PlaneGraph, VertexId};

/// One region shared by several co-embedded components, treated as a
/// single face. Vertices are indexed globally: component `i`'s vertices
/// follow those of components `0..i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompoundFace {
    pub member_faces: BTreeSet<(usize, FaceId)>,
    pub incident_vertices: BTreeSet<VertexId>,
}

fn offsets(components: &[PlaneGraph]) -> Vec<usize> {
    let mut out = Vec::with_capacity(components.len());
    let mut acc = 0;
    for g in components {
        out.push(acc);
        acc += g.num_vertices();
    }
    out
}

impl CompoundFace {
    pub fn new(
        components: &[PlaneGraph],
        members: impl IntoIterator<Item = (usize, FaceId)>,
    ) -> Result<Self, FumError> {
        let offs = offsets(components);
        let mut member_faces = BTreeSet::new();
        let mut incident_vertices = BTreeSet::new();
        let mut seen = BTreeSet::new();
        for (component, face) in members {
            let g = components.get(component).ok_or_else(|| {
                FumError::InvalidCompoundFace(format!("component {component} does not exist"))
            })?;
            if !seen.insert(component) {
                return Err(FumError::InvalidCompoundFace(format!(
                    "component {component} contributes more than one face"
                )));
            }
            let census = trace_faces(g);
            let f = census.faces.get(face).ok_or(FumError::FaceNotFound(face))?;
            incident_vertices.extend(f.vertices.iter().map(|&v| v + offs[component]));
            member_faces.insert((component, face));
        }
        Ok(CompoundFace {
            member_faces,
            incident_vertices,
        })
    }

    /// Unites the designated outer face of every component.
    pub fn of_outer_faces(components: &[PlaneGraph]) -> Result<Self, FumError> {
        let members = components
            .iter()
            .enumerate()
            .map(|(i, g)| {
                trace_faces(g)
                    .outer_face()
                    .map(|f| (i, f))
                    .ok_or(FumError::NoOuterFace)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(components, members)
    }
}

/// Checks a coloring of co-embedded components: every component face that
/// is not part of `shared` on its own, then `shared` as one face.
pub fn check_disconnected_fum(
    components: &[PlaneGraph],
    shared: &CompoundFace,
    c: &Coloring,
    k: Color,
) -> Result<CheckReport, FumError> {
    if c.palette() != k {
        return Err(FumError::PaletteSizeMismatch {
            declared: c.palette(),
            expected: k,
        });
    }
    let offs = offsets(components);
    let total: usize = components.iter().map(PlaneGraph::num_vertices).sum();
    if c.len() != total {
        return Err(FumError::SizeMismatch {
            expected: total,
            found: c.len(),
        });
    }
    let mut report = CheckReport::default();
    for (i, g) in components.iter().enumerate() {
        let local = Coloring::new(c.colors()[offs[i]..offs[i] + g.num_vertices()].to_vec(), k)?;
        report.proper_violations.extend(
            check_proper(g, &local)?
                .into_iter()
                .map(|(u, v)| (u + offs[i], v + offs[i])),
        );
        for (f, face) in trace_faces(g).faces.iter().enumerate() {
            if shared.member_faces.contains(&(i, f)) {
                continue;
            }
            let (max_color, multiplicity) = face_max(&face.vertices, local.colors());
            if multiplicity >= 2 {
                report.fum_violations.push(FumViolation {
                    face: FaceTag::InComponent { component: i, face: f },
                    max_color,
                    multiplicity,
                });
            }
        }
    }
    let verts: Vec<_> = shared.incident_vertices.iter().copied().collect();
    let (max_color, multiplicity) = face_max(&verts, c.colors());
    if multiplicity >= 2 {
        report.fum_violations.push(FumViolation {
            face: FaceTag::Compound,
            max_color,
            multiplicity,
        });
    }
    Ok(report)
}

/// Decides FUM-colorability of the components with `shared` as one face.
pub fn solve_disconnected(
    components: &[PlaneGraph],
    shared: &CompoundFace,
    k: Color,
    opts: &SearchOptions,
) -> Result<SolveOutcome, FumError> {
    let union = PlaneGraph::disjoint_union(components);
    let offs = offsets(components);
    let mut faces = Vec::new();
    for (i, g) in components.iter().enumerate() {
        for (f, face) in trace_faces(g).faces.iter().enumerate() {
            if !shared.member_faces.contains(&(i, f)) {
                faces.push(face.vertices.iter().map(|&v| v + offs[i]).collect());
            }
        }
    }
    faces.push(shared.incident_vertices.iter().copied().collect());
    let outcome = FumProblem::with_faces(&union, faces, k)?.solve(opts)?;
    if let Some(cert) = &outcome.certificate {
        let report = check_disconnected_fum(components, shared, cert, k)?;
        assert!(report.is_fum(), "certificate failed the compound check: {report}");
    }
    Ok(outcome)
}
