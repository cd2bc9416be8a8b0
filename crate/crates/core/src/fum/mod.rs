//! Facial unique-maximum colorings.
//!
//! A coloring is FUM when it is proper and, on every face, the largest
//! color among the face's distinct incident vertices occurs on exactly one
//! of them. Colors are ordered naturals `1..=k`; nothing here assumes the
//! colors can be permuted.

mod coloring;
mod compound;
pub mod oracle;
mod search;
mod verify;

use serde::Serialize;
use thiserror::Error;

use crate::plane_graph::{FaceCensus, FaceId, GraphError, PlaneGraph, VertexId};

pub use coloring::{parse_coloring, serialize_coloring, Color, Coloring, MAX_PALETTE};
pub use compound::{check_disconnected_fum, solve_disconnected, CompoundFace};
pub use search::{chi_fum, solve_fum, FumProblem, SearchOptions, SearchStats, SolveOutcome, SolveStatus};
pub use verify::{
    verify_cover_condition, verify_disconnected_variant, verify_forcing, verify_gadget_forcing,
    DisconnectedReport, GadgetReport, COVER_ENUMERATION_LIMIT,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FumError {
    #[error("vertex {vertex} has color {color}, outside palette 1..={palette}")]
    PaletteMismatch {
        vertex: VertexId,
        color: Color,
        palette: Color,
    },
    #[error("coloring declares palette {declared}, expected {expected}")]
    PaletteSizeMismatch { declared: Color, expected: Color },
    #[error("palette size must be in 1..={MAX_PALETTE}, got {0}")]
    InvalidPalette(Color),
    #[error("coloring has {found} vertices, graph has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("search budget exceeded after {} nodes", .0.nodes_expanded)]
    ResourceLimitExceeded(SearchStats),
    #[error("{n} vertices exceeds the enumeration limit of {limit}")]
    TooLargeForEnumeration { n: usize, limit: usize },
    #[error("graph has no designated outer face")]
    NoOuterFace,
    #[error("face {0} does not exist")]
    FaceNotFound(FaceId),
    #[error("invalid compound face: {0}")]
    InvalidCompoundFace(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which face a violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceTag {
    Face(FaceId),
    InComponent { component: usize, face: FaceId },
    Compound,
}

impl std::fmt::Display for FaceTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FaceTag::Face(i) => write!(f, "face {i}"),
            FaceTag::InComponent { component, face } => write!(f, "component {component} face {face}"),
            FaceTag::Compound => write!(f, "compound face"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FumViolation {
    pub face: FaceTag,
    pub max_color: Color,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    /// Monochromatic edges `(u, v)`, `u < v`, sorted.
    pub proper_violations: Vec<(VertexId, VertexId)>,
    pub fum_violations: Vec<FumViolation>,
}

impl CheckReport {
    pub fn is_fum(&self) -> bool {
        self.proper_violations.is_empty() && self.fum_violations.is_empty()
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_fum() {
            return writeln!(f, "ok: proper and facial unique-maximum");
        }
        for (u, v) in &self.proper_violations {
            writeln!(f, "improper edge v{u}-v{v}")?;
        }
        for viol in &self.fum_violations {
            writeln!(
                f,
                "{}: max color {} appears {} times",
                viol.face, viol.max_color, viol.multiplicity
            )?;
        }
        Ok(())
    }
}

fn ensure_covers(g: &PlaneGraph, c: &Coloring) -> Result<(), FumError> {
    if c.len() != g.num_vertices() {
        return Err(FumError::SizeMismatch {
            expected: g.num_vertices(),
            found: c.len(),
        });
    }
    Ok(())
}

/// Max color over `vertices` and how often it occurs.
pub(crate) fn face_max(vertices: &[VertexId], colors: &[Color]) -> (Color, usize) {
    let mut max = 0;
    let mut count = 0;
    for &v in vertices {
        let c = colors[v];
        if c > max {
            max = c;
            count = 1;
        } else if c == max {
            count += 1;
        }
    }
    (max, count)
}

pub fn check_proper(g: &PlaneGraph, c: &Coloring) -> Result<Vec<(VertexId, VertexId)>, FumError> {
    ensure_covers(g, c)?;
    Ok(g.edges()
        .into_iter()
        .filter(|&(u, v)| c.color(u) == c.color(v))
        .collect())
}

/// Checks properness and the unique-maximum rule on every face of `census`.
pub fn check_fum(g: &PlaneGraph, c: &Coloring, census: &FaceCensus) -> Result<CheckReport, FumError> {
    let proper_violations = check_proper(g, c)?;
    let fum_violations = census
        .faces
        .iter()
        .enumerate()
        .filter_map(|(i, face)| {
            let (max_color, multiplicity) = face_max(&face.vertices, c.colors());
            (multiplicity >= 2).then_some(FumViolation {
                face: FaceTag::Face(i),
                max_color,
                multiplicity,
            })
        })
        .collect();
    Ok(CheckReport {
        proper_violations,
        fum_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cycle, gen_k4};
    use crate::plane_graph::trace_faces;

    fn coloring(colors: &[Color], k: Color) -> Coloring {
        Coloring::new(colors.to_vec(), k).unwrap()
    }

    #[test]
    fn proper_checks() {
        let c3 = gen_cycle(3).unwrap();
        assert!(check_proper(&c3, &coloring(&[1, 2, 3], 3)).unwrap().is_empty());
        assert_eq!(check_proper(&c3, &coloring(&[2, 2, 1], 3)).unwrap(), vec![(0, 1)]);
        assert!(matches!(
            check_proper(&c3, &coloring(&[1, 2], 3)),
            Err(FumError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn alternating_c4_violates_both_faces() {
        let g = gen_cycle(4).unwrap();
        let census = trace_faces(&g);
        let report = check_fum(&g, &coloring(&[1, 2, 1, 2], 2), &census).unwrap();
        assert!(report.proper_violations.is_empty());
        assert_eq!(report.fum_violations.len(), 2);
        for v in &report.fum_violations {
            assert_eq!((v.max_color, v.multiplicity), (2, 2));
        }
    }

    #[test]
    fn c4_with_unique_three_is_fum() {
        let g = gen_cycle(4).unwrap();
        let census = trace_faces(&g);
        assert!(check_fum(&g, &coloring(&[1, 2, 1, 3], 3), &census).unwrap().is_fum());
    }

    #[test]
    fn swapping_extreme_colors_breaks_fum() {
        // 1,2,1,3 is FUM; exchanging 1 and 3 gives 3,2,3,1 with max 3 twice.
        let g = gen_cycle(4).unwrap();
        let census = trace_faces(&g);
        let swapped = coloring(&[1, 2, 1, 3], 3).recolor(|c| 4 - c, 3).unwrap();
        assert_eq!(swapped.colors(), &[3, 2, 3, 1]);
        let report = check_fum(&g, &swapped, &census).unwrap();
        assert!(!report.is_fum());
        let outer = census.outer_face().unwrap();
        assert!(report
            .fum_violations
            .iter()
            .any(|v| v.face == FaceTag::Face(outer) && v.max_color == 3 && v.multiplicity == 2));
    }

    #[test]
    fn every_proper_four_coloring_of_k4_is_fum() {
        let g = gen_k4();
        let census = trace_faces(&g);
        let mut perm = [1, 2, 3, 4];
        // Heap's algorithm over all 24 permutations.
        fn heap(n: usize, a: &mut [Color; 4], out: &mut Vec<[Color; 4]>) {
            if n == 1 {
                out.push(*a);
                return;
            }
            for i in 0..n {
                heap(n - 1, a, out);
                let j = if n.is_multiple_of(2) { i } else { 0 };
                a.swap(j, n - 1);
            }
        }
        let mut all = Vec::new();
        heap(4, &mut perm, &mut all);
        assert_eq!(all.len(), 24);
        for p in all {
            assert!(check_fum(&g, &coloring(&p, 4), &census).unwrap().is_fum());
        }
    }
}
