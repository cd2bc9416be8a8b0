//! Exhaustive checks of the forcing arguments behind the counterexamples.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use serde::Serialize;

use super::{
    check_disconnected_fum, face_max, Color, Coloring, CompoundFace, FumError, FumProblem,
    SearchOptions, SearchStats,
};
use crate::generators::GadgetHandle;
use crate::plane_graph::{trace_faces, FaceId, PlaneGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetReport {
    pub holds: bool,
    /// Interior-FUM colorings visited before the verdict.
    pub colorings_examined: u64,
    /// An interior-FUM coloring avoiding the forced color on the outer face.
    pub witness: Option<Coloring>,
    pub stats: SearchStats,
}

/// Checks that every proper coloring with palette `1..=palette` in which
/// each face other than `exempt` has a unique maximum puts `forced` on some
/// vertex of `exempt`.
pub fn verify_forcing(
    g: &PlaneGraph,
    exempt: FaceId,
    palette: Color,
    forced: Color,
    opts: &SearchOptions,
) -> Result<GadgetReport, FumError> {
    let census = trace_faces(g);
    let outer = census.faces.get(exempt).ok_or(FumError::FaceNotFound(exempt))?;
    if forced == 0 || forced > palette {
        return Err(FumError::PaletteMismatch {
            vertex: outer.vertices[0],
            color: forced,
            palette,
        });
    }
    let interior = census
        .faces
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != exempt)
        .map(|(_, f)| f.vertices.clone())
        .collect();
    let problem = FumProblem::with_faces(g, interior, palette)?;
    let mut examined = 0u64;
    let mut witness = None;
    let stats = problem.for_each_solution(opts, |c| {
        examined += 1;
        if outer.vertices.iter().any(|&v| c.color(v) == forced) {
            ControlFlow::Continue(())
        } else {
            witness = Some(c.clone());
            ControlFlow::Break(())
        }
    })?;
    Ok(GadgetReport {
        holds: witness.is_none(),
        colorings_examined: examined,
        witness,
        stats,
    })
}

/// [`verify_forcing`] with the gadget's designated outer face exempt.
pub fn verify_gadget_forcing(
    h: &GadgetHandle,
    palette: Color,
    forced: Color,
    opts: &SearchOptions,
) -> Result<GadgetReport, FumError> {
    let outer = trace_faces(&h.graph).outer_face().ok_or(FumError::NoOuterFace)?;
    verify_forcing(&h.graph, outer, palette, forced, opts)
}

/// Vertex limit for [`verify_cover_condition`].
pub const COVER_ENUMERATION_LIMIT: usize = 12;

/// True iff every proper 4-coloring of `g` gives color 4 to a vertex
/// incident with some face in `faces`.
pub fn verify_cover_condition(g: &PlaneGraph, faces: &BTreeSet<FaceId>) -> Result<bool, FumError> {
    const PALETTE: Color = 4;
    let n = g.num_vertices();
    if n > COVER_ENUMERATION_LIMIT {
        return Err(FumError::TooLargeForEnumeration {
            n,
            limit: COVER_ENUMERATION_LIMIT,
        });
    }
    let census = trace_faces(g);
    let mut covered = vec![false; n];
    for &f in faces {
        let face = census.faces.get(f).ok_or(FumError::FaceNotFound(f))?;
        for &v in &face.vertices {
            covered[v] = true;
        }
    }
    // Plain backtracking over proper colorings; independent of the FUM
    // search.
    fn rec(g: &PlaneGraph, v: usize, colors: &mut [Color], covered: &[bool]) -> bool {
        if v == colors.len() {
            return (0..colors.len()).any(|u| covered[u] && colors[u] == PALETTE);
        }
        for c in 1..=PALETTE {
            if g.rotation(v).iter().any(|&u| u < v && colors[u] == c) {
                continue;
            }
            colors[v] = c;
            if !rec(g, v + 1, colors, covered) {
                return false;
            }
        }
        colors[v] = 0;
        true
    }
    Ok(rec(g, 0, &mut vec![0; n], &covered))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisconnectedReport {
    pub admits_fum_coloring: bool,
    /// Colorings of each component satisfying all its non-shared faces.
    pub colorings_per_component: Vec<u64>,
    /// Distinct `(max, multiplicity)` profiles on the shared face, per component.
    pub profiles_per_component: Vec<Vec<(Color, usize)>>,
    pub combinations_checked: u64,
    pub witness: Option<Coloring>,
}

/// Decides whether the co-embedded components admit a FUM-coloring with
/// `shared` as one face, by enumerating each component's colorings that
/// satisfy its own faces and combining them.
///
/// Whether the shared face has a unique maximum depends only on each
/// component's maximum there and how often it occurs (capped at 2), so one
/// representative per profile suffices; every combination of
/// representatives is then run through [`check_disconnected_fum`].
pub fn verify_disconnected_variant(
    components: &[PlaneGraph],
    shared: &CompoundFace,
    palette: Color,
    opts: &SearchOptions,
) -> Result<DisconnectedReport, FumError> {
    let mut counts = Vec::new();
    let mut profiles: Vec<BTreeMap<(Color, usize), Coloring>> = Vec::new();
    for (i, g) in components.iter().enumerate() {
        let census = trace_faces(g);
        let mut faces = Vec::new();
        let mut shared_vertices = Vec::new();
        for (f, face) in census.faces.iter().enumerate() {
            if shared.member_faces.contains(&(i, f)) {
                shared_vertices.extend(face.vertices.iter().copied());
            } else {
                faces.push(face.vertices.clone());
            }
        }
        let problem = FumProblem::with_faces(g, faces, palette)?;
        let mut count = 0u64;
        let mut seen = BTreeMap::new();
        problem.for_each_solution(opts, |c| {
            count += 1;
            let (max, mult) = face_max(&shared_vertices, c.colors());
            seen.entry((max, mult.min(2))).or_insert_with(|| c.clone());
            ControlFlow::Continue(())
        })?;
        counts.push(count);
        profiles.push(seen);
    }

    let mut report = DisconnectedReport {
        admits_fum_coloring: false,
        colorings_per_component: counts,
        profiles_per_component: profiles
            .iter()
            .map(|p| p.keys().copied().collect())
            .collect(),
        combinations_checked: 0,
        witness: None,
    };
    let choices: Vec<Vec<&Coloring>> = profiles.iter().map(|p| p.values().collect()).collect();
    if choices.iter().any(Vec::is_empty) {
        return Ok(report);
    }
    let mut idx = vec![0usize; choices.len()];
    loop {
        let colors: Vec<Color> = idx
            .iter()
            .enumerate()
            .flat_map(|(i, &j)| choices[i][j].colors().iter().copied())
            .collect();
        let c = Coloring::new(colors, palette)?;
        report.combinations_checked += 1;
        if check_disconnected_fum(components, shared, &c, palette)?.is_fum() {
            report.admits_fum_coloring = true;
            report.witness = Some(c);
            return Ok(report);
        }
        // Odometer over profile choices.
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(report);
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{default_k4_faces, gen_cycle, gen_gadget, gen_k4};

    #[test]
    fn gadget_one_forces_four_outside() {
        let h = gen_gadget(1).unwrap();
        let r = verify_gadget_forcing(&h, 4, 4, &SearchOptions::default()).unwrap();
        assert!(r.holds);
        assert!(r.colorings_examined > 0);
    }

    #[test]
    fn four_cycle_does_not_force() {
        let g = gen_cycle(4).unwrap();
        let outer = trace_faces(&g).outer_face().unwrap();
        let r = verify_forcing(&g, outer, 4, 4, &SearchOptions::default()).unwrap();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert!(w.colors().iter().all(|&c| c <= 3));
    }

    #[test]
    fn cover_condition_on_k4() {
        let k4 = gen_k4();
        assert!(verify_cover_condition(&k4, &default_k4_faces()).unwrap());
        for f in 0..4 {
            assert!(!verify_cover_condition(&k4, &BTreeSet::from([f])).unwrap());
        }
        assert!(verify_cover_condition(&k4, &(0..4).collect()).unwrap());
        assert!(matches!(
            verify_cover_condition(&k4, &BTreeSet::from([7])),
            Err(FumError::FaceNotFound(7))
        ));
        let big = gen_cycle(13).unwrap();
        assert!(matches!(
            verify_cover_condition(&big, &BTreeSet::from([0])),
            Err(FumError::TooLargeForEnumeration { n: 13, .. })
        ));
    }

    #[test]
    fn forced_color_must_be_in_palette() {
        let h = gen_gadget(1).unwrap();
        assert!(verify_gadget_forcing(&h, 4, 5, &SearchOptions::default()).is_err());
    }
}
