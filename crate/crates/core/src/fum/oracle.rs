//! Brute-force ground truth for small graphs.
//!
//! Enumerates every one of the `k^n` colorings with no pruning and checks
//! each directly against the traced faces. Shares no code with the search.

use super::{Color, FumError};
use crate::plane_graph::{trace_faces, PlaneGraph};

/// Vertex limit for the brute-force oracles.
pub const ORACLE_LIMIT: usize = 8;

fn guard(g: &PlaneGraph) -> Result<(), FumError> {
    let n = g.num_vertices();
    if n > ORACLE_LIMIT {
        return Err(FumError::TooLargeForEnumeration {
            n,
            limit: ORACLE_LIMIT,
        });
    }
    Ok(())
}

/// Calls `f` on every assignment in `{1..=k}^n` until it returns true.
fn any_assignment(n: usize, k: Color, mut f: impl FnMut(&[Color]) -> bool) -> bool {
    let mut colors = vec![1; n];
    loop {
        if f(&colors) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            if colors[i] < k {
                colors[i] += 1;
                break;
            }
            colors[i] = 1;
            i += 1;
        }
    }
}

fn is_proper(g: &PlaneGraph, colors: &[Color]) -> bool {
    g.edges().iter().all(|&(u, v)| colors[u] != colors[v])
}

pub fn brute_force_fum_colorable(g: &PlaneGraph, k: Color) -> Result<bool, FumError> {
    guard(g)?;
    let faces = trace_faces(g).vertex_sets();
    Ok(any_assignment(g.num_vertices(), k, |colors| {
        is_proper(g, colors)
            && faces.iter().all(|f| {
                let max = f.iter().map(|&v| colors[v]).max().unwrap_or(0);
                f.iter().filter(|&&v| colors[v] == max).count() == 1
            })
    }))
}

/// Minimal `k` with a FUM-coloring, by complete enumeration.
pub fn brute_force_chi_fum(g: &PlaneGraph) -> Result<Color, FumError> {
    guard(g)?;
    let mut k = 1;
    while !brute_force_fum_colorable(g, k)? {
        k += 1;
    }
    Ok(k)
}

/// Ordinary chromatic number, by complete enumeration.
pub fn brute_force_chromatic_number(g: &PlaneGraph) -> Result<Color, FumError> {
    guard(g)?;
    let mut k = 1;
    while !any_assignment(g.num_vertices(), k, |c| is_proper(g, c)) {
        k += 1;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cycle, gen_fig1};

    #[test]
    fn cycles() {
        assert_eq!(brute_force_chi_fum(&gen_cycle(3).unwrap()).unwrap(), 3);
        assert_eq!(brute_force_chi_fum(&gen_cycle(6).unwrap()).unwrap(), 3);
        assert_eq!(brute_force_chromatic_number(&gen_cycle(5).unwrap()).unwrap(), 3);
    }

    #[test]
    fn guarded() {
        assert!(matches!(
            brute_force_chi_fum(&gen_fig1()),
            Err(FumError::TooLargeForEnumeration { n: 16, limit: 8 })
        ));
    }
}
