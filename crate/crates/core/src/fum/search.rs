//! Exact backtracking search for FUM colorings.
//!
//! Vertices are colored in a face-connected order, colors in increasing
//! order. Properness is checked on assignment and a face's unique-maximum
//! condition is checked as soon as its last vertex is colored. With strong
//! pruning, a face is also rejected early when its partial maximum already
//! occurs twice and none of its uncolored vertices may take a larger color.
//!
//! The search is complete: `Exhausted` is only reported after every branch
//! was refuted. Running out of budget is reported as an error instead.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{face_max, Color, Coloring, FumError, MAX_PALETTE};
use crate::plane_graph::{trace_faces, PlaneGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub strong_pruning: bool,
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Worker threads; 1 searches sequentially.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            strong_pruning: true,
            node_budget: Some(1_000_000_000),
            time_budget: Some(Duration::from_secs(600)),
            threads: 1,
        }
    }
}

impl SearchOptions {
    /// No node or time limit.
    pub fn unbounded() -> Self {
        SearchOptions {
            node_budget: None,
            time_budget: None,
            ..Default::default()
        }
    }
}

fn as_secs<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Color assignments attempted.
    pub nodes_expanded: u64,
    pub prunes_by_properness: u64,
    pub prunes_by_face_max: u64,
    #[serde(rename = "wall_time_s", serialize_with = "as_secs")]
    pub wall_time: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Satisfiable,
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// First certificate in search order; present iff satisfiable.
    pub certificate: Option<Coloring>,
    pub stats: SearchStats,
}

impl SolveOutcome {
    pub fn is_satisfiable(&self) -> bool {
        self.status == SolveStatus::Satisfiable
    }
}

/// A FUM decision problem: a graph's adjacency, a list of vertex sets that
/// must each have a unique maximum, a palette, and optional per-vertex
/// color bans.
#[derive(Debug, Clone)]
pub struct FumProblem {
    neighbors: Vec<Vec<VertexId>>,
    faces: Vec<Vec<VertexId>>,
    palette: Color,
    allowed: Vec<u64>,
}

impl FumProblem {
    /// Every traced face of `g` is constrained.
    pub fn new(g: &PlaneGraph, palette: Color) -> Result<Self, FumError> {
        Self::with_faces(g, trace_faces(g).vertex_sets(), palette)
    }

    /// Only the given vertex sets are constrained.
    pub fn with_faces(
        g: &PlaneGraph,
        faces: Vec<Vec<VertexId>>,
        palette: Color,
    ) -> Result<Self, FumError> {
        if palette == 0 || palette > MAX_PALETTE {
            return Err(FumError::InvalidPalette(palette));
        }
        let n = g.num_vertices();
        let mut faces = faces;
        for f in &mut faces {
            f.sort_unstable();
            f.dedup();
            if let Some(&v) = f.iter().find(|&&v| v >= n) {
                return Err(FumError::SizeMismatch {
                    expected: n,
                    found: v + 1,
                });
            }
        }
        let full = ((1u64 << palette) - 1) << 1;
        Ok(FumProblem {
            neighbors: g.rotations().to_vec(),
            faces,
            palette,
            allowed: vec![full; n],
        })
    }

    pub fn palette(&self) -> Color {
        self.palette
    }

    pub fn faces(&self) -> &[Vec<VertexId>] {
        &self.faces
    }

    /// Disallows `color` at vertex `v`.
    pub fn forbid(&mut self, v: VertexId, color: Color) {
        self.allowed[v] &= !(1u64 << color);
    }

    /// Face-connected order: each next vertex shares a face with an already
    /// ordered one when possible, preferring many ordered neighbors.
    fn vertex_order(&self) -> Vec<VertexId> {
        let n = self.neighbors.len();
        let mut faces_of = vec![Vec::new(); n];
        for (i, f) in self.faces.iter().enumerate() {
            for &v in f {
                faces_of[v].push(i);
            }
        }
        let mut placed = vec![false; n];
        let mut face_touched = vec![false; self.faces.len()];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let best = (0..n)
                .filter(|&v| !placed[v])
                .filter(|&v| faces_of[v].iter().any(|&f| face_touched[f]))
                .max_by_key(|&v| {
                    let nbrs = self.neighbors[v].iter().filter(|&&u| placed[u]).count();
                    let shared = faces_of[v].iter().filter(|&&f| face_touched[f]).count();
                    (nbrs, shared, std::cmp::Reverse(v))
                })
                .or_else(|| (0..n).find(|&v| !placed[v]))
                .unwrap();
            placed[best] = true;
            for &f in &faces_of[best] {
                face_touched[f] = true;
            }
            order.push(best);
        }
        order
    }

    fn compile(&self, opts: &SearchOptions) -> Compiled<'_> {
        let n = self.neighbors.len();
        let mut faces_of = vec![Vec::new(); n];
        for (i, f) in self.faces.iter().enumerate() {
            for &v in f {
                faces_of[v].push(i);
            }
        }
        Compiled {
            problem: self,
            faces_of,
            order: self.vertex_order(),
            strong: opts.strong_pruning,
        }
    }

    /// Straightforward check of a complete assignment against every
    /// constraint of the problem.
    pub fn is_solution(&self, colors: &[Color]) -> bool {
        colors.len() == self.neighbors.len()
            && colors
                .iter()
                .enumerate()
                .all(|(v, &c)| self.allowed[v] & (1u64 << c) != 0)
            && self
                .neighbors
                .iter()
                .enumerate()
                .all(|(v, nb)| nb.iter().all(|&u| colors[u] != colors[v]))
            && self.faces.iter().all(|f| face_max(f, colors).1 <= 1)
    }

    /// Decides the problem; returns the first solution in search order.
    pub fn solve(&self, opts: &SearchOptions) -> Result<SolveOutcome, FumError> {
        let compiled = self.compile(opts);
        let shared = Shared::new(opts);
        let result = if opts.threads > 1 {
            compiled.solve_parallel(&shared, opts.threads)
        } else {
            let mut w = Worker::new(&compiled, &shared);
            let mut found = None;
            let r = w.dfs(0, &mut |colors| {
                found = Some(colors.to_vec());
                ControlFlow::Break(())
            });
            w.flush();
            r.map(|_| found)
        };
        let stats = shared.stats();
        match result {
            Err(Exceeded) => Err(FumError::ResourceLimitExceeded(stats)),
            Ok(Some(colors)) => {
                assert!(
                    self.is_solution(&colors),
                    "search returned an assignment that violates the problem"
                );
                Ok(SolveOutcome {
                    status: SolveStatus::Satisfiable,
                    certificate: Some(Coloring::new(colors, self.palette)?),
                    stats,
                })
            }
            Ok(None) => Ok(SolveOutcome {
                status: SolveStatus::Exhausted,
                certificate: None,
                stats,
            }),
        }
    }

    /// Visits every solution in search order until `visit` breaks.
    /// Sequential regardless of `opts.threads`.
    pub fn for_each_solution(
        &self,
        opts: &SearchOptions,
        mut visit: impl FnMut(&Coloring) -> ControlFlow<()>,
    ) -> Result<SearchStats, FumError> {
        let compiled = self.compile(opts);
        let shared = Shared::new(opts);
        let mut w = Worker::new(&compiled, &shared);
        let palette = self.palette;
        let r = w.dfs(0, &mut |colors| {
            let c = Coloring::new(colors.to_vec(), palette).expect("search stays in palette");
            visit(&c)
        });
        w.flush();
        let stats = shared.stats();
        match r {
            Ok(_) => Ok(stats),
            Err(Exceeded) => Err(FumError::ResourceLimitExceeded(stats)),
        }
    }
}

/// Decides whether `g` has a FUM-coloring with palette `1..=k`.
pub fn solve_fum(g: &PlaneGraph, k: Color, opts: &SearchOptions) -> Result<SolveOutcome, FumError> {
    let outcome = FumProblem::new(g, k)?.solve(opts)?;
    if let Some(c) = &outcome.certificate {
        let report = super::check_fum(g, c, &trace_faces(g))?;
        assert!(report.is_fum(), "certificate failed the FUM check: {report}");
    }
    Ok(outcome)
}

/// Size of a largest clique; a lower bound on any proper palette.
fn clique_number(g: &PlaneGraph) -> usize {
    fn extend(g: &PlaneGraph, clique: &mut Vec<VertexId>, candidates: &[VertexId], best: &mut usize) {
        *best = (*best).max(clique.len());
        for (i, &v) in candidates.iter().enumerate() {
            if clique.len() + candidates.len() - i <= *best {
                return;
            }
            let next: Vec<_> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&u| g.has_edge(u, v))
                .collect();
            clique.push(v);
            extend(g, clique, &next, best);
            clique.pop();
        }
    }
    let all: Vec<_> = (0..g.num_vertices()).collect();
    let mut best = 0;
    extend(g, &mut Vec::new(), &all, &mut best);
    best
}

/// Smallest palette admitting a FUM-coloring, with its first certificate.
///
/// Starts from the clique number (never above the true value) and walks
/// upward; terminates because `n` distinct colors always work.
pub fn chi_fum(g: &PlaneGraph, opts: &SearchOptions) -> Result<(Color, Coloring), FumError> {
    let mut k = clique_number(g).max(1) as Color;
    loop {
        let outcome = solve_fum(g, k, opts)?;
        if let Some(c) = outcome.certificate {
            return Ok((k, c));
        }
        k += 1;
    }
}

#[derive(Debug)]
struct Exceeded;

struct Shared {
    nodes: AtomicU64,
    prunes_proper: AtomicU64,
    prunes_face: AtomicU64,
    start: Instant,
    node_budget: Option<u64>,
    deadline: Option<Instant>,
}

impl Shared {
    fn new(opts: &SearchOptions) -> Self {
        let start = Instant::now();
        Shared {
            nodes: AtomicU64::new(0),
            prunes_proper: AtomicU64::new(0),
            prunes_face: AtomicU64::new(0),
            start,
            node_budget: opts.node_budget,
            deadline: opts.time_budget.map(|t| start + t),
        }
    }

    fn stats(&self) -> SearchStats {
        SearchStats {
            nodes_expanded: self.nodes.load(Ordering::Relaxed),
            prunes_by_properness: self.prunes_proper.load(Ordering::Relaxed),
            prunes_by_face_max: self.prunes_face.load(Ordering::Relaxed),
            wall_time: self.start.elapsed(),
        }
    }
}

struct Compiled<'a> {
    problem: &'a FumProblem,
    faces_of: Vec<Vec<usize>>,
    order: Vec<VertexId>,
    strong: bool,
}

impl Compiled<'_> {
    /// Splits the tree at a shallow depth and searches the subtrees in
    /// parallel; the first satisfiable subtree in prefix order wins, so the
    /// certificate matches the sequential one.
    fn solve_parallel(&self, shared: &Shared, threads: usize) -> Result<Option<Vec<Color>>, Exceeded> {
        let n = self.order.len();
        let target = 8 * threads;
        let mut prefixes: Vec<Vec<Color>> = vec![Vec::new()];
        let mut depth = 0;
        {
            let mut w = Worker::new(self, shared);
            while depth < n && prefixes.len() < target && !prefixes.is_empty() {
                let mut next = Vec::new();
                for p in &prefixes {
                    w.apply_prefix(p);
                    let v = self.order[depth];
                    for c in 1..=self.problem.palette {
                        if self.problem.allowed[v] & (1u64 << c) == 0 {
                            continue;
                        }
                        if w.assign(v, c)? {
                            let mut q = p.clone();
                            q.push(c);
                            next.push(q);
                            w.unassign(v);
                        }
                    }
                    w.clear_prefix(p);
                }
                prefixes = next;
                depth += 1;
            }
            w.flush();
        }
        if prefixes.is_empty() {
            return Ok(None);
        }
        if depth == n {
            return Ok(Some(self.assignment_of(&prefixes[0])));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        let found = pool.install(|| {
            prefixes.par_iter().find_map_first(|p| {
                let mut w = Worker::new(self, shared);
                w.apply_prefix(p);
                let mut found = None;
                let r = w.dfs(depth, &mut |colors| {
                    found = Some(colors.to_vec());
                    ControlFlow::Break(())
                });
                w.flush();
                match r {
                    Err(e) => Some(Err(e)),
                    Ok(_) => found.map(Ok),
                }
            })
        });
        found.transpose()
    }

    fn assignment_of(&self, prefix: &[Color]) -> Vec<Color> {
        let mut colors = vec![0; self.order.len()];
        for (i, &c) in prefix.iter().enumerate() {
            colors[self.order[i]] = c;
        }
        colors
    }
}

struct Worker<'a> {
    c: &'a Compiled<'a>,
    shared: &'a Shared,
    colors: Vec<Color>,
    uncolored: Vec<usize>,
    nodes: u64,
    prunes_proper: u64,
    prunes_face: u64,
}

impl<'a> Worker<'a> {
    fn new(c: &'a Compiled<'a>, shared: &'a Shared) -> Self {
        Worker {
            c,
            shared,
            colors: vec![0; c.order.len()],
            uncolored: c.problem.faces.iter().map(Vec::len).collect(),
            nodes: 0,
            prunes_proper: 0,
            prunes_face: 0,
        }
    }

    fn flush(&mut self) {
        self.shared
            .prunes_proper
            .fetch_add(std::mem::take(&mut self.prunes_proper), Ordering::Relaxed);
        self.shared
            .prunes_face
            .fetch_add(std::mem::take(&mut self.prunes_face), Ordering::Relaxed);
    }

    /// Replays an already validated prefix without counting nodes.
    fn apply_prefix(&mut self, prefix: &[Color]) {
        for (i, &c) in prefix.iter().enumerate() {
            let v = self.c.order[i];
            self.set(v, c);
        }
    }

    fn clear_prefix(&mut self, prefix: &[Color]) {
        for i in (0..prefix.len()).rev() {
            self.unassign(self.c.order[i]);
        }
    }

    fn set(&mut self, v: VertexId, c: Color) {
        self.colors[v] = c;
        for &f in &self.c.faces_of[v] {
            self.uncolored[f] -= 1;
        }
    }

    fn unassign(&mut self, v: VertexId) {
        self.colors[v] = 0;
        for &f in &self.c.faces_of[v] {
            self.uncolored[f] += 1;
        }
    }

    fn tick(&mut self) -> Result<(), Exceeded> {
        self.nodes += 1;
        let total = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.shared.node_budget.is_some_and(|b| total > b) {
            return Err(Exceeded);
        }
        if self.nodes.is_multiple_of(1024) && self.shared.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(Exceeded);
        }
        Ok(())
    }

    /// Face `f` can no longer reach a unique maximum.
    fn face_dead(&self, f: usize) -> bool {
        let verts = &self.c.problem.faces[f];
        if self.uncolored[f] == 0 {
            return face_max(verts, &self.colors).1 >= 2;
        }
        if !self.c.strong {
            return false;
        }
        let (max, count) = face_max(verts, &self.colors);
        if count < 2 {
            return false;
        }
        // Highest color any uncolored vertex of the face may still take.
        let reach = verts
            .iter()
            .filter(|&&u| self.colors[u] == 0)
            .map(|&u| 63 - self.c.problem.allowed[u].leading_zeros())
            .max()
            .unwrap_or(0);
        reach <= max
    }

    /// Tries `v := c`; on success the state holds the assignment.
    fn assign(&mut self, v: VertexId, c: Color) -> Result<bool, Exceeded> {
        self.tick()?;
        if self.c.problem.neighbors[v].iter().any(|&u| self.colors[u] == c) {
            self.prunes_proper += 1;
            return Ok(false);
        }
        self.set(v, c);
        if self.c.faces_of[v].iter().any(|&f| self.face_dead(f)) {
            self.prunes_face += 1;
            self.unassign(v);
            return Ok(false);
        }
        Ok(true)
    }

    fn dfs(
        &mut self,
        depth: usize,
        visit: &mut dyn FnMut(&[Color]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>, Exceeded> {
        if depth == self.c.order.len() {
            return Ok(visit(&self.colors));
        }
        let v = self.c.order[depth];
        let allowed = self.c.problem.allowed[v];
        for c in 1..=self.c.problem.palette {
            if allowed & (1u64 << c) == 0 {
                continue;
            }
            if self.assign(v, c)? {
                let r = self.dfs(depth + 1, visit);
                self.unassign(v);
                if r? == ControlFlow::Break(()) {
                    return Ok(ControlFlow::Break(()));
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cycle, gen_fig1, gen_k4, gen_path};

    fn quick() -> SearchOptions {
        SearchOptions::unbounded()
    }

    #[test]
    fn triangle_needs_three() {
        let g = gen_cycle(3).unwrap();
        assert_eq!(solve_fum(&g, 2, &quick()).unwrap().status, SolveStatus::Exhausted);
        let sat = solve_fum(&g, 3, &quick()).unwrap();
        assert_eq!(sat.status, SolveStatus::Satisfiable);
        assert_eq!(sat.certificate.unwrap().colors(), &[1, 2, 3]);
    }

    #[test]
    fn small_chi_values() {
        assert_eq!(chi_fum(&gen_k4(), &quick()).unwrap().0, 4);
        assert_eq!(chi_fum(&gen_cycle(4).unwrap(), &quick()).unwrap().0, 3);
        assert_eq!(chi_fum(&gen_path(1).unwrap(), &quick()).unwrap().0, 1);
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(clique_number(&gen_k4()), 4);
        assert_eq!(clique_number(&gen_cycle(5).unwrap()), 2);
        assert_eq!(clique_number(&gen_path(1).unwrap()), 1);
    }

    #[test]
    fn forbidden_colors_are_respected() {
        let g = gen_cycle(3).unwrap();
        let mut p = FumProblem::new(&g, 3).unwrap();
        p.forbid(0, 1);
        let c = p.solve(&quick()).unwrap().certificate.unwrap();
        assert_eq!(c.colors(), &[2, 1, 3]);
    }

    #[test]
    fn tiny_budget_is_an_error_not_exhaustion() {
        let opts = SearchOptions {
            node_budget: Some(10),
            ..SearchOptions::default()
        };
        assert!(matches!(
            solve_fum(&gen_fig1(), 4, &opts),
            Err(FumError::ResourceLimitExceeded(s)) if s.nodes_expanded > 10
        ));
    }

    #[test]
    fn parallel_matches_sequential_certificate() {
        let g = gen_fig1();
        let seq = solve_fum(&g, 5, &quick()).unwrap();
        for threads in [2, 4] {
            let par = solve_fum(&g, 5, &SearchOptions { threads, ..quick() }).unwrap();
            assert_eq!(par.certificate, seq.certificate);
        }
        let par = solve_fum(&g, 4, &SearchOptions { threads: 3, ..quick() }).unwrap();
        assert_eq!(par.status, SolveStatus::Exhausted);
    }

    #[test]
    fn enumeration_counts_all_solutions() {
        // FUM 3-colorings of a triangle: all 6 bijections.
        let g = gen_cycle(3).unwrap();
        let mut count = 0;
        FumProblem::new(&g, 3)
            .unwrap()
            .for_each_solution(&quick(), |_| {
                count += 1;
                ControlFlow::Continue(())
            })
            .unwrap();
        assert_eq!(count, 6);
    }
}
