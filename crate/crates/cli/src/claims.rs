//! The `verify-paper` claim list.
//!
//! Every claim runs its searches single-threaded so node counts in the
//! evidence are reproducible; claims themselves run concurrently.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use fumlab::fum::{
    check_fum, solve_disconnected, solve_fum, verify_cover_condition, verify_disconnected_variant,
    verify_gadget_forcing, CompoundFace, FumError, SearchOptions, SolveStatus,
};
use fumlab::generators::{
    default_k4_faces, gen_fig1, gen_gadget, gen_k4, gen_k4_composite, remove_edge, GadgetHandle, GenError,
};
use fumlab::plane_graph::{trace_faces, Dart, PlaneGraph};
use fumlab::sat::{decode_model, encode_fum, solve_cnf, SatError};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Pass,
    Fail,
    BudgetExceeded,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimResult {
    pub id: u32,
    pub anchor: &'static str,
    pub description: &'static str,
    pub status: ClaimStatus,
    pub evidence: String,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub claims: Vec<ClaimResult>,
    pub overall: ClaimStatus,
}

impl VerificationReport {
    pub fn exit_code(&self) -> u8 {
        match self.overall {
            ClaimStatus::Pass => 0,
            ClaimStatus::Fail => 1,
            ClaimStatus::BudgetExceeded => 20,
        }
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let width = self.claims.iter().map(|c| c.anchor.len()).max().unwrap_or(0);
        for c in &self.claims {
            writeln!(
                out,
                "{:>2}  {:<15} {:<width$}  {:>8.3}s  {}",
                c.id,
                status_word(c.status),
                c.anchor,
                c.wall_time_s,
                c.evidence
            )
            .unwrap();
        }
        writeln!(out, "overall: {}", status_word(self.overall)).unwrap();
        out
    }
}

fn status_word(s: ClaimStatus) -> &'static str {
    match s {
        ClaimStatus::Pass => "PASS",
        ClaimStatus::Fail => "FAIL",
        ClaimStatus::BudgetExceeded => "BUDGET_EXCEEDED",
    }
}

enum Failure {
    Fail(String),
    Budget(String),
}

impl From<FumError> for Failure {
    fn from(e: FumError) -> Self {
        match e {
            FumError::ResourceLimitExceeded(s) => {
                Failure::Budget(format!("search budget exhausted after {} nodes", s.nodes_expanded))
            }
            e => Failure::Fail(e.to_string()),
        }
    }
}

impl From<SatError> for Failure {
    fn from(e: SatError) -> Self {
        match e {
            SatError::BudgetExceeded(d) => Failure::Budget(format!("DPLL budget exhausted after {d} decisions")),
            e => Failure::Fail(e.to_string()),
        }
    }
}

impl From<GenError> for Failure {
    fn from(e: GenError) -> Self {
        Failure::Fail(e.to_string())
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(Failure::Fail(format!($($msg)+)));
        }
    };
}

struct Ctx {
    opts: SearchOptions,
    tamper_gadget: bool,
}

type Outcome = Result<String, Failure>;

struct Claim {
    anchor: &'static str,
    description: &'static str,
    run: fn(&Ctx) -> Outcome,
}

const CLAIMS: &[Claim] = &[
    Claim {
        anchor: "gadget-census",
        description: "H_1 has 8 vertices, 16 edges, 8 triangles and 2 quadrilateral faces, and is 4-regular",
        run: gadget_census,
    },
    Claim {
        anchor: "gadget-forcing-k1",
        description: "every interior-FUM 4-coloring of H_1 uses color 4 on its outer face",
        run: |ctx| forcing(ctx, 1),
    },
    Claim {
        anchor: "gadget-forcing-k2",
        description: "every interior-FUM 4-coloring of H_2 uses color 4 on its outer face",
        run: |ctx| forcing(ctx, 2),
    },
    Claim {
        anchor: "two-copy-k4",
        description: "two copies of H_1 joined by a bridge have no FUM 4-coloring",
        run: fig1_k4,
    },
    Claim {
        anchor: "two-copy-k5",
        description: "the same graph has a FUM 5-coloring",
        run: fig1_k5,
    },
    Claim {
        anchor: "degree-facts",
        description: "the bridged graph has maximum degree 5; without the bridge each copy has maximum degree 4",
        run: degree_facts,
    },
    Claim {
        anchor: "disconnected-variant",
        description: "two copies of H_1 sharing one outer region have no FUM 4-coloring",
        run: disconnected_variant,
    },
    Claim {
        anchor: "k4-cover",
        description: "faces {0, 1} of K4 meet every vertex and no single face does",
        run: k4_cover,
    },
    Claim {
        anchor: "k4-composite",
        description: "K4 with H_1 in faces 0 and 1 has no FUM 4-coloring",
        run: k4_composite,
    },
    Claim {
        anchor: "sat-crosscheck",
        description: "the CNF encoding of the two-copy graph is UNSAT at k=4 and SAT at k=5",
        run: sat_crosscheck,
    },
];

fn gadget(ctx: &Ctx, k: usize) -> Result<GadgetHandle, Failure> {
    let mut h = gen_gadget(k)?;
    if ctx.tamper_gadget && k == 1 {
        h.graph = remove_edge(&h.graph, h.a(1), h.b(1))?;
    }
    Ok(h)
}

fn gadget_census(_: &Ctx) -> Outcome {
    let h = gen_gadget(1)?;
    let g = &h.graph;
    let census = trace_faces(g);
    ensure!(g.num_vertices() == 8 && g.num_edges() == 16, "V={} E={}", g.num_vertices(), g.num_edges());
    ensure!(
        census.counts_by_length == BTreeMap::from([(3, 8), (4, 2)]),
        "face lengths {:?}",
        census.counts_by_length
    );
    ensure!((0..8).all(|v| g.degree(v) == 4), "not 4-regular");
    Ok(format!("V=8 E=16 F={} face lengths {:?}", census.len(), census.counts_by_length))
}

fn forcing(ctx: &Ctx, k: usize) -> Outcome {
    let h = gadget(ctx, k)?;
    let r = verify_gadget_forcing(&h, 4, 4, &ctx.opts)?;
    match r.witness {
        None => Ok(format!("{} interior-FUM colorings, all use 4 on the outer face", r.colorings_examined)),
        Some(w) => Err(Failure::Fail(format!(
            "witness avoiding 4 on the outer face: {:?}",
            w.colors()
        ))),
    }
}

fn fig1_k4(ctx: &Ctx) -> Outcome {
    let out = solve_fum(&gen_fig1(), 4, &ctx.opts)?;
    ensure!(out.status == SolveStatus::Exhausted, "found {:?}", out.certificate.map(|c| c.colors().to_vec()));
    Ok(format!("exhausted after {} nodes", out.stats.nodes_expanded))
}

fn fig1_k5(ctx: &Ctx) -> Outcome {
    let g = gen_fig1();
    let out = solve_fum(&g, 5, &ctx.opts)?;
    let Some(c) = out.certificate else {
        return Err(Failure::Fail("no FUM 5-coloring found".into()));
    };
    ensure!(check_fum(&g, &c, &trace_faces(&g))?.is_fum(), "certificate rejected by checker");
    Ok(format!("certificate {:?}", c.colors()))
}

fn split_fig1() -> Result<Vec<PlaneGraph>, Failure> {
    let g = gen_fig1();
    let a4 = g.vertex_by_label("a4").ok_or(Failure::Fail("no vertex a4".into()))?;
    let a2p = g.vertex_by_label("a2'").ok_or(Failure::Fail("no vertex a2'".into()))?;
    let split = remove_edge(&g, a4, a2p)?;
    Ok(split.split_components().into_iter().map(|(c, _)| c).collect())
}

fn degree_facts(_: &Ctx) -> Outcome {
    let g = gen_fig1();
    ensure!(g.max_degree() == 5, "max degree {}", g.max_degree());
    let comps = split_fig1()?;
    ensure!(comps.len() == 2, "{} components after removing the bridge", comps.len());
    let degrees: Vec<_> = comps.iter().map(PlaneGraph::max_degree).collect();
    ensure!(degrees == [4, 4], "component max degrees {degrees:?}");
    Ok("Δ=5 with the bridge; components have Δ=4 without it".into())
}

fn disconnected_variant(ctx: &Ctx) -> Outcome {
    let comps = split_fig1()?;
    let mut members = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        let find = |p: &str| (0..c.num_vertices()).find(|&v| c.label(v).is_some_and(|l| l.starts_with(p)));
        let (Some(a1), Some(a2)) = (find("a1"), find("a2")) else {
            return Err(Failure::Fail(format!("component {i} lacks a1/a2")));
        };
        let f = trace_faces(c)
            .face_of_dart(Dart::new(a1, a2))
            .ok_or(Failure::Fail(format!("component {i}: a1-a2 is not an edge")))?;
        members.push((i, f));
    }
    let shared = CompoundFace::new(&comps, members)?;
    let report = verify_disconnected_variant(&comps, &shared, 4, &ctx.opts)?;
    ensure!(!report.admits_fum_coloring, "witness {:?}", report.witness.map(|c| c.colors().to_vec()));
    let direct = solve_disconnected(&comps, &shared, 4, &ctx.opts)?;
    ensure!(direct.status == SolveStatus::Exhausted, "direct search found a coloring");
    Ok(format!(
        "shared-face profiles {:?}; {} combinations all fail; direct search exhausted after {} nodes",
        report.profiles_per_component, report.combinations_checked, direct.stats.nodes_expanded
    ))
}

fn k4_cover(_: &Ctx) -> Outcome {
    let k4 = gen_k4();
    let faces = default_k4_faces();
    ensure!(verify_cover_condition(&k4, &faces)?, "faces {faces:?} do not satisfy the cover condition");
    for f in 0..4 {
        ensure!(!verify_cover_condition(&k4, &[f].into())?, "single face {f} already suffices");
    }
    Ok(format!("faces {faces:?} suffice; no single face does"))
}

fn k4_composite(ctx: &Ctx) -> Outcome {
    let g = gen_k4_composite(&default_k4_faces(), 1)?;
    let out = solve_fum(&g, 4, &ctx.opts)?;
    ensure!(out.status == SolveStatus::Exhausted, "found a FUM 4-coloring");
    Ok(format!(
        "V={} E={}; exhausted after {} nodes",
        g.num_vertices(),
        g.num_edges(),
        out.stats.nodes_expanded
    ))
}

fn sat_crosscheck(ctx: &Ctx) -> Outcome {
    let g = gen_fig1();
    let budget = ctx.opts.node_budget;
    let f4 = encode_fum(&g, 4);
    ensure!(solve_cnf(&f4, budget)?.is_none(), "k=4 encoding is satisfiable");
    let f5 = encode_fum(&g, 5);
    let model = solve_cnf(&f5, budget)?.ok_or(Failure::Fail("k=5 encoding is unsatisfiable".into()))?;
    let c = decode_model(&f5, &model)?;
    ensure!(check_fum(&g, &c, &trace_faces(&g))?.is_fum(), "decoded model rejected by checker");
    Ok(format!(
        "k=4: {} vars, {} clauses, UNSAT; k=5: SAT, decoded model is FUM",
        f4.num_vars,
        f4.clauses.len()
    ))
}

fn run_claim(id: u32, claim: &Claim, ctx: &Ctx) -> ClaimResult {
    let start = Instant::now();
    let (status, evidence) = match (claim.run)(ctx) {
        Ok(e) => (ClaimStatus::Pass, e),
        Err(Failure::Fail(e)) => (ClaimStatus::Fail, e),
        Err(Failure::Budget(e)) => (ClaimStatus::BudgetExceeded, e),
    };
    ClaimResult {
        id,
        anchor: claim.anchor,
        description: claim.description,
        status,
        evidence,
        wall_time_s: start.elapsed().as_secs_f64(),
    }
}

/// Runs every claim with `opts` (its thread count is ignored) on up to
/// `workers` threads.
pub fn run_all(opts: &SearchOptions, tamper_gadget: bool, workers: usize) -> VerificationReport {
    let ctx = Ctx {
        opts: SearchOptions {
            threads: 1,
            ..opts.clone()
        },
        tamper_gadget,
    };
    let next = AtomicUsize::new(0);
    let results = Mutex::new(Vec::with_capacity(CLAIMS.len()));
    std::thread::scope(|s| {
        for _ in 0..workers.clamp(1, CLAIMS.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(claim) = CLAIMS.get(i) else { break };
                let r = run_claim(i as u32 + 1, claim, &ctx);
                results.lock().unwrap().push(r);
            });
        }
    });
    let mut claims = results.into_inner().unwrap();
    claims.sort_by_key(|c| c.id);
    let overall = if claims.iter().any(|c| c.status == ClaimStatus::Fail) {
        ClaimStatus::Fail
    } else if claims.iter().any(|c| c.status == ClaimStatus::BudgetExceeded) {
        ClaimStatus::BudgetExceeded
    } else {
        ClaimStatus::Pass
    };
    VerificationReport { claims, overall }
}
