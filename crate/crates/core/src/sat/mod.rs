//! CNF encoding of FUM-colorability.
//!
//! Variables: `x(v, c)` "vertex `v` has color `c`" and `m(f, c)` "the
//! maximum color on face `f` is `c`", laid out as
//!
//! ```text
//! x(v, c) = v·k + c                 for v in 0..n,  c in 1..=k
//! m(f, c) = n·k + f·k + c           for f in 0..F,  c in 1..=k
//! ```
//!
//! At-most-one constraints use the pairwise encoding.

mod dimacs;
mod dpll;

use thiserror::Error;

use crate::fum::{Color, Coloring};
use crate::plane_graph::{trace_faces, PlaneGraph, VertexId};

pub use dimacs::{parse_dimacs, read_model, write_dimacs};
pub use dpll::solve_cnf;

pub type Literal = i32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SatError {
    #[error("line {line}: {message}")]
    ModelParseError { line: usize, message: String },
    #[error("model assigns no value to variable {missing}")]
    IncompleteModel { missing: usize },
    #[error("assignment falsifies clause {clause}")]
    NotAModel { clause: usize },
    #[error("vertex {vertex} is assigned several colors: {colors:?}")]
    AmbiguousVertexColor { vertex: VertexId, colors: Vec<Color> },
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("literal {literal} references a variable outside 1..={num_vars}")]
    LiteralOutOfRange { literal: Literal, num_vars: usize },
    #[error("formula carries no FUM variable map")]
    NoVarMap,
    #[error("line {line}: {message}")]
    DimacsSyntax { line: usize, message: String },
    #[error("decision budget exceeded after {0} decisions")]
    BudgetExceeded(u64),
}

/// Decoded meaning of a variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    Color { vertex: VertexId, color: Color },
    FaceMax { face: usize, color: Color },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarMap {
    pub num_vertices: usize,
    pub num_faces: usize,
    pub palette: Color,
}

impl VarMap {
    pub fn x(&self, v: VertexId, c: Color) -> usize {
        debug_assert!(v < self.num_vertices && (1..=self.palette).contains(&c));
        v * self.palette as usize + c as usize
    }

    pub fn m(&self, f: usize, c: Color) -> usize {
        debug_assert!(f < self.num_faces && (1..=self.palette).contains(&c));
        (self.num_vertices + f) * self.palette as usize + c as usize
    }

    pub fn total_vars(&self) -> usize {
        (self.num_vertices + self.num_faces) * self.palette as usize
    }

    pub fn decode(&self, var: usize) -> Option<Var> {
        if var == 0 || var > self.total_vars() {
            return None;
        }
        let k = self.palette as usize;
        let (slot, color) = ((var - 1) / k, ((var - 1) % k + 1) as Color);
        Some(if slot < self.num_vertices {
            Var::Color { vertex: slot, color }
        } else {
            Var::FaceMax {
                face: slot - self.num_vertices,
                color,
            }
        })
    }
}

/// A clause set with its variable count and optional FUM provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Literal>>,
    /// Written as `c` lines ahead of the header.
    pub comments: Vec<String>,
    var_map: Option<VarMap>,
    faces: Vec<Vec<VertexId>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, SatError> {
        for (i, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(SatError::EmptyClause(i));
            }
            if let Some(&literal) = clause
                .iter()
                .find(|&&l| l == 0 || l.unsigned_abs() as usize > num_vars)
            {
                return Err(SatError::LiteralOutOfRange { literal, num_vars });
            }
        }
        Ok(CnfFormula {
            num_vars,
            clauses,
            comments: Vec::new(),
            var_map: None,
            faces: Vec::new(),
        })
    }

    pub fn var_map(&self) -> Option<&VarMap> {
        self.var_map.as_ref()
    }

    /// Face vertex sets the `m` variables refer to.
    pub fn faces(&self) -> &[Vec<VertexId>] {
        &self.faces
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.first_falsified(a).is_none()
    }

    fn first_falsified(&self, a: &Assignment) -> Option<usize> {
        self.clauses
            .iter()
            .position(|cl| !cl.iter().any(|&l| a.literal(l)))
    }
}

/// Total assignment, indexed by variable (index 0 unused).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn num_vars(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn value(&self, var: usize) -> bool {
        self.0[var]
    }

    pub fn literal(&self, l: Literal) -> bool {
        self.0[l.unsigned_abs() as usize] == (l > 0)
    }
}

fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Clause count of [`encode_fum`] as a closed form in the instance
/// parameters; `face_sizes` are distinct-vertex counts.
pub fn fum_clause_count(n: usize, edges: usize, face_sizes: &[usize], k: usize) -> usize {
    let per_vertex = 1 + pairs(k);
    let per_face: usize = face_sizes
        .iter()
        .map(|&d| 1 + pairs(k) + d * pairs(k) + k + k * pairs(d))
        .sum();
    n * per_vertex + edges * k + per_face
}

/// Encodes "`g` has a FUM-coloring with palette `1..=k`".
pub fn encode_fum(g: &PlaneGraph, k: Color) -> CnfFormula {
    assert!(k >= 1, "palette must be non-empty");
    let faces = trace_faces(g).vertex_sets();
    let vm = VarMap {
        num_vertices: g.num_vertices(),
        num_faces: faces.len(),
        palette: k,
    };
    let x = |v, c| vm.x(v, c) as Literal;
    let m = |f, c| vm.m(f, c) as Literal;
    let mut clauses = Vec::new();
    let colors = || 1..=k;

    for v in 0..vm.num_vertices {
        clauses.push(colors().map(|c| x(v, c)).collect());
    }
    for v in 0..vm.num_vertices {
        for c1 in colors() {
            for c2 in c1 + 1..=k {
                clauses.push(vec![-x(v, c1), -x(v, c2)]);
            }
        }
    }
    for (u, v) in g.edges() {
        for c in colors() {
            clauses.push(vec![-x(u, c), -x(v, c)]);
        }
    }
    for (f, verts) in faces.iter().enumerate() {
        clauses.push(colors().map(|c| m(f, c)).collect());
        for c1 in colors() {
            for c2 in c1 + 1..=k {
                clauses.push(vec![-m(f, c1), -m(f, c2)]);
            }
        }
        // The face maximum bounds every face vertex from above...
        for c in colors() {
            for &v in verts {
                for above in c + 1..=k {
                    clauses.push(vec![-m(f, c), -x(v, above)]);
                }
            }
        }
        // ...and is attained by exactly one of them.
        for c in colors() {
            let mut cl = vec![-m(f, c)];
            cl.extend(verts.iter().map(|&v| x(v, c)));
            clauses.push(cl);
        }
        for c in colors() {
            for (i, &u) in verts.iter().enumerate() {
                for &v in &verts[i + 1..] {
                    clauses.push(vec![-m(f, c), -x(u, c), -x(v, c)]);
                }
            }
        }
    }

    let mut comments = vec![
        format!(
            "fum encoding: n={} faces={} palette={}",
            vm.num_vertices, vm.num_faces, k
        ),
        "x(v,c) = v*k + c ; m(f,c) = (n+f)*k + c".to_string(),
    ];
    for var in 1..=vm.total_vars() {
        match vm.decode(var) {
            Some(Var::Color { vertex, color }) => comments.push(format!("var {var} x v{vertex} {color}")),
            Some(Var::FaceMax { face, color }) => comments.push(format!("var {var} m f{face} {color}")),
            None => unreachable!(),
        }
    }
    let num_vars = vm.total_vars();
    CnfFormula {
        num_vars,
        clauses,
        comments,
        var_map: Some(vm),
        faces,
    }
}

/// Extracts the coloring from a satisfying assignment of an [`encode_fum`]
/// formula.
pub fn decode_model(f: &CnfFormula, a: &Assignment) -> Result<Coloring, SatError> {
    let vm = f.var_map().ok_or(SatError::NoVarMap)?;
    if a.num_vars() < f.num_vars {
        return Err(SatError::IncompleteModel {
            missing: a.num_vars() + 1,
        });
    }
    let mut colors = Vec::with_capacity(vm.num_vertices);
    for v in 0..vm.num_vertices {
        let set: Vec<Color> = (1..=vm.palette).filter(|&c| a.value(vm.x(v, c))).collect();
        if set.len() > 1 {
            return Err(SatError::AmbiguousVertexColor { vertex: v, colors: set });
        }
        colors.push(set.first().copied().unwrap_or(0));
    }
    if let Some(clause) = f.first_falsified(a) {
        return Err(SatError::NotAModel { clause });
    }
    for (face, verts) in f.faces.iter().enumerate() {
        let actual = verts.iter().map(|&v| colors[v]).max().unwrap_or(0);
        let claimed: Vec<_> = (1..=vm.palette).filter(|&c| a.value(vm.m(face, c))).collect();
        assert_eq!(claimed, vec![actual], "face {face}: m-variables disagree with the coloring");
    }
    Ok(Coloring::new(colors, vm.palette).expect("model colors lie in the palette"))
}
