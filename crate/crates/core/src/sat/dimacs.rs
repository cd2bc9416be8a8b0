use std::fmt::Write as _;

use super::{Assignment, CnfFormula, Literal, SatError};

/// DIMACS CNF: comment lines, `p cnf <vars> <clauses>`, then one
/// 0-terminated clause per line.
pub fn write_dimacs(f: &CnfFormula) -> String {
    let mut out = String::new();
    for c in &f.comments {
        writeln!(out, "c {c}").unwrap();
    }
    writeln!(out, "p cnf {} {}", f.num_vars, f.clauses.len()).unwrap();
    for clause in &f.clauses {
        for l in clause {
            write!(out, "{l} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}

/// Reads DIMACS CNF. Clauses may span lines; comments are kept.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, SatError> {
    let syntax = |line, message: String| SatError::DimacsSyntax { line, message };
    let mut header: Option<(usize, usize, usize)> = None;
    let mut comments = Vec::new();
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('c') {
            if rest.is_empty() || rest.starts_with(' ') {
                comments.push(rest.trim_start().to_string());
                continue;
            }
        }
        if content.starts_with('p') {
            let toks: Vec<_> = content.split_whitespace().collect();
            if header.is_some() || toks.len() != 4 || toks[0] != "p" || toks[1] != "cnf" {
                return Err(syntax(line, format!("bad problem line `{content}`")));
            }
            let vars = toks[2].parse().map_err(|_| syntax(line, "bad variable count".into()))?;
            let count = toks[3].parse().map_err(|_| syntax(line, "bad clause count".into()))?;
            header = Some((vars, count, line));
            continue;
        }
        if header.is_none() {
            return Err(syntax(line, "clause before `p cnf` line".into()));
        }
        for tok in content.split_whitespace() {
            let l: Literal = tok
                .parse()
                .map_err(|_| syntax(line, format!("bad literal `{tok}`")))?;
            if l == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(l);
            }
        }
    }
    let (vars, count, hline) = header.ok_or_else(|| syntax(0, "missing `p cnf` line".into()))?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(syntax(
            hline,
            format!("header declares {count} clauses, found {}", clauses.len()),
        ));
    }
    let mut f = CnfFormula::new(vars, clauses)?;
    f.comments = comments;
    Ok(f)
}

/// Parses a model for `num_vars` variables.
///
/// Accepts solver output (`s SATISFIABLE` plus `v` lines) or bare literal
/// lists; `c` lines are skipped and `0` ends the model.
pub fn read_model(text: &str, num_vars: usize) -> Result<Assignment, SatError> {
    let err = |line, message: String| SatError::ModelParseError { line, message };
    let mut values: Vec<Option<bool>> = vec![None; num_vars + 1];
    'lines: for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut content = raw.trim();
        if content.is_empty() || content.starts_with('c') {
            continue;
        }
        if let Some(status) = content.strip_prefix("s ") {
            match status.trim() {
                "SATISFIABLE" => continue,
                other => return Err(err(line, format!("solver reported `{other}`"))),
            }
        }
        if let Some(rest) = content.strip_prefix("v ") {
            content = rest;
        } else if content == "v" {
            continue;
        }
        for tok in content.split_whitespace() {
            let l: Literal = tok
                .parse()
                .map_err(|_| err(line, format!("bad literal `{tok}`")))?;
            if l == 0 {
                break 'lines;
            }
            let var = l.unsigned_abs() as usize;
            if var > num_vars {
                return Err(err(line, format!("variable {var} exceeds {num_vars}")));
            }
            if values[var].replace(l > 0).is_some_and(|old| old != (l > 0)) {
                return Err(err(line, format!("variable {var} assigned both ways")));
            }
        }
    }
    let mut out = vec![false; num_vars + 1];
    for var in 1..=num_vars {
        out[var] = values[var].ok_or(SatError::IncompleteModel { missing: var })?;
    }
    Ok(Assignment(out))
}
