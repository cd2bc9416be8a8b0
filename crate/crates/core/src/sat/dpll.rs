//! Small complete DPLL checker with two watched literals.
//!
//! Chronological backtracking, no learning. Meant for cross-checking the
//! backtracking search on desk-scale formulas, not as a general solver.

use super::{Assignment, CnfFormula, Literal, SatError};

const UNSET: i8 = 0;

struct State<'a> {
    clauses: &'a [Vec<Literal>],
    /// Per clause, the positions of its two watched literals.
    watched: Vec<[usize; 2]>,
    /// Clauses watching each literal, indexed by `lit_index`.
    watches: Vec<Vec<usize>>,
    values: Vec<i8>,
    trail: Vec<Literal>,
    qhead: usize,
}

fn lit_index(l: Literal) -> usize {
    2 * l.unsigned_abs() as usize + usize::from(l < 0)
}

impl State<'_> {
    fn value(&self, l: Literal) -> i8 {
        let v = self.values[l.unsigned_abs() as usize];
        if l > 0 {
            v
        } else {
            -v
        }
    }

    fn enqueue(&mut self, l: Literal) {
        self.values[l.unsigned_abs() as usize] = if l > 0 { 1 } else { -1 };
        self.trail.push(l);
    }

    /// Unit propagation; false on conflict.
    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let falsified = -self.trail[self.qhead];
            self.qhead += 1;
            let idx = lit_index(falsified);
            let list = std::mem::take(&mut self.watches[idx]);
            let mut keep = Vec::with_capacity(list.len());
            let mut ok = true;
            for (i, &ci) in list.iter().enumerate() {
                if !ok {
                    keep.extend_from_slice(&list[i..]);
                    break;
                }
                let clause = &self.clauses[ci];
                let w = self.watched[ci];
                let (me, other) = if clause[w[0]] == falsified { (0, 1) } else { (1, 0) };
                let other_lit = clause[w[other]];
                if self.value(other_lit) == 1 {
                    keep.push(ci);
                    continue;
                }
                let replacement = (0..clause.len())
                    .find(|&p| p != w[0] && p != w[1] && self.value(clause[p]) != -1);
                match replacement {
                    Some(p) => {
                        self.watched[ci][me] = p;
                        self.watches[lit_index(clause[p])].push(ci);
                    }
                    None => {
                        keep.push(ci);
                        match self.value(other_lit) {
                            UNSET => self.enqueue(other_lit),
                            _ => ok = false,
                        }
                    }
                }
            }
            self.watches[idx].extend(keep);
            if !ok {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let l = self.trail.pop().unwrap();
            self.values[l.unsigned_abs() as usize] = UNSET;
        }
        self.qhead = len;
    }
}

/// Finds a satisfying assignment or proves there is none.
///
/// Branches on the lowest unassigned variable, true first. `max_decisions`
/// bounds the number of branching decisions.
pub fn solve_cnf(f: &CnfFormula, max_decisions: Option<u64>) -> Result<Option<Assignment>, SatError> {
    let n = f.num_vars;
    let mut st = State {
        clauses: &f.clauses,
        watched: vec![[0, 0]; f.clauses.len()],
        watches: vec![Vec::new(); 2 * n + 2],
        values: vec![UNSET; n + 1],
        trail: Vec::new(),
        qhead: 0,
    };
    let mut units = Vec::new();
    for (ci, clause) in f.clauses.iter().enumerate() {
        if clause.len() == 1 {
            units.push(clause[0]);
        } else {
            st.watched[ci] = [0, 1];
            st.watches[lit_index(clause[0])].push(ci);
            st.watches[lit_index(clause[1])].push(ci);
        }
    }
    for l in units {
        match st.value(l) {
            UNSET => st.enqueue(l),
            1 => {}
            _ => return Ok(None),
        }
    }

    // (decision literal, trail length before it, already flipped)
    let mut decisions: Vec<(Literal, usize, bool)> = Vec::new();
    let mut count = 0u64;
    let mut next_var = 1;
    loop {
        if !st.propagate() {
            loop {
                let Some((lit, mark, flipped)) = decisions.pop() else {
                    return Ok(None);
                };
                st.undo_to(mark);
                if !flipped {
                    decisions.push((-lit, mark, true));
                    st.enqueue(-lit);
                    next_var = next_var.min(lit.unsigned_abs() as usize);
                    break;
                }
            }
            continue;
        }
        next_var = next_var.min(n + 1);
        while next_var <= n && st.values[next_var] != UNSET {
            next_var += 1;
        }
        if next_var > n {
            let values = st.values.iter().map(|&v| v == 1).collect();
            let a = Assignment(values);
            debug_assert!(f.is_satisfied_by(&a));
            return Ok(Some(a));
        }
        count += 1;
        if max_decisions.is_some_and(|b| count > b) {
            return Err(SatError::BudgetExceeded(count - 1));
        }
        let lit = next_var as Literal;
        decisions.push((lit, st.trail.len(), false));
        st.enqueue(lit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cnf(n: usize, clauses: &[&[Literal]]) -> CnfFormula {
        CnfFormula::new(n, clauses.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn trivial_cases() {
        assert!(solve_cnf(&cnf(1, &[&[1]]), None).unwrap().is_some());
        assert!(solve_cnf(&cnf(1, &[&[1], &[-1]]), None).unwrap().is_none());
        let a = solve_cnf(&cnf(2, &[&[-1, 2], &[1], &[-2, 1]]), None).unwrap().unwrap();
        assert_eq!(a.0, vec![false, true, true]);
    }

    #[test]
    fn pigeonhole_three_into_two_is_unsat() {
        // p(i, h) = 2*i + h + 1
        let p = |i: i32, h: i32| 2 * i + h + 1;
        let mut clauses: Vec<Vec<Literal>> = (0..3).map(|i| vec![p(i, 0), p(i, 1)]).collect();
        for h in 0..2 {
            for i in 0..3 {
                for j in i + 1..3 {
                    clauses.push(vec![-p(i, h), -p(j, h)]);
                }
            }
        }
        let f = CnfFormula::new(6, clauses).unwrap();
        assert_eq!(solve_cnf(&f, None).unwrap(), None);
        assert!(matches!(solve_cnf(&f, Some(0)), Err(SatError::BudgetExceeded(0))));
    }

    /// Exhaustive truth table; the reference the DPLL answers are compared to.
    fn truth_table(f: &CnfFormula) -> bool {
        (0u32..1 << f.num_vars).any(|bits| {
            let a = Assignment(
                std::iter::once(false)
                    .chain((0..f.num_vars).map(|i| bits >> i & 1 == 1))
                    .collect(),
            );
            f.is_satisfied_by(&a)
        })
    }

    proptest::proptest! {
        #[test]
        fn agrees_with_truth_table(
            clauses in proptest::collection::vec(
                proptest::collection::vec((1i32..=6, proptest::bool::ANY), 1..4), 1..20)
        ) {
            let clauses: Vec<Vec<Literal>> = clauses
                .into_iter()
                .map(|c| c.into_iter().map(|(v, neg)| if neg { -v } else { v }).collect())
                .collect();
            let f = CnfFormula::new(6, clauses).unwrap();
            let got = solve_cnf(&f, None).unwrap();
            proptest::prop_assert_eq!(got.is_some(), truth_table(&f));
            if let Some(a) = got {
                proptest::prop_assert!(f.is_satisfied_by(&a));
            }
        }
    }
}
