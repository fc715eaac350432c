use crate::cnf::{Assignment, CnfFormula};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Semantics {
    AtLeastOne,
    NotAllEqual,
}

/// Lexicographically smallest satisfying assignment (false < true, `x1`
/// most significant) under plain 3-SAT semantics, or `None`.
pub fn solve_sat(f: &CnfFormula) -> Option<Assignment> {
    solve(f, Semantics::AtLeastOne)
}

/// Lexicographically smallest assignment putting a true and a false literal
/// in every clause, or `None`.
pub fn solve_nae(f: &CnfFormula) -> Option<Assignment> {
    solve(f, Semantics::NotAllEqual)
}

fn solve(f: &CnfFormula, sem: Semantics) -> Option<Assignment> {
    let n = f.n_vars();
    // Clauses become decidable once their largest variable is set.
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (idx, c) in f.clauses().iter().enumerate() {
        let last = c.iter().map(|l| l.var).max().expect("three literals");
        closing[last].push(idx);
    }
    let mut a = Assignment::all(n, false);
    descend(f, sem, &closing, &mut a, 1).then_some(a)
}

fn descend(f: &CnfFormula, sem: Semantics, closing: &[Vec<usize>], a: &mut Assignment, var: usize) -> bool {
    if var > f.n_vars() {
        return true;
    }
    for value in [false, true] {
        a.set(var, value);
        let ok = closing[var].iter().all(|&idx| {
            let clause = &f.clauses()[idx];
            let t = clause.iter().filter(|l| l.eval(a)).count();
            match sem {
                Semantics::AtLeastOne => t > 0,
                Semantics::NotAllEqual => t > 0 && t < 3,
            }
        });
        if ok && descend(f, sem, closing, a, var + 1) {
            return true;
        }
    }
    a.set(var, false);
    false
}
