//! Random and exhaustive formula corpora for experiments and tests.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cnf::{Clause, CnfError, CnfFormula, Dialect, Literal};

/// Uniform-ish random formula in which every variable occurs and no clause
/// holds a literal together with its negation.
///
/// Variables are first dealt into clause slots in random order so each one
/// appears; the remaining slots are filled uniformly (with distinct
/// variables per clause under NAE). A variable repeated inside a clause
/// repeats its sign.
pub fn random_formula<R: Rng + ?Sized>(
    rng: &mut R,
    n_vars: usize,
    n_clauses: usize,
    dialect: Dialect,
) -> Result<CnfFormula, CnfError> {
    let distinct = dialect == Dialect::NaeThreeSat;
    if n_vars > 3 * n_clauses || (distinct && n_clauses > 0 && n_vars < 3) || n_vars == 0 {
        return Err(CnfError::Unrealizable { n_vars, clauses: n_clauses });
    }
    let mut forced: Vec<usize> = (1..=n_vars).collect();
    forced.shuffle(rng);
    let mut vars: Vec<Vec<usize>> = vec![Vec::with_capacity(3); n_clauses];
    for (k, v) in forced.into_iter().enumerate() {
        vars[k % n_clauses].push(v);
    }
    for clause_vars in &mut vars {
        while clause_vars.len() < 3 {
            let v = rng.gen_range(1..=n_vars);
            if !distinct || !clause_vars.contains(&v) {
                clause_vars.push(v);
            }
        }
        clause_vars.shuffle(rng);
    }
    let clauses = vars
        .into_iter()
        .map(|vs| {
            let mut clause = [Literal::pos(1); 3];
            for (t, v) in vs.into_iter().enumerate() {
                let positive = match clause[..t].iter().find(|l| l.var == v) {
                    Some(l) => l.positive,
                    None => rng.gen_bool(0.5),
                };
                clause[t] = Literal { var: v, positive };
            }
            clause
        })
        .collect();
    CnfFormula::new(n_vars, clauses, dialect)
}

/// Every formula on exactly `n_vars` variables with `n_clauses` clauses, up
/// to renaming variables, flipping their signs, and reordering clauses or
/// the literals inside a clause. Clauses holding a literal and its negation
/// are left out (they are always true); under NAE only clauses on three
/// distinct variables are used. The representative of each class is its smallest
/// member in the sorted-clause encoding.
pub fn formulas_up_to_symmetry(n_vars: usize, n_clauses: usize, dialect: Dialect) -> Vec<CnfFormula> {
    let distinct = dialect == Dialect::NaeThreeSat;
    let lits: Vec<Literal> = (1..=n_vars).flat_map(|v| [Literal::neg(v), Literal::pos(v)]).collect();
    let mut clauses: Vec<Clause> = Vec::new();
    for a in 0..lits.len() {
        for b in a..lits.len() {
            for c in b..lits.len() {
                let clause = [lits[a], lits[b], lits[c]];
                if clause.iter().any(|&l| clause.contains(&l.negated())) {
                    continue;
                }
                let vs = clause.map(|l| l.var);
                if distinct && (vs[0] == vs[1] || vs[1] == vs[2] || vs[0] == vs[2]) {
                    continue;
                }
                clauses.push(clause);
            }
        }
    }
    let symmetries = symmetries(n_vars);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut pick = vec![0usize; n_clauses];
    loop {
        let formula: Vec<Clause> = pick.iter().map(|&i| clauses[i]).collect();
        let canon = symmetries.iter().map(|s| canonical(&formula, s)).min().unwrap_or_default();
        if canon == sorted_formula(&formula) && seen.insert(canon) {
            if let Ok(f) = CnfFormula::new(n_vars, formula, dialect) {
                out.push(f);
            }
        }
        // next non-decreasing index tuple
        let mut k = n_clauses;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if pick[k] + 1 < clauses.len() {
                pick[k] += 1;
                for t in (k + 1)..n_clauses {
                    pick[t] = pick[k];
                }
                break;
            }
        }
    }
}

/// (variable image, sign flip) for each signed permutation of `1..=n`.
fn symmetries(n: usize) -> Vec<Vec<(usize, bool)>> {
    let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &perms {
            for v in (1..=n).filter(|v| !p.contains(v)) {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        perms = next;
    }
    let mut out = Vec::new();
    for p in perms {
        for flips in 0..(1u32 << n) {
            out.push(p.iter().enumerate().map(|(i, &v)| (v, flips >> i & 1 == 1)).collect());
        }
    }
    out
}

fn sorted_formula(f: &[Clause]) -> Vec<Clause> {
    let mut clauses: Vec<Clause> = f
        .iter()
        .map(|c| {
            let mut c = *c;
            c.sort();
            c
        })
        .collect();
    clauses.sort();
    clauses
}

fn canonical(f: &[Clause], sym: &[(usize, bool)]) -> Vec<Clause> {
    let mapped: Vec<Clause> = f
        .iter()
        .map(|c| {
            c.map(|l| {
                let (var, flip) = sym[l.var - 1];
                Literal { var, positive: l.positive != flip }
            })
        })
        .collect();
    sorted_formula(&mapped)
}
