//! 3-CNF formulas under plain or not-all-equal semantics.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("clause {clause}: variable {var} out of range 1..={n_vars}")]
    VarRange { clause: usize, var: usize, n_vars: usize },
    #[error("clause {clause}: a not-all-equal clause needs three distinct variables")]
    Dialect { clause: usize },
    #[error("variable {var} occurs in no clause")]
    UnusedVariable { var: usize },
    #[error("cannot place {n_vars} variables in {clauses} clauses")]
    Unrealizable { n_vars: usize, clauses: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dialect {
    ThreeSat,
    NaeThreeSat,
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dialect::ThreeSat => "3-SAT",
            Dialect::NaeThreeSat => "NAE-3-SAT",
        })
    }
}

/// A signed variable; `var` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    /// DIMACS integer form: `var` or `-var`.
    pub fn from_dimacs(x: i64) -> Option<Self> {
        if x == 0 {
            return None;
        }
        Some(Literal { var: x.unsigned_abs() as usize, positive: x > 0 })
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn negated(self) -> Self {
        Literal { var: self.var, positive: !self.positive }
    }

    pub fn eval(self, a: &Assignment) -> bool {
        a.value(self.var) == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "¬x{}", self.var)
        }
    }
}

pub type Clause = [Literal; 3];

/// Validated 3-CNF formula. Clause and literal order are kept as given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    n_vars: usize,
    clauses: Vec<Clause>,
    dialect: Dialect,
}

impl CnfFormula {
    /// Checks variable ranges, that every variable occurs, and (for NAE)
    /// that each clause is on three distinct variables.
    pub fn new(n_vars: usize, clauses: Vec<Clause>, dialect: Dialect) -> Result<Self, CnfError> {
        let mut used = vec![false; n_vars + 1];
        for (idx, clause) in clauses.iter().enumerate() {
            let clause_no = idx + 1;
            for lit in clause {
                if lit.var == 0 || lit.var > n_vars {
                    return Err(CnfError::VarRange { clause: clause_no, var: lit.var, n_vars });
                }
                used[lit.var] = true;
            }
            if dialect == Dialect::NaeThreeSat {
                let [a, b, c] = clause.map(|l| l.var);
                if a == b || b == c || a == c {
                    return Err(CnfError::Dialect { clause: clause_no });
                }
            }
        }
        if let Some(var) = (1..=n_vars).find(|&v| !used[v]) {
            return Err(CnfError::UnusedVariable { var });
        }
        Ok(CnfFormula { n_vars, clauses, dialect })
    }

    /// Convenience constructor from DIMACS-style signed integers.
    pub fn from_ints(n_vars: usize, clauses: &[[i64; 3]], dialect: Dialect) -> Result<Self, CnfError> {
        let mut out = Vec::with_capacity(clauses.len());
        for (idx, c) in clauses.iter().enumerate() {
            let mut clause = [Literal::pos(1); 3];
            for (slot, &x) in clause.iter_mut().zip(c) {
                *slot = Literal::from_dimacs(x).ok_or(CnfError::Parse {
                    line: 0,
                    message: format!("clause {} contains a zero literal", idx + 1),
                })?;
            }
            out.push(clause);
        }
        CnfFormula::new(n_vars, out, dialect)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Clause `j`, 1-based.
    pub fn clause(&self, j: usize) -> &Clause {
        &self.clauses[j - 1]
    }

    pub fn dialect(&self) -> Dialect {
        self.dialect
    }

    /// Same clauses, reinterpreted under another dialect.
    pub fn with_dialect(&self, dialect: Dialect) -> Result<Self, CnfError> {
        CnfFormula::new(self.n_vars, self.clauses.clone(), dialect)
    }

    /// Every literal negated.
    pub fn complemented(&self) -> Self {
        CnfFormula {
            n_vars: self.n_vars,
            clauses: self.clauses.iter().map(|c| c.map(Literal::negated)).collect(),
            dialect: self.dialect,
        }
    }

    /// 1-based index of the first clause containing a literal and its
    /// negation, if any. Such clauses are always satisfied.
    pub fn first_tautology(&self) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| c.iter().any(|&l| c.contains(&l.negated())))
            .map(|j| j + 1)
    }

    /// Occurrences of `var` as `(clause index, positive)`, clause indices
    /// 1-based and increasing. A variable repeated inside one clause is
    /// listed once per literal.
    pub fn occurrences(&self, var: usize) -> Vec<(usize, bool)> {
        self.clauses
            .iter()
            .enumerate()
            .flat_map(|(j, c)| {
                c.iter()
                    .filter(move |l| l.var == var)
                    .map(move |l| (j + 1, l.positive))
            })
            .collect()
    }

    /// Evaluates under the formula's own dialect.
    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        match self.dialect {
            Dialect::ThreeSat => self.sat_satisfied_by(a),
            Dialect::NaeThreeSat => self.nae_satisfied_by(a),
        }
    }

    /// Every clause has a true literal.
    pub fn sat_satisfied_by(&self, a: &Assignment) -> bool {
        a.len() == self.n_vars && self.clauses.iter().all(|c| c.iter().any(|l| l.eval(a)))
    }

    /// Every clause has both a true and a false literal.
    pub fn nae_satisfied_by(&self, a: &Assignment) -> bool {
        a.len() == self.n_vars
            && self.clauses.iter().all(|c| {
                let t = c.iter().filter(|l| l.eval(a)).count();
                t > 0 && t < 3
            })
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.clauses.iter().enumerate() {
            if j > 0 {
                f.write_str(" ∧ ")?;
            }
            write!(f, "({} ∨ {} ∨ {})", c[0], c[1], c[2])?;
        }
        Ok(())
    }
}

/// Total truth assignment over variables `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    /// `values[i]` is the value of variable `i + 1`.
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn all(n: usize, value: bool) -> Self {
        Assignment { values: vec![value; n] }
    }

    /// Value of the 1-based variable `var`.
    pub fn value(&self, var: usize) -> bool {
        self.values[var - 1]
    }

    pub fn set(&mut self, var: usize, value: bool) {
        self.values[var - 1] = value;
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn complement(&self) -> Self {
        Assignment { values: self.values.iter().map(|v| !v).collect() }
    }
}
