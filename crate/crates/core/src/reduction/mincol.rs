//! 3-SAT to Min Coloring on graphs of twin-width at most 3.
//!
//! For `n` variables and `m` clauses let `p = 2n + m`. Two paths on `2np`
//! vertices are cut into `p` blocks of `2n` consecutive vertices
//! (`A_1..A_p` and `B_1..B_p`) and each path is raised to its `(2n-1)`-th
//! power, so every block is a clique and consecutive blocks interlock. One
//! gadget vertex `v_i` per block pair then sees a subset of `A_i ∪ B_i`:
//! the first `2n` blocks encode the variables, the last `m` the clauses.
//! The graph is `2n`-colorable iff the formula is satisfiable.

use super::{ReductionArtifact, ReductionError};
use crate::cnf::{Assignment, CnfFormula, Dialect};
use crate::contraction::PartitionSequence;
use crate::oracles::{is_proper, Coloring};
use crate::trigraph::{EdgeKind, Trigraph, VertexId, VertexRole};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinColInstance {
    formula: CnfFormula,
    n: usize,
    m: usize,
    p: usize,
    graph: Trigraph,
}

impl MinColInstance {
    /// Builds the graph for a 3-SAT formula with at least two variables.
    ///
    /// Clauses holding both `x` and `¬x` are rejected: their gadget would
    /// block both colors of `x`, turning an always-true clause into one that
    /// ignores `x`, and the equivalence with colorability would break.
    pub fn build(f: &CnfFormula) -> Result<Self, ReductionError> {
        if f.dialect() != Dialect::ThreeSat {
            return Err(ReductionError::Dialect { expected: Dialect::ThreeSat, found: f.dialect() });
        }
        let n = f.n_vars();
        if n < 2 {
            return Err(ReductionError::TooFewVariables(n));
        }
        if let Some(j) = f.first_tautology() {
            return Err(ReductionError::Tautology(j));
        }
        let m = f.num_clauses();
        let p = 2 * n + m;
        let mut inst = MinColInstance {
            formula: f.clone(),
            n,
            m,
            p,
            graph: Trigraph::empty((4 * n + 1) * p),
        };
        let mut g = Trigraph::empty(inst.num_vertices());

        // Path powers: positions at distance at most 2n - 1 are adjacent.
        let len = 2 * n * p;
        for base in [0, len] {
            for t in 0..len {
                for s in (t + 1)..len.min(t + 2 * n) {
                    g.insert(base + t, base + s, EdgeKind::Black);
                }
            }
        }

        // Variable gadgets: block k misses the pair of A-vertices of its
        // variable and b_{k,k}.
        for k in 1..=2 * n {
            let var = k.div_ceil(2);
            for j in 1..=2 * n {
                if j != 2 * var - 1 && j != 2 * var {
                    g.insert(inst.v(k), inst.a(k, j), EdgeKind::Black);
                }
                if j != k {
                    g.insert(inst.v(k), inst.b(k, j), EdgeKind::Black);
                }
            }
        }

        // Clause gadgets: B_i minus the even positions of the clause's
        // variables, plus one A-vertex per literal (odd position for a
        // positive literal, even for a negative one).
        for (c, clause) in f.clauses().iter().enumerate() {
            let i = 2 * n + c + 1;
            for j in 1..=2 * n {
                if !clause.iter().any(|l| 2 * l.var == j) {
                    g.insert(inst.v(i), inst.b(i, j), EdgeKind::Black);
                }
            }
            for lit in clause {
                let j = if lit.positive { 2 * lit.var - 1 } else { 2 * lit.var };
                g.insert(inst.v(i), inst.a(i, j), EdgeKind::Black);
            }
        }

        let mut labels = Vec::with_capacity(inst.num_vertices());
        for side in 0..2 {
            for block in 1..=p {
                for index in 1..=2 * n {
                    labels.push(if side == 0 {
                        VertexRole::A { block, index }
                    } else {
                        VertexRole::B { block, index }
                    });
                }
            }
        }
        labels.extend((1..=p).map(|block| VertexRole::V { block }));
        inst.graph = g.with_labels(labels).expect("one label per vertex");
        Ok(inst)
    }

    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    pub fn graph(&self) -> &Trigraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of blocks, `2n + m`.
    pub fn p(&self) -> usize {
        self.p
    }

    /// `(4n + 1) p`.
    pub fn num_vertices(&self) -> usize {
        (4 * self.n + 1) * self.p
    }

    /// Number of colors the graph needs exactly when the formula is
    /// satisfiable.
    pub fn color_budget(&self) -> usize {
        2 * self.n
    }

    /// `a_{i,j}` for `i` in `1..=p`, `j` in `1..=2n`.
    pub fn a(&self, i: usize, j: usize) -> VertexId {
        (i - 1) * 2 * self.n + (j - 1)
    }

    /// `b_{i,j}` for `i` in `1..=p`, `j` in `1..=2n`.
    pub fn b(&self, i: usize, j: usize) -> VertexId {
        2 * self.n * self.p + self.a(i, j)
    }

    /// Gadget vertex `v_i` for `i` in `1..=p`.
    pub fn v(&self, i: usize) -> VertexId {
        4 * self.n * self.p + (i - 1)
    }

    /// Merges of the first stage: each block collapses left to right.
    fn block_merges(&self) -> Vec<(VertexId, VertexId)> {
        let mut merges = Vec::new();
        for j in 2..=2 * self.n {
            for i in 1..=self.p {
                merges.push((self.a(i, 1), self.a(i, j)));
                merges.push((self.b(i, 1), self.b(i, j)));
            }
        }
        merges
    }

    /// Prefix of the sequence that only collapses every `A_i` and `B_i`.
    pub fn block_stage(&self) -> PartitionSequence {
        PartitionSequence::from_vertex_merges(self.num_vertices(), &self.block_merges())
            .expect("block merges are well formed")
    }

    /// Full contraction sequence of width at most 3.
    ///
    /// After the blocks are collapsed, the quotient is two paths of block
    /// parts joined through the gadget vertices. The second stage sweeps
    /// left to right, absorbing block `i` of each path and then `v_i`; the
    /// last three parts are merged A-part with B-part, then with the gadget
    /// part.
    pub fn contraction_sequence(&self) -> PartitionSequence {
        let mut merges = self.block_merges();
        for i in 2..=self.p {
            merges.push((self.a(1, 1), self.a(i, 1)));
            merges.push((self.b(1, 1), self.b(i, 1)));
            merges.push((self.v(1), self.v(i)));
        }
        merges.push((self.a(1, 1), self.b(1, 1)));
        merges.push((self.a(1, 1), self.v(1)));
        PartitionSequence::from_vertex_merges(self.num_vertices(), &merges)
            .expect("contraction merges are well formed")
    }

    pub fn artifact(&self) -> ReductionArtifact {
        ReductionArtifact {
            graph: self.graph.clone(),
            sequence: self.contraction_sequence(),
            width_bound: 3,
        }
    }

    /// The `2n`-coloring induced by a satisfying assignment.
    ///
    /// `b_{i,j}` gets `j`; the pair `a_{i,2j-1}, a_{i,2j}` gets `2j-1, 2j`
    /// when `x_j` is true and the swap otherwise; variable gadget `v_i` gets
    /// `i`; a clause gadget gets `2j` for the variable of its first literal
    /// made true.
    pub fn coloring_from_assignment(&self, a: &Assignment) -> Result<Coloring, ReductionError> {
        if !self.formula.sat_satisfied_by(a) {
            return Err(ReductionError::NotSatisfying);
        }
        let mut colors = vec![0; self.num_vertices()];
        for i in 1..=self.p {
            for j in 1..=2 * self.n {
                colors[self.b(i, j)] = j;
            }
            for var in 1..=self.n {
                let (odd, even) = if a.value(var) { (2 * var - 1, 2 * var) } else { (2 * var, 2 * var - 1) };
                colors[self.a(i, 2 * var - 1)] = odd;
                colors[self.a(i, 2 * var)] = even;
            }
        }
        for i in 1..=2 * self.n {
            colors[self.v(i)] = i;
        }
        for (c, clause) in self.formula.clauses().iter().enumerate() {
            let lit = clause.iter().find(|l| l.eval(a)).expect("assignment satisfies every clause");
            colors[self.v(2 * self.n + c + 1)] = 2 * lit.var;
        }
        Ok(Coloring::new(colors, self.color_budget())?)
    }

    /// Reads a satisfying assignment back from a proper `2n`-coloring.
    ///
    /// Colors are first renamed so that `b_{1,j}` has color `j`; then `x_j`
    /// is true iff `a_{1,2j-1}` has color `2j-1`.
    pub fn assignment_from_coloring(&self, col: &Coloring) -> Result<Assignment, ReductionError> {
        if !is_proper(&self.graph, col)? {
            return Err(ReductionError::NotProper);
        }
        let budget = self.color_budget();
        let max_color = col.colors().iter().copied().max().unwrap_or(0);
        if max_color > budget {
            return Err(ReductionError::TooManyColors { max_color, allowed: budget });
        }
        // B_1 is a 2n-clique, so its colors are a permutation of 1..=2n.
        let mut perm = vec![0; budget + 1];
        for j in 1..=budget {
            perm[col.color(self.b(1, j))] = j;
        }
        let c = Coloring::new(col.colors().to_vec(), budget)?.permuted(&perm)?;

        let mut values = Vec::with_capacity(self.n);
        for var in 1..=self.n {
            let (odd, even) = (2 * var - 1, 2 * var);
            let first = (c.color(self.a(1, odd)), c.color(self.a(1, even)));
            if first != (odd, even) && first != (even, odd) {
                return Err(ReductionError::Structure(format!(
                    "a_(1,{odd}), a_(1,{even}) colored {first:?}, expected {{{odd}, {even}}}"
                )));
            }
            for i in 2..=self.p {
                if (c.color(self.a(i, odd)), c.color(self.a(i, even))) != first {
                    return Err(ReductionError::Structure(format!(
                        "block {i} disagrees with block 1 on variable {var}"
                    )));
                }
            }
            values.push(first.0 == odd);
        }
        let a = Assignment::new(values);
        if !self.formula.sat_satisfied_by(&a) {
            return Err(ReductionError::Structure("extracted assignment falsifies a clause".into()));
        }
        Ok(a)
    }
}
