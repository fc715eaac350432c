//! NAE-3-SAT to 3-Coloring on graphs of twin-width at most 4.
//!
//! Each clause becomes a triangle. Each variable becomes a path with one
//! vertex per clause index, where some edges are subdivided once so that
//! the distance between two consecutive occurrences is even exactly when
//! the two occurrences have the same sign. An apex `z` sees every path
//! vertex, forcing the paths onto two colors, and triangle corner `t` of
//! clause `j` is joined to the path vertex of the `t`-th literal's variable
//! at index `j`.
//!
//! Vertex layout: triangles `u_j, v_j, w_j` first, then each variable path
//! in order (subdivision vertices in place), then `z`, then any universal
//! vertices added by [`ThreeColInstance::lift_to_k`].

use std::collections::BTreeSet;

use super::{ReductionArtifact, ReductionError};
use crate::cnf::{Assignment, CnfFormula, Dialect};
use crate::contraction::PartitionSequence;
use crate::oracles::{is_proper, Coloring};
use crate::trigraph::{EdgeKind, Slot, Trigraph, VertexId, VertexRole};

/// Positions `(var, clause)` whose path edge into `x_{var,clause}` is
/// subdivided. Between consecutive occurrences `j < j'` of a variable, the
/// edge into `x_{var,j'}` is subdivided iff `j' - j` is even and the signs
/// differ, or `j' - j` is odd and the signs agree.
pub fn subdivision_positions(f: &CnfFormula) -> Result<BTreeSet<(usize, usize)>, ReductionError> {
    if f.dialect() != Dialect::NaeThreeSat {
        return Err(ReductionError::Dialect { expected: Dialect::NaeThreeSat, found: f.dialect() });
    }
    let mut out = BTreeSet::new();
    for var in 1..=f.n_vars() {
        for pair in f.occurrences(var).windows(2) {
            let ((j0, s0), (j1, s1)) = (pair[0], pair[1]);
            let even_gap = (j1 - j0) % 2 == 0;
            if even_gap != (s0 == s1) {
                out.insert((var, j1));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeColInstance {
    formula: CnfFormula,
    n: usize,
    m: usize,
    graph: Trigraph,
    subdivisions: BTreeSet<(usize, usize)>,
    /// Vertices of each variable path in path order; `paths[i - 1]`.
    paths: Vec<Vec<VertexId>>,
    /// `occurrence[i - 1][j - 1]` is the vertex `x_{i,j}`.
    occurrence: Vec<Vec<VertexId>>,
    z: VertexId,
}

impl ThreeColInstance {
    pub fn build(f: &CnfFormula) -> Result<Self, ReductionError> {
        let subdivisions = subdivision_positions(f)?;
        let (n, m) = (f.n_vars(), f.num_clauses());
        if m == 0 || n == 0 {
            return Err(ReductionError::EmptyFormula);
        }

        let mut labels = Vec::new();
        for clause in 1..=m {
            labels.extend(Slot::ALL.map(|slot| VertexRole::Triangle { clause, slot }));
        }
        let mut paths = Vec::with_capacity(n);
        let mut occurrence = Vec::with_capacity(n);
        for var in 1..=n {
            let mut path = Vec::new();
            let mut occ = Vec::with_capacity(m);
            for clause in 1..=m {
                if subdivisions.contains(&(var, clause)) {
                    path.push(labels.len());
                    labels.push(VertexRole::SubdivVertex { var, clause });
                }
                path.push(labels.len());
                occ.push(labels.len());
                labels.push(VertexRole::PathVertex { var, clause });
            }
            paths.push(path);
            occurrence.push(occ);
        }
        let z = labels.len();
        labels.push(VertexRole::Z);

        let mut g = Trigraph::empty(labels.len());
        for j in 0..m {
            let t = 3 * j;
            g.insert(t, t + 1, EdgeKind::Black);
            g.insert(t + 1, t + 2, EdgeKind::Black);
            g.insert(t, t + 2, EdgeKind::Black);
        }
        for path in &paths {
            for w in path.windows(2) {
                g.insert(w[0], w[1], EdgeKind::Black);
            }
            for &x in path {
                g.insert(x, z, EdgeKind::Black);
            }
        }
        for (j, clause) in f.clauses().iter().enumerate() {
            for (slot, lit) in clause.iter().enumerate() {
                g.insert(3 * j + slot, occurrence[lit.var - 1][j], EdgeKind::Black);
            }
        }

        Ok(ThreeColInstance {
            formula: f.clone(),
            n,
            m,
            graph: g.with_labels(labels).expect("one label per vertex"),
            subdivisions,
            paths,
            occurrence,
            z,
        })
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

    pub fn num_vertices(&self) -> usize {
        self.graph.n()
    }

    pub fn subdivisions(&self) -> &BTreeSet<(usize, usize)> {
        &self.subdivisions
    }

    /// Corner `slot` of the triangle of clause `j` (1-based).
    pub fn triangle(&self, j: usize, slot: Slot) -> VertexId {
        3 * (j - 1) + slot.index()
    }

    /// `x_{i,j}`, 1-based.
    pub fn x(&self, i: usize, j: usize) -> VertexId {
        self.occurrence[i - 1][j - 1]
    }

    /// `x'_{i,j}` when that edge was subdivided.
    pub fn subdivision(&self, i: usize, j: usize) -> Option<VertexId> {
        self.subdivisions.contains(&(i, j)).then(|| self.x(i, j) - 1)
    }

    /// Variable path of `x_i` in path order.
    pub fn path(&self, i: usize) -> &[VertexId] {
        &self.paths[i - 1]
    }

    pub fn z(&self) -> VertexId {
        self.z
    }

    fn sequence_merges(&self) -> Vec<(VertexId, VertexId)> {
        let mut merges = Vec::with_capacity(self.num_vertices());
        for j in 1..=self.m {
            merges.push((self.triangle(j, Slot::U), self.triangle(j, Slot::V)));
            merges.push((self.triangle(j, Slot::U), self.triangle(j, Slot::W)));
        }
        for &(i, j) in &self.subdivisions {
            merges.push((self.subdivision(i, j).expect("listed subdivision"), self.x(i, j)));
        }
        for i in 2..=self.n {
            for j in 1..=self.m {
                merges.push((self.x(1, j), self.x(i, j)));
            }
        }
        for j in 2..=self.m {
            merges.push((self.x(1, 1), self.x(1, j)));
            merges.push((self.triangle(1, Slot::U), self.triangle(j, Slot::U)));
        }
        merges.push((self.x(1, 1), self.z));
        merges.push((self.x(1, 1), self.triangle(1, Slot::U)));
        merges
    }

    /// Full contraction sequence of width at most 4: collapse triangles,
    /// fold subdivision vertices into their successors, merge the paths
    /// column by column into the first one, sweep the merged path and the
    /// triangles left to right, and finish with the path part, `z`, and the
    /// triangle part.
    pub fn contraction_sequence(&self) -> PartitionSequence {
        PartitionSequence::from_vertex_merges(self.num_vertices(), &self.sequence_merges())
            .expect("contraction merges are well formed")
    }

    pub fn artifact(&self) -> ReductionArtifact {
        ReductionArtifact {
            graph: self.graph.clone(),
            sequence: self.contraction_sequence(),
            width_bound: 4,
        }
    }

    /// The graph with `k - 3` universal vertices appended: `k`-colorable
    /// iff the original is 3-colorable.
    pub fn lift_to_k(&self, k: usize) -> Result<Trigraph, ReductionError> {
        if k < 3 {
            return Err(ReductionError::KTooSmall(k));
        }
        let n0 = self.num_vertices();
        let extra = k - 3;
        let mut g = Trigraph::empty(n0 + extra);
        for (u, v) in self.graph.black_edges() {
            g.insert(u, v, EdgeKind::Black);
        }
        for w in n0..n0 + extra {
            for x in 0..w {
                g.insert(x, w, EdgeKind::Black);
            }
        }
        let mut labels = self.graph.labels().expect("instances are labeled").to_vec();
        labels.extend((1..=extra).map(VertexRole::Universal));
        Ok(g.with_labels(labels).expect("one label per vertex"))
    }

    /// Sequence for [`Self::lift_to_k`]: universal vertices merge first
    /// (they are twins), then the base sequence runs, then the two
    /// remaining parts merge.
    pub fn lifted_sequence(&self, k: usize) -> Result<PartitionSequence, ReductionError> {
        if k < 3 {
            return Err(ReductionError::KTooSmall(k));
        }
        let n0 = self.num_vertices();
        let extra = k - 3;
        let mut merges: Vec<(VertexId, VertexId)> = (n0 + 1..n0 + extra).map(|w| (n0, w)).collect();
        merges.extend(self.sequence_merges());
        if extra > 0 {
            merges.push((0, n0));
        }
        Ok(PartitionSequence::from_vertex_merges(n0 + extra, &merges).expect("lifted merges are well formed"))
    }

    pub fn lifted_artifact(&self, k: usize) -> Result<ReductionArtifact, ReductionError> {
        Ok(ReductionArtifact { graph: self.lift_to_k(k)?, sequence: self.lifted_sequence(k)?, width_bound: 4 })
    }

    /// The 3-coloring induced by a NAE-satisfying assignment.
    ///
    /// `z` gets 3. Each path is 2-colored from its first occurrence, which
    /// gets 1 iff its literal is true. In each triangle the first two
    /// corners whose path neighbours differ take the opposite colors of
    /// those neighbours and the remaining corner takes 3.
    pub fn coloring_from_assignment(&self, a: &Assignment) -> Result<Coloring, ReductionError> {
        if !self.formula.nae_satisfied_by(a) {
            return Err(ReductionError::NotNaeSatisfying);
        }
        let mut colors = vec![0; self.num_vertices()];
        colors[self.z] = 3;
        for var in 1..=self.n {
            let (j_star, positive) = self.formula.occurrences(var)[0];
            let anchor_color = if a.value(var) == positive { 1 } else { 2 };
            let path = self.path(var);
            let anchor = path.iter().position(|&x| x == self.x(var, j_star)).expect("occurrence on its path");
            for (t, &x) in path.iter().enumerate() {
                colors[x] = if t.abs_diff(anchor) % 2 == 0 { anchor_color } else { 3 - anchor_color };
            }
        }
        for (j, clause) in self.formula.clauses().iter().enumerate() {
            let nbr: Vec<usize> = clause.iter().map(|l| colors[self.occurrence[l.var - 1][j]]).collect();
            let (sa, sb) = [(0, 1), (0, 2), (1, 2)]
                .into_iter()
                .find(|&(s, t)| nbr[s] != nbr[t])
                .expect("a NAE clause has two differently colored neighbours");
            for slot in 0..3 {
                colors[3 * j + slot] = if slot == sa || slot == sb { 3 - nbr[slot] } else { 3 };
            }
        }
        Ok(Coloring::new(colors, 3)?)
    }

    /// Reads a NAE-satisfying assignment back from a proper 3-coloring.
    ///
    /// Colors are renamed so that `z` has 3 and `x_{1,1}` has 1. A variable
    /// is true iff its occurrences of positive sign have color 1 (or, with
    /// only negative occurrences, iff those have color 2).
    pub fn assignment_from_coloring(&self, col: &Coloring) -> Result<Assignment, ReductionError> {
        if !is_proper(&self.graph, col)? {
            return Err(ReductionError::NotProper);
        }
        let max_color = col.colors().iter().copied().max().unwrap_or(0);
        if max_color > 3 {
            return Err(ReductionError::TooManyColors { max_color, allowed: 3 });
        }
        let (cz, cx) = (col.color(self.z), col.color(self.x(1, 1)));
        let mut perm = [0; 4];
        perm[cz] = 3;
        perm[cx] = 1;
        let rest = (1..=3).find(|&c| c != cz && c != cx).expect("z and x_(1,1) are adjacent");
        perm[rest] = 2;
        let c = Coloring::new(col.colors().to_vec(), 3)?.permuted(&perm)?;

        let mut values = Vec::with_capacity(self.n);
        for var in 1..=self.n {
            let mut value = None;
            for (j, positive) in self.formula.occurrences(var) {
                let literal_true = c.color(self.x(var, j)) == 1;
                let implied = literal_true == positive;
                match value {
                    None => value = Some(implied),
                    Some(v) if v != implied => {
                        return Err(ReductionError::Structure(format!(
                            "occurrences of x{var} disagree with their signs"
                        )))
                    }
                    Some(_) => {}
                }
            }
            values.push(value.expect("every variable occurs"));
        }
        let a = Assignment::new(values);
        if !self.formula.nae_satisfied_by(&a) {
            return Err(ReductionError::Structure("extracted assignment has an all-equal clause".into()));
        }
        Ok(a)
    }
}
