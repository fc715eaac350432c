//! Partition sequences and their incremental replay.
//!
//! A sequence is a merge script: each step names the two parts to merge by
//! their representative, which is always the smallest vertex of the part.
//! [`Contractor`] maintains, for every pair of live parts, how many cross
//! pairs are black and how many are red. That census decides the colour of
//! the quotient edge exactly, so a merge only touches the parts adjacent to
//! the two merged ones.

use std::collections::HashMap;

use thiserror::Error;

use crate::trigraph::{classify, EdgeKind, Partition, Trigraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("sequence is for {seq} vertices but the trigraph has {graph}")]
    WrongVertexCount { seq: usize, graph: usize },
    #[error("step {step}: vertex {vertex} is out of range")]
    Range { step: usize, vertex: VertexId },
    #[error("step {step}: {vertex} does not name a live part")]
    DeadPart { step: usize, vertex: VertexId },
    #[error("step {step}: {a} and {b} are already in the same part")]
    SamePart { step: usize, a: VertexId, b: VertexId },
    #[error("sequence stops at {parts} parts; a full sequence ends with one")]
    Partial { parts: usize },
}

/// Merge of the parts represented by `a` and `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MergeStep {
    pub a: VertexId,
    pub b: VertexId,
}

/// Ordered merge script over `0..n`, starting from singletons.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartitionSequence {
    n: usize,
    steps: Vec<MergeStep>,
}

impl PartitionSequence {
    /// Raw sequence; well-formedness is checked when it is replayed.
    pub fn new(n: usize, steps: Vec<MergeStep>) -> Self {
        PartitionSequence { n, steps }
    }

    /// Builds a normalized sequence from merges that may name any member of
    /// a part. Each recorded step names the two representatives (smallest
    /// vertex of each part), smaller first.
    pub fn from_vertex_merges(
        n: usize,
        merges: &[(VertexId, VertexId)],
    ) -> Result<Self, SequenceError> {
        let mut uf = MinUnionFind::new(n);
        let mut steps = Vec::with_capacity(merges.len());
        for (step, &(u, v)) in merges.iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(SequenceError::Range { step, vertex });
                }
            }
            let (ru, rv) = (uf.find(u), uf.find(v));
            if ru == rv {
                return Err(SequenceError::SamePart { step, a: u, b: v });
            }
            steps.push(MergeStep { a: ru.min(rv), b: ru.max(rv) });
            uf.union(ru, rv);
        }
        Ok(PartitionSequence { n, steps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[MergeStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// A full sequence has exactly `n - 1` steps (none for `n <= 1`).
    pub fn is_full(&self) -> bool {
        self.steps.len() == self.n.saturating_sub(1)
    }

    /// Appends the steps of `other`, which must live on the same vertex set.
    pub fn extend(&mut self, other: &PartitionSequence) {
        debug_assert_eq!(self.n, other.n);
        self.steps.extend_from_slice(&other.steps);
    }

    /// Prefix holding the first `k` steps.
    pub fn prefix(&self, k: usize) -> PartitionSequence {
        PartitionSequence { n: self.n, steps: self.steps[..k.min(self.steps.len())].to_vec() }
    }

    /// The partition reached after the first `k` steps, parts ordered by
    /// their smallest vertex. Steps are replayed with union-find semantics.
    pub fn partition_after(&self, k: usize) -> Result<Partition, SequenceError> {
        let mut uf = MinUnionFind::new(self.n);
        for (step, s) in self.steps.iter().take(k).enumerate() {
            for vertex in [s.a, s.b] {
                if vertex >= self.n {
                    return Err(SequenceError::Range { step, vertex });
                }
            }
            let (ra, rb) = (uf.find(s.a), uf.find(s.b));
            if ra == rb {
                return Err(SequenceError::SamePart { step, a: s.a, b: s.b });
            }
            uf.union(ra, rb);
        }
        let mut groups: Vec<Vec<VertexId>> = vec![Vec::new(); self.n];
        for v in 0..self.n {
            let r = uf.find(v);
            groups[r].push(v);
        }
        let parts = groups.into_iter().filter(|g| !g.is_empty()).collect();
        Ok(Partition::new(self.n, parts).expect("union-find classes partition 0..n"))
    }
}

/// Union-find whose root is always the smallest element of its class.
#[derive(Debug, Clone)]
struct MinUnionFind {
    parent: Vec<usize>,
}

impl MinUnionFind {
    fn new(n: usize) -> Self {
        MinUnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// Maximum red degree before the first step and after every step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthProfile {
    pub initial_width: usize,
    pub per_step_width: Vec<usize>,
}

impl WidthProfile {
    pub fn overall_width(&self) -> usize {
        self.per_step_width
            .iter()
            .copied()
            .fold(self.initial_width, usize::max)
    }

    /// Number of steps taken when the overall width is first reached
    /// (0 means the initial trigraph already attains it).
    pub fn argmax_step(&self) -> usize {
        let w = self.overall_width();
        if self.initial_width == w {
            return 0;
        }
        self.per_step_width
            .iter()
            .position(|&x| x == w)
            .map_or(0, |i| i + 1)
    }
}

/// Outcome of checking a full sequence against a width bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub within_bound: bool,
    pub profile: WidthProfile,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Census {
    black: usize,
    red: usize,
}

impl Census {
    fn add(self, other: Census) -> Census {
        Census { black: self.black + other.black, red: self.red + other.red }
    }
}

/// Incremental quotient of a trigraph under a growing sequence of merges.
#[derive(Debug, Clone)]
pub struct Contractor {
    /// Members of each live part, indexed by representative; empty when dead.
    members: Vec<Vec<VertexId>>,
    /// Nonzero cross-pair census between live parts, keyed by representative.
    census: Vec<HashMap<VertexId, Census>>,
    red_degree: Vec<usize>,
    /// `degree_count[d]` = number of live parts with red degree `d`.
    degree_count: Vec<usize>,
    max_degree: usize,
    live: usize,
    steps_done: usize,
}

impl Contractor {
    pub fn new(g: &Trigraph) -> Self {
        let n = g.n();
        let mut census = vec![HashMap::new(); n];
        let mut red_degree = vec![0; n];
        for (u, map) in census.iter_mut().enumerate() {
            for &v in g.black_neighbors(u) {
                map.insert(v, Census { black: 1, red: 0 });
            }
            for &v in g.red_neighbors(u) {
                map.insert(v, Census { black: 0, red: 1 });
            }
            red_degree[u] = g.red_neighbors(u).len();
        }
        let mut degree_count = vec![0; n.max(1)];
        for &d in &red_degree {
            degree_count[d] += 1;
        }
        Contractor {
            members: (0..n).map(|v| vec![v]).collect(),
            census,
            max_degree: red_degree.iter().copied().max().unwrap_or(0),
            red_degree,
            degree_count,
            live: n,
            steps_done: 0,
        }
    }

    /// Current maximum red degree of the quotient.
    pub fn width(&self) -> usize {
        self.max_degree
    }

    pub fn num_parts(&self) -> usize {
        self.live
    }

    pub fn is_live(&self, rep: VertexId) -> bool {
        self.members.get(rep).is_some_and(|m| !m.is_empty())
    }

    /// Red degree of the live part represented by `rep`.
    pub fn part_red_degree(&self, rep: VertexId) -> Option<usize> {
        self.is_live(rep).then(|| self.red_degree[rep])
    }

    fn relation(&self, p: VertexId, q: VertexId, c: Census) -> EdgeKind {
        classify(c.black, c.red, self.members[p].len() * self.members[q].len())
    }

    fn set_degree(&mut self, part: VertexId, new: usize) {
        let old = self.red_degree[part];
        if old == new {
            return;
        }
        self.degree_count[old] -= 1;
        self.degree_count[new] += 1;
        self.red_degree[part] = new;
        if new > self.max_degree {
            self.max_degree = new;
        }
        while self.max_degree > 0 && self.degree_count[self.max_degree] == 0 {
            self.max_degree -= 1;
        }
    }

    /// Merges the live parts represented by `a` and `b` and returns the new
    /// width. The merged part is represented by `min(a, b)`.
    pub fn merge(&mut self, a: VertexId, b: VertexId) -> Result<usize, SequenceError> {
        let step = self.steps_done;
        for vertex in [a, b] {
            if vertex >= self.members.len() {
                return Err(SequenceError::Range { step, vertex });
            }
            if !self.is_live(vertex) {
                return Err(SequenceError::DeadPart { step, vertex });
            }
        }
        if a == b {
            return Err(SequenceError::SamePart { step, a, b });
        }
        let (keep, gone) = (a.min(b), a.max(b));

        let keep_map = std::mem::take(&mut self.census[keep]);
        let gone_map = std::mem::take(&mut self.census[gone]);
        let mut neighbours: Vec<VertexId> = keep_map
            .keys()
            .chain(gone_map.keys())
            .copied()
            .filter(|&x| x != keep && x != gone)
            .collect();
        neighbours.sort_unstable();
        neighbours.dedup();

        // Old relations are judged with the old part sizes.
        let mut old_red = Vec::with_capacity(neighbours.len());
        for &x in &neighbours {
            let from_keep = keep_map.get(&x).copied().unwrap_or_default();
            let from_gone = gone_map.get(&x).copied().unwrap_or_default();
            let reds = [(keep, from_keep), (gone, from_gone)]
                .into_iter()
                .filter(|&(p, c)| self.relation(p, x, c) == EdgeKind::Red)
                .count();
            old_red.push(reds);
        }

        let moved = std::mem::take(&mut self.members[gone]);
        self.members[keep].extend(moved);
        self.members[keep].sort_unstable();

        let mut merged = HashMap::with_capacity(neighbours.len());
        let mut keep_degree = 0;
        for (&x, reds_before) in neighbours.iter().zip(old_red) {
            let c = keep_map
                .get(&x)
                .copied()
                .unwrap_or_default()
                .add(gone_map.get(&x).copied().unwrap_or_default());
            merged.insert(x, c);
            let xmap = &mut self.census[x];
            xmap.remove(&gone);
            xmap.insert(keep, c);
            let red_now = self.relation(keep, x, c) == EdgeKind::Red;
            if red_now {
                keep_degree += 1;
            }
            let d = self.red_degree[x] + usize::from(red_now) - reds_before;
            self.set_degree(x, d);
        }
        self.census[keep] = merged;

        // Retire `gone` from the degree histogram, then refresh `keep`.
        self.set_degree(gone, 0);
        self.degree_count[0] -= 1;
        self.set_degree(keep, keep_degree);

        self.live -= 1;
        self.steps_done += 1;
        Ok(self.max_degree)
    }

    /// Current partition, parts ordered by representative.
    pub fn partition(&self) -> Partition {
        let parts: Vec<Vec<VertexId>> =
            self.members.iter().filter(|m| !m.is_empty()).cloned().collect();
        Partition::new(self.members.len(), parts).expect("live parts partition the vertex set")
    }

    /// Current quotient trigraph, vertices in the order of [`Self::partition`].
    pub fn quotient(&self) -> Trigraph {
        let reps: Vec<VertexId> = (0..self.members.len()).filter(|&r| self.is_live(r)).collect();
        let index: HashMap<VertexId, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut q = Trigraph::empty(reps.len());
        for (i, &p) in reps.iter().enumerate() {
            for (&x, &c) in &self.census[p] {
                let j = index[&x];
                if i < j {
                    q.insert(i, j, self.relation(p, x, c));
                }
            }
        }
        q
    }
}

/// Replays `seq` on `g` and reports the width after every step.
pub fn replay(g: &Trigraph, seq: &PartitionSequence) -> Result<WidthProfile, SequenceError> {
    if seq.n() != g.n() {
        return Err(SequenceError::WrongVertexCount { seq: seq.n(), graph: g.n() });
    }
    let mut c = Contractor::new(g);
    let initial_width = c.width();
    let per_step_width = seq
        .steps()
        .iter()
        .map(|s| c.merge(s.a, s.b))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WidthProfile { initial_width, per_step_width })
}

/// Checks that the full sequence `seq` is a `d`-sequence of `g`.
pub fn verify_d_sequence(
    g: &Trigraph,
    seq: &PartitionSequence,
    d: usize,
) -> Result<Verification, SequenceError> {
    let profile = replay(g, seq)?;
    if !seq.is_full() {
        return Err(SequenceError::Partial { parts: g.n() - seq.len() });
    }
    Ok(Verification { within_bound: profile.overall_width() <= d, profile })
}
