//! Trigraphs: graphs whose edges are either black (definite) or red (error).
//!
//! Vertices are dense 0-based indices. Edge sets are stored as per-vertex
//! adjacency sets, so membership, degree and neighbourhood queries are all
//! cheap, and iteration yields canonical `(min, max)` pairs in sorted order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Dense vertex index, `0..n` inside a [`Trigraph`].
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrigraphError {
    #[error("pair {{{0}, {1}}} is listed as both black and red")]
    Overlap(VertexId, VertexId),
    #[error("vertex {vertex} is out of range for a trigraph on {n} vertices")]
    Range { vertex: VertexId, n: usize },
    #[error("self-loop at vertex {0}")]
    Loop(VertexId),
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("{got} labels given for {n} vertices")]
    LabelCount { got: usize, n: usize },
}

/// Colour of the relation between two vertices (or two parts of a quotient).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    None,
    Black,
    Red,
}

/// Which corner of a clause triangle a vertex sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    U,
    V,
    W,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::U, Slot::V, Slot::W];

    pub fn index(self) -> usize {
        match self {
            Slot::U => 0,
            Slot::V => 1,
            Slot::W => 2,
        }
    }
}

/// Role of a vertex inside a reduction output, with 1-based coordinates.
///
/// Labels are metadata only: no algorithm in this crate looks at them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexRole {
    /// `a_{block,index}` on the first path of the min-coloring construction.
    A { block: usize, index: usize },
    /// `b_{block,index}` on the second path.
    B { block: usize, index: usize },
    /// Gadget vertex `v_block`.
    V { block: usize },
    /// Corner of the triangle of clause `clause`.
    Triangle { clause: usize, slot: Slot },
    /// Occurrence-position vertex `x_{var,clause}` of a variable path.
    PathVertex { var: usize, clause: usize },
    /// Subdivision vertex `x'_{var,clause}` sitting just before `x_{var,clause}`.
    SubdivVertex { var: usize, clause: usize },
    /// The apex adjacent to every variable path.
    Z,
    /// The `k`-th added universal vertex.
    Universal(usize),
}

impl fmt::Display for VertexRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VertexRole::A { block, index } => write!(f, "A {block} {index}"),
            VertexRole::B { block, index } => write!(f, "B {block} {index}"),
            VertexRole::V { block } => write!(f, "V {block}"),
            VertexRole::Triangle { clause, slot } => {
                let s = match slot {
                    Slot::U => "u",
                    Slot::V => "v",
                    Slot::W => "w",
                };
                write!(f, "T {clause} {s}")
            }
            VertexRole::PathVertex { var, clause } => write!(f, "X {var} {clause}"),
            VertexRole::SubdivVertex { var, clause } => write!(f, "S {var} {clause}"),
            VertexRole::Z => write!(f, "Z"),
            VertexRole::Universal(k) => write!(f, "U {k}"),
        }
    }
}

impl FromStr for VertexRole {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let num = |t: &str| -> Result<usize, String> {
            t.parse::<usize>()
                .map_err(|_| format!("bad coordinate `{t}` in role `{s}`"))
        };
        let role = match tokens.as_slice() {
            ["A", i, j] => VertexRole::A { block: num(i)?, index: num(j)? },
            ["B", i, j] => VertexRole::B { block: num(i)?, index: num(j)? },
            ["V", i] => VertexRole::V { block: num(i)? },
            ["T", j, slot] => {
                let slot = match *slot {
                    "u" => Slot::U,
                    "v" => Slot::V,
                    "w" => Slot::W,
                    other => return Err(format!("bad triangle slot `{other}`")),
                };
                VertexRole::Triangle { clause: num(j)?, slot }
            }
            ["X", i, j] => VertexRole::PathVertex { var: num(i)?, clause: num(j)? },
            ["S", i, j] => VertexRole::SubdivVertex { var: num(i)?, clause: num(j)? },
            ["Z"] => VertexRole::Z,
            ["U", k] => VertexRole::Universal(num(k)?),
            _ => return Err(format!("unrecognised role `{s}`")),
        };
        Ok(role)
    }
}

/// A trigraph on vertices `0..n` with disjoint black and red edge sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trigraph {
    black: Vec<BTreeSet<VertexId>>,
    red: Vec<BTreeSet<VertexId>>,
    labels: Option<Vec<VertexRole>>,
}

impl Trigraph {
    /// Validated construction from black and red edge lists.
    ///
    /// Duplicate pairs inside one list collapse; a pair in both lists is an
    /// [`TrigraphError::Overlap`].
    pub fn new(
        n: usize,
        black: &[(VertexId, VertexId)],
        red: &[(VertexId, VertexId)],
    ) -> Result<Self, TrigraphError> {
        let mut g = Trigraph::empty(n);
        for &(u, v) in black {
            g.check_pair(u, v)?;
            g.insert(u, v, EdgeKind::Black);
        }
        for &(u, v) in red {
            g.check_pair(u, v)?;
            if g.black[u].contains(&v) {
                return Err(TrigraphError::Overlap(u.min(v), u.max(v)));
            }
            g.insert(u, v, EdgeKind::Red);
        }
        Ok(g)
    }

    /// Edgeless trigraph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Trigraph {
            black: vec![BTreeSet::new(); n],
            red: vec![BTreeSet::new(); n],
            labels: None,
        }
    }

    fn check_pair(&self, u: VertexId, v: VertexId) -> Result<(), TrigraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(TrigraphError::Range { vertex: w, n });
            }
        }
        if u == v {
            return Err(TrigraphError::Loop(u));
        }
        Ok(())
    }

    /// Sets the relation between `u` and `v`, replacing whatever was there.
    /// Callers guarantee `u != v` and both in range.
    pub(crate) fn insert(&mut self, u: VertexId, v: VertexId, kind: EdgeKind) {
        self.black[u].remove(&v);
        self.black[v].remove(&u);
        self.red[u].remove(&v);
        self.red[v].remove(&u);
        match kind {
            EdgeKind::None => {}
            EdgeKind::Black => {
                self.black[u].insert(v);
                self.black[v].insert(u);
            }
            EdgeKind::Red => {
                self.red[u].insert(v);
                self.red[v].insert(u);
            }
        }
    }

    /// Attaches one role per vertex.
    pub fn with_labels(mut self, labels: Vec<VertexRole>) -> Result<Self, TrigraphError> {
        if labels.len() != self.n() {
            return Err(TrigraphError::LabelCount { got: labels.len(), n: self.n() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[VertexRole]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: VertexId) -> Option<VertexRole> {
        self.labels.as_ref().and_then(|l| l.get(v).copied())
    }

    /// Drops labels, keeping the edge structure.
    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn n(&self) -> usize {
        self.black.len()
    }

    pub fn edge(&self, u: VertexId, v: VertexId) -> EdgeKind {
        if self.black[u].contains(&v) {
            EdgeKind::Black
        } else if self.red[u].contains(&v) {
            EdgeKind::Red
        } else {
            EdgeKind::None
        }
    }

    pub fn has_black(&self, u: VertexId, v: VertexId) -> bool {
        self.black[u].contains(&v)
    }

    pub fn has_red(&self, u: VertexId, v: VertexId) -> bool {
        self.red[u].contains(&v)
    }

    pub fn black_neighbors(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.black[v]
    }

    pub fn red_neighbors(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.red[v]
    }

    /// Black and red neighbours together, in increasing order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.black[v].union(&self.red[v]).copied()
    }

    /// Black edges as sorted `(u, v)` pairs with `u < v`.
    pub fn black_edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        canonical_pairs(&self.black)
    }

    /// Red edges as sorted `(u, v)` pairs with `u < v`.
    pub fn red_edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        canonical_pairs(&self.red)
    }

    pub fn num_black_edges(&self) -> usize {
        self.black.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn num_red_edges(&self) -> usize {
        self.red.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// True when there are no red edges.
    pub fn is_plain(&self) -> bool {
        self.red.iter().all(BTreeSet::is_empty)
    }

    pub fn black_degree(&self, v: VertexId) -> usize {
        self.black[v].len()
    }

    pub fn red_degree(&self, v: VertexId) -> Result<usize, TrigraphError> {
        self.red
            .get(v)
            .map(BTreeSet::len)
            .ok_or(TrigraphError::Range { vertex: v, n: self.n() })
    }

    /// Maximum red degree, 0 on empty or fully black trigraphs.
    pub fn max_red_degree(&self) -> usize {
        self.red.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Every black edge turned red.
    pub fn redify(&self) -> Trigraph {
        let mut red = self.red.clone();
        for (u, nbrs) in self.black.iter().enumerate() {
            red[u].extend(nbrs.iter().copied());
        }
        Trigraph {
            black: vec![BTreeSet::new(); self.n()],
            red,
            labels: self.labels.clone(),
        }
    }

    /// True when both trigraphs have the same vertex count and edge colours.
    pub fn same_edges(&self, other: &Trigraph) -> bool {
        self.black == other.black && self.red == other.red
    }

    /// The quotient trigraph, one vertex per part in the order of `p`.
    ///
    /// Parts `P`, `Q` are joined black when every cross pair is black, red
    /// when some cross pair is red or the cross pairs mix black and
    /// non-edges, and left non-adjacent otherwise.
    pub fn quotient(&self, p: &Partition) -> Result<Trigraph, TrigraphError> {
        if p.n() != self.n() {
            return Err(TrigraphError::Partition(format!(
                "partition covers {} vertices, trigraph has {}",
                p.n(),
                self.n()
            )));
        }
        let k = p.len();
        let mut q = Trigraph::empty(k);
        for i in 0..k {
            for j in (i + 1)..k {
                let (pi, pj) = (&p.parts()[i], &p.parts()[j]);
                let mut black = 0usize;
                let mut red = 0usize;
                for &u in pi {
                    black += pj.iter().filter(|v| self.black[u].contains(v)).count();
                    red += pj.iter().filter(|v| self.red[u].contains(v)).count();
                }
                let kind = classify(black, red, pi.len() * pj.len());
                q.insert(i, j, kind);
            }
        }
        Ok(q)
    }
}

/// Relation between two parts given their cross-pair census.
pub fn classify(black: usize, red: usize, total: usize) -> EdgeKind {
    if red > 0 || (black > 0 && black < total) {
        EdgeKind::Red
    } else if black > 0 {
        EdgeKind::Black
    } else {
        EdgeKind::None
    }
}

fn canonical_pairs(adj: &[BTreeSet<VertexId>]) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
    adj.iter()
        .enumerate()
        .flat_map(|(u, nbrs)| nbrs.range((u + 1)..).map(move |&v| (u, v)))
}

/// Alias matching the `make_trigraph` operation name.
pub fn make_trigraph(
    n: usize,
    black: &[(VertexId, VertexId)],
    red: &[(VertexId, VertexId)],
) -> Result<Trigraph, TrigraphError> {
    Trigraph::new(n, black, red)
}

/// A partition of `0..n` into nonempty disjoint parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<Vec<VertexId>>,
    part_of: Vec<usize>,
}

impl Partition {
    /// Validates that `parts` covers `0..n` exactly once. Vertices inside
    /// each part are sorted; part order is kept.
    pub fn new(n: usize, parts: Vec<Vec<VertexId>>) -> Result<Self, TrigraphError> {
        let mut part_of = vec![usize::MAX; n];
        let mut sorted = Vec::with_capacity(parts.len());
        for (idx, mut part) in parts.into_iter().enumerate() {
            if part.is_empty() {
                return Err(TrigraphError::Partition(format!("part {idx} is empty")));
            }
            part.sort_unstable();
            for &v in &part {
                if v >= n {
                    return Err(TrigraphError::Partition(format!(
                        "vertex {v} out of range for {n} vertices"
                    )));
                }
                if part_of[v] != usize::MAX {
                    return Err(TrigraphError::Partition(format!(
                        "vertex {v} appears in more than one part"
                    )));
                }
                part_of[v] = idx;
            }
            sorted.push(part);
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(TrigraphError::Partition(format!("vertex {v} is not covered")));
        }
        Ok(Partition { parts: sorted, part_of })
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            parts: (0..n).map(|v| vec![v]).collect(),
            part_of: (0..n).collect(),
        }
    }

    /// One part holding every vertex (no parts at all when `n == 0`).
    pub fn whole(n: usize) -> Self {
        if n == 0 {
            return Partition { parts: Vec::new(), part_of: Vec::new() };
        }
        Partition {
            parts: vec![(0..n).collect()],
            part_of: vec![0; n],
        }
    }

    pub fn parts(&self) -> &[Vec<VertexId>] {
        &self.parts
    }

    pub fn part_of(&self, v: VertexId) -> usize {
        self.part_of[v]
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of vertices covered.
    pub fn n(&self) -> usize {
        self.part_of.len()
    }
}
