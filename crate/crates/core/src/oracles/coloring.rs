use std::cmp::Reverse;

use super::{Meter, OracleError};
use crate::trigraph::{Trigraph, VertexId};

/// Total map from vertices to colors `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<usize>,
    k: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>, k: usize) -> Result<Self, OracleError> {
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > k) {
            return Err(OracleError::ColorRange { vertex, color, k });
        }
        Ok(Coloring { colors, k })
    }

    /// Palette size taken to be the largest color used.
    pub fn from_colors(colors: Vec<usize>) -> Result<Self, OracleError> {
        let k = colors.iter().copied().max().unwrap_or(0);
        Coloring::new(colors, k)
    }

    pub fn color(&self, v: VertexId) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors actually used.
    pub fn num_used(&self) -> usize {
        let mut seen = vec![false; self.k + 1];
        self.colors.iter().for_each(|&c| seen[c] = true);
        seen.into_iter().filter(|&s| s).count()
    }

    /// Applies `perm` to every color; `perm[c]` is the image of color `c`
    /// (index 0 unused).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, OracleError> {
        Coloring::new(self.colors.iter().map(|&c| perm[c]).collect(), self.k)
    }
}

/// No black edge is monochromatic. Only defined on plain graphs.
pub fn is_proper(g: &Trigraph, col: &Coloring) -> Result<bool, OracleError> {
    if !g.is_plain() {
        return Err(OracleError::RedEdge);
    }
    if col.len() != g.n() {
        return Err(OracleError::Uncolored { expected: g.n(), got: col.len() });
    }
    Ok(g.black_edges().all(|(u, v)| col.color(u) != col.color(v)))
}

fn adjacency(g: &Trigraph) -> Result<Vec<Vec<VertexId>>, OracleError> {
    if !g.is_plain() {
        return Err(OracleError::RedEdge);
    }
    Ok((0..g.n()).map(|v| g.black_neighbors(v).iter().copied().collect()).collect())
}

/// Size of a greedily grown clique, seeded from every vertex in turn.
pub fn clique_lower_bound(g: &Trigraph) -> usize {
    let n = g.n();
    let mut best = usize::from(n > 0);
    for seed in 0..n {
        let mut cands: Vec<VertexId> = g.black_neighbors(seed).iter().copied().collect();
        cands.sort_by_key(|&v| (Reverse(g.black_degree(v)), v));
        let mut clique = vec![seed];
        for v in cands {
            if clique.iter().all(|&u| g.has_black(u, v)) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

/// DSATUR without backtracking; an upper bound on the chromatic number.
pub fn greedy_coloring(g: &Trigraph) -> Result<Coloring, OracleError> {
    let adj = adjacency(g)?;
    let n = g.n();
    let mut search = Dsatur::new(&adj, n.max(1), Meter::new(None));
    for _ in 0..n {
        let v = search.pick().expect("an uncolored vertex remains");
        let c = (1..).find(|&c| search.forbidden[v][c] == 0).expect("n colors always suffice");
        search.assign(v, c);
    }
    Coloring::from_colors(relabel_by_first_use(&search.colors))
}

/// Decides `k`-colorability by DSATUR branch and bound, returning a witness.
///
/// Colors are tried in increasing order and a fresh color is only opened as
/// one more than the largest used so far, so the witness is canonical.
pub fn is_k_colorable(g: &Trigraph, k: usize, budget: Option<u64>) -> Result<Option<Coloring>, OracleError> {
    let adj = adjacency(g)?;
    let mut meter = Meter::new(budget);
    k_coloring(&adj, k, &mut meter).map_err(|nodes| {
        let upper = greedy_coloring(g).map(|c| c.k()).unwrap_or(g.n());
        OracleError::BudgetExceeded { nodes, lower: clique_lower_bound(g), upper }
    })
}

/// Exact chromatic number: clique lower bound, DSATUR upper bound, then
/// exact `k`-colorability for each `k` in between.
pub fn chromatic_number(g: &Trigraph, budget: Option<u64>) -> Result<usize, OracleError> {
    let adj = adjacency(g)?;
    if g.n() == 0 {
        return Ok(0);
    }
    let lower = clique_lower_bound(g);
    let upper = greedy_coloring(g)?.k();
    let mut meter = Meter::new(budget);
    for k in lower..upper {
        match k_coloring(&adj, k, &mut meter) {
            Ok(Some(_)) => return Ok(k),
            Ok(None) => {}
            Err(nodes) => return Err(OracleError::BudgetExceeded { nodes, lower: k, upper }),
        }
    }
    Ok(upper)
}

fn k_coloring(adj: &[Vec<VertexId>], k: usize, meter: &mut Meter) -> Result<Option<Coloring>, u64> {
    let n = adj.len();
    if n == 0 {
        return Ok(Some(Coloring { colors: Vec::new(), k }));
    }
    if k == 0 {
        return Ok(None);
    }
    let mut search = Dsatur::new(adj, k, *meter);
    let found = search.run(0, 0);
    *meter = search.meter;
    match found {
        Search::Found => Ok(Some(Coloring { colors: relabel_by_first_use(&search.colors), k })),
        Search::Fail(_) => Ok(None),
        Search::OutOfBudget => Err(meter.nodes),
    }
}

/// Renames colors in order of first appearance along vertex ids.
fn relabel_by_first_use(colors: &[usize]) -> Vec<usize> {
    let mut map = vec![0; colors.iter().copied().max().unwrap_or(0) + 1];
    let mut next = 0;
    colors
        .iter()
        .map(|&c| {
            if map[c] == 0 {
                next += 1;
                map[c] = next;
            }
            map[c]
        })
        .collect()
}

/// Set of search depths, used as a conflict set for backjumping.
#[derive(Debug, Clone, Default)]
struct DepthSet(Vec<u64>);

impl DepthSet {
    fn insert(&mut self, d: usize) {
        let (w, b) = (d / 64, d % 64);
        if self.0.len() <= w {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << b;
    }

    fn contains(&self, d: usize) -> bool {
        self.0.get(d / 64).is_some_and(|w| w >> (d % 64) & 1 == 1)
    }

    fn remove(&mut self, d: usize) {
        if let Some(w) = self.0.get_mut(d / 64) {
            *w &= !(1 << (d % 64));
        }
    }

    fn union_with(&mut self, other: &DepthSet) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    /// All depths below `d`.
    fn below(d: usize) -> DepthSet {
        let mut s = DepthSet(vec![0; d.div_ceil(64)]);
        for (i, w) in s.0.iter_mut().enumerate() {
            let lo = i * 64;
            *w = if d >= lo + 64 { u64::MAX } else { (1u64 << (d - lo)) - 1 };
        }
        s
    }
}

enum Search {
    Found,
    /// No extension exists while the assignments at these depths stand.
    Fail(DepthSet),
    OutOfBudget,
}

struct Dsatur<'a> {
    adj: &'a [Vec<VertexId>],
    k: usize,
    colors: Vec<usize>,
    /// Depth at which each colored vertex was assigned.
    depth_of: Vec<usize>,
    /// `forbidden[v][c]` = colored neighbours of `v` with color `c`.
    forbidden: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    meter: Meter,
}

impl<'a> Dsatur<'a> {
    fn new(adj: &'a [Vec<VertexId>], k: usize, meter: Meter) -> Self {
        let n = adj.len();
        Dsatur {
            adj,
            k,
            colors: vec![0; n],
            depth_of: vec![usize::MAX; n],
            forbidden: vec![vec![0; k + 2]; n],
            saturation: vec![0; n],
            meter,
        }
    }

    /// Most saturated uncolored vertex, then highest degree, then lowest id.
    fn pick(&self) -> Option<VertexId> {
        (0..self.adj.len())
            .filter(|&v| self.colors[v] == 0)
            .max_by_key(|&v| (self.saturation[v], self.adj[v].len(), Reverse(v)))
    }

    /// Colors `v` with `c`; returns an uncolored neighbour left with no
    /// color, if any.
    fn assign(&mut self, v: VertexId, c: usize) -> Option<VertexId> {
        self.colors[v] = c;
        let mut wiped = None;
        for &w in &self.adj[v] {
            if c < self.forbidden[w].len() {
                self.forbidden[w][c] += 1;
                if self.forbidden[w][c] == 1 {
                    self.saturation[w] += 1;
                }
            }
            if wiped.is_none() && self.colors[w] == 0 && self.saturation[w] >= self.k {
                wiped = Some(w);
            }
        }
        wiped
    }

    fn unassign(&mut self, v: VertexId) {
        let c = std::mem::take(&mut self.colors[v]);
        self.depth_of[v] = usize::MAX;
        for &w in &self.adj[v] {
            if c < self.forbidden[w].len() {
                self.forbidden[w][c] -= 1;
                if self.forbidden[w][c] == 0 {
                    self.saturation[w] -= 1;
                }
            }
        }
    }

    /// Depths of the colored neighbours of `v`: everything that narrowed
    /// its choices.
    fn culprits(&self, v: VertexId) -> DepthSet {
        let mut s = DepthSet::default();
        for &w in &self.adj[v] {
            if self.colors[w] != 0 {
                s.insert(self.depth_of[w]);
            }
        }
        s
    }

    /// Forward-checking DSATUR with conflict-directed backjumping. A failed
    /// subtree reports the depths responsible; levels not among them are
    /// skipped on the way back, so the first solution found is the same as
    /// with plain chronological backtracking.
    fn run(&mut self, depth: usize, max_used: usize) -> Search {
        let Some(v) = self.pick() else {
            return Search::Found;
        };
        if !self.meter.tick() {
            return Search::OutOfBudget;
        }
        let mut conflict = self.culprits(v);
        let top = (max_used + 1).min(self.k);
        if top < self.k {
            // Unopened colors were skipped by symmetry, which depends on
            // every assignment so far.
            conflict.union_with(&DepthSet::below(depth));
        }
        for c in 1..=top {
            if self.forbidden[v][c] != 0 {
                continue;
            }
            self.depth_of[v] = depth;
            if let Some(w) = self.assign(v, c) {
                let mut cs = self.culprits(w);
                cs.remove(depth);
                conflict.union_with(&cs);
                self.unassign(v);
                continue;
            }
            match self.run(depth + 1, max_used.max(c)) {
                Search::Found => return Search::Found,
                Search::OutOfBudget => {
                    self.unassign(v);
                    return Search::OutOfBudget;
                }
                Search::Fail(cs) if !cs.contains(depth) => {
                    self.unassign(v);
                    return Search::Fail(cs);
                }
                Search::Fail(mut cs) => {
                    cs.remove(depth);
                    conflict.union_with(&cs);
                }
            }
            self.unassign(v);
        }
        Search::Fail(conflict)
    }
}
