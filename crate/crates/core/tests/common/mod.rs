//! Independent reference implementations and frozen fixtures shared by the
//! integration tests. Nothing here calls into the code it is used to check.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use tww_core::{CnfFormula, Dialect, EdgeKind, Partition, Trigraph};

pub fn small_formula() -> CnfFormula {
    CnfFormula::from_ints(3, &[[1, -2, 3], [-1, 2, -3]], Dialect::ThreeSat).unwrap()
}

pub const NAE_EXAMPLE_CLAUSES: [[i64; 3]; 8] = [
    [1, -2, 3],
    [-1, 4, 5],
    [2, -3, 6],
    [1, 6, -7],
    [4, 5, 7],
    [2, 4, -6],
    [-1, -5, 7],
    [3, -6, -7],
];

pub fn nae_example() -> CnfFormula {
    CnfFormula::from_ints(7, &NAE_EXAMPLE_CLAUSES, Dialect::NaeThreeSat).unwrap()
}

/// Subdivided path edges `(variable, clause)` frozen for the NAE example.
pub const NAE_EXAMPLE_SUBDIVISIONS: [(usize, usize); 10] =
    [(1, 4), (2, 3), (2, 6), (3, 3), (4, 5), (4, 6), (5, 5), (5, 7), (6, 4), (6, 6)];

/// Path vertices `(variable, clause)` with color 1 in the reference
/// 3-coloring for "every variable true except x4"; all others have color 2.
pub const REFERENCE_COLOR_ONE: [(usize, usize); 29] = [
    (1, 1), (1, 3), (1, 4), (1, 6), (1, 8),
    (2, 2), (2, 3), (2, 5), (2, 6), (2, 8),
    (3, 1), (3, 4), (3, 6), (3, 8),
    (4, 1), (4, 3), (4, 7),
    (5, 2), (5, 4), (5, 5), (5, 8),
    (6, 1), (6, 3), (6, 4), (6, 7),
    (7, 1), (7, 3), (7, 5), (7, 7),
];

/// Subdivision vertices with color 1 (the other subdivisions have 2).
pub const REFERENCE_SUBDIV_COLOR_ONE: [(usize, usize); 5] = [(3, 3), (4, 5), (4, 6), (5, 7), (6, 6)];

/// Triangle colors `(u, v, w)` per clause in the same reference coloring.
pub const REFERENCE_TRIANGLES: [[usize; 3]; 8] =
    [[2, 1, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [1, 2, 3], [2, 1, 3], [1, 3, 2], [2, 1, 3]];

/// Subdivision rule written directly from the parity condition: walking
/// the occurrences of each variable in clause order, the edge into the next
/// occurrence is subdivided exactly when the unsubdivided distance parity
/// would disagree with sign equality.
pub fn subdivisions_by_rule(f: &CnfFormula) -> BTreeSet<(usize, usize)> {
    let mut occ: BTreeMap<usize, Vec<(usize, bool)>> = BTreeMap::new();
    for (j, clause) in f.clauses().iter().enumerate() {
        for lit in clause {
            occ.entry(lit.var).or_default().push((j + 1, lit.positive));
        }
    }
    let mut out = BTreeSet::new();
    for (var, list) in occ {
        for w in list.windows(2) {
            let (j0, s0) = w[0];
            let (j1, s1) = w[1];
            let gap_even = (j1 - j0) % 2 == 0;
            if gap_even != (s0 == s1) {
                out.insert((var, j1));
            }
        }
    }
    out
}

pub fn plain_graph(n: usize, edges: &[(usize, usize)]) -> Trigraph {
    Trigraph::new(n, edges, &[]).unwrap()
}

/// The graph on `n` vertices whose edge set is the bit pattern `mask` over
/// pairs in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Trigraph {
    let edges: Vec<_> = all_pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(b, _)| mask >> b & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    plain_graph(n, &edges)
}

pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect()
}

/// Quotient computed pair by pair from the definition.
#[allow(clippy::needless_range_loop)]
pub fn naive_quotient(g: &Trigraph, p: &Partition) -> Vec<Vec<EdgeKind>> {
    let k = p.len();
    let mut q = vec![vec![EdgeKind::None; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let kinds: Vec<EdgeKind> = p.parts()[i]
                .iter()
                .flat_map(|&u| p.parts()[j].iter().map(move |&v| g.edge(u, v)))
                .collect();
            q[i][j] = if kinds.iter().all(|&e| e == EdgeKind::Black) {
                EdgeKind::Black
            } else if kinds.iter().all(|&e| e == EdgeKind::None) {
                EdgeKind::None
            } else {
                EdgeKind::Red
            };
        }
    }
    q
}

pub fn adjacency_matrix(g: &Trigraph) -> Vec<Vec<EdgeKind>> {
    (0..g.n()).map(|u| (0..g.n()).map(|v| if u == v { EdgeKind::None } else { g.edge(u, v) }).collect()).collect()
}

/// Random full merge script: pairs of distinct current parts, named by
/// arbitrary members.
pub fn random_merges<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    let mut parts: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut merges = Vec::new();
    while parts.len() > 1 {
        let i = rng.gen_range(0..parts.len());
        let mut j = rng.gen_range(0..parts.len() - 1);
        if j >= i {
            j += 1;
        }
        let a = *parts[i].choose(rng).unwrap();
        let b = *parts[j].choose(rng).unwrap();
        merges.push((a, b));
        let moved = parts.swap_remove(i.max(j));
        parts[i.min(j)].extend(moved);
    }
    merges
}

/// Chromatic number by listing every partition of the vertices (as
/// restricted growth strings) and keeping the proper one with fewest blocks.
pub fn brute_chromatic(g: &Trigraph) -> usize {
    fn rec(v: usize, blocks: usize, labels: &mut Vec<usize>, edges: &[(usize, usize)], best: &mut usize) {
        if blocks >= *best {
            return;
        }
        if v == labels.len() {
            if edges.iter().all(|&(a, b)| labels[a] != labels[b]) {
                *best = blocks;
            }
            return;
        }
        for c in 0..=blocks {
            labels[v] = c;
            rec(v + 1, blocks.max(c + 1), labels, edges, best);
        }
    }
    let edges: Vec<_> = g.black_edges().collect();
    let mut best = g.n() + 1;
    rec(0, 0, &mut vec![0; g.n()], &edges, &mut best);
    best.min(g.n())
}

/// True when some four vertices induce a path.
pub fn has_induced_p4(g: &Trigraph) -> bool {
    let n = g.n();
    let adj = |u: usize, v: usize| g.edge(u, v) != EdgeKind::None;
    let mut order = [0usize; 4];
    fn rec(n: usize, depth: usize, used: &mut Vec<bool>, order: &mut [usize; 4], adj: &dyn Fn(usize, usize) -> bool) -> bool {
        if depth == 4 {
            let [a, b, c, d] = *order;
            return adj(a, b) && adj(b, c) && adj(c, d) && !adj(a, c) && !adj(a, d) && !adj(b, d);
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                order[depth] = v;
                if rec(n, depth + 1, used, order, adj) {
                    return true;
                }
                used[v] = false;
            }
        }
        false
    }
    rec(n, 0, &mut vec![false; n], &mut order, &adj)
}

/// Random cograph: recursively a single vertex, a disjoint union, or a join.
pub fn random_cograph<R: Rng>(rng: &mut R, n: usize) -> Trigraph {
    fn build<R: Rng>(rng: &mut R, vertices: &[usize], edges: &mut Vec<(usize, usize)>) {
        if vertices.len() <= 1 {
            return;
        }
        let split = rng.gen_range(1..vertices.len());
        let (left, right) = vertices.split_at(split);
        build(rng, left, edges);
        build(rng, right, edges);
        if rng.gen_bool(0.5) {
            for &u in left {
                for &v in right {
                    edges.push((u.min(v), u.max(v)));
                }
            }
        }
    }
    let mut vertices: Vec<usize> = (0..n).collect();
    vertices.shuffle(rng);
    let mut edges = Vec::new();
    build(rng, &vertices, &mut edges);
    plain_graph(n, &edges)
}
