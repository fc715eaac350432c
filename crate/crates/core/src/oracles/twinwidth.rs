//! Exact twin-width by exhaustive search over merge orders.
//!
//! Works on bitmask parts and recomputes quotient relations from scratch, so
//! it shares no code with the incremental [`crate::contraction::Contractor`].
//! For a fixed bound `d` the search is a DFS over partitions in which every
//! visited quotient has red degree at most `d`; partitions proven dead are
//! memoized under their canonical encoding (parts sorted by least vertex).

use std::collections::HashSet;

use super::{Meter, OracleError};
use crate::contraction::PartitionSequence;
use crate::trigraph::{Trigraph, VertexId};

/// Largest vertex count accepted by the exact search.
pub const MAX_EXACT_TWW_VERTICES: usize = 16;

/// Exact twin-width together with an optimal sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinWidth {
    pub width: usize,
    pub witness: PartitionSequence,
}

type Mask = u32;

struct Search {
    black: Vec<Mask>,
    red: Vec<Mask>,
    meter: Meter,
    dead: HashSet<Vec<Mask>>,
}

impl Search {
    fn new(g: &Trigraph, budget: Option<u64>) -> Result<Self, OracleError> {
        let n = g.n();
        if n > MAX_EXACT_TWW_VERTICES {
            return Err(OracleError::TooLarge { n, max: MAX_EXACT_TWW_VERTICES });
        }
        let to_mask = |set: &std::collections::BTreeSet<VertexId>| set.iter().fold(0, |m, &v| m | (1 << v));
        Ok(Search {
            black: (0..n).map(|v| to_mask(g.black_neighbors(v))).collect(),
            red: (0..n).map(|v| to_mask(g.red_neighbors(v))).collect(),
            meter: Meter::new(budget),
            dead: HashSet::new(),
        })
    }

    /// Maximum red degree of the quotient by `parts`.
    fn width(&self, parts: &[Mask]) -> usize {
        // Per part: union and intersection of black neighbourhoods, union of
        // red neighbourhoods.
        let summaries: Vec<(Mask, Mask, Mask)> = parts
            .iter()
            .map(|&p| {
                let mut union = 0;
                let mut inter = Mask::MAX;
                let mut red = 0;
                for v in bits(p) {
                    union |= self.black[v];
                    inter &= self.black[v];
                    red |= self.red[v];
                }
                (union, inter, red)
            })
            .collect();
        let mut degree = vec![0usize; parts.len()];
        for i in 0..parts.len() {
            let (union, inter, red) = summaries[i];
            for j in (i + 1)..parts.len() {
                let q = parts[j];
                let is_red = red & q != 0 || (union & q != 0 && inter & q != q);
                if is_red {
                    degree[i] += 1;
                    degree[j] += 1;
                }
            }
        }
        degree.into_iter().max().unwrap_or(0)
    }

    /// DFS for a `d`-sequence from `parts`; merges are pushed onto `path` as
    /// representative pairs. `None` when the budget runs out.
    fn dfs(&mut self, parts: &[Mask], d: usize, path: &mut Vec<(VertexId, VertexId)>) -> Option<bool> {
        if parts.len() <= 1 {
            return Some(true);
        }
        if self.dead.contains(parts) {
            return Some(false);
        }
        if !self.meter.tick() {
            return None;
        }
        for i in 0..parts.len() {
            for j in (i + 1)..parts.len() {
                let next = merged(parts, i, j);
                if self.width(&next) > d {
                    continue;
                }
                path.push((least(parts[i]), least(parts[j])));
                match self.dfs(&next, d, path)? {
                    true => return Some(true),
                    false => {
                        path.pop();
                    }
                }
            }
        }
        self.dead.insert(parts.to_vec());
        Some(false)
    }

    /// Repeatedly takes the merge giving the smallest resulting width.
    fn greedy(&self, n: usize) -> (usize, Vec<(VertexId, VertexId)>) {
        let mut parts: Vec<Mask> = (0..n).map(|v| 1 << v).collect();
        let mut width = self.width(&parts);
        let mut path = Vec::new();
        while parts.len() > 1 {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in 0..parts.len() {
                for j in (i + 1)..parts.len() {
                    let w = self.width(&merged(&parts, i, j));
                    if best.is_none_or(|(bw, _, _)| w < bw) {
                        best = Some((w, i, j));
                    }
                }
            }
            let (w, i, j) = best.expect("at least two parts");
            path.push((least(parts[i]), least(parts[j])));
            parts = merged(&parts, i, j);
            width = width.max(w);
        }
        (width, path)
    }
}

fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

fn least(m: Mask) -> VertexId {
    m.trailing_zeros() as VertexId
}

/// Parts `i < j` of a canonical list merged; the result stays canonical
/// because the merged part keeps the least vertex of part `i`.
fn merged(parts: &[Mask], i: usize, j: usize) -> Vec<Mask> {
    let mut next = parts.to_vec();
    next[i] |= next[j];
    next.remove(j);
    next
}

fn to_sequence(n: usize, path: &[(VertexId, VertexId)]) -> PartitionSequence {
    PartitionSequence::from_vertex_merges(n, path).expect("search merges distinct live parts")
}

/// Searches for a `d`-sequence of `g` (at most [`MAX_EXACT_TWW_VERTICES`]
/// vertices). Merges are explored in lexicographic order of representative
/// pairs, so the returned sequence is the first one in that order.
pub fn find_d_sequence(g: &Trigraph, d: usize, budget: Option<u64>) -> Result<Option<PartitionSequence>, OracleError> {
    let mut search = Search::new(g, budget)?;
    let start: Vec<Mask> = (0..g.n()).map(|v| 1 << v).collect();
    if search.width(&start) > d {
        return Ok(None);
    }
    let mut path = Vec::new();
    match search.dfs(&start, d, &mut path) {
        Some(true) => Ok(Some(to_sequence(g.n(), &path))),
        Some(false) => Ok(None),
        None => {
            let (upper, _) = search.greedy(g.n());
            Err(OracleError::BudgetExceeded { nodes: search.meter.nodes, lower: d, upper })
        }
    }
}

/// Exact twin-width with an optimal witness sequence.
///
/// Bounds run from the maximum red degree of `g` up to the width of a greedy
/// sequence; the first bound admitting a sequence is the answer.
pub fn exact_twinwidth(g: &Trigraph, budget: Option<u64>) -> Result<TwinWidth, OracleError> {
    let n = g.n();
    let mut search = Search::new(g, budget)?;
    let start: Vec<Mask> = (0..n).map(|v| 1 << v).collect();
    let lower = search.width(&start);
    let (upper, greedy_path) = search.greedy(n);
    for d in lower..upper {
        search.dead.clear();
        let mut path = Vec::new();
        match search.dfs(&start, d, &mut path) {
            Some(true) => return Ok(TwinWidth { width: d, witness: to_sequence(n, &path) }),
            Some(false) => {}
            None => {
                return Err(OracleError::BudgetExceeded { nodes: search.meter.nodes, lower: d, upper });
            }
        }
    }
    Ok(TwinWidth { width: upper, witness: to_sequence(n, &greedy_path) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::verify_d_sequence;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Trigraph {
        Trigraph::new(n, edges, &[]).unwrap()
    }

    #[test]
    fn cographs_have_twin_width_zero() {
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let k22 = graph(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        for g in [k4, k22] {
            let tw = exact_twinwidth(&g, None).unwrap();
            assert_eq!(tw.width, 0);
            assert!(verify_d_sequence(&g, &tw.witness, 0).unwrap().within_bound);
        }
    }

    #[test]
    fn p4_has_twin_width_one() {
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let tw = exact_twinwidth(&p4, None).unwrap();
        assert_eq!(tw.width, 1);
        assert!(verify_d_sequence(&p4, &tw.witness, 1).unwrap().within_bound);
        assert_eq!(find_d_sequence(&p4, 0, None), Ok(None));
    }

    #[test]
    fn tiny_graphs_are_width_zero() {
        for mask in 0..8u32 {
            let pairs = [(0, 1), (0, 2), (1, 2)];
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            assert_eq!(exact_twinwidth(&graph(3, &edges), None).unwrap().width, 0);
        }
        assert_eq!(exact_twinwidth(&Trigraph::empty(0), None).unwrap().width, 0);
        assert_eq!(exact_twinwidth(&Trigraph::empty(1), None).unwrap().width, 0);
    }

    #[test]
    fn red_edges_count_from_the_start() {
        let star = Trigraph::new(4, &[], &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(find_d_sequence(&star, 2, None), Ok(None));
        assert_eq!(exact_twinwidth(&star, None).unwrap().width, 3);
    }

    #[test]
    fn c5_and_limits() {
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(exact_twinwidth(&c5, None).unwrap().width, 2);
        assert!(matches!(
            exact_twinwidth(&Trigraph::empty(17), None),
            Err(OracleError::TooLarge { n: 17, .. })
        ));
    }
}
