//! Independence-blocking sets.
//!
//! A set `Y` of vertices blocks a graph `H` when removing it lowers the
//! independence number: `alpha(H - Y) < alpha(H)`. Supersets of blocking
//! sets are blocking, which makes minimality checkable one vertex at a time
//! and bounds how small the minimal ones can be forced to stay in the
//! structured classes: `d + 2` when `d` deletions reach a forest or a
//! bipartite graph, `2d + 2` when the vertex cover number is within `d` of
//! its LP relaxation.

use crate::graph::{Graph, Vertex, VertexSet};
use crate::solvers::{mask_graph, SolveError};
use serde::Serialize;

/// Result of enumerating all minimal blocking sets of one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockingSetReport {
    pub host: Graph,
    /// All minimal blocking sets, ordered by size then lexicographically.
    pub minimal_sets: Vec<VertexSet>,
    /// Largest minimal set size, 0 when no blocking set exists.
    pub max_minimal_size: usize,
    /// The class bound the sizes are compared against.
    pub class_bound: u32,
    pub bound_respected: bool,
}

/// Independence numbers of every induced subgraph, indexed by vertex subset
/// mask. `table[mask]` treats the lowest vertex of the mask as either
/// excluded or included with its closed neighborhood removed.
fn alpha_table(open: &[u64]) -> Vec<u8> {
    let n = open.len();
    let mut table = vec![0u8; 1usize << n];
    for mask in 1..(1u64 << n) {
        let v = mask.trailing_zeros() as usize;
        let without = table[(mask & !(1u64 << v)) as usize];
        let with = 1 + table[(mask & !(open[v] | (1u64 << v))) as usize];
        table[mask as usize] = without.max(with);
    }
    table
}

fn alpha_of(g: &Graph, cap: usize) -> Result<usize, SolveError> {
    crate::solvers::alpha_bruteforce(g, cap)
}

fn check_subset(h: &Graph, y: &VertexSet) -> Result<(), SolveError> {
    for v in y.iter() {
        if !h.contains_vertex(v) {
            return Err(crate::graph::GraphError::UnknownVertex(v).into());
        }
    }
    Ok(())
}

/// True iff removing `y` lowers the independence number of `h`.
pub fn is_blocking_set(h: &Graph, y: &VertexSet, cap: usize) -> Result<bool, SolveError> {
    check_subset(h, y)?;
    let alpha = alpha_of(h, cap)?;
    let rest = alpha_of(&h.remove_vertices(y)?, cap)?;
    Ok(rest < alpha)
}

/// True iff `y` blocks `h` and no set obtained by dropping one vertex does.
///
/// Dropping one vertex at a time suffices: a blocking proper subset would
/// make the one-smaller set above it blocking as well, since supersets of
/// blocking sets are blocking.
pub fn is_minimal_blocking_set(h: &Graph, y: &VertexSet, cap: usize) -> Result<bool, SolveError> {
    if !is_blocking_set(h, y, cap)? {
        return Ok(false);
    }
    for v in y.iter() {
        let mut smaller = y.clone();
        smaller.remove(v);
        if is_blocking_set(h, &smaller, cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Minimality by checking every nonempty proper subset. Reference
/// implementation for [`is_minimal_blocking_set`].
pub fn is_minimal_blocking_set_exhaustive(h: &Graph, y: &VertexSet, cap: usize) -> Result<bool, SolveError> {
    if !is_blocking_set(h, y, cap)? {
        return Ok(false);
    }
    let members: Vec<Vertex> = y.iter().collect();
    for mask in 1..((1u64 << members.len()) - 1) {
        let subset: VertexSet = (0..members.len())
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| members[i])
            .collect();
        if is_blocking_set(h, &subset, cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All minimal blocking sets of `h`, via one dynamic program over all
/// induced subgraphs. Every subset size is inspected, so a violation of the
/// class bound cannot hide behind smaller non-blocking sets.
pub fn enumerate_minimal_blocking_sets(
    h: &Graph,
    class_bound: u32,
    cap: usize,
) -> Result<BlockingSetReport, SolveError> {
    let mg = mask_graph(h, cap)?;
    let n = mg.labels.len();
    let table = alpha_table(&mg.open);
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let alpha_full = table[full as usize];
    let mut minimal_sets: Vec<VertexSet> = Vec::new();
    for y_mask in 1..=full {
        if full == 0 {
            break;
        }
        let rest = full & !y_mask;
        if table[rest as usize] >= alpha_full {
            continue;
        }
        let mut minimal = true;
        let mut bits = y_mask;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            if table[(rest | (1u64 << v)) as usize] < alpha_full {
                minimal = false;
                break;
            }
        }
        if minimal {
            let set: VertexSet = (0..n).filter(|&i| y_mask & (1 << i) != 0).map(|i| mg.labels[i]).collect();
            minimal_sets.push(set);
        }
    }
    minimal_sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let max_minimal_size = minimal_sets.iter().map(VertexSet::len).max().unwrap_or(0);
    Ok(BlockingSetReport {
        host: h.clone(),
        bound_respected: max_minimal_size <= class_bound as usize,
        minimal_sets,
        max_minimal_size,
        class_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: usize = 26;

    #[test]
    fn path_endpoints_block_alone() {
        let p3 = Graph::path(3);
        assert!(is_blocking_set(&p3, &VertexSet::from([0]), CAP).unwrap());
        assert!(!is_blocking_set(&p3, &VertexSet::from([1]), CAP).unwrap());
        let report = enumerate_minimal_blocking_sets(&p3, 2, CAP).unwrap();
        assert_eq!(report.minimal_sets, vec![VertexSet::from([0]), VertexSet::from([2])]);
        assert_eq!(report.max_minimal_size, 1);
        assert!(report.bound_respected);
    }

    #[test]
    fn single_edge_blocks_only_as_a_whole() {
        let k2 = Graph::complete(2);
        let report = enumerate_minimal_blocking_sets(&k2, 2, CAP).unwrap();
        assert_eq!(report.minimal_sets, vec![VertexSet::from([0, 1])]);
        assert_eq!(report.max_minimal_size, 2);
    }

    #[test]
    fn triangle_blocks_only_as_a_whole() {
        let k3 = Graph::complete(3);
        let report = enumerate_minimal_blocking_sets(&k3, 3, CAP).unwrap();
        assert_eq!(report.minimal_sets, vec![VertexSet::from([0, 1, 2])]);
        assert!(report.bound_respected);
        assert!(is_minimal_blocking_set(&k3, &VertexSet::from([0, 1, 2]), CAP).unwrap());
        assert!(!is_minimal_blocking_set(&k3, &VertexSet::from([0, 1]), CAP).unwrap());
    }

    #[test]
    fn clique_violates_a_too_small_bound() {
        let k4 = Graph::complete(4);
        let report = enumerate_minimal_blocking_sets(&k4, 3, CAP).unwrap();
        assert_eq!(report.minimal_sets, vec![VertexSet::from([0, 1, 2, 3])]);
        assert!(!report.bound_respected);
        assert!(enumerate_minimal_blocking_sets(&k4, 4, CAP).unwrap().bound_respected);
    }

    #[test]
    fn odd_cycle_blocking_triples() {
        let c5 = Graph::cycle(5);
        let report = enumerate_minimal_blocking_sets(&c5, 3, CAP).unwrap();
        assert_eq!(report.minimal_sets.len(), 5);
        assert!(report.minimal_sets.iter().all(|s| s.len() == 3));
        assert!(report.minimal_sets.contains(&VertexSet::from([0, 1, 2])));
        assert!(!report.minimal_sets.contains(&VertexSet::from([0, 1, 3])));
    }

    #[test]
    fn removing_isolated_vertices_blocks() {
        let g = Graph::from_edges(2, &[]).unwrap();
        assert!(is_blocking_set(&g, &VertexSet::from([0]), CAP).unwrap());
        let report = enumerate_minimal_blocking_sets(&g, 2, CAP).unwrap();
        assert_eq!(report.minimal_sets, vec![VertexSet::from([0]), VertexSet::from([1])]);
    }

    #[test]
    fn shortcut_and_exhaustive_minimality_agree_on_examples() {
        let graphs = [Graph::complete(4), Graph::cycle(5), Graph::path(4)];
        for g in &graphs {
            let vs: Vec<Vertex> = g.vertices().collect();
            for mask in 1u64..(1 << vs.len()) {
                let y: VertexSet = (0..vs.len()).filter(|&i| mask & (1 << i) != 0).map(|i| vs[i]).collect();
                assert_eq!(
                    is_minimal_blocking_set(g, &y, CAP).unwrap(),
                    is_minimal_blocking_set_exhaustive(g, &y, CAP).unwrap(),
                    "disagreement on {y} in {g:?}"
                );
            }
        }
    }

    #[test]
    fn unknown_vertices_are_rejected() {
        let p3 = Graph::path(3);
        assert!(is_blocking_set(&p3, &VertexSet::from([7]), CAP).is_err());
    }

    #[test]
    fn empty_graph_has_no_blocking_sets() {
        let report = enumerate_minimal_blocking_sets(&Graph::empty(), 2, CAP).unwrap();
        assert!(report.minimal_sets.is_empty());
        assert_eq!(report.max_minimal_size, 0);
        assert!(report.bound_respected);
    }
}
