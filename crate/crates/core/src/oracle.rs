//! Exhaustive reference implementations for the verification suites.
//!
//! Everything here enumerates the full search space with at most trivial
//! pruning and shares no code with the optimized paths it is used to check.
//! Intended for graphs of roughly a dozen vertices.

use crate::graph::{Graph, Vertex, VertexSet};
use crate::lp::{Half, HalfIntegralSolution};
use itertools::Itertools;

fn assert_small(g: &Graph, limit: usize) {
    assert!(
        g.vertex_count() <= limit,
        "oracle called on {} vertices, limit {limit}",
        g.vertex_count()
    );
}

/// Minimum of `sum x_v` over half-integral assignments with
/// `x_u + x_v >= 1` per edge, by trying all `3^n` assignments.
pub fn lp_vc_optimum_exhaustive(g: &Graph) -> Half {
    assert_small(g, 16);
    let labels: Vec<Vertex> = g.vertices().collect();
    let mut best = 2 * labels.len() as i64 + 1;
    let mut assigned: Vec<i64> = Vec::with_capacity(labels.len());
    fn rec(g: &Graph, labels: &[Vertex], assigned: &mut Vec<i64>, current: i64, best: &mut i64) {
        if current >= *best {
            return;
        }
        let idx = assigned.len();
        if idx == labels.len() {
            *best = current;
            return;
        }
        'next: for x in [0i64, 1, 2] {
            for (j, &other) in assigned.iter().enumerate() {
                if g.has_edge(labels[idx], labels[j]) && x + other < 2 {
                    continue 'next;
                }
            }
            assigned.push(x);
            rec(g, labels, assigned, current + x, best);
            assigned.pop();
        }
    }
    rec(g, &labels, &mut assigned, 0, &mut best);
    Half::from_doubled(best)
}

/// Maximum of `sum x_v` over half-integral assignments with
/// `x_u + x_v <= 1` per edge.
pub fn lp_is_optimum_exhaustive(g: &Graph) -> Half {
    assert_small(g, 16);
    let labels: Vec<Vertex> = g.vertices().collect();
    let mut best = -1i64;
    let mut assigned: Vec<i64> = Vec::with_capacity(labels.len());
    fn rec(g: &Graph, labels: &[Vertex], assigned: &mut Vec<i64>, current: i64, best: &mut i64) {
        let idx = assigned.len();
        if current + 2 * (labels.len() - idx) as i64 <= *best {
            return;
        }
        if idx == labels.len() {
            *best = current;
            return;
        }
        'next: for x in [2i64, 1, 0] {
            for (j, &other) in assigned.iter().enumerate() {
                if g.has_edge(labels[idx], labels[j]) && x + other > 2 {
                    continue 'next;
                }
            }
            assigned.push(x);
            rec(g, labels, assigned, current + x, best);
            assigned.pop();
        }
    }
    rec(g, &labels, &mut assigned, 0, &mut best);
    Half::from_doubled(best)
}

/// Independence number and all maximum independent sets by checking every
/// vertex subset.
pub fn maximum_independent_sets_exhaustive(g: &Graph) -> (usize, Vec<VertexSet>) {
    assert_small(g, 20);
    let labels: Vec<Vertex> = g.vertices().collect();
    let mut best = 0usize;
    let mut sets: Vec<VertexSet> = vec![VertexSet::new()];
    for mask in 1u64..(1u64 << labels.len()) {
        let s: VertexSet = (0..labels.len())
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| labels[i])
            .collect();
        if !g.is_independent_set(&s).expect("subset of the graph") {
            continue;
        }
        if s.len() > best {
            best = s.len();
            sets.clear();
        }
        if s.len() == best {
            sets.push(s);
        }
    }
    sets.sort();
    (best, sets)
}

pub fn alpha_exhaustive(g: &Graph) -> usize {
    maximum_independent_sets_exhaustive(g).0
}

/// First (smallest, then lexicographic) nonempty zero-level subset whose
/// one-level neighborhood is no larger than itself, by trying all subsets.
pub fn surplus_violator_exhaustive(g: &Graph, sol: &HalfIntegralSolution) -> Option<VertexSet> {
    let zeros: Vec<Vertex> = sol.zeros().iter().collect();
    assert!(zeros.len() <= 20, "oracle is for small zero levels");
    let ones = sol.ones();
    for size in 1..=zeros.len() {
        for combo in zeros.iter().copied().combinations(size) {
            let s: VertexSet = combo.into_iter().collect();
            let nbrs = g
                .neighborhood(&s)
                .expect("solution vertices are graph vertices")
                .intersection(&ones);
            if nbrs.len() <= s.len() {
                return Some(s);
            }
        }
    }
    None
}
