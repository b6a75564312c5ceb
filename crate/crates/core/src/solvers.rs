//! Exact independent set solvers.
//!
//! [`mis_bruteforce`] is the reference oracle: it enumerates by branching and
//! is independent of every structured solver, so the structured paths can be
//! checked against it. The structured solvers exploit a small deletion set
//! whose removal leaves a forest or a bipartite graph, or fall back to brute
//! force for graphs that are only promised to have a small integrality gap.

use crate::graph::{Graph, GraphError, Vertex, VertexSet};
use crate::instance::ClassTag;
use crate::lp::{lp_vc_opt, Half};
use crate::matching::maximum_matching;
use itertools::Itertools;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Default vertex limit for the exponential-time routines.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph has {vertices} vertices, above the brute-force cap {cap}")]
    CapExceeded { vertices: usize, cap: usize },
    #[error("graph contains a cycle")]
    ContainsCycle,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("deletion set is not a valid {kind} for the graph")]
    InvalidDeletionSet { kind: DeletionKind },
    #[error("graph is not {class} for d = {d}")]
    NotInClass { class: ClassTag, d: u32 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DeletionKind {
    #[serde(rename = "feedback-vertex-set")]
    FeedbackVertexSet,
    #[serde(rename = "odd-cycle-transversal")]
    OddCycleTransversal,
}

impl fmt::Display for DeletionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeletionKind::FeedbackVertexSet => write!(f, "feedback vertex set"),
            DeletionKind::OddCycleTransversal => write!(f, "odd cycle transversal"),
        }
    }
}

/// A set whose removal leaves a structured remainder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeletionSet {
    pub kind: DeletionKind,
    pub vertices: VertexSet,
    /// Index of the component this set was computed for, when it came from a
    /// per-component decomposition.
    pub host: usize,
}

impl DeletionSet {
    pub fn fvs(vertices: VertexSet) -> Self {
        DeletionSet {
            kind: DeletionKind::FeedbackVertexSet,
            vertices,
            host: 0,
        }
    }

    pub fn oct(vertices: VertexSet) -> Self {
        DeletionSet {
            kind: DeletionKind::OddCycleTransversal,
            vertices,
            host: 0,
        }
    }

    pub fn for_host(mut self, host: usize) -> Self {
        self.host = host;
        self
    }
}

/// Membership check result: a deletion-set witness for the structural
/// classes, the exact `(vc, lp)` pair for the LP-tight class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ClassWitness {
    Forest { fvs: VertexSet },
    Bipartite { oct: VertexSet },
    LpTight { vc: usize, lp: Half },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCheck {
    pub member: bool,
    /// Present for members of the structural classes and always for the
    /// LP-tight class, where it carries the compared quantities.
    pub witness: Option<ClassWitness>,
}

/// Graph in index space with one neighbor bitmask per vertex.
pub(crate) struct MaskGraph {
    pub(crate) labels: Vec<Vertex>,
    pub(crate) open: Vec<u64>,
}

pub(crate) fn mask_graph(g: &Graph, cap: usize) -> Result<MaskGraph, SolveError> {
    let n = g.vertex_count();
    if n > cap.min(63) {
        return Err(SolveError::CapExceeded {
            vertices: n,
            cap: cap.min(63),
        });
    }
    let labels: Vec<Vertex> = g.vertices().collect();
    let index: BTreeMap<Vertex, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut open = vec![0u64; n];
    for (u, v) in g.edges() {
        open[index[&u]] |= 1 << index[&v];
        open[index[&v]] |= 1 << index[&u];
    }
    Ok(MaskGraph { labels, open })
}

fn alpha_mask(open: &[u64], mask: u64) -> u32 {
    if mask == 0 {
        return 0;
    }
    let mut best_v = usize::MAX;
    let mut best_deg = 0u32;
    let mut deg_sum = 0u32;
    let mut bits = mask;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let deg = (open[v] & mask).count_ones();
        deg_sum += deg;
        if best_v == usize::MAX || deg > best_deg {
            best_v = v;
            best_deg = deg;
        }
    }
    if best_deg <= 1 {
        // Only isolated vertices and disjoint edges remain.
        return mask.count_ones() - deg_sum / 2;
    }
    let with_v = 1 + alpha_mask(open, mask & !(open[best_v] | (1 << best_v)));
    let without_v = alpha_mask(open, mask & !(1 << best_v));
    with_v.max(without_v)
}

fn collect_mis(open: &[u64], mask: u64, target: u32, chosen: u64, picked: u32, out: &mut Vec<u64>) {
    if picked == target {
        out.push(chosen);
        return;
    }
    if mask == 0 || picked + mask.count_ones() < target {
        return;
    }
    let v = mask.trailing_zeros() as usize;
    collect_mis(
        open,
        mask & !(open[v] | (1u64 << v)),
        target,
        chosen | (1u64 << v),
        picked + 1,
        out,
    );
    collect_mis(open, mask & !(1u64 << v), target, chosen, picked, out);
}

fn masks_to_sets(labels: &[Vertex], masks: &[u64]) -> Vec<VertexSet> {
    masks
        .iter()
        .map(|&m| {
            (0..labels.len())
                .filter(|&i| m & (1 << i) != 0)
                .map(|i| labels[i])
                .collect()
        })
        .collect()
}

/// Independence number and the list of all maximum independent sets, in
/// ascending lexicographic order.
pub fn mis_bruteforce(g: &Graph, cap: usize) -> Result<(usize, Vec<VertexSet>), SolveError> {
    let mg = mask_graph(g, cap)?;
    let full = if mg.labels.is_empty() { 0 } else { (1u64 << mg.labels.len()) - 1 };
    let alpha = alpha_mask(&mg.open, full);
    let mut masks = Vec::new();
    collect_mis(&mg.open, full, alpha, 0, 0, &mut masks);
    let mut sets = masks_to_sets(&mg.labels, &masks);
    sets.sort();
    Ok((alpha as usize, sets))
}

/// Independence number only, by branching.
pub fn alpha_bruteforce(g: &Graph, cap: usize) -> Result<usize, SolveError> {
    let mg = mask_graph(g, cap)?;
    let full = if mg.labels.is_empty() { 0 } else { (1u64 << mg.labels.len()) - 1 };
    Ok(alpha_mask(&mg.open, full) as usize)
}

/// Vertex cover number, `|V| - alpha`.
pub fn vc_bruteforce(g: &Graph, cap: usize) -> Result<usize, SolveError> {
    Ok(g.vertex_count() - alpha_bruteforce(g, cap)?)
}

/// Independence number of a forest by two-state tree dynamic programming.
pub fn mis_forest(g: &Graph) -> Result<usize, SolveError> {
    if !g.is_acyclic() {
        return Err(SolveError::ContainsCycle);
    }
    let mut total = 0;
    for comp in g.connected_components() {
        let root = comp.vertex_set().first().expect("components are nonempty");
        let mut order = vec![root];
        let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for w in comp.neighbors(v).expect("component vertex") {
                if w != root && !parent.contains_key(&w) {
                    parent.insert(w, v);
                    order.push(w);
                }
            }
        }
        let mut taken: BTreeMap<Vertex, usize> = BTreeMap::new();
        let mut skipped: BTreeMap<Vertex, usize> = BTreeMap::new();
        for &v in order.iter().rev() {
            let children: Vec<Vertex> = comp
                .neighbors(v)
                .expect("component vertex")
                .filter(|w| parent.get(w) == Some(&v))
                .collect();
            let t = 1 + children.iter().map(|c| skipped[c]).sum::<usize>();
            let s = children.iter().map(|c| taken[c].max(skipped[c])).sum::<usize>();
            taken.insert(v, t);
            skipped.insert(v, s);
        }
        total += taken[&root].max(skipped[&root]);
    }
    Ok(total)
}

/// Independence number of a bipartite graph: `|V|` minus the maximum
/// matching size.
pub fn mis_bipartite(g: &Graph) -> Result<usize, SolveError> {
    let (even, odd) = g.bipartition().ok_or(SolveError::NotBipartite)?;
    let left: Vec<Vertex> = even.iter().collect();
    let right_index: BTreeMap<Vertex, usize> = odd.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .expect("bipartition vertices are graph vertices")
                .map(|w| right_index[&w])
                .collect()
        })
        .collect();
    let matching = maximum_matching(&adj, right_index.len());
    Ok(g.vertex_count() - matching.size)
}

/// Maximum matching size of an arbitrary graph, by branching on the lowest
/// non-isolated vertex.
pub fn maximum_matching_size(g: &Graph, cap: usize) -> Result<usize, SolveError> {
    let mg = mask_graph(g, cap)?;
    fn rec(open: &[u64], mut mask: u64) -> u32 {
        let mut v = usize::MAX;
        let mut bits = mask;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if open[u] & mask != 0 {
                v = u;
                break;
            }
            mask &= !(1u64 << u);
        }
        if v == usize::MAX {
            return 0;
        }
        let mut best = rec(open, mask & !(1u64 << v));
        let mut nbrs = open[v] & mask;
        while nbrs != 0 {
            let w = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            best = best.max(1 + rec(open, mask & !(1u64 << v) & !(1u64 << w)));
        }
        best
    }
    let full = if mg.labels.is_empty() { 0 } else { (1u64 << mg.labels.len()) - 1 };
    Ok(rec(&mg.open, full) as usize)
}

/// One cycle of the graph as a sorted vertex set, or `None` if acyclic.
/// Found by BFS, so the cycle is short: a cross edge closing it is met as
/// early as possible from the chosen root.
fn find_cycle(g: &Graph) -> Option<VertexSet> {
    let mut dist: BTreeMap<Vertex, u32> = BTreeMap::new();
    let mut parent: BTreeMap<Vertex, Option<Vertex>> = BTreeMap::new();
    for start in g.vertices() {
        if dist.contains_key(&start) {
            continue;
        }
        dist.insert(start, 0);
        parent.insert(start, None);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v).expect("bfs stays in the graph") {
                if parent[&v] == Some(w) {
                    continue;
                }
                if dist.contains_key(&w) {
                    // Non-tree edge: join the two root paths at their first
                    // common ancestor.
                    let chain = |mut x: Vertex| {
                        let mut path = vec![x];
                        while let Some(p) = parent[&x] {
                            path.push(p);
                            x = p;
                        }
                        path
                    };
                    let pv = chain(v);
                    let pw = chain(w);
                    let lca = *pv
                        .iter()
                        .find(|a| pw.contains(a))
                        .expect("root paths share the root");
                    let mut cycle = VertexSet::new();
                    for &x in pv.iter().take_while(|&&x| x != lca) {
                        cycle.insert(x);
                    }
                    for &x in pw.iter().take_while(|&&x| x != lca) {
                        cycle.insert(x);
                    }
                    cycle.insert(lca);
                    return Some(cycle);
                }
                dist.insert(w, dist[&v] + 1);
                parent.insert(w, Some(v));
                queue.push_back(w);
            }
        }
    }
    None
}

fn fvs_search(g: &Graph, budget: u32, chosen: &mut VertexSet, best: &mut Option<VertexSet>) {
    match find_cycle(g) {
        None => {
            let better = match best {
                None => true,
                Some(b) => chosen.len() < b.len() || (chosen.len() == b.len() && *chosen < *b),
            };
            if better {
                *best = Some(chosen.clone());
            }
        }
        Some(cycle) => {
            if budget == 0 {
                return;
            }
            if let Some(b) = best {
                if chosen.len() >= b.len() {
                    return;
                }
            }
            for v in cycle.iter() {
                chosen.insert(v);
                let sub = g
                    .remove_vertices(&VertexSet::singleton(v))
                    .expect("cycle vertices are graph vertices");
                fvs_search(&sub, budget - 1, chosen, best);
                chosen.remove(v);
            }
        }
    }
}

/// Minimum feedback vertex set of size at most `d`, or `None`.
///
/// Branches on the vertices of a cycle; every feedback vertex set must meet
/// every cycle, so every minimum one appears as a leaf of the search tree.
/// Among the minimum sets the lexicographically smallest is returned.
pub fn find_fvs(h: &Graph, d: u32) -> Option<VertexSet> {
    let mut best = None;
    let mut chosen = VertexSet::new();
    fvs_search(h, d, &mut chosen, &mut best);
    best
}

/// Minimum odd cycle transversal of size at most `d`, or `None`. Ascending
/// subset enumeration, so the result is the lexicographically smallest
/// minimum transversal.
pub fn find_oct(h: &Graph, d: u32) -> Option<VertexSet> {
    if h.is_bipartite() {
        return Some(VertexSet::new());
    }
    let labels: Vec<Vertex> = h.vertices().collect();
    for size in 1..=(d as usize).min(labels.len()) {
        for combo in labels.iter().copied().combinations(size) {
            let set: VertexSet = combo.into_iter().collect();
            let rest = h.remove_vertices(&set).expect("labels come from the graph");
            if rest.is_bipartite() {
                return Some(set);
            }
        }
    }
    None
}

/// Independence number of a graph that a feedback vertex set `z` turns into
/// a forest: enumerate the independent subsets `s` of `z`, solve the forest
/// `h - N[s] - z` by tree DP, take the best `|s|` plus forest answer.
pub fn mis_quasi_forest(h: &Graph, z: &DeletionSet) -> Result<usize, SolveError> {
    if z.kind != DeletionKind::FeedbackVertexSet {
        return Err(SolveError::InvalidDeletionSet { kind: z.kind });
    }
    structured_mis(h, z, |rest| {
        if rest.is_acyclic() {
            Some(mis_forest(rest))
        } else {
            None
        }
    })
}

/// Independence number of a graph that an odd cycle transversal `z` turns
/// bipartite, by the same enumeration with the matching-based solver.
pub fn mis_quasi_bipartite(h: &Graph, z: &DeletionSet) -> Result<usize, SolveError> {
    if z.kind != DeletionKind::OddCycleTransversal {
        return Err(SolveError::InvalidDeletionSet { kind: z.kind });
    }
    structured_mis(h, z, |rest| {
        if rest.is_bipartite() {
            Some(mis_bipartite(rest))
        } else {
            None
        }
    })
}

fn structured_mis(
    h: &Graph,
    z: &DeletionSet,
    solve_rest: impl Fn(&Graph) -> Option<Result<usize, SolveError>>,
) -> Result<usize, SolveError> {
    let base = h
        .remove_vertices(&z.vertices)
        .map_err(|_| SolveError::InvalidDeletionSet { kind: z.kind })?;
    if solve_rest(&base).is_none() {
        return Err(SolveError::InvalidDeletionSet { kind: z.kind });
    }
    let zs: Vec<Vertex> = z.vertices.iter().collect();
    if zs.len() > DEFAULT_BRUTE_FORCE_CAP {
        return Err(SolveError::CapExceeded {
            vertices: zs.len(),
            cap: DEFAULT_BRUTE_FORCE_CAP,
        });
    }
    let mut best = 0;
    for mask in 0..(1u64 << zs.len()) {
        let s: VertexSet = (0..zs.len()).filter(|&i| mask & (1 << i) != 0).map(|i| zs[i]).collect();
        if !h.is_independent_set(&s)? {
            continue;
        }
        let removed = h.closed_neighborhood(&s)?.union(&z.vertices);
        let rest = h.remove_vertices(&removed)?;
        let a = solve_rest(&rest).expect("subgraph of the structured remainder stays structured")?;
        best = best.max(s.len() + a);
    }
    Ok(best)
}

/// Independence number of a component promised to lie in `class` for the
/// given `d`. For the structural classes a deletion set witness is computed
/// first; for the LP-tight class brute force is used and the promise is
/// checked exactly.
pub fn mis_component(h: &Graph, d: u32, class: ClassTag, cap: usize) -> Result<usize, SolveError> {
    match class {
        ClassTag::QuasiForest => {
            let z = find_fvs(h, d).ok_or(SolveError::NotInClass { class, d })?;
            mis_quasi_forest(h, &DeletionSet::fvs(z))
        }
        ClassTag::QuasiBipartite => {
            let z = find_oct(h, d).ok_or(SolveError::NotInClass { class, d })?;
            mis_quasi_bipartite(h, &DeletionSet::oct(z))
        }
        ClassTag::QuasiIntegral => {
            let alpha = alpha_bruteforce(h, cap)?;
            let vc = h.vertex_count() - alpha;
            let lp = lp_vc_opt(h).value();
            if Half::from_integer(vc as i64) > lp + Half::from_integer(d as i64) {
                return Err(SolveError::NotInClass { class, d });
            }
            Ok(alpha)
        }
    }
}

/// Decides membership of `h` in `class` for the given `d`.
pub fn recognize_class(h: &Graph, d: u32, class: ClassTag, cap: usize) -> Result<ClassCheck, SolveError> {
    match class {
        ClassTag::QuasiForest => Ok(match find_fvs(h, d) {
            Some(fvs) => ClassCheck {
                member: true,
                witness: Some(ClassWitness::Forest { fvs }),
            },
            None => ClassCheck {
                member: false,
                witness: None,
            },
        }),
        ClassTag::QuasiBipartite => Ok(match find_oct(h, d) {
            Some(oct) => ClassCheck {
                member: true,
                witness: Some(ClassWitness::Bipartite { oct }),
            },
            None => ClassCheck {
                member: false,
                witness: None,
            },
        }),
        ClassTag::QuasiIntegral => {
            let alpha = alpha_bruteforce(h, cap)?;
            let vc = h.vertex_count() - alpha;
            let lp = lp_vc_opt(h).value();
            let member = Half::from_integer(vc as i64) <= lp + Half::from_integer(d as i64);
            Ok(ClassCheck {
                member,
                witness: Some(ClassWitness::LpTight { vc, lp }),
            })
        }
    }
}
