//! Bipartite matching primitives used by the LP solver.
//!
//! Works on index-based bipartite graphs: `adj[u]` lists the right-side
//! indices adjacent to left index `u`. Augmentation always scans left
//! vertices and their adjacency lists in ascending order, so results are
//! deterministic for a fixed input.

/// Maximum matching as mutual pairing arrays.
#[derive(Debug, Clone)]
pub(crate) struct Matching {
    /// `pair_left[u]` is the right partner of left `u`.
    pub pair_left: Vec<Option<usize>>,
    /// `pair_right[w]` is the left partner of right `w`.
    pub pair_right: Vec<Option<usize>>,
    pub size: usize,
}

fn try_augment(
    u: usize,
    adj: &[Vec<usize>],
    pair_left: &mut [Option<usize>],
    pair_right: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    for &w in &adj[u] {
        if visited[w] {
            continue;
        }
        visited[w] = true;
        let free = match pair_right[w] {
            None => true,
            Some(u2) => try_augment(u2, adj, pair_left, pair_right, visited),
        };
        if free {
            pair_left[u] = Some(w);
            pair_right[w] = Some(u);
            return true;
        }
    }
    false
}

/// Kuhn's augmenting-path algorithm.
pub(crate) fn maximum_matching(adj: &[Vec<usize>], right_count: usize) -> Matching {
    let mut pair_left = vec![None; adj.len()];
    let mut pair_right = vec![None; right_count];
    let mut size = 0;
    for u in 0..adj.len() {
        let mut visited = vec![false; right_count];
        if try_augment(u, adj, &mut pair_left, &mut pair_right, &mut visited) {
            size += 1;
        }
    }
    Matching {
        pair_left,
        pair_right,
        size,
    }
}

/// Right-side vertices reachable from `starts` by paths alternating
/// non-matching / matching edges, starting with a non-matching edge.
fn alternating_reach(adj: &[Vec<usize>], matching: &Matching, starts: &[usize]) -> Vec<bool> {
    let mut right_reached = vec![false; matching.pair_right.len()];
    let mut left_queued = vec![false; adj.len()];
    let mut queue: Vec<usize> = Vec::new();
    for &u in starts {
        if !left_queued[u] {
            left_queued[u] = true;
            queue.push(u);
        }
    }
    while let Some(u) = queue.pop() {
        for &w in &adj[u] {
            if right_reached[w] {
                continue;
            }
            right_reached[w] = true;
            if let Some(u2) = matching.pair_right[w] {
                if !left_queued[u2] {
                    left_queued[u2] = true;
                    queue.push(u2);
                }
            }
        }
    }
    right_reached
}

/// Minimum vertex cover from a maximum matching: unreached left vertices plus
/// reached right vertices, where reachability alternates from the unmatched
/// left vertices.
pub(crate) fn koenig_cover(adj: &[Vec<usize>], matching: &Matching) -> (Vec<bool>, Vec<bool>) {
    let free_left: Vec<usize> = (0..adj.len()).filter(|&u| matching.pair_left[u].is_none()).collect();
    let right_reached = alternating_reach(adj, matching, &free_left);
    let mut left_reached = vec![false; adj.len()];
    for u in &free_left {
        left_reached[*u] = true;
    }
    for w in 0..right_reached.len() {
        if right_reached[w] {
            if let Some(u) = matching.pair_right[w] {
                left_reached[u] = true;
            }
        }
    }
    let cover_left: Vec<bool> = left_reached.iter().map(|&r| !r).collect();
    (cover_left, right_reached)
}

/// A left set `S` with `|N(S)| <= |S|`, or `None` if every nonempty left set
/// has strictly more right neighbors than members.
///
/// If some left vertex is unmatched, the alternating-reachable set around it
/// has `|N(S)| = |S| - 1`. Otherwise each left vertex `u` is probed with a
/// virtual duplicate: if no augmenting path serves the duplicate, the rights
/// reachable from it are matched to a left set `S` containing `u` with
/// `N(S)` exactly that reached set, so `|N(S)| = |S|`. If every duplicate
/// augments, Hall's condition holds with slack everywhere and no such set
/// exists.
pub(crate) fn deficient_left_set(adj: &[Vec<usize>], right_count: usize) -> Option<Vec<usize>> {
    let matching = maximum_matching(adj, right_count);
    if let Some(u) = (0..adj.len()).find(|&u| matching.pair_left[u].is_none()) {
        let right_reached = alternating_reach(adj, &matching, &[u]);
        let mut set = vec![u];
        for w in 0..right_count {
            if right_reached[w] {
                let u2 = matching.pair_right[w].expect("reached rights are matched when augmenting fails");
                if u2 != u {
                    set.push(u2);
                }
            }
        }
        set.sort_unstable();
        return Some(set);
    }
    for u in 0..adj.len() {
        let mut pair_right = matching.pair_right.clone();
        let mut visited = vec![false; right_count];
        // Augment from a virtual copy of u: u itself keeps its matched edge.
        let mut probe_left = matching.pair_left.clone();
        probe_left.push(None);
        let mut probe_adj: Vec<Vec<usize>> = Vec::with_capacity(adj.len() + 1);
        probe_adj.extend(adj.iter().cloned());
        probe_adj.push(adj[u].clone());
        if try_augment(adj.len(), &probe_adj, &mut probe_left, &mut pair_right, &mut visited) {
            continue;
        }
        let mut set: Vec<usize> = visited
            .iter()
            .enumerate()
            .filter(|(_, &r)| r)
            .map(|(w, _)| matching.pair_right[w].expect("reached rights are matched"))
            .collect();
        if !set.contains(&u) {
            set.push(u);
        }
        set.sort_unstable();
        return Some(set);
    }
    None
}
