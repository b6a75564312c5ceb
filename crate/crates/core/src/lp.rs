//! Half-integral LP relaxations of vertex cover and independent set.
//!
//! Every optimum of either relaxation is attained by a solution with values
//! in {0, 1/2, 1}. Values are stored exactly as doubled integers ([`Half`]);
//! no floating point enters any computation here.
//!
//! The central construction is [`extremal_lp_is`]: an optimum half-integral
//! independent set solution whose half-level is inclusion-maximal. Such a
//! solution pins down every maximum independent set `I` between its level
//! sets (`ones ⊆ I ⊆ V \ zeros`) and gives the zero-level a strict surplus:
//! every nonempty `S ⊆ zeros` has more than `|S|` neighbors in the one-level.

use crate::graph::{Graph, Vertex, VertexSet};
use crate::matching::{deficient_left_set, koenig_cover, maximum_matching};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Sub};
use thiserror::Error;

/// Exact rational with denominator 1 or 2, stored as a doubled integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default, Hash)]
pub struct Half(i64);

impl Half {
    pub const ZERO: Half = Half(0);

    pub fn from_integer(n: i64) -> Half {
        Half(2 * n)
    }

    /// Builds the rational `d / 2`.
    pub fn from_doubled(d: i64) -> Half {
        Half(d)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl AddAssign for Half {
    fn add_assign(&mut self, rhs: Half) {
        self.0 += rhs.0;
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl Sum for Half {
    fn sum<I: Iterator<Item = Half>>(iter: I) -> Half {
        iter.fold(Half::ZERO, Add::add)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for Half {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Per-vertex value of a half-integral solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum HalfValue {
    Zero,
    Half,
    One,
}

impl HalfValue {
    pub fn doubled(self) -> i64 {
        match self {
            HalfValue::Zero => 0,
            HalfValue::Half => 1,
            HalfValue::One => 2,
        }
    }

    /// `1 - x`, the value of the same vertex in the complementary solution.
    pub fn complement(self) -> HalfValue {
        match self {
            HalfValue::Zero => HalfValue::One,
            HalfValue::Half => HalfValue::Half,
            HalfValue::One => HalfValue::Zero,
        }
    }

    pub fn as_half(self) -> Half {
        Half(self.doubled())
    }
}

impl fmt::Display for HalfValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HalfValue::Zero => write!(f, "0"),
            HalfValue::Half => write!(f, "1/2"),
            HalfValue::One => write!(f, "1"),
        }
    }
}

impl Serialize for HalfValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Which relaxation a solution belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    /// Minimize `sum x_v` subject to `x_u + x_v >= 1` per edge.
    VertexCover,
    /// Maximize `sum x_v` subject to `x_u + x_v <= 1` per edge.
    IndependentSet,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sense::VertexCover => write!(f, "vertex-cover"),
            Sense::IndependentSet => write!(f, "independent-set"),
        }
    }
}

impl Serialize for Sense {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("expected a {expected} solution, got a {got} solution")]
    WrongSense { expected: Sense, got: Sense },
    #[error("solution is not a feasible assignment for the graph")]
    Infeasible,
    #[error("solution value {value} is not optimal, the optimum is {optimum}")]
    NotOptimal { value: Half, optimum: Half },
    #[error("vertex {0} is not in the zero level of the solution")]
    NotInZeroLevel(Vertex),
}

/// A half-integral assignment to the vertices of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfIntegralSolution {
    sense: Sense,
    values: BTreeMap<Vertex, HalfValue>,
}

impl HalfIntegralSolution {
    pub fn new(sense: Sense, values: BTreeMap<Vertex, HalfValue>) -> Self {
        HalfIntegralSolution { sense, values }
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn value(&self) -> Half {
        Half(self.values.values().map(|v| v.doubled()).sum())
    }

    pub fn get(&self, v: Vertex) -> Option<HalfValue> {
        self.values.get(&v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, HalfValue)> + '_ {
        self.values.iter().map(|(&v, &x)| (v, x))
    }

    pub fn level_set(&self, level: HalfValue) -> VertexSet {
        self.values
            .iter()
            .filter(|(_, &x)| x == level)
            .map(|(&v, _)| v)
            .collect()
    }

    pub fn zeros(&self) -> VertexSet {
        self.level_set(HalfValue::Zero)
    }

    pub fn halves(&self) -> VertexSet {
        self.level_set(HalfValue::Half)
    }

    pub fn ones(&self) -> VertexSet {
        self.level_set(HalfValue::One)
    }

    /// The same assignment read in the opposite sense via `x -> 1 - x`.
    pub fn complement(&self) -> HalfIntegralSolution {
        let sense = match self.sense {
            Sense::VertexCover => Sense::IndependentSet,
            Sense::IndependentSet => Sense::VertexCover,
        };
        let values = self.values.iter().map(|(&v, &x)| (v, x.complement())).collect();
        HalfIntegralSolution { sense, values }
    }

    /// True iff the assignment covers exactly the vertices of `g` and every
    /// edge constraint of the solution's sense holds.
    pub fn is_feasible_for(&self, g: &Graph) -> bool {
        if self.values.len() != g.vertex_count() || !g.vertices().all(|v| self.values.contains_key(&v)) {
            return false;
        }
        g.edges().all(|(u, v)| {
            let s = self.values[&u].doubled() + self.values[&v].doubled();
            match self.sense {
                Sense::VertexCover => s >= 2,
                Sense::IndependentSet => s <= 2,
            }
        })
    }
}

impl Serialize for HalfIntegralSolution {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let assignment: Vec<(Vertex, HalfValue)> = self.iter().collect();
        let mut st = serializer.serialize_struct("HalfIntegralSolution", 3)?;
        st.serialize_field("sense", &self.sense)?;
        st.serialize_field("value", &self.value())?;
        st.serialize_field("assignment", &assignment)?;
        st.end()
    }
}

/// Sorted labels plus a label-to-index map, the index space used by the
/// matching routines.
fn index_graph(g: &Graph) -> (Vec<Vertex>, BTreeMap<Vertex, usize>) {
    let labels: Vec<Vertex> = g.vertices().collect();
    let index = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    (labels, index)
}

/// Optimum half-integral vertex cover solution.
///
/// Solves minimum vertex cover on the bipartite double cover (each vertex
/// split into a left and a right copy, each edge into its two crossing
/// copies) with a maximum matching and the matching-based minimum cover;
/// vertex `v` receives half the number of its copies in that cover. The
/// value equals half the double cover's matching number, which is the LP
/// optimum.
pub fn lp_vc_opt(g: &Graph) -> HalfIntegralSolution {
    let (labels, index) = index_graph(g);
    let n = labels.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, v) in g.edges() {
        adj[index[&u]].push(index[&v]);
        adj[index[&v]].push(index[&u]);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let matching = maximum_matching(&adj, n);
    let (cover_left, cover_right) = koenig_cover(&adj, &matching);
    let values = labels
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let doubled = cover_left[i] as i64 + cover_right[i] as i64;
            let x = match doubled {
                0 => HalfValue::Zero,
                1 => HalfValue::Half,
                _ => HalfValue::One,
            };
            (v, x)
        })
        .collect();
    HalfIntegralSolution::new(Sense::VertexCover, values)
}

/// Optimum independent set solution obtained from an optimum vertex cover
/// solution by complementing every value.
pub fn lp_is_from_vc(sol: &HalfIntegralSolution) -> Result<HalfIntegralSolution, LpError> {
    if sol.sense() != Sense::VertexCover {
        return Err(LpError::WrongSense {
            expected: Sense::VertexCover,
            got: sol.sense(),
        });
    }
    Ok(sol.complement())
}

/// Optimum value of the independent set relaxation.
pub fn lp_is_value(g: &Graph) -> Half {
    Half::from_integer(g.vertex_count() as i64) - lp_vc_opt(g).value()
}

/// Zero-level subset whose one-level neighborhood is no larger than itself,
/// if any, for an optimum independent set solution.
///
/// Returns a nonempty `S ⊆ zeros` with `|N(S) ∩ ones| <= |S|` when one
/// exists, `None` when every such subset has strict surplus. The flip of
/// [`half_flip`] applied to a returned set never decreases the solution
/// value and strictly grows the half-level.
pub fn surplus_violator(g: &Graph, sol: &HalfIntegralSolution) -> Result<Option<VertexSet>, LpError> {
    if sol.sense() != Sense::IndependentSet {
        return Err(LpError::WrongSense {
            expected: Sense::IndependentSet,
            got: sol.sense(),
        });
    }
    if !sol.is_feasible_for(g) {
        return Err(LpError::Infeasible);
    }
    let optimum = lp_is_value(g);
    if sol.value() != optimum {
        return Err(LpError::NotOptimal {
            value: sol.value(),
            optimum,
        });
    }
    Ok(violator_in(g, sol))
}

/// Violator search without the optimality precondition checks.
fn violator_in(g: &Graph, sol: &HalfIntegralSolution) -> Option<VertexSet> {
    let zeros: Vec<Vertex> = sol.zeros().iter().collect();
    let ones = sol.ones();
    let one_index: BTreeMap<Vertex, usize> = ones.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = zeros
        .iter()
        .map(|&z| {
            g.neighbors(z)
                .expect("zero level vertices are graph vertices")
                .filter_map(|w| one_index.get(&w).copied())
                .collect()
        })
        .collect();
    deficient_left_set(&adj, one_index.len()).map(|s| s.into_iter().map(|i| zeros[i]).collect())
}

/// Raises `v0_prime` and its one-level neighbors to 1/2.
///
/// For a violator set this changes the value by
/// `(|v0_prime| - |N(v0_prime) ∩ ones|) / 2 >= 0`.
pub fn half_flip(
    g: &Graph,
    sol: &HalfIntegralSolution,
    v0_prime: &VertexSet,
) -> Result<HalfIntegralSolution, LpError> {
    if sol.sense() != Sense::IndependentSet {
        return Err(LpError::WrongSense {
            expected: Sense::IndependentSet,
            got: sol.sense(),
        });
    }
    let zeros = sol.zeros();
    if let Some(v) = v0_prime.iter().find(|&v| !zeros.contains(v)) {
        return Err(LpError::NotInZeroLevel(v));
    }
    let touched = g.neighborhood(v0_prime).map_err(|_| LpError::Infeasible)?;
    let ones = sol.ones();
    let values = sol
        .iter()
        .map(|(v, x)| {
            if v0_prime.contains(v) || (ones.contains(v) && touched.contains(v)) {
                (v, HalfValue::Half)
            } else {
                (v, x)
            }
        })
        .collect();
    Ok(HalfIntegralSolution::new(Sense::IndependentSet, values))
}

/// Optimum independent set solution with inclusion-maximal half-level.
///
/// Starts from the complement of [`lp_vc_opt`] and repeatedly flips a
/// violator of the zero-level surplus condition to 1/2 until none remains.
/// Each flip keeps the solution optimal and strictly grows the half-level,
/// so the loop ends after at most `|V|` rounds. The result satisfies:
/// the one-level's neighborhood is exactly the zero-level, every maximum
/// independent set contains the one-level and avoids the zero-level, and
/// every nonempty zero-level subset has strictly more one-level neighbors
/// than members.
pub fn extremal_lp_is(g: &Graph) -> HalfIntegralSolution {
    let mut sol = lp_vc_opt(g).complement();
    while let Some(violator) = violator_in(g, &sol) {
        let flipped = half_flip(g, &sol, &violator).expect("violator lies in the zero level");
        debug_assert!(flipped.value() >= sol.value());
        debug_assert!(sol.halves().is_subset(&flipped.halves()) && flipped.halves().len() > sol.halves().len());
        sol = flipped;
    }
    sol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solution_of(pairs: &[(Vertex, HalfValue)], sense: Sense) -> HalfIntegralSolution {
        HalfIntegralSolution::new(sense, pairs.iter().copied().collect())
    }

    #[test]
    fn half_arithmetic_and_display() {
        let a = Half::from_integer(2);
        let b = Half::from_doubled(1);
        assert_eq!((a + b).to_string(), "5/2");
        assert_eq!((a - b).doubled(), 3);
        assert_eq!(Half::from_doubled(4).to_string(), "2");
        assert!(!b.is_integer());
    }

    #[test]
    fn lp_vc_of_single_edge_is_all_halves() {
        let k2 = Graph::complete(2);
        let sol = lp_vc_opt(&k2);
        assert_eq!(sol.value(), Half::from_integer(1));
        assert_eq!(sol.halves(), VertexSet::from([0, 1]));
        assert!(sol.is_feasible_for(&k2));
    }

    #[test]
    fn lp_vc_of_path_picks_the_center() {
        let p3 = Graph::path(3);
        let sol = lp_vc_opt(&p3);
        assert_eq!(sol.value(), Half::from_integer(1));
        assert_eq!(sol.ones(), VertexSet::from([1]));
        assert_eq!(sol.zeros(), VertexSet::from([0, 2]));
    }

    #[test]
    fn lp_vc_of_clique_is_all_halves() {
        let k4 = Graph::complete(4);
        let sol = lp_vc_opt(&k4);
        assert_eq!(sol.value(), Half::from_integer(2));
        assert_eq!(sol.halves().len(), 4);
    }

    #[test]
    fn lp_vc_of_odd_cycle_is_all_halves() {
        let c5 = Graph::cycle(5);
        let sol = lp_vc_opt(&c5);
        assert_eq!(sol.value(), Half::from_doubled(5));
        assert_eq!(sol.halves().len(), 5);
    }

    #[test]
    fn lp_vc_of_edgeless_graph_is_zero() {
        let g = Graph::from_edges(3, &[]).unwrap();
        let sol = lp_vc_opt(&g);
        assert_eq!(sol.value(), Half::ZERO);
        assert_eq!(sol.zeros().len(), 3);
    }

    #[test]
    fn is_solution_complements_vc_solution() {
        let p3 = Graph::path(3);
        let vc = lp_vc_opt(&p3);
        let is = lp_is_from_vc(&vc).unwrap();
        assert_eq!(is.sense(), Sense::IndependentSet);
        assert_eq!(is.value(), Half::from_integer(2));
        assert_eq!(is.ones(), VertexSet::from([0, 2]));
        assert!(is.is_feasible_for(&p3));
        assert_eq!(
            lp_is_from_vc(&is).unwrap_err(),
            LpError::WrongSense {
                expected: Sense::VertexCover,
                got: Sense::IndependentSet
            }
        );
    }

    #[test]
    fn violator_on_single_edge_with_integral_solution() {
        let k2 = Graph::complete(2);
        let sol = solution_of(&[(0, HalfValue::One), (1, HalfValue::Zero)], Sense::IndependentSet);
        let violator = surplus_violator(&k2, &sol).unwrap().unwrap();
        assert_eq!(violator, VertexSet::from([1]));
        let flipped = half_flip(&k2, &sol, &violator).unwrap();
        assert_eq!(flipped.halves(), VertexSet::from([0, 1]));
        assert_eq!(flipped.value(), sol.value());
    }

    #[test]
    fn no_violator_for_path_optimum() {
        let p3 = Graph::path(3);
        let sol = lp_is_from_vc(&lp_vc_opt(&p3)).unwrap();
        assert_eq!(surplus_violator(&p3, &sol).unwrap(), None);
    }

    #[test]
    fn violator_rejects_non_optimal_solutions() {
        let p3 = Graph::path(3);
        let sol = solution_of(
            &[(0, HalfValue::Zero), (1, HalfValue::Zero), (2, HalfValue::Zero)],
            Sense::IndependentSet,
        );
        assert!(matches!(
            surplus_violator(&p3, &sol),
            Err(LpError::NotOptimal { .. })
        ));
    }

    #[test]
    fn extremal_solution_on_path() {
        let p3 = Graph::path(3);
        let sol = extremal_lp_is(&p3);
        assert_eq!(sol.ones(), VertexSet::from([0, 2]));
        assert_eq!(sol.zeros(), VertexSet::from([1]));
        assert!(sol.halves().is_empty());
    }

    #[test]
    fn extremal_solution_on_triangle_is_all_halves() {
        let k3 = Graph::complete(3);
        let sol = extremal_lp_is(&k3);
        assert_eq!(sol.halves().len(), 3);
        assert_eq!(sol.value(), Half::from_doubled(3));
    }

    #[test]
    fn extremal_solution_on_single_edge_is_all_halves() {
        let k2 = Graph::complete(2);
        let sol = extremal_lp_is(&k2);
        assert_eq!(sol.halves(), VertexSet::from([0, 1]));
    }

    #[test]
    fn extremal_ones_neighborhood_is_the_zero_level() {
        // Two stars sharing no vertices plus an isolated vertex.
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (3, 4), (3, 5)]).unwrap();
        let sol = extremal_lp_is(&g);
        let ones = sol.ones();
        assert_eq!(g.neighborhood(&ones).unwrap(), sol.zeros());
        assert!(ones.contains(6));
    }
}
