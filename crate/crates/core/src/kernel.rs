//! Component deletion rule and the kernelization pipeline built on it.
//!
//! The driving quantity is the conflict `conf_F(X_I) = alpha(F) -
//! alpha(F - N(X_I))`: how much of the structured part `F` an independent
//! modulator subset `X_I` destroys when its neighborhood is reserved.
//! Conflicts are additive over the components of `F`, so a table of
//! per-component values answers every deletability query.
//!
//! A component `H` of `G - X` can be deleted (crediting `alpha(H)` against
//! the target) when every independent `X_I ⊆ X` of size at most the class
//! budget that conflicts with `H` already has `|X|` conflicts in the rest:
//! any optimum of the reduced instance can then be rerouted around `H`, so
//! the instances are equivalent. After exhaustive deletion, each survivor
//! carries a certificate subset with fewer than `|X|` conflicts elsewhere,
//! which caps the number of survivors at `|X|^(b+1)`.

use crate::graph::{Graph, GraphError, Vertex, VertexSet};
use crate::instance::{ClassTag, Instance};
use crate::lp::{lp_vc_opt, Half};
use crate::solvers::{
    alpha_bruteforce, find_fvs, find_oct, mis_bruteforce, mis_quasi_bipartite, mis_quasi_forest, DeletionSet,
    SolveError,
};
use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("set {0} is not independent in the graph")]
    NotIndependent(VertexSet),
    #[error("subgraph is not an induced subgraph of the host graph")]
    NotInducedSubgraph,
    #[error("subgraph and modulator subset overlap")]
    Overlapping,
    #[error("subgraph is not a component of the remainder")]
    NotAComponent,
    #[error("the subset has no conflict with the subgraph, nothing to shrink")]
    NoConflict,
    #[error("expected a {expected} instance, got {got}")]
    WrongClass { expected: ClassTag, got: ClassTag },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Class parameters plus the brute-force cap, bundled because every
/// conflict computation needs all three.
#[derive(Debug, Clone, Copy)]
pub struct ClassContext {
    pub class: ClassTag,
    pub d: u32,
    pub cap: usize,
}

impl ClassContext {
    pub fn new(class: ClassTag, d: u32, cap: usize) -> Self {
        ClassContext { class, d, cap }
    }

    pub fn for_instance(inst: &Instance, cap: usize) -> Self {
        ClassContext {
            class: inst.class(),
            d: inst.d(),
            cap,
        }
    }

    pub fn budget(&self) -> u32 {
        self.class.blocking_bound(self.d)
    }

    /// Independence number of a graph whose components are induced
    /// subgraphs of components from the class.
    ///
    /// The structural classes are closed under induced subgraphs, so their
    /// witnesses are recomputed per component. LP-tightness is not: deleting
    /// vertices can widen the gap between cover number and LP optimum, so
    /// that class is solved by brute force without a membership check.
    pub fn alpha(&self, g: &Graph) -> Result<usize, SolveError> {
        let mut total = 0;
        for comp in g.connected_components() {
            total += match self.class {
                ClassTag::QuasiForest => {
                    let z = find_fvs(&comp, self.d).ok_or(SolveError::NotInClass {
                        class: self.class,
                        d: self.d,
                    })?;
                    mis_quasi_forest(&comp, &DeletionSet::fvs(z))?
                }
                ClassTag::QuasiBipartite => {
                    let z = find_oct(&comp, self.d).ok_or(SolveError::NotInClass {
                        class: self.class,
                        d: self.d,
                    })?;
                    mis_quasi_bipartite(&comp, &DeletionSet::oct(z))?
                }
                ClassTag::QuasiIntegral => alpha_bruteforce(&comp, self.cap)?,
            };
        }
        Ok(total)
    }
}

fn ensure_induced(g: &Graph, f: &Graph) -> Result<(), KernelError> {
    let fv = f.vertex_set();
    if !fv.is_subset(&g.vertex_set()) {
        return Err(KernelError::NotInducedSubgraph);
    }
    if g.induced_subgraph(&fv)? != *f {
        return Err(KernelError::NotInducedSubgraph);
    }
    Ok(())
}

/// `conf_f(x_i) = alpha(f) - alpha(f - N(x_i))`, the loss of independence
/// `f` suffers when the neighborhood of `x_i` becomes unavailable.
///
/// `f` must be an induced subgraph of `g` disjoint from `x_i`, and `x_i`
/// independent in `g`. Neighborhoods are taken in `g`.
pub fn conflicts(ctx: &ClassContext, g: &Graph, f: &Graph, x_i: &VertexSet) -> Result<usize, KernelError> {
    if !g.is_independent_set(x_i)? {
        return Err(KernelError::NotIndependent(x_i.clone()));
    }
    ensure_induced(g, f)?;
    let fv = f.vertex_set();
    if !fv.is_disjoint(x_i) {
        return Err(KernelError::Overlapping);
    }
    let shadow = g.neighborhood(x_i)?.intersection(&fv);
    let whole = ctx.alpha(f)?;
    let rest = ctx.alpha(&f.remove_vertices(&shadow)?)?;
    debug_assert!(rest <= whole);
    Ok(whole - rest)
}

/// Replaces a conflicting subset by one of at most budget size.
///
/// `N(x_i) ∩ V(h)` blocks `h` whenever `conf_h(x_i) > 0`. Greedily dropping
/// vertices that keep it blocking leaves a minimal blocking set, whose size
/// the class bounds; picking the smallest `x_i`-neighbor of each kept vertex
/// yields a subset `x'` with `conf_h(x') > 0` of at most that size.
pub fn shrink_conflict_witness(
    ctx: &ClassContext,
    g: &Graph,
    h: &Graph,
    x_i: &VertexSet,
) -> Result<VertexSet, KernelError> {
    if conflicts(ctx, g, h, x_i)? == 0 {
        return Err(KernelError::NoConflict);
    }
    let hv = h.vertex_set();
    let alpha_h = ctx.alpha(h)?;
    let mut y = g.neighborhood(x_i)?.intersection(&hv);
    let snapshot: Vec<Vertex> = y.iter().collect();
    for v in snapshot {
        let mut trial = y.clone();
        trial.remove(v);
        if ctx.alpha(&h.remove_vertices(&trial)?)? < alpha_h {
            y = trial;
        }
    }
    let mut x_prime = VertexSet::new();
    for v in y.iter() {
        let pick = g
            .neighbors(v)?
            .find(|w| x_i.contains(*w))
            .expect("kept vertices neighbor the subset by construction");
        x_prime.insert(pick);
    }
    debug_assert!(x_prime.len() <= ctx.budget() as usize);
    debug_assert!(conflicts(ctx, g, h, &x_prime)? > 0);
    Ok(x_prime)
}

/// Nonempty independent subsets of `modulator` up to `budget` vertices,
/// ordered by size then lexicographically.
fn independent_subsets(g: &Graph, modulator: &VertexSet, budget: u32) -> Result<Vec<VertexSet>, GraphError> {
    let labels: Vec<Vertex> = modulator.iter().collect();
    let mut out = Vec::new();
    for size in 1..=(budget as usize).min(labels.len()) {
        for combo in labels.iter().copied().combinations(size) {
            let s: VertexSet = combo.into_iter().collect();
            if g.is_independent_set(&s)? {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// Conflict values of every budget-sized independent modulator subset
/// against every component. Row/column data stays valid when components are
/// deleted: a component's deletion cannot change another's conflicts.
#[derive(Debug, Clone, Serialize)]
pub struct ConflictTable {
    subsets: Vec<VertexSet>,
    per_component: Vec<Vec<usize>>,
    totals: Vec<usize>,
}

impl ConflictTable {
    pub fn build(
        ctx: &ClassContext,
        g: &Graph,
        modulator: &VertexSet,
        components: &[Graph],
    ) -> Result<Self, KernelError> {
        let subsets = independent_subsets(g, modulator, ctx.budget())?;
        let mut per_component = Vec::with_capacity(components.len());
        for comp in components {
            let row: Vec<usize> = subsets
                .iter()
                .map(|s| conflicts(ctx, g, comp, s))
                .collect::<Result<_, _>>()?;
            per_component.push(row);
        }
        let totals = (0..subsets.len())
            .map(|j| per_component.iter().map(|row| row[j]).sum())
            .collect();
        Ok(ConflictTable {
            subsets,
            per_component,
            totals,
        })
    }

    pub fn subsets(&self) -> &[VertexSet] {
        &self.subsets
    }

    pub fn component_count(&self) -> usize {
        self.per_component.len()
    }

    pub fn conflict(&self, component: usize, subset: usize) -> usize {
        self.per_component[component][subset]
    }

    /// Total conflicts of a subset across all remaining components.
    pub fn total(&self, subset: usize) -> usize {
        self.totals[subset]
    }

    /// First subset (size then lex order) proving the component must stay:
    /// it conflicts with the component but has fewer than `modulator_size`
    /// conflicts in the rest. `None` means the component is deletable.
    pub fn blocking_subset_index(&self, component: usize, modulator_size: usize) -> Option<usize> {
        (0..self.subsets.len()).find(|&j| {
            let own = self.per_component[component][j];
            own > 0 && self.totals[j] - own < modulator_size
        })
    }

    fn remove_component(&mut self, component: usize) {
        let row = self.per_component.remove(component);
        for (j, c) in row.into_iter().enumerate() {
            self.totals[j] -= c;
        }
    }
}

/// Whether one component may be deleted, with the certificate subset kept
/// when it may not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deletability {
    pub deletable: bool,
    pub blocking_subset: Option<VertexSet>,
}

/// Decides the deletion rule for a single component of `G - X`.
pub fn deletable_component(inst: &Instance, h: &Graph, cap: usize) -> Result<Deletability, KernelError> {
    let ctx = ClassContext::for_instance(inst, cap);
    let rest = inst.remainder();
    let hv = h.vertex_set();
    if !rest.connected_components().iter().any(|c| c == h) {
        return Err(KernelError::NotAComponent);
    }
    let others = rest.remove_vertices(&hv)?;
    let g = inst.graph();
    for x_i in independent_subsets(g, inst.modulator(), ctx.budget())? {
        let own = conflicts(&ctx, g, h, &x_i)?;
        if own == 0 {
            continue;
        }
        let elsewhere = conflicts(&ctx, g, &others, &x_i)?;
        if elsewhere < inst.modulator().len() {
            return Ok(Deletability {
                deletable: false,
                blocking_subset: Some(x_i),
            });
        }
    }
    Ok(Deletability {
        deletable: true,
        blocking_subset: None,
    })
}

/// One deleted component and the independence credit taken for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeletionRecord {
    pub vertices: VertexSet,
    pub alpha: usize,
}

/// One surviving component with its non-deletability certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurvivorRecord {
    pub vertices: VertexSet,
    /// Independent subset conflicting here but starved elsewhere.
    pub blocking_subset: VertexSet,
    pub subset_conflicts: usize,
    pub rest_conflicts: usize,
}

/// Modulator growth step of the pipeline.
#[derive(Debug, Clone, Serialize)]
pub struct ExtensionReport {
    pub modulator_before: usize,
    pub modulator_after: usize,
    /// Deletion sets moved into the modulator, one per surviving component.
    pub added: Vec<DeletionSet>,
    /// `d * |X|^(d+3) + |X|` in terms of the input modulator.
    pub size_bound: u64,
    pub size_bound_ok: bool,
    /// Remainder is a forest resp. bipartite after the extension.
    pub remainder_structured: bool,
}

/// Above-LP accounting for the LP-tight class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AboveLpOutcome {
    /// The cover target is at least `vc(G - X) + |X|`, so the explicit cover
    /// settles the instance.
    Solved { cover: VertexSet },
    /// Remaining gap between the cover target and the LP optimum.
    Gap { gap: Half },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AboveLpReport {
    /// Cover target `|V| - k` of the reduced instance.
    pub k_vc: i64,
    pub lp_vc: Half,
    pub outcome: AboveLpOutcome,
    /// `|X| + d * |X|^(2d+3)`.
    pub gap_bound: u64,
    /// True when solved or when the gap is within the bound.
    pub gap_bound_ok: bool,
}

/// Everything the pipeline did and every bound it promised, checkable after
/// the fact.
#[derive(Debug, Clone, Serialize)]
pub struct KernelReport {
    pub class: ClassTag,
    pub d: u32,
    pub budget: u32,
    pub modulator_size: usize,
    pub vertices_before: usize,
    pub vertices_after: usize,
    pub k_before: i64,
    pub k_after: i64,
    pub components_before: usize,
    pub components_after: usize,
    /// `|X|^(b+1)`.
    pub component_bound: u64,
    pub component_bound_ok: bool,
    pub deletions: Vec<DeletionRecord>,
    pub survivors: Vec<SurvivorRecord>,
    /// Every certificate subset conflicts with at most `|X|` components.
    pub certificate_audit_ok: bool,
    pub extension: Option<ExtensionReport>,
    pub above_lp: Option<AboveLpReport>,
}

/// Deletes components while any is deletable, always the lowest-indexed one
/// first, re-scanning after each deletion. Components are indexed by
/// smallest vertex label.
pub fn apply_rule1_exhaustively(inst: &Instance, cap: usize) -> Result<(Instance, KernelReport), KernelError> {
    let ctx = ClassContext::for_instance(inst, cap);
    let g = inst.graph().clone();
    let x = inst.modulator().clone();
    let mut comps = inst.remainder().connected_components();
    let components_before = comps.len();
    let mut table = ConflictTable::build(&ctx, &g, &x, &comps)?;
    let mut graph = g.clone();
    let mut k = inst.k();
    let mut deletions = Vec::new();
    loop {
        let target = (0..comps.len()).find(|&i| table.blocking_subset_index(i, x.len()).is_none());
        let Some(i) = target else { break };
        let h = comps.remove(i);
        let alpha = ctx.alpha(&h)?;
        table.remove_component(i);
        graph = graph.remove_vertices(&h.vertex_set())?;
        k -= alpha as i64;
        deletions.push(DeletionRecord {
            vertices: h.vertex_set(),
            alpha,
        });
    }
    let mut survivors = Vec::new();
    for (i, h) in comps.iter().enumerate() {
        let j = table
            .blocking_subset_index(i, x.len())
            .expect("the loop ended, so every remaining component has a certificate");
        let own = table.conflict(i, j);
        survivors.push(SurvivorRecord {
            vertices: h.vertex_set(),
            blocking_subset: table.subsets()[j].clone(),
            subset_conflicts: own,
            rest_conflicts: table.total(j) - own,
        });
    }
    let certificate_audit_ok = survivors.iter().all(|s| {
        let j = table
            .subsets()
            .iter()
            .position(|q| q == &s.blocking_subset)
            .expect("certificates come from the table");
        let carriers = (0..table.component_count()).filter(|&i| table.conflict(i, j) > 0).count();
        carriers <= x.len()
    });
    let budget = ctx.budget();
    let component_bound = (x.len() as u64).saturating_pow(budget + 1);
    let report = KernelReport {
        class: inst.class(),
        d: inst.d(),
        budget,
        modulator_size: x.len(),
        vertices_before: inst.graph().vertex_count(),
        vertices_after: graph.vertex_count(),
        k_before: inst.k(),
        k_after: k,
        components_before,
        components_after: comps.len(),
        component_bound,
        component_bound_ok: comps.len() as u64 <= component_bound,
        deletions,
        survivors,
        certificate_audit_ok,
        extension: None,
        above_lp: None,
    };
    // Deleting whole components of G - X preserves the class promise of the
    // untouched ones, so revalidation is unnecessary.
    let reduced = Instance::from_parts_unchecked(graph, x, k, inst.d(), inst.class());
    Ok((reduced, report))
}

/// Extension step: moved deletion sets turn every surviving component into
/// a forest resp. bipartite graph, so the output instance uses `d = 0`. The
/// LP-tight class has nothing to move; its instance is returned unchanged.
#[derive(Debug, Clone, Serialize)]
pub struct ModulatorExtension {
    pub instance: Instance,
    pub added: Vec<DeletionSet>,
    pub extended: bool,
}

pub fn extend_modulator(inst: &Instance, cap: usize) -> Result<ModulatorExtension, KernelError> {
    if inst.class() == ClassTag::QuasiIntegral {
        return Ok(ModulatorExtension {
            instance: inst.clone(),
            added: Vec::new(),
            extended: false,
        });
    }
    let mut added = Vec::new();
    let mut modulator = inst.modulator().clone();
    for (i, comp) in inst.remainder().connected_components().iter().enumerate() {
        let set = match inst.class() {
            ClassTag::QuasiForest => DeletionSet::fvs(find_fvs(comp, inst.d()).ok_or(SolveError::NotInClass {
                class: inst.class(),
                d: inst.d(),
            })?),
            ClassTag::QuasiBipartite => DeletionSet::oct(find_oct(comp, inst.d()).ok_or(SolveError::NotInClass {
                class: inst.class(),
                d: inst.d(),
            })?),
            ClassTag::QuasiIntegral => unreachable!("handled above"),
        };
        modulator = modulator.union(&set.vertices);
        added.push(set.for_host(i));
    }
    let instance = Instance::with_cap(inst.graph().clone(), modulator, inst.k(), 0, inst.class(), cap)
        .unwrap_or_else(|e| panic!("moving deletion sets must leave structured components: {e}"));
    Ok(ModulatorExtension {
        instance,
        added,
        extended: true,
    })
}

/// Cover target versus LP optimum for a reduced LP-tight instance.
pub fn above_lp_gap(inst: &Instance, cap: usize) -> Result<AboveLpOutcome, KernelError> {
    if inst.class() != ClassTag::QuasiIntegral {
        return Err(KernelError::WrongClass {
            expected: ClassTag::QuasiIntegral,
            got: inst.class(),
        });
    }
    let n = inst.graph().vertex_count() as i64;
    let k_vc = n - inst.k();
    let rest = inst.remainder();
    let ctx = ClassContext::for_instance(inst, cap);
    let vc_rest = rest.vertex_count() - ctx.alpha(&rest)?;
    if k_vc >= (vc_rest + inst.modulator().len()) as i64 {
        // X plus a minimum cover of every component covers all edges.
        let mut cover = inst.modulator().clone();
        for comp in rest.connected_components() {
            let (_, sets) = mis_bruteforce(&comp, cap)?;
            let mis = sets.first().expect("every graph has a maximum independent set");
            cover = cover.union(&comp.vertex_set().difference(mis));
        }
        debug_assert!(inst.graph().is_vertex_cover(&cover).unwrap_or(false));
        debug_assert!(cover.len() as i64 <= k_vc);
        return Ok(AboveLpOutcome::Solved { cover });
    }
    let gap = Half::from_integer(k_vc) - lp_vc_opt(inst.graph()).value();
    Ok(AboveLpOutcome::Gap { gap })
}

fn above_lp_bound(modulator_size: usize, d: u32) -> u64 {
    let x = modulator_size as u64;
    (d as u64)
        .saturating_mul(x.saturating_pow(2 * d + 3))
        .saturating_add(x)
}

fn extension_bound(modulator_size: usize, d: u32) -> u64 {
    let x = modulator_size as u64;
    (d as u64).saturating_mul(x.saturating_pow(d + 3)).saturating_add(x)
}

/// Full pipeline: exhaustive component deletion, then the class-specific
/// hand-off step (modulator extension or above-LP accounting).
pub fn kernelize(inst: &Instance, cap: usize) -> Result<(Instance, KernelReport), KernelError> {
    let (reduced, mut report) = apply_rule1_exhaustively(inst, cap)?;
    match inst.class() {
        ClassTag::QuasiForest | ClassTag::QuasiBipartite => {
            let ext = extend_modulator(&reduced, cap)?;
            let size_bound = extension_bound(inst.modulator().len(), inst.d());
            let remainder = ext.instance.remainder();
            let remainder_structured = match inst.class() {
                ClassTag::QuasiForest => remainder.is_acyclic(),
                ClassTag::QuasiBipartite => remainder.is_bipartite(),
                ClassTag::QuasiIntegral => unreachable!(),
            };
            report.extension = Some(ExtensionReport {
                modulator_before: reduced.modulator().len(),
                modulator_after: ext.instance.modulator().len(),
                added: ext.added,
                size_bound,
                size_bound_ok: ext.instance.modulator().len() as u64 <= size_bound,
                remainder_structured,
            });
            report.vertices_after = ext.instance.graph().vertex_count();
            Ok((ext.instance, report))
        }
        ClassTag::QuasiIntegral => {
            let outcome = above_lp_gap(&reduced, cap)?;
            let gap_bound = above_lp_bound(inst.modulator().len(), inst.d());
            let gap_bound_ok = match &outcome {
                AboveLpOutcome::Solved { .. } => true,
                AboveLpOutcome::Gap { gap } => (gap.doubled() as i128) <= 2 * (gap_bound as i128),
            };
            report.above_lp = Some(AboveLpReport {
                k_vc: reduced.graph().vertex_count() as i64 - reduced.k(),
                lp_vc: lp_vc_opt(reduced.graph()).value(),
                outcome,
                gap_bound,
                gap_bound_ok,
            });
            Ok((reduced, report))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: usize = 26;

    fn ctx(class: ClassTag, d: u32) -> ClassContext {
        ClassContext::new(class, d, CAP)
    }

    /// Modulator vertex 0 attached to both endpoints of the edge 1-2.
    fn pinched_edge() -> Instance {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        Instance::new(g, VertexSet::from([0]), 1, 0, ClassTag::QuasiForest).unwrap()
    }

    #[test]
    fn conflict_counts_on_small_graphs() {
        let c = ctx(ClassTag::QuasiForest, 0);
        // X = {0} adjacent to leaf 1 of the path 1-2.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let f = g.induced_subgraph(&VertexSet::from([1, 2])).unwrap();
        assert_eq!(conflicts(&c, &g, &f, &VertexSet::from([0])).unwrap(), 0);
        // X = {0} adjacent to both vertices of the edge 1-2.
        let inst = pinched_edge();
        let f = inst.remainder();
        assert_eq!(conflicts(&c, inst.graph(), &f, &VertexSet::from([0])).unwrap(), 1);
    }

    #[test]
    fn conflicts_reject_bad_arguments() {
        let c = ctx(ClassTag::QuasiForest, 0);
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let f = g.induced_subgraph(&VertexSet::from([2, 3])).unwrap();
        assert_eq!(
            conflicts(&c, &g, &f, &VertexSet::from([0, 1])).unwrap_err(),
            KernelError::NotIndependent(VertexSet::from([0, 1]))
        );
        assert_eq!(
            conflicts(&c, &g, &f, &VertexSet::from([2])).unwrap_err(),
            KernelError::Overlapping
        );
        let not_induced = Graph::from_labeled_edges([2, 3], &[]).unwrap();
        assert_eq!(
            conflicts(&c, &g, &not_induced, &VertexSet::from([0])).unwrap_err(),
            KernelError::NotInducedSubgraph
        );
    }

    #[test]
    fn conflicts_are_additive_over_components() {
        let c = ctx(ClassTag::QuasiForest, 0);
        // X = {0} adjacent to both endpoints of two disjoint edges.
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
        let both = g.remove_vertices(&VertexSet::from([0])).unwrap();
        let first = g.induced_subgraph(&VertexSet::from([1, 2])).unwrap();
        let second = g.induced_subgraph(&VertexSet::from([3, 4])).unwrap();
        let x = VertexSet::from([0]);
        assert_eq!(
            conflicts(&c, &g, &both, &x).unwrap(),
            conflicts(&c, &g, &first, &x).unwrap() + conflicts(&c, &g, &second, &x).unwrap()
        );
    }

    #[test]
    fn shrinking_keeps_a_conflicting_subset() {
        let inst = pinched_edge();
        let c = ctx(ClassTag::QuasiForest, 0);
        let h = inst.remainder();
        let witness = shrink_conflict_witness(&c, inst.graph(), &h, &VertexSet::from([0])).unwrap();
        assert_eq!(witness, VertexSet::from([0]));
        // A subset without conflicts cannot be shrunk.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let f = g.induced_subgraph(&VertexSet::from([1, 2])).unwrap();
        assert_eq!(
            shrink_conflict_witness(&c, &g, &f, &VertexSet::from([0])).unwrap_err(),
            KernelError::NoConflict
        );
    }

    #[test]
    fn shrinking_drops_redundant_modulator_vertices() {
        // Modulator {0, 1}; the joint neighborhood {2, 3, 4} blocks the star
        // component, but so does the leaf {4} alone, whose only modulator
        // neighbor is 1. The two-vertex subset shrinks to a singleton.
        let g = Graph::from_edges(5, &[(0, 2), (0, 3), (2, 3), (1, 4), (2, 4)]).unwrap();
        let inst = Instance::new(g, VertexSet::from([0, 1]), 2, 0, ClassTag::QuasiForest).unwrap();
        let c = ctx(ClassTag::QuasiForest, 0);
        let h = inst.remainder();
        let witness = shrink_conflict_witness(&c, inst.graph(), &h, &VertexSet::from([0, 1])).unwrap();
        assert_eq!(witness, VertexSet::from([1]));
        assert_eq!(conflicts(&c, inst.graph(), &h, &witness).unwrap(), 1);
    }

    /// One modulator vertex pinching two disjoint edges. Either edge
    /// component can satisfy the other's conflict, so the first is deletable
    /// and the second then is not.
    fn twin_pinch() -> Instance {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
        Instance::new(g, VertexSet::from([0]), 2, 0, ClassTag::QuasiForest).unwrap()
    }

    #[test]
    fn deletability_of_twin_components() {
        let inst = twin_pinch();
        let comps = inst.remainder().connected_components();
        let first = deletable_component(&inst, &comps[0], CAP).unwrap();
        assert!(first.deletable);
        let second = deletable_component(&inst, &comps[1], CAP).unwrap();
        assert!(second.deletable);
        let bogus = Graph::from_labeled_edges([1, 3], &[]).unwrap();
        assert_eq!(
            deletable_component(&inst, &bogus, CAP).unwrap_err(),
            KernelError::NotAComponent
        );
    }

    #[test]
    fn rule_application_deletes_one_twin_and_keeps_the_other() {
        let inst = twin_pinch();
        let (reduced, report) = apply_rule1_exhaustively(&inst, CAP).unwrap();
        assert_eq!(report.deletions.len(), 1);
        assert_eq!(report.deletions[0].vertices, VertexSet::from([1, 2]));
        assert_eq!(report.deletions[0].alpha, 1);
        assert_eq!(report.k_before, 2);
        assert_eq!(report.k_after, 1);
        assert_eq!(report.survivors.len(), 1);
        let survivor = &report.survivors[0];
        assert_eq!(survivor.vertices, VertexSet::from([3, 4]));
        assert_eq!(survivor.blocking_subset, VertexSet::from([0]));
        assert_eq!(survivor.subset_conflicts, 1);
        assert_eq!(survivor.rest_conflicts, 0);
        assert!(report.certificate_audit_ok);
        assert!(report.component_bound_ok);
        assert_eq!(reduced.graph().vertex_count(), 3);
        assert_eq!(reduced.k(), 1);
    }

    #[test]
    fn empty_modulator_deletes_everything() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        let inst = Instance::new(g, VertexSet::new(), 3, 0, ClassTag::QuasiForest).unwrap();
        let (reduced, report) = apply_rule1_exhaustively(&inst, CAP).unwrap();
        assert_eq!(report.deletions.len(), 2);
        assert_eq!(report.components_after, 0);
        assert_eq!(reduced.graph().vertex_count(), 0);
        // alpha(edge) + alpha(path) = 1 + 2 credits the whole target.
        assert_eq!(reduced.k(), 0);
        assert_eq!(report.component_bound, 0);
        assert!(report.component_bound_ok);
    }

    #[test]
    fn extension_moves_a_feedback_vertex_into_the_modulator() {
        // Modulator 4 attached to the 4-cycle 0-1-2-3.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (0, 3), (4, 0)]).unwrap();
        let inst = Instance::new(g, VertexSet::from([4]), 2, 1, ClassTag::QuasiForest).unwrap();
        let ext = extend_modulator(&inst, CAP).unwrap();
        assert!(ext.extended);
        assert_eq!(ext.instance.modulator(), &VertexSet::from([0, 4]));
        assert_eq!(ext.instance.d(), 0);
        assert!(ext.instance.remainder().is_acyclic());
        assert_eq!(ext.added.len(), 1);
        assert_eq!(ext.added[0].vertices, VertexSet::from([0]));
    }

    #[test]
    fn extension_is_a_notice_only_for_the_lp_tight_class() {
        let g = Graph::complete(4);
        let inst = Instance::new(g, VertexSet::new(), 1, 1, ClassTag::QuasiIntegral).unwrap();
        let ext = extend_modulator(&inst, CAP).unwrap();
        assert!(!ext.extended);
        assert!(ext.added.is_empty());
        assert_eq!(&ext.instance, &inst);
    }

    #[test]
    fn above_lp_solves_generous_targets() {
        // Two disjoint 4-cliques, no modulator: vc = 6, alpha = 2.
        let edges: Vec<(Vertex, Vertex)> = (0..4)
            .flat_map(|u| ((u + 1)..4).map(move |v| (u, v)))
            .chain((4..8).flat_map(|u| ((u + 1)..8).map(move |v| (u, v))))
            .collect();
        let g = Graph::from_edges(8, &edges).unwrap();
        let inst = Instance::new(g.clone(), VertexSet::new(), 2, 1, ClassTag::QuasiIntegral).unwrap();
        match above_lp_gap(&inst, CAP).unwrap() {
            AboveLpOutcome::Solved { cover } => {
                assert_eq!(cover.len(), 6);
                assert!(inst.graph().is_vertex_cover(&cover).unwrap());
            }
            other => panic!("expected a solved outcome, got {other:?}"),
        }
        // Tighter target: k = 3 gives k_vc = 5 < 6.
        let tight = Instance::new(g, VertexSet::new(), 3, 1, ClassTag::QuasiIntegral).unwrap();
        match above_lp_gap(&tight, CAP).unwrap() {
            AboveLpOutcome::Gap { gap } => assert_eq!(gap, Half::from_integer(1)),
            other => panic!("expected a gap, got {other:?}"),
        }
        assert_eq!(
            above_lp_gap(&pinched_edge(), CAP).unwrap_err(),
            KernelError::WrongClass {
                expected: ClassTag::QuasiIntegral,
                got: ClassTag::QuasiForest
            }
        );
    }

    #[test]
    fn kernelize_runs_the_full_forest_pipeline() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (0, 3), (4, 0)]).unwrap();
        let inst = Instance::new(g, VertexSet::from([4]), 2, 1, ClassTag::QuasiForest).unwrap();
        let (out, report) = kernelize(&inst, CAP).unwrap();
        let ext = report.extension.as_ref().expect("structural classes extend");
        assert!(ext.remainder_structured);
        assert!(ext.size_bound_ok, "bound {} vs {}", ext.size_bound, ext.modulator_after);
        assert_eq!(out.d(), 0);
        assert!(report.above_lp.is_none());
    }

    #[test]
    fn kernelize_reports_above_lp_for_the_lp_tight_class() {
        let g = Graph::complete(4);
        let inst = Instance::new(g, VertexSet::from([0]), 1, 1, ClassTag::QuasiIntegral).unwrap();
        let (_, report) = kernelize(&inst, CAP).unwrap();
        let above = report.above_lp.as_ref().expect("lp-tight class reports above-lp data");
        assert!(above.gap_bound_ok);
        assert!(report.extension.is_none());
    }

    #[test]
    fn kernelize_is_deterministic() {
        let inst = twin_pinch();
        let (out1, rep1) = kernelize(&inst, CAP).unwrap();
        let (out2, rep2) = kernelize(&inst, CAP).unwrap();
        assert_eq!(out1, out2);
        assert_eq!(
            serde_json::to_string(&rep1).unwrap(),
            serde_json::to_string(&rep2).unwrap()
        );
    }
}
