//! Seeded instance generators.
//!
//! Components are built inside the declared class by construction: a random
//! tree or bipartite base plus at most `d` extra vertices whose wiring may
//! create (odd) cycles. The clique gadget emits the complete graphs on
//! which the class's blocking-set bound is tight, and the star-of-triangles
//! gadget a graph whose minimum feedback vertex set and odd cycle
//! transversal both have size exactly `d`.
//!
//! To keep the deletion rule from wiping every instance, each component is
//! additionally pinned to the modulator with probability
//! `conflict_probability`: one modulator vertex gets wired onto a whole
//! minimal blocking set of the component, which forces a conflict with that
//! vertex.

use std::collections::BTreeSet;

use clap::ValueEnum;
use quasikernel_core::blocking::enumerate_minimal_blocking_sets;
use quasikernel_core::solvers::mis_component;
use quasikernel_core::{ClassTag, Graph, Instance, SolveError, Vertex, VertexSet};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Brute-force cap used while choosing targets and validating output.
const GENERATOR_CAP: usize = 26;

/// Components above this size skip blocking-set enumeration when a conflict
/// is planted and pin the modulator to the whole component instead.
const ENUMERATION_LIMIT: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorKind {
    /// Tree base plus at most `d` cycle-creating extra vertices.
    QuasiForest,
    /// Bipartite base plus at most `d` oddness-creating extra vertices.
    QuasiBipartite,
    /// Same construction as quasi-bipartite; a transversal of `d` vertices
    /// keeps the cover number within `d` of the LP optimum.
    QuasiIntegral,
    /// Complete graphs on which the blocking bound is tight: one K_{d+2}
    /// per component, or K_{2d+2} under the quasi-integral tag.
    CliqueGadget,
    /// A star with `d` leaves and a triangle appended at each leaf.
    StarOfTriangles,
}

impl GeneratorKind {
    fn default_class(self) -> ClassTag {
        match self {
            GeneratorKind::QuasiForest => ClassTag::QuasiForest,
            GeneratorKind::QuasiBipartite => ClassTag::QuasiBipartite,
            GeneratorKind::QuasiIntegral => ClassTag::QuasiIntegral,
            GeneratorKind::CliqueGadget | GeneratorKind::StarOfTriangles => ClassTag::QuasiForest,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub component_count: usize,
    /// Vertices per component; the gadget kinds derive their size from `d`
    /// and ignore this field.
    pub component_size: usize,
    pub modulator_size: usize,
    pub d: u32,
    /// Probability of each modulator-to-component edge; modulator-internal
    /// edges appear with half this probability.
    pub edge_density_to_x: f64,
    pub seed: u64,
    /// Class tag of the produced instance; defaults to the kind's own class.
    pub class: Option<ClassTag>,
    pub conflict_probability: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenerateError {
    #[error("component size {size} is below d + 1 = {}", d + 1)]
    ComponentTooSmall { size: usize, d: u32 },
    #[error("probability {0} is not in [0, 1]")]
    BadProbability(f64),
    #[error("cannot choose a target near the independence number: {0}")]
    Target(#[from] SolveError),
}

struct Assembly {
    rng: ChaCha8Rng,
    edges: BTreeSet<(Vertex, Vertex)>,
}

impl Assembly {
    fn add(&mut self, u: Vertex, v: Vertex) {
        debug_assert_ne!(u, v);
        self.edges.insert((u.min(v), u.max(v)));
    }
}

fn random_tree(a: &mut Assembly, labels: &[Vertex]) {
    for i in 1..labels.len() {
        let j = a.rng.gen_range(0..i);
        a.add(labels[j], labels[i]);
    }
}

/// Wires each extra vertex to a few random base vertices. With at least two
/// attachments per extra, cycles through the extras are likely but never
/// required; removal of the extras always restores the base.
fn wire_extras(a: &mut Assembly, base: &[Vertex], extras: &[Vertex], min_attach: usize) {
    for &e in extras {
        let count = a.rng.gen_range(min_attach..=min_attach + 1).min(base.len());
        for idx in sample(&mut a.rng, base.len(), count) {
            a.add(base[idx], e);
        }
    }
}

fn quasi_forest_component(a: &mut Assembly, labels: &[Vertex], d: u32) {
    let extra_count = (d as usize).min(labels.len() - 1);
    let (base, extras) = labels.split_at(labels.len() - extra_count);
    random_tree(a, base);
    wire_extras(a, base, extras, 2);
}

fn quasi_bipartite_component(a: &mut Assembly, labels: &[Vertex], d: u32) {
    let extra_count = (d as usize).min(labels.len() - 1);
    let (base, extras) = labels.split_at(labels.len() - extra_count);
    // Connected bipartite base: attach each vertex across the side split,
    // flipping its own side when no partner exists yet.
    let mut side = vec![false; base.len()];
    for i in 1..base.len() {
        side[i] = a.rng.gen_bool(0.5);
        let partners: Vec<usize> = (0..i).filter(|&j| side[j] != side[i]).collect();
        let j = match partners.as_slice() {
            [] => {
                side[i] = !side[i];
                a.rng.gen_range(0..i)
            }
            ps => ps[a.rng.gen_range(0..ps.len())],
        };
        a.add(base[j], base[i]);
    }
    for i in 0..base.len() {
        for j in (i + 1)..base.len() {
            if side[i] != side[j] && a.rng.gen_bool(0.3) {
                a.add(base[i], base[j]);
            }
        }
    }
    wire_extras(a, base, extras, 1);
}

fn clique_component(a: &mut Assembly, labels: &[Vertex]) {
    for i in 0..labels.len() {
        for j in (i + 1)..labels.len() {
            a.add(labels[i], labels[j]);
        }
    }
}

fn star_of_triangles_component(a: &mut Assembly, labels: &[Vertex], d: u32) {
    let center = labels[0];
    for leaf_idx in 0..d as usize {
        let [leaf, left, right] = [labels[1 + 3 * leaf_idx], labels[2 + 3 * leaf_idx], labels[3 + 3 * leaf_idx]];
        a.add(center, leaf);
        a.add(leaf, left);
        a.add(leaf, right);
        a.add(left, right);
    }
}

fn component_size(spec: &GeneratorSpec, class: ClassTag) -> Result<usize, GenerateError> {
    match spec.kind {
        GeneratorKind::CliqueGadget => Ok(match class {
            ClassTag::QuasiIntegral => 2 * spec.d as usize + 2,
            _ => spec.d as usize + 2,
        }),
        GeneratorKind::StarOfTriangles => Ok(1 + 3 * spec.d as usize),
        _ => {
            if spec.component_size < spec.d as usize + 1 {
                return Err(GenerateError::ComponentTooSmall {
                    size: spec.component_size,
                    d: spec.d,
                });
            }
            Ok(spec.component_size)
        }
    }
}

/// Builds the instance described by `spec`. Deterministic: equal specs give
/// byte-identical instances under [`crate::format::emit_instance`].
pub fn generate(spec: &GeneratorSpec) -> Result<Instance, GenerateError> {
    for p in [spec.edge_density_to_x, spec.conflict_probability] {
        if !(0.0..=1.0).contains(&p) {
            return Err(GenerateError::BadProbability(p));
        }
    }
    let class = spec.class.unwrap_or_else(|| spec.kind.default_class());
    let size = component_size(spec, class)?;

    let mut a = Assembly {
        rng: ChaCha8Rng::seed_from_u64(spec.seed),
        edges: BTreeSet::new(),
    };
    let modulator: Vec<Vertex> = (1..=spec.modulator_size as Vertex).collect();
    let mut components: Vec<Vec<Vertex>> = Vec::new();
    let mut next = spec.modulator_size as Vertex + 1;
    for _ in 0..spec.component_count {
        let labels: Vec<Vertex> = (next..next + size as Vertex).collect();
        next += size as Vertex;
        match spec.kind {
            GeneratorKind::QuasiForest => quasi_forest_component(&mut a, &labels, spec.d),
            GeneratorKind::QuasiBipartite | GeneratorKind::QuasiIntegral => {
                quasi_bipartite_component(&mut a, &labels, spec.d)
            }
            GeneratorKind::CliqueGadget => clique_component(&mut a, &labels),
            GeneratorKind::StarOfTriangles => star_of_triangles_component(&mut a, &labels, spec.d),
        }
        components.push(labels);
    }

    for (i, &u) in modulator.iter().enumerate() {
        for &v in &modulator[i + 1..] {
            if a.rng.gen_bool(spec.edge_density_to_x / 2.0) {
                a.add(u, v);
            }
        }
    }
    for &x in &modulator {
        for labels in &components {
            for &v in labels {
                if a.rng.gen_bool(spec.edge_density_to_x) {
                    a.add(x, v);
                }
            }
        }
    }

    // Guaranteed conflicts: wiring one modulator vertex onto a blocking set
    // puts that whole set inside its neighborhood, which lowers the
    // component's independence number once the vertex is picked.
    let mut component_graphs: Vec<Graph> = Vec::new();
    for labels in &components {
        let inside: Vec<(Vertex, Vertex)> = a
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| labels.binary_search(&u).is_ok() && labels.binary_search(&v).is_ok())
            .collect();
        component_graphs.push(Graph::from_labeled_edges(labels.iter().copied(), &inside).unwrap());
    }
    if !modulator.is_empty() {
        for comp in &component_graphs {
            if !a.rng.gen_bool(spec.conflict_probability) {
                continue;
            }
            let x = modulator[a.rng.gen_range(0..modulator.len())];
            let target = if comp.vertex_count() <= ENUMERATION_LIMIT {
                let report = enumerate_minimal_blocking_sets(comp, class.blocking_bound(spec.d), GENERATOR_CAP)
                    .expect("component size is under the cap");
                let pick = a.rng.gen_range(0..report.minimal_sets.len());
                report.minimal_sets[pick].clone()
            } else {
                comp.vertex_set()
            };
            for v in target.iter() {
                a.add(x, v);
            }
        }
    }

    let edge_list: Vec<(Vertex, Vertex)> = a.edges.iter().copied().collect();
    let graph = Graph::from_labeled_edges(1..=(next - 1), &edge_list).expect("assembly edges are simple");

    // Target near the reachable range [alpha(G - X), alpha(G - X) + |X|],
    // overshooting by one on each end so both answers occur.
    let mut alpha_rest = 0i64;
    for comp in &component_graphs {
        alpha_rest += mis_component(comp, spec.d, class, GENERATOR_CAP)? as i64;
    }
    let k = alpha_rest - 1 + a.rng.gen_range(0..=spec.modulator_size as i64 + 2);

    let modulator: VertexSet = modulator.into_iter().collect();
    Ok(Instance::with_cap(graph, modulator, k, spec.d, class, GENERATOR_CAP)
        .expect("components are built inside the class"))
}
