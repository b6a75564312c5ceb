//! Problem instances for independent set with a structural modulator.
//!
//! An instance carries a graph `G`, a modulator `X` whose removal leaves
//! only components from a declared class, a target `k` for the independent
//! set size, and the class parameter `d`.

use crate::graph::{Graph, Vertex, VertexSet};
use crate::solvers::{recognize_class, SolveError, DEFAULT_BRUTE_FORCE_CAP};
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// The structured graph classes the pipeline is parameterized by.
///
/// For a fixed `d >= 0`, a connected graph `H` belongs to
/// `QuasiForest` if some `d` vertices can be deleted to leave a forest,
/// `QuasiBipartite` if some `d` vertices can be deleted to leave a
/// bipartite graph, and `QuasiIntegral` if the vertex cover number exceeds
/// the vertex cover LP optimum by at most `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClassTag {
    QuasiForest,
    QuasiBipartite,
    QuasiIntegral,
}

impl ClassTag {
    pub fn all() -> [ClassTag; 3] {
        [ClassTag::QuasiForest, ClassTag::QuasiBipartite, ClassTag::QuasiIntegral]
    }

    /// Upper bound on the size of minimal independence-blocking sets in
    /// members of the class; also the subset size budget of the component
    /// deletion rule.
    pub fn blocking_bound(self, d: u32) -> u32 {
        match self {
            ClassTag::QuasiForest | ClassTag::QuasiBipartite => d + 2,
            ClassTag::QuasiIntegral => 2 * d + 2,
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTag::QuasiForest => write!(f, "quasi-forest"),
            ClassTag::QuasiBipartite => write!(f, "quasi-bipartite"),
            ClassTag::QuasiIntegral => write!(f, "quasi-integral"),
        }
    }
}

impl FromStr for ClassTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quasi-forest" => Ok(ClassTag::QuasiForest),
            "quasi-bipartite" => Ok(ClassTag::QuasiBipartite),
            "quasi-integral" => Ok(ClassTag::QuasiIntegral),
            other => Err(format!(
                "unknown class {other:?}, expected quasi-forest, quasi-bipartite or quasi-integral"
            )),
        }
    }
}

impl Serialize for ClassTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("modulator vertex {0} is not in the graph")]
    ModulatorNotInGraph(Vertex),
    #[error("component with smallest vertex {component_min} is not {class} for d = {d}")]
    ComponentNotInClass {
        component_min: Vertex,
        class: ClassTag,
        d: u32,
    },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// A validated instance: every component of `G - X` lies in the declared
/// class.
///
/// `k` is a plain integer: reduction steps trade deleted components against
/// the target, which can push `k` below zero (a no-instance) or above the
/// remaining vertex count (a yes-instance), so no range is imposed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instance {
    graph: Graph,
    modulator: VertexSet,
    k: i64,
    d: u32,
    class: ClassTag,
}

impl Instance {
    pub fn new(
        graph: Graph,
        modulator: VertexSet,
        k: i64,
        d: u32,
        class: ClassTag,
    ) -> Result<Instance, InstanceError> {
        Self::with_cap(graph, modulator, k, d, class, DEFAULT_BRUTE_FORCE_CAP)
    }

    /// Like [`Instance::new`] with an explicit vertex cap for the class
    /// checks that need brute force.
    pub fn with_cap(
        graph: Graph,
        modulator: VertexSet,
        k: i64,
        d: u32,
        class: ClassTag,
        cap: usize,
    ) -> Result<Instance, InstanceError> {
        if let Some(v) = modulator.iter().find(|&v| !graph.contains_vertex(v)) {
            return Err(InstanceError::ModulatorNotInGraph(v));
        }
        let rest = graph
            .remove_vertices(&modulator)
            .expect("modulator vertices were just checked");
        for comp in rest.connected_components() {
            let check = recognize_class(&comp, d, class, cap)?;
            if !check.member {
                return Err(InstanceError::ComponentNotInClass {
                    component_min: comp.vertex_set().first().expect("components are nonempty"),
                    class,
                    d,
                });
            }
        }
        Ok(Instance {
            graph,
            modulator,
            k,
            d,
            class,
        })
    }

    /// Constructor for reduction outputs whose invariants hold by
    /// construction. Callers guarantee that every component of the new
    /// `G - X` is already known to lie in the class.
    pub(crate) fn from_parts_unchecked(
        graph: Graph,
        modulator: VertexSet,
        k: i64,
        d: u32,
        class: ClassTag,
    ) -> Instance {
        Instance {
            graph,
            modulator,
            k,
            d,
            class,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn modulator(&self) -> &VertexSet {
        &self.modulator
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn class(&self) -> ClassTag {
        self.class
    }

    /// The subset size budget `b` of the reduction, equal to the class's
    /// blocking bound.
    pub fn budget(&self) -> u32 {
        self.class.blocking_bound(self.d)
    }

    /// `G - X`, the structured part of the instance.
    pub fn remainder(&self) -> Graph {
        self.graph
            .remove_vertices(&self.modulator)
            .expect("modulator is a subset of the vertices")
    }
}
