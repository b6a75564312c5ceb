//! Kernelization for vertex cover / independent set on graphs that carry a
//! small modulator `X` into a structured class: deleting `X` leaves only
//! components that are `d` vertices away from a forest, `d` vertices away
//! from a bipartite graph, or whose vertex cover number is within `d` of
//! its LP relaxation.
//!
//! The pipeline deletes components of `G - X` that cannot matter for the
//! independent set target (crediting their independence number), then hands
//! off per class: the structural classes move per-component deletion sets
//! into the modulator, the LP-tight class reports the gap between the cover
//! target and the LP optimum. Every step emits a report whose claimed
//! bounds can be checked after the fact, and every optimized path has an
//! exhaustive counterpart in [`oracle`] or [`solvers`] for verification.
//!
//! ```
//! use quasikernel_core::{kernelize, ClassTag, Graph, Instance, VertexSet};
//!
//! // Modulator vertex 0 pinches two disjoint edges.
//! let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
//! let inst = Instance::new(g, VertexSet::from([0]), 2, 0, ClassTag::QuasiForest).unwrap();
//! let (reduced, report) = kernelize(&inst, 26).unwrap();
//! assert_eq!(report.deletions.len(), 1);
//! assert_eq!(reduced.k(), 1);
//! ```

#![forbid(unsafe_code)]

pub mod blocking;
pub mod graph;
pub mod instance;
pub mod kernel;
pub mod lp;
mod matching;
pub mod oracle;
pub mod solvers;

pub use graph::{Graph, GraphError, Vertex, VertexSet};
pub use instance::{ClassTag, Instance, InstanceError};
pub use kernel::{kernelize, ClassContext, KernelError, KernelReport};
pub use lp::{extremal_lp_is, lp_vc_opt, Half, HalfIntegralSolution, HalfValue, Sense};
pub use solvers::{DeletionKind, DeletionSet, SolveError, DEFAULT_BRUTE_FORCE_CAP};
