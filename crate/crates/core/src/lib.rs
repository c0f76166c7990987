//! Degeneracy of plane graphs: orderings, special cycles and the
//! lower bound on largest d-degenerate induced subgraphs.

pub mod degeneracy;
pub mod fraction;
pub mod graph;
pub mod instances;
pub mod io;
pub mod plane;
pub mod solver;
pub mod special;

pub use degeneracy::{collect_order, degeneracy, is_a_good, is_d_degenerate, ka_degenerate_ordering};
pub use fraction::Fraction;
pub use graph::{Graph, GraphError, Ordering, Subgraph, VertexSet};
pub use instances::{named, InstanceKind, InstanceSpec};
pub use plane::{CycleRef, EmbeddingError, Face, Orientation, PlaneGraph};
pub use solver::{alpha, alpha_bb, alpha_oracle, check_theorem, BoundReport, Budget, Method, SolveError, SolveResult};
pub use special::{enumerate_special, partial_bound, tau, QKind, SpecialCycleRecord};
