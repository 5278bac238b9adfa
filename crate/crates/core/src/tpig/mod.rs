//! Tree-path intersection graphs: the sparse representation, rooted R-trees
//! with NCA queries, the linear sweep order and the guard predicates built on
//! top of them.

mod graph;
mod nca;
mod order;
mod path;

pub use graph::{Axis, Edge, RTree, SparseTpig, TpigFile, TpigViolation, Vertex};
pub use nca::NcaIndex;
pub use order::{choose_roots, ChildOrder, OrderIndex, RootedTree, Roots};
pub use path::PathHandle;
