//! Exact minimum r-star covers of simple orthogonal polygons.
//!
//! The pipeline is:
//!
//! 1. [`geometry`] turns a polygon into horizontal and vertical slices, their
//!    R-trees and the sparse tree-path intersection graph ([`SparseTpig`]).
//! 2. [`tpig`] roots the trees, builds nearest-common-ancestor tables and the
//!    linear sweep order, and answers neighborhood queries in O(1).
//! 3. [`solver`] runs the greedy semi-guard sweep and extracts point guards.
//! 4. [`certificate`] replays the sweep to produce a set of pairwise
//!    r-independent pixels of the same size, which proves the cover minimum.
//! 5. [`oracle`] holds exponential brute-force solvers used for cross-checks.
//!
//! ```
//! use orthoguard::{parse_polygon, Pipeline};
//!
//! let p = parse_polygon(r#"{"vertices":[[0,0],[2,0],[2,1],[1,1],[1,2],[0,2]]}"#).unwrap();
//! let run = Pipeline::from_polygon(&p).unwrap();
//! assert_eq!(run.trace.w_final.len(), 1);
//! assert!(run.certificate_report().passed());
//! ```

pub mod certificate;
pub mod error;
pub mod geometry;
pub mod oracle;
mod pipeline;
pub mod solver;
pub mod svg;
pub mod tpig;

pub use certificate::{build_certificate, verify_certificate, Certificate, CertificateReport};
pub use error::{Error, Result};
pub use geometry::{
    build_slices, build_sparse_tpig, generate_polygon, generate_staircase, parse_polygon,
    staircase_with_slices, validate_polygon, Pixel, Point, Polygon, RasterGraph, Rect, Slice, Violation,
};
pub use pipeline::Pipeline;
pub use solver::{extract_guards, solve, verify_cover, CoverReport, CoverTrace, GuardSet, SemiGuard};
pub use tpig::{
    choose_roots, Axis, ChildOrder, Edge, OrderIndex, PathHandle, RTree, Roots, SparseTpig, Vertex,
};
