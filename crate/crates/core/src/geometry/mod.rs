//! Polygon ingestion, slicing and raster-graph construction.

mod generate;
mod polygon;
mod raster;
mod slicing;

pub use generate::{generate_polygon, generate_staircase, staircase_with_slices};
pub use polygon::{parse_polygon, validate_polygon, Point, Polygon, Violation};
pub use raster::{build_sparse_tpig, Pixel, RasterGraph};
pub use slicing::{build_slices, Rect, Slice};
