use super::polygon::Polygon;
use super::slicing::{locate, slicing, Rect, Slice};
use crate::error::{Error, Result};
use crate::tpig::{Axis, Edge, RTree, SparseTpig, Vertex};

/// The intersection `h ∩ v` for an edge `hv` of the raster graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pixel {
    pub h: usize,
    pub v: usize,
    pub rect: Rect,
}

/// A polygon with its slicings and the sparse graph built from them.
#[derive(Debug, Clone)]
pub struct RasterGraph {
    pub polygon: Polygon,
    pub h_slices: Vec<Slice>,
    pub v_slices: Vec<Slice>,
    pub tpig: SparseTpig,
}

/// Slices a valid polygon both ways and derives `(T_H, T_V, ∂Γ)`.
///
/// `∂Γ(h)` is read off by locating the leftmost and rightmost unit-wide
/// columns of `h`'s interior in the vertical slicing; `∂Γ(v)` uses the
/// bottom and top rows of `v` in the horizontal slicing.
pub fn build_sparse_tpig(p: &Polygon) -> Result<RasterGraph> {
    let hs = slicing(p, Axis::Horizontal)?;
    let vs = slicing(p, Axis::Vertical)?;
    let t_h = RTree::from_edges(hs.slices.len(), &hs.tree_edges, 0)?;
    let t_v = RTree::from_edges(vs.slices.len(), &vs.tree_edges, 0)?;

    let h_rects: Vec<Rect> = hs.slices.iter().map(|s| s.rect).collect();
    let v_rects: Vec<Rect> = vs.slices.iter().map(|s| s.rect).collect();

    let h_queries: Vec<(i64, i64)> = h_rects
        .iter()
        .flat_map(|r| [(2 * r.x_min + 1, 2 * r.y_min + 1), (2 * r.x_max - 1, 2 * r.y_min + 1)])
        .collect();
    let v_queries: Vec<(i64, i64)> = v_rects
        .iter()
        .flat_map(|r| [(2 * r.x_min + 1, 2 * r.y_min + 1), (2 * r.x_min + 1, 2 * r.y_max - 1)])
        .collect();
    let pair_up = |hits: Vec<Option<usize>>| -> Result<Vec<(usize, usize)>> {
        hits.chunks(2)
            .map(|c| match (c[0], c[1]) {
                (Some(a), Some(b)) => Ok((a, b)),
                _ => Err(Error::Internal("slice interior not covered by opposite slicing".into())),
            })
            .collect()
    };
    let boundary_gamma_h = pair_up(locate(&v_rects, &h_queries))?;
    let boundary_gamma_v = pair_up(locate(&h_rects, &v_queries))?;

    Ok(RasterGraph {
        polygon: p.clone(),
        h_slices: hs.slices,
        v_slices: vs.slices,
        tpig: SparseTpig { t_h, t_v, boundary_gamma_h, boundary_gamma_v },
    })
}

impl RasterGraph {
    pub fn slice(&self, s: Vertex) -> &Slice {
        match s.axis {
            Axis::Horizontal => &self.h_slices[s.index],
            Axis::Vertical => &self.v_slices[s.index],
        }
    }

    pub fn pixel_rect(&self, e: Edge) -> Rect {
        self.h_slices[e.h]
            .rect
            .intersection(&self.v_slices[e.v].rect)
            .expect("pixel of a graph edge")
    }

    /// One pixel per edge `hv`, found by walking each `Γ(h)`.
    pub fn pixels(&self) -> Vec<Pixel> {
        self.tpig
            .edges()
            .into_iter()
            .map(|e| Pixel { h: e.h, v: e.v, rect: self.pixel_rect(e) })
            .collect()
    }
}
