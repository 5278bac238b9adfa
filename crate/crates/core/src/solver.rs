//! The greedy semi-guard sweep and guard extraction.
//!
//! Vertical slices are processed in decreasing `<_ℓ` order. For each slice
//! `s_i` the solver finds the `<_ℓ`-largest `t ∈ Γ(s_i)` whose edge `t s_i`
//! is not yet seen by the current semi-guards; it then either moves an
//! existing semi-guard onto `t` or opens a new one at `(t, s_i)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::RasterGraph;
use crate::tpig::{Axis, Edge, OrderIndex, PathHandle, Vertex};

/// An ordered pair `(h, v)` whose minimal neighbors `minΓ(v)` and `minΓ(h)`
/// are adjacent. It sees a restricted part of what the r-guard
/// `minΓ(v) minΓ(h)` sees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemiGuard {
    pub h: usize,
    pub v: usize,
}

impl SemiGuard {
    pub const fn new(h: usize, v: usize) -> Self {
        SemiGuard { h, v }
    }

    /// The r-guard edge `minΓ(v) minΓ(h)` this semi-guard stands for.
    pub fn guard_edge(&self, order: &OrderIndex) -> Edge {
        Edge::new(order.min_gamma(Vertex::v(self.v)), order.min_gamma(Vertex::h(self.h)))
    }

    pub fn is_valid(&self, order: &OrderIndex) -> bool {
        order.is_edge(self.guard_edge(order))
    }
}

impl fmt::Display for SemiGuard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(h{}, v{})", self.h, self.v)
    }
}

/// `(h, v)` covers `h'v'` iff `h' ≤_ℓ h`, `v' ≤_ℓ v`, `minΓ(h) ∈ Γ(h')` and
/// `minΓ(v) ∈ Γ(v')`.
pub fn semi_guard_covers(order: &OrderIndex, sg: SemiGuard, e: Edge) -> bool {
    order.le_ell(Vertex::h(e.h), Vertex::h(sg.h))
        && order.le_ell(Vertex::v(e.v), Vertex::v(sg.v))
        && order.gamma_contains(Vertex::h(e.h), order.min_gamma(Vertex::h(sg.h)))
        && order.gamma_contains(Vertex::v(e.v), order.min_gamma(Vertex::v(sg.v)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepAction {
    Skip,
    Add(SemiGuard),
    Replace { removed: SemiGuard, added: SemiGuard },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepRecord {
    /// 1-based step number.
    pub i: usize,
    pub s_i: usize,
    pub t_i: Option<usize>,
    pub action: StepAction,
}

/// Full record of one run of the sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverTrace {
    /// Vertical slices in decreasing `<_ℓ` order (`s_1, s_2, ...`).
    pub order: Vec<usize>,
    pub steps: Vec<StepRecord>,
    pub w_final: Vec<SemiGuard>,
}

impl CoverTrace {
    /// Replays the steps from the empty set, returning `W_0, ..., W_k`.
    pub fn states(&self) -> Vec<Vec<SemiGuard>> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut w: Vec<SemiGuard> = Vec::new();
        out.push(w.clone());
        for step in &self.steps {
            apply(&mut w, step.action);
            out.push(w.clone());
        }
        out
    }
}

fn apply(w: &mut Vec<SemiGuard>, action: StepAction) {
    match action {
        StepAction::Skip => {}
        StepAction::Add(g) => w.push(g),
        StepAction::Replace { removed, added } => {
            let slot = w.iter_mut().find(|g| **g == removed).expect("replaced guard present");
            *slot = added;
        }
    }
}

/// Sweep state: cached `∂C_h` paths and a scratch position table.
pub struct CoverSolver<'a> {
    order: &'a OrderIndex,
    c_h: Vec<Option<PathHandle>>,
    pos: Vec<usize>,
}

impl<'a> CoverSolver<'a> {
    pub fn new(order: &'a OrderIndex) -> Self {
        CoverSolver {
            order,
            c_h: vec![None; order.num_h()],
            pos: vec![0; order.num_h()],
        }
    }

    /// `∂C_h` for `C_h = {t ∈ Γ(minΓ(h)) : t ≤_ℓ h}`, which is a subpath of
    /// `Γ(minΓ(h))` containing `h`. Computed once per `h`.
    pub fn boundary_c_h(&mut self, h: usize) -> PathHandle {
        if let Some(p) = self.c_h[h] {
            return p;
        }
        let order = self.order;
        let base = order.min_gamma(Vertex::h(h));
        let walk = order.enumerate_gamma(Vertex::v(base));
        let hv = Vertex::h(h);
        let inside: Vec<usize> = (0..walk.len())
            .filter(|&k| order.le_ell(Vertex::h(walk[k]), hv))
            .collect();
        let (first, last) = (inside[0], inside[inside.len() - 1]);
        debug_assert_eq!(last - first + 1, inside.len(), "C_h is not contiguous");
        let p = PathHandle::new(walk[first], walk[last]);
        self.c_h[h] = Some(p);
        p
    }

    /// The `<_ℓ`-largest `t ∈ Γ(s)` with `t s` not covered by `w`, found by
    /// counting, along `Γ(s)`, how many guards cover each position.
    pub fn select_t_i(&mut self, s: usize, w: &[SemiGuard]) -> Option<usize> {
        let order = self.order;
        let sv = Vertex::v(s);
        let walk = order.enumerate_gamma(sv);
        for (k, &t) in walk.iter().enumerate() {
            self.pos[t] = k;
        }
        let gamma = order.gamma_handle(sv);
        let mut delta = vec![0i32; walk.len() + 1];
        for g in w {
            if !order.gamma_contains(sv, order.min_gamma(Vertex::v(g.v))) {
                continue;
            }
            let c_h = self.boundary_c_h(g.h);
            if let Some((x, y)) = order.path_intersection(Axis::Horizontal, gamma, c_h).endpoints() {
                let (a, b) = (self.pos[x], self.pos[y]);
                delta[a.min(b)] += 1;
                delta[a.max(b) + 1] -= 1;
            }
        }
        let mut count = 0;
        let mut best: Option<usize> = None;
        for (k, &t) in walk.iter().enumerate() {
            count += delta[k];
            if count == 0 && best.is_none_or(|b| order.lt_ell(Vertex::h(b), Vertex::h(t))) {
                best = Some(t);
            }
        }
        best
    }

    pub fn run(mut self) -> Result<CoverTrace> {
        let order = self.order;
        let mut sweep = order.ell_sorted(Axis::Vertical);
        sweep.reverse();

        if order.num_h() == 1 && order.num_v() == 1 {
            let g = SemiGuard::new(0, 0);
            return Ok(CoverTrace {
                order: sweep,
                steps: vec![StepRecord { i: 1, s_i: 0, t_i: Some(0), action: StepAction::Add(g) }],
                w_final: vec![g],
            });
        }

        let mut w: Vec<SemiGuard> = Vec::new();
        let mut steps = Vec::with_capacity(sweep.len());
        for (idx, &s) in sweep.iter().enumerate() {
            let t_i = self.select_t_i(s, &w);
            let action = match t_i {
                None => StepAction::Skip,
                Some(t) => {
                    let sv = Vertex::v(s);
                    let mut best: Option<usize> = None;
                    for (k, g) in w.iter().enumerate() {
                        if order.gamma_contains(sv, g.h)
                            && best.is_none_or(|b| order.lt_ell(Vertex::h(w[b].h), Vertex::h(g.h)))
                        {
                            best = Some(k);
                        }
                    }
                    match best {
                        Some(k) => {
                            let removed = w[k];
                            if w.iter().filter(|g| g.h == removed.h).count() != 1 {
                                return Err(Error::Internal(format!(
                                    "duplicate horizontal component h{} in semi-guard set",
                                    removed.h
                                )));
                            }
                            let added = SemiGuard::new(t, removed.v);
                            w[k] = added;
                            StepAction::Replace { removed, added }
                        }
                        None => {
                            let added = SemiGuard::new(t, s);
                            w.push(added);
                            StepAction::Add(added)
                        }
                    }
                }
            };
            steps.push(StepRecord { i: idx + 1, s_i: s, t_i, action });
        }
        Ok(CoverTrace { order: sweep, steps, w_final: w })
    }
}

/// Runs the sweep over every vertical vertex.
pub fn solve(order: &OrderIndex) -> Result<CoverTrace> {
    CoverSolver::new(order).run()
}

/// One extracted point guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard {
    pub semi: SemiGuard,
    pub edge: Edge,
    /// Pixel center in doubled coordinates, when geometry is known.
    pub point_doubled: Option<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GuardSet {
    pub guards: Vec<Guard>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GuardEntry {
    pub h: usize,
    pub v: usize,
    pub pixel_h: usize,
    pub pixel_v: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GuardFile {
    pub guards: Vec<GuardEntry>,
    pub size: usize,
}

impl GuardSet {
    pub fn len(&self) -> usize {
        self.guards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.guards.is_empty()
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.guards.iter().map(|g| g.edge).collect()
    }

    /// Guard points as floating-point coordinates (exact halves).
    pub fn points(&self) -> Vec<[f64; 2]> {
        self.guards
            .iter()
            .filter_map(|g| g.point_doubled)
            .map(|(x, y)| [x as f64 / 2.0, y as f64 / 2.0])
            .collect()
    }

    pub fn to_file(&self) -> GuardFile {
        GuardFile {
            guards: self
                .guards
                .iter()
                .map(|g| GuardEntry {
                    h: g.semi.h,
                    v: g.semi.v,
                    pixel_h: g.edge.h,
                    pixel_v: g.edge.v,
                    point: g.point_doubled.map(|(x, y)| [x as f64 / 2.0, y as f64 / 2.0]),
                })
                .collect(),
            size: self.guards.len(),
        }
    }
}

/// Turns the final semi-guards into r-guard edges and, with geometry, into
/// pixel-center points.
pub fn extract_guards(
    trace: &CoverTrace,
    order: &OrderIndex,
    geometry: Option<&RasterGraph>,
) -> GuardSet {
    let guards = trace
        .w_final
        .iter()
        .map(|&semi| {
            let edge = semi.guard_edge(order);
            let point_doubled = geometry.map(|g| g.pixel_rect(edge).center_doubled());
            Guard { semi, edge, point_doubled }
        })
        .collect();
    GuardSet { guards }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub edges_checked: usize,
    pub invalid_guards: Vec<Edge>,
    pub uncovered: Vec<Edge>,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.invalid_guards.is_empty() && self.uncovered.is_empty()
    }
}

/// Checks that every edge of the graph is r-visible from some guard edge.
pub fn verify_cover(guards: &[Edge], order: &OrderIndex) -> CoverReport {
    let invalid_guards = guards.iter().copied().filter(|&g| !order.is_edge(g)).collect();
    let edges = order.edges();
    let uncovered = edges
        .iter()
        .copied()
        .filter(|&e| !guards.iter().any(|&g| order.is_edge(g) && order.rguard_covers(g, e)))
        .collect();
    CoverReport { edges_checked: edges.len(), invalid_guards, uncovered }
}
