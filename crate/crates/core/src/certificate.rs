//! Lower-bound certificates.
//!
//! The sweep's steps are replayed from last to first. Each selected edge
//! `t_i s_i` that is r-independent of everything kept so far is kept when
//! the step added a semi-guard, or when the semi-guard it replaced is still
//! accounted for by a kept edge. The result has exactly as many pairwise
//! r-independent edges as the cover has guards, so neither can be improved.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{RasterGraph, Rect};
use crate::solver::{extract_guards, semi_guard_covers, verify_cover, CoverTrace, StepAction};
use crate::tpig::{Edge, OrderIndex, Vertex};

/// Why a replayed step contributed its edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// The step added a new semi-guard.
    Add,
    /// The replaced semi-guard covers an edge already kept.
    CoversKept,
    /// A kept edge `t_n s_n` has the replaced `h` in `Γ(s_n)` below `t_n`.
    BelowKept,
    /// Both replace conditions held.
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub edge: Edge,
    /// The 1-based sweep step that selected this edge.
    pub step: usize,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// `I_1`, in the order edges were kept (decreasing step).
    pub witnesses: Vec<Witness>,
    pub cover_size: usize,
    pub witness_pixels: Option<Vec<Rect>>,
}

impl Certificate {
    pub fn edges(&self) -> Vec<Edge> {
        self.witnesses.iter().map(|w| w.edge).collect()
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    /// `I_i`: the edges kept at steps `i..=k`.
    pub fn state(&self, i: usize) -> Vec<Edge> {
        self.witnesses.iter().filter(|w| w.step >= i).map(|w| w.edge).collect()
    }

    pub fn to_file(&self, report: &CertificateReport) -> CertificateFile {
        let rects = self.witness_pixels.as_deref();
        CertificateFile {
            independent: self
                .witnesses
                .iter()
                .enumerate()
                .map(|(k, w)| IndependentEntry { h: w.edge.h, v: w.edge.v, rect: rects.map(|r| r[k]) })
                .collect(),
            cover_size: self.cover_size,
            verified: report.passed(),
            failures: report.failures.iter().map(|f| f.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentEntry {
    pub h: usize,
    pub v: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rect: Option<Rect>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub independent: Vec<IndependentEntry>,
    pub cover_size: usize,
    pub verified: bool,
    #[serde(default)]
    pub failures: Vec<String>,
}

impl CertificateFile {
    pub fn edges(&self) -> Vec<Edge> {
        self.independent.iter().map(|e| Edge::new(e.h, e.v)).collect()
    }
}

/// Replays `trace` backwards and returns `I_1`.
pub fn build_certificate(
    trace: &CoverTrace,
    order: &OrderIndex,
    geometry: Option<&RasterGraph>,
) -> Result<Certificate> {
    let mut kept: Vec<Witness> = Vec::new();
    for step in trace.steps.iter().rev() {
        let Some(t) = step.t_i else { continue };
        let e = Edge::new(t, step.s_i);
        if kept.iter().any(|w| order.r_dependent(w.edge, e)) {
            continue;
        }
        let branch = match step.action {
            StepAction::Skip => {
                return Err(Error::Internal(format!("step {} selected h{t} but did nothing", step.i)))
            }
            StepAction::Add(_) => Some(Branch::Add),
            StepAction::Replace { removed, .. } => {
                let covers = kept.iter().any(|w| semi_guard_covers(order, removed, w.edge));
                let below = kept.iter().any(|w| {
                    order.gamma_contains(Vertex::v(w.edge.v), removed.h)
                        && order.lt_ell(Vertex::h(removed.h), Vertex::h(w.edge.h))
                });
                match (covers, below) {
                    (true, true) => Some(Branch::Both),
                    (true, false) => Some(Branch::CoversKept),
                    (false, true) => Some(Branch::BelowKept),
                    (false, false) => None,
                }
            }
        };
        if let Some(branch) = branch {
            kept.push(Witness { edge: e, step: step.i, branch });
        }
    }
    if kept.len() != trace.w_final.len() {
        return Err(Error::Internal(format!(
            "certificate has {} edges but the cover has {} guards",
            kept.len(),
            trace.w_final.len()
        )));
    }
    let witness_pixels = geometry.map(|g| kept.iter().map(|w| g.pixel_rect(w.edge)).collect());
    Ok(Certificate { witnesses: kept, cover_size: trace.w_final.len(), witness_pixels })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateFailure {
    NotAnEdge(Edge),
    Dependent(Edge, Edge),
    SizeMismatch { independent: usize, cover: usize },
    InvalidGuard(Edge),
    Uncovered(Edge),
}

impl fmt::Display for CertificateFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateFailure::NotAnEdge(e) => write!(f, "{e} is not an edge"),
            CertificateFailure::Dependent(a, b) => write!(f, "{a} and {b} are r-dependent"),
            CertificateFailure::SizeMismatch { independent, cover } => {
                write!(f, "{independent} independent edges but {cover} guards")
            }
            CertificateFailure::InvalidGuard(e) => write!(f, "guard {e} is not an edge"),
            CertificateFailure::Uncovered(e) => write!(f, "{e} is not covered"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CertificateReport {
    pub failures: Vec<CertificateFailure>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks a claimed independent set against a cover without trusting either:
/// every listed edge exists, the edges are pairwise r-independent, there are
/// as many as guards, and the extracted guards cover the graph.
pub fn verify_certificate(independent: &[Edge], trace: &CoverTrace, order: &OrderIndex) -> CertificateReport {
    let mut failures = Vec::new();
    for &e in independent {
        if !order.is_edge(e) {
            failures.push(CertificateFailure::NotAnEdge(e));
        }
    }
    for (k, &a) in independent.iter().enumerate() {
        for &b in &independent[k + 1..] {
            if order.is_edge(a) && order.is_edge(b) && order.r_dependent(a, b) {
                failures.push(CertificateFailure::Dependent(a, b));
            }
        }
    }
    if independent.len() != trace.w_final.len() {
        failures.push(CertificateFailure::SizeMismatch {
            independent: independent.len(),
            cover: trace.w_final.len(),
        });
    }
    let guards = extract_guards(trace, order, None).edges();
    let cover = verify_cover(&guards, order);
    failures.extend(cover.invalid_guards.into_iter().map(CertificateFailure::InvalidGuard));
    failures.extend(cover.uncovered.into_iter().map(CertificateFailure::Uncovered));
    CertificateReport { failures }
}
