use crate::certificate::{build_certificate, verify_certificate, Certificate, CertificateReport};
use crate::error::{Error, Result};
use crate::geometry::{build_sparse_tpig, validate_polygon, Polygon, RasterGraph};
use crate::solver::{extract_guards, solve, verify_cover, CoverReport, CoverTrace, GuardSet};
use crate::tpig::{choose_roots, ChildOrder, OrderIndex, SparseTpig};

/// Everything computed for one instance: order index, sweep trace, guards
/// and certificate.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub raster: Option<RasterGraph>,
    pub tpig: SparseTpig,
    pub order: OrderIndex,
    pub trace: CoverTrace,
    pub guards: GuardSet,
    pub certificate: Certificate,
}

impl Pipeline {
    pub fn from_polygon(p: &Polygon) -> Result<Self> {
        Self::from_polygon_with(p, ChildOrder::Ascending)
    }

    pub fn from_polygon_with(p: &Polygon, child_order: ChildOrder) -> Result<Self> {
        let violations = validate_polygon(p);
        if !violations.is_empty() {
            return Err(Error::InvalidPolygon(violations));
        }
        let raster = build_sparse_tpig(p)?;
        Self::run(raster.tpig.clone(), Some(raster), child_order)
    }

    pub fn from_tpig(g: &SparseTpig) -> Result<Self> {
        Self::from_tpig_with(g, ChildOrder::Ascending)
    }

    pub fn from_tpig_with(g: &SparseTpig, child_order: ChildOrder) -> Result<Self> {
        let violations = g.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidTpig(violations));
        }
        Self::run(g.clone(), None, child_order)
    }

    fn run(tpig: SparseTpig, raster: Option<RasterGraph>, child_order: ChildOrder) -> Result<Self> {
        let order = OrderIndex::build(&tpig, choose_roots(&tpig), child_order);
        let trace = solve(&order)?;
        let guards = extract_guards(&trace, &order, raster.as_ref());
        let certificate = build_certificate(&trace, &order, raster.as_ref())?;
        Ok(Pipeline { raster, tpig, order, trace, guards, certificate })
    }

    pub fn cover_report(&self) -> CoverReport {
        verify_cover(&self.guards.edges(), &self.order)
    }

    pub fn certificate_report(&self) -> CertificateReport {
        verify_certificate(&self.certificate.edges(), &self.trace, &self.order)
    }
}
