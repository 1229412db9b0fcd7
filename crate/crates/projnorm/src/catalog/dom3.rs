//! Degree-of-mobility-3 test problems in the chart where `w = d/dX`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jets::{seed_point, Point2, RJet};
use crate::obstructions::{det_polynomial, dom3_assemble, dom3_det, dom3_poly, mu_scan, Dom3Det, Dom3Poly, MuScan};
use crate::projective::{connection_coeffs, liouville_from_metric, metrizability_system, ConnectionJet};
use crate::spectra::lie_matrix_recover;
use crate::tensorcalc::{congruence, DomainFn, LiouvilleSection, MetricField, MetricJet, VectorField};

use super::{CatalogEntry, FamilyId};

/// Linear chart `old = J new` in which the connection depends on `Y` only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dom3Chart {
    pub jacobian: [[f64; 2]; 2],
    /// `X` at which the y-samples are taken.
    pub eval_x: f64,
    pub y_samples: Vec<f64>,
}

impl Dom3Chart {
    /// `(x, y) = (X - Y, X + Y)`, used for the A-families.
    pub fn diagonal(y_samples: Vec<f64>) -> Self {
        Dom3Chart { jacobian: [[1.0, -1.0], [1.0, 1.0]], eval_x: 0.0, y_samples }
    }

    pub fn identity(y_samples: Vec<f64>) -> Self {
        Dom3Chart { jacobian: [[1.0, 0.0], [0.0, 1.0]], eval_x: 0.0, y_samples }
    }

    pub fn to_old(&self, p: Point2) -> Point2 {
        let j = &self.jacobian;
        Point2::new(j[0][0] * p.x + j[0][1] * p.y, j[1][0] * p.x + j[1][1] * p.y)
    }

    /// The metric `g` expressed in chart coordinates.
    pub fn pull(&self, g: &MetricField) -> MetricField {
        let j = self.jacobian;
        let g2 = g.clone();
        let gd = g.clone();
        let chart = self.clone();
        let dom: DomainFn = Arc::new(move |p| gd.in_domain(chart.to_old(p)));
        MetricField::from_fn(format!("chart({})", g.label), dom, move |x, y| {
            let xo = x * j[0][0] + y * j[0][1];
            let yo = x * j[1][0] + y * j[1][1];
            let m = g2.eval_jets(&xo, &yo)?;
            let c = |v: f64| RJet::constant(v, x.order());
            Ok(congruence(&m, &[[c(j[0][0]), c(j[0][1])], [c(j[1][0]), c(j[1][1])]]))
        })
    }
}

/// Chart and samples for the families that carry a dom-3 test.
pub fn dom3_chart(id: FamilyId) -> Option<Dom3Chart> {
    match id {
        FamilyId::GenAI => Some(Dom3Chart::diagonal(vec![0.13, 0.31, 0.47, 0.61])),
        FamilyId::GenAII => Some(Dom3Chart::diagonal(vec![0.2, 0.3, 0.5])),
        FamilyId::GenBI => Some(Dom3Chart::identity(vec![0.13, 0.31, 0.47, 0.61])),
        _ => None,
    }
}

/// Everything needed to scan or evaluate the dom-3 determinant of one class.
#[derive(Debug, Clone)]
pub struct Dom3Problem {
    pub family: FamilyId,
    pub chart: Dom3Chart,
    pub metric: MetricField,
    pub sections: Vec<LiouvilleSection>,
    /// Eigenvalues of `L_{d/dX}` on the generators; roots of `det M` for every class.
    pub trivial_roots: Vec<f64>,
    /// `h` of the A(II) particular solution, when the problem is inhomogeneous.
    pub inhomog_h: Option<f64>,
}

/// Builds the problem for an entry with a dom-3 chart.
pub fn dom3_problem(entry: &CatalogEntry) -> Result<Dom3Problem> {
    let chart = dom3_chart(entry.id)
        .ok_or_else(|| Error::InvalidParams(format!("{} has no dom-3 chart", entry.id)))?;
    let metric = chart.pull(&entry.generators[0]);
    let sections: Vec<LiouvilleSection> =
        entry.generators.iter().map(|g| liouville_from_metric(&chart.pull(g))).collect();
    let w = VectorField::affine("d/dX", 0.0, 1.0, 0.0, 0.0);
    let mut pts = Vec::new();
    for &y in &chart.y_samples {
        for dx in [-0.02, 0.0, 0.02] {
            pts.push(Point2::new(chart.eval_x + dx, y));
        }
    }
    let lm = lie_matrix_recover(&w, &sections, &pts)?;
    let mut trivial_roots: Vec<f64> = lm.eigenvalues().iter().map(|e| e.re).collect();
    trivial_roots.sort_by(f64::total_cmp);
    let inhomog_h = (entry.id == FamilyId::GenAII).then(|| entry.params.req("h"));
    Ok(Dom3Problem { family: entry.id, chart, metric, sections, trivial_roots, inhomog_h })
}

/// Particular section of the A(II) system in the diagonal chart, times `e^{-X}`.
fn a2_particular(h: f64, x: &RJet, y: &RJet) -> Result<MetricJet> {
    let p = (x - &y.scale(2.0)) * y.scale(-3.0).exp().scale(h);
    let q = (x + &y.scale(2.0)) * y.scale(3.0).exp();
    let pre = (x * &x.exp()).try_div(&y.pow_abs(1.0 / 3.0)?)?.scale(-1.0 / (8.0 * h.abs().powf(2.0 / 3.0)));
    let diag = &pre * &(&p + &q);
    Ok(MetricJet::new(diag.clone(), &pre * &(&p - &q), diag))
}

impl Dom3Problem {
    pub fn point(&self, y: f64) -> Point2 {
        Point2::new(self.chart.eval_x, y)
    }

    /// Projective connection of the chart metric, order 2.
    pub fn connection_at(&self, y: f64) -> Result<ConnectionJet> {
        connection_coeffs(&self.metric, self.point(y), 2)
    }

    /// Right-hand sides `b1..b4` of the particular part, if any.
    pub fn inhomog_at(&self, y: f64) -> Result<Option<[RJet; 4]>> {
        let Some(h) = self.inhomog_h else { return Ok(None) };
        let (xj, yj) = seed_point(self.point(y), 3);
        let a = a2_particular(h, &xj, &yj)?;
        let b = metrizability_system(&a, &self.connection_at(y)?)?;
        let damp = xj.truncate(2).scale(-1.0).exp();
        Ok(Some(b.map(|j| &j * &damp)))
    }

    pub fn poly_at(&self, y: f64) -> Result<Dom3Poly> {
        let inh = self.inhomog_at(y)?;
        dom3_poly(&self.connection_at(y)?, inh.as_ref())
    }

    /// Scan of the homogeneous determinant with the trivial roots divided out.
    pub fn scan(&self) -> Result<MuScan> {
        let polys = self
            .chart
            .y_samples
            .iter()
            .map(|&y| self.poly_at(y).map(|p| det_polynomial(&p)))
            .collect::<Result<Vec<_>>>()?;
        Ok(mu_scan(&polys, &self.trivial_roots))
    }

    /// Determinants at a fixed `mu` for every y-sample.
    pub fn at_mu(&self, mu: f64) -> Result<Vec<(f64, Dom3Det)>> {
        self.chart
            .y_samples
            .iter()
            .map(|&y| {
                let inh = self.inhomog_at(y)?;
                let sys = dom3_assemble(&self.connection_at(y)?, mu, inh.as_ref())?;
                Ok((y, dom3_det(&sys)))
            })
            .collect()
    }
}
