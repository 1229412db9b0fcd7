//! Projective connection, Liouville correspondence and metrizability.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jets::{seed_point, Point2, RJet};
use crate::tensorcalc::{DomainFn, LiouvilleSection, MetricField, MetricJet, SymJet};

/// Christoffel symbols, `gamma[k][i][j]` with `gamma[k][i][j] == gamma[k][j][i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChristoffelJet {
    pub gamma: [[[RJet; 2]; 2]; 2],
}

impl ChristoffelJet {
    pub fn get(&self, k: usize, i: usize, j: usize) -> &RJet {
        &self.gamma[k][i][j]
    }
}

/// Coefficients of `y'' = f0 + f1 y' + f2 y'^2 + f3 y'^3` at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionJet {
    pub f: [RJet; 4],
}

impl ConnectionJet {
    pub fn order(&self) -> usize {
        self.f[0].order()
    }

    pub fn truncate(&self, order: usize) -> ConnectionJet {
        ConnectionJet { f: self.f.clone().map(|j| j.truncate(order)) }
    }

    pub fn values(&self) -> [f64; 4] {
        [self.f[0].value(), self.f[1].value(), self.f[2].value(), self.f[3].value()]
    }

    /// Largest relative coefficient difference.
    pub fn rel_diff(&self, o: &ConnectionJet) -> f64 {
        let scale = self
            .f
            .iter()
            .chain(o.f.iter())
            .map(|j| j.max_abs())
            .fold(0.0, f64::max)
            .max(1.0);
        self.f.iter().zip(&o.f).map(|(a, b)| (a - b).max_abs()).fold(0.0, f64::max) / scale
    }
}

type ConnEval = Arc<dyn Fn(&RJet, &RJet) -> Result<ConnectionJet> + Send + Sync>;

/// Projective connection as a jet evaluator.
#[derive(Clone)]
pub struct ProjectiveConnection {
    evaluator: ConnEval,
    domain: DomainFn,
}

impl fmt::Debug for ProjectiveConnection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ProjectiveConnection")
    }
}

impl ProjectiveConnection {
    /// The connection of a metric; evaluation consumes one jet order.
    pub fn from_metric(g: &MetricField) -> Self {
        let g2 = g.clone();
        ProjectiveConnection {
            evaluator: Arc::new(move |x, y| connection_from_jet(&g2.eval_jets(x, y)?)),
            domain: g.domain(),
        }
    }

    pub fn from_fn<F>(domain: DomainFn, f: F) -> Self
    where
        F: Fn(&RJet, &RJet) -> Result<ConnectionJet> + Send + Sync + 'static,
    {
        ProjectiveConnection { evaluator: Arc::new(f), domain }
    }

    pub fn in_domain(&self, p: Point2) -> bool {
        p.is_finite() && (self.domain)(p)
    }

    /// Coefficients at `p` as jets of order `order`.
    pub fn eval(&self, p: Point2, order: usize) -> Result<ConnectionJet> {
        if !self.in_domain(p) {
            return Err(Error::OutOfDomain { x: p.x, y: p.y });
        }
        let (x, y) = seed_point(p, order + 1);
        (self.evaluator)(&x, &y)
    }

    pub fn values(&self, p: Point2) -> Result<[f64; 4]> {
        Ok(self.eval(p, 0)?.values())
    }
}

/// Christoffel symbols from a metric jet; the result has one order less.
pub fn christoffel_jet(g: &MetricJet) -> Result<ChristoffelJet> {
    let n = g.order().checked_sub(1).ok_or(Error::OrderExceeded { requested: 1, order: 0 })?;
    let gi = g.truncate(n).inv()?;
    // dg[l][i][j] = d_l g_ij
    let mut dg: Vec<Vec<Vec<RJet>>> = vec![vec![vec![RJet::zero(n); 2]; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let c = g.get(i, j);
            dg[0][i][j] = c.dx()?;
            dg[1][i][j] = c.dy()?;
        }
    }
    let comp = |k: usize, i: usize, j: usize| {
        let mut out = RJet::zero(n);
        for l in 0..2 {
            let t = &(&dg[i][j][l] + &dg[j][i][l]) - &dg[l][i][j];
            out = out + gi.get(k, l) * &t;
        }
        out.scale(0.5)
    };
    let gamma = [0, 1].map(|k| [0, 1].map(|i| [0, 1].map(|j| comp(k, i, j))));
    Ok(ChristoffelJet { gamma })
}

/// Christoffel symbols of `g` at `p` to order `order`.
pub fn christoffel(g: &MetricField, p: Point2, order: usize) -> Result<ChristoffelJet> {
    christoffel_jet(&g.eval(p, order + 1)?)
}

/// Projective connection coefficients from a Christoffel jet.
pub fn connection_from_christoffel(c: &ChristoffelJet) -> ConnectionJet {
    let g = |k: usize, i: usize, j: usize| c.get(k, i, j);
    ConnectionJet {
        f: [
            -g(1, 0, 0),
            g(0, 0, 0) - &g(1, 0, 1).scale(2.0),
            -(g(1, 1, 1) - &g(0, 0, 1).scale(2.0)),
            g(0, 1, 1).clone(),
        ],
    }
}

pub fn connection_from_jet(g: &MetricJet) -> Result<ConnectionJet> {
    Ok(connection_from_christoffel(&christoffel_jet(g)?))
}

pub fn connection_coeffs(g: &MetricField, p: Point2, order: usize) -> Result<ConnectionJet> {
    connection_from_jet(&g.eval(p, order + 1)?)
}

/// `a = g / |det g|^{2/3}` at the jet level.
pub fn liouville_jet(g: &MetricJet) -> Result<SymJet> {
    let d = g.det();
    if d.value() == 0.0 {
        return Err(Error::SingularMetric);
    }
    let s = d.pow_abs(-2.0 / 3.0).map_err(|_| Error::SingularMetric)?;
    Ok(g.scale_jet(&s))
}

/// `g = a / det(a)^2` at the jet level.
pub fn metric_jet_from_liouville(a: &SymJet) -> Result<MetricJet> {
    let d = a.det();
    let scale = a.values().iter().flatten().map(|v| v.abs()).fold(0.0, f64::max);
    if d.value() == 0.0 || d.value().abs() < 1e-300 * scale.max(1.0) {
        return Err(Error::DegenerateSection);
    }
    let r = (&d * &d).recip().map_err(|_| Error::DegenerateSection)?;
    Ok(a.scale_jet(&r))
}

/// The section `psi^{-1}(g)`.
pub fn liouville_from_metric(g: &MetricField) -> LiouvilleSection {
    let g2 = g.clone();
    LiouvilleSection::new(
        format!("psi^-1({})", g.label),
        g.domain(),
        Arc::new(move |x, y| liouville_jet(&g2.eval_jets(x, y)?)),
    )
}

/// The metric `psi(a)`.
pub fn metric_from_liouville(a: &LiouvilleSection) -> MetricField {
    let a2 = a.clone();
    let a3 = a.clone();
    let domain: DomainFn = Arc::new(move |p| {
        a3.in_domain(p) && a3.eval(p, 0).map(|s| s.det().value() != 0.0).unwrap_or(false)
    });
    MetricField::from_fn(format!("psi({})", a.label), domain, move |x, y| {
        metric_jet_from_liouville(&a2.eval_jets(x, y)?)
    })
}

/// Jet-valued left-hand sides of the metrizability system.
pub fn metrizability_system(a: &SymJet, conn: &ConnectionJet) -> Result<[RJet; 4]> {
    Ok(metrizability_terms(a, conn)?.map(|terms| {
        let mut it = terms.into_iter();
        let first = it.next().expect("nonempty");
        it.fold(first, |acc, t| acc + t)
    }))
}

/// The summands of each of the four equations, as jets of order `a.order() - 1`.
pub fn metrizability_terms(a: &SymJet, conn: &ConnectionJet) -> Result<[Vec<RJet>; 4]> {
    let n = a.order().checked_sub(1).ok_or(Error::OrderExceeded { requested: 1, order: 0 })?;
    if conn.order() < n {
        return Err(Error::OrderExceeded { requested: n, order: conn.order() });
    }
    let f = conn.truncate(n).f;
    let at = a.truncate(n);
    let (a11, a12, a22) = (&at.g11, &at.g12, &at.g22);
    let t = 2.0 / 3.0;
    Ok([
        vec![a.g11.dx()?, (&f[1] * a11).scale(-t), (&f[0] * a12).scale(2.0)],
        vec![
            a.g11.dy()?,
            a.g12.dx()?.scale(2.0),
            (&f[2] * a11).scale(-2.0 * t),
            (&f[1] * a12).scale(t),
            (&f[0] * a22).scale(2.0),
        ],
        vec![
            a.g12.dy()?.scale(2.0),
            a.g22.dx()?,
            (&f[3] * a11).scale(-2.0),
            (&f[2] * a12).scale(-t),
            (&f[1] * a22).scale(2.0 * t),
        ],
        vec![a.g22.dy()?, (&f[3] * a12).scale(-2.0), (&f[2] * a22).scale(t)],
    ])
}

/// The four residuals at the base point, each divided by `max(1, largest |summand|)`.
pub fn metrizability_residuals(a: &SymJet, conn: &ConnectionJet) -> Result<[f64; 4]> {
    let a1 = if a.order() > 1 { a.truncate(1) } else { a.clone() };
    let terms = metrizability_terms(&a1, conn)?;
    Ok(terms.map(|ts| {
        let sum: f64 = ts.iter().map(|t| t.value()).sum();
        let scale = ts.iter().map(|t| t.value().abs()).fold(1.0, f64::max);
        sum.abs() / scale
    }))
}

/// Residuals of a section against a connection at a point.
pub fn metrizability_residuals_at(
    a: &LiouvilleSection,
    conn: &ProjectiveConnection,
    p: Point2,
) -> Result<[f64; 4]> {
    metrizability_residuals(&a.eval(p, 1)?, &conn.eval(p, 0)?)
}

/// Linear combination `sum K_i a_i` as a section, with the degeneracy guard.
pub fn combination_section(generators: &[LiouvilleSection], k: &[f64]) -> Result<LiouvilleSection> {
    if generators.is_empty() || generators.len() != k.len() || k.iter().all(|&c| c == 0.0) {
        return Err(Error::DegenerateCombination);
    }
    let gens = generators.to_vec();
    let gens_d = generators.to_vec();
    let coeffs = k.to_vec();
    let coeffs_d = k.to_vec();
    let domain: DomainFn = Arc::new(move |p| {
        gens_d.iter().zip(&coeffs_d).all(|(g, &c)| c == 0.0 || g.in_domain(p))
    });
    let label = format!("K={:?}", k);
    Ok(LiouvilleSection::new(label, domain, Arc::new(move |x, y| {
        let mut acc: Option<SymJet> = None;
        let mut scale: f64 = 0.0;
        for (g, &c) in gens.iter().zip(&coeffs) {
            if c == 0.0 {
                continue;
            }
            let a = g.eval_jets(x, y)?.scale(c);
            scale = scale.max(a.values().iter().flatten().map(|v| v.abs()).fold(0.0, f64::max));
            acc = Some(match acc {
                None => a,
                Some(s) => s.add(&a),
            });
        }
        let s = acc.ok_or(Error::DegenerateCombination)?;
        if s.det().value().abs() < 1e-12 * scale * scale {
            return Err(Error::DegenerateCombination);
        }
        Ok(s)
    })))
}

/// `g[K] = psi(sum K_i a_i)`.
pub fn class_combination(generators: &[LiouvilleSection], k: &[f64]) -> Result<MetricField> {
    let s = combination_section(generators, k)?;
    let s2 = s.clone();
    Ok(MetricField::from_fn(format!("g[{}]", s.label), Arc::new(move |p| s2.in_domain(p)), move |x, y| {
        metric_jet_from_liouville(&s.eval_jets(x, y)?)
    }))
}

/// Result of a geodesic integration.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPath {
    pub points: Vec<Point2>,
    pub slopes: Vec<f64>,
    /// Set when the trajectory stopped early at the domain boundary.
    pub hit_boundary: bool,
}

/// Largest slope accepted by the x-parametrized integrator.
pub const MAX_SLOPE: f64 = 1e3;

/// RK4 on `y'' = f0 + f1 y' + f2 y'^2 + f3 y'^3` with `x` as the parameter.
pub fn integrate_geodesic(
    conn: &ProjectiveConnection,
    start: Point2,
    slope: f64,
    step: f64,
    n: usize,
) -> Result<GeodesicPath> {
    if !conn.in_domain(start) {
        return Err(Error::OutOfDomain { x: start.x, y: start.y });
    }
    if !slope.is_finite() || slope.abs() > MAX_SLOPE {
        return Err(Error::DomainError(format!("slope {slope} too steep for the x chart")));
    }
    let rhs = |x: f64, y: f64, p: f64| -> Option<(f64, f64)> {
        let pt = Point2::new(x, y);
        if !conn.in_domain(pt) {
            return None;
        }
        let f = conn.values(pt).ok()?;
        let acc = f[0] + p * (f[1] + p * (f[2] + p * f[3]));
        acc.is_finite().then_some((p, acc))
    };
    let mut points = vec![start];
    let mut slopes = vec![slope];
    let (mut x, mut y, mut p) = (start.x, start.y, slope);
    for _ in 0..n {
        let h = step;
        let stage = (|| {
            let k1 = rhs(x, y, p)?;
            let k2 = rhs(x + h / 2.0, y + h / 2.0 * k1.0, p + h / 2.0 * k1.1)?;
            let k3 = rhs(x + h / 2.0, y + h / 2.0 * k2.0, p + h / 2.0 * k2.1)?;
            let k4 = rhs(x + h, y + h * k3.0, p + h * k3.1)?;
            Some((
                y + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
                p + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
            ))
        })();
        match stage {
            Some((ny, np)) if np.abs() <= MAX_SLOPE && conn.in_domain(Point2::new(x + h, ny)) => {
                x += h;
                y = ny;
                p = np;
                points.push(Point2::new(x, y));
                slopes.push(p);
            }
            _ => return Ok(GeodesicPath { points, slopes, hit_boundary: true }),
        }
    }
    Ok(GeodesicPath { points, slopes, hit_boundary: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn everywhere() -> DomainFn {
        Arc::new(|_| true)
    }

    fn flat() -> MetricField {
        MetricField::from_fn("flat", everywhere(), |x, _| {
            let n = x.order();
            Ok(MetricJet::new(RJet::constant(1.0, n), RJet::zero(n), RJet::constant(1.0, n)))
        })
    }

    fn conformal_exp() -> MetricField {
        MetricField::from_fn("e2x", everywhere(), |x, _| {
            let e = x.scale(2.0).exp();
            Ok(MetricJet::new(e.clone(), RJet::zero(x.order()), e))
        })
    }

    fn split() -> MetricField {
        MetricField::from_fn("split", Arc::new(|p: Point2| p.x != p.y), |x, y| {
            let s = x - y;
            Ok(MetricJet::new(s.clone(), RJet::zero(x.order()), -s))
        })
    }

    #[test]
    fn christoffel_oracles() {
        let c = christoffel(&flat(), Point2::new(0.3, 0.1), 2).unwrap();
        assert!(c.gamma.iter().flatten().flatten().all(|j| j.max_abs() == 0.0));

        let c = christoffel(&conformal_exp(), Point2::new(0.4, -0.7), 2).unwrap();
        let expect = [[[1.0, 0.0], [0.0, -1.0]], [[0.0, 1.0], [1.0, 0.0]]];
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    let g = c.get(k, i, j);
                    assert_relative_eq!(g.value(), expect[k][i][j], epsilon = 1e-14);
                    assert!(g.coeffs()[1..].iter().all(|v| v.abs() < 1e-13));
                }
            }
        }

        let c = christoffel(&split(), Point2::new(2.0, 1.0), 1).unwrap();
        let v = |k, i, j| c.get(k, i, j).value();
        for (k, i, j) in [(0, 0, 0), (0, 1, 1), (1, 0, 1)] {
            assert_relative_eq!(v(k, i, j), 0.5, epsilon = 1e-15);
        }
        for (k, i, j) in [(0, 0, 1), (1, 0, 0), (1, 1, 1)] {
            assert_relative_eq!(v(k, i, j), -0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn connection_oracles() {
        let f = connection_coeffs(&flat(), Point2::new(1.0, 2.0), 3).unwrap();
        assert!(f.f.iter().all(|j| j.max_abs() == 0.0));
        let f = connection_coeffs(&conformal_exp(), Point2::new(0.2, 0.5), 0).unwrap();
        let v = f.values();
        for (a, b) in v.iter().zip([0.0, -1.0, 0.0, -1.0]) {
            assert_relative_eq!(*a, b, epsilon = 1e-14);
        }
        let p = Point2::new(2.3, 0.4);
        let s = 1.0 / (2.0 * (p.x - p.y));
        let v = connection_coeffs(&split(), p, 0).unwrap().values();
        for (a, b) in v.iter().zip([s, -s, -s, s]) {
            assert_relative_eq!(*a, b, epsilon = 1e-14);
        }
    }

    #[test]
    fn liouville_round_trip() {
        let a = liouville_from_metric(&flat()).eval(Point2::new(0.0, 0.0), 2).unwrap();
        assert_relative_eq!(a.g11.value(), 1.0);
        assert_relative_eq!(a.g22.value(), 1.0);
        let d41 = MetricField::from_fn("d41", everywhere(), |x, _| {
            let n = x.order();
            Ok(MetricJet::new(RJet::constant(4.0, n), RJet::zero(n), RJet::constant(1.0, n)))
        });
        let a = liouville_from_metric(&d41);
        let av = a.eval(Point2::new(0.0, 0.0), 1).unwrap();
        assert_relative_eq!(av.g11.value(), 4f64.powf(1.0 / 3.0), epsilon = 1e-15);
        assert_relative_eq!(av.g22.value(), 4f64.powf(-2.0 / 3.0), epsilon = 1e-15);
        let back = metric_from_liouville(&a).eval(Point2::new(0.0, 0.0), 1).unwrap();
        assert_relative_eq!(back.g11.value(), 4.0, epsilon = 1e-14);
        assert_relative_eq!(back.g22.value(), 1.0, epsilon = 1e-14);

        let g = MetricField::from_fn("g", everywhere(), |x, y| {
            Ok(MetricJet::new(x.exp() + 2.0, x * y, y.cos() + 3.0))
        });
        let p = Point2::new(0.3, 0.9);
        let rt = metric_from_liouville(&liouville_from_metric(&g)).eval(p, 2).unwrap();
        assert!(rt.rel_diff(&g.eval(p, 2).unwrap()) < 1e-12);
    }

    #[test]
    fn self_metrizability_and_sensitivity() {
        let g = MetricField::from_fn("g", everywhere(), |x, y| {
            Ok(MetricJet::new(x.exp() + 2.0, (x * y).scale(0.3), y.cos() + 3.0))
        });
        let a = liouville_from_metric(&g);
        let conn = ProjectiveConnection::from_metric(&g);
        let p = Point2::new(0.1, -0.4);
        let r = metrizability_residuals_at(&a, &conn, p).unwrap();
        assert!(r.iter().all(|&v| v < 1e-13), "{r:?}");
        let mut av = a.eval(p, 1).unwrap();
        av.g11 = &av.g11 + 0.1;
        let r = metrizability_residuals(&av, &conn.eval(p, 0).unwrap()).unwrap();
        assert!(r.iter().any(|&v| v > 1e-3));
    }

    #[test]
    fn combinations() {
        let g1 = conformal_exp();
        let g2 = MetricField::from_fn("g", everywhere(), |x, y| {
            Ok(MetricJet::new(x.exp() + 2.0, (x * y).scale(0.3), y.cos() + 3.0))
        });
        let gens = [liouville_from_metric(&g1), liouville_from_metric(&g2)];
        let p = Point2::new(0.2, 0.1);
        let c = class_combination(&gens, &[1.0, 0.0]).unwrap().eval(p, 2).unwrap();
        assert!(c.rel_diff(&g1.eval(p, 2).unwrap()) < 1e-14);
        let c = class_combination(&gens, &[0.0, 1.0]).unwrap().eval(p, 2).unwrap();
        assert!(c.rel_diff(&g2.eval(p, 2).unwrap()) < 1e-14);
        assert_eq!(class_combination(&gens, &[0.0, 0.0]).unwrap_err(), Error::DegenerateCombination);
        // a = a1 - a1 is degenerate everywhere
        let same = [gens[0].clone(), gens[0].clone()];
        let m = class_combination(&same, &[1.0, -1.0]).unwrap();
        assert_eq!(m.eval(p, 1).unwrap_err(), Error::DegenerateCombination);
    }

    #[test]
    fn straight_geodesics() {
        let conn = ProjectiveConnection::from_metric(&flat());
        let path = integrate_geodesic(&conn, Point2::new(0.5, 1.0), 0.5, 0.1, 20).unwrap();
        assert!(!path.hit_boundary);
        for q in &path.points {
            assert!((q.y - (1.0 + 0.5 * (q.x - 0.5))).abs() < 1e-12);
        }
        assert!(integrate_geodesic(&conn, Point2::new(0.0, 0.0), 2e3, 0.1, 2).is_err());
    }

    #[test]
    fn geodesic_stops_at_boundary() {
        let half = MetricField::from_fn("half", Arc::new(|p: Point2| p.x < 1.0), |x, _| {
            let n = x.order();
            Ok(MetricJet::new(RJet::constant(1.0, n), RJet::zero(n), RJet::constant(1.0, n)))
        });
        let conn = ProjectiveConnection::from_metric(&half);
        let path = integrate_geodesic(&conn, Point2::new(0.0, 0.0), 1.0, 0.3, 10).unwrap();
        assert!(path.hit_boundary);
        assert_eq!(path.points.len(), 4);
        assert!(matches!(
            integrate_geodesic(&conn, Point2::new(2.0, 0.0), 1.0, 0.3, 10),
            Err(Error::OutOfDomain { .. })
        ));
    }

    // Closed form for y'' = -y' - y'^3 (the connection of e^{2x}(dx^2+dy^2)).
    fn exp_geodesic(x0: f64, y0: f64, p0: f64, x: f64) -> f64 {
        let a = 1.0 / (p0 * p0) + 1.0;
        let u = |s: f64| (a * (2.0 * s).exp() - 1.0).sqrt();
        y0 + p0.signum() * (u(x - x0).atan() - u(0.0).atan())
    }

    #[test]
    fn rk4_order_on_conformal_metric() {
        let conn = ProjectiveConnection::from_metric(&conformal_exp());
        let (x0, y0, p0) = (0.0, 0.0, 0.8);
        let err = |n: usize| {
            let path = integrate_geodesic(&conn, Point2::new(x0, y0), p0, 1.0 / n as f64, n).unwrap();
            let end = *path.points.last().unwrap();
            (end.y - exp_geodesic(x0, y0, p0, end.x)).abs()
        };
        let (e1, e2) = (err(10), err(20));
        let ratio = e1 / e2;
        assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
    }
}
