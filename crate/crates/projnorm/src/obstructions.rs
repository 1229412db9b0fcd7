//! Killing-field obstruction and the degree-of-mobility-3 matrix obstruction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jets::{seed_point, Point2, RJet};
use crate::projective::{christoffel_jet, ConnectionJet};
use crate::tensorcalc::{lie_derivative, MetricField, MetricJet, VectorField};

/// Scalar curvature of a metric jet; the result has two orders less.
pub fn scalar_curvature_jet(g: &MetricJet) -> Result<RJet> {
    if g.order() < 2 {
        return Err(Error::OrderExceeded { requested: 2, order: g.order() });
    }
    let n = g.order() - 2;
    let c = christoffel_jet(g)?;
    let gi = g.truncate(n).inv()?;
    let gam = |a: usize, b: usize, d: usize| c.get(a, b, d).truncate(n);
    let d = |a: usize, b: usize, e: usize, by: usize| -> Result<RJet> {
        let j = c.get(a, b, e);
        if by == 0 {
            j.dx()
        } else {
            j.dy()
        }
    };
    // R^a_{bcd} = d_c G^a_{db} - d_d G^a_{cb} + G^a_{ce} G^e_{db} - G^a_{de} G^e_{cb}
    let ricci = |b: usize, dd: usize| -> Result<RJet> {
        let mut out = RJet::zero(n);
        for a in 0..2 {
            out = out + d(a, dd, b, a)? - d(a, a, b, dd)?;
            for e in 0..2 {
                out = out + gam(a, a, e) * gam(e, dd, b) - gam(a, dd, e) * gam(e, a, b);
            }
        }
        Ok(out)
    };
    let r = &gi.g11 * &ricci(0, 0)? + (&gi.g12 * &ricci(0, 1)?).scale(2.0) + &gi.g22 * &ricci(1, 1)?;
    Ok(r)
}

pub fn scalar_curvature(g: &MetricField, p: Point2, order: usize) -> Result<RJet> {
    scalar_curvature_jet(&g.eval(p, order + 2)?)
}

/// Curvature quantities entering the Killing obstruction.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureData {
    /// Scalar curvature, order 2.
    pub r: RJet,
    /// `g(dR, dR)`, order 1.
    pub ell: RJet,
    /// `R_x ell_y - R_y ell_x`.
    pub e: f64,
    /// `max(1, |R_x ell_y| + |R_y ell_x|)`.
    pub scale: f64,
}

impl CurvatureData {
    pub fn relative(&self) -> f64 {
        self.e.abs() / self.scale
    }
}

pub fn killing_obstruction_jet(g: &MetricJet) -> Result<CurvatureData> {
    if g.order() < 4 {
        return Err(Error::OrderExceeded { requested: 4, order: g.order() });
    }
    let g = g.truncate(4);
    let r = scalar_curvature_jet(&g)?;
    let (rx, ry) = (r.dx()?, r.dy()?);
    let gi = g.truncate(1).inv()?;
    let ell = &gi.g11 * &rx * &rx + (&gi.g12 * &rx * &ry).scale(2.0) + &gi.g22 * &ry * &ry;
    let (a, b) = (rx.value() * ell.coeff(0, 1), ry.value() * ell.coeff(1, 0));
    Ok(CurvatureData { r, ell, e: a - b, scale: (a.abs() + b.abs()).max(1.0) })
}

/// The functional `E` at `p`.
pub fn killing_obstruction(g: &MetricField, p: Point2) -> Result<CurvatureData> {
    killing_obstruction_jet(&g.eval(p, 4)?)
}

/// `3 Y''' Y' - 5 Y''^2` for a jet in the y variable.
pub fn jordan_killing_reduction(y: &RJet) -> Result<f64> {
    let (d1, d2, d3) = (y.derivative(0, 1)?, y.derivative(0, 2)?, y.derivative(0, 3)?);
    Ok(3.0 * d3 * d1 - 5.0 * d2 * d2)
}

/// Largest `|L_v g| / |g|` over the samples (max-norms of the component values).
pub fn killing_residual(g: &MetricField, v: &VectorField, points: &[Point2]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &p in points {
        let (x, y) = seed_point(p, 1);
        let gj = g.eval_jets(&x, &y)?;
        let l = lie_derivative(&gj, &v.eval_jets(&x, &y)?, 0.0)?;
        let gs = gj.values().iter().flatten().map(|c| c.abs()).fold(f64::MIN_POSITIVE, f64::max);
        worst = worst.max(l.max_abs() / gs);
    }
    Ok(worst)
}

/// Polynomial in `mu` with jet coefficients, lowest power first.
type MuPoly = Vec<RJet>;

fn poly_add(a: &MuPoly, b: &MuPoly) -> MuPoly {
    let n = a.len().max(b.len());
    let ord = a.first().or(b.first()).map(|j| j.order()).unwrap_or(0);
    (0..n)
        .map(|k| match (a.get(k), b.get(k)) {
            (Some(p), Some(q)) => p + q,
            (Some(p), None) => p.clone(),
            (None, Some(q)) => q.clone(),
            (None, None) => RJet::zero(ord),
        })
        .collect()
}

fn poly_mul(a: &MuPoly, b: &MuPoly) -> MuPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let ord = a[0].order().min(b[0].order());
    let mut out = vec![RJet::zero(ord); a.len() + b.len() - 1];
    for (i, p) in a.iter().enumerate() {
        for (j, q) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(&p.truncate(ord) * &q.truncate(ord));
        }
    }
    out
}

fn poly_dy(a: &MuPoly) -> Result<MuPoly> {
    a.iter().map(|j| j.dy()).collect()
}

fn poly_truncate(a: &MuPoly, ord: usize) -> MuPoly {
    a.iter().map(|j| j.truncate(ord)).collect()
}

/// `row' + row * S` for a row of three polynomials.
fn propagate(row: &[MuPoly; 3], s: &[[MuPoly; 3]; 3]) -> Result<[MuPoly; 3]> {
    let ord = row[0][0].order() - 1;
    let mut out: [MuPoly; 3] = Default::default();
    for j in 0..3 {
        let mut acc = poly_dy(&row[j])?;
        for k in 0..3 {
            let sk = poly_truncate(&s[k][j], ord);
            acc = poly_add(&acc, &poly_mul(&poly_truncate(&row[k], ord), &sk));
        }
        out[j] = acc;
    }
    Ok(out)
}

fn dot_const(row: &[MuPoly; 3], s0: &[RJet; 3]) -> MuPoly {
    let ord = row[0][0].order();
    let mut acc: MuPoly = vec![RJet::zero(ord)];
    for k in 0..3 {
        acc = poly_add(&acc, &poly_mul(&row[k], &vec![s0[k].truncate(ord)]));
    }
    acc
}

fn poly_values(a: &MuPoly) -> Vec<f64> {
    a.iter().map(|j| j.value()).collect()
}

/// Evaluates a real polynomial, lowest power first.
pub fn poly_eval(c: &[f64], mu: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * mu + k)
}

/// `sum |c_k| |mu|^k`, the natural scale of a polynomial value.
pub fn poly_scale(c: &[f64], mu: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * mu.abs() + k.abs())
}

fn poly_mul_f(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, p) in a.iter().enumerate() {
        for (j, q) in b.iter().enumerate() {
            out[i + j] += p * q;
        }
    }
    out
}

/// Divides by `prod (mu - r_i)`; returns the quotient and the largest
/// remainder coefficient relative to the largest input coefficient.
pub fn deflate(c: &[f64], roots: &[f64]) -> (Vec<f64>, f64) {
    let mut q = c.to_vec();
    let scale = c.iter().map(|v| v.abs()).fold(f64::MIN_POSITIVE, f64::max);
    let mut rem: f64 = 0.0;
    for &r in roots {
        if q.len() < 2 {
            break;
        }
        // synthetic division, highest power first
        let n = q.len() - 1;
        let mut out = vec![0.0; n];
        let mut acc = q[n];
        for k in (0..n).rev() {
            out[k] = acc;
            acc = q[k] + acc * r;
        }
        rem = rem.max(acc.abs() / scale);
        q = out;
    }
    (q, rem)
}

/// The derive-and-substitute system at one point, as polynomials in `mu`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dom3Poly {
    /// `rows[i][j]` is the polynomial entry `M_ij(mu)`.
    pub rows: [[Vec<f64>; 3]; 3],
    /// Inhomogeneous right-hand side `-c(mu)`, when present.
    pub rhs: Option<[Vec<f64>; 3]>,
}

/// System (M | b) at a fixed `mu`, with the substitution matrix kept as jets.
#[derive(Debug, Clone, PartialEq)]
pub struct Dom3System {
    pub mu: f64,
    pub m: [[f64; 3]; 3],
    pub b: Option<[f64; 3]>,
    pub s: [[RJet; 3]; 3],
}

fn substitution(f: &[RJet; 4]) -> [[MuPoly; 3]; 3] {
    let ord = f[0].order();
    let z = || RJet::zero(ord);
    let one = RJet::constant(1.0, ord);
    let t = 2.0 / 3.0;
    [
        [vec![f[2].scale(4.0 / 3.0)], vec![f[1].scale(-t), one.scale(-2.0)], vec![f[0].scale(-2.0)]],
        [vec![f[3].clone()], vec![f[2].scale(1.0 / 3.0)], vec![f[1].scale(-t), one.scale(-0.5)]],
        [vec![z()], vec![f[3].scale(2.0)], vec![f[2].scale(-t)]],
    ]
}

/// Assembles the system as polynomials in `mu`.
///
/// `f` must be x-independent (the chart with `w = d/dx`) and available to
/// order 2 in y. `inhomog` carries the four equation values `b1..b4` of the
/// particular part, also to order 2.
pub fn dom3_poly(f: &ConnectionJet, inhomog: Option<&[RJet; 4]>) -> Result<Dom3Poly> {
    if f.order() < 2 {
        return Err(Error::OrderExceeded { requested: 2, order: f.order() });
    }
    let fj = f.truncate(2).f;
    let s = substitution(&fj);
    let t = 2.0 / 3.0;
    let r1: [MuPoly; 3] = [
        vec![fj[1].scale(-t), RJet::constant(1.0, 2)],
        vec![fj[0].scale(2.0)],
        vec![RJet::zero(2)],
    ];
    let r2 = propagate(&r1, &s)?;
    let r3 = propagate(&r2, &s)?;
    let rows = [
        r1.clone().map(|p| poly_values(&p)),
        r2.clone().map(|p| poly_values(&p)),
        r3.map(|p| poly_values(&p)),
    ];
    let rhs = match inhomog {
        None => None,
        Some(b) => {
            if b.iter().any(|j| j.order() < 2) {
                return Err(Error::OrderExceeded { requested: 2, order: 1 });
            }
            let b: Vec<RJet> = b.iter().map(|j| j.truncate(2)).collect();
            let s0 = [-&b[1], b[2].scale(-0.5), -&b[3]];
            let c1: MuPoly = vec![b[0].clone()];
            let c2 = poly_add(&poly_dy(&c1)?, &poly_truncate(&dot_const(&r1, &s0), 1));
            let c3 = poly_add(&poly_dy(&c2)?, &poly_truncate(&dot_const(&r2, &s0.clone().map(|j| j.truncate(1))), 0));
            Some([c1, c2, c3].map(|c| poly_values(&c).iter().map(|v| -v).collect()))
        }
    };
    Ok(Dom3Poly { rows, rhs })
}

/// The system at a fixed `mu`.
pub fn dom3_assemble(f: &ConnectionJet, mu: f64, inhomog: Option<&[RJet; 4]>) -> Result<Dom3System> {
    let poly = dom3_poly(f, inhomog)?;
    let fj = f.truncate(2).f;
    let s = substitution(&fj).map(|row| {
        row.map(|p| p.iter().enumerate().fold(RJet::zero(2), |acc, (k, j)| acc + j.scale(mu.powi(k as i32))))
    });
    Ok(Dom3System {
        mu,
        m: poly.rows.clone().map(|r| r.map(|c| poly_eval(&c, mu))),
        b: poly.rhs.map(|r| r.map(|c| poly_eval(&c, mu))),
        s,
    })
}

/// Determinants of the assembled system with their natural scales.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dom3Det {
    pub det_m: f64,
    /// Product of the row norms of M (Hadamard bound).
    pub det_m_scale: f64,
    /// `det(m2, m3, b)` for the inhomogeneous system.
    pub det_b: Option<f64>,
    /// Product of the column norms of `(m2, m3, b)`.
    pub det_b_scale: Option<f64>,
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn dom3_det(sys: &Dom3System) -> Dom3Det {
    let m = &sys.m;
    let det_m = det3(m);
    let det_m_scale = m.iter().map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt()).product();
    let (det_b, det_b_scale) = match sys.b {
        None => (None, None),
        Some(b) => {
            let bm = [[m[0][1], m[0][2], b[0]], [m[1][1], m[1][2], b[1]], [m[2][1], m[2][2], b[2]]];
            let col = |j: usize| (0..3).map(|i| bm[i][j] * bm[i][j]).sum::<f64>().sqrt();
            (Some(det3(&bm)), Some(col(0) * col(1) * col(2)))
        }
    };
    Dom3Det { det_m, det_m_scale, det_b, det_b_scale }
}

/// `det M(mu)` as a polynomial (degree at most 6), lowest power first.
pub fn det_polynomial(poly: &Dom3Poly) -> Vec<f64> {
    let r = &poly.rows;
    let term = |a: &[f64], b: &[f64], c: &[f64]| poly_mul_f(&poly_mul_f(a, b), c);
    let mut out = vec![0.0; 7];
    let perms: [([usize; 3], f64); 6] = [
        ([0, 1, 2], 1.0),
        ([1, 2, 0], 1.0),
        ([2, 0, 1], 1.0),
        ([0, 2, 1], -1.0),
        ([2, 1, 0], -1.0),
        ([1, 0, 2], -1.0),
    ];
    for (p, sign) in perms {
        let t = term(&r[0][p[0]], &r[1][p[1]], &r[2][p[2]]);
        for (k, v) in t.iter().enumerate() {
            out[k] += sign * v;
        }
    }
    while out.len() > 1 && *out.last().unwrap() == 0.0 {
        out.pop();
    }
    out
}

/// A candidate `mu` at which the deflated determinant vanishes for all samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MuRoot {
    pub mu: f64,
    /// Largest normalized deflated determinant over the y-samples.
    pub max_ratio: f64,
}

/// Outcome of the `mu` scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MuScan {
    pub accepted: Vec<MuRoot>,
    /// Smallest over the grid of the largest normalized value over samples.
    pub min_ratio: f64,
    pub argmin_mu: f64,
    /// Largest deflation remainder, relative (should be at rounding level).
    pub deflation_remainder: f64,
}

pub const MU_MIN: f64 = -5.0;
pub const MU_MAX: f64 = 5.0;
pub const MU_STEP: f64 = 1e-2;
pub const ROOT_ACCEPT: f64 = 1e-7;

/// Scans `mu` for common zeros of the deflated determinant across y-samples.
///
/// `polys` are the determinant polynomials at the sample points;
/// `trivial` are the eigenvalues of `L_w` on the known generators, which are
/// roots for every parameter choice and are divided out first.
pub fn mu_scan(polys: &[Vec<f64>], trivial: &[f64]) -> MuScan {
    let mut rem: f64 = 0.0;
    let defl: Vec<Vec<f64>> = polys
        .iter()
        .map(|p| {
            let (q, r) = deflate(p, trivial);
            rem = rem.max(r);
            q
        })
        .collect();
    let ratio = |q: &[f64], mu: f64| poly_eval(q, mu).abs() / poly_scale(q, mu).max(f64::MIN_POSITIVE);
    let worst = |mu: f64| defl.iter().map(|q| ratio(q, mu)).fold(0.0, f64::max);
    let signed = |mu: f64| poly_eval(&defl[0], mu);

    let n = ((MU_MAX - MU_MIN) / MU_STEP).round() as usize;
    let grid: Vec<f64> = (0..=n).map(|k| MU_MIN + k as f64 * MU_STEP).collect();
    let vals: Vec<f64> = grid.iter().map(|&m| worst(m)).collect();
    let (mut min_ratio, mut argmin_mu) = (f64::INFINITY, 0.0);
    for (&m, &v) in grid.iter().zip(&vals) {
        if v < min_ratio {
            min_ratio = v;
            argmin_mu = m;
        }
    }

    let mut candidates = Vec::new();
    for k in 0..n {
        let (a, b) = (grid[k], grid[k + 1]);
        let (fa, fb) = (signed(a), signed(b));
        if fa == 0.0 {
            candidates.push(a);
        } else if fa * fb < 0.0 {
            candidates.push(bisect(&signed, a, b));
        }
    }
    // local minima catch roots of even multiplicity
    for k in 1..n {
        if vals[k] <= vals[k - 1] && vals[k] <= vals[k + 1] {
            candidates.push(golden_min(&worst, grid[k - 1], grid[k + 1]));
        }
    }
    let mut accepted: Vec<MuRoot> = Vec::new();
    for mu in candidates {
        let r = worst(mu);
        if r <= min_ratio {
            min_ratio = r;
            argmin_mu = mu;
        }
        if r < ROOT_ACCEPT && !accepted.iter().any(|a| (a.mu - mu).abs() < 1e-6) {
            accepted.push(MuRoot { mu, max_ratio: r });
        }
    }
    accepted.sort_by(|a, b| a.mu.total_cmp(&b.mu));
    MuScan { accepted, min_ratio, argmin_mu, deflation_remainder: rem }
}

fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    while b - a > 1e-12 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

fn golden_min(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-12 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::Axis;
    use crate::tensorcalc::{DomainFn, VectorFieldJet};
    use approx::assert_relative_eq;
    use std::sync::Arc;

    fn everywhere() -> DomainFn {
        Arc::new(|_| true)
    }

    #[test]
    fn curvature_oracles() {
        let flat = MetricField::from_fn("flat", everywhere(), |x, _| {
            let n = x.order();
            Ok(MetricJet::new(RJet::constant(1.0, n), RJet::zero(n), RJet::constant(1.0, n)))
        });
        assert!(scalar_curvature(&flat, Point2::new(0.1, 0.2), 2).unwrap().max_abs() == 0.0);
        let sphere = MetricField::from_fn("s2", everywhere(), |x, _| {
            let s = x.sin();
            Ok(MetricJet::new(RJet::constant(1.0, x.order()), RJet::zero(x.order()), &s * &s))
        });
        for p in [Point2::new(0.7, 0.0), Point2::new(1.9, 3.0)] {
            let r = scalar_curvature(&sphere, p, 2).unwrap();
            assert_relative_eq!(r.value(), 2.0, epsilon = 1e-13);
            assert!(r.coeffs()[1..].iter().all(|c| c.abs() < 1e-11));
        }
        // (x + y^2) dx dy
        let g = MetricField::from_fn("c", everywhere(), |x, y| {
            let n = x.order();
            Ok(MetricJet::new(RJet::zero(n), (x + &(y * y)).scale(0.5), RJet::zero(n)))
        });
        for (px, py) in [(0.5, 0.3), (1.2, -0.8), (0.1, 2.0)] {
            let r = scalar_curvature(&g, Point2::new(px, py), 0).unwrap();
            assert_relative_eq!(r.value(), 8.0 * py / (px + py * py).powi(3), max_relative = 1e-13);
        }
    }

    #[test]
    fn constant_curvature_has_no_obstruction() {
        let sphere = MetricField::from_fn("s2", everywhere(), |x, _| {
            let s = x.sin();
            Ok(MetricJet::new(RJet::constant(1.0, x.order()), RJet::zero(x.order()), &s * &s))
        });
        let c = killing_obstruction(&sphere, Point2::new(0.8, 0.1)).unwrap();
        assert!(c.relative() < 1e-10);
    }

    #[test]
    fn jordan_reduction() {
        let y = RJet::seed(Point2::new(0.0, 0.6), Axis::Y, 3);
        assert_relative_eq!(jordan_killing_reduction(&(&y * &y)).unwrap(), -20.0);
        // Y = 2 (1 - y)^{-1/2}, Y' = (1 - y)^{-3/2}
        let u = (-&y + 1.0).pow_abs(-0.5).unwrap().scale(2.0);
        assert!(jordan_killing_reduction(&u).unwrap().abs() < 1e-12);
        assert!(jordan_killing_reduction(&y.truncate(2)).is_err());
    }

    #[test]
    fn killing_residual_examples() {
        let g = MetricField::from_fn("yonly", everywhere(), |x, y| {
            Ok(MetricJet::new(y.exp(), RJet::zero(x.order()), y.cos() + 2.0))
        });
        let pts = [Point2::new(0.1, 0.2), Point2::new(-0.4, 0.9)];
        let dx = VectorField::affine("dx", 0.0, 1.0, 0.0, 0.0);
        assert_eq!(killing_residual(&g, &dx, &pts).unwrap(), 0.0);
        let flat = MetricField::from_fn("flat", everywhere(), |x, _| {
            let n = x.order();
            Ok(MetricJet::new(RJet::constant(1.0, n), RJet::zero(n), RJet::constant(1.0, n)))
        });
        let xdx = VectorField::from_fn("xdx", |x, _| Ok(VectorFieldJet::new(x.clone(), RJet::zero(x.order()))));
        assert_relative_eq!(killing_residual(&flat, &xdx, &pts).unwrap(), 2.0);
    }

    #[test]
    fn zero_connection_system() {
        let z = ConnectionJet { f: std::array::from_fn(|_| RJet::zero(2)) };
        // rows (mu,0,0), (0,-2mu^2,0), (0,0,mu^3), so det M = -2 mu^6
        let sys = dom3_assemble(&z, 1.0, None).unwrap();
        assert_relative_eq!(dom3_det(&sys).det_m, -2.0);
        assert_eq!(sys.m[1], [0.0, -2.0, 0.0]);
        let d = det_polynomial(&dom3_poly(&z, None).unwrap());
        assert_eq!(d.len(), 7);
        assert_relative_eq!(poly_eval(&d, 1.5), -2.0 * 1.5f64.powi(6));
    }

    #[test]
    fn deflation() {
        // (mu - 1)(mu + 2)(mu - 3) = mu^3 - 2 mu^2 - 5 mu + 6
        let c = [6.0, -5.0, -2.0, 1.0];
        let (q, r) = deflate(&c, &[1.0, -2.0]);
        assert!(r < 1e-15);
        assert_relative_eq!(q[0], -3.0);
        assert_relative_eq!(q[1], 1.0);
    }
}
