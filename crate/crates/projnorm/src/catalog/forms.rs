//! Closed-form metrics of the families, their generators and projective fields.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jets::{seed_point, CJet, Point2, RJet};
use crate::tensorcalc::{assemble_complex, DomainFn, LiouvilleSection, MetricField, MetricJet, VectorField, VectorFieldJet};

use super::quadrature::{y_integral_jet, YKind};

/// Margin around every excluded locus.
pub const DELTA: f64 = 1e-2;
/// Largest imaginary residue tolerated when assembling a complex form.
const COMPLEX_RESIDUE: f64 = 1e-9;

pub(crate) type RealFn = Arc<dyn Fn(&RJet, &RJet) -> Result<[RJet; 4]> + Send + Sync>;
pub(crate) type ComplexFn = Arc<dyn Fn(&CJet) -> Result<[CJet; 2]> + Send + Sync>;
pub(crate) type YFn = Arc<dyn Fn(&RJet) -> Result<RJet> + Send + Sync>;

pub(crate) fn diag(a: RJet, b: RJet) -> MetricJet {
    let z = RJet::zero(a.order());
    MetricJet::new(a, z, b)
}

/// `c dx dy`, i.e. `g12 = c/2`.
pub(crate) fn dxdy(c: RJet) -> MetricJet {
    let z = RJet::zero(c.order());
    MetricJet::new(z.clone(), c.scale(0.5), z)
}

pub(crate) fn z_jet(x: &RJet, y: &RJet) -> CJet {
    x.to_complex() + y.to_complex().scale(Complex64::new(0.0, 1.0))
}

pub(crate) fn complex_metric(a: &CJet, b: &CJet) -> Result<MetricJet> {
    let (g, resid) = assemble_complex(a, b);
    if resid > COMPLEX_RESIDUE {
        return Err(Error::DomainError(format!("complex form is not real (residue {resid:e})")));
    }
    Ok(g)
}

pub(crate) fn domain(f: impl Fn(f64, f64) -> bool + Send + Sync + 'static) -> DomainFn {
    Arc::new(move |p: Point2| f(p.x, p.y))
}

/// `|a - b|` is a fraction [`DELTA`] of the sizes involved.
pub(crate) fn apart(a: f64, b: f64) -> bool {
    (a - b).abs() > DELTA * (a.abs() + b.abs()).max(1e-300)
}

pub(crate) fn off_zero(v: f64) -> bool {
    v.is_finite() && v.abs() > DELTA
}

/// Pair `(X - Y)(X1 dx^2 + Y1 dy^2)`, `(1/X - 1/Y)(X1/X dx^2 + Y1/Y dy^2)` from `[X, Y, X1, Y1]`.
pub(crate) fn liouville_pair(label: &str, f: RealFn, extra: DomainFn) -> Vec<MetricField> {
    let probe = f.clone();
    let dom: DomainFn = Arc::new(move |p| {
        if !extra(p) {
            return false;
        }
        let (x, y) = seed_point(p, 0);
        match probe(&x, &y) {
            Ok(v) => {
                let [xx, yy, x1, y1] = v.map(|j| j.value());
                [xx, yy, x1, y1].iter().all(|t| t.is_finite() && *t != 0.0) && apart(xx, yy)
            }
            Err(_) => false,
        }
    });
    let f1 = f.clone();
    let g1 = MetricField::from_fn(format!("{label}.g1"), dom.clone(), move |x, y| {
        let [xx, yy, x1, y1] = f1(x, y)?;
        let d = &xx - &yy;
        Ok(diag(&d * &x1, &d * &y1))
    });
    let g2 = MetricField::from_fn(format!("{label}.g2"), dom, move |x, y| {
        let [xx, yy, x1, y1] = f(x, y)?;
        let (ix, iy) = (xx.recip()?, yy.recip()?);
        let d = &ix - &iy;
        Ok(diag(&d * &x1 * &ix, &d * &y1 * &iy))
    });
    vec![g1, g2]
}

/// Pair `(h - hb)(h1 dz^2 - hb1 dzb^2)`, `(1/h - 1/hb)(h1/h dz^2 - hb1/hb dzb^2)` from `[h, h1]`.
pub(crate) fn complex_liouville_pair(label: &str, f: ComplexFn, extra: DomainFn) -> Vec<MetricField> {
    let probe = f.clone();
    let dom: DomainFn = Arc::new(move |p| {
        if !extra(p) {
            return false;
        }
        let (x, y) = seed_point(p, 0);
        match probe(&z_jet(&x, &y)) {
            Ok([h, h1]) => {
                let (h, h1) = (h.value(), h1.value());
                h.norm().is_finite() && h1.norm().is_finite() && h1.norm() > 0.0 && h.im.abs() > DELTA * h.norm()
            }
            Err(_) => false,
        }
    });
    let f1 = f.clone();
    let g1 = MetricField::from_fn(format!("{label}.g1"), dom.clone(), move |x, y| {
        let [h, h1] = f1(&z_jet(x, y))?;
        let d = &h - &h.conj();
        complex_metric(&(&d * &h1), &-(&d * &h1.conj()))
    });
    let g2 = MetricField::from_fn(format!("{label}.g2"), dom, move |x, y| {
        let [h, h1] = f(&z_jet(x, y))?;
        let (ih, ihb) = (h.recip()?, h.conj().recip()?);
        let d = &ih - &ihb;
        complex_metric(&(&d * &h1 * &ih), &-(&d * &h1.conj() * &ihb))
    });
    vec![g1, g2]
}

/// Pair `(Y + x) dx dy`, `-2(Y + x)/y^3 dx dy + (Y + x)^2/y^4 dy^2`.
pub(crate) fn jordan_pair(label: &str, yf: YFn, extra: DomainFn) -> Vec<MetricField> {
    let probe = yf.clone();
    let dom: DomainFn = Arc::new(move |p| {
        if !extra(p) || !off_zero(p.y) {
            return false;
        }
        let (_, y) = seed_point(p, 0);
        probe(&y).map(|v| off_zero(v.value() + p.x)).unwrap_or(false)
    });
    let y1 = yf.clone();
    let g1 = MetricField::from_fn(format!("{label}.g1"), dom.clone(), move |x, y| Ok(dxdy(y1(y)? + x)));
    let g2 = MetricField::from_fn(format!("{label}.g2"), dom, move |x, y| {
        let s = yf(y)? + x;
        let y3 = y.powi(3);
        let g12 = -s.try_div(&y3)?;
        let g22 = (&s * &s).try_div(&(&y3 * y))?;
        Ok(MetricJet::new(RJet::zero(x.order()), g12, g22))
    });
    vec![g1, g2]
}

/// Closed-form flow of the projective field; the field itself is derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FlowKind {
    /// `w = a d/dx + b d/dy`.
    Translation { a: f64, b: f64 },
    /// `w = a x d/dx + b y d/dy`.
    Scaling { a: f64, b: f64 },
    /// `w = (1/2 (y-3)(x+Y) - y^2 Y') d/dx + y^2 d/dy`.
    JordanCII,
    /// `w = (1/2 (y-3 lambda)(x+Y) - (y^2+1) Y') d/dx + (y^2+1) d/dy`.
    ComplexCIII { lambda: f64 },
}

impl FlowKind {
    pub fn vector_field(&self) -> VectorField {
        match *self {
            FlowKind::Translation { a, b } => VectorField::affine("translation", 0.0, a, 0.0, b),
            FlowKind::Scaling { a, b } => VectorField::affine("scaling", a, 0.0, b, 0.0),
            FlowKind::JordanCII => VectorField::from_fn("w_CII", move |x, y| {
                let kind = YKind::CII;
                let u = y_integral_jet(kind, y)? + x;
                let yp = kind.integrand_jet(y)?;
                let y2 = y * y;
                let w1 = (&(y - 3.0) * &u).scale(0.5) - &y2 * &yp;
                Ok(VectorFieldJet::new(w1, y2))
            }),
            FlowKind::ComplexCIII { lambda } => VectorField::from_fn("w_CIII", move |x, y| {
                let kind = YKind::CIII { lambda };
                let u = y_integral_jet(kind, y)? + x;
                let yp = kind.integrand_jet(y)?;
                let q = y * y + 1.0;
                let w1 = (&(y - 3.0 * lambda) * &u).scale(0.5) - &q * &yp;
                Ok(VectorFieldJet::new(w1, q))
            }),
        }
    }
}

/// Axis-aligned sampling box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleBox {
    pub x: (f64, f64),
    pub y: (f64, f64),
}

impl SampleBox {
    pub const fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        SampleBox { x: (x0, x1), y: (y0, y1) }
    }

    pub fn contains(&self, p: Point2) -> bool {
        p.x >= self.x.0 && p.x <= self.x.1 && p.y >= self.y.0 && p.y <= self.y.1
    }
}

/// Sampling box, generators and flow shared by the families of one case.
pub(crate) struct Shape {
    pub generators: Vec<MetricField>,
    pub flow: FlowKind,
    pub sample_box: SampleBox,
}

pub(crate) fn every() -> DomainFn {
    Arc::new(|_| true)
}

/// A(I) in exponential coordinates.
pub(crate) fn gen_a1(xi: f64, h: f64, eps: f64) -> Shape {
    let f: RealFn = Arc::new(move |x, y| {
        Ok([x.scale(xi).exp(), y.scale(xi).exp().scale(h), x.scale(2.0).exp(), y.scale(2.0).exp().scale(eps)])
    });
    Shape {
        generators: liouville_pair("A(I)", f, every()),
        flow: FlowKind::Translation { a: 1.0, b: 1.0 },
        sample_box: SampleBox::new(-1.0, 1.0, -1.0, 1.0),
    }
}

/// A(I) in the power chart `x -> ln x`: `X = x^xi`, `X1 = 1`.
pub(crate) fn gen_a1_power(xi: f64, h: f64, eps: f64) -> Shape {
    let f: RealFn = Arc::new(move |x, y| {
        let one = RJet::constant(1.0, x.order());
        Ok([x.pow_abs(xi)?, y.pow_abs(xi)?.scale(h), one.clone(), one.scale(eps)])
    });
    Shape {
        generators: liouville_pair("A(I) power", f, domain(|x, y| x > DELTA && y > DELTA)),
        flow: FlowKind::Scaling { a: 1.0, b: 1.0 },
        sample_box: SampleBox::new(0.2, 2.0, 0.2, 2.0),
    }
}

pub(crate) fn gen_a2(h: f64) -> Shape {
    let f: RealFn = Arc::new(move |x, y| {
        let (ix, iy) = (x.recip()?, y.recip()?);
        let x1 = x.scale(-3.0).exp() * &ix;
        let y1 = (y.scale(-3.0).exp() * &iy).scale(h);
        Ok([ix, iy, x1, y1])
    });
    Shape {
        generators: liouville_pair("A(II)", f, domain(|x, y| off_zero(x) && off_zero(y))),
        flow: FlowKind::Translation { a: 1.0, b: 1.0 },
        sample_box: SampleBox::new(0.3, 2.0, 0.3, 2.0),
    }
}

pub(crate) fn gen_a3(lambda: f64, h: f64) -> Shape {
    let f: RealFn = Arc::new(move |x, y| {
        let x1 = x.scale(-3.0 * lambda).exp().try_div(&x.cos())?;
        let y1 = y.scale(-3.0 * lambda).exp().try_div(&y.cos())?.scale(h);
        Ok([x.tan()?, y.tan()?, x1, y1])
    });
    Shape {
        generators: liouville_pair("A(III)", f, domain(|x, y| off_zero(x.cos()) && off_zero(y.cos()))),
        flow: FlowKind::Translation { a: 1.0, b: 1.0 },
        sample_box: SampleBox::new(-1.2, 1.2, -1.2, 1.2),
    }
}

fn phase(phi: f64) -> Complex64 {
    Complex64::from_polar(1.0, phi)
}

pub(crate) fn gen_b1(xi: f64, phi: f64) -> Shape {
    let c = phase(phi);
    let f: ComplexFn = Arc::new(move |z| Ok([z.scale(Complex64::from(xi)).exp().scale(c), z.scale(Complex64::from(2.0)).exp()]));
    Shape {
        generators: complex_liouville_pair("B(I)", f, every()),
        flow: FlowKind::Translation { a: 1.0, b: 0.0 },
        sample_box: SampleBox::new(-1.0, 1.0, -1.0, 1.0),
    }
}

/// B(I) in the power chart: `h = C Z^xi`, `h1 = 1`, right half-plane.
pub(crate) fn gen_b1_power(xi: f64, phi: f64) -> Shape {
    let c = phase(phi);
    let f: ComplexFn = Arc::new(move |z| Ok([z.pow_abs(xi)?.scale(c), CJet::constant(Complex64::from(1.0), z.order())]));
    Shape {
        generators: complex_liouville_pair("B(I) power", f, domain(|x, _| x > DELTA)),
        flow: FlowKind::Scaling { a: 1.0, b: 1.0 },
        sample_box: SampleBox::new(0.3, 1.5, -0.8, 0.8),
    }
}

pub(crate) fn gen_b2(phi: f64) -> Shape {
    let c = phase(phi);
    let f: ComplexFn = Arc::new(move |z| {
        let iz = z.recip()?;
        let h1 = (z.scale(Complex64::from(-3.0)).exp() * &iz).scale(c);
        Ok([iz, h1])
    });
    Shape {
        generators: complex_liouville_pair("B(II)", f, domain(|x, y| x.hypot(y) > DELTA)),
        flow: FlowKind::Translation { a: 1.0, b: 0.0 },
        sample_box: SampleBox::new(0.3, 1.5, -1.0, 1.0),
    }
}

pub(crate) fn gen_b3(lambda: f64, phi: f64) -> Shape {
    let c = phase(phi);
    let f: ComplexFn = Arc::new(move |z| {
        let h1 = z.scale(Complex64::from(-3.0 * lambda)).exp().try_div(&z.cos())?.scale(c);
        Ok([z.tan()?, h1])
    });
    let dom = domain(|x, y| {
        let cz = Complex64::new(x, y).cos();
        cz.norm() > DELTA
    });
    Shape {
        generators: complex_liouville_pair("B(III)", f, dom),
        flow: FlowKind::Translation { a: 1.0, b: 0.0 },
        sample_box: SampleBox::new(-1.2, 1.2, -0.8, 0.8),
    }
}

/// `g3` of the C(Ia) triple.
fn c1a_third(dom: DomainFn) -> MetricField {
    MetricField::from_fn("C(Ia).g3", dom, |x, y| {
        let s = y * y + x;
        let den = (x.scale(3.0) - y * y).powi(6);
        let f = s.try_div(&den)?;
        let g11 = (&f * &s).scale(9.0);
        let g12 = (&f * &(y * &(x.scale(9.0) + y * y))).scale(-2.0);
        let g22 = (&f * &(x * &s)).scale(12.0);
        Ok(MetricJet::new(g11, g12, g22))
    })
}

/// `psi^{-1}` of the third C(Ia) generator, using `det g = 4 s^2 (3x - y^2)^{-9}` so that
/// no cancellation enters the section or its derivatives.
pub(crate) fn c1a_third_section(dom: DomainFn) -> LiouvilleSection {
    LiouvilleSection::new(
        "psi^-1(C(Ia).g3)",
        dom,
        Arc::new(|x, y| {
            let s = y * y + x;
            let c = s.pow_abs(-1.0 / 3.0)?.scale(4f64.powf(-2.0 / 3.0));
            let a11 = (&c * &s).scale(9.0);
            let a12 = (&c * &(y * &(x.scale(9.0) + y * y))).scale(-2.0);
            let a22 = (&c * &(x * &s)).scale(12.0);
            Ok(MetricJet::new(a11, a12, a22))
        }),
    )
}

pub(crate) fn gen_c1a() -> Shape {
    let yf: YFn = Arc::new(|y| Ok(y * y));
    let mut generators = jordan_pair("C(Ia)", yf, every());
    let dom = generators[0].domain();
    let dom3: DomainFn = Arc::new(move |p: Point2| dom(p) && apart(3.0 * p.x, p.y * p.y));
    for g in generators.iter_mut() {
        *g = MetricField::new(g.label.clone(), dom3.clone(), g.evaluator());
    }
    generators.push(c1a_third(dom3));
    Shape { generators, flow: FlowKind::Scaling { a: 2.0, b: 1.0 }, sample_box: SampleBox::new(1.0, 2.0, 0.3, 1.5) }
}

/// `lambda` of the C(Ib) scaling field for exponent parameter `eta`.
pub(crate) fn c1b_flow(eta: f64) -> Result<FlowKind> {
    let l = crate::spectra::lambda_from_xi(eta)?;
    Ok(FlowKind::Scaling { a: -(l + 0.5), b: -(l - 1.0) })
}

pub(crate) fn gen_c1b(eta: f64) -> Result<Shape> {
    let yf: YFn = Arc::new(move |y| y.pow_abs(1.0 / eta));
    Ok(Shape {
        generators: jordan_pair("C(Ib)", yf, domain(|_, y| y > DELTA)),
        flow: c1b_flow(eta)?,
        sample_box: SampleBox::new(0.2, 2.0, 0.3, 2.0),
    })
}

pub(crate) fn gen_c2() -> Shape {
    let yf: YFn = Arc::new(|y| y_integral_jet(YKind::CII, y));
    Shape {
        generators: jordan_pair("C(II)", yf, every()),
        flow: FlowKind::JordanCII,
        sample_box: SampleBox::new(0.5, 2.0, 1.0, 2.5),
    }
}

pub(crate) fn gen_c3(lambda: f64) -> Shape {
    let yf: YFn = Arc::new(move |y| y_integral_jet(YKind::CIII { lambda }, y));
    Shape {
        generators: jordan_pair("C(III)", yf, every()),
        flow: FlowKind::ComplexCIII { lambda },
        sample_box: SampleBox::new(0.5, 2.0, 0.3, 2.0),
    }
}

/// Intersection of the generator domains with the extra predicate.
pub(crate) fn shared_domain(gens: &[MetricField], extra: DomainFn) -> DomainFn {
    let gens = gens.to_vec();
    Arc::new(move |p| extra(p) && gens.iter().all(|g| g.in_domain(p)))
}

/// Normal form A1 (power chart).
pub(crate) fn a1_metric(xi: f64, h: f64, eps: f64, kappa: f64, rho: f64, dom: DomainFn) -> MetricField {
    let extra = domain(move |x, y| {
        let (px, py) = (x.abs().powf(xi), h * y.abs().powf(xi));
        off_zero(1.0 + rho * px) && off_zero(1.0 + rho * py)
    });
    let dom: DomainFn = Arc::new(move |p| dom(p) && extra(p));
    MetricField::from_fn("A1", dom, move |x, y| {
        let px = x.pow_abs(xi)?;
        let py = y.pow_abs(xi)?.scale(h);
        let d = (&px - &py).scale(kappa);
        let (bx, by) = (px * rho + 1.0, py * rho + 1.0);
        let g11 = d.try_div(&(&by * &bx * &bx))?;
        let g22 = d.try_div(&(&by * &by * &bx))?.scale(eps);
        Ok(diag(g11, g22))
    })
}

/// Normal form A2.
pub(crate) fn a2_metric(h: f64, kappa: f64, dom: DomainFn) -> MetricField {
    MetricField::from_fn("A2", dom, move |x, y| {
        let d = (y - x).scale(kappa);
        let g11 = (&d * &x.scale(-3.0).exp()).try_div(&(x * x * y))?;
        let g22 = (&d * &y.scale(-3.0).exp()).try_div(&(x * y * y))?.scale(h);
        Ok(diag(g11, g22))
    })
}

/// Normal form A3 with `lambda > 0`.
pub(crate) fn a3_metric(lambda: f64, h: f64, theta: f64, dom: DomainFn) -> MetricField {
    let extra = domain(move |x, y| off_zero((x + theta).sin()) && off_zero((y + theta).sin()));
    let dom: DomainFn = Arc::new(move |p| dom(p) && extra(p));
    MetricField::from_fn("A3", dom, move |x, y| {
        let (sx, sy) = ((x + theta).sin(), (y + theta).sin());
        let s = (y - x).sin().try_div(&(&sy * &sx))?;
        let g11 = (&s * &x.scale(-3.0 * lambda).exp()).try_div(&sx)?;
        let g22 = (&s * &y.scale(-3.0 * lambda).exp()).try_div(&sy)?.scale(h);
        Ok(diag(g11, g22))
    })
}

/// Normal form A3 with `lambda = 0`.
pub(crate) fn a3_metric_flat(h: f64, kappa: f64, dom: DomainFn) -> MetricField {
    let extra = domain(|x, y| off_zero(x.sin()) && off_zero(y.sin()));
    let dom: DomainFn = Arc::new(move |p| dom(p) && extra(p));
    MetricField::from_fn("A3(lambda=0)", dom, move |x, y| {
        let (sx, sy) = (x.sin(), y.sin());
        let s = (y - x).sin().try_div(&(&sy * &sx))?.scale(kappa);
        Ok(diag(s.try_div(&sx)?, s.try_div(&sy)?.scale(h)))
    })
}

/// Normal form B4 (power chart, `x > 0`).
///
/// A nearby displayed variant of this formula writes `(1 + Cbar^xi)` without
/// the `zbar`; that reading breaks metrizability and is treated as a typo.
pub(crate) fn b4_metric(xi: f64, phi: f64, kappa: f64, dom: DomainFn) -> MetricField {
    let c = phase(phi);
    let extra = domain(move |x, y| {
        let p = c * Complex64::new(x, y).powf(xi);
        (p + 1.0).norm() > DELTA
    });
    let dom: DomainFn = Arc::new(move |p| dom(p) && extra(p));
    MetricField::from_fn("B4", dom, move |x, y| {
        let z = z_jet(x, y);
        let p = z.pow_abs(xi)?.scale(c);
        let pb = p.conj();
        let d = (&p - &pb).scale(Complex64::from(kappa));
        let (bp, bpb) = (&p + Complex64::from(1.0), &pb + Complex64::from(1.0));
        let a = d.try_div(&(&bpb * &bp * &bp))?;
        let b = -d.try_div(&(&bpb * &bpb * &bp))?;
        complex_metric(&a, &b)
    })
}

/// Normal form B5.
pub(crate) fn b5_metric(phi: f64, kappa: f64, dom: DomainFn) -> MetricField {
    let c = phase(phi);
    MetricField::from_fn("B5", dom, move |x, y| {
        let z = z_jet(x, y);
        let zb = z.conj();
        let d = (&zb - &z).scale(Complex64::from(kappa));
        let e = z.scale(Complex64::from(-3.0)).exp().scale(c);
        let a = (&d * &e).try_div(&(&z * &z * &zb))?;
        let b = -(&d * &e.conj()).try_div(&(&z * &zb * &zb))?;
        complex_metric(&a, &b)
    })
}

/// Normal form B6 with `lambda > 0`.
pub(crate) fn b6_metric(lambda: f64, phi: f64, theta: f64, dom: DomainFn) -> MetricField {
    let c = phase(phi);
    let extra = domain(move |x, y| (Complex64::new(x, y) + theta).sin().norm() > DELTA);
    let dom: DomainFn = Arc::new(move |p| dom(p) && extra(p));
    MetricField::from_fn("B6", dom, move |x, y| {
        let z = z_jet(x, y);
        let zb = z.conj();
        let th = Complex64::from(theta);
        let (sz, szb) = ((&z + th).sin(), (&zb + th).sin());
        let s = (&zb - &z).sin().try_div(&(&szb * &sz))?;
        let e = z.scale(Complex64::from(-3.0 * lambda)).exp().scale(c);
        let a = (&s * &e).try_div(&sz)?;
        let b = -(&s * &e.conj()).try_div(&szb)?;
        complex_metric(&a, &b)
    })
}

/// Normal form B6 with `lambda = 0`.
pub(crate) fn b6_metric_flat(phi: f64, kappa: f64, dom: DomainFn) -> MetricField {
    let c = phase(phi);
    let extra = domain(|x, y| Complex64::new(x, y).sin().norm() > DELTA);
    let dom: DomainFn = Arc::new(move |p| dom(p) && extra(p));
    MetricField::from_fn("B6(lambda=0)", dom, move |x, y| {
        let z = z_jet(x, y);
        let zb = z.conj();
        let (sz, szb) = (z.sin(), zb.sin());
        let s = (&zb - &z).sin().try_div(&(&szb * &sz))?.scale(Complex64::from(kappa));
        let a = s.try_div(&sz)?.scale(c);
        let b = -s.try_div(&szb)?.scale(c.conj());
        complex_metric(&a, &b)
    })
}

/// Normal form C7.
pub(crate) fn c7_metric(xi: f64, rho: f64, kappa: f64, dom: DomainFn) -> MetricField {
    let extra = domain(move |_, y| off_zero(y - rho));
    let dom: DomainFn = Arc::new(move |p| dom(p) && extra(p));
    MetricField::from_fn("C7", dom, move |x, y| {
        let s = y.pow_abs(1.0 / xi)? + x;
        let d = y - rho;
        let d3 = d.powi(3);
        let g12 = s.try_div(&d3)?.scale(-kappa);
        let g22 = (&s * &s).try_div(&(&d3 * &d))?.scale(kappa);
        Ok(MetricJet::new(RJet::zero(x.order()), g12, g22))
    })
}

/// Normal forms C8 and C9: `kappa (Y + x) dx dy`.
pub(crate) fn jordan_metric(label: &str, kind: YKind, kappa: f64, dom: DomainFn) -> MetricField {
    MetricField::from_fn(label, dom, move |x, y| Ok(dxdy((y_integral_jet(kind, y)? + x).scale(kappa))))
}

/// C(Ia) class member with `K3 = 0`:
/// `kappa (-2 (y^2+x)/(y-rho)^3 dxdy + (y^2+x)^2/(y-rho)^4 dy^2)`.
pub fn c1a_k3zero_metric(kappa: f64, rho: f64) -> MetricField {
    let dom = domain(move |x, y| apart(y, rho) && off_zero(y * y + x));
    MetricField::from_fn(format!("C(Ia)[K3=0,kappa={kappa},rho={rho}]"), dom, move |x, y| {
        let s = y * y + x;
        let d = y.clone() - rho;
        let d3 = d.powi(3);
        let g12 = s.try_div(&d3)?.scale(-kappa);
        let g22 = (&s * &s).try_div(&(&d3 * &d))?.scale(kappa);
        Ok(MetricJet::new(RJet::zero(x.order()), g12, g22))
    })
}
