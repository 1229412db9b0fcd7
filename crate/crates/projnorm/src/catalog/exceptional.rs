//! Metrics that fall outside the main families: the parameter values where a
//! Killing field appears, and the mobility-3 forms of the C(Ia) class.

use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use rand::Rng;

use crate::jets::{Point2, RJet};
use crate::tensorcalc::{DomainFn, MetricField, MetricJet, VectorField, VectorFieldJet};

use super::forms::{complex_metric, domain, gen_a1, gen_b1, off_zero, z_jet, SampleBox, DELTA};

/// Parameter choices at which the generic obstruction to a Killing field vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum KillingCase {
    /// `(e^{4x} - h e^{4y})(e^{2x} dx^2 + eps e^{2y} dy^2)`; Killing for `h = 1`.
    I { eps: f64, h: f64 },
    /// B(I) with `xi = 4`, `C = e^{i phi}`; Killing for `phi = 0`.
    II { phi: f64 },
    /// `(tan z - tan zb)(C/cos z dz^2 - Cb/cos zb dzb^2)`; Killing for `phi = pi/2`.
    III { phi: f64 },
}

impl KillingCase {
    /// The unperturbed cases, `eps = +-1` for the first.
    pub fn exact() -> Vec<KillingCase> {
        vec![
            KillingCase::I { eps: 1.0, h: 1.0 },
            KillingCase::I { eps: -1.0, h: 1.0 },
            KillingCase::II { phi: 0.0 },
            KillingCase::III { phi: FRAC_PI_2 },
        ]
    }

    /// Parameters shifted by 10 %, where no Killing field exists.
    pub fn perturbed() -> Vec<KillingCase> {
        vec![
            KillingCase::I { eps: 1.0, h: 1.1 },
            KillingCase::I { eps: 1.0, h: 0.9 },
            KillingCase::I { eps: -1.0, h: 1.1 },
            KillingCase::I { eps: -1.0, h: 0.9 },
            KillingCase::III { phi: 1.1 * FRAC_PI_2 },
            KillingCase::III { phi: 0.9 * FRAC_PI_2 },
        ]
    }

    pub fn name(&self) -> String {
        match self {
            KillingCase::I { eps, h } => format!("thm3i(eps={eps},h={h})"),
            KillingCase::II { phi } => format!("thm3ii(phi={phi})"),
            KillingCase::III { phi } => format!("thm3iii(phi={phi})"),
        }
    }
}

/// Metric, optional closed-form Killing field and sampling region.
#[derive(Debug, Clone)]
pub struct KillingEntry {
    pub case: KillingCase,
    pub metric: MetricField,
    pub field: Option<VectorField>,
    pub sample_box: SampleBox,
}

/// Distance from the diagonal kept by the samples of the first case; closer
/// to `x = y` the obstruction loses digits to the pole of the curvature.
pub const DIAGONAL_GAP: f64 = 0.25;

impl KillingEntry {
    /// Sampling predicate: inside the box, in the domain, away from the diagonal.
    pub fn admissible(&self, p: Point2) -> bool {
        let gap = match self.case {
            KillingCase::I { .. } => (p.x - p.y).abs() >= DIAGONAL_GAP,
            _ => true,
        };
        gap && self.sample_box.contains(p) && self.metric.eval(p, 0).is_ok()
    }

    /// `n` uniform samples from the admissible set.
    pub fn sample_points<R: Rng>(&self, rng: &mut R, n: usize) -> Result<Vec<Point2>> {
        let b = self.sample_box;
        let mut out = Vec::with_capacity(n);
        for _ in 0..1000 * n.max(1) {
            if out.len() == n {
                break;
            }
            let p = Point2::new(rng.gen_range(b.x.0..=b.x.1), rng.gen_range(b.y.0..=b.y.1));
            if self.admissible(p) {
                out.push(p);
            }
        }
        if out.len() < n {
            return Err(Error::DomainError(format!("{}: too few admissible sample points", self.case.name())));
        }
        Ok(out)
    }
}

pub fn killing_entry(case: KillingCase) -> Result<KillingEntry> {
    match case {
        KillingCase::I { eps, h } => {
            let metric = gen_a1(4.0, h, eps).generators.swap_remove(0);
            let unperturbed = h == 1.0;
            let field = unperturbed.then(|| {
                VectorField::from_fn("thm3i.v", move |x, y| {
                    let den = x.scale(2.0).exp() + y.scale(2.0).exp().scale(eps);
                    let v1 = (y - x).exp().try_div(&den)?;
                    let v2 = (x - y).exp().try_div(&den)?.scale(eps);
                    Ok(VectorFieldJet::new(v1, v2))
                })
            });
            Ok(KillingEntry { case, metric, field, sample_box: SampleBox::new(-1.0, 1.0, -1.0, 1.0) })
        }
        KillingCase::II { phi } => {
            let metric = gen_b1(4.0, phi).generators.swap_remove(0);
            // one strip between the zeros of sin 4y, kept away from them
            Ok(KillingEntry { case, metric, field: None, sample_box: SampleBox::new(-1.0, 1.0, 0.1, 0.7) })
        }
        KillingCase::III { phi } => {
            let c = Complex64::from_polar(1.0, phi);
            let dom = domain(|x, y| y.abs() >= 0.1 && off_zero(Complex64::new(x, y).cos().norm()));
            let metric = MetricField::from_fn("thm3iii", dom, move |x, y| {
                let z = z_jet(x, y);
                let zb = z.conj();
                let d = &z.tan()? - &zb.tan()?;
                let a = (&d * &z.cos().recip()?).scale(c);
                let b = -(&d * &zb.cos().recip()?).scale(c.conj());
                complex_metric(&a, &b)
            });
            let field = (phi == FRAC_PI_2).then(|| VectorField::from_fn("thm3iii.v", thm3iii_field));
            Ok(KillingEntry { case, metric, field, sample_box: SampleBox::new(0.2, 1.2, -0.6, 0.6) })
        }
    }
}

fn thm3iii_field(x: &RJet, y: &RJet) -> Result<VectorFieldJet> {
    let z = z_jet(x, y);
    let zb = z.conj();
    let one = Complex64::from(1.0);
    let (sz, szb, cz, czb) = (z.sin(), zb.sin(), z.cos(), zb.cos());
    let num = &sz * &(&sz * &szb + &cz * &czb - &czb + &cz - one);
    let roots = (&cz + one).pow_abs(0.5)? * (&czb + one).pow_abs(0.5)?;
    let den = &cz * &sz * &czb - &cz * &cz * &szb - &sz * &czb + &cz * &szb;
    let f = num.try_div(&(&roots * &den))?;
    let i = Complex64::new(0.0, 1.0);
    let (v, vb) = (&f * &cz, &f * &czb);
    let v1 = (&v + &vb).scale(Complex64::from(0.5));
    let v2 = (&vb - &v).scale(0.5 * i);
    let resid = v1.im().max_abs().max(v2.im().max_abs()) / v1.max_abs().max(v2.max_abs()).max(f64::MIN_POSITIVE);
    if resid > 1e-9 {
        return Err(Error::DomainError("Killing field is not real here".into()));
    }
    Ok(VectorFieldJet::new(v1.re(), v2.re()))
}

/// The three mobility-3 forms projectively equivalent to `(y^2 + x) dx dy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Prop13Form {
    I,
    II,
    III,
}

/// `F(zeta, c; x, y)`; the one-parameter version is `zeta = 0`.
pub fn prop13_f(zeta: f64, c: f64, x: f64, y: f64) -> f64 {
    let base = y.powi(6) - 9.0 * x * y.powi(4) + 27.0 * x * x * y * y - 27.0 * x.powi(3) + 4.0 * c * c
        - (36.0 * x * y + 4.0 * y.powi(3)) * c;
    base + (18.0 * x * y * y - 5.0 * y.powi(4) - 9.0 * x * x - 8.0 * c * y) * zeta + 4.0 * y * y * zeta * zeta
}

fn prop13_f_jet(zeta: f64, c: f64, x: &RJet, y: &RJet) -> RJet {
    let (y2, x2) = (y * y, x * x);
    let y3 = &y2 * y;
    let y4 = &y2 * &y2;
    let base = &y4 * &y2 - (x * &y4).scale(9.0) + (&x2 * &y2).scale(27.0) - (&x2 * x).scale(27.0) + 4.0 * c * c
        - ((x * y).scale(36.0) + y3.scale(4.0)).scale(c);
    base + ((x * &y2).scale(18.0) - y4.scale(5.0) - x2.scale(9.0) - y.scale(8.0 * c)).scale(zeta) + y2.scale(4.0 * zeta * zeta)
}

/// The form `form` with constants `kappa`, `rho` and (form III) `c`.
///
/// For forms II and III the displayed `dxdy` coefficient is taken as the full
/// entry `g12`; read as half of it, the metric leaves the projective class.
pub fn prop13_metric(form: Prop13Form, kappa: f64, rho: f64, c: f64) -> MetricField {
    let label = format!("prop13-{form:?}");
    match form {
        Prop13Form::I => {
            let dom: DomainFn = domain(move |x, y| off_zero(y - rho) && off_zero(y * y + x));
            MetricField::from_fn(label, dom, move |x, y| {
                let s = y * y + x;
                let d = y - rho;
                let d3 = d.powi(3);
                let g12 = s.try_div(&d3)?.scale(-kappa);
                let g22 = (&s * &s).try_div(&(&d3 * &d))?.scale(kappa);
                Ok(MetricJet::new(RJet::zero(x.order()), g12, g22))
            })
        }
        Prop13Form::II | Prop13Form::III => {
            let (zeta, cc) = if form == Prop13Form::II { (0.0, rho) } else { (rho, c) };
            let dom: DomainFn = Arc::new(move |p: Point2| {
                let f = prop13_f(zeta, cc, p.x, p.y);
                f.abs() > DELTA * (1.0 + p.x.abs() + p.y.abs()).powi(6) * 1e-3 && off_zero(p.y * p.y + p.x)
            });
            MetricField::from_fn(label, dom, move |x, y| {
                let s = y * y + x;
                let f = prop13_f_jet(zeta, cc, x, y);
                let k = (&f * &f).recip()?.scale(kappa);
                let s2 = &s * &s;
                let g11 = (&k * &s2).scale(9.0);
                let lin = y * y * y + y.scale(2.0 * zeta) + (x * y).scale(9.0) - 2.0 * cc;
                let g12 = (&k * &(&lin * &s)).scale(-2.0);
                let g22 = &k * &(&(x.scale(12.0) + 4.0 * zeta) * &s2);
                Ok(MetricJet::new(g11, g12, g22))
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{reference_entry, FamilyId};
    use crate::obstructions::{killing_obstruction, killing_residual};
    use crate::projective::{liouville_from_metric, metrizability_residuals_at, ProjectiveConnection};

    fn grid(b: SampleBox, keep: impl Fn(Point2) -> bool) -> Vec<Point2> {
        let mut out = Vec::new();
        for i in 0..7 {
            for j in 0..7 {
                let p = Point2::new(
                    b.x.0 + (b.x.1 - b.x.0) * (i as f64 + 0.37) / 7.0,
                    b.y.0 + (b.y.1 - b.y.0) * (j as f64 + 0.61) / 7.0,
                );
                if keep(p) {
                    out.push(p);
                }
            }
        }
        out
    }

    #[test]
    fn exact_cases_have_killing_fields() {
        for case in KillingCase::exact() {
            let e = killing_entry(case).unwrap();
            let pts = grid(e.sample_box, |p| e.admissible(p));
            assert!(pts.len() > 20);
            for &p in &pts {
                let c = killing_obstruction(&e.metric, p).unwrap();
                assert!(c.relative() < 1e-9, "{} {p:?} {:e}", case.name(), c.relative());
            }
            if let Some(v) = &e.field {
                let r = killing_residual(&e.metric, v, &pts).unwrap();
                assert!(r < 1e-8, "{} residual {r:e}", case.name());
            }
        }
    }

    #[test]
    fn prop13_forms_share_the_connection() {
        let e = reference_entry(FamilyId::GenCIa);
        let conn = ProjectiveConnection::from_metric(&e.generators[0]);
        for (form, rho, c) in [(Prop13Form::I, 1.0, 0.0), (Prop13Form::II, 1.0, 0.0), (Prop13Form::III, 1.0, 0.7)] {
            let g = prop13_metric(form, 1.0, rho, c);
            let a = liouville_from_metric(&g);
            let pts = grid(e.sample_box, |p| e.in_domain(p) && g.in_domain(p));
            assert!(pts.len() > 10);
            for &p in &pts {
                let r = metrizability_residuals_at(&a, &conn, p).unwrap();
                let m = r.iter().fold(0.0f64, |x, &y| x.max(y));
                assert!(m < 1e-9, "{form:?} {p:?} {m:e}");
            }
        }
    }
}
