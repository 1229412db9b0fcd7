//! The Jordan-block functions `Y(y)` given by indefinite integrals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jets::{Axis, Point2, RJet};

/// Relative tolerance of the adaptive Simpson rule.
pub const QUAD_RTOL: f64 = 1e-12;
/// Maximal recursion depth.
pub const QUAD_MAX_DEPTH: usize = 60;

/// Which integrand defines `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum YKind {
    /// `Y' = e^{3/(2y)} / |y|^{3/2}`, on one sign branch.
    CII,
    /// `Y' = e^{-(3 lambda/2) arctan y} / (y^2+1)^{3/4}`.
    CIII { lambda: f64 },
}

impl YKind {
    /// Lower limit of the integral for a point on the branch of `y`.
    pub fn anchor(&self, y: f64) -> Result<f64> {
        match self {
            YKind::CII => {
                if y > 0.0 {
                    Ok(1.0)
                } else if y < 0.0 {
                    Ok(-1.0)
                } else {
                    Err(Error::BranchCrossing)
                }
            }
            YKind::CIII { .. } => Ok(0.0),
        }
    }

    /// Integrand value.
    pub fn integrand(&self, s: f64) -> f64 {
        match *self {
            YKind::CII => (1.5 / s).exp() / s.abs().powf(1.5),
            YKind::CIII { lambda } => (-1.5 * lambda * s.atan()).exp() / (s * s + 1.0).powf(0.75),
        }
    }

    /// Integrand composed with a jet.
    pub fn integrand_jet(&self, s: &RJet) -> Result<RJet> {
        match *self {
            YKind::CII => {
                if s.value() == 0.0 {
                    return Err(Error::BranchCrossing);
                }
                Ok(s.recip()?.scale(1.5).exp() * s.pow_abs(-1.5)?)
            }
            YKind::CIII { lambda } => {
                let q = s * s + 1.0;
                Ok(s.arctan()?.scale(-1.5 * lambda).exp() * q.pow_abs(-0.75)?)
            }
        }
    }
}

/// `int_a^b f` by adaptive Simpson with relative tolerance [`QUAD_RTOL`].
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // a coarse composite pass fixes the absolute target
    let n = 64;
    let h = (b - a) / n as f64;
    let coarse: f64 = (0..n)
        .map(|k| {
            let (l, r) = (a + k as f64 * h, a + (k + 1) as f64 * h);
            h / 6.0 * (f(l) + 4.0 * f(0.5 * (l + r)) + f(r))
        })
        .sum();
    let tol = (QUAD_RTOL * coarse.abs()).max(f64::MIN_POSITIVE);
    if !whole.is_finite() || !coarse.is_finite() {
        return Err(Error::QuadratureFailure);
    }
    simpson_rec(f, a, b, fa, fm, fb, whole, tol, QUAD_MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if !delta.is_finite() {
        return Err(Error::QuadratureFailure);
    }
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::QuadratureFailure);
    }
    Ok(simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}

/// Value of `Y` at `y`, integrated from the branch anchor.
pub fn y_value(kind: YKind, y: f64) -> Result<f64> {
    let a = kind.anchor(y)?;
    adaptive_simpson(&|s| kind.integrand(s), a, y)
}

/// `Y` as a univariate jet in the `y` slot at `y`, of the given order.
///
/// Only the value comes from quadrature; higher coefficients are those of the integrand.
pub fn y_integral(kind: YKind, y: f64, order: usize) -> Result<RJet> {
    let s = RJet::seed(Point2::new(0.0, y), Axis::Y, order);
    y_integral_jet(kind, &s)
}

/// `Y` composed with an arbitrary jet.
pub fn y_integral_jet(kind: YKind, y: &RJet) -> Result<RJet> {
    let y0 = y.value();
    let n = y.order();
    let c = y_series(kind, y0, n)?;
    Ok(y.compose_univariate(&c))
}

// Taylor coefficients of Y at y0 up to degree n.
fn y_series(kind: YKind, y0: f64, n: usize) -> Result<Vec<f64>> {
    let mut c = vec![y_value(kind, y0)?];
    if n > 0 {
        let s = RJet::seed(Point2::new(y0, 0.0), Axis::X, n - 1);
        let f = kind.integrand_jet(&s)?;
        for k in 1..=n {
            c.push(f.coeff(k - 1, 0) / k as f64);
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ciii_lambda_zero_oracle() {
        // independent 30-digit quadrature of (s^2+1)^(-3/4) on [0,1]
        let v = y_value(YKind::CIII { lambda: 0.0 }, 1.0).unwrap();
        assert_relative_eq!(v, 0.830_896_216_180_937_5, max_relative = 1e-11);
    }

    #[test]
    fn cii_branch_values() {
        let v = y_value(YKind::CII, 2.0).unwrap();
        assert_relative_eq!(v, 1.808_191_338_175_693_5, max_relative = 1e-11);
        let w = y_value(YKind::CII, -0.5).unwrap();
        assert_relative_eq!(w, 0.099_797_114_268_995_8, max_relative = 1e-11);
        let u = y_value(YKind::CIII { lambda: 0.3 }, -2.0).unwrap();
        assert_relative_eq!(u, -1.653_803_782_215_739, max_relative = 1e-11);
    }

    #[test]
    fn derivative_is_integrand() {
        for &(kind, y) in &[(YKind::CII, 0.7), (YKind::CII, -1.3), (YKind::CIII { lambda: 0.4 }, 0.9)] {
            let j = y_integral(kind, y, 3).unwrap();
            assert_relative_eq!(j.derivative(0, 1).unwrap(), kind.integrand(y), max_relative = 1e-13);
        }
    }

    #[test]
    fn cii_ode() {
        for &y in &[0.4, 0.9, 2.5, -0.6, -2.0] {
            let j = y_integral(YKind::CII, y, 2).unwrap();
            let (d1, d2) = (j.derivative(0, 1).unwrap(), j.derivative(0, 2).unwrap());
            let r = y * y * d2 + 1.5 * (y + 1.0) * d1;
            assert!(r.abs() < 1e-10 * (y * y * d2).abs().max(d1.abs()), "y={y} r={r}");
        }
    }

    #[test]
    fn zero_is_a_branch_crossing() {
        assert!(matches!(y_value(YKind::CII, 0.0), Err(Error::BranchCrossing)));
    }
}
