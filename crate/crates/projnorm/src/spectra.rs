//! Spectral structure of the projective action on the solution space.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jets::{seed_point, Point2, RJet};
use crate::projective::liouville_jet;
use crate::tensorcalc::{
    lie_derivative, LiouvilleSection, MetricField, MetricJet, MixedTensorJet, VectorField,
    LIOUVILLE_WEIGHT,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpectralKind {
    TwoReal,
    Jordan,
    ComplexPair,
}

/// Normal form of the matrix of `L_w` on a two-dimensional solution space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralClass {
    pub kind: SpectralKind,
    pub lambda: Option<f64>,
    pub xi: Option<f64>,
    /// `|lambda| == 1` up to tolerance: both generator orderings normalize to the same value.
    pub ambiguous_order: bool,
}

impl SpectralClass {
    pub fn two_real(lambda: f64) -> Self {
        SpectralClass {
            kind: SpectralKind::TwoReal,
            lambda: Some(lambda),
            xi: xi_from_lambda(lambda).ok(),
            ambiguous_order: (lambda.abs() - 1.0).abs() < 1e-9,
        }
    }

    pub fn complex_pair(lambda: f64) -> Self {
        SpectralClass { kind: SpectralKind::ComplexPair, lambda: Some(lambda), xi: None, ambiguous_order: false }
    }

    pub fn jordan() -> Self {
        SpectralClass { kind: SpectralKind::Jordan, lambda: None, xi: None, ambiguous_order: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BenentiLetter {
    A,
    B,
    C,
}

/// Outcome of the discriminant test on a Benenti tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LetterOutcome {
    Letter(BenentiLetter),
    /// `L` is proportional to the identity at the point.
    Degenerate,
}

/// Matrix of `L_w a_i = sum_j A_ij a_j` together with the fit quality.
#[derive(Debug, Clone, PartialEq)]
pub struct LieMatrix {
    pub a: DMatrix<f64>,
    pub residual: f64,
}

impl LieMatrix {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        eigenvalues(&self.a)
    }
}

/// Eigenvalues sorted by real part, then imaginary part.
pub fn eigenvalues(a: &DMatrix<f64>) -> Vec<Complex64> {
    let mut ev: Vec<Complex64> = a.complex_eigenvalues().iter().copied().collect();
    ev.sort_by(|p, q| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)));
    ev
}

/// Default number of sample points for the least-squares fit.
pub const DEFAULT_FIT_POINTS: usize = 25;
const SVD_CUTOFF: f64 = 1e-12;

/// Least-squares recovery of the matrix of `L_w` on the span of `basis`.
pub fn lie_matrix_recover(w: &VectorField, basis: &[LiouvilleSection], points: &[Point2]) -> Result<LieMatrix> {
    let m = basis.len();
    if m == 0 || points.len() < m * m {
        return Err(Error::RankDeficientBasis { rank: 0, expected: m });
    }
    let rows = 3 * points.len();
    let mut x = DMatrix::<f64>::zeros(rows, m);
    let mut b = DMatrix::<f64>::zeros(rows, m);
    for (pi, &p) in points.iter().enumerate() {
        let (sx, sy) = seed_point(p, 1);
        let wj = w.eval_jets(&sx, &sy)?;
        let mut vals = Vec::with_capacity(m);
        let mut lies = Vec::with_capacity(m);
        for a in basis {
            let aj = a.eval_jets(&sx, &sy)?;
            let l = lie_derivative(&aj, &wj, LIOUVILLE_WEIGHT)?;
            vals.push(sym_values(&aj));
            lies.push(sym_values(&l));
        }
        // per-point weight keeps samples near singular loci from dominating
        let wt = 1.0 / vals.iter().flatten().map(|v| v.abs()).fold(f64::MIN_POSITIVE, f64::max);
        for c in 0..3 {
            for j in 0..m {
                x[(3 * pi + c, j)] = vals[j][c] * wt;
                b[(3 * pi + c, j)] = lies[j][c] * wt;
            }
        }
    }
    let svd = x.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let rank = svd.singular_values.iter().filter(|&&s| s > SVD_CUTOFF * smax).count();
    if rank < m || smax == 0.0 {
        return Err(Error::RankDeficientBasis { rank, expected: m });
    }
    // column j of `sol` solves x * A_j^T = b_j
    let sol = svd.solve(&b, SVD_CUTOFF * smax).map_err(|_| Error::RankDeficientBasis { rank, expected: m })?;
    let a = sol.transpose();
    let mut residual: f64 = 0.0;
    for pi in 0..points.len() {
        for i in 0..m {
            let mut num: f64 = 0.0;
            let mut den: f64 = 0.0;
            for c in 0..3 {
                let r = 3 * pi + c;
                let fit: f64 = (0..m).map(|j| a[(i, j)] * x[(r, j)]).sum();
                let mag: f64 = (0..m).map(|j| (a[(i, j)] * x[(r, j)]).abs()).sum();
                num = num.max((b[(r, i)] - fit).abs());
                den = den.max(b[(r, i)].abs()).max(mag);
            }
            if den > 0.0 {
                residual = residual.max(num / den);
            }
        }
    }
    Ok(LieMatrix { a, residual })
}

fn sym_values(s: &MetricJet) -> [f64; 3] {
    [s.g11.value(), s.g12.value(), s.g22.value()]
}

const SPECTRAL_TOL: f64 = 1e-9;

/// Rescales a 2x2 matrix to one of the three normal forms.
pub fn normalize_spectral(a: &DMatrix<f64>) -> Result<SpectralClass> {
    if a.nrows() != 2 || a.ncols() != 2 {
        return Err(Error::DomainError("normal forms are defined for 2x2 matrices".into()));
    }
    let s = a.norm();
    if s == 0.0 || !s.is_finite() {
        return Err(Error::ZeroMatrix);
    }
    let tr = a[(0, 0)] + a[(1, 1)];
    let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
    let disc = tr * tr - 4.0 * det;
    if disc.abs() <= SPECTRAL_TOL * s * s {
        let off = a - DMatrix::identity(2, 2) * (tr / 2.0);
        if off.norm() > SPECTRAL_TOL.sqrt() * s {
            return Ok(SpectralClass::jordan());
        }
        // scalar matrix: both eigenvalues equal, lambda = 1
        return Ok(SpectralClass::two_real(1.0));
    }
    if disc > 0.0 {
        let r = disc.sqrt();
        let (m1, m2) = ((tr + r) / 2.0, (tr - r) / 2.0);
        let (big, small) = if m1.abs() >= m2.abs() { (m1, m2) } else { (m2, m1) };
        if small == 0.0 {
            return Err(Error::DomainError("zero eigenvalue has no finite normalization".into()));
        }
        Ok(SpectralClass::two_real(big / small))
    } else {
        let re = tr / 2.0;
        let im = (-disc).sqrt() / 2.0;
        Ok(SpectralClass::complex_pair(re.abs() / im))
    }
}

/// `xi = 2(lambda - 1)/(2 lambda + 1)`.
pub fn xi_from_lambda(lambda: f64) -> Result<f64> {
    let d = 2.0 * lambda + 1.0;
    if d == 0.0 {
        return Err(Error::PoleOfMap(lambda));
    }
    Ok(2.0 * (lambda - 1.0) / d)
}

/// Inverse of [`xi_from_lambda`]: `lambda = (xi + 2)/(2 - 2 xi)`.
pub fn lambda_from_xi(xi: f64) -> Result<f64> {
    let d = 2.0 - 2.0 * xi;
    if d == 0.0 {
        return Err(Error::PoleOfMap(xi));
    }
    Ok((xi + 2.0) / d)
}

/// Benenti tensor `L(g, gbar) = |det gbar / det g|^{1/3} gbar^{-1} g` as a jet.
pub fn benenti(g: &MetricField, gbar: &MetricField, p: Point2, order: usize) -> Result<MixedTensorJet> {
    let (x, y) = seed_point(p, order);
    benenti_jet(&g.eval_jets(&x, &y)?, &gbar.eval_jets(&x, &y)?)
}

pub fn benenti_jet(g: &MetricJet, gbar: &MetricJet) -> Result<MixedTensorJet> {
    let dg = g.det();
    if dg.value() == 0.0 {
        return Err(Error::SingularMetric);
    }
    let ratio = gbar.det().try_div(&dg)?;
    let f = ratio.pow_abs(1.0 / 3.0).map_err(|_| Error::SingularMetric)?;
    let gi = gbar.inv()?;
    Ok(MixedTensorJet::from_sym(&gi).mul(&MixedTensorJet::from_sym(g)).scale_jet(&f))
}

/// The same tensor through the Liouville sections: `|det abar / det a| abar^{-1} a`.
pub fn benenti_sigma_jet(g: &MetricJet, gbar: &MetricJet) -> Result<MixedTensorJet> {
    let a = liouville_jet(g)?;
    let ab = liouville_jet(gbar)?;
    let ratio = ab.det().try_div(&a.det())?;
    let f = if ratio.value() < 0.0 { -ratio } else { ratio };
    let abi = ab.inv().map_err(|_| Error::SingularMetric)?;
    Ok(MixedTensorJet::from_sym(&abi).mul(&MixedTensorJet::from_sym(&a)).scale_jet(&f))
}

/// Largest relative componentwise difference between the two Benenti forms.
pub fn benenti_cross_check(g: &MetricField, gbar: &MetricField, p: Point2, order: usize) -> Result<f64> {
    let (x, y) = seed_point(p, order);
    let (gj, gb) = (g.eval_jets(&x, &y)?, gbar.eval_jets(&x, &y)?);
    let l1 = benenti_jet(&gj, &gb)?;
    let l2 = benenti_sigma_jet(&gj, &gb)?;
    let scale = l1.m.iter().flatten().map(|j| j.max_abs()).fold(f64::MIN_POSITIVE, f64::max);
    let diff = l1
        .m
        .iter()
        .flatten()
        .zip(l2.m.iter().flatten())
        .map(|(a, b)| (a - b).max_abs())
        .fold(0.0, f64::max);
    Ok(diff / scale)
}

const LETTER_TAU: f64 = 1e-9;

/// Discriminant test on the constant term of `L`.
pub fn benenti_letter(l: &MixedTensorJet) -> LetterOutcome {
    letter_of_matrix(l.values())
}

pub fn letter_of_matrix(m: [[f64; 2]; 2]) -> LetterOutcome {
    let s = m.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let d = tr * tr - 4.0 * det;
    if d > LETTER_TAU * s * s {
        LetterOutcome::Letter(BenentiLetter::A)
    } else if d < -LETTER_TAU * s * s {
        LetterOutcome::Letter(BenentiLetter::B)
    } else {
        let h = tr / 2.0;
        let off = ((m[0][0] - h).powi(2) + m[0][1].powi(2) + m[1][0].powi(2) + (m[1][1] - h).powi(2)).sqrt();
        if off > LETTER_TAU * s {
            LetterOutcome::Letter(BenentiLetter::C)
        } else {
            LetterOutcome::Degenerate
        }
    }
}

/// Result of fitting `L_w g = eta g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomothetyReport {
    pub homothetic: bool,
    pub eta: f64,
    /// Largest relative misfit of `L_w g - eta g`.
    pub misfit: f64,
    /// Largest relative misfit of `L_w a + (eta/3) a` for `a = psi^{-1}(g)`.
    pub section_misfit: f64,
}

const HOMOTHETY_TOL: f64 = 1e-9;

/// Decides whether `w` is homothetic for `g` on the sample set.
pub fn homothety_check(g: &MetricField, w: &VectorField, points: &[Point2]) -> Result<HomothetyReport> {
    let mut samples = Vec::with_capacity(points.len());
    let (mut num, mut den) = (0.0, 0.0);
    for &p in points {
        let (x, y) = seed_point(p, 1);
        let gj = g.eval_jets(&x, &y)?;
        let wj = w.eval_jets(&x, &y)?;
        let l = sym_values(&lie_derivative(&gj, &wj, 0.0)?);
        let a = liouville_jet(&gj)?;
        let la = sym_values(&lie_derivative(&a, &wj, LIOUVILLE_WEIGHT)?);
        let gv = sym_values(&gj);
        let scale = lie_scale(&gj, &wj);
        let ascale = lie_scale(&a, &wj);
        // weighted normal equation for eta, components counted with multiplicity
        let wt = 1.0 / (scale * scale).max(f64::MIN_POSITIVE);
        for c in 0..3 {
            let mult = if c == 1 { 2.0 } else { 1.0 };
            num += mult * wt * l[c] * gv[c];
            den += mult * wt * gv[c] * gv[c];
        }
        samples.push((l, gv, scale, la, sym_values(&a), ascale));
    }
    let eta = if den > 0.0 { num / den } else { 0.0 };
    let mut misfit: f64 = 0.0;
    let mut section_misfit: f64 = 0.0;
    for (l, gv, scale, la, av, ascale) in samples {
        for c in 0..3 {
            misfit = misfit.max((l[c] - eta * gv[c]).abs() / scale);
            section_misfit = section_misfit.max((la[c] + eta / 3.0 * av[c]).abs() / ascale);
        }
    }
    Ok(HomothetyReport { homothetic: misfit < HOMOTHETY_TOL, eta, misfit, section_misfit })
}

// Magnitude bound for the summands of a Lie derivative at the base point.
fn lie_scale(t: &MetricJet, w: &crate::tensorcalc::VectorFieldJet) -> f64 {
    let d = |j: &RJet, i: usize, k: usize| j.coeff(i, k).abs();
    let wv = w.w1.value().abs().max(w.w2.value().abs());
    let dw = [d(&w.w1, 1, 0), d(&w.w1, 0, 1), d(&w.w2, 1, 0), d(&w.w2, 0, 1)]
        .into_iter()
        .fold(0.0, f64::max);
    let tv = t.values().iter().flatten().map(|v| v.abs()).fold(0.0, f64::max);
    let dt = [&t.g11, &t.g12, &t.g22]
        .iter()
        .map(|j| d(j, 1, 0).max(d(j, 0, 1)))
        .fold(0.0, f64::max);
    (2.0 * wv * dt + 6.0 * tv * dw).max(f64::MIN_POSITIVE)
}

/// `(K1, K2) -> (K, theta)` with `K1 = K e^{lambda theta} sin theta`, `K2 = K e^{lambda theta} cos theta`.
///
/// For `lambda = 0` the angle is taken in `(-pi, pi]`, for `lambda > 0` the
/// modulus is normalized into `[1, e^{2 lambda pi})`.
pub fn polar_reparam(k1: f64, k2: f64, lambda: f64) -> Result<(f64, f64)> {
    if k1 == 0.0 && k2 == 0.0 {
        return Err(Error::OriginExcluded);
    }
    if lambda < 0.0 || !lambda.is_finite() {
        return Err(Error::DomainError("lambda must be non-negative".into()));
    }
    let r = k1.hypot(k2);
    let phi = k1.atan2(k2);
    if lambda == 0.0 {
        return Ok((r, phi));
    }
    let alpha = (r.ln() / lambda - phi).rem_euclid(2.0 * PI);
    let theta = r.ln() / lambda - alpha;
    Ok(((lambda * alpha).exp(), theta))
}

/// Inverse of [`polar_reparam`].
pub fn polar_inverse(k: f64, theta: f64, lambda: f64) -> (f64, f64) {
    let r = k * (lambda * theta).exp();
    (r * theta.sin(), r * theta.cos())
}

/// Fits `exp(t A)` action on coefficient vectors: `K'(t) = exp(t A^T) K`.
pub fn orbit_coefficients(a: &DMatrix<f64>, k: &DVector<f64>, t: f64) -> DVector<f64> {
    expm(&(a.transpose() * t)) * k
}

/// Matrix exponential by scaling and squaring with a Taylor core.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let norm = a.norm();
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let b = a / 2f64.powi(s);
    let mut term = DMatrix::identity(n, n);
    let mut sum = DMatrix::identity(n, n);
    for k in 1..=20 {
        term = &term * &b / k as f64;
        sum += &term;
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}
