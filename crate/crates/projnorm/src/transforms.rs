//! Explicit coordinate changes: isometries between normal forms, projective
//! flows of the catalog families and length profiles along their orbits.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{CatalogEntry, FlowKind, SampleBox, YKind, DELTA};
use crate::catalog::quadrature::y_integral_jet;
use crate::error::{Error, Result};
use crate::jets::{seed_point, Point2, RJet};
use crate::projective::combination_section;
use crate::spectra::{lie_matrix_recover, orbit_coefficients, polar_reparam};
use crate::tensorcalc::{congruence, pullback_metric, DomainFn, LiouvilleSection, Map2, MetricField, MetricJet};

/// `k = (9/8)^{1/5}`, the scale that matches the C(Ia) representative to the others.
pub fn lemma_k() -> f64 {
    (9.0f64 / 8.0).powf(0.2)
}

/// A closed-form map `(u, v) -> (x, y)` evaluated on jets.
#[derive(Clone)]
pub struct NamedMap {
    pub name: String,
    pub forward: Map2,
    pub domain: DomainFn,
    /// `tau^* g_dst = factor * g_src` for the pair the map is shipped with.
    pub factor: f64,
    /// Box from which source samples are drawn.
    pub sample_box: SampleBox,
    pub citation: String,
}

impl std::fmt::Debug for NamedMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NamedMap").field("name", &self.name).field("factor", &self.factor).finish()
    }
}

impl NamedMap {
    fn new(name: &str, citation: &str, factor: f64, sample_box: SampleBox, domain: DomainFn, forward: Map2) -> Self {
        NamedMap { name: name.into(), forward, domain, factor, sample_box, citation: citation.into() }
    }

    pub fn apply(&self, p: Point2) -> Result<Point2> {
        let (x, y) = seed_point(p, 0);
        let (a, b) = (self.forward)(&x, &y)?;
        Ok(Point2::new(a.value(), b.value()))
    }

    /// Determinant of the Jacobian at `p`.
    pub fn jacobian_det(&self, p: Point2) -> Result<f64> {
        let (x, y) = seed_point(p, 1);
        let (a, b) = (self.forward)(&x, &y)?;
        Ok(a.coeff(1, 0) * b.coeff(0, 1) - a.coeff(0, 1) * b.coeff(1, 0))
    }

    pub fn with_factor(mut self, factor: f64) -> Self {
        self.factor = factor;
        self
    }

    /// Seeded source samples whose images lie in `dst`'s domain.
    pub fn sample_points<R: Rng>(&self, rng: &mut R, n: usize, dst: &MetricField) -> Result<Vec<Point2>> {
        let b = self.sample_box;
        let mut out = Vec::with_capacity(n);
        for _ in 0..1000 * n.max(1) {
            if out.len() == n {
                break;
            }
            let p = Point2::new(rng.gen_range(b.x.0..=b.x.1), rng.gen_range(b.y.0..=b.y.1));
            if !(self.domain)(p) {
                continue;
            }
            if let Ok(q) = self.apply(p) {
                if q.is_finite() && dst.in_domain(q) {
                    out.push(p);
                }
            }
        }
        if out.len() < n {
            return Err(Error::DomainError(format!("{}: too few admissible samples", self.name)));
        }
        Ok(out)
    }
}

fn map2<F>(f: F) -> Map2
where
    F: Fn(&RJet, &RJet) -> Result<(RJet, RJet)> + Send + Sync + 'static,
{
    Arc::new(f)
}

/// Distance of `v` to the nearest point of `offset + N pi/3`.
fn band_gap(v: f64, offset: f64) -> f64 {
    let r = (v - offset).rem_euclid(FRAC_PI_3);
    r.min(FRAC_PI_3 - r)
}

fn lemma_c_maps(sign: f64, minus_family: bool) -> NamedMap {
    let k = lemma_k();
    let (name, factor) = match (minus_family, sign > 0.0) {
        (false, true) => ("g1B+_to_g1C_plus", 1.0),
        (false, false) => ("g1B+_to_g1C_minus", -1.0),
        (true, true) => ("g1B-_to_g1C_plus", -1.0),
        (true, false) => ("g1B-_to_g1C_minus", 1.0),
    };
    let offset = if minus_family { FRAC_PI_6 } else { 0.0 };
    let dom: DomainFn = Arc::new(move |p: Point2| band_gap(p.y, offset) > DELTA);
    let forward = map2(move |u, v| {
        let e2u = u.scale(2.0).exp();
        let eu = u.exp();
        let (trig_x, trig_y) = if minus_family { (v.cos(), v.sin()) } else { (v.sin(), v.cos()) };
        let x = (&e2u * &(&trig_x * &trig_x)).scale(-4.0 * k * k / 3.0);
        let y = (&eu * &trig_y).scale(2.0 * k * sign);
        Ok((x, y))
    });
    let cite = if minus_family {
        "complex-Liouville pair with imaginary phase onto the Jordan pair"
    } else {
        "complex-Liouville pair with real phase onto the Jordan pair"
    };
    NamedMap::new(name, cite, factor, SampleBox::new(-1.0, 0.5, 0.0, 2.0 * std::f64::consts::PI), dom, forward)
}

fn lemma_9(sign: f64) -> NamedMap {
    let name = if sign > 0.0 { "g2b_to_ghat_plus" } else { "g2b_to_ghat_minus" };
    let dom: DomainFn = Arc::new(|p: Point2| {
        let a = (-2.0 * p.y).exp();
        let b = 4.0 * (-2.0 * p.x).exp();
        (a - b).abs() > DELTA * (a + b)
    });
    let forward = map2(move |u, v| {
        let a = u.scale(-2.0).exp();
        let b = (v.scale(2.0) - &u.scale(4.0)).exp();
        let x = (b - a).scale(1.0 / 3.0);
        let y = (v - &u.scale(2.0)).exp().scale(sign);
        Ok((x, y))
    });
    NamedMap::new(name, "Liouville representative with xi = 2 onto the Jordan pair", -1.0 / 9.0, SampleBox::new(-1.0, 1.0, -1.0, 1.0), dom, forward)
}

/// `(x, y) -> (k^2 x, k y)`, the scaling that multiplies the three C(Ia) generators
/// by `k^{alpha_i}` with `alpha = (5, 2, -4)`.
pub fn dom3_scale(k: f64) -> NamedMap {
    let forward = map2(move |x, y| Ok((x.scale(k * k), y.scale(k))));
    NamedMap::new("dom3_scale", "scaling of the mobility-3 generators", 1.0, SampleBox::new(1.0, 2.0, 0.3, 1.5), Arc::new(|_| true), forward)
}

/// Exponents `alpha_i` with `dom3_scale(k)^* g_i = k^{alpha_i} g_i`.
pub const DOM3_ALPHA: [f64; 3] = [5.0, 2.0, -4.0];

/// Every name accepted by [`named_map`].
pub const MAP_NAMES: [&str; 10] = [
    "identity",
    "g1a_to_g1C",
    "g1B+_to_g1C_plus",
    "g1B+_to_g1C_minus",
    "g1B-_to_g1C_plus",
    "g1B-_to_g1C_minus",
    "g2b_to_ghat_plus",
    "g2b_to_ghat_minus",
    "dom3_scale",
    "dom3_scale_k",
];

/// Looks a shipped map up by name. `dom3_scale` uses `k = 2`, `dom3_scale_k` the lemma constant.
pub fn named_map(name: &str) -> Result<NamedMap> {
    let k = lemma_k();
    Ok(match name {
        "identity" => NamedMap::new(
            "identity",
            "identity",
            1.0,
            SampleBox::new(-1.0, 1.0, -1.0, 1.0),
            Arc::new(|_| true),
            map2(|x, y| Ok((x.clone(), y.clone()))),
        ),
        "g1a_to_g1C" => {
            let dom: DomainFn = Arc::new(|p: Point2| p.x - p.y > DELTA);
            let forward = map2(move |u, v| {
                let d = u.exp() - &v.exp();
                Ok(((&d * &d).scale(k * k / 3.0), (u.exp() + &v.exp()).scale(k)))
            });
            NamedMap::new(name, "Liouville representative with xi = 3 onto the Jordan pair", 1.0, SampleBox::new(-1.0, 1.0, -1.0, 1.0), dom, forward)
        }
        "g1B+_to_g1C_plus" => lemma_c_maps(1.0, false),
        "g1B+_to_g1C_minus" => lemma_c_maps(-1.0, false),
        "g1B-_to_g1C_plus" => lemma_c_maps(1.0, true),
        "g1B-_to_g1C_minus" => lemma_c_maps(-1.0, true),
        "g2b_to_ghat_plus" => lemma_9(1.0),
        "g2b_to_ghat_minus" => lemma_9(-1.0),
        "dom3_scale" => dom3_scale(2.0),
        "dom3_scale_k" => {
            let mut m = dom3_scale(k);
            m.name = name.into();
            m
        }
        _ => return Err(Error::UnknownMap(name.into())),
    })
}

/// `(e^{-2y} - 4 e^{-2x})(4 dx^2 - dy^2)`, a multiple of the A(I) metric `g2` with `(xi, h, eps) = (2, 4, -1)`.
pub fn g2b_metric() -> MetricField {
    MetricField::from_fn("g2b", Arc::new(|_| true), |x, y| {
        let f = y.scale(-2.0).exp() - &x.scale(-2.0).exp().scale(4.0);
        let z = RJet::zero(x.order());
        Ok(MetricJet::new(f.scale(4.0), z, -f))
    })
}

/// Largest relative distance between `tau^* dst` and `factor * src` over the samples.
pub fn verify_isometry(map: &NamedMap, src: &MetricField, dst: &MetricField, points: &[Point2]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &p in points {
        if !(map.domain)(p) || !src.in_domain(p) {
            return Err(Error::OutOfDomain { x: p.x, y: p.y });
        }
        let q = map.apply(p)?;
        if !dst.in_domain(q) {
            return Err(Error::OutOfDomain { x: q.x, y: q.y });
        }
        let pulled = pullback_metric(&map.forward, dst, p, 0)?;
        let want = src.eval(p, 0)?.scale(map.factor);
        worst = worst.max(pulled.rel_diff(&want));
    }
    Ok(worst)
}

/// Pullback of a Liouville section (weight `-4/3`) along `tau` at `p`.
pub fn pullback_section(tau: &Map2, s: &LiouvilleSection, p: Point2, order: usize) -> Result<MetricJet> {
    let (u, v) = seed_point(p, order + 1);
    let (x, y) = tau(&u, &v)?;
    let j = [[x.dx()?, x.dy()?], [y.dx()?, y.dy()?]];
    let det = &j[0][0] * &j[1][1] - &j[0][1] * &j[1][0];
    if det.value() == 0.0 || !det.value().is_finite() {
        return Err(Error::SingularJacobian);
    }
    let a = s.eval_jets(&x.truncate(order), &y.truncate(order))?;
    Ok(congruence(&a, &j).scale_jet(&det.pow_abs(-4.0 / 3.0)?))
}

/// Flow of `w` in closed form, on jets.
pub fn flow_jets(kind: FlowKind, t: f64, x: &RJet, y: &RJet) -> Result<(RJet, RJet)> {
    match kind {
        FlowKind::Translation { a, b } => Ok((x.clone() + a * t, y.clone() + b * t)),
        FlowKind::Scaling { a, b } => Ok((x.scale((a * t).exp()), y.scale((b * t).exp()))),
        FlowKind::JordanCII => {
            let q = RJet::constant(1.0, y.order()) - &y.scale(t);
            if q.value() <= 0.0 || y.value() == 0.0 {
                return Err(Error::DomainWindowExceeded);
            }
            let yt = y.try_div(&q)?;
            let u0 = y_integral_jet(YKind::CII, y)? + x;
            let u = (&u0 * &q.pow_abs(-0.5)?).scale((-1.5 * t).exp());
            Ok((u - &y_integral_jet(YKind::CII, &yt)?, yt))
        }
        FlowKind::ComplexCIII { lambda } => {
            let kind = YKind::CIII { lambda };
            let a0 = y.arctan()?;
            let at = a0.clone() + t;
            let ct = at.cos();
            if ct.value() <= 0.0 {
                return Err(Error::DomainWindowExceeded);
            }
            let yt = at.tan()?;
            let u0 = y_integral_jet(kind, y)? + x;
            let u = (&u0 * &a0.cos().try_div(&ct)?.sqrt_abs()?).scale((-1.5 * lambda * t).exp());
            Ok((u - &y_integral_jet(kind, &yt)?, yt))
        }
    }
}

/// `phi_t` of the entry's projective vector field as a named map.
pub fn flow_map(entry: &CatalogEntry, t: f64) -> Result<NamedMap> {
    if !t.is_finite() {
        return Err(Error::DomainWindowExceeded);
    }
    let kind = entry.flow;
    let b = entry.sample_box;
    let centre = Point2::new(0.5 * (b.x.0 + b.x.1), 0.5 * (b.y.0 + b.y.1));
    let forward = map2(move |x, y| flow_jets(kind, t, x, y));
    let gens = entry.generators.clone();
    let dom: DomainFn = Arc::new(move |p: Point2| gens.iter().all(|g| g.in_domain(p)));
    let map = NamedMap::new(&format!("flow[{}](t={t})", entry.id), "flow of the projective vector field", 1.0, b, dom, forward);
    match map.apply(centre) {
        Ok(q) if q.is_finite() => Ok(map),
        _ => Err(Error::DomainWindowExceeded),
    }
}

/// Samples `p` of the entry whose flow image `phi_t(p)` stays in every generator domain.
pub fn orbit_samples<R: Rng>(entry: &CatalogEntry, t: f64, rng: &mut R, n: usize) -> Result<Vec<Point2>> {
    let map = flow_map(entry, t)?;
    let mut out = Vec::with_capacity(n);
    for _ in 0..200 {
        if out.len() == n {
            break;
        }
        for p in entry.sample_points(rng, n)? {
            if out.len() == n {
                break;
            }
            if let Ok(q) = map.apply(p) {
                if q.is_finite() && entry.generators.iter().all(|g| g.in_domain(q)) {
                    out.push(p);
                }
            }
        }
    }
    if out.len() < n {
        return Err(Error::DomainWindowExceeded);
    }
    Ok(out)
}

/// Orbit-invariant modulus of a complex-pair family before and after the flow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarCheck {
    pub lambda: f64,
    pub k_before: f64,
    pub k_after: f64,
}

impl PolarCheck {
    pub fn rel_diff(&self) -> f64 {
        (self.k_after - self.k_before).abs() / self.k_before.abs().max(f64::MIN_POSITIVE)
    }
}

/// Outcome of comparing `phi_t^*(sum K_i a_i)` with `sum K'_i a_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub t: f64,
    pub k: Vec<f64>,
    pub k_predicted: Vec<f64>,
    pub max_rel: f64,
    pub n_points: usize,
    pub polar: Option<PolarCheck>,
}

/// Coordinates `Kt = D P K` in which `A^T` becomes `p Id + m [[0, 1], [-1, 0]]` with `m > 0`;
/// the flow then advances the polar angle by `m t` and scales by `e^{p t}`.
fn polar_frame(a: &DMatrix<f64>) -> Option<(bool, f64, f64)> {
    let at = a.transpose();
    let (mut q, mut r) = (at[(0, 1)], at[(1, 0)]);
    let swap = q < 0.0;
    if swap {
        std::mem::swap(&mut q, &mut r);
    }
    if q <= 0.0 || r >= 0.0 {
        return None;
    }
    let delta = (-q / r).sqrt();
    let m = q / delta;
    let lambda = 0.5 * (at[(0, 0)] + at[(1, 1)]) / m;
    Some((swap, delta, lambda))
}

fn polar_modulus(k: &DVector<f64>, frame: (bool, f64, f64)) -> Result<f64> {
    let (swap, delta, lambda) = frame;
    let (k1, k2) = if swap { (k[1], k[0]) } else { (k[0], k[1]) };
    Ok(polar_reparam(k1, delta * k2, lambda.abs())?.0)
}

fn combination(sections: &[LiouvilleSection], k: &[f64], p: Point2) -> Result<MetricJet> {
    let mut acc = MetricJet::new(RJet::zero(0), RJet::zero(0), RJet::zero(0));
    for (s, &c) in sections.iter().zip(k) {
        acc = acc.add(&s.eval(p, 0)?.scale(c));
    }
    Ok(acc)
}

/// Pullback of `sum K_i a_i` along `phi_t` against the prediction `K' = exp(t A^T) K`,
/// with `A` recovered on the same samples.
pub fn verify_orbit_action(entry: &CatalogEntry, t: f64, k: &[f64], points: &[Point2]) -> Result<OrbitReport> {
    let sections = entry.sections();
    if k.len() != sections.len() {
        return Err(Error::InvalidParams(format!("expected {} coefficients", sections.len())));
    }
    let lm = lie_matrix_recover(&entry.w, &sections, points)?;
    let kv = DVector::from_column_slice(k);
    let kp = orbit_coefficients(&lm.a, &kv, t);
    let map = flow_map(entry, t)?;
    let combined = combination_section(&sections, k)?;
    let mut worst = 0.0f64;
    for &p in points {
        let pulled = pullback_section(&map.forward, &combined, p, 0)?;
        let want = combination(&sections, kp.as_slice(), p)?;
        worst = worst.max(pulled.rel_diff(&want));
    }
    let complex = sections.len() == 2 && lm.eigenvalues().iter().any(|e| e.im.abs() > 1e-6);
    let polar = match polar_frame(&lm.a).filter(|_| complex) {
        Some(fr) => Some(PolarCheck { lambda: fr.2, k_before: polar_modulus(&kv, fr)?, k_after: polar_modulus(&kp, fr)? }),
        None => None,
    };
    Ok(OrbitReport { t, k: k.to_vec(), k_predicted: kp.as_slice().to_vec(), max_rel: worst, n_points: points.len(), polar })
}

/// `g(w, w)` along the orbit of `p0`, with detected poles and zeros in `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowProfile {
    pub samples: Vec<(f64, f64)>,
    /// Requested parameters that were not evaluated (near a pole or outside the domain).
    pub skipped: Vec<f64>,
    pub poles: Vec<f64>,
    pub zeros: Vec<f64>,
}

/// Minimum distance to a detected pole at which the profile is evaluated.
pub const POLE_GUARD: f64 = 1e-3;

const PROFILE_SUBSTEPS: usize = 32;

/// `g(w, w)` at `phi_t(p0)`; with `raw` the domain predicate is bypassed so that
/// pole searches can approach the excluded loci.
fn length_at(g: &MetricField, flow: FlowKind, p0: Point2, t: f64, raw: bool) -> Option<f64> {
    let (x, y) = seed_point(p0, 0);
    let (a, b) = flow_jets(flow, t, &x, &y).ok()?;
    let q = Point2::new(a.value(), b.value());
    if !q.is_finite() || (!raw && !g.in_domain(q)) {
        return None;
    }
    let w = flow.vector_field().value(q).ok()?;
    let (qx, qy) = seed_point(q, 0);
    let m = (g.evaluator())(&qx, &qy).ok()?.values();
    let v = m[0][0] * w[0] * w[0] + 2.0 * m[0][1] * w[0] * w[1] + m[1][1] * w[1] * w[1];
    v.is_finite().then_some(v)
}

/// Golden-section minimum of `f` on `[a, b]`.
fn golden_min(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    for _ in 0..200 {
        if (b - a).abs() <= 1e-15 * (1.0 + a.abs()) {
            break;
        }
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    0.5 * (a + b)
}

/// Local minima of `f` on the grid that refine to (numerically) zero.
fn grid_roots(f: &impl Fn(f64) -> f64, grid: &[f64], accept: f64) -> Vec<f64> {
    let vals: Vec<f64> = grid.iter().map(|&t| f(t)).collect();
    let mut out: Vec<f64> = Vec::new();
    for i in 1..grid.len().saturating_sub(1) {
        if vals[i].is_finite() && vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1] {
            let t = golden_min(f, grid[i - 1], grid[i + 1]);
            if f(t) < accept && out.last().is_none_or(|&l| (t - l).abs() > 1e-9) {
                out.push(t);
            }
        }
    }
    out
}

/// Length profile of `g` along the flow through `p0`.
pub fn length_profile(g: &MetricField, flow: FlowKind, p0: Point2, ts: &[f64]) -> FlowProfile {
    let mut sorted = ts.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut grid = Vec::new();
    for pair in sorted.windows(2) {
        for k in 0..PROFILE_SUBSTEPS {
            grid.push(pair[0] + (pair[1] - pair[0]) * k as f64 / PROFILE_SUBSTEPS as f64);
        }
    }
    if let Some(&l) = sorted.last() {
        grid.push(l);
    }
    let value = |t: f64| length_at(g, flow, p0, t, false);
    let raw = |t: f64| length_at(g, flow, p0, t, true);
    let scale = grid.iter().filter_map(|&t| value(t)).map(f64::abs).fold(0.0, f64::max).max(1.0);
    let recip = |t: f64| raw(t).map_or(f64::INFINITY, |v| 1.0 / v.abs());
    let magnitude = |t: f64| raw(t).map_or(f64::INFINITY, f64::abs);
    let poles = grid_roots(&recip, &grid, 1e-8 / scale);
    let zeros = grid_roots(&magnitude, &grid, 1e-10 * scale);
    let mut samples = Vec::new();
    let mut skipped = Vec::new();
    for &t in ts {
        let near = poles.iter().any(|&p| (p - t).abs() < POLE_GUARD);
        match value(t).filter(|_| !near) {
            Some(v) => samples.push((t, v)),
            None => skipped.push(t),
        }
    }
    FlowProfile { samples, skipped, poles, zeros }
}

/// [`length_profile`] of the entry's metric along its own flow.
pub fn flow_length_profile(entry: &CatalogEntry, p0: Point2, ts: &[f64]) -> FlowProfile {
    length_profile(&entry.metric, entry.flow, p0, ts)
}
