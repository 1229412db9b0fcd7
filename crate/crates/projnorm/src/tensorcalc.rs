//! Tensor calculus on jet-valued fields in two dimensions.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jets::{seed_point, CJet, Jet, Point2, RJet, Scalar};

/// Density weight of the Liouville tensor.
pub const LIOUVILLE_WEIGHT: f64 = -4.0 / 3.0;

/// Symmetric 2x2 matrix of jets, `g = g11 dx^2 + 2 g12 dx dy + g22 dy^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricJet<T: Scalar = f64> {
    pub g11: Jet<T>,
    pub g12: Jet<T>,
    pub g22: Jet<T>,
}

/// Values of a Liouville section share the symmetric layout.
pub type SymJet = MetricJet<f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct VectorFieldJet {
    pub w1: RJet,
    pub w2: RJet,
}

/// A (1,1) tensor, `m[i][j]` is row `i`, column `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedTensorJet {
    pub m: [[RJet; 2]; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Signature {
    Riemannian,
    Lorentzian,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Signature::Riemannian => write!(f, "riemannian"),
            Signature::Lorentzian => write!(f, "lorentzian"),
        }
    }
}

impl<T: Scalar> MetricJet<T> {
    pub fn new(g11: Jet<T>, g12: Jet<T>, g22: Jet<T>) -> Self {
        MetricJet { g11, g12, g22 }
    }

    pub fn order(&self) -> usize {
        self.g11.order()
    }

    pub fn det(&self) -> Jet<T> {
        &self.g11 * &self.g22 - &self.g12 * &self.g12
    }

    pub fn get(&self, i: usize, j: usize) -> &Jet<T> {
        match (i, j) {
            (0, 0) => &self.g11,
            (1, 1) => &self.g22,
            _ => &self.g12,
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        MetricJet::new(self.g11.truncate(order), self.g12.truncate(order), self.g22.truncate(order))
    }

    pub fn scale(&self, s: T) -> Self {
        MetricJet::new(self.g11.scale(s), self.g12.scale(s), self.g22.scale(s))
    }

    pub fn scale_jet(&self, s: &Jet<T>) -> Self {
        MetricJet::new(&self.g11 * s, &self.g12 * s, &self.g22 * s)
    }

    pub fn add(&self, o: &Self) -> Self {
        MetricJet::new(&self.g11 + &o.g11, &self.g12 + &o.g12, &self.g22 + &o.g22)
    }

    pub fn sub(&self, o: &Self) -> Self {
        MetricJet::new(&self.g11 - &o.g11, &self.g12 - &o.g12, &self.g22 - &o.g22)
    }

    /// Largest coefficient modulus over all three components.
    pub fn max_abs(&self) -> f64 {
        self.g11.max_abs().max(self.g12.max_abs()).max(self.g22.max_abs())
    }

    /// Constant-term matrix.
    pub fn values(&self) -> [[T; 2]; 2] {
        [[self.g11.value(), self.g12.value()], [self.g12.value(), self.g22.value()]]
    }
}

impl MetricJet<f64> {
    /// Contravariant components (adjugate over determinant).
    pub fn inv(&self) -> Result<MetricJet<f64>> {
        let d = self.det();
        if d.value() == 0.0 || !d.value().is_finite() {
            return Err(Error::SingularMetric);
        }
        let r = d.recip().map_err(|_| Error::SingularMetric)?;
        Ok(MetricJet::new(&self.g22 * &r, -(&self.g12 * &r), &self.g11 * &r))
    }

    /// Signature from the eigenvalue signs of the constant term.
    pub fn signature(&self) -> Option<Signature> {
        let d = self.det().value();
        if d > 0.0 {
            Some(Signature::Riemannian)
        } else if d < 0.0 {
            Some(Signature::Lorentzian)
        } else {
            None
        }
    }

    /// Relative distance between two symmetric jets, coefficientwise.
    pub fn rel_diff(&self, o: &Self) -> f64 {
        let scale = self.max_abs().max(o.max_abs()).max(f64::MIN_POSITIVE);
        self.sub(o).max_abs() / scale
    }
}

pub fn det2(m: &MetricJet) -> RJet {
    m.det()
}

pub fn inv2(m: &MetricJet) -> Result<MetricJet> {
    m.inv()
}

impl VectorFieldJet {
    pub fn new(w1: RJet, w2: RJet) -> Self {
        VectorFieldJet { w1, w2 }
    }

    pub fn order(&self) -> usize {
        self.w1.order().min(self.w2.order())
    }

    pub fn get(&self, k: usize) -> &RJet {
        if k == 0 {
            &self.w1
        } else {
            &self.w2
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        VectorFieldJet::new(self.w1.truncate(order), self.w2.truncate(order))
    }

    /// Directional derivative `w(f)`; the result has order one less than `f`.
    pub fn apply(&self, f: &RJet) -> Result<RJet> {
        let n = f.order().checked_sub(1).ok_or(Error::OrderExceeded { requested: 1, order: 0 })?;
        if self.order() < n {
            return Err(Error::OrderExceeded { requested: n, order: self.order() });
        }
        let w = self.truncate(n);
        Ok(&w.w1 * &f.dx()? + &w.w2 * &f.dy()?)
    }
}

impl MixedTensorJet {
    pub fn new(m: [[RJet; 2]; 2]) -> Self {
        MixedTensorJet { m }
    }

    pub fn det(&self) -> RJet {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn trace(&self) -> RJet {
        &self.m[0][0] + &self.m[1][1]
    }

    pub fn mul(&self, o: &MixedTensorJet) -> MixedTensorJet {
        let e = |i: usize, j: usize| &self.m[i][0] * &o.m[0][j] + &self.m[i][1] * &o.m[1][j];
        MixedTensorJet::new([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn scale_jet(&self, s: &RJet) -> MixedTensorJet {
        let e = |i: usize, j: usize| &self.m[i][j] * s;
        MixedTensorJet::new([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    /// Matrix of a symmetric jet.
    pub fn from_sym(s: &MetricJet) -> MixedTensorJet {
        MixedTensorJet::new([[s.g11.clone(), s.g12.clone()], [s.g12.clone(), s.g22.clone()]])
    }

    /// Constant-term matrix.
    pub fn values(&self) -> [[f64; 2]; 2] {
        [[self.m[0][0].value(), self.m[0][1].value()], [self.m[1][0].value(), self.m[1][1].value()]]
    }
}

/// Evaluator at a jet-valued point.
pub type SymEval = Arc<dyn Fn(&RJet, &RJet) -> Result<MetricJet> + Send + Sync>;
pub type VectorEval = Arc<dyn Fn(&RJet, &RJet) -> Result<VectorFieldJet> + Send + Sync>;
pub type DomainFn = Arc<dyn Fn(Point2) -> bool + Send + Sync>;
/// A coordinate map with jet-valued components.
pub type Map2 = Arc<dyn Fn(&RJet, &RJet) -> Result<(RJet, RJet)> + Send + Sync>;

/// A metric given by a jet evaluator, with domain predicate and signature tag.
#[derive(Clone)]
pub struct MetricField {
    evaluator: SymEval,
    pub signature: Option<Signature>,
    domain: DomainFn,
    pub label: String,
}

impl fmt::Debug for MetricField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricField")
            .field("label", &self.label)
            .field("signature", &self.signature)
            .finish()
    }
}

impl MetricField {
    pub fn new(label: impl Into<String>, domain: DomainFn, evaluator: SymEval) -> Self {
        MetricField { evaluator, signature: None, domain, label: label.into() }
    }

    pub fn from_fn<F>(label: impl Into<String>, domain: DomainFn, f: F) -> Self
    where
        F: Fn(&RJet, &RJet) -> Result<MetricJet> + Send + Sync + 'static,
    {
        MetricField::new(label, domain, Arc::new(f))
    }

    pub fn in_domain(&self, p: Point2) -> bool {
        p.is_finite() && (self.domain)(p)
    }

    pub fn domain(&self) -> DomainFn {
        self.domain.clone()
    }

    pub fn evaluator(&self) -> SymEval {
        self.evaluator.clone()
    }

    pub fn eval(&self, p: Point2, order: usize) -> Result<MetricJet> {
        let (x, y) = seed_point(p, order);
        self.eval_jets(&x, &y)
    }

    /// Evaluates at a jet-valued point, as needed for pullbacks.
    pub fn eval_jets(&self, x: &RJet, y: &RJet) -> Result<MetricJet> {
        let p = Point2::new(x.value(), y.value());
        if !self.in_domain(p) {
            return Err(Error::OutOfDomain { x: p.x, y: p.y });
        }
        let g = (self.evaluator)(x, y)?;
        if !g.g11.is_finite() || !g.g12.is_finite() || !g.g22.is_finite() {
            return Err(Error::DomainError(format!("non-finite metric at ({}, {})", p.x, p.y)));
        }
        Ok(g)
    }

    /// Detects the signature at a reference point and stores it.
    pub fn with_signature_at(mut self, p: Point2) -> Result<Self> {
        let g = self.eval(p, 0)?;
        self.signature = Some(g.signature().ok_or(Error::SingularMetric)?);
        Ok(self)
    }

    /// Checks the stored signature against the metric at `p`.
    pub fn signature_consistent(&self, p: Point2) -> Result<bool> {
        let g = self.eval(p, 0)?;
        Ok(self.signature.is_none() || g.signature() == self.signature)
    }
}

/// Weighted symmetric tensor of weight -4/3.
#[derive(Clone)]
pub struct LiouvilleSection {
    evaluator: SymEval,
    domain: DomainFn,
    pub label: String,
}

impl fmt::Debug for LiouvilleSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LiouvilleSection").field("label", &self.label).finish()
    }
}

impl LiouvilleSection {
    pub fn new(label: impl Into<String>, domain: DomainFn, evaluator: SymEval) -> Self {
        LiouvilleSection { evaluator, domain, label: label.into() }
    }

    pub fn weight(&self) -> f64 {
        LIOUVILLE_WEIGHT
    }

    pub fn in_domain(&self, p: Point2) -> bool {
        p.is_finite() && (self.domain)(p)
    }

    pub fn eval(&self, p: Point2, order: usize) -> Result<SymJet> {
        let (x, y) = seed_point(p, order);
        self.eval_jets(&x, &y)
    }

    pub fn eval_jets(&self, x: &RJet, y: &RJet) -> Result<SymJet> {
        let p = Point2::new(x.value(), y.value());
        if !self.in_domain(p) {
            return Err(Error::OutOfDomain { x: p.x, y: p.y });
        }
        (self.evaluator)(x, y)
    }
}

/// Vector field given by a jet evaluator.
#[derive(Clone)]
pub struct VectorField {
    evaluator: VectorEval,
    pub label: String,
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VectorField").field("label", &self.label).finish()
    }
}

impl VectorField {
    pub fn from_fn<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&RJet, &RJet) -> Result<VectorFieldJet> + Send + Sync + 'static,
    {
        VectorField { evaluator: Arc::new(f), label: label.into() }
    }

    /// `a(x) d/dx + b(y) d/dy` style fields with linear coefficients:
    /// `w = (c1 x + c0) d/dx + (d1 y + d0) d/dy`.
    pub fn affine(label: &str, c1: f64, c0: f64, d1: f64, d0: f64) -> Self {
        VectorField::from_fn(label, move |x, y| Ok(VectorFieldJet::new(x * c1 + c0, y * d1 + d0)))
    }

    pub fn eval(&self, p: Point2, order: usize) -> Result<VectorFieldJet> {
        let (x, y) = seed_point(p, order);
        (self.evaluator)(&x, &y)
    }

    pub fn eval_jets(&self, x: &RJet, y: &RJet) -> Result<VectorFieldJet> {
        (self.evaluator)(x, y)
    }

    /// Plain vector value at a point.
    pub fn value(&self, p: Point2) -> Result<[f64; 2]> {
        let w = self.eval(p, 0)?;
        Ok([w.w1.value(), w.w2.value()])
    }
}

/// `(L_w t)_ij = w^k d_k t_ij + t_kj d_i w^k + t_ik d_j w^k + weight (d_k w^k) t_ij`.
///
/// The output order is one less than the smaller input order.
pub fn lie_derivative(t: &MetricJet, w: &VectorFieldJet, weight: f64) -> Result<MetricJet> {
    let n_in = t.order().min(w.order());
    if n_in == 0 {
        return Err(Error::OrderExceeded { requested: 1, order: 0 });
    }
    let n = n_in - 1;
    let t = t.truncate(n_in);
    let w = w.truncate(n_in);
    // dw[k][i] = d_i w^k
    let dw = [[w.w1.dx()?, w.w1.dy()?], [w.w2.dx()?, w.w2.dy()?]];
    let div = &dw[0][0] + &dw[1][1];
    let tt = t.truncate(n);
    let wt = w.truncate(n);
    let comp = |i: usize, j: usize| -> Result<RJet> {
        let tij = t.get(i, j);
        let mut out = &wt.w1 * &tij.dx()? + &wt.w2 * &tij.dy()?;
        for k in 0..2 {
            out = out + tt.get(k, j) * &dw[k][i] + tt.get(i, k) * &dw[k][j];
        }
        if weight != 0.0 {
            out = out + (&div * tt.get(i, j)).scale(weight);
        }
        Ok(out)
    };
    Ok(MetricJet::new(comp(0, 0)?, comp(0, 1)?, comp(1, 1)?))
}

/// `(tau^* g)(p) = J^T g(tau(p)) J`, carried out in jets of the given order.
pub fn pullback_metric(tau: &Map2, g: &MetricField, p: Point2, order: usize) -> Result<MetricJet> {
    let (u, v) = seed_point(p, order + 1);
    let (x, y) = tau(&u, &v)?;
    pullback_at_jets(&x, &y, g)
}

/// Pullback given the image jets `(x(u,v), y(u,v))`; the result has one order less.
pub fn pullback_at_jets(x: &RJet, y: &RJet, g: &MetricField) -> Result<MetricJet> {
    let order = x.order().checked_sub(1).ok_or(Error::OrderExceeded { requested: 1, order: 0 })?;
    let j = [[x.dx()?, x.dy()?], [y.dx()?, y.dy()?]];
    let jd = j[0][0].value() * j[1][1].value() - j[0][1].value() * j[1][0].value();
    let jscale = j.iter().flatten().map(|e| e.value().abs()).fold(0.0, f64::max);
    if jd.abs() <= 1e-14 * jscale * jscale || !jd.is_finite() {
        return Err(Error::SingularJacobian);
    }
    let gm = g.eval_jets(&x.truncate(order), &y.truncate(order))?;
    Ok(congruence(&gm, &j))
}

/// `J^T m J` for a symmetric `m`.
pub fn congruence(m: &MetricJet, j: &[[RJet; 2]; 2]) -> MetricJet {
    let comp = |a: usize, b: usize| {
        let mut out = RJet::zero(m.order());
        for k in 0..2 {
            for l in 0..2 {
                out = out + &(&j[k][a] * &j[l][b]) * m.get(k, l);
            }
        }
        out
    };
    MetricJet::new(comp(0, 0), comp(0, 1), comp(1, 1))
}

/// `g^ij h_ij`.
pub fn trace_with(g: &MetricJet, h: &MetricJet) -> Result<RJet> {
    let gi = g.inv()?;
    Ok(&gi.g11 * &h.g11 + (&gi.g12 * &h.g12).scale(2.0) + &gi.g22 * &h.g22)
}

/// Real metric from the complex form `A dz^2 + B dzbar^2`, together with the
/// largest imaginary residue relative to the coefficient scale.
pub fn assemble_complex(a: &CJet, b: &CJet) -> (MetricJet, f64) {
    let i = Complex64::new(0.0, 1.0);
    let s = a + b;
    let d = (a - b).scale(i);
    let scale = a.max_abs().max(b.max_abs()).max(f64::MIN_POSITIVE);
    let resid = s.im().max_abs().max(d.im().max_abs()) / scale;
    let g11 = s.re();
    (MetricJet::new(g11.clone(), d.re(), -g11), resid)
}

/// Real metric from `A dz^2 + conj(A) dzbar^2`.
pub fn assemble_complex_conj(a: &CJet) -> MetricJet {
    let g11 = a.re().scale(2.0);
    MetricJet::new(g11.clone(), a.im().scale(-2.0), -g11)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::complex_lift;
    use approx::assert_relative_eq;

    fn everywhere() -> DomainFn {
        Arc::new(|_| true)
    }

    fn flat(order: usize) -> MetricJet {
        MetricJet::new(RJet::constant(1.0, order), RJet::zero(order), RJet::constant(1.0, order))
    }

    #[test]
    fn determinants() {
        assert_eq!(det2(&flat(3)).value(), 1.0);
        let d = MetricJet::new(RJet::constant(4.0, 2), RJet::zero(2), RJet::constant(1.0, 2));
        assert_eq!(det2(&d).value(), 4.0);
        let (x, y) = seed_point(Point2::new(2.0, 1.0), 2);
        let s = &x - &y;
        let g = MetricJet::new(s.clone(), RJet::zero(2), -s);
        let d = det2(&g);
        assert_relative_eq!(d.value(), -1.0);
        assert_relative_eq!(d.derivative(1, 0).unwrap(), -2.0);
    }

    #[test]
    fn inverses() {
        let d = MetricJet::new(RJet::constant(4.0, 2), RJet::zero(2), RJet::constant(1.0, 2));
        let i = inv2(&d).unwrap();
        assert_relative_eq!(i.g11.value(), 0.25);
        assert_relative_eq!(i.g22.value(), 1.0);
        let (x, y) = seed_point(Point2::new(0.3, 0.8), 4);
        let g = MetricJet::new(x.exp() + 2.0, &x * &y, y.cos() + 1.0);
        let ii = inv2(&inv2(&g).unwrap()).unwrap();
        assert!(ii.rel_diff(&g) < 1e-13);
        let gi = inv2(&g).unwrap();
        let prod = MixedTensorJet::from_sym(&g).mul(&MixedTensorJet::from_sym(&gi));
        assert!((&prod.m[0][0] - 1.0).max_abs() < 1e-13);
        assert!(prod.m[0][1].max_abs() < 1e-13);
        assert!((&prod.m[1][1] - 1.0).max_abs() < 1e-13);
        let z = MetricJet::new(RJet::zero(1), RJet::zero(1), RJet::zero(1));
        assert_eq!(inv2(&z), Err(Error::SingularMetric));
    }

    #[test]
    fn lie_examples() {
        // translation along an x-independent metric
        let (x, y) = seed_point(Point2::new(0.5, 0.9), 3);
        let g = MetricJet::new(y.exp(), y.sin(), &y * &y + 1.0);
        let w = VectorFieldJet::new(RJet::constant(1.0, 3), RJet::zero(3));
        assert!(lie_derivative(&g, &w, 0.0).unwrap().max_abs() < 1e-15);
        // scaling flat space
        let w = VectorFieldJet::new(x.clone(), RJet::zero(3));
        let l = lie_derivative(&flat(3), &w, 0.0).unwrap();
        assert_eq!(l.order(), 2);
        assert_relative_eq!(l.g11.value(), 2.0);
        assert!(l.g12.max_abs() < 1e-15 && l.g22.max_abs() < 1e-15);
        // (x + y^2) dx dy under 2x d/dx + y d/dy
        let c = (&x + &y * &y).scale(0.5);
        let g1 = MetricJet::new(RJet::zero(3), c, RJet::zero(3));
        let w = VectorFieldJet::new(x.scale(2.0), y.clone());
        let l = lie_derivative(&g1, &w, 0.0).unwrap();
        assert!(l.rel_diff(&g1.scale(5.0).truncate(2)) < 1e-14);
    }

    #[test]
    fn lie_of_det_is_leibniz() {
        let (x, y) = seed_point(Point2::new(0.7, 0.4), 4);
        let g = MetricJet::new(x.exp() + &y, &x * &y, (&x + &y).cos() + 2.0);
        let w = VectorFieldJet::new(&x * &x + &y, y.sin());
        let l = lie_derivative(&g, &w, 0.0).unwrap();
        // L_w det = w(det) + 2 div(w) det for a (0,2)-tensor
        let det = g.det();
        let div = &w.w1.dx().unwrap() + &w.w2.dy().unwrap();
        let direct = w.apply(&det).unwrap() + (&div * &det.truncate(3)).scale(2.0);
        let gt = g.truncate(3);
        let from_comp = &l.g11 * &gt.g22 + &gt.g11 * &l.g22 - (&l.g12 * &gt.g12).scale(2.0);
        assert!((&direct - &from_comp).max_abs() / direct.max_abs() < 1e-11);
    }

    #[test]
    fn pullbacks() {
        let g = MetricField::from_fn("flat", everywhere(), |x, _y| {
            let n = x.order();
            Ok(MetricJet::new(RJet::constant(1.0, n), RJet::zero(n), RJet::constant(1.0, n)))
        });
        let id: Map2 = Arc::new(|u, v| Ok((u.clone(), v.clone())));
        let p = Point2::new(0.2, 0.3);
        let pb = pullback_metric(&id, &g, p, 2).unwrap();
        assert!(pb.rel_diff(&flat(2)) < 1e-15);
        let dbl: Map2 = Arc::new(|u, v| Ok((u.scale(2.0), v.scale(2.0))));
        let pb = pullback_metric(&dbl, &g, p, 2).unwrap();
        assert!(pb.rel_diff(&flat(2).scale(4.0)) < 1e-15);
        let sing: Map2 = Arc::new(|u, _v| Ok((u.clone(), u.clone())));
        assert_eq!(pullback_metric(&sing, &g, p, 2), Err(Error::SingularJacobian));
        let half = MetricField::from_fn("half", Arc::new(|p: Point2| p.x > 0.0), |x, _| {
            let n = x.order();
            Ok(MetricJet::new(RJet::constant(1.0, n), RJet::zero(n), RJet::constant(1.0, n)))
        });
        let neg: Map2 = Arc::new(|u, v| Ok((-u, v.clone())));
        assert!(matches!(pullback_metric(&neg, &half, p, 2), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn pullback_composes() {
        let g = MetricField::from_fn("g", everywhere(), |x, y| {
            Ok(MetricJet::new(x.exp() + 1.0, x * y, y.cos() + 3.0))
        });
        let sigma: Map2 = Arc::new(|u, v| Ok((u.scale(1.5) + v.scale(0.2) + 0.1, v.scale(-0.7) + 0.3)));
        let tau: Map2 = Arc::new(|u, v| Ok((u.scale(0.4) - v.scale(1.1), u.scale(0.9) + 0.5)));
        let p = Point2::new(0.3, -0.2);
        let s2 = sigma.clone();
        let t2 = tau.clone();
        let comp: Map2 = Arc::new(move |u, v| {
            let (a, b) = t2(u, v)?;
            s2(&a, &b)
        });
        let direct = pullback_metric(&comp, &g, p, 2).unwrap();
        let sg = g.clone();
        // sigma is affine, so its Jacobian is constant
        let (e1, e2) = seed_point(Point2::new(0.0, 0.0), 1);
        let (s1, s2j) = sigma(&e1, &e2).unwrap();
        let js = [[s1.coeff(1, 0), s1.coeff(0, 1)], [s2j.coeff(1, 0), s2j.coeff(0, 1)]];
        let inner = MetricField::from_fn("s*g", everywhere(), move |u, v| {
            let n = u.order();
            let (a, b) = sigma(u, v)?;
            let gm = sg.eval_jets(&a, &b)?;
            let c = |r: f64| RJet::constant(r, n);
            let j = [[c(js[0][0]), c(js[0][1])], [c(js[1][0]), c(js[1][1])]];
            Ok(congruence(&gm, &j))
        });
        let nested = pullback_metric(&tau, &inner, p, 2).unwrap();
        assert!(direct.rel_diff(&nested) < 1e-12);
    }

    #[test]
    fn traces() {
        let g = flat(2);
        assert_relative_eq!(trace_with(&g, &g).unwrap().value(), 2.0);
        let dx2 = MetricJet::new(RJet::constant(1.0, 2), RJet::zero(2), RJet::zero(2));
        assert_relative_eq!(trace_with(&g, &dx2).unwrap().value(), 1.0);
        let d41 = MetricJet::new(RJet::constant(4.0, 2), RJet::zero(2), RJet::constant(1.0, 2));
        let d83 = MetricJet::new(RJet::constant(8.0, 2), RJet::zero(2), RJet::constant(3.0, 2));
        assert_relative_eq!(trace_with(&d41, &d83).unwrap().value(), 5.0);
    }

    #[test]
    fn complex_assembly() {
        // dz^2 + dzbar^2 = 2(dx^2 - dy^2)
        let (z, zb) = complex_lift(Point2::new(0.3, 0.6), 2);
        let one = CJet::constant(Complex64::new(1.0, 0.0), 2);
        let (g, r) = assemble_complex(&one, &one);
        assert_eq!(r, 0.0);
        assert_relative_eq!(g.g11.value(), 2.0);
        assert_relative_eq!(g.g22.value(), -2.0);
        // A = i gives g12 = -2 Im A
        let a = CJet::constant(Complex64::new(0.0, 1.0), 2);
        let g = assemble_complex_conj(&a);
        assert_relative_eq!(g.g12.value(), -2.0);
        // A = z, B = zbar computed independently
        let (g, r) = assemble_complex(&z.sin(), &zb.sin());
        assert!(r < 1e-15);
        let g2 = assemble_complex_conj(&z.sin());
        assert!(g.rel_diff(&g2) < 1e-15);
    }
}
