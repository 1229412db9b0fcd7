//! Library of metric families with exactly one essential projective vector field.

pub mod dom3;
pub mod exceptional;
pub mod forms;
pub mod params;
pub mod quadrature;

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jets::Point2;
use crate::projective::{class_combination, liouville_from_metric};
use crate::spectra::{lambda_from_xi, BenentiLetter, SpectralClass, SpectralKind};
use crate::tensorcalc::{DomainFn, LiouvilleSection, MetricField, VectorField};

pub use forms::{c1a_k3zero_metric, FlowKind, SampleBox, DELTA};
pub use params::{canonicalize, param_schema, validate_params, Clause, FamilyId, Params, Rejection, Variant};
pub use quadrature::{y_integral, y_value, YKind};

use forms::*;

/// A family member with everything needed to verify it.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: FamilyId,
    pub params: Params,
    pub metric: MetricField,
    pub generators: Vec<MetricField>,
    /// `psi^{-1}` of the generators, in closed form where cancellation would cost accuracy.
    sections: Vec<LiouvilleSection>,
    pub flow: FlowKind,
    pub w: VectorField,
    pub expected_spectral: SpectralClass,
    pub expected_letter: BenentiLetter,
    /// Eigenvalues of `L_w` on the generators up to a common factor (mobility 3 only).
    pub expected_ratios: Option<Vec<f64>>,
    pub sample_box: SampleBox,
}

impl CatalogEntry {
    /// `psi^{-1}` of each generator.
    pub fn sections(&self) -> Vec<LiouvilleSection> {
        self.sections.clone()
    }

    pub fn in_domain(&self, p: Point2) -> bool {
        self.sample_box.contains(p)
            && self.metric.in_domain(p)
            && self.generators.iter().all(|g| g.in_domain(p))
    }

    /// Uniform samples from the box that pass every domain predicate.
    pub fn sample_points<R: Rng>(&self, rng: &mut R, n: usize) -> Result<Vec<Point2>> {
        let b = self.sample_box;
        let mut out = Vec::with_capacity(n);
        let mut tries = 0usize;
        while out.len() < n {
            tries += 1;
            if tries > 1000 * n.max(1) {
                return Err(Error::DomainError(format!("{}: too few admissible sample points", self.id)));
            }
            let p = Point2::new(rng.gen_range(b.x.0..=b.x.1), rng.gen_range(b.y.0..=b.y.1));
            if self.in_domain(p) && self.metric.eval(p, 0).is_ok() {
                out.push(p);
            }
        }
        Ok(out)
    }
}

/// `|lambda| >= 1` representative of a real eigenvalue ratio.
fn two_real_from_xi(xi: f64) -> Result<SpectralClass> {
    let l = lambda_from_xi(xi)?;
    Ok(SpectralClass::two_real(if l.abs() < 1.0 { 1.0 / l } else { l }))
}

/// Sphere point to coefficients of the three generators.
pub fn sphere_coefficients(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

/// Builds the entry after validating the parameters.
pub fn make_entry(id: FamilyId, raw: &Params) -> Result<CatalogEntry> {
    let p = validate_params(id, raw).map_err(|r| Error::InvalidParams(r.to_string()))?;
    use FamilyId::*;
    let g = |n: &str| p.req(n);
    let shape = match id {
        A1 | GenAI => {
            if id == A1 {
                gen_a1_power(g("xi"), g("h"), g("eps"))
            } else {
                gen_a1(g("xi"), g("h"), g("eps"))
            }
        }
        A2 | GenAII => gen_a2(g("h")),
        A3 => gen_a3(g("lambda"), g("h")),
        GenAIII => gen_a3(g("lambda"), g("h")),
        B4 => gen_b1_power(g("xi"), g("phi")),
        GenBI => gen_b1(g("xi"), g("phi")),
        B5 | GenBII => gen_b2(g("phi")),
        B6 | GenBIII => gen_b3(g("lambda"), g("phi")),
        C7 | GenCIb => {
            let mut s = gen_c1b(g("xi"))?;
            if id == C7 {
                s.sample_box = SampleBox::new(0.2, 2.0, 1.2, 2.5);
            }
            s
        }
        C8 | GenCII => gen_c2(),
        C9 | GenCIII => gen_c3(g("lambda")),
        C10 | GenCIa => gen_c1a(),
    };
    let gens = shape.generators;
    let dom: DomainFn = shared_domain(&gens, Arc::new(|_| true));
    let mut sections: Vec<LiouvilleSection> = gens.iter().map(liouville_from_metric).collect();
    if matches!(id, C10 | GenCIa) {
        sections[2] = c1a_third_section(gens[2].domain());
    }
    let metric = match id {
        A1 => a1_metric(g("xi"), g("h"), g("eps"), g("kappa"), g("rho"), dom),
        A2 => a2_metric(g("h"), g("kappa"), dom),
        A3 if g("lambda") > 0.0 => a3_metric(g("lambda"), g("h"), g("theta"), dom),
        A3 => a3_metric_flat(g("h"), g("kappa"), dom),
        B4 => b4_metric(g("xi"), g("phi"), g("kappa"), dom),
        B5 => b5_metric(g("phi"), g("kappa"), dom),
        B6 if g("lambda") > 0.0 => b6_metric(g("lambda"), g("phi"), g("theta"), dom),
        B6 => b6_metric_flat(g("phi"), g("kappa"), dom),
        C7 => c7_metric(g("xi"), g("rho"), g("kappa"), dom),
        C8 => jordan_metric("C8", YKind::CII, g("kappa"), dom),
        C9 => {
            let lambda = g("lambda");
            let kappa = if lambda > 0.0 { (lambda * g("theta")).exp() } else { g("kappa") };
            jordan_metric("C9", YKind::CIII { lambda }, kappa, dom)
        }
        C10 => {
            let (th, ph) = p.sphere.ok_or_else(|| Error::InvalidParams("sphere missing".into()))?;
            let mut m = class_combination(&sections, &sphere_coefficients(th, ph))?;
            m.label = "C10".into();
            m
        }
        _ => match &p.k {
            Some(k) => class_combination(&sections, k)?,
            None => gens[0].clone(),
        },
    };
    let expected_spectral = match id.spectral_kind() {
        SpectralKind::Jordan => SpectralClass::jordan(),
        SpectralKind::ComplexPair => SpectralClass::complex_pair(g("lambda").abs()),
        SpectralKind::TwoReal => match id {
            C10 | GenCIa => SpectralClass::two_real(2.5),
            _ => two_real_from_xi(g("xi"))?,
        },
    };
    let expected_ratios = (id.mobility() == 3).then(|| vec![-5.0 / 3.0, -2.0 / 3.0, 4.0 / 3.0]);
    Ok(CatalogEntry {
        id,
        params: p,
        metric,
        generators: gens,
        sections,
        flow: shape.flow,
        w: shape.flow.vector_field(),
        expected_spectral,
        expected_letter: id.letter(),
        expected_ratios,
        sample_box: shape.sample_box,
    })
}

/// One row of the family listing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyInfo {
    pub id: FamilyId,
    pub letter: BenentiLetter,
    pub spectral: SpectralKind,
    pub generator: bool,
    pub params: Vec<(String, String)>,
}

/// Families matching the optional letter and spectral filters.
pub fn list_families(letter: Option<BenentiLetter>, spectral: Option<SpectralKind>) -> Vec<FamilyInfo> {
    FamilyId::ALL
        .iter()
        .filter(|id| letter.is_none_or(|l| id.letter() == l))
        .filter(|id| spectral.is_none_or(|s| id.spectral_kind() == s))
        .map(|&id| FamilyInfo {
            id,
            letter: id.letter(),
            spectral: id.spectral_kind(),
            generator: id.is_generator(),
            params: param_schema(id).into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        })
        .collect()
}

/// A valid parameter set per family, used by the suites.
pub fn reference_params(id: FamilyId) -> Params {
    use FamilyId::*;
    let s = match id {
        A1 => "xi=3,h=2,eps=1,kappa=1,rho=1",
        A2 => "h=2,kappa=1",
        A3 => "lambda=0.1,h=0.3,theta=1",
        B4 => "xi=3,phi=0.4,kappa=1",
        B5 => "phi=0.4,kappa=1",
        B6 => "lambda=0.2,phi=0.4,theta=1",
        C7 => "xi=3,rho=1,kappa=1",
        C8 => "kappa=1",
        C9 => "lambda=0.3,theta=1",
        C10 => "sphere=0.7853981633974483:1.0471975511965976",
        GenAI => "xi=3,h=2,eps=1",
        GenAII => "h=2",
        GenAIII => "lambda=0.3,h=2",
        GenBI => "xi=3,phi=0.4",
        GenBII => "phi=0.4",
        GenBIII => "lambda=0.3,phi=0.4",
        GenCIa => "",
        GenCIb => "xi=3",
        GenCII => "",
        GenCIII => "lambda=0.3",
    };
    Params::parse(s).expect("reference parameters parse")
}

/// Reference entry of a family.
pub fn reference_entry(id: FamilyId) -> CatalogEntry {
    make_entry(id, &reference_params(id)).expect("reference parameters are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::{metrizability_residuals_at, ProjectiveConnection};
    use crate::spectra::{homothety_check, lie_matrix_recover, normalize_spectral};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pts(e: &CatalogEntry, n: usize) -> Vec<Point2> {
        e.sample_points(&mut ChaCha8Rng::seed_from_u64(7), n).unwrap()
    }

    #[test]
    fn closed_form_c1a_section_matches_psi_inverse() {
        let e = reference_entry(FamilyId::GenCIa);
        let exact = &e.sections()[2];
        let numeric = liouville_from_metric(&e.generators[2]);
        for p in pts(&e, 20) {
            let (a, b) = (exact.eval(p, 0).unwrap(), numeric.eval(p, 0).unwrap());
            let d = a.values().iter().flatten().zip(b.values().iter().flatten()).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max);
            assert!(d < 1e-12 * a.max_abs(), "{p:?}");
        }
    }

    #[test]
    fn a1_value() {
        let e = reference_entry(FamilyId::A1);
        let g = e.metric.eval(Point2::new(1.0, 0.5), 0).unwrap();
        assert!((g.g11.value() - 0.15).abs() < 1e-15);
    }

    #[test]
    fn listing_counts() {
        assert_eq!(list_families(None, None).len(), 20);
        assert_eq!(list_families(Some(BenentiLetter::C), None).len(), 8);
        assert_eq!(list_families(None, Some(SpectralKind::Jordan)).len(), 6);
    }

    #[test]
    fn c1a_is_homothetic_with_eta_five() {
        let e = reference_entry(FamilyId::GenCIa);
        let r = homothety_check(&e.generators[0], &e.w, &pts(&e, 10)).unwrap();
        assert!(r.homothetic);
        assert!((r.eta - 5.0).abs() < 1e-10, "{}", r.eta);
    }

    #[test]
    fn every_family_is_metrizable_and_classified() {
        for id in FamilyId::ALL {
            let e = reference_entry(id);
            let points = pts(&e, 30);
            let conn = ProjectiveConnection::from_metric(&e.generators[0]);
            let mut sections = e.sections();
            sections.push(liouville_from_metric(&e.metric));
            for s in &sections {
                for &p in &points {
                    let r = metrizability_residuals_at(s, &conn, p).unwrap();
                    let m = r.iter().fold(0.0f64, |a, &b| a.max(b));
                    assert!(m < 1e-9, "{id} {} at {p:?}: {m:e}", s.label);
                }
            }
            let lm = lie_matrix_recover(&e.w, &e.sections(), &points).unwrap();
            assert!(lm.residual < 1e-9, "{id} lie residual {:e}", lm.residual);
            if e.generators.len() == 2 {
                let c = normalize_spectral(&lm.a).unwrap();
                assert_eq!(c.kind, e.expected_spectral.kind, "{id}");
                if let (Some(a), Some(b)) = (c.lambda, e.expected_spectral.lambda) {
                    assert!((a - b).abs() < 1e-7, "{id}: {a} vs {b}");
                }
            }
        }
    }
}
