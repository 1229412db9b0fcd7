//! Family identifiers, parameter sets and their validation.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::{BenentiLetter, SpectralKind};

/// Closed enumeration of the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyId {
    A1,
    A2,
    A3,
    B4,
    B5,
    B6,
    C7,
    C8,
    C9,
    C10,
    #[serde(rename = "genAI")]
    GenAI,
    #[serde(rename = "genAII")]
    GenAII,
    #[serde(rename = "genAIII")]
    GenAIII,
    #[serde(rename = "genBI")]
    GenBI,
    #[serde(rename = "genBII")]
    GenBII,
    #[serde(rename = "genBIII")]
    GenBIII,
    #[serde(rename = "genCIa")]
    GenCIa,
    #[serde(rename = "genCIb")]
    GenCIb,
    #[serde(rename = "genCII")]
    GenCII,
    #[serde(rename = "genCIII")]
    GenCIII,
}

impl FamilyId {
    pub const ALL: [FamilyId; 20] = [
        FamilyId::A1,
        FamilyId::A2,
        FamilyId::A3,
        FamilyId::B4,
        FamilyId::B5,
        FamilyId::B6,
        FamilyId::C7,
        FamilyId::C8,
        FamilyId::C9,
        FamilyId::C10,
        FamilyId::GenAI,
        FamilyId::GenAII,
        FamilyId::GenAIII,
        FamilyId::GenBI,
        FamilyId::GenBII,
        FamilyId::GenBIII,
        FamilyId::GenCIa,
        FamilyId::GenCIb,
        FamilyId::GenCII,
        FamilyId::GenCIII,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyId::A1 => "A1",
            FamilyId::A2 => "A2",
            FamilyId::A3 => "A3",
            FamilyId::B4 => "B4",
            FamilyId::B5 => "B5",
            FamilyId::B6 => "B6",
            FamilyId::C7 => "C7",
            FamilyId::C8 => "C8",
            FamilyId::C9 => "C9",
            FamilyId::C10 => "C10",
            FamilyId::GenAI => "genAI",
            FamilyId::GenAII => "genAII",
            FamilyId::GenAIII => "genAIII",
            FamilyId::GenBI => "genBI",
            FamilyId::GenBII => "genBII",
            FamilyId::GenBIII => "genBIII",
            FamilyId::GenCIa => "genCIa",
            FamilyId::GenCIb => "genCIb",
            FamilyId::GenCII => "genCII",
            FamilyId::GenCIII => "genCIII",
        }
    }

    /// Generator pairs/triples as opposed to normal forms.
    pub fn is_generator(&self) -> bool {
        self.as_str().starts_with("gen")
    }

    pub fn letter(&self) -> BenentiLetter {
        use FamilyId::*;
        match self {
            A1 | A2 | A3 | GenAI | GenAII | GenAIII => BenentiLetter::A,
            B4 | B5 | B6 | GenBI | GenBII | GenBIII => BenentiLetter::B,
            _ => BenentiLetter::C,
        }
    }

    /// Shape of `L_w` on the generators.
    pub fn spectral_kind(&self) -> SpectralKind {
        use FamilyId::*;
        match self {
            A2 | B5 | C8 | GenAII | GenBII | GenCII => SpectralKind::Jordan,
            A3 | B6 | C9 | GenAIII | GenBIII | GenCIII => SpectralKind::ComplexPair,
            _ => SpectralKind::TwoReal,
        }
    }

    /// Number of generators of the projective class.
    pub fn mobility(&self) -> usize {
        match self {
            FamilyId::C10 | FamilyId::GenCIa => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParams(format!("unknown family `{s}`")))
    }
}

/// Parameter-range variant for the trigonometric A-family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `|h| <= e^{-3 lambda pi}`.
    #[default]
    Thm5,
    /// `e^{-3 lambda pi} < h <= 1`.
    Prop7,
}

/// Raw or validated parameters; a family reads only the fields it declares.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    /// Coefficients of the combination of generator sections.
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<f64>>,
    /// Point `(theta_s, phi_s)` on the sphere.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sphere: Option<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
}

/// Canonical `key=value,...` form, accepted back by [`Params::parse`].
impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let scalars = [
            ("xi", self.xi),
            ("lambda", self.lambda),
            ("h", self.h),
            ("eps", self.eps),
            ("phi", self.phi),
            ("kappa", self.kappa),
            ("rho", self.rho),
            ("theta", self.theta),
            ("c", self.c),
        ];
        for (k, v) in scalars {
            if let Some(v) = v {
                parts.push(format!("{k}={v}"));
            }
        }
        if let Some(k) = &self.k {
            parts.push(format!("K={}", k.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(":")));
        }
        if let Some((a, b)) = self.sphere {
            parts.push(format!("sphere={a}:{b}"));
        }
        if let Some(v) = self.variant {
            parts.push(format!("variant={}", if v == Variant::Prop7 { "prop7" } else { "thm5" }));
        }
        f.write_str(&parts.join(","))
    }
}

impl Params {
    /// Parses `key=value,key=value`. Lists (`K`, `sphere`) use `:` as separator.
    pub fn parse(s: &str) -> Result<Params> {
        let mut p = Params::default();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, val) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidParams(format!("expected key=value, got `{item}`")))?;
            let (key, val) = (key.trim(), val.trim());
            let num = |v: &str| -> Result<f64> {
                parse_number(v).ok_or_else(|| Error::InvalidParams(format!("bad number `{v}` for `{key}`")))
            };
            let list = |v: &str| -> Result<Vec<f64>> { v.split(':').map(|t| num(t.trim())).collect() };
            match key {
                "xi" => p.xi = Some(num(val)?),
                "lambda" => p.lambda = Some(num(val)?),
                "h" => p.h = Some(num(val)?),
                "eps" => p.eps = Some(num(val)?),
                "phi" => p.phi = Some(num(val)?),
                "kappa" => p.kappa = Some(num(val)?),
                "rho" => p.rho = Some(num(val)?),
                "theta" => p.theta = Some(num(val)?),
                "c" => p.c = Some(num(val)?),
                "K" => p.k = Some(list(val)?),
                "sphere" => {
                    let v = list(val)?;
                    if v.len() != 2 {
                        return Err(Error::InvalidParams("sphere takes theta:phi".into()));
                    }
                    p.sphere = Some((v[0], v[1]));
                }
                "variant" => {
                    p.variant = Some(match val {
                        "thm5" => Variant::Thm5,
                        "prop7" => Variant::Prop7,
                        _ => return Err(Error::InvalidParams(format!("unknown variant `{val}`"))),
                    })
                }
                _ => return Err(Error::InvalidParams(format!("unknown parameter `{key}`"))),
            }
        }
        Ok(p)
    }

    pub(crate) fn req(&self, name: &str) -> f64 {
        let v = match name {
            "xi" => self.xi,
            "lambda" => self.lambda,
            "h" => self.h,
            "eps" => self.eps,
            "phi" => self.phi,
            "kappa" => self.kappa,
            "rho" => self.rho,
            "theta" => self.theta,
            "c" => self.c,
            _ => None,
        };
        v.unwrap_or(f64::NAN)
    }
}

/// Numbers with optional `pi` multiples, e.g. `0.5pi`, `pi/4`.
fn parse_number(v: &str) -> Option<f64> {
    if let Ok(x) = v.parse::<f64>() {
        return Some(x);
    }
    let lower = v.to_ascii_lowercase();
    if let Some(rest) = lower.strip_prefix("pi/") {
        return rest.parse::<f64>().ok().map(|d| PI / d);
    }
    if let Some(head) = lower.strip_suffix("pi") {
        let head = head.trim_end_matches('*');
        return match head {
            "" => Some(PI),
            "-" => Some(-PI),
            _ => head.parse::<f64>().ok().map(|m| m * PI),
        };
    }
    None
}

/// One violated constraint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    /// Stable identifier, e.g. `A1.xi2.h-ne-minus-eps`.
    pub id: String,
    /// The constraint in plain notation.
    pub statement: String,
}

/// Rejected parameter set with every violated clause.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rejection {
    pub family: FamilyId,
    pub violations: Vec<Clause>,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} rejected:", self.family)?;
        for c in &self.violations {
            write!(f, " [{}] {};", c.id, c.statement)?;
        }
        Ok(())
    }
}

/// Tolerance for the equality clauses (`h != -eps` and the like).
pub const CLAUSE_TOL: f64 = 1e-12;

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= CLAUSE_TOL * (1.0 + b.abs())
}

struct Checker {
    fam: FamilyId,
    out: Vec<Clause>,
}

impl Checker {
    fn need(&mut self, ok: bool, id: &str, statement: &str) {
        if !ok {
            self.out.push(Clause { id: format!("{}.{}", self.fam, id), statement: statement.to_string() });
        }
    }

    fn present(&mut self, p: &Params, names: &[&str]) -> bool {
        let mut all = true;
        for &n in names {
            let v = p.req(n);
            if !v.is_finite() {
                self.need(false, &format!("{n}.given"), &format!("parameter {n} must be given as a finite number"));
                all = false;
            }
        }
        all
    }
}

fn xi_in_a_range(xi: f64) -> bool {
    xi > 0.0 && xi <= 4.0 && !near(xi, 1.0)
}

fn xi_in_c_range(xi: f64) -> bool {
    xi_in_a_range(xi) && !near(xi, 0.5)
}

/// `phi mod pi` is zero, i.e. `C = e^{i phi}` is real.
fn c_is_real(phi: f64) -> bool {
    let r = phi.rem_euclid(PI);
    r < 1e-12 || PI - r < 1e-12
}

/// Checks every printed clause of the family.
pub fn validate_params(id: FamilyId, raw: &Params) -> std::result::Result<Params, Rejection> {
    use FamilyId::*;
    let mut ck = Checker { fam: id, out: Vec::new() };
    let p = raw;
    let sign = |v: f64| near(v.abs(), 1.0) && v.abs() == 1.0;
    match id {
        A1 => {
            if ck.present(p, &["xi", "h", "eps", "kappa", "rho"]) {
                let (xi, h, eps, kappa, rho) = (p.req("xi"), p.req("h"), p.req("eps"), p.req("kappa"), p.req("rho"));
                ck.need(xi_in_a_range(xi), "xi.range", "xi in (0,1) u (1,4]");
                ck.need(sign(eps), "eps.sign", "eps in {-1, 1}");
                ck.need(h.abs() >= 1.0, "h.abs", "|h| >= 1");
                if near(xi, 2.0) {
                    ck.need(!near(h, -eps), "xi2.h-ne-minus-eps", "xi = 2: h != -eps");
                    ck.need(!near(h, -4.0 * eps), "xi2.h-ne-minus-4eps", "xi = 2: h != -4 eps");
                }
                if near(xi, 3.0) && near(eps, -1.0) {
                    ck.need(!near(h.abs(), 1.0), "xi3.h-abs-ne-1", "xi = 3, eps = -1: |h| != 1");
                }
                if near(xi, 4.0) {
                    ck.need(!near(h, 1.0), "xi4.h-ne-1", "xi = 4: h != 1");
                }
                ck.need(kappa != 0.0, "kappa.nonzero", "kappa != 0");
                ck.need(sign(rho), "rho.sign", "rho in {-1, 1}");
                if near(h, -1.0) {
                    ck.need(near(rho, 1.0), "h-minus-1.rho", "h = -1 requires rho = 1");
                }
                if near(h, 1.0) && near(eps, 1.0) {
                    ck.need(kappa > 0.0, "h1-eps1.kappa", "h = 1 and eps = 1 require kappa > 0");
                }
            }
        }
        A2 => {
            if ck.present(p, &["h", "kappa"]) {
                let (h, kappa) = (p.req("h"), p.req("kappa"));
                ck.need(h.abs() >= 1.0, "h.abs", "|h| >= 1");
                ck.need(kappa != 0.0, "kappa.nonzero", "kappa != 0");
                if near(h, 1.0) {
                    ck.need(kappa > 0.0, "h1.kappa", "h = 1 requires kappa > 0");
                }
            }
        }
        A3 => {
            if ck.present(p, &["lambda", "h"]) {
                let (lambda, h) = (p.req("lambda"), p.req("h"));
                let variant = p.variant.unwrap_or_default();
                ck.need(lambda >= 0.0, "lambda.nonneg", "lambda >= 0");
                ck.need(h != 0.0, "h.nonzero", "h != 0");
                if lambda > 0.0 {
                    if ck.present(p, &["theta"]) {
                        let theta = p.req("theta");
                        let bound = (-3.0 * lambda * PI).exp();
                        ck.need((0.0..2.0 * PI).contains(&theta), "theta.range", "theta in [0, 2pi)");
                        match variant {
                            Variant::Thm5 => {
                                ck.need(h.abs() <= bound * (1.0 + CLAUSE_TOL), "h.bound", "|h| <= e^{-3 lambda pi}");
                                if near(h.abs(), bound) {
                                    ck.need(theta < PI, "h-on-bound.theta", "|h| = e^{-3 lambda pi} requires theta in [0, pi)");
                                }
                            }
                            Variant::Prop7 => {
                                ck.need(h > bound && h <= 1.0, "prop7.h.range", "e^{-3 lambda pi} < h <= 1");
                            }
                        }
                    }
                } else if ck.present(p, &["kappa"]) {
                    ck.need(p.req("kappa") > 0.0, "kappa.positive", "kappa > 0");
                    match variant {
                        Variant::Thm5 => {
                            ck.need(h.abs() <= 1.0, "h.bound", "|h| <= 1");
                            ck.need(!near(h.abs(), 1.0), "lambda0.h-ne-pm1", "lambda = 0: h != +-1");
                        }
                        Variant::Prop7 => ck.need(h.abs() < 1.0, "prop7.h.range", "lambda = 0: |h| < 1"),
                    }
                }
            }
        }
        B4 => {
            if ck.present(p, &["xi", "phi", "kappa"]) {
                let (xi, phi, kappa) = (p.req("xi"), p.req("phi"), p.req("kappa"));
                ck.need(xi_in_a_range(xi), "xi.range", "xi in (0,1) u (1,4]");
                ck.need((0.0..PI).contains(&phi), "phi.range", "phi in [0, pi)");
                if near(xi, 2.0) {
                    ck.need(!c_is_real(phi), "xi2.c-ne-pm1", "xi = 2: C != +-1");
                }
                if near(xi, 3.0) {
                    ck.need(!c_is_real(2.0 * phi), "xi3.c2-ne-pm1", "xi = 3: C^2 != +-1");
                }
                if near(xi, 4.0) {
                    ck.need(!c_is_real(phi) || !near(phi.cos(), 1.0), "xi4.c-ne-1", "xi = 4: C != 1");
                }
                ck.need(kappa != 0.0, "kappa.nonzero", "kappa != 0");
            }
        }
        B5 => {
            if ck.present(p, &["phi", "kappa"]) {
                ck.need((0.0..PI).contains(&p.req("phi")), "phi.range", "phi in [0, pi)");
                ck.need(p.req("kappa") != 0.0, "kappa.nonzero", "kappa != 0");
            }
        }
        B6 => {
            if ck.present(p, &["lambda", "phi"]) {
                let (lambda, phi) = (p.req("lambda"), p.req("phi"));
                ck.need(lambda >= 0.0, "lambda.nonneg", "lambda >= 0");
                if lambda > 0.0 {
                    ck.need((0.0..PI).contains(&phi), "phi.range", "lambda > 0: phi in [0, pi)");
                    if ck.present(p, &["theta"]) {
                        ck.need((0.0..2.0 * PI).contains(&p.req("theta")), "theta.range", "theta in [0, 2pi)");
                    }
                } else {
                    ck.need(phi > 0.0 && phi < PI, "lambda0.phi.range", "lambda = 0: phi in (0, pi)");
                    if ck.present(p, &["kappa"]) {
                        ck.need(p.req("kappa") > 0.0, "kappa.positive", "kappa > 0");
                    }
                }
            }
        }
        C7 => {
            if ck.present(p, &["xi", "rho", "kappa"]) {
                ck.need(xi_in_c_range(p.req("xi")), "xi.range", "xi in (0,1/2) u (1/2,1) u (1,4]");
                ck.need(sign(p.req("rho")), "rho.sign", "rho in {-1, 1}");
                ck.need(p.req("kappa") != 0.0, "kappa.nonzero", "kappa != 0");
            }
        }
        C8 => {
            if ck.present(p, &["kappa"]) {
                ck.need(p.req("kappa") != 0.0, "kappa.nonzero", "kappa != 0");
            }
        }
        C9 => {
            if ck.present(p, &["lambda"]) {
                let lambda = p.req("lambda");
                ck.need(lambda >= 0.0, "lambda.nonneg", "lambda >= 0");
                if lambda > 0.0 {
                    if ck.present(p, &["theta"]) {
                        ck.need((0.0..2.0 * PI).contains(&p.req("theta")), "theta.range", "theta in [0, 2pi)");
                    }
                } else if ck.present(p, &["kappa"]) {
                    ck.need(p.req("kappa") > 0.0, "lambda0.kappa", "lambda = 0 requires kappa > 0");
                }
            }
        }
        C10 => match p.sphere {
            None => ck.need(false, "sphere.given", "parameter sphere = theta:phi must be given"),
            Some((th, ph)) => {
                ck.need(th > 0.0 && th < PI, "sphere.theta.range", "theta_s in (0, pi)");
                ck.need((0.0..2.0 * PI).contains(&ph), "sphere.phi.range", "phi_s in [0, 2pi)");
                if near(th, PI / 2.0) {
                    let on_axis = [0.0, PI / 2.0, PI, 1.5 * PI].iter().any(|&a| (ph - a).abs() < 1e-12);
                    ck.need(!on_axis, "sphere.missing-points", "theta_s = pi/2: phi_s not in {0, pi/2, pi, 3pi/2}");
                }
            }
        },
        GenAI => {
            if ck.present(p, &["xi", "h", "eps"]) {
                let (xi, h, eps) = (p.req("xi"), p.req("h"), p.req("eps"));
                ck.need(xi_in_a_range(xi), "xi.range", "xi in (0,1) u (1,4]");
                ck.need(h != 0.0, "h.nonzero", "h != 0");
                ck.need(sign(eps), "eps.sign", "eps in {-1, 1}");
                if near(xi, 2.0) {
                    ck.need(!near(h, -eps), "xi2.h-ne-minus-eps", "xi = 2: h != -eps");
                }
            }
        }
        GenAII => {
            if ck.present(p, &["h"]) {
                ck.need(p.req("h") != 0.0, "h.nonzero", "h != 0");
            }
        }
        GenAIII => {
            if ck.present(p, &["lambda", "h"]) {
                let h = p.req("h");
                ck.need(h != 0.0, "h.nonzero", "h != 0");
                if p.req("lambda") == 0.0 {
                    ck.need(!near(h.abs(), 1.0), "lambda0.h-ne-pm1", "lambda = 0: h != +-1");
                }
            }
        }
        GenBI => {
            if ck.present(p, &["xi", "phi"]) {
                let xi = p.req("xi");
                ck.need(xi_in_a_range(xi), "xi.range", "xi in (0,1) u (1,4]");
                if near(xi, 2.0) {
                    ck.need(!c_is_real(p.req("phi")), "xi2.c-ne-pm1", "xi = 2: C != +-1");
                }
            }
        }
        GenBII => {
            ck.present(p, &["phi"]);
        }
        GenBIII => {
            if ck.present(p, &["lambda", "phi"]) && p.req("lambda") == 0.0 {
                ck.need(!c_is_real(p.req("phi")), "lambda0.c-ne-pm1", "lambda = 0: C != +-1");
            }
        }
        GenCIa | GenCII => {}
        GenCIb => {
            if ck.present(p, &["xi"]) {
                ck.need(xi_in_c_range(p.req("xi")), "eta.range", "eta in (0,1/2) u (1/2,1) u (1,4]");
            }
        }
        GenCIII => {
            ck.present(p, &["lambda"]);
        }
    }
    if let Some(k) = &p.k {
        ck.need(k.len() == id.mobility(), "K.len", "K has one entry per generator");
        ck.need(k.iter().all(|v| v.is_finite()) && k.iter().any(|&v| v != 0.0), "K.nonzero", "K != 0");
    }
    if ck.out.is_empty() {
        Ok(raw.clone())
    } else {
        Err(Rejection { family: id, violations: ck.out })
    }
}

/// Swaps `x <-> y` where the parameter schema admits it, bringing `|h| < 1` to `|h| > 1`.
///
/// Returns the new parameters and whether a swap happened. The swapped metric
/// equals the original up to the coordinate swap (A2) or a constant factor (generators).
pub fn canonicalize(id: FamilyId, p: &Params) -> (Params, bool) {
    let mut q = p.clone();
    let h = p.req("h");
    let swap = matches!(id, FamilyId::A2 | FamilyId::GenAI | FamilyId::GenAII) && h.is_finite() && h != 0.0 && h.abs() < 1.0;
    if swap {
        q.h = Some(1.0 / h);
        if id == FamilyId::A2 {
            q.kappa = Some(-p.req("kappa") * h);
        }
    }
    (q, swap)
}

/// Human-readable parameter ranges per family.
pub fn param_schema(id: FamilyId) -> Vec<(&'static str, &'static str)> {
    use FamilyId::*;
    match id {
        A1 => vec![
            ("xi", "(0,1) u (1,4]"),
            ("h", "|h| >= 1; xi=2: h != -eps, -4eps; xi=3, eps=-1: |h| != 1; xi=4: h != 1"),
            ("eps", "+-1"),
            ("kappa", "!= 0; h=1, eps=1: > 0"),
            ("rho", "+-1; h=-1: rho=1"),
        ],
        A2 => vec![("h", "|h| >= 1"), ("kappa", "!= 0; h=1: > 0")],
        A3 => vec![
            ("lambda", ">= 0"),
            ("h", "thm5: |h| <= e^{-3 lambda pi} (lambda=0: h != +-1); prop7: e^{-3 lambda pi} < h <= 1"),
            ("theta", "lambda > 0: [0, 2pi), [0, pi) on |h| = e^{-3 lambda pi}"),
            ("kappa", "lambda = 0: > 0"),
            ("variant", "thm5 | prop7"),
        ],
        B4 => vec![
            ("xi", "(0,1) u (1,4]"),
            ("phi", "[0, pi); xi=2: C != +-1; xi=3: C^2 != +-1; xi=4: C != 1"),
            ("kappa", "!= 0"),
        ],
        B5 => vec![("phi", "[0, pi)"), ("kappa", "!= 0")],
        B6 => vec![
            ("lambda", ">= 0"),
            ("phi", "lambda > 0: [0, pi); lambda = 0: (0, pi)"),
            ("theta", "lambda > 0: [0, 2pi)"),
            ("kappa", "lambda = 0: > 0"),
        ],
        C7 => vec![("xi", "(0,1/2) u (1/2,1) u (1,4]"), ("rho", "+-1"), ("kappa", "!= 0")],
        C8 => vec![("kappa", "!= 0")],
        C9 => vec![("lambda", ">= 0"), ("kappa", "lambda = 0: > 0"), ("theta", "lambda > 0: [0, 2pi)")],
        C10 => vec![("sphere", "theta_s in (0,pi), phi_s in [0,2pi); off the axes when theta_s = pi/2")],
        GenAI => vec![("xi", "(0,1) u (1,4]"), ("h", "!= 0; xi=2: h != -eps"), ("eps", "+-1"), ("K", "optional, 2 entries")],
        GenAII => vec![("h", "!= 0"), ("K", "optional, 2 entries")],
        GenAIII => vec![("lambda", "real"), ("h", "!= 0; lambda=0: h != +-1"), ("K", "optional, 2 entries")],
        GenBI => vec![("xi", "(0,1) u (1,4]"), ("phi", "real; xi=2: C != +-1"), ("K", "optional, 2 entries")],
        GenBII => vec![("phi", "real"), ("K", "optional, 2 entries")],
        GenBIII => vec![("lambda", "real"), ("phi", "real; lambda=0: C != +-1"), ("K", "optional, 2 entries")],
        GenCIa => vec![("K", "optional, 3 entries")],
        GenCIb => vec![("xi", "eta in (0,1/2) u (1/2,1) u (1,4]"), ("K", "optional, 2 entries")],
        GenCII => vec![("K", "optional, 2 entries")],
        GenCIII => vec![("lambda", "real"), ("K", "optional, 2 entries")],
    }
}
