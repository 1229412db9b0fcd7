use std::f64::consts::FRAC_PI_2;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use projnorm::catalog::dom3::dom3_chart;
use projnorm::catalog::exceptional::KillingCase;
use projnorm::catalog::{list_families, make_entry, reference_params, CatalogEntry, FamilyId, Params};
use projnorm::jets::Point2;
use projnorm::projective::{integrate_geodesic, ProjectiveConnection};
use projnorm::report::{ReportDocument, RunConfig, VerificationReport};
use projnorm::spectra::{BenentiLetter, SpectralKind};
use projnorm::suite;
use projnorm::Error;

#[derive(Parser, Debug)]
#[command(name = "projnorm", version, about = "Checks metrics with exactly one essential projective vector field")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Family listing.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Metric, Liouville section and connection at one point.
    Eval(EvalArgs),
    /// Full per-family check suite.
    Verify(FamilyArgs),
    /// Dini letter, spectral class and homothety test.
    Classify(FamilyArgs),
    /// Mobility-3 determinant test.
    Dom3(Dom3Args),
    /// Killing obstruction of the exceptional metrics (thm3i, thm3ii, thm3iii).
    Killing(FamilyArgs),
    /// Integrates unparametrized geodesics of the family's connection.
    Geodesic(GeodesicArgs),
    /// Pullback check of a shipped coordinate map.
    Lemma(LemmaArgs),
    /// Flow pullback against the matrix exponential.
    Orbit(OrbitArgs),
    /// Every check with reference parameters.
    Suite(Common),
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    List {
        #[arg(long, ignore_case = true)]
        letter: Option<Letter>,
        #[arg(long, ignore_case = true)]
        spectral: Option<Spectral>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Letter {
    A,
    B,
    C,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Spectral {
    TwoReal,
    Jordan,
    ComplexPair,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long)]
    points: Option<usize>,
    /// Overrides `PROJNORM_SEED`.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    order: Option<usize>,
    /// Write the JSON report to this path (`-` for stdout).
    #[arg(long)]
    json: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long)]
    family: String,
    /// `key=value,...`; the family's reference values when omitted.
    #[arg(long)]
    params: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    fam: FamilyArgs,
    /// `x,y`
    #[arg(long, allow_hyphen_values = true)]
    at: String,
}

#[derive(Args, Debug)]
struct Dom3Args {
    #[command(flatten)]
    fam: FamilyArgs,
    /// Evaluate at this `mu` instead of scanning.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
}

#[derive(Args, Debug)]
struct GeodesicArgs {
    #[command(flatten)]
    fam: FamilyArgs,
    /// `x,y`; a domain sample when omitted.
    #[arg(long, allow_hyphen_values = true)]
    start: Option<String>,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    slope: f64,
    #[arg(long, default_value_t = 0.01)]
    step: f64,
    #[arg(long, default_value_t = 50)]
    steps: usize,
    /// Dump the trajectory as CSV.
    #[arg(long)]
    csv: Option<String>,
}

#[derive(Args, Debug)]
struct LemmaArgs {
    /// Map name; every lemma check when omitted.
    #[arg(long)]
    name: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct OrbitArgs {
    #[command(flatten)]
    fam: FamilyArgs,
    /// Comma-separated flow parameters.
    #[arg(long, default_value = "-0.5,-0.1,0.1,0.5", allow_hyphen_values = true)]
    t: String,
}

/// Failure before any check ran: exit code 2.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

fn config(c: &Common) -> Result<RunConfig, Usage> {
    let seed = match c.seed {
        Some(s) => s,
        None => match std::env::var("PROJNORM_SEED") {
            Ok(v) => v.trim().parse().map_err(|_| Usage(format!("PROJNORM_SEED is not an unsigned integer: `{v}`")))?,
            Err(_) => 0,
        },
    };
    let d = RunConfig::default();
    let cfg = RunConfig {
        seed,
        points: c.points.unwrap_or(d.points),
        tol: c.tol.unwrap_or(d.tol),
        order: c.order.unwrap_or(d.order),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn entry(f: &FamilyArgs) -> Result<CatalogEntry, Usage> {
    let id: FamilyId = f.family.parse()?;
    let params = match &f.params {
        Some(s) => Params::parse(s)?,
        None => reference_params(id),
    };
    Ok(make_entry(id, &params)?)
}

fn point(s: &str) -> Result<Point2, Usage> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Usage(format!("bad coordinate `{t}`"))))
        .collect::<Result<_, _>>()?;
    match v.as_slice() {
        [x, y] => Ok(Point2::new(*x, *y)),
        _ => Err(Usage(format!("expected x,y, got `{s}`"))),
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn say(s: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn emit(doc: &ReportDocument, c: &Common) -> Result<(), Usage> {
    let json = doc.to_json();
    match c.json.as_deref() {
        Some("-") => say(&json),
        Some(path) => std::fs::write(path, &json).map_err(|e| Usage(format!("cannot write {path}: {e}")))?,
        None => {}
    }
    if c.json.as_deref() != Some("-") {
        match c.format {
            Format::Json => say(&json),
            Format::Text => say(&doc.to_text()),
        }
    }
    Ok(())
}

fn killing_case(f: &FamilyArgs) -> Result<KillingCase, Usage> {
    let p = match &f.params {
        Some(s) => Params::parse(s)?,
        None => Params::default(),
    };
    Ok(match f.family.to_ascii_lowercase().as_str() {
        "thm3i" => KillingCase::I { eps: p.eps.unwrap_or(1.0), h: p.h.unwrap_or(1.0) },
        "thm3ii" => KillingCase::II { phi: p.phi.unwrap_or(0.0) },
        "thm3iii" => KillingCase::III { phi: p.phi.unwrap_or(FRAC_PI_2) },
        other => return Err(Usage(format!("unknown exceptional metric `{other}` (thm3i, thm3ii, thm3iii)"))),
    })
}

fn geodesic(a: &GeodesicArgs, cfg: &RunConfig) -> Result<VerificationReport, Usage> {
    let e = entry(&a.fam)?;
    let start = match &a.start {
        Some(s) => point(s)?,
        None => e.sample_points(&mut projnorm::report::substream(cfg.seed, "geodesic"), 1)?[0],
    };
    let c1 = ProjectiveConnection::from_metric(&e.metric);
    let path = integrate_geodesic(&c1, start, a.slope, a.step, a.steps)?;
    let c2 = ProjectiveConnection::from_metric(&e.generators[1]);
    let other = integrate_geodesic(&c2, start, a.slope, a.step, a.steps)?;
    let dev = path
        .points
        .iter()
        .zip(&other.points)
        .map(|(p, q)| (p.y - q.y).abs() / (1.0 + p.y.abs()))
        .fold(0.0, f64::max);
    if let Some(file) = &a.csv {
        let mut s = String::from("x,y,slope\n");
        for (p, m) in path.points.iter().zip(&path.slopes) {
            s.push_str(&format!("{},{},{}\n", p.x, p.y, m));
        }
        std::fs::write(file, s).map_err(|e| Usage(format!("cannot write {file}: {e}")))?;
    }
    let end = path.points.last().copied().unwrap_or(start);
    Ok(VerificationReport::new("geodesic", e.id.as_str(), &e.params.to_string(), cfg.seed)
        .cite("same unparametrized geodesics across the class")
        .below(dev, cfg.tol, path.points.len())
        .detail("start", [start.x, start.y])
        .detail("end", [end.x, end.y])
        .detail("hit_boundary", path.hit_boundary))
}

fn eval(a: &EvalArgs, cfg: &RunConfig) -> Result<VerificationReport, Usage> {
    let e = entry(&a.fam)?;
    let p = point(&a.at)?;
    if !e.metric.in_domain(p) {
        return Err(Usage(Error::OutOfDomain { x: p.x, y: p.y }.to_string()));
    }
    let g = e.metric.eval(p, cfg.order)?;
    let sec = projnorm::projective::liouville_from_metric(&e.metric).eval(p, 0)?;
    let conn = ProjectiveConnection::from_metric(&e.metric).values(p)?;
    Ok(VerificationReport::new("eval", e.id.as_str(), &e.params.to_string(), cfg.seed)
        .below(0.0, cfg.tol, 1)
        .detail("point", [p.x, p.y])
        .detail("metric", g.values())
        .detail("metric_jet", [g.g11.coeffs(), g.g12.coeffs(), g.g22.coeffs()])
        .detail("liouville", sec.values())
        .detail("connection", conn))
}

fn run(cli: Cli) -> Result<ReportDocument, Usage> {
    let command: Vec<String> = std::env::args().skip(1).collect();
    let (common, reports) = match &cli.cmd {
        Cmd::Catalog { cmd: CatalogCmd::List { letter, spectral, common } } => {
            let letter = letter.map(|l| match l {
                Letter::A => BenentiLetter::A,
                Letter::B => BenentiLetter::B,
                Letter::C => BenentiLetter::C,
            });
            let spectral = spectral.map(|s| match s {
                Spectral::TwoReal => SpectralKind::TwoReal,
                Spectral::Jordan => SpectralKind::Jordan,
                Spectral::ComplexPair => SpectralKind::ComplexPair,
            });
            let fams = list_families(letter, spectral);
            if common.format == Format::Json || common.json.as_deref() == Some("-") {
                say(&(serde_json::to_string_pretty(&fams).expect("listing serializes") + "\n"));
            } else {
                for f in &fams {
                    let ps: Vec<String> = f.params.iter().map(|(k, _)| k.clone()).collect();
                    say(&format!("{:<8} {:?} {:<12} {}\n", f.id.as_str(), f.letter, format!("{:?}", f.spectral), ps.join(",")));
                }
            }
            if let Some(path) = common.json.as_deref().filter(|p| *p != "-") {
                let s = serde_json::to_string_pretty(&fams).expect("listing serializes");
                std::fs::write(path, s + "\n").map_err(|e| Usage(format!("cannot write {path}: {e}")))?;
            }
            return Ok(ReportDocument::new(command, config(common)?, Vec::new()));
        }
        Cmd::Eval(a) => {
            let cfg = config(&a.fam.common)?;
            (a.fam.common.clone(), vec![eval(a, &cfg)?])
        }
        Cmd::Verify(f) => {
            let cfg = config(&f.common)?;
            (f.common.clone(), suite::verify_entry(&entry(f)?, &cfg))
        }
        Cmd::Classify(f) => {
            let cfg = config(&f.common)?;
            (f.common.clone(), suite::classify_entry(&entry(f)?, &cfg))
        }
        Cmd::Dom3(a) => {
            let cfg = config(&a.fam.common)?;
            let e = entry(&a.fam)?;
            if dom3_chart(e.id).is_none() {
                return Err(Usage(format!("{} has no mobility-3 test (genAI, genAII, genBI)", e.id)));
            }
            let r = match (a.mu, e.id) {
                (Some(mu), _) => suite::check_dom3_at(&e, mu, &cfg),
                (None, FamilyId::GenAII) => suite::check_dom3_inhomogeneous(&cfg),
                (None, _) => {
                    let (xi, h, eps) = (e.params.xi.unwrap_or(f64::NAN), e.params.h.unwrap_or(f64::NAN), e.params.eps.unwrap_or(f64::NAN));
                    let expect = suite::dom3_cases().iter().any(|c| (c.0, c.1, c.2) == (xi, h, eps) && c.3);
                    suite::check_dom3_triple(xi, h, eps, expect, &cfg)
                }
            };
            (a.fam.common.clone(), vec![r])
        }
        Cmd::Killing(f) => {
            let cfg = config(&f.common)?;
            (f.common.clone(), vec![suite::check_killing(killing_case(f)?, &cfg)])
        }
        Cmd::Geodesic(a) => {
            let cfg = config(&a.fam.common)?;
            (a.fam.common.clone(), vec![geodesic(a, &cfg)?])
        }
        Cmd::Lemma(a) => {
            let cfg = config(&a.common)?;
            let names: Vec<&str> = match &a.name {
                Some(n) if suite::LEMMA_CHECKS.contains(&n.as_str()) => vec![n.as_str()],
                Some(n) => return Err(Usage(Error::UnknownMap(n.clone()).to_string())),
                None => suite::LEMMA_CHECKS.to_vec(),
            };
            (a.common.clone(), names.iter().map(|n| suite::check_lemma(n, &cfg)).collect())
        }
        Cmd::Orbit(a) => {
            let cfg = config(&a.fam.common)?;
            let ts: Vec<f64> = a
                .t
                .split(',')
                .map(|s| s.trim().parse::<f64>().map_err(|_| Usage(format!("bad flow parameter `{s}`"))))
                .collect::<Result<_, _>>()?;
            (a.fam.common.clone(), vec![suite::check_orbit(&entry(&a.fam)?, &ts, &cfg)])
        }
        Cmd::Suite(c) => {
            let cfg = config(c)?;
            (c.clone(), suite::full_suite(&cfg))
        }
    };
    let doc = ReportDocument::new(command, config(&common)?, reports);
    emit(&doc, &common)?;
    Ok(doc)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(doc) => ExitCode::from(doc.exit_code() as u8),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
