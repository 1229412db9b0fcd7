//! C interface to the `projnorm` verification toolkit.
//!
//! Catalog entries and report documents cross the boundary as opaque handles that the
//! caller releases with the matching `*_free` function. Every fallible call returns a
//! [`PnStatus`]; on failure [`pn_last_error`] describes the problem until the next call on
//! the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use projnorm::catalog::{make_entry, reference_params, CatalogEntry, FamilyId, Params};
use projnorm::jets::Point2;
use projnorm::report::{ReportDocument, RunConfig};
use projnorm::{suite, Error};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidParams = 3,
    OutOfDomain = 4,
    Singular = 5,
    UnknownName = 6,
    Numerical = 7,
    IndexOutOfRange = 8,
    Panic = 99,
}

/// A catalog family member.
pub struct PnEntry(CatalogEntry);

/// A sorted collection of verification reports.
pub struct PnReport(ReportDocument);

/// Sampling settings; mirrors the command-line flags.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct PnConfig {
    pub seed: u64,
    pub points: usize,
    pub tol: f64,
    pub order: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> PnStatus {
    match err {
        Error::InvalidParams(_) => PnStatus::InvalidParams,
        Error::OutOfDomain { .. } | Error::DomainError(_) | Error::DomainWindowExceeded | Error::OriginExcluded => {
            PnStatus::OutOfDomain
        }
        Error::SingularMetric
        | Error::DegenerateSection
        | Error::SingularJacobian
        | Error::DegenerateCombination
        | Error::ZeroMatrix => PnStatus::Singular,
        Error::UnknownMap(_) => PnStatus::UnknownName,
        _ => PnStatus::Numerical,
    }
}

struct Fail(PnStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording any error or panic for `pn_last_error`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PnStatus::Ok
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            PnStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(PnStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(PnStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail(PnStatus::NullPointer, format!("{what} is null")))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(PnStatus::NullPointer, "handle is null".into()))
}

fn run_config(c: &PnConfig) -> Result<RunConfig, Fail> {
    let cfg = RunConfig { seed: c.seed, points: c.points, tol: c.tol, order: c.order };
    cfg.validate()?;
    Ok(cfg)
}

fn boxed_report(dst: &mut *mut PnReport, doc: ReportDocument) {
    *dst = Box::into_raw(Box::new(PnReport(doc)));
}

/// Version string of the toolkit; static, never freed.
#[no_mangle]
pub extern "C" fn pn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn pn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Default sampling settings.
#[no_mangle]
pub extern "C" fn pn_config_default() -> PnConfig {
    let d = RunConfig::default();
    PnConfig { seed: d.seed, points: d.points, tol: d.tol, order: d.order }
}

/// Builds a family member. `params` may be null for the family's reference parameters.
///
/// # Safety
/// `family` and non-null `params` must be NUL-terminated strings; `out_entry` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pn_entry_new(family: *const c_char, params: *const c_char, out_entry: *mut *mut PnEntry) -> PnStatus {
    guard(|| {
        let dst = out(out_entry, "out_entry")?;
        *dst = ptr::null_mut();
        let id: FamilyId = text(family, "family")?.parse()?;
        let p = if params.is_null() { reference_params(id) } else { Params::parse(text(params, "params")?)? };
        *dst = Box::into_raw(Box::new(PnEntry(make_entry(id, &p)?)));
        Ok(())
    })
}

/// Releases an entry; null is ignored.
///
/// # Safety
/// `entry` must come from `pn_entry_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pn_entry_free(entry: *mut PnEntry) {
    if !entry.is_null() {
        drop(Box::from_raw(entry));
    }
}

/// 1 if `(x, y)` lies in the domain of the entry's metric, 0 otherwise (or on null).
///
/// # Safety
/// `entry` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pn_entry_in_domain(entry: *const PnEntry, x: f64, y: f64) -> i32 {
    entry.as_ref().map_or(0, |e| e.0.metric.in_domain(Point2::new(x, y)) as i32)
}

/// Writes `(g11, g12, g22)` of the entry's metric at `(x, y)` into `out_g`.
///
/// # Safety
/// `entry` must be a live handle; `out_g` must point to three writable doubles.
#[no_mangle]
pub unsafe extern "C" fn pn_entry_metric(entry: *const PnEntry, x: f64, y: f64, out_g: *mut f64) -> PnStatus {
    guard(|| {
        let e = handle(entry)?;
        if out_g.is_null() {
            return Err(Fail(PnStatus::NullPointer, "out_g is null".into()));
        }
        let p = Point2::new(x, y);
        if !e.0.metric.in_domain(p) {
            return Err(Error::OutOfDomain { x, y }.into());
        }
        let g = e.0.metric.eval(p, 0)?.values();
        std::slice::from_raw_parts_mut(out_g, 3).copy_from_slice(&[g[0][0], g[0][1], g[1][1]]);
        Ok(())
    })
}

/// Canonical parameter string of the entry; free with `pn_string_free`.
///
/// # Safety
/// `entry` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pn_entry_params(entry: *const PnEntry) -> *mut c_char {
    entry.as_ref().map_or(ptr::null_mut(), |e| into_c(e.0.params.to_string()))
}

/// Runs every per-family check on the entry.
///
/// # Safety
/// `entry` must be a live handle; `out_report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pn_verify(entry: *const PnEntry, config: PnConfig, out_report: *mut *mut PnReport) -> PnStatus {
    guard(|| {
        let dst = out(out_report, "out_report")?;
        *dst = ptr::null_mut();
        let e = handle(entry)?;
        let cfg = run_config(&config)?;
        let cmd = vec!["verify".into(), "--family".into(), e.0.id.as_str().into(), "--params".into(), e.0.params.to_string()];
        boxed_report(dst, ReportDocument::new(cmd, cfg, suite::verify_entry(&e.0, &cfg)));
        Ok(())
    })
}

/// Checks one named isometry lemma.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out_report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pn_lemma(name: *const c_char, config: PnConfig, out_report: *mut *mut PnReport) -> PnStatus {
    guard(|| {
        let dst = out(out_report, "out_report")?;
        *dst = ptr::null_mut();
        let n = text(name, "name")?;
        if !suite::LEMMA_CHECKS.contains(&n) {
            return Err(Error::UnknownMap(n.into()).into());
        }
        let cfg = run_config(&config)?;
        let cmd = vec!["lemma".into(), "--name".into(), n.into()];
        boxed_report(dst, ReportDocument::new(cmd, cfg, vec![suite::check_lemma(n, &cfg)]));
        Ok(())
    })
}

/// Runs the full verification suite.
///
/// # Safety
/// `out_report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pn_suite(config: PnConfig, out_report: *mut *mut PnReport) -> PnStatus {
    guard(|| {
        let dst = out(out_report, "out_report")?;
        *dst = ptr::null_mut();
        let cfg = run_config(&config)?;
        boxed_report(dst, ReportDocument::new(vec!["suite".into()], cfg, suite::full_suite(&cfg)));
        Ok(())
    })
}

/// 1 if every check in the report passed, 0 otherwise (or on null).
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pn_report_pass(report: *const PnReport) -> i32 {
    report.as_ref().map_or(0, |r| r.0.pass as i32)
}

/// Number of individual checks in the report (0 on null).
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pn_report_len(report: *const PnReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.reports.len())
}

/// Outcome and largest residual of check `index`.
///
/// # Safety
/// `report` must be a live handle; `out_pass` and `out_residual` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pn_report_item(
    report: *const PnReport,
    index: usize,
    out_pass: *mut i32,
    out_residual: *mut f64,
) -> PnStatus {
    guard(|| {
        let r = handle(report)?;
        let item = r.0.reports.get(index).ok_or_else(|| {
            Fail(PnStatus::IndexOutOfRange, format!("index {index} out of range ({})", r.0.reports.len()))
        })?;
        *out(out_pass, "out_pass")? = item.pass as i32;
        *out(out_residual, "out_residual")? = item.max_rel_residual;
        Ok(())
    })
}

/// The report as JSON, byte-identical to the command-line output; free with `pn_string_free`.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pn_report_json(report: *const PnReport) -> *mut c_char {
    report.as_ref().map_or(ptr::null_mut(), |r| into_c(r.0.to_json()))
}

/// Releases a report; null is ignored.
///
/// # Safety
/// `report` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pn_report_free(report: *mut PnReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_codes_follow_the_error_kind() {
        assert_eq!(status_of(&Error::InvalidParams("x".into())), PnStatus::InvalidParams);
        assert_eq!(status_of(&Error::OutOfDomain { x: 0.0, y: 0.0 }), PnStatus::OutOfDomain);
        assert_eq!(status_of(&Error::SingularMetric), PnStatus::Singular);
        assert_eq!(status_of(&Error::UnknownMap("m".into())), PnStatus::UnknownName);
        assert_eq!(status_of(&Error::QuadratureFailure), PnStatus::Numerical);
    }

    #[test]
    fn panics_become_status_codes() {
        assert_eq!(guard(|| panic!("boom")), PnStatus::Panic);
        let msg = unsafe { CStr::from_ptr(pn_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "internal panic");
    }
}
