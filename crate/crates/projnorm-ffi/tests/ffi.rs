use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use projnorm_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(pn_last_error()) }.to_str().unwrap().to_owned()
}

fn entry(family: &str, params: Option<&str>) -> (PnStatus, *mut PnEntry) {
    let f = CString::new(family).unwrap();
    let p = params.map(|s| CString::new(s).unwrap());
    let mut out = ptr::null_mut();
    let st = unsafe { pn_entry_new(f.as_ptr(), p.as_ref().map_or(ptr::null(), |c| c.as_ptr()), &mut out) };
    (st, out)
}

fn small() -> PnConfig {
    PnConfig { points: 20, ..pn_config_default() }
}

#[test]
fn entry_lifecycle_and_metric() {
    let (st, e) = entry("genAI", Some("xi=3,h=2,eps=1"));
    assert_eq!(st, PnStatus::Ok);
    assert!(!e.is_null());
    let mut g = [0.0; 3];
    unsafe {
        assert_eq!(pn_entry_in_domain(e, 0.3, -0.4), 1);
        assert_eq!(pn_entry_metric(e, 0.3, -0.4, g.as_mut_ptr()), PnStatus::Ok);
        let s = pn_entry_params(e);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "xi=3,h=2,eps=1");
        pn_string_free(s);
        pn_entry_free(e);
    }
    assert!(g.iter().all(|v| v.is_finite()) && g[0] != 0.0);
}

#[test]
fn reference_parameters_when_params_is_null() {
    let (st, e) = entry("C8", None);
    assert_eq!(st, PnStatus::Ok);
    unsafe { pn_entry_free(e) };
}

#[test]
fn bad_input_maps_to_codes() {
    let (st, e) = entry("A1", Some("xi=2,h=-1,eps=1"));
    assert_eq!(st, PnStatus::InvalidParams);
    assert!(e.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(entry("Z9", None).0, PnStatus::InvalidParams);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { pn_entry_new(ptr::null(), ptr::null(), &mut out) }, PnStatus::NullPointer);
    let name = CString::new("no_such_map").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { pn_lemma(name.as_ptr(), small(), &mut r) }, PnStatus::UnknownName);
    assert!(r.is_null());
    let bad = PnConfig { points: 0, ..small() };
    let name = CString::new("identity").unwrap();
    assert_eq!(unsafe { pn_lemma(name.as_ptr(), bad, &mut r) }, PnStatus::InvalidParams);
}

#[test]
fn out_of_domain_metric() {
    let (_, e) = entry("genAI", Some("xi=3,h=2,eps=1"));
    let mut g = [0.0; 3];
    // h = 2 puts the singular line at x - y = ln(2)/3
    let st = unsafe { pn_entry_metric(e, 2f64.ln() / 3.0, 0.0, g.as_mut_ptr()) };
    assert_eq!(st, PnStatus::OutOfDomain);
    unsafe { pn_entry_free(e) };
}

#[test]
fn verify_and_report_accessors() {
    let (_, e) = entry("A1", None);
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(pn_verify(e, small(), &mut r), PnStatus::Ok);
        assert_eq!(pn_report_pass(r), 1);
        let n = pn_report_len(r);
        assert!(n >= 6);
        let (mut pass, mut res) = (0, f64::NAN);
        assert_eq!(pn_report_item(r, 0, &mut pass, &mut res), PnStatus::Ok);
        assert_eq!(pass, 1);
        assert!(res.is_finite());
        assert_eq!(pn_report_item(r, n, &mut pass, &mut res), PnStatus::IndexOutOfRange);
        let j = pn_report_json(r);
        let text = CStr::from_ptr(j).to_str().unwrap().to_owned();
        pn_string_free(j);
        assert!(text.contains("\"check\": \"metrizability\""));
        pn_report_free(r);
        pn_entry_free(e);
    }
}

#[test]
fn lemma_reports_are_deterministic() {
    let name = CString::new("g1a_to_g1C").unwrap();
    let json = || unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(pn_lemma(name.as_ptr(), small(), &mut r), PnStatus::Ok);
        assert_eq!(pn_report_pass(r), 1);
        let j = pn_report_json(r);
        let s = CStr::from_ptr(j).to_str().unwrap().to_owned();
        pn_string_free(j);
        pn_report_free(r);
        s
    };
    assert_eq!(json(), json());
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        pn_entry_free(ptr::null_mut());
        pn_report_free(ptr::null_mut());
        pn_string_free(ptr::null_mut());
        assert_eq!(pn_report_pass(ptr::null()), 0);
        assert_eq!(pn_report_len(ptr::null()), 0);
        assert!(pn_report_json(ptr::null()).is_null());
        assert_eq!(pn_entry_in_domain(ptr::null(), 0.0, 0.0), 0);
    }
    assert!(!unsafe { CStr::from_ptr(pn_version()) }.to_str().unwrap().is_empty());
}

/// Compiles a small C program against the generated header and the static library.
#[test]
fn c_program_links_against_header() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = crate_dir.join("include/projnorm.h");
    assert!(header.exists(), "header missing");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["pn_entry_new", "pn_verify", "pn_lemma", "pn_suite", "pn_report_json", "pn_last_error", "pn_string_free"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libprojnorm_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping C link test: no C compiler or static library");
        return;
    }
    let tmp = std::env::temp_dir().join(format!("projnorm_ffi_{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let src = tmp.join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "projnorm.h"
int main(void) {
    PnEntry *e = NULL;
    if (pn_entry_new("genBI", NULL, &e) != PN_STATUS_OK) { fprintf(stderr, "%s\n", pn_last_error()); return 1; }
    double g[3];
    if (pn_entry_metric(e, 0.1, 0.4, g) != PN_STATUS_OK) return 2;
    if (pn_entry_new("A1", "xi=2,h=-1,eps=1", &e) != PN_STATUS_INVALID_PARAMS) return 3;
    PnReport *r = NULL;
    PnConfig c = pn_config_default();
    c.points = 10;
    if (pn_lemma("identity", c, &r) != PN_STATUS_OK || !pn_report_pass(r)) return 4;
    char *json = pn_report_json(r);
    printf("%s", json);
    pn_string_free(json);
    pn_report_free(r);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = tmp.join("smoke");
    let st = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(st.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C program exited {:?}", out.status);
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"pass\": true"));
}
