use std::ffi::{c_char, CStr, CString};
use std::ptr;

use corings::cli::document::Kind;
use corings::cli::fixture_document;
use corings::linalg::Field;
use corings_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    corings_string_free(s);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(corings_last_error()).to_str().unwrap().to_string() }
}

#[test]
fn parse_serialise_and_check() {
    let text = fixture_document("dual-numbers", Field::Prime(5), Kind::ModuleMorphism).unwrap().serialise();
    let c = CString::new(text.clone()).unwrap();
    unsafe {
        let mut doc = ptr::null_mut();
        assert_eq!(corings_document_parse(c.as_ptr(), &mut doc), CoringsStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(corings_document_serialise(doc, &mut s), CoringsStatus::Ok);
        assert_eq!(take(s), text);
        let mut report = ptr::null_mut();
        assert_eq!(corings_document_check(doc, &mut report), CoringsStatus::Ok);
        assert!(take(report).contains("\"verdict\": \"pass\""));
        corings_document_free(doc);
    }
}

#[test]
fn failures_are_distinguished() {
    let good = fixture_document("matrix-coalgebra", Field::Rational, Kind::Coring).unwrap().serialise();
    let broken = CString::new(good.replacen("  matrix counit 4 1\n    1\n", "  matrix counit 4 1\n    3\n", 1)).unwrap();
    let garbage = CString::new("schema corings/1\nkind coring\n").unwrap();
    unsafe {
        let mut doc = ptr::null_mut();
        assert_eq!(corings_document_parse(broken.as_ptr(), &mut doc), CoringsStatus::Ok);
        let mut report = ptr::null_mut();
        assert_eq!(corings_document_check(doc, &mut report), CoringsStatus::Fail);
        assert!(take(report).contains("\"fail\""));
        assert!(last_error().contains("counit"));
        corings_document_free(doc);

        let mut doc = ptr::null_mut();
        assert_eq!(corings_document_parse(garbage.as_ptr(), &mut doc), CoringsStatus::Structural);
        assert!(doc.is_null());
        assert!(last_error().contains("field"));

        assert_eq!(corings_document_parse(ptr::null(), &mut doc), CoringsStatus::NullPointer);
        let mut s = ptr::null_mut();
        assert_eq!(corings_document_serialise(ptr::null(), &mut s), CoringsStatus::NullPointer);
        corings_document_free(ptr::null_mut());
        corings_string_free(ptr::null_mut());
    }
}

#[test]
fn command_line_through_the_interface() {
    let args: Vec<CString> = ["corings", "verify", "theta", "--mm", "fixtures/matrix-coalgebra"]
        .iter()
        .map(|a| CString::new(*a).unwrap())
        .collect();
    let ptrs: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    unsafe {
        let mut code = -1;
        let mut out = ptr::null_mut();
        assert_eq!(corings_run(ptrs.len() as i32, ptrs.as_ptr(), &mut code, &mut out), CoringsStatus::Ok);
        assert_eq!(code, 0);
        assert!(take(out).contains("theta"));
        let bad: Vec<*const c_char> = ptrs[..2].to_vec();
        assert_eq!(corings_run(2, bad.as_ptr(), &mut code, &mut out), CoringsStatus::Ok);
        assert_eq!(code, 2);
        corings_string_free(out);
    }
}

#[test]
fn header_declares_the_interface() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/corings.h")).unwrap();
    for name in ["corings_document_parse", "corings_document_check", "corings_run", "corings_string_free", "CoringsStatus"] {
        assert!(header.contains(name), "{name}");
    }
    let compiled = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", concat!(env!("CARGO_MANIFEST_DIR"), "/include/corings.h")])
        .status();
    if let Ok(status) = compiled {
        assert!(status.success());
    }
}
