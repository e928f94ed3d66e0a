//! Exercises the C surface the way a foreign caller would: raw pointers,
//! status codes, and JSON strings.

use std::ffi::{CStr, CString};
use std::ptr;

use hopfdouble_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(ptr: *mut std::ffi::c_char) -> String {
    assert!(!ptr.is_null());
    let text = CStr::from_ptr(ptr).to_str().unwrap().to_owned();
    hd_string_free(ptr);
    text
}

#[test]
fn abi_version_is_stable() {
    assert_eq!(hd_abi_version(), 1 << 16);
}

#[test]
fn group_lifecycle_and_reports() {
    let mut group: *mut HdGroup = ptr::null_mut();
    let gens = cstr("(12),(123)");
    assert_eq!(
        hd_group_from_generators(gens.as_ptr(), 24, &mut group),
        HdStatus::Ok
    );
    assert_eq!(hd_group_order(group), 6);
    assert_eq!(hd_group_class_count(group), 3);

    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(hd_group_info_json(group, &mut json), HdStatus::Ok);
    let text = unsafe { take_string(json) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["order"], 6);

    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(hd_group_calculi_json(group, &mut json), HdStatus::Ok);
    let text = unsafe { take_string(json) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["nontrivial_classes"], 2);
    assert_eq!(v["calculi_found"], 2);

    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(hd_group_cohomology_json(group, 1, &mut json), HdStatus::Ok);
    let text = unsafe { take_string(json) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["dims_equal"], true);

    hd_group_free(group);
}

#[test]
fn hopf_round_trip_through_json() {
    let mut group: *mut HdGroup = ptr::null_mut();
    let gens = cstr("(123)");
    assert_eq!(
        hd_group_from_generators(gens.as_ptr(), 24, &mut group),
        HdStatus::Ok
    );
    let mut hopf: *mut HdHopf = ptr::null_mut();
    assert_eq!(hd_group_function_hopf(group, &mut hopf), HdStatus::Ok);
    assert_eq!(hd_hopf_dim(hopf), 3);

    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(hd_hopf_to_json(hopf, &mut json), HdStatus::Ok);
    let text = unsafe { take_string(json) };

    // verify the serialized algebra and reload it
    let c_text = cstr(&text);
    let mut report: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(
        hd_verify_hopf_json(c_text.as_ptr(), 24, &mut report),
        HdStatus::Ok
    );
    let report_text = unsafe { take_string(report) };
    let v: serde_json::Value = serde_json::from_str(&report_text).unwrap();
    assert_eq!(v["axioms"]["all_passed"], true);

    let mut reloaded: *mut HdHopf = ptr::null_mut();
    assert_eq!(
        hd_hopf_from_json(c_text.as_ptr(), 24, &mut reloaded),
        HdStatus::Ok
    );
    assert_eq!(hd_hopf_dim(reloaded), 3);

    // build and verify the double
    let mut dbl: *mut HdDouble = ptr::null_mut();
    assert_eq!(hd_double_build(reloaded, &mut dbl), HdStatus::Ok);
    assert_eq!(hd_double_dim(dbl), 9);
    let mut report: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(hd_double_verify_json(dbl, &mut report), HdStatus::Ok);
    let report_text = unsafe { take_string(report) };
    let v: serde_json::Value = serde_json::from_str(&report_text).unwrap();
    assert_eq!(v["quasitriangular"]["passed"], true);

    hd_double_free(dbl);
    hd_hopf_free(reloaded);
    hd_hopf_free(hopf);
    hd_group_free(group);
}

#[test]
fn corrupted_algebra_reports_check_failure() {
    let mut group: *mut HdGroup = ptr::null_mut();
    let gens = cstr("(12)");
    assert_eq!(
        hd_group_from_generators(gens.as_ptr(), 24, &mut group),
        HdStatus::Ok
    );
    let mut hopf: *mut HdHopf = ptr::null_mut();
    assert_eq!(hd_group_function_hopf(group, &mut hopf), HdStatus::Ok);
    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(hd_hopf_to_json(hopf, &mut json), HdStatus::Ok);
    let text = unsafe { take_string(json) };

    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["mult"][0][3] = serde_json::Value::String("7".into());
    let broken = cstr(&v.to_string());

    let mut report: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(
        hd_verify_hopf_json(broken.as_ptr(), 24, &mut report),
        HdStatus::CheckFailed
    );
    let report_text = unsafe { take_string(report) };
    let rv: serde_json::Value = serde_json::from_str(&report_text).unwrap();
    assert_eq!(rv["axioms"]["all_passed"], false);

    // the handle constructor refuses the same input
    let mut bad: *mut HdHopf = ptr::null_mut();
    assert_eq!(
        hd_hopf_from_json(broken.as_ptr(), 24, &mut bad),
        HdStatus::CheckFailed
    );
    assert!(bad.is_null());
    let msg = unsafe { CStr::from_ptr(hd_last_error()) }.to_str().unwrap();
    assert!(!msg.is_empty());

    hd_hopf_free(hopf);
    hd_group_free(group);
}

#[test]
fn argument_errors_and_guards() {
    // null inputs
    let mut group: *mut HdGroup = ptr::null_mut();
    assert_eq!(
        hd_group_from_generators(ptr::null(), 24, &mut group),
        HdStatus::InvalidArgument
    );
    assert!(group.is_null());
    assert_eq!(hd_group_order(ptr::null()), 0);

    // parse errors
    let garbage = cstr("(((");
    assert_eq!(
        hd_group_from_generators(garbage.as_ptr(), 24, &mut group),
        HdStatus::ParseError
    );

    // order guard
    let gens = cstr("(1234),(13)");
    assert_eq!(
        hd_group_from_generators(gens.as_ptr(), 4, &mut group),
        HdStatus::LimitExceeded
    );

    // frees accept null
    hd_group_free(ptr::null_mut());
    hd_hopf_free(ptr::null_mut());
    hd_double_free(ptr::null_mut());
    hd_string_free(ptr::null_mut());
}

#[test]
fn eq2_report_passes_and_rejects_zero() {
    let zs = [0.3f64, 0.7, 1.1];
    let mut report: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(
        hd_eq2_json(zs.as_ptr(), zs.len(), 1e-10, &mut report),
        HdStatus::Ok
    );
    let text = unsafe { take_string(report) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["runs"].as_array().unwrap().len(), 3);

    let zero = [0.0f64];
    let mut report: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(
        hd_eq2_json(zero.as_ptr(), 1, 1e-10, &mut report),
        HdStatus::InvalidArgument
    );
    assert!(report.is_null());
}

#[test]
fn header_declares_every_exported_symbol() {
    let header = include_str!("../include/hopfdouble.h");
    for symbol in [
        "hd_abi_version",
        "hd_last_error",
        "hd_string_free",
        "hd_group_free",
        "hd_hopf_free",
        "hd_double_free",
        "hd_group_from_generators",
        "hd_group_from_table_json",
        "hd_group_order",
        "hd_group_class_count",
        "hd_group_info_json",
        "hd_group_calculi_json",
        "hd_group_cohomology_json",
        "hd_group_function_hopf",
        "hd_hopf_from_json",
        "hd_hopf_dim",
        "hd_hopf_to_json",
        "hd_verify_hopf_json",
        "hd_double_build",
        "hd_double_dim",
        "hd_double_verify_json",
        "hd_eq2_json",
    ] {
        assert!(header.contains(symbol), "header is missing {symbol}");
    }
}
