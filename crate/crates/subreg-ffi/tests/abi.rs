//! Exercises every exported C function through the raw ABI, the way a
//! foreign binding would.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use subreg_ffi::*;

const TRIANGLE_456: &str =
    r#"{"generators": ["1", "2", "3"], "m": [["1","2",4], ["1","3",5], ["2","3",6]]}"#;

fn parse(json: &str) -> *mut SubregDiagram {
    let json = CString::new(json).unwrap();
    let mut handle: *mut SubregDiagram = ptr::null_mut();
    let status = unsafe { subreg_diagram_parse_json(json.as_ptr(), &mut handle) };
    assert_eq!(status, SubregStatus::SubregStatusOk);
    assert!(!handle.is_null());
    handle
}

fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let out = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
    unsafe { subreg_string_free(ptr) };
    out
}

#[test]
fn version_is_nonempty() {
    let v = unsafe { CStr::from_ptr(subreg_version()) };
    assert!(!v.to_str().unwrap().is_empty());
}

#[test]
fn parse_rank_and_free() {
    let d = parse(TRIANGLE_456);
    assert_eq!(unsafe { subreg_diagram_rank(d) }, 3);
    unsafe { subreg_diagram_free(d) };
    // null handling
    assert_eq!(unsafe { subreg_diagram_rank(ptr::null()) }, 0);
    unsafe { subreg_diagram_free(ptr::null_mut()) };
}

#[test]
fn parse_rejects_bad_json() {
    let json = CString::new("not json").unwrap();
    let mut handle: *mut SubregDiagram = ptr::null_mut();
    let status = unsafe { subreg_diagram_parse_json(json.as_ptr(), &mut handle) };
    assert_eq!(status, SubregStatus::SubregStatusParseError);
    let status = unsafe { subreg_diagram_parse_json(ptr::null(), &mut handle) };
    assert_eq!(status, SubregStatus::SubregStatusNullPointer);
}

#[test]
fn subregular_predicate() {
    let d = parse(TRIANGLE_456);
    let w = CString::new("1213").unwrap();
    assert_eq!(unsafe { subreg_is_subregular(d, w.as_ptr()) }, 1);
    let w = CString::new("11").unwrap();
    assert_eq!(unsafe { subreg_is_subregular(d, w.as_ptr()) }, 0);
    assert_eq!(unsafe { subreg_is_subregular(ptr::null(), w.as_ptr()) }, -1);
    unsafe { subreg_diagram_free(d) };
}

#[test]
fn enumerate_cell_and_box() {
    let d = parse(r#"{"generators": ["1", "2"], "m": [["1","2",7]]}"#);
    let mut out: *mut c_char = ptr::null_mut();
    let status = unsafe { subreg_enumerate(d, 3, ptr::null(), ptr::null(), &mut out) };
    assert_eq!(status, SubregStatus::SubregStatusOk);
    assert_eq!(take_string(out), "1\n2\n12\n21\n121\n212");

    let start = CString::new("1").unwrap();
    let end = CString::new("1").unwrap();
    let mut out: *mut c_char = ptr::null_mut();
    let status = unsafe { subreg_enumerate(d, 3, start.as_ptr(), end.as_ptr(), &mut out) };
    assert_eq!(status, SubregStatus::SubregStatusOk);
    assert_eq!(take_string(out), "1\n121");

    let bad = CString::new("9").unwrap();
    let mut out: *mut c_char = ptr::null_mut();
    let status = unsafe { subreg_enumerate(d, 3, bad.as_ptr(), end.as_ptr(), &mut out) };
    assert_eq!(status, SubregStatus::SubregStatusDomainError);
    unsafe { subreg_diagram_free(d) };
}

#[test]
fn multiply_and_render() {
    let d = parse(TRIANGLE_456);
    let x = CString::new("123").unwrap();
    let y = CString::new("3213").unwrap();
    let mut product: *mut SubregElement = ptr::null_mut();
    let status = unsafe { subreg_mul(d, x.as_ptr(), y.as_ptr(), &mut product) };
    assert_eq!(status, SubregStatus::SubregStatusOk);
    assert_eq!(unsafe { subreg_element_term_count(product) }, 3);

    let mut rendered: *mut c_char = ptr::null_mut();
    let status = unsafe { subreg_element_render(product, &mut rendered) };
    assert_eq!(status, SubregStatus::SubregStatusOk);
    assert_eq!(take_string(rendered), "1*13 + 1*1213 + 1*123213");
    unsafe { subreg_element_free(product) };

    // a vanishing product renders as "0"
    let x = CString::new("12").unwrap();
    let y = CString::new("13").unwrap();
    let mut product: *mut SubregElement = ptr::null_mut();
    let status = unsafe { subreg_mul(d, x.as_ptr(), y.as_ptr(), &mut product) };
    assert_eq!(status, SubregStatus::SubregStatusOk);
    assert_eq!(unsafe { subreg_element_term_count(product) }, 0);
    let mut rendered: *mut c_char = ptr::null_mut();
    unsafe { subreg_element_render(product, &mut rendered) };
    assert_eq!(take_string(rendered), "0");
    unsafe { subreg_element_free(product) };

    // non-subregular input is a domain error
    let x = CString::new("11").unwrap();
    let mut product: *mut SubregElement = ptr::null_mut();
    let status = unsafe { subreg_mul(d, x.as_ptr(), y.as_ptr(), &mut product) };
    assert_eq!(status, SubregStatus::SubregStatusDomainError);
    unsafe { subreg_diagram_free(d) };
}

#[test]
fn classify_through_abi() {
    let d = parse(r#"{"generators": ["1", "2"], "m": [["1","2",5]]}"#);
    let label = CString::new("1").unwrap();
    let mut weight = 99u32;
    let status = unsafe { subreg_classify_fusion(d, label.as_ptr(), &mut weight) };
    assert_eq!(status, SubregStatus::SubregStatusOk);
    assert_eq!(weight, 5);
    unsafe { subreg_diagram_free(d) };

    let d = parse(
        r#"{"generators": ["0", "1", "2"],
            "m": [["0","1",3], ["0","2",3], ["1","2","inf"]]}"#,
    );
    let label = CString::new("0").unwrap();
    let mut weight = 99u32;
    let status = unsafe { subreg_classify_fusion(d, label.as_ptr(), &mut weight) };
    assert_eq!(status, SubregStatus::SubregStatusOk);
    assert_eq!(weight, 0, "infinite box reports weight 0");
    unsafe { subreg_diagram_free(d) };
}

#[test]
fn header_names_every_export() {
    // the hand-maintained header must mention each exported symbol
    let header = include_str!("../include/subreg.h");
    for symbol in [
        "subreg_version",
        "subreg_diagram_parse_json",
        "subreg_diagram_free",
        "subreg_diagram_rank",
        "subreg_is_subregular",
        "subreg_enumerate",
        "subreg_mul",
        "subreg_element_render",
        "subreg_element_term_count",
        "subreg_element_free",
        "subreg_classify_fusion",
        "subreg_string_free",
    ] {
        assert!(header.contains(symbol), "header is missing {symbol}");
    }
}
