//! C ABI for the subregular-cell library: opaque handles, integer status
//! codes, and UTF-8 strings allocated by Rust and released through
//! `subreg_string_free`.
//!
//! Every function is null-safe: passing a null pointer yields
//! `SUBREG_STATUS_NULL_POINTER` (or a harmless no-op for the `free`
//! functions), never undefined behavior.

use std::ffi::{c_char, CStr, CString};
use std::sync::Arc;

use subreg_core::automaton::{enumerate_box, enumerate_cell};
use subreg_core::jring::JElement;
use subreg_core::transport::classify_fusion;
use subreg_core::word::{is_subregular, Word};
use subreg_core::CoxeterDiagram;

/// Opaque handle to a validated Coxeter diagram.
pub struct SubregDiagram {
    inner: Arc<CoxeterDiagram>,
}

/// Opaque handle to an element of the subregular ring.
pub struct SubregElement {
    inner: JElement,
}

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubregStatus {
    /// The call succeeded.
    SubregStatusOk = 0,
    /// A required pointer argument was null.
    SubregStatusNullPointer = 1,
    /// A string argument was not valid UTF-8.
    SubregStatusInvalidUtf8 = 2,
    /// The diagram JSON could not be parsed or validated.
    SubregStatusParseError = 3,
    /// A word or generator was rejected by the library.
    SubregStatusDomainError = 4,
}

use SubregStatus::*;

fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, SubregStatus> {
    if ptr.is_null() {
        return Err(SubregStatusNullPointer);
    }
    // SAFETY: the caller passes a NUL-terminated string per the header
    // contract; lifetime is bounded by the call.
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| SubregStatusInvalidUtf8)
}

fn export_string(s: String, out: *mut *mut c_char) -> SubregStatus {
    if out.is_null() {
        return SubregStatusNullPointer;
    }
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: out was checked non-null.
            unsafe { *out = c.into_raw() };
            SubregStatusOk
        }
        Err(_) => SubregStatusDomainError,
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn subreg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses a diagram from its JSON description. On success writes a handle
/// to `out`; release it with `subreg_diagram_free`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn subreg_diagram_parse_json(
    json: *const c_char,
    out: *mut *mut SubregDiagram,
) -> SubregStatus {
    if out.is_null() {
        return SubregStatusNullPointer;
    }
    let src = match read_str(json) {
        Ok(s) => s,
        Err(status) => return status,
    };
    match CoxeterDiagram::from_json_str(src) {
        Ok(d) => {
            let handle = Box::new(SubregDiagram { inner: Arc::new(d) });
            *out = Box::into_raw(handle);
            SubregStatusOk
        }
        Err(_) => SubregStatusParseError,
    }
}

/// Releases a diagram handle. Null is a no-op.
///
/// # Safety
/// `d` must be a pointer returned by `subreg_diagram_parse_json`, not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn subreg_diagram_free(d: *mut SubregDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of generators, or 0 when the handle is null.
///
/// # Safety
/// `d` must be a live diagram handle or null.
#[no_mangle]
pub unsafe extern "C" fn subreg_diagram_rank(d: *const SubregDiagram) -> u32 {
    d.as_ref().map(|d| d.inner.rank() as u32).unwrap_or(0)
}

/// Whether `word` is the unique reduced word of a cell element: 1 yes,
/// 0 no, -1 on error.
///
/// # Safety
/// `d` must be a live diagram handle; `word` a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn subreg_is_subregular(d: *const SubregDiagram, word: *const c_char) -> i32 {
    let Some(d) = d.as_ref() else { return -1 };
    let Ok(src) = read_str(word) else { return -1 };
    match Word::parse(src, &d.inner) {
        Ok(w) => i32::from(is_subregular(&w, &d.inner)),
        Err(_) => 0,
    }
}

/// Enumerates cell elements up to `max_len` as a newline-joined string,
/// restricted to a box when both `box_start` and `box_end` are non-null.
/// Release the string with `subreg_string_free`.
///
/// # Safety
/// `d` must be a live diagram handle; label pointers, when non-null, must
/// be valid NUL-terminated strings; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn subreg_enumerate(
    d: *const SubregDiagram,
    max_len: u32,
    box_start: *const c_char,
    box_end: *const c_char,
    out: *mut *mut c_char,
) -> SubregStatus {
    let Some(d) = d.as_ref() else {
        return SubregStatusNullPointer;
    };
    let elements = if box_start.is_null() && box_end.is_null() {
        enumerate_cell(&d.inner, max_len as usize)
    } else {
        let (start, end) = match (read_str(box_start), read_str(box_end)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(status), _) | (_, Err(status)) => return status,
        };
        let (Some(a), Some(b)) = (d.inner.gen_by_label(start), d.inner.gen_by_label(end)) else {
            return SubregStatusDomainError;
        };
        enumerate_box(&d.inner, a, b, max_len as usize)
    };
    let text = elements
        .iter()
        .map(|x| x.word().render(&d.inner))
        .collect::<Vec<_>>()
        .join("\n");
    export_string(text, out)
}

/// Multiplies the basis elements of two words. On success writes an element
/// handle to `out`; release it with `subreg_element_free`.
///
/// # Safety
/// `d` must be a live diagram handle; `x`, `y` valid NUL-terminated
/// strings; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn subreg_mul(
    d: *const SubregDiagram,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut SubregElement,
) -> SubregStatus {
    let Some(d) = d.as_ref() else {
        return SubregStatusNullPointer;
    };
    if out.is_null() {
        return SubregStatusNullPointer;
    }
    let (x, y) = match (read_str(x), read_str(y)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(status), _) | (_, Err(status)) => return status,
    };
    let product = JElement::t_parse(x, &d.inner)
        .and_then(|tx| Ok((tx, JElement::t_parse(y, &d.inner)?)))
        .and_then(|(tx, ty)| tx.mul(&ty));
    match product {
        Ok(p) => {
            *out = Box::into_raw(Box::new(SubregElement { inner: p }));
            SubregStatusOk
        }
        Err(_) => SubregStatusDomainError,
    }
}

/// Renders an element in the canonical `c*word + ...` syntax (`0` for the
/// zero element). Release the string with `subreg_string_free`.
///
/// # Safety
/// `e` must be a live element handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn subreg_element_render(
    e: *const SubregElement,
    out: *mut *mut c_char,
) -> SubregStatus {
    let Some(e) = e.as_ref() else {
        return SubregStatusNullPointer;
    };
    export_string(e.inner.render(), out)
}

/// Number of basis terms with nonzero coefficient.
///
/// # Safety
/// `e` must be a live element handle or null.
#[no_mangle]
pub unsafe extern "C" fn subreg_element_term_count(e: *const SubregElement) -> u64 {
    e.as_ref().map(|e| e.inner.term_count() as u64).unwrap_or(0)
}

/// Releases an element handle. Null is a no-op.
///
/// # Safety
/// `e` must be a pointer returned by `subreg_mul`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn subreg_element_free(e: *mut SubregElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Classifies the box at the given generator label: writes the Verlinde
/// weight to `out_weight` when the box is finite, 0 when it is infinite.
///
/// # Safety
/// `d` must be a live diagram handle; `gen_label` a valid NUL-terminated
/// string; `out_weight` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn subreg_classify_fusion(
    d: *const SubregDiagram,
    gen_label: *const c_char,
    out_weight: *mut u32,
) -> SubregStatus {
    let Some(d) = d.as_ref() else {
        return SubregStatusNullPointer;
    };
    if out_weight.is_null() {
        return SubregStatusNullPointer;
    }
    let label = match read_str(gen_label) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let Some(s) = d.inner.gen_by_label(label) else {
        return SubregStatusDomainError;
    };
    match classify_fusion(&d.inner, s) {
        Ok(Some(m)) => {
            *out_weight = m;
            SubregStatusOk
        }
        Ok(None) => {
            *out_weight = 0;
            SubregStatusOk
        }
        Err(_) => SubregStatusDomainError,
    }
}

/// Releases a string allocated by this library. Null is a no-op.
///
/// # Safety
/// `s` must be a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn subreg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
