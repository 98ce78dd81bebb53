//! C ABI for the exact symplectic form engine.
//!
//! All objects are opaque handles; constructors return null on failure and
//! record a thread-local error message retrievable with
//! `sympform_last_error`. Status-returning functions use 0 for success/false,
//! 1 for true, and negative codes for errors.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use sympform::bc::BcKind;
use sympform::form::Form;
use sympform::manifold::ManifoldDescriptor;
use sympform::parser::parse_form;

/// Success / boolean false.
pub const SYMPFORM_OK: c_int = 0;
/// Boolean true.
pub const SYMPFORM_TRUE: c_int = 1;
/// Null handle or invalid argument.
pub const SYMPFORM_ERR_ARGUMENT: c_int = -1;
/// Parse or verification error; details via sympform_last_error.
pub const SYMPFORM_ERR_PARSE: c_int = -2;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Opaque manifold handle.
pub struct SympformManifold {
    inner: ManifoldDescriptor,
}

/// Opaque differential-form handle.
pub struct SympformForm {
    inner: Form,
}

/// Returns the last error message recorded on this thread. The pointer is
/// valid until the next failing call on the same thread. Never null.
#[no_mangle]
pub extern "C" fn sympform_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

unsafe fn cstr<'a>(p: *const c_char) -> Option<&'a str> {
    if p.is_null() {
        return None;
    }
    CStr::from_ptr(p).to_str().ok()
}

/// Parses a manifold descriptor JSON string. Returns null on error.
#[no_mangle]
pub unsafe extern "C" fn sympform_manifold_from_json(
    json: *const c_char,
) -> *mut SympformManifold {
    let Some(text) = cstr(json) else {
        set_error("null or non-UTF8 descriptor");
        return ptr::null_mut();
    };
    match ManifoldDescriptor::from_json(text) {
        Ok(inner) => Box::into_raw(Box::new(SympformManifold { inner })),
        Err(e) => {
            set_error(&e.to_string());
            ptr::null_mut()
        }
    }
}

/// Frees a manifold handle. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn sympform_manifold_free(m: *mut SympformManifold) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Parses a form expression over the manifold's coordinates. Returns null on
/// error.
#[no_mangle]
pub unsafe extern "C" fn sympform_form_parse(
    m: *const SympformManifold,
    expr: *const c_char,
) -> *mut SympformForm {
    let Some(m) = m.as_ref() else {
        set_error("null manifold");
        return ptr::null_mut();
    };
    let Some(text) = cstr(expr) else {
        set_error("null or non-UTF8 expression");
        return ptr::null_mut();
    };
    match parse_form(&m.inner, text) {
        Ok(inner) => Box::into_raw(Box::new(SympformForm { inner })),
        Err(e) => {
            set_error(&e);
            ptr::null_mut()
        }
    }
}

/// Frees a form handle. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn sympform_form_free(f: *mut SympformForm) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Degree of a form, or a negative error code.
#[no_mangle]
pub unsafe extern "C" fn sympform_form_degree(f: *const SympformForm) -> c_int {
    match f.as_ref() {
        Some(f) => f.inner.degree as c_int,
        None => {
            set_error("null form");
            SYMPFORM_ERR_ARGUMENT
        }
    }
}

/// Checks a named boundary condition (e.g. "D", "Nplus", "DplusPlus") on all
/// boundary components. Returns 1 (holds), 0 (violated), or a negative error
/// code.
#[no_mangle]
pub unsafe extern "C" fn sympform_check_bc(
    m: *const SympformManifold,
    f: *const SympformForm,
    bc: *const c_char,
) -> c_int {
    let (Some(m), Some(f)) = (m.as_ref(), f.as_ref()) else {
        set_error("null handle");
        return SYMPFORM_ERR_ARGUMENT;
    };
    let Some(name) = cstr(bc) else {
        set_error("null or non-UTF8 condition name");
        return SYMPFORM_ERR_ARGUMENT;
    };
    let Some(kind) = BcKind::parse(name) else {
        set_error(&format!("unknown boundary condition '{}'", name));
        return SYMPFORM_ERR_PARSE;
    };
    if m.inner.check_bc(kind, &f.inner) {
        SYMPFORM_TRUE
    } else {
        SYMPFORM_OK
    }
}

/// Returns 1 when the form is primitive (vanishing omega-trace), 0 otherwise,
/// or a negative error code.
#[no_mangle]
pub unsafe extern "C" fn sympform_form_is_primitive(
    m: *const SympformManifold,
    f: *const SympformForm,
) -> c_int {
    let (Some(m), Some(f)) = (m.as_ref(), f.as_ref()) else {
        set_error("null handle");
        return SYMPFORM_ERR_ARGUMENT;
    };
    if m.inner.frame.is_primitive(&f.inner) {
        SYMPFORM_TRUE
    } else {
        SYMPFORM_OK
    }
}

/// Computes every cohomology dimension table and the complex indices as a
/// JSON string. Free with sympform_string_free. Returns null on error.
#[no_mangle]
pub unsafe extern "C" fn sympform_cohomology_json(
    m: *const SympformManifold,
) -> *mut c_char {
    let Some(m) = m.as_ref() else {
        set_error("null manifold");
        return ptr::null_mut();
    };
    let d = &m.inner;
    let plus_abs = d.ph_plus_abs();
    let minus_abs = d.ph_minus_abs();
    let plus_rel = d.ph_plus_rel_duality();
    let minus_rel = d.ph_minus_rel_duality();
    let v = serde_json::json!({
        "betti_abs": d.betti_abs(),
        "betti_rel": d.betti_rel(),
        "ph_plus_abs": plus_abs,
        "ph_minus_abs": minus_abs,
        "ph_plus_rel": plus_rel,
        "ph_minus_rel": minus_rel,
        "index_abs": d.primitive_complex_index(&plus_abs, &minus_abs),
        "index_rel": d.primitive_complex_index(&plus_rel, &minus_rel),
    });
    match CString::new(v.to_string()) {
        Ok(c) => c.into_raw(),
        Err(_) => {
            set_error("interior NUL in JSON");
            ptr::null_mut()
        }
    }
}

/// Frees a string returned by this library. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn sympform_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    const DESCRIPTOR: &str = r#"{
        "n": 3,
        "factors": [
            {"kind": "interval", "coords": ["x1"]},
            {"kind": "torus", "coords": ["y1", "x2", "y2", "x3", "y3"]}
        ],
        "omega_pairs": [[1, 2], [3, 4], [5, 6]],
        "jsign": 1
    }"#;

    #[test]
    fn round_trip_through_c_abi() {
        unsafe {
            let json = CString::new(DESCRIPTOR).unwrap();
            let m = sympform_manifold_from_json(json.as_ptr());
            assert!(!m.is_null());

            let expr = CString::new("dx1").unwrap();
            let f = sympform_form_parse(m, expr.as_ptr());
            assert!(!f.is_null());
            assert_eq!(sympform_form_degree(f), 1);

            let bc = CString::new("Dplus").unwrap();
            assert_eq!(sympform_check_bc(m, f, bc.as_ptr()), SYMPFORM_TRUE);
            let bc_d = CString::new("N").unwrap();
            assert_eq!(sympform_check_bc(m, f, bc_d.as_ptr()), SYMPFORM_OK);

            let coh = sympform_cohomology_json(m);
            assert!(!coh.is_null());
            let text = CStr::from_ptr(coh).to_str().unwrap();
            let v: serde_json::Value = serde_json::from_str(text).unwrap();
            assert_eq!(v["ph_plus_abs"], serde_json::json!([1, 5, 9, 10]));
            assert_eq!(v["index_abs"], serde_json::json!(0));
            sympform_string_free(coh);

            sympform_form_free(f);
            sympform_manifold_free(m);
        }
    }

    #[test]
    fn errors_are_reported() {
        unsafe {
            let bad = CString::new("{not json").unwrap();
            let m = sympform_manifold_from_json(bad.as_ptr());
            assert!(m.is_null());
            let err = CStr::from_ptr(sympform_last_error()).to_str().unwrap();
            assert!(!err.is_empty());

            let json = CString::new(DESCRIPTOR).unwrap();
            let m = sympform_manifold_from_json(json.as_ptr());
            let bad_expr = CString::new("dz9").unwrap();
            let f = sympform_form_parse(m, bad_expr.as_ptr());
            assert!(f.is_null());

            let expr = CString::new("dx1").unwrap();
            let f = sympform_form_parse(m, expr.as_ptr());
            let bad_bc = CString::new("Q").unwrap();
            assert_eq!(sympform_check_bc(m, f, bad_bc.as_ptr()), SYMPFORM_ERR_PARSE);
            sympform_form_free(f);
            sympform_manifold_free(m);
        }
    }
}
