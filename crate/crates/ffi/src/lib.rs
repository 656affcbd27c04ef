//! C ABI over the core engine.
//!
//! Handles are opaque pointers owned by the caller and released with the
//! matching `_free` function. Functions that can fail return a
//! [`DendroStatus`]; on failure a thread-local message is retrievable with
//! [`dendro_last_error_message`]. All returned strings are NUL-terminated,
//! freshly allocated, and must be released with [`dendro_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use dendro::anodyne::{
    certify_inner_anodyne, verify_certificate, Certificate, CertificateWire, CertifyOutcome,
};
use dendro::subobject::Subobject;
use dendro::tree::Tree;

/// Result codes of the C API.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DendroStatus {
    /// The call succeeded.
    Ok = 0,
    /// A pointer argument was null or otherwise unusable.
    InvalidArgument = 1,
    /// Text input failed to parse or validate.
    ParseError = 2,
    /// The certificate search ended without a certificate.
    NotFound = 3,
    /// Certificate replay failed.
    VerifyFailed = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let message = CString::new(message.replace('\0', "?"))
        .unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn alloc_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', "?"))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// An owned tree handle.
pub struct DendroTree(Tree);

/// An owned subobject (sieve) handle.
pub struct DendroSubobject(Subobject);

/// An owned inner-anodyne certificate handle.
pub struct DendroCertificate(Certificate);

/// The last error message raised on this thread, or null. Free with
/// `dendro_string_free`.
#[no_mangle]
pub extern "C" fn dendro_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|m| m.clone().into_raw())
            .unwrap_or(ptr::null_mut())
    })
}

/// Frees a string returned by this library. Null is allowed.
///
/// # Safety
/// `s` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn dendro_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Option<&'a str> {
    if s.is_null() {
        return None;
    }
    CStr::from_ptr(s).to_str().ok()
}

/// Parses a tree literal such as `"r(a(x,y),b())"`.
///
/// # Safety
/// `literal` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dendro_tree_parse(
    literal: *const c_char,
    out: *mut *mut DendroTree,
) -> DendroStatus {
    let Some(out) = out.as_mut() else {
        return DendroStatus::InvalidArgument;
    };
    let Some(text) = read_str(literal) else {
        set_error("literal is null or not UTF-8".into());
        return DendroStatus::InvalidArgument;
    };
    match Tree::parse(text) {
        Ok(tree) => {
            *out = Box::into_raw(Box::new(DendroTree(tree)));
            DendroStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            DendroStatus::ParseError
        }
    }
}

/// The tree rendered in the literal grammar.
///
/// # Safety
/// `tree` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dendro_tree_literal(tree: *const DendroTree) -> *mut c_char {
    match tree.as_ref() {
        Some(t) => alloc_string(t.0.literal()),
        None => ptr::null_mut(),
    }
}

/// Stable text key of the isomorphism class (the canonical literal).
///
/// # Safety
/// `tree` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dendro_tree_canonical_key(tree: *const DendroTree) -> *mut c_char {
    match tree.as_ref() {
        Some(t) => alloc_string(t.0.canonicalize().key()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `tree` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dendro_tree_vertex_count(tree: *const DendroTree) -> usize {
    tree.as_ref().map(|t| t.0.vertex_count()).unwrap_or(0)
}

/// # Safety
/// `tree` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dendro_tree_edge_count(tree: *const DendroTree) -> usize {
    tree.as_ref().map(|t| t.0.edge_count()).unwrap_or(0)
}

/// Order of the automorphism group.
///
/// # Safety
/// `tree` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dendro_tree_automorphism_count(tree: *const DendroTree) -> usize {
    tree.as_ref()
        .map(|t| t.0.automorphisms().len())
        .unwrap_or(0)
}

/// # Safety
/// `tree` must be a handle from this library or null; it is consumed.
#[no_mangle]
pub unsafe extern "C" fn dendro_tree_free(tree: *mut DendroTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

unsafe fn make_subobject(
    tree: *const DendroTree,
    out: *mut *mut DendroSubobject,
    build: impl FnOnce(&Tree) -> dendro::Result<Subobject>,
) -> DendroStatus {
    let Some(out) = out.as_mut() else {
        return DendroStatus::InvalidArgument;
    };
    let Some(tree) = tree.as_ref() else {
        set_error("tree handle is null".into());
        return DendroStatus::InvalidArgument;
    };
    match build(&tree.0) {
        Ok(sub) => {
            *out = Box::into_raw(Box::new(DendroSubobject(sub)));
            DendroStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            DendroStatus::ParseError
        }
    }
}

/// The Segal core: the union of the single-vertex and single-edge faces.
///
/// # Safety
/// `tree` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dendro_subobject_core(
    tree: *const DendroTree,
    out: *mut *mut DendroSubobject,
) -> DendroStatus {
    make_subobject(tree, out, |t| Ok(Subobject::segal_core(t)))
}

/// The boundary: every proper face.
///
/// # Safety
/// `tree` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dendro_subobject_boundary(
    tree: *const DendroTree,
    out: *mut *mut DendroSubobject,
) -> DendroStatus {
    make_subobject(tree, out, |t| Ok(Subobject::boundary(t)))
}

/// The external boundary.
///
/// # Safety
/// `tree` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dendro_subobject_external_boundary(
    tree: *const DendroTree,
    out: *mut *mut DendroSubobject,
) -> DendroStatus {
    make_subobject(tree, out, |t| Ok(Subobject::external_boundary(t)))
}

/// The inner horn at the named inner edge.
///
/// # Safety
/// `tree` must be a live handle, `edge` a NUL-terminated string, `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dendro_subobject_inner_horn(
    tree: *const DendroTree,
    edge: *const c_char,
    out: *mut *mut DendroSubobject,
) -> DendroStatus {
    let Some(name) = read_str(edge) else {
        set_error("edge name is null or not UTF-8".into());
        return DendroStatus::InvalidArgument;
    };
    let name = name.to_string();
    make_subobject(tree, out, move |t| {
        let e = t.edge_by_name(&name)?;
        Subobject::inner_horn(t, e)
    })
}

/// Number of member faces.
///
/// # Safety
/// `sub` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dendro_subobject_size(sub: *const DendroSubobject) -> usize {
    sub.as_ref().map(|s| s.0.size()).unwrap_or(0)
}

/// The subobject in its documented JSON wire format.
///
/// # Safety
/// `sub` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dendro_subobject_to_json(sub: *const DendroSubobject) -> *mut c_char {
    match sub.as_ref() {
        Some(s) => match serde_json::to_string_pretty(&s.0.to_wire()) {
            Ok(json) => alloc_string(json),
            Err(_) => ptr::null_mut(),
        },
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `sub` must be a handle from this library or null; it is consumed.
#[no_mangle]
pub unsafe extern "C" fn dendro_subobject_free(sub: *mut DendroSubobject) {
    if !sub.is_null() {
        drop(Box::from_raw(sub));
    }
}

/// Searches for an inner-anodyne certificate from the subobject to the full
/// representable on the same tree. Returns `NotFound` when the pushout
/// search exhausts without one (which does not prove non-anodyneness).
///
/// # Safety
/// `start` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dendro_certify(
    start: *const DendroSubobject,
    out: *mut *mut DendroCertificate,
) -> DendroStatus {
    let Some(out) = out.as_mut() else {
        return DendroStatus::InvalidArgument;
    };
    let Some(start) = start.as_ref() else {
        set_error("subobject handle is null".into());
        return DendroStatus::InvalidArgument;
    };
    let full = Subobject::full(start.0.tree());
    match certify_inner_anodyne(&start.0, &full) {
        Ok(CertifyOutcome::Found(certificate)) => {
            *out = Box::into_raw(Box::new(DendroCertificate(certificate)));
            DendroStatus::Ok
        }
        Ok(CertifyOutcome::NotFound { nodes, exhausted }) => {
            set_error(format!(
                "no pushout-composition certificate after {nodes} nodes (exhausted: {exhausted})"
            ));
            DendroStatus::NotFound
        }
        Err(e) => {
            set_error(e.to_string());
            DendroStatus::ParseError
        }
    }
}

/// Number of expansion steps.
///
/// # Safety
/// `certificate` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dendro_certificate_len(certificate: *const DendroCertificate) -> usize {
    certificate.as_ref().map(|c| c.0.len()).unwrap_or(0)
}

/// The certificate in its documented JSON wire format.
///
/// # Safety
/// `certificate` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dendro_certificate_to_json(
    certificate: *const DendroCertificate,
) -> *mut c_char {
    match certificate.as_ref() {
        Some(c) => match serde_json::to_string_pretty(&c.0.to_wire()) {
            Ok(json) => alloc_string(json),
            Err(_) => ptr::null_mut(),
        },
        None => ptr::null_mut(),
    }
}

/// Parses a certificate from its JSON wire format.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dendro_certificate_parse_json(
    json: *const c_char,
    out: *mut *mut DendroCertificate,
) -> DendroStatus {
    let Some(out) = out.as_mut() else {
        return DendroStatus::InvalidArgument;
    };
    let Some(text) = read_str(json) else {
        set_error("json is null or not UTF-8".into());
        return DendroStatus::InvalidArgument;
    };
    let wire: CertificateWire = match serde_json::from_str(text) {
        Ok(wire) => wire,
        Err(e) => {
            set_error(e.to_string());
            return DendroStatus::ParseError;
        }
    };
    match Certificate::from_wire(&wire) {
        Ok(certificate) => {
            *out = Box::into_raw(Box::new(DendroCertificate(certificate)));
            DendroStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            DendroStatus::ParseError
        }
    }
}

/// Replays the certificate; `Ok` iff every step checks out and the replay
/// reaches the recorded end.
///
/// # Safety
/// `certificate` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dendro_certificate_verify(
    certificate: *const DendroCertificate,
) -> DendroStatus {
    let Some(c) = certificate.as_ref() else {
        set_error("certificate handle is null".into());
        return DendroStatus::InvalidArgument;
    };
    let report = verify_certificate(&c.0);
    if report.ok {
        DendroStatus::Ok
    } else {
        if let Some(failure) = report.failure {
            set_error(format!(
                "stage {} step {:?}: {}",
                failure.stage, failure.step_index, failure.reason
            ));
        }
        DendroStatus::VerifyFailed
    }
}

/// # Safety
/// `certificate` must be a handle from this library or null; it is consumed.
#[no_mangle]
pub unsafe extern "C" fn dendro_certificate_free(certificate: *mut DendroCertificate) {
    if !certificate.is_null() {
        drop(Box::from_raw(certificate));
    }
}
