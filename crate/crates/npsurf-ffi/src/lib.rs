//! C ABI for the npsurf library.
//!
//! All functions follow the same conventions: handles are opaque pointers
//! created by `*_parse` / fixture constructors and released by the matching
//! `*_free`; every fallible call returns an [`NpsurfStatus`] and writes its
//! result through out-pointers only on `Ok`; the most recent error message
//! is available per thread via [`npsurf_last_error_message`]. Strings
//! returned through out-pointers must be released with
//! [`npsurf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use npsurf::error::Error;
use npsurf::koszul;
use npsurf::lattice::DivisorClass;
use npsurf::surface::{
    chain_self_intersection, clifford_index_general_curve, seshadri_certificate,
    PolarizedSurface, SeshadriOutcome, SurfaceKind,
};
use npsurf::theorems::{
    combined_k3_verdict, enriques_verdict, mukai_multiple_verdict, theorem_a_verdict,
};
use npsurf::GradedModuleTable;

/// Opaque handle to a graded module table.
pub struct NpsurfModule {
    inner: GradedModuleTable,
}

/// Opaque handle to a polarized surface.
pub struct NpsurfSurface {
    inner: PolarizedSurface,
}

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NpsurfStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    WindowError = 4,
    KindMismatch = 5,
    MissingFlag = 6,
    Unsupported = 7,
    InvalidArgument = 8,
    Panic = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> NpsurfStatus {
    match err {
        Error::DegreeOutOfWindow { .. } | Error::WindowTooSmall { .. } => {
            NpsurfStatus::WindowError
        }
        Error::Schema { .. } => NpsurfStatus::ParseError,
        Error::KindMismatch { .. } => NpsurfStatus::KindMismatch,
        Error::MissingFlag(_) => NpsurfStatus::MissingFlag,
        Error::NoTheoremApplies { .. } => NpsurfStatus::Unsupported,
        _ => NpsurfStatus::InvalidArgument,
    }
}

fn guard(body: impl FnOnce() -> NpsurfStatus) -> NpsurfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            NpsurfStatus::Panic
        }
    }
}

/// # Safety
/// `input` must be a valid NUL-terminated string or null.
unsafe fn read_str<'a>(input: *const c_char) -> Result<&'a str, NpsurfStatus> {
    if input.is_null() {
        set_error("null string argument");
        return Err(NpsurfStatus::NullArgument);
    }
    CStr::from_ptr(input).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        NpsurfStatus::InvalidUtf8
    })
}

fn fail(err: &Error) -> NpsurfStatus {
    set_error(&err.to_string());
    status_of(err)
}

macro_rules! out_write {
    ($ptr:expr, $value:expr) => {{
        if $ptr.is_null() {
            set_error("null out-pointer");
            return NpsurfStatus::NullArgument;
        }
        unsafe { ptr::write($ptr, $value) };
    }};
}

/// Message describing the last error on this thread; valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn npsurf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string allocated by this library.
///
/// # Safety
/// `s` must come from an npsurf out-pointer and not already be freed.
#[no_mangle]
pub unsafe extern "C" fn npsurf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn give_string(out: *mut *mut c_char, value: String) -> NpsurfStatus {
    let c = match CString::new(value) {
        Ok(c) => c,
        Err(_) => {
            set_error("output contains interior NUL");
            return NpsurfStatus::InvalidArgument;
        }
    };
    out_write!(out, c.into_raw());
    NpsurfStatus::Ok
}

/// Parses a module-table JSON document into a handle.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn npsurf_module_parse(
    json: *const c_char,
    out: *mut *mut NpsurfModule,
) -> NpsurfStatus {
    guard(|| {
        let text = match read_str(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match GradedModuleTable::from_json(text) {
            Ok(inner) => {
                out_write!(out, Box::into_raw(Box::new(NpsurfModule { inner })));
                NpsurfStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Builds the rational-normal-curve fixture of degree `d`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn npsurf_module_rnc(
    d: u32,
    q_max: i64,
    out: *mut *mut NpsurfModule,
) -> NpsurfStatus {
    guard(|| match npsurf::fixtures::rational_normal_curve(d as usize, q_max) {
        Ok(inner) => {
            out_write!(out, Box::into_raw(Box::new(NpsurfModule { inner })));
            NpsurfStatus::Ok
        }
        Err(e) => fail(&e),
    })
}

/// # Safety
/// `module` must come from a module constructor and not already be freed.
#[no_mangle]
pub unsafe extern "C" fn npsurf_module_free(module: *mut NpsurfModule) {
    if !module.is_null() {
        drop(Box::from_raw(module));
    }
}

/// dim K_{p,q} of the module.
///
/// # Safety
/// `module` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn npsurf_koszul_dim(
    module: *const NpsurfModule,
    p: u32,
    q: i64,
    out: *mut u64,
) -> NpsurfStatus {
    guard(|| {
        let Some(module) = module.as_ref() else {
            set_error("null module handle");
            return NpsurfStatus::NullArgument;
        };
        match koszul::koszul_cohomology_dim(&module.inner, p as usize, q) {
            Ok(dim) => {
                out_write!(out, dim as u64);
                NpsurfStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Property (N_p) over 2 <= q <= q_bound. On failure `*witness_p` and
/// `*witness_q` receive the first nonzero cell.
///
/// # Safety
/// `module` must be a live handle; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn npsurf_check_np(
    module: *const NpsurfModule,
    p: i64,
    q_bound: i64,
    holds: *mut bool,
    has_witness: *mut bool,
    witness_p: *mut u32,
    witness_q: *mut i64,
) -> NpsurfStatus {
    guard(|| {
        let Some(module) = module.as_ref() else {
            set_error("null module handle");
            return NpsurfStatus::NullArgument;
        };
        match koszul::check_np(&module.inner, p, q_bound) {
            Ok(report) => {
                out_write!(holds, report.holds);
                out_write!(has_witness, report.witness.is_some());
                if let Some((i, q)) = report.witness {
                    out_write!(witness_p, i as u32);
                    out_write!(witness_q, q);
                }
                NpsurfStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Parses a surface JSON document into a handle.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn npsurf_surface_parse(
    json: *const c_char,
    out: *mut *mut NpsurfSurface,
) -> NpsurfStatus {
    guard(|| {
        let text = match read_str(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match PolarizedSurface::from_json(text) {
            Ok(inner) => {
                out_write!(out, Box::into_raw(Box::new(NpsurfSurface { inner })));
                NpsurfStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `surface` must come from `npsurf_surface_parse` and not already be freed.
#[no_mangle]
pub unsafe extern "C" fn npsurf_surface_free(surface: *mut NpsurfSurface) {
    if !surface.is_null() {
        drop(Box::from_raw(surface));
    }
}

/// phi(L); `*is_finite` is false when the lattice has no isotropic classes,
/// in which case `*value` is not written.
///
/// # Safety
/// `surface` must be a live handle; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn npsurf_surface_phi(
    surface: *const NpsurfSurface,
    value: *mut i64,
    is_finite: *mut bool,
) -> NpsurfStatus {
    guard(|| {
        let Some(surface) = surface.as_ref() else {
            set_error("null surface handle");
            return NpsurfStatus::NullArgument;
        };
        match surface.inner.phi() {
            Ok(result) => {
                out_write!(is_finite, result.is_some());
                if let Some(v) = result {
                    out_write!(value, v);
                }
                NpsurfStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Clifford index of a general curve in |L| on an Enriques surface.
///
/// # Safety
/// `surface` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn npsurf_surface_clifford_index(
    surface: *const NpsurfSurface,
    out: *mut i64,
) -> NpsurfStatus {
    guard(|| {
        let Some(surface) = surface.as_ref() else {
            set_error("null surface handle");
            return NpsurfStatus::NullArgument;
        };
        match clifford_index_general_curve(&surface.inner) {
            Ok(v) => {
                out_write!(out, v);
                NpsurfStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Serialized verdict for the named decision procedure: "a" (degree-5
/// threshold on K3/abelian), "k3" (sharp thresholds with the genus-two
/// resolution), or "enriques".
///
/// # Safety
/// `surface` must be a live handle; `theorem` NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn npsurf_surface_verdict_json(
    surface: *const NpsurfSurface,
    theorem: *const c_char,
    p: u32,
    out: *mut *mut c_char,
) -> NpsurfStatus {
    guard(|| {
        let Some(surface) = surface.as_ref() else {
            set_error("null surface handle");
            return NpsurfStatus::NullArgument;
        };
        let name = match read_str(theorem) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let verdict = match name {
            "a" => theorem_a_verdict(&surface.inner, p),
            "k3" => combined_k3_verdict(&surface.inner, p),
            "enriques" => enriques_verdict(&surface.inner, p),
            other => {
                set_error(&format!(
                    "unknown theorem `{other}` (expected a, k3 or enriques)"
                ));
                return NpsurfStatus::Unsupported;
            }
        };
        match verdict {
            Ok(v) => give_string(out, v.to_json()),
            Err(e) => fail(&e),
        }
    })
}

/// Serialized verdict for the multiple m*L on a K3 surface.
///
/// # Safety
/// `surface` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn npsurf_surface_mukai_json(
    surface: *const NpsurfSurface,
    m: u32,
    p: u32,
    out: *mut *mut c_char,
) -> NpsurfStatus {
    guard(|| {
        let Some(surface) = surface.as_ref() else {
            set_error("null surface handle");
            return NpsurfStatus::NullArgument;
        };
        match mukai_multiple_verdict(&surface.inner, m, p) {
            Ok(v) => give_string(out, v.to_json()),
            Err(e) => fail(&e),
        }
    })
}

/// Seshadri certificate at a very general point: `*certified` is the
/// outcome; on success the certified strict lower bound p+2 is written to
/// `*exceeds`.
///
/// # Safety
/// `surface` must be a live handle; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn npsurf_surface_seshadri(
    surface: *const NpsurfSurface,
    p: u32,
    certified: *mut bool,
    exceeds: *mut i64,
) -> NpsurfStatus {
    guard(|| {
        let Some(surface) = surface.as_ref() else {
            set_error("null surface handle");
            return NpsurfStatus::NullArgument;
        };
        match seshadri_certificate(&surface.inner, p) {
            Ok(SeshadriOutcome::Certified { exceeds: bound }) => {
                out_write!(certified, true);
                out_write!(exceeds, bound);
                NpsurfStatus::Ok
            }
            Ok(SeshadriOutcome::NoCertificate { .. }) => {
                out_write!(certified, false);
                NpsurfStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Degree of `coords` against the polarization, plus its self-intersection.
///
/// # Safety
/// `surface` must be a live handle; `coords` must point to `len` values;
/// out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn npsurf_surface_pair_with_polarization(
    surface: *const NpsurfSurface,
    coords: *const i64,
    len: usize,
    degree: *mut i64,
    self_int: *mut i64,
) -> NpsurfStatus {
    guard(|| {
        let Some(surface) = surface.as_ref() else {
            set_error("null surface handle");
            return NpsurfStatus::NullArgument;
        };
        if coords.is_null() {
            set_error("null coordinate pointer");
            return NpsurfStatus::NullArgument;
        }
        let class = DivisorClass::new(std::slice::from_raw_parts(coords, len).to_vec());
        let deg = match surface.inner.degree_of(&class) {
            Ok(v) => v,
            Err(e) => return fail(&e),
        };
        let sq = match surface.inner.self_int_of(&class) {
            Ok(v) => v,
            Err(e) => return fail(&e),
        };
        out_write!(degree, deg);
        out_write!(self_int, sq);
        NpsurfStatus::Ok
    })
}

/// Surface kind as a small integer: 0 = K3, 1 = abelian, 2 = Enriques.
///
/// # Safety
/// `surface` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn npsurf_surface_kind(
    surface: *const NpsurfSurface,
    out: *mut u32,
) -> NpsurfStatus {
    guard(|| {
        let Some(surface) = surface.as_ref() else {
            set_error("null surface handle");
            return NpsurfStatus::NullArgument;
        };
        let code = match surface.inner.kind() {
            SurfaceKind::K3 => 0,
            SurfaceKind::Abelian => 1,
            SurfaceKind::Enriques => 2,
        };
        out_write!(out, code);
        NpsurfStatus::Ok
    })
}

/// -(F^2) for a chain of (-2)-curves with the given multiplicities.
///
/// # Safety
/// `multiplicities` must point to `len` values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn npsurf_chain_self_intersection(
    multiplicities: *const i64,
    len: usize,
    out: *mut i64,
) -> NpsurfStatus {
    guard(|| {
        if multiplicities.is_null() {
            set_error("null multiplicity pointer");
            return NpsurfStatus::NullArgument;
        }
        let values = std::slice::from_raw_parts(multiplicities, len);
        match chain_self_intersection(values) {
            Ok(v) => {
                out_write!(out, v);
                NpsurfStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}
