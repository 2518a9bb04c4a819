//! C ABI over the `pircon` crate.
//!
//! Posets are passed around as opaque `PirconPoset` handles. Every function
//! returns a `PirconStatus`; on anything but `PIRCON_STATUS_OK` the message
//! is available from `pircon_last_error` on the same thread. Panics are
//! caught at the boundary and reported as `PIRCON_STATUS_PANIC`.
//!
//! Output buffers follow one convention: the caller passes a pointer and a
//! capacity, the required length is always written to `out_len`, and
//! `PIRCON_STATUS_BUFFER_TOO_SMALL` is returned when the capacity is short.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pircon::matching::{check_special_matching, check_spm, classify_with, search_spm, MatchingMap};
use pircon::poset::{Comparison, Poset, PosetJson};
use pircon::signed::{family_poset, Family, OrderDirection};
use pircon::topology::{homology_z2, order_complex};
use pircon::Error;

/// Opaque poset handle.
pub struct PirconPoset(Poset);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PirconStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidJson = 3,
    InvalidPoset = 4,
    IndexOutOfRange = 5,
    SizeMismatch = 6,
    MissingTop = 7,
    MissingBound = 8,
    BufferTooSmall = 9,
    CapExceeded = 10,
    InvalidArgument = 11,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PirconComparison {
    Equal = 0,
    /// `x < y` without being a cover.
    Less = 1,
    Greater = 2,
    Incomparable = 3,
    /// `x` is covered by `y`.
    CoveredBy = 4,
    /// `x` covers `y`.
    Covers = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PirconFamily {
    SymmetricInvolutions = 0,
    FpfInvolutions = 1,
    SignedInvolutions = 2,
    FpfSignedInvolutions = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PirconClassification {
    pub pircon: bool,
    /// 1 or 0, or -1 when the special matching search was skipped.
    pub zircon: i32,
    pub ideals_checked: usize,
}

/// Largest n accepted by the family builders.
const SIGNED_CAP: usize = 6;
const SYMMETRIC_CAP: usize = 5;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

struct Failure(PirconStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::IndexOutOfRange { .. } => PirconStatus::IndexOutOfRange,
            Error::SizeMismatch { .. } => PirconStatus::SizeMismatch,
            Error::MissingTop => PirconStatus::MissingTop,
            Error::MissingBound => PirconStatus::MissingBound,
            Error::CycleDetected(_) => PirconStatus::InvalidPoset,
            Error::CapExceeded { .. } => PirconStatus::CapExceeded,
            _ => PirconStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(PirconStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, mapping failures and panics to a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> PirconStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            PirconStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(&format!("panic: {message}"));
            PirconStatus::Panic
        }
    }
}

unsafe fn poset_ref<'a>(p: *const PirconPoset) -> Result<&'a Poset, Failure> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| null("poset"))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// Copies `data` to `buf` if it fits; always reports the needed length.
unsafe fn write_slice<T: Copy>(data: &[T], buf: *mut T, cap: usize, out_len: *mut usize) -> Result<(), Failure> {
    write_out(out_len, data.len(), "out_len")?;
    if data.len() > cap {
        return Err(Failure(
            PirconStatus::BufferTooSmall,
            format!("need {} entries, capacity {cap}", data.len()),
        ));
    }
    if !data.is_empty() {
        if buf.is_null() {
            return Err(null("buffer"));
        }
        ptr::copy_nonoverlapping(data.as_ptr(), buf, data.len());
    }
    Ok(())
}

fn boxed(p: Poset) -> *mut PirconPoset {
    Box::into_raw(Box::new(PirconPoset(p)))
}

/// Message of the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn pircon_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn pircon_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a poset from `{"name": ..., "elements": [...], "covers": [[lo, hi], ...]}`.
#[no_mangle]
pub unsafe extern "C" fn pircon_poset_from_json(json: *const c_char, out: *mut *mut PirconPoset) -> PirconStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(PirconStatus::InvalidUtf8, e.to_string()))?;
        let doc: PosetJson =
            serde_json::from_str(text).map_err(|e| Failure(PirconStatus::InvalidJson, e.to_string()))?;
        let poset = Poset::from_json(&doc).map_err(|e| match e {
            Error::IndexOutOfRange { .. } | Error::CycleDetected(_) => Failure(PirconStatus::InvalidPoset, e.to_string()),
            other => Failure::from(other),
        })?;
        out.write(boxed(poset));
        Ok(())
    })
}

/// Bruhat order (or its dual) on an involution family.
#[no_mangle]
pub unsafe extern "C" fn pircon_family_poset(
    family: PirconFamily,
    n: usize,
    dual: bool,
    out: *mut *mut PirconPoset,
) -> PirconStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let family = match family {
            PirconFamily::SymmetricInvolutions => Family::SymmetricInvolutions,
            PirconFamily::FpfInvolutions => Family::FpfInvolutions,
            PirconFamily::SignedInvolutions => Family::SignedInvolutions,
            PirconFamily::FpfSignedInvolutions => Family::FpfSignedInvolutions,
        };
        let cap = if family.is_signed() { SIGNED_CAP } else { SYMMETRIC_CAP };
        if n > cap {
            return Err(Error::CapExceeded { n, cap }.into());
        }
        let direction = if dual { OrderDirection::Dual } else { OrderDirection::Bruhat };
        let (_, poset) = family_poset(family, n, direction)?;
        out.write(boxed(poset));
        Ok(())
    })
}

/// Fixed-point-free signed involutions of rank `n`.
#[no_mangle]
pub unsafe extern "C" fn pircon_fpf_signed_poset(n: usize, dual: bool, out: *mut *mut PirconPoset) -> PirconStatus {
    pircon_family_poset(PirconFamily::FpfSignedInvolutions, n, dual, out)
}

/// Releases a handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pircon_poset_free(poset: *mut PirconPoset) {
    if !poset.is_null() {
        drop(Box::from_raw(poset));
    }
}

#[no_mangle]
pub unsafe extern "C" fn pircon_poset_len(poset: *const PirconPoset, out_len: *mut usize) -> PirconStatus {
    guard(|| {
        let p = poset_ref(poset)?;
        write_out(out_len, p.len(), "out_len")
    })
}

/// Writes the poset JSON (without a trailing nul) into `buf`.
#[no_mangle]
pub unsafe extern "C" fn pircon_poset_to_json(
    poset: *const PirconPoset,
    buf: *mut u8,
    cap: usize,
    out_len: *mut usize,
) -> PirconStatus {
    guard(|| {
        let p = poset_ref(poset)?;
        let text = serde_json::to_string(&p.to_json("poset")).map_err(|e| Failure(PirconStatus::Panic, e.to_string()))?;
        write_slice(text.as_bytes(), buf, cap, out_len)
    })
}

/// Name of element `x` (without a trailing nul) into `buf`.
#[no_mangle]
pub unsafe extern "C" fn pircon_poset_element_name(
    poset: *const PirconPoset,
    x: usize,
    buf: *mut u8,
    cap: usize,
    out_len: *mut usize,
) -> PirconStatus {
    guard(|| {
        let p = poset_ref(poset)?;
        if x >= p.len() {
            return Err(Error::IndexOutOfRange { index: x, len: p.len() }.into());
        }
        write_slice(p.name(x).as_bytes(), buf, cap, out_len)
    })
}

#[no_mangle]
pub unsafe extern "C" fn pircon_poset_compare(
    poset: *const PirconPoset,
    x: usize,
    y: usize,
    out: *mut PirconComparison,
) -> PirconStatus {
    guard(|| {
        let p = poset_ref(poset)?;
        let c = match p.order_query(x, y)? {
            Comparison::Equal => PirconComparison::Equal,
            Comparison::Less => PirconComparison::Less,
            Comparison::Greater => PirconComparison::Greater,
            Comparison::Incomparable => PirconComparison::Incomparable,
            Comparison::CoveredBy => PirconComparison::CoveredBy,
            Comparison::Covers => PirconComparison::Covers,
        };
        write_out(out, c, "out")
    })
}

/// Searches for an SPM. On success `*out_found` says whether one exists and,
/// if so, `matching[x]` receives `M(x)` for every element.
#[no_mangle]
pub unsafe extern "C" fn pircon_search_spm(
    poset: *const PirconPoset,
    out_found: *mut bool,
    matching: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> PirconStatus {
    guard(|| {
        let p = poset_ref(poset)?;
        match search_spm(p)? {
            Some(m) => {
                write_slice(&m.0, matching, cap, out_len)?;
                write_out(out_found, true, "out_found")
            }
            None => {
                write_out(out_len, 0, "out_len")?;
                write_out(out_found, false, "out_found")
            }
        }
    })
}

/// Checks `matching[0..len]` as an SPM (or, with `special`, as a special
/// matching).
#[no_mangle]
pub unsafe extern "C" fn pircon_check_spm(
    poset: *const PirconPoset,
    matching: *const usize,
    len: usize,
    special: bool,
    out_valid: *mut bool,
) -> PirconStatus {
    guard(|| {
        let p = poset_ref(poset)?;
        if matching.is_null() && len > 0 {
            return Err(null("matching"));
        }
        let image = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(matching, len).to_vec()
        };
        if let Some(&bad) = image.iter().find(|&&v| v >= p.len()) {
            return Err(Error::IndexOutOfRange { index: bad, len: p.len() }.into());
        }
        let m = MatchingMap(image);
        let verdict = if special { check_special_matching(p, &m)? } else { check_spm(p, &m)? };
        write_out(out_valid, verdict.valid, "out_valid")
    })
}

#[no_mangle]
pub unsafe extern "C" fn pircon_classify(
    poset: *const PirconPoset,
    with_zircon: bool,
    out: *mut PirconClassification,
) -> PirconStatus {
    guard(|| {
        let p = poset_ref(poset)?;
        let c = classify_with(p, with_zircon)?;
        let result = PirconClassification {
            pircon: c.pircon,
            zircon: c.zircon.map_or(-1, i32::from),
            ideals_checked: c.certificates.len(),
        };
        write_out(out, result, "out")
    })
}

/// Reduced Z/2 Betti numbers of the order complex, `betti[k]` in degree
/// `k - 1`. With `proper`, the top and bottom are removed first.
#[no_mangle]
pub unsafe extern "C" fn pircon_order_complex_betti(
    poset: *const PirconPoset,
    proper: bool,
    betti: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> PirconStatus {
    guard(|| {
        let p = poset_ref(poset)?;
        let complex = if proper {
            order_complex(&p.proper_part()?.poset)
        } else {
            order_complex(p)
        };
        write_slice(&homology_z2(&complex).betti, betti, cap, out_len)
    })
}
