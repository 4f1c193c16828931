//! C interface to the `corings` library.
//!
//! Documents are held behind opaque handles. Every function returns a
//! [`CoringsStatus`]; strings handed out must be released with
//! [`corings_string_free`], handles with [`corings_document_free`]. The message
//! of the last error on the calling thread is available from
//! [`corings_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use corings::cli::document::Document;
use corings::cli::{check_document, exit_code};
use corings::report::Verdict;

/// Result codes. `Fail` is a mathematical failure, `Structural` malformed input.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoringsStatus {
    Ok = 0,
    Fail = 1,
    Structural = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    Panic = 5,
}

/// A parsed interchange document.
pub struct CoringsDocument {
    doc: Document,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("no interior nul"));
}

fn guarded(f: impl FnOnce() -> CoringsStatus) -> CoringsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            CoringsStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, CoringsStatus> {
    if p.is_null() {
        set_error("null pointer argument");
        return Err(CoringsStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        CoringsStatus::InvalidUtf8
    })
}

unsafe fn hand_out(s: String, out: *mut *mut c_char) -> CoringsStatus {
    if out.is_null() {
        set_error("null output pointer");
        return CoringsStatus::NullPointer;
    }
    *out = CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw();
    CoringsStatus::Ok
}

/// The message of the last failed call on this thread; owned by the library.
#[no_mangle]
pub extern "C" fn corings_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `text` into a new document handle.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn corings_document_parse(text: *const c_char, out: *mut *mut CoringsDocument) -> CoringsStatus {
    guarded(|| {
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        if out.is_null() {
            set_error("null output pointer");
            return CoringsStatus::NullPointer;
        }
        match Document::parse(text) {
            Ok(doc) => {
                *out = Box::into_raw(Box::new(CoringsDocument { doc }));
                CoringsStatus::Ok
            }
            Err(e) => {
                *out = ptr::null_mut();
                set_error(e.to_string());
                CoringsStatus::Structural
            }
        }
    })
}

/// Releases a document handle; null is ignored.
///
/// # Safety
/// `doc` must come from [`corings_document_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn corings_document_free(doc: *mut CoringsDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Writes the canonical text of `doc` to `out`.
///
/// # Safety
/// `doc` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn corings_document_serialise(doc: *const CoringsDocument, out: *mut *mut c_char) -> CoringsStatus {
    guarded(|| {
        let Some(d) = doc.as_ref() else {
            set_error("null document");
            return CoringsStatus::NullPointer;
        };
        hand_out(d.doc.serialise(), out)
    })
}

/// Checks the subject of `doc` and writes the JSON report to `out`. Returns
/// `Ok` on pass, `Fail` otherwise, `Structural` when the document does not
/// describe a valid object shape.
///
/// # Safety
/// `doc` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn corings_document_check(doc: *const CoringsDocument, out: *mut *mut c_char) -> CoringsStatus {
    guarded(|| {
        let Some(d) = doc.as_ref() else {
            set_error("null document");
            return CoringsStatus::NullPointer;
        };
        match check_document(&d.doc) {
            Ok(r) => {
                let s = hand_out(r.to_json(), out);
                if s != CoringsStatus::Ok {
                    return s;
                }
                if r.verdict == Verdict::Pass {
                    CoringsStatus::Ok
                } else {
                    set_error(format!("{r}"));
                    CoringsStatus::Fail
                }
            }
            Err(e) => {
                set_error(e.to_string());
                CoringsStatus::Structural
            }
        }
    })
}

/// Runs the command line with `argc` arguments (program name first), storing the
/// exit code in `code` and standard output in `out`.
///
/// # Safety
/// `argv` must hold `argc` nul-terminated strings; `code` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn corings_run(
    argc: c_int,
    argv: *const *const c_char,
    code: *mut c_int,
    out: *mut *mut c_char,
) -> CoringsStatus {
    guarded(|| {
        if argv.is_null() || code.is_null() || argc < 0 {
            set_error("null or negative argument");
            return CoringsStatus::NullPointer;
        }
        let mut args = Vec::with_capacity(argc as usize);
        for i in 0..argc as usize {
            match read_str(*argv.add(i)) {
                Ok(a) => args.push(a.to_string()),
                Err(s) => return s,
            }
        }
        let o = corings::cli::run(args);
        *code = o.code;
        if o.code != exit_code(Verdict::Pass) {
            set_error(if o.stderr.is_empty() { o.stdout.clone() } else { o.stderr.clone() });
        }
        hand_out(o.stdout, out)
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn corings_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
