//! C ABI over `ruledcodes`.
//!
//! Every function returns an [`RcStatus`]; on failure the message is kept per
//! thread and read with [`rc_last_error`]. Handles are opaque and must be
//! released with their `_free` function. Field elements cross the boundary
//! as their `u32` encodings.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ruledcodes::analysis::{self, FamilyParams};
use ruledcodes::asymptotics;
use ruledcodes::codes::LinearCode;
use ruledcodes::config::ExperimentConfig;
use ruledcodes::gf::Elem;
use ruledcodes::locality::{self, RecoverySet};
use ruledcodes::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Precondition = 4,
    CapExceeded = 5,
    Domain = 6,
    BufferTooSmall = 7,
    Unrecoverable = 8,
    Internal = 99,
}

/// A linear code with its column index and recovery sets.
pub struct RcCode {
    code: LinearCode,
    sets: Option<Vec<Vec<RecoverySet>>>,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RcBound {
    pub n: i64,
    pub k_lower: i64,
    pub d_lower: i64,
    pub valid: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> RcStatus {
    match e {
        Error::Parse(_) | Error::Config(_) | Error::Io(_) => RcStatus::Parse,
        Error::CapExceeded(_) => RcStatus::CapExceeded,
        Error::Domain(_) | Error::Parity(_) => RcStatus::Domain,
        Error::ErasedHelper(_) => RcStatus::Unrecoverable,
        _ => RcStatus::Precondition,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (RcStatus, String)>) -> RcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RcStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            RcStatus::Internal
        }
    }
}

fn lib(e: Error) -> (RcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (RcStatus, String) {
    (RcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (RcStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (RcStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn code_ref<'a>(p: *const RcCode) -> Result<&'a RcCode, (RcStatus, String)> {
    p.as_ref().ok_or_else(|| null("code"))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), (RcStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    *out = v;
    Ok(())
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Build the code described by a JSON experiment config.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_code_from_config(json: *const c_char, out: *mut *mut RcCode) -> RcStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let cfg = ExperimentConfig::parse(text).map_err(lib)?;
        let code = cfg.resolve().and_then(|r| r.build(&cfg.code)).map_err(lib)?;
        put(out, Box::into_raw(Box::new(RcCode { code, sets: None })), "out")
    })
}

/// Read a code from the `k n q` matrix format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_code_from_matrix(text: *const c_char, out: *mut *mut RcCode) -> RcStatus {
    guard(|| {
        let code = LinearCode::from_text(read_str(text, "text")?).map_err(lib)?;
        put(out, Box::into_raw(Box::new(RcCode { code, sets: None })), "out")
    })
}

/// # Safety
/// `code` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rc_code_free(code: *mut RcCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// # Safety
/// `code` must be a live handle; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_code_dims(code: *const RcCode, n: *mut usize, k: *mut usize, q: *mut u64) -> RcStatus {
    guard(|| {
        let c = &code_ref(code)?.code;
        put(n, c.n(), "n")?;
        put(k, c.k(), "k")?;
        put(q, c.q(), "q")
    })
}

/// Copy the generator matrix, row-major, into `buf` of length `len >= k n`.
///
/// # Safety
/// `buf` must point to `len` writable `u32`s.
#[no_mangle]
pub unsafe extern "C" fn rc_code_generator(code: *const RcCode, buf: *mut u32, len: usize) -> RcStatus {
    guard(|| {
        let c = &code_ref(code)?.code;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let need = c.k() * c.n();
        if len < need {
            return Err((RcStatus::BufferTooSmall, format!("need {need} entries, got {len}")));
        }
        let out = std::slice::from_raw_parts_mut(buf, need);
        for (o, e) in out.iter_mut().zip(c.generator.iter().flatten()) {
            *o = e.0;
        }
        Ok(())
    })
}

/// Encode a message of length `k` into `out` of length `n`.
///
/// # Safety
/// `msg` must hold `msg_len` values and `out` `out_len` writable slots.
#[no_mangle]
pub unsafe extern "C" fn rc_code_encode(
    code: *const RcCode,
    msg: *const u32,
    msg_len: usize,
    out: *mut u32,
    out_len: usize,
) -> RcStatus {
    guard(|| {
        let c = &code_ref(code)?.code;
        if msg.is_null() || out.is_null() {
            return Err(null("msg or out"));
        }
        if msg_len != c.k() {
            return Err((RcStatus::InvalidArgument, format!("message length {msg_len} != k = {}", c.k())));
        }
        if out_len < c.n() {
            return Err((RcStatus::BufferTooSmall, format!("need {} entries, got {out_len}", c.n())));
        }
        let m: Vec<Elem> = std::slice::from_raw_parts(msg, msg_len)
            .iter()
            .map(|&v| c.field.elem(v as u64))
            .collect::<Result<_, _>>()
            .map_err(lib)?;
        let w = c.encode(&m);
        for (o, e) in std::slice::from_raw_parts_mut(out, c.n()).iter_mut().zip(w) {
            *o = e.0;
        }
        Ok(())
    })
}

/// Exhaustive minimum distance, provided `q^k <= cap`.
///
/// # Safety
/// `code` must be a live handle and `d` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_code_min_distance(code: *const RcCode, cap: u64, d: *mut usize) -> RcStatus {
    guard(|| {
        let c = &code_ref(code)?.code;
        let ex = analysis::exact_params(c, cap).map_err(lib)?;
        put(d, ex.d, "d")
    })
}

fn sets_of(h: &mut RcCode) -> Result<&Vec<Vec<RecoverySet>>, (RcStatus, String)> {
    if h.sets.is_none() {
        h.sets = Some(locality::recovery_sets_unchecked(&h.code).map_err(lib)?);
    }
    Ok(h.sets.as_ref().unwrap())
}

/// Recovery sets of every column as a JSON array; release with
/// [`rc_string_free`].
///
/// # Safety
/// `code` must be a live surface code handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rc_code_recovery_sets_json(code: *mut RcCode, out: *mut *mut c_char) -> RcStatus {
    guard(|| {
        let h = code.as_mut().ok_or_else(|| null("code"))?;
        let json = locality::recovery_sets_json(sets_of(h)?);
        put(out, CString::new(json).unwrap().into_raw(), "out")
    })
}

/// Repair position `target` of a received word from the first recovery set
/// whose helpers are all present. `erased[i] != 0` marks an erasure.
///
/// # Safety
/// `word` and `erased` must hold `len` values; `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_code_recover(
    code: *mut RcCode,
    word: *const u32,
    erased: *const u8,
    len: usize,
    target: usize,
    value: *mut u32,
) -> RcStatus {
    guard(|| {
        let h = code.as_mut().ok_or_else(|| null("code"))?;
        if word.is_null() || erased.is_null() {
            return Err(null("word or erased"));
        }
        let n = h.code.n();
        if len != n || target >= n {
            return Err((RcStatus::InvalidArgument, format!("length {len} / target {target} for n = {n}")));
        }
        let w = std::slice::from_raw_parts(word, len);
        let er = std::slice::from_raw_parts(erased, len);
        let received: Vec<Option<Elem>> = w
            .iter()
            .zip(er)
            .map(|(&v, &e)| (e == 0).then_some(Elem(v)))
            .collect();
        let field = h.code.field.clone();
        let v = sets_of(h)?[target]
            .iter()
            .find_map(|r| locality::recover(&field, &received, r).ok())
            .ok_or_else(|| (RcStatus::Unrecoverable, format!("every recovery set of {target} has an erased helper")))?;
        put(value, v.0, "value")
    })
}

/// # Safety
/// `s` must come from this library.
#[no_mangle]
pub unsafe extern "C" fn rc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn bound_out(r: analysis::BoundReport) -> RcBound {
    RcBound {
        n: r.n,
        k_lower: r.k_lower,
        d_lower: r.d_lower,
        valid: r.valid(),
    }
}

/// Bounds for codes on an elementary transform with a center of degree `d`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_bound_elm(q: i64, n_rational: i64, g: i64, d: i64, a: i64, b: i64, out: *mut RcBound) -> RcStatus {
    guard(|| {
        let p = FamilyParams { q, n_rational, g, twist: d, a, b };
        put(out, bound_out(analysis::bound_famcodes1(p)), "out")
    })
}

/// Bounds for codes on `P(O + O(-delta))` with `e = deg delta`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_bound_decomposable(
    q: i64,
    n_rational: i64,
    g: i64,
    e: i64,
    a: i64,
    b: i64,
    out: *mut RcBound,
) -> RcStatus {
    guard(|| {
        let p = FamilyParams { q, n_rational, g, twist: e, a, b };
        put(out, bound_out(analysis::bound_famcodes2(p)), "out")
    })
}

/// Bounds for unisecant codes.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_bound_unisecant(
    q: i64,
    n_rational: i64,
    g: i64,
    deg_e: i64,
    s_a: i64,
    deg_l: i64,
    out: *mut RcBound,
) -> RcStatus {
    guard(|| {
        let r = analysis::bound_unisecant(q, n_rational, g, deg_e, s_a, deg_l).map_err(lib)?;
        put(out, bound_out(r), "out")
    })
}

/// Maximal limit rate of ruled-surface codes at relative distance `1 - b`.
///
/// # Safety
/// `a0` and `rate` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_optimized_rate(q: f64, a_q: f64, b: f64, a0: *mut f64, rate: *mut f64) -> RcStatus {
    guard(|| {
        let o = asymptotics::optimized_rate(q, a_q, b).map_err(lib)?;
        put(a0, o.a0, "a0")?;
        put(rate, o.numeric_rate, "rate")
    })
}

#[no_mangle]
pub extern "C" fn rc_envelope_coefficient(q: f64, a_q: f64) -> f64 {
    asymptotics::envelope_coefficient(q, a_q)
}
