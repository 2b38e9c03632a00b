//! C interface. Objects cross the boundary as opaque handles that the caller
//! releases with the matching `*_free` function; every fallible call returns
//! a [`K2lStatus`] and leaves a message for [`k2l_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use k2lambda::cli::{self, RunConfig};
use k2lambda::fpab::FpAbGroup;
use k2lambda::matrix::{Int, IntMatrix};
use k2lambda::msk2::{ms_presentation, MsOptions};
use k2lambda::zrings::{IdealData, Params, PresentedRing};
use k2lambda::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K2lStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BufferTooSmall = 3,
    Overflow = 4,
    NotWellDefined = 5,
    DimensionMismatch = 6,
    InvalidParams = 7,
    TooLarge = 8,
    NotNilpotent = 9,
    NotSplit = 10,
    Config = 11,
    Parse = 12,
    Failed = 13,
}

impl From<&Error> for K2lStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NotWellDefined { .. } => K2lStatus::NotWellDefined,
            Error::DimensionMismatch(_) => K2lStatus::DimensionMismatch,
            Error::InvalidParams(_) | Error::WrongPrime(_) | Error::OutOfRange(_) => K2lStatus::InvalidParams,
            Error::TooLarge { .. } => K2lStatus::TooLarge,
            Error::NotNilpotent => K2lStatus::NotNilpotent,
            Error::NotSplit(_) => K2lStatus::NotSplit,
            Error::Config(_) => K2lStatus::Config,
            Error::Parse(_) => K2lStatus::Parse,
            _ => K2lStatus::Failed,
        }
    }
}

/// A finitely presented abelian group.
pub struct K2lGroup(FpAbGroup);

/// A validated run configuration.
pub struct K2lConfig(RunConfig);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: K2lStatus, msg: impl Into<String>) -> K2lStatus {
    set_error(msg);
    status
}

fn from_error(e: &Error) -> K2lStatus {
    fail(e.into(), e.to_string())
}

fn ok() -> K2lStatus {
    set_error("");
    K2lStatus::Ok
}

/// Message for the last failing call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn k2l_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `data` must point to `rows * cols` readable `i64` values (row-major), or
/// may be null when `rows * cols == 0`.
unsafe fn read_matrix(rows: usize, cols: usize, data: *const i64) -> Result<IntMatrix, K2lStatus> {
    let len = rows.checked_mul(cols).ok_or_else(|| fail(K2lStatus::Overflow, "matrix size overflows"))?;
    if len == 0 {
        return Ok(IntMatrix::zeros(rows, cols));
    }
    if data.is_null() {
        return Err(fail(K2lStatus::NullPointer, "matrix data is null"));
    }
    let flat = std::slice::from_raw_parts(data, len);
    Ok(IntMatrix::from_rows(cols, flat.chunks(cols).map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect()))
}

/// # Safety
/// `out` must be valid for `cap` writes (or null with `cap == 0`), `len` must be writable.
unsafe fn write_ints(values: &[Int], out: *mut i64, cap: usize, len: *mut usize) -> K2lStatus {
    if len.is_null() {
        return fail(K2lStatus::NullPointer, "length pointer is null");
    }
    *len = values.len();
    if values.len() > cap {
        return fail(K2lStatus::BufferTooSmall, format!("need room for {} values", values.len()));
    }
    if !values.is_empty() && out.is_null() {
        return fail(K2lStatus::NullPointer, "output buffer is null");
    }
    for (i, v) in values.iter().enumerate() {
        match i64::try_from(v) {
            Ok(x) => *out.add(i) = x,
            Err(_) => return fail(K2lStatus::Overflow, format!("{v} does not fit in 64 bits")),
        }
    }
    ok()
}

fn into_c_string(s: String, out: *mut *mut c_char) -> K2lStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: callers check `out` for null before building the string.
            unsafe { *out = c.into_raw() };
            ok()
        }
        Err(_) => fail(K2lStatus::Failed, "output contains a NUL byte"),
    }
}

/// The group with `ngens` generators and the `nrels` relation rows in `relations`
/// (row-major, `nrels * ngens` entries).
///
/// # Safety
/// `relations` must hold `nrels * ngens` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k2l_group_new(ngens: usize, relations: *const i64, nrels: usize, out: *mut *mut K2lGroup) -> K2lStatus {
    if out.is_null() {
        return fail(K2lStatus::NullPointer, "out is null");
    }
    let m = match read_matrix(nrels, ngens, relations) {
        Ok(m) => m,
        Err(s) => return s,
    };
    *out = Box::into_raw(Box::new(K2lGroup(FpAbGroup::from_matrix(ngens, &m))));
    ok()
}

/// # Safety
/// `g` must come from this library and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn k2l_group_free(g: *mut K2lGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Writes the torsion invariant factors `d_1 | d_2 | ...` into `torsion`
/// (capacity `cap`), their count into `len` and the free rank into `free_rank`.
/// On `BufferTooSmall`, `len` holds the required capacity.
///
/// # Safety
/// `g` must be a live handle; the output pointers must be valid as described.
#[no_mangle]
pub unsafe extern "C" fn k2l_group_invariant_factors(
    g: *const K2lGroup,
    torsion: *mut i64,
    cap: usize,
    len: *mut usize,
    free_rank: *mut usize,
) -> K2lStatus {
    if g.is_null() || free_rank.is_null() {
        return fail(K2lStatus::NullPointer, "group or free_rank is null");
    }
    let f = (*g).0.invariant_factors();
    *free_rank = f.free;
    write_ints(&f.torsion, torsion, cap, len)
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k2l_group_is_isomorphic(a: *const K2lGroup, b: *const K2lGroup, out: *mut bool) -> K2lStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return fail(K2lStatus::NullPointer, "null argument");
    }
    *out = (*a).0.is_isomorphic(&(*b).0);
    ok()
}

/// Nonzero Smith diagonal entries of a `rows x cols` row-major matrix.
///
/// # Safety
/// `data` must hold `rows * cols` values; `factors` has capacity `cap`; `len` is writable.
#[no_mangle]
pub unsafe extern "C" fn k2l_smith_factors(
    rows: usize,
    cols: usize,
    data: *const i64,
    factors: *mut i64,
    cap: usize,
    len: *mut usize,
) -> K2lStatus {
    let m = match read_matrix(rows, cols, data) {
        Ok(m) => m,
        Err(s) => return s,
    };
    let d: Vec<Int> = match cli::snf_result(&m) {
        Some(r) => r.invariant_factors.iter().map(|s| s.parse().expect("decimal")).collect(),
        None => Vec::new(),
    };
    write_ints(&d, factors, cap, len)
}

/// Checks a `(p, e, m)` triple (prime `p`, `m >= e`, `p^e > 2`).
#[no_mangle]
pub extern "C" fn k2l_params_check(p: u32, e: u32, m: u32) -> K2lStatus {
    match Params::new(p, e, m) {
        Ok(_) => ok(),
        Err(err) => from_error(&err),
    }
}

/// Relative `K_2` of `(Z/k)[x]/(x^n)` at the ideal `(x)`, from its generator
/// and relation presentation. Rings above `max_size` elements are refused.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k2l_ms_k2_truncated(n: usize, k: i64, max_size: u64, out: *mut *mut K2lGroup) -> K2lStatus {
    if out.is_null() {
        return fail(K2lStatus::NullPointer, "out is null");
    }
    if n < 1 || k < 2 {
        return fail(K2lStatus::InvalidArgument, "need n >= 1 and k >= 2");
    }
    let w = PresentedRing::truncated_poly_mod(n, k);
    let j = if n == 1 { IdealData::zero(&w) } else { IdealData::generated_by(&w, &[w.basis_elem(1)]) };
    let opts = MsOptions { max_size, ..Default::default() };
    match ms_presentation(&w, &j, &opts).map(|p| p.group) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(K2lGroup(g)));
            ok()
        }
        Err(e) => from_error(&e),
    }
}

/// Parses a TOML run configuration; a null `toml` gives the default.
///
/// # Safety
/// `toml` must be null or a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k2l_config_new(toml: *const c_char, out: *mut *mut K2lConfig) -> K2lStatus {
    if out.is_null() {
        return fail(K2lStatus::NullPointer, "out is null");
    }
    let cfg = if toml.is_null() {
        RunConfig::default()
    } else {
        let Ok(src) = CStr::from_ptr(toml).to_str() else {
            return fail(K2lStatus::Parse, "config is not UTF-8");
        };
        match RunConfig::from_toml(src) {
            Ok(c) => c,
            Err(e) => return from_error(&e),
        }
    };
    *out = Box::into_raw(Box::new(K2lConfig(cfg)));
    ok()
}

/// # Safety
/// `c` must come from [`k2l_config_new`] and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn k2l_config_free(c: *mut K2lConfig) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Runs the configured suites. `failed` receives the number of failed checks and
/// `json` (if not null) the report, to be released with [`k2l_string_free`].
///
/// # Safety
/// `c` must be a live handle; `failed` must be writable; `json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn k2l_verify(c: *const K2lConfig, failed: *mut usize, json: *mut *mut c_char) -> K2lStatus {
    if c.is_null() || failed.is_null() {
        return fail(K2lStatus::NullPointer, "config or failed is null");
    }
    let rep = cli::verify(&(*c).0);
    *failed = rep.failed;
    if json.is_null() {
        return ok();
    }
    into_c_string(cli::to_json(&rep), json)
}

/// The JSON report for every (params, ring) case of the configuration.
///
/// # Safety
/// `c` must be a live handle; `json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k2l_report_json(c: *const K2lConfig, json: *mut *mut c_char) -> K2lStatus {
    if c.is_null() || json.is_null() {
        return fail(K2lStatus::NullPointer, "null argument");
    }
    into_c_string(cli::to_json(&cli::build_report(&(*c).0)), json)
}

/// # Safety
/// `s` must be null or a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn k2l_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
