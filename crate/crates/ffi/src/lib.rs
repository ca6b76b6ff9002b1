//! C ABI over `shannon-lattice`.
//!
//! Objects are opaque handles returned through out-parameters and released
//! with the matching `*_free`. Every fallible call
//! returns an [`SlStatus`]; on failure a message is kept per thread and can
//! be fetched with [`sl_last_error`]. Strings returned through `char **`
//! out-parameters are owned by the caller and must be released with
//! [`sl_string_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use shannon_lattice::construction::{build_ab, derive, verify_family, ConstructionError, ConstructionParams, DerivedTriple};
use shannon_lattice::exact::{is_p0, parse_matrix, scalar_to_string, ExactError, ExactMatrix, Scalar};
use shannon_lattice::graphs::{alpha_grp_exhaustive, build_quotient, lift_bound, FractionGraphPower, GraphError};
use shannon_lattice::lattice::{certify, BoundCertificate, LatticeError};
use shannon_lattice::mis::{solve_vertex_transitive, Budget};
use shannon_lattice::Caps;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    CapExceeded = 4,
    CheckFailed = 5,
    Internal = 6,
}

/// An exact rational square matrix.
pub struct SlMatrix {
    inner: ExactMatrix,
}

/// A family member `(n, k, b, r, s)` with its matrices.
pub struct SlFamily {
    params: ConstructionParams,
    triple: DerivedTriple,
    a: ExactMatrix,
    b: ExactMatrix,
}

/// A lattice bound certificate.
pub struct SlCertificate {
    inner: BoundCertificate,
}

/// Outcome of a quotient computation.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SlQuotientBound {
    pub subgroup_order: u64,
    pub cosets: u64,
    pub quotient_alpha: u64,
    pub bound: u64,
    pub optimal: bool,
    pub verified: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SlStatus, String);

impl From<ExactError> for Failure {
    fn from(e: ExactError) -> Self {
        let code = match e {
            ExactError::CapExceeded { .. } => SlStatus::CapExceeded,
            ExactError::Parse { .. } => SlStatus::ParseError,
            _ => SlStatus::InvalidArgument,
        };
        Failure(code, e.to_string())
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Exact(inner) => inner.into(),
            ConstructionError::Identity(_) => Failure(SlStatus::CheckFailed, e.to_string()),
            _ => Failure(SlStatus::InvalidArgument, e.to_string()),
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        let code = match e {
            GraphError::CapExceeded { .. } | GraphError::Lattice(LatticeError::CapExceeded { .. }) => {
                SlStatus::CapExceeded
            }
            GraphError::NotIndependent | GraphError::LiftNotIndependent => SlStatus::CheckFailed,
            _ => SlStatus::InvalidArgument,
        };
        Failure(code, e.to_string())
    }
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// Runs `f`, converting failures and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SlStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SlStatus::Ok,
        Ok(Err(Failure(code, message))) => {
            set_error(&message);
            code
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal error: {message}"));
            SlStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(SlStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SlStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn parse_integer(s: &str, what: &str) -> Result<BigInt, Failure> {
    s.trim()
        .parse()
        .map_err(|_| Failure(SlStatus::ParseError, format!("{what} {s:?} is not an integer")))
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn sl_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds an `order × order` integer matrix from row-major entries.
///
/// # Safety
/// `entries` must point to `order * order` readable values and `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_matrix_from_i64(order: usize, entries: *const i64, out: *mut *mut SlMatrix) -> SlStatus {
    guard(|| {
        if entries.is_null() {
            return Err(null("entries"));
        }
        let count = order
            .checked_mul(order)
            .ok_or_else(|| Failure(SlStatus::InvalidArgument, "order too large".into()))?;
        let values: Vec<Scalar> = std::slice::from_raw_parts(entries, count)
            .iter()
            .map(|&v| Scalar::from_integer(BigInt::from(v)))
            .collect();
        let m = ExactMatrix::new(order, values)?;
        write_out(out, Box::into_raw(Box::new(SlMatrix { inner: m })), "out")
    })
}

/// Parses the plain-text matrix format (order line, then rows).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_matrix_parse(text: *const c_char, out: *mut *mut SlMatrix) -> SlStatus {
    guard(|| {
        let m = parse_matrix(c_str(text, "text")?)?;
        write_out(out, Box::into_raw(Box::new(SlMatrix { inner: m })), "out")
    })
}

/// Order of the matrix, or 0 for NULL.
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sl_matrix_order(m: *const SlMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.order())
}

/// Exact determinant rendered as `"n"` or `"n/d"`.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_matrix_det(m: *const SlMatrix, out: *mut *mut c_char) -> SlStatus {
    guard(|| {
        let m = deref(m, "matrix")?;
        write_out(out, into_c_string(scalar_to_string(&m.inner.det())), "out")
    })
}

/// Whether every principal minor is nonnegative. Orders above `cap` fail
/// with `CapExceeded`.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_matrix_is_p0(m: *const SlMatrix, cap: usize, out: *mut bool) -> SlStatus {
    guard(|| {
        let m = deref(m, "matrix")?;
        let verdict = is_p0(&m.inner, cap)?;
        write_out(out, verdict.is_p0, "out")
    })
}

/// # Safety
/// `m` must be NULL or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sl_matrix_free(m: *mut SlMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Derives `(a, p, q)` and builds `A`, `B` for `(n, k, b, r, s)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_family_build(n: u32, k: u64, b: u64, r: u64, s: u64, out: *mut *mut SlFamily) -> SlStatus {
    guard(|| {
        let params = ConstructionParams::new(n, k, b, r, s)?;
        let triple = derive(&params)?;
        let (a, b) = build_ab(&params)?;
        let fam = SlFamily { params, triple, a, b };
        write_out(out, Box::into_raw(Box::new(fam)), "out")
    })
}

/// Decimal strings for `p` and `q`.
///
/// # Safety
/// `fam` must be a live handle; `p_out` and `q_out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_family_pq(fam: *const SlFamily, p_out: *mut *mut c_char, q_out: *mut *mut c_char) -> SlStatus {
    guard(|| {
        let fam = deref(fam, "family")?;
        if p_out.is_null() || q_out.is_null() {
            return Err(null("out"));
        }
        p_out.write(into_c_string(fam.triple.p.to_string()));
        q_out.write(into_c_string(fam.triple.q.to_string()));
        Ok(())
    })
}

/// New matrix handle holding `A` (`which = 0`) or `B` (`which = 1`).
///
/// # Safety
/// `fam` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_family_matrix(fam: *const SlFamily, which: u32, out: *mut *mut SlMatrix) -> SlStatus {
    guard(|| {
        let fam = deref(fam, "family")?;
        let m = match which {
            0 => fam.a.clone(),
            1 => fam.b.clone(),
            _ => return Err(Failure(SlStatus::InvalidArgument, format!("matrix selector {which}"))),
        };
        write_out(out, Box::into_raw(Box::new(SlMatrix { inner: m })), "out")
    })
}

/// Runs the full family verification with default caps and writes the
/// JSON report. Returns `CheckFailed` (with the report still written) when
/// the verdict is INVALID.
///
/// # Safety
/// `fam` must be a live handle and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_family_verify_json(fam: *const SlFamily, out_json: *mut *mut c_char) -> SlStatus {
    guard(|| {
        let fam = deref(fam, "family")?;
        let report = verify_family(&fam.params, &Caps::default())?;
        write_out(out_json, into_c_string(report.to_json().to_string()), "out_json")?;
        if report.is_valid() {
            Ok(())
        } else {
            Err(Failure(SlStatus::CheckFailed, format!("{} is not valid", fam.params)))
        }
    })
}

/// # Safety
/// `fam` must be NULL or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sl_family_free(fam: *mut SlFamily) {
    if !fam.is_null() {
        drop(Box::from_raw(fam));
    }
}

/// Certifies `A`, `B` against decimal `p` and `q`. A certificate is
/// produced even when it is invalid; inspect it with
/// [`sl_certificate_is_valid`].
///
/// # Safety
/// `a`, `b` must be live handles, `p`, `q` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_certify(
    a: *const SlMatrix,
    b: *const SlMatrix,
    p: *const c_char,
    q: *const c_char,
    out: *mut *mut SlCertificate,
) -> SlStatus {
    guard(|| {
        let a = deref(a, "A")?;
        let b = deref(b, "B")?;
        let p = parse_integer(c_str(p, "p")?, "p")?;
        let q = parse_integer(c_str(q, "q")?, "q")?;
        let cert = certify(&a.inner, &b.inner, &p, &q, &Caps::default());
        write_out(out, Box::into_raw(Box::new(SlCertificate { inner: cert })), "out")
    })
}

/// # Safety
/// `cert` must be a live handle and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_certificate_json(cert: *const SlCertificate, out_json: *mut *mut c_char) -> SlStatus {
    guard(|| {
        let cert = deref(cert, "certificate")?;
        write_out(out_json, into_c_string(cert.inner.to_json().to_string()), "out_json")
    })
}

/// False for NULL.
///
/// # Safety
/// `cert` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sl_certificate_is_valid(cert: *const SlCertificate) -> bool {
    cert.as_ref().is_some_and(|c| c.inner.is_valid())
}

/// # Safety
/// `cert` must be NULL or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sl_certificate_free(cert: *mut SlCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Lower bound on `α(E_{p/q}^⊠n)` from the quotient by the subgroup
/// generated by `generator_count` vectors stored row-major in `generators`.
/// `max_nodes = 0` means the default node budget.
///
/// # Safety
/// `generators` must point to `generator_count * n` values and `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_quotient_bound(
    p: u64,
    q: u64,
    n: usize,
    generators: *const u64,
    generator_count: usize,
    max_nodes: u64,
    out: *mut SlQuotientBound,
) -> SlStatus {
    guard(|| {
        if generators.is_null() && generator_count > 0 {
            return Err(null("generators"));
        }
        let base = FractionGraphPower::new(p, q, n)?;
        let flat: &[u64] = if generator_count == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(generators, generator_count * n)
        };
        let gens: Vec<Vec<u64>> = flat.chunks(n.max(1)).map(<[u64]>::to_vec).collect();
        let caps = Caps::default();
        let quotient = build_quotient(base, &gens, caps.materialization)?;
        let mut budget = Budget::default();
        if max_nodes > 0 {
            budget.max_nodes = max_nodes;
        }
        let mis = solve_vertex_transitive(&quotient.graph, &budget)?;
        let lifted = lift_bound(&quotient, &mis.witness)?;
        let result = SlQuotientBound {
            subgroup_order: lifted.subgroup_order as u64,
            cosets: quotient.coset_count() as u64,
            quotient_alpha: lifted.quotient_alpha as u64,
            bound: lifted.bound as u64,
            optimal: mis.optimal,
            verified: lifted.verified,
        };
        write_out(out, result, "out")
    })
}

/// Largest independent subgroup of `E_{p/q}^⊠n` generated by at most two
/// elements.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_alpha_grp(p: u64, q: u64, n: usize, out: *mut u64) -> SlStatus {
    guard(|| {
        let value = alpha_grp_exhaustive(p, q, n, Caps::default().exhaustive)?;
        write_out(out, value, "out")
    })
}
