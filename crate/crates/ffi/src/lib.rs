//! C ABI for the reslin workbench.
//!
//! Formulas live behind the opaque `ReslinFormula` handle. Every fallible
//! function returns a `ReslinStatus`; on anything but `RESLIN_STATUS_OK` a message
//! is available from `reslin_last_error()` on the same thread until the next
//! call. Strings handed out by the library are freed with
//! `reslin_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use reslin::extend::{check_extensibility, exact_width, ExtendError, ExtendOptions, WidthLimits};
use reslin::formula::{dlo, ordering, parse_xlcnf, php, write_xlcnf, FormulaError, LinCnf};
use reslin::games::{run_game, GameError, GameOptions, RandomProver};
use reslin::oracle::{min_split_tree, OracleError, OracleOptions};
use reslin::proofcheck::{parse_xlp, verify_tree_proof};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReslinStatus {
    Ok = 0,
    /// The checked property fails or the proof is rejected.
    Fails = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    Parse = 4,
    InvalidArgument = 5,
    BudgetExceeded = 6,
    Limit = 7,
    Internal = 8,
}

/// Opaque formula handle.
pub struct ReslinFormula {
    cnf: LinCnf,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type Result<T> = std::result::Result<T, (ReslinStatus, String)>;

fn guard(f: impl FnOnce() -> Result<ReslinStatus>) -> ReslinStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            ReslinStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str> {
    if p.is_null() {
        return Err((ReslinStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (ReslinStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn formula_arg<'a>(f: *const ReslinFormula) -> Result<&'a LinCnf> {
    f.as_ref().map(|f| &f.cnf).ok_or((ReslinStatus::NullPointer, "formula handle is null".into()))
}

fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T> {
    unsafe { p.as_mut() }.ok_or((ReslinStatus::NullPointer, format!("{what} is null")))
}

fn formula_error(e: FormulaError) -> (ReslinStatus, String) {
    match e {
        FormulaError::Parse(p) => (ReslinStatus::Parse, p.to_string()),
        other => (ReslinStatus::InvalidArgument, other.to_string()),
    }
}

fn extend_error(e: ExtendError) -> (ReslinStatus, String) {
    let status = match e {
        ExtendError::BudgetExceeded { .. } => ReslinStatus::BudgetExceeded,
        ExtendError::Limit(_) => ReslinStatus::Limit,
        ExtendError::InvalidArgument(_) => ReslinStatus::InvalidArgument,
    };
    (status, e.to_string())
}

fn label_indices(cnf: &LinCnf, label: &str) -> Result<Vec<usize>> {
    if label.is_empty() {
        return Ok(Vec::new());
    }
    let idx = cnf.indices_with_label(label);
    if idx.is_empty() {
        return Err((ReslinStatus::InvalidArgument, format!("no clause carries label {label:?}")));
    }
    Ok(idx)
}

fn hand_out(cnf: LinCnf, out: *mut *mut ReslinFormula) -> Result<ReslinStatus> {
    let out = out_arg(out, "out")?;
    *out = Box::into_raw(Box::new(ReslinFormula { cnf }));
    Ok(ReslinStatus::Ok)
}

/// Message of the last failed call on this thread, or null. Owned by the
/// library.
#[no_mangle]
pub extern "C" fn reslin_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn reslin_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn reslin_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses XLCNF text.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn reslin_formula_parse(text: *const c_char, out: *mut *mut ReslinFormula) -> ReslinStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let cnf = parse_xlcnf(text).map_err(formula_error)?;
        hand_out(cnf, out)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn reslin_formula_php(pigeons: usize, holes: usize, out: *mut *mut ReslinFormula) -> ReslinStatus {
    guard(|| hand_out(php(pigeons, holes).map_err(formula_error)?, out))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn reslin_formula_ordering(n: usize, out: *mut *mut ReslinFormula) -> ReslinStatus {
    guard(|| hand_out(ordering(n).map_err(formula_error)?, out))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn reslin_formula_dlo(n: usize, out: *mut *mut ReslinFormula) -> ReslinStatus {
    guard(|| hand_out(dlo(n).map_err(formula_error)?, out))
}

/// # Safety
/// `f` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn reslin_formula_free(f: *mut ReslinFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Variable count, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn reslin_formula_nvars(f: *const ReslinFormula) -> usize {
    f.as_ref().map_or(0, |f| f.cnf.nvars())
}

/// Clause count, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn reslin_formula_clauses(f: *const ReslinFormula) -> usize {
    f.as_ref().map_or(0, |f| f.cnf.len())
}

/// Canonical XLCNF text; free with `reslin_string_free`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn reslin_formula_to_text(f: *const ReslinFormula, out: *mut *mut c_char) -> ReslinStatus {
    guard(|| {
        let cnf = formula_arg(f)?;
        let out = out_arg(out, "out")?;
        let text = CString::new(write_xlcnf(cnf)).map_err(|e| (ReslinStatus::Internal, e.to_string()))?;
        *out = text.into_raw();
        Ok(ReslinStatus::Ok)
    })
}

/// Checks `m`-extensibility with respect to the clauses labelled `label`
/// (an empty label selects no clauses). Returns `RESLIN_STATUS_FAILS` when the
/// property fails.
///
/// # Safety
/// `f` must be a live handle and `label` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn reslin_check_extensibility(
    f: *const ReslinFormula,
    label: *const c_char,
    m: usize,
    systems_checked: *mut u64,
) -> ReslinStatus {
    guard(|| {
        let cnf = formula_arg(f)?;
        let subset = label_indices(cnf, str_arg(label, "label")?)?;
        let v = check_extensibility(cnf, &subset, m, &ExtendOptions::default()).map_err(extend_error)?;
        if let Some(out) = systems_checked.as_mut() {
            *out = v.systems_checked;
        }
        match v.counterexample {
            None => Ok(ReslinStatus::Ok),
            Some(cx) => Err((
                ReslinStatus::Fails,
                format!(
                    "system {} has no F-proper solution satisfying clause {}",
                    cx.system.canonical_rows().iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
                    cx.clause + 1
                ),
            )),
        }
    })
}

/// Verifies a tree-like proof in XLP. On rejection returns `RESLIN_STATUS_FAILS`
/// with the diagnostic naming the first invalid node.
///
/// # Safety
/// `f` must be a live handle, `xlp` a NUL-terminated string; `size` and
/// `width` may be null.
#[no_mangle]
pub unsafe extern "C" fn reslin_verify_tree_proof(
    f: *const ReslinFormula,
    xlp: *const c_char,
    size: *mut usize,
    width: *mut usize,
) -> ReslinStatus {
    guard(|| {
        let cnf = formula_arg(f)?;
        let proof = parse_xlp(str_arg(xlp, "proof")?, cnf.nvars()).map_err(|e| (ReslinStatus::Parse, e.to_string()))?;
        let rep = verify_tree_proof(&proof, cnf);
        if let Some(s) = size.as_mut() {
            *s = rep.size;
        }
        if let Some(w) = width.as_mut() {
            *w = rep.width;
        }
        match rep.error {
            None => Ok(ReslinStatus::Ok),
            Some(e) => Err((ReslinStatus::Fails, e.to_string())),
        }
    })
}

/// Exact width up to `kmax`; `RESLIN_STATUS_FAILS` when the width exceeds `kmax`.
///
/// # Safety
/// `f` must be a live handle; `width` must be writable.
#[no_mangle]
pub unsafe extern "C" fn reslin_exact_width(f: *const ReslinFormula, kmax: usize, width: *mut usize) -> ReslinStatus {
    guard(|| {
        let cnf = formula_arg(f)?;
        let out = out_arg(width, "width")?;
        let limits = WidthLimits { max_k: WidthLimits::default().max_k.max(kmax), ..WidthLimits::default() };
        match exact_width(cnf, kmax, &limits).map_err(extend_error)? {
            Some(w) => {
                *out = w;
                Ok(ReslinStatus::Ok)
            }
            None => Err((ReslinStatus::Fails, format!("width exceeds {kmax}"))),
        }
    })
}

/// Size of a minimal linear splitting tree.
///
/// # Safety
/// `f` must be a live handle; `size` must be writable.
#[no_mangle]
pub unsafe extern "C" fn reslin_min_split_tree(f: *const ReslinFormula, budget: u64, size: *mut usize) -> ReslinStatus {
    guard(|| {
        let cnf = formula_arg(f)?;
        let out = out_arg(size, "size")?;
        let opts = OracleOptions { budget, ..OracleOptions::default() };
        match min_split_tree(cnf, &opts) {
            Ok(r) => {
                *out = r.size;
                Ok(ReslinStatus::Ok)
            }
            Err(e @ OracleError::BudgetExceeded { upper_bound, .. }) => {
                *out = upper_bound;
                Err((ReslinStatus::BudgetExceeded, e.to_string()))
            }
            Err(e @ OracleError::TooManyVariables { .. }) => Err((ReslinStatus::Limit, e.to_string())),
            Err(e) => Err((ReslinStatus::InvalidArgument, e.to_string())),
        }
    })
}

/// Plays `games` games of the extensibility Delayer for the clauses labelled
/// `label` against random provers seeded `seed, seed+1, ...` and stores the
/// fewest coins earned.
///
/// # Safety
/// `f` must be a live handle, `label` a NUL-terminated string and
/// `min_coins` writable.
#[no_mangle]
pub unsafe extern "C" fn reslin_random_games(
    f: *const ReslinFormula,
    label: *const c_char,
    seed: u64,
    games: u64,
    min_coins: *mut usize,
) -> ReslinStatus {
    guard(|| {
        let cnf = formula_arg(f)?;
        let subset = label_indices(cnf, str_arg(label, "label")?)?;
        let out = out_arg(min_coins, "min_coins")?;
        if games == 0 {
            return Err((ReslinStatus::InvalidArgument, "games must be positive".into()));
        }
        let mut least = usize::MAX;
        for g in 0..games {
            let mut prover = RandomProver::new(seed.wrapping_add(g));
            let outcome = run_game(cnf, &subset, &mut prover, &GameOptions::default()).map_err(|e| match e {
                GameError::Extend(e) => extend_error(e),
                other => (ReslinStatus::Internal, other.to_string()),
            })?;
            least = least.min(outcome.coins);
        }
        *out = least;
        Ok(ReslinStatus::Ok)
    })
}
