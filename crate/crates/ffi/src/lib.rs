//! C ABI over `topodeck`.
//!
//! Graphs and decks are opaque heap handles owned by the caller and released
//! with their `*_free` function. Strings returned through `char **` out
//! parameters are owned by the caller and released with [`td_string_free`].
//! Every fallible call returns a [`TdStatus`]; on failure a description is
//! available from [`td_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use topodeck::compactify::{alexandroff, end_count, estar, freudenthal, max_nstar};
use topodeck::format::{parse_auto, to_json, to_text};
use topodeck::{certificate, collapse, deck, is_homeomorphic, remove_point, PointClass, TopoError, TopoGraph};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Input text is not a graph file.
    Parse = 3,
    /// Input parsed but is not a well-formed graph.
    Invalid = 4,
    /// The operation needs a compact graph.
    NonCompact = 5,
    /// Any other precondition failure, such as an unknown point.
    Domain = 6,
    OutOfRange = 7,
    /// A bug inside the library; the handle arguments are left untouched.
    Panic = 8,
}

/// Opaque graph handle.
pub struct TdGraph {
    graph: TopoGraph,
}

/// Opaque deck handle: sorted card certificates.
pub struct TdDeck {
    cards: Vec<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

struct Failure(TdStatus, String);

impl From<TopoError> for Failure {
    fn from(e: TopoError) -> Self {
        let status = match e {
            TopoError::Invalid(_) => TdStatus::Invalid,
            TopoError::NonCompact => TdStatus::NonCompact,
            _ => TdStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TdStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TdStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(TdStatus::NullPointer, "null pointer argument".into())
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(TdStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

unsafe fn graph_arg<'a>(g: *const TdGraph) -> Result<&'a TopoGraph, Failure> {
    g.as_ref().map(|g| &g.graph).ok_or_else(null)
}

unsafe fn point_arg(p: *const c_char) -> Result<PointClass, Failure> {
    Ok(str_arg(p)?.parse::<PointClass>()?)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let s = CString::new(s).map_err(|_| Failure(TdStatus::Domain, "output contains a NUL byte".into()))?;
    put(out, s.into_raw())
}

unsafe fn put_graph(out: *mut *mut TdGraph, graph: TopoGraph) -> Result<(), Failure> {
    // Checked before allocating so a null `out` does not leak the handle.
    if out.is_null() {
        return Err(null());
    }
    put(out, Box::into_raw(Box::new(TdGraph { graph })))
}

/// Parses a graph in the text or JSON format and validates it.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_graph_parse(text: *const c_char, out: *mut *mut TdGraph) -> TdStatus {
    guard(|| {
        let text = str_arg(text)?;
        let g = parse_auto(text).map_err(|e| Failure(TdStatus::Parse, e.to_string()))?;
        g.validate().map_err(|v| Failure(TdStatus::Invalid, v.to_string()))?;
        put_graph(out, g)
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn td_graph_free(g: *mut TdGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn td_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn td_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_graph_to_text(g: *const TdGraph, out: *mut *mut c_char) -> TdStatus {
    guard(|| put_string(out, to_text(graph_arg(g)?)))
}

/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_graph_to_json(g: *const TdGraph, out: *mut *mut c_char) -> TdStatus {
    guard(|| put_string(out, to_json(graph_arg(g)?)))
}

/// Homeomorphism certificate.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_graph_certificate(g: *const TdGraph, out: *mut *mut c_char) -> TdStatus {
    guard(|| put_string(out, certificate(graph_arg(g)?).into_string()))
}

/// # Safety
/// `a` and `b` must be live graph handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_graph_is_homeomorphic(a: *const TdGraph, b: *const TdGraph, out: *mut bool) -> TdStatus {
    guard(|| put(out, is_homeomorphic(graph_arg(a)?, graph_arg(b)?)))
}

/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_graph_is_compact(g: *const TdGraph, out: *mut bool) -> TdStatus {
    guard(|| put(out, graph_arg(g)?.is_compact()))
}

/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_graph_end_count(g: *const TdGraph, out: *mut usize) -> TdStatus {
    guard(|| put(out, end_count(graph_arg(g)?)))
}

/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_graph_max_nstar(g: *const TdGraph, out: *mut usize) -> TdStatus {
    guard(|| put(out, max_nstar(graph_arg(g)?)))
}

/// `E` at a point given as `v:<id>`, `e:<id>` or `c:<k>`.
///
/// # Safety
/// `g` must be a live graph handle, `point` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn td_graph_estar(g: *const TdGraph, point: *const c_char, out: *mut u32) -> TdStatus {
    guard(|| {
        let g = graph_arg(g)?;
        let value = estar(g, &point_arg(point)?)?;
        let n = value
            .finite()
            .ok_or_else(|| Failure(TdStatus::Domain, "E is infinite at this point".into()))?;
        put(out, n)
    })
}

/// The graph with one point removed.
///
/// # Safety
/// `g` must be a live graph handle, `point` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn td_graph_remove_point(
    g: *const TdGraph,
    point: *const c_char,
    out: *mut *mut TdGraph,
) -> TdStatus {
    guard(|| {
        let card = remove_point(graph_arg(g)?, &point_arg(point)?)?;
        put_graph(out, card)
    })
}

/// The quotient identifying two points.
///
/// # Safety
/// `g` must be a live graph handle, `p` and `q` NUL-terminated strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn td_graph_collapse(
    g: *const TdGraph,
    p: *const c_char,
    q: *const c_char,
    out: *mut *mut TdGraph,
) -> TdStatus {
    guard(|| {
        let (quotient, _) = collapse(graph_arg(g)?, &point_arg(p)?, &point_arg(q)?)?;
        put_graph(out, quotient)
    })
}

/// One point per end.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_graph_freudenthal(g: *const TdGraph, out: *mut *mut TdGraph) -> TdStatus {
    guard(|| put_graph(out, freudenthal(graph_arg(g)?)?))
}

/// One point for all ends.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_graph_alexandroff(g: *const TdGraph, out: *mut *mut TdGraph) -> TdStatus {
    guard(|| put_graph(out, alexandroff(graph_arg(g)?)?.0))
}

/// Deck of a compact graph with at least three points.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn td_deck_compute(g: *const TdGraph, out: *mut *mut TdDeck) -> TdStatus {
    guard(|| {
        let d = deck(graph_arg(g)?)?;
        let cards = d
            .cards
            .into_iter()
            .map(|c| CString::new(c.into_string()).expect("certificates have no NUL"))
            .collect();
        if out.is_null() {
            return Err(null());
        }
        put(out, Box::into_raw(Box::new(TdDeck { cards })))
    })
}

/// Number of cards; 0 for null.
///
/// # Safety
/// `d` must be null or a live deck handle.
#[no_mangle]
pub unsafe extern "C" fn td_deck_len(d: *const TdDeck) -> usize {
    d.as_ref().map_or(0, |d| d.cards.len())
}

/// Certificate of card `index`, borrowed from the deck.
///
/// # Safety
/// `d` must be a live deck handle; `out` must be writable. The string is
/// valid until the deck is freed.
#[no_mangle]
pub unsafe extern "C" fn td_deck_card(d: *const TdDeck, index: usize, out: *mut *const c_char) -> TdStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(null)?;
        let card = d
            .cards
            .get(index)
            .ok_or_else(|| Failure(TdStatus::OutOfRange, format!("card {index} of {}", d.cards.len())))?;
        put(out, card.as_ptr())
    })
}

/// Releases a deck. Null is ignored.
///
/// # Safety
/// `d` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn td_deck_free(d: *mut TdDeck) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn td_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version"),
    };
    VERSION.as_ptr()
}
