//! C ABI for the nashimpl toolkit.
//!
//! Conventions, mirrored in `include/nashimpl.h`:
//!
//! - Handles (`NiProfile`, `NiAssignment`, `NiGameForm`) are opaque; create
//!   them through the constructors here and release them with the matching
//!   `*_free`. Passing a handle to a different `*_free` is undefined
//!   behaviour, passing NULL is a no-op.
//! - Every fallible call returns an [`NiStatus`]; on anything but `Ok` the
//!   out-parameters are untouched and [`ni_last_error_message`] carries a
//!   human-readable description (thread-local, valid until the next call on
//!   the same thread).
//! - Outcome sets are written into caller buffers as ascending 1-based
//!   indices; when the buffer is too small the call reports
//!   `BufferTooSmall` and stores the required length in `written`.
//! - Players are 0-based indices, outcomes 1-based, as in the Rust API.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use nashimpl::impossibility::contradiction_witness;
use nashimpl::prefs::{format_profile, parse_profile, Profile};
use nashimpl::rules::{liberal_rule, PairAssignment};
use nashimpl::verify::{verify_profiles, ProfileSource, VerifyOptions};
use nashimpl::{
    equilibrium_outcomes, Error, GameForm, LiberalGameForm, MatrixGameForm, OutcomeSet,
};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    GuardLimit = 5,
    BufferTooSmall = 6,
    InternalPanic = 7,
}

/// Opaque preference profile handle.
pub struct NiProfile(Profile);

/// Opaque decisive-pair assignment handle.
pub struct NiAssignment(PairAssignment);

/// Opaque game-form handle (naming mechanism or matrix).
pub struct NiGameForm(GameForm);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<Vec<u8>>) {
    let text = CString::new(message).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn fail(status: NiStatus, message: String) -> NiStatus {
    set_error(message);
    status
}

fn from_core(err: Error) -> NiStatus {
    let status = match err {
        Error::Parse { .. } => NiStatus::ParseError,
        Error::GuardLimit { .. } => NiStatus::GuardLimit,
        _ => NiStatus::InvalidArgument,
    };
    fail(status, err.to_string())
}

/// Runs a body that may panic (the library asserts on contract violations)
/// and converts panics into `InternalPanic`.
fn guarded(body: impl FnOnce() -> NiStatus) -> NiStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(NiStatus::InternalPanic, "internal panic".into()),
    }
}

unsafe fn utf8_in<'a>(text: *const c_char) -> Result<&'a str, NiStatus> {
    if text.is_null() {
        return Err(fail(NiStatus::NullPointer, "NULL string argument".into()));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| fail(NiStatus::InvalidUtf8, e.to_string()))
}

unsafe fn write_outcomes(
    set: &OutcomeSet,
    buffer: *mut u32,
    capacity: usize,
    written: *mut usize,
) -> NiStatus {
    if written.is_null() {
        return fail(NiStatus::NullPointer, "NULL `written` out-parameter".into());
    }
    *written = set.len();
    if set.len() > capacity {
        return fail(
            NiStatus::BufferTooSmall,
            format!(
                "need room for {} outcomes, capacity is {capacity}",
                set.len()
            ),
        );
    }
    if buffer.is_null() && !set.is_empty() {
        return fail(NiStatus::NullPointer, "NULL outcome buffer".into());
    }
    for (i, outcome) in set.iter().enumerate() {
        *buffer.add(i) = outcome.get();
    }
    NiStatus::Ok
}

/// Version string of the underlying library; static, do not free.
#[no_mangle]
pub extern "C" fn ni_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

/// Message describing the most recent failure on this thread. Valid until
/// the next library call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn ni_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Frees a string allocated by this library.
///
/// # Safety
/// `text` must have been returned by a `ni_*` call that documents
/// `ni_string_free` as its deallocator, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ni_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Parses the profile text format into a new handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ni_profile_parse(
    text: *const c_char,
    out: *mut *mut NiProfile,
) -> NiStatus {
    guarded(|| {
        if out.is_null() {
            return fail(NiStatus::NullPointer, "NULL `out` parameter".into());
        }
        let text = match utf8_in(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match parse_profile(text) {
            Ok(profile) => {
                *out = Box::into_raw(Box::new(NiProfile(profile)));
                NiStatus::Ok
            }
            Err(err) => from_core(err),
        }
    })
}

/// # Safety
/// `profile` must come from `ni_profile_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ni_profile_free(profile: *mut NiProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// # Safety
/// `profile` must be a live handle (NULL yields 0).
#[no_mangle]
pub unsafe extern "C" fn ni_profile_players(profile: *const NiProfile) -> u32 {
    profile.as_ref().map(|p| p.0.players() as u32).unwrap_or(0)
}

/// # Safety
/// `profile` must be a live handle (NULL yields 0).
#[no_mangle]
pub unsafe extern "C" fn ni_profile_outcomes(profile: *const NiProfile) -> u32 {
    profile.as_ref().map(|p| p.0.outcomes()).unwrap_or(0)
}

/// Renders the canonical text form; free the result with `ni_string_free`.
///
/// # Safety
/// `profile` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ni_profile_format(
    profile: *const NiProfile,
    out: *mut *mut c_char,
) -> NiStatus {
    guarded(|| {
        let (Some(profile), false) = (profile.as_ref(), out.is_null()) else {
            return fail(NiStatus::NullPointer, "NULL parameter".into());
        };
        let text = CString::new(format_profile(&profile.0)).expect("no interior NUL");
        *out = text.into_raw();
        NiStatus::Ok
    })
}

/// Builds the canonical assignment {1,2} {3,4} ... over `outcomes`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ni_assignment_canonical(
    players: u32,
    outcomes: u32,
    out: *mut *mut NiAssignment,
) -> NiStatus {
    guarded(|| {
        if out.is_null() {
            return fail(NiStatus::NullPointer, "NULL `out` parameter".into());
        }
        match PairAssignment::canonical(players, outcomes) {
            Ok(assign) => {
                *out = Box::into_raw(Box::new(NiAssignment(assign)));
                NiStatus::Ok
            }
            Err(err) => from_core(err),
        }
    })
}

/// Parses the pair syntax `"1,2;3,4;5,6"`.
///
/// # Safety
/// `pairs` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ni_assignment_parse(
    pairs: *const c_char,
    outcomes: u32,
    out: *mut *mut NiAssignment,
) -> NiStatus {
    guarded(|| {
        if out.is_null() {
            return fail(NiStatus::NullPointer, "NULL `out` parameter".into());
        }
        let text = match utf8_in(pairs) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match PairAssignment::parse(text, outcomes) {
            Ok(assign) => {
                *out = Box::into_raw(Box::new(NiAssignment(assign)));
                NiStatus::Ok
            }
            Err(err) => from_core(err),
        }
    })
}

/// # Safety
/// `assignment` must come from an assignment constructor.
#[no_mangle]
pub unsafe extern "C" fn ni_assignment_free(assignment: *mut NiAssignment) {
    if !assignment.is_null() {
        drop(Box::from_raw(assignment));
    }
}

/// # Safety
/// `assignment` must be a live handle (NULL yields 0).
#[no_mangle]
pub unsafe extern "C" fn ni_assignment_players(assignment: *const NiAssignment) -> u32 {
    assignment
        .as_ref()
        .map(|a| a.0.players() as u32)
        .unwrap_or(0)
}

/// # Safety
/// `assignment` must be a live handle (NULL yields 0).
#[no_mangle]
pub unsafe extern "C" fn ni_assignment_outcomes(assignment: *const NiAssignment) -> u32 {
    assignment.as_ref().map(|a| a.0.outcomes()).unwrap_or(0)
}

/// # Safety
/// `assignment` must be a live handle (NULL yields false).
#[no_mangle]
pub unsafe extern "C" fn ni_assignment_is_disjoint(assignment: *const NiAssignment) -> bool {
    assignment.as_ref().is_some_and(|a| a.0.is_disjoint())
}

/// Evaluates the liberal rule; outcomes are written ascending.
///
/// # Safety
/// Handles must be live; `buffer` must hold `capacity` u32 slots; `written`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn ni_liberal_rule(
    assignment: *const NiAssignment,
    profile: *const NiProfile,
    buffer: *mut u32,
    capacity: usize,
    written: *mut usize,
) -> NiStatus {
    guarded(|| {
        let (Some(assignment), Some(profile)) = (assignment.as_ref(), profile.as_ref()) else {
            return fail(NiStatus::NullPointer, "NULL handle".into());
        };
        match liberal_rule(&assignment.0, &profile.0) {
            Ok(set) => write_outcomes(&set, buffer, capacity, written),
            Err(err) => from_core(err),
        }
    })
}

/// Builds the naming mechanism for a disjoint assignment of 3+ pairs.
///
/// # Safety
/// `assignment` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ni_game_form_liberal(
    assignment: *const NiAssignment,
    out: *mut *mut NiGameForm,
) -> NiStatus {
    guarded(|| {
        let (Some(assignment), false) = (assignment.as_ref(), out.is_null()) else {
            return fail(NiStatus::NullPointer, "NULL parameter".into());
        };
        match LiberalGameForm::new(assignment.0.clone()) {
            Ok(gf) => {
                *out = Box::into_raw(Box::new(NiGameForm(gf.into())));
                NiStatus::Ok
            }
            Err(err) => from_core(err),
        }
    })
}

/// Parses the matrix game-form text format.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ni_game_form_matrix_parse(
    text: *const c_char,
    out: *mut *mut NiGameForm,
) -> NiStatus {
    guarded(|| {
        if out.is_null() {
            return fail(NiStatus::NullPointer, "NULL `out` parameter".into());
        }
        let text = match utf8_in(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match MatrixGameForm::parse(text) {
            Ok(gf) => {
                *out = Box::into_raw(Box::new(NiGameForm(gf.into())));
                NiStatus::Ok
            }
            Err(err) => from_core(err),
        }
    })
}

/// # Safety
/// `game_form` must come from a game-form constructor.
#[no_mangle]
pub unsafe extern "C" fn ni_game_form_free(game_form: *mut NiGameForm) {
    if !game_form.is_null() {
        drop(Box::from_raw(game_form));
    }
}

/// # Safety
/// `game_form` must be a live handle (NULL yields 0).
#[no_mangle]
pub unsafe extern "C" fn ni_game_form_players(game_form: *const NiGameForm) -> u32 {
    game_form
        .as_ref()
        .map(|g| g.0.players() as u32)
        .unwrap_or(0)
}

/// Pure Nash equilibrium outcomes of `(game form, profile)`, ascending.
/// `guard_limit` of 0 selects the library default.
///
/// # Safety
/// Handles must be live; `buffer`/`written` as in `ni_liberal_rule`.
#[no_mangle]
pub unsafe extern "C" fn ni_equilibrium_outcomes(
    game_form: *const NiGameForm,
    profile: *const NiProfile,
    guard_limit: u64,
    buffer: *mut u32,
    capacity: usize,
    written: *mut usize,
) -> NiStatus {
    guarded(|| {
        let (Some(game_form), Some(profile)) = (game_form.as_ref(), profile.as_ref()) else {
            return fail(NiStatus::NullPointer, "NULL handle".into());
        };
        let guard = if guard_limit == 0 {
            nashimpl::nash::DEFAULT_GUARD_LIMIT
        } else {
            guard_limit
        };
        match equilibrium_outcomes(&game_form.0, &profile.0, guard) {
            Ok(set) => write_outcomes(&set, buffer, capacity, written),
            Err(err) => from_core(err),
        }
    })
}

/// Verifies the naming mechanism against the liberal rule on `samples`
/// seeded profiles plus the adversarial list. `pairs` may be NULL for the
/// canonical assignment. Writes the number of profiles tested and the
/// number of violations found (zero is the expected answer for any valid
/// configuration).
///
/// # Safety
/// `tested` and `violations` must be writable; `pairs`, when non-NULL, must
/// be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ni_verify_liberal(
    players: u32,
    outcomes: u32,
    pairs: *const c_char,
    samples: u64,
    seed: u64,
    guard_limit: u64,
    tested: *mut u64,
    violations: *mut u64,
) -> NiStatus {
    guarded(|| {
        if tested.is_null() || violations.is_null() {
            return fail(NiStatus::NullPointer, "NULL out-parameter".into());
        }
        if players < 3 || outcomes < 2 * players {
            return fail(
                NiStatus::InvalidArgument,
                format!("need players >= 3 and outcomes >= 2*players, got {players}/{outcomes}"),
            );
        }
        let assign = if pairs.is_null() {
            PairAssignment::canonical(players, outcomes)
        } else {
            match utf8_in(pairs) {
                Ok(text) => PairAssignment::parse(text, outcomes),
                Err(status) => return status,
            }
        };
        let assign = match assign {
            Ok(a) if a.players() as u32 == players => a,
            Ok(a) => {
                return fail(
                    NiStatus::InvalidArgument,
                    format!("pairs describe {} players, expected {players}", a.players()),
                )
            }
            Err(err) => return from_core(err),
        };
        let gf: GameForm = match LiberalGameForm::new(assign.clone()) {
            Ok(gf) => gf.into(),
            Err(err) => return from_core(err),
        };
        let rule = |p: &Profile| liberal_rule(&assign, p).expect("dimensions pre-checked");
        let opts = VerifyOptions {
            guard_limit: if guard_limit == 0 {
                nashimpl::nash::DEFAULT_GUARD_LIMIT
            } else {
                guard_limit
            },
            ..VerifyOptions::default()
        };
        let sampled_source = ProfileSource::Sampled {
            players,
            outcomes,
            count: samples,
            seed,
        };
        let sampled = match verify_profiles(&gf, rule, &sampled_source, &opts) {
            Ok(report) => report,
            Err(err) => return from_core(err),
        };
        let adversarial =
            match verify_profiles(&gf, rule, &ProfileSource::adversarial(&assign), &opts) {
                Ok(report) => report,
                Err(err) => return from_core(err),
            };
        *tested = sampled.tested + adversarial.tested;
        *violations = sampled.total_violations + adversarial.total_violations;
        NiStatus::Ok
    })
}

/// For a non-disjoint assignment, writes the shared outcome and the two
/// players (0-based) whose decisiveness collides on it.
///
/// # Safety
/// `assignment` must be a live handle; the out-parameters must be writable.
#[no_mangle]
pub unsafe extern "C" fn ni_overlap_witness(
    assignment: *const NiAssignment,
    shared_outcome: *mut u32,
    forced_in_player: *mut u32,
    forced_out_player: *mut u32,
) -> NiStatus {
    guarded(|| {
        let Some(assignment) = assignment.as_ref() else {
            return fail(NiStatus::NullPointer, "NULL handle".into());
        };
        if shared_outcome.is_null() || forced_in_player.is_null() || forced_out_player.is_null() {
            return fail(NiStatus::NullPointer, "NULL out-parameter".into());
        }
        match contradiction_witness(&assignment.0) {
            Ok(witness) => {
                debug_assert!(witness.validate(&assignment.0));
                *shared_outcome = witness.shared.get();
                *forced_in_player = witness.forced_in_player as u32;
                *forced_out_player = witness.forced_out_player as u32;
                NiStatus::Ok
            }
            Err(err) => from_core(err),
        }
    })
}
