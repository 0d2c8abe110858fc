//! C ABI for the oracle laboratory: opaque session handles and status codes.
//!
//! A session is driven the same way the native harness drives one: create,
//! answer queries, `finish` with the declared output (which pads, builds the
//! final metric and runs all checks), then read results. All distances and
//! costs cross the boundary as raw half-units.
//!
//! Safety contract, shared by every function here: session handles must come
//! from `ml_session_new` and must not be used after `ml_session_free` nor
//! from two threads at once; out-pointers must be null or valid for writes;
//! path and string arguments must be NUL-terminated; strings returned by the
//! library are released only through `ml_string_free`.
#![allow(clippy::missing_safety_doc)]

use median_lab::{
    build, run_checks, AdvParams, AdvState, BuildOptions, CheckSet, CheckStatus, Delta, Error,
    Mode, PointId, ReportMeta,
};
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::io::BufWriter;

/// Status codes returned by every `ml_` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlStatus {
    MlOk = 0,
    MlNullPointer = 1,
    MlBadParams = 2,
    MlBadPoint = 3,
    MlSelfQuery = 4,
    MlRepeatedQuery = 5,
    /// Result requested before `ml_session_finish`.
    MlNotFinished = 6,
    /// Query or finish after the session already finished.
    MlAlreadyFinished = 7,
    MlIoError = 8,
    MlBadPath = 9,
    MlInternal = 10,
}

fn status_of(e: &Error) -> MlStatus {
    match e {
        Error::BadPoint { .. } => MlStatus::MlBadPoint,
        Error::SelfQuery { .. } | Error::SelfPath { .. } => MlStatus::MlSelfQuery,
        Error::RepeatedQuery { .. } => MlStatus::MlRepeatedQuery,
        Error::BadHorizon { .. }
        | Error::BadDelta { .. }
        | Error::BadPointCount { .. }
        | Error::STooSmall { .. }
        | Error::STooLarge { .. } => MlStatus::MlBadParams,
        Error::Io(_) => MlStatus::MlIoError,
        _ => MlStatus::MlInternal,
    }
}

enum Phase {
    Running(AdvState),
    Finished {
        state: AdvState,
        construction: Box<median_lab::FinalConstruction>,
        report: Box<median_lab::CertificateReport>,
    },
    /// Transient placeholder while finishing moves the state.
    Moving,
}

/// Opaque session handle.
pub struct MlSession {
    phase: Phase,
}

unsafe fn deref_mut<'a>(s: *mut MlSession) -> Option<&'a mut MlSession> {
    unsafe { s.as_mut() }
}

unsafe fn deref<'a>(s: *const MlSession) -> Option<&'a MlSession> {
    unsafe { s.as_ref() }
}

/// Creates a session. `optimized` selects the alternate threshold
/// parameterization when nonzero. On success writes a handle to `out`;
/// release it with `ml_session_free`.
#[no_mangle]
pub unsafe extern "C" fn ml_session_new(
    n: u32,
    h: u32,
    delta_num: u64,
    delta_den: u64,
    optimized: u32,
    out: *mut *mut MlSession,
) -> MlStatus {
    if out.is_null() {
        return MlStatus::MlNullPointer;
    }
    let delta = match Delta::new(delta_num, delta_den) {
        Ok(d) => d,
        Err(e) => return status_of(&e),
    };
    let mode = if optimized != 0 { Mode::Optimized } else { Mode::Basic };
    let params = match AdvParams::new(n, h, delta, mode) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    let session = Box::new(MlSession {
        phase: Phase::Running(AdvState::init(params)),
    });
    unsafe { *out = Box::into_raw(session) };
    MlStatus::MlOk
}

/// Answers one query; writes the answer in half-units to `answer_half`.
#[no_mangle]
pub unsafe extern "C" fn ml_session_answer(
    session: *mut MlSession,
    a: u32,
    b: u32,
    answer_half: *mut u64,
) -> MlStatus {
    let Some(s) = (unsafe { deref_mut(session) }) else {
        return MlStatus::MlNullPointer;
    };
    let Phase::Running(state) = &mut s.phase else {
        return MlStatus::MlAlreadyFinished;
    };
    let (Some(a), Some(b)) = (PointId::new(a), PointId::new(b)) else {
        return MlStatus::MlBadPoint;
    };
    match state.answer(a, b) {
        Ok(ans) => {
            if !answer_half.is_null() {
                unsafe { *answer_half = ans.expect_finite() as u64 };
            }
            MlStatus::MlOk
        }
        Err(e) => status_of(&e),
    }
}

/// Declares the output `z`: pads its remaining pairs, builds the final
/// metric and runs every check. Afterwards the result getters work.
#[no_mangle]
pub unsafe extern "C" fn ml_session_finish(session: *mut MlSession, z: u32) -> MlStatus {
    let Some(s) = (unsafe { deref_mut(session) }) else {
        return MlStatus::MlNullPointer;
    };
    if !matches!(s.phase, Phase::Running(_)) {
        return MlStatus::MlAlreadyFinished;
    }
    let Some(zp) = PointId::new(z) else {
        return MlStatus::MlBadPoint;
    };
    let Phase::Running(mut state) = std::mem::replace(&mut s.phase, Phase::Moving) else {
        unreachable!()
    };
    let padded = match state.pad_output(zp) {
        Ok(pads) => pads.len() as u64,
        Err(e) => {
            s.phase = Phase::Running(state);
            return status_of(&e);
        }
    };
    let construction = match build(&state, zp, &BuildOptions::default()) {
        Ok(c) => c,
        Err(e) => {
            s.phase = Phase::Running(state);
            return status_of(&e);
        }
    };
    let meta = ReportMeta {
        opponent: "ffi".to_string(),
        padded,
    };
    let report = run_checks(&state, &construction, &CheckSet::all(), &meta);
    s.phase = Phase::Finished {
        state,
        construction: Box::new(construction),
        report: Box::new(report),
    };
    MlStatus::MlOk
}

/// Number of answered queries so far, padding included.
#[no_mangle]
pub unsafe extern "C" fn ml_session_q_used(session: *const MlSession, out: *mut u64) -> MlStatus {
    let Some(s) = (unsafe { deref(session) }) else {
        return MlStatus::MlNullPointer;
    };
    if out.is_null() {
        return MlStatus::MlNullPointer;
    }
    let q = match &s.phase {
        Phase::Running(state) => state.q_used(),
        Phase::Finished { state, .. } => state.q_used(),
        Phase::Moving => return MlStatus::MlInternal,
    };
    unsafe { *out = q };
    MlStatus::MlOk
}

fn finished(s: &MlSession) -> Option<&median_lab::CertificateReport> {
    match &s.phase {
        Phase::Finished { report, .. } => Some(report),
        Phase::Running(_) | Phase::Moving => None,
    }
}

/// Costs of the declared output and the planted center, in half-units.
#[no_mangle]
pub unsafe extern "C" fn ml_session_costs(
    session: *const MlSession,
    cost_z_half: *mut u64,
    cost_alpha_half: *mut u64,
) -> MlStatus {
    let Some(s) = (unsafe { deref(session) }) else {
        return MlStatus::MlNullPointer;
    };
    let Some(report) = finished(s) else {
        return MlStatus::MlNotFinished;
    };
    if !cost_z_half.is_null() {
        unsafe { *cost_z_half = report.cost_z_half };
    }
    if !cost_alpha_half.is_null() {
        unsafe { *cost_alpha_half = report.cost_alpha_half };
    }
    MlStatus::MlOk
}

/// Achieved ratio cost(z)/cost(center) as a reduced fraction.
#[no_mangle]
pub unsafe extern "C" fn ml_session_ratio(
    session: *const MlSession,
    num: *mut u64,
    den: *mut u64,
) -> MlStatus {
    let Some(s) = (unsafe { deref(session) }) else {
        return MlStatus::MlNullPointer;
    };
    let Some(report) = finished(s) else {
        return MlStatus::MlNotFinished;
    };
    let Some(ratio) = report.ratio else {
        return MlStatus::MlInternal;
    };
    if !num.is_null() {
        unsafe { *num = ratio.num };
    }
    if !den.is_null() {
        unsafe { *den = ratio.den };
    }
    MlStatus::MlOk
}

/// Check counts by status.
#[no_mangle]
pub unsafe extern "C" fn ml_session_check_counts(
    session: *const MlSession,
    passed: *mut u64,
    failed: *mut u64,
    skipped: *mut u64,
) -> MlStatus {
    let Some(s) = (unsafe { deref(session) }) else {
        return MlStatus::MlNullPointer;
    };
    let Some(report) = finished(s) else {
        return MlStatus::MlNotFinished;
    };
    let (mut p, mut f, mut k) = (0u64, 0u64, 0u64);
    for c in &report.checks {
        match c.status {
            CheckStatus::Pass => p += 1,
            CheckStatus::Fail => f += 1,
            CheckStatus::Skipped => k += 1,
        }
    }
    if !passed.is_null() {
        unsafe { *passed = p };
    }
    if !failed.is_null() {
        unsafe { *failed = f };
    }
    if !skipped.is_null() {
        unsafe { *skipped = k };
    }
    MlStatus::MlOk
}

/// Full certificate report as a JSON string. Free with `ml_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ml_session_report_json(
    session: *const MlSession,
    out: *mut *mut c_char,
) -> MlStatus {
    let Some(s) = (unsafe { deref(session) }) else {
        return MlStatus::MlNullPointer;
    };
    if out.is_null() {
        return MlStatus::MlNullPointer;
    }
    let Some(report) = finished(s) else {
        return MlStatus::MlNotFinished;
    };
    let json = match serde_json::to_string(report) {
        Ok(j) => j,
        Err(_) => return MlStatus::MlInternal,
    };
    match CString::new(json) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            MlStatus::MlOk
        }
        Err(_) => MlStatus::MlInternal,
    }
}

/// Writes the final metric in the text matrix format (full matrices only).
#[no_mangle]
pub unsafe extern "C" fn ml_session_export_matrix(
    session: *const MlSession,
    path: *const c_char,
) -> MlStatus {
    let Some(s) = (unsafe { deref(session) }) else {
        return MlStatus::MlNullPointer;
    };
    if path.is_null() {
        return MlStatus::MlNullPointer;
    }
    let Phase::Finished { state, construction, .. } = &s.phase else {
        return MlStatus::MlNotFinished;
    };
    let Ok(path) = (unsafe { CStr::from_ptr(path) }).to_str() else {
        return MlStatus::MlBadPath;
    };
    let Ok(file) = File::create(path) else {
        return MlStatus::MlIoError;
    };
    let mut w = BufWriter::new(file);
    match median_lab::matrix_io::write_matrix(
        &mut w,
        &construction.d,
        state.params().h(),
        state.params().mode(),
    ) {
        Ok(()) => MlStatus::MlOk,
        Err(e) => status_of(&e),
    }
}

/// Frees a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ml_string_free(s: *mut c_char) {
    if !s.is_null() {
        unsafe { drop(CString::from_raw(s)) };
    }
}

/// Frees a session handle.
#[no_mangle]
pub unsafe extern "C" fn ml_session_free(session: *mut MlSession) {
    if !session.is_null() {
        unsafe { drop(Box::from_raw(session)) };
    }
}
