//! C ABI over `relaycap`.
//!
//! Every fallible entry point returns a [`RelaycapStatus`] and writes its
//! result through an out-pointer. On failure the message is kept per thread
//! and can be read with [`relaycap_last_error_message`]. Handles are opaque
//! and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use relaycap::bounds::{
    cf_rate, cutset_bound, gap_certificate, h_theta, linear_grid, new_upper_bound, sweep, Angle, BoundFamily,
};
use relaycap::channel::{capacity_full_cooperation, capacity_no_relay, cutset_c0_threshold};
use relaycap::geometry::{log_cap_area, log_cap_intersection, reg_inc_beta, CapSpec};
use relaycap::montecarlo::{basis_vector, verify_extended_isoperimetry_sphere, McConfig, SetSpec, Verdict};
use relaycap::{ChannelParams, Error, LinkCapacity};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelaycapStatus {
    Ok = 0,
    Domain = 1,
    InvalidInput = 2,
    Numerical = 3,
    UnsupportedSet = 4,
    NullPointer = 5,
    OutOfRange = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelaycapVerdict {
    Pass = 0,
    Fail = 1,
    Inconclusive = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelaycapSetKind {
    Cap = 0,
    Band = 1,
    TwoCaps = 2,
}

/// Channel with source power `P` and per-link noise `N`.
pub struct RelaycapChannel {
    params: ChannelParams,
}

/// Rows of a bound sweep over a C0 grid.
pub struct RelaycapSweep {
    rows: Vec<RelaycapSweepRow>,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RelaycapSweepRow {
    pub c0: f64,
    pub cutset: f64,
    pub new_bound: f64,
    pub cf_rate: f64,
    pub c_infinity: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RelaycapGapCertificate {
    pub theta0: f64,
    pub delta1: f64,
    pub derivative_at_pi_half: f64,
    pub gap_lower_bound: f64,
    pub certified_bound: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaycapMcReport {
    pub estimate: f64,
    pub std_error: f64,
    pub n_used: u64,
    pub threshold: f64,
    pub verdict: RelaycapVerdict,
    pub seed: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(RelaycapStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.root() {
            Error::Domain(_) => RelaycapStatus::Domain,
            Error::InvalidInput(_) => RelaycapStatus::InvalidInput,
            Error::Numerical(_) => RelaycapStatus::Numerical,
            Error::UnsupportedSet(_) => RelaycapStatus::UnsupportedSet,
            _ => RelaycapStatus::Numerical,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("interior NULs removed"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard<F>(f: F) -> RelaycapStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    let (status, msg) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => (RelaycapStatus::Ok, None),
        Ok(Err(Failure(s, m))) => (s, Some(m)),
        Err(payload) => {
            let m = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            (RelaycapStatus::Panic, Some(format!("panic: {m}")))
        }
    };
    set_last_error(msg);
    status
}

fn null(what: &str) -> Failure {
    Failure(RelaycapStatus::NullPointer, format!("{what} is null"))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn channel<'a>(p: *const RelaycapChannel) -> Result<&'a ChannelParams, Failure> {
    p.as_ref().map(|c| &c.params).ok_or_else(|| null("channel"))
}

/// Message of the last failed call on this thread, or null after a
/// successful call. Valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn relaycap_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn relaycap_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn relaycap_channel_new(
    power: f64,
    noise: f64,
    out: *mut *mut RelaycapChannel,
) -> RelaycapStatus {
    guard(|| {
        let slot = self::out(out, "out")?;
        let params = ChannelParams::new(power, noise)?;
        *slot = Box::into_raw(Box::new(RelaycapChannel { params }));
        Ok(())
    })
}

/// # Safety
/// `channel` must come from `relaycap_channel_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn relaycap_channel_free(channel: *mut RelaycapChannel) {
    if !channel.is_null() {
        drop(Box::from_raw(channel));
    }
}

unsafe fn write_rate(
    channel: *const RelaycapChannel,
    out: *mut f64,
    f: fn(&ChannelParams) -> relaycap::Rate,
) -> RelaycapStatus {
    guard(|| {
        let p = self::channel(channel)?;
        *self::out(out, "out")? = f(p).bits();
        Ok(())
    })
}

/// `C(0)` in bits.
///
/// # Safety
/// `channel` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn relaycap_capacity_no_relay(channel: *const RelaycapChannel, out: *mut f64) -> RelaycapStatus {
    write_rate(channel, out, capacity_no_relay)
}

/// `C(inf)` in bits.
///
/// # Safety
/// `channel` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn relaycap_capacity_full_cooperation(
    channel: *const RelaycapChannel,
    out: *mut f64,
) -> RelaycapStatus {
    write_rate(channel, out, capacity_full_cooperation)
}

/// Link capacity at which the cut-set bound reaches `C(inf)`.
///
/// # Safety
/// `channel` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn relaycap_cutset_c0_threshold(
    channel: *const RelaycapChannel,
    out: *mut f64,
) -> RelaycapStatus {
    write_rate(channel, out, cutset_c0_threshold)
}

fn link(c0: f64) -> Result<LinkCapacity, Failure> {
    Ok(LinkCapacity::new(c0)?)
}

/// # Safety
/// `channel` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn relaycap_cutset_bound(
    channel: *const RelaycapChannel,
    c0: f64,
    out: *mut f64,
) -> RelaycapStatus {
    guard(|| {
        let p = self::channel(channel)?;
        *self::out(out, "out")? = cutset_bound(p, link(c0)?).bits();
        Ok(())
    })
}

/// # Safety
/// `channel` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn relaycap_new_upper_bound(
    channel: *const RelaycapChannel,
    c0: f64,
    tol: f64,
    out: *mut f64,
) -> RelaycapStatus {
    guard(|| {
        let p = self::channel(channel)?;
        *self::out(out, "out")? = new_upper_bound(p, link(c0)?, tol)?.bits();
        Ok(())
    })
}

/// Compress-and-forward achievable rate.
///
/// # Safety
/// `channel` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn relaycap_cf_rate(channel: *const RelaycapChannel, c0: f64, out: *mut f64) -> RelaycapStatus {
    guard(|| {
        let p = self::channel(channel)?;
        *self::out(out, "out")? = cf_rate(p, link(c0)?).bits();
        Ok(())
    })
}

/// The bound kernel `h_theta(omega)`, angles in radians within `[0, pi/2]`.
///
/// # Safety
/// `channel` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn relaycap_h_theta(
    channel: *const RelaycapChannel,
    theta: f64,
    omega: f64,
    out: *mut f64,
) -> RelaycapStatus {
    guard(|| {
        let p = self::channel(channel)?;
        *self::out(out, "out")? = h_theta(p, Angle::new(theta)?, Angle::new(omega)?)?;
        Ok(())
    })
}

/// # Safety
/// `channel` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn relaycap_gap_certificate(
    channel: *const RelaycapChannel,
    c0: f64,
    out: *mut RelaycapGapCertificate,
) -> RelaycapStatus {
    guard(|| {
        let p = self::channel(channel)?;
        let g = gap_certificate(p, link(c0)?)?;
        *self::out(out, "out")? = RelaycapGapCertificate {
            theta0: g.theta0,
            delta1: g.delta1,
            derivative_at_pi_half: g.derivative_at_pi_half,
            gap_lower_bound: g.gap_lower_bound,
            certified_bound: g.certified_bound,
        };
        Ok(())
    })
}

/// Evaluates every bound on `steps` evenly spaced link capacities.
///
/// # Safety
/// `channel` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn relaycap_sweep_new(
    channel: *const RelaycapChannel,
    c0_min: f64,
    c0_max: f64,
    steps: usize,
    tol: f64,
    out: *mut *mut RelaycapSweep,
) -> RelaycapStatus {
    guard(|| {
        let p = self::channel(channel)?;
        let slot = self::out(out, "out")?;
        let grid = linear_grid(c0_min, c0_max, steps)?;
        let curves = sweep(p, &grid, tol)?;
        let of = |f: BoundFamily| &curves.iter().find(|c| c.family == f).expect("every family is swept").points;
        let (cs, nb, cf) = (of(BoundFamily::CutSet), of(BoundFamily::NewBound), of(BoundFamily::CompressForward));
        let c_inf = capacity_full_cooperation(p).bits();
        let rows = (0..grid.len())
            .map(|i| RelaycapSweepRow {
                c0: grid[i].bits(),
                cutset: cs[i].rate.bits(),
                new_bound: nb[i].rate.bits(),
                cf_rate: cf[i].rate.bits(),
                c_infinity: c_inf,
            })
            .collect();
        *slot = Box::into_raw(Box::new(RelaycapSweep { rows }));
        Ok(())
    })
}

/// Number of rows, or 0 for a null handle.
///
/// # Safety
/// `sweep` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn relaycap_sweep_len(sweep: *const RelaycapSweep) -> usize {
    sweep.as_ref().map_or(0, |s| s.rows.len())
}

/// # Safety
/// `sweep` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn relaycap_sweep_row(
    sweep: *const RelaycapSweep,
    index: usize,
    out: *mut RelaycapSweepRow,
) -> RelaycapStatus {
    guard(|| {
        let s = sweep.as_ref().ok_or_else(|| null("sweep"))?;
        let row = s.rows.get(index).ok_or_else(|| {
            Failure(RelaycapStatus::OutOfRange, format!("row {index} out of range for {} rows", s.rows.len()))
        })?;
        *self::out(out, "out")? = *row;
        Ok(())
    })
}

/// # Safety
/// `sweep` must come from `relaycap_sweep_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn relaycap_sweep_free(sweep: *mut RelaycapSweep) {
    if !sweep.is_null() {
        drop(Box::from_raw(sweep));
    }
}

/// `log2` area of a cap of angle `theta` on the sphere of radius `sqrt(m n_scale)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn relaycap_log_cap_area(m: usize, n_scale: f64, theta: f64, out: *mut f64) -> RelaycapStatus {
    guard(|| {
        let slot = self::out(out, "out")?;
        *slot = log_cap_area(&CapSpec::with_scale(m, n_scale, theta)?)?.log2_value;
        Ok(())
    })
}

/// `log2` area of the intersection of two caps with orthogonal poles.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn relaycap_log_cap_intersection(
    m: usize,
    n_scale: f64,
    theta1: f64,
    theta2: f64,
    out: *mut f64,
) -> RelaycapStatus {
    guard(|| {
        let slot = self::out(out, "out")?;
        *slot = log_cap_intersection(m, n_scale, theta1, theta2)?.log_measure.log2_value;
        Ok(())
    })
}

/// Regularized incomplete beta `I_x(a, b)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn relaycap_reg_inc_beta(x: f64, a: f64, b: f64, out: *mut f64) -> RelaycapStatus {
    guard(|| {
        let slot = self::out(out, "out")?;
        *slot = reg_inc_beta(x, a, b)?;
        Ok(())
    })
}

/// Extended isoperimetry on the unit-scale sphere for a set of effective
/// angle `theta`. Angles in radians.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn relaycap_mc_isoperimetry_sphere(
    m: usize,
    set: RelaycapSetKind,
    theta: f64,
    omega: f64,
    seed: u64,
    samples: usize,
    trials: usize,
    epsilon: f64,
    out: *mut RelaycapMcReport,
) -> RelaycapStatus {
    guard(|| {
        let slot = self::out(out, "out")?;
        let cfg = McConfig::new(seed, samples, trials, epsilon)?;
        if m < 2 {
            return Err(Failure(RelaycapStatus::Domain, format!("dimension must be >= 2, got {m}")));
        }
        let pole = basis_vector(m, 0);
        let spec = match set {
            RelaycapSetKind::Cap => SetSpec::cap(m, &pole, theta)?,
            RelaycapSetKind::Band => SetSpec::band_with_effective_angle(m, &pole, theta)?,
            RelaycapSetKind::TwoCaps => SetSpec::two_caps_with_effective_angle(m, &pole, theta)?,
        };
        let r = verify_extended_isoperimetry_sphere(m, &spec, omega, &cfg)?;
        *slot = RelaycapMcReport {
            estimate: r.estimate,
            std_error: r.std_error,
            n_used: r.n_used as u64,
            threshold: r.threshold,
            verdict: match r.verdict {
                Verdict::Pass => RelaycapVerdict::Pass,
                Verdict::Fail => RelaycapVerdict::Fail,
                Verdict::Inconclusive => RelaycapVerdict::Inconclusive,
            },
            seed: r.seed,
        };
        Ok(())
    })
}
