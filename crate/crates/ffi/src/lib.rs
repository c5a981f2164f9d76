//! C ABI surface for the hgwave library: opaque handles, status codes, and
//! plain-old-data outputs so other languages can bind without knowing the
//! Rust types. Every function returns an [`HgStatus`]; results are written
//! through out-pointers only on `Ok`.

use std::panic::{catch_unwind, AssertUnwindSafe};

use hgwave::evolve::{sup_norm, EvolveSettings};
use hgwave::phase::{builtin_phase, PhaseFamily, PhaseFunction};
use hgwave::sharpness::sharpness_run;
use hgwave::window::DyadicWindow;
use hgwave::{Error, GroupParams};

/// Status code of every FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgStatus {
    /// Success; out-pointers hold valid results.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A parameter was rejected (range, configuration, or grid mismatch).
    InvalidParameter = 2,
    /// A numerical procedure failed to converge or certify its result.
    Numeric = 3,
}

fn status_of(err: &Error) -> HgStatus {
    match err {
        Error::InvalidParameter(_) | Error::Config(_) | Error::GridMismatch(_) => {
            HgStatus::InvalidParameter
        }
        _ => HgStatus::Numeric,
    }
}

/// Opaque handle for the group parameters of H^n.
pub struct HgGroup {
    inner: GroupParams,
}

/// Opaque handle for a dispersive phase function.
pub struct HgPhase {
    inner: PhaseFunction,
    family: PhaseFamily,
}

/// Phase family selectors for [`hgwave_phase_new`].
pub const HGWAVE_FAMILY_FRAC_SCHRODINGER: u32 = 0;
pub const HGWAVE_FAMILY_FRAC_WAVE: u32 = 1;
pub const HGWAVE_FAMILY_FOURTH_ORDER: u32 = 2;

fn family_of(family: u32, alpha: f64) -> Option<PhaseFamily> {
    match family {
        HGWAVE_FAMILY_FRAC_SCHRODINGER => Some(PhaseFamily::FracSchrodinger { alpha }),
        HGWAVE_FAMILY_FRAC_WAVE => Some(PhaseFamily::FracWave { alpha }),
        HGWAVE_FAMILY_FOURTH_ORDER => Some(PhaseFamily::FourthOrder),
        _ => None,
    }
}

/// Creates the group parameters of H^n; `n >= 1`.
///
/// # Safety
/// `out` must be a valid pointer. The returned handle must be released with
/// [`hgwave_group_free`].
#[no_mangle]
pub unsafe extern "C" fn hgwave_group_new(n: u32, out: *mut *mut HgGroup) -> HgStatus {
    if out.is_null() {
        return HgStatus::NullPointer;
    }
    match GroupParams::new(n) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(HgGroup { inner }));
            HgStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a group handle; accepts null.
///
/// # Safety
/// `group` must be null or a handle from [`hgwave_group_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hgwave_group_free(group: *mut HgGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Homogeneous dimension N = 2n + 2.
///
/// # Safety
/// `group` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hgwave_group_homogeneous_dim(
    group: *const HgGroup,
    out: *mut u32,
) -> HgStatus {
    if group.is_null() || out.is_null() {
        return HgStatus::NullPointer;
    }
    *out = (*group).inner.homogeneous_dim;
    HgStatus::Ok
}

/// Spectral eigenvalue b_m(lambda) = 4 (2m + n) |lambda|.
///
/// # Safety
/// `group` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hgwave_group_eigenvalue(
    group: *const HgGroup,
    m: u32,
    lambda: f64,
    out: *mut f64,
) -> HgStatus {
    if group.is_null() || out.is_null() {
        return HgStatus::NullPointer;
    }
    *out = (*group).inner.eigenvalue(m, lambda);
    HgStatus::Ok
}

/// Creates a built-in phase function; `alpha` is ignored by the
/// fourth-order family.
///
/// # Safety
/// `out` must be a valid pointer. The returned handle must be released with
/// [`hgwave_phase_free`].
#[no_mangle]
pub unsafe extern "C" fn hgwave_phase_new(
    family: u32,
    alpha: f64,
    out: *mut *mut HgPhase,
) -> HgStatus {
    if out.is_null() {
        return HgStatus::NullPointer;
    }
    let Some(family) = family_of(family, alpha) else {
        return HgStatus::InvalidParameter;
    };
    match builtin_phase(family) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(HgPhase { inner, family }));
            HgStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a phase handle; accepts null.
///
/// # Safety
/// `phase` must be null or a handle from [`hgwave_phase_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hgwave_phase_free(phase: *mut HgPhase) {
    if !phase.is_null() {
        drop(Box::from_raw(phase));
    }
}

/// Evaluates phi(r), phi'(r), phi''(r); any out-pointer may be null to skip
/// that value (but not all three).
///
/// # Safety
/// `phase` must be a valid handle; non-null out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hgwave_phase_eval(
    phase: *const HgPhase,
    r: f64,
    value: *mut f64,
    first: *mut f64,
    second: *mut f64,
) -> HgStatus {
    if phase.is_null() || (value.is_null() && first.is_null() && second.is_null()) {
        return HgStatus::NullPointer;
    }
    let phi = &(*phase).inner;
    if !value.is_null() {
        *value = phi.value(r);
    }
    if !first.is_null() {
        *first = phi.first_derivative(r);
    }
    if !second.is_null() {
        *second = phi.second_derivative(r);
    }
    HgStatus::Ok
}

/// Sup-norm of the evolved band-limited kernel U_t phi_j with its argmax,
/// at the default window and search tolerances.
///
/// # Safety
/// All handles and out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hgwave_sup_norm(
    phase: *const HgPhase,
    group: *const HgGroup,
    t: f64,
    j: i32,
    m_max: u32,
    out_sup: *mut f64,
    out_argmax_r: *mut f64,
    out_argmax_s: *mut f64,
) -> HgStatus {
    if phase.is_null() || group.is_null() || out_sup.is_null() {
        return HgStatus::NullPointer;
    }
    let phi = &(*phase).inner;
    let g = (*group).inner;
    let settings = EvolveSettings { m_max, ..EvolveSettings::default() };
    let window = DyadicWindow::default();
    let result = catch_unwind(AssertUnwindSafe(|| sup_norm(phi, t, j, &g, &window, &settings)));
    match result {
        Ok(Ok(sup)) => {
            *out_sup = sup.value;
            if !out_argmax_r.is_null() {
                *out_argmax_r = sup.argmax_r;
            }
            if !out_argmax_s.is_null() {
                *out_argmax_s = sup.argmax_s;
            }
            HgStatus::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => HgStatus::Numeric,
    }
}

/// t^{1/2}-normalized magnitude of the sharpness example u(0, t s0, t).
///
/// # Safety
/// `phase` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hgwave_sharpness_normalized(
    phase: *const HgPhase,
    n: u32,
    t: f64,
    out: *mut f64,
) -> HgStatus {
    if phase.is_null() || out.is_null() {
        return HgStatus::NullPointer;
    }
    let family = (*phase).family;
    let result = catch_unwind(AssertUnwindSafe(|| sharpness_run(family, n, &[t])));
    match result {
        Ok(Ok(rows)) => {
            *out = rows[0].normalized;
            HgStatus::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => HgStatus::Numeric,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_lifecycle_and_eigenvalue() {
        unsafe {
            let mut g: *mut HgGroup = std::ptr::null_mut();
            assert_eq!(hgwave_group_new(1, &mut g), HgStatus::Ok);
            let mut dim = 0u32;
            assert_eq!(hgwave_group_homogeneous_dim(g, &mut dim), HgStatus::Ok);
            assert_eq!(dim, 4);
            let mut b = 0.0f64;
            assert_eq!(hgwave_group_eigenvalue(g, 2, -1.5, &mut b), HgStatus::Ok);
            assert_eq!(b, 4.0 * 5.0 * 1.5);
            hgwave_group_free(g);
        }
    }

    #[test]
    fn rejects_invalid_group() {
        unsafe {
            let mut g: *mut HgGroup = std::ptr::null_mut();
            assert_eq!(hgwave_group_new(0, &mut g), HgStatus::InvalidParameter);
            assert_eq!(hgwave_group_new(1, std::ptr::null_mut()), HgStatus::NullPointer);
        }
    }

    #[test]
    fn phase_eval_matches_library() {
        unsafe {
            let mut p: *mut HgPhase = std::ptr::null_mut();
            assert_eq!(
                hgwave_phase_new(HGWAVE_FAMILY_FOURTH_ORDER, 0.0, &mut p),
                HgStatus::Ok
            );
            let (mut v, mut d1, mut d2) = (0.0f64, 0.0f64, 0.0f64);
            assert_eq!(hgwave_phase_eval(p, 3.0, &mut v, &mut d1, &mut d2), HgStatus::Ok);
            assert_eq!(v, 12.0);
            assert_eq!(d1, 7.0);
            assert_eq!(d2, 2.0);
            hgwave_phase_free(p);
        }
    }

    #[test]
    fn rejects_bad_phase_family() {
        unsafe {
            let mut p: *mut HgPhase = std::ptr::null_mut();
            assert_eq!(hgwave_phase_new(99, 0.5, &mut p), HgStatus::InvalidParameter);
            assert_eq!(
                hgwave_phase_new(HGWAVE_FAMILY_FRAC_SCHRODINGER, 1.5, &mut p),
                HgStatus::InvalidParameter
            );
        }
    }

    #[test]
    fn sup_norm_small_run() {
        unsafe {
            let mut g: *mut HgGroup = std::ptr::null_mut();
            let mut p: *mut HgPhase = std::ptr::null_mut();
            hgwave_group_new(1, &mut g);
            hgwave_phase_new(HGWAVE_FAMILY_FRAC_SCHRODINGER, 0.5, &mut p);
            let (mut sup, mut r, mut s) = (0.0f64, 0.0f64, 0.0f64);
            assert_eq!(
                hgwave_sup_norm(p, g, 0.0, 0, 6, &mut sup, &mut r, &mut s),
                HgStatus::Ok
            );
            assert!(sup > 0.0);
            hgwave_phase_free(p);
            hgwave_group_free(g);
        }
    }
}
