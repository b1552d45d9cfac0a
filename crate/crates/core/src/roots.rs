use crate::error::{Error, Result};

/// Bisection on `[lo, hi]` run until the bracket cannot shrink any further.
///
/// `f(lo)` and `f(hi)` must have opposite signs (or one must be zero).
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::NotBracketed { lo, hi });
    }
    // 2100 halvings exhaust any f64 interval
    for _ in 0..2100 {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + 0.5 * (hi - lo))
}

/// Doubles `hi` from `start` until `f(hi) >= 0`, for increasing `f` with `f(0) < 0`.
pub fn expand_upper<F: Fn(f64) -> f64>(f: F, start: f64, max_doublings: u32) -> Option<f64> {
    let mut hi = start;
    for _ in 0..max_doublings {
        if f(hi) >= 0.0 {
            return Some(hi);
        }
        hi *= 2.0;
    }
    None
}
