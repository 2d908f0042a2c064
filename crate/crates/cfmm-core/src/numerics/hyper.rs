//! Overflow-safe hyperbolic helpers.
//!
//! The hyperbolic-sine market maker works with quantities like
//! `ln(sinh(w))` and `asinh(exp(L))` at arguments where `sinh` alone would
//! overflow (`sinh(750)` already exceeds the `f64` range, yet reserves of a
//! few thousand units are routine). Everything here is expressed through
//! logs and `exp(-2w)` so the full positive axis stays representable:
//!
//! ```text
//! ln(sinh(w)) = w - ln 2 + ln(1 - e^{-2w})        for large w
//! csch²(w)    = 4 e^{-2w} / (1 - e^{-2w})²
//! asinh(e^L)  = L + ln 2 + O(e^{-2L})             for large L
//! ```

/// Crossover above which the log-form expansions are used directly.
const LARGE_ARG: f64 = 20.0;

/// `ln(sinh(w))` for `w > 0`, finite for all representable `w` and `-inf`
/// at `w = 0`.
pub fn ln_sinh(w: f64) -> f64 {
    debug_assert!(w >= 0.0);
    if w < LARGE_ARG {
        w.sinh().ln()
    } else {
        w - std::f64::consts::LN_2 + (-(-2.0 * w).exp()).ln_1p()
    }
}

/// `coth(w)` for `w > 0` without overflow (tends to 1 for large `w`).
pub fn coth(w: f64) -> f64 {
    debug_assert!(w > 0.0);
    if w < LARGE_ARG {
        1.0 / w.tanh()
    } else {
        let e = (-2.0 * w).exp();
        (1.0 + e) / (1.0 - e)
    }
}

/// `csch²(w) = 1/sinh²(w)` for `w > 0` without overflow (note
/// `d/dw coth(w) = -csch²(w)`).
pub fn csch_sq(w: f64) -> f64 {
    debug_assert!(w > 0.0);
    if w < LARGE_ARG {
        let s = w.sinh();
        1.0 / (s * s)
    } else {
        let e = (-2.0 * w).exp();
        let em1 = 1.0 - e;
        4.0 * e / (em1 * em1)
    }
}

/// `asinh(exp(L))`: the inverse of `L = ln(sinh(w))`, valid for any `L`
/// including values whose exponential overflows.
pub fn asinh_exp(l: f64) -> f64 {
    if l > 700.0 {
        // asinh(z) = ln(2z) + O(z^{-2}); the correction is below f64
        // resolution long before exp(l) overflows.
        l + std::f64::consts::LN_2
    } else {
        l.exp().asinh()
    }
}
