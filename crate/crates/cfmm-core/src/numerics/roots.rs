//! Bracketed scalar root finding: bisection with an optional Newton polish.
//!
//! Every solve in this crate starts from a sign-changing bracket, so plain
//! bisection already guarantees convergence; the Newton polish afterwards
//! buys back the last few digits cheaply when a derivative is available.
//! Tolerances are absolute in the unknown (callers scale them, e.g.
//! `1e-12 * b` for a swap output bounded by the reserve `b`).

use crate::error::AmmError;

/// Hard cap on bisection iterations; 200 halvings shrink any finite bracket
/// far below `f64` resolution, so hitting the cap means a logic error.
pub const MAX_BISECTION_STEPS: usize = 200;

/// Newton refinement iterations applied after bisection has converged.
const NEWTON_POLISH_STEPS: usize = 3;

/// Finds the root of `f` inside `[lo, hi]`, where `f(lo)` and `f(hi)` have
/// opposite signs (either endpoint value may be infinite).
///
/// # Input
/// * `f` — continuous function with a sign change on the bracket
/// * `lo`, `hi` — bracket endpoints, `lo < hi`
/// * `tol` — absolute tolerance on the root location
///
/// # Output
/// The root to within `tol` (or to `f64` resolution, whichever is coarser).
///
/// # Errors
/// [`AmmError::BracketFailed`] when the endpoint values do not straddle zero.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64, AmmError> {
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(AmmError::BracketFailed { lo, hi, f_lo, f_hi });
    }

    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = f_lo;
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
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
    Ok(0.5 * (lo + hi))
}

/// Bisection followed by a short Newton polish using the derivative `df`.
///
/// The polish never leaves the original bracket: a Newton step that lands
/// outside `[lo, hi]`, or divides by a vanishing derivative, is discarded
/// and the bisection result stands. This keeps the guaranteed-convergence
/// property while typically reaching machine accuracy.
///
/// # Errors
/// Same as [`bisect`].
pub fn bisect_newton<F, G>(
    mut f: F,
    mut df: G,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64, AmmError>
where
    F: FnMut(f64) -> f64,
    G: FnMut(f64) -> f64,
{
    let mut x = bisect(&mut f, lo, hi, tol)?;
    for _ in 0..NEWTON_POLISH_STEPS {
        let fx = f(x);
        if fx == 0.0 {
            break;
        }
        let dfx = df(x);
        if dfx == 0.0 || !dfx.is_finite() {
            break;
        }
        let next = x - fx / dfx;
        if !(lo..=hi).contains(&next) || !next.is_finite() {
            break;
        }
        x = next;
    }
    Ok(x)
}

/// Expands `hi` geometrically from `start` until `f` changes sign relative
/// to `f(lo)`, then solves on the discovered bracket.
///
/// # Input
/// * `lo` — fixed left endpoint with known-sign value
/// * `start` — initial right endpoint guess (> `lo`)
/// * `growth` — bracket expansion factor per attempt (> 1)
/// * `max_hi` — give-up bound for the right endpoint
///
/// # Errors
/// [`AmmError::BracketFailed`] when no sign change appears before `max_hi`;
/// the error carries the furthest interval examined.
pub fn bisect_expanding<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    start: f64,
    growth: f64,
    max_hi: f64,
    tol: f64,
) -> Result<f64, AmmError> {
    debug_assert!(growth > 1.0);
    let f_lo = f(lo);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let mut hi = start.max(lo + tol);
    loop {
        let f_hi = f(hi);
        if f_hi == 0.0 {
            return Ok(hi);
        }
        if !f_hi.is_nan() && f_hi.signum() != f_lo.signum() {
            return bisect(f, lo, hi, tol);
        }
        if hi >= max_hi {
            return Err(AmmError::BracketFailed { lo, hi, f_lo, f_hi });
        }
        hi = (hi * growth).min(max_hi);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_cubic_root() {
        // x³ + 8x − 120 has its real root between 0 and 10.
        let f = |x: f64| x * x * x + 8.0 * x - 120.0;
        let Ok(root) = bisect(f, 0.0, 10.0, 1e-14) else {
            panic!("bracket should be valid");
        };
        assert!(f(root).abs() < 1e-9, "residual too large: {}", f(root));
    }

    #[test]
    fn bisect_accepts_infinite_endpoint_values() {
        // ln(x) → −∞ at 0⁺; the bracket [0, 2] still straddles the root at 1.
        let f = |x: f64| x.ln();
        let Ok(root) = bisect(f, 0.0, 2.0, 1e-14) else {
            panic!("bracket should be valid");
        };
        assert!((root - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bisect_rejects_same_sign_bracket() {
        let result = bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12);
        let Err(AmmError::BracketFailed { .. }) = result else {
            panic!("expected BracketFailed, got {result:?}");
        };
    }

    #[test]
    fn newton_polish_reaches_machine_accuracy() {
        let f = |x: f64| x * x - 2.0;
        let df = |x: f64| 2.0 * x;
        let Ok(root) = bisect_newton(f, df, 0.0, 2.0, 1e-8) else {
            panic!("bracket should be valid");
        };
        // polish should do much better than the 1e-8 bisection tolerance
        assert!((root - 2.0_f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn expanding_bracket_walks_out_to_the_root() {
        let f = |x: f64| x - 1000.0;
        let Ok(root) = bisect_expanding(f, 0.0, 1.0, 2.0, 1e9, 1e-10) else {
            panic!("expansion should find the sign change");
        };
        assert!((root - 1000.0).abs() < 1e-6);
    }

    #[test]
    fn expanding_bracket_reports_failure_beyond_cap() {
        let result = bisect_expanding(|_| 1.0, 0.0, 1.0, 2.0, 1e6, 1e-10);
        let Err(AmmError::BracketFailed { hi, .. }) = result else {
            panic!("expected BracketFailed, got {result:?}");
        };
        assert!(hi >= 1e6);
    }
}
