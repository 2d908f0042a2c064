//! Adaptive embedded Runge-Kutta integration (Dormand-Prince 5(4)).
//!
//! Scalar initial-value problems y' = f(s, y) solved with the classic
//! DOPRI5 pair: fifth-order solution, embedded fourth-order error estimate,
//! first-same-as-last (FSAL) stage reuse, and the degree-four dense-output
//! interpolant for sampling the solution inside accepted steps.
//!
//! Error control is standard: a step is accepted when
//!
//! ```text
//! |local error| <= atol + rtol * max(|y|, |y_new|)
//! ```
//!
//! and the next step size scales with the (1/5)-th root of the error ratio,
//! clamped to avoid thrashing. Integrations can carry a stop bound on y
//! (used for reserve exhaustion): crossing it aborts with an explicit error
//! holding the state at the crossing, localized with the dense interpolant,
//! never a silent clamp.

use crate::error::AmmError;

/// Hard cap on total attempted steps per integration.
const MAX_STEPS_DEFAULT: usize = 100_000;

/// Step-size safety factor applied to the optimal-step estimate.
const SAFETY: f64 = 0.9;

/// Never shrink a step by more than this factor at once.
const MIN_SCALE: f64 = 0.2;

/// Never grow a step by more than this factor at once.
const MAX_SCALE: f64 = 10.0;

// Dormand-Prince tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
// Fifth-minus-fourth-order weights for the error estimate.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
// Dense-output weights.
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Integration controls.
#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    /// Relative local-error tolerance.
    pub rtol: f64,
    /// Absolute local-error tolerance (caller scales it to the problem).
    pub atol: f64,
    /// Abort bound: an accepted step ending at `y >= y_stop` fails with a
    /// reserve-exhaustion error carrying the state where the bound was
    /// crossed.
    pub y_stop: Option<f64>,
    /// Step budget; defaults to a generous cap.
    pub max_steps: usize,
}

impl OdeOptions {
    pub fn new(rtol: f64, atol: f64) -> Self {
        OdeOptions { rtol, atol, y_stop: None, max_steps: MAX_STEPS_DEFAULT }
    }

    pub fn with_stop(mut self, y_stop: f64) -> Self {
        self.y_stop = Some(y_stop);
        self
    }
}

/// Result of a successful integration.
#[derive(Debug, Clone, Copy)]
pub struct OdeOutcome {
    /// Solution value at the end of the span.
    pub y: f64,
    /// Accepted steps taken.
    pub steps: usize,
    /// Largest scaled local-error estimate among accepted steps (≤ 1 by
    /// construction; reported for solver diagnostics).
    pub max_scaled_error: f64,
}

/// One accepted step plus its dense-output coefficients.
struct DenseStep {
    s: f64,
    h: f64,
    rcont: [f64; 5],
}

impl DenseStep {
    /// Evaluate the quartic interpolant at `s` within `[self.s, self.s + h]`.
    fn eval(&self, s: f64) -> f64 {
        let theta = (s - self.s) / self.h;
        let theta1 = 1.0 - theta;
        let [r1, r2, r3, r4, r5] = self.rcont;
        r1 + theta * (r2 + theta1 * (r3 + theta * (r4 + theta1 * r5)))
    }

    /// Bisect for the point where the interpolant first reaches `level`.
    ///
    /// Callers guarantee the solution starts below `level` and ends at or
    /// above it, so a sign change is bracketed by construction (the
    /// interpolant reproduces both endpoint values exactly).
    fn crossing(&self, level: f64) -> f64 {
        let (mut lo, mut hi) = (self.s, self.s + self.h);
        for _ in 0..64 {
            let mid = 0.5 * (lo + hi);
            if self.eval(mid) < level {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }
}

/// Integrates y' = f(s, y) from `span.0` to `span.1` starting at `y0`.
///
/// # Errors
/// * [`AmmError::IntegrationFailed`] on step-size underflow, step-budget
///   exhaustion, or crossing `y_stop`; the error carries the last accepted
///   state.
/// * Errors returned by `f` propagate unchanged.
pub fn integrate<F>(f: F, span: (f64, f64), y0: f64, opt: &OdeOptions) -> Result<OdeOutcome, AmmError>
where
    F: FnMut(f64, f64) -> Result<f64, AmmError>,
{
    let mut sink = |_: &DenseStep| {};
    drive(f, span, y0, opt, &mut sink)
}

/// Integrates from 0 to `s_end` and evaluates the dense interpolant at each
/// of the ascending `samples` (all within `[0, s_end]`).
///
/// # Output
/// Solution values at the sample points, plus the integration outcome.
///
/// # Errors
/// As for [`integrate`].
pub fn integrate_sampled<F>(
    f: F,
    s_end: f64,
    y0: f64,
    samples: &[f64],
    opt: &OdeOptions,
) -> Result<(Vec<f64>, OdeOutcome), AmmError>
where
    F: FnMut(f64, f64) -> Result<f64, AmmError>,
{
    debug_assert!(samples.windows(2).all(|w| w[0] <= w[1]), "samples must be ascending");
    let mut values = Vec::with_capacity(samples.len());
    let mut next = 0usize;
    // Samples at exactly s = 0 (the usual first grid point) precede any step.
    while next < samples.len() && samples[next] <= 0.0 {
        values.push(y0);
        next += 1;
    }
    let mut sink = |step: &DenseStep| {
        while next < samples.len() && samples[next] <= step.s + step.h {
            values.push(step.eval(samples[next]));
            next += 1;
        }
    };
    let outcome = drive(f, (0.0, s_end), y0, opt, &mut sink)?;
    // Trailing samples that sit exactly on s_end within roundoff.
    while next < samples.len() {
        values.push(outcome.y);
        next += 1;
    }
    Ok((values, outcome))
}

fn drive<F>(
    mut f: F,
    (s0, s1): (f64, f64),
    y0: f64,
    opt: &OdeOptions,
    on_step: &mut dyn FnMut(&DenseStep),
) -> Result<OdeOutcome, AmmError>
where
    F: FnMut(f64, f64) -> Result<f64, AmmError>,
{
    let span = s1 - s0;
    if span == 0.0 {
        return Ok(OdeOutcome { y: y0, steps: 0, max_scaled_error: 0.0 });
    }
    debug_assert!(span > 0.0, "integration runs forward");

    let mut s = s0;
    let mut y = y0;
    let mut k1 = f(s, y)?;
    let mut h = 0.01 * span;
    let mut steps = 0usize;
    let mut max_err = 0.0f64;
    let mut attempts = 0usize;

    while s < s1 {
        attempts += 1;
        if attempts > opt.max_steps {
            return Err(AmmError::IntegrationFailed {
                reason: "step budget exhausted",
                s_reached: s,
                value_reached: y,
            });
        }
        // Land exactly on the endpoint rather than interpolating past it.
        if s + h * 1.0001 >= s1 {
            h = s1 - s;
            // `s += h` rounds, so the landing can stop a few ulps short of
            // the endpoint; the leftover sliver is below integration
            // accuracy and retrying it would underflow the step size.
            if h <= f64::EPSILON * 4.0 * s1.abs() {
                break;
            }
        }
        if h <= f64::EPSILON * 4.0 * s.abs().max(span.abs()) {
            return Err(AmmError::IntegrationFailed {
                reason: "step size underflow",
                s_reached: s,
                value_reached: y,
            });
        }

        let k2 = f(s + C2 * h, y + h * (A21 * k1))?;
        let k3 = f(s + C3 * h, y + h * (A31 * k1 + A32 * k2))?;
        let k4 = f(s + C4 * h, y + h * (A41 * k1 + A42 * k2 + A43 * k3))?;
        let k5 = f(s + C5 * h, y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4))?;
        let k6 = f(s + h, y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5))?;
        let y_new = y + h * (A71 * k1 + A73 * k3 + A74 * k4 + A75 * k5 + A76 * k6);
        let k7 = f(s + h, y_new)?;

        let err_raw = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
        let sk = opt.atol + opt.rtol * y.abs().max(y_new.abs());
        let err = (err_raw / sk).abs();

        if err <= 1.0 {
            // Accepted: publish dense coefficients, advance, adapt h upward.
            let ydiff = y_new - y;
            let bspl = h * k1 - ydiff;
            let rcont = [
                y,
                ydiff,
                bspl,
                ydiff - h * k7 - bspl,
                h * (D1 * k1 + D3 * k3 + D4 * k4 + D5 * k5 + D6 * k6 + D7 * k7),
            ];
            let dense = DenseStep { s, h, rcont };
            on_step(&dense);

            if let Some(cap) = opt.y_stop {
                if y_new >= cap {
                    // The bound was crossed somewhere inside this step; the
                    // interpolant localizes where, so the error reports the
                    // state at the crossing rather than the step endpoint.
                    return Err(AmmError::IntegrationFailed {
                        reason: "counter reserve exhausted",
                        s_reached: dense.crossing(cap),
                        value_reached: y_new.min(cap),
                    });
                }
            }

            s += h;
            y = y_new;
            k1 = k7; // FSAL
            steps += 1;
            max_err = max_err.max(err);

            let scale = if err == 0.0 { MAX_SCALE } else { (SAFETY * err.powf(-0.2)).clamp(MIN_SCALE, MAX_SCALE) };
            h *= scale;
        } else {
            // Rejected: shrink and retry (never grow on a rejected step).
            h *= (SAFETY * err.powf(-0.2)).clamp(MIN_SCALE, 1.0);
        }
    }

    Ok(OdeOutcome { y, steps, max_scaled_error: max_err })
}
