//! Central finite differences, used as a cross-check oracle for analytic
//! derivatives and as the fallback for user-supplied utilities that provide
//! no derivatives of their own.
//!
//! Step sizes follow the standard truncation/roundoff balance for central
//! stencils: `h ~ eps^(1/3)` for first derivatives and `h ~ eps^(1/4)` for
//! second derivatives, both scaled by the coordinate magnitude.

/// Relative step for first-derivative stencils: cbrt(machine epsilon).
pub fn first_step(coord: f64) -> f64 {
    f64::EPSILON.cbrt() * coord.abs().max(1.0)
}

/// Relative step for second-derivative stencils: (machine epsilon)^(1/4).
pub fn second_step(coord: f64) -> f64 {
    f64::EPSILON.powf(0.25) * coord.abs().max(1.0)
}

/// Central first derivative `(f(x+h) - f(x-h)) / 2h` with the default step.
pub fn derivative<F: Fn(f64) -> f64>(f: F, x: f64) -> f64 {
    let h = first_step(x);
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Central second derivative `(f(x+h) - 2f(x) + f(x-h)) / h²`.
pub fn second_derivative<F: Fn(f64) -> f64>(f: F, x: f64) -> f64 {
    let h = second_step(x);
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

/// Mixed second partial via the four-point cross stencil
/// `(f(x+h,y+k) - f(x+h,y-k) - f(x-h,y+k) + f(x-h,y-k)) / 4hk`.
pub fn cross_derivative<F: Fn(f64, f64) -> f64>(f: F, x: f64, y: f64) -> f64 {
    let h = second_step(x);
    let k = second_step(y);
    (f(x + h, y + k) - f(x + h, y - k) - f(x - h, y + k) + f(x - h, y - k)) / (4.0 * h * k)
}

/// Relative step for third-derivative stencils: (machine epsilon)^(1/5).
pub fn third_step(coord: f64) -> f64 {
    f64::EPSILON.powf(0.2) * coord.abs().max(1.0)
}

/// Central third derivative via the five-point stencil
/// `(f(x+2h) - 2f(x+h) + 2f(x-h) - f(x-2h)) / 2h³`.
pub fn third_derivative<F: Fn(f64) -> f64>(f: F, x: f64) -> f64 {
    let h = third_step(x);
    (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h * h * h)
}
