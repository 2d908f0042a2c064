//! The Curve invariant D(x, y) and its derivatives.
//!
//! D is the unique nonnegative root of the cubic
//!
//! ```text
//! F(x, y, D) = D³ + 4(C−1)·x·y·D − 4C·(x+y)·x·y = 0,     C ≥ 1,
//! ```
//!
//! the two-asset form of the StableSwap-family invariant that interpolates
//! between a constant-sum and a constant-product rule. The associated
//! utility is `u = ln D`.
//!
//! Derivatives of D through third order come from implicit differentiation
//! of F rather than from differencing: near strong imbalance the root is
//! stiff in one coordinate and finite differences lose most of their digits
//! there, while the implicit forms stay exact. First derivatives follow from
//! `F_D·D_x + F_x = 0`; differentiating that relation twice more (F is
//! polynomial, so its own partials are explicit) yields the second- and
//! third-order formulas below.

use crate::error::AmmError;
use crate::numerics::jet::Jet3;
use crate::numerics::roots;

/// Residual contract: |F(x, y, D)| ≤ `RESIDUAL_RTOL` · max(1, 4C(x+y)xy).
pub const RESIDUAL_RTOL: f64 = 1e-10;

/// Relative bisection tolerance on D before the Newton polish.
const ROOT_RTOL: f64 = 1e-14;

/// Solves the invariant cubic for its unique nonnegative root.
///
/// The cubic has exactly one nonnegative root for x, y ≥ 0: F(0) =
/// −4C(x+y)xy ≤ 0 and F is eventually increasing, with F(2(x+y)) =
/// (x+y)·[8(x+y)² + 4Cxy − 8xy] > 0 because (x+y)² ≥ 4xy. Bisection on
/// [0, 2(x+y)] therefore always brackets, and a Newton polish with
/// F' = 3D² + 4(C−1)xy > 0 tightens the root to machine accuracy.
///
/// # Input
/// * `x`, `y` — reserves, closed quadrant (either may be 0)
/// * `c` — amplification parameter, C ≥ 1
///
/// # Output
/// D ≥ 0 with residual within the documented contract; `x = 0` or `y = 0`
/// gives D = 0 exactly.
///
/// # Errors
/// [`AmmError::InvalidParameter`] for C < 1 or non-finite C;
/// [`AmmError::OutOfDomain`] for negative or NaN coordinates.
pub fn curve_invariant(x: f64, y: f64, c: f64) -> Result<f64, AmmError> {
    if !(c >= 1.0) || !c.is_finite() {
        return Err(AmmError::InvalidParameter { param: "c", value: c, constraint: "C >= 1" });
    }
    if !(x >= 0.0) || !(y >= 0.0) {
        return Err(AmmError::OutOfDomain { x, y });
    }
    if x == 0.0 || y == 0.0 {
        return Ok(0.0);
    }
    let xy = x * y;
    let lin = 4.0 * (c - 1.0) * xy;
    let cnst = 4.0 * c * (x + y) * xy;
    let f = |d: f64| d * d * d + lin * d - cnst;
    let df = |d: f64| 3.0 * d * d + lin;
    let hi = 2.0 * (x + y);
    roots::bisect_newton(f, df, 0.0, hi, ROOT_RTOL * hi)
}

/// D together with all partial derivatives up to third order, packed as a
/// jet so `ln D` (and anything downstream) follows by jet composition.
///
/// Writing F_D, F_x, ... for the explicit partials of the cubic:
///
/// ```text
/// D_x   = −F_x / F_D
/// D_xx  = −(F_DD·D_x² + 2F_Dx·D_x + F_xx) / F_D
/// D_xxx = −(3F_DD·D_x·D_xx + 3F_Dx·D_xx + F_DDD·D_x³) / F_D
/// D_xxy = −(F_DDD·D_x²·D_y + F_DD·(D_y·D_xx + 2D_x·D_xy)
///           + F_Dy·D_xx + 2F_Dx·D_xy + 2F_Dxy·D_x + F_xxy) / F_D
/// ```
///
/// with the y-variants by symmetry. For this cubic: F_DD = 6D, F_DDD = 6,
/// F_Dx = 4(C−1)y, F_Dy = 4(C−1)x, F_Dxy = 4(C−1), F_xx = −8Cy,
/// F_yy = −8Cx, F_xy = 4(C−1)D − 8C(x+y), F_xxy = F_xyy = −8C, and all
/// remaining third partials vanish.
///
/// # Errors
/// As for [`curve_invariant`]; additionally requires a strictly positive
/// interior point.
pub fn curve_jet(x: f64, y: f64, c: f64) -> Result<Jet3, AmmError> {
    if !(x > 0.0) || !(y > 0.0) {
        return Err(AmmError::OutOfDomain { x, y });
    }
    let d = curve_invariant(x, y, c)?;
    let cm1 = c - 1.0;

    let f_d = 3.0 * d * d + 4.0 * cm1 * x * y;
    let f_x = 4.0 * cm1 * y * d - 4.0 * c * (2.0 * x * y + y * y);
    let f_y = 4.0 * cm1 * x * d - 4.0 * c * (x * x + 2.0 * x * y);
    let dx = -f_x / f_d;
    let dy = -f_y / f_d;

    let f_dd = 6.0 * d;
    let f_dx = 4.0 * cm1 * y;
    let f_dy = 4.0 * cm1 * x;
    let f_xx = -8.0 * c * y;
    let f_yy = -8.0 * c * x;
    let f_xy = 4.0 * cm1 * d - 8.0 * c * (x + y);
    let dxx = -(f_dd * dx * dx + 2.0 * f_dx * dx + f_xx) / f_d;
    let dyy = -(f_dd * dy * dy + 2.0 * f_dy * dy + f_yy) / f_d;
    let dxy = -(f_dd * dx * dy + f_dy * dx + f_dx * dy + f_xy) / f_d;

    // F_DDD = 6; F_xxy = F_xyy = −8C; F_Dxy = 4(C−1).
    let dxxx = -(3.0 * f_dd * dx * dxx + 3.0 * f_dx * dxx + 6.0 * dx * dx * dx) / f_d;
    let dyyy = -(3.0 * f_dd * dy * dyy + 3.0 * f_dy * dyy + 6.0 * dy * dy * dy) / f_d;
    let dxxy = -(6.0 * dx * dx * dy
        + f_dd * (dy * dxx + 2.0 * dx * dxy)
        + f_dy * dxx
        + 2.0 * f_dx * dxy
        + 8.0 * cm1 * dx
        - 8.0 * c)
        / f_d;
    let dxyy = -(6.0 * dy * dy * dx
        + f_dd * (dx * dyy + 2.0 * dy * dxy)
        + f_dx * dyy
        + 2.0 * f_dy * dxy
        + 8.0 * cm1 * dy
        - 8.0 * c)
        / f_d;

    Ok(Jet3 { v: d, dx, dy, dxx, dxy, dyy, dxxx, dxxy, dxyy, dyyy })
}
