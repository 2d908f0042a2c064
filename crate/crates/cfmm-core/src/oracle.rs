//! The price oracle: the marginal exchange rate a pool quotes at rest.
//!
//! A pool with utility u quotes asset A (in units of B per unit of A) at
//! the marginal rate of substitution
//!
//! ```text
//! P(x, y) = u_A(x, y) / u_B(x, y),
//! ```
//!
//! the price at which an infinitesimal trade leaves u unchanged. Its first
//! partials (P_A, P_B) say how the quote moves as reserves shift — a
//! well-behaved pool has P_A ≤ 0 and P_B ≥ 0, so buying A makes A dearer —
//! and its second partials enter the curvature quantity
//!
//! ```text
//! L = P_B·P_AA − (P·P_B + P_A)·P_AB + P·P_A·P_BB,
//! ```
//!
//! whose sign (L ≥ 0) governs whether fee income can compensate liquidity
//! providers for adverse price moves. Everything here is a quotient-rule
//! cascade over the utility jet, so derivative provenance (analytic or
//! finite-difference) follows the model's.

use crate::error::AmmError;
use crate::model::{utility_jet_with_source, AmmModel, DerivativeSource, Reserves};

/// Price and its partials through second order at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OraclePoint {
    /// P = u_A/u_B.
    pub price: f64,
    /// ∂P/∂x.
    pub p_a: f64,
    /// ∂P/∂y.
    pub p_b: f64,
    pub p_aa: f64,
    pub p_ab: f64,
    pub p_bb: f64,
    /// Provenance of the underlying utility derivatives.
    pub source: DerivativeSource,
}

/// Marginal price P = u_A/u_B at an interior point.
///
/// # Errors
/// Parameter errors from the model; additionally
/// [`AmmError::OutOfDomain`] if the gradient is degenerate (u_B = 0), which
/// cannot happen for the built-in catalog but can for custom utilities.
pub fn price(model: &AmmModel, r: Reserves) -> Result<f64, AmmError> {
    Ok(price_point(model, r)?.price)
}

/// First partials (P_A, P_B) of the price.
pub fn price_partials(model: &AmmModel, r: Reserves) -> Result<(f64, f64), AmmError> {
    let p = price_point(model, r)?;
    Ok((p.p_a, p.p_b))
}

/// Second partials (P_AA, P_AB, P_BB) of the price.
pub fn price_second_partials(
    model: &AmmModel,
    r: Reserves,
) -> Result<(f64, f64, f64), AmmError> {
    let p = price_point(model, r)?;
    Ok((p.p_aa, p.p_ab, p.p_bb))
}

/// The full oracle evaluation at one point.
///
/// With g = u_A and h = u_B the quotient rule gives
///
/// ```text
/// P_i  = (g_i·h − g·h_i) / h²
/// P_ij = (g_ij·h + g_i·h_j − g_j·h_i − g·h_ij) / h²
///        − 2·h_j·(g_i·h − g·h_i) / h³
/// ```
///
/// where every g- and h-partial is a slot of the third-order utility jet
/// (g_xy = u_xxy and so on).
pub fn price_point(model: &AmmModel, r: Reserves) -> Result<OraclePoint, AmmError> {
    let (jet, source) = utility_jet_with_source(model, r)?;
    let (g, h) = (jet.dx, jet.dy);
    if h == 0.0 || !g.is_finite() || !h.is_finite() {
        return Err(AmmError::OutOfDomain { x: r.a(), y: r.b() });
    }
    // Partials of g = u_A and h = u_B in jet slots.
    let (g_x, g_y, h_x, h_y) = (jet.dxx, jet.dxy, jet.dxy, jet.dyy);
    let (g_xx, g_xy, g_yy) = (jet.dxxx, jet.dxxy, jet.dxyy);
    let (h_xx, h_xy, h_yy) = (jet.dxxy, jet.dxyy, jet.dyyy);

    let h2 = h * h;
    let h3 = h2 * h;
    let n_x = g_x * h - g * h_x;
    let n_y = g_y * h - g * h_y;
    let p_a = n_x / h2;
    let p_b = n_y / h2;
    let p_aa = (g_xx * h - g * h_xx) / h2 - 2.0 * h_x * n_x / h3;
    let p_ab = (g_xy * h + g_x * h_y - g_y * h_x - g * h_xy) / h2 - 2.0 * h_y * n_x / h3;
    let p_bb = (g_yy * h - g * h_yy) / h2 - 2.0 * h_y * n_y / h3;

    Ok(OraclePoint { price: g / h, p_a, p_b, p_aa, p_ab, p_bb, source })
}

/// The liquidity-compensation curvature
/// `L = P_B·P_AA − (P·P_B + P_A)·P_AB + P·P_A·P_BB`.
///
/// L ≥ 0 at every point is the second-order condition under which the
/// divergence between pooling and holding can be offset by fee revenue.
pub fn liquidity_condition(model: &AmmModel, r: Reserves) -> Result<f64, AmmError> {
    let p = price_point(model, r)?;
    Ok(p.p_b * p.p_aa - (p.price * p.p_b + p.p_a) * p.p_ab + p.price * p.p_a * p.p_bb)
}
