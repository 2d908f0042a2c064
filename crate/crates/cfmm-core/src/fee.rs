//! Swaps under a proportional fee, and the quoting spreads fees induce.
//!
//! The fee structure of record charges γ of each *marginal* unit: selling
//! an infinitesimal ds of asset A pays out (1−γ)·P per unit at the pool's
//! current marginal price, so the cumulative payout solves the initial
//! value problem
//!
//! ```text
//! Y'(s) = (1−γ) · P(a + s, b − Y(s)),        Y(0) = 0,
//! ```
//!
//! integrated over the sold amount (and symmetrically X'(s) =
//! (1−γ)/P(a − X, b + s) when selling asset B). Two catalog designs admit
//! closed forms — the constant-product pool and the separable sinh pool at
//! q = 1 — and those are used whenever they apply; every other model is
//! integrated with an adaptive embedded pair, with dense output driving
//! the split-trade diagnostics. At γ = 0 the problem collapses to the
//! fee-free level-set swap and is delegated outright; at γ = 1 the payout
//! is identically zero.
//!
//! Two simpler conventions are provided for comparison: charging the fee
//! on the sold amount up front (quote Y((1−γ)x), a bulk discount) or on
//! the bought amount after (quote (1−γ)Y(x), a splitting incentive). The
//! marginal structure sits between them and is the one indifferent to
//! splitting a trade.
//!
//! A fee level also turns the single oracle price into a spread: the pool
//! buys A at bid = (1−γ)·P and sells at ask = P/(1−γ).

use crate::error::AmmError;
use crate::model::{AmmModel, Reserves, SdammUtility};
use crate::numerics::{hyper, ode};
use crate::oracle;
use crate::swap;

/// Relative local-error tolerance for the fee ODE.
pub const FEE_ODE_RTOL: f64 = 1e-10;

/// Absolute local-error tolerance, scaled by the counter-reserve.
pub const FEE_ODE_ATOL_SCALE: f64 = 1e-12;

/// Exhaustion guard: integration aborts once the payout reaches
/// (1 − `EXHAUSTION_MARGIN`) of the counter-reserve, since the marginal
/// price may blow up as the reserve empties.
pub const EXHAUSTION_MARGIN: f64 = 1e-13;

/// A validated fee level γ ∈ [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeeLevel(f64);

impl FeeLevel {
    /// # Errors
    /// [`AmmError::InvalidFee`] unless 0 ≤ γ ≤ 1.
    pub fn new(gamma: f64) -> Result<FeeLevel, AmmError> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(AmmError::InvalidFee { gamma });
        }
        Ok(FeeLevel(gamma))
    }

    pub fn gamma(self) -> f64 {
        self.0
    }
}

/// How a fee swap was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeeMethod {
    Ode,
    ClosedForm,
}

impl FeeMethod {
    /// Stable label for reports.
    pub fn label(self) -> &'static str {
        match self {
            FeeMethod::Ode => "ode",
            FeeMethod::ClosedForm => "closed-form",
        }
    }
}

/// Integration diagnostics; all zero for closed-form results.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverStats {
    /// Accepted steps.
    pub steps: usize,
    /// Largest scaled local-error estimate among accepted steps.
    pub max_error: f64,
}

impl SolverStats {
    fn exact() -> SolverStats {
        SolverStats { steps: 0, max_error: 0.0 }
    }
}

/// Result of a fee swap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeeSwapResult {
    /// Amount of the bought asset paid out to the trader.
    pub output: f64,
    /// Reserves after the trade (the full input enters the pool).
    pub post_reserves: Reserves,
    pub solver_stats: SolverStats,
    pub method: FeeMethod,
}

/// Sells `x` of asset A under marginal-price fee `fee`.
///
/// # Input
/// * `r` — pre-trade reserves
/// * `x` — amount of A sold, ≥ 0
/// * `fee` — fee level γ
///
/// # Output
/// The integrated (or closed-form) payout; γ = 0 delegates to the
/// fee-free swap, γ = 1 pays zero.
///
/// # Errors
/// Input and model errors as for [`swap::swap_y`];
/// [`AmmError::IntegrationFailed`] when the trade would exhaust the
/// counter-reserve or the step size underflows, carrying the last valid
/// state.
pub fn swap_y_fee(
    model: &AmmModel,
    r: Reserves,
    x: f64,
    fee: FeeLevel,
) -> Result<FeeSwapResult, AmmError> {
    model.validate()?;
    if !(x >= 0.0) || !x.is_finite() || !(r.a() + x).is_finite() {
        return Err(AmmError::InvalidInput {
            name: "x",
            value: x,
            constraint: "0 <= x, finite",
        });
    }
    let gamma = fee.gamma();
    if gamma == 0.0 {
        let q = swap::swap_y(model, r, x)?;
        return Ok(FeeSwapResult {
            output: q.output_amount,
            post_reserves: q.post_reserves,
            solver_stats: SolverStats::exact(),
            method: FeeMethod::ClosedForm,
        });
    }
    if gamma == 1.0 || x == 0.0 {
        return Ok(FeeSwapResult {
            output: 0.0,
            post_reserves: Reserves::post_trade(r.a() + x, r.b()),
            solver_stats: SolverStats::exact(),
            method: FeeMethod::ClosedForm,
        });
    }
    if let Some(result) = closed_y(model, r, x, gamma) {
        return Ok(result);
    }
    ode_swap_y(model, r, x, gamma)
}

/// Sells `y` of asset B under marginal-price fee `fee`. Mirror of
/// [`swap_y_fee`], integrating 1/P.
pub fn swap_x_fee(
    model: &AmmModel,
    r: Reserves,
    y: f64,
    fee: FeeLevel,
) -> Result<FeeSwapResult, AmmError> {
    model.validate()?;
    if !(y >= 0.0) || !y.is_finite() || !(r.b() + y).is_finite() {
        return Err(AmmError::InvalidInput {
            name: "y",
            value: y,
            constraint: "0 <= y, finite",
        });
    }
    let gamma = fee.gamma();
    if gamma == 0.0 {
        let q = swap::swap_x(model, r, y)?;
        return Ok(FeeSwapResult {
            output: q.output_amount,
            post_reserves: q.post_reserves,
            solver_stats: SolverStats::exact(),
            method: FeeMethod::ClosedForm,
        });
    }
    if gamma == 1.0 || y == 0.0 {
        return Ok(FeeSwapResult {
            output: 0.0,
            post_reserves: Reserves::post_trade(r.a(), r.b() + y),
            solver_stats: SolverStats::exact(),
            method: FeeMethod::ClosedForm,
        });
    }
    if let Some(result) = closed_x(model, r, y, gamma) {
        return Ok(result);
    }
    ode_swap_x(model, r, y, gamma)
}

/// The exact closed form of the marginal-price fee swap, for the models
/// that have one (the constant-product pool and the separable sinh pool at
/// q = 1); `None` signals the caller to use the ODE path.
///
/// # Errors
/// Input validation as for [`swap_y_fee`]; the closed forms themselves
/// cannot fail.
pub fn swap_y_fee_closed(
    model: &AmmModel,
    r: Reserves,
    x: f64,
    fee: FeeLevel,
) -> Result<Option<FeeSwapResult>, AmmError> {
    model.validate()?;
    if !(x >= 0.0) || !x.is_finite() || !(r.a() + x).is_finite() {
        return Err(AmmError::InvalidInput {
            name: "x",
            value: x,
            constraint: "0 <= x, finite",
        });
    }
    Ok(closed_y(model, r, x, fee.gamma()))
}

/// Sells `x` of asset A through the fee ODE unconditionally, ignoring any
/// closed form the model has. [`swap_y_fee`] is the right entry point for
/// quoting; this one exists so the integrator can be cross-validated
/// against the closed forms it normally defers to.
///
/// # Errors
/// As for [`swap_y_fee`].
pub fn swap_y_fee_ode(
    model: &AmmModel,
    r: Reserves,
    x: f64,
    fee: FeeLevel,
) -> Result<FeeSwapResult, AmmError> {
    model.validate()?;
    if !(x >= 0.0) || !x.is_finite() || !(r.a() + x).is_finite() {
        return Err(AmmError::InvalidInput {
            name: "x",
            value: x,
            constraint: "0 <= x, finite",
        });
    }
    if x == 0.0 {
        return Ok(FeeSwapResult {
            output: 0.0,
            post_reserves: r,
            solver_stats: SolverStats::exact(),
            method: FeeMethod::Ode,
        });
    }
    ode_swap_y(model, r, x, fee.gamma())
}

/// Sells `y` of asset B through the fee ODE unconditionally. Mirror of
/// [`swap_y_fee_ode`].
///
/// # Errors
/// As for [`swap_x_fee`].
pub fn swap_x_fee_ode(
    model: &AmmModel,
    r: Reserves,
    y: f64,
    fee: FeeLevel,
) -> Result<FeeSwapResult, AmmError> {
    model.validate()?;
    if !(y >= 0.0) || !y.is_finite() || !(r.b() + y).is_finite() {
        return Err(AmmError::InvalidInput {
            name: "y",
            value: y,
            constraint: "0 <= y, finite",
        });
    }
    if y == 0.0 {
        return Ok(FeeSwapResult {
            output: 0.0,
            post_reserves: r,
            solver_stats: SolverStats::exact(),
            method: FeeMethod::Ode,
        });
    }
    ode_swap_x(model, r, y, fee.gamma())
}

/// Fee charged on the sold amount up front: the trader's payout is the
/// fee-free quote on the reduced input, Y((1−γ)·x). The withheld γ·x stays
/// in asset A. Bulk trades beat split execution under this convention.
pub fn swap_fee_on_sold(
    model: &AmmModel,
    r: Reserves,
    x: f64,
    fee: FeeLevel,
) -> Result<f64, AmmError> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(AmmError::InvalidInput {
            name: "x",
            value: x,
            constraint: "0 <= x, finite",
        });
    }
    Ok(swap::swap_y(model, r, (1.0 - fee.gamma()) * x)?.output_amount)
}

/// Fee charged on the bought amount after the trade: the trader receives
/// (1−γ)·Y(x) of the fee-free payout, the withheld γ·Y staying in asset B.
/// Split execution beats bulk trades under this convention.
pub fn swap_fee_on_bought(
    model: &AmmModel,
    r: Reserves,
    x: f64,
    fee: FeeLevel,
) -> Result<f64, AmmError> {
    Ok((1.0 - fee.gamma()) * swap::swap_y(model, r, x)?.output_amount)
}

/// The two-sided quote a fee level induces around the oracle price:
/// bid = (1−γ)·P for selling A to the pool, ask = P/(1−γ) for buying A.
///
/// # Errors
/// [`AmmError::InvalidFee`] unless 0 < γ < 1 (at the endpoints the spread
/// degenerates to a point or a half-line).
pub fn bid_ask(model: &AmmModel, r: Reserves, fee: FeeLevel) -> Result<(f64, f64), AmmError> {
    let gamma = fee.gamma();
    if gamma <= 0.0 || gamma >= 1.0 {
        return Err(AmmError::InvalidFee { gamma });
    }
    let p = oracle::price(model, r)?;
    Ok(((1.0 - gamma) * p, p / (1.0 - gamma)))
}

/// Closed forms for selling A, valid for every γ ∈ [0, 1].
fn closed_y(model: &AmmModel, r: Reserves, x: f64, gamma: f64) -> Option<FeeSwapResult> {
    let (a, b) = (r.a(), r.b());
    let y = match model {
        // b·(1 − (a/(a+x))^(1−γ)), written through expm1/ln_1p so tiny
        // trades keep full precision.
        AmmModel::UniswapV2 => -b * (-(1.0 - gamma) * (x / a).ln_1p()).exp_m1(),
        AmmModel::Sdamm(SdammUtility::Sinh { c, q }) if *q == 1.0 => {
            // b − asinh(sinh(Cb)·(sinh(Ca)/sinh(C(a+x)))^(1−γ))/C, carried
            // in log space so large arguments cannot overflow.
            let l = hyper::ln_sinh(c * b)
                + (1.0 - gamma) * (hyper::ln_sinh(c * a) - hyper::ln_sinh(c * (a + x)));
            b - hyper::asinh_exp(l) / c
        }
        _ => return None,
    };
    Some(FeeSwapResult {
        output: y,
        post_reserves: Reserves::post_trade(a + x, b - y),
        solver_stats: SolverStats::exact(),
        method: FeeMethod::ClosedForm,
    })
}

/// Closed forms for selling B; mirrors [`closed_y`].
fn closed_x(model: &AmmModel, r: Reserves, y: f64, gamma: f64) -> Option<FeeSwapResult> {
    let (a, b) = (r.a(), r.b());
    let x = match model {
        AmmModel::UniswapV2 => -a * (-(1.0 - gamma) * (y / b).ln_1p()).exp_m1(),
        AmmModel::Sdamm(SdammUtility::Sinh { c, q }) if *q == 1.0 => {
            let l = hyper::ln_sinh(c * a)
                + (1.0 - gamma) * (hyper::ln_sinh(c * b) - hyper::ln_sinh(c * (b + y)));
            a - hyper::asinh_exp(l) / c
        }
        _ => return None,
    };
    Some(FeeSwapResult {
        output: x,
        post_reserves: Reserves::post_trade(a - x, b + y),
        solver_stats: SolverStats::exact(),
        method: FeeMethod::ClosedForm,
    })
}

fn ode_swap_y(
    model: &AmmModel,
    r: Reserves,
    x: f64,
    gamma: f64,
) -> Result<FeeSwapResult, AmmError> {
    let (a, b) = (r.a(), r.b());
    // Rejected trial steps may overshoot the counter-reserve; the floor
    // keeps those stage evaluations well defined, while accepted steps
    // that genuinely reach the reserve trip the y_stop error.
    let floor = b * EXHAUSTION_MARGIN;
    let rhs = |s: f64, y: f64| -> Result<f64, AmmError> {
        let point = Reserves::new(a + s, (b - y).max(floor))?;
        Ok((1.0 - gamma) * oracle::price(model, point)?)
    };
    let opt = ode::OdeOptions::new(FEE_ODE_RTOL, FEE_ODE_ATOL_SCALE * b)
        .with_stop(b * (1.0 - EXHAUSTION_MARGIN));
    let out = ode::integrate(rhs, (0.0, x), 0.0, &opt)?;
    Ok(FeeSwapResult {
        output: out.y,
        post_reserves: Reserves::post_trade(a + x, b - out.y),
        solver_stats: SolverStats { steps: out.steps, max_error: out.max_scaled_error },
        method: FeeMethod::Ode,
    })
}

fn ode_swap_x(
    model: &AmmModel,
    r: Reserves,
    y: f64,
    gamma: f64,
) -> Result<FeeSwapResult, AmmError> {
    let (a, b) = (r.a(), r.b());
    let floor = a * EXHAUSTION_MARGIN;
    let rhs = |s: f64, x: f64| -> Result<f64, AmmError> {
        let point = Reserves::new((a - x).max(floor), b + s)?;
        Ok((1.0 - gamma) / oracle::price(model, point)?)
    };
    let opt = ode::OdeOptions::new(FEE_ODE_RTOL, FEE_ODE_ATOL_SCALE * a)
        .with_stop(a * (1.0 - EXHAUSTION_MARGIN));
    let out = ode::integrate(rhs, (0.0, y), 0.0, &opt)?;
    Ok(FeeSwapResult {
        output: out.y,
        post_reserves: Reserves::post_trade(a - out.y, b + y),
        solver_stats: SolverStats { steps: out.steps, max_error: out.max_scaled_error },
        method: FeeMethod::Ode,
    })
}
