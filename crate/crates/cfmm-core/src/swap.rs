//! Fee-free trade quoting and price-preserving liquidity deposits.
//!
//! A trade against a pool at reserves (a, b) moves along the level set of
//! the pool's utility: selling x of asset A pays out the largest y with
//!
//! ```text
//! u(a + x, b − y) ≥ u(a, b),       0 ≤ y ≤ b,
//! ```
//!
//! which for a strictly monotone, continuous u is the unique root of the
//! equality — except when even draining the pool leaves utility above the
//! starting level, in which case the supremum is the whole reserve and the
//! quote is flagged `exhausting`. Selling asset B mirrors the same rule.
//!
//! Liquidity deposits are the other reserve motion: a deposit (α, β) is
//! admissible when it preserves the quoted price, so that providing
//! liquidity is not itself a trade. For scale-invariant designs the
//! proportional deposit β = b·α/a does this exactly; for the rest the
//! matching β is solved from P(a+α, b+β) = P(a, b).

use std::f64::consts::LN_10;

use crate::error::AmmError;
use crate::model::{utility, AmmModel, Reserves};
use crate::numerics::roots;
use crate::oracle;

/// Relative tolerance on the post-trade counter-reserve for the swap
/// level-set root (an absolute tolerance on its logarithm).
pub const SWAP_RTOL: f64 = 1e-12;

/// Floor on the log of the post-trade counter-reserve, about 1e-304: a
/// remnant below this is not representable, so the payout is the whole
/// reserve to `f64` precision and the post state keeps the floor sliver.
const MIN_LOG_RESERVE: f64 = -700.0;

/// Relative price-preservation tolerance for deposits: a pooling plan is
/// accepted only if |P_after − P_before| ≤ `POOL_PRICE_RTOL` · P_before.
pub const POOL_PRICE_RTOL: f64 = 1e-9;

/// Expansion cap for the deposit solver, as a multiple of the starting
/// bracket guess.
const POOL_BRACKET_CAP: f64 = 1e9;

/// One quoted trade.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwapQuote {
    /// Amount of the sold asset paid in.
    pub input_amount: f64,
    /// Amount of the bought asset paid out.
    pub output_amount: f64,
    /// Reserves after the trade; on the boundary iff `exhausting`.
    pub post_reserves: Reserves,
    /// Average execution price `output/input`; `None` for a zero-size
    /// trade, where no average is defined.
    pub avg_price: Option<f64>,
    /// True when the payout is the entire counter-reserve because utility
    /// stays above its starting level even at full drain.
    pub exhausting: bool,
}

/// A forward trade and its reversal from the post-trade state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundTrip {
    pub forward: SwapQuote,
    pub back: SwapQuote,
    /// Input of the forward leg minus output of the back leg. Fee-free
    /// trades retrace the same level set, so this is zero up to solver
    /// tolerance; fees make it strictly positive.
    pub shortfall: f64,
}

/// A price-preserving liquidity deposit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoolingPlan {
    pub delta_a: f64,
    pub delta_b: f64,
    pub price_before: f64,
    pub price_after: f64,
    pub post_reserves: Reserves,
}

/// Evaluates the utility at a closed-quadrant point that is known to be
/// valid for a validated model. Failure here would be an internal
/// invariant violation, not a user error.
fn u_at(model: &AmmModel, x: f64, y: f64) -> f64 {
    let Ok(v) = utility(model, x, y) else {
        unreachable!("validated model evaluated inside the closed quadrant")
    };
    v
}

/// Quotes a sale of `x` units of asset A for asset B.
///
/// # Input
/// * `r` — pre-trade reserves
/// * `x` — amount of A sold, ≥ 0
///
/// # Output
/// The unique level-set quote, or the full counter-reserve flagged
/// `exhausting` when the supremum is not attained inside the reserve.
///
/// # Errors
/// [`AmmError::InvalidInput`] for a negative, NaN, or non-finite input;
/// [`AmmError::MonotonicityViolated`] when adding the sold asset fails to
/// raise utility (the quoting rule presumes strict monotonicity);
/// parameter errors from the model.
pub fn swap_y(model: &AmmModel, r: Reserves, x: f64) -> Result<SwapQuote, AmmError> {
    model.validate()?;
    if !(x >= 0.0) || !x.is_finite() || !(r.a() + x).is_finite() {
        return Err(AmmError::InvalidInput {
            name: "x",
            value: x,
            constraint: "0 <= x, finite",
        });
    }
    let (a, b) = (r.a(), r.b());
    let u0 = u_at(model, a, b);

    // A drained or degenerate starting state (reachable only through
    // post-trade chaining) makes every payout admissible.
    if u0 == f64::NEG_INFINITY {
        return Ok(SwapQuote {
            input_amount: x,
            output_amount: b,
            post_reserves: Reserves::post_trade(a + x, 0.0),
            avg_price: if x > 0.0 { Some(b / x) } else { None },
            exhausting: true,
        });
    }

    if x == 0.0 {
        // sup{ y : u(a, b−y) ≥ u0 }: zero under strict monotonicity, the
        // whole reserve for degenerate fixtures that never drop below u0.
        if u_at(model, a, 0.0) >= u0 {
            return Ok(SwapQuote {
                input_amount: 0.0,
                output_amount: b,
                post_reserves: Reserves::post_trade(a, 0.0),
                avg_price: None,
                exhausting: true,
            });
        }
        return Ok(SwapQuote {
            input_amount: 0.0,
            output_amount: 0.0,
            post_reserves: r,
            avg_price: None,
            exhausting: false,
        });
    }

    let gap = u_at(model, a + x, b) - u0;
    if gap <= 0.0 || gap.is_nan() {
        return Err(AmmError::MonotonicityViolated { x, utility_gap: gap });
    }

    if u_at(model, a + x, 0.0) >= u0 {
        return Ok(SwapQuote {
            input_amount: x,
            output_amount: b,
            post_reserves: Reserves::post_trade(a + x, 0.0),
            avg_price: Some(b / x),
            exhausting: true,
        });
    }

    let z = level_set_remnant(
        |z| u_at(model, a + x, z),
        |z| match Reserves::new(a + x, z) {
            Ok(point) => match crate::model::utility_gradient(model, point) {
                Ok((_, ub)) => ub,
                Err(_) => f64::NAN,
            },
            Err(_) => f64::NAN,
        },
        b,
        u0,
    )?;
    let y = (b - z).max(0.0);
    Ok(SwapQuote {
        input_amount: x,
        output_amount: y,
        post_reserves: Reserves::post_trade(a + x, z),
        avg_price: Some(y / x),
        exhausting: false,
    })
}

/// Quotes a sale of `y` units of asset B for asset A.
///
/// Mirror image of [`swap_y`]; the quote drains from the A reserve and
/// `avg_price` is in units of A per unit of B.
///
/// # Errors
/// As for [`swap_y`], with [`AmmError::MonotonicityViolated`] carrying the
/// sold amount of B.
pub fn swap_x(model: &AmmModel, r: Reserves, y: f64) -> Result<SwapQuote, AmmError> {
    model.validate()?;
    if !(y >= 0.0) || !y.is_finite() || !(r.b() + y).is_finite() {
        return Err(AmmError::InvalidInput {
            name: "y",
            value: y,
            constraint: "0 <= y, finite",
        });
    }
    let (a, b) = (r.a(), r.b());
    let u0 = u_at(model, a, b);

    if u0 == f64::NEG_INFINITY {
        return Ok(SwapQuote {
            input_amount: y,
            output_amount: a,
            post_reserves: Reserves::post_trade(0.0, b + y),
            avg_price: if y > 0.0 { Some(a / y) } else { None },
            exhausting: true,
        });
    }

    if y == 0.0 {
        if u_at(model, 0.0, b) >= u0 {
            return Ok(SwapQuote {
                input_amount: 0.0,
                output_amount: a,
                post_reserves: Reserves::post_trade(0.0, b),
                avg_price: None,
                exhausting: true,
            });
        }
        return Ok(SwapQuote {
            input_amount: 0.0,
            output_amount: 0.0,
            post_reserves: r,
            avg_price: None,
            exhausting: false,
        });
    }

    let gap = u_at(model, a, b + y) - u0;
    if gap <= 0.0 || gap.is_nan() {
        return Err(AmmError::MonotonicityViolated { x: y, utility_gap: gap });
    }

    if u_at(model, 0.0, b + y) >= u0 {
        return Ok(SwapQuote {
            input_amount: y,
            output_amount: a,
            post_reserves: Reserves::post_trade(0.0, b + y),
            avg_price: Some(a / y),
            exhausting: true,
        });
    }

    let z = level_set_remnant(
        |z| u_at(model, z, b + y),
        |z| match Reserves::new(z, b + y) {
            Ok(point) => match crate::model::utility_gradient(model, point) {
                Ok((ua, _)) => ua,
                Err(_) => f64::NAN,
            },
            Err(_) => f64::NAN,
        },
        a,
        u0,
    )?;
    let x = (a - z).max(0.0);
    Ok(SwapQuote {
        input_amount: y,
        output_amount: x,
        post_reserves: Reserves::post_trade(z, b + y),
        avg_price: Some(x / y),
        exhausting: false,
    })
}

/// Solves u(z) = u0 for the post-trade counter-reserve z ∈ (0, full],
/// where `value` is strictly increasing in z and sits above u0 at `full`
/// (the monotonicity gap checked by the callers).
///
/// The root is found in log space. A near-total payout leaves a remnant
/// many orders of magnitude below the reserve — for a boundary-diverging
/// utility it shrinks exponentially in the trade size — and an absolute
/// tolerance on the payout would then park the post state at the wrong
/// utility level entirely. An absolute tolerance on ln z is a relative
/// one on z, which keeps the post-trade utility within
/// elasticity · [`SWAP_RTOL`] of the level for every design here.
fn level_set_remnant(
    value: impl Fn(f64) -> f64,
    slope: impl Fn(f64) -> f64,
    full: f64,
    u0: f64,
) -> Result<f64, AmmError> {
    let g = |t: f64| value(t.exp()) - u0;
    let dg = |t: f64| {
        let z = t.exp();
        slope(z) * z
    };
    let t_hi = full.ln();
    if g(t_hi) <= 0.0 {
        // The monotonicity gap is below the counter-side roundoff: the
        // level passes within an ulp of the untouched reserve.
        return Ok(full);
    }
    // Walk down in doubling strides until the level is bracketed, or the
    // whole representable range is ruled out.
    let mut stride = LN_10;
    loop {
        let t_lo = (t_hi - stride).max(MIN_LOG_RESERVE);
        if !(g(t_lo) >= 0.0) {
            let t = roots::bisect_newton(g, dg, t_lo, t_hi, SWAP_RTOL)?;
            return Ok(t.exp().min(full));
        }
        if t_lo <= MIN_LOG_RESERVE {
            // Utility stays above the level all the way down to the
            // smallest representable remnant: pay out everything but the
            // floor sliver.
            return Ok(t_lo.exp());
        }
        stride *= 2.0;
    }
}

/// Sells `x` of asset A, then sells the proceeds back from the post-trade
/// state.
///
/// Without fees both legs run along the same level set, so the back leg
/// returns the original amount up to solver tolerance and `shortfall` is
/// numerically zero.
pub fn round_trip(model: &AmmModel, r: Reserves, x: f64) -> Result<RoundTrip, AmmError> {
    let forward = swap_y(model, r, x)?;
    let back = swap_x(model, forward.post_reserves, forward.output_amount)?;
    Ok(RoundTrip { forward, back, shortfall: forward.input_amount - back.output_amount })
}

/// Plans a deposit of `alpha` units of asset A plus however much of asset
/// B preserves the quoted price.
///
/// Scale-invariant designs (and the constant-price designs, where any
/// deposit preserves the price) use the proportional rule β = b·α/a, which
/// is exact. Otherwise β is solved from P(a+α, b+β) = P(a, b): adding A
/// alone lowers the quote and adding B raises it back, so the root is
/// bracketed by expanding β geometrically from the proportional guess.
///
/// # Errors
/// [`AmmError::InvalidInput`] for a non-positive deposit;
/// [`AmmError::InfeasiblePooling`] when no β within the search cap restores
/// the price, carrying the achievable price range;
/// [`AmmError::PriceNotPreserved`] if the solved deposit still misses the
/// price tolerance (a solver failure, not an input error).
pub fn pool_deposit(model: &AmmModel, r: Reserves, alpha: f64) -> Result<PoolingPlan, AmmError> {
    model.validate()?;
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(AmmError::InvalidInput {
            name: "alpha",
            value: alpha,
            constraint: "alpha > 0, finite",
        });
    }
    let p0 = oracle::price(model, r)?;
    let proportional = alpha * r.b() / r.a();

    if model.is_scale_invariant() || model.has_constant_price() {
        return finish_plan(model, r, alpha, proportional, p0);
    }

    let a1 = r.a() + alpha;
    let price_at = |beta: f64| -> f64 {
        let Ok(point) = Reserves::new(a1, r.b() + beta) else {
            return f64::NAN;
        };
        oracle::price(model, point).unwrap_or(f64::NAN)
    };
    let phi = |beta: f64| price_at(beta) - p0;

    if phi(0.0) >= 0.0 {
        // Adding A did not lower the quote; no nonnegative β can help
        // since adding B only raises it further.
        return Err(AmmError::InfeasiblePooling {
            target_price: p0,
            achievable_lo: price_at(0.0),
            achievable_hi: f64::INFINITY,
        });
    }

    let start = proportional.max(f64::MIN_POSITIVE);
    let max_hi = POOL_BRACKET_CAP * start.max(r.b());
    let tol = 1e-13 * start.max(r.b());
    let beta = match roots::bisect_expanding(phi, 0.0, start, 2.0, max_hi, tol) {
        Ok(beta) => beta,
        Err(AmmError::BracketFailed { hi, .. }) => {
            return Err(AmmError::InfeasiblePooling {
                target_price: p0,
                achievable_lo: price_at(0.0),
                achievable_hi: price_at(hi),
            });
        }
        Err(e) => return Err(e),
    };
    finish_plan(model, r, alpha, beta, p0)
}

/// Plans a deposit of `beta` units of asset B plus however much of asset A
/// preserves the quoted price. Mirror of [`pool_deposit`].
pub fn pool_deposit_b(model: &AmmModel, r: Reserves, beta: f64) -> Result<PoolingPlan, AmmError> {
    model.validate()?;
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(AmmError::InvalidInput {
            name: "beta",
            value: beta,
            constraint: "beta > 0, finite",
        });
    }
    let p0 = oracle::price(model, r)?;
    let proportional = beta * r.a() / r.b();

    if model.is_scale_invariant() || model.has_constant_price() {
        return finish_plan(model, r, proportional, beta, p0);
    }

    let b1 = r.b() + beta;
    let price_at = |alpha: f64| -> f64 {
        let Ok(point) = Reserves::new(r.a() + alpha, b1) else {
            return f64::NAN;
        };
        oracle::price(model, point).unwrap_or(f64::NAN)
    };
    // Adding B raises the quote; adding A lowers it back toward p0.
    let phi = |alpha: f64| price_at(alpha) - p0;

    if phi(0.0) <= 0.0 {
        return Err(AmmError::InfeasiblePooling {
            target_price: p0,
            achievable_lo: f64::NEG_INFINITY,
            achievable_hi: price_at(0.0),
        });
    }

    let start = proportional.max(f64::MIN_POSITIVE);
    let max_hi = POOL_BRACKET_CAP * start.max(r.a());
    let tol = 1e-13 * start.max(r.a());
    let alpha = match roots::bisect_expanding(phi, 0.0, start, 2.0, max_hi, tol) {
        Ok(alpha) => alpha,
        Err(AmmError::BracketFailed { hi, .. }) => {
            return Err(AmmError::InfeasiblePooling {
                target_price: p0,
                achievable_lo: price_at(hi),
                achievable_hi: price_at(0.0),
            });
        }
        Err(e) => return Err(e),
    };
    finish_plan(model, r, alpha, beta, p0)
}

/// Assembles the plan and enforces the price-preservation contract.
fn finish_plan(
    model: &AmmModel,
    r: Reserves,
    alpha: f64,
    beta: f64,
    p0: f64,
) -> Result<PoolingPlan, AmmError> {
    let post = Reserves::new(r.a() + alpha, r.b() + beta)?;
    let p1 = oracle::price(model, post)?;
    if (p1 - p0).abs() > POOL_PRICE_RTOL * p0.abs() {
        return Err(AmmError::PriceNotPreserved {
            price_before: p0,
            price_after: p1,
            tolerance: POOL_PRICE_RTOL * p0.abs(),
        });
    }
    Ok(PoolingPlan {
        delta_a: alpha,
        delta_b: beta,
        price_before: p0,
        price_after: p1,
        post_reserves: post,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn res(a: f64, b: f64) -> Reserves {
        let Ok(r) = Reserves::new(a, b) else { panic!() };
        r
    }

    #[test]
    fn constant_product_swap_matches_closed_form() {
        // u = ln x + ln y keeps x·y constant: y = b·x/(a+x).
        let m = AmmModel::uniswap_v2();
        let Ok(q) = swap_y(&m, res(100.0, 100.0), 50.0) else { panic!() };
        let want = 100.0 * 50.0 / 150.0;
        assert!((q.output_amount - want).abs() < 1e-9, "got {}", q.output_amount);
        assert!(!q.exhausting);
        assert_eq!(q.post_reserves.a(), 150.0);
        assert!((q.post_reserves.b() - (100.0 - want)).abs() < 1e-9);
        let Some(p) = q.avg_price else { panic!("nonzero trade must have an average price") };
        assert!((p - want / 50.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_swaps_across_the_catalog() {
        // Independent hand-derived payout formulas at (a, b) = (100, 50),
        // x = 10.
        let (a, b, x) = (100.0, 50.0, 10.0);
        let cases: Vec<(AmmModel, f64)> = vec![
            (AmmModel::uniswap_v2(), b * x / (a + x)),
            (
                AmmModel::balancer(0.75).unwrap(),
                b * (1.0 - (a / (a + x)).powf(3.0)),
            ),
            (
                AmmModel::uniswap_v3(1.0, 2.0).unwrap(),
                (2.0 + b) * x / (1.0 + a + x),
            ),
            (AmmModel::mstable(), x),
            (
                AmmModel::stable_swap(7.0).unwrap(),
                x * (7.0 + b) / (7.0 + a + x),
            ),
        ];
        for (model, want) in cases {
            let Ok(q) = swap_y(&model, res(a, b), x) else { panic!("{model}") };
            assert!(
                ((q.output_amount - want) / want).abs() < 1e-10,
                "{model}: {} vs closed form {want}",
                q.output_amount
            );
        }
    }

    #[test]
    fn frozen_high_precision_swaps() {
        let cases: Vec<(AmmModel, (f64, f64), f64, f64)> = vec![
            (
                AmmModel::sdamm_sinh(1.0, 1.0).unwrap(),
                (1.0, 1.0),
                1.0,
                0.6278526117756978899732,
            ),
            (
                AmmModel::sdamm_sinh(1.0, 0.8).unwrap(),
                (10.0, 1.0),
                1.0,
                0.40154692320657031321,
            ),
            (
                AmmModel::curve(1.5).unwrap(),
                (1.0, 4.0),
                0.5,
                0.9471795543892797722341,
            ),
            (
                AmmModel::lstable_swap(5.0).unwrap(),
                (100.0, 100.0),
                10.0,
                9.721416417286258752278,
            ),
            (
                AmmModel::dodo(2.0, 0.5).unwrap(),
                (10.0, 30.0),
                10.0,
                16.216939329789770636,
            ),
        ];
        for (model, (a, b), x, want) in cases {
            let Ok(q) = swap_y(&model, res(a, b), x) else { panic!("{model}") };
            assert!(
                ((q.output_amount - want) / want).abs() < 1e-11,
                "{model}: {} vs frozen {want}",
                q.output_amount
            );
        }
    }

    #[test]
    fn proactive_swap_lands_exactly_on_its_seam() {
        // From (10, 30) with P = 2, selling 5 moves the marginal point to
        // P·x = y; branch symmetry makes the payout exactly 10.
        let m = AmmModel::dodo(2.0, 0.5).unwrap();
        let Ok(q) = swap_y(&m, res(10.0, 30.0), 5.0) else { panic!() };
        assert!((q.output_amount - 10.0).abs() < 1e-10, "got {}", q.output_amount);
    }

    #[test]
    fn zero_size_trade_quotes_zero_without_average_price() {
        let m = AmmModel::uniswap_v2();
        let Ok(q) = swap_y(&m, res(3.0, 4.0), 0.0) else { panic!() };
        assert_eq!(q.output_amount, 0.0);
        assert_eq!(q.avg_price, None);
        assert!(!q.exhausting);
        let Ok(q) = swap_x(&m, res(3.0, 4.0), 0.0) else { panic!() };
        assert_eq!(q.output_amount, 0.0);
        assert_eq!(q.avg_price, None);
    }

    #[test]
    fn drainable_pools_flag_exhausting_trades() {
        // Constant-sum pays one-for-one until the reserve runs out.
        let m = AmmModel::mstable();
        let Ok(q) = swap_y(&m, res(100.0, 50.0), 60.0) else { panic!() };
        assert!(q.exhausting);
        assert_eq!(q.output_amount, 50.0);
        assert_eq!(q.post_reserves.b(), 0.0);

        // Concentrated liquidity drains once (α+a+x)·β ≥ (α+a)·(β+b).
        let m = AmmModel::uniswap_v3(1.0, 1.0).unwrap();
        let Ok(q) = swap_y(&m, res(1.0, 1.0), 2.0) else { panic!() };
        assert!(q.exhausting, "x = 2 reaches the drain threshold exactly");
        assert_eq!(q.output_amount, 1.0);
        let Ok(q) = swap_y(&m, res(1.0, 1.0), 1.9) else { panic!() };
        assert!(!q.exhausting);
    }

    #[test]
    fn diverging_pools_never_exhaust() {
        let m = AmmModel::uniswap_v2();
        let Ok(q) = swap_y(&m, res(1.0, 1.0), 1e9) else { panic!() };
        assert!(!q.exhausting);
        assert!(q.output_amount < 1.0);
        assert!(q.post_reserves.b() > 0.0);
    }

    #[test]
    fn fee_free_round_trip_is_lossless() {
        for model in AmmModel::catalog() {
            let Ok(rt) = round_trip(&model, res(100.0, 50.0), 7.0) else { panic!("{model}") };
            assert!(
                rt.shortfall.abs() <= 1e-8,
                "{model}: round trip lost {}",
                rt.shortfall
            );
        }
    }

    #[test]
    fn mirrored_swap_matches_closed_form() {
        // Selling B for A on the constant-product pool: x = a·y/(b+y).
        let m = AmmModel::uniswap_v2();
        let Ok(q) = swap_x(&m, res(100.0, 50.0), 25.0) else { panic!() };
        let want = 100.0 * 25.0 / 75.0;
        assert!((q.output_amount - want).abs() < 1e-9, "got {}", q.output_amount);
        assert_eq!(q.post_reserves.b(), 75.0);
    }

    #[test]
    fn non_monotone_fixture_is_rejected_with_the_utility_gap() {
        struct Flat;
        impl crate::model::UnivariateUtility for Flat {
            fn name(&self) -> &str {
                "flat"
            }
            fn value(&self, _z: f64) -> f64 {
                0.0
            }
        }
        let m = AmmModel::sdamm_custom(Arc::new(Flat));
        let Err(AmmError::MonotonicityViolated { x, utility_gap }) =
            swap_y(&m, res(1.0, 1.0), 0.5)
        else {
            panic!("flat utility cannot support a quote");
        };
        assert_eq!(x, 0.5);
        assert_eq!(utility_gap, 0.0);

        // The degenerate supremum at zero input: the whole reserve.
        let Ok(q) = swap_y(&m, res(1.0, 1.0), 0.0) else { panic!() };
        assert!(q.exhausting);
        assert_eq!(q.output_amount, 1.0);
    }

    #[test]
    fn negative_inputs_are_rejected() {
        let m = AmmModel::uniswap_v2();
        let Err(AmmError::InvalidInput { name: "x", .. }) = swap_y(&m, res(1.0, 1.0), -0.5)
        else {
            panic!()
        };
        let Err(AmmError::InvalidInput { name: "y", .. }) =
            swap_x(&m, res(1.0, 1.0), f64::NAN)
        else {
            panic!()
        };
        let Err(AmmError::InvalidInput { name: "alpha", .. }) =
            pool_deposit(&m, res(1.0, 1.0), 0.0)
        else {
            panic!()
        };
    }

    #[test]
    fn scale_invariant_deposits_are_exactly_proportional() {
        for model in [
            AmmModel::uniswap_v2(),
            AmmModel::balancer(0.25).unwrap(),
            AmmModel::lstable_swap(2.0).unwrap(),
            AmmModel::curve(3.0).unwrap(),
            AmmModel::dodo(1.5, 0.7).unwrap(),
        ] {
            let Ok(plan) = pool_deposit(&model, res(100.0, 50.0), 10.0) else {
                panic!("{model}")
            };
            assert_eq!(plan.delta_b, 5.0, "{model} should deposit proportionally");
            assert!(
                (plan.price_after - plan.price_before).abs()
                    <= POOL_PRICE_RTOL * plan.price_before,
                "{model}: price moved from {} to {}",
                plan.price_before,
                plan.price_after
            );
        }
    }

    #[test]
    fn solved_deposits_match_closed_forms_and_frozen_values() {
        // Hybrid pool: P = (C+y)/(C+x) gives β = α·(C+b)/(C+a) exactly.
        let m = AmmModel::stable_swap(1.0).unwrap();
        let Ok(plan) = pool_deposit(&m, res(100.0, 50.0), 10.0) else { panic!() };
        let want = 10.0 * 51.0 / 101.0;
        assert!((plan.delta_b - want).abs() < 1e-9, "got {}", plan.delta_b);

        // Concentrated liquidity: β = α·(β₀+b)/(α₀+a).
        let m = AmmModel::uniswap_v3(1.0, 2.0).unwrap();
        let Ok(plan) = pool_deposit(&m, res(100.0, 50.0), 10.0) else { panic!() };
        let want = 10.0 * 52.0 / 101.0;
        assert!((plan.delta_b - want).abs() < 1e-9, "got {}", plan.delta_b);

        // Separable sinh deposits, frozen from high-precision runs.
        let m = AmmModel::sdamm_sinh(1.0, 0.8).unwrap();
        let Ok(plan) = pool_deposit(&m, res(10.0, 1.0), 1.0) else { panic!() };
        let want = 0.03045954860434875019862;
        assert!(((plan.delta_b - want) / want).abs() < 1e-10, "got {}", plan.delta_b);

        let m = AmmModel::sdamm_sinh(1.0, 1.0).unwrap();
        let Ok(plan) = pool_deposit(&m, res(2.0, 0.5), 0.3) else { panic!() };
        let want = 0.009839223135625456003552;
        assert!(((plan.delta_b - want) / want).abs() < 1e-9, "got {}", plan.delta_b);
    }

    #[test]
    fn mirrored_deposit_solves_for_the_first_asset() {
        // StableSwap both ways: depositing the solved β must solve back to α.
        let m = AmmModel::stable_swap(1.0).unwrap();
        let Ok(plan) = pool_deposit(&m, res(100.0, 50.0), 10.0) else { panic!() };
        let Ok(back) = pool_deposit_b(&m, res(100.0, 50.0), plan.delta_b) else { panic!() };
        assert!((back.delta_a - 10.0).abs() < 1e-7, "got {}", back.delta_a);
    }

    #[test]
    fn saturating_price_ranges_make_some_deposits_infeasible() {
        // For the sinh design at q = 1 the quote is
        // coth(a+α)/coth(b+β) < coth(a+α); with a ≪ b the pre-deposit price
        // exceeds that ceiling for large α, so no β restores it.
        let m = AmmModel::sdamm_sinh(1.0, 1.0).unwrap();
        let Err(AmmError::InfeasiblePooling { target_price, achievable_lo, achievable_hi }) =
            pool_deposit(&m, res(0.1, 10.0), 5.0)
        else {
            panic!("expected infeasible pooling");
        };
        assert!(target_price > achievable_hi, "target {target_price}. reachable up to {achievable_hi}");
        assert!(achievable_lo <= achievable_hi);
    }
}
