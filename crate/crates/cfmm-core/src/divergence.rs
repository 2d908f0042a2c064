//! Divergence (impermanent) loss of a price-preserving liquidity injection.
//!
//! A provider adds (α, β) to a pool holding (a, b), chosen so the oracle
//! price does not move. A trader then moves the price to p, and the
//! provider withdraws. The divergence loss Δ(p) is the mark-to-market
//! difference, at the post-trade price, between having held (α, β) and
//! having pooled it:
//!
//! ```text
//! Δ(p) = [p·α + β] − s · [p·A' + B'],
//! ```
//!
//! where (A', B') are the post-trade pooled reserves and s is the
//! provider's share of the pool, valued at the pre-trade price. The same
//! quantity parameterized by the signed trade z instead of the price is
//! written Δ̄(z): z > 0 sells z of asset A to the pool, z < 0 sells −z of
//! asset B, and Δ̄(0) = 0 exactly.
//!
//! Without fees Δ ≥ 0 for scale-invariant pools — providing liquidity
//! never beats holding. With a fee γ ∈ (0, 1) there is an interval
//! (p_*, p^*) around the starting price on which Δ < 0: fee income
//! outweighs the loss for small price moves. [`gain_interval`] locates
//! that interval, with a closed scalar-root construction for the
//! constant-product pool and a sign-change search on Δ̄ otherwise.
//! Pools that are not scale invariant can show divergence *gains* even
//! at γ = 0; the separable sinh pool is the worked example.

use crate::error::AmmError;
use crate::fee::{swap_x_fee, swap_y_fee, FeeLevel};
use crate::model::{AmmModel, Reserves};
use crate::numerics::roots::{bisect_newton, MAX_BISECTION_STEPS};
use crate::oracle;
use crate::swap;

/// Relative tolerance for the price-preservation check at construction.
pub const PRICE_PRESERVATION_RTOL: f64 = 1e-9;

/// Relative tolerance (on price) when inverting the post-trade oracle.
pub const PRICE_SOLVE_RTOL: f64 = 1e-10;

/// The gain-interval search gives up on a side once the post-trade price
/// has moved by this factor from the starting price without a sign change.
const SEARCH_PRICE_SPAN: f64 = 1e3;

/// A sampled divergence counts as a gain only below −`GAIN_FLOOR_SCALE`
/// times the injection's mark-to-market value, keeping solver noise from
/// seeding the sign-change search.
const GAIN_FLOOR_SCALE: f64 = 1e-9;

/// Doubling budget for the outward searches (price inversion and
/// gain-interval bracketing).
const MAX_EXPANSIONS: usize = 80;

/// A pool, a fee level, and a price-preserving injection to analyze.
///
/// Construction validates the injection: both components nonnegative, not
/// both zero, and the pooled reserves must quote the same oracle price as
/// the base reserves within [`PRICE_PRESERVATION_RTOL`] — the analysis is
/// meaningless for an injection that itself moves the price.
#[derive(Debug, Clone)]
pub struct DivergenceSetup {
    model: AmmModel,
    gamma: FeeLevel,
    base: Reserves,
    injection: (f64, f64),
    /// Set when the injection is proportional: α = δa, β = δb.
    delta: Option<f64>,
    base_price: f64,
    pooled: Reserves,
    pooled_price: f64,
    /// Provider's pool share s = (P·α + β) / (P·(a+α) + (b+β)) at the
    /// base price P.
    share: f64,
}

impl DivergenceSetup {
    /// Builds a setup from an explicit injection (α, β).
    ///
    /// # Errors
    /// * [`AmmError::InvalidInput`] for a negative, non-finite, or
    ///   all-zero injection.
    /// * [`AmmError::PriceNotPreserved`] when the injection moves the
    ///   oracle price beyond tolerance.
    /// * Model validation and oracle errors propagate.
    pub fn new(
        model: AmmModel,
        base: Reserves,
        injection: (f64, f64),
        gamma: FeeLevel,
    ) -> Result<DivergenceSetup, AmmError> {
        model.validate()?;
        let (alpha, beta) = injection;
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(AmmError::InvalidInput {
                name: "alpha",
                value: alpha,
                constraint: "finite and >= 0",
            });
        }
        if !beta.is_finite() || beta < 0.0 {
            return Err(AmmError::InvalidInput {
                name: "beta",
                value: beta,
                constraint: "finite and >= 0",
            });
        }
        if alpha == 0.0 && beta == 0.0 {
            return Err(AmmError::InvalidInput {
                name: "injection",
                value: 0.0,
                constraint: "(alpha, beta) != (0, 0)",
            });
        }
        let pooled = Reserves::new(base.a() + alpha, base.b() + beta)?;
        let base_price = oracle::price(&model, base)?;
        let pooled_price = oracle::price(&model, pooled)?;
        if (pooled_price - base_price).abs() > PRICE_PRESERVATION_RTOL * base_price {
            return Err(AmmError::PriceNotPreserved {
                price_before: base_price,
                price_after: pooled_price,
                tolerance: PRICE_PRESERVATION_RTOL,
            });
        }
        // α·b = β·a (to rounding) identifies a proportional injection,
        // for which the share below reduces to δ/(1+δ) and the loss
        // admits the simplified per-share form.
        let cross = alpha * base.b() - beta * base.a();
        let scale = (alpha * base.b()).abs().max((beta * base.a()).abs());
        let delta = (cross.abs() <= 1e-12 * scale)
            .then(|| 0.5 * (alpha / base.a() + beta / base.b()));
        let share = (base_price * alpha + beta) / (base_price * pooled.a() + pooled.b());
        Ok(DivergenceSetup {
            model,
            gamma,
            base,
            injection,
            delta,
            base_price,
            pooled,
            pooled_price,
            share,
        })
    }

    /// Builds a setup from the proportional injection (δa, δb), δ > 0.
    ///
    /// Proportional injections preserve the price exactly for scale-
    /// invariant pools; for others the preservation check still applies
    /// and may legitimately reject the setup.
    ///
    /// # Errors
    /// As for [`DivergenceSetup::new`].
    pub fn proportional(
        model: AmmModel,
        base: Reserves,
        delta: f64,
        gamma: FeeLevel,
    ) -> Result<DivergenceSetup, AmmError> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(AmmError::InvalidInput {
                name: "delta",
                value: delta,
                constraint: "finite and > 0",
            });
        }
        DivergenceSetup::new(model, base, (delta * base.a(), delta * base.b()), gamma)
    }

    /// Builds a setup by depositing α of asset A and solving for the
    /// price-preserving amount of asset B.
    ///
    /// # Errors
    /// As for [`crate::swap::pool_deposit`] and [`DivergenceSetup::new`].
    pub fn from_deposit_a(
        model: AmmModel,
        base: Reserves,
        alpha: f64,
        gamma: FeeLevel,
    ) -> Result<DivergenceSetup, AmmError> {
        let plan = swap::pool_deposit(&model, base, alpha)?;
        DivergenceSetup::new(model, base, (alpha, plan.delta_b), gamma)
    }

    /// Builds a setup by depositing β of asset B and solving for the
    /// price-preserving amount of asset A.
    ///
    /// # Errors
    /// As for [`crate::swap::pool_deposit_b`] and [`DivergenceSetup::new`].
    pub fn from_deposit_b(
        model: AmmModel,
        base: Reserves,
        beta: f64,
        gamma: FeeLevel,
    ) -> Result<DivergenceSetup, AmmError> {
        let plan = swap::pool_deposit_b(&model, base, beta)?;
        DivergenceSetup::new(model, base, (plan.delta_a, beta), gamma)
    }

    pub fn model(&self) -> &AmmModel {
        &self.model
    }

    pub fn fee_level(&self) -> FeeLevel {
        self.gamma
    }

    pub fn base_reserves(&self) -> Reserves {
        self.base
    }

    /// Reserves after the injection, (a+α, b+β).
    pub fn pooled_reserves(&self) -> Reserves {
        self.pooled
    }

    pub fn injection(&self) -> (f64, f64) {
        self.injection
    }

    /// The scalar δ when the injection is proportional (α = δa, β = δb).
    pub fn delta(&self) -> Option<f64> {
        self.delta
    }

    /// Oracle price of the base reserves.
    pub fn base_price(&self) -> f64 {
        self.base_price
    }

    /// The provider's fraction of the pooled mark-to-market value at the
    /// base price; δ/(1+δ) for proportional injections.
    pub fn pool_share(&self) -> f64 {
        self.share
    }
}

/// Which side of the starting price a trade sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TradeBranch {
    /// z > 0: the trader sells asset A to the pool, price moves down.
    SellA,
    /// z = 0: no trade.
    Origin,
    /// z < 0: the trader sells asset B to the pool, price moves up.
    BuyA,
}

impl TradeBranch {
    pub fn of(z: f64) -> TradeBranch {
        if z > 0.0 {
            TradeBranch::SellA
        } else if z < 0.0 {
            TradeBranch::BuyA
        } else {
            TradeBranch::Origin
        }
    }

    /// Stable label used in CSV output.
    pub fn label(self) -> &'static str {
        match self {
            TradeBranch::SellA => "sellA",
            TradeBranch::Origin => "origin",
            TradeBranch::BuyA => "buyA",
        }
    }
}

/// Coordinate used for sampled divergence curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveCoordinate {
    /// Signed trade size z.
    Trade,
    /// Post-trade oracle price p.
    Price,
}

impl CurveCoordinate {
    pub fn label(self) -> &'static str {
        match self {
            CurveCoordinate::Trade => "trade",
            CurveCoordinate::Price => "price",
        }
    }
}

/// One sampled point of a divergence curve.
#[derive(Debug, Clone, Copy)]
pub struct CurveSample {
    /// Trade size z or post-trade price p, per the curve's coordinate.
    pub coordinate: f64,
    /// Divergence loss at the sample (negative values are gains).
    pub delta: f64,
    pub branch: TradeBranch,
}

/// A sampled divergence curve plus the gain interval when one exists.
#[derive(Debug, Clone)]
pub struct DivergenceCurve {
    pub samples: Vec<CurveSample>,
    /// Price interval (p_*, p^*) on which pooling beats holding, when
    /// found.
    pub gain_interval: Option<(f64, f64)>,
    pub coordinate_kind: CurveCoordinate,
}

/// Post-trade pooled reserves and oracle price for the signed trade `z`.
fn post_state(setup: &DivergenceSetup, z: f64) -> Result<(Reserves, f64), AmmError> {
    let post = if z > 0.0 {
        swap_y_fee(&setup.model, setup.pooled, z, setup.gamma)?.post_reserves
    } else {
        swap_x_fee(&setup.model, setup.pooled, -z, setup.gamma)?.post_reserves
    };
    let p = oracle::price(&setup.model, post)?;
    Ok((post, p))
}

/// Held-vs-pooled mark-to-market gap at price `p` with pooled reserves
/// `post`.
fn mark_to_market_gap(setup: &DivergenceSetup, post: Reserves, p: f64) -> f64 {
    let (alpha, beta) = setup.injection;
    (p * alpha + beta) - setup.share * (p * post.a() + post.b())
}

fn sample_at(setup: &DivergenceSetup, z: f64) -> Result<(f64, f64, Reserves), AmmError> {
    let (post, p) = post_state(setup, z)?;
    Ok((mark_to_market_gap(setup, post, p), p, post))
}

/// Divergence loss Δ̄(z) of the signed trade `z`.
///
/// # Input
/// * `z` — trade size: positive sells z of asset A to the pool, negative
///   sells −z of asset B; zero returns 0 exactly.
///
/// # Output
/// The provider's mark-to-market shortfall at the post-trade price;
/// negative values are divergence gains.
///
/// # Errors
/// Swap and oracle errors propagate when the implied trade is infeasible
/// (e.g. it would exhaust a reserve).
pub fn divergence_at_trade(setup: &DivergenceSetup, z: f64) -> Result<f64, AmmError> {
    if !z.is_finite() {
        return Err(AmmError::InvalidInput { name: "z", value: z, constraint: "finite" });
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    Ok(sample_at(setup, z)?.0)
}

/// Solves for the signed trade z that moves the post-trade oracle to `p`.
///
/// # Output
/// z > 0 (selling A) when `p` is below the starting price, z < 0 (selling
/// B) when above, 0 when `p` equals it within [`PRICE_SOLVE_RTOL`]. The
/// post-trade oracle matches `p` to the same relative tolerance.
///
/// # Errors
/// * [`AmmError::UnreachablePrice`] when no feasible trade attains `p`
///   (constant or saturating oracles, or reserve exhaustion first).
/// * [`AmmError::InvalidInput`] unless `p` is finite and positive.
pub fn solve_trade_for_price(setup: &DivergenceSetup, p: f64) -> Result<f64, AmmError> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(AmmError::InvalidInput {
            name: "p",
            value: p,
            constraint: "finite and > 0",
        });
    }
    if (p - setup.base_price).abs() <= PRICE_SOLVE_RTOL * setup.base_price {
        return Ok(0.0);
    }
    // Branch on the pooled price (the achievable curve passes through it
    // at z = 0); it differs from the base price by at most the
    // preservation tolerance.
    if p < setup.pooled_price {
        invert_price(setup, p, Side::SellA)
    } else if p > setup.pooled_price {
        invert_price(setup, p, Side::BuyA)
    } else {
        Ok(0.0)
    }
}

/// Divergence loss Δ(p) at the post-trade price `p`.
///
/// Composes [`solve_trade_for_price`] with [`divergence_at_trade`].
///
/// # Errors
/// As for the two composed operations.
pub fn divergence_at_price(setup: &DivergenceSetup, p: f64) -> Result<f64, AmmError> {
    let z = solve_trade_for_price(setup, p)?;
    divergence_at_trade(setup, z)
}

/// Trade direction used by the internal searches; magnitudes are positive
/// and get signed on evaluation.
#[derive(Clone, Copy, PartialEq)]
enum Side {
    SellA,
    BuyA,
}

impl Side {
    fn signed(self, magnitude: f64) -> f64 {
        match self {
            Side::SellA => magnitude,
            Side::BuyA => -magnitude,
        }
    }

    /// Natural magnitude scale: the reserve the trader's deposit joins.
    fn scale(self, pooled: Reserves) -> f64 {
        match self {
            Side::SellA => pooled.a(),
            Side::BuyA => pooled.b(),
        }
    }

    /// Whether `candidate` improves on `best` toward this side's price
    /// direction (prices fall when selling A, rise when selling B).
    fn closer(self, candidate: f64, best: f64) -> bool {
        match self {
            Side::SellA => candidate < best,
            Side::BuyA => candidate > best,
        }
    }

    /// Fraction of the reserve the pool pays out of that remains; the
    /// gain-interval search stops once it is nearly drained.
    fn payout_remaining(self, post: Reserves, pooled: Reserves) -> f64 {
        match self {
            Side::SellA => post.b() / pooled.b(),
            Side::BuyA => post.a() / pooled.a(),
        }
    }
}

/// Bisects the post-trade price to `p` on the given side, expanding the
/// trade magnitude outward until the target is bracketed.
fn invert_price(setup: &DivergenceSetup, p: f64, side: Side) -> Result<f64, AmmError> {
    let mut lo = 0.0f64;
    let mut hi = side.scale(setup.pooled);
    let mut reached = setup.pooled_price;
    let mut bracketed = false;
    for _ in 0..MAX_EXPANSIONS {
        match sample_at(setup, side.signed(hi)) {
            Ok((_, price_hi, _)) => {
                if side.closer(price_hi, reached) {
                    reached = price_hi;
                }
                if !side.closer(p, price_hi) {
                    // Target price sits between lo and hi.
                    bracketed = true;
                    break;
                }
                lo = hi;
                hi *= 2.0;
            }
            // Infeasible (reserve exhausted): back off toward the last
            // feasible magnitude and retry.
            Err(_) => {
                if hi - lo <= 1e-9 * hi {
                    return Err(AmmError::UnreachablePrice { target: p, reached });
                }
                hi = 0.5 * (lo + hi);
            }
        }
    }
    if !bracketed {
        return Err(AmmError::UnreachablePrice { target: p, reached });
    }
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let (_, pm, _) = sample_at(setup, side.signed(mid))?;
        if (pm - p).abs() <= PRICE_SOLVE_RTOL * p {
            return Ok(side.signed(mid));
        }
        if side.closer(p, pm) {
            // Price at mid has not yet reached the target; push outward.
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(side.signed(0.5 * (lo + hi)))
}

/// Locates the price interval (p_*, p^*) around the starting price on
/// which pooling beats holding (Δ < 0).
///
/// The constant-product pool uses the closed scalar-root construction:
/// t_* ∈ (0, 1−γ) solving 1 − 2t^{1−γ} + t^{2−γ} = 0 gives
/// p_* = (b/a)·t_*^{2−γ}, and the root of 1 − 2t + t^{2−γ} = 0 just above
/// (1+γ)^{1/(1−γ)} gives p^* = (b/a)·t^{2−γ}. Every other model goes
/// through [`gain_interval_by_search`].
///
/// # Output
/// `None` when no gain region exists, or when one exists but its edge
/// cannot be certified within the search range. Scale-invariant pools
/// have no gain region at γ = 0; pools without scale invariance can have
/// one, and it is searched for at every fee level.
///
/// # Errors
/// Internal solver failures propagate; absence of an interval is a value,
/// not an error.
pub fn gain_interval(setup: &DivergenceSetup) -> Result<Option<(f64, f64)>, AmmError> {
    if matches!(setup.model, AmmModel::UniswapV2) {
        if setup.gamma.gamma() == 0.0 {
            return Ok(None);
        }
        return constant_product_interval(setup).map(Some);
    }
    gain_interval_by_search(setup)
}

/// Gain-interval endpoints for the constant-product pool via its two
/// scalar root equations.
fn constant_product_interval(setup: &DivergenceSetup) -> Result<(f64, f64), AmmError> {
    let g = setup.gamma.gamma();
    // Both residuals cancel catastrophically near t = 1 (the fee-free
    // double root), so they are rewritten around expm1/ln to keep full
    // relative precision for small γ:
    //   1 − 2t^{1−γ} + t^{2−γ} = (1 − t^{1−γ})² − t^{2−γ}·(t^{−γ} − 1)
    //   1 − 2t + t^{2−γ}       = (1 − t)²       + t²·(t^{−γ} − 1)
    let lower = |t: f64| {
        let one_minus_w = -((1.0 - g) * t.ln()).exp_m1();
        one_minus_w * one_minus_w - t.powf(2.0 - g) * (-g * t.ln()).exp_m1()
    };
    let d_lower =
        |t: f64| -2.0 * (1.0 - g) * t.powf(-g) + (2.0 - g) * t.powf(1.0 - g);
    let t_star = bisect_newton(lower, d_lower, 1e-12, 1.0 - g, 1e-15)?;

    let upper = |t: f64| {
        let one_minus_t = 1.0 - t;
        one_minus_t * one_minus_t + t * t * (-g * t.ln()).exp_m1()
    };
    let d_upper = |t: f64| -2.0 + (2.0 - g) * t.powf(1.0 - g);
    let l = (1.0 + g).powf(1.0 / (1.0 - g));
    // The root sits within ψ(l)/(γ(1−γ)) above l, ψ being the residual.
    let bracket_hi = l - upper(l) / (g * (1.0 - g));
    let t_upper = bisect_newton(upper, d_upper, l, bracket_hi, 1e-15)?;

    let ratio = setup.base.b() / setup.base.a();
    Ok((ratio * t_star.powf(2.0 - g), ratio * t_upper.powf(2.0 - g)))
}

/// Outcome of scanning one side of the origin for the gain region's edge.
enum SideScan {
    /// No gain anywhere on the side: its boundary is the origin itself.
    NoGain,
    /// Gains found, but the crossing back to a loss lies beyond the
    /// search range, so no endpoint can be certified.
    Unresolved,
    /// Signed trade at which the loss crosses zero.
    Edge(f64),
}

/// Locates the gain interval by bracketed sign-change search on Δ̄,
/// one side at a time. Exposed separately so the generic path can be
/// cross-checked against the constant-product closed construction.
///
/// A side with no gain at all contributes the starting price as its
/// endpoint (pools without scale invariance can have one-sided gain
/// sets); a side whose gain region outruns the search range leaves the
/// whole interval uncertified.
///
/// # Errors
/// As for [`gain_interval`].
pub fn gain_interval_by_search(
    setup: &DivergenceSetup,
) -> Result<Option<(f64, f64)>, AmmError> {
    let sell = scan_side(setup, Side::SellA)?;
    let buy = scan_side(setup, Side::BuyA)?;
    let p_lower = match sell {
        SideScan::NoGain => setup.base_price,
        SideScan::Unresolved => return Ok(None),
        SideScan::Edge(z) => post_state(setup, z)?.1,
    };
    let p_upper = match buy {
        SideScan::NoGain => setup.base_price,
        SideScan::Unresolved => return Ok(None),
        SideScan::Edge(z) => post_state(setup, z)?.1,
    };
    if p_lower == setup.base_price && p_upper == setup.base_price {
        return Ok(None);
    }
    Ok(Some((p_lower, p_upper)))
}

/// Scans one side for the trade where Δ̄ crosses back to zero.
fn scan_side(setup: &DivergenceSetup, side: Side) -> Result<SideScan, AmmError> {
    let scale = side.scale(setup.pooled);
    let (alpha, beta) = setup.injection;
    let floor = GAIN_FLOOR_SCALE * (setup.base_price * alpha + beta);

    // Probe geometrically for a magnitude with a genuine gain.
    let mut negative_at = None;
    for fraction in [1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 5e-2, 0.2] {
        let m = fraction * scale;
        if let Ok((delta, _, _)) = sample_at(setup, side.signed(m)) {
            if delta < -floor {
                negative_at = Some(m);
                break;
            }
        }
    }
    let Some(mut lo) = negative_at else {
        return Ok(SideScan::NoGain);
    };

    // Expand outward until the loss turns positive again; back off when
    // the trade becomes infeasible; give up once the price has moved by
    // SEARCH_PRICE_SPAN or the payout reserve is within 1% of drained.
    let mut hi = 2.0 * lo;
    let mut bracketed = false;
    for _ in 0..MAX_EXPANSIONS {
        match sample_at(setup, side.signed(hi)) {
            Ok((delta, price, post)) => {
                if delta >= 0.0 {
                    bracketed = true;
                    break;
                }
                let moved = (price / setup.base_price).max(setup.base_price / price);
                if moved > SEARCH_PRICE_SPAN
                    || side.payout_remaining(post, setup.pooled) < 0.01
                {
                    return Ok(SideScan::Unresolved);
                }
                lo = hi;
                hi *= 2.0;
            }
            Err(_) => {
                if hi - lo <= 1e-9 * hi {
                    return Ok(SideScan::Unresolved);
                }
                hi = 0.5 * (lo + hi);
            }
        }
    }
    if !bracketed {
        return Ok(SideScan::Unresolved);
    }
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi || hi - lo <= 1e-12 * hi {
            break;
        }
        let (delta, _, _) = sample_at(setup, side.signed(mid))?;
        if delta < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(SideScan::Edge(side.signed(0.5 * (lo + hi))))
}

/// Samples Δ̄ on an inclusive trade range, attaching the gain interval.
///
/// # Input
/// * `z_range` — (lo, hi) with lo < hi; a z = 0 sample is inserted when
///   the range straddles zero so the curve always carries its exact
///   origin.
/// * `samples` — number of evenly spaced points, at least 2.
/// * `coordinate_kind` — report each point against z or against the
///   post-trade price.
///
/// # Errors
/// Propagates evaluation errors; choose ranges the pool can feasibly
/// trade.
pub fn sample_curve(
    setup: &DivergenceSetup,
    z_range: (f64, f64),
    samples: usize,
    coordinate_kind: CurveCoordinate,
) -> Result<DivergenceCurve, AmmError> {
    let (z_lo, z_hi) = z_range;
    if !z_lo.is_finite() || !z_hi.is_finite() || z_lo >= z_hi {
        return Err(AmmError::InvalidInput {
            name: "z_range",
            value: z_hi - z_lo,
            constraint: "finite with lo < hi",
        });
    }
    if samples < 2 {
        return Err(AmmError::InvalidInput {
            name: "samples",
            value: samples as f64,
            constraint: ">= 2",
        });
    }

    let step = (z_hi - z_lo) / (samples - 1) as f64;
    let mut grid: Vec<f64> = (0..samples).map(|i| z_lo + step * i as f64).collect();
    if z_lo < 0.0 && z_hi > 0.0 && !grid.contains(&0.0) {
        let at = grid.partition_point(|z| *z < 0.0);
        grid.insert(at, 0.0);
    }

    let mut points = Vec::with_capacity(grid.len());
    for z in grid {
        let (delta, price) = if z == 0.0 {
            (0.0, setup.pooled_price)
        } else {
            let (delta, price, _) = sample_at(setup, z)?;
            (delta, price)
        };
        let coordinate = match coordinate_kind {
            CurveCoordinate::Trade => z,
            CurveCoordinate::Price => price,
        };
        points.push(CurveSample { coordinate, delta, branch: TradeBranch::of(z) });
    }
    Ok(DivergenceCurve {
        samples: points,
        gain_interval: gain_interval(setup)?,
        coordinate_kind,
    })
}
