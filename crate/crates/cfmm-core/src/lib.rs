//! Core library for constant-utility automated market makers.
//!
//! A pool holds reserves (x, y) of two assets and is governed by a utility
//! function u(x, y): trades are exactly the reserve changes that keep u
//! constant, so the whole quoting rule — swap amounts, marginal prices,
//! fee accrual, and the value of pooling versus holding — is derived from
//! u alone. This crate implements that derivation end to end:
//!
//! * [`model`] — the catalog of pool utilities (constant-product and its
//!   weighted form, concentrated liquidity, constant-sum, the hybrid and
//!   amplified stable designs, the proactive design, and separable
//!   utilities) with analytic derivatives through third order.
//! * [`swap`] — fee-free trade quoting along a level set of u, round
//!   trips, and price-preserving liquidity deposits.
//! * [`oracle`] — the marginal price P = u_A/u_B quoted by a pool, its
//!   first and second partials, and the curvature quantity that governs
//!   liquidity-provider compensation.
//! * [`fee`] — swaps under a proportional fee on the sold asset, solved
//!   as an initial-value problem in the sold amount (with closed forms
//!   where they exist), plus the simpler fee conventions and bid/ask
//!   spreads.
//! * [`divergence`] — the payoff gap between depositing into a pool and
//!   holding, as a curve over trade size or target price, with the
//!   fee-collection gain region.
//! * [`axiom`] — named structural properties of pool utilities and
//!   grid-based checkers that test them and report witnesses.
//!
//! Numerical conventions are uniform: reserves are validated once at
//! construction ([`Reserves`]), utilities are defined on the closed
//! quadrant with −∞ where a design diverges, derivative evaluation is
//! analytic wherever a closed form exists, and every solver documents its
//! tolerance and failure modes as [`AmmError`] variants rather than
//! panicking.

pub mod axiom;
pub mod divergence;
pub mod error;
pub mod fee;
pub mod model;
pub mod numerics;
pub mod oracle;
pub mod swap;

pub use axiom::{
    check_all, check_axiom, check_theorem_suite, AxiomCheck, AxiomClaim, AxiomId, AxiomReport,
    CheckStatus, GridConfig, ProbeTrend, TheoremCheck, TheoremSuiteReport, TrendClass, Verdict,
    Witness,
};
pub use divergence::{
    divergence_at_price, divergence_at_trade, gain_interval, sample_curve, solve_trade_for_price,
    CurveCoordinate, CurveSample, DivergenceCurve, DivergenceSetup, TradeBranch,
};
pub use error::AmmError;
pub use fee::{
    bid_ask, swap_fee_on_bought, swap_fee_on_sold, swap_x_fee, swap_x_fee_ode, swap_y_fee,
    swap_y_fee_closed, swap_y_fee_ode,
    FeeLevel, FeeMethod, FeeSwapResult, SolverStats,
};
pub use model::{
    curve_invariant, model_from_descriptor, model_from_parts, utility, utility_eval,
    utility_gradient, utility_hessian, utility_jet, AmmModel, DerivativeSource, Reserves,
    SdammUtility, UnivariateUtility, UtilityEval,
};
pub use numerics::Jet3;
pub use oracle::{
    liquidity_condition, price, price_partials, price_point, price_second_partials, OraclePoint,
};
pub use swap::{
    pool_deposit, pool_deposit_b, round_trip, swap_x, swap_y, PoolingPlan, RoundTrip, SwapQuote,
};
