//! Error type shared across the library.
//!
//! Every fallible operation returns `Result<_, AmmError>`. Variants carry the
//! concrete numbers that triggered the failure so callers (and test suites)
//! can report actionable diagnostics without re-deriving state.

use std::fmt;

/// Errors produced by model construction, swap solving, fee integration,
/// pooling, and divergence analysis.
#[derive(Debug, Clone, PartialEq)]
pub enum AmmError {
    /// A model parameter lies outside its admissible range.
    InvalidParameter {
        /// Parameter name as it appears in the JSON descriptor.
        param: &'static str,
        /// Offending value.
        value: f64,
        /// Human-readable constraint, e.g. `"w in (0,1)"`.
        constraint: &'static str,
    },
    /// A reserve pair was not strictly positive and finite.
    InvalidReserves { a: f64, b: f64 },
    /// A scalar input (trade size, fee, price target, ...) was NaN or
    /// otherwise outside its domain.
    InvalidInput {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },
    /// A fee level outside the open interval required by the operation.
    InvalidFee { gamma: f64 },
    /// Utility evaluated at a point off the closed positive quadrant.
    OutOfDomain { x: f64, y: f64 },
    /// The utility failed to increase with the deposited asset, so the
    /// swap equation has a flat or inverted bracket. Well-formed models
    /// are strictly monotone; this signals an invalid (typically
    /// user-supplied) utility rather than a numerical failure.
    MonotonicityViolated {
        /// Deposit that exposed the violation.
        x: f64,
        /// Observed utility change from the deposit (should be > 0).
        utility_gap: f64,
    },
    /// Root bracketing failed: no sign change on the candidate interval.
    BracketFailed { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    /// Adaptive ODE integration failed. Carries the last accepted state so
    /// callers can see how far the integration progressed.
    IntegrationFailed {
        /// Reason: step-size underflow, step-count limit, or reserve
        /// exhaustion.
        reason: &'static str,
        /// Independent variable at the last accepted step.
        s_reached: f64,
        /// Dependent variable at the last accepted step.
        value_reached: f64,
    },
    /// No deposit in the counter asset can restore the pre-deposit price:
    /// the oracle saturates before reaching it.
    InfeasiblePooling {
        target_price: f64,
        /// Achievable post-deposit price range discovered by the search.
        achievable_lo: f64,
        achievable_hi: f64,
    },
    /// A requested oracle price cannot be reached by any feasible trade
    /// (e.g. models with a constant oracle).
    UnreachablePrice {
        target: f64,
        /// Closest post-trade price the search could produce.
        reached: f64,
    },
    /// An injection (alpha, beta) that moves the oracle price; divergence
    /// analysis requires price-preserving injections.
    PriceNotPreserved {
        price_before: f64,
        price_after: f64,
        tolerance: f64,
    },
    /// A JSON model descriptor failed to parse; the message names the
    /// offending key or kind.
    Descriptor(String),
}

impl fmt::Display for AmmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmmError::InvalidParameter { param, value, constraint } => {
                write!(f, "invalid parameter {param}={value}: requires {constraint}")
            }
            AmmError::InvalidReserves { a, b } => {
                write!(f, "reserves ({a}, {b}) must be strictly positive and finite")
            }
            AmmError::InvalidInput { name, value, constraint } => {
                write!(f, "invalid input {name}={value}: requires {constraint}")
            }
            AmmError::InvalidFee { gamma } => {
                write!(f, "fee level {gamma} outside the required range")
            }
            AmmError::OutOfDomain { x, y } => {
                write!(f, "point ({x}, {y}) is outside the closed positive quadrant")
            }
            AmmError::MonotonicityViolated { x, utility_gap } => {
                write!(
                    f,
                    "utility is not strictly increasing in the deposited asset \
                     (deposit {x} changed utility by {utility_gap}); \
                     the model violates strict monotonicity"
                )
            }
            AmmError::BracketFailed { lo, hi, f_lo, f_hi } => {
                write!(f, "no sign change on [{lo}, {hi}]: f(lo)={f_lo}, f(hi)={f_hi}")
            }
            AmmError::IntegrationFailed { reason, s_reached, value_reached } => {
                write!(
                    f,
                    "ODE integration failed ({reason}) at s={s_reached}, \
                     value={value_reached}"
                )
            }
            AmmError::InfeasiblePooling { target_price, achievable_lo, achievable_hi } => {
                write!(
                    f,
                    "no counter-deposit restores price {target_price}; \
                     achievable range is [{achievable_lo}, {achievable_hi}]"
                )
            }
            AmmError::UnreachablePrice { target, reached } => {
                write!(
                    f,
                    "price {target} is not reachable by any feasible trade \
                     (closest reached: {reached})"
                )
            }
            AmmError::PriceNotPreserved { price_before, price_after, tolerance } => {
                write!(
                    f,
                    "injection moves the oracle price from {price_before} to \
                     {price_after} (tolerance {tolerance}); divergence analysis \
                     requires a price-preserving injection"
                )
            }
            AmmError::Descriptor(msg) => write!(f, "model descriptor error: {msg}"),
        }
    }
}

impl std::error::Error for AmmError {}
