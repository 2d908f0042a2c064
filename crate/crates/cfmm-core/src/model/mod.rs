//! The model catalog: pool utility functions and their derivatives.
//!
//! Every market maker here is described by a utility u(x, y) over reserves
//! of two assets; the pool quotes trades that keep u constant. The catalog
//! covers the standard designs, each reduced to closed form:
//!
//! ```text
//! uniswap-v2     u = ln x + ln y
//! balancer       u = w·ln x + (1−w)·ln y                    0 < w < 1
//! uniswap-v3     u = ln(α + x) + ln(β + y)                  α, β > 0
//! mstable        u = ln(x + y)
//! stableswap     u = ln(C·(x + y) + x·y)                    C > 0
//! lstableswap    u = C·ln(x + y) + ln x + ln y              C > 0
//! curve          u = ln D,  D³ + 4(C−1)xyD = 4C(x+y)xy      C ≥ 1
//! dodo           u = ln(2ε) − ln(A + sqrt(A² + Cε))         P > 0, 0 ≤ C ≤ 1
//! sdamm-sinh     u = U(x) + U(y),  U(z) = ln sinh(C·z^q)    C > 0, 0 < q ≤ 1
//! ```
//!
//! For the proactive design (`dodo`) the published piecewise form has a
//! removable 0/0 at C = 1 and again on the branch boundary; the form above
//! is its rationalization and is valid for every C ∈ [0, 1] on the open
//! quadrant, with ε = Px·((1−C)Px + y), A = (1−C)Px on the branch Px ≤ y
//! and the mirrored ε = y·(Px + (1−C)y), A = (1−C)y on Px > y. At C = 0 it
//! collapses to u = ln(Px + y) exactly, and that constant-sum form is used
//! directly.
//!
//! Derivatives through third order are produced for every model as a
//! [`Jet3`], almost always analytically: the log/product forms compose
//! small jets, the amplified invariant (`curve`) differentiates its
//! defining cubic implicitly, and the separable family (`sdamm-*`)
//! assembles univariate derivative stacks. The single finite-difference
//! fallback is a user-supplied separable utility that declines to provide
//! derivatives.
//!
//! Utility values are defined on the **closed** quadrant, with −∞ on the
//! boundary for the models that empty there; derivative evaluations demand
//! a strictly interior point.

mod curve;
mod descriptor;

use std::fmt;
use std::sync::Arc;

use crate::axiom::AxiomClaim;
use crate::error::AmmError;
use crate::numerics::jet::Jet3;
use crate::numerics::{fd, hyper};

pub use curve::{curve_invariant, RESIDUAL_RTOL as CURVE_RESIDUAL_RTOL};
pub(crate) use curve::curve_jet;
pub use descriptor::{model_from_descriptor, model_from_parts};

/// A validated pair of strictly positive, finite reserves.
///
/// Construction is the single validation gate: every operation that takes
/// a `Reserves` can assume an interior point. Post-trade states produced by
/// the swap engine may legitimately sit on the boundary (an exhausting
/// trade empties one side) and are built through the crate-internal
/// constructor instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reserves {
    a: f64,
    b: f64,
}

impl Reserves {
    /// Validates and wraps a reserve pair.
    ///
    /// # Errors
    /// [`AmmError::InvalidReserves`] unless both coordinates are finite and
    /// strictly positive.
    pub fn new(a: f64, b: f64) -> Result<Reserves, AmmError> {
        if !(a > 0.0) || !(b > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(AmmError::InvalidReserves { a, b });
        }
        Ok(Reserves { a, b })
    }

    /// Reserve of the first asset.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Reserve of the second asset.
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Post-trade state, allowed to touch the boundary of the quadrant.
    pub(crate) fn post_trade(a: f64, b: f64) -> Reserves {
        debug_assert!(a >= 0.0 && b >= 0.0, "post-trade reserves must be nonnegative");
        Reserves { a, b }
    }
}

impl fmt::Display for Reserves {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// One-asset utility for the separable family u(x, y) = U(x) + U(y).
///
/// Implementations may supply analytic derivatives; if `derivatives`
/// returns `None` the evaluator falls back to central finite differences
/// on `value`, which costs accuracy in the second and especially third
/// derivative. Implementations are shared across threads by the checkers,
/// hence the `Send + Sync` bound.
pub trait UnivariateUtility: Send + Sync {
    /// Short name used in display strings and reports.
    fn name(&self) -> &str;

    /// U(z) on z ≥ 0. Return −∞ where the utility diverges.
    fn value(&self, z: f64) -> f64;

    /// `[U'(z), U''(z), U'''(z)]` at interior z, if available analytically.
    fn derivatives(&self, _z: f64) -> Option<[f64; 3]> {
        None
    }
}

/// The one-asset utility of a separable market maker.
#[derive(Clone)]
pub enum SdammUtility {
    /// U(z) = ln sinh(C·z^q) with C > 0 and 0 < q ≤ 1.
    Sinh { c: f64, q: f64 },
    /// A user-supplied utility, typically a test fixture or an
    /// experimental design loaded by library consumers.
    Custom(Arc<dyn UnivariateUtility>),
}

impl fmt::Debug for SdammUtility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SdammUtility::Sinh { c, q } => write!(f, "Sinh {{ c: {c}, q: {q} }}"),
            SdammUtility::Custom(u) => write!(f, "Custom({})", u.name()),
        }
    }
}

impl PartialEq for SdammUtility {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (SdammUtility::Sinh { c: c1, q: q1 }, SdammUtility::Sinh { c: c2, q: q2 }) => {
                c1 == c2 && q1 == q2
            }
            (SdammUtility::Custom(u1), SdammUtility::Custom(u2)) => Arc::ptr_eq(u1, u2),
            _ => false,
        }
    }
}

impl SdammUtility {
    /// U(z) on the closed half-line.
    fn value(&self, z: f64) -> f64 {
        match self {
            SdammUtility::Sinh { c, q } => {
                if z == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    hyper::ln_sinh(c * z.powf(*q))
                }
            }
            SdammUtility::Custom(u) => u.value(z),
        }
    }

    /// `[U, U', U'', U''']` at interior z, plus where the numbers came from.
    fn derivative_stack(&self, z: f64) -> ([f64; 4], DerivativeSource) {
        match self {
            SdammUtility::Sinh { c, q } => {
                // w = C·z^q; chain rule through ln sinh:
                //   U'   = coth(w)·w'
                //   U''  = −csch²(w)·w'² + coth(w)·w''
                //   U''' = 2csch²(w)coth(w)·w'³ − 3csch²(w)·w'·w'' + coth(w)·w'''
                let zq = z.powf(*q);
                let w = c * zq;
                let wp = c * q * zq / z;
                let wpp = wp * (q - 1.0) / z;
                let wppp = wpp * (q - 2.0) / z;
                let coth = hyper::coth(w);
                let csch2 = hyper::csch_sq(w);
                let u1 = coth * wp;
                let u2 = -csch2 * wp * wp + coth * wpp;
                let u3 = 2.0 * csch2 * coth * wp * wp * wp - 3.0 * csch2 * wp * wpp
                    + coth * wppp;
                ([hyper::ln_sinh(w), u1, u2, u3], DerivativeSource::Analytic)
            }
            SdammUtility::Custom(u) => match u.derivatives(z) {
                Some([u1, u2, u3]) => ([u.value(z), u1, u2, u3], DerivativeSource::Analytic),
                None => {
                    let f = |t: f64| u.value(t);
                    let stack = [
                        u.value(z),
                        fd::derivative(f, z),
                        fd::second_derivative(f, z),
                        fd::third_derivative(f, z),
                    ];
                    (stack, DerivativeSource::FiniteDifference)
                }
            },
        }
    }
}

/// A market-maker model: the utility that defines its quoting rule.
#[derive(Debug, Clone, PartialEq)]
pub enum AmmModel {
    UniswapV2,
    Balancer { w: f64 },
    UniswapV3 { alpha: f64, beta: f64 },
    MStable,
    StableSwap { c: f64 },
    LStableSwap { c: f64 },
    Curve { c: f64 },
    Dodo { p_ext: f64, c: f64 },
    Sdamm(SdammUtility),
}

impl AmmModel {
    /// Constant-product pool.
    pub fn uniswap_v2() -> AmmModel {
        AmmModel::UniswapV2
    }

    /// Weighted constant-product pool with weight `w` on the first asset.
    pub fn balancer(w: f64) -> Result<AmmModel, AmmError> {
        let m = AmmModel::Balancer { w };
        m.validate()?;
        Ok(m)
    }

    /// Concentrated-liquidity pool with virtual reserve offsets.
    pub fn uniswap_v3(alpha: f64, beta: f64) -> Result<AmmModel, AmmError> {
        let m = AmmModel::UniswapV3 { alpha, beta };
        m.validate()?;
        Ok(m)
    }

    /// Constant-sum pool.
    pub fn mstable() -> AmmModel {
        AmmModel::MStable
    }

    /// Hybrid sum/product pool with amplification `c`.
    pub fn stable_swap(c: f64) -> Result<AmmModel, AmmError> {
        let m = AmmModel::StableSwap { c };
        m.validate()?;
        Ok(m)
    }

    /// Logarithmic hybrid pool with amplification `c`.
    pub fn lstable_swap(c: f64) -> Result<AmmModel, AmmError> {
        let m = AmmModel::LStableSwap { c };
        m.validate()?;
        Ok(m)
    }

    /// Amplified-invariant pool with amplification `c`.
    pub fn curve(c: f64) -> Result<AmmModel, AmmError> {
        let m = AmmModel::Curve { c };
        m.validate()?;
        Ok(m)
    }

    /// Proactive pool quoting around external price `p_ext` with
    /// concentration `c`.
    pub fn dodo(p_ext: f64, c: f64) -> Result<AmmModel, AmmError> {
        let m = AmmModel::Dodo { p_ext, c };
        m.validate()?;
        Ok(m)
    }

    /// Separable pool with the hyperbolic-sine one-asset utility.
    pub fn sdamm_sinh(c: f64, q: f64) -> Result<AmmModel, AmmError> {
        let m = AmmModel::Sdamm(SdammUtility::Sinh { c, q });
        m.validate()?;
        Ok(m)
    }

    /// Separable pool with a caller-supplied one-asset utility.
    pub fn sdamm_custom(u: Arc<dyn UnivariateUtility>) -> AmmModel {
        AmmModel::Sdamm(SdammUtility::Custom(u))
    }

    /// Checks parameter constraints.
    ///
    /// # Errors
    /// [`AmmError::InvalidParameter`] naming the offending parameter.
    pub fn validate(&self) -> Result<(), AmmError> {
        match *self {
            AmmModel::UniswapV2 | AmmModel::MStable => Ok(()),
            AmmModel::Balancer { w } => {
                if !(w > 0.0 && w < 1.0) {
                    return Err(AmmError::InvalidParameter {
                        param: "w",
                        value: w,
                        constraint: "0 < w < 1",
                    });
                }
                Ok(())
            }
            AmmModel::UniswapV3 { alpha, beta } => {
                if !(alpha > 0.0) || !alpha.is_finite() {
                    return Err(AmmError::InvalidParameter {
                        param: "alpha",
                        value: alpha,
                        constraint: "alpha > 0",
                    });
                }
                if !(beta > 0.0) || !beta.is_finite() {
                    return Err(AmmError::InvalidParameter {
                        param: "beta",
                        value: beta,
                        constraint: "beta > 0",
                    });
                }
                Ok(())
            }
            AmmModel::StableSwap { c } | AmmModel::LStableSwap { c } => {
                if !(c > 0.0) || !c.is_finite() {
                    return Err(AmmError::InvalidParameter {
                        param: "c",
                        value: c,
                        constraint: "c > 0",
                    });
                }
                Ok(())
            }
            AmmModel::Curve { c } => {
                if !(c >= 1.0) || !c.is_finite() {
                    return Err(AmmError::InvalidParameter {
                        param: "c",
                        value: c,
                        constraint: "c >= 1",
                    });
                }
                Ok(())
            }
            AmmModel::Dodo { p_ext, c } => {
                if !(p_ext > 0.0) || !p_ext.is_finite() {
                    return Err(AmmError::InvalidParameter {
                        param: "p_ext",
                        value: p_ext,
                        constraint: "p_ext > 0",
                    });
                }
                if !(0.0..=1.0).contains(&c) {
                    return Err(AmmError::InvalidParameter {
                        param: "c",
                        value: c,
                        constraint: "0 <= c <= 1",
                    });
                }
                Ok(())
            }
            AmmModel::Sdamm(SdammUtility::Sinh { c, q }) => {
                if !(c > 0.0) || !c.is_finite() {
                    return Err(AmmError::InvalidParameter {
                        param: "c",
                        value: c,
                        constraint: "c > 0",
                    });
                }
                if !(q > 0.0 && q <= 1.0) {
                    return Err(AmmError::InvalidParameter {
                        param: "q",
                        value: q,
                        constraint: "0 < q <= 1",
                    });
                }
                Ok(())
            }
            AmmModel::Sdamm(SdammUtility::Custom(_)) => Ok(()),
        }
    }

    /// Stable kind string, matching the JSON descriptor `kind` field.
    pub fn kind(&self) -> &'static str {
        match self {
            AmmModel::UniswapV2 => "uniswap-v2",
            AmmModel::Balancer { .. } => "balancer",
            AmmModel::UniswapV3 { .. } => "uniswap-v3",
            AmmModel::MStable => "mstable",
            AmmModel::StableSwap { .. } => "stableswap",
            AmmModel::LStableSwap { .. } => "lstableswap",
            AmmModel::Curve { .. } => "curve",
            AmmModel::Dodo { .. } => "dodo",
            AmmModel::Sdamm(SdammUtility::Sinh { .. }) => "sdamm-sinh",
            AmmModel::Sdamm(SdammUtility::Custom(_)) => "sdamm-custom",
        }
    }

    /// The default catalog used by table-style reports: one representative
    /// parameterization of each of the eight standard designs.
    pub fn catalog() -> Vec<AmmModel> {
        vec![
            AmmModel::UniswapV2,
            AmmModel::Balancer { w: 0.75 },
            AmmModel::UniswapV3 { alpha: 1.0, beta: 1.0 },
            AmmModel::MStable,
            AmmModel::StableSwap { c: 1.0 },
            AmmModel::LStableSwap { c: 1.0 },
            AmmModel::Curve { c: 2.0 },
            AmmModel::Dodo { p_ext: 1.0, c: 0.5 },
        ]
    }

    /// Documented expectations for the nine structural properties, in
    /// [`crate::axiom::AxiomId::ALL`] order, or `None` for user-supplied
    /// utilities that come with no claims.
    pub fn claimed_axioms(&self) -> Option<[AxiomClaim; 9]> {
        use AxiomClaim::{Fails as F, Holds as H, HoldsNumerically as N, NotApplicable as X};
        match self {
            AmmModel::UniswapV2 => Some([H, H, H, H, H, H, H, H, H]),
            AmmModel::Balancer { .. } => Some([H, H, H, H, H, H, H, H, H]),
            AmmModel::UniswapV3 { .. } => Some([F, H, H, H, H, F, H, H, H]),
            AmmModel::MStable => Some([F, H, H, H, H, H, F, H, H]),
            AmmModel::StableSwap { .. } => Some([F, H, H, H, H, F, H, H, H]),
            AmmModel::LStableSwap { .. } => Some([H, H, H, H, H, H, H, H, H]),
            AmmModel::Curve { .. } => Some([H, H, H, H, N, H, H, N, N]),
            AmmModel::Dodo { c, .. } => {
                if *c == 0.0 {
                    // The constant-sum limit inherits the stablecoin
                    // pattern: drainable and price-pinned.
                    Some([F, H, H, H, H, H, F, H, X])
                } else {
                    Some([H, H, H, H, H, H, H, H, X])
                }
            }
            AmmModel::Sdamm(SdammUtility::Sinh { q, .. }) => {
                // Separability pins prices to a product form that cannot be
                // scale-invariant for any q; at q = 1 the marginal utility
                // saturates at C instead of vanishing, losing the
                // price-range property as well.
                if *q < 1.0 {
                    Some([H, H, H, H, H, F, H, H, H])
                } else {
                    Some([H, H, H, H, H, F, F, H, H])
                }
            }
            AmmModel::Sdamm(SdammUtility::Custom(_)) => None,
        }
    }

    /// Whether scaling both reserves by t > 0 provably preserves the
    /// preference order (claimed scale invariance). For these models the
    /// stronger statement u(tx, ty) = u(x, y) + k·ln t holds, so
    /// proportional deposits preserve the quoted price exactly.
    pub fn is_scale_invariant(&self) -> bool {
        self.claimed_axioms()
            .map(|claims| {
                claims[crate::axiom::AxiomId::ScaleInvariance.index()]
                    .expects_satisfied()
            })
            .unwrap_or(false)
    }

    /// Whether the quoted price is the same at every interior point
    /// (constant-sum designs), making price targets trivially degenerate.
    pub fn has_constant_price(&self) -> bool {
        matches!(self, AmmModel::MStable) || matches!(self, AmmModel::Dodo { c, .. } if *c == 0.0)
    }
}

impl fmt::Display for AmmModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmmModel::UniswapV2 => write!(f, "uniswap-v2"),
            AmmModel::Balancer { w } => write!(f, "balancer(w={w})"),
            AmmModel::UniswapV3 { alpha, beta } => {
                write!(f, "uniswap-v3(alpha={alpha}, beta={beta})")
            }
            AmmModel::MStable => write!(f, "mstable"),
            AmmModel::StableSwap { c } => write!(f, "stableswap(c={c})"),
            AmmModel::LStableSwap { c } => write!(f, "lstableswap(c={c})"),
            AmmModel::Curve { c } => write!(f, "curve(c={c})"),
            AmmModel::Dodo { p_ext, c } => write!(f, "dodo(p_ext={p_ext}, c={c})"),
            AmmModel::Sdamm(SdammUtility::Sinh { c, q }) => {
                write!(f, "sdamm-sinh(c={c}, q={q})")
            }
            AmmModel::Sdamm(SdammUtility::Custom(u)) => write!(f, "sdamm-custom({})", u.name()),
        }
    }
}

/// Where a derivative evaluation came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeSource {
    Analytic,
    FiniteDifference,
}

impl DerivativeSource {
    /// Stable label for reports.
    pub fn label(self) -> &'static str {
        match self {
            DerivativeSource::Analytic => "analytic",
            DerivativeSource::FiniteDifference => "finite-difference",
        }
    }
}

/// Value, gradient, and Hessian of a utility at one point, with provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UtilityEval {
    pub value: f64,
    /// (u_A, u_B).
    pub gradient: (f64, f64),
    /// (u_AA, u_AB, u_BB).
    pub hessian: (f64, f64, f64),
    pub source: DerivativeSource,
}

/// Utility value on the closed quadrant.
///
/// Boundary points return the model's limit value (−∞ for designs that
/// diverge when a reserve empties, a finite number for the ones that do
/// not); interior evaluation is exact closed form.
///
/// # Errors
/// [`AmmError::OutOfDomain`] for negative, NaN, or infinite coordinates;
/// parameter errors from [`AmmModel::validate`].
pub fn utility(model: &AmmModel, x: f64, y: f64) -> Result<f64, AmmError> {
    model.validate()?;
    if !(x >= 0.0) || !(y >= 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(AmmError::OutOfDomain { x, y });
    }
    let v = match *model {
        AmmModel::UniswapV2 => x.ln() + y.ln(),
        AmmModel::Balancer { w } => w * x.ln() + (1.0 - w) * y.ln(),
        AmmModel::UniswapV3 { alpha, beta } => (alpha + x).ln() + (beta + y).ln(),
        AmmModel::MStable => (x + y).ln(),
        AmmModel::StableSwap { c } => (c * (x + y) + x * y).ln(),
        AmmModel::LStableSwap { c } => c * (x + y).ln() + x.ln() + y.ln(),
        AmmModel::Curve { c } => curve_invariant(x, y, c)?.ln(),
        AmmModel::Dodo { p_ext, c } => dodo_value(p_ext, c, x, y),
        AmmModel::Sdamm(ref u) => u.value(x) + u.value(y),
    };
    Ok(v)
}

/// Utility and all partial derivatives through third order at an interior
/// point, as a single jet.
///
/// # Errors
/// Parameter errors from [`AmmModel::validate`]. (The `Reserves` argument
/// already guarantees an interior point.)
pub fn utility_jet(model: &AmmModel, r: Reserves) -> Result<Jet3, AmmError> {
    Ok(utility_jet_with_source(model, r)?.0)
}

pub(crate) fn utility_jet_with_source(
    model: &AmmModel,
    r: Reserves,
) -> Result<(Jet3, DerivativeSource), AmmError> {
    model.validate()?;
    let (x, y) = (r.a(), r.b());
    let jet = match *model {
        AmmModel::UniswapV2 => Jet3::var_x(x).ln() + Jet3::var_y(y).ln(),
        AmmModel::Balancer { w } => {
            Jet3::var_x(x).ln().scale(w) + Jet3::var_y(y).ln().scale(1.0 - w)
        }
        AmmModel::UniswapV3 { alpha, beta } => {
            Jet3::var_x(x).shift(alpha).ln() + Jet3::var_y(y).shift(beta).ln()
        }
        AmmModel::MStable => (Jet3::var_x(x) + Jet3::var_y(y)).ln(),
        AmmModel::StableSwap { c } => {
            let (xj, yj) = (Jet3::var_x(x), Jet3::var_y(y));
            ((xj + yj).scale(c) + xj * yj).ln()
        }
        AmmModel::LStableSwap { c } => {
            let (xj, yj) = (Jet3::var_x(x), Jet3::var_y(y));
            (xj + yj).ln().scale(c) + xj.ln() + yj.ln()
        }
        AmmModel::Curve { c } => curve_jet(x, y, c)?.ln(),
        AmmModel::Dodo { p_ext, c } => dodo_jet(p_ext, c, x, y),
        AmmModel::Sdamm(ref u) => {
            let (sx, src_x) = u.derivative_stack(x);
            let (sy, src_y) = u.derivative_stack(y);
            let jet = Jet3::univariate_x(sx) + Jet3::univariate_y(sy);
            let src = if src_x == DerivativeSource::Analytic
                && src_y == DerivativeSource::Analytic
            {
                DerivativeSource::Analytic
            } else {
                DerivativeSource::FiniteDifference
            };
            return Ok((jet, src));
        }
    };
    Ok((jet, DerivativeSource::Analytic))
}

/// Gradient (u_A, u_B) at an interior point.
pub fn utility_gradient(model: &AmmModel, r: Reserves) -> Result<(f64, f64), AmmError> {
    let jet = utility_jet(model, r)?;
    Ok((jet.dx, jet.dy))
}

/// Hessian (u_AA, u_AB, u_BB) at an interior point.
pub fn utility_hessian(model: &AmmModel, r: Reserves) -> Result<(f64, f64, f64), AmmError> {
    let jet = utility_jet(model, r)?;
    Ok((jet.dxx, jet.dxy, jet.dyy))
}

/// Value, gradient, and Hessian at an interior point with provenance.
pub fn utility_eval(model: &AmmModel, r: Reserves) -> Result<UtilityEval, AmmError> {
    let (jet, source) = utility_jet_with_source(model, r)?;
    Ok(UtilityEval {
        value: jet.v,
        gradient: (jet.dx, jet.dy),
        hessian: (jet.dxx, jet.dxy, jet.dyy),
        source,
    })
}

/// Closed-quadrant value for the proactive model.
fn dodo_value(p: f64, c: f64, x: f64, y: f64) -> f64 {
    if c == 0.0 {
        return (p * x + y).ln();
    }
    if x == 0.0 || y == 0.0 {
        return f64::NEG_INFINITY;
    }
    let k = 1.0 - c;
    let px = p * x;
    let (e, a) = if px <= y { (px * (k * px + y), k * px) } else { (y * (px + k * y), k * y) };
    (2.0 * e).ln() - (a + (a * a + c * e).sqrt()).ln()
}

/// Interior jet for the proactive model, branch chosen exactly as in
/// [`dodo_value`] so value and derivatives always agree.
fn dodo_jet(p: f64, c: f64, x: f64, y: f64) -> Jet3 {
    let xj = Jet3::var_x(x).scale(p);
    let yj = Jet3::var_y(y);
    if c == 0.0 {
        return (xj + yj).ln();
    }
    let k = 1.0 - c;
    let (e, a) = if p * x <= y {
        (xj * (xj.scale(k) + yj), xj.scale(k))
    } else {
        (yj * (xj + yj.scale(k)), yj.scale(k))
    };
    e.scale(2.0).ln() - (a + (a * a + e.scale(c)).sqrt()).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::fd;

    fn grid_models() -> Vec<AmmModel> {
        let mut models = AmmModel::catalog();
        models.push(AmmModel::sdamm_sinh(1.0, 0.8).unwrap());
        models.push(AmmModel::sdamm_sinh(1.0, 1.0).unwrap());
        models
    }

    #[test]
    fn parameter_validation_rejects_out_of_range_values() {
        let cases: Vec<(AmmModel, &str)> = vec![
            (AmmModel::Balancer { w: 0.0 }, "w"),
            (AmmModel::Balancer { w: 1.0 }, "w"),
            (AmmModel::Balancer { w: f64::NAN }, "w"),
            (AmmModel::UniswapV3 { alpha: 0.0, beta: 1.0 }, "alpha"),
            (AmmModel::UniswapV3 { alpha: 1.0, beta: -2.0 }, "beta"),
            (AmmModel::StableSwap { c: 0.0 }, "c"),
            (AmmModel::LStableSwap { c: -1.0 }, "c"),
            (AmmModel::Curve { c: 0.99 }, "c"),
            (AmmModel::Dodo { p_ext: 0.0, c: 0.5 }, "p_ext"),
            (AmmModel::Dodo { p_ext: 1.0, c: 1.5 }, "c"),
            (AmmModel::Sdamm(SdammUtility::Sinh { c: 0.0, q: 0.5 }), "c"),
            (AmmModel::Sdamm(SdammUtility::Sinh { c: 1.0, q: 0.0 }), "q"),
            (AmmModel::Sdamm(SdammUtility::Sinh { c: 1.0, q: 1.2 }), "q"),
        ];
        for (model, expect) in cases {
            let Err(AmmError::InvalidParameter { param, .. }) = model.validate() else {
                panic!("{model:?} should be rejected");
            };
            assert_eq!(param, expect, "wrong parameter blamed for {model:?}");
        }
    }

    #[test]
    fn boundary_values_follow_each_models_limit() {
        // Diverging designs hit −∞ the moment one reserve empties.
        for model in [
            AmmModel::uniswap_v2(),
            AmmModel::balancer(0.75).unwrap(),
            AmmModel::lstable_swap(1.0).unwrap(),
            AmmModel::curve(2.0).unwrap(),
            AmmModel::dodo(1.0, 0.5).unwrap(),
            AmmModel::sdamm_sinh(1.0, 0.8).unwrap(),
        ] {
            let Ok(v) = utility(&model, 0.0, 3.0) else { panic!() };
            assert_eq!(v, f64::NEG_INFINITY, "{model} should diverge on the axis");
            let Ok(v) = utility(&model, 3.0, 0.0) else { panic!() };
            assert_eq!(v, f64::NEG_INFINITY);
        }
        // Non-diverging designs stay finite on a single axis.
        let v3 = AmmModel::uniswap_v3(1.0, 2.0).unwrap();
        let Ok(v) = utility(&v3, 0.0, 3.0) else { panic!() };
        assert!((v - (1.0f64.ln() + 5.0f64.ln())).abs() < 1e-15);
        let Ok(v) = utility(&AmmModel::mstable(), 0.0, 3.0) else { panic!() };
        assert!((v - 3.0f64.ln()).abs() < 1e-15);
        let Ok(v) = utility(&AmmModel::mstable(), 0.0, 0.0) else { panic!() };
        assert_eq!(v, f64::NEG_INFINITY);
        let Ok(v) = utility(&AmmModel::stable_swap(2.0).unwrap(), 0.0, 3.0) else { panic!() };
        assert!((v - 6.0f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn out_of_domain_coordinates_are_rejected() {
        let m = AmmModel::uniswap_v2();
        for (x, y) in [(-1.0, 2.0), (2.0, -0.5), (f64::NAN, 1.0), (f64::INFINITY, 1.0)] {
            let Err(AmmError::OutOfDomain { .. }) = utility(&m, x, y) else {
                panic!("({x}, {y}) should be out of domain");
            };
        }
    }

    #[test]
    fn constant_sum_limit_of_proactive_model_is_exact() {
        let m = AmmModel::dodo(2.0, 0.0).unwrap();
        for (x, y) in [(1.0, 1.0), (0.3, 7.0), (1e-6, 1e6)] {
            let Ok(v) = utility(&m, x, y) else { panic!() };
            assert_eq!(v, (2.0 * x + y).ln(), "must be the closed form exactly");
        }
    }

    #[test]
    fn proactive_model_reduces_to_geometric_mean_at_full_concentration() {
        // At c = 1 the utility collapses to ln(2·sqrt(P·x·y)).
        let m = AmmModel::dodo(1.5, 1.0).unwrap();
        for (x, y) in [(1.0, 1.0), (0.2, 9.0), (40.0, 3.0)] {
            let Ok(v) = utility(&m, x, y) else { panic!() };
            let want = (2.0 * (1.5 * x * y).sqrt()).ln();
            assert!((v - want).abs() < 1e-12, "({x}, {y}): {v} vs {want}");
        }
    }

    #[test]
    fn gradients_match_finite_differences_across_the_catalog() {
        let r = Reserves::new(0.9, 2.3).unwrap();
        for model in grid_models() {
            let Ok((ua, ub)) = utility_gradient(&model, r) else {
                panic!("gradient failed for {model}");
            };
            let fa = fd::derivative(|t| utility(&model, t, r.b()).unwrap(), r.a());
            let fb = fd::derivative(|t| utility(&model, r.a(), t).unwrap(), r.b());
            assert!(((ua - fa) / fa).abs() < 1e-6, "{model}: u_A {ua} vs {fa}");
            assert!(((ub - fb) / fb).abs() < 1e-6, "{model}: u_B {ub} vs {fb}");
        }
    }

    #[test]
    fn hessians_match_finite_differences_across_the_catalog() {
        let r = Reserves::new(0.9, 2.3).unwrap();
        for model in grid_models() {
            let Ok((uaa, uab, ubb)) = utility_hessian(&model, r) else {
                panic!("hessian failed for {model}");
            };
            let faa = fd::second_derivative(|t| utility(&model, t, r.b()).unwrap(), r.a());
            let fbb = fd::second_derivative(|t| utility(&model, r.a(), t).unwrap(), r.b());
            let fab = fd::cross_derivative(|s, t| utility(&model, s, t).unwrap(), r.a(), r.b());
            let close = |got: f64, want: f64| {
                (got - want).abs() <= 1e-5 * want.abs().max(1e-3)
            };
            assert!(close(uaa, faa), "{model}: u_AA {uaa} vs {faa}");
            assert!(close(ubb, fbb), "{model}: u_BB {ubb} vs {fbb}");
            assert!(close(uab, fab), "{model}: u_AB {uab} vs {fab}");
        }
    }

    #[test]
    fn third_order_jet_matches_differenced_hessian_entries() {
        let r = Reserves::new(0.9, 2.3).unwrap();
        for model in grid_models() {
            let Ok(jet) = utility_jet(&model, r) else { panic!() };
            let hxx_of_x =
                |x: f64| utility_hessian(&model, Reserves::new(x, r.b()).unwrap()).unwrap().0;
            let hyy_of_y =
                |y: f64| utility_hessian(&model, Reserves::new(r.a(), y).unwrap()).unwrap().2;
            let hxx_of_y =
                |y: f64| utility_hessian(&model, Reserves::new(r.a(), y).unwrap()).unwrap().0;
            let hyy_of_x =
                |x: f64| utility_hessian(&model, Reserves::new(x, r.b()).unwrap()).unwrap().2;
            let close = |got: f64, want: f64| {
                (got - want).abs() <= 1e-4 * want.abs().max(1e-3)
            };
            assert!(close(jet.dxxx, fd::derivative(hxx_of_x, r.a())), "{model}: dxxx");
            assert!(close(jet.dyyy, fd::derivative(hyy_of_y, r.b())), "{model}: dyyy");
            assert!(close(jet.dxxy, fd::derivative(hxx_of_y, r.b())), "{model}: dxxy");
            assert!(close(jet.dxyy, fd::derivative(hyy_of_x, r.a())), "{model}: dxyy");
        }
    }

    #[test]
    fn proactive_model_is_continuously_differentiable_across_its_seam() {
        // The branch boundary sits at P·x = y; value and gradient must line
        // up from the two sides.
        let m = AmmModel::dodo(2.0, 0.7).unwrap();
        let x = 1.5;
        let seam = 3.0; // y with P·x = y
        let eps = 1e-9;
        let below = Reserves::new(x, seam - eps).unwrap();
        let above = Reserves::new(x, seam + eps).unwrap();
        let Ok(v_lo) = utility(&m, x, seam - eps) else { panic!() };
        let Ok(v_hi) = utility(&m, x, seam + eps) else { panic!() };
        assert!((v_lo - v_hi).abs() < 1e-8);
        let Ok((ua_lo, ub_lo)) = utility_gradient(&m, below) else { panic!() };
        let Ok((ua_hi, ub_hi)) = utility_gradient(&m, above) else { panic!() };
        assert!((ua_lo - ua_hi).abs() < 1e-6, "u_A jumps at seam: {ua_lo} vs {ua_hi}");
        assert!((ub_lo - ub_hi).abs() < 1e-6, "u_B jumps at seam: {ub_lo} vs {ub_hi}");
    }

    #[test]
    fn scale_invariant_models_shift_by_a_log_under_scaling() {
        let cases: Vec<(AmmModel, f64)> = vec![
            (AmmModel::uniswap_v2(), 2.0),
            (AmmModel::balancer(0.3).unwrap(), 1.0),
            (AmmModel::mstable(), 1.0),
            (AmmModel::lstable_swap(2.0).unwrap(), 4.0),
            (AmmModel::curve(3.0).unwrap(), 1.0),
            (AmmModel::dodo(1.2, 0.4).unwrap(), 1.0),
        ];
        let (x, y, t) = (0.7, 5.0, 13.0);
        for (model, k) in cases {
            assert!(model.is_scale_invariant(), "{model} should claim scale invariance");
            let Ok(u1) = utility(&model, x, y) else { panic!() };
            let Ok(ut) = utility(&model, t * x, t * y) else { panic!() };
            let want = u1 + k * t.ln();
            assert!((ut - want).abs() < 1e-9, "{model}: {ut} vs {want}");
        }
        assert!(!AmmModel::stable_swap(1.0).unwrap().is_scale_invariant());
        assert!(!AmmModel::uniswap_v3(1.0, 1.0).unwrap().is_scale_invariant());
        assert!(!AmmModel::sdamm_sinh(1.0, 0.8).unwrap().is_scale_invariant());
    }

    #[test]
    fn custom_utility_without_derivatives_falls_back_to_differences() {
        // A plain log fixture makes the separable pool coincide with the
        // constant-product pool, giving exact targets for the fallback.
        struct LogUtility;
        impl UnivariateUtility for LogUtility {
            fn name(&self) -> &str {
                "log"
            }
            fn value(&self, z: f64) -> f64 {
                z.ln()
            }
        }
        let m = AmmModel::sdamm_custom(Arc::new(LogUtility));
        let r = Reserves::new(2.0, 5.0).unwrap();
        let Ok(eval) = utility_eval(&m, r) else { panic!() };
        assert_eq!(eval.source, DerivativeSource::FiniteDifference);
        assert!((eval.gradient.0 - 0.5).abs() < 1e-7);
        assert!((eval.gradient.1 - 0.2).abs() < 1e-7);
        assert!((eval.hessian.0 + 0.25).abs() < 1e-5);
        assert!((eval.hessian.1).abs() < 1e-6, "cross term should vanish");
        assert!((eval.hessian.2 + 0.04).abs() < 1e-5);

        // The analytic catalog reports analytic provenance.
        let Ok(eval) = utility_eval(&AmmModel::uniswap_v2(), r) else { panic!() };
        assert_eq!(eval.source, DerivativeSource::Analytic);
    }

    #[test]
    fn catalog_contains_the_eight_standard_designs_in_order() {
        let kinds: Vec<&str> = AmmModel::catalog().iter().map(|m| m.kind()).collect();
        assert_eq!(
            kinds,
            [
                "uniswap-v2",
                "balancer",
                "uniswap-v3",
                "mstable",
                "stableswap",
                "lstableswap",
                "curve",
                "dodo"
            ]
        );
        for model in AmmModel::catalog() {
            let Ok(()) = model.validate() else { panic!("catalog entry {model} invalid") };
            assert!(model.claimed_axioms().is_some(), "catalog entry {model} must carry claims");
        }
    }

    #[test]
    fn reserves_constructor_rejects_non_interior_points() {
        for (a, b) in [(0.0, 1.0), (1.0, 0.0), (-2.0, 1.0), (f64::NAN, 1.0), (f64::INFINITY, 1.0)]
        {
            let Err(AmmError::InvalidReserves { .. }) = Reserves::new(a, b) else {
                panic!("({a}, {b}) should be rejected");
            };
        }
        let Ok(r) = Reserves::new(3.0, 4.0) else { panic!() };
        assert_eq!((r.a(), r.b()), (3.0, 4.0));
    }

    #[test]
    fn display_strings_name_the_parameterization() {
        assert_eq!(AmmModel::uniswap_v2().to_string(), "uniswap-v2");
        assert_eq!(AmmModel::balancer(0.75).unwrap().to_string(), "balancer(w=0.75)");
        assert_eq!(
            AmmModel::sdamm_sinh(1.0, 0.8).unwrap().to_string(),
            "sdamm-sinh(c=1, q=0.8)"
        );
    }
}
