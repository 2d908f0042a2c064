//! Structural properties of market-maker utilities, and numeric checks
//! that test each one on a grid.
//!
//! A pool utility u(x, y) is more than an arbitrary score: the swap,
//! oracle, fee, and divergence machinery each lean on specific structural
//! properties. This module names those properties, records which ones each
//! catalog model is expected to satisfy, and provides grid-based checkers
//! that probe them numerically and report witnesses when they fail.
//!
//! The nine properties:
//!
//! * **boundary-divergence** — u → −∞ as either reserve is emptied, and is
//!   finite inside the open quadrant. Pools with this property can never be
//!   fully drained by trading.
//! * **unbounded-growth** — u → ∞ along the diagonal as both reserves grow.
//! * **strict-monotonicity** — more of either asset is strictly better.
//! * **continuity** — u is continuous on the open quadrant.
//! * **quasiconcavity** — upper level sets are convex; swaps quoted from u
//!   are well posed and path independent.
//! * **scale-invariance** — u(z) ≥ u(z̄) implies u(tz) ≥ u(tz̄) for t ≥ 0:
//!   preference order is unchanged by pool size, which makes proportional
//!   pooling price-preserving.
//! * **inada** — the marginal-rate limits at extremes: own marginal utility
//!   ratios drive the quoted price to 0 (resp. ∞) as a reserve grows
//!   (resp. empties) in the right pattern, so prices span (0, ∞).
//! * **price-monotonicity** — u is C¹ with positive partials and the quoted
//!   price P = u_A/u_B is nonincreasing in x and nondecreasing in y: buying
//!   an asset never makes it cheaper.
//! * **liquidity-condition** — a second-order inequality on P,
//!   `P_B·P_AA − (P·P_B + P_A)·P_AB + P·P_A·P_BB ≥ 0`, under which the
//!   divergence of pooling versus holding behaves as fee revenue
//!   compensation requires.

pub mod grid;
pub mod theorems;
pub mod verify;

pub use grid::{
    AxiomCheck, AxiomReport, GridConfig, ProbeTrend, TrendClass, Verdict, Witness,
};
pub use theorems::{check_theorem_suite, CheckStatus, TheoremCheck, TheoremSuiteReport};
pub use verify::{check_all, check_axiom};

/// Identifier for one of the nine checkable structural properties.
///
/// The enum order is the canonical report order used everywhere a full set
/// of verdicts is emitted (reports, CSV columns, claim tables).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxiomId {
    BoundaryDivergence,
    UnboundedGrowth,
    StrictMonotonicity,
    Continuity,
    Quasiconcavity,
    ScaleInvariance,
    InadaConditions,
    PriceMonotonicity,
    LiquidityCondition,
}

impl AxiomId {
    /// All nine properties in canonical report order.
    pub const ALL: [AxiomId; 9] = [
        AxiomId::BoundaryDivergence,
        AxiomId::UnboundedGrowth,
        AxiomId::StrictMonotonicity,
        AxiomId::Continuity,
        AxiomId::Quasiconcavity,
        AxiomId::ScaleInvariance,
        AxiomId::InadaConditions,
        AxiomId::PriceMonotonicity,
        AxiomId::LiquidityCondition,
    ];

    /// Stable kebab-case label, used in CSV headers and CLI output.
    pub fn label(self) -> &'static str {
        match self {
            AxiomId::BoundaryDivergence => "boundary-divergence",
            AxiomId::UnboundedGrowth => "unbounded-growth",
            AxiomId::StrictMonotonicity => "strict-monotonicity",
            AxiomId::Continuity => "continuity",
            AxiomId::Quasiconcavity => "quasiconcavity",
            AxiomId::ScaleInvariance => "scale-invariance",
            AxiomId::InadaConditions => "inada",
            AxiomId::PriceMonotonicity => "price-monotonicity",
            AxiomId::LiquidityCondition => "liquidity-condition",
        }
    }

    /// Parses a kebab-case label back into an identifier.
    pub fn from_label(s: &str) -> Option<AxiomId> {
        AxiomId::ALL.into_iter().find(|id| id.label() == s)
    }

    /// Position of this property in [`AxiomId::ALL`].
    pub fn index(self) -> usize {
        AxiomId::ALL.iter().position(|id| *id == self).expect("member of ALL")
    }
}

/// What a model's documentation claims about one property.
///
/// `HoldsNumerically` marks claims that rest on numeric evidence rather
/// than a closed-form argument (the amplified-invariant model's curvature
/// properties); checkers treat it like `Holds` but reports keep the
/// distinction visible. `NotApplicable` marks properties a model makes no
/// claim about (the proactive model's liquidity condition), and checkers
/// skip them when comparing against claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomClaim {
    Holds,
    HoldsNumerically,
    Fails,
    NotApplicable,
}

impl AxiomClaim {
    /// Whether a checker run is expected to report `satisfied` for this
    /// claim. `NotApplicable` returns false; callers skip such entries
    /// before comparing.
    pub fn expects_satisfied(self) -> bool {
        matches!(self, AxiomClaim::Holds | AxiomClaim::HoldsNumerically)
    }

    /// Stable label for reports.
    pub fn label(self) -> &'static str {
        match self {
            AxiomClaim::Holds => "holds",
            AxiomClaim::HoldsNumerically => "holds-numerically",
            AxiomClaim::Fails => "fails",
            AxiomClaim::NotApplicable => "not-applicable",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for id in AxiomId::ALL {
            assert_eq!(AxiomId::from_label(id.label()), Some(id));
        }
        assert_eq!(AxiomId::from_label("marginal-rate"), None);
    }

    #[test]
    fn canonical_order_is_stable() {
        let labels: Vec<&str> = AxiomId::ALL.iter().map(|id| id.label()).collect();
        assert_eq!(
            labels,
            [
                "boundary-divergence",
                "unbounded-growth",
                "strict-monotonicity",
                "continuity",
                "quasiconcavity",
                "scale-invariance",
                "inada",
                "price-monotonicity",
                "liquidity-condition",
            ]
        );
    }
}
