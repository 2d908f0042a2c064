//! Grid configuration and report types for the numeric axiom checks.
//!
//! Pointwise properties (monotonicity, quasiconcavity, scale invariance,
//! the price-sign and liquidity conditions) are evaluated exhaustively on
//! a log-spaced product grid. Limit properties (boundary divergence,
//! unbounded growth, the marginal-utility limits) are probed along
//! geometric decade sequences, and the checker records the full probe
//! data so a report reader can see the trend, not just the verdict.

use std::fmt;

use crate::axiom::{AxiomClaim, AxiomId};
use crate::error::AmmError;

/// Grid and probe configuration for one certification run.
///
/// The same configuration always yields the same report for the same
/// model: every sample point, probe sequence, and comparison below is a
/// deterministic function of these fields.
#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    /// Log-spaced range for the A reserve, endpoints included.
    pub a_range: (f64, f64),
    /// Log-spaced range for the B reserve, endpoints included.
    pub b_range: (f64, f64),
    /// Points per axis; the pointwise checks visit the full product grid.
    pub points_per_axis: usize,
    /// Limit probes run over 10^0, 10^±1, …, 10^±probe_decades.
    pub probe_decades: u32,
    /// Multiplier applied to every roundoff tolerance (not to the
    /// structural thresholds such as tail ratios).
    pub tolerance_scale: f64,
}

impl Default for GridConfig {
    /// 16×16 log-spaced over [1e-3, 1e3]², probes to 1e±8: covers the
    /// balanced and heavily imbalanced regimes at desk-scale cost.
    fn default() -> GridConfig {
        GridConfig {
            a_range: (1e-3, 1e3),
            b_range: (1e-3, 1e3),
            points_per_axis: 16,
            probe_decades: 8,
            tolerance_scale: 1.0,
        }
    }
}

impl GridConfig {
    /// Checks the configuration invariants.
    ///
    /// # Errors
    /// [`AmmError::InvalidInput`] for a nonpositive or reversed range,
    /// fewer than 8 points per axis, a zero probe depth, or a bad
    /// tolerance scale.
    pub fn validate(&self) -> Result<(), AmmError> {
        for (name, (lo, hi)) in [("a_range", self.a_range), ("b_range", self.b_range)] {
            if !(lo > 0.0) || !lo.is_finite() || !(hi > lo) || !hi.is_finite() {
                return Err(AmmError::InvalidInput {
                    name,
                    value: if lo.is_finite() && lo > 0.0 { hi } else { lo },
                    constraint: "0 < lo < hi, both finite",
                });
            }
        }
        if self.points_per_axis < 8 {
            return Err(AmmError::InvalidInput {
                name: "points_per_axis",
                value: self.points_per_axis as f64,
                constraint: ">= 8",
            });
        }
        if self.probe_decades == 0 || self.probe_decades > 250 {
            return Err(AmmError::InvalidInput {
                name: "probe_decades",
                value: f64::from(self.probe_decades),
                constraint: "1..=250",
            });
        }
        if !(self.tolerance_scale > 0.0) || !self.tolerance_scale.is_finite() {
            return Err(AmmError::InvalidInput {
                name: "tolerance_scale",
                value: self.tolerance_scale,
                constraint: "finite and > 0",
            });
        }
        Ok(())
    }

    /// Log-spaced axis points for the A reserve, ascending.
    pub fn axis_a(&self) -> Vec<f64> {
        log_axis(self.a_range, self.points_per_axis)
    }

    /// Log-spaced axis points for the B reserve, ascending.
    pub fn axis_b(&self) -> Vec<f64> {
        log_axis(self.b_range, self.points_per_axis)
    }

    /// Geometric probe sequence 10^0, 10^1, …, 10^probe_decades.
    pub fn probes_up(&self) -> Vec<f64> {
        (0..=self.probe_decades as i32).map(|k| 10f64.powi(k)).collect()
    }

    /// Geometric probe sequence 10^0, 10^−1, …, 10^−probe_decades.
    pub fn probes_down(&self) -> Vec<f64> {
        (0..=self.probe_decades as i32).map(|k| 10f64.powi(-k)).collect()
    }

    /// Anchor values for the held-fixed coordinate in limit probes: the
    /// range endpoints and the geometric midpoint.
    pub fn anchors(r: (f64, f64)) -> [f64; 3] {
        [r.0, (r.0 * r.1).sqrt(), r.1]
    }
}

impl fmt::Display for GridConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{n}x{n} log grid on [{:.3e}, {:.3e}]x[{:.3e}, {:.3e}], limit probes to 1e±{}, tolerance scale {}",
            self.a_range.0,
            self.a_range.1,
            self.b_range.0,
            self.b_range.1,
            self.probe_decades,
            self.tolerance_scale,
            n = self.points_per_axis,
        )
    }
}

fn log_axis((lo, hi): (f64, f64), n: usize) -> Vec<f64> {
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            // Pin the endpoints: exp(ln x) need not round-trip exactly,
            // and the axis advertises that it spans [lo, hi].
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                let t = i as f64 / (n - 1) as f64;
                (llo + t * (lhi - llo)).exp()
            }
        })
        .collect()
}

/// Concrete evidence for a violated check: the probed inputs and the
/// values that broke the inequality, sufficient to re-evaluate the
/// violation deterministically.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    /// Primary probe point (x, y).
    pub point: (f64, f64),
    /// Second point for pairwise checks (quasiconcavity pairs, scaling
    /// pairs).
    pub counterpoint: Option<(f64, f64)>,
    /// Scalar parameter of the comparison: λ for triple checks, t for
    /// scalings, the probe coordinate for limit checks.
    pub parameter: Option<f64>,
    /// The values that violated the inequality, in the order the
    /// `detail` text names them.
    pub values: Vec<f64>,
    /// The broken inequality, spelled out.
    pub detail: String,
}

/// Outcome of one numeric check.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Satisfied,
    Violated(Witness),
    /// The model makes no claim about this property and the check is
    /// skipped (the proactive design's liquidity condition).
    NotApplicable,
}

impl Verdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, Verdict::Satisfied)
    }

    /// Stable label for reports.
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Satisfied => "satisfied",
            Verdict::Violated(_) => "violated",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}

/// How a probed sequence behaved in its tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrendClass {
    /// Monotone toward zero with a still-shrinking tail.
    DecaysToZero,
    /// Monotone upward without stabilizing.
    DivergesUp,
    /// Monotone downward without stabilizing.
    DivergesDown,
    /// Settles on a finite positive value.
    Stabilizes,
    /// None of the above patterns held.
    Inconclusive,
}

impl TrendClass {
    /// Stable label for reports.
    pub fn label(self) -> &'static str {
        match self {
            TrendClass::DecaysToZero => "decays-to-zero",
            TrendClass::DivergesUp => "diverges-up",
            TrendClass::DivergesDown => "diverges-down",
            TrendClass::Stabilizes => "stabilizes",
            TrendClass::Inconclusive => "inconclusive",
        }
    }
}

/// A recorded limit probe: which quantity was swept, the geometric
/// sequence of inputs, the observed values, and the classification the
/// verdict used.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeTrend {
    /// The probed quantity, e.g. `u_A(x -> inf, y=1)`.
    pub quantity: String,
    pub inputs: Vec<f64>,
    pub values: Vec<f64>,
    pub class: TrendClass,
}

/// The verdict for one property, with the probe data behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomCheck {
    pub id: AxiomId,
    pub verdict: Verdict,
    /// Probe sequences recorded by limit-style checks; empty for
    /// pointwise checks.
    pub trends: Vec<ProbeTrend>,
    /// What was evaluated, for the report.
    pub policy: String,
}

/// The full nine-property report for one model.
///
/// Reports are deterministic: the same model, grid, and tolerances
/// produce a byte-identical report.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    /// Display form of the checked model.
    pub model: String,
    /// The model's documented expectations, when it carries any.
    pub claims: Option<[AxiomClaim; 9]>,
    /// One check per property, in [`AxiomId::ALL`] order.
    pub checks: Vec<AxiomCheck>,
    /// The grid the checks ran on.
    pub grid: GridConfig,
    /// The tolerances and thresholds used, as (name, value) pairs.
    pub tolerances: Vec<(&'static str, f64)>,
}

impl AxiomReport {
    /// The check for one property.
    pub fn check(&self, id: AxiomId) -> &AxiomCheck {
        &self.checks[id.index()]
    }

    /// Properties whose verdict disagrees with the model's claim, in
    /// canonical order; `None` when the model carries no claims.
    ///
    /// A `Holds` or `HoldsNumerically` claim expects `Satisfied`, `Fails`
    /// expects `Violated`, and `NotApplicable` expects the check to have
    /// been skipped.
    pub fn claim_mismatches(&self) -> Option<Vec<AxiomId>> {
        let claims = self.claims?;
        let mut out = Vec::new();
        for id in AxiomId::ALL {
            let ok = match claims[id.index()] {
                AxiomClaim::Holds | AxiomClaim::HoldsNumerically => {
                    self.check(id).verdict.is_satisfied()
                }
                AxiomClaim::Fails => matches!(self.check(id).verdict, Verdict::Violated(_)),
                AxiomClaim::NotApplicable => {
                    matches!(self.check(id).verdict, Verdict::NotApplicable)
                }
            };
            if !ok {
                out.push(id);
            }
        }
        Some(out)
    }
}
