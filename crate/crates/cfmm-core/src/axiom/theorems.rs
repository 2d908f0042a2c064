//! The operational consequences of the structural properties, run as a
//! named check suite against the swap engine and the oracle.
//!
//! Where [`verify`](crate::axiom::verify) probes the utility itself,
//! this suite exercises the machinery built on top of it: quotes must
//! be monotone, concave, subadditive, and path-independent; fee-less
//! round trips must return the input; price-preserving deposits must
//! deepen every quote; the oracle must match the marginal quote from
//! both sides and span the full price range.
//!
//! Each check is gated on the structural properties its statement
//! assumes. A model whose documentation disclaims a property gets
//! `Skipped` for the checks that need it — a constant-sum pool is not
//! expected to return round trips exactly, and a saturating separable
//! design is not expected to admit price-preserving deposits at every
//! state. Models without documentation (user-supplied utilities) run
//! everything.

use crate::axiom::grid::{GridConfig, Witness};
use crate::axiom::AxiomId;
use crate::error::AmmError;
use crate::model::{self, AmmModel, Reserves};
use crate::oracle;
use crate::swap::{self, SwapQuote};

/// Relative tolerance for the quote identities (homogeneity, the split
/// identity, pooling dominance) and for second-difference concavity.
pub const QUOTE_RTOL: f64 = 1e-9;
/// Absolute noise floor granted to every quote comparison, as a
/// fraction of the counter-reserve, covering the swap solver tolerance.
pub const QUOTE_NOISE: f64 = 1e-11;
/// Round-trip shortfall bound for boundary-divergent models.
pub const ROUND_TRIP_RTOL: f64 = 1e-8;
/// Bound on |P · X'(0) − 1| in the bid-ask spread check.
pub const SPREAD_TOL: f64 = 1e-8;
/// Relative tolerance for price invariance under reserve scaling.
pub const PRICE_SCALE_RTOL: f64 = 1e-10;
/// Relative tolerance between the price and the one-sided marginal
/// quote at step 1e-6·a.
pub const MARGINAL_RTOL: f64 = 1e-5;
/// Input multiple and payout fraction for the reserve-exhaustion check:
/// selling `1e9·a` must collect at least 99.9% of the counter-reserve.
pub const EXHAUST_INPUT_SCALE: f64 = 1e9;
pub const EXHAUST_PAYOUT_FRACTION: f64 = 0.999;
/// The price levels the oracle must reach in the span check.
pub const SPAN_HIGH: f64 = 1e3;
pub const SPAN_LOW: f64 = 1e-3;
/// Reserve ratios tried, in order, when probing the span.
const SPAN_RATIOS: [f64; 3] = [1e4, 1e8, 1e15];
/// Scaling factors for quote homogeneity and price scale invariance.
const HOMOGENEITY_FACTORS: [f64; 3] = [0.5, 2.0, 10.0];
const PRICE_SCALE_FACTORS: [f64; 3] = [0.1, 3.0, 100.0];

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub enum CheckStatus {
    Passed,
    Failed(Witness),
    /// The model's documentation disclaims a property the check
    /// assumes; the reason names the missing properties.
    Skipped,
}

impl CheckStatus {
    pub fn is_passed(&self) -> bool {
        matches!(self, CheckStatus::Passed)
    }

    /// Stable label for reports.
    pub fn label(&self) -> &'static str {
        match self {
            CheckStatus::Passed => "passed",
            CheckStatus::Failed(_) => "failed",
            CheckStatus::Skipped => "skipped",
        }
    }
}

/// One named check and its outcome. `detail` carries the pass summary,
/// the failure description, or the skip reason.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremCheck {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

/// The full suite for one model.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremSuiteReport {
    pub model: String,
    pub checks: Vec<TheoremCheck>,
}

impl TheoremSuiteReport {
    /// Looks up a check by name.
    pub fn check(&self, name: &str) -> Option<&TheoremCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// (passed, failed, skipped) counts.
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut n = (0, 0, 0);
        for c in &self.checks {
            match c.status {
                CheckStatus::Passed => n.0 += 1,
                CheckStatus::Failed(_) => n.1 += 1,
                CheckStatus::Skipped => n.2 += 1,
            }
        }
        n
    }

    /// True when nothing failed (skips allowed).
    pub fn no_failures(&self) -> bool {
        self.counts().1 == 0
    }
}

/// Runs the full operational suite. Sample states are the log-space
/// quarter points of the grid ranges: one balanced mid-scale state, two
/// strongly lopsided ones, and one balanced large one.
///
/// # Errors
/// [`AmmError::InvalidParameter`] for an invalid model and
/// [`AmmError::InvalidInput`] for an invalid grid; check failures are
/// reported in the result, never as errors.
pub fn check_theorem_suite(
    model: &AmmModel,
    grid: &GridConfig,
) -> Result<TheoremSuiteReport, AmmError> {
    model.validate()?;
    grid.validate()?;
    let states = sample_states(grid);

    use AxiomId::*;
    let checks = vec![
        run("zero-input-zero-output", gate(model, &[StrictMonotonicity], &[]), || {
            zero_input(model, &states)
        }),
        run("utility-preserved-on-swap", gate(model, &[Continuity], &[]), || {
            utility_preserved(model, &states)
        }),
        run("output-within-counter-reserve", gate(model, &[Continuity], &[]), || {
            output_bound(model, &states)
        }),
        run("swap-monotone-in-input", gate(model, &[StrictMonotonicity], &[]), || {
            monotone_input(model, &states)
        }),
        run(
            "swap-concave-in-input",
            gate(model, &[Continuity], &[Quasiconcavity, PriceMonotonicity]),
            || concave_input(model, &states),
        ),
        run(
            "swap-homogeneous-under-scaling",
            gate(model, &[Continuity, ScaleInvariance], &[]),
            || homogeneous(model, &states),
        ),
        run(
            "swap-subadditive",
            gate(
                model,
                &[StrictMonotonicity, Continuity],
                &[Quasiconcavity, PriceMonotonicity],
            ),
            || subadditive(model, &states),
        ),
        run(
            "split-trade-identity",
            gate(model, &[BoundaryDivergence, StrictMonotonicity, Continuity], &[]),
            || split_identity(model, &states),
        ),
        run(
            "exhausts-counter-reserve-in-limit",
            gate(model, &[UnboundedGrowth, StrictMonotonicity, Continuity], &[]),
            || exhaust_limit(model, &states),
        ),
        run(
            "quote-decreasing-in-own-reserve",
            gate(model, &[BoundaryDivergence, PriceMonotonicity], &[]),
            || reserve_monotone(model, &states),
        ),
        run(
            "round-trip-returns-input",
            gate(model, &[BoundaryDivergence, StrictMonotonicity, Continuity], &[]),
            || round_trip_equality(model, &states),
        ),
        run("round-trip-never-profits", None, || round_trip_no_profit(model, &states)),
        run(
            "pooling-increases-liquidity",
            gate(
                model,
                &[
                    BoundaryDivergence,
                    Quasiconcavity,
                    InadaConditions,
                    PriceMonotonicity,
                    LiquidityCondition,
                ],
                &[],
            ),
            || pooling_deepens(model, &states),
        ),
        run("no-bid-ask-spread", gate(model, &[PriceMonotonicity], &[]), || {
            no_spread(model, &states)
        }),
        run("price-scale-invariant", gate(model, &[ScaleInvariance], &[]), || {
            price_scale(model, &states)
        }),
        run(
            "price-spans-extremes",
            gate(
                model,
                &[BoundaryDivergence, Quasiconcavity, InadaConditions, PriceMonotonicity],
                &[],
            ),
            || price_span(model),
        ),
        run("price-matches-marginal-quote", None, || marginal_quote(model, &states)),
    ];

    Ok(TheoremSuiteReport { model: model.to_string(), checks })
}

/// Skip reason when the model's claims disclaim a required property:
/// every entry of `all` must be claimed, and at least one of `any`
/// (when nonempty). Models without claims run everything.
fn gate(model: &AmmModel, all: &[AxiomId], any: &[AxiomId]) -> Option<String> {
    let claims = model.claimed_axioms()?;
    let ok = |id: AxiomId| claims[id.index()].expects_satisfied();
    let mut missing: Vec<String> =
        all.iter().filter(|id| !ok(**id)).map(|id| id.label().to_string()).collect();
    if !any.is_empty() && !any.iter().any(|id| ok(*id)) {
        missing
            .push(any.iter().map(|id| id.label()).collect::<Vec<_>>().join(" or "));
    }
    if missing.is_empty() {
        None
    } else {
        Some(format!("hypothesis not claimed: {}", missing.join(", ")))
    }
}

fn run(
    name: &'static str,
    skip: Option<String>,
    body: impl FnOnce() -> Result<String, Witness>,
) -> TheoremCheck {
    match skip {
        Some(reason) => TheoremCheck { name, status: CheckStatus::Skipped, detail: reason },
        None => match body() {
            Ok(detail) => TheoremCheck { name, status: CheckStatus::Passed, detail },
            Err(w) => {
                let detail = w.detail.clone();
                TheoremCheck { name, status: CheckStatus::Failed(w), detail }
            }
        },
    }
}

fn sample_states(grid: &GridConfig) -> Vec<Reserves> {
    let log_point = |r: (f64, f64), t: f64| (r.0.ln() * (1.0 - t) + r.1.ln() * t).exp();
    let (a_lo, a_mid, a_hi) = (
        log_point(grid.a_range, 0.25),
        log_point(grid.a_range, 0.5),
        log_point(grid.a_range, 0.75),
    );
    let (b_lo, b_mid, b_hi) = (
        log_point(grid.b_range, 0.25),
        log_point(grid.b_range, 0.5),
        log_point(grid.b_range, 0.75),
    );
    [(a_mid, b_mid), (a_lo, b_hi), (a_hi, b_lo), (a_hi, b_hi)]
        .into_iter()
        .map(|(a, b)| Reserves::new(a, b).expect("interior sample state"))
        .collect()
}

fn wfail(point: (f64, f64), values: Vec<f64>, detail: String) -> Witness {
    Witness { point, counterpoint: None, parameter: None, values, detail }
}

fn werr(what: &str, r: Reserves, amount: f64, e: &AmmError) -> Witness {
    Witness {
        point: (r.a(), r.b()),
        counterpoint: None,
        parameter: Some(amount),
        values: vec![],
        detail: format!("{what}({amount}) at ({}, {}) failed: {e}", r.a(), r.b()),
    }
}

fn sell_a(model: &AmmModel, r: Reserves, x: f64) -> Result<SwapQuote, Witness> {
    swap::swap_y(model, r, x).map_err(|e| werr("swap_y", r, x, &e))
}

fn sell_b(model: &AmmModel, r: Reserves, y: f64) -> Result<SwapQuote, Witness> {
    swap::swap_x(model, r, y).map_err(|e| werr("swap_x", r, y, &e))
}

fn u_of(model: &AmmModel, x: f64, y: f64) -> Result<f64, Witness> {
    model::utility(model, x, y).map_err(|e| {
        wfail((x, y), vec![], format!("u({x}, {y}) failed to evaluate: {e}"))
    })
}

/// Trade-size ladder for a state, as fractions of the sold-side reserve.
fn ladder(reserve: f64) -> [f64; 3] {
    [0.25 * reserve, reserve, 4.0 * reserve]
}

fn zero_input(model: &AmmModel, states: &[Reserves]) -> Result<String, Witness> {
    for &r in states {
        for (what, q) in
            [("swap_y", sell_a(model, r, 0.0)?), ("swap_x", sell_b(model, r, 0.0)?)]
        {
            if q.output_amount != 0.0 || q.exhausting {
                return Err(wfail(
                    (r.a(), r.b()),
                    vec![q.output_amount],
                    format!(
                        "{what}(0) at ({}, {}) pays out {} instead of exactly zero",
                        r.a(),
                        r.b(),
                        q.output_amount
                    ),
                ));
            }
        }
    }
    Ok(format!("zero-size trades pay exactly zero at {} states", states.len()))
}

fn utility_preserved(model: &AmmModel, states: &[Reserves]) -> Result<String, Witness> {
    let mut trades = 0;
    for &r in states {
        for x in ladder(r.a()) {
            let q = sell_a(model, r, x)?;
            check_level(model, r, x, &q)?;
            trades += 1;
        }
        for y in ladder(r.b()) {
            let q = sell_b(model, r, y)?;
            check_level(model, r, y, &q)?;
            trades += 1;
        }
    }
    Ok(format!("post-trade utility matches the pre-trade level on {trades} trades"))
}

fn check_level(model: &AmmModel, r: Reserves, input: f64, q: &SwapQuote) -> Result<(), Witness> {
    let u0 = u_of(model, r.a(), r.b())?;
    let u1 = u_of(model, q.post_reserves.a(), q.post_reserves.b())?;
    let tol = QUOTE_RTOL * u0.abs().max(1.0);
    let ok = if q.exhausting { u1 >= u0 - tol } else { (u1 - u0).abs() <= tol };
    if !ok {
        return Err(wfail(
            (r.a(), r.b()),
            vec![input, u0, u1],
            format!(
                "selling {input} at ({}, {}) moved utility from {u0} to {u1}",
                r.a(),
                r.b()
            ),
        ));
    }
    Ok(())
}

fn output_bound(model: &AmmModel, states: &[Reserves]) -> Result<String, Witness> {
    let strict = gate(
        model,
        &[AxiomId::BoundaryDivergence, AxiomId::Continuity],
        &[],
    )
    .is_none();
    for &r in states {
        for x in ladder(r.a()) {
            let q = sell_a(model, r, x)?;
            let cap_ok =
                q.output_amount <= r.b() * (1.0 + QUOTE_NOISE) && q.output_amount >= 0.0;
            // Strictness is read off the post reserve: a near-total
            // payout can round to the full reserve while the remnant the
            // quote carries stays positive.
            let strict_ok = !strict || (!q.exhausting && q.post_reserves.b() > 0.0);
            if !cap_ok || !strict_ok {
                return Err(wfail(
                    (r.a(), r.b()),
                    vec![x, q.output_amount],
                    format!(
                        "selling {x} at ({}, {}) pays {} against a counter-reserve of {}",
                        r.a(),
                        r.b(),
                        q.output_amount,
                        r.b()
                    ),
                ));
            }
        }
    }
    let kind = if strict { "strictly inside" } else { "within" };
    Ok(format!("payouts stay {kind} the counter-reserve at {} states", states.len()))
}

fn monotone_input(model: &AmmModel, states: &[Reserves]) -> Result<String, Witness> {
    let strict = gate(
        model,
        &[AxiomId::BoundaryDivergence, AxiomId::Continuity],
        &[],
    )
    .is_none();
    for &r in states {
        let xs = [0.0, 0.25 * r.a(), 0.5 * r.a(), r.a(), 2.0 * r.a(), 4.0 * r.a()];
        let mut prev = 0.0_f64;
        let mut prev_left = r.b();
        for (i, &x) in xs.iter().enumerate() {
            let q = sell_a(model, r, x)?;
            let (y, left) = (q.output_amount, q.post_reserves.b());
            // Strictness compares what is left rather than what is paid:
            // near-total payouts round to the full reserve while the
            // remnant stays representable and strictly falling.
            let ok = if strict && i > 0 {
                left < prev_left
            } else {
                y >= prev - QUOTE_NOISE * r.b().max(1.0)
            };
            if !ok {
                return Err(wfail(
                    (r.a(), r.b()),
                    vec![xs[i.saturating_sub(1)], x, prev, y],
                    format!(
                        "payout stalled between {prev} and {y} as the input grew to \
                         {x} at ({}, {})",
                        r.a(),
                        r.b()
                    ),
                ));
            }
            prev = y;
            prev_left = left;
        }
    }
    let kind = if strict { "strictly increasing" } else { "nondecreasing" };
    Ok(format!("payout is {kind} in the input at {} states", states.len()))
}

fn concave_input(model: &AmmModel, states: &[Reserves]) -> Result<String, Witness> {
    for &r in states {
        let h = 0.25 * r.a();
        let ys: Vec<f64> = (0..=8)
            .map(|i| sell_a(model, r, i as f64 * h).map(|q| q.output_amount))
            .collect::<Result<_, _>>()?;
        let tol = QUOTE_RTOL * r.b().max(1.0);
        for i in 1..8 {
            let second = ys[i + 1] - 2.0 * ys[i] + ys[i - 1];
            if second > tol {
                return Err(wfail(
                    (r.a(), r.b()),
                    vec![i as f64 * h, ys[i - 1], ys[i], ys[i + 1]],
                    format!(
                        "second difference {second} at input {} of ({}, {}) breaks \
                         concavity",
                        i as f64 * h,
                        r.a(),
                        r.b()
                    ),
                ));
            }
        }
    }
    Ok(format!("payout curve is concave on 9-point ladders at {} states", states.len()))
}

fn homogeneous(model: &AmmModel, states: &[Reserves]) -> Result<String, Witness> {
    for &r in states {
        let x = 0.5 * r.a();
        let y0 = sell_a(model, r, x)?.output_amount;
        for t in HOMOGENEITY_FACTORS {
            let rt = Reserves::new(t * r.a(), t * r.b()).expect("scaled state");
            let yt = sell_a(model, rt, t * x)?.output_amount;
            let tol = (QUOTE_RTOL * (t * y0).abs()).max(QUOTE_NOISE * t * r.b());
            if (yt - t * y0).abs() > tol {
                return Err(wfail(
                    (r.a(), r.b()),
                    vec![t, y0, yt],
                    format!(
                        "scaling ({}, {}) by {t} moved the quote from {y0} to {yt}, \
                         not to {}",
                        r.a(),
                        r.b(),
                        t * y0
                    ),
                ));
            }
        }
    }
    Ok(format!(
        "quotes are positive homogeneous under t in {HOMOGENEITY_FACTORS:?} at {} states",
        states.len()
    ))
}

fn subadditive(model: &AmmModel, states: &[Reserves]) -> Result<String, Witness> {
    for &r in states {
        let parts = [0.25 * r.a(), 0.5 * r.a(), r.a()];
        for (i, &x1) in parts.iter().enumerate() {
            for &x2 in &parts[i..] {
                let y1 = sell_a(model, r, x1)?.output_amount;
                let y2 = sell_a(model, r, x2)?.output_amount;
                let y12 = sell_a(model, r, x1 + x2)?.output_amount;
                if y12 > y1 + y2 + QUOTE_RTOL * r.b().max(1.0) {
                    return Err(wfail(
                        (r.a(), r.b()),
                        vec![x1, x2, y1, y2, y12],
                        format!(
                            "one trade of {} beats the split {x1} + {x2} at ({}, {}): \
                             {y12} > {y1} + {y2}",
                            x1 + x2,
                            r.a(),
                            r.b()
                        ),
                    ));
                }
            }
        }
    }
    Ok(format!("merged trades never beat split trades at {} states", states.len()))
}

fn split_identity(model: &AmmModel, states: &[Reserves]) -> Result<String, Witness> {
    for &r in states {
        let parts = [0.25 * r.a(), 0.5 * r.a(), r.a()];
        for (i, &x1) in parts.iter().enumerate() {
            for &x2 in &parts[i..] {
                let q1 = sell_a(model, r, x1)?;
                let y2 = sell_a(model, q1.post_reserves, x2)?.output_amount;
                let y12 = sell_a(model, r, x1 + x2)?.output_amount;
                let total = q1.output_amount + y2;
                let tol = (QUOTE_RTOL * y12.abs()).max(QUOTE_NOISE * r.b());
                if (y12 - total).abs() > tol {
                    return Err(wfail(
                        (r.a(), r.b()),
                        vec![x1, x2, y12, total],
                        format!(
                            "chaining {x1} then {x2} pays {total}, one trade of {} \
                             pays {y12} at ({}, {})",
                            x1 + x2,
                            r.a(),
                            r.b()
                        ),
                    ));
                }
            }
        }
    }
    Ok(format!("chained trades equal merged trades at {} states", states.len()))
}

fn exhaust_limit(model: &AmmModel, states: &[Reserves]) -> Result<String, Witness> {
    for &r in states {
        let x = EXHAUST_INPUT_SCALE * r.a();
        let q = sell_a(model, r, x)?;
        if q.output_amount < EXHAUST_PAYOUT_FRACTION * r.b() {
            return Err(wfail(
                (r.a(), r.b()),
                vec![x, q.output_amount],
                format!(
                    "selling {x} at ({}, {}) collects only {} of a counter-reserve \
                     of {}",
                    r.a(),
                    r.b(),
                    q.output_amount,
                    r.b()
                ),
            ));
        }
    }
    Ok(format!(
        "huge trades collect at least {EXHAUST_PAYOUT_FRACTION} of the counter-reserve \
         at {} states",
        states.len()
    ))
}

fn reserve_monotone(model: &AmmModel, states: &[Reserves]) -> Result<String, Witness> {
    for &r in states {
        let x = 0.5 * r.a();
        let y0 = sell_a(model, r, x)?.output_amount;
        let noise = QUOTE_NOISE * r.b().max(1.0);

        let eps_a = 1e-3 * r.a();
        let ra = Reserves::new(r.a() + eps_a, r.b()).expect("bumped state");
        let ya = sell_a(model, ra, x)?.output_amount;
        if ya > y0 + noise {
            return Err(wfail(
                (r.a(), r.b()),
                vec![x, y0, ya],
                format!(
                    "adding {eps_a} to the sold-side reserve of ({}, {}) raised the \
                     quote from {y0} to {ya}",
                    r.a(),
                    r.b()
                ),
            ));
        }

        let eps_b = 1e-3 * r.b();
        let rb = Reserves::new(r.a(), r.b() + eps_b).expect("bumped state");
        let yb = sell_a(model, rb, x)?.output_amount;
        let rise = yb - y0;
        if !(rise >= -noise && rise < eps_b) {
            return Err(wfail(
                (r.a(), r.b()),
                vec![x, y0, yb, eps_b],
                format!(
                    "adding {eps_b} to the counter-reserve of ({}, {}) moved the \
                     quote by {rise}; it must rise by less than the deposit",
                    r.a(),
                    r.b()
                ),
            ));
        }
    }
    Ok(format!(
        "quotes fall in the sold-side reserve and rise sublinearly in the \
         counter-reserve at {} states",
        states.len()
    ))
}

fn round_trip_equality(model: &AmmModel, states: &[Reserves]) -> Result<String, Witness> {
    for &r in states {
        let x = 0.5 * r.a();
        let rt = swap::round_trip(model, r, x).map_err(|e| werr("round_trip", r, x, &e))?;
        if rt.shortfall.abs() > ROUND_TRIP_RTOL * x.max(1.0) {
            return Err(wfail(
                (r.a(), r.b()),
                vec![x, rt.back.output_amount, rt.shortfall],
                format!(
                    "round-tripping {x} at ({}, {}) returned {}, shortfall {}",
                    r.a(),
                    r.b(),
                    rt.back.output_amount,
                    rt.shortfall
                ),
            ));
        }
    }
    Ok(format!("fee-less round trips return the input at {} states", states.len()))
}

fn round_trip_no_profit(model: &AmmModel, states: &[Reserves]) -> Result<String, Witness> {
    for &r in states {
        // A-first composition.
        let x = 0.5 * r.a();
        let rt = swap::round_trip(model, r, x).map_err(|e| werr("round_trip", r, x, &e))?;
        if rt.shortfall < -QUOTE_RTOL * x.max(1.0) {
            return Err(wfail(
                (r.a(), r.b()),
                vec![x, rt.back.output_amount, rt.shortfall],
                format!(
                    "round-tripping {x} of A at ({}, {}) profited by {}",
                    r.a(),
                    r.b(),
                    -rt.shortfall
                ),
            ));
        }
        // B-first composition.
        let y = 0.5 * r.b();
        let fwd = sell_b(model, r, y)?;
        let back = sell_a(model, fwd.post_reserves, fwd.output_amount)?;
        let shortfall = y - back.output_amount;
        if shortfall < -QUOTE_RTOL * y.max(1.0) {
            return Err(wfail(
                (r.a(), r.b()),
                vec![y, back.output_amount, shortfall],
                format!(
                    "round-tripping {y} of B at ({}, {}) profited by {}",
                    r.a(),
                    r.b(),
                    -shortfall
                ),
            ));
        }
    }
    Ok(format!("round trips never profit in either direction at {} states", states.len()))
}

fn pooling_deepens(model: &AmmModel, states: &[Reserves]) -> Result<String, Witness> {
    for &r in states {
        let alpha = 0.1 * r.a();
        let plan = swap::pool_deposit(model, r, alpha)
            .map_err(|e| werr("pool_deposit", r, alpha, &e))?;
        if plan.delta_b < 0.0 {
            return Err(wfail(
                (r.a(), r.b()),
                vec![alpha, plan.delta_b],
                format!(
                    "the price-preserving deposit at ({}, {}) asks for {} of B",
                    r.a(),
                    r.b(),
                    plan.delta_b
                ),
            ));
        }
        let post = plan.post_reserves;
        for x in ladder(r.a()) {
            let shallow = sell_a(model, r, x)?.output_amount;
            let deep = sell_a(model, post, x)?.output_amount;
            if deep < shallow - QUOTE_RTOL * r.b().max(1.0) {
                return Err(wfail(
                    (r.a(), r.b()),
                    vec![x, shallow, deep],
                    format!(
                        "after depositing ({}, {}), selling {x} pays {deep}, less \
                         than the original {shallow}",
                        plan.delta_a, plan.delta_b
                    ),
                ));
            }
        }
        for y in [0.25 * r.b(), r.b()] {
            let shallow = sell_b(model, r, y)?.output_amount;
            let deep = sell_b(model, post, y)?.output_amount;
            if deep < shallow - QUOTE_RTOL * r.a().max(1.0) {
                return Err(wfail(
                    (r.a(), r.b()),
                    vec![y, shallow, deep],
                    format!(
                        "after depositing ({}, {}), selling {y} of B pays {deep}, \
                         less than the original {shallow}",
                        plan.delta_a, plan.delta_b
                    ),
                ));
            }
        }
    }
    Ok(format!(
        "price-preserving deposits deepen every sampled quote at {} states",
        states.len()
    ))
}

fn no_spread(model: &AmmModel, states: &[Reserves]) -> Result<String, Witness> {
    for &r in states {
        let p = oracle::price(model, r)
            .map_err(|e| werr("price", r, 0.0, &e))?;
        // Fourth-order one-sided Richardson estimate of X'(0): the
        // three leading error terms of the step-halved difference
        // quotients cancel. Selling h of B draws about h/P of A, so the
        // step is capped against P*a as well as b: at a lopsided state a
        // drainable design would otherwise exhaust the counter-reserve
        // inside the difference stencil.
        let h = 1e-2 * r.b().min(p * r.a());
        let mut d = [0.0_f64; 4];
        for (i, slot) in d.iter_mut().enumerate() {
            let step = h / (1 << i) as f64;
            *slot = sell_b(model, r, step)?.output_amount / step;
        }
        let m = (-d[0] + 14.0 * d[1] - 56.0 * d[2] + 64.0 * d[3]) / 21.0;
        let defect = (p * m - 1.0).abs();
        if defect > SPREAD_TOL {
            return Err(wfail(
                (r.a(), r.b()),
                vec![p, m, defect],
                format!(
                    "at ({}, {}) the price {p} and the marginal buy rate {m} \
                     multiply to 1 only within {defect}",
                    r.a(),
                    r.b()
                ),
            ));
        }
    }
    Ok(format!(
        "buying and selling quote the same marginal price at {} states",
        states.len()
    ))
}

fn price_scale(model: &AmmModel, states: &[Reserves]) -> Result<String, Witness> {
    for &r in states {
        let p0 = oracle::price(model, r).map_err(|e| werr("price", r, 0.0, &e))?;
        for t in PRICE_SCALE_FACTORS {
            let rt = Reserves::new(t * r.a(), t * r.b()).expect("scaled state");
            let pt = oracle::price(model, rt).map_err(|e| werr("price", rt, t, &e))?;
            if (pt - p0).abs() > PRICE_SCALE_RTOL * p0.abs() {
                return Err(wfail(
                    (r.a(), r.b()),
                    vec![t, p0, pt],
                    format!(
                        "scaling ({}, {}) by {t} moved the price from {p0} to {pt}",
                        r.a(),
                        r.b()
                    ),
                ));
            }
        }
    }
    Ok(format!(
        "prices are invariant under reserve scaling by {PRICE_SCALE_FACTORS:?} at {} \
         states",
        states.len()
    ))
}

fn price_span(model: &AmmModel) -> Result<String, Witness> {
    let mut high = f64::NAN;
    let mut low = f64::NAN;
    let mut tried = Vec::new();
    for ratio in SPAN_RATIOS {
        if let Ok(p) =
            oracle::price(model, Reserves::new(1.0, ratio).expect("probe state"))
        {
            if !(high > p) {
                high = p;
            }
        }
        if let Ok(p) =
            oracle::price(model, Reserves::new(1.0, 1.0 / ratio).expect("probe state"))
        {
            if !(low < p) {
                low = p;
            }
        }
        tried.push(ratio);
        if high > SPAN_HIGH && low < SPAN_LOW {
            return Ok(format!(
                "prices reach beyond [{SPAN_LOW}, {SPAN_HIGH}] within reserve ratio \
                 {ratio}"
            ));
        }
    }
    Err(wfail(
        (1.0, SPAN_RATIOS[SPAN_RATIOS.len() - 1]),
        vec![high, low],
        format!(
            "prices reach only {high} up and {low} down across reserve ratios \
             {SPAN_RATIOS:?}"
        ),
    ))
}

fn marginal_quote(model: &AmmModel, states: &[Reserves]) -> Result<String, Witness> {
    for &r in states {
        let p = oracle::price(model, r).map_err(|e| werr("price", r, 0.0, &e))?;
        // Selling h of A draws about p·h of B, so the probe is sized
        // against both reserves; against a alone, a lopsided state puts
        // enough curvature inside the step to swamp the comparison.
        let h = 1e-6 * r.a().min(r.b() / p);
        let y = sell_a(model, r, h)?.output_amount;
        let slope = y / h;
        if (slope - p).abs() > MARGINAL_RTOL * p.abs() {
            return Err(wfail(
                (r.a(), r.b()),
                vec![p, slope],
                format!(
                    "at ({}, {}) the price is {p} but a trade of {h} executes at \
                     {slope}",
                    r.a(),
                    r.b()
                ),
            ));
        }
    }
    Ok(format!("the oracle matches small-trade execution at {} states", states.len()))
}
