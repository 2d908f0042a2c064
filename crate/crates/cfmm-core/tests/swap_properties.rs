//! Randomized structural properties of the fee-free swap map: level-set
//! preservation, monotonicity, concavity, subadditivity, the split
//! identity, homogeneity for scale-invariant designs, and round trips.

use proptest::prelude::*;

use cfmm_core::{
    pool_deposit, round_trip, swap_y, utility, AmmModel, AxiomId, Reserves,
};

/// Representative parameterizations of every built-in design, including
/// both exponent regimes of the separable sinh pool.
fn catalog() -> Vec<AmmModel> {
    let mut models = AmmModel::catalog();
    models.push(AmmModel::sdamm_sinh(1.0, 0.8).unwrap());
    models.push(AmmModel::sdamm_sinh(1.0, 1.0).unwrap());
    models
}

fn any_model() -> impl Strategy<Value = AmmModel> {
    let n = catalog().len();
    (0..n).prop_map(|i| catalog().swap_remove(i))
}

/// Log-uniform reserves over two decades around 1, far from the regimes
/// where saturating designs lose all sensitivity.
fn reserves() -> impl Strategy<Value = Reserves> {
    ((-1.3f64..1.7), (-1.3f64..1.7))
        .prop_map(|(la, lb)| Reserves::new(10f64.powf(la), 10f64.powf(lb)).unwrap())
}

/// Trade sizes from a sliver of the reserve up to four times of it.
fn trade_fraction() -> impl Strategy<Value = f64> {
    (-6.0f64..0.6).prop_map(|l| 10f64.powf(l) * 4.0)
}

fn claims_satisfied(model: &AmmModel, id: AxiomId) -> bool {
    model
        .claimed_axioms()
        .map(|claims| claims[id.index()].expects_satisfied())
        .unwrap_or(false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// A quote either stays on the pre-trade level set or pays the whole
    /// counter-reserve with the utility weakly above it.
    #[test]
    fn quotes_stay_on_the_level_set(
        model in any_model(),
        r in reserves(),
        f in trade_fraction(),
    ) {
        let x = f * r.a();
        let q = swap_y(&model, r, x).unwrap();
        let u0 = utility(&model, r.a(), r.b()).unwrap();
        let u1 = utility(&model, q.post_reserves.a(), q.post_reserves.b()).unwrap();
        let tol = 1e-9 * u0.abs().max(1.0);
        if q.exhausting {
            prop_assert!(u1 >= u0 - tol, "exhausting quote fell below the level: {u1} < {u0}");
        } else {
            prop_assert!((u1 - u0).abs() <= tol, "level moved: {u0} -> {u1}");
        }
    }

    /// Payouts are within the counter-reserve and weakly increasing in the
    /// input, whether or not the larger trade exhausts.
    #[test]
    fn payouts_are_bounded_and_monotone(
        model in any_model(),
        r in reserves(),
        f1 in trade_fraction(),
        f2 in trade_fraction(),
    ) {
        let (lo, hi) = (f1.min(f2) * r.a(), f1.max(f2) * r.a());
        let q_lo = swap_y(&model, r, lo).unwrap();
        let q_hi = swap_y(&model, r, hi).unwrap();
        for q in [&q_lo, &q_hi] {
            prop_assert!(q.output_amount >= 0.0);
            prop_assert!(q.output_amount <= r.b());
        }
        let slack = 1e-9 * r.b().max(1.0);
        prop_assert!(
            q_hi.output_amount >= q_lo.output_amount - slack,
            "payout fell from {} to {} as the input grew from {lo} to {hi}",
            q_lo.output_amount,
            q_hi.output_amount,
        );
    }

    /// Midpoint concavity of x ↦ Y(x) on non-exhausting triples.
    #[test]
    fn payout_is_midpoint_concave(
        model in any_model(),
        r in reserves(),
        f1 in trade_fraction(),
        f2 in trade_fraction(),
    ) {
        let (x1, x2) = (f1.min(f2) * r.a(), f1.max(f2) * r.a());
        let q1 = swap_y(&model, r, x1).unwrap();
        let q2 = swap_y(&model, r, x2).unwrap();
        let qm = swap_y(&model, r, 0.5 * (x1 + x2)).unwrap();
        prop_assume!(!q1.exhausting && !q2.exhausting && !qm.exhausting);
        let slack = 1e-9 * r.b().max(1.0);
        prop_assert!(
            qm.output_amount >= 0.5 * (q1.output_amount + q2.output_amount) - slack,
            "chord above the curve: Y({}) = {} vs averaged {}",
            0.5 * (x1 + x2),
            qm.output_amount,
            0.5 * (q1.output_amount + q2.output_amount),
        );
    }

    /// Bulk never beats the sum of its parts executed from the same start.
    #[test]
    fn payout_is_subadditive(
        model in any_model(),
        r in reserves(),
        f1 in trade_fraction(),
        f2 in trade_fraction(),
    ) {
        let (x1, x2) = (f1 * r.a(), f2 * r.a());
        let bulk = swap_y(&model, r, x1 + x2).unwrap();
        let part1 = swap_y(&model, r, x1).unwrap();
        let part2 = swap_y(&model, r, x2).unwrap();
        prop_assume!(!bulk.exhausting);
        let slack = 1e-9 * r.b().max(1.0);
        prop_assert!(
            bulk.output_amount <= part1.output_amount + part2.output_amount + slack,
            "bulk {} beat split {} + {}",
            bulk.output_amount,
            part1.output_amount,
            part2.output_amount,
        );
    }

    /// Splitting a trade and executing the tail from the intermediate
    /// reserves recovers the bulk payout exactly.
    #[test]
    fn split_execution_matches_bulk(
        model in any_model(),
        r in reserves(),
        f1 in trade_fraction(),
        f2 in trade_fraction(),
    ) {
        let (x1, x2) = (f1 * r.a(), f2 * r.a());
        let bulk = swap_y(&model, r, x1 + x2).unwrap();
        let first = swap_y(&model, r, x1).unwrap();
        let second = swap_y(&model, first.post_reserves, x2).unwrap();
        prop_assume!(!bulk.exhausting && !first.exhausting && !second.exhausting);
        let split = first.output_amount + second.output_amount;
        let tol = 1e-9 * bulk.output_amount.abs().max(1.0);
        prop_assert!(
            (bulk.output_amount - split).abs() <= tol,
            "bulk {} vs split {split}",
            bulk.output_amount,
        );
    }

    /// Scale-invariant designs quote homogeneously: scaling the trade and
    /// both reserves scales the payout.
    #[test]
    fn scale_invariant_payouts_are_homogeneous(
        model in any_model(),
        r in reserves(),
        f in trade_fraction(),
        lt in -1.0f64..1.0,
    ) {
        prop_assume!(claims_satisfied(&model, AxiomId::ScaleInvariance));
        let (x, t) = (f * r.a(), 10f64.powf(lt));
        let base = swap_y(&model, r, x).unwrap();
        let scaled = swap_y(
            &model,
            Reserves::new(t * r.a(), t * r.b()).unwrap(),
            t * x,
        ).unwrap();
        prop_assume!(!base.exhausting && !scaled.exhausting);
        let tol = 1e-9 * (t * base.output_amount).abs().max(1e-12);
        prop_assert!(
            (scaled.output_amount - t * base.output_amount).abs() <= tol,
            "Y({t}·x; {t}·r) = {} vs {t}·Y(x; r) = {}",
            scaled.output_amount,
            t * base.output_amount,
        );
    }

    /// More of the sold asset on hand weakens the quote; more of the
    /// bought asset strengthens it, by less than the added amount.
    #[test]
    fn quotes_respond_monotonically_to_reserves(
        model in any_model(),
        r in reserves(),
        f in trade_fraction(),
        le in -3.0f64..-1.0,
    ) {
        let x = f * r.a();
        let base = swap_y(&model, r, x).unwrap();
        prop_assume!(!base.exhausting);

        let eps_a = 10f64.powf(le) * r.a();
        let richer_a = swap_y(&model, Reserves::new(r.a() + eps_a, r.b()).unwrap(), x).unwrap();
        let slack = 1e-9 * r.b().max(1.0);
        prop_assert!(
            richer_a.output_amount <= base.output_amount + slack,
            "more A on hand improved the quote: {} -> {}",
            base.output_amount,
            richer_a.output_amount,
        );

        let eps_b = 10f64.powf(le) * r.b();
        let richer_b = swap_y(&model, Reserves::new(r.a(), r.b() + eps_b).unwrap(), x).unwrap();
        prop_assert!(
            richer_b.output_amount >= base.output_amount - slack,
            "more B on hand weakened the quote: {} -> {}",
            base.output_amount,
            richer_b.output_amount,
        );
        prop_assert!(
            richer_b.output_amount - base.output_amount < eps_b + slack,
            "quote gained {} from only {eps_b} of extra B",
            richer_b.output_amount - base.output_amount,
        );
    }

    /// Fee-free round trips return the input for boundary-diverging
    /// designs and never return more for any design.
    #[test]
    fn round_trips_never_profit(
        model in any_model(),
        r in reserves(),
        f in trade_fraction(),
    ) {
        let x = f * r.a();
        let rt = round_trip(&model, r, x).unwrap();
        prop_assume!(!rt.forward.exhausting && !rt.back.exhausting);
        let tol = 1e-8 * x.abs().max(1.0);
        prop_assert!(rt.shortfall >= -tol, "round trip profited by {}", -rt.shortfall);
        if claims_satisfied(&model, AxiomId::BoundaryDivergence) {
            prop_assert!(
                rt.shortfall.abs() <= tol,
                "lossless retrace failed: shortfall {}",
                rt.shortfall,
            );
        }
    }

    /// Solved deposits preserve the oracle price, and where the full
    /// pooling hypotheses hold they weakly improve every quote.
    #[test]
    fn price_preserving_deposits_improve_quotes(
        model in any_model(),
        r in reserves(),
        fa in 0.01f64..1.0,
        f in trade_fraction(),
    ) {
        let alpha = fa * r.a();
        let plan = match pool_deposit(&model, r, alpha) {
            Ok(plan) => plan,
            // Saturating oracles can make a deposit genuinely infeasible.
            Err(_) => return Ok(()),
        };
        prop_assert!(
            (plan.price_after - plan.price_before).abs()
                <= 1e-9 * plan.price_before.max(1e-12),
            "deposit moved the price {} -> {}",
            plan.price_before,
            plan.price_after,
        );

        let pooling_hypotheses = [
            AxiomId::BoundaryDivergence,
            AxiomId::Quasiconcavity,
            AxiomId::InadaConditions,
            AxiomId::PriceMonotonicity,
            AxiomId::LiquidityCondition,
        ];
        if pooling_hypotheses.iter().all(|id| claims_satisfied(&model, *id)) {
            let x = f * r.a();
            let before = swap_y(&model, r, x).unwrap();
            let after = swap_y(&model, plan.post_reserves, x).unwrap();
            prop_assert!(
                after.output_amount >= before.output_amount - 1e-9 * r.b().max(1.0),
                "deposit weakened the quote: {} -> {}",
                before.output_amount,
                after.output_amount,
            );
        }
    }
}
