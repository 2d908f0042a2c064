//! Randomized properties of the marginal-price fee swap and the two
//! alternate fee conventions: ordering in the fee level, strict pool
//! improvement, curvature in the input, the split identity, homogeneity,
//! strict round-trip losses, and reserve sensitivities.

use proptest::prelude::*;

use cfmm_core::{
    bid_ask, swap_fee_on_bought, swap_fee_on_sold, swap_x_fee, swap_y, swap_y_fee, utility,
    AmmModel, AxiomId, FeeLevel, Reserves,
};

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

fn reserves() -> impl Strategy<Value = Reserves> {
    ((-1.3f64..1.7), (-1.3f64..1.7))
        .prop_map(|(la, lb)| Reserves::new(10f64.powf(la), 10f64.powf(lb)).unwrap())
}

/// Strictly positive trades large enough that fee effects dominate
/// solver noise.
fn trade_fraction() -> impl Strategy<Value = f64> {
    0.01f64..2.0
}

/// Two fee levels with a guaranteed gap, drawn from the range where both
/// the ODE path and the closed forms are exercised.
fn fee_pair() -> impl Strategy<Value = (FeeLevel, FeeLevel)> {
    proptest::sample::subsequence(vec![0.0, 0.01, 0.05, 0.2, 0.5], 2)
        .prop_map(|pair| (FeeLevel::new(pair[0]).unwrap(), FeeLevel::new(pair[1]).unwrap()))
}

fn any_fee() -> impl Strategy<Value = FeeLevel> {
    proptest::sample::select(vec![0.01, 0.05, 0.2, 0.5])
        .prop_map(|g| FeeLevel::new(g).unwrap())
}

fn claims_satisfied(model: &AmmModel, id: AxiomId) -> bool {
    model
        .claimed_axioms()
        .map(|claims| claims[id.index()].expects_satisfied())
        .unwrap_or(false)
}

/// The fee swap, with exhaustion treated as a discard: near-drained pools
/// are covered by the exhaustion tests in the library itself.
fn fee_quote(model: &AmmModel, r: Reserves, x: f64, fee: FeeLevel) -> Option<f64> {
    swap_y_fee(model, r, x, fee).ok().map(|out| out.output)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(192))]

    /// Raising the fee strictly lowers the payout, which never exceeds
    /// the fee-free quote.
    #[test]
    fn payout_falls_strictly_with_the_fee(
        model in any_model(),
        r in reserves(),
        f in trade_fraction(),
        (lo, hi) in fee_pair(),
    ) {
        let x = f * r.a();
        let free = swap_y(&model, r, x).unwrap();
        prop_assume!(!free.exhausting);
        let (Some(y_lo), Some(y_hi)) = (
            fee_quote(&model, r, x, lo),
            fee_quote(&model, r, x, hi),
        ) else { return Ok(()) };
        prop_assert!(y_lo <= free.output_amount + 1e-9 * free.output_amount.max(1.0));
        prop_assert!(
            y_hi < y_lo - 1e-12 * y_lo.max(1.0),
            "γ={} paid {y_hi}, not strictly under γ={}'s {y_lo}",
            hi.gamma(),
            lo.gamma(),
        );
    }

    /// Fee retention pushes the pool strictly above its pre-trade level
    /// set.
    #[test]
    fn fees_strictly_improve_the_pool(
        model in any_model(),
        r in reserves(),
        f in trade_fraction(),
        gamma in any_fee(),
    ) {
        let x = f * r.a();
        let Ok(out) = swap_y_fee(&model, r, x, gamma) else { return Ok(()) };
        let u0 = utility(&model, r.a(), r.b()).unwrap();
        let u1 = utility(&model, out.post_reserves.a(), out.post_reserves.b()).unwrap();
        prop_assert!(
            u1 > u0,
            "fee γ={} left the pool at {u1}, not above {u0}",
            gamma.gamma(),
        );
    }

    /// The fee payout keeps the fee-free shape: increasing, midpoint
    /// concave, and subadditive in the input.
    #[test]
    fn fee_payout_keeps_its_curvature(
        model in any_model(),
        r in reserves(),
        f1 in trade_fraction(),
        f2 in trade_fraction(),
        gamma in any_fee(),
    ) {
        let (x1, x2) = (f1.min(f2) * r.a(), f1.max(f2) * r.a());
        prop_assume!(x2 > x1 * 1.01);
        let quotes = [x1, 0.5 * (x1 + x2), x2, x1 + x2]
            .map(|x| fee_quote(&model, r, x, gamma));
        let (Some(y1), Some(ym), Some(y2), Some(bulk)) =
            (quotes[0], quotes[1], quotes[2], quotes[3])
        else { return Ok(()) };
        let slack = 1e-9 * r.b().max(1.0);
        prop_assert!(y2 > y1 - slack, "payout fell from {y1} to {y2}");
        prop_assert!(
            ym >= 0.5 * (y1 + y2) - slack,
            "chord above the fee curve: {ym} vs {}",
            0.5 * (y1 + y2),
        );
        prop_assert!(
            bulk <= y1 + y2 + slack,
            "bulk {bulk} beat split {y1} + {y2}",
        );
    }

    /// Splitting a fee trade through the realized intermediate reserves
    /// recovers the bulk payout.
    #[test]
    fn fee_split_identity_holds(
        model in any_model(),
        r in reserves(),
        f1 in trade_fraction(),
        f2 in trade_fraction(),
        gamma in any_fee(),
    ) {
        let (x1, x2) = (f1 * r.a(), f2 * r.a());
        let (Ok(bulk), Ok(first)) = (
            swap_y_fee(&model, r, x1 + x2, gamma),
            swap_y_fee(&model, r, x1, gamma),
        ) else { return Ok(()) };
        let Ok(second) = swap_y_fee(&model, first.post_reserves, x2, gamma) else {
            return Ok(());
        };
        let split = first.output + second.output;
        let tol = 1e-8 * bulk.output.abs().max(1.0);
        prop_assert!(
            (bulk.output - split).abs() <= tol,
            "bulk {} vs split {split}",
            bulk.output,
        );
    }

    /// Scale-invariant designs keep homogeneity under fees.
    #[test]
    fn fee_payouts_scale_for_scale_invariant_designs(
        model in any_model(),
        r in reserves(),
        f in trade_fraction(),
        gamma in any_fee(),
        lt in -1.0f64..1.0,
    ) {
        prop_assume!(claims_satisfied(&model, AxiomId::ScaleInvariance));
        let (x, t) = (f * r.a(), 10f64.powf(lt));
        let scaled_r = Reserves::new(t * r.a(), t * r.b()).unwrap();
        let (Some(base), Some(scaled)) = (
            fee_quote(&model, r, x, gamma),
            fee_quote(&model, scaled_r, t * x, gamma),
        ) else { return Ok(()) };
        let tol = 1e-8 * (t * base).abs().max(1e-12);
        prop_assert!(
            (scaled - t * base).abs() <= tol,
            "Y_γ({t}·x; {t}·r) = {scaled} vs {t}·Y_γ = {}",
            t * base,
        );
    }

    /// With a positive fee the round trip returns strictly less than it
    /// started with.
    #[test]
    fn fee_round_trips_lose_strictly(
        model in any_model(),
        r in reserves(),
        f in trade_fraction(),
        gamma in any_fee(),
    ) {
        let x = f * r.a();
        let Ok(forward) = swap_y_fee(&model, r, x, gamma) else { return Ok(()) };
        prop_assume!(forward.output > 0.0);
        let Ok(back) = swap_x_fee(&model, forward.post_reserves, forward.output, gamma) else {
            return Ok(());
        };
        prop_assert!(
            back.output < x - 1e-12 * x,
            "round trip at γ={} returned {} of {x}",
            gamma.gamma(),
            back.output,
        );
    }

    /// Differenced reserve sensitivities: more A weakens the fee quote,
    /// more B strengthens it by less than the added amount.
    #[test]
    fn fee_quotes_respond_monotonically_to_reserves(
        model in any_model(),
        r in reserves(),
        f in trade_fraction(),
        gamma in any_fee(),
    ) {
        let x = f * r.a();
        let Some(base) = fee_quote(&model, r, x, gamma) else { return Ok(()) };
        let eps = 1e-3 * r.a().min(r.b());
        let slack = 1e-9 * base.max(1.0);

        let richer_a = Reserves::new(r.a() + eps, r.b()).unwrap();
        if let Some(y) = fee_quote(&model, richer_a, x, gamma) {
            prop_assert!(y <= base + slack, "more A improved the fee quote: {base} -> {y}");
        }
        let richer_b = Reserves::new(r.a(), r.b() + eps).unwrap();
        if let Some(y) = fee_quote(&model, richer_b, x, gamma) {
            prop_assert!(y >= base - slack, "more B weakened the fee quote: {base} -> {y}");
            prop_assert!(y - base < eps + slack, "quote gained {} from {eps} of B", y - base);
        }
    }

    /// The two-sided quote brackets the oracle price strictly and sits
    /// asymmetrically around it.
    #[test]
    fn bid_ask_brackets_the_price(
        model in any_model(),
        r in reserves(),
        gamma in any_fee(),
    ) {
        let (bid, ask) = bid_ask(&model, r, gamma).unwrap();
        let p = cfmm_core::price(&model, r).unwrap();
        prop_assert!(bid < p && p < ask);
        prop_assert!(
            0.5 * (bid + ask) > p,
            "spread midpoint {} did not sit above the price {p}",
            0.5 * (bid + ask),
        );
    }

    /// The alternate conventions bracket the marginal-price structure:
    /// fee-on-sold quotes above it, fee-on-bought below.
    #[test]
    fn alternate_conventions_bracket_the_marginal_quote(
        model in any_model(),
        r in reserves(),
        f in trade_fraction(),
        gamma in any_fee(),
    ) {
        let x = f * r.a();
        let Some(marginal) = fee_quote(&model, r, x, gamma) else { return Ok(()) };
        let on_sold = swap_fee_on_sold(&model, r, x, gamma).unwrap();
        let on_bought = swap_fee_on_bought(&model, r, x, gamma).unwrap();
        let slack = 1e-9 * marginal.max(1.0);
        prop_assert!(
            on_bought <= marginal + slack && marginal <= on_sold + slack,
            "ordering broke: bought {on_bought}, marginal {marginal}, sold {on_sold}",
        );
    }
}
