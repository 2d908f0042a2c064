//! Divergence-loss structure across the catalog: the constant-product
//! closed form, price inversion, the fee-free no-gain law for
//! scale-invariant designs, and the fee-induced gain interval.

use proptest::prelude::*;

use cfmm_core::{
    divergence_at_price, divergence_at_trade, gain_interval, sample_curve,
    solve_trade_for_price, AmmModel, CurveCoordinate, DivergenceSetup, FeeLevel, Reserves,
};

fn res(a: f64, b: f64) -> Reserves {
    Reserves::new(a, b).unwrap()
}

fn fee(gamma: f64) -> FeeLevel {
    FeeLevel::new(gamma).unwrap()
}

fn proportional(model: AmmModel, r: Reserves, delta: f64, gamma: f64) -> DivergenceSetup {
    DivergenceSetup::proportional(model, r, delta, fee(gamma)).unwrap()
}

/// Scale-invariant designs whose oracle genuinely moves with trades, so
/// both the no-gain law and the gain interval are non-degenerate.
fn scale_invariant_movers() -> Vec<AmmModel> {
    vec![
        AmmModel::uniswap_v2(),
        AmmModel::balancer(0.75).unwrap(),
        AmmModel::lstable_swap(5.0).unwrap(),
        AmmModel::curve(2.0).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// The constant-product loss curve against its closed form
    /// δ·b·(1 − 2t^{1−γ} + t^{2−γ}) with t = (1+δ)a/((1+δ)a + z).
    #[test]
    fn constant_product_curve_matches_its_closed_form(
        la in -1.0f64..2.0,
        lb in -1.0f64..2.0,
        delta in 0.01f64..1.0,
        gamma in proptest::sample::select(vec![0.0, 0.01, 0.05, 0.3]),
        zf in 0.0f64..3.0,
    ) {
        let (a, b) = (10f64.powf(la), 10f64.powf(lb));
        let setup = proportional(AmmModel::uniswap_v2(), res(a, b), delta, gamma);
        let z = zf * (1.0 + delta) * a;
        let t = (1.0 + delta) * a / ((1.0 + delta) * a + z);
        let expected = delta * b * (1.0 - 2.0 * t.powf(1.0 - gamma) + t.powf(2.0 - gamma));
        let got = divergence_at_trade(&setup, z).unwrap();
        prop_assert!(
            (got - expected).abs() <= 1e-8 * (delta * b).max(1.0),
            "Δ̄({z}) = {got}, closed form {expected}",
        );
    }

    /// Price inversion lands on the requested price and composes into
    /// the loss-at-price form.
    #[test]
    fn trades_solved_for_a_price_reach_it(
        idx in 0usize..3,
        la in -0.5f64..1.5,
        lb in -0.5f64..1.5,
        lp in -0.6f64..0.6,
        gamma in proptest::sample::select(vec![0.0, 0.05]),
    ) {
        let model = scale_invariant_movers().swap_remove(idx);
        let (a, b) = (10f64.powf(la), 10f64.powf(lb));
        let setup = proportional(model, res(a, b), 0.1, gamma);
        let target = setup.base_price() * 10f64.powf(lp);
        let z = solve_trade_for_price(&setup, target).unwrap();
        let at_price = divergence_at_price(&setup, target).unwrap();
        let at_trade = divergence_at_trade(&setup, z).unwrap();
        prop_assert!((at_price - at_trade).abs() <= 1e-12 * at_trade.abs().max(1.0));
        if z == 0.0 {
            prop_assert!(
                (target - setup.base_price()).abs() <= 1e-8 * setup.base_price(),
                "zero trade returned for a price {target} away from {}",
                setup.base_price(),
            );
        }
    }
}

#[test]
fn fee_free_scale_invariant_pools_never_gain() {
    // No-gain law plus strict loss away from the quote, read off a curve
    // sampled in price coordinates.
    for model in scale_invariant_movers() {
        let setup = proportional(model.clone(), res(100.0, 100.0), 0.1, 0.0);
        let scale = setup.base_price() * setup.injection().0 + setup.injection().1;
        let curve = sample_curve(&setup, (-80.0, 300.0), 141, CurveCoordinate::Price).unwrap();
        for sample in &curve.samples {
            assert!(
                sample.delta >= -1e-10 * scale,
                "{model}: gain {} at price {}",
                sample.delta,
                sample.coordinate,
            );
            if (sample.coordinate - setup.base_price()).abs() > 1e-3 * setup.base_price() {
                assert!(
                    sample.delta > 1e-12 * scale,
                    "{model}: loss not strict at price {}",
                    sample.coordinate,
                );
            }
        }
        assert!(curve.gain_interval.is_none(), "{model}: fee-free gain interval");
    }
}

#[test]
fn constant_sum_pools_are_indifferent_without_fees() {
    // A constant oracle makes the held and pooled books move in lockstep.
    let setup = proportional(AmmModel::mstable(), res(100.0, 100.0), 0.1, 0.0);
    for z in [-50.0, -1.0, 0.0, 1.0, 50.0] {
        let delta = divergence_at_trade(&setup, z).unwrap();
        assert!(delta.abs() <= 1e-12 * 20.0, "Δ̄({z}) = {delta}");
    }
}

#[test]
fn fees_open_a_gain_interval_around_the_quote() {
    for model in scale_invariant_movers() {
        let setup = proportional(model.clone(), res(100.0, 100.0), 0.1, 0.05);
        let Some((p_lo, p_hi)) = gain_interval(&setup).unwrap() else {
            panic!("{model}: no gain interval at γ=0.05");
        };
        let p0 = setup.base_price();
        assert!(p_lo < p0 && p0 < p_hi, "{model}: ({p_lo}, {p_hi}) does not straddle {p0}");

        // The endpoints are the zero crossings of the loss.
        let scale = 0.1 * 100.0;
        for p in [p_lo, p_hi] {
            let delta = divergence_at_price(&setup, p).unwrap();
            assert!(
                delta.abs() <= 1e-8 * scale,
                "{model}: Δ({p}) = {delta} at a claimed endpoint",
            );
        }

        // Strictly inside the interval the provider beats holding.
        let inside = divergence_at_price(&setup, (p_lo * p0 * p0).cbrt()).unwrap();
        assert!(inside < 0.0, "{model}: no gain inside the interval");

        // Well outside it, holding wins again.
        let outside = divergence_at_price(&setup, p_lo * 0.5).unwrap();
        assert!(outside > 0.0, "{model}: no loss below the interval");
    }
}

#[test]
fn wider_fees_widen_the_constant_product_interval() {
    let mut widths = Vec::new();
    for gamma in [0.01, 0.05, 0.1] {
        let setup = proportional(AmmModel::uniswap_v2(), res(100.0, 100.0), 0.1, gamma);
        let Some((p_lo, p_hi)) = gain_interval(&setup).unwrap() else {
            panic!("γ={gamma}: no interval");
        };
        widths.push(p_hi - p_lo);
    }
    assert!(
        widths[0] < widths[1] && widths[1] < widths[2],
        "widths {widths:?} are not increasing in γ",
    );
}

#[test]
fn skewed_injections_are_priced_through_their_share() {
    // A one-sided deposit still produces a valid setup whose share and
    // origin behave like the proportional case.
    let model = AmmModel::sdamm_sinh(1.0, 0.8).unwrap();
    let setup =
        DivergenceSetup::from_deposit_b(model, res(1.0, 10.0), 1.0, fee(0.0)).unwrap();
    assert!(setup.delta().is_none(), "a B-only deposit is not proportional");
    let (alpha, beta) = setup.injection();
    assert!(alpha >= 0.0 && beta == 1.0);
    assert_eq!(divergence_at_trade(&setup, 0.0).unwrap(), 0.0);

    // The share is the injected fraction of the pooled mark-to-market.
    let p0 = setup.base_price();
    let pooled = setup.pooled_reserves();
    let direct = (p0 * alpha + beta) / (p0 * pooled.a() + pooled.b());
    assert!((setup.pool_share() - direct).abs() <= 1e-12 * direct);
}
