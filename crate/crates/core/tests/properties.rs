use bosonic_regions::broadcast::{broadcast_point, BroadcastInstance};
use bosonic_regions::entropy::{g, g_inverse, h_lemma};
use bosonic_regions::geometry::{
    contains, envelope_at, pareto_filter, slice, RegionSlice, SliceSpec,
};
use bosonic_regions::qepi::{
    bound_gap, epi_vacuum_bound, ConjecturedRegion, LossTradeoffInstance, QepiOuterRegion,
};
use bosonic_regions::search::DEFAULT_LAMBDA_GRID;
use bosonic_regions::tradeoff::{facets_at, TradeoffInstance, TradeoffRegion};
use proptest::prelude::*;

fn brute_force_pareto(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut kept: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&p| {
            !points
                .iter()
                .any(|&o| o.0 >= p.0 && o.1 >= p.1 && (o.0 > p.0 || o.1 > p.1))
        })
        .collect();
    kept.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    kept.dedup();
    kept
}

fn polyline(ys: Vec<f64>) -> RegionSlice {
    let n = ys.len() as f64;
    let vertices = ys
        .into_iter()
        .enumerate()
        .map(|(i, y)| (i as f64 / (n - 1.0), y))
        .collect();
    RegionSlice::new("x", "y", vertices).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn g_increasing(x in 0.0f64..1e9, dx in 1e-6f64..1e3) {
        prop_assert!(g(x + dx).unwrap() > g(x).unwrap());
    }

    #[test]
    fn g_concave(x in 1e-6f64..1e6, d in 1e-3f64..10.0) {
        let mid = g(x + d).unwrap();
        let chord = 0.5 * (g(x).unwrap() + g(x + 2.0 * d).unwrap());
        prop_assert!(mid >= chord - 1e-12 * mid.abs());
    }

    #[test]
    fn g_inverse_round_trip(e in -12.0f64..12.0) {
        let x = 10f64.powf(e);
        let y = g_inverse(g(x).unwrap()).unwrap();
        prop_assert!((y - x).abs() <= 1e-8 * x);
    }

    #[test]
    fn h_increasing_and_bounded(x in 0.0f64..1e6, dx in 1e-3f64..10.0) {
        let a = h_lemma(x).unwrap();
        let b = h_lemma(x + dx).unwrap();
        prop_assert!(b >= a && b < 1.0);
    }

    #[test]
    fn pareto_matches_brute_force(
        points in prop::collection::vec((0u8..40, 0u8..40), 0..500)
    ) {
        let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x as f64, y as f64)).collect();
        let front = pareto_filter(&pts);
        prop_assert_eq!(&front, &brute_force_pareto(&pts));
        prop_assert_eq!(pareto_filter(&front), front);
    }

    #[test]
    fn contains_reflexive_and_transitive(
        base in prop::collection::vec(0.0f64..10.0, 16..40),
        d1 in prop::collection::vec(0.0f64..1.0, 40),
        d2 in prop::collection::vec(0.0f64..1.0, 40),
    ) {
        let n = base.len();
        let a = polyline(base.clone());
        let b = polyline(base.iter().zip(&d1).map(|(y, d)| y - d).collect());
        let c = polyline(base.iter().zip(&d1).zip(&d2).take(n).map(|((y, d), e)| y - d - e).collect());
        prop_assert!(contains(&a, &a, 1e-9).unwrap());
        prop_assert!(contains(&a, &b, 1e-9).unwrap());
        prop_assert!(contains(&b, &c, 1e-9).unwrap());
        prop_assert!(contains(&a, &c, 1e-9).unwrap());
    }

    #[test]
    fn broadcast_rates_monotone_in_lambda(
        kappa in 1.0f64..20.0, ns in 0.1f64..50.0, nb in 0.0f64..5.0, l in 0.0f64..0.99, dl in 1e-3f64..0.01
    ) {
        let inst = BroadcastInstance::amplifier(kappa, nb, ns).unwrap();
        let a = broadcast_point(&inst, l).unwrap();
        let b = broadcast_point(&inst, (l + dl).min(1.0)).unwrap();
        prop_assert!(b.r_b >= a.r_b - 1e-12);
        prop_assert!(b.r_c <= a.r_c + 1e-12);
    }

    #[test]
    fn broadcast_boundary_shrinks_toward_identity_channel(
        kappa in 1.0f64..20.0, dk in 0.01f64..5.0, ns in 0.1f64..50.0, l in 0.0f64..=1.0
    ) {
        // higher gain lowers the rate to the first receiver at fixed lambda
        let lo = BroadcastInstance::amplifier(kappa, 0.0, ns).unwrap();
        let hi = BroadcastInstance::amplifier(kappa + dk, 0.0, ns).unwrap();
        prop_assert!(broadcast_point(&hi, l).unwrap().r_b <= broadcast_point(&lo, l).unwrap().r_b + 1e-12);
    }

    #[test]
    fn tradeoff_facets_shrink_with_gain(
        kappa in 1.0f64..10.0, dk in 0.01f64..5.0, ns in 0.1f64..500.0, l in 0.0f64..=1.0
    ) {
        let a = facets_at(&TradeoffInstance::amplifier(kappa, ns).unwrap(), l).unwrap();
        let b = facets_at(&TradeoffInstance::amplifier(kappa + dk, ns).unwrap(), l).unwrap();
        prop_assert!(b.bound_c2q <= a.bound_c2q + 1e-9);
        prop_assert!(b.bound_qe <= a.bound_qe + 1e-9);
        prop_assert!(b.bound_cqe <= a.bound_cqe + 1e-9);
    }

    #[test]
    fn qepi_outer_dominates_conjectured(eta in 0.5f64..=1.0, ns in 0.01f64..200.0, l in 0.0f64..=1.0) {
        let inst = LossTradeoffInstance::pure_loss(eta, ns).unwrap();
        let gap = bound_gap(&inst, l).unwrap();
        prop_assert!(gap.iter().all(|&v| v >= -1e-9));
    }

    #[test]
    fn epi_vacuum_bound_convex(eta in 0.5f64..=1.0, x in 0.0f64..30.0, d in 1e-3f64..5.0) {
        let mid = epi_vacuum_bound(eta, x + d);
        let chord = 0.5 * (epi_vacuum_bound(eta, x) + epi_vacuum_bound(eta, x + 2.0 * d));
        prop_assert!(mid <= chord + 1e-12 * chord.abs().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn envelope_monotone_in_grid_density(kappa in 1.2f64..6.0, ns in 1.0f64..300.0, frac in 0.0f64..1.0) {
        let region = TradeoffRegion(TradeoffInstance::amplifier(kappa, ns).unwrap());
        for spec in [SliceSpec::first_second(), SliceSpec::first_third()] {
            let coarse = spec.with_lambda_grid(64);
            let fine = spec.with_lambda_grid(DEFAULT_LAMBDA_GRID);
            let x_max = bosonic_regions::geometry::slice_extent(&region, &coarse).unwrap().value;
            let x = frac * x_max;
            if let Some(c) = envelope_at(&region, &coarse, x) {
                let f = envelope_at(&region, &fine, x).expect("finer grid keeps feasibility");
                prop_assert!(f.value >= c.value - 1e-6, "coarse {} fine {}", c.value, f.value);
            }
        }
    }

    #[test]
    fn tradeoff_slices_shrink_with_gain(kappa in 1.1f64..5.0, dk in 0.1f64..3.0, ns in 1.0f64..300.0) {
        let slices = |k: f64| {
            let region = TradeoffRegion(TradeoffInstance::amplifier(k, ns).unwrap());
            let spec = SliceSpec::first_second().with_samples(64).with_lambda_grid(256);
            slice(&region, &spec).unwrap()
        };
        prop_assert!(contains(&slices(kappa), &slices(kappa + dk), 1e-6).unwrap());
    }

    #[test]
    fn conjectured_slice_below_outer_envelope(eta in 0.55f64..0.99, ns in 1.0f64..50.0) {
        let inst = LossTradeoffInstance::pure_loss(eta, ns).unwrap();
        for spec in [SliceSpec::first_second(), SliceSpec::first_third()] {
            let spec = spec.with_samples(64).with_lambda_grid(256);
            let inner = slice(&ConjecturedRegion(inst), &spec).unwrap();
            for &(x, y) in &inner.vertices {
                let outer = envelope_at(&QepiOuterRegion(inst), &spec, x).expect("outer feasible where inner is");
                prop_assert!(y <= outer.value + 1e-6, "x {} inner {} outer {}", x, y, outer.value);
            }
        }
    }
}

#[test]
fn conjectured_slice_contained_at_eta_08() {
    let inst = LossTradeoffInstance::pure_loss(0.8, 10.0).unwrap();
    for spec in [SliceSpec::first_second(), SliceSpec::first_third()] {
        let outer = slice(&QepiOuterRegion(inst), &spec).unwrap();
        let inner = slice(&ConjecturedRegion(inst), &spec).unwrap();
        assert!(contains(&outer, &inner, 1e-6).unwrap());
    }
}
