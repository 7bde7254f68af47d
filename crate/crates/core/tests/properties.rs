use proptest::prelude::*;

use cascade_fading_core::channels::*;
use cascade_fading_core::distributions::*;
use cascade_fading_core::performance::*;

fn gg_strategy() -> impl Strategy<Value = GammaGammaParams> {
    (1.1f64..12.0, 0.6f64..6.0).prop_map(|(a, b)| GammaGammaParams::unit(a, b).unwrap())
}

fn pe_strategy() -> impl Strategy<Value = PointingErrorParams> {
    (0.7f64..9.0, 0.3f64..0.99).prop_map(|(x, a)| PointingErrorParams::new(x, a).unwrap())
}

fn composite() -> impl Strategy<Value = CompositeProduct> {
    (1usize..=3)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(gg_strategy(), n),
                prop::collection::vec(pe_strategy(), 0..=n),
            )
        })
        .prop_map(|(g, p)| CompositeProduct::new(g, p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn plane_wave_shapes_ordered(s in 1e-3f64..10.0) {
        let p = fso_gg_params(s).unwrap();
        prop_assert!(p.alpha > p.beta && p.beta > 0.0);
    }

    #[test]
    fn thz_shapes_small_aperture(s in 1e-3f64..10.0) {
        let p = thz_gg_params(s, 1e-4, 1e-3, 100.0).unwrap();
        prop_assert!(p.alpha > p.beta && p.beta > 0.0);
    }

    #[test]
    fn thz_shapes_positive(s in 1e-3f64..10.0, b in 0.01f64..0.5, d in 10.0f64..500.0) {
        let p = thz_gg_params(s, b, 1e-3, d).unwrap();
        prop_assert!(p.alpha > 0.0 && p.beta > 0.0 && p.alpha.is_finite() && p.beta.is_finite());
    }

    #[test]
    fn geometry_ranges(b in 1e-3f64..1.0, ratio in 0.5f64..5.0, sigma in 1e-4f64..0.5) {
        let g = FsoLinkGeometry::new(100.0, b, b * ratio, sigma, true).unwrap();
        let a = g.a_o();
        prop_assert!(a > 0.0 && a < 1.0);
        prop_assert!(g.xi() > 0.0);
        let tighter = FsoLinkGeometry { sigma_s: sigma / 10.0, ..g };
        prop_assert!(tighter.xi() > g.xi());
    }

    #[test]
    fn absorption_continuous_and_attenuating(f in 100e9f64..500e9, d in 1.0f64..1000.0) {
        let atm = ThzAtmosphere::standard();
        let k = molecular_absorption(f, &atm).kappa;
        let k2 = molecular_absorption(f + 1e3, &atm).kappa;
        prop_assert!(k >= 0.0);
        prop_assert!((k2 - k).abs() <= 1e-5 * k + 1e-15);
        let tau = (-k * d / 2.0).exp();
        prop_assert!(tau > 0.0 && tau <= 1.0);
    }

    #[test]
    fn cdf_is_a_distribution_function(ch in composite(), x in 0.01f64..3.0, dx in 0.01f64..1.0) {
        let a = z_cdf(&ch, x).unwrap().value;
        let b = z_cdf(&ch, x + dx).unwrap().value;
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&a));
        prop_assert!(b >= a - 1e-10, "F({x}) = {a} > F({}) = {b}", x + dx);
        prop_assert!(z_pdf(&ch, x).unwrap().value >= -1e-12);
    }

    #[test]
    fn outage_monotone_in_snr(ch in composite(), db in 0.0f64..50.0, step in 0.5f64..10.0) {
        let r1 = cascade_fading_core::db_to_linear(db);
        let r2 = cascade_fading_core::db_to_linear(db + step);
        let a = op_fso_cascade(&ch, r1).unwrap().probability;
        let b = op_fso_cascade(&ch, r2).unwrap().probability;
        prop_assert!(b <= a + 1e-10);
        let ta = op_thz(&ch, r1, 2.0, 0.1, 0.2).unwrap().probability;
        let tb = op_thz(&ch, r2, 2.0, 0.1, 0.2).unwrap().probability;
        prop_assert!(tb <= ta + 1e-10);
    }

    #[test]
    fn link_order_irrelevant(g1 in gg_strategy(), g2 in gg_strategy(), p1 in pe_strategy(), p2 in pe_strategy(), db in 5.0f64..40.0) {
        let r = cascade_fading_core::db_to_linear(db);
        let a = CompositeProduct::new(vec![g1, g2], vec![p1, p2]).unwrap();
        let b = CompositeProduct::new(vec![g2, g1], vec![p2, p1]).unwrap();
        let oa = op_fso_cascade(&a, r).unwrap().probability;
        let ob = op_fso_cascade(&b, r).unwrap().probability;
        prop_assert!((oa - ob).abs() <= 1e-9 * oa.max(1e-300), "{oa} vs {ob}");
    }

    #[test]
    fn hardware_ceiling_exact(kt in 0.0f64..0.6, kr in 0.0f64..0.6, over in 1.0f64..100.0) {
        prop_assume!(kt * kt + kr * kr > 1e-3);
        let ch = CompositeProduct::turbulence_only(vec![TurbulencePreset::Weak.params()]).unwrap();
        let gth = over / (kt * kt + kr * kr);
        prop_assume!(gth * (kt * kt + kr * kr) >= 1.0);
        let r = op_thz(&ch, 100.0, gth, kt, kr).unwrap();
        prop_assert_eq!(r.probability, 1.0);
        let a = op_thz(&ch, 300.0, 1.5, kt, kr).unwrap().probability;
        let b = op_thz(&ch, 300.0, 1.5, kr, kt).unwrap().probability;
        prop_assert_eq!(a.to_bits(), b.to_bits());
    }
}

#[test]
fn asymptotic_slope_matches_diversity_order() {
    let (w, s) = (
        TurbulencePreset::Weak.params(),
        TurbulencePreset::Strong.params(),
    );
    let pe = PointingErrorParams::new(2.5, 0.8).unwrap();
    for ch in [
        CompositeProduct::turbulence_only(vec![w]).unwrap(),
        CompositeProduct::turbulence_only(vec![w, s]).unwrap(),
        CompositeProduct::new(vec![w, s], vec![pe]).unwrap(),
    ] {
        let r = cascade_fading_core::db_to_linear(60.0);
        let exact = op_fso_cascade(&ch, r).unwrap().probability;
        let asym = op_fso_cascade_asymptotic(&ch, r).unwrap().probability;
        assert!((asym / exact - 1.0).abs() < 0.05, "{asym} vs {exact}");
        let a = op_fso_cascade_asymptotic(&ch, r / 1.1).unwrap().probability;
        let b = op_fso_cascade_asymptotic(&ch, r * 1.1).unwrap().probability;
        let slope = (b.log10() - a.log10()) / (1.21f64).log10();
        let d = diversity_order(&ch, Flavor::Fso);
        assert!((slope / -d - 1.0).abs() < 0.05, "{slope} vs {d}");
    }
}

#[test]
fn bound_gap_grows_with_turbulence() {
    let g = FsoLinkGeometry::new(1.0, 1.0, 2.0, 0.1, true)
        .unwrap()
        .pointing()
        .unwrap();
    let r = cascade_fading_core::db_to_linear(30.0);
    let gap = |p: GammaGammaParams| {
        let branch = CompositeProduct::new(vec![p, p], vec![g, g]).unwrap();
        let bound = op_fso_parallel_bound(&[branch.clone(), branch.clone()], r)
            .unwrap()
            .probability;
        let mc = cascade_fading_core::mc::mc_op_parallel(2, &branch, r, 400_000, 17).unwrap();
        assert!(bound >= mc.value - 3.0 * mc.std_error);
        bound - mc.value
    };
    assert!(gap(TurbulencePreset::Strong.params()) > gap(TurbulencePreset::Weak.params()));
}
