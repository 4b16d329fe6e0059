//! Affine algebra, boosts of spectra, and window transport.

use covwave_core::{
    affine_apply, affine_compose, affine_inverse, apply_window, boost_spectral, boost_window,
    construct_spectral, integrate_real, invariant_ratio, transform_function, wavelet_form,
    AffineMap, Boost, Complex64, Grid, GridFunction, Kind, SpectralFunction, SpectralShape, Window,
};
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::First), Just(Kind::Second)]
}

fn affine() -> impl Strategy<Value = AffineMap> {
    (kind(), -2.0f64..2.0, -10.0f64..10.0)
        .prop_map(|(k, eta, b)| AffineMap::new(k, eta, b).unwrap())
}

fn norm_sq(f: &GridFunction) -> f64 {
    integrate_real(f, |_, v| v.norm_sqr())
}

fn gaussian_fn(grid: Grid) -> GridFunction {
    GridFunction::from_fn(grid, |x| {
        Complex64::new((-(x - 0.3).powi(2)).exp(), 0.5 * (-x * x).exp())
    })
    .unwrap()
}

fn gaussian_spectrum(grid: Grid) -> SpectralFunction {
    construct_spectral(&SpectralShape::Gaussian {
        center: 5.0,
        width: 0.5,
        grid,
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn matrix_composition_is_functional_composition(o in affine(), i in affine(), x in -10.0f64..10.0) {
        let composed = affine_apply(&affine_compose(&o, &i), x);
        let nested = affine_apply(&o, affine_apply(&i, x));
        prop_assert!((composed - nested).abs() <= 1e-10 * nested.abs().max(1.0));
        let col = o.matrix() * i.matrix() * nalgebra::Vector2::new(x, 1.0);
        prop_assert!((col[0] - nested).abs() <= 1e-10 * nested.abs().max(1.0));
    }
}

proptest! {
    #[test]
    fn kind_relation_is_exact(eta in -3.0f64..3.0, b in -10.0f64..10.0) {
        let second = AffineMap::new(Kind::Second, eta, b).unwrap();
        let first = AffineMap::new(Kind::First, eta, eta.exp() * b).unwrap();
        prop_assert_eq!(second.matrix(), first.matrix());
    }

    #[test]
    fn inverse_is_group_inverse(m in affine()) {
        let id = affine_compose(&m, &affine_inverse(&m)).matrix();
        prop_assert!((id - nalgebra::Matrix2::identity()).norm() < 1e-12);
    }

    #[test]
    fn wavelet_form_preserves_norm(m in affine()) {
        let f = gaussian_fn(Grid::new(-6.0, 6.0, 801).unwrap());
        let before = norm_sq(&f);
        let after = norm_sq(&wavelet_form(&f, &m).unwrap());
        prop_assert!((after - before).abs() <= 1e-12 * before);
    }

    #[test]
    fn boosts_add(eta1 in -1.5f64..1.5, eta2 in -1.5f64..1.5) {
        let g = gaussian_spectrum(Grid::new(1.0, 9.0, 257).unwrap());
        let b1 = Boost::new(eta1).unwrap();
        let b2 = Boost::new(eta2).unwrap();
        let twice = boost_spectral(&boost_spectral(&g, b1).unwrap(), b2).unwrap();
        let once = boost_spectral(&g, Boost::new(eta1 + eta2).unwrap()).unwrap();
        prop_assert_eq!(twice.data().values(), once.data().values());
        let (a, b) = (twice.grid(), once.grid());
        prop_assert!((a.lower() - b.lower()).abs() <= 4.0 * f64::EPSILON * b.lower());
        prop_assert!((a.upper() - b.upper()).abs() <= 4.0 * f64::EPSILON * b.upper());
    }

    #[test]
    fn second_kind_window_commutes_with_boost(
        a in 2.0f64..7.0, w in 0.1f64..3.0, eta in -2.0f64..2.0
    ) {
        let g = gaussian_spectrum(Grid::new(0.1, 20.0, 4096).unwrap());
        let win = Window::new(Kind::Second, a, w).unwrap();
        let boost = Boost::new(eta).unwrap();
        let lhs = apply_window(&boost_spectral(&g, boost).unwrap(), &boost_window(&win, boost)).unwrap();
        let rhs = boost_spectral(&apply_window(&g, &win).unwrap(), boost).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ratio_is_frame_independent(a in 0.1f64..10.0, w in 0.01f64..10.0, p in 0.1f64..50.0, eta in -3.0f64..3.0) {
        let win = Window::new(Kind::Second, a, w).unwrap();
        let boost = Boost::new(eta).unwrap();
        let before = invariant_ratio(&win, p).unwrap();
        let after = invariant_ratio(&boost_window(&win, boost), boost.factor() * p).unwrap();
        prop_assert!((after - before).abs() <= 1e-12 * before.max(1.0));
    }

    #[test]
    fn windowing_is_idempotent_and_never_adds_norm(a in 3.0f64..6.0, w in 0.05f64..4.0, kind in kind()) {
        let g = gaussian_spectrum(Grid::new(0.1, 20.0, 1024).unwrap());
        let win = Window::new(kind, a, w).unwrap();
        let once = apply_window(&g, &win).unwrap();
        let twice = apply_window(&once, &win).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert!(once.norm_squared() <= g.norm_squared() * (1.0 + 1e-9));
    }
}

#[test]
fn unit_gaussian_keeps_unit_norm_under_second_kind() {
    let grid = Grid::new(-8.0, 8.0, 2001).unwrap();
    let raw = gaussian_fn(grid);
    let n = norm_sq(&raw).sqrt();
    let f = raw.map(|_, v| v / n).unwrap();
    let m = AffineMap::new(Kind::Second, 0.7, 1.2).unwrap();
    assert!((norm_sq(&wavelet_form(&f, &m).unwrap()) - 1.0).abs() < 1e-9);
}

#[test]
fn bare_transformation_scales_norm_by_exp_eta() {
    let f = gaussian_fn(Grid::new(-8.0, 8.0, 2001).unwrap());
    for kind in [Kind::First, Kind::Second] {
        let m = AffineMap::new(kind, 4.0f64.ln(), -0.8).unwrap();
        let ratio = norm_sq(&transform_function(&f, &m).unwrap()) / norm_sq(&f);
        assert!((ratio - 4.0).abs() < 1e-9);
    }
}

#[test]
fn wavelet_form_argument_rule() {
    // output(x) = e^{-η/2} f(e^{-η}x - b) for the second kind,
    //             e^{-η/2} f(e^{-η}(x - b)) for the first.
    let f = |x: f64| (-(x - 0.3f64).powi(2)).exp();
    let grid = Grid::new(-6.0, 6.0, 121).unwrap();
    let sampled = GridFunction::from_fn(grid, |x| Complex64::new(f(x), 0.0)).unwrap();
    let (eta, b) = (0.6f64, 1.1f64);
    for (kind, inverse) in [
        (
            Kind::Second,
            Box::new(move |x: f64| (-eta).exp() * x - b) as Box<dyn Fn(f64) -> f64>,
        ),
        (Kind::First, Box::new(move |x: f64| (-eta).exp() * (x - b))),
    ] {
        let out = wavelet_form(&sampled, &AffineMap::new(kind, eta, b).unwrap()).unwrap();
        for (x, v) in out.grid().nodes().zip(out.values()) {
            let expected = (-eta / 2.0).exp() * f(inverse(x));
            assert!((v.re - expected).abs() < 1e-12, "{kind} x = {x}");
        }
    }
}

#[test]
fn first_kind_window_ignores_boost_and_does_not_commute() {
    let g = gaussian_spectrum(Grid::new(0.1, 20.0, 2048).unwrap());
    let win = Window::new(Kind::First, 4.5, 1.0).unwrap();
    let boost = Boost::new(0.5).unwrap();
    assert_eq!(boost_window(&win, boost), win);
    let lhs = apply_window(
        &boost_spectral(&g, boost).unwrap(),
        &boost_window(&win, boost),
    )
    .unwrap();
    let rhs = boost_spectral(&apply_window(&g, &win).unwrap(), boost).unwrap();
    assert_ne!(lhs, rhs);
}
