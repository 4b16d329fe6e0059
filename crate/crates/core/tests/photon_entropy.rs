//! Photon amplitude bridge and the entropy calculus.

mod common;

use std::f64::consts::{LN_2, PI};

use covwave_core::{
    apply_window, boost_density, boost_spectral, construct_spectral, density_from_spectral,
    entropy, entropy_difference, invariant_norm, synthesize, synthesize_photon_field, to_photon,
    Boost, Complex64, Grid, GridFunction, Kind, PhotonAmplitude, ProbabilityDensity,
    SpectralFunction, SpectralShape, SynthesisMode, Window,
};
use proptest::prelude::*;

fn gaussian(grid: Grid) -> SpectralFunction {
    construct_spectral(&SpectralShape::Gaussian {
        center: 5.0,
        width: 0.5,
        grid,
    })
    .unwrap()
}

fn max_abs_diff(a: &GridFunction, b: &GridFunction) -> f64 {
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[test]
fn photon_field_equals_wavelet() {
    let flat = construct_spectral(&SpectralShape::Flat {
        lower: 1.0,
        upper: 3.0,
        grid: Grid::new(0.5, 3.5, 601).unwrap(),
    })
    .unwrap();
    let windowed = apply_window(
        &gaussian(Grid::new(0.1, 20.0, 2048).unwrap()),
        &Window::new(Kind::Second, 4.5, 1.0).unwrap(),
    )
    .unwrap();
    let u = Grid::new(-30.0, 30.0, 601).unwrap();
    for g in [flat, windowed] {
        let p = g.mean_momentum().unwrap();
        let a = to_photon(&g, p).unwrap();
        let big_a = synthesize_photon_field(&a, &u).unwrap();
        let big_g = synthesize(&g, &u, SynthesisMode::Wavelet).unwrap();
        assert!(max_abs_diff(&big_a.data, &big_g.data) < 1e-8 * big_g.data.max_abs());
    }
}

#[test]
fn photon_map_commutes_with_boost() {
    let g = apply_window(
        &gaussian(Grid::new(0.1, 20.0, 1024).unwrap()),
        &Window::new(Kind::Second, 4.0, 2.0).unwrap(),
    )
    .unwrap();
    let p = g.mean_momentum().unwrap();
    for eta in [-1.3, 0.4, 2.0] {
        let boost = Boost::new(eta).unwrap();
        let lhs = to_photon(&boost_spectral(&g, boost).unwrap(), boost.factor() * p).unwrap();
        let rhs = to_photon(&g, p).unwrap().boosted(boost).unwrap();
        assert_eq!(lhs.data().grid(), rhs.data().grid());
        assert_eq!(lhs.data().support(), rhs.data().support());
        for (x, y) in lhs.data().values().iter().zip(rhs.data().values()) {
            assert!((x - y).norm() <= 4.0 * f64::EPSILON * y.norm());
        }
    }
}

#[test]
fn photon_factor_is_monotone() {
    let g = gaussian(Grid::new(0.1, 20.0, 1024).unwrap());
    let p = g.mean_momentum().unwrap();
    let a = to_photon(&g, p).unwrap();
    for ((k, av), gv) in a
        .data()
        .grid()
        .nodes()
        .zip(a.data().values())
        .zip(g.data().values())
    {
        if k >= p {
            assert!(av.norm() >= gv.norm());
        }
        if k <= p {
            assert!(av.norm() <= gv.norm());
        }
    }
}

proptest! {
    #[test]
    fn invariant_norm_is_frame_independent(eta in -2.0f64..2.0) {
        let g = gaussian(Grid::new(0.1, 20.0, 1024).unwrap());
        let a = to_photon(&g, 5.0).unwrap();
        let rest = invariant_norm(&a);
        let moved = invariant_norm(&a.boosted(Boost::new(eta).unwrap()).unwrap());
        prop_assert!((moved - rest).abs() <= 1e-6 * rest);
    }
}

#[test]
fn flat_invariant_norm_closed_form() {
    let grid = Grid::new(1.0, 3.0, 4096).unwrap();
    let a = PhotonAmplitude::new(
        GridFunction::from_real(grid, &vec![1.0; 4096]).unwrap(),
        2.0,
    )
    .unwrap();
    assert!((invariant_norm(&a) - 3.0f64.ln() / (2.0 * PI)).abs() < 1e-6);
}

#[test]
fn gaussian_density_moments_and_entropy() {
    // |g|² narrows the Gaussian to standard deviation s/√2.
    // even panel count so Simpson's nodes are exactly the grid nodes
    let rho = density_from_spectral(&gaussian(Grid::new(0.1, 20.0, 4097).unwrap())).unwrap();
    let grid = *rho.data().grid();
    let values: Vec<f64> = rho.data().values().iter().map(|v| v.re).collect();
    let node = |x: f64| ((x - grid.lower()) / grid.spacing()).round() as usize;
    let at = |x: f64| values[node(x)];
    let mean = common::simpson(|x| x * at(x), grid.lower(), grid.upper(), 4096);
    let var = common::simpson(
        |x| (x - mean).powi(2) * at(x),
        grid.lower(),
        grid.upper(),
        4096,
    );
    assert!((var.sqrt() - 0.5 / 2.0f64.sqrt()).abs() < 1e-4);

    let closed = 0.5 * (2.0 * PI * std::f64::consts::E * var).ln();
    assert!((entropy(&rho).unwrap() - closed).abs() < 1e-4);
    let exact = 0.5 * (2.0 * PI * std::f64::consts::E * 0.125).ln();
    assert!((entropy(&rho).unwrap() - exact).abs() < 1e-6);
}

fn mixture(weights: &[f64], centers: &[f64], widths: &[f64]) -> ProbabilityDensity {
    let grid = Grid::new(-8.0, 20.0, 6000).unwrap();
    let f = GridFunction::from_fn(grid, |x| {
        let v: f64 = weights
            .iter()
            .zip(centers)
            .zip(widths)
            .map(|((w, c), s)| w * (-(x - c).powi(2) / (2.0 * s * s)).exp())
            .sum();
        Complex64::new(v, 0.0)
    })
    .unwrap();
    ProbabilityDensity::normalize(f).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn boost_shifts_entropy_by_rapidity(
        weights in prop::collection::vec(0.1f64..1.0, 3),
        centers in prop::collection::vec(0.0f64..12.0, 3),
        widths in prop::collection::vec(0.3f64..2.0, 3),
    ) {
        let rho = mixture(&weights, &centers, &widths);
        let s = entropy(&rho).unwrap();
        for eta in [-1.0, -0.3, 0.3, 1.0] {
            let boosted = boost_density(&rho, Boost::new(eta).unwrap()).unwrap();
            prop_assert!((boosted.mass() - 1.0).abs() < 1e-10);
            let shift = entropy(&boosted).unwrap() - s;
            prop_assert!((shift - eta).abs() < 1e-5, "eta {} shift {}", eta, shift);
        }
    }

    #[test]
    fn entropy_is_translation_invariant(c in -50.0f64..50.0, center in 0.0f64..12.0, width in 0.3f64..2.0) {
        let rho = mixture(&[1.0], &[center], &[width]);
        let moved = rho.translated(c).unwrap();
        prop_assert!((entropy(&moved).unwrap() - entropy(&rho).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn densities_are_normalized_and_nonnegative(a in 3.0f64..6.5, w in 0.05f64..3.0, eta in -1.5f64..1.5) {
        let g = boost_spectral(&gaussian(Grid::new(0.1, 20.0, 2048).unwrap()), Boost::new(eta).unwrap()).unwrap();
        let win = Window::new(Kind::Second, a * eta.exp(), w * eta.exp()).unwrap();
        for spectrum in [g.clone(), apply_window(&g, &win).unwrap()] {
            let rho = density_from_spectral(&spectrum).unwrap();
            prop_assert!((rho.mass() - 1.0).abs() < 1e-10);
            prop_assert!(rho.data().values().iter().all(|v| v.re >= 0.0 && v.im == 0.0));
        }
    }
}

#[test]
fn delta_s_oracle_matches_stored_target() {
    let fresh = common::gaussian_delta_s(5.0, 0.5, 4.5, 5.5, 0.1, 20.0, 200_001);
    assert!((fresh - common::DELTA_S0).abs() < 1e-9, "{fresh}");
}

#[test]
fn delta_s_is_lorentz_invariant_and_matches_oracle() {
    let g = gaussian(Grid::new(0.1, 20.0, 4096).unwrap());
    let win = Window::new(Kind::Second, 4.5, 1.0).unwrap();
    let rest = entropy_difference(&g, &win, Boost::identity()).unwrap();
    assert!(rest.delta_s > 0.0);
    assert!(
        (rest.delta_s - common::DELTA_S0).abs() < 1e-4,
        "{}",
        rest.delta_s
    );
    for eta in [-1.5, -1.0, -0.5, 0.5, 1.0, 1.5] {
        let r = entropy_difference(&g, &win, Boost::new(eta).unwrap()).unwrap();
        assert!((r.delta_s - rest.delta_s).abs() < 1e-4);
        assert!((r.s_analytic - rest.s_analytic - eta).abs() < 1e-6);
    }
}

#[test]
fn flat_spectrum_delta_s_invariance() {
    let g = construct_spectral(&SpectralShape::Flat {
        lower: 1.0,
        upper: 4.0,
        grid: Grid::new(0.5, 4.5, 2048).unwrap(),
    })
    .unwrap();
    let win = Window::new(Kind::Second, 1.7, 1.1).unwrap();
    let rest = entropy_difference(&g, &win, Boost::identity()).unwrap();
    // uniform densities: ln 3 - ln 1.1
    assert!((rest.delta_s - (3.0f64.ln() - 1.1f64.ln())).abs() < 1e-9);
    for eta in [-1.5, 0.7, 1.5] {
        let r = entropy_difference(&g, &win, Boost::new(eta).unwrap()).unwrap();
        assert!((r.delta_s - rest.delta_s).abs() < 1e-4);
    }
}

#[test]
fn window_annihilating_spectrum_is_rejected() {
    let g = construct_spectral(&SpectralShape::Flat {
        lower: 1.0,
        upper: 2.0,
        grid: Grid::new(0.5, 4.5, 801).unwrap(),
    })
    .unwrap();
    let win = Window::new(Kind::Second, 3.0, 1.0).unwrap();
    assert!(entropy_difference(&g, &win, Boost::identity()).is_err());
}

#[test]
fn uniform_boost_reproduces_ln2_shift() {
    let grid = Grid::new(1.0, 3.0, 501).unwrap();
    let rho =
        ProbabilityDensity::new(GridFunction::from_real(grid, &vec![0.5; 501]).unwrap()).unwrap();
    assert!((entropy(&rho).unwrap() - LN_2).abs() < 1e-6);
    let b = boost_density(&rho, Boost::new(LN_2).unwrap()).unwrap();
    assert!((entropy(&b).unwrap() - 2.0 * LN_2).abs() < 1e-6);
}
