//! Lorentz-covariant wavelet synthesis on a single light-cone axis.
//!
//! Spectral functions `g(k)` are synthesized into wave forms of
//! `u = z - t`; boosts act as squeezes `k -> e^η k`, `u -> e^{-η} u`.
//! Around that core the crate provides the affine group of both kinds,
//! hard spectral windows that can be transported covariantly, the map to
//! photon amplitudes `a(k) = √(k/p) g(k)`, and the differential entropy of
//! momentum densities with its exact boost shift.
//!
//! Every transformation moves grid bounds rather than resampling, so the
//! invariances hold at the node level and are directly testable.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod covariance;
pub mod entropy;
pub mod error;
pub mod io;
pub mod numerics;
pub mod photon;
pub mod spectral;
pub mod windowing;

pub use covariance::{
    affine_apply, affine_compose, affine_inverse, boost_spectral, multiplier_pair,
    transform_function, wavelet_form, AffineMap, Boost, Kind,
};
pub use entropy::{
    boost_density, density_from_photon, density_from_spectral, entropy, entropy_difference,
    entropy_difference_with, DensityMode, EntropyReport, ProbabilityDensity,
};
pub use error::{Error, Result};
pub use numerics::{
    integrate, integrate_real, integrate_with, resample, Grid, GridFunction, Interval,
};
pub use photon::{
    invariant_norm, synthesize_photon_field, to_photon, to_spectral, PhotonAmplitude,
};
pub use spectral::{
    construct_spectral, mean_momentum, norm_squared, synthesize, synthesize_with_momentum,
    SpectralFunction, SpectralShape, SynthesisMode, WaveletSignal,
};
pub use windowing::{apply_window, boost_window, invariant_ratio, Window};

pub use num_complex::Complex64;
