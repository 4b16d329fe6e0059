//! Spectral functions `g(k)` and their Fourier synthesis into wave forms.
//!
//! Two synthesis modes share one quadrature:
//!
//! - classical: `F(u) = (2π)^{-1/2} ∫ g(k) e^{iku} dk`
//! - wavelet:   `G(u) = (2πp)^{-1/2} ∫ g(k) e^{iku} dk`, with `p` the
//!   intensity-weighted mean momentum of `g`.
//!
//! The wavelet form is the frame-covariant one: under a boost `p -> e^η p`
//! and `g(k) -> g(e^{-η}k)`, its squared norm `∫|G|² du = ‖g‖²/p` does not
//! change.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{integrate_real, integrate_with, Grid, GridFunction};

/// How to build a spectral function.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralShape {
    /// `exp(-(k - center)² / (2 width²))` on `grid`.
    Gaussian { center: f64, width: f64, grid: Grid },
    /// 1 on `[lower, upper]`, 0 elsewhere on `grid`. The support is hard.
    Flat { lower: f64, upper: f64, grid: Grid },
    /// Raw samples.
    Samples(GridFunction),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFunction {
    data: GridFunction,
    reference_scale: f64,
}

impl SpectralFunction {
    /// Wraps samples; the reference scale σ defaults to the mean momentum
    /// (so the multiplier pair is the identity in this frame), or 1 when the
    /// mean momentum is undefined or non-positive.
    pub fn new(data: GridFunction) -> Self {
        let mut g = SpectralFunction {
            data,
            reference_scale: 1.0,
        };
        if let Ok(p) = g.mean_momentum() {
            if p > 0.0 && p.is_finite() {
                g.reference_scale = p;
            }
        }
        g
    }

    pub fn with_reference_scale(data: GridFunction, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::param(
                "reference_scale",
                format!("must be positive, got {sigma}"),
            ));
        }
        Ok(SpectralFunction {
            data,
            reference_scale: sigma,
        })
    }

    pub fn data(&self) -> &GridFunction {
        &self.data
    }

    pub fn grid(&self) -> &Grid {
        self.data.grid()
    }

    pub fn reference_scale(&self) -> f64 {
        self.reference_scale
    }

    pub(crate) fn replace_data(&self, data: GridFunction) -> Self {
        SpectralFunction {
            data,
            reference_scale: self.reference_scale,
        }
    }

    /// `∫|g(k)|² dk`.
    pub fn norm_squared(&self) -> f64 {
        integrate_real(&self.data, |_, v| v.norm_sqr())
    }

    /// `∫k|g|² dk / ∫|g|² dk`.
    pub fn mean_momentum(&self) -> Result<f64> {
        let norm = self.norm_squared();
        if norm <= 0.0 {
            return Err(Error::ZeroNorm("mean momentum of a zero spectral function"));
        }
        Ok(integrate_real(&self.data, |k, v| k * v.norm_sqr()) / norm)
    }
}

pub fn construct_spectral(shape: &SpectralShape) -> Result<SpectralFunction> {
    let data = match shape {
        SpectralShape::Gaussian {
            center,
            width,
            grid,
        } => {
            check_positive_grid(grid)?;
            if !(*center > 0.0) || !center.is_finite() {
                return Err(Error::param(
                    "center",
                    format!("must be positive, got {center}"),
                ));
            }
            if !(*width > 0.0) || !width.is_finite() {
                return Err(Error::param(
                    "width",
                    format!("must be positive, got {width}"),
                ));
            }
            let two_s2 = 2.0 * width * width;
            GridFunction::from_fn(*grid, |k| {
                Complex64::new((-(k - center).powi(2) / two_s2).exp(), 0.0)
            })?
        }
        SpectralShape::Flat { lower, upper, grid } => {
            check_positive_grid(grid)?;
            if !(*lower > 0.0) || !(lower < upper) || !upper.is_finite() {
                return Err(Error::param(
                    "support",
                    format!("need 0 < lower < upper, got [{lower}, {upper}]"),
                ));
            }
            GridFunction::from_fn(*grid, |_| Complex64::new(1.0, 0.0))?.restrict(*lower, *upper)?
        }
        SpectralShape::Samples(data) => data.clone(),
    };
    Ok(SpectralFunction::new(data))
}

fn check_positive_grid(grid: &Grid) -> Result<()> {
    if grid.lower() <= 0.0 {
        return Err(Error::param(
            "grid",
            format!("lower bound must be positive, got {}", grid.lower()),
        ));
    }
    Ok(())
}

pub fn norm_squared(g: &SpectralFunction) -> f64 {
    g.norm_squared()
}

pub fn mean_momentum(g: &SpectralFunction) -> Result<f64> {
    g.mean_momentum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthesisMode {
    Wavelet,
    Classical,
}

/// A wave form sampled on a `u = z - t` grid together with the mean
/// momentum it was built with (1 for classical synthesis).
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletSignal {
    pub data: GridFunction,
    pub mean_momentum: f64,
}

impl WaveletSignal {
    /// `∫|signal(u)|² du`.
    pub fn norm_squared(&self) -> f64 {
        integrate_real(&self.data, |_, v| v.norm_sqr())
    }

    pub fn edge_leakage(&self) -> f64 {
        self.data.edge_leakage()
    }
}

pub fn synthesize(
    g: &SpectralFunction,
    u_grid: &Grid,
    mode: SynthesisMode,
) -> Result<WaveletSignal> {
    match mode {
        SynthesisMode::Wavelet => {
            let p = g.mean_momentum()?;
            synthesize_with_momentum(g, u_grid, p)
        }
        SynthesisMode::Classical => {
            if g.norm_squared() <= 0.0 {
                return Err(Error::ZeroNorm("synthesis of a zero spectral function"));
            }
            Ok(WaveletSignal {
                data: fourier_synthesis(g.data(), u_grid, (2.0 * PI).sqrt().recip(), |_| 1.0)?,
                mean_momentum: 1.0,
            })
        }
    }
}

/// Wavelet synthesis with a caller-supplied mean momentum `p`.
pub fn synthesize_with_momentum(
    g: &SpectralFunction,
    u_grid: &Grid,
    p: f64,
) -> Result<WaveletSignal> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::param(
            "p",
            format!("mean momentum must be positive, got {p}"),
        ));
    }
    if g.norm_squared() <= 0.0 {
        return Err(Error::ZeroNorm("synthesis of a zero spectral function"));
    }
    Ok(WaveletSignal {
        data: fourier_synthesis(g.data(), u_grid, (2.0 * PI * p).sqrt().recip(), |_| 1.0)?,
        mean_momentum: p,
    })
}

/// `prefactor · ∫ weight(k) s(k) e^{iku} dk` at every node of `u_grid`.
pub(crate) fn fourier_synthesis(
    spectrum: &GridFunction,
    u_grid: &Grid,
    prefactor: f64,
    weight: impl Fn(f64) -> f64 + Sync,
) -> Result<GridFunction> {
    let values = (0..u_grid.count())
        .into_par_iter()
        .map(|j| {
            let u = u_grid.node(j);
            prefactor * integrate_with(spectrum, |k, v| v * weight(k) * Complex64::cis(k * u))
        })
        .collect();
    GridFunction::new(*u_grid, values)
}
