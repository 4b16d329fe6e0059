//! Differential entropy of momentum densities and its behaviour under boosts.
//!
//! A boost maps a density to `e^{-η} ρ(e^{-η}k)`, which shifts the entropy
//! `S = -∫ρ ln ρ dk` by exactly `η`. The windowed and analytic densities of
//! one spectrum shift together, so their difference `ΔS = S_A - S_W` is the
//! same in every frame provided the window is transported with the spectrum
//! (second kind).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::covariance::{boost_spectral, Boost};
use crate::error::{Error, Result};
use crate::numerics::{integrate_real, GridFunction};
use crate::photon::to_photon;
use crate::spectral::SpectralFunction;
use crate::windowing::{apply_window, boost_window, Window};

/// Tolerance on `∫ρ = 1` accepted by [`ProbabilityDensity::new`].
pub const NORMALIZATION_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDensity {
    data: GridFunction,
}

impl ProbabilityDensity {
    /// Checks that values are real, nonnegative and integrate to one.
    pub fn new(data: GridFunction) -> Result<Self> {
        check_nonnegative(&data)?;
        let mass = integrate_real(&data, |_, v| v.re);
        if (mass - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized(mass));
        }
        Ok(ProbabilityDensity { data })
    }

    /// Scales nonnegative real samples to unit mass.
    pub fn normalize(data: GridFunction) -> Result<Self> {
        check_nonnegative(&data)?;
        let mass = integrate_real(&data, |_, v| v.re);
        if !(mass > 0.0) {
            return Err(Error::ZeroNorm("density with zero mass"));
        }
        let data = data.map(|_, v| v / mass)?;
        // second pass absorbs the rounding of the first division
        let mass = integrate_real(&data, |_, v| v.re);
        Ok(ProbabilityDensity {
            data: data.map(|_, v| v / mass)?,
        })
    }

    pub fn data(&self) -> &GridFunction {
        &self.data
    }

    pub fn mass(&self) -> f64 {
        integrate_real(&self.data, |_, v| v.re)
    }

    /// The density relabelled by `k -> k + shift`.
    pub fn translated(&self, shift: f64) -> Result<Self> {
        Ok(ProbabilityDensity {
            data: self.data.remap_axis(1.0, shift)?,
        })
    }
}

fn check_nonnegative(data: &GridFunction) -> Result<()> {
    for (index, v) in data.values().iter().enumerate() {
        if v.re < 0.0 || v.im != 0.0 {
            return Err(Error::NegativeDensity {
                index,
                value: if v.im != 0.0 { f64::NAN } else { v.re },
            });
        }
    }
    Ok(())
}

/// `ρ(k) = |g(k)|² / ∫|g|² dk`.
pub fn density_from_spectral(g: &SpectralFunction) -> Result<ProbabilityDensity> {
    if g.norm_squared() <= 0.0 {
        return Err(Error::ZeroNorm("density of a zero spectral function"));
    }
    ProbabilityDensity::normalize(g.data().map(|_, v| Complex64::new(v.norm_sqr(), 0.0))?)
}

/// `ρ(k) ∝ |a(k)|² / k` with `a = √(k/p) g`.
pub fn density_from_photon(g: &SpectralFunction, p: f64) -> Result<ProbabilityDensity> {
    let a = to_photon(g, p)?;
    if integrate_real(a.data(), |_, v| v.norm_sqr()) <= 0.0 {
        return Err(Error::ZeroNorm("density of a zero photon amplitude"));
    }
    ProbabilityDensity::normalize(a.data().map(|k, v| Complex64::new(v.norm_sqr() / k, 0.0))?)
}

/// `-∫ρ ln ρ dk` in nats, with `0 ln 0 = 0`.
pub fn entropy(rho: &ProbabilityDensity) -> Result<f64> {
    check_nonnegative(&rho.data)?;
    Ok(integrate_real(&rho.data, |_, v| {
        let r = v.re;
        if r > 0.0 {
            -r * r.ln()
        } else {
            0.0
        }
    }))
}

/// `e^{-η} ρ(e^{-η}k)` on the k-grid scaled by `e^η`.
pub fn boost_density(rho: &ProbabilityDensity, boost: Boost) -> Result<ProbabilityDensity> {
    if boost.rapidity() == 0.0 {
        return Ok(rho.clone());
    }
    let f = boost.factor();
    let data = rho.data.remap_axis(f, 0.0)?.map(|_, v| v / f)?;
    ProbabilityDensity::new(data)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DensityMode {
    /// `ρ ∝ |g|²`
    #[default]
    Intensity,
    /// `ρ ∝ |a|²/k`, for sensitivity studies.
    Photon,
}

impl fmt::Display for DensityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DensityMode::Intensity => "intensity",
            DensityMode::Photon => "photon",
        })
    }
}

impl FromStr for DensityMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "intensity" => Ok(DensityMode::Intensity),
            "photon" => Ok(DensityMode::Photon),
            other => Err(Error::param(
                "density_mode",
                format!("expected `intensity` or `photon`, got `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    pub s_analytic: f64,
    pub s_windowed: f64,
    pub delta_s: f64,
    pub rapidity: f64,
}

impl EntropyReport {
    pub const CSV_HEADER: &'static str = "eta,s_analytic,s_windowed,delta_s";

    pub fn csv_record(&self) -> String {
        format!(
            "{},{},{},{}",
            self.rapidity, self.s_analytic, self.s_windowed, self.delta_s
        )
    }
}

/// `ΔS = S_A - S_W` in the frame reached by `boost`.
///
/// The spectrum and the window are boosted together, then `ρ_A` is built
/// from the boosted spectrum and `ρ_W` from its windowed copy, each
/// normalized to unit mass.
pub fn entropy_difference(
    g_analytic: &SpectralFunction,
    win: &Window,
    boost: Boost,
) -> Result<EntropyReport> {
    entropy_difference_with(g_analytic, win, boost, DensityMode::Intensity)
}

pub fn entropy_difference_with(
    g_analytic: &SpectralFunction,
    win: &Window,
    boost: Boost,
    mode: DensityMode,
) -> Result<EntropyReport> {
    let analytic = boost_spectral(g_analytic, boost)?;
    let windowed = apply_window(&analytic, &boost_window(win, boost))?;
    if windowed.norm_squared() <= 0.0 {
        return Err(Error::ZeroNorm("window annihilates the spectrum"));
    }
    let (rho_a, rho_w) = match mode {
        DensityMode::Intensity => (
            density_from_spectral(&analytic)?,
            density_from_spectral(&windowed)?,
        ),
        DensityMode::Photon => {
            let p = analytic.mean_momentum()?;
            (
                density_from_photon(&analytic, p)?,
                density_from_photon(&windowed, p)?,
            )
        }
    };
    let s_analytic = entropy(&rho_a)?;
    let s_windowed = entropy(&rho_w)?;
    Ok(EntropyReport {
        s_analytic,
        s_windowed,
        delta_s: s_analytic - s_windowed,
        rapidity: boost.rapidity(),
    })
}
