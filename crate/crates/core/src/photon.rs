//! Photon amplitudes `a(k) = √(k/p) g(k)` and the field
//! `A(u) = ∫ (2πk)^{-1/2} a(k) e^{iku} dk` (with ω = k).
//!
//! With this amplitude, `A(u)` coincides with the wavelet `G(u)` built from
//! `g`. Both `k` and `p` scale by `e^η` under a boost, so the map commutes
//! with boosts.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::covariance::Boost;
use crate::error::{Error, Result};
use crate::numerics::{integrate_real, Grid, GridFunction};
use crate::spectral::{fourier_synthesis, SpectralFunction, WaveletSignal};

#[derive(Debug, Clone, PartialEq)]
pub struct PhotonAmplitude {
    data: GridFunction,
    mean_momentum: f64,
}

impl PhotonAmplitude {
    pub fn new(data: GridFunction, mean_momentum: f64) -> Result<Self> {
        check_momentum(mean_momentum)?;
        if data.grid().lower() <= 0.0 {
            return Err(Error::NonPositiveMomentum {
                index: 0,
                k: data.grid().lower(),
            });
        }
        Ok(PhotonAmplitude {
            data,
            mean_momentum,
        })
    }

    pub fn data(&self) -> &GridFunction {
        &self.data
    }

    pub fn mean_momentum(&self) -> f64 {
        self.mean_momentum
    }

    /// `a(e^{-η}k)` on the scaled grid, with `p -> e^η p`.
    pub fn boosted(&self, boost: Boost) -> Result<Self> {
        if boost.rapidity() == 0.0 {
            return Ok(self.clone());
        }
        let f = boost.factor();
        Ok(PhotonAmplitude {
            data: self.data.remap_axis(f, 0.0)?,
            mean_momentum: f * self.mean_momentum,
        })
    }
}

fn check_momentum(p: f64) -> Result<()> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::param(
            "p",
            format!("mean momentum must be positive, got {p}"),
        ));
    }
    Ok(())
}

/// `a(k) = √(k/p) g(k)`.
///
/// Leading nodes with `k <= 0` are dropped from the grid when `g` vanishes
/// there; any such node carrying a nonzero value is an error.
pub fn to_photon(g: &SpectralFunction, p: f64) -> Result<PhotonAmplitude> {
    check_momentum(p)?;
    let data = g.data();
    let grid = data.grid();
    let active = data.active_nodes();
    let carries = |i: usize| {
        active.as_ref().is_some_and(|r| r.contains(&i))
            && data.values()[i] != Complex64::new(0.0, 0.0)
    };
    let mut leading = 0;
    while leading < grid.count() && grid.node(leading) <= 0.0 {
        if carries(leading) {
            return Err(Error::NonPositiveMomentum {
                index: leading,
                k: grid.node(leading),
            });
        }
        leading += 1;
    }
    if leading + 1 >= grid.count() {
        return Err(Error::NonPositiveMomentum {
            index: grid.count() - 1,
            k: grid.upper(),
        });
    }
    let trimmed = data.drop_leading(leading)?;
    let a = trimmed.map(|k, v| v * (k / p).sqrt())?;
    PhotonAmplitude::new(a, p)
}

/// `g(k) = √(p/k) a(k)`.
pub fn to_spectral(a: &PhotonAmplitude, p: f64) -> Result<SpectralFunction> {
    check_momentum(p)?;
    let g = a.data.map(|k, v| v * (p / k).sqrt())?;
    Ok(SpectralFunction::new(g))
}

/// `∫ |a(k)|² / (2πk) dk`, invariant under boosts since `dk/k` is.
pub fn invariant_norm(a: &PhotonAmplitude) -> f64 {
    integrate_real(&a.data, |k, v| v.norm_sqr() / (2.0 * PI * k))
}

pub fn synthesize_photon_field(a: &PhotonAmplitude, u_grid: &Grid) -> Result<WaveletSignal> {
    let data = fourier_synthesis(&a.data, u_grid, 1.0, |k| (2.0 * PI * k).sqrt().recip())?;
    Ok(WaveletSignal {
        data,
        mean_momentum: a.mean_momentum,
    })
}
