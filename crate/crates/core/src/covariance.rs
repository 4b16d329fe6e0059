//! Boosts as squeezes of the (u, k) plane and the affine group acting on a
//! single axis.
//!
//! An affine map is written in 2×2 upper-triangular form acting on the
//! column `(x, 1)`:
//!
//! ```text
//! first kind  (squeeze, then shift):  [[e^η, b    ], [0, 1]]   x' = e^η x + b
//! second kind (shift, then squeeze):  [[e^η, e^η b], [0, 1]]   x' = e^η (x + b)
//! ```
//!
//! Boosts and wavelet forms move grid bounds instead of resampling, so every
//! transformation here is exact at the node level.

use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::GridFunction;
use crate::spectral::SpectralFunction;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boost {
    rapidity: f64,
}

impl Boost {
    pub fn new(rapidity: f64) -> Result<Self> {
        if !rapidity.is_finite() {
            return Err(Error::param(
                "eta",
                format!("must be finite, got {rapidity}"),
            ));
        }
        Ok(Boost { rapidity })
    }

    pub fn identity() -> Self {
        Boost { rapidity: 0.0 }
    }

    pub fn rapidity(&self) -> f64 {
        self.rapidity
    }

    /// `e^η`, the factor applied to momenta.
    pub fn factor(&self) -> f64 {
        self.rapidity.exp()
    }
}

/// `g_η(k) = g(e^{-η}k)`: same samples, k-grid (and support) scaled by `e^η`.
/// The reference scale σ is a frame-independent constant and is kept.
pub fn boost_spectral(g: &SpectralFunction, boost: Boost) -> Result<SpectralFunction> {
    if boost.rapidity == 0.0 {
        return Ok(g.clone());
    }
    Ok(g.replace_data(g.data().remap_axis(boost.factor(), 0.0)?))
}

/// Multipliers `(√(p/σ), √(σ/p))` for `F' = √(p/σ) F` and `g' = √(σ/p) g`.
pub fn multiplier_pair(g: &SpectralFunction, p: f64) -> Result<(f64, f64)> {
    let sigma = g.reference_scale();
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::param("p", format!("must be positive, got {p}")));
    }
    if !(sigma > 0.0) {
        return Err(Error::param(
            "reference_scale",
            format!("must be positive, got {sigma}"),
        ));
    }
    Ok(((p / sigma).sqrt(), (sigma / p).sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    First,
    Second,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::First => "first",
            Kind::Second => "second",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "first" | "1" => Ok(Kind::First),
            "second" | "2" => Ok(Kind::Second),
            other => Err(Error::param(
                "kind",
                format!("expected `first` or `second`, got `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    pub rapidity: f64,
    pub shift: f64,
    pub kind: Kind,
}

impl AffineMap {
    pub fn new(kind: Kind, rapidity: f64, shift: f64) -> Result<Self> {
        if !rapidity.is_finite() || !shift.is_finite() {
            return Err(Error::param(
                "affine",
                format!("rapidity and shift must be finite, got ({rapidity}, {shift})"),
            ));
        }
        Ok(AffineMap {
            rapidity,
            shift,
            kind,
        })
    }

    pub fn squeeze(rapidity: f64) -> Self {
        AffineMap {
            rapidity,
            shift: 0.0,
            kind: Kind::First,
        }
    }

    pub fn translation(shift: f64) -> Self {
        AffineMap {
            rapidity: 0.0,
            shift,
            kind: Kind::First,
        }
    }

    /// Shift as it appears in the matrix, i.e. the first-kind `b`.
    pub fn matrix_shift(&self) -> f64 {
        match self.kind {
            Kind::First => self.shift,
            Kind::Second => self.rapidity.exp() * self.shift,
        }
    }

    pub fn matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.rapidity.exp(), self.matrix_shift(), 0.0, 1.0)
    }

    /// Reads `(η, b)` off an affine matrix; the result is first kind.
    pub fn from_matrix(m: &Matrix2<f64>) -> Result<Self> {
        if !(m[(0, 0)] > 0.0) || m[(1, 0)] != 0.0 || m[(1, 1)] != 1.0 {
            return Err(Error::param(
                "matrix",
                format!("not an orientation-preserving affine matrix: {m}"),
            ));
        }
        AffineMap::new(Kind::First, m[(0, 0)].ln(), m[(0, 1)])
    }

    pub fn apply(&self, x: f64) -> f64 {
        affine_apply(self, x)
    }

    /// Converts to the other representation of the same matrix.
    pub fn as_kind(&self, kind: Kind) -> AffineMap {
        let shift = match kind {
            Kind::First => self.matrix_shift(),
            Kind::Second => match self.kind {
                Kind::Second => self.shift,
                Kind::First => (-self.rapidity).exp() * self.shift,
            },
        };
        AffineMap {
            rapidity: self.rapidity,
            shift,
            kind,
        }
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.kind, self.rapidity, self.shift)
    }
}

impl FromStr for AffineMap {
    type Err = Error;

    /// Parses `kind,eta,b`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        let [kind, eta, b] = parts.as_slice() else {
            return Err(Error::param(
                "affine",
                format!("expected `kind,eta,b`, got `{s}`"),
            ));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::param("affine", format!("`{t}`: {e}")))
        };
        AffineMap::new(kind.parse()?, num(eta)?, num(b)?)
    }
}

pub fn affine_apply(m: &AffineMap, x: f64) -> f64 {
    let scale = m.rapidity.exp();
    match m.kind {
        Kind::First => scale * x + m.shift,
        Kind::Second => scale * (x + m.shift),
    }
}

/// The map whose matrix is `outer · inner`, in first-kind form.
pub fn affine_compose(outer: &AffineMap, inner: &AffineMap) -> AffineMap {
    let product = outer.matrix() * inner.matrix();
    AffineMap {
        rapidity: outer.rapidity + inner.rapidity,
        shift: product[(0, 1)],
        kind: Kind::First,
    }
}

/// Group inverse, in the same kind as the input.
///
/// First kind: `x = e^{-η}x' - e^{-η}b`. Second kind: `x = e^{-η}x' - b`,
/// i.e. second kind with `(-η, -e^η b)`.
pub fn affine_inverse(m: &AffineMap) -> AffineMap {
    let shift = match m.kind {
        Kind::First => -(-m.rapidity).exp() * m.shift,
        Kind::Second => -m.rapidity.exp() * m.shift,
    };
    AffineMap {
        rapidity: -m.rapidity,
        shift,
        kind: m.kind,
    }
}

/// `f(m⁻¹ x)` without the normalizing prefactor. Its squared norm is
/// `e^η` times that of `f`.
pub fn transform_function(f: &GridFunction, m: &AffineMap) -> Result<GridFunction> {
    f.remap_axis(m.rapidity.exp(), m.matrix_shift())
}

/// Norm-preserving wavelet form `e^{-η/2} f(m⁻¹ x)`.
///
/// Second kind gives `e^{-η/2} f(e^{-η}x - b)`, first kind
/// `e^{-η/2} f(e^{-η}(x - b))`. The output grid is the affine image of the
/// input grid.
pub fn wavelet_form(f: &GridFunction, m: &AffineMap) -> Result<GridFunction> {
    let damp = (-0.5 * m.rapidity).exp();
    transform_function(f, m)?.map(|_, v| v * Complex64::new(damp, 0.0))
}
