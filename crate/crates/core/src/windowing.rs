//! Hard spectral windows `[a, a + w]`.
//!
//! A second-kind window is transported by boosts like the spectrum itself
//! (both edges scale by `e^η`), so windowing and boosting commute and `w/p`
//! is frame independent. A first-kind window is a fixed observer scope: it
//! ignores boosts and moves only under explicit translation.

use std::fmt;
use std::str::FromStr;

use crate::covariance::{Boost, Kind};
use crate::error::{Error, Result};
use crate::spectral::SpectralFunction;

/// Stored by its edges so that boosting scales each edge independently and
/// reproduces exactly the support that [`crate::covariance::boost_spectral`]
/// produces for an already-windowed spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    lower: f64,
    upper: f64,
    kind: Kind,
}

impl Window {
    pub fn new(kind: Kind, lower: f64, width: f64) -> Result<Self> {
        if !lower.is_finite() {
            return Err(Error::param("a", format!("must be finite, got {lower}")));
        }
        if !(width > 0.0) || !width.is_finite() {
            return Err(Error::param(
                "w",
                format!("window width must be positive, got {width}"),
            ));
        }
        Ok(Window {
            lower,
            upper: lower + width,
            kind,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// Moves both edges by `shift`; applies to either kind.
    pub fn translate(&self, shift: f64) -> Window {
        Window {
            lower: self.lower + shift,
            upper: self.upper + shift,
            kind: self.kind,
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.kind, self.lower, self.width())
    }
}

impl FromStr for Window {
    type Err = Error;

    /// Parses `kind,a,w`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        let [kind, a, w] = parts.as_slice() else {
            return Err(Error::param(
                "window",
                format!("expected `kind,a,w`, got `{s}`"),
            ));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::param("window", format!("`{t}`: {e}")))
        };
        Window::new(kind.parse()?, num(a)?, num(w)?)
    }
}

/// `g` on `[a, a+w]` (closed), zero elsewhere; the grid is unchanged.
pub fn apply_window(g: &SpectralFunction, win: &Window) -> Result<SpectralFunction> {
    Ok(g.replace_data(g.data().restrict(win.lower, win.upper)?))
}

pub fn boost_window(win: &Window, boost: Boost) -> Window {
    match win.kind {
        Kind::First => *win,
        Kind::Second => {
            if boost.rapidity() == 0.0 {
                return *win;
            }
            let f = boost.factor();
            Window {
                lower: f * win.lower,
                upper: f * win.upper,
                kind: Kind::Second,
            }
        }
    }
}

/// `w / p`.
pub fn invariant_ratio(win: &Window, p: f64) -> Result<f64> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::param("p", format!("must be positive, got {p}")));
    }
    Ok(win.width() / p)
}
