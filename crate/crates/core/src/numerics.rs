//! Uniform grids, sampled functions, trapezoid quadrature and linear resampling.
//!
//! A [`GridFunction`] may carry a *support*: a closed interval outside of
//! which it is identically zero. This is how hard cut-offs (flat spectra,
//! windows) are represented. Quadrature over a supported function runs the
//! composite trapezoid over the nodes inside the support and closes the
//! partial panels up to the support edges by constant extension of the
//! nearest inside node, so a hard edge lying between two nodes costs
//! `O(h^2)` rather than the `O(h)` a ramp across the edge panel would.

use std::ops::RangeInclusive;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Fraction of the grid spacing within which a coordinate is considered to
/// coincide with a node. Absorbs decimal-to-binary rounding of bounds like
/// `0.5 + 100 * 0.005`.
pub const SNAP_FRACTION: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    lower: f64,
    upper: f64,
    count: usize,
}

impl Grid {
    pub fn new(lower: f64, upper: f64, count: usize) -> Result<Self> {
        if !lower.is_finite() || !upper.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "bounds must be finite, got [{lower}, {upper}]"
            )));
        }
        if lower >= upper {
            return Err(Error::InvalidGrid(format!(
                "lower bound {lower} must be below upper bound {upper}"
            )));
        }
        if count < 2 {
            return Err(Error::InvalidGrid(format!(
                "count must be at least 2, got {count}"
            )));
        }
        let grid = Grid {
            lower,
            upper,
            count,
        };
        if !(grid.spacing() > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "spacing underflows for [{lower}, {upper}] with {count} nodes"
            )));
        }
        Ok(grid)
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> f64 {
        (self.upper - self.lower) / (self.count - 1) as f64
    }

    /// Coordinate of node `i`. The last node is `upper` exactly.
    pub fn node(&self, i: usize) -> f64 {
        debug_assert!(i < self.count);
        if i + 1 == self.count {
            self.upper
        } else {
            self.lower + i as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.node(i))
    }

    pub fn domain(&self) -> Interval {
        Interval {
            lower: self.lower,
            upper: self.upper,
        }
    }

    pub fn snap_tolerance(&self) -> f64 {
        SNAP_FRACTION * self.spacing()
    }

    /// Image of the grid under `x -> scale * x + shift`; `scale` must be positive.
    pub fn map_affine(&self, scale: f64, shift: f64) -> Result<Grid> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::param(
                "scale",
                format!("must be positive, got {scale}"),
            ));
        }
        Grid::new(
            scale * self.lower + shift,
            scale * self.upper + shift,
            self.count,
        )
    }

    pub fn scaled(&self, factor: f64) -> Result<Grid> {
        self.map_affine(factor, 0.0)
    }

    /// Indices of the nodes whose coordinate lies in `[lo, hi]`, or `None`
    /// when no node does.
    pub fn nodes_within(&self, lo: f64, hi: f64) -> Option<RangeInclusive<usize>> {
        let n = self.count;
        let h = self.spacing();
        let tol = self.snap_tolerance();
        let guess = |x: f64| ((x - self.lower) / h).clamp(0.0, (n - 1) as f64);

        let mut first = guess(lo).ceil() as usize;
        while first > 0 && self.node(first - 1) >= lo - tol {
            first -= 1;
        }
        while first < n && self.node(first) < lo - tol {
            first += 1;
        }

        let mut last = guess(hi).floor() as usize;
        while last + 1 < n && self.node(last + 1) <= hi + tol {
            last += 1;
        }
        while self.node(last) > hi + tol {
            if last == 0 {
                return None;
            }
            last -= 1;
        }

        if first >= n || first > last {
            None
        } else {
            Some(first..=last)
        }
    }
}

/// Closed interval `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lower = self.lower.max(other.lower);
        let upper = self.upper.min(other.upper);
        (lower <= upper).then_some(Interval { lower, upper })
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Complex samples on a uniform grid, optionally with a hard support.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<Complex64>,
    support: Option<Interval>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        validate_values(&grid, &values)?;
        Ok(GridFunction {
            grid,
            values,
            support: None,
        })
    }

    pub fn from_real(grid: Grid, values: &[f64]) -> Result<Self> {
        Self::new(
            grid,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = grid.nodes().map(f).collect();
        Self::new(grid, values)
    }

    pub fn zeros(grid: Grid) -> Self {
        GridFunction {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.count()],
            support: None,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn support(&self) -> Option<Interval> {
        self.support
    }

    /// The support clipped to the grid, or the whole grid domain.
    pub fn effective_domain(&self) -> Interval {
        match self.support {
            Some(s) => s,
            None => self.grid.domain(),
        }
    }

    /// Indices of the nodes that carry the function.
    pub fn active_nodes(&self) -> Option<RangeInclusive<usize>> {
        match self.support {
            None => Some(0..=self.grid.count() - 1),
            Some(s) => self.grid.nodes_within(s.lower, s.upper),
        }
    }

    /// Zeroes the function outside `[lo, hi]` and narrows the support.
    ///
    /// Fails when the interval misses the current domain or contains no node.
    pub fn restrict(&self, lo: f64, hi: f64) -> Result<Self> {
        let domain = self.effective_domain();
        let empty = || Error::EmptyWindow {
            lower: lo,
            upper: hi,
            domain_lower: domain.lower,
            domain_upper: domain.upper,
        };
        let support = domain
            .intersect(&Interval {
                lower: lo,
                upper: hi,
            })
            .ok_or_else(empty)?;
        let active = self
            .grid
            .nodes_within(support.lower, support.upper)
            .ok_or_else(empty)?;
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                if active.contains(&i) {
                    v
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Ok(GridFunction {
            grid: self.grid,
            values,
            support: Some(support),
        })
    }

    /// Applies `f(x, value)` node-wise, keeping grid and support.
    pub fn map(&self, f: impl Fn(f64, Complex64) -> Complex64) -> Result<Self> {
        let values = self
            .grid
            .nodes()
            .zip(&self.values)
            .map(|(x, &v)| f(x, v))
            .collect::<Vec<_>>();
        validate_values(&self.grid, &values)?;
        Ok(GridFunction {
            grid: self.grid,
            values,
            support: self.support,
        })
    }

    /// Same values on the image of the grid under `x -> scale * x + shift`.
    /// The support is carried along by the same map.
    pub fn remap_axis(&self, scale: f64, shift: f64) -> Result<Self> {
        let grid = self.grid.map_affine(scale, shift)?;
        let support = self.support.map(|s| Interval {
            lower: scale * s.lower + shift,
            upper: scale * s.upper + shift,
        });
        Ok(GridFunction {
            grid,
            values: self.values.clone(),
            support,
        })
    }

    /// Drops the first `n` nodes. The support, if any, is clipped.
    pub(crate) fn drop_leading(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Ok(self.clone());
        }
        let grid = Grid::new(self.grid.node(n), self.grid.upper(), self.grid.count() - n)?;
        let support = match self.support {
            Some(s) => Some(s.intersect(&grid.domain()).ok_or(Error::ZeroNorm(
                "support lies entirely in the dropped region",
            ))?),
            None => None,
        };
        Ok(GridFunction {
            grid,
            values: self.values[n..].to_vec(),
            support,
        })
    }

    pub(crate) fn with_support(mut self, support: Option<Interval>) -> Self {
        self.support = support;
        self
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `max(|f(first)|, |f(last)|) / max |f|`, zero for the zero function.
    pub fn edge_leakage(&self) -> f64 {
        let peak = self.max_abs();
        if peak == 0.0 {
            return 0.0;
        }
        let n = self.values.len();
        self.values[0].norm().max(self.values[n - 1].norm()) / peak
    }
}

fn validate_values(grid: &Grid, values: &[Complex64]) -> Result<()> {
    if values.len() != grid.count() {
        return Err(Error::MalformedFunction {
            index: values.len().min(grid.count()),
            reason: format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.count()
            ),
        });
    }
    if let Some((index, v)) = values
        .iter()
        .enumerate()
        .find(|(_, v)| !v.re.is_finite() || !v.im.is_finite())
    {
        return Err(Error::MalformedFunction {
            index,
            reason: format!("non-finite value {v}"),
        });
    }
    Ok(())
}

/// Composite trapezoid approximation of the integral of `f` over its domain.
pub fn integrate(f: &GridFunction) -> Complex64 {
    integrate_with(f, |_, v| v)
}

/// Integral of `g(x, f(x))` with the same rule as [`integrate`]. Nodes
/// outside the support never reach `g`.
pub fn integrate_with(f: &GridFunction, g: impl Fn(f64, Complex64) -> Complex64) -> Complex64 {
    let Some(active) = f.active_nodes() else {
        return Complex64::new(0.0, 0.0);
    };
    let grid = f.grid();
    let (first, last) = (*active.start(), *active.end());
    let at = |i: usize| g(grid.node(i), f.values()[i]);

    let mut sum = Complex64::new(0.0, 0.0);
    if last > first {
        let h = grid.spacing();
        let mut inner = Complex64::new(0.0, 0.0);
        for i in first + 1..last {
            inner += at(i);
        }
        sum = h * (inner + 0.5 * (at(first) + at(last)));
    }

    if let Some(s) = f.support() {
        let left = grid.node(first) - s.lower;
        if left > 0.0 {
            sum += left * at(first);
        }
        let right = s.upper - grid.node(last);
        if right > 0.0 {
            sum += right * at(last);
        }
    }
    sum
}

/// Real-valued convenience around [`integrate_with`].
pub fn integrate_real(f: &GridFunction, g: impl Fn(f64, Complex64) -> f64) -> f64 {
    integrate_with(f, |x, v| Complex64::new(g(x, v), 0.0)).re
}

/// Linear interpolation of `f` onto `target`. Target nodes outside the
/// source domain (or support) map to zero; between the support edge and the
/// outermost supported node the nearest supported value is used.
pub fn resample(f: &GridFunction, target: &Grid) -> Result<GridFunction> {
    let source = f.effective_domain();
    let overlap = source
        .intersect(&target.domain())
        .ok_or(Error::EmptyOverlap {
            source_lower: source.lower,
            source_upper: source.upper,
            target_lower: target.lower(),
            target_upper: target.upper(),
        })?;
    let grid = f.grid();
    let tol = grid.snap_tolerance();
    let zero = Complex64::new(0.0, 0.0);
    let values = f.values();

    let interpolated = match f.active_nodes() {
        None => vec![zero; target.count()],
        Some(active) => {
            let (first, last) = (*active.start(), *active.end());
            target
                .nodes()
                .map(|x| {
                    if x < source.lower - tol || x > source.upper + tol {
                        zero
                    } else if x <= grid.node(first) {
                        values[first]
                    } else if x >= grid.node(last) {
                        values[last]
                    } else {
                        let j = (((x - grid.lower()) / grid.spacing()).floor() as usize)
                            .clamp(first, last - 1);
                        let (x0, x1) = (grid.node(j), grid.node(j + 1));
                        let t = (x - x0) / (x1 - x0);
                        if t <= SNAP_FRACTION {
                            values[j]
                        } else if t >= 1.0 - SNAP_FRACTION {
                            values[j + 1]
                        } else {
                            values[j] * (1.0 - t) + values[j + 1] * t
                        }
                    }
                })
                .collect()
        }
    };

    let support = (f.support().is_some() || !overlap.contains(&target.domain())).then_some(overlap);
    Ok(GridFunction::new(*target, interpolated)?.with_support(support))
}
