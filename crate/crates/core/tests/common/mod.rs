//! Independent reference computations for the integration tests. Nothing
//! here goes through the library's quadrature.

#![allow(dead_code)]

/// Composite Simpson rule with `intervals` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    assert!(intervals.is_multiple_of(2));
    let h = (b - a) / intervals as f64;
    let mut sum = f(a) + f(b);
    for i in 1..intervals {
        let x = a + i as f64 * h;
        sum += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    sum * h / 3.0
}

/// `ΔS` for `g = exp(-(k-k₀)²/(2s²))` cut to `[lo, hi]`, from the analytic
/// densities `ρ ∝ |g|²` on `[k_lower, k_upper]` and `[lo, hi]`.
pub fn gaussian_delta_s(
    center: f64,
    width: f64,
    lo: f64,
    hi: f64,
    k_lower: f64,
    k_upper: f64,
    nodes: usize,
) -> f64 {
    let intervals = if (nodes - 1).is_multiple_of(2) {
        nodes - 1
    } else {
        nodes
    };
    let intensity = |k: f64| (-(k - center).powi(2) / (width * width)).exp();
    let entropy_on = |a: f64, b: f64| {
        let z = simpson(intensity, a, b, intervals);
        -simpson(
            |k| {
                let r = intensity(k) / z;
                if r > 0.0 {
                    r * r.ln()
                } else {
                    0.0
                }
            },
            a,
            b,
            intervals,
        )
    };
    entropy_on(k_lower, k_upper) - entropy_on(lo, hi)
}

/// Stored regression target: `ΔS` for `gaussian(k₀=5, s=0.5)` with the
/// window `[4.5, 5.5]`, produced by [`gaussian_delta_s`] at 2·10⁵ nodes and
/// cross-checked against an arbitrary-precision adaptive quadrature.
pub const DELTA_S0: f64 = 0.417_439_213_437_356_5;
