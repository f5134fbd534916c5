use crate::error::{Error, Result};
use crate::interval::Interval;

/// Certified enclosure of γ_α = ζ(α+2) − 1 = Σ_{m≥2} m^{−(α+2)}.
pub fn gamma(alpha: f64, tol: f64) -> Result<Interval> {
    if !(alpha >= 1.0) {
        return Err(Error::input("gamma needs alpha >= 1"));
    }
    if !(tol > 0.0) {
        return Err(Error::input("gamma needs tol > 0"));
    }
    let s = alpha + 2.0;
    let mut terms: u64 = 16;
    loop {
        // Integral bracket for the tail beyond m = terms:
        // ∫_{M+1}^∞ x^{−s} dx ≤ Σ_{m>M} m^{−s} ≤ ∫_M^∞ x^{−s} dx.
        let tail_lo = (terms as f64 + 1.0).powf(1.0 - s) / (s - 1.0);
        let tail_hi = (terms as f64).powf(1.0 - s) / (s - 1.0);
        if tail_hi - tail_lo <= 0.8 * tol || terms >= 1 << 26 {
            // Kahan summation of the partial sum.
            let mut sum = 0.0f64;
            let mut comp = 0.0f64;
            for m in 2..=terms {
                let y = (m as f64).powf(-s) - comp;
                let t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
            // Padding for floating-point summation error.
            let fuzz = 1e-15 * sum.max(1.0) * (terms as f64).log2().max(1.0);
            let lo = sum + tail_lo - fuzz;
            let hi = sum + tail_hi + fuzz;
            if hi - lo > tol {
                return Err(Error::input(format!(
                    "cannot certify gamma({alpha}) to width {tol}"
                )));
            }
            return Ok(Interval::new(lo, hi));
        }
        terms *= 2;
    }
}

/// The certified convergence bound 2γ_α.
pub fn qgh_upper_bound(alpha: f64) -> Result<Interval> {
    Ok(gamma(alpha, 1e-9)?.scale(2.0))
}
