//! Sampled convexity certificate for the arc |theta| <= arccos(-1/(2r)).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{convex_half_width, g_polar, g_polar_derivative, require_radius};
use crate::error::{Error, Result};

/// Numerator and denominator of the slope dv/du in closed form.
fn slope_parts(r: f64, t: f64) -> (f64, f64) {
    let (r2, r3, r4) = (r * r, r * r * r, r * r * r * r);
    let num = 2.0 * r4 * (2.0 * t).cos()
        + r3 * ((3.0 * t).cos() + 4.0 * t.cos())
        + 2.0 * r2 * (2.0 + (2.0 * t).cos())
        + 4.0 * r * t.cos()
        + 1.0;
    let den = 2.0 * r4 * (2.0 * t).sin() + r3 * ((3.0 * t).sin() + 4.0 * t.sin()) + 2.0 * r2 * (2.0 * t).sin();
    (num, den)
}

/// dv/du = N/D.
pub fn closed_form_slope(r: f64, t: f64) -> f64 {
    let (n, d) = slope_parts(r, t);
    n / d
}

/// The slope as printed with a leading minus sign, -N/D.
pub fn printed_slope(r: f64, t: f64) -> f64 {
    -closed_form_slope(r, t)
}

/// The printed derivative of the slope with respect to theta.
pub fn printed_slope_derivative(r: f64, t: f64) -> f64 {
    -printed_derivative_numerator(r, t) / printed_derivative_denominator(r, t)
}

fn printed_derivative_numerator(r: f64, t: f64) -> f64 {
    let (r2, r4) = (r * r, r * r * r * r);
    2.0 * r * (8.0 + 31.0 * r2 + 17.0 * r4) * t.cos()
        + 4.0 * (1.0 + 7.0 * r2 + 8.0 * r4) * (2.0 * t).cos()
        + r * ((7.0 + 16.0 * r2) * (3.0 * t).cos() + r * (24.0 + 35.0 * r2 + 8.0 * r4 + 4.0 * (4.0 * t).cos()))
}

fn printed_derivative_denominator(r: f64, t: f64) -> f64 {
    let inner = 4.0 * (r * r + 1.0) * t.cos() + r * (2.0 * (2.0 * t).cos() + 5.0);
    r * r * t.sin().powi(2) * inner * inner
}

/// One of the two printed upper bounds for the numerator of the slope
/// derivative, checked at a given r.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrintedBound {
    pub case: String,
    pub bound_at_r: f64,
    pub claimed_constant: f64,
    /// bound_at_r < claimed_constant.
    pub constant_claim_holds: bool,
    /// Largest sampled value of the numerator in this case.
    pub max_numerator: f64,
    /// max_numerator <= bound_at_r.
    pub numerator_within_bound: bool,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub r: f64,
    pub samples: usize,
    pub theta_range: (f64, f64),
    pub convex: bool,
    /// Smallest sampled decrease slope(theta_j) - slope(theta_{j+1}) between
    /// neighbours on the same side of a vertical tangent.
    pub min_margin: f64,
    /// Total turning of the tangent direction over the range.
    pub tangent_turning: f64,
    /// Largest angle between the closed-form and finite-difference slopes.
    pub max_formula_deviation: f64,
    /// Largest angle between the printed (-N/D) slope and the finite-difference slope.
    pub printed_slope_deviation: f64,
    /// Largest relative gap between the printed slope derivative and a
    /// numerical derivative of N/D.
    pub printed_derivative_deviation: f64,
    pub printed_bounds: Vec<PrintedBound>,
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(PI);
    d.min(PI - d)
}

/// Convexity of the image of the sub-arc |theta| <= arccos(-1/(2r)), for r >= 2.
pub fn convexity_check(r: f64, n_samples: usize) -> Result<ConvexityReport> {
    if !(r >= 2.0) {
        return Err(Error::Domain(format!("convexity is certified for r >= 2, got {r}")));
    }
    let c = convex_half_width(r);
    convexity_check_range(r, (-c, c), n_samples)
}

/// Convexity test over an arbitrary theta range. Samples sit at cell
/// midpoints so that theta = 0 (a vertical tangent) is never hit exactly.
pub fn convexity_check_range(r: f64, range: (f64, f64), n_samples: usize) -> Result<ConvexityReport> {
    require_radius(r)?;
    let n = n_samples.max(8);
    let (a, b) = range;
    let thetas: Vec<f64> = (0..n).map(|j| a + (b - a) * (j as f64 + 0.5) / n as f64).collect();
    let fd_h = 1e-6;

    let mut max_dev = 0.0f64;
    let mut printed_dev = 0.0f64;
    let mut deriv_dev = 0.0f64;
    let mut slopes = Vec::with_capacity(n);
    let mut dens = Vec::with_capacity(n);
    let mut angles: Vec<f64> = Vec::with_capacity(n);
    for &t in &thetas {
        let (num, den) = slope_parts(r, t);
        let cf = num / den;
        let d = g_polar(r, t + fd_h) - g_polar(r, t - fd_h);
        let fd_angle = d.im.atan2(d.re);
        let dev = angle_gap(cf.atan(), fd_angle);
        if dev > 1e-6 {
            return Err(Error::FormulaMismatch {
                theta: t,
                closed_form: cf,
                numeric: d.im / d.re,
            });
        }
        max_dev = max_dev.max(dev);
        printed_dev = printed_dev.max(angle_gap(printed_slope(r, t).atan(), fd_angle));

        let h = 1e-5;
        let numeric = (closed_form_slope(r, t + h) - closed_form_slope(r, t - h)) / (2.0 * h);
        let printed = printed_slope_derivative(r, t);
        if numeric.is_finite() && printed.is_finite() {
            deriv_dev = deriv_dev.max((numeric - printed).abs() / numeric.abs().max(1.0));
        }

        slopes.push(cf);
        dens.push(den);
        let tangent = g_polar_derivative(r, t);
        let mut phi = tangent.im.atan2(tangent.re);
        if let Some(&prev) = angles.last() {
            phi += 2.0 * PI * ((prev - phi) / (2.0 * PI)).round();
        }
        angles.push(phi);
    }

    let mut min_margin = f64::INFINITY;
    let mut monotone = true;
    let first_turn = angles[1] - angles[0];
    for j in 0..n - 1 {
        let turn = angles[j + 1] - angles[j];
        if turn == 0.0 || turn.signum() != first_turn.signum() {
            monotone = false;
        }
        if dens[j].signum() == dens[j + 1].signum() {
            let margin = slopes[j] - slopes[j + 1];
            min_margin = min_margin.min(margin);
        }
    }
    let turning = angles[n - 1] - angles[0];
    let convex = monotone && min_margin > 0.0 && turning.abs() <= 2.0 * PI;

    let printed_bounds = printed_bound_checks(r, &thetas);
    Ok(ConvexityReport {
        r,
        samples: n,
        theta_range: range,
        convex,
        min_margin,
        tangent_turning: turning,
        max_formula_deviation: max_dev,
        printed_slope_deviation: printed_dev,
        printed_derivative_deviation: deriv_dev,
        printed_bounds,
    })
}

fn printed_bound_checks(r: f64, thetas: &[f64]) -> Vec<PrintedBound> {
    let (r2, r3, r4, r6) = (r * r, r.powi(3), r.powi(4), r.powi(6));
    let cases = [
        (
            "cos(theta) >= 0",
            -(8.0 * r6 - 14.0 * r4 - 16.0 * r3 - 39.0 * r2 - 7.0 * r - 12.0),
            -382.0,
        ),
        (
            "-1/(2r) <= cos(theta) < 0",
            -(8.0 * r6 - 14.0 * r2 - 16.0 * r3 - 33.0 * r2 - 7.0 * r - 12.0),
            -2.0,
        ),
    ];
    cases
        .iter()
        .enumerate()
        .map(|(i, &(case, bound, claimed))| {
            let in_case = |t: f64| {
                let c = t.cos();
                if i == 0 {
                    c >= 0.0
                } else {
                    c < 0.0 && c >= -1.0 / (2.0 * r)
                }
            };
            let vals: Vec<f64> = thetas
                .iter()
                .filter(|&&t| in_case(t))
                .map(|&t| -printed_derivative_numerator(r, t))
                .collect();
            let max_numerator = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            PrintedBound {
                case: case.to_string(),
                bound_at_r: bound,
                claimed_constant: claimed,
                constant_claim_holds: bound < claimed,
                max_numerator,
                numerator_within_bound: vals.is_empty() || max_numerator <= bound,
                samples: vals.len(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convex_for_sample_radii() {
        for &r in &[2.0, 3.0, 5.0, 10.0] {
            let rep = convexity_check(r, 4096).unwrap();
            assert!(rep.convex, "r = {r}: {rep:?}");
            assert!(rep.min_margin > 0.0);
            assert!(rep.max_formula_deviation < 1e-6);
        }
    }

    #[test]
    fn full_circle_is_not_convex() {
        let rep = convexity_check_range(2.0, (0.0, 2.0 * PI), 4096).unwrap();
        assert!(!rep.convex);
        assert!(rep.tangent_turning.abs() > 2.0 * PI);
    }

    #[test]
    fn small_radius_is_refused() {
        assert!(convexity_check(1.5, 100).is_err());
    }

    #[test]
    fn printed_slope_has_the_opposite_sign() {
        let rep = convexity_check(2.0, 1024).unwrap();
        assert!(rep.printed_slope_deviation > 0.1);
        // the printed derivative is the derivative of N/D
        assert!(rep.printed_derivative_deviation < 1e-4, "{}", rep.printed_derivative_deviation);
        let t = 0.3;
        assert!((printed_slope(2.0, t) + 2.43285).abs() < 1e-4);
        assert!((closed_form_slope(2.0, t) - 2.43285).abs() < 1e-4);
    }

    #[test]
    fn printed_bounds_are_reported() {
        let rep = convexity_check(2.0, 4096).unwrap();
        let b = &rep.printed_bounds;
        assert_eq!(b.len(), 2);
        // -(512 - 224 - 128 - 156 - 14 - 12)
        assert_eq!(b[0].bound_at_r, 22.0);
        assert!(!b[0].constant_claim_holds);
        assert!(b[0].numerator_within_bound);
        assert_eq!(b[1].bound_at_r, -170.0);
        assert!(b[1].constant_claim_holds);
        assert!(b[0].samples + b[1].samples == 4096);
    }
}
