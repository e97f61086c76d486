//! The map g(z) = log((z^3 - z)/(z^3 - 1)) on circles |z| = r > 1.
//!
//! log(zeta(3s)/zeta(2s)) = sum_p g(p^s), so the values of that logarithm
//! are vector sums of points on the curves g(p^sigma e^{i theta}).

mod convex;
mod reach;
mod support;

use std::f64::consts::PI;
use std::io::{self, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use convex::{convexity_check, convexity_check_range, ConvexityReport, PrintedBound};
pub use reach::{
    default_sigma_grid, region_bounds, verdict_for_k, verdict_sweep, RegionBounds, Verdict, VerdictStatus,
    VerdictSweep, PRINTED_UPPER_CONSTANT,
};
pub use support::{
    inner_support_bound, outer_support, real_interval_check, support_function, support_value, RealInterval,
    SupportFunction,
};

/// log(1 - x) for |x| < 1, accurate when x is tiny.
pub(crate) fn log1m(x: Complex64) -> Complex64 {
    if x.norm() < 1e-2 {
        let mut term = x;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..=12 {
            acc -= term / k as f64;
            term *= x;
        }
        acc
    } else {
        (Complex64::new(1.0, 0.0) - x).ln()
    }
}

/// g(z) for |z| > 1, written as log(1 - z^-2) - log(1 - z^-3) so that it
/// is single valued and continuous outside the unit disc.
pub fn g(z: Complex64) -> Complex64 {
    let w = z.inv();
    let w2 = w * w;
    log1m(w2) - log1m(w2 * w)
}

pub fn g_polar(r: f64, theta: f64) -> Complex64 {
    g(Complex64::from_polar(r, theta))
}

/// d/d theta of g(r e^{i theta}) = i z g'(z).
pub fn g_polar_derivative(r: f64, theta: f64) -> Complex64 {
    let z = Complex64::from_polar(r, theta);
    let z2 = z * z;
    let z3 = z2 * z;
    let gp = (3.0 * z2 - 1.0) / (z3 - z) - 3.0 * z2 / (z3 - 1.0);
    Complex64::i() * z * gp
}

/// Half-width of the convex sub-arc, arccos(-1/(2r)).
pub fn convex_half_width(r: f64) -> f64 {
    (-1.0 / (2.0 * r)).acos()
}

fn require_radius(r: f64) -> Result<()> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(Error::Domain(format!(
            "radius {r} must exceed 1: g is singular on the unit circle"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcSample {
    pub theta: f64,
    pub u: f64,
    pub v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveArc {
    pub radius: f64,
    pub theta_range: (f64, f64),
    pub samples: Vec<ArcSample>,
}

impl CurveArc {
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.samples.iter().map(|s| Complex64::new(s.u, s.v))
    }
}

/// `n_samples` equally spaced samples of g(r e^{i theta}) over the closed
/// range, with the imaginary part unwrapped along theta.
pub fn g_eval_arc(r: f64, theta_range: (f64, f64), n_samples: usize) -> Result<CurveArc> {
    require_radius(r)?;
    let n = n_samples.max(2);
    let (a, b) = theta_range;
    let mut samples: Vec<ArcSample> = Vec::with_capacity(n);
    for j in 0..n {
        let theta = a + (b - a) * j as f64 / (n - 1) as f64;
        let w = g_polar(r, theta);
        let mut v = w.im;
        if let Some(prev) = samples.last() {
            v += 2.0 * PI * ((prev.v - v) / (2.0 * PI)).round();
        }
        samples.push(ArcSample { theta, u: w.re, v });
    }
    Ok(CurveArc {
        radius: r,
        theta_range,
        samples,
    })
}

/// The closed convex sub-arc |theta| <= arccos(-1/(2r)).
pub fn convex_arc(r: f64, n_samples: usize) -> Result<CurveArc> {
    require_radius(r)?;
    let c = convex_half_width(r);
    g_eval_arc(r, (-c, c), n_samples)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealCrossings {
    /// theta = 0: -log((r^3 - 1)/(r^3 - r)).
    pub at_zero: f64,
    /// theta = pi: -log((r^3 + 1)/(r^3 - r)).
    pub at_pi: f64,
    /// theta = +-arccos(-1/(2r)): log(r^2/(r^2 - 1)).
    pub at_edge: f64,
    pub edge_theta: f64,
}

impl RealCrossings {
    /// The four (theta, u) crossing points, theta in [0, 2 pi).
    pub fn points(&self) -> [(f64, f64); 4] {
        [
            (0.0, self.at_zero),
            (self.edge_theta, self.at_edge),
            (PI, self.at_pi),
            (2.0 * PI - self.edge_theta, self.at_edge),
        ]
    }
}

pub fn real_axis_crossings(r: f64) -> Result<RealCrossings> {
    require_radius(r)?;
    let r2 = r * r;
    let r3 = r2 * r;
    Ok(RealCrossings {
        at_zero: -((r3 - 1.0) / (r3 - r)).ln(),
        at_pi: -((r3 + 1.0) / (r3 - r)).ln(),
        at_edge: (r2 / (r2 - 1.0)).ln(),
        edge_theta: convex_half_width(r),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImagCrossings {
    pub r: f64,
    /// (-1 + sqrt(8r^2 - 3))/(4r).
    pub cos_plus: f64,
    /// (-1 - sqrt(8r^2 - 3))/(4r).
    pub cos_minus: f64,
    /// [theta+, -theta+, theta-, -theta-].
    pub thetas: [f64; 4],
    pub warning: Option<String>,
}

pub fn imag_axis_crossings(r: f64) -> Result<ImagCrossings> {
    let disc = 8.0 * r * r - 3.0;
    if !(disc >= 0.0) || !(r > 0.0) {
        return Err(Error::Domain(format!("8r^2 - 3 < 0 for r = {r}")));
    }
    let sq = disc.sqrt();
    let cos_plus = (-1.0 + sq) / (4.0 * r);
    let cos_minus = (-1.0 - sq) / (4.0 * r);
    if !(-1.0..=1.0).contains(&cos_plus) || !(-1.0..=1.0).contains(&cos_minus) {
        return Err(Error::Domain(format!("crossing cosines out of range for r = {r}")));
    }
    let tp = cos_plus.acos();
    let tm = cos_minus.acos();
    let warning = (r < 2.0).then(|| format!("r = {r} is below 2, outside the range where the convex arc is certified"));
    Ok(ImagCrossings {
        r,
        cos_plus,
        cos_minus,
        thetas: [tp, -tp, tm, -tm],
        warning,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Figure1 {
    pub r: f64,
    pub rows: Vec<ArcSample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureChecks {
    /// Signed winding about the origin; the image is traversed clockwise.
    pub winding: i64,
    pub mirror_max_deviation: f64,
    /// (theta, u) where v changes sign, interpolated.
    pub real_hits: Vec<(f64, f64)>,
    pub distinct_real_values: Vec<f64>,
}

/// Samples of g(r e^{i theta}) for theta = 2 pi j / n, j = 0..n-1.
pub fn figure1_samples(r: f64, n_samples: usize) -> Result<Figure1> {
    require_radius(r)?;
    let n = n_samples.max(4);
    let step = 2.0 * PI / n as f64;
    let arc = g_eval_arc(r, (0.0, step * (n - 1) as f64), n)?;
    Ok(Figure1 { r, rows: arc.samples })
}

impl Figure1 {
    /// `theta,u,v` rows with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "theta,u,v")?;
        for s in &self.rows {
            writeln!(w, "{:.16e},{:.16e},{:.16e}", s.theta, s.u, s.v)?;
        }
        Ok(())
    }

    /// Winding about the origin, mirror symmetry and real-axis hits of the
    /// closed sampled curve.
    pub fn checks(&self) -> FigureChecks {
        let pts: Vec<Complex64> = self.rows.iter().map(|s| Complex64::new(s.u, s.v)).collect();
        let n = pts.len();
        let mut turn = 0.0;
        for j in 0..n {
            turn += (pts[(j + 1) % n] / pts[j]).arg();
        }
        let winding = (turn / (2.0 * PI)).round() as i64;

        let mut mirror = 0.0f64;
        for j in 1..n {
            let a = pts[j];
            let b = pts[n - j];
            mirror = mirror.max((a.re - b.re).abs()).max((a.im + b.im).abs());
        }

        let mut hits = Vec::new();
        for j in 0..n {
            let (a, b) = (self.rows[j], self.rows[(j + 1) % n]);
            if a.v == 0.0 {
                hits.push((a.theta, a.u));
            } else if a.v * b.v < 0.0 {
                let t = a.v / (a.v - b.v);
                let b_theta = if j + 1 == n { 2.0 * PI } else { b.theta };
                hits.push((a.theta + t * (b_theta - a.theta), a.u + t * (b.u - a.u)));
            }
        }
        let spacing = hits
            .iter()
            .map(|h| h.1.abs())
            .fold(0.0, f64::max)
            .max(1e-300)
            * 1e-3;
        let mut distinct: Vec<f64> = Vec::new();
        for &(_, u) in &hits {
            if !distinct.iter().any(|d| (d - u).abs() < spacing) {
                distinct.push(u);
            }
        }
        distinct.sort_by(f64::total_cmp);
        FigureChecks {
            winding,
            mirror_max_deviation: mirror,
            real_hits: hits,
            distinct_real_values: distinct,
        }
    }
}

/// Bound on |g(z)| for |z| = r: -log(1 - r^-2) - log(1 - r^-3).
pub fn g_modulus_bound(r: f64) -> f64 {
    -(1.0 - r.powi(-2)).ln() - (1.0 - r.powi(-3)).ln()
}

/// Bound on sum_{p > cutoff} sup_{|z| = p^sigma} |g(z)|, summing over all
/// integers n > cutoff and using r^-2/(1 - r^-2) + r^-3/(1 - r^-3)
/// <= 2 r^-2 / (1 - r^-2).
pub fn prime_tail_bound(sigma: f64, cutoff: u64) -> f64 {
    let p = cutoff.max(1) as f64;
    let a = 2.0 * sigma;
    2.0 * p.powf(1.0 - a) / ((a - 1.0) * (1.0 - p.powf(-a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
        let mut fa = f(a);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            let fm = f(m);
            if fm == 0.0 {
                return m;
            }
            if (fm < 0.0) == (fa < 0.0) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }

    #[test]
    fn g_matches_quotient_form() {
        for &(r, t) in &[(2.0, 0.3), (3.0, 2.0), (1.5, -1.0), (10.0, 3.0)] {
            let z = Complex64::from_polar(r, t);
            let direct = ((z * z * z - z) / (z * z * z - 1.0)).ln();
            assert!((g(z) - direct).norm() < 1e-14);
        }
    }

    #[test]
    fn crossing_values_at_two() {
        let c = real_axis_crossings(2.0).unwrap();
        assert_abs_diff_eq!(c.at_zero, (6.0f64 / 7.0).ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(c.at_zero, -0.1541507, epsilon = 1e-7);
        assert_abs_diff_eq!(c.at_pi, -0.4054651, epsilon = 1e-7);
        assert_abs_diff_eq!(c.at_edge, 0.2876821, epsilon = 1e-7);
        assert_abs_diff_eq!(c.edge_theta, 1.8234766, epsilon = 1e-7);
        for (theta, u) in c.points() {
            let w = g_polar(2.0, theta);
            assert_abs_diff_eq!(w.re, u, epsilon = 1e-12);
            assert!(w.im.abs() < 1e-12);
        }
    }

    #[test]
    fn crossings_vanish_at_infinity() {
        let c = real_axis_crossings(1e7).unwrap();
        assert!(c.at_zero.abs() < 1e-13 && c.at_pi.abs() < 1e-13 && c.at_edge.abs() < 1e-13);
    }

    #[test]
    fn radius_one_is_rejected() {
        assert!(real_axis_crossings(1.0).is_err());
        assert!(g_eval_arc(0.5, (0.0, 1.0), 10).is_err());
        assert!(figure1_samples(1.0, 10).is_err());
    }

    #[test]
    fn real_crossings_match_root_finding() {
        for &r in &[2.0, 3.0, 5.0, 10.0] {
            let c = real_axis_crossings(r).unwrap();
            let v = |t: f64| g_polar(r, t).im;
            let found = bisect(v, c.edge_theta - 0.2, c.edge_theta + 0.2);
            assert_abs_diff_eq!(found, c.edge_theta, epsilon = 1e-8);
        }
    }

    #[test]
    fn imag_crossings_at_two() {
        let c = imag_axis_crossings(2.0).unwrap();
        let s29 = 29f64.sqrt();
        assert_abs_diff_eq!(c.cos_plus, (-1.0 + s29) / 8.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.cos_plus, 0.5481456, epsilon = 1e-7);
        assert_abs_diff_eq!(c.cos_minus, -0.7981456, epsilon = 1e-7);
        assert_abs_diff_eq!(c.thetas[0], 0.9907, epsilon = 1e-4);
        assert_abs_diff_eq!(c.thetas[2], 2.4950072, epsilon = 1e-6);
        assert!(c.warning.is_none());
        for &t in &c.thetas {
            assert!(g_polar(2.0, t).re.abs() < 1e-8);
        }
    }

    #[test]
    fn imag_crossings_match_root_finding() {
        for &r in &[2.0, 3.0, 5.0, 10.0] {
            let c = imag_axis_crossings(r).unwrap();
            let u = |t: f64| g_polar(r, t).re;
            for &t in &c.thetas[..] {
                let found = bisect(u, t - 0.05, t + 0.05);
                assert_abs_diff_eq!(found, t, epsilon = 1e-8);
            }
            assert_eq!(c.thetas[0], -c.thetas[1]);
            assert_eq!(c.thetas[2], -c.thetas[3]);
        }
    }

    #[test]
    fn small_radius_warns_and_tiny_errors() {
        assert!(imag_axis_crossings(1.5).unwrap().warning.is_some());
        assert!(imag_axis_crossings(0.5).is_err());
    }

    #[test]
    fn figure_one_structure() {
        let fig = figure1_samples(2.0, 2000).unwrap();
        let ch = fig.checks();
        // traversed clockwise
        assert_eq!(ch.winding, -2);
        assert!(ch.mirror_max_deviation < 1e-12);
        assert_eq!(ch.real_hits.len(), 4);
        assert_eq!(ch.distinct_real_values.len(), 3);
        let c = real_axis_crossings(2.0).unwrap();
        let mut expected = vec![c.at_pi, c.at_zero, c.at_edge];
        expected.sort_by(f64::total_cmp);
        for (a, b) in ch.distinct_real_values.iter().zip(&expected) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-5);
        }
    }

    #[test]
    fn csv_has_header_and_full_precision() {
        let fig = figure1_samples(2.0, 8).unwrap();
        let mut buf = Vec::new();
        fig.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("theta,u,v"));
        let row: Vec<f64> = lines.nth(1).unwrap().split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(row[0], fig.rows[1].theta);
        assert_eq!(row[1], fig.rows[1].u);
        assert_eq!(row[2], fig.rows[1].v);
    }

    #[test]
    fn modulus_bound_holds() {
        for &r in &[1.2, 2.0, 7.0, 1000.0] {
            let b = g_modulus_bound(r);
            for j in 0..200 {
                assert!(g_polar(r, j as f64 * 0.0314).norm() <= b * (1.0 + 1e-12));
            }
            assert!(b <= 2.0 * r.powi(-2) / (1.0 - r.powi(-2)));
        }
    }
}
