//! Support functions of the convex arcs and of their vector sums.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{convex_half_width, g_polar, prime_tail_bound, require_radius, CurveArc};
use crate::dirichlet::sieve_primes;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportFunction {
    pub grid: Vec<f64>,
    pub h: Vec<f64>,
    /// Bound on the contribution of the primes beyond the cutoff.
    pub tail: f64,
}

impl SupportFunction {
    /// Largest violation of h(a) + h(b) >= 2 cos((a - b)/2) h((a + b)/2)
    /// over grid triples (a, m, b) with m the midpoint of a and b.
    pub fn sublinearity_violation(&self) -> f64 {
        let n = self.grid.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                if (j - i) % 2 != 0 {
                    continue;
                }
                let m = (i + j) / 2;
                let (a, b) = (self.grid[i], self.grid[j]);
                if (b - a).abs() >= PI {
                    continue;
                }
                let lhs = self.h[i] + self.h[j];
                let rhs = 2.0 * ((a - b) / 2.0).cos() * self.h[m];
                worst = worst.max(rhs - lhs);
            }
        }
        worst
    }
}

fn directional(r: f64, phi: f64, theta: f64) -> f64 {
    (Complex64::from_polar(1.0, -phi) * g_polar(r, theta)).re
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let invphi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - invphi * (b - a);
    let mut d = a + invphi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-13 {
            break;
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// max of Re(e^{-i phi} g(r e^{i theta})) for theta in [lo, hi], by sampling
/// followed by golden-section refinement around the best sample.
fn max_on_range(r: f64, phi: f64, lo: f64, hi: f64, samples: usize) -> f64 {
    let n = samples.max(3);
    let step = (hi - lo) / (n - 1) as f64;
    let mut best = (0, f64::NEG_INFINITY);
    for j in 0..n {
        let val = directional(r, phi, lo + step * j as f64);
        if val > best.1 {
            best = (j, val);
        }
    }
    let a = (lo + step * (best.0 as f64 - 1.0)).max(lo);
    let b = (lo + step * (best.0 as f64 + 1.0)).min(hi);
    let (_, refined) = golden_max(|t| directional(r, phi, t), a, b);
    best.1.max(refined)
}

/// h(phi) for the convex sub-arc at radius r.
pub fn support_value(r: f64, phi: f64) -> Result<f64> {
    require_radius(r)?;
    let c = convex_half_width(r);
    Ok(max_on_range(r, phi, -c, c, 64))
}

/// Support function of a sampled arc, refined between samples.
pub fn support_function(arc: &CurveArc, grid: &[f64]) -> Result<SupportFunction> {
    if arc.samples.is_empty() {
        return Err(Error::Domain("empty arc".into()));
    }
    let (lo, hi) = arc.theta_range;
    let h = grid
        .iter()
        .map(|&phi| {
            let sampled = arc
                .samples
                .iter()
                .map(|s| s.u * phi.cos() + s.v * phi.sin())
                .fold(f64::NEG_INFINITY, f64::max);
            if arc.samples.len() >= 3 && hi > lo {
                sampled.max(max_on_range(arc.radius, phi, lo, hi, arc.samples.len().min(256)))
            } else {
                sampled
            }
        })
        .collect();
    Ok(SupportFunction {
        grid: grid.to_vec(),
        h,
        tail: 0.0,
    })
}

fn require_sigma(sigma: f64) -> Result<()> {
    if !(sigma >= 1.0) || !sigma.is_finite() {
        return Err(Error::Domain(format!("sigma must be >= 1, got {sigma}")));
    }
    Ok(())
}

/// Per-prime support values h_{p,sigma}(phi) for every phi in `grid`,
/// in prime order.
fn per_prime_supports(sigma: f64, primes: &[u64], grid: &[f64]) -> Vec<Vec<f64>> {
    primes
        .par_iter()
        .map(|&p| {
            let r = (p as f64).powf(sigma);
            let c = convex_half_width(r);
            grid.iter().map(|&phi| max_on_range(r, phi, -c, c, 64)).collect()
        })
        .collect()
}

/// h_O(phi) = sum_p h_{p,sigma}(phi) over p <= cutoff, with the tail bound
/// for the remaining primes.
pub fn outer_support(sigma: f64, prime_cutoff: u64, grid: &[f64]) -> Result<SupportFunction> {
    require_sigma(sigma)?;
    let primes: Vec<u64> = sieve_primes(prime_cutoff)?.iter().collect();
    let per = per_prime_supports(sigma, &primes, grid);
    let mut h = vec![0.0; grid.len()];
    for row in &per {
        for (acc, v) in h.iter_mut().zip(row) {
            *acc += v;
        }
    }
    Ok(SupportFunction {
        grid: grid.to_vec(),
        h,
        tail: prime_tail_bound(sigma, prime_cutoff),
    })
}

/// h_{2,sigma}(phi) - sum_{3 <= p <= cutoff} h_{p,sigma}(phi + pi), an upper
/// bound for the support function of the inner boundary when it exists.
pub fn inner_support_bound(sigma: f64, prime_cutoff: u64, grid: &[f64]) -> Result<SupportFunction> {
    require_sigma(sigma)?;
    let primes: Vec<u64> = sieve_primes(prime_cutoff)?.iter().collect();
    let shifted: Vec<f64> = grid.iter().map(|phi| phi + PI).collect();
    let first = per_prime_supports(sigma, &primes[..1], grid);
    let rest = per_prime_supports(sigma, &primes[1..], &shifted);
    let mut h = first[0].clone();
    for row in &rest {
        for (acc, v) in h.iter_mut().zip(row) {
            *acc -= v;
        }
    }
    Ok(SupportFunction {
        grid: grid.to_vec(),
        h,
        tail: prime_tail_bound(sigma, prime_cutoff),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealInterval {
    pub sigma: f64,
    /// -sum_p log((p^{3 sigma} - 1)/(p^{3 sigma} - p^sigma)).
    pub left: f64,
    /// -log((2^{3 sigma} - 1)/(2^{3 sigma} - 2^sigma)) + sum_{p >= 3} log(p^{2 sigma}/(p^{2 sigma} - 1)).
    pub right: f64,
    pub tail: f64,
    /// left < 0 < right even after allowing for the tail.
    pub origin_inside: bool,
}

/// log((r^3 - 1)/(r^3 - r)).
fn leftmost(r: f64) -> f64 {
    (-r.powi(-3)).ln_1p() - (-r.powi(-2)).ln_1p()
}

/// log(r^2/(r^2 - 1)).
fn rightmost(r: f64) -> f64 {
    -(-r.powi(-2)).ln_1p()
}

/// The real segment that the sum of the arcs is known to cover.
pub fn real_interval_check(sigma: f64, prime_cutoff: u64) -> Result<RealInterval> {
    require_sigma(sigma)?;
    let primes = sieve_primes(prime_cutoff)?;
    let mut left = 0.0;
    let mut right = 0.0;
    for p in primes.iter() {
        let r = (p as f64).powf(sigma);
        left -= leftmost(r);
        if p == 2 {
            right -= leftmost(r);
        } else {
            right += rightmost(r);
        }
    }
    let tail = prime_tail_bound(sigma, prime_cutoff);
    Ok(RealInterval {
        sigma,
        left,
        right,
        tail,
        origin_inside: left + tail < 0.0 && right - tail > 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{convex_arc, g_eval_arc, imag_axis_crossings};
    use approx::assert_abs_diff_eq;

    fn grid(n: usize) -> Vec<f64> {
        (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect()
    }

    #[test]
    fn extreme_directions_at_two() {
        let r = 2.0;
        assert_abs_diff_eq!(support_value(r, 0.0).unwrap(), (r * r / (r * r - 1.0)).ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(
            support_value(r, PI).unwrap(),
            ((r * r * r - 1.0) / (r * r * r - r)).ln(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn top_of_arc_is_above_the_imaginary_crossing() {
        let arc = convex_arc(2.0, 20_001).unwrap();
        let brute = arc.samples.iter().map(|s| s.v).fold(f64::NEG_INFINITY, f64::max);
        let h = support_value(2.0, PI / 2.0).unwrap();
        assert!(h >= brute && h - brute < 1e-8);
        assert_abs_diff_eq!(h, 0.1923897, epsilon = 1e-7);
        let crossing = g_polar(2.0, imag_axis_crossings(2.0).unwrap().thetas[0]).im;
        assert_abs_diff_eq!(crossing, 0.1867061, epsilon = 1e-7);
        assert!(h > crossing);
    }

    #[test]
    fn sampled_support_is_sublinear() {
        let arc = convex_arc(3.0, 2001).unwrap();
        let sf = support_function(&arc, &grid(64)).unwrap();
        assert!(sf.sublinearity_violation() < 1e-12);
        assert!(support_function(&CurveArc { radius: 2.0, theta_range: (0.0, 1.0), samples: vec![] }, &[0.0]).is_err());
    }

    #[test]
    fn support_function_matches_support_value() {
        let arc = convex_arc(2.0, 512).unwrap();
        let g = grid(16);
        let sf = support_function(&arc, &g).unwrap();
        for (phi, h) in g.iter().zip(&sf.h) {
            assert_abs_diff_eq!(*h, support_value(2.0, *phi).unwrap(), epsilon = 1e-12);
        }
    }

    #[test]
    fn outer_support_at_pi_is_the_leftmost_sum() {
        let p_cut = 10_000;
        let sf = outer_support(1.0, p_cut, &[PI]).unwrap();
        let oracle: f64 = sieve_primes(p_cut)
            .unwrap()
            .iter()
            .map(|p| {
                let r = p as f64;
                ((r * r * r - 1.0) / (r * r * r - r)).ln()
            })
            .sum();
        assert!((sf.h[0] - oracle).abs() < 1e-10);
        let doubled = outer_support(1.0, 2 * p_cut, &[PI]).unwrap();
        assert!((doubled.h[0] - sf.h[0]).abs() <= sf.tail);
    }

    #[test]
    fn outer_support_shrinks_with_sigma() {
        let a = outer_support(1.0, 1000, &[PI / 2.0]).unwrap();
        let b = outer_support(2.0, 1000, &[PI / 2.0]).unwrap();
        assert!(b.h[0] < a.h[0]);
    }

    #[test]
    fn minkowski_sum_rule_for_three_primes() {
        let arcs: Vec<Vec<Complex64>> = [2.0, 3.0, 5.0]
            .iter()
            .map(|&r| convex_arc(r, 120).unwrap().points().collect())
            .collect();
        let mut cloud = Vec::with_capacity(120 * 120 * 120);
        for a in &arcs[0] {
            for b in &arcs[1] {
                for c in &arcs[2] {
                    cloud.push(a + b + c);
                }
            }
        }
        let outer = outer_support(1.0, 5, &grid(24)).unwrap();
        for (phi, h) in outer.grid.iter().zip(&outer.h) {
            let e = Complex64::from_polar(1.0, -phi);
            let brute = cloud.iter().map(|z| (e * z).re).fold(f64::NEG_INFINITY, f64::max);
            // the cloud lies inside the sum and misses at most the sampling gap
            assert!(brute <= h + 1e-12);
            assert!(h - brute < 1e-3, "phi = {phi}: {h} vs {brute}");
        }
    }

    #[test]
    fn inner_bound_at_pi_is_minus_the_right_endpoint() {
        for &sigma in &[1.0, 1.5, 5.0] {
            let inner = inner_support_bound(sigma, 1000, &[PI]).unwrap();
            let iv = real_interval_check(sigma, 1000).unwrap();
            assert_abs_diff_eq!(inner.h[0], -iv.right, epsilon = 1e-12);
        }
    }

    #[test]
    fn origin_inside_at_sigma_one() {
        let iv = real_interval_check(1.0, 100_000).unwrap();
        assert!(iv.left < 0.0 && iv.right > 0.0 && iv.origin_inside);
        // log zeta(2) - log(4/3) - log(7/6)
        let oracle = (PI * PI / 6.0).ln() - (4.0f64 / 3.0).ln() - (7.0f64 / 6.0).ln();
        assert!((iv.right - oracle).abs() < 2.0 * iv.tail);
    }

    #[test]
    fn inner_bound_at_sigma_five_is_small_positive() {
        let inner = inner_support_bound(5.0, 1000, &[PI]).unwrap();
        let r2: f64 = 32.0;
        let p2 = ((r2.powi(3) - 1.0) / (r2.powi(3) - r2)).ln();
        let rest: f64 = sieve_primes(1000)
            .unwrap()
            .iter()
            .skip(1)
            .map(|p| {
                let r = (p as f64).powi(5);
                (r * r / (r * r - 1.0)).ln()
            })
            .sum();
        assert_abs_diff_eq!(inner.h[0], p2 - rest, epsilon = 1e-12);
        assert!(inner.h[0] > 0.0 && inner.h[0] < 1e-3);
    }

    #[test]
    fn arc_rejects_small_radius() {
        assert!(g_eval_arc(1.0, (0.0, 1.0), 3).is_err());
        assert!(outer_support(0.9, 100, &[0.0]).is_err());
    }
}
