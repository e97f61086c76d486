//! How far the set of values of log(zeta(3s)/zeta(2s)) reaches along the
//! imaginary axis, and what that says about zeros of
//! zeta^k(2s) + zeta^k(3s).

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{g_polar, imag_axis_crossings, prime_tail_bound};
use crate::dirichlet::sieve_primes;
use crate::error::{Error, Result};

/// The constant printed next to the crossing sum at sigma = 1.
pub const PRINTED_UPPER_CONSTANT: f64 = 0.61966;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionBounds {
    pub sigma: f64,
    pub prime_cutoff: u64,
    /// sum_p Im g(p^sigma e^{i theta_p}) at the upper crossing with cos = (-1 + sqrt(8r^2 - 3))/(4r).
    pub lower_raw: f64,
    /// sum_p |Im g(p^sigma e^{i theta'_p})| at the crossing with cos = (-1 - sqrt(8r^2 - 3))/(4r).
    pub upper_raw: f64,
    /// sum_p max over the whole circle of |Im g(p^sigma e^{i theta})|.
    pub hull_upper_raw: f64,
    pub tail: f64,
    pub lower_reach: f64,
    pub upper_reach: f64,
    pub hull_upper_reach: f64,
    /// Whether upper_raw > 0.61966 as printed.
    pub printed_inequality_holds: bool,
}

fn max_abs_im(r: f64) -> f64 {
    let n = 128;
    let f = |t: f64| g_polar(r, t).im.abs();
    let step = PI / n as f64;
    let (mut best_j, mut best) = (0, 0.0);
    for j in 0..=n {
        let v = f(step * j as f64);
        if v > best {
            best = v;
            best_j = j;
        }
    }
    let mut a = (step * (best_j as f64 - 1.0)).max(0.0);
    let mut b = (step * (best_j as f64 + 1.0)).min(PI);
    let invphi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let c = b - invphi * (b - a);
        let d = a + invphi * (b - a);
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    best.max(f(0.5 * (a + b)))
}

pub fn region_bounds(sigma: f64, prime_cutoff: u64) -> Result<RegionBounds> {
    if !(sigma >= 1.0) || !sigma.is_finite() {
        return Err(Error::Domain(format!("sigma must be >= 1, got {sigma}")));
    }
    let primes: Vec<u64> = sieve_primes(prime_cutoff)?.iter().collect();
    let terms: Vec<(f64, f64, f64)> = primes
        .par_iter()
        .map(|&p| {
            let r = (p as f64).powf(sigma);
            let c = imag_axis_crossings(r).expect("r >= 2");
            let lower = g_polar(r, c.thetas[0]).im;
            let upper = g_polar(r, c.thetas[3]).im.abs();
            (lower, upper, max_abs_im(r))
        })
        .collect();
    let (mut lower, mut upper, mut hull) = (0.0, 0.0, 0.0);
    for (l, u, h) in terms {
        lower += l;
        upper += u;
        hull += h;
    }
    let tail = prime_tail_bound(sigma, prime_cutoff);
    Ok(RegionBounds {
        sigma,
        prime_cutoff,
        lower_raw: lower,
        upper_raw: upper,
        hull_upper_raw: hull,
        tail,
        lower_reach: lower - tail,
        upper_reach: upper + tail,
        hull_upper_reach: hull + tail,
        printed_inequality_holds: upper > PRINTED_UPPER_CONSTANT,
    })
}

/// {1} together with 1 + 10^-m for m = 1..6.
pub fn default_sigma_grid() -> Vec<f64> {
    let mut g = vec![1.0];
    g.extend((1..=6).map(|m| 1.0 + 10f64.powi(-m)));
    g
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictSweep {
    pub bounds: Vec<RegionBounds>,
    /// Best lower reach over the grid and the sigma attaining it.
    pub lower_used: f64,
    pub lower_sigma: f64,
    /// Largest hull reach over the grid.
    pub upper_used: f64,
}

pub fn verdict_sweep(sigmas: &[f64], prime_cutoff: u64) -> Result<VerdictSweep> {
    if sigmas.is_empty() {
        return Err(Error::Domain("empty sigma grid".into()));
    }
    let bounds: Vec<RegionBounds> = sigmas
        .iter()
        .map(|&s| region_bounds(s, prime_cutoff))
        .collect::<Result<_>>()?;
    let best = bounds
        .iter()
        .max_by(|a, b| a.lower_reach.total_cmp(&b.lower_reach))
        .expect("non-empty");
    let (lower_used, lower_sigma) = (best.lower_reach, best.sigma);
    let upper_used = bounds.iter().map(|b| b.hull_upper_reach).fold(f64::NEG_INFINITY, f64::max);
    Ok(VerdictSweep {
        bounds,
        lower_used,
        lower_sigma,
        upper_used,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictStatus {
    ZerosExist,
    ZeroFree,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub k: u32,
    pub status: VerdictStatus,
    /// pi / k.
    pub target: f64,
    pub lower_used: f64,
    pub upper_used: f64,
}

/// Whether pi i / k is a value of log(zeta(3s)/zeta(2s)), i.e. whether
/// zeta^k(2s) + zeta^k(3s) has zeros with Re(s) > 1.
pub fn verdict_for_k(k: u32, sweep: &VerdictSweep) -> Result<Verdict> {
    if k == 0 {
        return Err(Error::Domain("k must be >= 1".into()));
    }
    let target = PI / k as f64;
    let status = if target <= sweep.lower_used {
        VerdictStatus::ZerosExist
    } else if target > sweep.upper_used {
        VerdictStatus::ZeroFree
    } else {
        VerdictStatus::Indeterminate
    };
    Ok(Verdict {
        k,
        status,
        target,
        lower_used: sweep.lower_used,
        upper_used: sweep.upper_used,
    })
}
