//! Locating zeros of Dirichlet series in rectangles of the half-plane
//! Re(s) > 1: argument-principle winding counts along the boundary, grid
//! scans for candidates and Newton polishing with box certification.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combo::{eval_f, ComboSpec};
use crate::dirichlet::{zeta_euler_maclaurin, Cutoffs, EvalResult};
use crate::error::{Error, Result};

/// Something that can be evaluated on Re(s) > 1, together with a bound on
/// the truncation error of the value returned.
pub trait SeriesFn: Sync {
    fn eval(&self, s: Complex64) -> Result<EvalResult>;

    fn value(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.eval(s)?.value)
    }
}

/// A function that is computed exactly (up to rounding), e.g. a Dirichlet
/// polynomial.
pub struct Exact<F>(pub F);

impl<F> SeriesFn for Exact<F>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    fn eval(&self, s: Complex64) -> Result<EvalResult> {
        Ok(EvalResult::new((self.0)(s), 0.0))
    }
}

/// F_N through truncated Euler products.
pub struct EulerCombo {
    pub combo: ComboSpec,
    pub cutoffs: Cutoffs,
}

impl SeriesFn for EulerCombo {
    fn eval(&self, s: Complex64) -> Result<EvalResult> {
        eval_f(&self.combo, s, self.cutoffs)
    }
}

/// zeta(s) + zeta(2s) + ... + zeta(Ns) through Euler-Maclaurin summation,
/// which stays accurate right down to Re(s) = 1 where the Euler product
/// tail bound is useless.
#[derive(Debug, Clone, Copy)]
pub struct ZetaComboEm {
    pub n: u32,
    /// Multiplier on the default number of leading terms.
    pub scale: u64,
}

impl ZetaComboEm {
    pub fn new(n: u32) -> Self {
        ZetaComboEm { n, scale: 1 }
    }

    pub fn doubled(&self) -> Self {
        ZetaComboEm {
            n: self.n,
            scale: self.scale * 2,
        }
    }
}

impl SeriesFn for ZetaComboEm {
    fn eval(&self, s: Complex64) -> Result<EvalResult> {
        let mut acc = EvalResult::new(Complex64::new(0.0, 0.0), 0.0);
        for k in 1..=self.n {
            let sk = s * k as f64;
            let terms = (sk.im.abs() / 2.0).ceil() as u64 * self.scale + 20 * self.scale;
            acc = acc + zeta_euler_maclaurin(sk, terms, 12)?;
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub t_min: f64,
    pub t_max: f64,
}

impl Rectangle {
    pub fn new(sigma_min: f64, sigma_max: f64, t_min: f64, t_max: f64) -> Result<Self> {
        if !(sigma_min > 1.0) {
            return Err(Error::Domain(format!("sigma_min must exceed 1, got {sigma_min}")));
        }
        if !(sigma_max > sigma_min) || !(t_max > t_min) || !sigma_max.is_finite() || !t_max.is_finite() || !t_min.is_finite() {
            return Err(Error::Domain(format!(
                "degenerate rectangle [{sigma_min}, {sigma_max}] x [{t_min}, {t_max}]"
            )));
        }
        Ok(Rectangle {
            sigma_min,
            sigma_max,
            t_min,
            t_max,
        })
    }

    /// Axis-aligned square of side `side` centred at `c`.
    pub fn around(c: Complex64, side: f64) -> Result<Self> {
        let h = side / 2.0;
        Self::new(c.re - h, c.re + h, c.im - h, c.im + h)
    }

    pub fn contains(&self, s: Complex64) -> bool {
        s.re > self.sigma_min && s.re < self.sigma_max && s.im > self.t_min && s.im < self.t_max
    }

    /// Distance from s to the boundary of the rectangle.
    pub fn boundary_distance(&self, s: Complex64) -> f64 {
        let dx = if s.re < self.sigma_min {
            self.sigma_min - s.re
        } else if s.re > self.sigma_max {
            s.re - self.sigma_max
        } else {
            0.0
        };
        let dy = if s.im < self.t_min {
            self.t_min - s.im
        } else if s.im > self.t_max {
            s.im - self.t_max
        } else {
            0.0
        };
        if dx > 0.0 || dy > 0.0 {
            return dx.hypot(dy);
        }
        (s.re - self.sigma_min)
            .min(self.sigma_max - s.re)
            .min(s.im - self.t_min)
            .min(self.t_max - s.im)
    }

    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.sigma_min, self.t_min),
            Complex64::new(self.sigma_max, self.t_min),
            Complex64::new(self.sigma_max, self.t_max),
            Complex64::new(self.sigma_min, self.t_max),
        ]
    }
}

#[derive(Debug, Clone, Copy)]
pub struct WindingOptions {
    /// Absolute floor for |F| on the boundary.
    pub min_modulus: f64,
    /// |F| must also exceed this multiple of the evaluation tail bound.
    pub tail_factor: f64,
    pub max_depth: u32,
    /// Lower bound on initial samples per unit of edge length.
    pub min_density: f64,
}

impl Default for WindingOptions {
    fn default() -> Self {
        WindingOptions {
            min_modulus: 1e-12,
            tail_factor: 10.0,
            max_depth: 40,
            min_density: 8.0,
        }
    }
}

fn checked_value<F: SeriesFn + ?Sized>(f: &F, s: Complex64, opts: &WindingOptions) -> Result<Complex64> {
    let r = f.eval(s)?;
    let threshold = opts.min_modulus.max(opts.tail_factor * r.tail_bound);
    let modulus = r.value.norm();
    if !(modulus >= threshold) {
        return Err(Error::BoundaryZero {
            re: s.re,
            im: s.im,
            modulus,
            threshold,
        });
    }
    Ok(r.value)
}

fn wrapped_delta(a: Complex64, b: Complex64) -> f64 {
    (b / a).arg()
}

/// Continuous argument change of F along the segment a -> b, bisecting
/// until every step turns by less than pi/2.
fn segment_turn<F: SeriesFn + ?Sized>(
    f: &F,
    a: Complex64,
    fa: Complex64,
    b: Complex64,
    fb: Complex64,
    depth: u32,
    opts: &WindingOptions,
) -> Result<f64> {
    let d = wrapped_delta(fa, fb);
    let m = (a + b) * 0.5;
    let fm = checked_value(f, m, opts)?;
    let d1 = wrapped_delta(fa, fm);
    let d2 = wrapped_delta(fm, fb);
    // accept only when the midpoint confirms the coarse step
    if d.abs() < PI / 2.0 && d1.abs() < PI / 4.0 && d2.abs() < PI / 4.0 && (d1 + d2 - d).abs() < 1e-9 {
        return Ok(d);
    }
    if depth >= opts.max_depth {
        return Err(Error::NonConvergence(depth));
    }
    Ok(segment_turn(f, a, fa, m, fm, depth + 1, opts)? + segment_turn(f, m, fm, b, fb, depth + 1, opts)?)
}

/// Number of zeros of F inside `rect` (with multiplicity), from the
/// argument change along the counter-clockwise boundary. Each edge starts
/// with `initial_steps` samples, or more if `opts.min_density` asks for
/// it, before adaptive refinement.
pub fn winding_count<F: SeriesFn + ?Sized>(
    f: &F,
    rect: &Rectangle,
    initial_steps: usize,
    opts: &WindingOptions,
) -> Result<i64> {
    let corners = rect.corners();
    let mut points = Vec::new();
    for e in 0..4 {
        let a = corners[e];
        let b = corners[(e + 1) % 4];
        let steps = initial_steps.max(1).max(((b - a).norm() * opts.min_density).ceil() as usize);
        for j in 0..steps {
            points.push(a + (b - a) * (j as f64 / steps as f64));
        }
    }
    points.push(corners[0]);
    let values: Vec<Complex64> = points
        .par_iter()
        .map(|&s| checked_value(f, s, opts))
        .collect::<Result<_>>()?;

    let mut total = 0.0;
    for i in 0..points.len() - 1 {
        total += segment_turn(f, points[i], values[i], points[i + 1], values[i + 1], 0, opts)?;
    }
    let w = total / (2.0 * PI);
    let rounded = w.round();
    if (w - rounded).abs() > 1e-6 {
        return Err(Error::Precision(format!("winding {w} is not close to an integer")));
    }
    Ok(rounded as i64)
}

/// Grid points where |F| is no larger than at any of the (up to eight)
/// neighbours and below `threshold`, sorted by |F|.
pub fn grid_scan<F: SeriesFn + ?Sized>(
    f: &F,
    rect: &Rectangle,
    grid_n: usize,
    threshold: f64,
) -> Result<Vec<(Complex64, f64)>> {
    if grid_n < 2 {
        return Err(Error::Domain(format!("grid_n must be >= 2, got {grid_n}")));
    }
    let at = |i: usize, j: usize| {
        Complex64::new(
            rect.sigma_min + (rect.sigma_max - rect.sigma_min) * i as f64 / (grid_n - 1) as f64,
            rect.t_min + (rect.t_max - rect.t_min) * j as f64 / (grid_n - 1) as f64,
        )
    };
    let moduli: Vec<f64> = (0..grid_n * grid_n)
        .into_par_iter()
        .map(|k| f.value(at(k / grid_n, k % grid_n)).map(|v| v.norm()))
        .collect::<Result<_>>()?;
    let modulus = |i: usize, j: usize| moduli[i * grid_n + j];

    let mut out = Vec::new();
    for i in 0..grid_n {
        for j in 0..grid_n {
            let m = modulus(i, j);
            if !(m < threshold) {
                continue;
            }
            let mut is_min = true;
            for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let (ni, nj) = (i as i64 + di, j as i64 + dj);
                    if ni < 0 || nj < 0 || ni >= grid_n as i64 || nj >= grid_n as i64 {
                        continue;
                    }
                    if modulus(ni as usize, nj as usize) < m {
                        is_min = false;
                    }
                }
            }
            if is_min {
                out.push((at(i, j), m));
            }
        }
    }
    out.sort_by(|a, b| a.1.total_cmp(&b.1));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroReport {
    #[serde(rename = "s", with = "crate::complex_pair")]
    pub location: Complex64,
    pub residual: f64,
    pub winding: i64,
    pub certified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ZeroReport {
    /// One JSON line with the keys s, residual, winding, certified.
    pub fn to_json_line(&self) -> String {
        serde_json::json!({
            "s": [self.location.re, self.location.im],
            "residual": self.residual,
            "winding": self.winding,
            "certified": self.certified,
        })
        .to_string()
    }

    fn failed(location: Complex64, residual: f64, note: impl Into<String>) -> Self {
        ZeroReport {
            location,
            residual,
            winding: 0,
            certified: false,
            note: Some(note.into()),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PolishOptions {
    pub tol: f64,
    pub max_iter: u32,
    /// Smallest certification box side, relative to max(1, |s|).
    pub min_box: f64,
    pub winding: WindingOptions,
}

impl Default for PolishOptions {
    fn default() -> Self {
        PolishOptions {
            tol: 1e-12,
            max_iter: 60,
            min_box: 1e-5,
            winding: WindingOptions::default(),
        }
    }
}

/// Central difference with step 1e-6 * max(1, |s|).
pub fn finite_difference<F: SeriesFn + ?Sized>(f: &F, s: Complex64) -> Result<Complex64> {
    let h = 1e-6 * s.norm().max(1.0);
    let hp = f.value(s + h)?;
    let hm = f.value(s - h)?;
    Ok((hp - hm) / (2.0 * h))
}

/// Newton iteration from `s0`. With `derivative = None` the derivative is
/// taken by central differences. A converged iterate is certified by a
/// winding count on a small box around it.
pub fn newton_polish<F: SeriesFn + ?Sized>(
    f: &F,
    derivative: Option<&dyn Fn(Complex64) -> Complex64>,
    s0: Complex64,
    opts: &PolishOptions,
) -> Result<ZeroReport> {
    if !(s0.re > 1.0) {
        return Err(Error::Domain(format!("starting point {s0} is not in Re(s) > 1")));
    }
    let deriv = |s: Complex64| -> Result<Complex64> {
        match derivative {
            Some(d) => Ok(d(s)),
            None => finite_difference(f, s),
        }
    };

    let mut s = s0;
    let mut value = f.value(s)?;
    let mut last_step = f64::INFINITY;
    let mut perturbed = false;
    let mut converged = false;
    let mut iter = 0;
    while iter < opts.max_iter {
        iter += 1;
        let d = deriv(s)?;
        if d.norm() == 0.0 || !d.is_finite() {
            if perturbed {
                return Ok(ZeroReport::failed(s, value.norm(), "stationary point: derivative vanished after perturbation"));
            }
            perturbed = true;
            s += Complex64::new(1e-3, 1e-3) * s.norm().max(1.0);
            value = f.value(s)?;
            continue;
        }
        let step = value / d;
        let next = s - step;
        if !(next.re > 1.0) || !next.is_finite() {
            return Ok(ZeroReport::failed(next, f64::NAN, "diverged: iterate left Re(s) > 1"));
        }
        s = next;
        value = f.value(s)?;
        last_step = step.norm();
        if value.norm() < opts.tol || last_step <= 4.0 * f64::EPSILON * s.norm() {
            converged = true;
            break;
        }
    }
    let residual = value.norm();
    if !converged || !(residual < opts.tol) {
        return Ok(ZeroReport::failed(s, residual, format!("no convergence after {iter} iterations")));
    }

    let side = (4.0 * last_step).max(opts.min_box * s.norm().max(1.0));
    let rect = match Rectangle::around(s, side) {
        Ok(r) => r,
        Err(_) => return Ok(ZeroReport::failed(s, residual, "certification box leaves Re(s) > 1")),
    };
    match winding_count(f, &rect, 8, &opts.winding) {
        Ok(w) => Ok(ZeroReport {
            location: s,
            residual,
            winding: w,
            certified: w >= 1,
            note: None,
        }),
        Err(e) => Ok(ZeroReport {
            location: s,
            residual,
            winding: 0,
            certified: false,
            note: Some(format!("certification failed: {e}")),
        }),
    }
}

/// Scan, polish every candidate and keep the distinct results.
pub fn hunt<F: SeriesFn + ?Sized>(
    f: &F,
    rect: &Rectangle,
    grid_n: usize,
    threshold: f64,
    opts: &PolishOptions,
) -> Result<Vec<ZeroReport>> {
    let candidates = grid_scan(f, rect, grid_n, threshold)?;
    let polished: Vec<ZeroReport> = candidates
        .par_iter()
        .filter(|(s, _)| s.re > 1.0)
        .map(|&(s, _)| newton_polish(f, None, s, opts))
        .collect::<Result<_>>()?;
    let mut out: Vec<ZeroReport> = Vec::new();
    for r in polished {
        let dup = out
            .iter()
            .any(|o| (o.location - r.location).norm() < 1e-8 * r.location.norm().max(1.0));
        if !dup {
            out.push(r);
        }
    }
    Ok(out)
}

/// A product of factors 1 - c q^(-s). Each factor vanishes exactly at
/// s = (ln c + 2 pi i k) / ln q, which makes these handy test functions.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletPolyProduct {
    pub factors: Vec<(f64, f64)>,
}

impl DirichletPolyProduct {
    pub fn new(factors: Vec<(f64, f64)>) -> Self {
        DirichletPolyProduct { factors }
    }

    pub fn value(&self, s: Complex64) -> Complex64 {
        self.factors
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, &(c, q)| acc * (1.0 - c * (-s * q.ln()).exp()))
    }

    /// All zeros inside `rect`, listed with multiplicity.
    pub fn zeros_in(&self, rect: &Rectangle) -> Vec<Complex64> {
        let mut out = Vec::new();
        for &(c, q) in &self.factors {
            let re = c.ln() / q.ln();
            let spacing = 2.0 * PI / q.ln();
            let k_lo = (rect.t_min / spacing).floor() as i64 - 1;
            let k_hi = (rect.t_max / spacing).ceil() as i64 + 1;
            for k in k_lo..=k_hi {
                let z = Complex64::new(re, k as f64 * spacing);
                if rect.contains(z) {
                    out.push(z);
                }
            }
        }
        out
    }

    /// Distance from the boundary of `rect` to the nearest zero.
    pub fn boundary_clearance(&self, rect: &Rectangle) -> f64 {
        let grown = Rectangle {
            sigma_min: rect.sigma_min - 1.0,
            sigma_max: rect.sigma_max + 1.0,
            t_min: rect.t_min - 1.0,
            t_max: rect.t_max + 1.0,
        };
        self.zeros_in(&grown)
            .iter()
            .map(|&z| rect.boundary_distance(z))
            .fold(1.0, f64::min)
    }
}

impl SeriesFn for DirichletPolyProduct {
    fn eval(&self, s: Complex64) -> Result<EvalResult> {
        Ok(EvalResult::new(self.value(s), 0.0))
    }
}
