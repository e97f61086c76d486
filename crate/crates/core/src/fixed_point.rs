//! Solving sum_p a(p) p^(-sigma - i t_p) = z by splitting the primes into
//! three blocks whose terms are rotated by theta1, -theta2 and pi.
//!
//! With mu_j the share of sum_p |a(p)| p^(-sigma) carried by block j, the
//! system becomes mu1 e^{i theta1} + mu2 e^{-i theta2} = mu0 + z / S, and
//! the map G(theta1, theta2) = mu1 e^{i theta1} + mu2 e^{-i theta2} covers
//! the disc of radius 1/10 about mu0.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combo::{ComboTail, TwistPattern};
use crate::dirichlet::{prime_sum, prime_sum_terms, sieve_primes, Cutoffs, EvalResult, LFunctionSpec};
use crate::error::{Error, Result};

/// Width of the first window, 1/(10 sqrt 3).
pub fn window1() -> f64 {
    1.0 / (10.0 * 3f64.sqrt())
}

/// Width of the second window, 1/(10 sqrt 5).
pub fn window2() -> f64 {
    1.0 / (10.0 * 5f64.sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionThresholds {
    pub sigma: f64,
    pub prime_cutoff: u64,
    /// Set when the blocks are p <= p1 and p1 < p <= p2.
    pub p1: Option<u64>,
    pub p2: Option<u64>,
    pub contiguous: bool,
    /// Primes rotated to theta1 and to -theta2. Every other prime up to the
    /// cutoff is rotated to pi.
    pub block1: Vec<u64>,
    pub block2: Vec<u64>,
    pub mu0: f64,
    pub mu1: f64,
    pub mu2: f64,
    /// sum_{p <= cutoff} |a(p)| p^(-sigma).
    pub total_sum: f64,
}

impl PartitionThresholds {
    /// The three window conditions on mu1, mu2 and mu0.
    pub fn invariants_hold(&self) -> bool {
        let third = 1.0 / 3.0;
        let in1 = self.mu1 >= third - window1() && self.mu1 < third;
        let in2 = self.mu2 >= third - window2() && self.mu2 < third;
        let in0 = self.mu0 > third && self.mu0 <= third + window1() + window2();
        in1 && in2 && in0
    }

    /// The covered radius for z, S/10.
    pub fn radius(&self) -> f64 {
        self.total_sum / 10.0
    }

    /// 1, 2 or 0 for the block holding p.
    pub fn block_of(&self, p: u64) -> u8 {
        if self.block1.binary_search(&p).is_ok() {
            1
        } else if self.block2.binary_search(&p).is_ok() {
            2
        } else {
            0
        }
    }
}

/// Blocks p <= p1 and p1 < p <= p2: the smallest p1 with prefix share in
/// [1/3 - 1/(10 sqrt 3), 1/3), then the smallest p2 whose block share lands
/// in [1/3 - 1/(10 sqrt 5), 1/3).
pub fn prefix_partition(spec: &LFunctionSpec, sigma: f64, prime_cutoff: u64) -> Result<PartitionThresholds> {
    let (terms, total) = partition_terms(spec, sigma, prime_cutoff)?;
    let third = 1.0 / 3.0;
    let find = |start: usize, lo: f64| -> Result<(usize, f64)> {
        let mut acc = 0.0;
        for (i, &(p, w)) in terms.iter().enumerate().skip(start) {
            acc += w;
            let share = acc / total;
            if share >= third {
                return Err(Error::Partition {
                    prime: p,
                    reason: format!("share jumps to {share:.6} without entering [{lo:.6}, 1/3)"),
                });
            }
            if share >= lo {
                return Ok((i, share));
            }
        }
        Err(Error::Partition {
            prime: terms.last().map(|t| t.0).unwrap_or(0),
            reason: "ran out of primes before the window was reached".into(),
        })
    };
    let (i1, mu1) = find(0, third - window1())?;
    let (i2, mu2) = find(i1 + 1, third - window2())?;
    finish(PartitionThresholds {
        sigma,
        prime_cutoff,
        p1: Some(terms[i1].0),
        p2: Some(terms[i2].0),
        contiguous: true,
        block1: terms[..=i1].iter().map(|t| t.0).collect(),
        block2: terms[i1 + 1..=i2].iter().map(|t| t.0).collect(),
        mu0: 1.0 - mu1 - mu2,
        mu1,
        mu2,
        total_sum: total,
    })
}

/// Blocks filled in increasing prime order: a prime joins block 1 if its
/// share stays below 1/3, else block 2 under the same rule, else block 0.
pub fn greedy_partition(spec: &LFunctionSpec, sigma: f64, prime_cutoff: u64) -> Result<PartitionThresholds> {
    let (terms, total) = partition_terms(spec, sigma, prime_cutoff)?;
    let third = 1.0 / 3.0;
    let (mut acc1, mut acc2) = (0.0, 0.0);
    let (mut block1, mut block2) = (Vec::new(), Vec::new());
    let mut first_left_out = None;
    for &(p, w) in &terms {
        if (acc1 + w) / total < third {
            acc1 += w;
            block1.push(p);
        } else if (acc2 + w) / total < third {
            acc2 += w;
            block2.push(p);
        } else if first_left_out.is_none() {
            first_left_out = Some(p);
        }
    }
    let (mu1, mu2) = (acc1 / total, acc2 / total);
    if mu1 < third - window1() || mu2 < third - window2() {
        return Err(Error::Partition {
            prime: first_left_out.unwrap_or(terms[0].0),
            reason: format!("blocks reach only mu1 = {mu1:.6}, mu2 = {mu2:.6}"),
        });
    }
    finish(PartitionThresholds {
        sigma,
        prime_cutoff,
        p1: None,
        p2: None,
        contiguous: false,
        block1,
        block2,
        mu0: 1.0 - mu1 - mu2,
        mu1,
        mu2,
        total_sum: total,
    })
}

/// The contiguous partition when it exists, otherwise the greedy one.
pub fn compute_partition(spec: &LFunctionSpec, sigma: f64, prime_cutoff: u64) -> Result<PartitionThresholds> {
    match prefix_partition(spec, sigma, prime_cutoff) {
        Err(Error::Partition { .. }) => greedy_partition(spec, sigma, prime_cutoff),
        other => other,
    }
}

fn partition_terms(spec: &LFunctionSpec, sigma: f64, prime_cutoff: u64) -> Result<(Vec<(u64, f64)>, f64)> {
    if !(sigma > 1.0) {
        return Err(Error::Domain(format!("sigma must exceed 1, got {sigma}")));
    }
    let terms = prime_sum_terms(spec, sigma, prime_cutoff)?;
    if terms.is_empty() {
        return Err(Error::Domain("no primes with a(p) != 0 below the cutoff".into()));
    }
    let total = terms.iter().map(|t| t.1).sum();
    Ok((terms, total))
}

fn finish(t: PartitionThresholds) -> Result<PartitionThresholds> {
    if !t.invariants_hold() {
        return Err(Error::Partition {
            prime: t.block2.last().copied().unwrap_or(0),
            reason: format!("mu = ({:.6}, {:.6}, {:.6}) miss their windows", t.mu0, t.mu1, t.mu2),
        });
    }
    Ok(t)
}

/// G(theta1, theta2) = mu1 e^{i theta1} + mu2 e^{-i theta2}.
pub fn g_map(mu1: f64, mu2: f64, theta1: f64, theta2: f64) -> Complex64 {
    Complex64::from_polar(mu1, theta1) + Complex64::from_polar(mu2, -theta2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    /// mu1 + mu2 - mu0.
    pub first_margin: f64,
    /// mu0 - |mu2 - mu1|.
    pub second_margin: f64,
    /// Winding of G(boundary of the square) about each sampled point of
    /// |w - mu0| = 1/10 and about mu0 itself.
    pub windings: Vec<i64>,
    pub covered: bool,
}

/// Checks that the image of the boundary of (0, pi/2)^2 under G winds
/// once about mu0 and about `points` equally spaced points of |w - mu0| = 1/10.
pub fn g_coverage_check(mu1: f64, mu2: f64, mu0: f64, boundary_samples: usize, points: usize) -> Result<CoverageReport> {
    let first_margin = mu1 + mu2 - mu0;
    let second_margin = mu0 - (mu2 - mu1).abs();
    if !(first_margin > 0.1) {
        return Err(Error::InvariantViolation(format!("mu1 + mu2 - mu0 = {first_margin} is not above 1/10")));
    }
    if !(second_margin > 0.1) {
        return Err(Error::InvariantViolation(format!("mu0 - |mu2 - mu1| = {second_margin} is not above 1/10")));
    }
    let n = boundary_samples.max(4);
    let mut boundary = Vec::with_capacity(4 * n);
    for j in 0..n {
        let t = FRAC_PI_2 * j as f64 / n as f64;
        boundary.push(g_map(mu1, mu2, t, 0.0));
    }
    for j in 0..n {
        let t = FRAC_PI_2 * j as f64 / n as f64;
        boundary.push(g_map(mu1, mu2, FRAC_PI_2, t));
    }
    for j in 0..n {
        let t = FRAC_PI_2 * (1.0 - j as f64 / n as f64);
        boundary.push(g_map(mu1, mu2, t, FRAC_PI_2));
    }
    for j in 0..n {
        let t = FRAC_PI_2 * (1.0 - j as f64 / n as f64);
        boundary.push(g_map(mu1, mu2, 0.0, t));
    }
    let winding_about = |c: Complex64| -> i64 {
        let m = boundary.len();
        let mut turn = 0.0;
        for j in 0..m {
            turn += ((boundary[(j + 1) % m] - c) / (boundary[j] - c)).arg();
        }
        (turn / (2.0 * PI)).round() as i64
    };
    let centre = Complex64::new(mu0, 0.0);
    let mut windings = vec![winding_about(centre)];
    for k in 0..points {
        let c = centre + Complex64::from_polar(0.1, 2.0 * PI * k as f64 / points as f64);
        windings.push(winding_about(c));
    }
    let covered = windings.iter().all(|w| w.abs() == 1);
    Ok(CoverageReport {
        first_margin,
        second_margin,
        windings,
        covered,
    })
}

fn newton_angles(mu1: f64, mu2: f64, w: Complex64, start: (f64, f64)) -> Option<(f64, f64)> {
    let (mut t1, mut t2) = start;
    let mut r = g_map(mu1, mu2, t1, t2) - w;
    for _ in 0..100 {
        if r.norm() < 1e-13 {
            break;
        }
        // columns d/d theta1 = i mu1 e^{i theta1}, d/d theta2 = -i mu2 e^{-i theta2}
        let a = Complex64::i() * Complex64::from_polar(mu1, t1);
        let b = -Complex64::i() * Complex64::from_polar(mu2, -t2);
        let det = a.re * b.im - a.im * b.re;
        if det.abs() < 1e-300 {
            return None;
        }
        let d1 = (r.re * b.im - r.im * b.re) / det;
        let d2 = (a.re * r.im - a.im * r.re) / det;
        let mut lambda = 1.0;
        loop {
            let (n1, n2) = (t1 - lambda * d1, t2 - lambda * d2);
            let nr = g_map(mu1, mu2, n1, n2) - w;
            if nr.norm() < r.norm() || lambda < 1e-6 {
                t1 = n1;
                t2 = n2;
                r = nr;
                break;
            }
            lambda *= 0.5;
        }
    }
    let inside = |t: f64| t > 0.0 && t < FRAC_PI_2;
    (r.norm() < 1e-10 && inside(t1) && inside(t2)).then_some((t1, t2))
}

/// (theta1, theta2) in (0, pi/2)^2 with G(theta1, theta2) = w.
pub fn solve_angles(t: &PartitionThresholds, w: Complex64) -> Result<(f64, f64)> {
    solve_angles_mu(t.mu1, t.mu2, t.mu0, w)
}

pub fn solve_angles_mu(mu1: f64, mu2: f64, mu0: f64, w: Complex64) -> Result<(f64, f64)> {
    if mu2 == 0.0 || mu1 == 0.0 {
        let (mu, sign) = if mu2 == 0.0 { (mu1, 1.0) } else { (mu2, -1.0) };
        if (w.norm() - mu).abs() > 1e-12 {
            return Err(Error::Solve(format!("|w| = {} is not reachable by a single rotor of length {mu}", w.norm())));
        }
        let theta = sign * w.arg();
        return Ok(if mu2 == 0.0 { (theta, 0.0) } else { (0.0, theta) });
    }
    let start = (FRAC_PI_4, FRAC_PI_4);
    if let Some(sol) = newton_angles(mu1, mu2, w, start) {
        return Ok(sol);
    }
    // continuation from the centre of the disc
    let centre = Complex64::new(mu0, 0.0);
    let mut cur = newton_angles(mu1, mu2, centre, start)
        .ok_or_else(|| Error::Solve("no solution at the disc centre".into()))?;
    let steps = 64;
    for j in 1..=steps {
        let wj = centre + (w - centre) * (j as f64 / steps as f64);
        cur = newton_angles(mu1, mu2, wj, cur)
            .ok_or_else(|| Error::Solve(format!("continuation lost the branch at step {j} towards w = {w}")))?;
    }
    Ok(cur)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwistBlocks {
    /// p <= p1: terms rotated to angle theta1.
    pub rotate_theta1: BTreeMap<u64, f64>,
    /// p1 < p <= p2: terms rotated to angle -theta2.
    pub rotate_minus_theta2: BTreeMap<u64, f64>,
    /// p > p2: terms rotated to angle pi.
    pub phase_pi: BTreeMap<u64, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwistSolution {
    pub sigma: f64,
    /// Target S (G(theta1, theta2) - mu0) realised by the angles.
    #[serde(with = "crate::complex_pair")]
    pub z: Complex64,
    pub theta1: f64,
    pub theta2: f64,
    pub twists: TwistBlocks,
    pub residual: Option<f64>,
}

impl TwistSolution {
    pub fn pattern(&self) -> TwistPattern {
        let mut p = TwistPattern::identity();
        for block in [&self.twists.rotate_theta1, &self.twists.rotate_minus_theta2, &self.twists.phase_pi] {
            for (&q, &t) in block {
                p = p.with(q, t);
            }
        }
        p
    }

    pub fn t(&self, p: u64) -> Option<f64> {
        self.twists
            .rotate_theta1
            .get(&p)
            .or_else(|| self.twists.rotate_minus_theta2.get(&p))
            .or_else(|| self.twists.phase_pi.get(&p))
            .copied()
    }
}

/// t_p = (arg a(p) - theta1)/log p, (arg a(p) + theta2)/log p and
/// (arg a(p) + pi)/log p on the three blocks, so that a(p) p^(-i t_p) has
/// argument theta1, -theta2 and pi respectively.
pub fn build_twists(
    spec: &LFunctionSpec,
    sigma: f64,
    t: &PartitionThresholds,
    theta1: f64,
    theta2: f64,
) -> Result<TwistSolution> {
    let primes = sieve_primes(t.prime_cutoff)?;
    let mut blocks = TwistBlocks {
        rotate_theta1: BTreeMap::new(),
        rotate_minus_theta2: BTreeMap::new(),
        phase_pi: BTreeMap::new(),
    };
    for p in primes.iter() {
        let a = spec.coeff_at_prime(p);
        if a.norm() == 0.0 {
            continue;
        }
        let lp = (p as f64).ln();
        let arg = a.arg();
        match t.block_of(p) {
            1 => blocks.rotate_theta1.insert(p, (arg - theta1) / lp),
            2 => blocks.rotate_minus_theta2.insert(p, (arg + theta2) / lp),
            _ => blocks.phase_pi.insert(p, (arg + PI) / lp),
        };
    }
    let z = (g_map(t.mu1, t.mu2, theta1, theta2) - t.mu0) * t.total_sum;
    Ok(TwistSolution {
        sigma,
        z,
        theta1,
        theta2,
        twists: blocks,
        residual: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub residual: f64,
    pub tolerance: f64,
    pub ok: bool,
    /// Bound on sum_{p > cutoff} |a(p)| p^(-sigma); these primes are
    /// outside the finite system that is solved.
    pub beyond_cutoff: f64,
}

/// |sum_{p <= cutoff} a(p) p^(-sigma - i t_p) - z|, recomputed from the twists.
pub fn verify_solution(
    spec: &LFunctionSpec,
    sigma: f64,
    z: Complex64,
    solution: &TwistSolution,
    t: &PartitionThresholds,
    tolerance: f64,
) -> Result<VerifyReport> {
    let rho = t.radius();
    if z.norm() > rho * (1.0 + 1e-12) {
        return Err(Error::Domain(format!("|z| = {} exceeds the covered radius {rho}", z.norm())));
    }
    let primes = sieve_primes(t.prime_cutoff)?;
    let mut acc = crate::dirichlet::eval::CompensatedSum::default();
    for p in primes.iter() {
        let a = spec.coeff_at_prime(p);
        if a.norm() == 0.0 {
            continue;
        }
        let tp = solution
            .t(p)
            .ok_or_else(|| Error::InvariantViolation(format!("no twist for p = {p}")))?;
        let lp = (p as f64).ln();
        acc.add(a * Complex64::from_polar((-sigma * lp).exp(), -tp * lp));
    }
    let residual = (acc.value() - z).norm();
    let beyond = prime_sum(spec, sigma, t.prime_cutoff)?.tail_bound;
    Ok(VerifyReport {
        residual,
        tolerance,
        ok: residual < tolerance,
        beyond_cutoff: beyond,
    })
}

/// Partition, angles, twists and verification for one target z.
pub fn solve_target(
    spec: &LFunctionSpec,
    t: &PartitionThresholds,
    z: Complex64,
    tolerance: f64,
) -> Result<(TwistSolution, VerifyReport)> {
    let rho = t.radius();
    if z.norm() > rho * (1.0 + 1e-12) {
        return Err(Error::Domain(format!("|z| = {} exceeds the covered radius {rho}", z.norm())));
    }
    let w = Complex64::new(t.mu0, 0.0) + z / t.total_sum;
    let (t1, t2) = solve_angles(t, w)?;
    let mut sol = build_twists(spec, t.sigma, t, t1, t2)?;
    let report = verify_solution(spec, t.sigma, z, &sol, t, tolerance)?;
    sol.residual = Some(report.residual);
    Ok((sol, report))
}

/// `count` targets equally spaced on |z| = radius, solved in parallel.
pub fn boundary_targets(
    spec: &LFunctionSpec,
    t: &PartitionThresholds,
    radius: f64,
    count: usize,
    tolerance: f64,
) -> Result<Vec<(TwistSolution, VerifyReport)>> {
    (0..count)
        .into_par_iter()
        .map(|k| {
            let z = Complex64::from_polar(radius, 2.0 * PI * k as f64 / count as f64);
            solve_target(spec, t, z, tolerance)
        })
        .collect()
}

/// K sum_p 1/(p^{2(1 - theta)} - p^{1 - theta}), the bound for the k >= 2
/// part of log L on Re(s) >= 1.
pub fn k_theta(spec: &LFunctionSpec, prime_cutoff: u64) -> Result<EvalResult> {
    let theta = spec.growth_theta();
    if !(theta < 0.5) {
        return Err(Error::Domain(format!("theta = {theta} must be below 1/2")));
    }
    let k = spec.growth_k();
    let e = 1.0 - theta;
    let primes = sieve_primes(prime_cutoff)?;
    let mut sum = 0.0;
    for p in primes.iter() {
        let q = (p as f64).powf(e);
        sum += 1.0 / (q * q - q);
    }
    // 1/(n^{2e} - n^e) <= 2 n^{-2e} once n^e >= 2
    let pc = prime_cutoff as f64;
    let tail = if pc.powf(e) >= 2.0 {
        2.0 * pc.powf(1.0 - 2.0 * e) / (2.0 * e - 1.0)
    } else {
        f64::INFINITY
    };
    Ok(EvalResult::new(Complex64::new(k * sum, 0.0), k * tail))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuffCondReport {
    pub sigma: f64,
    pub rho: f64,
    pub prime_sum: f64,
    /// 10 rho.
    pub required: f64,
    pub holds: bool,
    /// prime_sum - 10 rho.
    pub margin: f64,
}

/// Whether sum_{p <= cutoff} |a(p)| p^(-sigma) >= 10 rho.
pub fn suff_cond_check(spec: &LFunctionSpec, sigma: f64, rho: f64, prime_cutoff: u64) -> Result<SuffCondReport> {
    if !(sigma > 1.0) {
        return Err(Error::Domain(format!("sigma must exceed 1, got {sigma}")));
    }
    let s = prime_sum(spec, sigma, prime_cutoff)?.value.re;
    let required = 10.0 * rho;
    Ok(SuffCondReport {
        sigma,
        rho,
        prime_sum: s,
        required,
        holds: s >= required,
        margin: s - required,
    })
}

/// Something whose twisted logarithm can be taken: the series
/// sum_n c(n) n^(-sigma) prod_{p^v || n} p^(-i v t_p).
pub trait TwistedLog: Sync {
    fn log_twisted(&self, sigma: f64, twist: &TwistPattern) -> Result<Complex64>;
}

/// L(2s) + ... + L(Ns) through twisted Euler products.
pub struct TailLog {
    pub tail: ComboTail,
    pub cutoffs: Cutoffs,
}

impl TwistedLog for TailLog {
    fn log_twisted(&self, sigma: f64, twist: &TwistPattern) -> Result<Complex64> {
        Ok(self.tail.log_twisted(sigma, twist, self.cutoffs)?.value)
    }
}

/// A continuous choice of twists z -> {t_p(z)}.
pub trait TwistFamily: Sync {
    fn twists(&self, z: Complex64) -> Result<TwistPattern>;
}

/// The partition construction as a twist family. Targets outside the
/// covered disc are pulled radially onto its boundary.
pub struct PartitionFamily {
    pub spec: LFunctionSpec,
    pub thresholds: PartitionThresholds,
}

impl TwistFamily for PartitionFamily {
    fn twists(&self, z: Complex64) -> Result<TwistPattern> {
        let rho = self.thresholds.radius();
        let z = if z.norm() > rho { z * (rho / z.norm()) } else { z };
        let w = Complex64::new(self.thresholds.mu0, 0.0) + z / self.thresholds.total_sum;
        let (t1, t2) = solve_angles(&self.thresholds, w)?;
        Ok(build_twists(&self.spec, self.thresholds.sigma, &self.thresholds, t1, t2)?.pattern())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BrouwerValue {
    #[serde(with = "crate::complex_pair")]
    pub value: Complex64,
    #[serde(with = "crate::complex_pair")]
    pub log_part: Complex64,
    /// sum_p sum_{k >= 2} b(p^k) p^(-k(sigma + i t_p)).
    #[serde(with = "crate::complex_pair")]
    pub higher_powers: Complex64,
}

/// log f_t(sigma) - sum_p sum_{k >= 2} b(p^k) p^(-k(sigma + i t_p)) + pi i,
/// with {t_p} = family(z).
pub fn brouwer_map_eval(
    spec: &LFunctionSpec,
    f: &dyn TwistedLog,
    sigma: f64,
    z: Complex64,
    family: &dyn TwistFamily,
    cutoffs: Cutoffs,
) -> Result<BrouwerValue> {
    let twist = family.twists(z)?;
    let log_part = f.log_twisted(sigma, &twist)?;
    let primes = sieve_primes(cutoffs.primes)?;
    let kg = spec.growth_k();
    let theta = spec.growth_theta();
    let mut higher = Complex64::new(0.0, 0.0);
    for p in primes.iter() {
        let lp = (p as f64).ln();
        let x = Complex64::from_polar((-sigma * lp).exp(), -twist.phase(p));
        let y = ((theta - sigma) * lp).exp();
        let mut xk = x;
        let mut yk = y;
        for k in 2..=cutoffs.powers {
            xk *= x;
            yk *= y;
            higher += spec.log_coeff(p, k) * xk;
            if kg * yk * y / (1.0 - y) < 1e-18 {
                break;
            }
        }
    }
    Ok(BrouwerValue {
        value: log_part - higher + Complex64::new(0.0, PI),
        log_part,
        higher_powers: higher,
    })
}
