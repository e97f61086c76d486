//! The combination `F_N(s) = L(s) + L(2s) + ... + L(Ns)`, its tail
//! `f(s) = L(2s) + ... + L(Ns)`, disc-containment bounds for `f`, and
//! evaluation of `f` with independent per-prime phase twists.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{CheckedAdd, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dirichlet::eval::{abs_tail, euler_prime_tail, exp_with_tail};
use crate::dirichlet::primes::smallest_prime_factors;
use crate::dirichlet::{eval_l, sieve_primes, Cutoffs, EvalResult, LFunctionSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct ComboSpec {
    base: LFunctionSpec,
    n: u32,
}

impl ComboSpec {
    pub fn new(base: LFunctionSpec, n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("N must be >= 2, got {n}")));
        }
        Ok(ComboSpec { base, n })
    }

    pub fn base(&self) -> &LFunctionSpec {
        &self.base
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The tail series f(s) = L(2s) + ... + L(Ns).
    pub fn tail(&self) -> ComboTail {
        ComboTail {
            spec: self.base.clone(),
            n: self.n,
        }
    }
}

/// F_N(s) = sum_{k=1..N} L(ks).
pub fn eval_f(combo: &ComboSpec, s: Complex64, cutoffs: Cutoffs) -> Result<EvalResult> {
    let head = eval_l(&combo.base, s, cutoffs)?;
    Ok(head + eval_tail(combo, s, cutoffs)?)
}

/// f(s) = sum_{k=2..N} L(ks).
pub fn eval_tail(combo: &ComboSpec, s: Complex64, cutoffs: Cutoffs) -> Result<EvalResult> {
    let mut acc = EvalResult::new(Complex64::new(0.0, 0.0), 0.0);
    for k in 2..=combo.n {
        acc = acc + eval_l(&combo.base, s * k as f64, cutoffs)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Disc containment

/// Exact rational, serialized as `{"num": .., "den": ..}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRational {
    pub num: i128,
    pub den: i128,
}

impl From<Ratio<i128>> for ExactRational {
    fn from(r: Ratio<i128>) -> Self {
        ExactRational {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

/// Where the values of f = L(2s) + ... + L(Ns) lie for sigma >= 1: the
/// disc of center N-1 and the given radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscReport {
    pub n: u32,
    pub radius: f64,
    pub radius_exact: Option<ExactRational>,
    pub center: f64,
    pub contained: bool,
    /// Bound on |log f| over the disc; present iff `contained`.
    pub log_bound: Option<f64>,
    /// Coefficient bound |a(n)| <= constant * n^exponent used for the radius.
    pub constant: f64,
    pub exponent: f64,
    /// The constant was estimated from finitely many coefficients.
    pub empirical: bool,
    pub note: Option<String>,
}

const EMPIRICAL_RANGE: usize = 10_000;

/// Radius sum_{k=2..N} C/(k - 1 - e) of the disc holding f, from
/// |L(ks) - 1| <= C sum_{n>=2} n^(e - k) <= C/(k - 1 - e).
///
/// With a declared rational coefficient bound the sum is exact; otherwise
/// e = 1/2 and C = max_{2<=n<=10^4} |a(n)|/sqrt(n) is estimated.
pub fn lemma_disc_check(spec: &LFunctionSpec, n: u32, sigma: f64) -> Result<DiscReport> {
    if n < 2 {
        return Err(Error::Domain(format!("N must be >= 2, got {n}")));
    }
    if !(sigma >= 1.0) {
        return Err(Error::Domain(format!("sigma = {sigma} must be >= 1")));
    }
    let center = (n - 1) as f64;
    let (radius, radius_exact, constant, exponent, empirical) = match spec.coeff_bound() {
        Some(bound) => {
            let c = Ratio::new(*bound.constant.numer() as i128, *bound.constant.denom() as i128);
            let e = Ratio::new(*bound.exponent.numer() as i128, *bound.exponent.denom() as i128);
            if e >= Ratio::from_integer(1) {
                return Err(Error::Domain("coefficient exponent must be below 1".into()));
            }
            let exact = exact_radius(c, e, n);
            let radius = match exact {
                Some(r) => r.to_f64().unwrap_or(f64::INFINITY),
                None => float_radius(bound.constant_f64(), bound.exponent_f64(), n),
            };
            (
                radius,
                exact.map(ExactRational::from),
                bound.constant_f64(),
                bound.exponent_f64(),
                false,
            )
        }
        None => {
            let a = spec.coefficients(EMPIRICAL_RANGE);
            let c = a
                .iter()
                .enumerate()
                .skip(2)
                .map(|(k, ak)| ak.norm() / (k as f64).sqrt())
                .fold(0.0, f64::max);
            (float_radius(c, 0.5, n), None, c, 0.5, true)
        }
    };
    let contained = radius < center;
    let log_bound = contained.then(|| {
        let modulus = (center - radius).ln().abs().max((center + radius).ln());
        modulus + (radius / center).asin()
    });
    let note = (n == 2).then(|| "N = 2 is covered by n2_log_bound instead".to_string());
    Ok(DiscReport {
        n,
        radius,
        radius_exact,
        center,
        contained,
        log_bound,
        constant,
        exponent,
        empirical,
        note,
    })
}

fn exact_radius(c: Ratio<i128>, e: Ratio<i128>, n: u32) -> Option<Ratio<i128>> {
    let mut acc = Ratio::from_integer(0i128);
    for k in 2..=n as i128 {
        let term = c / (Ratio::from_integer(k - 1) - e);
        acc = acc.checked_add(&term)?;
    }
    Some(acc)
}

fn float_radius(c: f64, e: f64, n: u32) -> f64 {
    (2..=n).map(|k| c / (k as f64 - 1.0 - e)).sum()
}

/// B = pi + K sum_p 1/(p^(3/2) - 1), which bounds |log(-L(2s))| for sigma >= 1.
pub fn n2_log_bound(spec: &LFunctionSpec, prime_cutoff: u64) -> Result<EvalResult> {
    let primes = sieve_primes(prime_cutoff)?;
    let k = spec.growth_k();
    let sum: f64 = primes.iter().map(|p| 1.0 / ((p as f64).powf(1.5) - 1.0)).sum();
    let pc = prime_cutoff as f64;
    let tail = k * 2.0 / pc.sqrt() / (1.0 - pc.powf(-1.5));
    Ok(EvalResult::new(Complex64::new(PI + k * sum, 0.0), tail))
}

// ---------------------------------------------------------------------------
// Twists

/// Phase rule for primes without an explicit assignment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DefaultTwist {
    /// t_p = t for every unlisted prime (an ordinary vertical shift).
    Shift(f64),
    /// t_p = phase / log p, so p^(-i t_p) = e^(-i phase).
    Phase(f64),
}

/// A family {t_p} of real per-prime shifts: n^(-sigma) is replaced by
/// n^(-sigma) prod_{p^v || n} p^(-i v t_p).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwistPattern {
    pub assignments: BTreeMap<u64, f64>,
    pub default: DefaultTwist,
}

impl TwistPattern {
    pub fn identity() -> Self {
        TwistPattern {
            assignments: BTreeMap::new(),
            default: DefaultTwist::Shift(0.0),
        }
    }

    pub fn shift(t: f64) -> Self {
        TwistPattern {
            assignments: BTreeMap::new(),
            default: DefaultTwist::Shift(t),
        }
    }

    pub fn with(mut self, p: u64, t: f64) -> Self {
        self.assignments.insert(p, t);
        self
    }

    /// Independent uniform t_p in [0, 2 pi / log p) for every prime up to
    /// `prime_cutoff`; larger primes are left untwisted.
    pub fn random<R: Rng>(prime_cutoff: u64, rng: &mut R) -> Result<Self> {
        let primes = sieve_primes(prime_cutoff)?;
        let assignments = primes
            .iter()
            .map(|p| (p, rng.gen_range(0.0..2.0 * PI / (p as f64).ln())))
            .collect();
        Ok(TwistPattern {
            assignments,
            default: DefaultTwist::Shift(0.0),
        })
    }

    pub fn t(&self, p: u64) -> f64 {
        match self.assignments.get(&p) {
            Some(&t) => t,
            None => match self.default {
                DefaultTwist::Shift(t) => t,
                DefaultTwist::Phase(phi) => phi / (p as f64).ln(),
            },
        }
    }

    /// t_p log p, the angle by which p^(-i t_p) rotates.
    pub fn phase(&self, p: u64) -> f64 {
        self.t(p) * (p as f64).ln()
    }
}

/// A Dirichlet series given by its coefficients c(n), with a bound on
/// sum_{n > N} |c(n)| n^(-sigma).
pub trait CoeffSeries {
    fn coefficients(&self, n_max: usize) -> Vec<Complex64>;
    fn abs_tail(&self, sigma: f64, n_cutoff: u64) -> Result<f64>;
}

/// The coefficients of L(ks): c(m^k) = a(m), zero elsewhere.
#[derive(Debug, Clone)]
pub struct ScaledSeries {
    pub spec: LFunctionSpec,
    pub k: u32,
}

/// Largest m with m^k <= n.
fn int_root(n: u64, k: u32) -> u64 {
    let mut m = (n as f64).powf(1.0 / k as f64).round() as u64;
    while m > 0 && m.checked_pow(k).map_or(true, |v| v > n) {
        m -= 1;
    }
    while (m + 1).checked_pow(k).is_some_and(|v| v <= n) {
        m += 1;
    }
    m
}

impl CoeffSeries for ScaledSeries {
    fn coefficients(&self, n_max: usize) -> Vec<Complex64> {
        let m_max = int_root(n_max as u64, self.k) as usize;
        let a = self.spec.coefficients(m_max.max(1));
        let mut c = vec![Complex64::new(0.0, 0.0); n_max + 1];
        for (m, am) in a.iter().enumerate().skip(1).take(m_max) {
            c[m.pow(self.k)] = *am;
        }
        c
    }

    fn abs_tail(&self, sigma: f64, n_cutoff: u64) -> Result<f64> {
        let m = int_root(n_cutoff, self.k).max(2);
        abs_tail(&self.spec, Complex64::new(self.k as f64 * sigma, 0.0), m)
    }
}

/// Coefficients of a finite Dirichlet polynomial; entry i is c(i + 1).
#[derive(Debug, Clone)]
pub struct FiniteSeries(pub Vec<Complex64>);

impl CoeffSeries for FiniteSeries {
    fn coefficients(&self, n_max: usize) -> Vec<Complex64> {
        let mut c = vec![Complex64::new(0.0, 0.0); n_max + 1];
        for (i, v) in self.0.iter().enumerate().take(n_max) {
            c[i + 1] = *v;
        }
        c
    }

    fn abs_tail(&self, sigma: f64, n_cutoff: u64) -> Result<f64> {
        Ok(self
            .0
            .iter()
            .enumerate()
            .skip(n_cutoff as usize)
            .map(|(i, v)| v.norm() * ((i + 1) as f64).powf(-sigma))
            .sum())
    }
}

/// sum_{n <= N} c(n) n^(-sigma) prod_{p^v || n} p^(-i v t_p), summed
/// directly with the coefficient tail bound.
pub fn eval_twisted<C: CoeffSeries + ?Sized>(
    series: &C,
    sigma: f64,
    twist: &TwistPattern,
    n_cutoff: u64,
    tolerance: Option<f64>,
) -> Result<EvalResult> {
    if n_cutoff < 1 {
        return Err(Error::Domain("n cutoff must be >= 1".into()));
    }
    let tail = series.abs_tail(sigma, n_cutoff)?;
    if let Some(tol) = tolerance {
        if tail > tol {
            return Err(Error::Precision(format!(
                "twisted tail {tail:e} exceeds tolerance {tol:e}"
            )));
        }
    }
    let n_max = n_cutoff as usize;
    let c = series.coefficients(n_max);
    let spf = smallest_prime_factors(n_max);
    let mut value = Complex64::new(0.0, 0.0);
    for (n, cn) in c.iter().enumerate().skip(1) {
        if cn.norm_sqr() == 0.0 {
            continue;
        }
        let mut phase = 0.0;
        let mut m = n;
        while m > 1 {
            let p = spf[m] as usize;
            let mut v = 0u32;
            while m % p == 0 {
                m /= p;
                v += 1;
            }
            phase += v as f64 * twist.phase(p as u64);
        }
        value += cn * (n as f64).powf(-sigma) * Complex64::from_polar(1.0, -phase);
    }
    Ok(EvalResult::new(value, tail))
}

/// log L_t(k sigma) = sum_p sum_j b(p^j) p^(-jk sigma) e^(-i jk t_p log p),
/// the twisted Euler logarithm of L(ks).
pub fn twisted_log_l(
    spec: &LFunctionSpec,
    k: u32,
    sigma: f64,
    twist: &TwistPattern,
    cutoffs: Cutoffs,
) -> Result<EvalResult> {
    let s_eff = k as f64 * sigma;
    if !(s_eff > 1.0) {
        return Err(Error::Domain(format!("k sigma = {s_eff} must exceed 1")));
    }
    let kg = spec.growth_k();
    let theta = spec.growth_theta();
    let prime_tail = euler_prime_tail(kg, theta, s_eff, cutoffs.primes)?;
    let primes = sieve_primes(cutoffs.primes)?;
    let mut value = Complex64::new(0.0, 0.0);
    let mut power_tail = 0.0;
    for p in primes.iter() {
        let lp = (p as f64).ln();
        let x = Complex64::from_polar((-s_eff * lp).exp(), -(k as f64) * twist.phase(p));
        let y = ((theta - s_eff) * lp).exp();
        let mut xj = Complex64::new(1.0, 0.0);
        let mut yj = 1.0;
        for j in 1..=cutoffs.powers {
            xj *= x;
            yj *= y;
            value += spec.log_coeff(p, j) * xj;
            let rest = kg * yj * y / (1.0 - y);
            if j == cutoffs.powers || rest < 1e-18 {
                power_tail += rest;
                break;
            }
        }
    }
    Ok(EvalResult::new(value, prime_tail + power_tail))
}

/// f(s) = L(2s) + ... + L(Ns) as a twistable series.
#[derive(Debug, Clone)]
pub struct ComboTail {
    pub spec: LFunctionSpec,
    pub n: u32,
}

impl ComboTail {
    /// Twisted value via the twisted Euler products of each L(ks).
    pub fn eval_twisted_euler(
        &self,
        sigma: f64,
        twist: &TwistPattern,
        cutoffs: Cutoffs,
    ) -> Result<EvalResult> {
        let mut acc = EvalResult::new(Complex64::new(0.0, 0.0), 0.0);
        for k in 2..=self.n {
            let log = twisted_log_l(&self.spec, k, sigma, twist, cutoffs)?;
            acc = acc + exp_with_tail(log);
        }
        Ok(acc)
    }

    /// log of the twisted value. For N = 2 this is the Euler logarithm of
    /// L(2s); otherwise the principal logarithm, which requires the value to
    /// stay inside the containment disc |f - (N-1)| < N-1.
    pub fn log_twisted(
        &self,
        sigma: f64,
        twist: &TwistPattern,
        cutoffs: Cutoffs,
    ) -> Result<EvalResult> {
        if self.n == 2 {
            return twisted_log_l(&self.spec, 2, sigma, twist, cutoffs);
        }
        let f = self.eval_twisted_euler(sigma, twist, cutoffs)?;
        let center = (self.n - 1) as f64;
        let dist = (f.value - center).norm();
        if dist + f.tail_bound >= center {
            return Err(Error::InvariantViolation(format!(
                "twisted f = {} leaves the disc |f - {center}| < {center}",
                f.value
            )));
        }
        let modulus = f.value.norm();
        let tail = if f.tail_bound < modulus {
            f.tail_bound / (modulus - f.tail_bound)
        } else {
            f64::INFINITY
        };
        Ok(EvalResult::new(f.value.ln(), tail))
    }
}

impl CoeffSeries for ComboTail {
    fn coefficients(&self, n_max: usize) -> Vec<Complex64> {
        let mut c = vec![Complex64::new(0.0, 0.0); n_max + 1];
        for k in 2..=self.n {
            let part = ScaledSeries {
                spec: self.spec.clone(),
                k,
            }
            .coefficients(n_max);
            for (ci, pi) in c.iter_mut().zip(part) {
                *ci += pi;
            }
        }
        c
    }

    fn abs_tail(&self, sigma: f64, n_cutoff: u64) -> Result<f64> {
        let mut total = 0.0;
        for k in 2..=self.n {
            total += ScaledSeries {
                spec: self.spec.clone(),
                k,
            }
            .abs_tail(sigma, n_cutoff)?;
        }
        Ok(total)
    }
}

/// Outcome of sampling random twists of the combination tail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub n: u32,
    pub sigma: f64,
    pub trials: usize,
    pub seed: u64,
    pub max_abs_log: f64,
    pub empty: bool,
    pub log_bound: f64,
    pub within_bound: bool,
}

/// max over `trials` random twist families of |log f_t(sigma)|, compared
/// against the disc bound B(N). Each trial draws from its own ChaCha stream
/// of the master seed, so results do not depend on scheduling.
pub fn uniform_log_bound_sample(
    tail: &ComboTail,
    sigma: f64,
    trials: usize,
    seed: u64,
    cutoffs: Cutoffs,
) -> Result<SampleReport> {
    let log_bound = if tail.n == 2 {
        n2_log_bound(&tail.spec, cutoffs.primes)?.value.re
    } else {
        let disc = lemma_disc_check(&tail.spec, tail.n, sigma)?;
        disc.log_bound.ok_or_else(|| {
            Error::InvariantViolation(format!(
                "disc of radius {} is not contained for N = {}",
                disc.radius, tail.n
            ))
        })?
    };
    let logs: Vec<EvalResult> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let twist = TwistPattern::random(cutoffs.primes, &mut rng)?;
            tail.log_twisted(sigma, &twist, cutoffs)
        })
        .collect::<Result<_>>()?;
    let max_abs_log = logs.iter().map(|l| l.value.norm()).fold(0.0, f64::max);
    let slack = logs.iter().map(|l| l.tail_bound).fold(0.0, f64::max);
    Ok(SampleReport {
        n: tail.n,
        sigma,
        trials,
        seed,
        max_abs_log,
        empty: trials == 0,
        log_bound,
        within_bound: max_abs_log <= log_bound + slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::DirichletCharacter;
    use approx::assert_abs_diff_eq;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn zeta_partial(s: f64, n: u64) -> f64 {
        (1..=n).rev().map(|k| (k as f64).powf(-s)).sum::<f64>()
            + (n as f64).powf(1.0 - s) / (s - 1.0)
    }

    #[test]
    fn f2_at_two() {
        let combo = ComboSpec::new(LFunctionSpec::zeta(), 2).unwrap();
        let r = eval_f(&combo, re(2.0), Cutoffs::default()).unwrap();
        let oracle = zeta_partial(2.0, 1_000_000) + zeta_partial(4.0, 10_000);
        assert!((r.value.re - oracle).abs() <= r.tail_bound + 1e-9);
        assert_abs_diff_eq!(r.value.re, 2.7272573, epsilon = 1e-4);
    }

    #[test]
    fn f_tends_to_n() {
        let combo = ComboSpec::new(LFunctionSpec::dirichlet(DirichletCharacter::mod5_i()), 4).unwrap();
        let r = eval_f(&combo, re(80.0), Cutoffs::new(100, 4)).unwrap();
        assert!((r.value - 4.0).norm() < 1e-15);
    }

    #[test]
    fn f3_at_three_halves() {
        let combo = ComboSpec::new(LFunctionSpec::zeta(), 3).unwrap();
        let r = eval_f(&combo, re(1.5), Cutoffs::default()).unwrap();
        assert!(r.value.re.is_finite());
        let oracle =
            zeta_partial(1.5, 4_000_000) + zeta_partial(3.0, 100_000) + zeta_partial(4.5, 10_000);
        assert!((r.value.re - oracle).abs() <= r.tail_bound + 1e-3);
    }

    #[test]
    fn f_splits_into_head_and_tail() {
        let combo = ComboSpec::new(LFunctionSpec::zeta(), 5).unwrap();
        let s = Complex64::new(1.3, 7.0);
        let c = Cutoffs::new(20_000, 40);
        let f = eval_f(&combo, s, c).unwrap();
        let head = eval_l(combo.base(), s, c).unwrap();
        let tail = eval_tail(&combo, s, c).unwrap();
        assert!(f.agrees_with(&(head + tail), 1e-12));
        assert!(eval_f(&combo, re(1.0), c).is_err());
    }

    #[test]
    fn quarter_growth_radii() {
        let spec = LFunctionSpec::quarter_growth_variant();
        let r2 = lemma_disc_check(&spec, 2, 1.0).unwrap();
        assert_eq!(r2.radius_exact, Some(ExactRational { num: 4, den: 3 }));
        assert!(!r2.contained && r2.log_bound.is_none() && r2.note.is_some());
        let r3 = lemma_disc_check(&spec, 3, 1.0).unwrap();
        assert_eq!(r3.radius_exact, Some(ExactRational { num: 40, den: 21 }));
        assert!(r3.contained && r3.log_bound.is_some());
        let r10 = lemma_disc_check(&spec, 10, 1.0).unwrap();
        // sum_{k=2}^{10} 4/(4k-5), computed term by term
        let direct: f64 = (2..=10).map(|k| 4.0 / (4.0 * k as f64 - 5.0)).sum();
        assert_abs_diff_eq!(r10.radius, direct, epsilon = 1e-15);
        assert_abs_diff_eq!(r10.radius, 3.310971, epsilon = 1e-6);
        assert!(r10.contained);
    }

    #[test]
    fn report_json_renders_exact_radius() {
        let r = lemma_disc_check(&LFunctionSpec::quarter_growth_variant(), 3, 1.0).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains(r#""radius_exact":{"num":40,"den":21}"#), "{text}");
        let back: DiscReport = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn empirical_constant_for_zeta_powers() {
        let r = lemma_disc_check(&LFunctionSpec::zeta_power(2), 6, 1.0).unwrap();
        assert!(r.empirical);
        // d(n)/sqrt(n) peaks at n = 12 with 6/sqrt(12)
        assert_abs_diff_eq!(r.constant, 6.0 / 12f64.sqrt(), epsilon = 1e-12);
        assert!(lemma_disc_check(&LFunctionSpec::zeta(), 1, 1.0).is_err());
        assert!(lemma_disc_check(&LFunctionSpec::zeta(), 3, 0.9).is_err());
    }

    #[test]
    fn disc_invariant_contained_iff_bound() {
        for n in 2..30 {
            for spec in [LFunctionSpec::zeta(), LFunctionSpec::zeta_power(3)] {
                let r = lemma_disc_check(&spec, n, 1.0).unwrap();
                assert_eq!(r.contained, r.radius < r.center);
                assert_eq!(r.contained, r.log_bound.is_some());
            }
        }
    }

    #[test]
    fn n2_bound_for_zeta() {
        let b = n2_log_bound(&LFunctionSpec::zeta(), 1_000_000).unwrap();
        let oracle: f64 = sieve_primes(1_000_000)
            .unwrap()
            .iter()
            .map(|p| 1.0 / ((p as f64) * (p as f64).sqrt() - 1.0))
            .sum();
        assert!((b.value.re - PI - oracle).abs() < 1e-12);
        assert_abs_diff_eq!(b.value.re - PI, 1.10238, epsilon = 1e-5);
        let small = n2_log_bound(&LFunctionSpec::zeta(), 1000).unwrap();
        assert!(small.value.re <= b.value.re);
        assert!(b.value.re - small.value.re <= small.tail_bound);
        let trivial = LFunctionSpec::custom("one", 0.0, 0.0, |_, _| re(0.0));
        assert_eq!(n2_log_bound(&trivial, 1000).unwrap().value.re, PI);
    }

    #[test]
    fn identity_twist_is_untwisted() {
        let series = ScaledSeries {
            spec: LFunctionSpec::zeta(),
            k: 2,
        };
        let r = eval_twisted(&series, 1.0, &TwistPattern::identity(), 1_000_000, None).unwrap();
        assert!((r.value.re - PI * PI / 6.0).abs() <= r.tail_bound + 1e-12);
        assert!(r.tail_bound <= 1e-3);
    }

    #[test]
    fn twist_at_two_flips_two_adic_terms() {
        let series = ScaledSeries {
            spec: LFunctionSpec::zeta(),
            k: 2,
        };
        let twist = TwistPattern::identity().with(2, PI / (2.0 * 2f64.ln()));
        let r = eval_twisted(&series, 1.0, &twist, 1_000_000, None).unwrap();
        // direct oracle: sum_m (-1)^{v_2(m)} m^-2
        let mut oracle = 0.0;
        for m in (1..=1000u64).rev() {
            let v = m.trailing_zeros();
            oracle += if v % 2 == 0 { 1.0 } else { -1.0 } / (m * m) as f64;
        }
        assert!((r.value - oracle).norm() <= r.tail_bound + 1e-12);
        assert_abs_diff_eq!(oracle, 0.6 * PI * PI / 6.0, epsilon = 2e-3);
    }

    #[test]
    fn constant_series_ignores_twists() {
        let one = FiniteSeries(vec![re(1.0)]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let twist = TwistPattern::random(100, &mut rng).unwrap();
            let r = eval_twisted(&one, 1.0, &twist, 50, None).unwrap();
            assert_eq!(r.value, re(1.0));
        }
    }

    #[test]
    fn twisted_routes_agree() {
        // direct coefficient sum versus twisted Euler products
        let tail = ComboTail {
            spec: LFunctionSpec::dirichlet(DirichletCharacter::mod5_i()),
            n: 4,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let twist = TwistPattern::random(5000, &mut rng).unwrap();
        let sigma = 1.05;
        let direct = eval_twisted(&tail, sigma, &twist, 4_000_000, None).unwrap();
        let euler = tail
            .eval_twisted_euler(sigma, &twist, Cutoffs::new(5000, 60))
            .unwrap();
        assert!(direct.agrees_with(&euler, 1e-10), "{direct:?} {euler:?}");
    }

    #[test]
    fn sampled_logs_stay_below_disc_bound() {
        let tail = ComboTail {
            spec: LFunctionSpec::zeta(),
            n: 5,
        };
        let r = uniform_log_bound_sample(&tail, 1.0, 100, 7, Cutoffs::new(2000, 40)).unwrap();
        assert!(r.within_bound, "{r:?}");
        assert!(!r.empty);
        let again = uniform_log_bound_sample(&tail, 1.0, 100, 7, Cutoffs::new(2000, 40)).unwrap();
        assert_eq!(r, again);
        let empty = uniform_log_bound_sample(&tail, 1.0, 0, 7, Cutoffs::new(2000, 40)).unwrap();
        assert!(empty.empty && empty.max_abs_log == 0.0);
    }

    #[test]
    fn untwisted_log_far_right() {
        let tail = ComboTail {
            spec: LFunctionSpec::zeta(),
            n: 6,
        };
        let l = tail
            .log_twisted(30.0, &TwistPattern::identity(), Cutoffs::new(100, 8))
            .unwrap();
        assert!((l.value.norm() - 5f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn containment_failure_is_reported() {
        // zeta^4(2) + zeta^4(3) is about 9.4, far outside |f - 2| < 2
        let tail = ComboTail {
            spec: LFunctionSpec::zeta_power(4),
            n: 3,
        };
        let err = tail
            .log_twisted(1.0, &TwistPattern::identity(), Cutoffs::new(1000, 40))
            .unwrap_err();
        assert!(matches!(err, Error::InvariantViolation(_)));
    }
}
