use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::ToPrimitive;

use super::character::DirichletCharacter;
use super::primes::{sieve_primes, smallest_prime_factors};

type LogCoeffFn = dyn Fn(u64, u32) -> Complex64 + Send + Sync;

/// Where the log-coefficients b(p^k) come from.
#[derive(Clone)]
pub enum Family {
    /// b(p^k) = 1/k.
    Zeta,
    /// b(p^k) = chi(p)^k / k.
    Dirichlet(DirichletCharacter),
    /// zeta(s)^m: b(p^k) = m/k.
    ZetaPower(u32),
    Custom(Arc<LogCoeffFn>),
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Zeta => write!(f, "Zeta"),
            Family::Dirichlet(chi) => write!(f, "Dirichlet(mod {})", chi.modulus()),
            Family::ZetaPower(m) => write!(f, "ZetaPower({m})"),
            Family::Custom(_) => write!(f, "Custom"),
        }
    }
}

/// Proven coefficient bound |a(n)| <= constant * n^exponent for n >= 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoeffBound {
    pub constant: Ratio<i64>,
    pub exponent: Ratio<i64>,
}

impl CoeffBound {
    pub fn new(constant: Ratio<i64>, exponent: Ratio<i64>) -> Self {
        CoeffBound { constant, exponent }
    }

    /// |a(n)| <= 1.
    pub fn unit() -> Self {
        Self::new(Ratio::from_integer(1), Ratio::from_integer(0))
    }

    pub fn constant_f64(&self) -> f64 {
        self.constant.to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn exponent_f64(&self) -> f64 {
        self.exponent.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// An L-function with an Euler product, described by its log-coefficients
/// `b(p^k)` and the growth constants with |b(p^k)| <= K p^(k theta).
#[derive(Debug, Clone)]
pub struct LFunctionSpec {
    family: Family,
    growth_k: f64,
    growth_theta: f64,
    label: String,
    coeff_bound: Option<CoeffBound>,
}

impl LFunctionSpec {
    pub fn zeta() -> Self {
        LFunctionSpec {
            family: Family::Zeta,
            growth_k: 1.0,
            growth_theta: 0.0,
            label: "zeta".into(),
            coeff_bound: Some(CoeffBound::unit()),
        }
    }

    pub fn dirichlet(chi: DirichletCharacter) -> Self {
        let label = format!("L(s, chi mod {})", chi.modulus());
        LFunctionSpec {
            family: Family::Dirichlet(chi),
            growth_k: 1.0,
            growth_theta: 0.0,
            label,
            coeff_bound: Some(CoeffBound::unit()),
        }
    }

    /// zeta(s)^m. Its coefficients are the divisor functions d_m(n), which
    /// have no constant bound, so no `CoeffBound` is attached.
    pub fn zeta_power(m: u32) -> Self {
        LFunctionSpec {
            family: Family::ZetaPower(m),
            growth_k: m as f64,
            growth_theta: 0.0,
            label: format!("zeta^{m}"),
            coeff_bound: None,
        }
    }

    /// zeta with the weaker declared bound |a(n)| <= n^(1/4), the growth
    /// condition under which the combination lemma holds for every N >= 3.
    pub fn quarter_growth_variant() -> Self {
        let mut spec = Self::zeta();
        spec.label = "zeta (|a(n)| <= n^(1/4))".into();
        spec.coeff_bound = Some(CoeffBound::new(
            Ratio::from_integer(1),
            Ratio::new(1, 4),
        ));
        spec
    }

    pub fn custom<F>(label: impl Into<String>, growth_k: f64, growth_theta: f64, f: F) -> Self
    where
        F: Fn(u64, u32) -> Complex64 + Send + Sync + 'static,
    {
        LFunctionSpec {
            family: Family::Custom(Arc::new(f)),
            growth_k,
            growth_theta,
            label: label.into(),
            coeff_bound: None,
        }
    }

    pub fn with_coeff_bound(mut self, bound: CoeffBound) -> Self {
        self.coeff_bound = Some(bound);
        self
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn growth_k(&self) -> f64 {
        self.growth_k
    }

    pub fn growth_theta(&self) -> f64 {
        self.growth_theta
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coeff_bound(&self) -> Option<CoeffBound> {
        self.coeff_bound
    }

    pub fn character(&self) -> Option<&DirichletCharacter> {
        match &self.family {
            Family::Dirichlet(chi) => Some(chi),
            _ => None,
        }
    }

    /// b(p^k).
    pub fn log_coeff(&self, p: u64, k: u32) -> Complex64 {
        let k_f = k as f64;
        match &self.family {
            Family::Zeta => Complex64::new(1.0 / k_f, 0.0),
            Family::Dirichlet(chi) => chi.value(p).powu(k) / k_f,
            Family::ZetaPower(m) => Complex64::new(*m as f64 / k_f, 0.0),
            Family::Custom(f) => f(p, k),
        }
    }

    /// a(p) = b(p).
    pub fn coeff_at_prime(&self, p: u64) -> Complex64 {
        self.log_coeff(p, 1)
    }

    /// a(p^0), ..., a(p^kmax) from the recursion
    /// k a(p^k) = sum_{j=1..k} j b(p^j) a(p^(k-j)).
    pub fn prime_power_coeffs(&self, p: u64, kmax: u32) -> Vec<Complex64> {
        let b: Vec<Complex64> = (0..=kmax)
            .map(|j| if j == 0 { Complex64::new(0.0, 0.0) } else { self.log_coeff(p, j) })
            .collect();
        let mut a = vec![Complex64::new(1.0, 0.0)];
        for k in 1..=kmax as usize {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += b[j] * a[k - j] * j as f64;
            }
            a.push(acc / k as f64);
        }
        a
    }

    /// a(n) for 0 <= n <= n_max (a(0) is set to zero).
    pub fn coefficients(&self, n_max: usize) -> Vec<Complex64> {
        let spf = smallest_prime_factors(n_max);
        let zero = Complex64::new(0.0, 0.0);
        let mut a = vec![zero; n_max + 1];
        if n_max >= 1 {
            a[1] = Complex64::new(1.0, 0.0);
        }
        let mut cache: std::collections::HashMap<u64, Vec<Complex64>> = Default::default();
        for n in 2..=n_max {
            let p = spf[n] as usize;
            let mut m = n;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            let powers = cache
                .entry(p as u64)
                .or_insert_with(|| {
                    let kmax = (n_max as f64).log(p as f64).floor() as u32 + 1;
                    self.prime_power_coeffs(p as u64, kmax)
                });
            a[n] = powers[e as usize] * a[m];
        }
        a
    }

    /// Largest |b(p^k)| / (K p^(k theta)) over p <= p_max, k <= k_max.
    /// The declared growth constants are consistent when this is <= 1.
    pub fn growth_audit(&self, p_max: u64, k_max: u32) -> f64 {
        let primes = sieve_primes(p_max.max(2)).expect("limit >= 2");
        let mut worst = 0.0f64;
        for p in primes.iter() {
            for k in 1..=k_max {
                let b = self.log_coeff(p, k).norm();
                let allowed = self.growth_k * (p as f64).powf(k as f64 * self.growth_theta);
                let ratio = if allowed > 0.0 {
                    b / allowed
                } else if b > 0.0 {
                    f64::INFINITY
                } else {
                    0.0
                };
                worst = worst.max(ratio);
            }
        }
        worst
    }
}
