//! Numerical toolkit for zeros of `L(s) + L(2s) + ... + L(Ns)` with `Re(s) > 1`.
//!
//! * [`dirichlet`]: primes, characters, Euler-product evaluation with
//!   rigorous truncation tails.
//! * [`combo`]: the combination series, disc-containment bounds for the
//!   tail `L(2s) + ... + L(Ns)`, and twisted evaluation.
//! * [`zeros`]: argument-principle zero counting and Newton polishing.
//! * [`curve`]: the image curves of `g(z) = log((z^3 - z)/(z^3 - 1))`,
//!   their support functions, and the region bounds deciding whether
//!   `zeta^k(2s) + zeta^k(3s)` vanishes.
//! * [`fixed_point`]: the prime-partition twist construction solving
//!   `sum_p a(p) p^(-sigma - i t_p) = z`.
//! * [`acceptance`]: the end-to-end verification criteria.

pub mod acceptance;
pub mod combo;
pub mod curve;
pub mod dirichlet;
pub mod error;
pub mod fixed_point;
pub mod zeros;

pub use error::{Error, Result};

/// Serde adapter writing a complex number as `[re, im]`.
pub mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}
