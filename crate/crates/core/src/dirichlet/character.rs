use std::collections::{BTreeMap, VecDeque};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::primes::gcd;
use crate::error::{Error, Result};

const TOL: f64 = 1e-9;

/// A Dirichlet character modulo `q`, stored as its full table of values on
/// residues `0..q`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<Complex64>,
}

/// On-disk form: `{"modulus": 5, "values": {"2": [0, 1]}}`.
///
/// The value map may be partial. Missing unit residues are generated from
/// the listed ones by multiplicativity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterTable {
    pub modulus: u64,
    pub values: BTreeMap<String, [f64; 2]>,
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= TOL
}

/// Completes a partial assignment of character values to a full character.
///
/// Every assigned unit residue must carry a root of unity whose order divides
/// `phi(q)`, non-units must be assigned zero, and the values generated by
/// multiplying known residues must agree wherever two routes reach the same
/// residue. The assigned residues must generate the whole unit group.
pub fn character_from_table(
    q: u64,
    assignments: &BTreeMap<u64, Complex64>,
) -> Result<DirichletCharacter> {
    if q == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    let phi = euler_phi(q);
    let qs = q as usize;
    let mut values: Vec<Option<Complex64>> = vec![None; qs];
    for r in 0..q {
        if gcd(r, q) != 1 {
            values[r as usize] = Some(Complex64::new(0.0, 0.0));
        }
    }
    let one = (1 % q) as usize;
    values[one] = Some(Complex64::new(1.0, 0.0));

    let mut generators = Vec::new();
    for (&n, &v) in assignments {
        let r = n % q;
        if gcd(r, q) != 1 {
            if v.norm() > TOL {
                return Err(Error::Validation {
                    m: n,
                    n: q,
                    reason: format!("residue {r} shares a factor with {q} but was assigned {v}"),
                });
            }
            continue;
        }
        if (v.norm() - 1.0).abs() > TOL || !close(v.powu(phi as u32), Complex64::new(1.0, 0.0)) {
            return Err(Error::Validation {
                m: n,
                n,
                reason: format!("value {v} is not a root of unity of order dividing {phi}"),
            });
        }
        if let Some(existing) = values[r as usize] {
            if !close(existing, v) {
                return Err(Error::Validation {
                    m: n,
                    n: 1,
                    reason: format!("chi({r}) assigned {v} but must be {existing}"),
                });
            }
        }
        values[r as usize] = Some(v);
        generators.push((r, v));
    }

    let mut queue: VecDeque<u64> = (0..q)
        .filter(|&r| gcd(r, q) == 1 && values[r as usize].is_some())
        .collect();
    while let Some(x) = queue.pop_front() {
        let vx = values[x as usize].expect("queued residues carry values");
        for &(g, vg) in &generators {
            let y = (x * g % q) as usize;
            let product = vx * vg;
            match values[y] {
                None => {
                    values[y] = Some(product);
                    queue.push_back(y as u64);
                }
                Some(existing) if !close(existing, product) => {
                    return Err(Error::Validation {
                        m: x,
                        n: g,
                        reason: format!(
                            "chi({x})chi({g}) = {product} but chi({y}) = {existing}"
                        ),
                    });
                }
                Some(_) => {}
            }
        }
    }

    let values = values
        .into_iter()
        .enumerate()
        .map(|(r, v)| {
            v.ok_or_else(|| Error::Validation {
                m: r as u64,
                n: q,
                reason: format!("assignments do not determine chi({r}) mod {q}"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let chi = DirichletCharacter { modulus: q, values };
    chi.validate()?;
    Ok(chi)
}

impl DirichletCharacter {
    /// The principal character mod `q`; `q = 1` gives the constant 1.
    pub fn principal(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("modulus must be positive".into()));
        }
        let values = (0..q)
            .map(|r| {
                if gcd(r, q) == 1 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Ok(DirichletCharacter { modulus: q, values })
    }

    /// The character mod 5 with chi(2) = i.
    pub fn mod5_i() -> Self {
        let mut a = BTreeMap::new();
        a.insert(2, Complex64::new(0.0, 1.0));
        character_from_table(5, &a).expect("2 generates (Z/5Z)*")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self, n: u64) -> Complex64 {
        self.values[(n % self.modulus) as usize]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_principal(&self) -> bool {
        self.values
            .iter()
            .all(|v| v.norm() < TOL || close(*v, Complex64::new(1.0, 0.0)))
    }

    pub fn conj(&self) -> Self {
        DirichletCharacter {
            modulus: self.modulus,
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    /// Checks every table invariant, reporting the first offending pair.
    pub fn validate(&self) -> Result<()> {
        let q = self.modulus;
        let phi = euler_phi(q) as u32;
        if !close(self.value(1), Complex64::new(1.0, 0.0)) {
            return Err(Error::Validation {
                m: 1,
                n: 1,
                reason: "chi(1) must be 1".into(),
            });
        }
        for r in 0..q {
            let v = self.value(r);
            let unit = gcd(r, q) == 1;
            if unit != (v.norm() > TOL) {
                return Err(Error::Validation {
                    m: r,
                    n: q,
                    reason: format!("chi({r}) = {v} contradicts gcd({r}, {q})"),
                });
            }
            if unit && !close(v.powu(phi), Complex64::new(1.0, 0.0)) {
                return Err(Error::Validation {
                    m: r,
                    n: r,
                    reason: format!("chi({r}) = {v} is not a root of unity of order dividing {phi}"),
                });
            }
        }
        for m in 0..q {
            for n in m..q {
                let lhs = self.value(m * n);
                let rhs = self.value(m) * self.value(n);
                if !close(lhs, rhs) {
                    return Err(Error::Validation {
                        m,
                        n,
                        reason: format!("chi({m}{n}) = {lhs} but chi({m})chi({n}) = {rhs}"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Upper bound for |chi(a+1) + ... + chi(b)| over all a < b.
    pub fn partial_sum_spread(&self) -> f64 {
        let mut s = Complex64::new(0.0, 0.0);
        let mut max = 0.0f64;
        for r in 1..=self.modulus {
            s += self.value(r);
            max = max.max(s.norm());
        }
        2.0 * max
    }

    pub fn from_table(table: &CharacterTable) -> Result<Self> {
        let mut assignments = BTreeMap::new();
        for (key, [re, im]) in &table.values {
            let r: u64 = key
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("residue key {key:?} is not an integer")))?;
            assignments.insert(r, Complex64::new(*re, *im));
        }
        character_from_table(table.modulus, &assignments)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let table: CharacterTable =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_table(&table)
    }

    pub fn to_table(&self) -> CharacterTable {
        CharacterTable {
            modulus: self.modulus,
            values: (0..self.modulus)
                .map(|r| {
                    let v = self.value(r);
                    (r.to_string(), [v.re, v.im])
                })
                .collect(),
        }
    }
}
