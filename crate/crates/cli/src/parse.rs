use std::path::PathBuf;

use lsum_core::dirichlet::{DirichletCharacter, LFunctionSpec};
use lsum_core::zeros::Rectangle;
use lsum_core::{Error, Result};
use num_complex::Complex64;

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub prime_cutoff: u64,
    pub powers: u32,
    pub tol: f64,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(self) -> Result<Self> {
        if self.prime_cutoff < 2 {
            return Err(Error::Domain(format!("prime cutoff must be >= 2, got {}", self.prime_cutoff)));
        }
        if self.powers < 2 {
            return Err(Error::Domain(format!("power cutoff must be >= 2, got {}", self.powers)));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {}", self.tol)));
        }
        Ok(self)
    }
}

/// Parses `2`, `2+0i`, `1.5-3.25i`, `-i`, `4e-1+2.5e1i` and similar.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("cannot read complex number from {text:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| matches!(bytes[j], b'+' | b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(j) => (&body[..j], &body[j..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

/// `a,b,c,d` as sigma_min, sigma_max, t_min, t_max.
pub fn parse_rect(text: &str) -> Result<Rectangle> {
    let v: Vec<f64> = text
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse(format!("cannot read rectangle from {text:?}")))?;
    match v[..] {
        [a, b, c, d] => Rectangle::new(a, b, c, d),
        _ => Err(Error::Parse(format!("rectangle needs four numbers, got {text:?}"))),
    }
}

pub fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad number {x:?}"))))
        .collect()
}

/// `zeta`, `char` (with a table file) or `zeta-power` (with k).
pub fn load_spec(name: &str, char_file: Option<&PathBuf>, k: Option<u32>) -> Result<LFunctionSpec> {
    match name {
        "zeta" => Ok(LFunctionSpec::zeta()),
        "zeta-quarter" => Ok(LFunctionSpec::quarter_growth_variant()),
        "char" | "char-file" | "dirichlet" => {
            let path = char_file.ok_or_else(|| Error::Parse("--spec char needs --char-file".into()))?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            Ok(LFunctionSpec::dirichlet(DirichletCharacter::from_json(&text)?))
        }
        "zeta-power" => {
            let k = k.ok_or_else(|| Error::Parse("--spec zeta-power needs --k".into()))?;
            if k == 0 {
                return Err(Error::Domain("zeta power must be >= 1".into()));
            }
            Ok(LFunctionSpec::zeta_power(k))
        }
        other => Err(Error::Parse(format!("unknown spec {other:?}"))),
    }
}
