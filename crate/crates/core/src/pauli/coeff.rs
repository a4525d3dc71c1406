use super::Phase;
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Magnitudes at or below this are pruned from canonical sums.
pub const PRUNE_TOLERANCE: f64 = 1e-14;

/// Coefficient ring for [`PauliSum`](super::PauliSum).
pub trait Coefficient:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_phase(phase: Phase) -> Self;
    fn is_negligible(&self) -> bool;

    /// Unit phase plus an optional rendered magnitude factor. A bare unit
    /// phase returns `None` for the factor.
    fn render_parts(&self) -> (Phase, Option<String>);

    /// Parses an optional leading magnitude factor, returning `one()` when
    /// there is none.
    fn parse_factor(s: &str) -> Result<(Self, &str)>;
}

fn unit_phase_of(c: Complex64) -> Option<Phase> {
    (0..4)
        .map(Phase::from_power)
        .find(|ph| (ph.to_complex() - c).norm() <= PRUNE_TOLERANCE)
}

impl Coefficient for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_phase(phase: Phase) -> Self {
        phase.to_complex()
    }

    fn is_negligible(&self) -> bool {
        self.norm() <= PRUNE_TOLERANCE
    }

    fn render_parts(&self) -> (Phase, Option<String>) {
        if let Some(ph) = unit_phase_of(*self) {
            return (ph, None);
        }
        let (re, im) = (self.re, self.im);
        if im.abs() <= PRUNE_TOLERANCE {
            if re < 0.0 {
                (Phase::MINUS_ONE, Some(format!("{}", -re)))
            } else {
                (Phase::ONE, Some(format!("{re}")))
            }
        } else if re.abs() <= PRUNE_TOLERANCE {
            if im < 0.0 {
                (Phase::MINUS_I, Some(format!("{}", -im)))
            } else {
                (Phase::I, Some(format!("{im}")))
            }
        } else {
            (Phase::ONE, Some(format!("({re}{im:+}i)")))
        }
    }

    fn parse_factor(s: &str) -> Result<(Self, &str)> {
        let s = s.trim_start();
        if let Some(inner) = s.strip_prefix('(') {
            let close = inner
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed coefficient in '{s}'")))?;
            let body = &inner[..close];
            let c = parse_complex(body)?;
            return Ok((c, inner[close + 1..].trim_start()));
        }
        if s.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
            let end = s.find(char::is_whitespace).unwrap_or(s.len());
            let v: f64 = s[..end]
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient '{}'", &s[..end])))?;
            return Ok((Complex64::new(v, 0.0), s[end..].trim_start()));
        }
        Ok((C_ONE, s))
    }
}

fn parse_complex(body: &str) -> Result<Complex64> {
    let body = body.trim();
    let bad = || Error::Parse(format!("bad complex coefficient '{body}'"));
    let Some(stripped) = body.strip_suffix('i') else {
        return body
            .parse()
            .map(|v| Complex64::new(v, 0.0))
            .map_err(|_| bad());
    };
    // split at the last sign that is not an exponent sign or the leading sign
    let split = stripped
        .char_indices()
        .rev()
        .find(|&(i, c)| {
            (c == '+' || c == '-') && i > 0 && !matches!(stripped.as_bytes()[i - 1], b'e' | b'E')
        })
        .map(|(i, _)| i)
        .ok_or_else(bad)?;
    let re: f64 = stripped[..split].parse().map_err(|_| bad())?;
    let im: f64 = stripped[split..].parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

/// A polynomial in the formal dephasing factor `f = (1-2p)` with complex
/// coefficients, `sum_k coeffs[k] * f^k`.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct DampingPoly {
    coeffs: Vec<Complex64>,
}

impl DampingPoly {
    pub fn constant(c: Complex64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Complex64, power: usize) -> Self {
        let mut coeffs = vec![C_ZERO; power + 1];
        coeffs[power] = c;
        Self::trimmed(coeffs)
    }

    /// The bare factor `(1-2p)`.
    pub fn factor() -> Self {
        Self::monomial(C_ONE, 1)
    }

    fn trimmed(mut coeffs: Vec<Complex64>) -> Self {
        for c in coeffs.iter_mut() {
            if c.is_negligible() {
                *c = C_ZERO;
            }
        }
        while coeffs.last().is_some_and(|c| *c == C_ZERO) {
            coeffs.pop();
        }
        DampingPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `Some((c, k))` when the polynomial is the single monomial `c f^k`.
    pub fn as_monomial(&self) -> Option<(Complex64, usize)> {
        let mut nz = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != C_ZERO);
        let (k, c) = nz.next()?;
        nz.next().is_none().then_some((*c, k))
    }

    /// Substitutes a concrete dephasing strength `p`.
    pub fn eval(&self, p: f64) -> Complex64 {
        let f = 1.0 - 2.0 * p;
        self.coeffs.iter().rev().fold(C_ZERO, |acc, c| acc * f + c)
    }
}

fn factor_name(power: usize) -> String {
    match power {
        1 => "(1-2p)".to_string(),
        k => format!("(1-2p)^{k}"),
    }
}

impl Add for DampingPoly {
    type Output = DampingPoly;
    fn add(self, rhs: DampingPoly) -> DampingPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let at = |v: &[Complex64], k: usize| v.get(k).copied().unwrap_or_default();
        Self::trimmed(
            (0..len)
                .map(|k| at(&self.coeffs, k) + at(&rhs.coeffs, k))
                .collect(),
        )
    }
}

impl Neg for DampingPoly {
    type Output = DampingPoly;
    fn neg(self) -> DampingPoly {
        DampingPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for DampingPoly {
    type Output = DampingPoly;
    fn sub(self, rhs: DampingPoly) -> DampingPoly {
        self + (-rhs)
    }
}

impl Mul for DampingPoly {
    type Output = DampingPoly;
    fn mul(self, rhs: DampingPoly) -> DampingPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return DampingPoly::default();
        }
        let mut out = vec![C_ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::trimmed(out)
    }
}

impl fmt::Display for DampingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (ph, factor) = self.render_parts();
        match factor {
            Some(fac) => write!(f, "{}{}", ph.prefix(), fac),
            None => write!(f, "{}1", ph.prefix()),
        }
    }
}

impl Coefficient for DampingPoly {
    fn zero() -> Self {
        DampingPoly::default()
    }

    fn one() -> Self {
        Self::constant(C_ONE)
    }

    fn from_phase(phase: Phase) -> Self {
        Self::constant(phase.to_complex())
    }

    fn is_negligible(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn render_parts(&self) -> (Phase, Option<String>) {
        match self.as_monomial() {
            Some((c, 0)) => c.render_parts(),
            Some((c, k)) => {
                let (ph, mag) = c.render_parts();
                (
                    ph,
                    Some(format!("{}{}", mag.unwrap_or_default(), factor_name(k))),
                )
            }
            None => {
                let body: Vec<String> = self
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != C_ZERO)
                    .map(|(k, c)| {
                        let (ph, mag) = c.render_parts();
                        let mag =
                            mag.unwrap_or_else(|| if k == 0 { "1".into() } else { String::new() });
                        let fac = if k == 0 {
                            String::new()
                        } else {
                            factor_name(k)
                        };
                        format!("{}{}{}", ph.prefix(), mag, fac)
                    })
                    .collect();
                (Phase::ONE, Some(format!("[{}]", body.join(" + "))))
            }
        }
    }

    fn parse_factor(s: &str) -> Result<(Self, &str)> {
        let s = s.trim_start();
        let (mag, rest) = if s.starts_with("(1-2p)") {
            (C_ONE, s)
        } else {
            Complex64::parse_factor(s)?
        };
        let Some(after) = rest.strip_prefix("(1-2p)") else {
            return Ok((Self::constant(mag), rest));
        };
        let (power, after) = match after.strip_prefix('^') {
            Some(exp) => {
                let end = exp.find(|c: char| !c.is_ascii_digit()).unwrap_or(exp.len());
                let k: usize = exp[..end]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in '{s}'")))?;
                (k, &exp[end..])
            }
            None => (1, after),
        };
        Ok((Self::monomial(mag, power), after.trim_start()))
    }
}
