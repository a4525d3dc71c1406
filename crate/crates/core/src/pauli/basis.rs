use super::bit_shift;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// A computational-basis state `|b_0 b_1 ... b_{n-1}>`, qubit A first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisState {
    bits: Vec<bool>,
}

impl BasisState {
    pub fn zeros(n: usize) -> Self {
        BasisState {
            bits: vec![false; n],
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BasisState { bits }
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn bit(&self, q: usize) -> bool {
        self.bits[q]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Index into the `2^n` computational basis; qubit A is the most
    /// significant bit.
    pub fn index(&self) -> usize {
        let n = self.n();
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(q, _)| 1usize << bit_shift(n, q))
            .sum()
    }
}

impl FromStr for BasisState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("bad bit '{c}' in basis state '{s}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if bits.is_empty() {
            return Err(Error::Parse("empty basis state".into()));
        }
        Ok(BasisState { bits })
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}
