use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Resource limits consulted by every brute-force operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Limits {
    /// Maximum number of quantale elements.
    pub max_quantale: usize,
    /// Maximum size of an `L^X` enumeration.
    pub enum_cap: u64,
    /// Maximum number of `(A, B)` pairs for table-backed GC1 checks.
    pub pair_cap: u64,
    /// Maximum carrier size for bijection search.
    pub iso_guard: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_quantale: 16,
            enum_cap: 1_000_000,
            pair_cap: 1_000_000,
            iso_guard: 8,
        }
    }
}

impl Limits {
    pub fn with_enum_cap(mut self, cap: u64) -> Self {
        self.enum_cap = cap;
        self
    }

    /// Returns `base^exp` if it fits under `cap`.
    pub fn check_power(&self, what: &str, base: usize, exp: usize, cap: u64) -> Result<u64> {
        let count = checked_pow(base, exp);
        match count {
            Some(c) if c <= cap as u128 => Ok(c as u64),
            _ => Err(Error::CapExceeded {
                what: what.to_string(),
                count: count.unwrap_or(u128::MAX),
                cap,
            }),
        }
    }

    pub fn check_enum(&self, what: &str, base: usize, exp: usize) -> Result<u64> {
        self.check_power(what, base, exp, self.enum_cap)
    }
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}
