//! Checked `u128` arithmetic. Overflow is an error, never a wraparound.

use crate::error::{Error, Result};

pub(crate) fn mul(a: u128, b: u128, what: &str) -> Result<u128> {
    a.checked_mul(b).ok_or_else(|| Error::Overflow(what.to_string()))
}

pub(crate) fn add(a: u128, b: u128, what: &str) -> Result<u128> {
    a.checked_add(b).ok_or_else(|| Error::Overflow(what.to_string()))
}

pub(crate) fn div_exact(a: u128, b: u128, what: &str) -> Result<u128> {
    if b == 0 || a % b != 0 {
        return Err(Error::InexactDivision(what.to_string()));
    }
    Ok(a / b)
}

/// `m (m-1) ... (m-j+1)`; 1 when `j = 0`, 0 when `j > m`.
pub fn falling_factorial(m: u128, j: u128) -> Result<u128> {
    if j > m {
        return Ok(0);
    }
    (0..j).try_fold(1u128, |acc, i| mul(acc, m - i, "falling factorial"))
}

pub fn factorial(m: u128) -> Result<u128> {
    falling_factorial(m, m)
}

pub fn pow(base: u128, exp: u32) -> Result<u128> {
    base.checked_pow(exp).ok_or_else(|| Error::Overflow(format!("{base}^{exp}")))
}

/// Binomial coefficient by the multiplicative formula; every intermediate
/// quotient is itself a binomial coefficient, so each division is exact.
pub fn binomial(m: u128, j: u128) -> Result<u128> {
    if j > m {
        return Ok(0);
    }
    let j = j.min(m - j);
    (0..j).try_fold(1u128, |acc, i| {
        div_exact(mul(acc, m - i, "binomial")?, i + 1, "binomial")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(0).unwrap(), 1);
        assert_eq!(factorial(8).unwrap(), 40320);
        assert_eq!(falling_factorial(8, 3).unwrap(), 336);
        assert_eq!(falling_factorial(3, 5).unwrap(), 0);
        assert_eq!(binomial(10, 4).unwrap(), 210);
        assert_eq!(binomial(4, 7).unwrap(), 0);
        assert_eq!(pow(9, 5).unwrap(), 59049);
        assert_eq!(pow(7, 0).unwrap(), 1);
    }

    #[test]
    fn overflow_is_reported() {
        assert!(factorial(34).is_ok());
        assert!(matches!(factorial(35), Err(Error::Overflow(_))));
        assert!(matches!(pow(10, 39), Err(Error::Overflow(_))));
        assert!(matches!(div_exact(7, 2, "t"), Err(Error::InexactDivision(_))));
    }
}
