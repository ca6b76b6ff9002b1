//! Exact rational scalars and dense square matrices.
//!
//! Everything here is exact: entries are [`BigRational`]s, determinants are
//! computed by fraction-free elimination for integer matrices and by rational
//! Gaussian elimination otherwise.

mod det;
mod matrix;
mod p0;
mod text;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use det::{bareiss_det, gaussian_det};
pub use matrix::ExactMatrix;
pub use p0::{is_p0, P0Verdict, DEFAULT_P0_CAP};
pub use text::{format_matrix, parse_matrix};

/// An exact rational number. `num_rational` keeps it reduced with a positive
/// denominator.
pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("matrix order must be at least 1")]
    EmptyMatrix,
    #[error("expected {expected} entries for an order-{order} matrix, got {got}")]
    Shape {
        order: usize,
        expected: usize,
        got: usize,
    },
    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },
    #[error("order {order} exceeds the principal-minor cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn big(v: BigInt) -> Scalar {
    BigRational::from_integer(v)
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` with the convention `0^0 = 1`.
pub fn pow_scalar(base: &Scalar, exp: i64) -> Scalar {
    if exp == 0 {
        return Scalar::one();
    }
    if exp > 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

/// `base^exp` for integers with `0^0 = 1`.
pub fn pow_int(base: &BigInt, exp: u32) -> BigInt {
    num_traits::pow(base.clone(), exp as usize)
}

/// Renders an exact rational as `n` or `n/d`.
pub fn scalar_to_string(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `n`, `n/d` or a decimal such as `-12.25`.
pub fn parse_scalar(token: &str) -> Option<Scalar> {
    let token = token.trim();
    if let Some((int_part, frac)) = token.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits: BigInt = format!("{int_part}{frac}").parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        return Some(BigRational::new(digits, scale));
    }
    match token.split_once('/') {
        None => token.parse::<BigInt>().ok().map(big),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
    }
}

/// Decimal rendering of a rational, truncated toward zero after `digits`
/// fractional digits.
pub fn to_decimal(x: &Scalar, digits: usize) -> String {
    let neg = x.is_negative();
    let abs = x.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (abs.numer() * &scale) / abs.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let mut s = String::new();
    if neg && !scaled.is_zero() {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if digits > 0 {
        let frac = frac_part.to_string();
        s.push('.');
        s.extend(std::iter::repeat_n('0', digits - frac.len()));
        s.push_str(&frac);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_parsing() {
        assert_eq!(parse_scalar("-3"), Some(int(-3)));
        assert_eq!(parse_scalar("4/6"), Some(ratio(2, 3)));
        assert_eq!(parse_scalar("1/0"), None);
        assert_eq!(parse_scalar("x"), None);
        assert_eq!(parse_scalar("1000.5"), Some(ratio(2001, 2)));
        assert_eq!(parse_scalar("-0.25"), Some(ratio(-1, 4)));
        assert_eq!(parse_scalar("1."), None);
        assert_eq!(scalar_to_string(&ratio(-6, 4)), "-3/2");
    }

    #[test]
    fn zero_to_zero_is_one() {
        assert_eq!(pow_scalar(&int(0), 0), int(1));
        assert_eq!(pow_int(&BigInt::from(0), 0), BigInt::from(1));
        assert_eq!(pow_scalar(&ratio(1, 2), -2), int(4));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&ratio(1, 3), 4), "0.3333");
        assert_eq!(to_decimal(&ratio(-5, 2), 2), "-2.50");
        assert_eq!(to_decimal(&int(7), 0), "7");
        assert_eq!(to_decimal(&ratio(1, 100), 3), "0.010");
    }
}
