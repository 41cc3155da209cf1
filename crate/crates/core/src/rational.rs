//! Exact rational values and their text renderings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Arbitrary-precision reduced fraction with a positive denominator.
pub type ExactRational = num_rational::BigRational;

pub fn ratio(numer: i64, denom: i64) -> ExactRational {
    ExactRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(value))
}

/// `p/q`, always with an explicit denominator (`6/1`, `17/6`, `-1/2`).
pub fn to_fraction_string(x: &ExactRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_fraction(s: &str) -> Option<ExactRational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<BigInt>().ok()?, q.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if q.is_zero() {
        return None;
    }
    Some(ExactRational::new(p, q))
}

/// Decimal rendering rounded half-up to `digits` significant digits, computed
/// exactly (no floating point).
pub fn to_decimal_string(x: &ExactRational, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return "0".to_string();
    }
    let negative = x.is_negative();
    let num = x.numer().abs();
    let den = x.denom().clone();
    let ten = BigInt::from(10);

    // Find exponent e with 10^e <= |x| < 10^(e+1).
    let mut exp: i64 = 0;
    {
        let int_part = &num / &den;
        if !int_part.is_zero() {
            exp = int_part.to_string().len() as i64 - 1;
        } else {
            let mut scaled = num.clone();
            while scaled < den {
                scaled *= &ten;
                exp -= 1;
            }
        }
    }
    // scaled = round(|x| * 10^(digits-1-exp))
    let shift = digits as i64 - 1 - exp;
    let (mut n2, mut d2) = (num, den);
    if shift >= 0 {
        n2 *= ten.pow(shift as u32);
    } else {
        d2 *= ten.pow((-shift) as u32);
    }
    let (q, r) = n2.div_rem(&d2);
    let mut mantissa = if r * 2 >= d2 { q + 1 } else { q };
    let mut shift = shift;
    if mantissa.to_string().len() > digits {
        // rounding carried into a new digit (e.g. 9.99.. -> 10.0..)
        mantissa /= &ten;
        shift -= 1;
    }
    let digits_str = mantissa.to_string();
    let body = if shift <= 0 {
        let mut s = digits_str;
        s.extend(std::iter::repeat_n('0', (-shift) as usize));
        s
    } else {
        let shift = shift as usize;
        let s = if digits_str.len() <= shift {
            format!("0.{}{}", "0".repeat(shift - digits_str.len()), digits_str)
        } else {
            let (a, b) = digits_str.split_at(digits_str.len() - shift);
            format!("{a}.{b}")
        };
        let s = s.trim_end_matches('0');
        s.trim_end_matches('.').to_string()
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}
