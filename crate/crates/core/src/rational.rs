//! Rendering and parsing of exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Places after the decimal point in rendered decimals.
pub const DECIMAL_PLACES: u32 = 12;

/// `"num/den"`, always with an explicit denominator.
pub fn ratio_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// `"num/den"`, or just `"num"` for integers.
pub fn short_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        ratio_string(q)
    }
}

/// Decimal rendering with `places` digits after the point, rounding half to even.
pub fn decimal_string(q: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = q.abs() * BigRational::from_integer(scale.clone());
    let floor = scaled.floor().to_integer();
    let frac = scaled - BigRational::from_integer(floor.clone());
    let half = BigRational::new(1.into(), 2.into());
    let rounded = if frac > half || (frac == half && floor.is_odd()) { floor + 1 } else { floor };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if q.is_negative() && !rounded_is_zero(&int_part, &frac_part) { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = places as usize)
}

fn rounded_is_zero(a: &BigInt, b: &BigInt) -> bool {
    a.is_zero() && b.is_zero()
}

/// `"43/16 (2.687500000000)"`
pub fn exact_with_decimal(q: &BigRational) -> String {
    format!("{} ({})", short_string(q), decimal_string(q, DECIMAL_PLACES))
}

/// Parses `"n"`, `"n/d"`, or a finite decimal such as `"2.59375"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((i, f)) = s.split_once('.') {
        if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = i.starts_with('-');
        let digits = format!("{}{}", i.trim_start_matches(['-', '+']), f);
        let mut n: BigInt = digits.parse().ok()?;
        if negative {
            n = -n;
        }
        return Some(BigRational::new(n, BigInt::from(10u32).pow(f.len() as u32)));
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}
