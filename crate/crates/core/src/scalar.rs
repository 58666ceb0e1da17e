//! Exact rational scalars and lossless text conversion.
//!
//! Every coordinate, normal and offset in this crate is a `Scalar` —
//! an arbitrary-precision rational. Depth is a discrete count, so a
//! single wrong sign changes the answer; nothing here ever rounds.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = num_rational::BigRational;

/// Build a scalar from a machine integer.
pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Build a scalar from an integer ratio. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parse a scalar from text, losslessly.
///
/// Accepted forms: integers (`-12`), decimal strings (`3.25`, `.5`),
/// scientific notation (`1.5e-3`) and explicit ratios (`22/7`).
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidInput("empty number".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
        }
        return Ok(Scalar::new(n, d));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Scalar> {
    let bad = || Error::InvalidInput(format!("bad number {s:?}"));
    let (mantissa, exp10) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0i64),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let joined = format!("{int_part}{frac_part}");
    let num: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().map_err(|_| bad())?
    };
    let shift = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        Scalar::from_integer(num * ten.pow(shift as u32))
    } else {
        Scalar::new(num, ten.pow((-shift) as u32))
    };
    Ok(value * Scalar::from_integer(BigInt::from(sign)))
}

/// Render a scalar as a decimal string.
///
/// Exact when the reduced denominator is of the form 2^a·5^b; otherwise a
/// 12-significant-digit approximation prefixed by nothing (display only —
/// the exact ratio is always available via `Display` on the scalar itself).
pub fn to_decimal(x: &Scalar) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut den = x.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut pow2 = 0u32;
    let mut pow5 = 0u32;
    while (&den % &two).is_zero() {
        den /= &two;
        pow2 += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        pow5 += 1;
    }
    if den.magnitude().is_one() {
        // Exact decimal: scale to 10^max(pow2,pow5).
        let places = pow2.max(pow5);
        let scaled = x.numer() * BigInt::from(10).pow(places) / x.denom();
        return place_point(&scaled, places, den.is_negative());
    }
    approx_decimal(x, 12)
}

fn place_point(scaled: &BigInt, places: u32, flip: bool) -> String {
    let neg = scaled.is_negative() != flip;
    let digits = scaled.magnitude().to_string();
    let places = places as usize;
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if places == 0 {
        out.push_str(&digits);
        return out;
    }
    if digits.len() <= places {
        out.push_str("0.");
        out.push_str(&"0".repeat(places - digits.len()));
        out.push_str(digits.trim_end_matches('0'));
        if out.ends_with('.') {
            out.push('0');
        }
    } else {
        let (int_part, frac_part) = digits.split_at(digits.len() - places);
        out.push_str(int_part);
        let frac = frac_part.trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    }
    out
}

fn approx_decimal(x: &Scalar, sig: u32) -> String {
    let scaled = x.numer() * BigInt::from(10).pow(sig) / x.denom();
    let s = place_point(&scaled, sig, false);
    s
}

/// Least common multiple of the denominators of a collection of scalars.
/// Returns 1 for an empty collection.
pub fn denominator_lcm<'a>(values: impl Iterator<Item = &'a Scalar>) -> BigInt {
    let mut acc = BigInt::one();
    for v in values {
        acc = num_integer::lcm(acc, v.denom().clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_losslessly() {
        assert_eq!(parse_scalar("3.25").unwrap(), ratio(13, 4));
        assert_eq!(parse_scalar("-0.1").unwrap(), ratio(-1, 10));
        assert_eq!(parse_scalar(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_scalar("1.5e-3").unwrap(), ratio(3, 2000));
        assert_eq!(parse_scalar("2e2").unwrap(), scalar(200));
        assert_eq!(parse_scalar("22/7").unwrap(), ratio(22, 7));
        assert_eq!(parse_scalar("-4/6").unwrap(), ratio(-2, 3));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "abc", "1.2.3", "--4", "1e"] {
            assert!(parse_scalar(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn decimal_rendering_round_trips_when_exact() {
        for s in ["3.25", "-0.1", "12", "0.0625", "-7.2"] {
            let v = parse_scalar(s).unwrap();
            let rendered = to_decimal(&v);
            assert_eq!(parse_scalar(&rendered).unwrap(), v, "{s} -> {rendered}");
        }
    }

    #[test]
    fn thirds_render_approximately() {
        let third = ratio(1, 3);
        let s = to_decimal(&third);
        assert!(s.starts_with("0.3333"), "{s}");
    }

    #[test]
    fn lcm_of_denominators() {
        let vals = [ratio(1, 4), ratio(5, 6), scalar(7)];
        assert_eq!(denominator_lcm(vals.iter()), BigInt::from(12));
    }
}
