//! Exact scalar arithmetic: arbitrary-precision rationals and Gaussian
//! rationals (complex numbers with rational real and imaginary parts).
//!
//! Every coefficient that enters the crate is stored exactly: rational
//! strings and decimal literals are parsed exactly, and `f64` inputs are
//! dyadic rationals already. Floating point appears only at evaluation
//! boundaries.

use num::bigint::Sign;
use num::{BigInt, BigRational, BigUint, Complex, One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;
pub type CRat = Complex<BigRational>;

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn crat(re: Rat, im: Rat) -> CRat {
    Complex::new(re, im)
}

pub fn crat_int(re: i64, im: i64) -> CRat {
    Complex::new(rat_int(re), rat_int(im))
}

pub fn crat_zero() -> CRat {
    Complex::new(Rat::zero(), Rat::zero())
}

pub fn crat_one() -> CRat {
    Complex::new(Rat::one(), Rat::zero())
}

/// Exact conversion: every finite `f64` is a dyadic rational.
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    BigRational::from_float(x)
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn crat_to_c64(c: &CRat) -> Complex<f64> {
    Complex::new(rat_to_f64(&c.re), rat_to_f64(&c.im))
}

/// Modulus of a Gaussian rational, evaluated in floating point.
pub fn crat_abs_f64(c: &CRat) -> f64 {
    let sq = &c.re * &c.re + &c.im * &c.im;
    rat_to_f64(&sq).sqrt()
}

/// Exact square root of a nonnegative rational, when it is itself rational.
pub fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    let sqrt_of = |n: &BigUint| -> Option<BigUint> {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    let sn = sqrt_of(num)?;
    let sd = sqrt_of(den)?;
    Some(BigRational::new(
        BigInt::from_biguint(Sign::Plus, sn),
        BigInt::from_biguint(Sign::Plus, sd),
    ))
}

/// Parses `"p/q"`, an integer, or a decimal literal with optional exponent
/// (`"0.25"`, `"1e-3"`) into an exact rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().ok()?;
        let den: BigInt = q.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Option<Rat> {
    let (mantissa, exp10) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..].parse().ok()?;
            (&s[..pos], e)
        }
        None => (s, 0i64),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() || digits == "-" || digits == "+" {
        return None;
    } else {
        digits.parse().ok()?
    };
    let shift = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let scale = num::pow::pow(ten, shift.unsigned_abs() as usize);
    Some(if shift >= 0 {
        BigRational::from_integer(num * scale)
    } else {
        BigRational::new(num, scale)
    })
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Factorial as an exact unsigned integer.
pub fn factorial_big(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rat("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        assert_eq!(parse_rat("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rat("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_rat("-2.5e2").unwrap(), rat_int(-250));
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("abc").is_none());
    }

    #[test]
    fn format_round_trips() {
        for r in [rat(1, 2), rat(-7, 3), rat_int(5), rat_int(0)] {
            assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
        }
    }

    #[test]
    fn sqrt_detects_perfect_squares() {
        assert_eq!(rational_sqrt(&rat(4, 9)).unwrap(), rat(2, 3));
        assert_eq!(rational_sqrt(&rat_int(0)).unwrap(), rat_int(0));
        assert!(rational_sqrt(&rat(1, 2)).is_none());
        assert!(rational_sqrt(&rat_int(-1)).is_none());
    }

    #[test]
    fn f64_round_trip_is_exact() {
        for x in [0.5, -0.1, 3.0, 1.0 / 3.0] {
            let r = rat_from_f64(x).unwrap();
            assert_eq!(rat_to_f64(&r), x);
        }
    }
}
