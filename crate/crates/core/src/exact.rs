//! Exact big-rational scalars and their float projections.
//!
//! Every quantity that participates in a cancelling sum is kept as a
//! `BigRational` (arbitrary-precision, always reduced, denominator > 0) and
//! only projected to floating point at the very end. Projections come in two
//! flavours: a correctly rounded `f64` for values inside the double range,
//! and an exact-to-rounding natural logarithm that never overflows, for
//! magnitudes spanning hundreds of orders.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::f64::consts::{LN_10, LN_2};

use crate::error::{Error, Result};

/// `n` as a `BigInt`.
pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// The rational `p/q`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(big(p), big(q))
}

/// `n!` as a `BigInt`.
pub fn factorial(n: usize) -> BigInt {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= k;
    }
    f
}

/// The full binomial row `C(n, 0) ..= C(n, n)`, built by the Pascal
/// recurrence (every intermediate division is exact).
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

/// lcm(1, 2, ..., n); the common denominator of the antiderivative weights
/// 1/(m+1) that appear in exact piecewise integration.
pub fn lcm_upto(n: usize) -> BigInt {
    let mut l = BigInt::one();
    for k in 2..=n {
        l = num_integer::lcm(l, big(k as i64));
    }
    l
}

/// Parse an exact rational from `"p/q"` or a plain integer literal.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || {
        Error::Parameter(format!(
            "cannot parse rational literal {s:?} (expected p or p/q)"
        ))
    };
    let parse_int = |t: &str| t.parse::<BigInt>().map_err(|_| bad());
    match s.split_once('/') {
        Some((p, q)) => {
            let num = parse_int(p.trim())?;
            let den = parse_int(q.trim())?;
            if den.is_zero() {
                return Err(Error::Parameter(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from(parse_int(s)?)),
    }
}

/// Correctly rounded `f64` projection; overflows to `±inf`, underflows to 0.
pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// ln of a positive big integer, accurate to f64 rounding at any size.
///
/// For wide integers the top 53 bits carry the mantissa and the discarded
/// width enters as an exact multiple of ln 2.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 53 {
        return x.to_f64().expect("small BigUint fits f64").ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53-bit BigUint fits f64");
    top.ln() + shift as f64 * LN_2
}

/// ln |q| without ever forming a float of the same magnitude.
/// Returns `None` for q = 0.
pub fn ln_abs(q: &BigRational) -> Option<f64> {
    if q.is_zero() {
        return None;
    }
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    Some(ln_biguint(num) - ln_biguint(den))
}

fn pow10(k: u32) -> BigInt {
    big(10).pow(k)
}

/// 10^k as an exact rational, for any integer k.
fn pow10_rational(k: i64) -> BigRational {
    if k >= 0 {
        BigRational::from(pow10(k as u32))
    } else {
        BigRational::new(BigInt::one(), pow10((-k) as u32))
    }
}

/// Render an exact rational as a decimal string with `sig` significant
/// digits, choosing positional or scientific form the way `%g` does.
/// Rounding is half-away-from-zero on the exact value, so the output is
/// deterministic and locale-independent (`.` decimal point).
pub fn format_rational(q: &BigRational, sig: usize) -> String {
    assert!(sig >= 1, "need at least one significant digit");
    if q.is_zero() {
        return "0".to_string();
    }
    let a = q.abs();
    // Decimal exponent: 10^e10 <= a < 10^(e10+1). The float estimate is
    // within one of the truth; fix up by exact comparison.
    let mut e10 = (ln_abs(&a).expect("nonzero") / LN_10).floor() as i64;
    while pow10_rational(e10) > a {
        e10 -= 1;
    }
    while pow10_rational(e10 + 1) <= a {
        e10 += 1;
    }
    // Round a * 10^(sig-1-e10) to an integer with exactly `sig` digits.
    let scaled = &a * pow10_rational(sig as i64 - 1 - e10);
    let mut digits: BigInt = (scaled.numer() * 2 + scaled.denom()) / (scaled.denom() * 2);
    if digits == pow10(sig as u32) {
        digits /= 10;
        e10 += 1;
    }
    let ds = digits.to_string();
    debug_assert_eq!(ds.len(), sig);

    let neg = if q.is_negative() { "-" } else { "" };
    let trim = |s: &str| s.trim_end_matches('0').to_string();
    if e10 >= -4 && e10 < sig as i64 {
        if e10 >= 0 {
            let split = (e10 + 1) as usize;
            let frac = trim(&ds[split..]);
            if frac.is_empty() {
                format!("{neg}{}", &ds[..split])
            } else {
                format!("{neg}{}.{frac}", &ds[..split])
            }
        } else {
            let zeros = "0".repeat((-e10 - 1) as usize);
            format!("{neg}0.{zeros}{}", trim(&ds))
        }
    } else {
        let frac = trim(&ds[1..]);
        if frac.is_empty() {
            format!("{neg}{}e{e10}", &ds[..1])
        } else {
            format!("{neg}{}.{frac}e{e10}", &ds[..1])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_and_binomials() {
        assert_eq!(factorial(0), big(1));
        assert_eq!(factorial(5), big(120));
        let row = binomial_row(6);
        assert_eq!(
            row,
            vec![big(1), big(6), big(15), big(20), big(15), big(6), big(1)]
        );
        // row sums to 2^n
        let sum: BigInt = binomial_row(20).into_iter().sum();
        assert_eq!(sum, big(2).pow(20));
    }

    #[test]
    fn lcm_upto_small() {
        assert_eq!(lcm_upto(1), big(1));
        assert_eq!(lcm_upto(6), big(60));
        assert_eq!(lcm_upto(10), big(2520));
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("5/2").unwrap(), ratio(5, 2));
        assert_eq!(parse_rational(" -3 / 9 ").unwrap(), ratio(-1, 3));
        assert_eq!(parse_rational("7").unwrap(), ratio(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("2.5").is_err());
    }

    #[test]
    fn projection_matches_ln_on_extreme_magnitudes() {
        // q = 3^1200 / 7^900 is far outside the f64 range of its parts but
        // the ratio itself is representable.
        let q = BigRational::new(big(3).pow(1200), big(7).pow(900));
        let direct = to_f64(&q);
        let via_ln = ln_abs(&q).unwrap().exp();
        assert!(direct.is_finite() && direct > 0.0);
        assert!(
            ((direct - via_ln) / via_ln).abs() < 1e-12,
            "direct={direct:e} via_ln={via_ln:e}"
        );
        // Overflow saturates, underflow flushes to zero; ln stays finite.
        let huge = BigRational::from(big(10).pow(400));
        assert_eq!(to_f64(&huge), f64::INFINITY);
        assert!((ln_abs(&huge).unwrap() - 400.0 * LN_10).abs() < 1e-9);
        let tiny = BigRational::new(BigInt::one(), big(10).pow(400));
        assert_eq!(to_f64(&tiny), 0.0);
        assert!((ln_abs(&tiny).unwrap() + 400.0 * LN_10).abs() < 1e-9);
    }

    #[test]
    fn ln_abs_of_signed_values() {
        let q = ratio(-8, 3);
        assert!((ln_abs(&q).unwrap() - (8.0f64 / 3.0).ln()).abs() < 1e-15);
        assert!(ln_abs(&BigRational::zero()).is_none());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_rational(&ratio(0, 1), 30), "0");
        assert_eq!(format_rational(&ratio(2, 1), 30), "2");
        assert_eq!(format_rational(&ratio(1, 2), 30), "0.5");
        assert_eq!(format_rational(&ratio(1, 3), 5), "0.33333");
        assert_eq!(format_rational(&ratio(-2, 3), 4), "-0.6667");
        assert_eq!(format_rational(&ratio(123456, 1), 3), "1.23e5");
        assert_eq!(format_rational(&ratio(1, 100000), 3), "1e-5");
        assert_eq!(format_rational(&ratio(999, 1000), 2), "1");
        // round-trips through f64 parsing
        let v: f64 = format_rational(&ratio(5, 4), 20).parse().unwrap();
        assert_eq!(v, 1.25);
    }

    #[test]
    fn rendered_decimals_parse_back_to_the_projection() {
        // CSV consumers read these strings as floats; at >= 17 significant
        // digits the parse must land on the correctly rounded projection.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            state
        };
        for _ in 0..500 {
            let p = (next() % 2_000_000) as i64 - 1_000_000;
            let q = (next() % 999_983) as i64 + 1;
            let r = ratio(p, q);
            let rendered = format_rational(&r, 20);
            let parsed: f64 = rendered.parse().expect("rendered decimal parses");
            assert_eq!(
                parsed,
                to_f64(&r),
                "mismatch for {p}/{q} rendered {rendered}"
            );
        }
        // huge and tiny magnitudes stay parseable in scientific form
        let wide = BigRational::new(big(3).pow(500), big(7).pow(210));
        let parsed: f64 = format_rational(&wide, 20).parse().unwrap();
        assert_eq!(parsed, to_f64(&wide));
    }
}
