//! Arbitrary-precision rational scalars and their text form.
//!
//! Certificates serialize every rational as `num/den` (or just `num` when the
//! denominator is 1), so parsing and formatting here must round-trip exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn is_positive(r: &Rat) -> bool {
    r.is_positive()
}

/// Canonical text form: `-3/4`, `5`, `0`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Inverse of [`fmt_rat`]; also accepts non-canonical inputs like `6/4`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational numerator: {num:?}"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational denominator: {den:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in rational: {s:?}"));
    }
    Ok(Rat::new(n, d))
}

/// `base^exp` for integer `exp` (negative exponents allowed for nonzero base).
pub fn pow(base: &Rat, exp: i64) -> Rat {
    if exp >= 0 {
        num_traits::pow::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow::pow(base.clone(), (-exp) as usize)
            .recip()
    }
}

/// `1/2^k`.
pub fn dyadic(k: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(2u32).pow(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["0", "5", "-3/4", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        assert_eq!(fmt_rat(&parse_rat("6/4").unwrap()), "3/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(pow(&rat(2, 3), 2), rat(4, 9));
        assert_eq!(pow(&rat(2, 1), -3), rat(1, 8));
        assert_eq!(dyadic(4), rat(1, 16));
    }
}
