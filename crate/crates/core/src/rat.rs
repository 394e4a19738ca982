//! Exact rational scalars and their `p/q` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

/// Exact scalar used for all lengths, coordinates and breakpoints.
///
/// Stored in lowest terms with a positive denominator; equality is exact.
pub type Rat = BigRational;

/// Shorthand constructor from machine integers. Panics on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Renders `p/q`, omitting the denominator when it is 1.
pub fn rat_display(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q`. Signs are accepted on the numerator only.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".to_string());
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer: BigInt = n
        .trim()
        .parse()
        .map_err(|_| format!("bad numerator in rational `{s}`"))?;
    let denom: BigInt = d
        .trim()
        .parse()
        .map_err(|_| format!("bad denominator in rational `{s}`"))?;
    if denom.is_zero() {
        return Err(format!("zero denominator in rational `{s}`"));
    }
    Ok(Rat::new(numer, denom))
}

use num_traits::Zero;

/// True when `r` lies strictly between 0 and 1.
pub fn in_open_unit(r: &Rat) -> bool {
    r.is_positive() && *r < rat_int(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_omits_unit_denominator() {
        assert_eq!(rat_display(&rat(3, 1)), "3");
        assert_eq!(rat_display(&rat(3, 10)), "3/10");
        assert_eq!(rat_display(&rat(-4, 6)), "-2/3");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "1", "-7", "3/10", "-2/3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(rat_display(&r), s);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(parse_rat("4/6").unwrap(), rat(2, 3));
    }
}
