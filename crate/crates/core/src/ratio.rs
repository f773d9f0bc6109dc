//! Exact rationals and their `"p/q"` text form.

use num_rational::Ratio;
use thiserror::Error;

pub type Q = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational \"{0}\": expected \"p/q\" or an integer")]
pub struct ParseRatioError(pub String);

/// Parses `"p/q"` or `"p"`. The denominator must be nonzero.
pub fn parse(text: &str) -> Result<Q, ParseRatioError> {
    let err = || ParseRatioError(text.to_string());
    let (p, q) = match text.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text.trim(), "1"),
    };
    let p: i64 = p.parse().map_err(|_| err())?;
    let q: i64 = q.parse().map_err(|_| err())?;
    if q == 0 {
        return Err(err());
    }
    Ok(Q::new(p, q))
}

/// Always `"p/q"` in lowest terms, including integers (`"4/1"`).
pub fn format(r: &Q) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("1/100").unwrap(), Q::new(1, 100));
        assert_eq!(parse(" 2/4 ").unwrap(), Q::new(1, 2));
        assert_eq!(parse("3").unwrap(), Q::from_integer(3));
        assert!(parse("1/0").is_err());
        assert!(parse("x/2").is_err());
        assert_eq!(format(&Q::new(4, 2)), "2/1");
        assert_eq!(format(&Q::new(-1, 2)), "-1/2");
    }
}
