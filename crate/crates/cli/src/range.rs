//! Sweep syntax: `x`, `a..b` (inclusive integers) and `a..b:K` (`K`
//! log-spaced reals from `a` to `b`).

use std::str::FromStr;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum RangeError {
    #[error("cannot parse '{0}' as a number")]
    Number(String),
    #[error("empty integer range {0}..{1}")]
    Empty(i64, i64),
    #[error("log-spaced range needs 0 < a and 0 < b, got {0}..{1}")]
    NonPositive(f64, f64),
    #[error("log-spaced range needs at least 2 points, got {0}")]
    TooFewPoints(usize),
}

fn num<T: FromStr>(s: &str) -> Result<T, RangeError> {
    s.trim().parse().map_err(|_| RangeError::Number(s.trim().to_string()))
}

/// Integer sweep: `x` or `a..b`.
pub fn parse_int_range(s: &str) -> Result<Vec<i64>, RangeError> {
    match s.split_once("..") {
        None => Ok(vec![num(s)?]),
        Some((a, b)) => {
            let (a, b): (i64, i64) = (num(a)?, num(b)?);
            if a > b {
                return Err(RangeError::Empty(a, b));
            }
            Ok((a..=b).collect())
        }
    }
}

/// Real sweep: `x`, `a..b:K`, or integer-valued `a..b`.
pub fn parse_real_range(s: &str) -> Result<Vec<f64>, RangeError> {
    let Some((a, rest)) = s.split_once("..") else {
        return Ok(vec![num(s)?]);
    };
    let Some((b, k)) = rest.split_once(':') else {
        return Ok(parse_int_range(s)?.into_iter().map(|v| v as f64).collect());
    };
    let (a, b, k): (f64, f64, usize) = (num(a)?, num(b)?, num(k)?);
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(RangeError::NonPositive(a, b));
    }
    if k < 2 {
        return Err(RangeError::TooFewPoints(k));
    }
    let (la, lb) = (a.ln(), b.ln());
    let step = (lb - la) / (k - 1) as f64;
    Ok((0..k)
        .map(|i| match i {
            0 => a,
            _ if i == k - 1 => b,
            _ => (la + step * i as f64).exp(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_ranges() {
        assert_eq!(parse_int_range("1..3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_int_range("4").unwrap(), vec![4]);
        assert_eq!(parse_int_range("-1..1").unwrap(), vec![-1, 0, 1]);
        assert_eq!(parse_int_range("3..1"), Err(RangeError::Empty(3, 1)));
        assert!(parse_int_range("a..2").is_err());
    }

    #[test]
    fn log_ranges() {
        let g = parse_real_range("1e-3..1e-1:20").unwrap();
        assert_eq!(g.len(), 20);
        assert_eq!((g[0], g[19]), (1e-3, 1e-1));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!((g[1] / g[0] - g[19] / g[18]).abs() < 1e-12);
        assert_eq!(parse_real_range("0.5").unwrap(), vec![0.5]);
        assert_eq!(parse_real_range("1..3").unwrap(), vec![1.0, 2.0, 3.0]);
        assert!(parse_real_range("0..1:5").is_err());
        assert!(parse_real_range("1..2:1").is_err());
    }
}
