//! Text forms accepted on the command line and in config files.

use std::collections::BTreeMap;
use std::str::FromStr;

use heatcoef::numerics::int;
use heatcoef::{Jet, Rational, Scalar};

use crate::CliError;

/// `p/q`, an integer, or a finite decimal such as `-0.125`.
pub fn rational(s: &str) -> Result<Rational, CliError> {
    let t = s.trim();
    let bad = || CliError::Usage(format!("not a rational number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let (sign, digits) = match whole.strip_prefix('-') {
            Some(rest) => ("-", rest),
            None => ("", whole.strip_prefix('+').unwrap_or(whole)),
        };
        let all_digits = |x: &str| x.chars().all(|c| c.is_ascii_digit());
        if !all_digits(digits) || !all_digits(frac) || (digits.is_empty() && frac.is_empty()) {
            return Err(bad());
        }
        let text = format!("{sign}{}{frac}/1{}", if digits.is_empty() { "0" } else { digits }, "0".repeat(frac.len()));
        return Rational::from_str(&text).map_err(|_| bad());
    }
    Rational::from_str(t.strip_prefix('+').unwrap_or(t)).map_err(|_| bad())
}

pub fn float(s: &str) -> Result<f64, CliError> {
    let q = rational(s)?;
    Scalar::from_rational(q).to_f64().map_err(|e| CliError::Usage(e.to_string()))
}

/// Ascending coefficient list `c0,c1,...`.
pub fn polynomial(s: &str) -> Result<Vec<Rational>, CliError> {
    let v = s
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(rational)
        .collect::<Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err(CliError::Usage(format!("empty polynomial: {s:?}")));
    }
    Ok(v)
}

pub fn poly_jet(c: &[Rational], order: usize) -> Jet {
    let mut v: Vec<Rational> = c.iter().take(order + 1).cloned().collect();
    v.resize(order + 1, int(0));
    Jet::from_rationals(int(0), v)
}

pub fn poly_f64(c: &[Rational]) -> Vec<f64> {
    c.iter()
        .map(|q| Scalar::from_rational(q.clone()).to_f64().unwrap_or(f64::NAN))
        .collect()
}

/// Comma-separated list of non-negative integers.
pub fn indices(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|_| CliError::Usage(format!("not an index: {p:?}"))))
        .collect()
}

/// `k:amp` pairs for trigonometric terms.
pub fn trig_term(s: &str) -> Result<(i64, Rational), CliError> {
    let (k, a) = s
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("expected k:amplitude, got {s:?}")))?;
    let k = k
        .trim()
        .parse::<i64>()
        .map_err(|_| CliError::Usage(format!("not a frequency: {k:?}")))?;
    Ok((k, rational(a)?))
}

/// `j=value,...` maps.
pub fn index_map(s: &str) -> Result<BTreeMap<usize, Scalar>, CliError> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (j, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected index=value, got {part:?}")))?;
        let j = j
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("not an index: {j:?}")))?;
        out.insert(j, Scalar::from_rational(rational(v)?));
    }
    if out.is_empty() {
        return Err(CliError::Usage("empty index map".into()));
    }
    Ok(out)
}

/// `a:b` integer pairs.
pub fn int_pairs(s: &str) -> Result<Vec<(i64, i64)>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (a, b) = p
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("expected a:b, got {p:?}")))?;
            let parse = |x: &str| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| CliError::Usage(format!("not an integer: {x:?}")))
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

/// `+,-,+` or `1,-1,1`.
pub fn signs(s: &str) -> Result<Vec<i8>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| match p {
            "+" | "1" | "+1" => Ok(1),
            "-" | "-1" => Ok(-1),
            _ => Err(CliError::Usage(format!("not a sign: {p:?}"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use heatcoef::numerics::rat;

    #[test]
    fn rationals() {
        assert_eq!(rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(rational("-2").unwrap(), int(-2));
        assert_eq!(rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(rational("-.5").unwrap(), rat(-1, 2));
        assert_eq!(rational("+1.").unwrap(), int(1));
        assert!(rational("1e3").is_err());
        assert!(rational("").is_err());
        assert!(rational(".").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(polynomial("0, 1,-1").unwrap(), vec![int(0), int(1), int(-1)]);
        assert_eq!(indices("0,2,4").unwrap(), vec![0, 2, 4]);
        assert_eq!(trig_term("2:1/3").unwrap(), (2, rat(1, 3)));
        assert_eq!(index_map("3=1,4=2").unwrap().len(), 2);
        assert_eq!(int_pairs("1:1,2:8").unwrap(), vec![(1, 1), (2, 8)]);
        assert_eq!(signs("+,-,1").unwrap(), vec![1, -1, 1]);
        assert!(signs("0").is_err());
    }
}
