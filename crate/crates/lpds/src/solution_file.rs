//! Variable assignments: lines `<variable> <value>`, value an integer, a
//! decimal or a fraction `p/q`. Values are kept exact.

use std::fmt::Write as _;

use lpds_core::ip::Assignment;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::text::{lines, ParseError};

pub fn parse_rational(raw: &str) -> Option<BigRational> {
    if let Some((p, q)) = raw.split_once('/') {
        let q: BigInt = q.parse().ok()?;
        if q == BigInt::from(0) {
            return None;
        }
        return Some(BigRational::new(p.parse().ok()?, q));
    }
    let (negative, body) = match raw.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, raw.strip_prefix('+').unwrap_or(raw)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole
        .chars()
        .chain(frac.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits: BigInt = format!("0{whole}{frac}").parse().ok()?;
    let scale = BigInt::from(10).pow(frac.len() as u32);
    let value = BigRational::new(digits, scale);
    Some(if negative { -value } else { value })
}

pub fn parse_assignment(text: &str) -> Result<Assignment, ParseError> {
    let mut a = Assignment::new();
    for line in lines(text) {
        line.expect_args(1)?;
        let value = parse_rational(line.tokens[1]).ok_or_else(|| {
            ParseError::syntax(line.number, format!("`{}` is not a number", line.tokens[1]))
        })?;
        if a.insert(line.key().to_string(), value).is_some() {
            return Err(ParseError::syntax(
                line.number,
                format!("variable {} listed twice", line.key()),
            ));
        }
    }
    Ok(a)
}

pub fn emit_assignment(a: &Assignment) -> String {
    let mut out = String::new();
    for (name, value) in a {
        let _ = writeln!(out, "{name} {value}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn numbers() {
        assert_eq!(parse_rational("1/18"), Some(r(1, 18)));
        assert_eq!(parse_rational("0.25"), Some(r(1, 4)));
        assert_eq!(parse_rational(".5"), Some(r(1, 2)));
        assert_eq!(parse_rational("1"), Some(r(1, 1)));
        assert_eq!(parse_rational("-0.5"), Some(r(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1e3"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn assignments() {
        let a = parse_assignment("x_v1 1\nz_t1_v1 1/2\n").unwrap();
        assert_eq!(a["z_t1_v1"], r(1, 2));
        assert_eq!(emit_assignment(&a), "x_v1 1\nz_t1_v1 1/2\n");
        assert_eq!(parse_assignment("x_v1 1\nx_v1 0\n").unwrap_err().line, 2);
        assert_eq!(parse_assignment("x_v1 one\n").unwrap_err().line, 1);
    }
}
